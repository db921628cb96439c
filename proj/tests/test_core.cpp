#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "families.hpp"
#include "retract/core.hpp"
#include "retract/oracle.hpp"

using namespace retract;

namespace {
Instance cycle_with_k(int k) { return gen_cycle(k); }

int count_error(ErrorKind want, const std::string& text) {
  try {
    parse_instance(text);
  } catch (const Error& e) {
    return e.kind() == want ? 1 : 2;
  }
  return 0;
}
}  // namespace

TEST_CASE("cycle distance examples") {
  CHECK(cycle_distance(cycle_with_k(8), 0, 5) == 3);
  CHECK(cycle_distance(cycle_with_k(6), 2, 2) == 0);
  CHECK(cycle_distance(cycle_with_k(4), 1, 3) == 2);
}

TEST_CASE("cycle distance is a metric for k <= 12") {
  for (int k = 3; k <= 12; ++k)
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        int d = cyc_dist(k, i, j);
        REQUIRE(d >= 0);
        REQUIRE(d == cyc_dist(k, j, i));
        REQUIRE((d == 0) == (i == j));
        for (int m = 0; m < k; ++m) REQUIRE(d <= cyc_dist(k, i, m) + cyc_dist(k, m, j));
      }
}

TEST_CASE("stretch examples") {
  for (int k = 3; k <= 12; ++k) {
    Instance c = gen_cycle(k);
    Retraction id{c.anchors()};
    std::vector<int> a(static_cast<std::size_t>(c.n()));
    for (int v = 0; v < c.n(); ++v) a[static_cast<std::size_t>(v)] = v;
    CHECK(stretch(c, Retraction{a}).max_stretch == 1);
  }
  Instance w = gen_wheel(4);
  REQUIRE(w.n() == 5);
  std::vector<int> a{0, 1, 2, 3, 0};
  int hub = 4;
  for (int v = 0; v < 4; ++v) a[static_cast<std::size_t>(w.anchors()[static_cast<std::size_t>(v)])] = w.anchors()[static_cast<std::size_t>(v)];
  a[static_cast<std::size_t>(hub)] = w.anchors()[0];
  CHECK(stretch(w, Retraction{a}).max_stretch == 2);

  Instance g3 = gen_grid(3);
  auto opt = oracle::brute_force_optimal(g3);
  CHECK(stretch(g3, opt.f).max_stretch == opt.report.max_stretch);
}

TEST_CASE("moving an anchor is rejected") {
  Instance g = gen_grid(3);
  std::vector<int> a(9);
  for (int v = 0; v < 9; ++v) a[static_cast<std::size_t>(v)] = g.is_anchor(v) ? v : g.anchors()[0];
  a[static_cast<std::size_t>(g.anchors()[1])] = g.anchors()[2];
  CHECK_THROWS_AS(check_retraction(g, Retraction{a}), Error);
  try {
    check_retraction(g, Retraction{a});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidRetraction);
  }
}

TEST_CASE("distance lower bound examples") {
  for (int m : {3, 5, 7}) CHECK(*distance_lower_bound(gen_grid(m)) == 2);
  // even sides have no middle column: (2m-3)/(m-1)
  CHECK(*distance_lower_bound(gen_grid(4)) == rat(5, 3));
  CHECK(*distance_lower_bound(gen_grid(8)) == rat(13, 7));
  for (int k : {3, 5, 9}) CHECK(*distance_lower_bound(gen_cycle(k)) == 1);
  CHECK(*distance_lower_bound(gen_wheel(4)) == 1);
}

TEST_CASE("anchor-anchor edges bound every retraction") {
  // C8 plus chord 0-4
  std::vector<Edge> e;
  for (int i = 0; i < 8; ++i) e.push_back({std::min(i, (i + 1) % 8), std::max(i, (i + 1) % 8)});
  e.push_back({0, 4});
  Instance c(8, e, {0, 1, 2, 3, 4, 5, 6, 7});
  Retraction id{{0, 1, 2, 3, 4, 5, 6, 7}};
  CHECK(stretch(c, id).max_stretch == 4);
}

TEST_CASE("subdivide counting") {
  auto w = subdivide(gen_wheel(4), 2);
  CHECK(w.inst.n() == 9);
  CHECK(w.inst.edges().size() == 12);
  Instance g3 = gen_grid(3);
  CHECK(subdivide(g3, 1).inst == g3);
  auto s3 = subdivide(g3, 3);
  CHECK(s3.inst.n() == 17);
  CHECK(s3.inst.edges().size() == 8 + 4 * 3);
}

TEST_CASE("subdivision lift and restriction") {
  Instance g3 = gen_grid(3);
  auto opt = oracle::brute_force_optimal(g3);
  int s = opt.report.max_stretch;
  auto si = subdivide(g3, s);
  HostMetric h = HostMetric::cycle(si.inst);
  auto lifted = lift_to_subdivision(si.sub, h, opt.f.assignment);
  CHECK(stretch(si.inst, Retraction{lifted}).max_stretch == 1);
  auto back = restrict_to_original(si.sub, lifted);
  CHECK(back == opt.f.assignment);
}

TEST_CASE("subdivide duality on small instances") {
  auto fam = fam::small_planar(8, 300);
  fam.push_back({"grid3", gen_grid(3)});
  fam.push_back({"w4", gen_wheel(4)});
  for (auto& [name, inst] : fam) {
    if (inst.n() > 9) continue;
    CAPTURE(name);
    int s = oracle::brute_force_optimal(inst).report.max_stretch;
    auto feasible1 = [&](int l) {
      auto si = subdivide(inst, l);
      return oracle::feasible_at(si.inst.graph(), HostMetric::cycle(si.inst), 1, oracle::SearchBudget{1 << 20, 1000000000ULL, 600});
    };
    CHECK(feasible1(s));
    if (s > 1) CHECK_FALSE(feasible1(s - 1));
  }
}

TEST_CASE("distance bound never exceeds the optimum") {
  for (auto& [name, inst] : fam::small_planar(12, 400)) {
    CAPTURE(name);
    Q lb = *distance_lower_bound(inst);
    CHECK(lb <= oracle::brute_force_optimal(inst).report.max_stretch);
  }
}

TEST_CASE("generator counts") {
  CHECK(gen_grid(3).n() == 9);
  CHECK(gen_grid(3).k() == 8);
  CHECK(gen_grid(3).edges().size() == 12);
  CHECK(gen_grid(4).n() == 16);
  CHECK(gen_grid(4).k() == 12);
  CHECK(gen_grid(4).edges().size() == 24);
  CHECK(gen_grid(5).n() == 25);
  CHECK(gen_grid(5).k() == 16);
  CHECK(gen_grid(5).edges().size() == 40);
  CHECK(gen_column_deleted_grid(3).edges().size() == 10);
  CHECK(gen_column_deleted_grid(4).edges().size() == 18);
  CHECK(gen_column_deleted_grid(5).edges().size() == 28);
}

TEST_CASE("generators are deterministic and satisfy invariants") {
  CHECK(gen_random_planar(7, 6, 8) == gen_random_planar(7, 6, 8));
  CHECK(serialize_instance(gen_random_points(3, 12, 5)) == serialize_instance(gen_random_points(3, 12, 5)));
  Instance p = gen_random_points(3, 12, 5);
  REQUIRE(p.has_points());
  Q hi = Q(1) + rat(1, 144);
  for (int i = 0; i < 12; ++i) {
    const Point& a = p.points()[static_cast<std::size_t>(p.anchors()[static_cast<std::size_t>(i)])];
    const Point& b = p.points()[static_cast<std::size_t>(p.anchors()[static_cast<std::size_t>((i + 1) % 12)])];
    Q d2 = (a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y);
    CHECK(d2 >= 1);
    CHECK(d2 <= hi * hi);
  }
}

TEST_CASE("serialization round trip and validation") {
  Instance g = gen_grid(3);
  CHECK(parse_instance(serialize_instance(g)) == g);
  Instance p = gen_random_points(5, 10, 3);
  CHECK(parse_instance(serialize_instance(p)) == p);
  // anchors not a cycle
  CHECK(count_error(ErrorKind::Validation, R"({"n":4,"edges":[[0,1],[1,2],[2,3]],"anchors":[0,1,2,3]})") == 1);
  // duplicate edge
  CHECK(count_error(ErrorKind::Validation, R"({"n":3,"edges":[[0,1],[1,2],[2,0],[1,0]],"anchors":[0,1,2]})") == 1);
  // self loop, out of range
  CHECK(count_error(ErrorKind::Validation, R"({"n":3,"edges":[[0,1],[1,2],[2,0],[1,1]],"anchors":[0,1,2]})") == 1);
  CHECK(count_error(ErrorKind::Validation, R"({"n":3,"edges":[[0,1],[1,2],[2,0],[1,5]],"anchors":[0,1,2]})") == 1);
  CHECK(count_error(ErrorKind::Input, "not json") == 1);
  Retraction f{{0, 1, 2}};
  int s = 0;
  CHECK(parse_retraction(serialize_retraction(f, 1), &s) == f);
  CHECK(s == 1);
}

TEST_CASE("rational helpers") {
  CHECK(q_floor(rat(7, 2)) == 3);
  CHECK(q_ceil(rat(7, 2)) == 4);
  CHECK(q_floor(rat(-7, 2)) == -4);
  CHECK(q_ceil(rat(-7, 2)) == -3);
  CHECK(q_ceil(Q(3)) == 3);
  CHECK(rat(4, 8) == rat(1, 2));
  CHECK(q_to_string(rat(6, 4)) == "3/2");
}
