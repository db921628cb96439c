#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "retract/euclid.hpp"

using namespace retract;
using namespace retract::euclid;

namespace {

Point P(long x, long y, long den = 1) { return Point{rat(x, den), rat(y, den)}; }

WeightedGraph with_weights(int n, const std::vector<std::tuple<int, int, Q>>& es) {
  WeightedGraph g;
  g.n = n;
  for (auto& [u, v, w] : es) g.edges.push_back({u, v, w});
  return g;
}

bool planar_straight_line(const std::vector<Point>& p, const WeightedGraph& g) {
  for (std::size_t i = 0; i < g.edges.size(); ++i)
    for (std::size_t j = i + 1; j < g.edges.size(); ++j) {
      auto a = g.edges[i], b = g.edges[j];
      if (a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v) continue;
      const auto &A = p[static_cast<std::size_t>(a.u)], &B = p[static_cast<std::size_t>(a.v)];
      const auto &C = p[static_cast<std::size_t>(b.u)], &D = p[static_cast<std::size_t>(b.v)];
      if (orient(A, B, C) * orient(A, B, D) < 0 && orient(C, D, A) * orient(C, D, B) < 0) return false;
    }
  return true;
}

void check_simple_host(const Graph& g, const std::vector<int>& host, const std::vector<int>& anchors, bool all) {
  std::set<int> seen(host.begin(), host.end());
  CHECK(seen.size() == host.size());
  for (std::size_t i = 0; i < host.size(); ++i) CHECK(g.has_edge(host[i], host[(i + 1) % host.size()]));
  // anchors appear in cycle order
  std::vector<int> order;
  for (int v : host)
    for (std::size_t i = 0; i < anchors.size(); ++i)
      if (anchors[i] == v) order.push_back(static_cast<int>(i));
  if (all) REQUIRE(order.size() == anchors.size());
  REQUIRE(order.size() >= 3);
  auto start = std::min_element(order.begin(), order.end());
  std::rotate(order.begin(), start, order.end());
  // increasing, or increasing after reflection
  bool fwd = std::is_sorted(order.begin(), order.end());
  std::reverse(order.begin() + 1, order.end());
  bool bwd = std::is_sorted(order.begin(), order.end());
  CHECK((fwd || bwd));
}

}  // namespace

TEST_CASE("orientation and distance") {
  CHECK(orient(P(0, 0), P(1, 0), P(0, 1)) == 1);
  CHECK(orient(P(0, 0), P(0, 1), P(1, 0)) == -1);
  CHECK(orient(P(0, 0), P(1, 1), P(2, 2)) == 0);
  CHECK(sq_dist(P(0, 0), P(3, 4)) == 25);
}

TEST_CASE("Delaunay examples") {
  auto t = delaunay_spanner({P(0, 0), P(1, 0), P(0, 1)});
  CHECK(t.edges.size() == 3);
  // four cocircular points: perturbation picks one diagonal
  std::vector<Point> sq{P(0, 0), P(1, 0), P(1, 1), P(0, 1)};
  auto s = delaunay_spanner(sq);
  CHECK(s.edges.size() == 5);
  CHECK(planar_straight_line(sq, s));
  std::vector<Point> circ{P(1, 0), P(3, 4, 5), P(0, 1), P(-3, 4, 5), P(-1, 0), P(-3, -4, 5), P(0, -1), P(3, -4, 5)};
  auto c = delaunay_spanner(circ);
  CHECK(c.edges.size() == 13);
  CHECK(planar_straight_line(circ, c));
  for (const auto& e : c.edges) CHECK(e.w2 == sq_dist(circ[static_cast<std::size_t>(e.u)], circ[static_cast<std::size_t>(e.v)]));
  CHECK_THROWS_AS(delaunay_spanner({P(0, 0), P(1, 1)}), Error);
  CHECK_THROWS_AS(delaunay_spanner({P(0, 0), P(1, 1), P(2, 2), P(3, 3)}), Error);
}

TEST_CASE("Delaunay on random point sets") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto inst = gen_random_points(seed, 10 + static_cast<int>(seed % 4), 5);
    auto ps = point_set(inst);
    auto g = delaunay_spanner(ps.points);
    int n = static_cast<int>(ps.points.size());
    CHECK(static_cast<int>(g.edges.size()) <= 3 * n - 6);
    CHECK(planar_straight_line(ps.points, g));
    CHECK(spanner_ratio(ps.points, g) <= 2.5);
  }
}

TEST_CASE("contraction") {
  // nothing below threshold
  auto g = with_weights(4, {{0, 1, Q(1)}, {1, 2, Q(1)}, {2, 3, Q(1)}, {3, 0, Q(1)}});
  auto c = contract_small_edges(g, {0, 1, 2}, 3, 4);
  CHECK(c.g.n == 4);
  CHECK(c.g.edges.size() == 4);
  CHECK(c.anchors == std::vector<int>{0, 1, 2});
  // a free point on top of an anchor merges into it
  auto g2 = with_weights(4, {{0, 1, Q(1)}, {1, 2, Q(1)}, {2, 0, Q(1)}, {3, 1, Q(0)}, {3, 2, Q(1)}});
  auto c2 = contract_small_edges(g2, {0, 1, 2}, 3, 4);
  CHECK(c2.g.n == 3);
  CHECK(c2.group[3] == c2.group[1]);
  CHECK(c2.rep[static_cast<std::size_t>(c2.group[3])] == 1);
  // just under (2/(kn))^2 merges, just above does not
  Q thr = rat(4, 3 * 3 * 4 * 4);
  auto g3 = with_weights(4, {{0, 1, Q(1)}, {1, 2, Q(1)}, {2, 0, Q(1)}, {3, 0, thr - rat(1, 1000000)}});
  CHECK(contract_small_edges(g3, {0, 1, 2}, 3, 4).g.n == 3);
  auto g4 = with_weights(4, {{0, 1, Q(1)}, {1, 2, Q(1)}, {2, 0, Q(1)}, {3, 0, thr}});
  CHECK(contract_small_edges(g4, {0, 1, 2}, 3, 4).g.n == 4);
  // two anchors that close together are rejected
  auto g5 = with_weights(3, {{0, 1, Q(0)}, {1, 2, Q(1)}, {2, 0, Q(1)}});
  CHECK_THROWS_AS(contract_small_edges(g5, {0, 1, 2}, 3, 3), Error);
}

TEST_CASE("path lengths") {
  CHECK(path_edges(Q(1), 4, 8) == 16);
  CHECK(path_edges(Q(16), 4, 8) == 64);                  // w = k caps at ceil(k^2 n / 2)
  CHECK(path_edges(Q(100), 3, 5) == 23);                 // ceil(45 / 2)
  CHECK(path_edges(rat(4, 16 * 64), 4, 8) == 1);         // w = 2/(kn)
  CHECK(path_edges(Q(4), 4, 8) == 32);
  CHECK_THROWS_AS(path_edges(rat(1, 1000000), 4, 8), Error);
  // floor(k n w / 2) on random rational weights
  for (int i = 1; i <= 50; ++i) {
    Q w2 = rat(i * i * 7, 97);
    int k = 4 + i % 5, n = 10 + i % 7;
    Z e = path_edges(w2, k, n);
    if (w2 >= Q(k) * k) continue;
    Q x = rat(static_cast<long>(k) * n, 2);
    x = x * x * w2;          // (k n w / 2)^2
    CHECK(Q(e * e) <= x);
    CHECK(Q((e + 1) * (e + 1)) > x);
  }
  auto u = to_unweighted(with_weights(3, {{0, 1, Q(1)}, {1, 2, Q(4)}, {2, 0, Q(1)}}), 3, 3);
  CHECK(u.g.n() == 3 + 3 + 8 + 3);
  CHECK(u.chains[1].size() == 10);
  CHECK(u.chains[1].front() == 1);
  CHECK(u.chains[1].back() == 2);
}

TEST_CASE("host cycles") {
  for (std::uint64_t seed : {1, 2, 3}) {
    for (int interior : {0, 3}) {
      CAPTURE(seed);
      CAPTURE(interior);
      int k = interior == 0 ? 12 : 10;
      auto ps = point_set(gen_random_points(seed, k, interior));
      int n = static_cast<int>(ps.points.size());
      auto sp = delaunay_spanner(ps.points);
      auto ct = contract_small_edges(sp, ps.anchors, k, n);
      auto uw = to_unweighted(ct.g, k, n);
      std::vector<int> host;
      try {
        host = build_host_cycle(uw.g, ct.anchors);
      } catch (const Error& e) {
        REQUIRE(e.kind() == ErrorKind::Construction);
        host = hull_host_cycle(ct, uw);
      }
      check_simple_host(uw.g, host, ct.anchors, false);
      auto hull = hull_host_cycle(ct, uw);
      check_simple_host(uw.g, hull, ct.anchors, true);
    }
  }
}

TEST_CASE("Euclidean retraction") {
  // anchors only
  auto ps = point_set(gen_random_points(4, 12, 0));
  auto r = euclid_retract(ps);
  for (int i = 0; i < 12; ++i) CHECK(r.f.assignment[static_cast<std::size_t>(i)] == i);
  CHECK(r.ratio_sq == 1);
  CHECK(!r.brute_force);

  for (std::uint64_t seed : {5, 6, 7}) {
    CAPTURE(seed);
    auto q = point_set(gen_random_points(seed, 12, 1));
    auto e = euclid_retract(q);
    for (int a : q.anchors) CHECK(e.f.assignment[static_cast<std::size_t>(a)] == a);
    CHECK(e.ratio_sq == max_ratio_sq(q, e.f.assignment));
    CHECK(e.ratio_sq <= Q(78 * 78));
    auto b = brute_force_ratio(q);
    CHECK(b.ratio_sq <= e.ratio_sq);
    CHECK(b.ratio_sq == max_ratio_sq(q, b.assignment));
  }
}

TEST_CASE("small k goes to brute force") {
  for (int k : {4, 6, 9}) {
    CAPTURE(k);
    auto ps = point_set(gen_random_points(11, k, 3));
    auto e = euclid_retract(ps);
    CHECK(e.brute_force);
    REQUIRE(e.f.assignment.size() == ps.points.size());
    CHECK(e.ratio_sq == max_ratio_sq(ps, e.f.assignment));
    CHECK(e.ratio_sq >= 1);
  }
}

TEST_CASE("point set validation") {
  Instance g = gen_grid(3);
  CHECK_THROWS_AS(point_set(g), Error);
  auto ps = point_set(gen_random_points(2, 10, 2));
  std::vector<int> bad(ps.points.size(), ps.anchors[0]);
  CHECK_THROWS_AS(max_ratio_sq(ps, bad), Error);
}
