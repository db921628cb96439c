#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>

#include "families.hpp"
#include "retract/bounds.hpp"
#include "retract/oracle.hpp"
#include "retract/planar.hpp"

using namespace retract;
using namespace retract::bounds;

namespace {

// some simple cycle with fewer than ell vertices and a nonzero sum, by plain DFS
bool exhaustive_violation(const Instance& inst, const EdgeAssignment& x, int ell) {
  int n = inst.n();
  std::vector<int> path;
  std::vector<char> on(static_cast<std::size_t>(n), 0);
  bool found = false;
  std::function<void(int, int, Q)> dfs = [&](int src, int v, Q acc) {
    if (found) return;
    for (int w : inst.graph().neighbors(v)) {
      Q next = acc + x.value(inst, v, w);
      if (w == src && path.size() >= 3 && next != 0) {
        found = true;
        return;
      }
      if (w <= src || on[static_cast<std::size_t>(w)] || static_cast<int>(path.size()) + 1 >= ell) continue;
      on[static_cast<std::size_t>(w)] = 1;
      path.push_back(w);
      dfs(src, w, next);
      path.pop_back();
      on[static_cast<std::size_t>(w)] = 0;
    }
  };
  for (int s = 0; s < n && !found; ++s) {
    path = {s};
    on[static_cast<std::size_t>(s)] = 1;
    dfs(s, s, Q(0));
    on[static_cast<std::size_t>(s)] = 0;
  }
  return found;
}

bool is_cycle_in(const Instance& inst, const std::vector<int>& c) {
  for (std::size_t i = 0; i < c.size(); ++i)
    if (!inst.graph().has_edge(c[i], c[(i + 1) % c.size()])) return false;
  auto s = c;
  std::sort(s.begin(), s.end());
  return std::adjacent_find(s.begin(), s.end()) == s.end();
}

}  // namespace

TEST_CASE("segment coloring") {
  CHECK(segment_color(8, 0) == 0);
  CHECK(segment_color(8, 1) == 0);
  CHECK(segment_color(8, 2) == 1);
  CHECK(segment_color(8, 4) == 2);
  CHECK(segment_color(8, 7) == 2);
}

TEST_CASE("Sperner certificates") {
  // m = 3, interior colored 0
  Instance g3 = gen_grid(3);
  std::vector<int> c(9, 0);
  for (int i = 0; i < g3.k(); ++i) c[static_cast<std::size_t>(g3.anchors()[static_cast<std::size_t>(i)])] = segment_color(g3.k(), i);
  auto t = sperner_certificate(3, c);
  std::vector<int> cols{c[static_cast<std::size_t>(t[0])], c[static_cast<std::size_t>(t[1])], c[static_cast<std::size_t>(t[2])]};
  std::sort(cols.begin(), cols.end());
  CHECK(cols == std::vector<int>{0, 1, 2});

  // m = 4, coloring read off the planar optimum
  Instance g4 = gen_grid(4);
  auto sol = planar::optimal_retract_planar(g4);
  auto col = coloring_from_retraction(g4, sol.f);
  auto t4 = sperner_certificate(4, col);
  std::vector<int> c4;
  for (int v : t4) c4.push_back(col[static_cast<std::size_t>(v)]);
  std::sort(c4.begin(), c4.end());
  CHECK(c4 == std::vector<int>{0, 1, 2});

  CHECK_THROWS_AS(sperner_certificate(3, std::vector<int>(9, 0)), Error);
  CHECK_THROWS_AS(sperner_certificate(3, std::vector<int>(8, 0)), Error);
}

TEST_CASE("Sperner bound is sound") {
  for (int m = 3; m <= 6; ++m) {
    CAPTURE(m);
    int lb = sperner_lower_bound(m);
    CHECK(lb >= 1);
    CHECK(lb <= planar::optimal_retract_planar(gen_grid(m)).report.max_stretch);
  }
  CHECK(grid_side(gen_grid(5)) == 5);
  CHECK_FALSE(grid_side(gen_wheel(4)));
  CHECK_FALSE(grid_side(gen_column_deleted_grid(4)));
}

TEST_CASE("separation oracle examples") {
  Instance w = gen_wheel(4);
  auto x = host_only_assignment(w);
  auto vc = separation_oracle(w, x, 4);
  REQUIRE(vc);
  CHECK(vc->cycle.size() == 3);
  CHECK(abs(vc->sum) == 1);
  CHECK(cycle_sum(w, x, vc->cycle) == vc->sum);
  CHECK_FALSE(separation_oracle(w, x, 3));

  for (int k : {4, 7}) {
    Instance c = gen_cycle(k);
    CHECK_FALSE(separation_oracle(c, host_only_assignment(c), k));
  }

  // retraction steps never wind around short cycles
  for (auto& [name, inst] : fam::small_planar(15, 5100)) {
    CAPTURE(name);
    auto sol = planar::optimal_retract_planar(inst);
    int s = sol.report.max_stretch;
    int ell = (inst.k() + s - 1) / s;
    auto xr = assignment_from_retraction(inst, sol.f);
    if (ell >= 2) CHECK_FALSE(separation_oracle(inst, xr, ell));
  }
}

TEST_CASE("separation oracle agrees with cycle enumeration") {
  int checked = 0;
  for (auto& [name, inst] : fam::small_planar(40, 5200)) {
    if (inst.n() > 12) continue;
    CAPTURE(name);
    std::vector<EdgeAssignment> xs{host_only_assignment(inst)};
    auto opt = oracle::brute_force_optimal(inst);
    xs.push_back(assignment_from_retraction(inst, opt.f));
    // a fractional one
    EdgeAssignment half = host_only_assignment(inst);
    for (std::size_t e = 0; e < half.x.size(); ++e)
      if (half.x[e] == 0) half.x[e] = rat(static_cast<long>(e % 3) - 1, 2);
    xs.push_back(half);
    for (const auto& x : xs)
      for (int ell = 4; ell <= inst.k(); ++ell) {
        auto vc = separation_oracle(inst, x, ell);
        CHECK(vc.has_value() == exhaustive_violation(inst, x, ell));
        if (vc) {
          CHECK(is_cycle_in(inst, vc->cycle));
          CHECK(static_cast<int>(vc->cycle.size()) < ell);
          CHECK(vc->sum != 0);
        }
        ++checked;
      }
  }
  CHECK(checked > 50);
}

TEST_CASE("LP feasibility examples") {
  Instance w = gen_wheel(4);
  auto r4 = lp_feasible(w, 4);
  CHECK_FALSE(r4.feasible);
  REQUIRE(r4.certificate.size() == 4);
  for (const auto& c : r4.certificate) CHECK(c.cycle.size() == 3);
  CHECK(lp_feasible(w, 3).feasible);
  for (int k : {3, 6, 9}) {
    Instance c = gen_cycle(k);
    auto r = lp_feasible(c, k);
    CHECK(r.feasible);
    CHECK_FALSE(separation_oracle(c, r.x, k));
  }
}

TEST_CASE("LP bound values") {
  CHECK(lp_stretch_lower_bound(gen_wheel(4)).value == 1);
  CHECK(lp_stretch_lower_bound(gen_wheel(4)).ell_min == 4);
  auto c = lp_stretch_lower_bound(gen_cycle(6));
  CHECK(c.value == 1);
  CHECK(c.ell_min == 7);
  auto g5 = lp_stretch_lower_bound(gen_grid(5));
  CHECK(g5.value >= 2);
  CHECK(g5.value <= planar::optimal_retract_planar(gen_grid(5)).report.max_stretch);
}

TEST_CASE("LP feasibility is monotone and the bound is sound") {
  for (auto& [name, inst] : fam::small_planar(20, 5300)) {
    CAPTURE(name);
    bool infeasible = false;
    for (int ell = 2; ell <= inst.k(); ++ell) {
      auto r = lp_feasible(inst, ell);
      if (infeasible) CHECK_FALSE(r.feasible);
      if (r.feasible) CHECK_FALSE(separation_oracle(inst, r.x, ell));
      infeasible = infeasible || !r.feasible;
    }
    CHECK(lp_stretch_lower_bound(inst).value <= planar::optimal_retract_planar(inst).report.max_stretch);
  }
}

TEST_CASE("integer distance bound") {
  for (int m : {3, 4, 5, 8}) CHECK(distance_stretch_bound(gen_grid(m)) == 2);
  CHECK(distance_stretch_bound(gen_wheel(4)) == 1);
  std::vector<Edge> e;
  for (int i = 0; i < 8; ++i) e.push_back({std::min(i, (i + 1) % 8), std::max(i, (i + 1) % 8)});
  e.push_back({0, 4});
  CHECK(distance_stretch_bound(Instance(8, e, {0, 1, 2, 3, 4, 5, 6, 7})) == 4);
}
