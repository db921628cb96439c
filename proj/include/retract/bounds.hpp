#pragma once

#include <array>
#include <optional>
#include <vector>

#include "retract/core.hpp"

namespace retract::bounds {

// ── distance ──

// stretch is integral, so ceil of the rational distance bound; throws Validation when anchors are disconnected
int distance_stretch_bound(const Instance& inst);

// ── Sperner ──

// the three-segment boundary coloring of anchor index i out of k
int segment_color(int k, int i);
// color every vertex by the segment of its image
std::vector<int> coloring_from_retraction(const Instance& grid, const Retraction& f);
// trichromatic triangle of the NW-SE triangulated m x m grid (vertex ids r*m+c)
std::array<int, 3> sperner_certificate(int m, const std::vector<int>& coloring);
// smallest stretch compatible with some trichromatic triangle under the segment coloring
int sperner_lower_bound(int m);
// m when inst is gen_grid(m) up to equality, else nullopt
std::optional<int> grid_side(const Instance& inst);

// ── cycle LP ──

// one value per graph edge in stored orientation (u < v); host edges carry +-1
struct EdgeAssignment {
  std::vector<Q> x;
  Q value(const Instance& inst, int u, int v) const;  // directed u -> v
};
EdgeAssignment host_only_assignment(const Instance& inst);
// x(u->v) = signed d_H step between the images of u and v
EdgeAssignment assignment_from_retraction(const Instance& inst, const Retraction& f);

struct ViolatedCycle {
  std::vector<int> cycle;  // directed, first vertex not repeated
  Q sum;
};

Q cycle_sum(const Instance& inst, const EdgeAssignment& x, const std::vector<int>& cycle);
std::optional<ViolatedCycle> separation_oracle(const Instance& inst, const EdgeAssignment& x, int ell);

struct LpResult {
  bool feasible = false;
  EdgeAssignment x;                       // when feasible
  std::vector<ViolatedCycle> certificate; // when infeasible
  int rounds = 0;
};
LpResult lp_feasible(const Instance& inst, int ell);

struct LpBound {
  int value = 1;
  int ell_min = 0;  // smallest infeasible ell, k+1 when all ell <= k are feasible
  LpResult at_min;  // certificate at ell_min (if <= k)
};
LpBound lp_stretch_lower_bound(const Instance& inst);

}  // namespace retract::bounds
