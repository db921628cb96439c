#pragma once

#include <vector>

#include "retract/core.hpp"

namespace retract::approx {

// square M = [0,side]^2, anchors at unit arc spacing along its boundary
struct GridEmbedding {
  Q side;
  Q ell;  // distance lower bound used for the boxes
  std::vector<Point> placement;
  std::vector<Point> anchor_pos;  // by anchor index
};

struct Hole {
  Point center;
  Q half_side;
  Q side() const { return 2 * half_side; }
};

// boundary point at arc parameter tau in [0, 4*side): (0,0) -> (s,0) -> (s,s) -> (0,s)
Point boundary_point(const Q& side, const Q& tau);
Q boundary_param(const Q& side, const Point& p);  // inverse, p on the boundary
Q linf(const Point& a, const Point& b);

GridEmbedding grid_embed(const Instance& inst);
// every pair satisfies d_inf <= ell * d_G
bool embedding_valid(const Instance& inst, const GridEmbedding& emb);

// guaranteed-size base side, rational and >= k/(8 sqrt n)
Q hole_base(int k, int n);
bool hole_feasible(const GridEmbedding& emb, int k, const Q& r, Point* center);
Hole find_largest_hole(const GridEmbedding& emb, int k);

Retraction project_to_cycle(const GridEmbedding& emb, const Hole& hole, const Instance& inst);

// d_H <= 1 + 10 sqrt2 k d_inf / r for every edge; first failing edge in *bad
bool projection_bound_holds(const Instance& inst, const GridEmbedding& emb, const Hole& hole, const Retraction& f,
                            Edge* bad = nullptr);
// s <= min(floor(k/2), 1 + 80 sqrt2 sqrt(n) ell)
bool guarantee_holds(int s, int k, int n, const Q& ell);

struct ApproxResult {
  Retraction f;
  StretchReport report;
  GridEmbedding embedding;
  Hole hole;
};
ApproxResult approx_retract(const Instance& inst);

}  // namespace retract::approx
