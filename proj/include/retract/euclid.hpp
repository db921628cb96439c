#pragma once

#include <optional>
#include <vector>

#include "retract/core.hpp"
#include "retract/planar.hpp"

namespace retract::euclid {

struct PointSet {
  std::vector<Point> points;
  std::vector<int> anchors;  // indices into points, cycle order
};
// requires coordinates; checks unit anchor spacing within [1, 1+1/k^2]
PointSet point_set(const Instance& inst);

Q sq_dist(const Point& a, const Point& b);
int orient(const Point& a, const Point& b, const Point& c);  // sign of the ccw determinant

struct WEdge {
  int u, v;
  Q w2;  // squared Euclidean length
};
struct WeightedGraph {
  int n = 0;
  std::vector<WEdge> edges;
};

// Delaunay triangulation under symbolic lifting perturbation; throws Input for < 3 or collinear points
WeightedGraph delaunay_spanner(const std::vector<Point>& pts);
// max over pairs of graph distance / Euclidean distance (floating point, for checks)
double spanner_ratio(const std::vector<Point>& pts, const WeightedGraph& g);

struct Contracted {
  WeightedGraph g;
  std::vector<int> group;      // point -> contracted vertex
  std::vector<int> rep;        // contracted vertex -> smallest point id in it
  std::vector<int> anchors;    // contracted ids of the anchors, cycle order
};
Contracted contract_small_edges(const WeightedGraph& g, const std::vector<int>& anchors, int k, int n);

// edges of the unweighted path replacing a weight-w edge (w given squared)
Z path_edges(const Q& w2, int k, int n);

struct Unweighted {
  Graph g;
  int base_n = 0;
  std::vector<std::vector<int>> chains;  // per weighted edge: u, internal..., v
};
Unweighted to_unweighted(const WeightedGraph& g, int k, int n);

// host cycle through four shortest-path pieces; anchors in cycle order (k >= 10)
std::vector<int> build_host_cycle(const Graph& g, const std::vector<int>& anchors);
// the subdivided anchor polygon; used when the path construction does not close into a simple cycle
std::vector<int> hull_host_cycle(const Contracted& ct, const Unweighted& uw);

struct EuclidResult {
  Retraction f;
  Q ratio_sq;
  int planar_stretch = 0;
  int spanner_edges = 0;
  int contracted_n = 0;
  int unweighted_n = 0;
  int host_length = 0;
  bool brute_force = false;
  bool hull_host = false;
};

struct EuclidOptions {
  planar::Stretch1Options planar{planar::CurveRoute::FaceHub, 400000, true};
};

EuclidResult euclid_retract(const PointSet& ps, const EuclidOptions& opt = {});

// max over pairs of d(f(u),f(v))^2 / d(u,v)^2; anchors must be fixed
Q max_ratio_sq(const PointSet& ps, const std::vector<int>& assignment);
// optimum of the same objective by branch and bound (floating-point pruning, exact final value)
struct BruteRatio {
  std::vector<int> assignment;
  Q ratio_sq;
};
BruteRatio brute_force_ratio(const PointSet& ps, std::uint64_t max_states = 2000000000ULL);

}  // namespace retract::euclid
