#pragma once

#include <vector>

#include "retract/core.hpp"

namespace retract::planar {

// Half-edge rotation system. Dart 2e runs edges[e].first -> edges[e].second, dart 2e+1 the reverse.
// rot[v] lists darts leaving v in counterclockwise order. The face of a dart lies on its left;
// next(d) = the dart just clockwise of twin(d) around head(d).
class PlaneEmbedding {
 public:
  PlaneEmbedding() = default;
  explicit PlaneEmbedding(int n) : n_(n), rot_(static_cast<std::size_t>(n)) {}

  int n() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  static int twin(int d) { return d ^ 1; }
  int tail(int d) const { return d & 1 ? edges_[static_cast<std::size_t>(d >> 1)].second : edges_[static_cast<std::size_t>(d >> 1)].first; }
  int head(int d) const { return tail(twin(d)); }
  const std::vector<int>& rotation(int v) const { return rot_[static_cast<std::size_t>(v)]; }
  int next(int d) const;
  int prev_out(int d) const;  // dart just clockwise of d around tail(d)

  int add_vertex();
  // appends an edge; caller positions the darts with place_after / set_rotation
  int add_edge(int u, int v);
  // inserts dart x right after dart `after` (both leaving the same vertex) in ccw order
  void place_after(int after, int x);
  void push_dart(int x);  // for a vertex with empty rotation, or to build rotations in order
  void set_rotation(int v, std::vector<int> darts);
  void mirror();

  // ── faces ──
  void rebuild_faces();
  int face_count() const { return static_cast<int>(faces_.size()); }
  int face_of(int d) const { return dart_face_[static_cast<std::size_t>(d)]; }
  const std::vector<int>& face_darts(int f) const { return faces_[static_cast<std::size_t>(f)]; }
  std::vector<int> face_vertices(int f) const;
  int outer_face() const { return outer_; }
  void set_outer_face(int f) { outer_ = f; }
  int dart_between(int u, int v) const;  // -1 if none; first match
  bool faces_simple() const;            // every face boundary visits each vertex once

 private:
  void fix_positions(int v);
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> rot_;
  std::vector<int> pos_;  // dart -> index in rot[tail]
  std::vector<int> dart_face_;
  std::vector<std::vector<int>> faces_;
  int outer_ = -1;
};

// Boyer-Myrvold embedding of g; throws NotPlanar
PlaneEmbedding embed_graph(const Graph& g);

// finds the face traced exactly along the anchor cycle and makes it the outer face, mirroring so
// that the outer face runs against anchor order (bounded faces then run with it). false if none.
bool select_outer_face(PlaneEmbedding& emb, const std::vector<int>& anchors);

}  // namespace retract::planar
