#pragma once

#include <optional>
#include <vector>

#include "retract/core.hpp"
#include "retract/embedding.hpp"

namespace retract::planar {

struct Reduced {
  Instance inst;
  std::vector<int> rep;          // original vertex -> reduced vertex it collapses onto (itself if kept)
  std::vector<int> to_original;  // reduced id -> original id
};
Reduced reduce_two_connected(const Instance& inst);
Retraction lift_reduced(const Reduced& red, const Retraction& f);

// H together with one component of G - V(H) (or one chord of H); anchors keep ids 0..k-1
struct SubInstance {
  Instance inst;
  std::vector<int> to_parent;
};
std::vector<SubInstance> bridge_decompose(const Instance& inst);
Retraction merge_parts(const Instance& inst, const std::vector<SubInstance>& parts, const std::vector<Retraction>& fs);

struct EmbedResult {
  bool embedded = false;
  PlaneEmbedding embedding;          // valid when embedded
  std::vector<SubInstance> parts;    // otherwise
};
EmbedResult plane_embed(const Instance& inst);

// Working plane graph for one bounded face F. The terminals are implicit: s sees every vertex of F,
// t every vertex of H.
struct FaceArena {
  PlaneEmbedding emb;
  int original_n = 0;
  int face_dart = -1;   // a dart of F
  int outer_dart = -1;  // a dart of the outer face
  int k = 0;
  std::vector<int> anchor_index;  // per original vertex
  std::vector<int> face_verts;
  std::vector<int> host_verts;
  int original_edges = 0;
};

FaceArena arena_for_face(const PlaneEmbedding& emb, int face, const Instance& inst);
// fills every bounded face other than F with nested rings until all are triangles
FaceArena triangulate_for_face(const PlaneEmbedding& emb, int face, const Instance& inst);
std::size_t triangulation_cost(const PlaneEmbedding& emb, int face);

struct CurveSet {
  int face = -1;
  std::vector<std::vector<int>> paths;  // F vertex first, H vertex last
  std::vector<std::vector<int>> darts;  // darts of arena.emb along each path
};

// vertex-disjoint s-t paths in the triangulated arena (unit-capacity split graph)
CurveSet max_disjoint_paths(const FaceArena& arena);
// same count computed on G plus one uncapacitated node per face; crossing chords are swapped
// apart and then inserted into arena.emb as edges
CurveSet face_hub_curves(FaceArena& arena);

Retraction retraction_from_curves(const FaceArena& arena, const CurveSet& curves);

enum class CurveRoute { Auto, Triangulated, FaceHub };

struct Stretch1Options {
  CurveRoute route = CurveRoute::Auto;
  std::size_t gadget_cap = 400000;  // Auto switches to the face-hub route past this many gadget vertices
  bool gallop = false;              // l = 1,2,4,.. then bisect, instead of bisecting [1, k/2]
};

// winning face and curves per part, in the reduced ids of that part
struct CurveReport {
  std::vector<int> face_vertices;
  std::vector<std::vector<int>> paths;
};

std::optional<Retraction> stretch1_retract(const Instance& inst, const Stretch1Options& opt = {},
                                           std::vector<CurveReport>* curves = nullptr);

struct PlanarResult {
  Retraction f;
  StretchReport report;
  std::vector<CurveReport> curves;
};
PlanarResult optimal_retract_planar(const Instance& inst, const Stretch1Options& opt = {});

// +1 per step with anchor order, -1 against, 0 when equal; throws if a step jumps
int cycle_score(const Instance& inst, const std::vector<int>& cycle, const Retraction& f);

}  // namespace retract::planar
