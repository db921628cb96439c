#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <boost/graph/graph_traits.hpp>
#include <boost/property_map/property_map.hpp>

#include <algorithm>

#include "retract/embedding.hpp"

namespace retract::planar {

int PlaneEmbedding::next(int d) const {
  int t = twin(d);
  int v = tail(t);
  const auto& r = rot_[static_cast<std::size_t>(v)];
  int p = pos_[static_cast<std::size_t>(t)];
  int deg = static_cast<int>(r.size());
  return r[static_cast<std::size_t>((p - 1 + deg) % deg)];
}

int PlaneEmbedding::prev_out(int d) const {
  const auto& r = rot_[static_cast<std::size_t>(tail(d))];
  int p = pos_[static_cast<std::size_t>(d)];
  int deg = static_cast<int>(r.size());
  return r[static_cast<std::size_t>((p - 1 + deg) % deg)];
}

int PlaneEmbedding::add_vertex() {
  rot_.emplace_back();
  return n_++;
}

int PlaneEmbedding::add_edge(int u, int v) {
  edges_.push_back({u, v});
  pos_.push_back(-1);
  pos_.push_back(-1);
  return static_cast<int>(edges_.size()) - 1;
}

void PlaneEmbedding::fix_positions(int v) {
  const auto& r = rot_[static_cast<std::size_t>(v)];
  for (std::size_t i = 0; i < r.size(); ++i) pos_[static_cast<std::size_t>(r[i])] = static_cast<int>(i);
}

void PlaneEmbedding::place_after(int after, int x) {
  int v = tail(after);
  auto& r = rot_[static_cast<std::size_t>(v)];
  r.insert(r.begin() + pos_[static_cast<std::size_t>(after)] + 1, x);
  fix_positions(v);
}

void PlaneEmbedding::push_dart(int x) {
  int v = tail(x);
  rot_[static_cast<std::size_t>(v)].push_back(x);
  pos_[static_cast<std::size_t>(x)] = static_cast<int>(rot_[static_cast<std::size_t>(v)].size()) - 1;
}

void PlaneEmbedding::set_rotation(int v, std::vector<int> darts) {
  rot_[static_cast<std::size_t>(v)] = std::move(darts);
  fix_positions(v);
}

void PlaneEmbedding::mirror() {
  for (int v = 0; v < n_; ++v) {
    auto& r = rot_[static_cast<std::size_t>(v)];
    std::reverse(r.begin(), r.end());
    fix_positions(v);
  }
  rebuild_faces();
}

void PlaneEmbedding::rebuild_faces() {
  dart_face_.assign(edges_.size() * 2, -1);
  faces_.clear();
  for (int d = 0; d < static_cast<int>(edges_.size() * 2); ++d) {
    if (dart_face_[static_cast<std::size_t>(d)] >= 0) continue;
    int f = static_cast<int>(faces_.size());
    faces_.emplace_back();
    int x = d;
    do {
      dart_face_[static_cast<std::size_t>(x)] = f;
      faces_.back().push_back(x);
      x = next(x);
    } while (x != d);
  }
  if (outer_ >= static_cast<int>(faces_.size())) outer_ = -1;
}

std::vector<int> PlaneEmbedding::face_vertices(int f) const {
  std::vector<int> out;
  for (int d : faces_[static_cast<std::size_t>(f)]) out.push_back(tail(d));
  return out;
}

int PlaneEmbedding::dart_between(int u, int v) const {
  for (int d : rot_[static_cast<std::size_t>(u)])
    if (head(d) == v) return d;
  return -1;
}

bool PlaneEmbedding::faces_simple() const {
  std::vector<int> seen(static_cast<std::size_t>(n_), -1);
  for (int f = 0; f < face_count(); ++f)
    for (int d : faces_[static_cast<std::size_t>(f)]) {
      int v = tail(d);
      if (seen[static_cast<std::size_t>(v)] == f) return false;
      seen[static_cast<std::size_t>(v)] = f;
    }
  return true;
}

PlaneEmbedding embed_graph(const Graph& g) {
  using namespace boost;
  using BG = adjacency_list<vecS, vecS, undirectedS, no_property, property<edge_index_t, int>>;
  BG bg(static_cast<std::size_t>(g.n()));
  const auto& edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) add_edge(static_cast<std::size_t>(edges[i].first), static_cast<std::size_t>(edges[i].second), static_cast<int>(i), bg);
  using EdgeDesc = graph_traits<BG>::edge_descriptor;
  std::vector<std::vector<EdgeDesc>> emb(static_cast<std::size_t>(g.n()));
  bool planar = boyer_myrvold_planarity_test(
      boyer_myrvold_params::graph = bg,
      boyer_myrvold_params::embedding = make_iterator_property_map(emb.begin(), get(vertex_index, bg)));
  if (!planar) fail(ErrorKind::NotPlanar, "guest graph is not planar");
  PlaneEmbedding pe(g.n());
  for (const auto& e : edges) pe.add_edge(e.first, e.second);
  auto eidx = get(edge_index, bg);
  for (int v = 0; v < g.n(); ++v) {
    std::vector<int> darts;
    for (const auto& ed : emb[static_cast<std::size_t>(v)]) {
      int e = eidx[ed];
      darts.push_back(edges[static_cast<std::size_t>(e)].first == v ? 2 * e : 2 * e + 1);
    }
    pe.set_rotation(v, std::move(darts));
  }
  pe.rebuild_faces();
  return pe;
}

bool select_outer_face(PlaneEmbedding& emb, const std::vector<int>& anchors) {
  int k = static_cast<int>(anchors.size());
  std::vector<int> idx(static_cast<std::size_t>(emb.n()), -1);
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(anchors[static_cast<std::size_t>(i)])] = i;
  for (int f = 0; f < emb.face_count(); ++f) {
    const auto& ds = emb.face_darts(f);
    if (static_cast<int>(ds.size()) != k) continue;
    int dir = 0;  // +1 with anchor order, -1 against
    bool ok = true;
    for (int d : ds) {
      int a = idx[static_cast<std::size_t>(emb.tail(d))], b = idx[static_cast<std::size_t>(emb.head(d))];
      if (a < 0 || b < 0) {
        ok = false;
        break;
      }
      int step = (b - a + k) % k == 1 ? 1 : ((a - b + k) % k == 1 ? -1 : 0);
      if (step == 0 || (dir != 0 && step != dir)) {
        ok = false;
        break;
      }
      dir = step;
    }
    if (!ok) continue;
    int keep_dart = ds[0];
    if (dir > 0) {
      emb.mirror();
      keep_dart = PlaneEmbedding::twin(keep_dart);
    }
    emb.set_outer_face(emb.face_of(keep_dart));
    return true;
  }
  return false;
}

}  // namespace retract::planar
