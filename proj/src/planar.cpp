#include "retract/planar.hpp"

#include <algorithm>
#include <cstdlib>
#include <future>
#include <limits>
#include <map>
#include <numeric>
#include <unordered_map>

#include "flow.hpp"

namespace retract::planar {

namespace {

// ── blocks (Hopcroft-Tarjan with an edge stack) ──
std::vector<int> edge_blocks(const Graph& g) {
  int n = g.n();
  std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(n));
  const auto& edges = g.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    adj[static_cast<std::size_t>(edges[e].first)].push_back({edges[e].second, static_cast<int>(e)});
    adj[static_cast<std::size_t>(edges[e].second)].push_back({edges[e].first, static_cast<int>(e)});
  }
  std::vector<int> disc(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0), block(edges.size(), -1);
  std::vector<int> estack;
  struct Frame {
    int v, pe;
    std::size_t i;
  };
  int timer = 0, blocks = 0;
  for (int r = 0; r < n; ++r) {
    if (disc[static_cast<std::size_t>(r)] >= 0) continue;
    std::vector<Frame> st{{r, -1, 0}};
    disc[static_cast<std::size_t>(r)] = low[static_cast<std::size_t>(r)] = timer++;
    while (!st.empty()) {
      Frame& fr = st.back();
      int v = fr.v;
      if (fr.i < adj[static_cast<std::size_t>(v)].size()) {
        auto [w, e] = adj[static_cast<std::size_t>(v)][fr.i++];
        if (e == fr.pe) continue;
        if (disc[static_cast<std::size_t>(w)] < 0) {
          estack.push_back(e);
          disc[static_cast<std::size_t>(w)] = low[static_cast<std::size_t>(w)] = timer++;
          st.push_back({w, e, 0});
        } else if (disc[static_cast<std::size_t>(w)] < disc[static_cast<std::size_t>(v)]) {
          estack.push_back(e);
          low[static_cast<std::size_t>(v)] = std::min(low[static_cast<std::size_t>(v)], disc[static_cast<std::size_t>(w)]);
        }
        continue;
      }
      int pe = fr.pe;
      st.pop_back();
      if (st.empty()) break;
      int p = st.back().v;
      low[static_cast<std::size_t>(p)] = std::min(low[static_cast<std::size_t>(p)], low[static_cast<std::size_t>(v)]);
      if (low[static_cast<std::size_t>(v)] >= disc[static_cast<std::size_t>(p)]) {
        for (;;) {
          int e = estack.back();
          estack.pop_back();
          block[static_cast<std::size_t>(e)] = blocks;
          if (e == pe) break;
        }
        ++blocks;
      }
    }
  }
  return block;
}

int env_threads() {
  const char* s = std::getenv("RETRACT_THREADS");
  if (!s) return 1;
  int t = std::atoi(s);
  return std::clamp(t, 1, 64);
}

}  // namespace

// ── 2-connected reduction ──

Reduced reduce_two_connected(const Instance& inst) {
  const Graph& g = inst.graph();
  auto block = edge_blocks(g);
  int a0 = inst.anchors()[0], a1 = inst.anchors()[1];
  int hb = -1;
  for (std::size_t e = 0; e < g.edges().size(); ++e) {
    auto [u, v] = g.edges()[e];
    if ((u == std::min(a0, a1)) && (v == std::max(a0, a1))) hb = block[e];
  }
  if (hb < 0) fail(ErrorKind::Invariant, "host edge missing from block structure");
  std::vector<char> in_b(static_cast<std::size_t>(g.n()), 0);
  for (std::size_t e = 0; e < g.edges().size(); ++e)
    if (block[e] == hb) in_b[static_cast<std::size_t>(g.edges()[e].first)] = in_b[static_cast<std::size_t>(g.edges()[e].second)] = 1;
  Reduced red;
  std::vector<int> new_id(static_cast<std::size_t>(g.n()), -1);
  for (int v = 0; v < g.n(); ++v)
    if (in_b[static_cast<std::size_t>(v)]) {
      new_id[static_cast<std::size_t>(v)] = static_cast<int>(red.to_original.size());
      red.to_original.push_back(v);
    }
  red.rep.assign(static_cast<std::size_t>(g.n()), -1);
  for (int v = 0; v < g.n(); ++v) {
    if (!in_b[static_cast<std::size_t>(v)] || red.rep[static_cast<std::size_t>(v)] >= 0) continue;
    red.rep[static_cast<std::size_t>(v)] = new_id[static_cast<std::size_t>(v)];
    std::vector<int> q{v};
    for (std::size_t h = 0; h < q.size(); ++h)
      for (int w : g.neighbors(q[h]))
        if (!in_b[static_cast<std::size_t>(w)] && red.rep[static_cast<std::size_t>(w)] < 0) {
          red.rep[static_cast<std::size_t>(w)] = new_id[static_cast<std::size_t>(v)];
          q.push_back(w);
        }
  }
  for (int v = 0; v < g.n(); ++v)
    if (red.rep[static_cast<std::size_t>(v)] < 0) fail(ErrorKind::Validation, "guest graph is disconnected");
  std::vector<Edge> edges;
  for (auto [u, v] : g.edges())
    if (in_b[static_cast<std::size_t>(u)] && in_b[static_cast<std::size_t>(v)]) edges.push_back({new_id[static_cast<std::size_t>(u)], new_id[static_cast<std::size_t>(v)]});
  std::vector<int> anchors;
  for (int a : inst.anchors()) anchors.push_back(new_id[static_cast<std::size_t>(a)]);
  red.inst = Instance(static_cast<int>(red.to_original.size()), edges, anchors);
  return red;
}

Retraction lift_reduced(const Reduced& red, const Retraction& f) {
  Retraction out;
  out.assignment.resize(red.rep.size());
  for (std::size_t v = 0; v < red.rep.size(); ++v)
    out.assignment[v] = red.to_original[static_cast<std::size_t>(f.assignment[static_cast<std::size_t>(red.rep[v])])];
  return out;
}

// ── H-bridges ──

std::vector<SubInstance> bridge_decompose(const Instance& inst) {
  const Graph& g = inst.graph();
  int k = inst.k();
  std::vector<int> comp(static_cast<std::size_t>(g.n()), -1);
  int comps = 0;
  for (int v = 0; v < g.n(); ++v) {
    if (inst.is_anchor(v) || comp[static_cast<std::size_t>(v)] >= 0) continue;
    comp[static_cast<std::size_t>(v)] = comps;
    std::vector<int> q{v};
    for (std::size_t h = 0; h < q.size(); ++h)
      for (int w : g.neighbors(q[h]))
        if (!inst.is_anchor(w) && comp[static_cast<std::size_t>(w)] < 0) {
          comp[static_cast<std::size_t>(w)] = comps;
          q.push_back(w);
        }
    ++comps;
  }
  std::vector<std::vector<int>> members(static_cast<std::size_t>(comps));
  for (int v = 0; v < g.n(); ++v)
    if (comp[static_cast<std::size_t>(v)] >= 0) members[static_cast<std::size_t>(comp[static_cast<std::size_t>(v)])].push_back(v);
  std::vector<std::vector<Edge>> cedges(static_cast<std::size_t>(comps));
  std::vector<Edge> chords;
  for (auto [u, v] : g.edges()) {
    int cu = comp[static_cast<std::size_t>(u)], cv = comp[static_cast<std::size_t>(v)];
    if (cu >= 0 || cv >= 0) cedges[static_cast<std::size_t>(cu >= 0 ? cu : cv)].push_back({u, v});
    else if (!inst.is_host_edge(u, v)) chords.push_back({u, v});
  }
  std::vector<Edge> host;
  for (int i = 0; i < k; ++i) host.push_back({i, (i + 1) % k});
  std::vector<int> anchors(static_cast<std::size_t>(k));
  std::iota(anchors.begin(), anchors.end(), 0);
  std::vector<SubInstance> parts;
  auto local = [&](std::vector<int>& to_parent, std::vector<int>& loc, int v) {
    if (inst.is_anchor(v)) return inst.anchor_index(v);
    if (loc[static_cast<std::size_t>(v)] < 0) {
      loc[static_cast<std::size_t>(v)] = static_cast<int>(to_parent.size());
      to_parent.push_back(v);
    }
    return loc[static_cast<std::size_t>(v)];
  };
  std::vector<int> loc(static_cast<std::size_t>(g.n()), -1);
  for (int c = 0; c < comps; ++c) {
    std::vector<int> to_parent(inst.anchors());
    for (int v : members[static_cast<std::size_t>(c)]) local(to_parent, loc, v);
    std::vector<Edge> e = host;
    for (auto [u, v] : cedges[static_cast<std::size_t>(c)]) e.push_back({local(to_parent, loc, u), local(to_parent, loc, v)});
    int n = static_cast<int>(to_parent.size());
    parts.push_back({Instance(n, e, anchors), to_parent});
  }
  for (auto [u, v] : chords) {
    std::vector<Edge> e = host;
    e.push_back({inst.anchor_index(u), inst.anchor_index(v)});
    parts.push_back({Instance(k, e, anchors), inst.anchors()});
  }
  return parts;
}

Retraction merge_parts(const Instance& inst, const std::vector<SubInstance>& parts, const std::vector<Retraction>& fs) {
  Retraction out;
  out.assignment.assign(static_cast<std::size_t>(inst.n()), -1);
  for (int a : inst.anchors()) out.assignment[static_cast<std::size_t>(a)] = a;
  for (std::size_t p = 0; p < parts.size(); ++p) {
    const auto& tp = parts[p].to_parent;
    for (std::size_t v = 0; v < tp.size(); ++v)
      out.assignment[static_cast<std::size_t>(tp[v])] = tp[static_cast<std::size_t>(fs[p].assignment[v])];
  }
  for (int v = 0; v < inst.n(); ++v)
    if (out.assignment[static_cast<std::size_t>(v)] < 0) fail(ErrorKind::Invariant, "vertex left unassigned by parts");
  return out;
}

EmbedResult plane_embed(const Instance& inst) {
  EmbedResult r;
  auto parts = bridge_decompose(inst);
  if (parts.size() > 1) {
    r.parts = std::move(parts);
    return r;
  }
  r.embedding = embed_graph(inst.graph());
  if (!select_outer_face(r.embedding, inst.anchors())) {
    r.parts = std::move(parts);
    return r;
  }
  r.embedded = true;
  return r;
}

// ── face arenas ──

FaceArena arena_for_face(const PlaneEmbedding& emb, int face, const Instance& inst) {
  if (face == emb.outer_face()) fail(ErrorKind::Input, "face must be bounded");
  FaceArena a;
  a.emb = emb;
  a.original_n = emb.n();
  a.original_edges = emb.edge_count();
  a.face_dart = emb.face_darts(face)[0];
  a.outer_dart = emb.face_darts(emb.outer_face())[0];
  a.k = inst.k();
  a.anchor_index.resize(static_cast<std::size_t>(emb.n()));
  for (int v = 0; v < emb.n(); ++v) a.anchor_index[static_cast<std::size_t>(v)] = inst.anchor_index(v);
  a.face_verts = emb.face_vertices(face);
  a.host_verts = inst.anchors();
  return a;
}

namespace {

// one face, darts d_i : v_i -> v_{i+1} with the face on their left
void fill_face(PlaneEmbedding& emb, std::vector<int> ring) {
  while (ring.size() > 3) {
    int y = static_cast<int>(ring.size());
    int r = y - 1;
    std::vector<int> v(static_cast<std::size_t>(y)), c(static_cast<std::size_t>(r));
    for (int i = 0; i < y; ++i) v[static_cast<std::size_t>(i)] = emb.tail(ring[static_cast<std::size_t>(i)]);
    for (int j = 0; j < r; ++j) c[static_cast<std::size_t>(j)] = emb.add_vertex();
    std::vector<int> A(static_cast<std::size_t>(r)), B(static_cast<std::size_t>(r)), R(static_cast<std::size_t>(r));
    for (int j = 0; j < r; ++j) {
      A[static_cast<std::size_t>(j)] = emb.add_edge(v[static_cast<std::size_t>(j)], c[static_cast<std::size_t>(j)]);
      B[static_cast<std::size_t>(j)] = emb.add_edge(v[static_cast<std::size_t>(j + 1)], c[static_cast<std::size_t>(j)]);
    }
    int X = emb.add_edge(v[0], c[static_cast<std::size_t>(r - 1)]);
    for (int j = 0; j < r; ++j) R[static_cast<std::size_t>(j)] = emb.add_edge(c[static_cast<std::size_t>(j)], c[static_cast<std::size_t>((j + 1) % r)]);
    auto fwd = [](int e) { return 2 * e; };
    auto rev = [](int e) { return 2 * e + 1; };
    // boundary corners
    for (int i = 0; i < r; ++i) {
      int first = fwd(A[static_cast<std::size_t>(i)]);
      int second = i == 0 ? fwd(X) : fwd(B[static_cast<std::size_t>(i - 1)]);
      emb.place_after(ring[static_cast<std::size_t>(i)], first);
      emb.place_after(first, second);
    }
    emb.place_after(ring[static_cast<std::size_t>(y - 1)], fwd(B[static_cast<std::size_t>(r - 1)]));
    // ring vertices
    for (int j = 0; j < r; ++j) {
      std::vector<int> rot{rev(A[static_cast<std::size_t>(j)]), rev(B[static_cast<std::size_t>(j)])};
      if (j == r - 1) rot.push_back(rev(X));
      rot.push_back(fwd(R[static_cast<std::size_t>(j)]));
      rot.push_back(rev(R[static_cast<std::size_t>((j - 1 + r) % r)]));
      emb.set_rotation(c[static_cast<std::size_t>(j)], rot);
    }
    std::vector<int> inner(static_cast<std::size_t>(r));
    for (int j = 0; j < r; ++j) inner[static_cast<std::size_t>(j)] = fwd(R[static_cast<std::size_t>(j)]);
    ring = std::move(inner);
  }
}

}  // namespace

std::size_t triangulation_cost(const PlaneEmbedding& emb, int face) {
  std::size_t cost = 0;
  for (int f = 0; f < emb.face_count(); ++f) {
    if (f == face || f == emb.outer_face()) continue;
    std::size_t y = emb.face_darts(f).size();
    if (y > 3) cost += (y - 1) * y / 2 - 3;
  }
  return cost;
}

FaceArena triangulate_for_face(const PlaneEmbedding& emb, int face, const Instance& inst) {
  FaceArena a = arena_for_face(emb, face, inst);
  for (int f = 0; f < emb.face_count(); ++f) {
    if (f == face || f == emb.outer_face()) continue;
    if (emb.face_darts(f).size() > 3) fill_face(a.emb, emb.face_darts(f));
  }
  a.emb.rebuild_faces();
  a.emb.set_outer_face(a.emb.face_of(a.outer_dart));
  return a;
}

// ── curves ──

namespace {

struct Walk {
  std::vector<int> v;    // vertices
  std::vector<int> via;  // per step: -1 along an edge of G, else face id
};

// keep the segment from the last F vertex before the first H vertex
Walk trim(const Walk& w, const std::vector<char>& in_f, const std::vector<char>& in_h) {
  std::size_t j = 0;
  while (!in_h[static_cast<std::size_t>(w.v[j])]) ++j;
  std::size_t i = j;
  while (!in_f[static_cast<std::size_t>(w.v[i])]) --i;
  Walk out;
  out.v.assign(w.v.begin() + static_cast<long>(i), w.v.begin() + static_cast<long>(j) + 1);
  out.via.assign(w.via.begin() + static_cast<long>(i), w.via.begin() + static_cast<long>(j));
  return out;
}

std::vector<char> mark(int n, const std::vector<int>& vs) {
  std::vector<char> m(static_cast<std::size_t>(n), 0);
  for (int v : vs) m[static_cast<std::size_t>(v)] = 1;
  return m;
}

}  // namespace

CurveSet max_disjoint_paths(const FaceArena& arena) {
  const auto& emb = arena.emb;
  int N = emb.n();
  int s = 2 * N, t = 2 * N + 1;
  detail::Dinic flow(2 * N + 2);
  for (int v = 0; v < N; ++v) flow.add(2 * v, 2 * v + 1, 1);
  for (auto [u, v] : emb.edges()) {
    flow.add(2 * u + 1, 2 * v, 1);
    flow.add(2 * v + 1, 2 * u, 1);
  }
  for (int f : arena.face_verts) flow.add(s, 2 * f, 1);
  for (int h : arena.host_verts) flow.add(2 * h + 1, t, 1);
  int total = flow.max_flow(s, t, arena.k);
  auto in_f = mark(N, arena.face_verts), in_h = mark(N, arena.host_verts);
  CurveSet cs;
  cs.face = emb.face_of(arena.face_dart);
  for (int p = 0; p < total; ++p) {
    Walk w;
    int x = s;
    while (x != t) {
      int arc = flow.first(x);
      while (arc >= 0 && !(flow.orig(arc) > 0 && flow.flow_on(arc) > 0)) arc = flow.next_arc(arc);
      if (arc < 0) fail(ErrorKind::Invariant, "flow decomposition lost a unit");
      flow.consume(arc);
      x = flow.to(arc);
      if (x < 2 * N && x % 2 == 0) {
        if (!w.v.empty()) w.via.push_back(-1);
        w.v.push_back(x / 2);
      }
    }
    Walk tw = trim(w, in_f, in_h);
    std::vector<int> darts;
    for (std::size_t i = 0; i + 1 < tw.v.size(); ++i) darts.push_back(emb.dart_between(tw.v[i], tw.v[i + 1]));
    cs.paths.push_back(tw.v);
    cs.darts.push_back(std::move(darts));
  }
  return cs;
}

namespace {

// shortcut a walk that passes through the same face twice
// drop every detour between two visits of the same face; at[] is per-face scratch, left all -1
bool shortcut(Walk& w, std::vector<int>& at) {
  Walk out;
  out.v.push_back(w.v[0]);
  bool changed = false;
  for (std::size_t i = 0; i < w.via.size(); ++i) {
    int f = w.via[i];
    if (f >= 0 && at[static_cast<std::size_t>(f)] >= 0) {
      auto a = static_cast<std::size_t>(at[static_cast<std::size_t>(f)]);
      while (out.via.size() > a) {
        int g = out.via.back();
        if (g >= 0) at[static_cast<std::size_t>(g)] = -1;
        out.via.pop_back();
        out.v.pop_back();
      }
      changed = true;
    }
    if (f >= 0) at[static_cast<std::size_t>(f)] = static_cast<int>(out.via.size());
    out.via.push_back(f);
    out.v.push_back(w.v[i + 1]);
  }
  for (int g : out.via)
    if (g >= 0) at[static_cast<std::size_t>(g)] = -1;
  if (changed) w = std::move(out);
  return changed;
}

struct Chord {
  int path;
  std::size_t step;
  int lo, hi;  // positions on the face cycle
};

}  // namespace

CurveSet face_hub_curves(FaceArena& arena) {
  auto& emb = arena.emb;
  int N = emb.n();
  int F = emb.face_of(arena.face_dart), O = emb.face_of(arena.outer_dart);
  int nf = emb.face_count();
  int s = 2 * N + nf, t = s + 1;
  detail::Dinic flow(t + 1);
  for (int v = 0; v < N; ++v) flow.add(2 * v, 2 * v + 1, 1);
  for (auto [u, v] : emb.edges()) {
    flow.add(2 * u + 1, 2 * v, 1);
    flow.add(2 * v + 1, 2 * u, 1);
  }
  for (int f = 0; f < nf; ++f) {
    if (f == F || f == O) continue;
    for (int d : emb.face_darts(f)) {
      int v = emb.tail(d);
      flow.add(2 * v + 1, 2 * N + f, 1);
      flow.add(2 * N + f, 2 * v, 1);
    }
  }
  for (int f : arena.face_verts) flow.add(s, 2 * f, 1);
  for (int h : arena.host_verts) flow.add(2 * h + 1, t, 1);
  int total = flow.max_flow(s, t, arena.k);
  auto in_f = mark(N, arena.face_verts), in_h = mark(N, arena.host_verts);

  std::vector<Walk> walks;
  for (int p = 0; p < total; ++p) {
    std::vector<int> nodes{s};
    int x = s;
    while (x != t) {
      int arc = flow.first(x);
      while (arc >= 0 && !(flow.orig(arc) > 0 && flow.flow_on(arc) > 0)) arc = flow.next_arc(arc);
      if (arc < 0) fail(ErrorKind::Invariant, "flow decomposition lost a unit");
      flow.consume(arc);
      x = flow.to(arc);
      if (x >= 2 * N && x < 2 * N + nf) {
        auto it = std::find(nodes.begin(), nodes.end(), x);
        if (it != nodes.end()) {
          nodes.erase(it + 1, nodes.end());
          continue;
        }
      }
      nodes.push_back(x);
    }
    Walk w;
    int pending_face = -1;
    for (int node : nodes) {
      if (node >= 2 * N && node < 2 * N + nf) {
        pending_face = node - 2 * N;
      } else if (node < 2 * N && node % 2 == 0) {
        if (!w.v.empty()) w.via.push_back(pending_face);
        w.v.push_back(node / 2);
        pending_face = -1;
      }
    }
    walks.push_back(trim(w, in_f, in_h));
  }

  // dart of face f leaving v (faces are simple, pre-insertion)
  auto leaving = [&](int f, int v) {
    for (int d : emb.rotation(v))
      if (emb.face_of(d) == f) return d;
    fail(ErrorKind::Invariant, "vertex not on face");
  };
  std::vector<int> dpos(static_cast<std::size_t>(2 * emb.edge_count()), -1);
  for (int f = 0; f < nf; ++f) {
    const auto& ds = emb.face_darts(f);
    for (std::size_t i = 0; i < ds.size(); ++i) dpos[static_cast<std::size_t>(ds[i])] = static_cast<int>(i);
  }
  auto position = [&](int f, int v) { return dpos[static_cast<std::size_t>(leaving(f, v))]; };

  std::vector<int> at(static_cast<std::size_t>(nf), -1);
  std::uint64_t swaps = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& w : walks)
      if (shortcut(w, at)) changed = true;
    std::vector<Chord> ch;
    std::vector<std::vector<int>> on_path(walks.size());  // chord ids by increasing step
    std::map<int, std::vector<int>> by_face;
    for (std::size_t p = 0; p < walks.size(); ++p)
      for (std::size_t i = 0; i < walks[p].via.size(); ++i) {
        int f = walks[p].via[i];
        if (f < 0) continue;
        int a = position(f, walks[p].v[i]), b = position(f, walks[p].v[i + 1]);
        int id = static_cast<int>(ch.size());
        ch.push_back({static_cast<int>(p), i, std::min(a, b), std::max(a, b)});
        on_path[p].push_back(id);
        by_face[f].push_back(id);
      }
    std::vector<char> open(ch.size(), 0);
    std::vector<int> st;
    for (auto& [f, ids] : by_face) {
      // endpoints are distinct and a swap only re-pairs them, so the sorted event list is relabelled in place
      std::vector<std::pair<int, int>> ev;  // position, chord id
      for (int c : ids) {
        ev.push_back({ch[static_cast<std::size_t>(c)].lo, c});
        ev.push_back({ch[static_cast<std::size_t>(c)].hi, c});
      }
      std::sort(ev.begin(), ev.end());
      auto relabel = [&](int pos, int c) {
        auto it = std::lower_bound(ev.begin(), ev.end(), std::pair{pos, std::numeric_limits<int>::min()});
        it->second = c;
      };
      // parenthesis scan; the open chord on top crosses the one being closed if they differ
      for (;;) {
        st.clear();
        int x = -1, y = -1;
        for (auto [pp, c] : ev) {
          if (!open[static_cast<std::size_t>(c)]) {
            open[static_cast<std::size_t>(c)] = 1;
            st.push_back(c);
            continue;
          }
          if (st.back() != c) {
            x = st.back();
            y = c;
            break;
          }
          st.pop_back();
        }
        for (auto [pp, c] : ev) open[static_cast<std::size_t>(c)] = 0;
        if (x < 0) break;
        if (++swaps > 50000000ULL) fail(ErrorKind::Resource, "curve uncrossing did not settle");
        Chord& cx = ch[static_cast<std::size_t>(x)];
        Chord& cy = ch[static_cast<std::size_t>(y)];
        int P = cx.path, R = cy.path;
        std::size_t i = cx.step, j = cy.step;
        Walk& WP = walks[static_cast<std::size_t>(P)];
        Walk& WR = walks[static_cast<std::size_t>(R)];
        Walk np, nr;
        np.v.assign(WP.v.begin(), WP.v.begin() + static_cast<long>(i) + 1);
        np.via.assign(WP.via.begin(), WP.via.begin() + static_cast<long>(i) + 1);
        np.v.insert(np.v.end(), WR.v.begin() + static_cast<long>(j) + 1, WR.v.end());
        np.via.insert(np.via.end(), WR.via.begin() + static_cast<long>(j) + 1, WR.via.end());
        nr.v.assign(WR.v.begin(), WR.v.begin() + static_cast<long>(j) + 1);
        nr.via.assign(WR.via.begin(), WR.via.begin() + static_cast<long>(j) + 1);
        nr.v.insert(nr.v.end(), WP.v.begin() + static_cast<long>(i) + 1, WP.v.end());
        nr.via.insert(nr.via.end(), WP.via.begin() + static_cast<long>(i) + 1, WP.via.end());
        WP = std::move(np);
        WR = std::move(nr);
        // tails changed owners; shift their steps
        auto& lp = on_path[static_cast<std::size_t>(P)];
        auto& lr = on_path[static_cast<std::size_t>(R)];
        auto cut = [&](std::vector<int>& l, std::size_t s) {
          auto it = std::partition_point(l.begin(), l.end(), [&](int c) { return ch[static_cast<std::size_t>(c)].step <= s; });
          std::vector<int> tail(it, l.end());
          l.erase(it, l.end());
          return tail;
        };
        std::vector<int> tp = cut(lp, i), tr = cut(lr, j);
        for (int c : tp) {
          ch[static_cast<std::size_t>(c)].path = R;
          ch[static_cast<std::size_t>(c)].step = ch[static_cast<std::size_t>(c)].step - i + j;
        }
        for (int c : tr) {
          ch[static_cast<std::size_t>(c)].path = P;
          ch[static_cast<std::size_t>(c)].step = ch[static_cast<std::size_t>(c)].step - j + i;
        }
        lp.insert(lp.end(), tr.begin(), tr.end());
        lr.insert(lr.end(), tp.begin(), tp.end());
        int a = position(f, WP.v[i]), b = position(f, WP.v[i + 1]);
        cx.lo = std::min(a, b);
        cx.hi = std::max(a, b);
        a = position(f, WR.v[j]);
        b = position(f, WR.v[j + 1]);
        cy.lo = std::min(a, b);
        cy.hi = std::max(a, b);
        relabel(cx.lo, x);
        relabel(cx.hi, x);
        relabel(cy.lo, y);
        relabel(cy.hi, y);
        changed = true;
      }
    }
  }

  // darts: edges of G, boundary darts, or freshly inserted chords
  std::map<Edge, int> gedge;
  for (int e = 0; e < arena.original_edges; ++e) gedge[{std::min(emb.edges()[static_cast<std::size_t>(e)].first, emb.edges()[static_cast<std::size_t>(e)].second), std::max(emb.edges()[static_cast<std::size_t>(e)].first, emb.edges()[static_cast<std::size_t>(e)].second)}] = e;
  auto gdart = [&](int u, int v) {
    int e = gedge.at({std::min(u, v), std::max(u, v)});
    return emb.edges()[static_cast<std::size_t>(e)].first == u ? 2 * e : 2 * e + 1;
  };
  CurveSet cs;
  cs.face = F;
  std::vector<std::pair<int, int>> inserts;  // (after-dart at u, after-dart at w) per new edge
  std::vector<std::vector<int>> darts(walks.size());
  for (std::size_t p = 0; p < walks.size(); ++p) {
    const Walk& w = walks[p];
    for (std::size_t i = 0; i < w.via.size(); ++i) {
      int u = w.v[i], v = w.v[i + 1], f = w.via[i];
      if (f < 0) {
        darts[p].push_back(gdart(u, v));
        continue;
      }
      int du = leaving(f, u), dv = leaving(f, v);
      if (emb.head(du) == v) {
        darts[p].push_back(du);
      } else if (emb.head(dv) == u) {
        darts[p].push_back(PlaneEmbedding::twin(dv));
      } else {
        int e = emb.add_edge(u, v);
        inserts.push_back({du, dv});
        darts[p].push_back(2 * e);
      }
    }
  }
  int first_new = emb.edge_count() - static_cast<int>(inserts.size());
  for (std::size_t i = 0; i < inserts.size(); ++i) {
    int e = first_new + static_cast<int>(i);
    emb.place_after(inserts[i].first, 2 * e);
    emb.place_after(inserts[i].second, 2 * e + 1);
  }
  emb.rebuild_faces();
  emb.set_outer_face(emb.face_of(arena.outer_dart));
  cs.face = emb.face_of(arena.face_dart);
  for (std::size_t p = 0; p < walks.size(); ++p) {
    cs.paths.push_back(walks[p].v);
    cs.darts.push_back(std::move(darts[p]));
  }
  return cs;
}

Retraction retraction_from_curves(const FaceArena& arena, const CurveSet& curves) {
  const auto& emb = arena.emb;
  int k = arena.k;
  if (static_cast<int>(curves.paths.size()) != k)
    fail(ErrorKind::Input, "retraction_from_curves needs exactly k curves, got " + std::to_string(curves.paths.size()));
  Retraction f;
  f.assignment.assign(static_cast<std::size_t>(arena.original_n), -1);
  std::vector<char> blocked(static_cast<std::size_t>(emb.edge_count()), 0);
  std::vector<char> hit(static_cast<std::size_t>(k), 0);
  for (std::size_t p = 0; p < curves.paths.size(); ++p) {
    const auto& path = curves.paths[p];
    int h = path.back();
    int hi = h < arena.original_n ? arena.anchor_index[static_cast<std::size_t>(h)] : -1;
    if (hi < 0 || hit[static_cast<std::size_t>(hi)]) fail(ErrorKind::Invariant, "curves do not end at distinct anchors");
    hit[static_cast<std::size_t>(hi)] = 1;
    for (int w : path)
      if (w < arena.original_n) f.assignment[static_cast<std::size_t>(w)] = h;
    for (int d : curves.darts[p]) blocked[static_cast<std::size_t>(d >> 1)] = 1;
  }
  int F = emb.face_of(arena.face_dart), O = emb.face_of(arena.outer_dart);
  for (int d : emb.face_darts(F)) blocked[static_cast<std::size_t>(d >> 1)] = 1;
  for (int d : emb.face_darts(O)) blocked[static_cast<std::size_t>(d >> 1)] = 1;
  std::vector<int> uf(static_cast<std::size_t>(emb.face_count()));
  std::iota(uf.begin(), uf.end(), 0);
  auto find = [&](int x) {
    while (uf[static_cast<std::size_t>(x)] != x) x = uf[static_cast<std::size_t>(x)] = uf[static_cast<std::size_t>(uf[static_cast<std::size_t>(x)])];
    return x;
  };
  for (int e = 0; e < emb.edge_count(); ++e) {
    if (blocked[static_cast<std::size_t>(e)]) continue;
    int a = find(emb.face_of(2 * e)), b = find(emb.face_of(2 * e + 1));
    if (a != b) uf[static_cast<std::size_t>(a)] = b;
  }
  std::vector<int> host_edge_anchor(static_cast<std::size_t>(emb.face_count()), -1), host_edge_count(static_cast<std::size_t>(emb.face_count()), 0);
  for (int d : emb.face_darts(O)) {
    int inner = PlaneEmbedding::twin(d);
    int g = find(emb.face_of(inner));
    host_edge_anchor[static_cast<std::size_t>(g)] = emb.tail(inner);
    ++host_edge_count[static_cast<std::size_t>(g)];
  }
  std::vector<int> dangling;  // only F (or O) around: a pendant tree inside F
  for (int v = 0; v < arena.original_n; ++v) {
    if (f.assignment[static_cast<std::size_t>(v)] >= 0) continue;
    int g = -1;
    for (int d : emb.rotation(v)) {
      int fc = emb.face_of(d);
      if (fc != F && fc != O) {
        g = find(fc);
        break;
      }
    }
    if (g < 0) {
      dangling.push_back(v);
      continue;
    }
    if (host_edge_count[static_cast<std::size_t>(g)] != 1)
      fail(ErrorKind::Invariant, "region of vertex " + std::to_string(v) + " is not bordered by exactly one host edge");
    f.assignment[static_cast<std::size_t>(v)] = host_edge_anchor[static_cast<std::size_t>(g)];
  }
  // copy the image of the attachment point down each pendant tree
  for (bool progress = true; progress && !dangling.empty();) {
    progress = false;
    std::vector<int> rest;
    for (int v : dangling) {
      int img = -1;
      for (int d : emb.rotation(v)) {
        int w = emb.head(d);
        if (w < arena.original_n && f.assignment[static_cast<std::size_t>(w)] >= 0) {
          img = f.assignment[static_cast<std::size_t>(w)];
          break;
        }
      }
      if (img < 0) rest.push_back(v);
      else {
        f.assignment[static_cast<std::size_t>(v)] = img;
        progress = true;
      }
    }
    dangling = std::move(rest);
  }
  if (!dangling.empty()) fail(ErrorKind::Invariant, "vertex " + std::to_string(dangling[0]) + " lies in no region");
  return f;
}

// ── Algorithm 2 driver ──

namespace {

struct FaceOutcome {
  std::optional<Retraction> f;
  CurveReport curves;
};

FaceOutcome try_face(const Instance& red, const PlaneEmbedding& emb, int face, CurveRoute route) {
  FaceOutcome out;
  FaceArena arena = route == CurveRoute::Triangulated ? triangulate_for_face(emb, face, red) : arena_for_face(emb, face, red);
  CurveSet cs = route == CurveRoute::Triangulated ? max_disjoint_paths(arena) : face_hub_curves(arena);
  if (static_cast<int>(cs.paths.size()) < red.k()) return out;
  Retraction r = retraction_from_curves(arena, cs);
  if (stretch(red, r).max_stretch > 1) fail(ErrorKind::Invariant, "curve retraction has stretch above 1");
  out.f = std::move(r);
  out.curves.face_vertices = emb.face_vertices(face);
  for (const auto& p : cs.paths) {
    std::vector<int> keep;
    for (int v : p)
      if (v < arena.original_n) keep.push_back(v);
    out.curves.paths.push_back(keep);
  }
  return out;
}

std::optional<Retraction> stretch1_part(const Instance& part, const Stretch1Options& opt, std::vector<CurveReport>* curves) {
  Reduced red = reduce_two_connected(part);
  const Instance& ri = red.inst;
  if (ri.n() == ri.k() && static_cast<int>(ri.edges().size()) == ri.k()) {
    Retraction id;
    for (int v = 0; v < ri.n(); ++v) id.assignment.push_back(v);
    return lift_reduced(red, id);
  }
  PlaneEmbedding emb = embed_graph(ri.graph());
  if (!select_outer_face(emb, ri.anchors())) fail(ErrorKind::Invariant, "host cycle bounds no face of a single-bridge part");
  std::vector<int> faces;
  for (int f = 0; f < emb.face_count(); ++f)
    if (f != emb.outer_face() && static_cast<int>(emb.face_darts(f).size()) >= ri.k()) faces.push_back(f);
  if (faces.empty()) return std::nullopt;
  CurveRoute route = opt.route;
  if (route == CurveRoute::Auto) {
    std::size_t worst = 0;
    for (int f : faces) worst = std::max(worst, triangulation_cost(emb, f));
    route = worst <= opt.gadget_cap ? CurveRoute::Triangulated : CurveRoute::FaceHub;
  }
  int threads = env_threads();
  for (std::size_t base = 0; base < faces.size(); base += static_cast<std::size_t>(threads)) {
    std::size_t end = std::min(faces.size(), base + static_cast<std::size_t>(threads));
    std::vector<FaceOutcome> res(end - base);
    if (threads == 1) {
      res[0] = try_face(ri, emb, faces[base], route);
    } else {
      std::vector<std::future<FaceOutcome>> fut;
      for (std::size_t i = base; i < end; ++i)
        fut.push_back(std::async(std::launch::async, try_face, std::cref(ri), std::cref(emb), faces[i], route));
      for (std::size_t i = 0; i < fut.size(); ++i) res[i] = fut[i].get();
    }
    for (auto& r : res)
      if (r.f) {
        if (curves) curves->push_back(r.curves);
        return lift_reduced(red, *r.f);
      }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Retraction> stretch1_retract(const Instance& inst, const Stretch1Options& opt, std::vector<CurveReport>* curves) {
  require_connected(inst);
  auto parts = bridge_decompose(inst);
  std::vector<Retraction> fs;
  for (const auto& p : parts) {
    auto r = stretch1_part(p.inst, opt, curves);
    if (!r) return std::nullopt;
    fs.push_back(std::move(*r));
  }
  return merge_parts(inst, parts, fs);
}

PlanarResult optimal_retract_planar(const Instance& inst, const Stretch1Options& opt) {
  require_connected(inst);
  auto parts = bridge_decompose(inst);
  std::vector<Retraction> fs;
  PlanarResult out;
  for (const auto& p : parts) {
    const Instance& pi = p.inst;
    auto feasible = [&](int l, std::vector<CurveReport>* cr) -> std::optional<Retraction> {
      auto sd = subdivide(pi, l);
      auto r = stretch1_part(sd.inst, opt, cr);
      if (!r) return std::nullopt;
      Retraction back{restrict_to_original(sd.sub, r->assignment)};
      if (stretch(pi, back).max_stretch > l) fail(ErrorKind::Invariant, "restricted map exceeds trial stretch");
      return back;
    };
    int lo = 1, hi = std::max(1, pi.k() / 2);
    std::optional<Retraction> best;
    std::vector<CurveReport> best_curves;
    if (opt.gallop) {
      int l = 1;
      for (;;) {
        std::vector<CurveReport> cr;
        auto r = feasible(l, &cr);
        if (r) {
          hi = l;
          best = std::move(r);
          best_curves = std::move(cr);
          break;
        }
        lo = l + 1;
        if (l >= hi) fail(ErrorKind::Invariant, "no retraction found at the cycle-metric cap");
        l = std::min(hi, 2 * l);
      }
    }
    while (lo < hi) {
      int mid = lo + (hi - lo) / 2;
      std::vector<CurveReport> cr;
      auto r = feasible(mid, &cr);
      if (r) {
        hi = mid;
        best = std::move(r);
        best_curves = std::move(cr);
      } else {
        lo = mid + 1;
      }
    }
    if (!best || stretch(pi, *best).max_stretch != lo) {
      std::vector<CurveReport> cr;
      best = feasible(lo, &cr);
      best_curves = std::move(cr);
      if (!best) fail(ErrorKind::Invariant, "no retraction found at the cycle-metric cap");
    }
    for (auto& c : best_curves) {
      for (int& v : c.face_vertices) v = p.to_parent[static_cast<std::size_t>(v)];
      for (auto& path : c.paths)
        for (int& v : path) v = p.to_parent[static_cast<std::size_t>(v)];
      out.curves.push_back(std::move(c));
    }
    fs.push_back(std::move(*best));
  }
  out.f = merge_parts(inst, parts, fs);
  out.report = stretch(inst, out.f);
  return out;
}

int cycle_score(const Instance& inst, const std::vector<int>& cycle, const Retraction& f) {
  int k = inst.k();
  int score = 0;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    int a = inst.anchor_index(f.assignment[static_cast<std::size_t>(cycle[i])]);
    int b = inst.anchor_index(f.assignment[static_cast<std::size_t>(cycle[(i + 1) % cycle.size()])]);
    int d = (b - a + k) % k;
    if (d == 0) continue;
    if (d == 1) ++score;
    else if (d == k - 1) --score;
    else fail(ErrorKind::Validation, "cycle step jumps by more than one anchor; score undefined");
  }
  return score;
}

}  // namespace retract::planar
