#include "retract/oracle.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <limits>
#include <numeric>

#include "retract/kernels.hpp"

namespace retract::oracle {

namespace {

using Mask = std::uint64_t;

struct Search {
  const Graph& g;
  const HostMetric& h;
  int s;
  int k;
  const SearchBudget& budget;
  std::vector<Mask> near;  // near[i] = anchors within s of i
  std::vector<int> free;   // free vertex ids
  std::vector<int> slot;   // vertex -> position in free, -1 for anchors
  std::vector<int> anchor_adj;
  std::vector<int> value;  // per vertex, anchor index or -1
  std::uint64_t states = 0;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  Search(const Graph& g_, const HostMetric& h_, int s_, const SearchBudget& b) : g(g_), h(h_), s(s_), k(h_.k()), budget(b) {
    near.assign(static_cast<std::size_t>(k), 0);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        if (h.d(i, j) <= s) near[static_cast<std::size_t>(i)] |= Mask{1} << j;
    slot.assign(static_cast<std::size_t>(g.n()), -1);
    value.assign(static_cast<std::size_t>(g.n()), -1);
    anchor_adj.assign(static_cast<std::size_t>(g.n()), 0);
    for (int v = 0; v < g.n(); ++v) {
      if (h.index(v) >= 0) {
        value[static_cast<std::size_t>(v)] = h.index(v);
        continue;
      }
      slot[static_cast<std::size_t>(v)] = static_cast<int>(free.size());
      free.push_back(v);
      for (int w : g.neighbors(v))
        if (h.index(w) >= 0) ++anchor_adj[static_cast<std::size_t>(v)];
    }
  }

  void tick() {
    if (++states > budget.max_states) fail(ErrorKind::Resource, "oracle state budget exceeded");
    if ((states & 4095) == 0) {
      double el = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      if (el > budget.time_cap_seconds) fail(ErrorKind::Resource, "oracle time cap exceeded");
    }
  }

  Mask support(Mask dom) const {
    Mask out = 0;
    while (dom) {
      int i = std::countr_zero(dom);
      dom &= dom - 1;
      out |= near[static_cast<std::size_t>(i)];
    }
    return out;
  }

  // arc consistency from the vertices in `queue`
  bool propagate(std::vector<Mask>& dom, std::vector<int> queue) {
    while (!queue.empty()) {
      int v = queue.back();
      queue.pop_back();
      Mask sup = support(dom[static_cast<std::size_t>(slot[static_cast<std::size_t>(v)])]);
      for (int w : g.neighbors(v)) {
        int sw = slot[static_cast<std::size_t>(w)];
        if (sw < 0 || value[static_cast<std::size_t>(w)] >= 0) continue;
        Mask nd = dom[static_cast<std::size_t>(sw)] & sup;
        if (nd == dom[static_cast<std::size_t>(sw)]) continue;
        if (!nd) return false;
        dom[static_cast<std::size_t>(sw)] = nd;
        queue.push_back(w);
      }
    }
    return true;
  }

  bool dfs(std::vector<Mask>& dom, int assigned) {
    tick();
    if (assigned == static_cast<int>(free.size())) return true;
    // fewest values first, then most anchor neighbours
    int best = -1;
    for (std::size_t i = 0; i < free.size(); ++i) {
      int v = free[i];
      if (value[static_cast<std::size_t>(v)] >= 0) continue;
      if (best < 0) {
        best = v;
        continue;
      }
      int cv = std::popcount(dom[i]), cb = std::popcount(dom[static_cast<std::size_t>(slot[static_cast<std::size_t>(best)])]);
      if (cv < cb || (cv == cb && anchor_adj[static_cast<std::size_t>(v)] > anchor_adj[static_cast<std::size_t>(best)])) best = v;
    }
    int sb = slot[static_cast<std::size_t>(best)];
    std::vector<std::pair<int, int>> order;
    for (Mask d = dom[static_cast<std::size_t>(sb)]; d; d &= d - 1) {
      int i = std::countr_zero(d);
      int cost = 0;
      for (int w : g.neighbors(best))
        if (value[static_cast<std::size_t>(w)] >= 0) cost += h.d(i, value[static_cast<std::size_t>(w)]);
      order.push_back({cost, i});
    }
    std::sort(order.begin(), order.end());
    for (auto [cost, i] : order) {
      std::vector<Mask> nd = dom;
      nd[static_cast<std::size_t>(sb)] = Mask{1} << i;
      value[static_cast<std::size_t>(best)] = i;
      if (propagate(nd, {best}) && dfs(nd, assigned + 1)) return true;
      value[static_cast<std::size_t>(best)] = -1;
    }
    return false;
  }

  bool run(std::vector<int>* out) {
    for (auto [u, v] : g.edges()) {
      int a = h.index(u), b = h.index(v);
      if (a >= 0 && b >= 0 && h.d(a, b) > s) return false;
    }
    Mask all = k == 64 ? ~Mask{0} : (Mask{1} << k) - 1;
    std::vector<Mask> dom(free.size(), all);
    for (std::size_t i = 0; i < free.size(); ++i)
      for (int w : g.neighbors(free[i]))
        if (h.index(w) >= 0) dom[i] &= near[static_cast<std::size_t>(h.index(w))];
    for (Mask d : dom)
      if (!d) return false;
    if (!propagate(dom, free)) return false;
    if (!dfs(dom, 0)) return false;
    if (out) {
      out->assign(static_cast<std::size_t>(g.n()), -1);
      for (int v = 0; v < g.n(); ++v) (*out)[static_cast<std::size_t>(v)] = h.anchors()[static_cast<std::size_t>(value[static_cast<std::size_t>(v)])];
    }
    return true;
  }
};

void check_budget(const Graph& g, const HostMetric& h, const SearchBudget& budget) {
  if (h.k() > 64) fail(ErrorKind::Resource, "oracle supports at most 64 anchors");
  int nfree = 0;
  for (int v = 0; v < g.n(); ++v)
    if (h.index(v) < 0) ++nfree;
  if (nfree > budget.max_free) fail(ErrorKind::Resource, "oracle free-vertex budget exceeded (" + std::to_string(nfree) + ")");
}

}  // namespace

bool feasible_at(const Graph& g, const HostMetric& h, int s, const SearchBudget& budget, std::vector<int>* out, std::uint64_t* states) {
  check_budget(g, h, budget);
  Search search(g, h, s, budget);
  bool ok = search.run(out);
  if (states) *states += search.states;
  return ok;
}

OracleResult brute_force_optimal(const Graph& g, const HostMetric& h, const SearchBudget& budget) {
  check_budget(g, h, budget);
  for (int v = 0; v < g.n(); ++v)
    if (h.index(v) < 0 && g.neighbors(v).empty() && g.n() > 1) fail(ErrorKind::Validation, "guest graph is disconnected");
  // start at the distance bound and any anchor-anchor edge
  Q lb = 0;
  int lo = 0;
  for (int i = 0; i < h.k(); ++i) {
    auto dist = bfs_distances(g, h.anchors()[static_cast<std::size_t>(i)]);
    for (int j = 0; j < h.k(); ++j) {
      int dg = dist[static_cast<std::size_t>(h.anchors()[static_cast<std::size_t>(j)])];
      if (dg < 0) fail(ErrorKind::Validation, "anchors disconnected in guest");
      if (dg > 0) lb = std::max(lb, Q(h.d(i, j), dg));
      if (dg == 1) lo = std::max(lo, h.d(i, j));
    }
  }
  lo = std::max(lo, static_cast<int>(q_ceil(lb).get_si()));
  OracleResult res;
  for (int s = lo; s <= std::max(lo, h.diameter()); ++s) {
    std::vector<int> out;
    if (feasible_at(g, h, s, budget, &out, &res.states)) {
      res.f.assignment = std::move(out);
      res.report.max_stretch = stretch_under(g, h, res.f.assignment, &res.report.witness);
      if (res.report.max_stretch > s) fail(ErrorKind::Invariant, "oracle produced a map above its bound");
      return res;
    }
  }
  fail(ErrorKind::Invariant, "oracle found no map at the host diameter");
}

OracleResult brute_force_optimal(const Instance& inst, const SearchBudget& budget) {
  require_connected(inst);
  return brute_force_optimal(inst.graph(), HostMetric::cycle(inst), budget);
}

int exhaustive_optimal(const Instance& inst) {
  int k = inst.k();
  std::vector<int> free;
  for (int v = 0; v < inst.n(); ++v)
    if (!inst.is_anchor(v)) free.push_back(v);
  if (free.size() > 6) fail(ErrorKind::Resource, "exhaustive oracle handles at most 6 free vertices");
  std::vector<int> img(static_cast<std::size_t>(inst.n()), 0);
  for (int v = 0; v < inst.n(); ++v)
    if (inst.is_anchor(v)) img[static_cast<std::size_t>(v)] = inst.anchor_index(v);
  const auto& edges = inst.edges();
  std::vector<std::int32_t> a(edges.size()), b(edges.size());
  int best = k;
  for (;;) {
    for (std::size_t e = 0; e < edges.size(); ++e) {
      a[e] = img[static_cast<std::size_t>(edges[e].first)];
      b[e] = img[static_cast<std::size_t>(edges[e].second)];
    }
    best = std::min(best, static_cast<int>(kernels::max_cycle_stretch(a.data(), b.data(), edges.size(), k)));
    std::size_t i = 0;
    while (i < free.size() && ++img[static_cast<std::size_t>(free[i])] == k) img[static_cast<std::size_t>(free[i++])] = 0;
    if (i == free.size()) break;
  }
  return best;
}

int enumerate_min_surrounding_cycle(const planar::PlaneEmbedding& emb, int face, int max_vertices) {
  int n = emb.n();
  if (n > max_vertices) fail(ErrorKind::Resource, "cycle enumeration capped at " + std::to_string(max_vertices) + " vertices");
  int outer = emb.outer_face();
  if (face == outer) fail(ErrorKind::Input, "face must be bounded");
  std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(n));  // (neighbour, edge)
  for (int e = 0; e < emb.edge_count(); ++e) {
    auto [u, v] = emb.edges()[static_cast<std::size_t>(e)];
    adj[static_cast<std::size_t>(u)].push_back({v, e});
    adj[static_cast<std::size_t>(v)].push_back({u, e});
  }
  int nf = emb.face_count();
  std::vector<char> on_cycle(static_cast<std::size_t>(emb.edge_count()), 0);
  auto surrounds = [&]() {
    std::vector<char> seen(static_cast<std::size_t>(nf), 0);
    std::vector<int> q{face};
    seen[static_cast<std::size_t>(face)] = 1;
    for (std::size_t i = 0; i < q.size(); ++i) {
      int f = q[i];
      if (f == outer) return false;
      for (int d : emb.face_darts(f)) {
        if (on_cycle[static_cast<std::size_t>(d >> 1)]) continue;
        int g = emb.face_of(planar::PlaneEmbedding::twin(d));
        if (!seen[static_cast<std::size_t>(g)]) {
          seen[static_cast<std::size_t>(g)] = 1;
          q.push_back(g);
        }
      }
    }
    return true;
  };
  int best = std::numeric_limits<int>::max();
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  // cycles through root as their smallest vertex
  auto rec = [&](auto&& self, int root, int v, int len) -> void {
    if (len + 1 >= best) return;
    for (auto [w, e] : adj[static_cast<std::size_t>(v)]) {
      if (w == root && len >= 2) {
        on_cycle[static_cast<std::size_t>(e)] = 1;
        if (surrounds()) best = std::min(best, len + 1);
        on_cycle[static_cast<std::size_t>(e)] = 0;
        continue;
      }
      if (w <= root || used[static_cast<std::size_t>(w)]) continue;
      used[static_cast<std::size_t>(w)] = 1;
      on_cycle[static_cast<std::size_t>(e)] = 1;
      self(self, root, w, len + 1);
      on_cycle[static_cast<std::size_t>(e)] = 0;
      used[static_cast<std::size_t>(w)] = 0;
    }
  };
  for (int r = 0; r < n; ++r) {
    used[static_cast<std::size_t>(r)] = 1;
    rec(rec, r, r, 0);
    used[static_cast<std::size_t>(r)] = 0;
  }
  if (best == std::numeric_limits<int>::max()) fail(ErrorKind::Invariant, "no cycle surrounds the face");
  return best;
}

}  // namespace retract::oracle
