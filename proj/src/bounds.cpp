#include "retract/bounds.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

namespace retract::bounds {

int distance_stretch_bound(const Instance& inst) {
  auto d = distance_lower_bound(inst);
  if (!d) fail(ErrorKind::Validation, "anchor pair disconnected");
  return static_cast<int>(q_ceil(*d).get_si());
}

// ── Sperner ──

int segment_color(int k, int i) {
  int len = k / 3;
  if (i < len) return 0;
  if (i < 2 * len) return 1;
  return 2;
}

std::vector<int> coloring_from_retraction(const Instance& grid, const Retraction& f) {
  check_retraction(grid, f);
  std::vector<int> c(static_cast<std::size_t>(grid.n()));
  for (int v = 0; v < grid.n(); ++v) c[static_cast<std::size_t>(v)] = segment_color(grid.k(), grid.anchor_index(f.assignment[static_cast<std::size_t>(v)]));
  return c;
}

std::array<int, 3> sperner_certificate(int m, const std::vector<int>& coloring) {
  if (m < 2) fail(ErrorKind::Input, "grid side must be at least 2");
  if (static_cast<int>(coloring.size()) != m * m) fail(ErrorKind::Input, "coloring size does not match the grid");
  for (int c : coloring)
    if (c < 0 || c > 2) fail(ErrorKind::Input, "colors must be 0, 1 or 2");
  Instance g = gen_grid(m);
  int k = g.k();
  // boundary: three cyclic runs with distinct colors, each long enough
  std::vector<int> bc;
  for (int a : g.anchors()) bc.push_back(coloring[static_cast<std::size_t>(a)]);
  int start = 0;
  while (start < k && bc[static_cast<std::size_t>(start)] == bc[static_cast<std::size_t>((start + k - 1) % k)]) ++start;
  if (start == k) fail(ErrorKind::Input, "boundary coloring is a single segment");
  std::vector<std::pair<int, int>> runs;  // color, length
  for (int i = 0; i < k; ++i) {
    int c = bc[static_cast<std::size_t>((start + i) % k)];
    if (runs.empty() || runs.back().first != c) runs.push_back({c, 0});
    ++runs.back().second;
  }
  if (runs.size() != 3) fail(ErrorKind::Input, "boundary coloring must have exactly three segments");
  std::vector<int> seen;
  for (auto [c, len] : runs) {
    if (len < k / 3) fail(ErrorKind::Input, "boundary segment shorter than floor(k/3)");
    seen.push_back(c);
  }
  std::sort(seen.begin(), seen.end());
  if (seen != std::vector<int>{0, 1, 2}) fail(ErrorKind::Input, "boundary segments must use all three colors");
  auto id = [m](int r, int c) { return r * m + c; };
  for (int r = 0; r + 1 < m; ++r)
    for (int c = 0; c + 1 < m; ++c) {
      std::array<std::array<int, 3>, 2> tris{{{id(r, c), id(r, c + 1), id(r + 1, c + 1)}, {id(r, c), id(r + 1, c), id(r + 1, c + 1)}}};
      for (const auto& t : tris) {
        int mask = 0;
        for (int v : t) mask |= 1 << coloring[static_cast<std::size_t>(v)];
        if (mask == 7) return t;
      }
    }
  fail(ErrorKind::Invariant, "no trichromatic triangle under a valid boundary coloring");
}

int sperner_lower_bound(int m) {
  int k = 4 * (m - 1);
  int best = std::numeric_limits<int>::max();
  // triangle a - b - c with b the right-angle corner; a-c is the diagonal
  for (int b = 0; b < k; ++b)
    for (int a = 0; a < k; ++a) {
      if (segment_color(k, a) == segment_color(k, b)) continue;
      for (int c = 0; c < k; ++c) {
        int cc = segment_color(k, c);
        if (cc == segment_color(k, a) || cc == segment_color(k, b)) continue;
        int s = std::max({cyc_dist(k, a, b), cyc_dist(k, b, c), (cyc_dist(k, a, c) + 1) / 2});
        best = std::min(best, s);
      }
    }
  return best;
}

std::optional<int> grid_side(const Instance& inst) {
  int m = 1;
  while ((m + 1) * (m + 1) <= inst.n()) ++m;
  if (m < 3 || m * m != inst.n()) return std::nullopt;
  if (!(gen_grid(m) == inst)) return std::nullopt;
  return m;
}

// ── cycle LP ──

namespace {

struct DirEdge {
  int to;
  int edge;
  int sign;  // +1 along stored orientation
};

std::vector<std::vector<DirEdge>> directed_adjacency(const Instance& inst) {
  std::vector<std::vector<DirEdge>> adj(static_cast<std::size_t>(inst.n()));
  const auto& edges = inst.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    auto [u, v] = edges[e];
    adj[static_cast<std::size_t>(u)].push_back({v, static_cast<int>(e), 1});
    adj[static_cast<std::size_t>(v)].push_back({u, static_cast<int>(e), -1});
  }
  return adj;
}

// +1 when the stored orientation of a host edge follows anchor order
int host_orientation(const Instance& inst, int u, int v) {
  int k = inst.k();
  int a = inst.anchor_index(u), b = inst.anchor_index(v);
  return (b - a + k) % k == 1 ? 1 : -1;
}

// walk decomposition: first simple cycle (>= 3 vertices) with a nonzero sum
std::optional<ViolatedCycle> split_walk(const Instance& inst, const EdgeAssignment& x, const std::vector<int>& walk) {
  std::vector<int> stack;
  std::unordered_map<int, std::size_t> at;
  for (int v : walk) {
    auto it = at.find(v);
    if (it == at.end()) {
      at[v] = stack.size();
      stack.push_back(v);
      continue;
    }
    std::vector<int> cyc(stack.begin() + static_cast<long>(it->second), stack.end());
    for (std::size_t i = it->second + 1; i < stack.size(); ++i) at.erase(stack[i]);
    stack.resize(it->second + 1);
    if (cyc.size() >= 3) {
      Q s = cycle_sum(inst, x, cyc);
      if (s != 0) return ViolatedCycle{cyc, s};
    }
  }
  return std::nullopt;
}

template <class T>
std::optional<ViolatedCycle> hop_dp(const Instance& inst, const EdgeAssignment& x, int ell, const std::vector<std::vector<DirEdge>>& adj,
                                    const std::vector<T>& w) {
  int n = inst.n();
  int H = ell - 1;  // longest closed walk considered
  std::vector<std::vector<T>> mn(static_cast<std::size_t>(H + 1), std::vector<T>(static_cast<std::size_t>(n))), mx = mn;
  std::vector<std::vector<int>> pmn(static_cast<std::size_t>(H + 1), std::vector<int>(static_cast<std::size_t>(n), -1)), pmx = pmn;
  std::vector<std::vector<char>> ok(static_cast<std::size_t>(H + 1), std::vector<char>(static_cast<std::size_t>(n), 0));
  for (int src = 0; src < n; ++src) {
    for (auto& row : ok) std::fill(row.begin(), row.end(), 0);
    ok[0][static_cast<std::size_t>(src)] = 1;
    mn[0][static_cast<std::size_t>(src)] = mx[0][static_cast<std::size_t>(src)] = T(0);
    for (int h = 1; h <= H; ++h) {
      auto& o = ok[static_cast<std::size_t>(h)];
      const auto& po = ok[static_cast<std::size_t>(h - 1)];
      for (int v = 0; v < n; ++v) {
        if (!po[static_cast<std::size_t>(v)]) continue;
        for (const auto& de : adj[static_cast<std::size_t>(v)]) {
          const T& we = w[static_cast<std::size_t>(2 * de.edge + (de.sign > 0 ? 0 : 1))];
          T lo = mn[static_cast<std::size_t>(h - 1)][static_cast<std::size_t>(v)] + we;
          T hi = mx[static_cast<std::size_t>(h - 1)][static_cast<std::size_t>(v)] + we;
          std::size_t t = static_cast<std::size_t>(de.to);
          if (!o[t]) {
            o[t] = 1;
            mn[static_cast<std::size_t>(h)][t] = lo;
            mx[static_cast<std::size_t>(h)][t] = hi;
            pmn[static_cast<std::size_t>(h)][t] = pmx[static_cast<std::size_t>(h)][t] = v;
            continue;
          }
          if (lo < mn[static_cast<std::size_t>(h)][t]) {
            mn[static_cast<std::size_t>(h)][t] = lo;
            pmn[static_cast<std::size_t>(h)][t] = v;
          }
          if (hi > mx[static_cast<std::size_t>(h)][t]) {
            mx[static_cast<std::size_t>(h)][t] = hi;
            pmx[static_cast<std::size_t>(h)][t] = v;
          }
        }
      }
      if (h < 3 || !o[static_cast<std::size_t>(src)]) continue;
      for (int side = 0; side < 2; ++side) {
        const T& val = side == 0 ? mn[static_cast<std::size_t>(h)][static_cast<std::size_t>(src)] : mx[static_cast<std::size_t>(h)][static_cast<std::size_t>(src)];
        if (side == 0 ? !(val < T(0)) : !(val > T(0))) continue;
        const auto& par = side == 0 ? pmn : pmx;
        std::vector<int> walk{src};
        int cur = src;
        for (int j = h; j >= 1; --j) {
          cur = par[static_cast<std::size_t>(j)][static_cast<std::size_t>(cur)];
          walk.push_back(cur);
        }
        std::reverse(walk.begin(), walk.end());
        auto vc = split_walk(inst, x, walk);
        if (!vc) fail(ErrorKind::Invariant, "nonzero closed walk split into zero cycles");
        return vc;
      }
    }
  }
  return std::nullopt;
}

}  // namespace

Q EdgeAssignment::value(const Instance& inst, int u, int v) const {
  const auto& nb = inst.graph().neighbors(u);
  if (!std::binary_search(nb.begin(), nb.end(), v)) fail(ErrorKind::Input, "not an edge");
  const auto& edges = inst.edges();
  // edges are few per vertex; linear scan over the list is fine for the callers here
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (edges[e].first == u && edges[e].second == v) return x[e];
    if (edges[e].first == v && edges[e].second == u) return -x[e];
  }
  fail(ErrorKind::Invariant, "edge lookup failed");
}

EdgeAssignment host_only_assignment(const Instance& inst) {
  EdgeAssignment a;
  a.x.assign(inst.edges().size(), Q(0));
  for (std::size_t e = 0; e < inst.edges().size(); ++e) {
    auto [u, v] = inst.edges()[e];
    if (inst.is_host_edge(u, v)) a.x[e] = host_orientation(inst, u, v);
  }
  return a;
}

EdgeAssignment assignment_from_retraction(const Instance& inst, const Retraction& f) {
  int k = inst.k();
  EdgeAssignment a;
  for (auto [u, v] : inst.edges()) {
    int i = inst.anchor_index(f.assignment[static_cast<std::size_t>(u)]);
    int j = inst.anchor_index(f.assignment[static_cast<std::size_t>(v)]);
    int d = (j - i + k) % k;
    if (2 * d > k) d -= k;
    a.x.push_back(Q(d));
  }
  return a;
}

Q cycle_sum(const Instance& inst, const EdgeAssignment& x, const std::vector<int>& cycle) {
  Q s = 0;
  for (std::size_t i = 0; i < cycle.size(); ++i) s += x.value(inst, cycle[i], cycle[(i + 1) % cycle.size()]);
  return s;
}

std::optional<ViolatedCycle> separation_oracle(const Instance& inst, const EdgeAssignment& x, int ell) {
  if (ell <= 3) return std::nullopt;
  auto adj = directed_adjacency(inst);
  // integer fast path after clearing denominators
  Z den = 1;
  for (const Q& q : x.x) den = lcm(den, Z(q.get_den()));
  bool fits = true;
  std::vector<std::int64_t> wi;
  Z limit = Z(1) << 60;
  limit /= ell;
  for (const Q& q : x.x) {
    Z s = q.get_num() * (den / q.get_den());
    if (abs(s) > limit) {
      fits = false;
      break;
    }
    wi.push_back(s.get_si());
    wi.push_back(-s.get_si());
  }
  if (fits) return hop_dp<std::int64_t>(inst, x, ell, adj, wi);
  std::vector<Q> wq;
  for (const Q& q : x.x) {
    wq.push_back(q);
    wq.push_back(-q);
  }
  return hop_dp<Q>(inst, x, ell, adj, wq);
}

namespace {

struct Row {
  std::vector<Q> coef;
  Q rhs;
  std::vector<Q> prov;  // combination of cycle rows
  int pivot = -1;
};

}  // namespace

LpResult lp_feasible(const Instance& inst, int ell) {
  if (ell < 2) fail(ErrorKind::Input, "ell must be at least 2");
  const auto& edges = inst.edges();
  std::vector<int> var(edges.size(), -1);
  int m = 0;
  for (std::size_t e = 0; e < edges.size(); ++e)
    if (!inst.is_host_edge(edges[e].first, edges[e].second)) var[e] = m++;
  std::vector<Row> rows;
  std::vector<ViolatedCycle> cycles;
  LpResult res;
  EdgeAssignment x = host_only_assignment(inst);
  std::unordered_map<long long, int> edge_of;
  for (std::size_t e = 0; e < edges.size(); ++e) edge_of[static_cast<long long>(edges[e].first) * inst.n() + edges[e].second] = static_cast<int>(e);
  for (;;) {
    auto vc = separation_oracle(inst, x, ell);
    if (!vc) {
      res.feasible = true;
      res.x = x;
      return res;
    }
    ++res.rounds;
    cycles.push_back(*vc);
    for (auto& r : rows) r.prov.push_back(Q(0));
    Row row;
    row.coef.assign(static_cast<std::size_t>(m), Q(0));
    row.prov.assign(cycles.size(), Q(0));
    row.prov.back() = 1;
    const auto& c = vc->cycle;
    for (std::size_t i = 0; i < c.size(); ++i) {
      int u = c[i], v = c[(i + 1) % c.size()];
      int a = std::min(u, v), b = std::max(u, v);
      int e = edge_of.at(static_cast<long long>(a) * inst.n() + b);
      int sgn = u == a ? 1 : -1;
      if (var[static_cast<std::size_t>(e)] < 0) row.rhs -= sgn * host_orientation(inst, a, b);
      else row.coef[static_cast<std::size_t>(var[static_cast<std::size_t>(e)])] += sgn;
    }
    for (const auto& r : rows) {
      Q f = row.coef[static_cast<std::size_t>(r.pivot)];
      if (f == 0) continue;
      for (int j = 0; j < m; ++j)
        if (r.coef[static_cast<std::size_t>(j)] != 0) row.coef[static_cast<std::size_t>(j)] -= f * r.coef[static_cast<std::size_t>(j)];
      row.rhs -= f * r.rhs;
      for (std::size_t j = 0; j < row.prov.size(); ++j)
        if (r.prov[j] != 0) row.prov[j] -= f * r.prov[j];
    }
    int p = -1;
    for (int j = 0; j < m; ++j)
      if (row.coef[static_cast<std::size_t>(j)] != 0) {
        p = j;
        break;
      }
    if (p < 0) {
      if (row.rhs == 0) fail(ErrorKind::Invariant, "separated cycle is already implied");
      res.feasible = false;
      for (std::size_t j = 0; j < cycles.size(); ++j)
        if (row.prov[j] != 0) res.certificate.push_back(cycles[j]);
      return res;
    }
    Q piv = row.coef[static_cast<std::size_t>(p)];
    for (auto& q : row.coef) q /= piv;
    row.rhs /= piv;
    for (auto& q : row.prov) q /= piv;
    row.pivot = p;
    for (auto& r : rows) {
      Q f = r.coef[static_cast<std::size_t>(p)];
      if (f == 0) continue;
      for (int j = 0; j < m; ++j)
        if (row.coef[static_cast<std::size_t>(j)] != 0) r.coef[static_cast<std::size_t>(j)] -= f * row.coef[static_cast<std::size_t>(j)];
      r.rhs -= f * row.rhs;
      for (std::size_t j = 0; j < r.prov.size(); ++j)
        if (row.prov[j] != 0) r.prov[j] -= f * row.prov[j];
    }
    rows.push_back(std::move(row));
    // free variables at zero
    x = host_only_assignment(inst);
    for (std::size_t e = 0; e < edges.size(); ++e)
      if (var[e] >= 0) x.x[e] = 0;
    for (const auto& r : rows) {
      for (std::size_t e = 0; e < edges.size(); ++e)
        if (var[e] == r.pivot) x.x[e] = r.rhs;
    }
  }
}

LpBound lp_stretch_lower_bound(const Instance& inst) {
  int k = inst.k();
  LpBound b;
  int lo = 4, hi = k + 1;
  std::optional<LpResult> at_hi;
  while (lo < hi) {
    int mid = lo + (hi - lo) / 2;
    auto r = lp_feasible(inst, mid);
    if (r.feasible) {
      lo = mid + 1;
    } else {
      hi = mid;
      at_hi = std::move(r);
    }
  }
  b.ell_min = lo;
  if (lo <= k) {
    if (!at_hi) at_hi = lp_feasible(inst, lo);
    b.at_min = std::move(*at_hi);
  }
  b.value = 1;
  for (int s = 1; s <= k; ++s)
    if ((k + s - 1) / s >= b.ell_min) b.value = s;
  return b;
}

}  // namespace retract::bounds
