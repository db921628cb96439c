#include "retract/euclid.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <queue>

namespace retract::euclid {

Q sq_dist(const Point& a, const Point& b) {
  Q dx = a.x - b.x, dy = a.y - b.y;
  return dx * dx + dy * dy;
}

int orient(const Point& a, const Point& b, const Point& c) {
  Q d = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
  return sgn(d);
}

PointSet point_set(const Instance& inst) {
  if (!inst.has_points()) fail(ErrorKind::Input, "instance has no coordinates");
  PointSet ps{inst.points(), inst.anchors()};
  int k = inst.k();
  Q hi = Q(1) + rat(1, static_cast<long>(k) * k);
  for (int i = 0; i < k; ++i) {
    Q d2 = sq_dist(ps.points[static_cast<std::size_t>(ps.anchors[static_cast<std::size_t>(i)])],
                   ps.points[static_cast<std::size_t>(ps.anchors[static_cast<std::size_t>((i + 1) % k)])]);
    if (d2 < 1 || d2 > hi * hi) fail(ErrorKind::Validation, "anchor spacing outside [1, 1+1/k^2] between anchors " + std::to_string(i) + " and " + std::to_string((i + 1) % k));
  }
  return ps;
}

// ── Delaunay ──

namespace {

// lifted in-circle test with z_i += eps^(M - i); a, b, c counterclockwise. >0: d inside
int incircle(const std::vector<Point>& p, int a, int b, int c, int d) {
  const Point &A = p[static_cast<std::size_t>(a)], &B = p[static_cast<std::size_t>(b)], &C = p[static_cast<std::size_t>(c)], &D = p[static_cast<std::size_t>(d)];
  {
    double ax = A.x.get_d() - D.x.get_d(), ay = A.y.get_d() - D.y.get_d();
    double bx = B.x.get_d() - D.x.get_d(), by = B.y.get_d() - D.y.get_d();
    double cx = C.x.get_d() - D.x.get_d(), cy = C.y.get_d() - D.y.get_d();
    double az = ax * ax + ay * ay, bz = bx * bx + by * by, cz = cx * cx + cy * cy;
    double det = ax * (by * cz - bz * cy) - ay * (bx * cz - bz * cx) + az * (bx * cy - by * cx);
    double perm = std::abs(ax) * (std::abs(by * cz) + std::abs(bz * cy)) + std::abs(ay) * (std::abs(bx * cz) + std::abs(bz * cx)) +
                  std::abs(az) * (std::abs(bx * cy) + std::abs(by * cx));
    if (std::abs(det) > 1e-9 * perm + 1e-300) return det > 0 ? 1 : -1;
  }
  Q ax = A.x - D.x, ay = A.y - D.y, bx = B.x - D.x, by = B.y - D.y, cx = C.x - D.x, cy = C.y - D.y;
  Q az = ax * ax + ay * ay, bz = bx * bx + by * by, cz = cx * cx + cy * cy;
  Q det = ax * (by * cz - bz * cy) - ay * (bx * cz - bz * cx) + az * (bx * cy - by * cx);
  if (det != 0) return sgn(det);
  // symbolic: the largest id carries the dominant perturbation
  std::array<std::pair<int, int>, 4> cof{{{a, orient(B, C, D)}, {b, -orient(A, C, D)}, {c, orient(A, B, D)}, {d, -orient(A, B, C)}}};
  std::sort(cof.begin(), cof.end(), [](auto x, auto y) { return x.first > y.first; });
  for (auto [id, s] : cof)
    if (s != 0) return s;
  fail(ErrorKind::Invariant, "degenerate in-circle test");
}

}  // namespace

WeightedGraph delaunay_spanner(const std::vector<Point>& pts) {
  int n = static_cast<int>(pts.size());
  if (n < 3) fail(ErrorKind::Input, "need at least 3 points");
  bool all_collinear = true;
  for (int i = 2; i < n && all_collinear; ++i) all_collinear = orient(pts[0], pts[1], pts[static_cast<std::size_t>(i)]) == 0;
  if (all_collinear) fail(ErrorKind::Input, "points are collinear");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (pts[static_cast<std::size_t>(i)] == pts[static_cast<std::size_t>(j)]) fail(ErrorKind::Input, "coincident points " + std::to_string(i) + " and " + std::to_string(j));
  std::map<std::pair<int, int>, Q> edges;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c) {
        int o = orient(pts[static_cast<std::size_t>(a)], pts[static_cast<std::size_t>(b)], pts[static_cast<std::size_t>(c)]);
        if (o == 0) continue;
        int x = a, y = o > 0 ? b : c, z = o > 0 ? c : b;
        bool empty = true;
        for (int d = 0; d < n && empty; ++d) {
          if (d == a || d == b || d == c) continue;
          if (incircle(pts, x, y, z, d) > 0) empty = false;
        }
        if (!empty) continue;
        for (auto [u, v] : {std::pair{a, b}, std::pair{a, c}, std::pair{b, c}})
          edges.emplace(std::pair{u, v}, sq_dist(pts[static_cast<std::size_t>(u)], pts[static_cast<std::size_t>(v)]));
      }
  WeightedGraph g;
  g.n = n;
  for (auto& [e, w] : edges) g.edges.push_back({e.first, e.second, w});
  return g;
}

double spanner_ratio(const std::vector<Point>& pts, const WeightedGraph& g) {
  int n = g.n;
  std::vector<std::vector<std::pair<int, double>>> adj(static_cast<std::size_t>(n));
  for (const auto& e : g.edges) {
    double w = std::sqrt(e.w2.get_d());
    adj[static_cast<std::size_t>(e.u)].push_back({e.v, w});
    adj[static_cast<std::size_t>(e.v)].push_back({e.u, w});
  }
  double worst = 0;
  for (int s = 0; s < n; ++s) {
    std::vector<double> dist(static_cast<std::size_t>(n), std::numeric_limits<double>::infinity());
    using It = std::pair<double, int>;
    std::priority_queue<It, std::vector<It>, std::greater<>> pq;
    dist[static_cast<std::size_t>(s)] = 0;
    pq.push({0, s});
    while (!pq.empty()) {
      auto [d, u] = pq.top();
      pq.pop();
      if (d > dist[static_cast<std::size_t>(u)]) continue;
      for (auto [v, w] : adj[static_cast<std::size_t>(u)])
        if (d + w < dist[static_cast<std::size_t>(v)]) {
          dist[static_cast<std::size_t>(v)] = d + w;
          pq.push({d + w, v});
        }
    }
    for (int t = s + 1; t < n; ++t) {
      double e = std::sqrt(sq_dist(pts[static_cast<std::size_t>(s)], pts[static_cast<std::size_t>(t)]).get_d());
      if (e > 0) worst = std::max(worst, dist[static_cast<std::size_t>(t)] / e);
    }
  }
  return worst;
}

// ── contraction and unweighting ──

Contracted contract_small_edges(const WeightedGraph& g, const std::vector<int>& anchors, int k, int n) {
  Q thr2 = rat(4, static_cast<long>(k) * k * n * n);  // (2/(kn))^2
  std::vector<int> uf(static_cast<std::size_t>(g.n));
  std::iota(uf.begin(), uf.end(), 0);
  auto find = [&](int x) {
    while (uf[static_cast<std::size_t>(x)] != x) x = uf[static_cast<std::size_t>(x)] = uf[static_cast<std::size_t>(uf[static_cast<std::size_t>(x)])];
    return x;
  };
  std::vector<char> is_anchor(static_cast<std::size_t>(g.n), 0);
  for (int a : anchors) is_anchor[static_cast<std::size_t>(a)] = 1;
  std::vector<char> holds_anchor(is_anchor);
  for (const auto& e : g.edges) {
    if (e.w2 >= thr2) continue;
    int a = find(e.u), b = find(e.v);
    if (a == b) continue;
    if (holds_anchor[static_cast<std::size_t>(a)] && holds_anchor[static_cast<std::size_t>(b)])
      fail(ErrorKind::Invariant, "contraction would merge two anchors (" + std::to_string(e.u) + ", " + std::to_string(e.v) + ")");
    if (a > b) std::swap(a, b);
    uf[static_cast<std::size_t>(b)] = a;
    holds_anchor[static_cast<std::size_t>(a)] = holds_anchor[static_cast<std::size_t>(a)] || holds_anchor[static_cast<std::size_t>(b)];
  }
  Contracted c;
  c.group.assign(static_cast<std::size_t>(g.n), -1);
  std::vector<int> id(static_cast<std::size_t>(g.n), -1);
  for (int v = 0; v < g.n; ++v) {
    int r = find(v);
    if (id[static_cast<std::size_t>(r)] < 0) {
      id[static_cast<std::size_t>(r)] = static_cast<int>(c.rep.size());
      c.rep.push_back(v);
    }
    c.group[static_cast<std::size_t>(v)] = id[static_cast<std::size_t>(r)];
  }
  c.g.n = static_cast<int>(c.rep.size());
  std::map<std::pair<int, int>, Q> best;
  for (const auto& e : g.edges) {
    int a = c.group[static_cast<std::size_t>(e.u)], b = c.group[static_cast<std::size_t>(e.v)];
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    auto it = best.find({a, b});
    if (it == best.end() || e.w2 < it->second) best[{a, b}] = e.w2;
  }
  for (auto& [e, w] : best) c.g.edges.push_back({e.first, e.second, w});
  for (int a : anchors) c.anchors.push_back(c.group[static_cast<std::size_t>(a)]);
  return c;
}

Z path_edges(const Q& w2, int k, int n) {
  if (w2 >= Q(k) * k) {
    Z num = Z(k) * k * n;
    return (num + 1) / 2;
  }
  Q half = rat(static_cast<long>(k) * n, 2);
  Q x = half * half * w2;
  Z e = sqrt(q_floor(x));
  if (e < 1) fail(ErrorKind::Input, "edge weight below the contraction threshold");
  return e;
}

Unweighted to_unweighted(const WeightedGraph& g, int k, int n) {
  Unweighted u;
  u.base_n = g.n;
  int next = g.n;
  std::vector<Edge> edges;
  for (const auto& e : g.edges) {
    Z L = path_edges(e.w2, k, n);
    if (L > 5000000) fail(ErrorKind::Resource, "unweighted path too long");
    long len = L.get_si();
    std::vector<int> chain{e.u};
    for (long i = 1; i < len; ++i) chain.push_back(next++);
    chain.push_back(e.v);
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) edges.push_back({chain[i], chain[i + 1]});
    u.chains.push_back(std::move(chain));
  }
  u.g = Graph(next, edges);
  return u;
}

// ── host cycle ──

namespace {

// BFS distances from t, then walk from s taking the smallest-id neighbour one step closer
std::vector<int> shortest_path(const Graph& g, int s, int t) {
  auto d = bfs_distances(g, t);
  if (d[static_cast<std::size_t>(s)] < 0) fail(ErrorKind::Construction, "host construction: anchors disconnected");
  std::vector<int> p{s};
  int cur = s;
  while (cur != t) {
    for (int w : g.neighbors(cur))
      if (d[static_cast<std::size_t>(w)] == d[static_cast<std::size_t>(cur)] - 1) {
        cur = w;
        break;
      }
    p.push_back(cur);
  }
  return p;
}

// P(start, last): extend towards each further anchor from its closest path vertex
std::vector<int> grow_path(const Graph& g, const std::vector<int>& anchors, int start, int second, int last, int step) {
  std::vector<int> p = shortest_path(g, anchors[static_cast<std::size_t>(start)], anchors[static_cast<std::size_t>(second)]);
  for (int i = second + step; step > 0 ? i <= last : i >= last; i += step) {
    int a = anchors[static_cast<std::size_t>(i)];
    auto d = bfs_distances(g, a);
    std::size_t best = 0;
    for (std::size_t j = 1; j < p.size(); ++j)
      if (d[static_cast<std::size_t>(p[j])] < d[static_cast<std::size_t>(p[best])]) best = j;
    std::vector<int> tail = shortest_path(g, p[best], a);
    p.resize(best);
    p.insert(p.end(), tail.begin(), tail.end());
  }
  return p;
}

}  // namespace

std::vector<int> build_host_cycle(const Graph& g, const std::vector<int>& anchors) {
  int k = static_cast<int>(anchors.size());
  if (k < 10) fail(ErrorKind::Input, "host construction needs k >= 10");
  int h = k / 2;
  std::vector<int> H1 = grow_path(g, anchors, 2, 3, h - 2, 1);
  std::vector<int> H2 = grow_path(g, anchors, k - 2, k - 3, h + 2, -1);
  std::vector<int> in1(static_cast<std::size_t>(g.n()), -1), in2(static_cast<std::size_t>(g.n()), -1);
  for (std::size_t i = 0; i < H1.size(); ++i) in1[static_cast<std::size_t>(H1[i])] = static_cast<int>(i);
  for (std::size_t i = 0; i < H2.size(); ++i) {
    if (in1[static_cast<std::size_t>(H2[i])] >= 0) fail(ErrorKind::Construction, "host construction: H1 and H2 share vertex " + std::to_string(H2[i]));
    in2[static_cast<std::size_t>(H2[i])] = static_cast<int>(i);
  }
  // last H1 vertex on the path, then the first H2 vertex after it
  auto connector = [&](int from, int to) {
    std::vector<int> p = shortest_path(g, anchors[static_cast<std::size_t>(from)], anchors[static_cast<std::size_t>(to)]);
    std::size_t first2 = p.size();
    for (std::size_t i = 0; i < p.size(); ++i)
      if (in2[static_cast<std::size_t>(p[i])] >= 0) {
        first2 = i;
        break;
      }
    if (first2 == p.size()) fail(ErrorKind::Construction, "host construction: connector misses H2");
    std::size_t last1 = p.size();
    for (std::size_t i = 0; i < first2; ++i)
      if (in1[static_cast<std::size_t>(p[i])] >= 0) last1 = i;
    if (last1 == p.size()) fail(ErrorKind::Construction, "host construction: connector meets H2 before H1");
    return std::vector<int>(p.begin() + static_cast<long>(last1), p.begin() + static_cast<long>(first2) + 1);
  };
  std::vector<int> Pab = connector(2, k - 2);
  std::vector<int> Pcd = connector(h - 2, h + 2);
  int a = Pab.front(), b = Pab.back(), d = Pcd.front(), c = Pcd.back();
  auto segment = [](const std::vector<int>& path, int i, int j) {
    std::vector<int> s;
    if (i <= j) s.assign(path.begin() + i, path.begin() + j + 1);
    else {
      s.assign(path.begin() + j, path.begin() + i + 1);
      std::reverse(s.begin(), s.end());
    }
    return s;
  };
  std::vector<int> cyc = segment(H1, in1[static_cast<std::size_t>(a)], in1[static_cast<std::size_t>(d)]);
  cyc.insert(cyc.end(), Pcd.begin() + 1, Pcd.end());
  std::vector<int> s2 = segment(H2, in2[static_cast<std::size_t>(c)], in2[static_cast<std::size_t>(b)]);
  cyc.insert(cyc.end(), s2.begin() + 1, s2.end());
  cyc.insert(cyc.end(), Pab.rbegin() + 1, Pab.rend() - 1);
  std::vector<char> seen(static_cast<std::size_t>(g.n()), 0);
  for (int v : cyc) {
    if (seen[static_cast<std::size_t>(v)]) fail(ErrorKind::Construction, "host construction: cycle repeats vertex " + std::to_string(v));
    seen[static_cast<std::size_t>(v)] = 1;
  }
  if (cyc.size() < 3) fail(ErrorKind::Construction, "host construction: cycle shorter than 3");
  for (std::size_t i = 0; i < cyc.size(); ++i)
    if (!g.has_edge(cyc[i], cyc[(i + 1) % cyc.size()])) fail(ErrorKind::Invariant, "host construction: cycle uses a non-edge");
  return cyc;
}

std::vector<int> hull_host_cycle(const Contracted& ct, const Unweighted& uw) {
  std::map<Edge, std::size_t> chain_of;
  for (std::size_t e = 0; e < ct.g.edges.size(); ++e) chain_of[{ct.g.edges[e].u, ct.g.edges[e].v}] = e;
  std::vector<int> cyc;
  std::size_t k = ct.anchors.size();
  for (std::size_t i = 0; i < k; ++i) {
    int a = ct.anchors[i], b = ct.anchors[(i + 1) % k];
    auto it = chain_of.find({std::min(a, b), std::max(a, b)});
    if (it == chain_of.end()) fail(ErrorKind::Construction, "host construction: consecutive anchors not adjacent in the spanner");
    std::vector<int> ch = uw.chains[it->second];
    if (ch.front() != a) std::reverse(ch.begin(), ch.end());
    cyc.insert(cyc.end(), ch.begin(), ch.end() - 1);
  }
  return cyc;
}

// ── ratio ──

Q max_ratio_sq(const PointSet& ps, const std::vector<int>& f) {
  int n = static_cast<int>(ps.points.size());
  for (std::size_t i = 0; i < ps.anchors.size(); ++i)
    if (f[static_cast<std::size_t>(ps.anchors[i])] != ps.anchors[i]) fail(ErrorKind::InvalidRetraction, "anchor moved");
  Q best = 0;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      int a = f[static_cast<std::size_t>(u)], b = f[static_cast<std::size_t>(v)];
      if (a == b) continue;
      Q d = sq_dist(ps.points[static_cast<std::size_t>(u)], ps.points[static_cast<std::size_t>(v)]);
      if (d == 0) fail(ErrorKind::Invariant, "coincident points mapped apart");
      Q r = sq_dist(ps.points[static_cast<std::size_t>(a)], ps.points[static_cast<std::size_t>(b)]) / d;
      if (r > best) best = r;
    }
  return best;
}

BruteRatio brute_force_ratio(const PointSet& ps, std::uint64_t max_states) {
  int n = static_cast<int>(ps.points.size());
  int k = static_cast<int>(ps.anchors.size());
  std::vector<int> aidx(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < k; ++i) aidx[static_cast<std::size_t>(ps.anchors[static_cast<std::size_t>(i)])] = i;
  std::vector<int> free;
  for (int v = 0; v < n; ++v)
    if (aidx[static_cast<std::size_t>(v)] < 0) free.push_back(v);
  std::vector<double> D(static_cast<std::size_t>(n * n));
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) D[static_cast<std::size_t>(u * n + v)] = sq_dist(ps.points[static_cast<std::size_t>(u)], ps.points[static_cast<std::size_t>(v)]).get_d();
  auto ratio = [&](int u, int v, int a, int b) {
    if (a == b) return 0.0;
    double d = D[static_cast<std::size_t>(u * n + v)];
    if (d == 0) return std::numeric_limits<double>::infinity();
    return D[static_cast<std::size_t>(a * n + b)] / d;
  };
  double base = 0;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) base = std::max(base, ratio(ps.anchors[static_cast<std::size_t>(i)], ps.anchors[static_cast<std::size_t>(j)], ps.anchors[static_cast<std::size_t>(i)], ps.anchors[static_cast<std::size_t>(j)]));
  // most constrained first: nearest to the anchor ring
  std::vector<std::vector<int>> cand(free.size());
  std::vector<double> reach(free.size());
  for (std::size_t i = 0; i < free.size(); ++i) {
    int v = free[i];
    for (int a : ps.anchors) cand[i].push_back(a);
    std::sort(cand[i].begin(), cand[i].end(), [&](int x, int y) {
      double dx = D[static_cast<std::size_t>(v * n + x)], dy = D[static_cast<std::size_t>(v * n + y)];
      return dx != dy ? dx < dy : x < y;
    });
    reach[i] = D[static_cast<std::size_t>(v * n + cand[i][0])];
  }
  std::vector<std::size_t> order(free.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return reach[x] != reach[y] ? reach[x] < reach[y] : x < y; });
  std::vector<int> f(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) f[static_cast<std::size_t>(v)] = aidx[static_cast<std::size_t>(v)] >= 0 ? v : -1;
  // seed the bound: everyone to the nearest anchor
  std::vector<int> best_f = f;
  for (std::size_t i = 0; i < free.size(); ++i) best_f[static_cast<std::size_t>(free[i])] = cand[i][0];
  double best = 0;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) best = std::max(best, ratio(u, v, best_f[static_cast<std::size_t>(u)], best_f[static_cast<std::size_t>(v)]));
  std::uint64_t states = 0;
  std::vector<int> placed;  // vertices with images
  for (int a : ps.anchors) placed.push_back(a);
  auto rec = [&](auto&& self, std::size_t depth, double cur) -> void {
    if (++states > max_states) fail(ErrorKind::Resource, "euclidean brute force state budget exceeded");
    if (depth == order.size()) {
      if (cur < best) {
        best = cur;
        best_f = f;
      }
      return;
    }
    std::size_t i = order[depth];
    int v = free[i];
    for (int a : cand[i]) {
      double m = cur;
      for (int u : placed) {
        m = std::max(m, ratio(u, v, f[static_cast<std::size_t>(u)], a));
        if (m >= best) break;
      }
      if (m >= best) continue;
      f[static_cast<std::size_t>(v)] = a;
      placed.push_back(v);
      self(self, depth + 1, m);
      placed.pop_back();
      f[static_cast<std::size_t>(v)] = -1;
    }
  };
  rec(rec, 0, base);
  return {best_f, max_ratio_sq(ps, best_f)};
}

// ── pipeline ──

EuclidResult euclid_retract(const PointSet& ps, const EuclidOptions& opt) {
  int n = static_cast<int>(ps.points.size());
  int k = static_cast<int>(ps.anchors.size());
  EuclidResult res;
  if (k < 10) {
    auto b = brute_force_ratio(ps);
    res.f.assignment = b.assignment;
    res.ratio_sq = b.ratio_sq;
    res.brute_force = true;
    return res;
  }
  WeightedGraph sp = delaunay_spanner(ps.points);
  res.spanner_edges = static_cast<int>(sp.edges.size());
  Contracted ct = contract_small_edges(sp, ps.anchors, k, n);
  res.contracted_n = ct.g.n;
  Unweighted uw = to_unweighted(ct.g, k, n);
  res.unweighted_n = uw.g.n();
  std::vector<int> host;
  try {
    host = build_host_cycle(uw.g, ct.anchors);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Construction) throw;
    try {
      host = hull_host_cycle(ct, uw);
    } catch (const Error& e2) {
      fail(e2.kind(), std::string("euclid stage host-cycle: ") + e.what() + "; " + e2.what());
    }
    res.hull_host = true;
  }
  res.host_length = static_cast<int>(host.size());
  Instance gi(uw.g.n(), uw.g.edges(), host);
  planar::PlanarResult pr;
  try {
    pr = planar::optimal_retract_planar(gi, opt.planar);
  } catch (const Error& e) {
    fail(e.kind(), std::string("euclid stage planar: ") + e.what());
  }
  res.planar_stretch = pr.report.max_stretch;
  // positions of the unweighted vertices
  std::vector<Point> pos(static_cast<std::size_t>(uw.g.n()));
  for (int v = 0; v < ct.g.n; ++v) pos[static_cast<std::size_t>(v)] = ps.points[static_cast<std::size_t>(ct.rep[static_cast<std::size_t>(v)])];
  for (const auto& ch : uw.chains) {
    const Point &pu = pos[static_cast<std::size_t>(ch.front())], &pv = pos[static_cast<std::size_t>(ch.back())];
    long L = static_cast<long>(ch.size()) - 1;
    for (long j = 1; j < L; ++j) {
      Q t = rat(j, L);
      pos[static_cast<std::size_t>(ch[static_cast<std::size_t>(j)])] = {pu.x + t * (pv.x - pu.x), pu.y + t * (pv.y - pu.y)};
    }
  }
  std::vector<int> group_anchor(static_cast<std::size_t>(ct.g.n), -1);
  for (int a : ps.anchors) group_anchor[static_cast<std::size_t>(ct.group[static_cast<std::size_t>(a)])] = a;
  res.f.assignment.assign(static_cast<std::size_t>(n), -1);
  for (int v = 0; v < n; ++v) {
    int gv = ct.group[static_cast<std::size_t>(v)];
    if (group_anchor[static_cast<std::size_t>(gv)] >= 0) {
      res.f.assignment[static_cast<std::size_t>(v)] = group_anchor[static_cast<std::size_t>(gv)];
      continue;
    }
    const Point& img = pos[static_cast<std::size_t>(pr.f.assignment[static_cast<std::size_t>(gv)])];
    int best = -1;
    Q bd;
    for (int a : ps.anchors) {
      Q d = sq_dist(img, ps.points[static_cast<std::size_t>(a)]);
      if (best < 0 || d < bd) {
        best = a;
        bd = d;
      }
    }
    res.f.assignment[static_cast<std::size_t>(v)] = best;
  }
  res.ratio_sq = max_ratio_sq(ps, res.f.assignment);
  return res;
}

}  // namespace retract::euclid
