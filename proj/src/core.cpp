#include "retract/core.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <numeric>
#include <unordered_map>

#include "retract/kernels.hpp"

namespace retract {

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

// ── Graph ──

Graph::Graph(int n, std::vector<Edge> edges) : n_(n) {
  if (n <= 0) fail(ErrorKind::Validation, "vertex count must be positive");
  adj_.assign(static_cast<std::size_t>(n), {});
  edges_.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n)
      fail(ErrorKind::Validation, "edge endpoint out of range: [" + std::to_string(u) + "," + std::to_string(v) + "]");
    if (u == v) fail(ErrorKind::Validation, "self-loop at vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
    edges_.push_back({u, v});
    adj_[static_cast<std::size_t>(u)].push_back(v);
    adj_[static_cast<std::size_t>(v)].push_back(u);
  }
  for (int v = 0; v < n; ++v) {
    auto& a = adj_[static_cast<std::size_t>(v)];
    std::sort(a.begin(), a.end());
    auto dup = std::adjacent_find(a.begin(), a.end());
    if (dup != a.end())
      fail(ErrorKind::Validation, "duplicate edge [" + std::to_string(std::min(v, *dup)) + "," +
                                      std::to_string(std::max(v, *dup)) + "]");
  }
}

bool Graph::has_edge(int u, int v) const {
  if (u < 0 || u >= n_) return false;
  const auto& a = adj_[static_cast<std::size_t>(u)];
  return std::binary_search(a.begin(), a.end(), v);
}

bool Graph::connected() const {
  if (n_ == 0) return true;
  auto d = bfs_distances(*this, 0);
  return std::none_of(d.begin(), d.end(), [](int x) { return x < 0; });
}

std::vector<int> bfs_distances(const Graph& g, int src) {
  std::vector<int> dist(static_cast<std::size_t>(g.n()), -1);
  std::vector<int> queue;
  queue.reserve(static_cast<std::size_t>(g.n()));
  dist[static_cast<std::size_t>(src)] = 0;
  queue.push_back(src);
  for (std::size_t h = 0; h < queue.size(); ++h) {
    int u = queue[h];
    for (int w : g.neighbors(u)) {
      if (dist[static_cast<std::size_t>(w)] < 0) {
        dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

// ── Instance ──

struct Instance::Cache {
  std::mutex mu;
  std::unordered_map<int, std::unique_ptr<std::vector<int>>> bfs;
};

Instance::Instance(int n, std::vector<Edge> edges, std::vector<int> anchors, std::vector<Point> points)
    : g_(n, std::move(edges)), anchors_(std::move(anchors)), points_(std::move(points)),
      cache_(std::make_shared<Cache>()) {
  int k = static_cast<int>(anchors_.size());
  if (k < 3) fail(ErrorKind::Validation, "anchor cycle needs at least 3 anchors");
  anchor_index_.assign(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < k; ++i) {
    int a = anchors_[static_cast<std::size_t>(i)];
    if (a < 0 || a >= n) fail(ErrorKind::Validation, "anchor id out of range: " + std::to_string(a));
    if (anchor_index_[static_cast<std::size_t>(a)] >= 0)
      fail(ErrorKind::Validation, "anchor listed twice: " + std::to_string(a));
    anchor_index_[static_cast<std::size_t>(a)] = i;
  }
  for (int i = 0; i < k; ++i) {
    int a = anchors_[static_cast<std::size_t>(i)], b = anchors_[static_cast<std::size_t>((i + 1) % k)];
    if (!g_.has_edge(a, b))
      fail(ErrorKind::Validation, "anchors do not form a cycle: missing edge [" + std::to_string(a) + "," +
                                      std::to_string(b) + "]");
  }
  if (!points_.empty() && static_cast<int>(points_.size()) != n)
    fail(ErrorKind::Validation, "points array length differs from n");
}

bool Instance::is_host_edge(int u, int v) const {
  int i = anchor_index(u), j = anchor_index(v);
  if (i < 0 || j < 0) return false;
  int d = (i - j + k()) % k();
  return d == 1 || d == k() - 1;
}

const std::vector<int>& Instance::dist_from(int v) const {
  std::lock_guard<std::mutex> lock(cache_->mu);
  auto& slot = cache_->bfs[v];
  if (!slot) slot = std::make_unique<std::vector<int>>(bfs_distances(g_, v));
  return *slot;
}

bool Instance::operator==(const Instance& o) const {
  return n() == o.n() && edges() == o.edges() && anchors_ == o.anchors_ && points_ == o.points_;
}

void require_connected(const Instance& inst) {
  if (!inst.graph().connected()) fail(ErrorKind::Validation, "guest graph is disconnected");
}

int cycle_distance(const Instance& inst, int i, int j) {
  int k = inst.k();
  if (i < 0 || j < 0 || i >= k || j >= k) fail(ErrorKind::Input, "anchor index out of range");
  return cyc_dist(k, i, j);
}

void check_retraction(const Instance& inst, const Retraction& f) {
  if (static_cast<int>(f.assignment.size()) != inst.n())
    fail(ErrorKind::InvalidRetraction, "assignment length differs from n");
  for (int v = 0; v < inst.n(); ++v) {
    int a = f.assignment[static_cast<std::size_t>(v)];
    if (a < 0 || a >= inst.n() || !inst.is_anchor(a))
      fail(ErrorKind::InvalidRetraction, "vertex " + std::to_string(v) + " maps to non-anchor " + std::to_string(a));
    if (inst.is_anchor(v) && a != v)
      fail(ErrorKind::InvalidRetraction, "anchor " + std::to_string(v) + " is moved to " + std::to_string(a));
  }
}

StretchReport stretch(const Instance& inst, const Retraction& f) {
  check_retraction(inst, f);
  const auto& e = inst.edges();
  StretchReport rep;
  if (e.empty()) return rep;
  std::vector<std::int32_t> a(e.size()), b(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    a[i] = inst.anchor_index(f.assignment[static_cast<std::size_t>(e[i].first)]);
    b[i] = inst.anchor_index(f.assignment[static_cast<std::size_t>(e[i].second)]);
  }
  rep.max_stretch = kernels::max_cycle_stretch(a.data(), b.data(), e.size(), inst.k());
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (cyc_dist(inst.k(), a[i], b[i]) == rep.max_stretch) {
      rep.witness = e[i];
      break;
    }
  }
  return rep;
}

std::optional<Q> distance_lower_bound(const Instance& inst) {
  Q best(1);
  int k = inst.k();
  for (int i = 0; i < k; ++i) {
    const auto& d = inst.dist_from(inst.anchors()[static_cast<std::size_t>(i)]);
    for (int j = i + 1; j < k; ++j) {
      int dg = d[static_cast<std::size_t>(inst.anchors()[static_cast<std::size_t>(j)])];
      if (dg < 0) return std::nullopt;
      Q r(cyc_dist(k, i, j), dg);
      r.canonicalize();
      if (r > best) best = r;
    }
  }
  return best;
}

// ── HostMetric ──

HostMetric HostMetric::cycle(const Instance& inst) {
  std::vector<Edge> he;
  int k = inst.k();
  for (int i = 0; i < k; ++i) he.push_back({inst.anchors()[static_cast<std::size_t>(i)], inst.anchors()[static_cast<std::size_t>((i + 1) % k)]});
  return subgraph(inst.n(), inst.anchors(), he);
}

HostMetric HostMetric::subgraph(int n, const std::vector<int>& anchors, const std::vector<Edge>& host_edges) {
  HostMetric h;
  h.anchors_ = anchors;
  h.index_.assign(static_cast<std::size_t>(n), -1);
  int k = static_cast<int>(anchors.size());
  if (k < 1) fail(ErrorKind::Validation, "host has no anchors");
  for (int i = 0; i < k; ++i) {
    int a = anchors[static_cast<std::size_t>(i)];
    if (a < 0 || a >= n) fail(ErrorKind::Validation, "host anchor out of range");
    if (h.index_[static_cast<std::size_t>(a)] >= 0) fail(ErrorKind::Validation, "host anchor listed twice");
    h.index_[static_cast<std::size_t>(a)] = i;
  }
  h.host_adj_.assign(static_cast<std::size_t>(k), {});
  for (auto [u, v] : host_edges) {
    if (u < 0 || v < 0 || u >= n || v >= n || h.index_[static_cast<std::size_t>(u)] < 0 || h.index_[static_cast<std::size_t>(v)] < 0)
      fail(ErrorKind::Validation, "host edge endpoint is not an anchor");
    if (u == v) fail(ErrorKind::Validation, "host self-loop");
    h.host_edges_.push_back({std::min(u, v), std::max(u, v)});
    h.host_adj_[static_cast<std::size_t>(h.index_[static_cast<std::size_t>(u)])].push_back(h.index_[static_cast<std::size_t>(v)]);
    h.host_adj_[static_cast<std::size_t>(h.index_[static_cast<std::size_t>(v)])].push_back(h.index_[static_cast<std::size_t>(u)]);
  }
  for (auto& a : h.host_adj_) std::sort(a.begin(), a.end());
  h.dist_.assign(static_cast<std::size_t>(k) * static_cast<std::size_t>(k), -1);
  for (int s = 0; s < k; ++s) {
    int* row = h.dist_.data() + static_cast<std::size_t>(s) * static_cast<std::size_t>(k);
    std::vector<int> q{s};
    row[s] = 0;
    for (std::size_t t = 0; t < q.size(); ++t)
      for (int w : h.host_adj_[static_cast<std::size_t>(q[t])])
        if (row[w] < 0) {
          row[w] = row[q[t]] + 1;
          q.push_back(w);
        }
    for (int j = 0; j < k; ++j)
      if (row[j] < 0) fail(ErrorKind::Validation, "host subgraph is disconnected");
  }
  return h;
}

int HostMetric::diameter() const { return dist_.empty() ? 0 : *std::max_element(dist_.begin(), dist_.end()); }

bool HostMetric::is_host_edge(int u, int v) const {
  int i = index(u), j = index(v);
  if (i < 0 || j < 0) return false;
  const auto& a = host_adj_[static_cast<std::size_t>(i)];
  return std::binary_search(a.begin(), a.end(), j);
}

std::vector<int> HostMetric::path(int i, int j) const {
  std::vector<int> p{i};
  int cur = i;
  while (cur != j) {
    // smallest-index neighbour that is one step closer
    for (int w : host_adj_[static_cast<std::size_t>(cur)]) {
      if (d(w, j) == d(cur, j) - 1) {
        cur = w;
        break;
      }
    }
    p.push_back(cur);
  }
  return p;
}

int stretch_under(const Graph& g, const HostMetric& h, const std::vector<int>& assignment, Edge* witness) {
  int best = 0;
  if (witness) *witness = {-1, -1};
  for (auto [u, v] : g.edges()) {
    int a = h.index(assignment[static_cast<std::size_t>(u)]), b = h.index(assignment[static_cast<std::size_t>(v)]);
    if (a < 0 || b < 0) fail(ErrorKind::InvalidRetraction, "image is not an anchor");
    int d = h.d(a, b);
    if (d > best) {
      best = d;
      if (witness) *witness = {u, v};
    }
  }
  return best;
}

// ── subdivision ──

Subdivision subdivide_graph(const Graph& g, const std::function<bool(int, int)>& is_host, int l) {
  if (l < 1) fail(ErrorKind::Input, "subdivision length must be >= 1");
  Subdivision s;
  s.original_n = g.n();
  s.l = l;
  int next = g.n();
  std::vector<Edge> edges;
  for (auto [u, v] : g.edges()) {
    if (l == 1 || is_host(u, v)) {
      edges.push_back({u, v});
      continue;
    }
    std::vector<int> chain{u};
    for (int i = 1; i < l; ++i) chain.push_back(next++);
    chain.push_back(v);
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) edges.push_back({chain[i], chain[i + 1]});
    s.chains.push_back(std::move(chain));
  }
  s.origin.assign(static_cast<std::size_t>(next), -1);
  std::iota(s.origin.begin(), s.origin.begin() + g.n(), 0);
  s.graph = Graph(next, std::move(edges));
  return s;
}

SubdividedInstance subdivide(const Instance& inst, int l) {
  auto sub = subdivide_graph(inst.graph(), [&](int u, int v) { return inst.is_host_edge(u, v); }, l);
  std::vector<Point> pts;
  Instance out(sub.graph.n(), sub.graph.edges(), inst.anchors(), pts);
  return {std::move(out), std::move(sub)};
}

std::vector<int> lift_to_subdivision(const Subdivision& sub, const HostMetric& h, const std::vector<int>& assignment) {
  std::vector<int> out(static_cast<std::size_t>(sub.graph.n()), -1);
  for (int v = 0; v < sub.original_n; ++v) out[static_cast<std::size_t>(v)] = assignment[static_cast<std::size_t>(v)];
  for (const auto& chain : sub.chains) {
    int a = h.index(assignment[static_cast<std::size_t>(chain.front())]);
    int b = h.index(assignment[static_cast<std::size_t>(chain.back())]);
    auto p = h.path(a, b);
    int d = static_cast<int>(p.size()) - 1;
    for (std::size_t i = 1; i + 1 < chain.size(); ++i)
      out[static_cast<std::size_t>(chain[i])] = h.anchors()[static_cast<std::size_t>(p[static_cast<std::size_t>(std::min<int>(static_cast<int>(i), d))])];
  }
  return out;
}

std::vector<int> restrict_to_original(const Subdivision& sub, const std::vector<int>& assignment) {
  return std::vector<int>(assignment.begin(), assignment.begin() + sub.original_n);
}

// ── rationals ──

Q q_from_parts(const Z& num, const Z& den) {
  if (den == 0) fail(ErrorKind::Input, "zero denominator");
  Q q(num, den);
  q.canonicalize();
  return q;
}

std::string q_to_string(const Q& q) { return q.get_str(); }

Z q_floor(const Q& q) {
  Z r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Z q_ceil(const Q& q) {
  Z r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

// ── rng: xoshiro256** seeded by splitmix64, fixed across platforms ──

Rng::Rng(std::uint64_t seed) {
  for (auto& x : s) {
    seed += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = seed;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    x = z ^ (z >> 31);
  }
}

std::uint64_t Rng::next() {
  auto rotl = [](std::uint64_t x, int r) { return (x << r) | (x >> (64 - r)); };
  std::uint64_t result = rotl(s[1] * 5, 7) * 9;
  std::uint64_t t = s[1] << 17;
  s[2] ^= s[0];
  s[3] ^= s[1];
  s[1] ^= s[2];
  s[0] ^= s[3];
  s[2] ^= t;
  s[3] = rotl(s[3], 45);
  return result;
}

int Rng::uniform(int lo, int hi) {
  std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(next() % span);
}

double Rng::unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

}  // namespace retract
