#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace retract {

using Q = mpq_class;
using Z = mpz_class;

enum class ErrorKind {
  Input,              // bad arguments or malformed text
  Validation,         // instance / retraction invariant broken
  InvalidRetraction,  // an anchor is moved
  Invariant,          // internal bug signal
  Resource,           // budget or memory cap hit
  NotPlanar,
  Construction,       // a pipeline stage could not build its object
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

// num/den in lowest terms; gmp's two-argument constructor leaves it raw
inline Q rat(long num, long den) {
  Q q(num, den);
  q.canonicalize();
  return q;
}

using Edge = std::pair<int, int>;

struct Point {
  Q x, y;
  bool operator==(const Point& o) const { return x == o.x && y == o.y; }
};

// Simple undirected graph on 0..n-1. Edges are stored with u < v in input order.
class Graph {
 public:
  Graph() = default;
  Graph(int n, std::vector<Edge> edges);

  int n() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<int>& neighbors(int v) const { return adj_[static_cast<std::size_t>(v)]; }
  bool has_edge(int u, int v) const;
  bool connected() const;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adj_;  // sorted
};

// -1 marks unreachable.
std::vector<int> bfs_distances(const Graph& g, int src);

// Guest graph plus anchor cycle H given in cycle order.
class Instance {
 public:
  Instance() = default;
  Instance(int n, std::vector<Edge> edges, std::vector<int> anchors, std::vector<Point> points = {});

  const Graph& graph() const { return g_; }
  int n() const { return g_.n(); }
  int k() const { return static_cast<int>(anchors_.size()); }
  const std::vector<Edge>& edges() const { return g_.edges(); }
  const std::vector<int>& anchors() const { return anchors_; }
  int anchor_index(int v) const { return anchor_index_[static_cast<std::size_t>(v)]; }
  bool is_anchor(int v) const { return anchor_index(v) >= 0; }
  bool is_host_edge(int u, int v) const;
  const std::vector<Point>& points() const { return points_; }
  bool has_points() const { return !points_.empty(); }
  int free_count() const { return n() - k(); }

  // memoized BFS from v in G
  const std::vector<int>& dist_from(int v) const;

  bool operator==(const Instance& o) const;

 private:
  Graph g_;
  std::vector<int> anchors_;
  std::vector<int> anchor_index_;
  std::vector<Point> points_;
  struct Cache;
  std::shared_ptr<Cache> cache_;
};

void require_connected(const Instance& inst);

struct Retraction {
  std::vector<int> assignment;  // vertex -> anchor vertex id
  bool operator==(const Retraction& o) const { return assignment == o.assignment; }
};

struct StretchReport {
  int max_stretch = 0;
  Edge witness{-1, -1};
};

inline int cyc_dist(int k, int i, int j) {
  int d = i > j ? i - j : j - i;
  return d < k - d ? d : k - d;
}

int cycle_distance(const Instance& inst, int i, int j);

// throws InvalidRetraction when an anchor moves or an image is not an anchor
void check_retraction(const Instance& inst, const Retraction& f);
StretchReport stretch(const Instance& inst, const Retraction& f);

// nullopt when some anchor pair is disconnected in G
std::optional<Q> distance_lower_bound(const Instance& inst);

// Metric of a connected host subgraph on the anchors. For a cycle host this is the cycle metric.
class HostMetric {
 public:
  static HostMetric cycle(const Instance& inst);
  static HostMetric subgraph(int n, const std::vector<int>& anchors, const std::vector<Edge>& host_edges);

  int k() const { return static_cast<int>(anchors_.size()); }
  int n() const { return static_cast<int>(index_.size()); }
  const std::vector<int>& anchors() const { return anchors_; }
  int index(int v) const { return index_[static_cast<std::size_t>(v)]; }
  int d(int i, int j) const { return dist_[static_cast<std::size_t>(i) * anchors_.size() + static_cast<std::size_t>(j)]; }
  int diameter() const;
  const std::vector<Edge>& host_edges() const { return host_edges_; }
  bool is_host_edge(int u, int v) const;
  // shortest host path between anchor indices, inclusive
  std::vector<int> path(int i, int j) const;

 private:
  std::vector<int> anchors_;
  std::vector<int> index_;
  std::vector<int> dist_;
  std::vector<Edge> host_edges_;
  std::vector<std::vector<int>> host_adj_;  // by index
};

int stretch_under(const Graph& g, const HostMetric& h, const std::vector<int>& assignment, Edge* witness = nullptr);

// guest with every non-host edge replaced by an l-edge path; original ids kept, new ids appended
struct Subdivision {
  Graph graph;
  int original_n = 0;
  int l = 1;
  std::vector<int> origin;                // new id -> original id, -1 for path vertices
  std::vector<std::vector<int>> chains;   // per subdivided edge: u, p1..p_{l-1}, v
};

Subdivision subdivide_graph(const Graph& g, const std::function<bool(int, int)>& is_host, int l);

struct SubdividedInstance {
  Instance inst;
  Subdivision sub;
};
SubdividedInstance subdivide(const Instance& inst, int l);

// stretch-l map of G -> stretch-1 map of G_l, walking shortest host paths
std::vector<int> lift_to_subdivision(const Subdivision& sub, const HostMetric& h, const std::vector<int>& assignment);
std::vector<int> restrict_to_original(const Subdivision& sub, const std::vector<int>& assignment);

// ── generators ──
Instance gen_cycle(int k);
Instance gen_wheel(int k);
Instance gen_grid(int m);
Instance gen_column_deleted_grid(int m);
// anchors on a convex polygon, free points inside, planar straight-line graph from a Delaunay
// triangulation with some non-host edges deleted (connectivity kept)
Instance gen_random_planar(std::uint64_t seed, int k, int free_vertices, double keep = 0.6);
// k anchors on a rational circle approximation with unit spacing, interior points inside
Instance gen_random_points(std::uint64_t seed, int k, int interior);

// ── deterministic rng helpers ──
struct Rng {
  explicit Rng(std::uint64_t seed);
  std::uint64_t next();
  int uniform(int lo, int hi);  // inclusive
  double unit();
  std::uint64_t s[4];
};

// ── serialization ──
Instance parse_instance(const std::string& text);
std::string serialize_instance(const Instance& inst);
// relaxed parse: graph + optional anchors, no cycle validation (treewidth guests)
struct RawGraph {
  Graph g;
  std::vector<int> anchors;
};
RawGraph parse_graph(const std::string& text);
struct HostFile {
  std::vector<int> anchors;
  std::vector<Edge> edges;
};
HostFile parse_host(const std::string& text);

std::string serialize_retraction(const Retraction& f, int stretch_value);
Retraction parse_retraction(const std::string& text, int* stretch_value = nullptr);

std::string q_to_string(const Q& q);
Q q_from_parts(const Z& num, const Z& den);

// floor / ceil of a rational
Z q_floor(const Q& q);
Z q_ceil(const Q& q);

}  // namespace retract
