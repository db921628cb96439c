#pragma once
// instance families shared by the unit tests and the acceptance run

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "retract/core.hpp"

namespace fam {

using namespace retract;

struct Named {
  std::string name;
  Instance inst;
};

// random planar, k in [3,8], 2..10 free vertices
inline std::vector<Named> small_planar(int count, std::uint64_t base = 1000) {
  std::vector<Named> out;
  for (int i = 0; i < count; ++i) {
    std::uint64_t seed = base + static_cast<std::uint64_t>(i);
    Rng r(seed);
    int k = r.uniform(3, 8), fr = r.uniform(2, 10);
    double keep = 0.4 + 0.5 * r.unit();
    out.push_back({"planar(seed=" + std::to_string(seed) + ",k=" + std::to_string(k) + ",free=" + std::to_string(fr) + ")",
                   gen_random_planar(seed, k, fr, keep)});
  }
  return out;
}

struct HostCase {
  std::string name;
  Graph g;
  HostMetric h;
  bool tree = false;
};

// connected guest on 5..9 vertices with a connected host subgraph on 3..n-1 of them
inline HostCase random_host_case(std::uint64_t seed, bool tree_host) {
  Rng r(seed);
  int n = r.uniform(5, 9);
  std::vector<Edge> edges;
  auto has = [&](int a, int b) {
    return std::find(edges.begin(), edges.end(), Edge{std::min(a, b), std::max(a, b)}) != edges.end();
  };
  for (int v = 1; v < n; ++v) {
    int u = r.uniform(0, v - 1);
    edges.push_back({u, v});
  }
  int extra = r.uniform(1, n);
  for (int t = 0; t < extra; ++t) {
    int a = r.uniform(0, n - 1), b = r.uniform(0, n - 1);
    if (a != b && !has(a, b)) edges.push_back({std::min(a, b), std::max(a, b)});
  }
  Graph g(n, edges);
  // grow a connected anchor set from vertex 0
  int want = r.uniform(3, n - 1);
  std::vector<int> anchors{0};
  std::vector<Edge> host;
  while (static_cast<int>(anchors.size()) < want) {
    std::vector<Edge> frontier;
    for (int a : anchors)
      for (int w : g.neighbors(a))
        if (std::find(anchors.begin(), anchors.end(), w) == anchors.end()) frontier.push_back({a, w});
    auto e = frontier[static_cast<std::size_t>(r.uniform(0, static_cast<int>(frontier.size()) - 1))];
    anchors.push_back(e.second);
    host.push_back({std::min(e.first, e.second), std::max(e.first, e.second)});
  }
  if (!tree_host)
    for (auto [u, v] : edges)
      if (std::find(anchors.begin(), anchors.end(), u) != anchors.end() && std::find(anchors.begin(), anchors.end(), v) != anchors.end() &&
          std::find(host.begin(), host.end(), Edge{u, v}) == host.end() && r.unit() < 0.7)
        host.push_back({u, v});
  std::sort(anchors.begin(), anchors.end());
  return {"host(seed=" + std::to_string(seed) + ",n=" + std::to_string(n) + ",anchors=" + std::to_string(anchors.size()) + (tree_host ? ",tree)" : ")"),
          g, HostMetric::subgraph(n, anchors, host), tree_host};
}

}  // namespace fam
