#include "retract/treewidth.hpp"

#include <algorithm>
#include <set>

namespace retract::treewidth {

int TreeDecomposition::width() const {
  int w = 0;
  for (const auto& b : bags) w = std::max(w, static_cast<int>(b.size()));
  return w - 1;
}

int NiceTreeDecomposition::width() const {
  int w = 0;
  for (const auto& nd : nodes) w = std::max(w, static_cast<int>(nd.bag.size()));
  return w - 1;
}

TreeDecomposition min_fill_decomposition(const Graph& g) {
  int n = g.n();
  TreeDecomposition td;
  if (n == 0) return td;
  std::vector<std::set<int>> adj(static_cast<std::size_t>(n));
  for (auto [u, v] : g.edges()) {
    adj[static_cast<std::size_t>(u)].insert(v);
    adj[static_cast<std::size_t>(v)].insert(u);
  }
  std::vector<char> alive(static_cast<std::size_t>(n), 1);
  std::vector<int> pos(static_cast<std::size_t>(n), -1), order;
  std::vector<std::vector<int>> nbrs;  // neighbours at elimination
  auto fill = [&](int v) {
    const auto& nb = adj[static_cast<std::size_t>(v)];
    long f = 0;
    for (auto a = nb.begin(); a != nb.end(); ++a)
      for (auto b = std::next(a); b != nb.end(); ++b)
        if (!adj[static_cast<std::size_t>(*a)].count(*b)) ++f;
    return f;
  };
  for (int step = 0; step < n; ++step) {
    int best = -1;
    long bf = 0;
    for (int v = 0; v < n; ++v) {
      if (!alive[static_cast<std::size_t>(v)]) continue;
      long f = fill(v);
      if (best < 0 || f < bf || (f == bf && adj[static_cast<std::size_t>(v)].size() < adj[static_cast<std::size_t>(best)].size())) {
        best = v;
        bf = f;
      }
    }
    int v = best;
    std::vector<int> nb(adj[static_cast<std::size_t>(v)].begin(), adj[static_cast<std::size_t>(v)].end());
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        adj[static_cast<std::size_t>(nb[i])].insert(nb[j]);
        adj[static_cast<std::size_t>(nb[j])].insert(nb[i]);
      }
    for (int w : nb) adj[static_cast<std::size_t>(w)].erase(v);
    adj[static_cast<std::size_t>(v)].clear();
    alive[static_cast<std::size_t>(v)] = 0;
    pos[static_cast<std::size_t>(v)] = step;
    order.push_back(v);
    nbrs.push_back(nb);
    std::vector<int> bag = nb;
    bag.push_back(v);
    std::sort(bag.begin(), bag.end());
    td.bags.push_back(bag);
  }
  for (int i = 0; i + 1 < n; ++i) {
    int parent = i + 1;
    if (!nbrs[static_cast<std::size_t>(i)].empty()) {
      parent = n;
      for (int w : nbrs[static_cast<std::size_t>(i)]) parent = std::min(parent, pos[static_cast<std::size_t>(w)]);
    }
    td.tree.push_back({i, parent});
  }
  return td;
}

NiceTreeDecomposition make_nice(const TreeDecomposition& td) {
  NiceTreeDecomposition nd;
  int B = static_cast<int>(td.bags.size());
  if (B == 0) {
    nd.nodes.push_back({NodeType::Leaf, {}, -1, {}});
    nd.root = 0;
    return nd;
  }
  std::vector<std::vector<int>> tadj(static_cast<std::size_t>(B));
  for (auto [a, b] : td.tree) {
    tadj[static_cast<std::size_t>(a)].push_back(b);
    tadj[static_cast<std::size_t>(b)].push_back(a);
  }
  int root = B - 1;
  // iterative post-order
  std::vector<int> parent(static_cast<std::size_t>(B), -2), post;
  std::vector<int> st{root};
  parent[static_cast<std::size_t>(root)] = -1;
  while (!st.empty()) {
    int t = st.back();
    st.pop_back();
    post.push_back(t);
    for (int c : tadj[static_cast<std::size_t>(t)])
      if (parent[static_cast<std::size_t>(c)] == -2) {
        parent[static_cast<std::size_t>(c)] = t;
        st.push_back(c);
      }
  }
  std::reverse(post.begin(), post.end());
  auto add = [&](NiceNode node) {
    nd.nodes.push_back(std::move(node));
    return static_cast<int>(nd.nodes.size()) - 1;
  };
  // morph a node with bag `from` into one with bag `to`
  auto morph = [&](int cur, const std::vector<int>& from, const std::vector<int>& to) {
    std::vector<int> bag = from;
    for (int v : from)
      if (!std::binary_search(to.begin(), to.end(), v)) {
        bag.erase(std::find(bag.begin(), bag.end(), v));
        cur = add({NodeType::Forget, bag, v, {cur}});
      }
    for (int v : to)
      if (!std::binary_search(bag.begin(), bag.end(), v)) {
        bag.insert(std::upper_bound(bag.begin(), bag.end(), v), v);
        cur = add({NodeType::Introduce, bag, v, {cur}});
      }
    return cur;
  };
  std::vector<int> top(static_cast<std::size_t>(B), -1);  // nice node carrying td bag t
  std::vector<std::vector<int>> kids(static_cast<std::size_t>(B));
  for (int t : post)
    if (parent[static_cast<std::size_t>(t)] >= 0) kids[static_cast<std::size_t>(parent[static_cast<std::size_t>(t)])].push_back(t);
  for (int t : post) {
    const auto& bag = td.bags[static_cast<std::size_t>(t)];
    std::vector<int> branches;
    for (int c : kids[static_cast<std::size_t>(t)]) branches.push_back(morph(top[static_cast<std::size_t>(c)], td.bags[static_cast<std::size_t>(c)], bag));
    if (branches.empty()) branches.push_back(morph(add({NodeType::Leaf, {}, -1, {}}), {}, bag));
    int cur = branches[0];
    for (std::size_t i = 1; i < branches.size(); ++i) cur = add({NodeType::Join, bag, -1, {cur, branches[i]}});
    top[static_cast<std::size_t>(t)] = cur;
  }
  nd.root = morph(top[static_cast<std::size_t>(root)], td.bags[static_cast<std::size_t>(root)], {});
  return nd;
}

NiceTreeDecomposition tree_decompose(const Graph& g) { return make_nice(min_fill_decomposition(g)); }

bool valid_decomposition(const Graph& g, const TreeDecomposition& td) {
  int B = static_cast<int>(td.bags.size());
  if (g.n() == 0) return true;
  if (static_cast<int>(td.tree.size()) != B - 1) return false;
  std::vector<std::vector<int>> tadj(static_cast<std::size_t>(B));
  for (auto [a, b] : td.tree) {
    if (a < 0 || b < 0 || a >= B || b >= B) return false;
    tadj[static_cast<std::size_t>(a)].push_back(b);
    tadj[static_cast<std::size_t>(b)].push_back(a);
  }
  {
    std::vector<char> seen(static_cast<std::size_t>(B), 0);
    std::vector<int> q{0};
    seen[0] = 1;
    for (std::size_t i = 0; i < q.size(); ++i)
      for (int c : tadj[static_cast<std::size_t>(q[i])])
        if (!seen[static_cast<std::size_t>(c)]) {
          seen[static_cast<std::size_t>(c)] = 1;
          q.push_back(c);
        }
    if (static_cast<int>(q.size()) != B) return false;
  }
  auto has = [&](int b, int v) { return std::binary_search(td.bags[static_cast<std::size_t>(b)].begin(), td.bags[static_cast<std::size_t>(b)].end(), v); };
  for (auto [u, v] : g.edges()) {
    bool ok = false;
    for (int b = 0; b < B && !ok; ++b) ok = has(b, u) && has(b, v);
    if (!ok) return false;
  }
  for (int v = 0; v < g.n(); ++v) {
    std::vector<int> holding;
    for (int b = 0; b < B; ++b)
      if (has(b, v)) holding.push_back(b);
    if (holding.empty()) return false;
    std::vector<char> seen(static_cast<std::size_t>(B), 0);
    std::vector<int> q{holding[0]};
    seen[static_cast<std::size_t>(holding[0])] = 1;
    for (std::size_t i = 0; i < q.size(); ++i)
      for (int c : tadj[static_cast<std::size_t>(q[i])])
        if (!seen[static_cast<std::size_t>(c)] && has(c, v)) {
          seen[static_cast<std::size_t>(c)] = 1;
          q.push_back(c);
        }
    if (q.size() != holding.size()) return false;
  }
  return true;
}

bool valid_nice(const Graph& g, const NiceTreeDecomposition& nd) {
  TreeDecomposition td;
  for (const auto& node : nd.nodes) td.bags.push_back(node.bag);
  for (std::size_t i = 0; i < nd.nodes.size(); ++i) {
    const auto& x = nd.nodes[i];
    for (int c : x.children) td.tree.push_back({static_cast<int>(i), c});
    auto without = [&](const std::vector<int>& b, int v) {
      std::vector<int> r;
      for (int w : b)
        if (w != v) r.push_back(w);
      return r;
    };
    switch (x.type) {
      case NodeType::Leaf:
        if (!x.children.empty() || !x.bag.empty()) return false;
        break;
      case NodeType::Introduce: {
        if (x.children.size() != 1) return false;
        const auto& y = nd.nodes[static_cast<std::size_t>(x.children[0])].bag;
        if (!std::binary_search(x.bag.begin(), x.bag.end(), x.vertex) || without(x.bag, x.vertex) != y) return false;
        break;
      }
      case NodeType::Forget: {
        if (x.children.size() != 1) return false;
        const auto& y = nd.nodes[static_cast<std::size_t>(x.children[0])].bag;
        if (!std::binary_search(y.begin(), y.end(), x.vertex) || without(y, x.vertex) != x.bag) return false;
        break;
      }
      case NodeType::Join:
        if (x.children.size() != 2) return false;
        for (int c : x.children)
          if (nd.nodes[static_cast<std::size_t>(c)].bag != x.bag) return false;
        break;
    }
  }
  if (nd.nodes[static_cast<std::size_t>(nd.root)].bag.size() != 0) return false;
  return valid_decomposition(g, td);
}

TreeDecomposition subdivided_decomposition(const TreeDecomposition& td, const Subdivision& sub) {
  if (td.width() <= 1) return min_fill_decomposition(sub.graph);
  TreeDecomposition out = td;
  for (const auto& chain : sub.chains) {
    int u = chain.front(), v = chain.back();
    int host = -1;
    for (std::size_t b = 0; b < td.bags.size() && host < 0; ++b) {
      const auto& bag = td.bags[b];
      if (std::binary_search(bag.begin(), bag.end(), u) && std::binary_search(bag.begin(), bag.end(), v)) host = static_cast<int>(b);
    }
    if (host < 0) fail(ErrorKind::Invariant, "decomposition misses an edge");
    int prev = host;
    for (std::size_t j = 1; j + 1 < chain.size(); ++j) {
      std::vector<int> bag = j == 1 ? std::vector<int>{u, v, chain[1]} : std::vector<int>{v, chain[j - 1], chain[j]};
      std::sort(bag.begin(), bag.end());
      out.bags.push_back(bag);
      int id = static_cast<int>(out.bags.size()) - 1;
      out.tree.push_back({prev, id});
      prev = id;
    }
  }
  return out;
}

namespace {

std::optional<std::vector<int>> run_dp(const Graph& g, const HostMetric& h, const NiceTreeDecomposition& nd, int s, const DpOptions& opt) {
  int n = g.n(), k = h.k();
  std::vector<std::vector<int>> dom(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    if (h.index(v) >= 0) {
      dom[static_cast<std::size_t>(v)] = {h.index(v)};
    } else {
      dom[static_cast<std::size_t>(v)].resize(static_cast<std::size_t>(k));
      for (int i = 0; i < k; ++i) dom[static_cast<std::size_t>(v)][static_cast<std::size_t>(i)] = i;
    }
  }
  std::size_t N = nd.nodes.size();
  std::vector<std::vector<std::uint8_t>> table(N);
  std::uint64_t total = 0;
  auto size_of = [&](const std::vector<int>& bag) {
    std::uint64_t sz = 1;
    for (int v : bag) {
      sz *= dom[static_cast<std::size_t>(v)].size();
      if (sz > opt.max_entries) fail(ErrorKind::Resource, "DP table exceeds the entry cap");
    }
    return sz;
  };
  auto strides = [&](const std::vector<int>& bag) {
    std::vector<std::uint64_t> st(bag.size());
    std::uint64_t m = 1;
    for (std::size_t i = 0; i < bag.size(); ++i) {
      st[i] = m;
      m *= dom[static_cast<std::size_t>(bag[i])].size();
    }
    return st;
  };
  // nodes are stored children first
  for (std::size_t x = 0; x < N; ++x) {
    const auto& node = nd.nodes[x];
    std::uint64_t sz = size_of(node.bag);
    total += sz;
    if (total > opt.max_entries) fail(ErrorKind::Resource, "DP tables exceed the entry cap");
    auto& T = table[x];
    T.assign(sz, 0);
    switch (node.type) {
      case NodeType::Leaf:
        T[0] = 1;
        break;
      case NodeType::Join: {
        const auto& A = table[static_cast<std::size_t>(node.children[0])];
        const auto& Bt = table[static_cast<std::size_t>(node.children[1])];
        for (std::uint64_t i = 0; i < sz; ++i) T[i] = A[i] & Bt[i];
        break;
      }
      case NodeType::Introduce: {
        const auto& Y = table[static_cast<std::size_t>(node.children[0])];
        std::size_t pv = static_cast<std::size_t>(std::find(node.bag.begin(), node.bag.end(), node.vertex) - node.bag.begin());
        auto cst = strides(nd.nodes[static_cast<std::size_t>(node.children[0])].bag);
        int v = node.vertex;
        std::vector<std::size_t> nbr_pos;
        for (std::size_t i = 0; i < node.bag.size(); ++i)
          if (i != pv && g.has_edge(v, node.bag[i])) nbr_pos.push_back(i);
        std::vector<std::size_t> digit(node.bag.size(), 0);
        for (std::uint64_t idx = 0; idx < sz; ++idx) {
          std::uint64_t ci = 0;
          for (std::size_t i = 0, j = 0; i < node.bag.size(); ++i) {
            if (i == pv) continue;
            ci += digit[i] * cst[j++];
          }
          if (Y[ci]) {
            int a = dom[static_cast<std::size_t>(v)][digit[pv]];
            bool ok = true;
            for (std::size_t i : nbr_pos)
              if (h.d(a, dom[static_cast<std::size_t>(node.bag[i])][digit[i]]) > s) {
                ok = false;
                break;
              }
            T[idx] = ok;
          }
          for (std::size_t i = 0; i < digit.size(); ++i) {
            if (++digit[i] < dom[static_cast<std::size_t>(node.bag[i])].size()) break;
            digit[i] = 0;
          }
        }
        break;
      }
      case NodeType::Forget: {
        const auto& cbag = nd.nodes[static_cast<std::size_t>(node.children[0])].bag;
        const auto& Y = table[static_cast<std::size_t>(node.children[0])];
        std::size_t pv = static_cast<std::size_t>(std::find(cbag.begin(), cbag.end(), node.vertex) - cbag.begin());
        auto pst = strides(node.bag);
        std::vector<std::size_t> digit(cbag.size(), 0);
        for (std::uint64_t ci = 0; ci < Y.size(); ++ci) {
          if (Y[ci]) {
            std::uint64_t pi = 0;
            for (std::size_t i = 0, j = 0; i < cbag.size(); ++i) {
              if (i == pv) continue;
              pi += digit[i] * pst[j++];
            }
            T[pi] = 1;
          }
          for (std::size_t i = 0; i < digit.size(); ++i) {
            if (++digit[i] < dom[static_cast<std::size_t>(cbag[i])].size()) break;
            digit[i] = 0;
          }
        }
        break;
      }
    }
  }
  if (!table[static_cast<std::size_t>(nd.root)][0]) return std::nullopt;
  // top-down witness
  std::vector<int> val(static_cast<std::size_t>(n), -1);  // digit into dom
  std::vector<int> st{nd.root};
  auto index_of = [&](const std::vector<int>& bag) {
    auto str = strides(bag);
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < bag.size(); ++i) idx += static_cast<std::uint64_t>(val[static_cast<std::size_t>(bag[i])]) * str[i];
    return idx;
  };
  while (!st.empty()) {
    int x = st.back();
    st.pop_back();
    const auto& node = nd.nodes[static_cast<std::size_t>(x)];
    if (node.type == NodeType::Forget) {
      int c = node.children[0];
      const auto& Y = table[static_cast<std::size_t>(c)];
      bool found = false;
      for (std::size_t d = 0; d < dom[static_cast<std::size_t>(node.vertex)].size(); ++d) {
        val[static_cast<std::size_t>(node.vertex)] = static_cast<int>(d);
        if (Y[index_of(nd.nodes[static_cast<std::size_t>(c)].bag)]) {
          found = true;
          break;
        }
      }
      if (!found) fail(ErrorKind::Invariant, "DP witness extraction failed");
    }
    for (int c : node.children) st.push_back(c);
  }
  std::vector<int> out(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    if (val[static_cast<std::size_t>(v)] < 0) fail(ErrorKind::Invariant, "vertex never forgotten");
    out[static_cast<std::size_t>(v)] = h.anchors()[static_cast<std::size_t>(dom[static_cast<std::size_t>(v)][static_cast<std::size_t>(val[static_cast<std::size_t>(v)])])];
  }
  return out;
}

}  // namespace

std::optional<std::vector<int>> stretch1_tw(const Graph& g, const HostMetric& h, const NiceTreeDecomposition& nd, const DpOptions& opt) {
  return run_dp(g, h, nd, 1, opt);
}

TwResult optimal_retract_tw(const Graph& g, const HostMetric& h, const DpOptions& opt) {
  if (!g.connected()) fail(ErrorKind::Validation, "guest graph is disconnected");
  for (auto [u, v] : h.host_edges())
    if (!g.has_edge(u, v)) fail(ErrorKind::Validation, "host edge is not an edge of the guest");
  TreeDecomposition td = min_fill_decomposition(g);
  auto is_host = [&](int u, int v) { return h.is_host_edge(u, v); };
  int cap = std::max(1, h.diameter());
  for (int l = 1; l <= cap; ++l) {
    Subdivision sub = subdivide_graph(g, is_host, l);
    TreeDecomposition tdl = l == 1 ? td : subdivided_decomposition(td, sub);
    NiceTreeDecomposition nd = make_nice(tdl);
    HostMetric hl = HostMetric::subgraph(sub.graph.n(), h.anchors(), h.host_edges());
    auto m = stretch1_tw(sub.graph, hl, nd, opt);
    if (!m) continue;
    TwResult r;
    r.assignment = restrict_to_original(sub, *m);
    r.stretch = stretch_under(g, h, r.assignment);
    r.width = tdl.width();
    if (r.stretch > l) fail(ErrorKind::Invariant, "restricted map exceeds trial stretch");
    return r;
  }
  fail(ErrorKind::Invariant, "no map found at the host diameter");
}

TwResult optimal_retract_tw(const Instance& inst, const DpOptions& opt) {
  return optimal_retract_tw(inst.graph(), HostMetric::cycle(inst), opt);
}

}  // namespace retract::treewidth
