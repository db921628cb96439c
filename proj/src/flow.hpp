#pragma once

#include <algorithm>
#include <limits>
#include <vector>

namespace retract::detail {

// Dinic on small integer capacities; arcs come in pairs (a, a^1)
class Dinic {
 public:
  explicit Dinic(int nodes) : head_(static_cast<std::size_t>(nodes), -1), level_(static_cast<std::size_t>(nodes)), it_(static_cast<std::size_t>(nodes)) {}

  int add(int u, int v, int cap) {
    int id = static_cast<int>(to_.size());
    push(u, v, cap);
    push(v, u, 0);
    return id;
  }

  int max_flow(int s, int t, int limit = std::numeric_limits<int>::max()) {
    int flow = 0;
    while (flow < limit && bfs(s, t)) {
      for (std::size_t i = 0; i < it_.size(); ++i) it_[i] = head_[i];
      while (flow < limit) {
        int f = dfs(s, t, limit - flow);
        if (f == 0) break;
        flow += f;
      }
    }
    return flow;
  }

  int to(int a) const { return to_[static_cast<std::size_t>(a)]; }
  int cap(int a) const { return cap_[static_cast<std::size_t>(a)]; }
  int orig(int a) const { return orig_[static_cast<std::size_t>(a)]; }
  int flow_on(int a) const { return orig_[static_cast<std::size_t>(a)] - cap_[static_cast<std::size_t>(a)]; }
  void consume(int a) { ++cap_[static_cast<std::size_t>(a)]; }
  int first(int u) const { return head_[static_cast<std::size_t>(u)]; }
  int next_arc(int a) const { return nxt_[static_cast<std::size_t>(a)]; }

 private:
  void push(int u, int v, int cap) {
    to_.push_back(v);
    cap_.push_back(cap);
    orig_.push_back(cap);
    nxt_.push_back(head_[static_cast<std::size_t>(u)]);
    head_[static_cast<std::size_t>(u)] = static_cast<int>(to_.size()) - 1;
  }

  bool bfs(int s, int t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::vector<int> q{s};
    level_[static_cast<std::size_t>(s)] = 0;
    for (std::size_t h = 0; h < q.size(); ++h) {
      int u = q[h];
      for (int a = head_[static_cast<std::size_t>(u)]; a >= 0; a = nxt_[static_cast<std::size_t>(a)]) {
        int v = to_[static_cast<std::size_t>(a)];
        if (cap_[static_cast<std::size_t>(a)] > 0 && level_[static_cast<std::size_t>(v)] < 0) {
          level_[static_cast<std::size_t>(v)] = level_[static_cast<std::size_t>(u)] + 1;
          q.push_back(v);
        }
      }
    }
    return level_[static_cast<std::size_t>(t)] >= 0;
  }

  // iterative augmenting search along the level graph
  int dfs(int s, int t, int limit) {
    std::vector<int> stack;  // arcs
    int u = s;
    for (;;) {
      if (u == t) {
        int f = limit;
        for (int a : stack) f = std::min(f, cap_[static_cast<std::size_t>(a)]);
        for (int a : stack) {
          cap_[static_cast<std::size_t>(a)] -= f;
          cap_[static_cast<std::size_t>(a ^ 1)] += f;
        }
        return f;
      }
      int& a = it_[static_cast<std::size_t>(u)];
      while (a >= 0) {
        int v = to_[static_cast<std::size_t>(a)];
        if (cap_[static_cast<std::size_t>(a)] > 0 && level_[static_cast<std::size_t>(v)] == level_[static_cast<std::size_t>(u)] + 1) break;
        a = nxt_[static_cast<std::size_t>(a)];
      }
      if (a >= 0) {
        stack.push_back(a);
        u = to_[static_cast<std::size_t>(a)];
        continue;
      }
      // dead end
      level_[static_cast<std::size_t>(u)] = -1;
      if (stack.empty()) return 0;
      int back = stack.back();
      stack.pop_back();
      u = to_[static_cast<std::size_t>(back ^ 1)];
      it_[static_cast<std::size_t>(u)] = nxt_[static_cast<std::size_t>(it_[static_cast<std::size_t>(u)])];
    }
  }

  std::vector<int> head_, nxt_, to_, cap_, orig_;
  std::vector<int> level_, it_;
};

}  // namespace retract::detail
