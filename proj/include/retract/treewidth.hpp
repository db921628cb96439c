#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "retract/core.hpp"

namespace retract::treewidth {

// plain tree decomposition: bags plus tree edges
struct TreeDecomposition {
  std::vector<std::vector<int>> bags;  // sorted
  std::vector<std::pair<int, int>> tree;
  int width() const;
};

enum class NodeType { Leaf, Introduce, Forget, Join };

struct NiceNode {
  NodeType type = NodeType::Leaf;
  std::vector<int> bag;  // sorted
  int vertex = -1;       // introduced / forgotten vertex
  std::vector<int> children;
};

struct NiceTreeDecomposition {
  std::vector<NiceNode> nodes;
  int root = -1;
  int width() const;
};

TreeDecomposition min_fill_decomposition(const Graph& g);
NiceTreeDecomposition make_nice(const TreeDecomposition& td);
NiceTreeDecomposition tree_decompose(const Graph& g);

// edge coverage + running intersection
bool valid_decomposition(const Graph& g, const TreeDecomposition& td);
bool valid_nice(const Graph& g, const NiceTreeDecomposition& nd);

// decomposition of the l-subdivision built from td by hanging path bags off a bag holding each edge
TreeDecomposition subdivided_decomposition(const TreeDecomposition& td, const Subdivision& sub);

struct DpOptions {
  std::uint64_t max_entries = std::uint64_t{1} << 28;
};

// stretch-1 map (anchor vertex ids) or none; throws Resource past the table cap
std::optional<std::vector<int>> stretch1_tw(const Graph& g, const HostMetric& h, const NiceTreeDecomposition& nd,
                                            const DpOptions& opt = {});

struct TwResult {
  std::vector<int> assignment;
  int stretch = 0;
  int width = 0;
};
TwResult optimal_retract_tw(const Graph& g, const HostMetric& h, const DpOptions& opt = {});
TwResult optimal_retract_tw(const Instance& inst, const DpOptions& opt = {});

}  // namespace retract::treewidth
