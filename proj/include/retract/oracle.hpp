#pragma once

#include <cstdint>
#include <vector>

#include "retract/core.hpp"
#include "retract/embedding.hpp"

namespace retract::oracle {

struct SearchBudget {
  int max_free = 12;
  std::uint64_t max_states = 100000000;
  double time_cap_seconds = 600;
};

struct OracleResult {
  Retraction f;
  StretchReport report;
  std::uint64_t states = 0;
};

// exact optimum for a cycle host
OracleResult brute_force_optimal(const Instance& inst, const SearchBudget& budget = {});
// exact optimum for an arbitrary connected host subgraph; assignment holds anchor vertex ids
OracleResult brute_force_optimal(const Graph& g, const HostMetric& h, const SearchBudget& budget = {});

// decision version: a map with stretch <= s, or false
bool feasible_at(const Graph& g, const HostMetric& h, int s, const SearchBudget& budget,
                 std::vector<int>* out = nullptr, std::uint64_t* states = nullptr);

// plain odometer over all assignments (no pruning); at most 6 free vertices
int exhaustive_optimal(const Instance& inst);

// shortest simple cycle whose closed region contains face F; throws Resource past max_vertices
int enumerate_min_surrounding_cycle(const planar::PlaneEmbedding& emb, int face, int max_vertices = 14);

}  // namespace retract::oracle
