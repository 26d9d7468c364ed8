#pragma once

#include <cstdint>
#include <vector>

#include "mpsfft/graph.hpp"

namespace mpsfft {

/// Trunk/branch decomposition of a graph. A vertex at stage i is a trunk
/// vertex when its descendant-generation count is the maximum possible,
/// beta - 1 - i (its longest chain reaches the last populated stage);
/// otherwise it is a branch vertex. Independent of the processor count.
struct TrunkClassification {
  int beta = 0;                            // populated stage count
  std::vector<std::uint32_t> stage_totals; // Q_i, one per populated stage
  std::vector<std::uint32_t> trunk_counts; // R_i, one per populated stage
  std::vector<std::uint8_t> trunk;         // flat flags, vertex_index order

  bool is_trunk(Vertex v, std::uint32_t rows) const {
    return trunk[std::size_t(v.stage) * rows + std::size_t(v.row)] != 0;
  }
};

TrunkClassification classify(const PrecedenceGraph& g);

/// Makespan lower bounds for one processor count.
///
/// trunk_lower packs the trunk prefix stages (those with more than M trunk
/// vertexes) at full width and then steps one slot per remaining stage;
/// branch vertexes that do not fit in the unused capacity of those slots
/// add ceil(l / M) more. trivial_lower is the plain work bound
/// ceil(sum Q_i / M).
struct BoundReport {
  std::uint64_t trunk_lower = 0;     // time to finish all trunk vertexes
  std::uint64_t branch_lower = 0;    // extra slots for unpacked branches
  std::uint64_t lower = 0;           // trunk_lower + branch_lower
  std::uint64_t trivial_lower = 0;
  std::uint64_t unused_capacity = 0; // E: idle processor-slots within trunk_lower
  std::uint64_t unpacked = 0;        // l: branch vertexes beyond that capacity
  std::uint32_t suffix_len = 0;      // m: stages with at most M trunk vertexes
};

BoundReport lower_bound(const PrecedenceGraph& g, std::uint32_t processors);
BoundReport lower_bound(const TrunkClassification& c, std::uint32_t processors);

}  // namespace mpsfft
