#include "mpsfft/bounds.hpp"

#include <stdexcept>

#include "mpsfft/errors.hpp"
#include "mpsfft/scheduler.hpp"

namespace mpsfft {

TrunkClassification classify(const PrecedenceGraph& g) {
  TrunkClassification c;
  c.beta = g.populated_stages();
  c.stage_totals = g.stage_counts();
  c.trunk_counts.assign(std::size_t(c.beta), 0);
  c.trunk.assign(std::size_t(g.log2_size()) * g.rows(), 0);
  if (c.beta == 0) return c;

  const std::vector<Priority> prio = initial_priorities(g);
  const std::uint32_t rows = g.rows();
  g.for_each([&](Vertex v) {
    const std::size_t idx = vertex_index(v, rows);
    if (prio[idx].generations == std::uint32_t(c.beta - 1 - v.stage)) {
      c.trunk[idx] = 1;
      ++c.trunk_counts[std::size_t(v.stage)];
    }
  });
  return c;
}

BoundReport lower_bound(const TrunkClassification& c,
                        std::uint32_t processors) {
  if (processors == 0) {
    throw std::invalid_argument("lower_bound: processor count must be >= 1");
  }
  BoundReport r;
  if (c.beta == 0) return r;

  const std::uint64_t m_cap = processors;
  std::uint32_t m = 0;
  for (int i = c.beta; i-- > 0;) {
    if (c.trunk_counts[std::size_t(i)] <= m_cap) {
      ++m;
    } else {
      break;
    }
  }
  // Stages with more than M trunk vertexes must form a prefix (trunk counts
  // never increase with the stage index).
  for (std::uint32_t i = 0; i + 1 < c.trunk_counts.size(); ++i) {
    if (c.trunk_counts[i] < c.trunk_counts[i + 1]) {
      throw InvariantViolation("lower_bound: trunk counts increased");
    }
  }

  std::uint64_t prefix_trunk = 0;
  for (std::uint32_t i = 0; i < std::uint32_t(c.beta) - m; ++i) {
    prefix_trunk += c.trunk_counts[i];
  }
  std::uint64_t all_trunk = 0;
  for (const std::uint32_t v : c.trunk_counts) all_trunk += v;
  std::uint64_t all_tasks = 0;
  for (const std::uint32_t v : c.stage_totals) all_tasks += v;

  r.suffix_len = m;
  r.trunk_lower = (prefix_trunk + processors - 1) / processors + m;
  r.unused_capacity = processors * r.trunk_lower - all_trunk;
  const std::uint64_t capacity = processors * r.trunk_lower;
  r.unpacked = all_tasks > capacity ? all_tasks - capacity : 0;
  r.branch_lower = (r.unpacked + processors - 1) / processors;
  r.lower = r.trunk_lower + r.branch_lower;
  r.trivial_lower = (all_tasks + processors - 1) / processors;
  return r;
}

BoundReport lower_bound(const PrecedenceGraph& g, std::uint32_t processors) {
  return lower_bound(classify(g), processors);
}

}  // namespace mpsfft
