#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mpsfft/graph.hpp"

namespace mpsfft {

/// Per-vertex priority vector. Components in precedence order:
///   generations — number of generations of descendants (dominant key)
///   pairing     — 0 childless, 1 companion unselected, 2 companion selected
///   fanout      — number of children
///   row_rank    — N/2 - 1 - row, so higher rows win ties
struct Priority {
  std::uint32_t generations = 0;
  std::uint32_t pairing = 0;
  std::uint32_t fanout = 0;
  std::uint32_t row_rank = 0;

  friend constexpr bool operator==(Priority, Priority) = default;
};

/// Serializes a priority vector into one scalar whose numeric order equals
/// the lexicographic order of the vector: a 4-digit base-(N/2) number.
/// Components must be in range (generations < log2 N, pairing/fanout <= 2,
/// row_rank < N/2) and N must be at least 4.
std::uint64_t priority_scalar(const Priority& p, std::uint32_t fft_size);

/// Initial priorities for every vertex, computed from the last stage
/// backwards. Indexed by vertex_index().
std::vector<Priority> initial_priorities(const PrecedenceGraph& g);

inline std::size_t vertex_index(Vertex v, std::uint32_t rows) {
  return std::size_t(v.stage) * rows + std::size_t(v.row);
}

/// Task sets per time slot. Vertexes appear in selection order within a slot.
struct Schedule {
  std::uint32_t processors = 1;
  std::vector<std::vector<Vertex>> slots;

  std::uint32_t makespan() const { return std::uint32_t(slots.size()); }
  std::size_t task_count() const;
};

/// Multi-priority list scheduler. Each slot greedily picks up to M
/// executable vertexes by descending scalar priority, committing picks one
/// at a time; picking a vertex immediately raises the pairing component of
/// its companion if the companion is currently executable. Completed
/// vertexes release their children at the end of the slot.
Schedule mps_schedule(const PrecedenceGraph& g, std::uint32_t processors);

struct FeasibilityResult {
  enum class Issue {
    None,
    Precedence,     // a vertex ran before both parents completed
    Capacity,       // more than M vertexes in one slot
    Duplicate,      // a vertex scheduled twice
    UnknownVertex,  // a vertex not in the graph
    Leftover,       // graph not empty after the last slot
  };

  bool feasible = true;
  Issue issue = Issue::None;
  long slot = -1;  // first violating slot (-1 when not slot-specific)
  std::string detail;

  explicit operator bool() const { return feasible; }
};

/// Replays the schedule against a working copy of the graph, per the
/// slot-by-slot feasibility procedure: every slot's vertexes must be
/// parentless at that point and at most M wide, and the graph must be
/// empty after the last slot.
FeasibilityResult check_feasible(const PrecedenceGraph& g, const Schedule& s);

/// Fraction of processor-slots doing useful work: tasks / (M * T).
/// Rejects empty schedules.
double utilization(const Schedule& s);

}  // namespace mpsfft
