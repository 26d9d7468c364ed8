#pragma once

#include <cstdint>

#include "mpsfft/scheduler.hpp"

namespace mpsfft {

/// Conventional FFT execution models over the full N-point network.
/// Conventional implementations cannot skip tasks, so these always run
/// all (N/2) * n butterflies.

/// One processor, every task once: T = 2^(n-1) * n.
std::uint64_t serial_time(int n);

/// log2 N processors, processor i owning stage i. Each processor runs its
/// stage's tasks in ascending row order, each task starting at the earliest
/// slot where both parents are complete and the processor is free.
std::uint64_t pipelined_time(int n);

/// The slot-by-slot schedule realizing pipelined_time(n), with
/// processors = n. Useful for feasibility checking against the
/// full-network graph.
Schedule pipelined_schedule(int n);

/// The full N-point network (every output needed at the last stage).
PrecedenceGraph full_network_graph(int n);

}  // namespace mpsfft
