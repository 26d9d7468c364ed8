#pragma once

#include <string>

#include "mpsfft/allocation.hpp"
#include "mpsfft/bounds.hpp"
#include "mpsfft/graph.hpp"
#include "mpsfft/scheduler.hpp"
#include "mpsfft/stats.hpp"

namespace mpsfft {

// JSON wire formats. Allocations: {"n": 3, "sizes": [4,2,1,1]}.
// Schedules: {"M": 3, "T": 9, "slots": [[[0,6],[0,7],[1,4]], ...]} with
// vertexes as [stage, row] pairs. Graphs: per-stage sorted row lists plus
// the tap list as [stage, output, stream] triples.

std::string to_json(const BinAllocation& alloc);
BinAllocation allocation_from_json(const std::string& text);

std::string to_json(const PrecedenceGraph& g);

std::string to_json(const Schedule& s);
Schedule schedule_from_json(const std::string& text);

std::string to_json(const BoundReport& report, const TrunkClassification& c);

std::string to_json(const StatsReport& report);

}  // namespace mpsfft
