#include "mpsfft/baselines.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace mpsfft {

std::uint64_t serial_time(int n) {
  if (n < 1 || n > 30) {
    throw std::invalid_argument("serial_time: n out of range");
  }
  return (std::uint64_t{1} << (n - 1)) * std::uint64_t(n);
}

PrecedenceGraph full_network_graph(int n) {
  std::vector<std::uint32_t> singletons(std::size_t{1} << n, 1);
  return PrecedenceGraph::build(BinAllocation(n, std::move(singletons)));
}

Schedule pipelined_schedule(int n) {
  if (n < 1 || n > 24) {
    throw std::invalid_argument("pipelined_schedule: n out of range");
  }
  const std::uint32_t rows = std::uint32_t{1} << (n - 1);
  // completion[i][j]: slot index after which task (i, j) is done.
  std::vector<std::vector<std::uint64_t>> completion(
      std::size_t(n), std::vector<std::uint64_t>(rows, 0));
  std::uint64_t makespan = 0;
  for (int i = 0; i < n; ++i) {
    std::uint64_t proc_free = 0;
    for (std::uint32_t j = 0; j < rows; ++j) {
      std::uint64_t ready = 0;
      if (i > 0) {
        for (Vertex p : parents(Vertex{i, int(j)}, n)) {
          ready = std::max(ready,
                           completion[std::size_t(i - 1)][std::size_t(p.row)]);
        }
      }
      const std::uint64_t start = std::max(ready, proc_free);
      completion[std::size_t(i)][j] = start + 1;
      proc_free = start + 1;
      makespan = std::max(makespan, start + 1);
    }
  }
  Schedule s;
  s.processors = std::uint32_t(n);
  s.slots.assign(std::size_t(makespan), {});
  for (int i = 0; i < n; ++i) {
    for (std::uint32_t j = 0; j < rows; ++j) {
      const std::uint64_t start = completion[std::size_t(i)][j] - 1;
      s.slots[std::size_t(start)].push_back(Vertex{i, int(j)});
    }
  }
  return s;
}

std::uint64_t pipelined_time(int n) {
  return pipelined_schedule(n).makespan();
}

}  // namespace mpsfft
