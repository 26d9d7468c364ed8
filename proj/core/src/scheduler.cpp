#include "mpsfft/scheduler.hpp"

#include <algorithm>
#include <bit>
#include <queue>
#include <stdexcept>
#include <string>

#include "mpsfft/errors.hpp"

namespace mpsfft {

std::uint64_t priority_scalar(const Priority& p, std::uint32_t fft_size) {
  if (fft_size < 4 || (fft_size & (fft_size - 1)) != 0) {
    throw std::invalid_argument(
        "priority_scalar: fft size must be a power of two >= 4");
  }
  const std::uint32_t log2n = std::uint32_t(std::countr_zero(fft_size));
  const std::uint64_t q = fft_size / 2;
  if (p.generations >= log2n) {
    throw std::invalid_argument("priority_scalar: generations out of range");
  }
  if (p.pairing > 2) {
    throw std::invalid_argument("priority_scalar: pairing out of range");
  }
  if (p.fanout > 2) {
    throw std::invalid_argument("priority_scalar: fanout out of range");
  }
  if (p.row_rank >= q) {
    throw std::invalid_argument("priority_scalar: row rank out of range");
  }
  return ((std::uint64_t(p.generations) * q + p.pairing) * q + p.fanout) * q +
         p.row_rank;
}

std::vector<Priority> initial_priorities(const PrecedenceGraph& g) {
  const std::uint32_t rows = g.rows();
  const int n = g.log2_size();
  std::vector<Priority> prio(std::size_t(n) * rows);
  for (int i = n; i-- > 0;) {
    for (std::uint32_t j = 0; j < rows; ++j) {
      const Vertex v{i, int(j)};
      if (!g.contains(v)) continue;
      Priority& p = prio[vertex_index(v, rows)];
      const ChildList kids = g.children_of(v);
      if (kids.empty()) {
        p.generations = 0;
        p.pairing = 0;
      } else {
        std::uint32_t best = 0;
        for (Vertex c : kids) {
          best = std::max(best, prio[vertex_index(c, rows)].generations);
        }
        p.generations = best + 1;
        p.pairing = 1;
      }
      p.fanout = std::uint32_t(kids.size());
      p.row_rank = rows - 1 - j;
    }
  }
  return prio;
}

std::size_t Schedule::task_count() const {
  std::size_t total = 0;
  for (const auto& slot : slots) total += slot.size();
  return total;
}

namespace {

// Heap entries are (scalar, flat index); stale entries are discarded on pop
// by comparing against the current scalar. Ties on the scalar cannot occur
// between two live executable vertexes (row ranks differ), so the index
// tie-break only orders stale duplicates.
struct HeapEntry {
  std::uint64_t key;
  std::uint32_t index;
};
struct HeapLess {
  bool operator()(const HeapEntry& a, const HeapEntry& b) const {
    if (a.key != b.key) return a.key < b.key;
    return a.index > b.index;
  }
};

}  // namespace

Schedule mps_schedule(const PrecedenceGraph& g, std::uint32_t processors) {
  if (processors == 0) {
    throw std::invalid_argument("mps_schedule: processor count must be >= 1");
  }
  Schedule out;
  out.processors = processors;
  if (g.empty()) return out;

  const std::uint32_t rows = g.rows();
  const int n = g.log2_size();
  const std::size_t cells = std::size_t(n) * rows;
  // Scalar weights: 4-digit base-q number, q = N/2. For the vectors that
  // actually occur in a graph this preserves lexicographic order for every
  // N (childless vertexes always carry pairing = fanout = 0).
  const std::uint64_t q = rows;

  std::vector<Priority> prio = initial_priorities(g);
  std::vector<std::uint64_t> scalar(cells, 0);
  std::vector<std::int32_t> companion(cells, -1);
  std::vector<std::uint8_t> parents_left(cells, 0);
  std::vector<std::uint8_t> in_omega(cells, 0);
  std::vector<std::array<std::uint32_t, 2>> children(cells);
  std::vector<std::uint8_t> child_count(cells, 0);

  auto to_scalar = [q](const Priority& p) {
    return ((std::uint64_t(p.generations) * q + p.pairing) * q + p.fanout) *
               q +
           p.row_rank;
  };

  std::priority_queue<HeapEntry, std::vector<HeapEntry>, HeapLess> heap;
  g.for_each([&](Vertex v) {
    const std::size_t idx = vertex_index(v, rows);
    scalar[idx] = to_scalar(prio[idx]);
    const ChildList kids = g.children_of(v);
    child_count[idx] = std::uint8_t(kids.size());
    for (int k = 0; k < kids.size(); ++k) {
      children[idx][std::size_t(k)] =
          std::uint32_t(vertex_index(kids[k], rows));
    }
    if (auto comp = g.companion_of(v)) {
      companion[idx] = std::int32_t(vertex_index(*comp, rows));
    }
    parents_left[idx] = (v.stage == 0) ? 0 : 2;
    if (v.stage == 0) {
      in_omega[idx] = 1;
      heap.push({scalar[idx], std::uint32_t(idx)});
    }
  });

  std::size_t remaining = g.size();
  std::vector<std::uint32_t> slot_indices;
  while (remaining > 0) {
    slot_indices.clear();
    std::vector<Vertex> slot;
    while (slot_indices.size() < processors) {
      std::uint32_t pick = 0;
      bool found = false;
      while (!heap.empty()) {
        const HeapEntry top = heap.top();
        if (!in_omega[top.index] || scalar[top.index] != top.key) {
          heap.pop();  // stale
          continue;
        }
        pick = top.index;
        heap.pop();
        found = true;
        break;
      }
      if (!found) break;
      in_omega[pick] = 0;
      slot_indices.push_back(pick);
      slot.push_back(Vertex{int(pick / rows), int(pick % rows)});
      // Selecting a vertex promotes its still-executable companion to
      // singleton status; this affects picks later in the same slot. A
      // companion that only becomes executable later keeps its paired
      // priority.
      const std::int32_t comp = companion[pick];
      if (comp >= 0 && in_omega[std::size_t(comp)] &&
          prio[std::size_t(comp)].pairing != 2) {
        prio[std::size_t(comp)].pairing = 2;
        scalar[std::size_t(comp)] = to_scalar(prio[std::size_t(comp)]);
        heap.push({scalar[std::size_t(comp)], std::uint32_t(comp)});
      }
    }
    if (slot_indices.empty()) {
      throw InvariantViolation(
          "mps_schedule: no executable vertex but graph not empty");
    }
    for (const std::uint32_t idx : slot_indices) {
      for (std::uint8_t k = 0; k < child_count[idx]; ++k) {
        const std::uint32_t child = children[idx][k];
        if (--parents_left[child] == 0) {
          in_omega[child] = 1;
          heap.push({scalar[child], child});
        }
      }
    }
    remaining -= slot_indices.size();
    out.slots.push_back(std::move(slot));
  }
  return out;
}

FeasibilityResult check_feasible(const PrecedenceGraph& g, const Schedule& s) {
  const std::uint32_t rows = g.rows();
  const int n = g.log2_size();
  const std::size_t cells = std::size_t(n) * rows;
  std::vector<std::uint8_t> parents_left(cells, 0);
  std::vector<std::uint8_t> done(cells, 0);
  g.for_each([&](Vertex v) {
    parents_left[vertex_index(v, rows)] = (v.stage == 0) ? 0 : 2;
  });

  auto fail = [](FeasibilityResult::Issue issue, long slot,
                 std::string detail) {
    FeasibilityResult r;
    r.feasible = false;
    r.issue = issue;
    r.slot = slot;
    r.detail = std::move(detail);
    return r;
  };
  auto name = [](Vertex v) {
    return "(" + std::to_string(v.stage) + "," + std::to_string(v.row) + ")";
  };

  std::size_t executed = 0;
  for (std::size_t t = 0; t < s.slots.size(); ++t) {
    const auto& slot = s.slots[t];
    if (slot.size() > s.processors) {
      return fail(FeasibilityResult::Issue::Capacity, long(t),
                  std::to_string(slot.size()) + " tasks in a slot with M=" +
                      std::to_string(s.processors));
    }
    // Validate the whole slot against the state before it, then commit.
    for (Vertex v : slot) {
      if (!g.contains(v)) {
        return fail(FeasibilityResult::Issue::UnknownVertex, long(t),
                    "vertex " + name(v) + " is not in the graph");
      }
      const std::size_t idx = vertex_index(v, rows);
      if (done[idx]) {
        return fail(FeasibilityResult::Issue::Duplicate, long(t),
                    "vertex " + name(v) + " scheduled twice");
      }
      if (parents_left[idx] != 0) {
        return fail(FeasibilityResult::Issue::Precedence, long(t),
                    "vertex " + name(v) + " has an unexecuted parent");
      }
      done[idx] = 1;
    }
    for (Vertex v : slot) {
      for (Vertex c : g.children_of(v)) {
        --parents_left[vertex_index(c, rows)];
      }
    }
    executed += slot.size();
  }
  if (executed != g.size()) {
    return fail(FeasibilityResult::Issue::Leftover, long(s.slots.size()),
                std::to_string(g.size() - executed) +
                    " vertexes never scheduled");
  }
  return FeasibilityResult{};
}

double utilization(const Schedule& s) {
  if (s.slots.empty()) {
    throw std::invalid_argument("utilization: empty schedule");
  }
  return double(s.task_count()) /
         (double(s.processors) * double(s.slots.size()));
}

}  // namespace mpsfft
