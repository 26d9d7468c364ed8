#include "mpsfft/graph.hpp"

#include <bit>
#include <stdexcept>
#include <string>

#include "mpsfft/errors.hpp"

namespace mpsfft {

std::array<Vertex, 2> parents(Vertex v, int n) {
  if (v.stage < 1 || v.stage >= n) {
    throw std::invalid_argument("parents: stage " + std::to_string(v.stage) +
                                " has no parents (n=" + std::to_string(n) +
                                ")");
  }
  const int span = 1 << (n - v.stage - 1);  // 2^(n-i-1)
  const int block = span * 2;               // 2^(n-i)
  if (v.row % block < span) {
    return {Vertex{v.stage - 1, v.row}, Vertex{v.stage - 1, v.row + span}};
  }
  return {Vertex{v.stage - 1, v.row - span}, Vertex{v.stage - 1, v.row}};
}

std::array<Vertex, 2> potential_children(Vertex v, int n) {
  if (v.stage < 0 || v.stage > n - 2) {
    throw std::invalid_argument("potential_children: stage " +
                                std::to_string(v.stage) +
                                " is the last stage (n=" + std::to_string(n) +
                                ")");
  }
  const int span = 1 << (n - v.stage - 2);  // 2^(n-i-2)
  const int block = span * 2;               // 2^(n-i-1)
  if (v.row % block < span) {
    return {Vertex{v.stage + 1, v.row}, Vertex{v.stage + 1, v.row + span}};
  }
  return {Vertex{v.stage + 1, v.row - span}, Vertex{v.stage + 1, v.row}};
}

Vertex producing_vertex(int stage, std::uint32_t output, int n) {
  if (stage < 0 || stage >= n) {
    throw std::invalid_argument("producing_vertex: stage out of range");
  }
  if (output >= (std::uint32_t{1} << n)) {
    throw std::invalid_argument("producing_vertex: output " +
                                std::to_string(output) + " out of range");
  }
  const std::uint32_t g = std::uint32_t{1} << (n - stage);
  const std::uint32_t half = g / 2;
  return Vertex{stage, int((output / g) * half + (output % half))};
}

std::array<std::uint32_t, 2> vertex_outputs(Vertex v, int n) {
  if (v.stage < 0 || v.stage >= n) {
    throw std::invalid_argument("vertex_outputs: stage out of range");
  }
  const std::uint32_t g = std::uint32_t{1} << (n - v.stage);
  const std::uint32_t half = g / 2;
  const auto row = std::uint32_t(v.row);
  const std::uint32_t first = (row / half) * g + (row % half);
  return {first, first + half};
}

std::vector<TapPoint> desired_taps(const BinAllocation& alloc) {
  std::vector<TapPoint> taps;
  const int n = alloc.log2_bins();
  std::uint32_t offset = 0;
  for (std::size_t r = 0; r < alloc.stream_count(); ++r) {
    const std::uint32_t size = alloc.sizes()[r];
    const int m = std::countr_zero(size);
    if (m < n) {
      const int stage = n - m - 1;
      for (std::uint32_t k = offset; k < offset + size; ++k) {
        taps.push_back(TapPoint{stage, k, std::uint32_t(r)});
      }
    }
    offset += size;
  }
  return taps;
}

PrecedenceGraph PrecedenceGraph::build(const BinAllocation& alloc) {
  PrecedenceGraph g;
  g.n_ = alloc.log2_bins();
  g.present_.assign(std::size_t(g.n_),
                    std::vector<std::uint8_t>(g.rows(), 0));
  g.taps_ = desired_taps(alloc);

  std::vector<Vertex> pending;
  auto insert = [&g, &pending](Vertex v) {
    auto& cell = g.present_[std::size_t(v.stage)][std::size_t(v.row)];
    if (!cell) {
      cell = 1;
      ++g.count_;
      pending.push_back(v);
    }
  };
  for (const TapPoint& t : g.taps_) {
    insert(producing_vertex(t.stage, t.output, g.n_));
  }
  while (!pending.empty()) {
    const Vertex v = pending.back();
    pending.pop_back();
    if (v.stage == 0) continue;
    for (Vertex p : parents(v, g.n_)) insert(p);
  }
  return g;
}

bool PrecedenceGraph::contains(Vertex v) const {
  if (v.stage < 0 || v.stage >= n_) return false;
  if (v.row < 0 || std::uint32_t(v.row) >= rows()) return false;
  return present_[std::size_t(v.stage)][std::size_t(v.row)] != 0;
}

int PrecedenceGraph::populated_stages() const {
  for (int i = n_; i-- > 0;) {
    for (std::uint32_t j = 0; j < rows(); ++j) {
      if (present_[std::size_t(i)][j]) return i + 1;
    }
  }
  return 0;
}

std::vector<std::uint32_t> PrecedenceGraph::stage_counts() const {
  std::vector<std::uint32_t> counts;
  counts.reserve(std::size_t(n_));
  for (int i = 0; i < n_; ++i) {
    std::uint32_t c = 0;
    for (std::uint32_t j = 0; j < rows(); ++j) c += present_[std::size_t(i)][j];
    counts.push_back(c);
  }
  while (!counts.empty() && counts.back() == 0) counts.pop_back();
  return counts;
}

ChildList PrecedenceGraph::children_of(Vertex v) const {
  ChildList out;
  if (v.stage >= n_ - 1) return out;
  for (Vertex c : potential_children(v, n_)) {
    if (contains(c)) out.push_back(c);
  }
  return out;
}

std::optional<Vertex> PrecedenceGraph::companion_of(Vertex v) const {
  const ChildList kids = children_of(v);
  if (kids.empty()) return std::nullopt;
  const auto pair = parents(kids[0], n_);
  const Vertex other = (pair[0] == v) ? pair[1] : pair[0];
  if (!contains(other)) {
    throw InvariantViolation("graph: a shared child's other parent is absent");
  }
  return other;
}

}  // namespace mpsfft
