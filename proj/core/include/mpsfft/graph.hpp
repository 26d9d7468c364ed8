#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "mpsfft/allocation.hpp"

namespace mpsfft {

/// Butterfly task at (stage, row): stage in [0, n), row in [0, N/2).
struct Vertex {
  int stage = 0;
  int row = 0;

  friend constexpr bool operator==(Vertex, Vertex) = default;
  friend constexpr auto operator<=>(Vertex, Vertex) = default;
};

/// Intermediate FFT output at which a stream's data is extracted.
struct TapPoint {
  int stage = 0;
  std::uint32_t output = 0;  // position k within the stage, 0..N-1
  std::uint32_t stream = 0;

  friend constexpr bool operator==(TapPoint, TapPoint) = default;
  friend constexpr auto operator<=>(TapPoint, TapPoint) = default;
};

/// Up to two children of a vertex, in ascending row order.
class ChildList {
 public:
  void push_back(Vertex v) { data_[size_++] = v; }
  int size() const { return size_; }
  bool empty() const { return size_ == 0; }
  const Vertex* begin() const { return data_.data(); }
  const Vertex* end() const { return data_.data() + size_; }
  Vertex operator[](int i) const { return data_[std::size_t(i)]; }

 private:
  std::array<Vertex, 2> data_{};
  int size_ = 0;
};

/// The two parents of v at stage v.stage - 1. Requires v.stage >= 1.
std::array<Vertex, 2> parents(Vertex v, int n);

/// The two candidate children of v at stage v.stage + 1; a graph may contain
/// any subset of them. Requires v.stage <= n - 2.
std::array<Vertex, 2> potential_children(Vertex v, int n);

/// The vertex whose two outputs include position `output` at `stage`.
Vertex producing_vertex(int stage, std::uint32_t output, int n);

/// The two output positions written by v, in ascending order.
std::array<std::uint32_t, 2> vertex_outputs(Vertex v, int n);

/// Tap points for an allocation: a stream of size 2^m occupying bins
/// [b, b + 2^m) taps the stage-(n-m-1) outputs at its own bin positions.
/// A full-band stream taps nothing (its data is the raw input).
std::vector<TapPoint> desired_taps(const BinAllocation& alloc);

/// Dataflow DAG of the butterfly tasks needed for a set of tap points:
/// the backward closure of the taps' producing vertexes. Adjacency is
/// derived from the index arithmetic above; only presence is stored.
class PrecedenceGraph {
 public:
  static PrecedenceGraph build(const BinAllocation& alloc);

  int log2_size() const { return n_; }
  std::uint32_t fft_size() const { return std::uint32_t{1} << n_; }
  std::uint32_t rows() const { return fft_size() / 2; }

  std::size_t size() const { return count_; }  // |V|
  bool empty() const { return count_ == 0; }
  bool contains(Vertex v) const;

  /// Number of populated stages (1 + highest stage present); 0 when empty.
  int populated_stages() const;

  /// Vertex count per stage, for stages 0 .. populated_stages() - 1.
  std::vector<std::uint32_t> stage_counts() const;

  const std::vector<TapPoint>& taps() const { return taps_; }

  ChildList children_of(Vertex v) const;
  int child_count(Vertex v) const { return children_of(v).size(); }

  /// The other parent sharing v's child(ren); absent for childless v.
  std::optional<Vertex> companion_of(Vertex v) const;

  /// Visits vertexes stage-major, ascending row.
  template <typename F>
  void for_each(F&& f) const {
    for (int i = 0; i < n_; ++i) {
      const auto& stage = present_[std::size_t(i)];
      for (std::uint32_t j = 0; j < rows(); ++j) {
        if (stage[j]) f(Vertex{i, int(j)});
      }
    }
  }

 private:
  int n_ = 0;
  std::size_t count_ = 0;
  std::vector<std::vector<std::uint8_t>> present_;  // [stage][row]
  std::vector<TapPoint> taps_;
};

inline PrecedenceGraph build_graph(const BinAllocation& alloc) {
  return PrecedenceGraph::build(alloc);
}

}  // namespace mpsfft
