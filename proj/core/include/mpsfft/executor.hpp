#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "mpsfft/graph.hpp"
#include "mpsfft/scheduler.hpp"

namespace mpsfft {

using Complex = std::complex<double>;

/// Buffer of all produced stage outputs plus the raw input, modeling a
/// transceiver that writes every butterfly result to memory as soon as it
/// is computed. Each (stage, position) cell is written exactly once.
class ExecutionTrace {
 public:
  explicit ExecutionTrace(std::span<const Complex> input);

  int log2_size() const { return n_; }
  std::uint32_t fft_size() const { return std::uint32_t(input_.size()); }

  std::span<const Complex> input() const { return input_; }

  bool has(int stage, std::uint32_t position) const;
  Complex value(int stage, std::uint32_t position) const;

  /// Input sample for stage 0, otherwise the stored stage-(stage-1) value.
  Complex operand(int stage, std::uint32_t position) const;

  void store(int stage, std::uint32_t position, Complex v);

 private:
  int n_;
  std::vector<Complex> input_;
  std::vector<Complex> values_;        // stage-major, n * N cells
  std::vector<std::uint8_t> written_;
};

/// Runs every butterfly of the full decimation-in-frequency radix-2 network
/// (natural-order input, forward kernel e^{-2 pi i / N}), recording all
/// intermediates. The last stage holds the DFT in bit-reversed order.
ExecutionTrace reference_full_fft(std::span<const Complex> x);

/// Replays the schedule slot by slot, computing each selected vertex's
/// butterfly from its two operands. Produces values exactly for the graph's
/// outputs; an unavailable operand means the schedule was infeasible.
ExecutionTrace execute_schedule(const PrecedenceGraph& g, const Schedule& s,
                                std::span<const Complex> x);

/// Per-stream output vectors: stream r of size 2^m receives its 2^m tap
/// values in ascending position order; a full-band stream receives the raw
/// input.
std::vector<std::vector<Complex>> extract_streams(const ExecutionTrace& trace,
                                                  const BinAllocation& alloc);

}  // namespace mpsfft
