#include "mpsfft/executor.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "mpsfft/errors.hpp"

namespace mpsfft {
namespace {

int checked_log2(std::size_t length) {
  if (length == 0 || (length & (length - 1)) != 0) {
    throw std::invalid_argument("trace: input length must be a power of two");
  }
  int n = 0;
  while ((std::size_t{1} << n) < length) ++n;
  return n;
}

// Butterfly of vertex v: reads the two positions it covers at the previous
// stage, writes the same positions at its own stage. Decimation in
// frequency, forward kernel: top = a + b, bottom = (a - b) * W_g^t with
// g = 2^(n-i) and t the offset within the half-block.
void run_butterfly(ExecutionTrace& trace, Vertex v, int n) {
  const auto outs = vertex_outputs(v, n);
  const std::uint32_t g = std::uint32_t{1} << (n - v.stage);
  const std::uint32_t t = outs[0] % (g / 2);
  const Complex a = trace.operand(v.stage, outs[0]);
  const Complex b = trace.operand(v.stage, outs[1]);
  const Complex tw =
      std::polar(1.0, -2.0 * std::numbers::pi * double(t) / double(g));
  trace.store(v.stage, outs[0], a + b);
  trace.store(v.stage, outs[1], (a - b) * tw);
}

}  // namespace

ExecutionTrace::ExecutionTrace(std::span<const Complex> input)
    : n_(checked_log2(input.size())),
      input_(input.begin(), input.end()),
      values_(std::size_t(n_) * input.size()),
      written_(std::size_t(n_) * input.size(), 0) {}

bool ExecutionTrace::has(int stage, std::uint32_t position) const {
  if (stage < 0 || stage >= n_ || position >= fft_size()) return false;
  return written_[std::size_t(stage) * fft_size() + position] != 0;
}

Complex ExecutionTrace::value(int stage, std::uint32_t position) const {
  if (!has(stage, position)) {
    throw std::invalid_argument("trace: value (" + std::to_string(stage) +
                                "," + std::to_string(position) +
                                ") was never produced");
  }
  return values_[std::size_t(stage) * fft_size() + position];
}

Complex ExecutionTrace::operand(int stage, std::uint32_t position) const {
  if (stage == 0) return input_[position];
  return value(stage - 1, position);
}

void ExecutionTrace::store(int stage, std::uint32_t position, Complex v) {
  if (stage < 0 || stage >= n_ || position >= fft_size()) {
    throw std::invalid_argument("trace: store out of range");
  }
  auto& flag = written_[std::size_t(stage) * fft_size() + position];
  if (flag) {
    throw InvariantViolation("trace: cell (" + std::to_string(stage) + "," +
                             std::to_string(position) + ") written twice");
  }
  flag = 1;
  values_[std::size_t(stage) * fft_size() + position] = v;
}

ExecutionTrace reference_full_fft(std::span<const Complex> x) {
  ExecutionTrace trace(x);
  const int n = trace.log2_size();
  const std::uint32_t rows = trace.fft_size() / 2;
  for (int i = 0; i < n; ++i) {
    for (std::uint32_t j = 0; j < rows; ++j) {
      run_butterfly(trace, Vertex{i, int(j)}, n);
    }
  }
  return trace;
}

ExecutionTrace execute_schedule(const PrecedenceGraph& g, const Schedule& s,
                                std::span<const Complex> x) {
  if (x.size() != g.fft_size()) {
    throw std::invalid_argument("execute_schedule: input length mismatch");
  }
  ExecutionTrace trace(x);
  const int n = g.log2_size();
  for (const auto& slot : s.slots) {
    for (const Vertex v : slot) {
      if (!g.contains(v)) {
        throw std::invalid_argument("execute_schedule: vertex not in graph");
      }
      run_butterfly(trace, v, n);
    }
  }
  return trace;
}

std::vector<std::vector<Complex>> extract_streams(const ExecutionTrace& trace,
                                                  const BinAllocation& alloc) {
  if (trace.fft_size() != alloc.bin_count()) {
    throw std::invalid_argument("extract_streams: size mismatch");
  }
  const int n = alloc.log2_bins();
  std::vector<std::vector<Complex>> streams;
  streams.reserve(alloc.stream_count());
  std::uint32_t offset = 0;
  for (const std::uint32_t size : alloc.sizes()) {
    int m = 0;
    while ((std::uint32_t{1} << m) < size) ++m;
    std::vector<Complex> data;
    data.reserve(size);
    if (m == n) {
      data.assign(trace.input().begin(), trace.input().end());
    } else {
      const int stage = n - m - 1;
      for (std::uint32_t k = offset; k < offset + size; ++k) {
        data.push_back(trace.value(stage, k));  // throws if the tap is missing
      }
    }
    streams.push_back(std::move(data));
    offset += size;
  }
  return streams;
}

}  // namespace mpsfft
