#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "mpsfft/instances.hpp"
#include "mpsfft/stats.hpp"

namespace mpsfft {

enum class MPolicy { All, PowersOfTwo, Explicit };
enum class InstanceMode { Complete, Sampled };

struct ExperimentConfig {
  int n = 3;
  MPolicy policy = MPolicy::All;
  std::vector<std::uint32_t> explicit_processors;
  InstanceMode mode = InstanceMode::Complete;
  std::size_t xi0 = 10000;     // sampled-mode draw count
  std::uint64_t seed = 1;
  double alpha = 0.95;
  unsigned workers = 0;        // 0: hardware concurrency
  bool force_complete = false; // allow complete mode for n >= 7
};

/// The processor counts a policy expands to for a given n.
std::vector<std::uint32_t> processor_set(const ExperimentConfig& cfg);

/// Materializes the configured instance universe (complete sets for
/// n <= 6, seeded sampling otherwise). Validates the mode/n combination.
InstanceSet load_instances(const ExperimentConfig& cfg);

struct RunRow {
  std::uint64_t instance_index = 0;
  std::uint32_t processors = 0;
  std::uint64_t tasks = 0;
  std::uint64_t makespan = 0;
  std::uint64_t lower = 0;
  std::uint64_t trivial_lower = 0;

  bool reached() const { return makespan == lower; }
};

using RowSink = std::function<void(const RunRow&, const BinAllocation&)>;

/// Sweeps every instance x processor-count pair: builds the graph, runs the
/// scheduler, computes both lower bounds, asserts T >= T_lower and
/// T >= trivial_lower (InvariantViolation otherwise), feeds rows to `sink`
/// in deterministic (instance, M) order, and aggregates the optimality
/// statistics. Instances are processed in fixed-size chunks in parallel;
/// results are merged in chunk order, so output is byte-stable across
/// worker counts.
StatsReport run_experiment(const ExperimentConfig& cfg,
                           const InstanceSet& instances,
                           const RowSink& sink = {});

struct BenchmarkRow {
  int n = 0;
  std::uint64_t serial = 0;
  std::uint64_t pipelined = 0;
  double mps_single = 0.0;  // mean makespan at M = 1
  double mps_logn = 0.0;    // mean makespan at M = log2 N
};

/// Mean scheduler makespans against the conventional baselines. Means are
/// taken over instances with non-empty graphs (a full-band-only allocation
/// computes nothing and has no meaningful makespan).
BenchmarkRow run_benchmark_row(int n, const InstanceSet& instances,
                               unsigned workers);

// Per-run CSV rows. Column order is part of the interface:
// n,instance_index,alloc,M,tasks,T,T_lower,trivial_lower,reached,gap,utilization
void write_csv_header(std::ostream& out, bool timestamp);
void write_csv_row(std::ostream& out, int n, const RunRow& row,
                   const BinAllocation& alloc);

// Summary CSV: n,M_policy,eta,eta_lower,gamma,gamma_low,gamma_high,xi0,xi1,alpha
void write_summary_header(std::ostream& out);
void write_summary_row(std::ostream& out, const StatsReport& report,
                       MPolicy policy);

}  // namespace mpsfft
