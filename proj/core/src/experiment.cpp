#include "mpsfft/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <future>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "mpsfft/baselines.hpp"
#include "mpsfft/bounds.hpp"
#include "mpsfft/errors.hpp"
#include "mpsfft/graph.hpp"
#include "mpsfft/scheduler.hpp"

namespace mpsfft {
namespace {

constexpr std::size_t kChunk = 2048;  // fixed so output is worker-invariant

struct PerMAccum {
  std::uint64_t runs = 0;
  std::uint64_t reached = 0;
  double gap_sum = 0.0;
  double gap_sq_sum = 0.0;
  std::uint64_t gap_count = 0;

  void merge(const PerMAccum& o) {
    runs += o.runs;
    reached += o.reached;
    gap_sum += o.gap_sum;
    gap_sq_sum += o.gap_sq_sum;
    gap_count += o.gap_count;
  }
};

struct ChunkResult {
  std::vector<RunRow> rows;
  std::vector<PerMAccum> per_m;
};

ChunkResult process_chunk(const InstanceSet& instances, std::size_t begin,
                          std::size_t end,
                          const std::vector<std::uint32_t>& processors) {
  ChunkResult result;
  result.rows.reserve((end - begin) * processors.size());
  result.per_m.assign(processors.size(), {});
  for (std::size_t idx = begin; idx < end; ++idx) {
    const BinAllocation alloc = instances.at(idx);
    const PrecedenceGraph graph = PrecedenceGraph::build(alloc);
    const TrunkClassification cls = classify(graph);
    for (std::size_t mi = 0; mi < processors.size(); ++mi) {
      const std::uint32_t m = processors[mi];
      const BoundReport bound = lower_bound(cls, m);
      const Schedule schedule = mps_schedule(graph, m);
      RunRow row;
      row.instance_index = idx;
      row.processors = m;
      row.tasks = graph.size();
      row.makespan = schedule.makespan();
      row.lower = bound.lower;
      row.trivial_lower = bound.trivial_lower;
      if (row.makespan < row.lower || row.makespan < row.trivial_lower) {
        throw InvariantViolation(
            "experiment: schedule beat a lower bound (n=" +
            std::to_string(graph.log2_size()) +
            ", instance=" + std::to_string(idx) + ", M=" + std::to_string(m) +
            ", T=" + std::to_string(row.makespan) +
            ", T_lower=" + std::to_string(row.lower) +
            ", trivial=" + std::to_string(row.trivial_lower) + ")");
      }
      PerMAccum& acc = result.per_m[mi];
      ++acc.runs;
      if (row.reached()) {
        ++acc.reached;
      } else {
        const double gap = double(row.makespan - row.lower) / double(row.lower);
        acc.gap_sum += gap;
        acc.gap_sq_sum += gap * gap;
        ++acc.gap_count;
      }
      result.rows.push_back(row);
    }
  }
  return result;
}

}  // namespace

std::vector<std::uint32_t> processor_set(const ExperimentConfig& cfg) {
  std::vector<std::uint32_t> out;
  const std::uint32_t max_m = std::uint32_t{1} << (cfg.n - 1);
  switch (cfg.policy) {
    case MPolicy::All:
      for (std::uint32_t m = 1; m <= max_m; ++m) out.push_back(m);
      break;
    case MPolicy::PowersOfTwo:
      for (std::uint32_t m = 1; m <= max_m; m <<= 1) out.push_back(m);
      break;
    case MPolicy::Explicit:
      out = cfg.explicit_processors;
      if (out.empty()) {
        throw std::invalid_argument("experiment: empty processor list");
      }
      for (const std::uint32_t m : out) {
        if (m == 0) {
          throw std::invalid_argument("experiment: processor count 0");
        }
      }
      break;
  }
  return out;
}

InstanceSet load_instances(const ExperimentConfig& cfg) {
  if (cfg.mode == InstanceMode::Complete) {
    if (cfg.n > 6 && !cfg.force_complete) {
      throw std::invalid_argument(
          "experiment: complete mode for n >= 7 needs --force-complete");
    }
    return enumerate_instances(cfg.n, cfg.force_complete);
  }
  return sample_instances(cfg.n, cfg.xi0, cfg.seed);
}

StatsReport run_experiment(const ExperimentConfig& cfg,
                           const InstanceSet& instances, const RowSink& sink) {
  const std::vector<std::uint32_t> processors = processor_set(cfg);
  const std::size_t count = instances.size();
  const unsigned workers =
      cfg.workers ? cfg.workers
                  : std::max(1u, std::thread::hardware_concurrency());

  std::vector<PerMAccum> totals(processors.size());
  const std::size_t chunks = (count + kChunk - 1) / kChunk;

  // Launch a bounded window of chunk jobs; consume them in chunk order so
  // rows and floating-point accumulation are identical for any worker count.
  std::vector<std::future<ChunkResult>> window;
  std::size_t next_launch = 0;
  auto launch = [&] {
    const std::size_t c = next_launch++;
    const std::size_t begin = c * kChunk;
    const std::size_t end = std::min(count, begin + kChunk);
    window.push_back(std::async(std::launch::async, [&instances, begin, end,
                                                     &processors] {
      return process_chunk(instances, begin, end, processors);
    }));
  };
  const std::size_t in_flight = std::max<std::size_t>(1, workers);
  while (next_launch < chunks && window.size() < in_flight) launch();
  for (std::size_t c = 0; c < chunks; ++c) {
    ChunkResult result = window[c % in_flight].get();
    window[c % in_flight] = {};
    if (next_launch < chunks) {
      const std::size_t slot = c % in_flight;
      const std::size_t launch_c = next_launch++;
      const std::size_t begin = launch_c * kChunk;
      const std::size_t end = std::min(count, begin + kChunk);
      window[slot] = std::async(
          std::launch::async, [&instances, begin, end, &processors] {
            return process_chunk(instances, begin, end, processors);
          });
    }
    for (std::size_t mi = 0; mi < processors.size(); ++mi) {
      totals[mi].merge(result.per_m[mi]);
    }
    if (sink) {
      for (const RunRow& row : result.rows) {
        sink(row, instances.at(row.instance_index));
      }
    }
  }

  StatsReport report;
  report.n = cfg.n;
  report.alpha = cfg.alpha;
  report.sampled = cfg.mode == InstanceMode::Sampled;
  double eta_sum = 0.0, gamma_sum = 0.0;
  double gap_sum = 0.0, gap_sq_sum = 0.0;
  std::uint64_t gap_count = 0;
  for (std::size_t mi = 0; mi < processors.size(); ++mi) {
    const PerMAccum& acc = totals[mi];
    PerProcessorStats s;
    s.processors = processors[mi];
    s.runs = acc.runs;
    s.reached = acc.reached;
    s.eta = acc.runs ? double(acc.reached) / double(acc.runs) : 0.0;
    s.gamma = acc.gap_count ? acc.gap_sum / double(acc.gap_count) : 0.0;
    report.per_m.push_back(s);
    eta_sum += s.eta;
    gamma_sum += s.gamma;
    report.xi0 += acc.runs;
    report.xi1 += acc.reached;
    gap_sum += acc.gap_sum;
    gap_sq_sum += acc.gap_sq_sum;
    gap_count += acc.gap_count;
  }
  const double m_count = double(processors.size());
  report.eta = eta_sum / m_count;
  report.gamma = gamma_sum / m_count;
  if (gap_count > 0) {
    report.gap_mean = gap_sum / double(gap_count);
    report.gap_variance =
        gap_count > 1
            ? (gap_sq_sum - gap_sum * gap_sum / double(gap_count)) /
                  double(gap_count - 1)
            : 0.0;
  }
  if (report.sampled) {
    report.eta_lower = eta_lower_bound(report.xi0, report.xi1, cfg.alpha);
    // CLT interval over the pooled non-reaching gaps.
    if (gap_count >= 2) {
      const double sd = std::sqrt(report.gap_variance);
      const double half =
          critical_z(cfg.alpha) * sd / std::sqrt(double(gap_count));
      report.gamma_ci = {report.gap_mean - half, report.gap_mean + half,
                         false};
    } else {
      report.gamma_ci = {report.gap_mean, report.gap_mean, true};
    }
  }
  return report;
}

BenchmarkRow run_benchmark_row(int n, const InstanceSet& instances,
                               unsigned workers) {
  ExperimentConfig cfg;
  cfg.n = n;
  cfg.policy = MPolicy::Explicit;
  cfg.explicit_processors = {1, std::uint32_t(n)};
  cfg.workers = workers;
  cfg.mode = instances.mode() == InstanceSet::Mode::Sampled
                 ? InstanceMode::Sampled
                 : InstanceMode::Complete;

  std::uint64_t count_single = 0, count_logn = 0;
  long double sum_single = 0.0, sum_logn = 0.0;
  run_experiment(cfg, instances,
                 [&](const RunRow& row, const BinAllocation&) {
                   if (row.tasks == 0) return;  // nothing to compute
                   if (row.processors == 1) {
                     sum_single += row.makespan;
                     ++count_single;
                   } else {
                     sum_logn += row.makespan;
                     ++count_logn;
                   }
                 });

  BenchmarkRow row;
  row.n = n;
  row.serial = serial_time(n);
  row.pipelined = pipelined_time(n);
  row.mps_single = count_single ? double(sum_single / count_single) : 0.0;
  row.mps_logn = count_logn ? double(sum_logn / count_logn) : 0.0;
  return row;
}

void write_csv_header(std::ostream& out, bool timestamp) {
  if (timestamp) {
    const std::time_t now = std::time(nullptr);
    char buf[64];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    out << "# generated " << buf << "\n";
  }
  out << "n,instance_index,alloc,M,tasks,T,T_lower,trivial_lower,reached,gap,"
         "utilization\n";
}

void write_csv_row(std::ostream& out, int n, const RunRow& row,
                   const BinAllocation& alloc) {
  out << n << ',' << row.instance_index << ',';
  for (std::size_t i = 0; i < alloc.sizes().size(); ++i) {
    if (i) out << ';';
    out << alloc.sizes()[i];
  }
  out << ',' << row.processors << ',' << row.tasks << ',' << row.makespan
      << ',' << row.lower << ',' << row.trivial_lower << ','
      << (row.reached() ? 1 : 0) << ',';
  char buf[40];
  if (row.reached()) {
    out << 0;
  } else {
    std::snprintf(buf, sizeof buf, "%.9g",
                  double(row.makespan - row.lower) / double(row.lower));
    out << buf;
  }
  out << ',';
  if (row.makespan > 0) {
    std::snprintf(buf, sizeof buf, "%.9g",
                  double(row.tasks) /
                      (double(row.processors) * double(row.makespan)));
    out << buf;
  }
  out << '\n';
}

void write_summary_header(std::ostream& out) {
  out << "n,M_policy,eta,eta_lower,gamma,gamma_low,gamma_high,xi0,xi1,alpha\n";
}

void write_summary_row(std::ostream& out, const StatsReport& report,
                       MPolicy policy) {
  const char* policy_name = policy == MPolicy::All ? "all"
                            : policy == MPolicy::PowersOfTwo
                                ? "powers-of-two"
                                : "explicit";
  char buf[64];
  out << report.n << ',' << policy_name << ',';
  std::snprintf(buf, sizeof buf, "%.9g", report.eta);
  out << buf << ',';
  if (report.sampled) {
    std::snprintf(buf, sizeof buf, "%.9g", report.eta_lower);
    out << buf;
  }
  out << ',';
  std::snprintf(buf, sizeof buf, "%.9g", report.gamma);
  out << buf << ',';
  if (report.sampled && !report.gamma_ci.degenerate) {
    std::snprintf(buf, sizeof buf, "%.9g", report.gamma_ci.low);
    out << buf;
  }
  out << ',';
  if (report.sampled && !report.gamma_ci.degenerate) {
    std::snprintf(buf, sizeof buf, "%.9g", report.gamma_ci.high);
    out << buf;
  }
  out << ',' << report.xi0 << ',' << report.xi1 << ',';
  std::snprintf(buf, sizeof buf, "%.9g", report.alpha);
  out << buf << '\n';
}

}  // namespace mpsfft
