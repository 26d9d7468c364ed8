// Batch front end: count, enumerate, sample, graph, schedule, bound,
// baseline, benchmark, experiment, verify. Data goes to standard output or
// --out; progress goes to standard error. Exit codes: 0 ok, 1 validation
// error, 2 internal invariant violation.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "mpsfft/baselines.hpp"
#include "mpsfft/bounds.hpp"
#include "mpsfft/errors.hpp"
#include "mpsfft/executor.hpp"
#include "mpsfft/experiment.hpp"
#include "mpsfft/graph.hpp"
#include "mpsfft/instances.hpp"
#include "mpsfft/json_io.hpp"
#include "mpsfft/scheduler.hpp"

namespace {

using namespace mpsfft;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::invalid_argument("cannot open file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

class OutputStream {
 public:
  explicit OutputStream(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) {
        throw std::invalid_argument("cannot open output file: " + path);
      }
    }
  }
  std::ostream& get() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

BinAllocation load_allocation(const std::string& path) {
  return allocation_from_json(read_file(path));
}

// Deterministic complex test signal (Box-Muller over the raw engine, so the
// values do not depend on library distribution internals).
std::vector<Complex> random_signal(std::size_t length, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto uniform = [&rng] {
    return (double(rng() >> 11) + 0.5) * 0x1p-53;
  };
  std::vector<Complex> x(length);
  for (auto& v : x) {
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    const double phi = 2.0 * 3.14159265358979323846 * uniform();
    v = Complex(r * std::cos(phi), r * std::sin(phi));
  }
  return x;
}

MPolicy parse_policy(const std::string& name) {
  if (name == "all") return MPolicy::All;
  if (name == "pow2" || name == "powers-of-two") return MPolicy::PowersOfTwo;
  if (name == "list" || name == "explicit") return MPolicy::Explicit;
  throw std::invalid_argument("unknown policy: " + name);
}

int run(int argc, char** argv) {
  CLI::App app{"Partial-FFT scheduling workbench"};
  app.require_subcommand(1);

  // count
  auto* cmd_count = app.add_subcommand("count",
                                       "Exact non-isomorphic instance count");
  int count_n = 3;
  bool count_sci = false;
  cmd_count->add_option("--n", count_n, "log2 of the bin count")->required();
  cmd_count->add_flag("--scientific", count_sci, "5-digit scientific form");
  cmd_count->callback([&] {
    const BigCount f = count_instances(count_n);
    if (count_sci) {
      std::cout << to_scientific(f) << "\n";
    } else {
      std::cout << f.str() << "\n";
    }
  });

  // enumerate
  auto* cmd_enum = app.add_subcommand(
      "enumerate", "Complete non-isomorphic instance set, one JSON per line");
  int enum_n = 3;
  std::string enum_out;
  bool enum_force = false;
  cmd_enum->add_option("--n", enum_n)->required();
  cmd_enum->add_option("--out", enum_out, "output path (default stdout)");
  cmd_enum->add_flag("--force-complete", enum_force,
                     "allow n > 6 despite the memory cost");
  cmd_enum->callback([&] {
    const InstanceSet set = enumerate_instances(enum_n, enum_force);
    OutputStream out(enum_out);
    for (std::size_t i = 0; i < set.size(); ++i) {
      out.get() << to_json(set.at(i)) << "\n";
    }
  });

  // sample
  auto* cmd_sample = app.add_subcommand(
      "sample", "Seeded instance sampling for n >= 7, one JSON per line");
  int sample_n = 7;
  std::size_t sample_count = 10000;
  std::uint64_t sample_seed = 1;
  std::string sample_out;
  cmd_sample->add_option("--n", sample_n)->required();
  cmd_sample->add_option("--count", sample_count, "draws (with replacement)");
  cmd_sample->add_option("--seed", sample_seed);
  cmd_sample->add_option("--out", sample_out);
  cmd_sample->callback([&] {
    const InstanceSet set = sample_instances(sample_n, sample_count,
                                             sample_seed);
    OutputStream out(sample_out);
    for (std::size_t i = 0; i < set.size(); ++i) {
      out.get() << to_json(set.at(i)) << "\n";
    }
  });

  // graph
  auto* cmd_graph = app.add_subcommand("graph",
                                       "Precedence graph for an allocation");
  std::string graph_alloc, graph_out;
  cmd_graph->add_option("--alloc", graph_alloc, "allocation JSON file")
      ->required();
  cmd_graph->add_option("--out", graph_out);
  cmd_graph->callback([&] {
    const PrecedenceGraph g = PrecedenceGraph::build(
        load_allocation(graph_alloc));
    OutputStream out(graph_out);
    out.get() << to_json(g) << "\n";
  });

  // schedule
  auto* cmd_sched = app.add_subcommand("schedule",
                                       "Multi-priority schedule for an "
                                       "allocation");
  std::string sched_alloc, sched_out;
  std::uint32_t sched_m = 1;
  cmd_sched->add_option("--alloc", sched_alloc)->required();
  cmd_sched->add_option("--M", sched_m, "processor count")->required();
  cmd_sched->add_option("--out", sched_out);
  cmd_sched->callback([&] {
    const PrecedenceGraph g = PrecedenceGraph::build(
        load_allocation(sched_alloc));
    const Schedule s = mps_schedule(g, sched_m);
    const auto feasible = check_feasible(g, s);
    if (!feasible) {
      throw InvariantViolation("generated schedule failed feasibility: " +
                               feasible.detail);
    }
    OutputStream out(sched_out);
    out.get() << to_json(s) << "\n";
  });

  // bound
  auto* cmd_bound = app.add_subcommand("bound",
                                       "Makespan lower bounds for an "
                                       "allocation");
  std::string bound_alloc, bound_out;
  std::uint32_t bound_m = 1;
  cmd_bound->add_option("--alloc", bound_alloc)->required();
  cmd_bound->add_option("--M", bound_m)->required();
  cmd_bound->add_option("--out", bound_out);
  cmd_bound->callback([&] {
    const PrecedenceGraph g = PrecedenceGraph::build(
        load_allocation(bound_alloc));
    const TrunkClassification c = classify(g);
    OutputStream out(bound_out);
    out.get() << to_json(lower_bound(c, bound_m), c) << "\n";
  });

  // baseline
  auto* cmd_base = app.add_subcommand(
      "baseline", "Serial and pipelined full-network makespans");
  int base_n = 3;
  cmd_base->add_option("--n", base_n)->required();
  cmd_base->callback([&] {
    std::cout << "n,scheme,processors,slots\n";
    std::cout << base_n << ",serial,1," << serial_time(base_n) << "\n";
    std::cout << base_n << ",pipelined," << base_n << ","
              << pipelined_time(base_n) << "\n";
  });

  // benchmark
  auto* cmd_bench = app.add_subcommand(
      "benchmark", "Scheduler means vs baselines over an n range");
  int bench_min = 3, bench_max = 6;
  std::size_t bench_xi0 = 10000;
  std::uint64_t bench_seed = 1;
  unsigned bench_workers = 0;
  std::string bench_out;
  cmd_bench->add_option("--n-min", bench_min);
  cmd_bench->add_option("--n-max", bench_max);
  cmd_bench->add_option("--xi0", bench_xi0, "sample size for n >= 7");
  cmd_bench->add_option("--seed", bench_seed);
  cmd_bench->add_option("--workers", bench_workers);
  cmd_bench->add_option("--out", bench_out);
  cmd_bench->callback([&] {
    if (bench_min < 1 || bench_max < bench_min) {
      throw std::invalid_argument("benchmark: bad n range");
    }
    OutputStream out(bench_out);
    out.get() << "n,serial,pipelined,mps_m1_mean,mps_log2n_mean\n";
    for (int n = bench_min; n <= bench_max; ++n) {
      std::cerr << "benchmark: n=" << n << "\n";
      const InstanceSet set =
          n <= 6 ? enumerate_instances(n)
                 : sample_instances(n, bench_xi0, bench_seed);
      const BenchmarkRow row = run_benchmark_row(n, set, bench_workers);
      char buf[64];
      out.get() << row.n << ',' << row.serial << ',' << row.pipelined << ',';
      std::snprintf(buf, sizeof buf, "%.4f,%.4f", row.mps_single,
                    row.mps_logn);
      out.get() << buf << "\n";
    }
  });

  // experiment
  auto* cmd_exp = app.add_subcommand(
      "experiment", "Optimality sweep with per-run CSV and a stats report");
  int exp_n = 3;
  std::string exp_policy = "all";
  std::vector<std::uint32_t> exp_ms;
  std::string exp_mode = "complete";
  std::size_t exp_xi0 = 10000;
  std::uint64_t exp_seed = 1;
  double exp_alpha = 0.95;
  unsigned exp_workers = 0;
  bool exp_force = false, exp_no_timestamp = false;
  std::string exp_out, exp_report, exp_summary;
  cmd_exp->add_option("--n", exp_n)->required();
  cmd_exp->add_option("--policy", exp_policy, "all | pow2 | list");
  cmd_exp->add_option("--M", exp_ms, "explicit processor counts");
  cmd_exp->add_option("--mode", exp_mode, "complete | sampled");
  cmd_exp->add_option("--xi0", exp_xi0);
  cmd_exp->add_option("--seed", exp_seed);
  cmd_exp->add_option("--alpha", exp_alpha);
  cmd_exp->add_option("--workers", exp_workers);
  cmd_exp->add_flag("--force-complete", exp_force);
  cmd_exp->add_flag("--no-timestamp", exp_no_timestamp,
                    "omit the timestamp comment from the CSV");
  cmd_exp->add_option("--out", exp_out, "per-run CSV path");
  cmd_exp->add_option("--report", exp_report, "stats JSON path");
  cmd_exp->add_option("--summary", exp_summary, "summary CSV path");
  cmd_exp->callback([&] {
    ExperimentConfig cfg;
    cfg.n = exp_n;
    cfg.policy = parse_policy(exp_policy);
    cfg.explicit_processors = exp_ms;
    if (!exp_ms.empty()) cfg.policy = MPolicy::Explicit;
    cfg.mode = exp_mode == "sampled" ? InstanceMode::Sampled
               : exp_mode == "complete"
                   ? InstanceMode::Complete
                   : throw std::invalid_argument("unknown mode: " + exp_mode);
    cfg.xi0 = exp_xi0;
    cfg.seed = exp_seed;
    cfg.alpha = exp_alpha;
    cfg.workers = exp_workers;
    cfg.force_complete = exp_force;

    std::cerr << "experiment: loading instances for n=" << cfg.n << "\n";
    const InstanceSet set = load_instances(cfg);
    std::cerr << "experiment: " << set.size() << " instances, "
              << processor_set(cfg).size() << " processor counts\n";

    RowSink sink;
    std::ofstream csv;
    if (!exp_out.empty()) {
      csv.open(exp_out, std::ios::binary);
      if (!csv) {
        throw std::invalid_argument("cannot open output file: " + exp_out);
      }
      write_csv_header(csv, !exp_no_timestamp);
      sink = [&csv, &cfg](const RunRow& row, const BinAllocation& alloc) {
        write_csv_row(csv, cfg.n, row, alloc);
      };
    }
    const StatsReport report = run_experiment(cfg, set, sink);
    if (!exp_summary.empty()) {
      std::ofstream summary(exp_summary, std::ios::binary);
      if (!summary) {
        throw std::invalid_argument("cannot open output file: " +
                                    exp_summary);
      }
      write_summary_header(summary);
      write_summary_row(summary, report, cfg.policy);
    }
    OutputStream rep(exp_report);
    rep.get() << to_json(report) << "\n";
  });

  // verify
  auto* cmd_verify = app.add_subcommand(
      "verify", "Schedule, execute and compare against the reference trace");
  std::string verify_alloc, verify_schedule, verify_dump;
  std::uint32_t verify_m = 1;
  std::uint64_t verify_seed = 1;
  cmd_verify->add_option("--alloc", verify_alloc)->required();
  cmd_verify->add_option("--M", verify_m)->required();
  cmd_verify->add_option("--seed", verify_seed, "test signal seed");
  cmd_verify->add_option("--schedule", verify_schedule,
                         "check this schedule file instead of generating one");
  cmd_verify->add_option("--dump-trace", verify_dump,
                         "write the produced values as JSON");
  cmd_verify->callback([&] {
    const BinAllocation alloc = load_allocation(verify_alloc);
    const PrecedenceGraph g = PrecedenceGraph::build(alloc);
    Schedule s;
    if (verify_schedule.empty()) {
      s = mps_schedule(g, verify_m);
    } else {
      s = schedule_from_json(read_file(verify_schedule));
      if (s.processors != verify_m) {
        std::cerr << "note: schedule file says M=" << s.processors << "\n";
      }
    }
    const auto feasible = check_feasible(g, s);
    std::cout << "tasks=" << g.size() << " T=" << s.makespan()
              << " T_lower=" << lower_bound(g, s.processors).lower << "\n";
    if (!feasible) {
      std::cout << "feasible=no slot=" << feasible.slot << " ("
                << feasible.detail << ")\n";
      std::cout << "verdict: FAIL\n";
      throw std::invalid_argument("schedule is infeasible: " +
                                  feasible.detail);
    }
    std::cout << "feasible=yes\n";

    const auto x = random_signal(alloc.bin_count(), verify_seed);
    const ExecutionTrace got = execute_schedule(g, s, x);
    const ExecutionTrace want = reference_full_fft(x);
    double max_err = 0.0;
    g.for_each([&](Vertex v) {
      for (const std::uint32_t k : vertex_outputs(v, g.log2_size())) {
        max_err = std::max(max_err,
                           std::abs(got.value(v.stage, k) -
                                    want.value(v.stage, k)));
      }
    });
    const auto streams = extract_streams(got, alloc);
    std::size_t extracted = 0;
    for (const auto& stream : streams) extracted += stream.size();
    std::cout << "streams=" << streams.size() << " samples=" << extracted
              << " max_abs_error=" << max_err << "\n";
    if (!verify_dump.empty()) {
      std::ofstream dump(verify_dump, std::ios::binary);
      dump << "[";
      bool first = true;
      g.for_each([&](Vertex v) {
        for (const std::uint32_t k : vertex_outputs(v, g.log2_size())) {
          const Complex value = got.value(v.stage, k);
          if (!first) dump << ",";
          first = false;
          dump << "[" << v.stage << "," << k << "," << value.real() << ","
               << value.imag() << "]";
        }
      });
      dump << "]\n";
    }
    if (max_err > 1e-12) {
      std::cout << "verdict: FAIL\n";
      throw InvariantViolation("trace mismatch above 1e-12");
    }
    std::cout << "verdict: PASS\n";
  });

  CLI11_PARSE(app, argc, argv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const mpsfft::InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
