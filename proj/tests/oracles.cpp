#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <unordered_set>
#include <stdexcept>

#include "mpsfft/allocation.hpp"

namespace oracles {

std::vector<NetTask> full_network(int n) {
  const std::uint32_t N = std::uint32_t{1} << n;
  std::vector<NetTask> tasks;
  for (int i = 0; i < n; ++i) {
    const std::uint32_t g = N >> i;
    std::vector<NetTask> stage;
    for (std::uint32_t base = 0; base < N; base += g) {
      for (std::uint32_t t = 0; t < g / 2; ++t) {
        NetTask task;
        task.stage = i;
        task.top = base + t;
        task.bottom = base + t + g / 2;
        stage.push_back(task);
      }
    }
    std::sort(stage.begin(), stage.end(),
              [](const NetTask& a, const NetTask& b) { return a.top < b.top; });
    for (std::size_t r = 0; r < stage.size(); ++r) {
      stage[r].row = int(r);
    }
    tasks.insert(tasks.end(), stage.begin(), stage.end());
  }
  return tasks;
}

std::map<std::pair<int, int>, std::vector<std::pair<int, int>>>
network_parent_edges(int n) {
  const auto tasks = full_network(n);
  // writer[(stage, position)] -> row
  std::map<std::pair<int, std::uint32_t>, int> writer;
  for (const NetTask& t : tasks) {
    writer[{t.stage, t.top}] = t.row;
    writer[{t.stage, t.bottom}] = t.row;
  }
  std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> parents;
  for (const NetTask& t : tasks) {
    if (t.stage == 0) continue;
    std::vector<std::pair<int, int>> ps = {
        {t.stage - 1, writer.at({t.stage - 1, t.top})},
        {t.stage - 1, writer.at({t.stage - 1, t.bottom})}};
    std::sort(ps.begin(), ps.end());
    parents[{t.stage, t.row}] = ps;
  }
  return parents;
}

std::vector<std::complex<double>> direct_dft(
    const std::vector<std::complex<double>>& x) {
  const std::size_t N = x.size();
  std::vector<std::complex<double>> out(N);
  for (std::size_t k = 0; k < N; ++k) {
    std::complex<double> acc = 0.0;
    for (std::size_t j = 0; j < N; ++j) {
      const double angle =
          -2.0 * std::numbers::pi * double(k * j % N) / double(N);
      acc += x[j] * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    out[k] = acc;
  }
  return out;
}

std::uint32_t optimal_makespan(const mpsfft::PrecedenceGraph& g,
                               std::uint32_t processors) {
  std::vector<mpsfft::Vertex> verts;
  g.for_each([&](mpsfft::Vertex v) { verts.push_back(v); });
  const std::size_t count = verts.size();
  if (count == 0) return 0;
  if (count > 20) throw std::invalid_argument("optimal_makespan: too large");

  std::vector<std::uint32_t> parent_mask(count, 0);
  for (std::size_t a = 0; a < count; ++a) {
    if (verts[a].stage == 0) continue;
    for (const mpsfft::Vertex p : mpsfft::parents(verts[a], g.log2_size())) {
      for (std::size_t b = 0; b < count; ++b) {
        if (verts[b] == p) parent_mask[a] |= (1u << b);
      }
    }
  }
  const std::uint32_t full = (count == 32) ? ~0u : (1u << count) - 1;
  std::vector<std::uint8_t> seen(std::size_t(full) + 1, 0);
  std::queue<std::uint32_t> frontier;
  frontier.push(0);
  seen[0] = 1;
  std::uint32_t slots = 0;
  while (!frontier.empty()) {
    std::queue<std::uint32_t> next;
    while (!frontier.empty()) {
      const std::uint32_t mask = frontier.front();
      frontier.pop();
      if (mask == full) return slots;
      std::vector<std::uint32_t> ready;
      for (std::size_t a = 0; a < count; ++a) {
        if (!(mask & (1u << a)) && (parent_mask[a] & mask) == parent_mask[a]) {
          ready.push_back(std::uint32_t(1u << a));
        }
      }
      // Some optimal schedule never idles a processor while work is ready,
      // so subsets of size exactly min(M, |ready|) suffice.
      const std::size_t take =
          std::min<std::size_t>(processors, ready.size());
      auto recurse = [&](auto&& self, std::size_t start,
                         std::size_t depth, std::uint32_t add) -> void {
        if (depth == take) {
          const std::uint32_t nm = mask | add;
          if (!seen[nm]) {
            seen[nm] = 1;
            next.push(nm);
          }
          return;
        }
        for (std::size_t i = start; i + (take - depth) <= ready.size(); ++i) {
          self(self, i + 1, depth + 1, add | ready[i]);
        }
      };
      recurse(recurse, 0, 0, 0);
    }
    frontier = std::move(next);
    ++slots;
  }
  throw std::logic_error("optimal_makespan: search exhausted");
}

namespace {

struct DeadlineProblem {
  int count = 0;
  std::uint32_t processors = 0;
  std::vector<std::uint64_t> parent_mask;
  std::vector<int> chain;
};

// Expands one executed-set by one slot into `out`. Only greedy slots are
// generated (exactly min(M, |ready|) picks): moving a ready task into a
// slot with spare capacity never delays anything, so some optimal schedule
// is greedy. Returns false when the state is already hopeless.
bool expand_slot(const DeadlineProblem& pb, std::uint64_t mask,
                 int slots_left, std::unordered_set<std::uint64_t>& out,
                 bool& overflow) {
  std::vector<int> ready, forced;
  int remaining = 0;
  for (int a = 0; a < pb.count; ++a) {
    if (mask & (std::uint64_t{1} << a)) continue;
    ++remaining;
    const bool is_ready =
        (pb.parent_mask[std::size_t(a)] & mask) ==
        pb.parent_mask[std::size_t(a)];
    const int need = pb.chain[std::size_t(a)] + 1 + (is_ready ? 0 : 1);
    if (need > slots_left) return false;
    if (!is_ready) continue;
    ready.push_back(a);
    if (pb.chain[std::size_t(a)] + 1 == slots_left) forced.push_back(a);
  }
  if (remaining > int(pb.processors) * slots_left) return false;
  if (forced.size() > pb.processors) return false;
  const std::size_t take =
      std::min<std::size_t>(pb.processors, ready.size());
  for (const int a : forced) mask |= (std::uint64_t{1} << a);
  std::vector<int> rest;
  for (const int a : ready) {
    if (!(mask & (std::uint64_t{1} << a))) rest.push_back(a);
  }
  const std::size_t extra = take - forced.size();
  auto rec = [&](auto&& self, std::size_t start, std::size_t depth,
                 std::uint64_t m) -> void {
    if (overflow) return;
    if (depth == extra) {
      out.insert(m);
      if (out.size() > 4000000) overflow = true;
      return;
    }
    for (std::size_t i = start; i + (extra - depth) <= rest.size(); ++i) {
      self(self, i + 1, depth + 1, m | (std::uint64_t{1} << rest[i]));
    }
  };
  rec(rec, 0, 0, mask);
  return true;
}

}  // namespace

int feasible_within(const mpsfft::PrecedenceGraph& g,
                    std::uint32_t processors, std::uint32_t slots) {
  std::vector<mpsfft::Vertex> verts;
  g.for_each([&](mpsfft::Vertex v) { verts.push_back(v); });
  if (verts.empty()) return 1;
  if (verts.size() > 64) {
    throw std::invalid_argument("feasible_within: too large");
  }
  DeadlineProblem pb;
  pb.count = int(verts.size());
  pb.processors = processors;
  pb.parent_mask.assign(verts.size(), 0);
  pb.chain.assign(verts.size(), 0);
  for (std::size_t x = 0; x < verts.size(); ++x) {
    if (verts[x].stage == 0) continue;
    for (const mpsfft::Vertex p : mpsfft::parents(verts[x], g.log2_size())) {
      for (std::size_t y = 0; y < verts.size(); ++y) {
        if (verts[y] == p) pb.parent_mask[x] |= (std::uint64_t{1} << y);
      }
    }
  }
  // verts is stage-major, so children sit after their parents.
  for (std::size_t x = verts.size(); x-- > 0;) {
    int best = 0;
    for (const mpsfft::Vertex c : g.children_of(verts[x])) {
      for (std::size_t y = 0; y < verts.size(); ++y) {
        if (verts[y] == c) best = std::max(best, pb.chain[y] + 1);
      }
    }
    pb.chain[x] = best;
  }

  const std::uint64_t full = pb.count == 64
                                 ? ~std::uint64_t{0}
                                 : (std::uint64_t{1} << pb.count) - 1;
  std::unordered_set<std::uint64_t> level = {0};
  bool overflow = false;
  for (std::uint32_t t = 0; t < slots; ++t) {
    std::unordered_set<std::uint64_t> next;
    for (const std::uint64_t mask : level) {
      if (mask == full) return 1;
      expand_slot(pb, mask, int(slots - t), next, overflow);
      if (next.count(full)) return 1;
      if (overflow) return -1;
    }
    if (next.empty()) return 0;
    level = std::move(next);
  }
  return level.count(full) ? 1 : 0;
}

std::vector<std::uint32_t> longest_chains(const mpsfft::PrecedenceGraph& g) {
  const std::uint32_t rows = g.rows();
  std::vector<std::uint32_t> chain(std::size_t(g.log2_size()) * rows, 0);
  std::vector<std::uint8_t> done(chain.size(), 0);
  auto dfs = [&](auto&& self, mpsfft::Vertex v) -> std::uint32_t {
    const std::size_t idx = mpsfft::vertex_index(v, rows);
    if (done[idx]) return chain[idx];
    std::uint32_t best = 0;
    for (const mpsfft::Vertex c : g.children_of(v)) {
      best = std::max(best, self(self, c) + 1);
    }
    done[idx] = 1;
    chain[idx] = best;
    return best;
  };
  g.for_each([&](mpsfft::Vertex v) { dfs(dfs, v); });
  return chain;
}

std::vector<std::vector<std::uint32_t>> valid_compositions(int n) {
  const std::uint32_t total = std::uint32_t{1} << n;
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> current;
  auto recurse = [&](auto&& self, std::uint32_t offset) -> void {
    if (offset == total) {
      out.push_back(current);
      return;
    }
    for (std::uint32_t s = 1; offset + s <= total; s <<= 1) {
      if (offset % s != 0) break;  // misaligned, and larger s only worse
      current.push_back(s);
      self(self, offset + s);
      current.pop_back();
    }
  };
  recurse(recurse, 0);
  return out;
}

double beta_cdf_by_quadrature(double x, double a, double b) {
  const double log_norm =
      std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b);
  const int steps = 20000;  // Simpson, even count
  const double h = x / steps;
  auto density = [&](double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    return std::exp(log_norm + (a - 1.0) * std::log(t) +
                    (b - 1.0) * std::log1p(-t));
  };
  double acc = density(0.0) + density(x);
  for (int i = 1; i < steps; ++i) {
    acc += density(h * i) * (i % 2 ? 4.0 : 2.0);
  }
  return acc * h / 3.0;
}

double normal_quantile_by_bisection(double p) {
  double lo = -10.0, hi = 10.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double cdf = 0.5 * (1.0 + std::erf(mid / std::sqrt(2.0)));
    if (cdf < p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace oracles
