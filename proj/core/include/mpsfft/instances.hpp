#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "mpsfft/allocation.hpp"

namespace mpsfft {

/// Exact count of non-isomorphic allocation instances; grows doubly
/// exponentially (about 10^98 at n = 10), hence arbitrary precision.
using BigCount = boost::multiprecision::cpp_int;

/// f_1 = 2, f_{n+1} = 1 + f_n (f_n + 1) / 2.
BigCount count_instances(int n);

/// Scientific rounding such as "3.3750E+12" (sig_digits significant digits,
/// round half up).
std::string to_scientific(const BigCount& value, int sig_digits = 5);

/// An indexed collection of canonical allocations for one n, stored as a
/// flat log2-size buffer so that complete sets up to n = 6 (2.6M instances)
/// stay within ~100 MB.
class InstanceSet {
 public:
  enum class Mode { Complete, Sampled };

  InstanceSet(int n, Mode mode, std::uint64_t seed = 0);

  int log2_bins() const { return n_; }
  Mode mode() const { return mode_; }
  std::uint64_t seed() const { return seed_; }

  std::size_t size() const { return offsets_.size() - 1; }
  BinAllocation at(std::size_t index) const;
  std::size_t stream_count(std::size_t index) const;

  void append_leaf_log2(const std::uint8_t* data, std::size_t len);
  void append_single(std::uint8_t log2_size);

  /// Appends the canonical combination of two members of `src`: the part
  /// with more leaves goes right; equal leaf counts put the
  /// lexicographically smaller part left.
  void append_pair(const InstanceSet& src, std::size_t i, std::size_t j);

  const std::uint8_t* leaf_data(std::size_t index) const {
    return leaves_.data() + offsets_[index];
  }

 private:
  int n_;
  Mode mode_;
  std::uint64_t seed_;
  std::vector<std::uint64_t> offsets_{0};
  std::vector<std::uint8_t> leaves_;  // log2 of each stream size
};

/// Complete set I_n, in construction order: (2^n) first, then combinations
/// (i, j), i <= j, of I_{n-1} members in row-major upper-triangle order.
/// Guarded to n <= 6 unless force is set (n = 6 already holds 2.6M
/// instances; beyond that the counts are astronomical).
InstanceSet enumerate_instances(int n, bool force = false);

/// Draws (i, j) uniformly from the upper triangle {0 <= i <= j < universe},
/// i.e. P(i) = 2(universe - i) / (universe (universe + 1)) and j uniform on
/// {i, ..., universe - 1}.
std::pair<std::uint64_t, std::uint64_t> draw_triangle_pair(
    std::uint64_t universe, std::mt19937_64& rng);

/// Uniform integer in [0, bound) by rejection; deterministic given the
/// engine state.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

/// Seeded sampling for n >= 7. The recursion is seeded with the complete
/// set at level 6; every level from 7 up to n draws `count` instances with
/// replacement: the single-stream instance with exact probability 1/f_level
/// (tested by integer comparison against a 128-bit uniform draw), otherwise
/// a triangle pair over the previous level's set.
InstanceSet sample_instances(int n, std::size_t count, std::uint64_t seed);

}  // namespace mpsfft
