#include "mpsfft/instances.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>
#include <string>

namespace mpsfft {

BigCount count_instances(int n) {
  if (n < 1) {
    throw std::invalid_argument("count_instances: n must be >= 1");
  }
  BigCount f = 2;
  for (int k = 2; k <= n; ++k) {
    f = 1 + f * (f + 1) / 2;
  }
  return f;
}

std::string to_scientific(const BigCount& value, int sig_digits) {
  if (value < 0 || sig_digits < 1) {
    throw std::invalid_argument("to_scientific: bad arguments");
  }
  std::string digits = value.str();
  int exponent = int(digits.size()) - 1;
  // Round half up to sig_digits significant digits.
  if (int(digits.size()) > sig_digits) {
    const bool round_up = digits[std::size_t(sig_digits)] >= '5';
    digits.resize(std::size_t(sig_digits));
    if (round_up) {
      int i = sig_digits - 1;
      while (i >= 0) {
        if (digits[std::size_t(i)] != '9') {
          ++digits[std::size_t(i)];
          break;
        }
        digits[std::size_t(i)] = '0';
        --i;
      }
      if (i < 0) {
        digits.insert(digits.begin(), '1');
        digits.resize(std::size_t(sig_digits));
        ++exponent;
      }
    }
  } else {
    digits.append(std::size_t(sig_digits) - digits.size(), '0');
  }
  std::string out;
  out += digits[0];
  if (sig_digits > 1) {
    out += '.';
    out += digits.substr(1);
  }
  out += "E+";
  if (exponent < 10) out += '0';
  out += std::to_string(exponent);
  return out;
}

InstanceSet::InstanceSet(int n, Mode mode, std::uint64_t seed)
    : n_(n), mode_(mode), seed_(seed) {}

BinAllocation InstanceSet::at(std::size_t index) const {
  const std::uint64_t begin = offsets_[index];
  const std::uint64_t end = offsets_[index + 1];
  std::vector<std::uint32_t> sizes;
  sizes.reserve(std::size_t(end - begin));
  for (std::uint64_t k = begin; k < end; ++k) {
    sizes.push_back(std::uint32_t{1} << leaves_[std::size_t(k)]);
  }
  return BinAllocation(n_, std::move(sizes));
}

std::size_t InstanceSet::stream_count(std::size_t index) const {
  return std::size_t(offsets_[index + 1] - offsets_[index]);
}

void InstanceSet::append_leaf_log2(const std::uint8_t* data, std::size_t len) {
  leaves_.insert(leaves_.end(), data, data + len);
  offsets_.push_back(leaves_.size());
}

void InstanceSet::append_single(std::uint8_t log2_size) {
  leaves_.push_back(log2_size);
  offsets_.push_back(leaves_.size());
}

void InstanceSet::append_pair(const InstanceSet& src, std::size_t i,
                              std::size_t j) {
  const std::uint8_t* a = src.leaf_data(i);
  const std::uint8_t* b = src.leaf_data(j);
  std::size_t la = src.stream_count(i);
  std::size_t lb = src.stream_count(j);
  // Right-heavy canonical order of the two halves: more leaves right;
  // equal counts put the lexicographically smaller half left.
  bool swap = la > lb;
  if (la == lb) {
    swap = std::lexicographical_compare(b, b + lb, a, a + la);
  }
  if (swap) {
    std::swap(a, b);
    std::swap(la, lb);
  }
  leaves_.insert(leaves_.end(), a, a + la);
  leaves_.insert(leaves_.end(), b, b + lb);
  offsets_.push_back(leaves_.size());
}

InstanceSet enumerate_instances(int n, bool force) {
  if (n < 1) {
    throw std::invalid_argument("enumerate_instances: n must be >= 1");
  }
  if (n > 6 && !force) {
    throw std::invalid_argument(
        "enumerate_instances: complete sets beyond n=6 need the force flag "
        "(n=6 already holds 2598061 instances)");
  }
  InstanceSet level(1, InstanceSet::Mode::Complete);
  {
    const std::uint8_t single = 1;
    level.append_single(single);  // (2)
    const std::uint8_t units[2] = {0, 0};
    level.append_leaf_log2(units, 2);  // (1, 1)
  }
  for (int k = 2; k <= n; ++k) {
    InstanceSet next(k, InstanceSet::Mode::Complete);
    next.append_single(std::uint8_t(k));  // (2^k)
    const std::size_t prev_count = level.size();
    for (std::size_t i = 0; i < prev_count; ++i) {
      for (std::size_t j = i; j < prev_count; ++j) {
        next.append_pair(level, i, j);
      }
    }
    level = std::move(next);
  }
  return level;
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) {
    throw std::invalid_argument("uniform_below: bound must be positive");
  }
  const std::uint64_t limit = bound * ((~std::uint64_t{0}) / bound);
  for (;;) {
    const std::uint64_t r = rng();
    if (r < limit) return r % bound;
  }
}

std::pair<std::uint64_t, std::uint64_t> draw_triangle_pair(
    std::uint64_t universe, std::mt19937_64& rng) {
  if (universe == 0) {
    throw std::invalid_argument("draw_triangle_pair: empty universe");
  }
  const std::uint64_t f = universe;
  const std::uint64_t total = f * (f + 1) / 2;
  const std::uint64_t k = uniform_below(rng, total);
  // Row-major upper triangle: row i starts at offset i*f - i(i-1)/2 and has
  // f - i entries. Invert with a float guess, then fix up exactly.
  auto offset = [f](std::uint64_t i) { return i * f - i * (i - 1) / 2; };
  std::uint64_t i = std::uint64_t(
      double(f) + 0.5 -
      std::sqrt(std::max(0.0, (double(f) + 0.5) * (double(f) + 0.5) -
                                  2.0 * double(k))));
  if (i >= f) i = f - 1;
  while (i > 0 && offset(i) > k) --i;
  while (i + 1 < f && offset(i + 1) <= k) ++i;
  const std::uint64_t j = i + (k - offset(i));
  return {i, j};
}

InstanceSet sample_instances(int n, std::size_t count, std::uint64_t seed) {
  if (n < 7) {
    throw std::invalid_argument(
        "sample_instances: sampling is for n >= 7; smaller n have complete "
        "sets");
  }
  if (count == 0) {
    throw std::invalid_argument("sample_instances: count must be positive");
  }
  InstanceSet prev = enumerate_instances(6);
  std::mt19937_64 rng(seed);
  const BigCount two128 = BigCount(1) << 128;
  for (int level = 7; level <= n; ++level) {
    const BigCount f_level = count_instances(level);
    InstanceSet next(level, InstanceSet::Mode::Sampled, seed);
    for (std::size_t d = 0; d < count; ++d) {
      const std::uint64_t hi = rng();
      const std::uint64_t lo = rng();
      BigCount u = BigCount(hi);
      u <<= 64;
      u += lo;
      // Exact integer test: u * f < 2^128  <=>  u < 2^128 / f.
      if (u * f_level < two128) {
        next.append_single(std::uint8_t(level));
      } else {
        const auto [i, j] = draw_triangle_pair(prev.size(), rng);
        next.append_pair(prev, i, j);
      }
    }
    prev = std::move(next);
  }
  return prev;
}

}  // namespace mpsfft
