#include "mpsfft/allocation.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>

namespace mpsfft {
namespace {

bool is_pow2(std::uint32_t v) { return v != 0 && (v & (v - 1)) == 0; }

void validate(int n, const std::vector<std::uint32_t>& sizes) {
  if (n < 1 || n > 30) {
    throw std::invalid_argument("allocation: n must be in [1, 30], got " +
                                std::to_string(n));
  }
  if (sizes.empty()) {
    throw std::invalid_argument("allocation: at least one stream required");
  }
  const std::uint64_t total = std::uint64_t{1} << n;
  std::uint64_t offset = 0;
  for (std::size_t r = 0; r < sizes.size(); ++r) {
    const std::uint32_t s = sizes[r];
    if (!is_pow2(s)) {
      throw std::invalid_argument("allocation: stream " + std::to_string(r) +
                                  " size " + std::to_string(s) +
                                  " is not a power of two");
    }
    if (offset % s != 0) {
      throw std::invalid_argument("allocation: stream " + std::to_string(r) +
                                  " block at bin " + std::to_string(offset) +
                                  " is misaligned for size " +
                                  std::to_string(s));
    }
    offset += s;
    if (offset > total) {
      throw std::invalid_argument("allocation: sizes exceed the band (sum > " +
                                  std::to_string(total) + ")");
    }
  }
  if (offset != total) {
    throw std::invalid_argument(
        "allocation: sizes must sum to " + std::to_string(total) + ", got " +
        std::to_string(offset));
  }
}

}  // namespace

BinAllocation::BinAllocation(int log2_bins, std::vector<std::uint32_t> sizes)
    : n_(log2_bins), sizes_(std::move(sizes)) {
  validate(n_, sizes_);
}

std::uint32_t BinAllocation::block_start(std::size_t r) const {
  return std::accumulate(sizes_.begin(), sizes_.begin() + long(r),
                         std::uint32_t{0});
}

BinAllocation BinAllocation::from_bin_sets(
    const std::vector<std::vector<std::uint32_t>>& sets) {
  if (sets.empty()) {
    throw std::invalid_argument("bin sets: at least one stream required");
  }
  std::uint64_t total = 0;
  for (const auto& s : sets) total += s.size();
  if (total == 0 || (total & (total - 1)) != 0) {
    throw std::invalid_argument(
        "bin sets: total bin count " + std::to_string(total) +
        " is not a power of two");
  }
  const int n = std::countr_zero(total);

  std::vector<std::uint32_t> sizes;
  sizes.reserve(sets.size());
  std::uint64_t offset = 0;
  for (std::size_t r = 0; r < sets.size(); ++r) {
    std::vector<std::uint32_t> bins = sets[r];
    if (bins.empty()) {
      throw std::invalid_argument("bin sets: stream " + std::to_string(r) +
                                  " is empty");
    }
    std::sort(bins.begin(), bins.end());
    for (std::size_t k = 1; k < bins.size(); ++k) {
      if (bins[k] == bins[k - 1]) {
        throw std::invalid_argument("bin sets: stream " + std::to_string(r) +
                                    " repeats bin " + std::to_string(bins[k]));
      }
      if (bins[k] != bins[k - 1] + 1) {
        throw std::invalid_argument("bin sets: stream " + std::to_string(r) +
                                    " is not a contiguous block");
      }
    }
    const auto size = std::uint32_t(bins.size());
    if (!is_pow2(size)) {
      throw std::invalid_argument("bin sets: stream " + std::to_string(r) +
                                  " has non-power-of-two size " +
                                  std::to_string(size));
    }
    if (bins.front() % size != 0) {
      throw std::invalid_argument("bin sets: stream " + std::to_string(r) +
                                  " block start " +
                                  std::to_string(bins.front()) +
                                  " is misaligned for size " +
                                  std::to_string(size));
    }
    if (bins.front() < offset) {
      throw std::invalid_argument("bin sets: stream " + std::to_string(r) +
                                  " overlaps a preceding stream");
    }
    if (bins.front() > offset) {
      throw std::invalid_argument("bin sets: gap before stream " +
                                  std::to_string(r) + " (bins " +
                                  std::to_string(offset) + ".." +
                                  std::to_string(bins.front() - 1) +
                                  " uncovered)");
    }
    offset += size;
    sizes.push_back(size);
  }
  return BinAllocation(n, std::move(sizes));
}

std::uint32_t bit_reversal_map(int n, std::uint32_t subcarrier) {
  if (n < 1 || n > 30) {
    throw std::invalid_argument("bit reversal: n out of range");
  }
  if (subcarrier >= (std::uint32_t{1} << n)) {
    throw std::invalid_argument("bit reversal: index " +
                                std::to_string(subcarrier) +
                                " out of range for n=" + std::to_string(n));
  }
  std::uint32_t out = 0;
  for (int b = 0; b < n; ++b) {
    out = (out << 1) | ((subcarrier >> b) & 1u);
  }
  return out;
}

namespace {

SplittingTree build_tree_rec(std::span<const std::uint32_t> sizes,
                             std::uint32_t total) {
  SplittingTree node;
  node.size = total;
  if (sizes.size() == 1) return node;  // leaf: sizes[0] == total
  const std::uint32_t half = total / 2;
  std::uint32_t acc = 0;
  std::size_t split = 0;
  while (acc < half) acc += sizes[split++];
  node.children.push_back(build_tree_rec(sizes.first(split), half));
  node.children.push_back(build_tree_rec(sizes.subspan(split), half));
  return node;
}

void collect_leaves(const SplittingTree& t, std::vector<std::uint32_t>& out) {
  if (t.is_leaf()) {
    out.push_back(t.size);
    return;
  }
  for (const auto& c : t.children) collect_leaves(c, out);
}

// Canonical leaf sequence of the block sizes[...] totalling `total`.
std::vector<std::uint32_t> canon_rec(std::span<const std::uint32_t> sizes,
                                     std::uint32_t total) {
  if (sizes.size() == 1) return {sizes[0]};
  const std::uint32_t half = total / 2;
  std::uint32_t acc = 0;
  std::size_t split = 0;
  while (acc < half) acc += sizes[split++];
  std::vector<std::uint32_t> left = canon_rec(sizes.first(split), half);
  std::vector<std::uint32_t> right = canon_rec(sizes.subspan(split), half);
  const bool swap =
      left.size() > right.size() ||
      (left.size() == right.size() &&
       std::lexicographical_compare(right.begin(), right.end(), left.begin(),
                                    left.end()));
  if (swap) left.swap(right);
  left.insert(left.end(), right.begin(), right.end());
  return left;
}

}  // namespace

std::vector<std::uint32_t> SplittingTree::leaf_sizes() const {
  std::vector<std::uint32_t> out;
  collect_leaves(*this, out);
  return out;
}

SplittingTree build_splitting_tree(const BinAllocation& alloc) {
  return build_tree_rec(std::span(alloc.sizes()), alloc.bin_count());
}

BinAllocation canonicalize(const BinAllocation& alloc) {
  return BinAllocation(alloc.log2_bins(),
                       canon_rec(std::span(alloc.sizes()), alloc.bin_count()));
}

bool is_isomorphic(const BinAllocation& a, const BinAllocation& b) {
  if (a.log2_bins() != b.log2_bins()) {
    throw std::invalid_argument("is_isomorphic: mismatched n (" +
                                std::to_string(a.log2_bins()) + " vs " +
                                std::to_string(b.log2_bins()) + ")");
  }
  return canonicalize(a).sizes() == canonicalize(b).sizes();
}

}  // namespace mpsfft
