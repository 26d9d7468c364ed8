#pragma once

#include <cstdint>
#include <vector>

namespace mpsfft {

/// An ordered list of per-stream bin counts over N = 2^n bins.
///
/// Every stream size is a power of two, the sizes sum to exactly 2^n (fully
/// packed band), and stream r occupies the contiguous block of bins starting
/// at the sum of the preceding sizes. Block starts are always divisible by
/// the block size; the constructor rejects size lists whose implied blocks
/// would be misaligned, since those have no power-of-two splitting tree.
class BinAllocation {
 public:
  BinAllocation(int log2_bins, std::vector<std::uint32_t> sizes);

  /// Builds an allocation from explicit per-stream bin index sets.
  /// The sets must be contiguous aligned power-of-two blocks covering
  /// {0, ..., 2^n - 1} in order. Each defect (non-contiguous block,
  /// non-power-of-two size, misaligned block, gap/overlap) is reported
  /// with a distinct message.
  static BinAllocation from_bin_sets(
      const std::vector<std::vector<std::uint32_t>>& sets);

  int log2_bins() const { return n_; }
  std::uint32_t bin_count() const { return std::uint32_t{1} << n_; }
  const std::vector<std::uint32_t>& sizes() const { return sizes_; }
  std::size_t stream_count() const { return sizes_.size(); }

  /// First bin of stream r (prefix sum of the preceding sizes).
  std::uint32_t block_start(std::size_t r) const;

  friend bool operator==(const BinAllocation&, const BinAllocation&) = default;

 private:
  int n_;
  std::vector<std::uint32_t> sizes_;
};

/// Binary tree that recursively halves the band; leaf sizes read
/// left-to-right equal the allocation's stream sizes.
struct SplittingTree {
  std::uint32_t size = 0;
  std::vector<SplittingTree> children;  // empty (leaf) or exactly two

  bool is_leaf() const { return children.empty(); }
  std::vector<std::uint32_t> leaf_sizes() const;
};

/// n-bit reversal of a subcarrier index; an involution on {0, ..., 2^n - 1}.
std::uint32_t bit_reversal_map(int n, std::uint32_t subcarrier);

SplittingTree build_splitting_tree(const BinAllocation& alloc);

/// Unique representative of the allocation's isomorphism class, in
/// right-heavy normal form: at every internal node the subtree with more
/// leaves goes right; equal leaf counts are ordered with the
/// lexicographically smaller canonical leaf sequence on the left.
BinAllocation canonicalize(const BinAllocation& alloc);

/// True iff the two allocations' splitting trees differ only by subtree
/// swaps. Requires equal n.
bool is_isomorphic(const BinAllocation& a, const BinAllocation& b);

}  // namespace mpsfft
