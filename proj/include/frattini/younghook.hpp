#pragma once

// Betti numbers of the free two-step nilpotent group H(n) from self-conjugate
// Young diagrams and the hook-content formula. Prime-free; used as an
// independent check on the Koszul computation for U(n, p).

#include <cstddef>
#include <cstdint>
#include <vector>

#include "frattini/series.hpp"

namespace frattini {

inline constexpr std::size_t kDefaultMaxUnpRank = 8;

class SelfConjugatePartition {
 public:
  /// Throws InvalidArgument unless `parts` is weakly decreasing, positive and self-conjugate.
  explicit SelfConjugatePartition(std::vector<std::size_t> parts);

  const std::vector<std::size_t>& parts() const noexcept { return parts_; }
  std::size_t size() const noexcept { return size_; }
  /// Number of cells (i, i).
  std::size_t diagonal() const noexcept { return diagonal_; }
  std::size_t rows() const noexcept { return parts_.size(); }
  /// Hook length of cell (s, t), 1-based.
  std::size_t hook_length(std::size_t s, std::size_t t) const;

  friend bool operator==(const SelfConjugatePartition&, const SelfConjugatePartition&) = default;

 private:
  std::vector<std::size_t> parts_;
  std::size_t size_ = 0;
  std::size_t diagonal_ = 0;
};

/// Transpose of a partition given as weakly decreasing parts.
std::vector<std::size_t> conjugate(const std::vector<std::size_t>& parts);

/// Every self-conjugate partition of `size` with `diagonal` diagonal cells,
/// built from its diagonal hooks (distinct odd parts), largest hooks first.
std::vector<SelfConjugatePartition> enumerate_self_conjugate(std::size_t size, std::size_t diagonal);

/// prod over cells (s, t) of (n + t - s) / h(s, t). Throws NonIntegerResult if
/// the product is not an integer, which would indicate a bug.
BigInt hook_content_dimension(const SelfConjugatePartition& lambda, std::size_t n);

/// a_0..a_m, m = C(n+1, 2): a_i sums the hook-content dimensions of all
/// self-conjugate diagrams with f + 2g cells and f diagonal cells, f + g = i.
std::vector<std::uint64_t> unp_betti(std::size_t n, std::size_t max_n = kDefaultMaxUnpRank);

}  // namespace frattini
