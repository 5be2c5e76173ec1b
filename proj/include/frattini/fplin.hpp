#pragma once

// Exact linear algebra over a prime field F_p.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace frattini {

/// An odd prime below 2^31. Primality is checked by trial division.
class Prime {
 public:
  explicit Prime(std::int64_t value);

  std::uint32_t value() const noexcept { return value_; }
  operator std::uint32_t() const noexcept { return value_; }

  std::uint32_t reduce(std::int64_t x) const noexcept {
    auto r = x % static_cast<std::int64_t>(value_);
    return static_cast<std::uint32_t>(r < 0 ? r + value_ : r);
  }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept {
    std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<std::uint32_t>(s >= value_ ? s - value_ : s);
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const noexcept {
    return a >= b ? a - b : static_cast<std::uint32_t>(std::uint64_t{a} + value_ - b);
  }
  std::uint32_t neg(std::uint32_t a) const noexcept { return a == 0 ? 0 : value_ - a; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept {
    return static_cast<std::uint32_t>((std::uint64_t{a} * b) % value_);
  }
  /// Multiplicative inverse of a nonzero residue.
  std::uint32_t inv(std::uint32_t a) const;

  friend bool operator==(const Prime&, const Prime&) = default;

 private:
  std::uint32_t value_;
};

bool is_prime(std::uint64_t n) noexcept;

/// Smallest prime strictly greater than n.
std::uint64_t next_prime_above(std::uint64_t n) noexcept;

using FpVector = std::vector<std::uint32_t>;

/// Dense row-major matrix over F_p.
class FpMatrix {
 public:
  FpMatrix(std::size_t rows, std::size_t cols, Prime p);

  static FpMatrix identity(std::size_t n, Prime p);
  /// Rows may hold arbitrary integers; entries are reduced mod p. All rows must have equal length.
  static FpMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows, Prime p);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Prime prime() const noexcept { return p_; }

  std::uint32_t at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, std::int64_t value) { data_[r * cols_ + c] = p_.reduce(value); }

  std::span<const std::uint32_t> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<std::uint32_t> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

  bool is_zero() const noexcept;

  friend bool operator==(const FpMatrix&, const FpMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  Prime p_;
  std::vector<std::uint32_t> data_;
};

FpMatrix operator*(const FpMatrix& a, const FpMatrix& b);
FpVector operator*(const FpMatrix& m, std::span<const std::uint32_t> v);

std::size_t rank(const FpMatrix& m);

struct RowEchelon {
  FpMatrix matrix;                  // reduced row echelon form
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

/// Reduced row echelon form. Pivots are taken column by column, choosing the
/// first row at or below the current pivot row with a nonzero entry.
RowEchelon row_reduce(const FpMatrix& m);

/// Basis of the null space {v : m v = 0}: one vector per free column of the
/// reduced row echelon form, with a 1 in that column.
std::vector<FpVector> kernel_basis(const FpMatrix& m);

/// Vectors drawn from `cycles` that, together with `boundaries`, span
/// span(cycles); exactly dim span(cycles) - dim span(boundaries) of them.
/// Throws BoundaryNotCycle when a boundary lies outside span(cycles).
std::vector<FpVector> quotient_representatives(std::span<const FpVector> cycles,
                                               std::span<const FpVector> boundaries, Prime p);

/// Incrementally built echelon basis of a subspace of F_p^n.
///
/// Each stored row optionally carries a tag vector recording which tagged
/// inputs it was built from, so that reducing a vector also yields its
/// coordinates with respect to the tagged inputs.
class EchelonBasis {
 public:
  EchelonBasis(std::size_t dim, Prime p, std::size_t tag_count = 0);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t rank() const noexcept { return rows_.size(); }

  /// Reduces `v` in place against the basis; returns true if v was in the span.
  bool reduce(FpVector& v) const;
  /// As reduce(), and accumulates the tag coordinates v = sum tag_i * input_i + rest.
  bool reduce(FpVector& v, FpVector& tag_coords) const;

  bool contains(FpVector v) const { return reduce(v); }

  /// Adds `v` (untagged); returns false if it was already in the span.
  bool insert(FpVector v);
  /// Adds `v` tagged as input number `tag`.
  bool insert_tagged(FpVector v, std::size_t tag);

 private:
  struct Row {
    std::size_t pivot;
    FpVector values;
    FpVector tags;
  };
  bool insert_impl(FpVector v, FpVector tags);

  std::size_t dim_;
  Prime p_;
  std::size_t tag_count_;
  std::vector<Row> rows_;
};

}  // namespace frattini
