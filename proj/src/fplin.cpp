#include "frattini/fplin.hpp"

#include <string>
#include <utility>

#include "frattini/error.hpp"

namespace frattini {

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::uint64_t next_prime_above(std::uint64_t n) noexcept {
  std::uint64_t c = n + 1;
  while (!is_prime(c)) ++c;
  return c;
}

Prime::Prime(std::int64_t value) {
  if (value < 3 || value >= (std::int64_t{1} << 31)) {
    throw InvalidArgument("prime must be an odd prime in [3, 2^31), got " + std::to_string(value));
  }
  if (!is_prime(static_cast<std::uint64_t>(value))) {
    throw InvalidArgument(std::to_string(value) + " is not prime");
  }
  value_ = static_cast<std::uint32_t>(value);
}

std::uint32_t Prime::inv(std::uint32_t a) const {
  if (a % value_ == 0) throw InvalidArgument("zero has no inverse");
  // Fermat: a^(p-2).
  std::uint64_t result = 1, base = a % value_, e = value_ - 2;
  while (e > 0) {
    if (e & 1) result = result * base % value_;
    base = base * base % value_;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

FpMatrix::FpMatrix(std::size_t rows, std::size_t cols, Prime p)
    : rows_(rows), cols_(cols), p_(p), data_(rows * cols, 0) {}

FpMatrix FpMatrix::identity(std::size_t n, Prime p) {
  FpMatrix m(n, n, p);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1;
  return m;
}

FpMatrix FpMatrix::from_rows(const std::vector<std::vector<std::int64_t>>& rows, Prime p) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  FpMatrix m(rows.size(), cols, p);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw InvalidArgument("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rows[r][c]);
  }
  return m;
}

bool FpMatrix::is_zero() const noexcept {
  for (auto v : data_) {
    if (v != 0) return false;
  }
  return true;
}

FpMatrix operator*(const FpMatrix& a, const FpMatrix& b) {
  if (a.cols() != b.rows() || a.prime() != b.prime()) throw InvalidArgument("matrix shape mismatch");
  const Prime p = a.prime();
  FpMatrix out(a.rows(), b.cols(), p);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto orow = out.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const std::uint64_t f = a.at(i, k);
      if (f == 0) continue;
      auto brow = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) {
        orow[j] = static_cast<std::uint32_t>((orow[j] + f * brow[j]) % p.value());
      }
    }
  }
  return out;
}

FpVector operator*(const FpMatrix& m, std::span<const std::uint32_t> v) {
  if (v.size() != m.cols()) throw InvalidArgument("vector length mismatch");
  const Prime p = m.prime();
  FpVector out(m.rows(), 0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::uint64_t acc = 0;
    auto row = m.row(i);
    for (std::size_t j = 0; j < m.cols(); ++j) acc = (acc + std::uint64_t{row[j]} * v[j]) % p.value();
    out[i] = static_cast<std::uint32_t>(acc);
  }
  return out;
}

namespace {

// row -= factor * pivot_row on [from, end).
void axpy(std::span<std::uint32_t> row, std::span<const std::uint32_t> pivot_row, std::uint32_t factor,
          std::size_t from, Prime p) {
  const std::uint64_t f = p.neg(factor);
  const std::uint64_t mod = p.value();
  for (std::size_t j = from; j < row.size(); ++j) {
    if (pivot_row[j] != 0) row[j] = static_cast<std::uint32_t>((row[j] + f * pivot_row[j]) % mod);
  }
}

void scale(std::span<std::uint32_t> row, std::uint32_t factor, std::size_t from, Prime p) {
  for (std::size_t j = from; j < row.size(); ++j) row[j] = p.mul(row[j], factor);
}

// Gaussian elimination in place. Pivots are chosen column by column, taking the
// first row (from the current pivot row down) with a nonzero entry. With
// `reduced` the result is the reduced row echelon form. Returns pivot columns.
std::vector<std::size_t> eliminate(FpMatrix& m, bool reduced) {
  const Prime p = m.prime();
  std::vector<std::size_t> pivots;
  std::size_t prow = 0;
  for (std::size_t c = 0; c < m.cols() && prow < m.rows(); ++c) {
    std::size_t found = m.rows();
    for (std::size_t r = prow; r < m.rows(); ++r) {
      if (m.at(r, c) != 0) {
        found = r;
        break;
      }
    }
    if (found == m.rows()) continue;
    if (found != prow) {
      auto a = m.row(found);
      auto b = m.row(prow);
      for (std::size_t j = c; j < m.cols(); ++j) std::swap(a[j], b[j]);
    }
    auto pivot_row = m.row(prow);
    scale(pivot_row, p.inv(pivot_row[c]), c, p);
    const std::size_t start = reduced ? 0 : prow + 1;
    for (std::size_t r = start; r < m.rows(); ++r) {
      if (r == prow) continue;
      const auto f = m.at(r, c);
      if (f != 0) axpy(m.row(r), pivot_row, f, c, p);
    }
    pivots.push_back(c);
    ++prow;
  }
  return pivots;
}

}  // namespace

std::size_t rank(const FpMatrix& m) {
  FpMatrix work = m;
  return eliminate(work, false).size();
}

RowEchelon row_reduce(const FpMatrix& m) {
  FpMatrix work = m;
  auto pivots = eliminate(work, true);
  return {std::move(work), std::move(pivots)};
}

std::vector<FpVector> kernel_basis(const FpMatrix& m) {
  FpMatrix work = m;
  const auto pivots = eliminate(work, true);
  const Prime p = m.prime();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;

  std::vector<FpVector> basis;
  basis.reserve(m.cols() - pivots.size());
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    FpVector v(m.cols(), 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = p.neg(work.at(i, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<FpVector> quotient_representatives(std::span<const FpVector> cycles,
                                               std::span<const FpVector> boundaries, Prime p) {
  std::size_t dim = 0;
  if (!cycles.empty()) {
    dim = cycles.front().size();
  } else if (!boundaries.empty()) {
    dim = boundaries.front().size();
  }
  EchelonBasis cycle_span(dim, p);
  for (const auto& z : cycles) {
    if (z.size() != dim) throw InvalidArgument("cycle vectors of unequal length");
    cycle_span.insert(z);
  }
  EchelonBasis quotient(dim, p);
  for (std::size_t i = 0; i < boundaries.size(); ++i) {
    if (boundaries[i].size() != dim) throw InvalidArgument("boundary vectors of unequal length");
    if (!cycle_span.contains(boundaries[i])) {
      throw BoundaryNotCycle("boundary vector " + std::to_string(i) + " lies outside the span of the cycles");
    }
    quotient.insert(boundaries[i]);
  }
  std::vector<FpVector> reps;
  for (const auto& z : cycles) {
    if (quotient.insert(z)) reps.push_back(z);
  }
  return reps;
}

EchelonBasis::EchelonBasis(std::size_t dim, Prime p, std::size_t tag_count)
    : dim_(dim), p_(p), tag_count_(tag_count) {}

bool EchelonBasis::reduce(FpVector& v) const {
  if (v.size() != dim_) throw InvalidArgument("vector length does not match echelon basis");
  bool zero = true;
  for (const auto& row : rows_) {
    const auto f = v[row.pivot];
    if (f != 0) axpy(v, row.values, f, row.pivot, p_);
  }
  for (auto x : v) {
    if (x != 0) {
      zero = false;
      break;
    }
  }
  return zero;
}

bool EchelonBasis::reduce(FpVector& v, FpVector& tag_coords) const {
  if (v.size() != dim_) throw InvalidArgument("vector length does not match echelon basis");
  tag_coords.assign(tag_count_, 0);
  for (const auto& row : rows_) {
    const auto f = v[row.pivot];
    if (f == 0) continue;
    axpy(v, row.values, f, row.pivot, p_);
    // v = f * row + rest, and row = sum tags * inputs.
    for (std::size_t t = 0; t < tag_count_; ++t) {
      tag_coords[t] = p_.add(tag_coords[t], p_.mul(f, row.tags[t]));
    }
  }
  for (auto x : v) {
    if (x != 0) return false;
  }
  return true;
}

bool EchelonBasis::insert(FpVector v) { return insert_impl(std::move(v), FpVector(tag_count_, 0)); }

bool EchelonBasis::insert_tagged(FpVector v, std::size_t tag) {
  if (tag >= tag_count_) throw IndexOutOfRange("echelon tag out of range");
  FpVector tags(tag_count_, 0);
  tags[tag] = 1;
  return insert_impl(std::move(v), std::move(tags));
}

bool EchelonBasis::insert_impl(FpVector v, FpVector tags) {
  if (v.size() != dim_) throw InvalidArgument("vector length does not match echelon basis");
  for (const auto& row : rows_) {
    const auto f = v[row.pivot];
    if (f == 0) continue;
    axpy(v, row.values, f, row.pivot, p_);
    for (std::size_t t = 0; t < tag_count_; ++t) tags[t] = p_.sub(tags[t], p_.mul(f, row.tags[t]));
  }
  std::size_t pivot = dim_;
  for (std::size_t j = 0; j < dim_; ++j) {
    if (v[j] != 0) {
      pivot = j;
      break;
    }
  }
  if (pivot == dim_) return false;
  const auto s = p_.inv(v[pivot]);
  scale(v, s, pivot, p_);
  for (auto& t : tags) t = p_.mul(t, s);
  rows_.push_back({pivot, std::move(v), std::move(tags)});
  return true;
}

}  // namespace frattini
