#pragma once

// Poincare polynomials q(t) and series q(t) / (1 - t^2)^v with exact integer coefficients.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace frattini {

using BigInt = boost::multiprecision::cpp_int;

class BettiTable;

class PoincarePolynomial {
 public:
  PoincarePolynomial() = default;
  /// Trailing zeros are trimmed. Throws InvalidArgument on a negative coefficient.
  explicit PoincarePolynomial(std::vector<BigInt> coefficients);
  static PoincarePolynomial from_dims(std::span<const std::uint64_t> dims);

  const std::vector<BigInt>& coefficients() const noexcept { return coefficients_; }
  /// Coefficient of t^d (zero beyond the degree).
  BigInt operator[](std::size_t d) const { return d < coefficients_.size() ? coefficients_[d] : BigInt(0); }
  bool is_zero() const noexcept { return coefficients_.empty(); }
  /// Degree of the polynomial; 0 for the zero polynomial.
  std::size_t degree() const noexcept { return coefficients_.empty() ? 0 : coefficients_.size() - 1; }
  BigInt evaluate(const BigInt& t) const;

  std::string to_string() const;
  friend bool operator==(const PoincarePolynomial&, const PoincarePolynomial&) = default;

 private:
  std::vector<BigInt> coefficients_;
};

/// q(t) / (1 - t^2)^v.
struct PoincareSeries {
  PoincarePolynomial numerator;
  std::size_t denominator_exponent = 0;
};

PoincarePolynomial from_betti(const BettiTable& table);

/// The first n + 1 coefficients of the series.
std::vector<BigInt> expand(const PoincareSeries& series, std::size_t n);

/// Multiplies a truncated power series by (1 - t^2)^v, keeping degrees 0..n.
std::vector<BigInt> multiply_by_denominator(std::span<const BigInt> coefficients, std::size_t v, std::size_t n);

struct SeriesChecks {
  bool palindrome = false;    // q_d = q_{w+r-d}
  bool euler_zero = false;    // q(-1) = 0; vacuously true when w = 0
  bool degree_match = false;  // deg q = w + r
  bool all() const noexcept { return palindrome && euler_zero && degree_match; }
};

SeriesChecks checks(const PoincarePolynomial& q, std::size_t w, std::size_t r);

}  // namespace frattini
