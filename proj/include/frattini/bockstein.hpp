#pragma once

// The free bigraded model F_p[zeta_k, zeta_{i,j}] (x) Lambda(x_k, x_{i,j}) of
// H*(G(h(n)); F_p), with the Bockstein as a degree +1 derivation, and its
// quotient describing H*(U(n, p)) where x_{i,j} = 0 and x_i x_j = 0.
//
// Generators are numbered 0..N-1 with N = C(n+1, 2): first the n single
// indices k, then the pairs (i, j), i < j, lexicographically. Text form uses
// z1, z1_2 for zeta (s1, s1_2 after restriction) and x1, x1_2.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "frattini/fplin.hpp"

namespace frattini {

struct BigradedMonomial {
  std::uint64_t exterior = 0;            // bit g <-> x_g
  std::vector<std::uint16_t> exponents;  // exponent of zeta_g

  std::size_t degree() const noexcept;
  friend bool operator==(const BigradedMonomial&, const BigradedMonomial&) = default;
  /// Display order: degree, then zeta exponents descending, then exterior part ascending.
  friend std::strong_ordering operator<=>(const BigradedMonomial& a, const BigradedMonomial& b) noexcept;
};

class BigradedElement {
 public:
  using Terms = std::map<BigradedMonomial, std::uint32_t>;

  BigradedElement(std::size_t n, Prime p, bool restricted = false);

  static BigradedElement one(std::size_t n, Prime p);
  static BigradedElement x(std::size_t n, Prime p, std::size_t k);
  static BigradedElement x(std::size_t n, Prime p, std::size_t i, std::size_t j);
  static BigradedElement zeta(std::size_t n, Prime p, std::size_t k);
  static BigradedElement zeta(std::size_t n, Prime p, std::size_t i, std::size_t j);

  std::size_t n() const noexcept { return n_; }
  Prime p() const noexcept { return p_; }
  /// Number of generators of each kind, C(n+1, 2).
  std::size_t generators() const noexcept { return generators_; }
  /// True for elements of the U(n, p) quotient (printed with s for zeta).
  bool restricted() const noexcept { return restricted_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_homogeneous(std::size_t d) const noexcept;

  void add_term(const BigradedMonomial& m, std::uint32_t c);

  BigradedElement& operator+=(const BigradedElement& other);
  BigradedElement& operator-=(const BigradedElement& other);
  BigradedElement& operator*=(std::int64_t scalar);
  friend BigradedElement operator+(BigradedElement a, const BigradedElement& b) { return a += b; }
  friend BigradedElement operator-(BigradedElement a, const BigradedElement& b) { return a -= b; }
  friend BigradedElement operator*(std::int64_t s, BigradedElement a) { return a *= s; }
  BigradedElement operator-() const;

  friend bool operator==(const BigradedElement&, const BigradedElement&) = default;

 private:
  friend BigradedElement restrict_to_unp(const BigradedElement& a);
  void check_compatible(const BigradedElement& other) const;

  std::size_t n_;
  Prime p_;
  std::size_t generators_;
  bool restricted_;
  Terms terms_;
};

/// Generator number of the pair (i, j), 1 <= i < j <= n.
std::size_t pair_generator(std::size_t n, std::size_t i, std::size_t j);

/// Graded-commutative product (zeta even, x odd). Restricted inputs give a restricted result.
BigradedElement multiply(const BigradedElement& a, const BigradedElement& b);

/// beta(x_k) = 0, beta(x_{i,j}) = -x_i x_j, beta(zeta_k) = 0,
/// beta(zeta_{i,j}) = zeta_i x_j - zeta_j x_i, extended as a derivation.
/// Throws PrimeTooSmall for p <= 3.
BigradedElement bockstein(const BigradedElement& a);

/// Image in the U(n, p) quotient: drops terms containing x_{i,j} or a product x_i x_j.
BigradedElement restrict_to_unp(const BigradedElement& a);

std::string format_bigraded(const BigradedElement& a);

/// `term (('+'|'-') term)*`, `term := [coeff '*'?] factor ('*' factor)*`,
/// `factor := ('z'|'s'|'x') INT ['_' INT] ['^' INT]`. Using s yields a restricted element.
BigradedElement parse_bigraded(std::string_view text, std::size_t n, Prime p);

struct DifferentialReport {
  std::size_t n = 0;
  std::uint32_t p = 0;
  std::size_t max_degree = 0;
  std::uint64_t monomials_checked = 0;
  std::vector<std::string> square_violations;  // witnesses with beta(beta(m)) != 0
  std::uint64_t degree_violations = 0;         // beta(m) not homogeneous of degree |m| + 1
  std::uint64_t leibniz_pairs_checked = 0;
  std::vector<std::string> leibniz_violations;

  bool ok() const noexcept {
    return square_violations.empty() && leibniz_violations.empty() && degree_violations == 0;
  }
};

/// All monomials of total degree <= max_degree.
std::vector<BigradedMonomial> bigraded_monomials(std::size_t n, std::size_t max_degree);

/// Checks beta^2 = 0 on every monomial of degree <= max_degree and the graded
/// Leibniz rule on `leibniz_pairs` seeded random homogeneous pairs.
DifferentialReport verify_differential(std::size_t n, Prime p, std::size_t max_degree, std::uint64_t seed = 20240611,
                                       std::uint64_t leibniz_pairs = 2000);

}  // namespace frattini
