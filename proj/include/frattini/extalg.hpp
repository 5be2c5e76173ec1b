#pragma once

// The graded-commutative algebra Lambda(e_1..e_w) (x) Lambda(x_1..x_r) over F_p.
// Every generator has degree 1. Monomials are ordered e-variables first, then
// x-variables, each by increasing index.

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "frattini/fplin.hpp"

namespace frattini {

inline constexpr std::size_t kMaxGenerators = 62;

struct Ambient {
  Ambient(std::size_t w, std::size_t r, Prime p);

  std::size_t w;
  std::size_t r;
  Prime p;

  std::size_t generators() const noexcept { return w + r; }
  friend bool operator==(const Ambient&, const Ambient&) = default;
};

/// A basis monomial e_S x_T stored as two index bitmasks (bit i-1 <-> index i).
struct Monomial {
  std::uint64_t e = 0;
  std::uint64_t x = 0;

  static Monomial e_var(std::size_t i) { return {std::uint64_t{1} << (i - 1), 0}; }
  static Monomial x_var(std::size_t i) { return {0, std::uint64_t{1} << (i - 1)}; }

  std::size_t degree() const noexcept { return std::popcount(e) + std::popcount(x); }
  std::size_t e_degree() const noexcept { return std::popcount(e); }
  std::size_t x_degree() const noexcept { return std::popcount(x); }

  friend bool operator==(const Monomial&, const Monomial&) = default;
  /// Basis order: by degree, then x-part as an integer, then e-part as an integer.
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) noexcept {
    if (auto c = a.degree() <=> b.degree(); c != 0) return c;
    if (auto c = a.x <=> b.x; c != 0) return c;
    return a.e <=> b.e;
  }
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept {
    return std::hash<std::uint64_t>{}(m.e * 0x9E3779B97F4A7C15ULL ^ m.x);
  }
};

/// Sign of the product a*b of two basis monomials: 0 if they share a
/// generator, otherwise (-1)^(inversions).
int merge_sign(const Monomial& a, const Monomial& b) noexcept;

/// Sparse element of the exterior algebra. Coefficients are stored in [1, p-1].
class ExtElement {
 public:
  using Terms = std::map<Monomial, std::uint32_t>;

  explicit ExtElement(const Ambient& ambient) : ambient_(ambient) {}

  static ExtElement one(const Ambient& ambient);
  static ExtElement e(const Ambient& ambient, std::size_t i);
  static ExtElement x(const Ambient& ambient, std::size_t i);
  static ExtElement monomial(const Ambient& ambient, const Monomial& m, std::int64_t coeff = 1);

  const Ambient& ambient() const noexcept { return ambient_; }
  const Terms& terms() const noexcept { return terms_; }
  std::uint32_t coefficient(const Monomial& m) const;

  bool is_zero() const noexcept { return terms_.empty(); }
  /// True when every term has degree d (the zero element is homogeneous of every degree).
  bool is_homogeneous(std::size_t d) const noexcept;

  /// Adds c * m. Throws IndexOutOfRange if m is outside the ambient.
  void add_term(const Monomial& m, std::uint32_t c);

  ExtElement& operator+=(const ExtElement& other);
  ExtElement& operator-=(const ExtElement& other);
  ExtElement& operator*=(std::int64_t scalar);

  friend ExtElement operator+(ExtElement a, const ExtElement& b) { return a += b; }
  friend ExtElement operator-(ExtElement a, const ExtElement& b) { return a -= b; }
  friend ExtElement operator*(std::int64_t s, ExtElement a) { return a *= s; }
  ExtElement operator-() const;

  friend bool operator==(const ExtElement&, const ExtElement&) = default;

 private:
  void check_ambient(const ExtElement& other) const;

  Ambient ambient_;
  Terms terms_;
};

ExtElement wedge(const ExtElement& a, const ExtElement& b);

/// Re-homes `element` into a larger (or equal) ambient with the same prime.
ExtElement embed(const ExtElement& element, const Ambient& target);

/// All monomials of total degree d, in basis order. Empty when d > w + r.
std::vector<Monomial> basis(std::size_t d, const Ambient& ambient);

/// The degree-d basis together with a reverse index, for converting
/// between elements and coordinate vectors.
class GradedBasis {
 public:
  GradedBasis(const Ambient& ambient, std::size_t degree);
  GradedBasis(const Ambient& ambient, std::size_t degree, std::vector<Monomial> monomials);

  const Ambient& ambient() const noexcept { return ambient_; }
  std::size_t degree() const noexcept { return degree_; }
  std::size_t size() const noexcept { return monomials_.size(); }
  const std::vector<Monomial>& monomials() const noexcept { return monomials_; }
  const Monomial& operator[](std::size_t i) const { return monomials_[i]; }

  /// Index of m, or size() if absent.
  std::size_t index_of(const Monomial& m) const;

  /// Coordinates of a homogeneous element; throws if it has a term outside this basis.
  FpVector to_vector(const ExtElement& element) const;
  ExtElement from_vector(std::span<const std::uint32_t> coords) const;

 private:
  Ambient ambient_;
  std::size_t degree_;
  std::vector<Monomial> monomials_;
  std::unordered_map<Monomial, std::size_t, MonomialHash> index_;
};

/// Parses `term (('+'|'-') term)*` with `term := [coeff] factor ('^' factor)*`
/// and `factor := 'e'INT | 'x'INT`. A bare integer term denotes a multiple of 1.
ExtElement parse_element(std::string_view text, const Ambient& ambient);

/// Canonical text form: terms in basis order, coefficients as the signed
/// representative of least magnitude, "0" for the zero element.
std::string format_element(const ExtElement& element);

std::string format_monomial(const Monomial& m);

/// A degree-2 element of Lambda(e_1..e_w): every term is e_i e_j.
class QuadraticForm {
 public:
  /// Throws InvalidArgument if `element` has a term that is not a product of two e's.
  explicit QuadraticForm(ExtElement element);

  const ExtElement& element() const noexcept { return element_; }
  friend bool operator==(const QuadraticForm&, const QuadraticForm&) = default;

 private:
  ExtElement element_;
};

}  // namespace frattini
