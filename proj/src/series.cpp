#include "frattini/series.hpp"

#include "frattini/error.hpp"
#include "frattini/koszul.hpp"

namespace frattini {

PoincarePolynomial::PoincarePolynomial(std::vector<BigInt> coefficients) : coefficients_(std::move(coefficients)) {
  for (const auto& c : coefficients_) {
    if (c < 0) throw InvalidArgument("Poincare polynomial coefficients must be nonnegative");
  }
  while (!coefficients_.empty() && coefficients_.back() == 0) coefficients_.pop_back();
}

PoincarePolynomial PoincarePolynomial::from_dims(std::span<const std::uint64_t> dims) {
  return PoincarePolynomial(std::vector<BigInt>(dims.begin(), dims.end()));
}

BigInt PoincarePolynomial::evaluate(const BigInt& t) const {
  BigInt acc = 0;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

std::string PoincarePolynomial::to_string() const {
  if (coefficients_.empty()) return "0";
  std::string out;
  for (std::size_t d = 0; d < coefficients_.size(); ++d) {
    const auto& c = coefficients_[d];
    if (c == 0) continue;
    if (!out.empty()) out += " + ";
    if (d == 0 || c != 1) out += c.str();
    if (d >= 1) out += "t";
    if (d >= 2) out += "^" + std::to_string(d);
  }
  return out;
}

PoincarePolynomial from_betti(const BettiTable& table) { return PoincarePolynomial::from_dims(table.dims()); }

std::vector<BigInt> expand(const PoincareSeries& series, std::size_t n) {
  std::vector<BigInt> out(n + 1, 0);
  const auto& q = series.numerator.coefficients();
  for (std::size_t d = 0; d < q.size() && d <= n; ++d) out[d] = q[d];
  // Each factor 1 / (1 - t^2) is a running sum with stride 2.
  for (std::size_t k = 0; k < series.denominator_exponent; ++k) {
    for (std::size_t d = 2; d <= n; ++d) out[d] += out[d - 2];
  }
  return out;
}

std::vector<BigInt> multiply_by_denominator(std::span<const BigInt> coefficients, std::size_t v, std::size_t n) {
  std::vector<BigInt> out(n + 1, 0);
  for (std::size_t d = 0; d < coefficients.size() && d <= n; ++d) out[d] = coefficients[d];
  for (std::size_t k = 0; k < v; ++k) {
    for (std::size_t d = n; d >= 2; --d) out[d] -= out[d - 2];
  }
  return out;
}

SeriesChecks checks(const PoincarePolynomial& q, std::size_t w, std::size_t r) {
  SeriesChecks c;
  const std::size_t top = w + r;
  c.degree_match = !q.is_zero() && q.degree() == top;
  c.palindrome = q.is_zero() || q.degree() <= top;
  for (std::size_t d = 0; c.palindrome && d <= top; ++d) c.palindrome = q[d] == q[top - d];
  c.euler_zero = w == 0 || q.evaluate(-1) == 0;
  return c;
}

}  // namespace frattini
