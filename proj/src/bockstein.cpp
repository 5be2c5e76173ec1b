#include "frattini/bockstein.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <random>
#include <tuple>

#include "frattini/error.hpp"
#include "frattini/extalg.hpp"

namespace frattini {

namespace {

std::size_t generator_count(std::size_t n) { return n * (n + 1) / 2; }

// Sign of x_a * x_b for exterior masks a, b (0 if they overlap).
int ext_sign(std::uint64_t a, std::uint64_t b) { return merge_sign(Monomial{a, 0}, Monomial{b, 0}); }

struct Pair {
  std::size_t i, j;  // 1-based, i < j
};

std::vector<Pair> pair_table(std::size_t n) {
  std::vector<Pair> out;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = i + 1; j <= n; ++j) out.push_back({i, j});
  }
  return out;
}

std::string generator_name(std::size_t n, std::size_t g) {
  if (g < n) return std::to_string(g + 1);
  const auto pr = pair_table(n)[g - n];
  return std::to_string(pr.i) + "_" + std::to_string(pr.j);
}

}  // namespace

std::size_t BigradedMonomial::degree() const noexcept {
  std::size_t d = static_cast<std::size_t>(std::popcount(exterior));
  for (auto e : exponents) d += 2 * std::size_t{e};
  return d;
}

std::strong_ordering operator<=>(const BigradedMonomial& a, const BigradedMonomial& b) noexcept {
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  // Larger exponent vectors first.
  if (auto c = b.exponents <=> a.exponents; c != 0) return c;
  return a.exterior <=> b.exterior;
}

std::size_t pair_generator(std::size_t n, std::size_t i, std::size_t j) {
  if (i < 1 || j > n || i >= j) throw IndexOutOfRange("pair (" + std::to_string(i) + "," + std::to_string(j) + ") invalid for n = " + std::to_string(n));
  return n + (i - 1) * n - (i - 1) * i / 2 + (j - i - 1);
}

BigradedElement::BigradedElement(std::size_t n, Prime p, bool restricted)
    : n_(n), p_(p), generators_(generator_count(n)), restricted_(restricted) {
  if (n < 1) throw InvalidArgument("bigraded model needs n >= 1");
  if (generators_ > 62) throw SizeLimitExceeded("bigraded model supports at most 62 exterior generators");
}

BigradedElement BigradedElement::one(std::size_t n, Prime p) {
  BigradedElement a(n, p);
  a.add_term({0, std::vector<std::uint16_t>(a.generators_, 0)}, 1);
  return a;
}

BigradedElement BigradedElement::x(std::size_t n, Prime p, std::size_t k) {
  if (k < 1 || k > n) throw IndexOutOfRange("x" + std::to_string(k) + " invalid for n = " + std::to_string(n));
  BigradedElement a(n, p);
  a.add_term({std::uint64_t{1} << (k - 1), std::vector<std::uint16_t>(a.generators_, 0)}, 1);
  return a;
}

BigradedElement BigradedElement::x(std::size_t n, Prime p, std::size_t i, std::size_t j) {
  BigradedElement a(n, p);
  a.add_term({std::uint64_t{1} << pair_generator(n, i, j), std::vector<std::uint16_t>(a.generators_, 0)}, 1);
  return a;
}

BigradedElement BigradedElement::zeta(std::size_t n, Prime p, std::size_t k) {
  if (k < 1 || k > n) throw IndexOutOfRange("z" + std::to_string(k) + " invalid for n = " + std::to_string(n));
  BigradedElement a(n, p);
  BigradedMonomial m{0, std::vector<std::uint16_t>(a.generators_, 0)};
  m.exponents[k - 1] = 1;
  a.add_term(m, 1);
  return a;
}

BigradedElement BigradedElement::zeta(std::size_t n, Prime p, std::size_t i, std::size_t j) {
  BigradedElement a(n, p);
  BigradedMonomial m{0, std::vector<std::uint16_t>(a.generators_, 0)};
  m.exponents[pair_generator(n, i, j)] = 1;
  a.add_term(m, 1);
  return a;
}

bool BigradedElement::is_homogeneous(std::size_t d) const noexcept {
  return std::all_of(terms_.begin(), terms_.end(), [d](const auto& t) { return t.first.degree() == d; });
}

void BigradedElement::add_term(const BigradedMonomial& m, std::uint32_t c) {
  if (m.exponents.size() != generators_ || (generators_ < 64 && (m.exterior >> generators_) != 0)) {
    throw IndexOutOfRange("monomial outside the bigraded model");
  }
  c %= p_.value();
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second = p_.add(it->second, c);
    if (it->second == 0) terms_.erase(it);
  }
}

void BigradedElement::check_compatible(const BigradedElement& other) const {
  if (n_ != other.n_ || !(p_ == other.p_) || restricted_ != other.restricted_) {
    throw AmbientMismatch("bigraded elements from different models");
  }
}

BigradedElement& BigradedElement::operator+=(const BigradedElement& other) {
  check_compatible(other);
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

BigradedElement& BigradedElement::operator-=(const BigradedElement& other) {
  check_compatible(other);
  for (const auto& [m, c] : other.terms_) add_term(m, p_.neg(c));
  return *this;
}

BigradedElement& BigradedElement::operator*=(std::int64_t scalar) {
  const auto s = p_.reduce(scalar);
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c = p_.mul(c, s);
  return *this;
}

BigradedElement BigradedElement::operator-() const {
  BigradedElement out = *this;
  out *= -1;
  return out;
}

BigradedElement multiply(const BigradedElement& a, const BigradedElement& b) {
  if (a.n() != b.n() || !(a.p() == b.p()) || a.restricted() != b.restricted()) {
    throw AmbientMismatch("bigraded elements from different models");
  }
  const Prime p = a.p();
  BigradedElement out(a.n(), p);
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      const int s = ext_sign(ma.exterior, mb.exterior);
      if (s == 0) continue;
      BigradedMonomial m{ma.exterior | mb.exterior, ma.exponents};
      for (std::size_t g = 0; g < m.exponents.size(); ++g) m.exponents[g] += mb.exponents[g];
      const auto c = p.mul(ca, cb);
      out.add_term(m, s > 0 ? c : p.neg(c));
    }
  }
  return a.restricted() ? restrict_to_unp(out) : out;
}

BigradedElement bockstein(const BigradedElement& a) {
  const Prime p = a.p();
  if (p.value() <= 3) throw PrimeTooSmall("the Bockstein formulas are stated for p > 3, got p = " + std::to_string(p.value()));
  const std::size_t n = a.n();
  const auto pairs = pair_table(n);
  BigradedElement out(n, p);
  for (const auto& [m, c] : a.terms()) {
    // Polynomial part: sum_g alpha_g zeta^(alpha - e_g) beta(zeta_g) x_I.
    for (std::size_t g = n; g < m.exponents.size(); ++g) {
      if (m.exponents[g] == 0) continue;
      const auto [i, j] = pairs[g - n];
      const auto mult = p.mul(c, p.reduce(m.exponents[g]));
      // zeta_i x_j - zeta_j x_i
      for (const auto& [zeta_index, x_index, positive] :
           {std::tuple{i, j, true}, std::tuple{j, i, false}}) {
        const std::uint64_t xbit = std::uint64_t{1} << (x_index - 1);
        const int s = ext_sign(xbit, m.exterior);
        if (s == 0) continue;
        BigradedMonomial t{m.exterior | xbit, m.exponents};
        --t.exponents[g];
        ++t.exponents[zeta_index - 1];
        const bool negative = (s < 0) != !positive;
        out.add_term(t, negative ? p.neg(mult) : mult);
      }
    }
    // Exterior part: sum_m (-1)^(m-1) x_{g_1} .. beta(x_{g_m}) .. with beta(x_{i,j}) = -x_i x_j.
    std::size_t position = 0;
    for (std::uint64_t bits = m.exterior; bits != 0; bits &= bits - 1, ++position) {
      const auto g = static_cast<std::size_t>(std::countr_zero(bits));
      if (g < n) continue;
      const auto [i, j] = pairs[g - n];
      const std::uint64_t rest = m.exterior & ~(std::uint64_t{1} << g);
      const std::uint64_t xij = (std::uint64_t{1} << (i - 1)) | (std::uint64_t{1} << (j - 1));
      const int s = ext_sign(xij, rest);
      if (s == 0) continue;
      // (-1)^position from moving beta past the earlier factors, -1 from the formula.
      const bool negative = ((position & 1) == 0) == (s > 0);
      out.add_term({xij | rest, m.exponents}, negative ? p.neg(c) : c);
    }
  }
  return a.restricted() ? restrict_to_unp(out) : out;
}

BigradedElement restrict_to_unp(const BigradedElement& a) {
  BigradedElement out(a.n(), a.p(), true);
  const std::uint64_t plain = (std::uint64_t{1} << a.n()) - 1;
  for (const auto& [m, c] : a.terms()) {
    if ((m.exterior & ~plain) != 0) continue;      // x_{i,j} restricts to zero
    if (std::popcount(m.exterior & plain) >= 2) continue;  // x_i x_j = 0
    out.terms_.emplace(m, c);
  }
  return out;
}

std::string format_bigraded(const BigradedElement& a) {
  if (a.is_zero()) return "0";
  const std::uint32_t p = a.p().value();
  const char zeta = a.restricted() ? 's' : 'z';
  std::string out;
  for (const auto& [m, c] : a.terms()) {
    const bool negative = c > p / 2;
    const std::uint32_t magnitude = negative ? p - c : c;
    if (out.empty()) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    std::vector<std::string> factors;
    for (std::size_t g = 0; g < m.exponents.size(); ++g) {
      if (m.exponents[g] == 0) continue;
      std::string f = zeta + generator_name(a.n(), g);
      if (m.exponents[g] > 1) f += "^" + std::to_string(m.exponents[g]);
      factors.push_back(std::move(f));
    }
    for (std::uint64_t bits = m.exterior; bits != 0; bits &= bits - 1) {
      factors.push_back("x" + generator_name(a.n(), static_cast<std::size_t>(std::countr_zero(bits))));
    }
    if (factors.empty() || magnitude != 1) factors.insert(factors.begin(), std::to_string(magnitude));
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (i > 0) out += '*';
      out += factors[i];
    }
  }
  return out;
}

namespace {

class BigradedParser {
 public:
  BigradedParser(std::string_view text, std::size_t n, Prime p) : text_(text), n_(n), p_(p) {}

  BigradedElement parse() {
    BigradedElement out(n_, p_);
    skip_ws();
    std::int64_t sign = 1;
    if (peek() == '+' || peek() == '-') {
      sign = get() == '-' ? -1 : 1;
      skip_ws();
    }
    out += term(sign);
    skip_ws();
    while (pos_ < text_.size()) {
      const char c = get();
      if (c != '+' && c != '-') throw SyntaxError("expected '+' or '-'", pos_ - 1);
      skip_ws();
      out += term(c == '-' ? -1 : 1);
      skip_ws();
    }
    return restricted_ ? restrict_to_unp(out) : out;
  }

 private:
  BigradedElement term(std::int64_t sign) {
    auto value = BigradedElement::one(n_, p_);
    value *= sign;
    bool have_coeff = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      value *= static_cast<std::int64_t>(number() % p_.value());
      have_coeff = true;
      skip_ws();
      if (peek() == '*') {
        ++pos_;
        skip_ws();
      } else if (!is_factor_start()) {
        return value;
      }
    }
    if (!is_factor_start()) {
      if (!have_coeff) throw SyntaxError("expected a coefficient or a factor z/s/x", pos_);
      throw SyntaxError("expected a factor after '*'", pos_);
    }
    value = multiply(value, factor());
    skip_ws();
    while (peek() == '*') {
      ++pos_;
      skip_ws();
      value = multiply(value, factor());
      skip_ws();
    }
    return value;
  }

  bool is_factor_start() const { return peek() == 'z' || peek() == 's' || peek() == 'x'; }

  BigradedElement factor() {
    const std::size_t start = pos_;
    const char kind = get();
    if (kind == 's') restricted_ = true;
    if (!std::isdigit(static_cast<unsigned char>(peek()))) throw SyntaxError("expected an index", pos_);
    const auto i = number();
    std::uint64_t j = 0;
    if (peek() == '_') {
      ++pos_;
      if (!std::isdigit(static_cast<unsigned char>(peek()))) throw SyntaxError("expected a second index", pos_);
      j = number();
    }
    std::uint64_t power = 1;
    skip_ws();
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      if (!std::isdigit(static_cast<unsigned char>(peek()))) throw SyntaxError("expected an exponent", pos_);
      power = number();
      if (kind == 'x' && power > 1) return BigradedElement(n_, p_);  // odd generators square to zero
    }
    if (i < 1 || i > n_ || (j != 0 && (j <= i || j > n_))) {
      throw IndexOutOfRange("generator index out of range at position " + std::to_string(start));
    }
    BigradedElement g = kind == 'x' ? (j == 0 ? BigradedElement::x(n_, p_, i) : BigradedElement::x(n_, p_, i, j))
                                    : (j == 0 ? BigradedElement::zeta(n_, p_, i) : BigradedElement::zeta(n_, p_, i, j));
    auto result = BigradedElement::one(n_, p_);
    for (std::uint64_t k = 0; k < power; ++k) result = multiply(result, g);
    return result;
  }

  std::uint64_t number() {
    std::uint64_t v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + static_cast<std::uint64_t>(get() - '0');
      if (v > 1'000'000'000'000ULL) throw SyntaxError("number too large", pos_);
    }
    return v;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  char get() { return pos_ < text_.size() ? text_[pos_++] : '\0'; }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string_view text_;
  std::size_t n_;
  Prime p_;
  std::size_t pos_ = 0;
  bool restricted_ = false;
};

// Exponent vectors over `count` variables with total exactly `total`.
void exponent_vectors(std::size_t count, std::size_t total, std::vector<std::uint16_t>& current, std::size_t index,
                      std::vector<std::vector<std::uint16_t>>& out) {
  if (index + 1 == count) {
    current[index] = static_cast<std::uint16_t>(total);
    out.push_back(current);
    current[index] = 0;
    return;
  }
  for (std::size_t k = 0; k <= total; ++k) {
    current[index] = static_cast<std::uint16_t>(k);
    exponent_vectors(count, total - k, current, index + 1, out);
  }
  current[index] = 0;
}

}  // namespace

BigradedElement parse_bigraded(std::string_view text, std::size_t n, Prime p) { return BigradedParser(text, n, p).parse(); }

std::vector<BigradedMonomial> bigraded_monomials(std::size_t n, std::size_t max_degree) {
  const std::size_t count = generator_count(n);
  std::vector<BigradedMonomial> out;
  for (std::size_t e = 0; e <= std::min(max_degree, count); ++e) {
    std::vector<std::uint64_t> masks;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << count); ++mask) {
      if (static_cast<std::size_t>(std::popcount(mask)) == e) masks.push_back(mask);
    }
    for (std::size_t k = 0; e + 2 * k <= max_degree; ++k) {
      std::vector<std::vector<std::uint16_t>> exps;
      std::vector<std::uint16_t> current(count, 0);
      exponent_vectors(count, k, current, 0, exps);
      for (auto mask : masks) {
        for (const auto& ex : exps) out.push_back({mask, ex});
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

DifferentialReport verify_differential(std::size_t n, Prime p, std::size_t max_degree, std::uint64_t seed,
                                       std::uint64_t leibniz_pairs) {
  DifferentialReport rep;
  rep.n = n;
  rep.p = p.value();
  rep.max_degree = max_degree;
  const auto monomials = bigraded_monomials(n, max_degree);
  constexpr std::size_t kMaxWitnesses = 20;
  for (const auto& m : monomials) {
    BigradedElement a(n, p);
    a.add_term(m, 1);
    const auto b = bockstein(a);
    if (!b.is_homogeneous(m.degree() + 1)) ++rep.degree_violations;
    const auto bb = bockstein(b);
    if (!bb.is_zero() && rep.square_violations.size() < kMaxWitnesses) rep.square_violations.push_back(format_bigraded(a));
    ++rep.monomials_checked;
  }

  // Random homogeneous pairs: sums of up to three monomials of one degree.
  std::vector<std::vector<const BigradedMonomial*>> by_degree(max_degree + 1);
  for (const auto& m : monomials) by_degree[m.degree()].push_back(&m);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> coeff(1, p.value() - 1);
  auto random_homogeneous = [&](std::size_t d) {
    BigradedElement a(n, p);
    const auto& pool = by_degree[d];
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::uniform_int_distribution<int> terms(1, 3);
    for (int t = terms(rng); t > 0; --t) a.add_term(*pool[pick(rng)], coeff(rng));
    return a;
  };
  std::uniform_int_distribution<std::size_t> degree_pick(0, max_degree);
  for (std::uint64_t i = 0; i < leibniz_pairs; ++i) {
    const std::size_t da = degree_pick(rng);
    const std::size_t db = std::uniform_int_distribution<std::size_t>(0, max_degree - da)(rng);
    if (by_degree[da].empty() || by_degree[db].empty()) continue;
    const auto a = random_homogeneous(da);
    const auto b = random_homogeneous(db);
    auto lhs = bockstein(multiply(a, b));
    auto rhs = multiply(bockstein(a), b);
    auto second = multiply(a, bockstein(b));
    if (da % 2 == 1) second *= -1;
    rhs += second;
    ++rep.leibniz_pairs_checked;
    if (!(lhs == rhs) && rep.leibniz_violations.size() < kMaxWitnesses) {
      rep.leibniz_violations.push_back(format_bigraded(a) + " | " + format_bigraded(b));
    }
  }
  return rep;
}

}  // namespace frattini
