#include "frattini/extalg.hpp"

#include <algorithm>
#include <cctype>

#include "frattini/error.hpp"

namespace frattini {

namespace {

std::uint64_t low_mask(std::size_t bits) {
  return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

// All masks over `bits` positions with exactly k set bits, increasing.
std::vector<std::uint64_t> combinations(std::size_t bits, std::size_t k) {
  std::vector<std::uint64_t> out;
  if (k > bits) return out;
  if (k == 0) {
    out.push_back(0);
    return out;
  }
  const std::uint64_t limit = std::uint64_t{1} << bits;
  std::uint64_t v = low_mask(k);
  while (v < limit) {
    out.push_back(v);
    // Gosper's hack: next integer with the same popcount.
    const std::uint64_t t = v | (v - 1);
    v = (t + 1) | (((~t & -~t) - 1) >> (std::countr_zero(v) + 1));
  }
  return out;
}

bool in_bounds(const Monomial& m, const Ambient& a) {
  return (m.e & ~low_mask(a.w)) == 0 && (m.x & ~low_mask(a.r)) == 0;
}

}  // namespace

Ambient::Ambient(std::size_t w_, std::size_t r_, Prime p_) : w(w_), r(r_), p(p_) {
  if (w + r > kMaxGenerators) {
    throw SizeLimitExceeded("exterior algebra supports at most " + std::to_string(kMaxGenerators) +
                            " generators, got " + std::to_string(w + r));
  }
}

int merge_sign(const Monomial& a, const Monomial& b) noexcept {
  if ((a.e & b.e) != 0 || (a.x & b.x) != 0) return 0;
  // Combined order: e_1..e_w then x_1..x_r. Count pairs (i in a, j in b) with i after j.
  std::size_t inversions = 0;
  for (std::uint64_t bits = b.e; bits != 0; bits &= bits - 1) {
    const int j = std::countr_zero(bits);
    inversions += std::popcount(a.e >> (j + 1));
    inversions += std::popcount(a.x);
  }
  for (std::uint64_t bits = b.x; bits != 0; bits &= bits - 1) {
    const int j = std::countr_zero(bits);
    inversions += std::popcount(a.x >> (j + 1));
  }
  return (inversions & 1) ? -1 : 1;
}

ExtElement ExtElement::one(const Ambient& ambient) { return monomial(ambient, Monomial{}, 1); }

ExtElement ExtElement::e(const Ambient& ambient, std::size_t i) {
  if (i < 1 || i > ambient.w) throw IndexOutOfRange("e" + std::to_string(i) + " outside e1..e" + std::to_string(ambient.w));
  return monomial(ambient, Monomial::e_var(i), 1);
}

ExtElement ExtElement::x(const Ambient& ambient, std::size_t i) {
  if (i < 1 || i > ambient.r) throw IndexOutOfRange("x" + std::to_string(i) + " outside x1..x" + std::to_string(ambient.r));
  return monomial(ambient, Monomial::x_var(i), 1);
}

ExtElement ExtElement::monomial(const Ambient& ambient, const Monomial& m, std::int64_t coeff) {
  ExtElement out(ambient);
  out.add_term(m, ambient.p.reduce(coeff));
  return out;
}

std::uint32_t ExtElement::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? 0 : it->second;
}

bool ExtElement::is_homogeneous(std::size_t d) const noexcept {
  return std::all_of(terms_.begin(), terms_.end(), [d](const auto& t) { return t.first.degree() == d; });
}

void ExtElement::add_term(const Monomial& m, std::uint32_t c) {
  if (!in_bounds(m, ambient_)) throw IndexOutOfRange("monomial " + format_monomial(m) + " outside the ambient");
  c %= ambient_.p.value();
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second = ambient_.p.add(it->second, c);
    if (it->second == 0) terms_.erase(it);
  }
}

void ExtElement::check_ambient(const ExtElement& other) const {
  if (!(ambient_ == other.ambient_)) throw AmbientMismatch("elements live in different exterior algebras");
}

ExtElement& ExtElement::operator+=(const ExtElement& other) {
  check_ambient(other);
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

ExtElement& ExtElement::operator-=(const ExtElement& other) {
  check_ambient(other);
  for (const auto& [m, c] : other.terms_) add_term(m, ambient_.p.neg(c));
  return *this;
}

ExtElement& ExtElement::operator*=(std::int64_t scalar) {
  const auto s = ambient_.p.reduce(scalar);
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c = ambient_.p.mul(c, s);
  return *this;
}

ExtElement ExtElement::operator-() const {
  ExtElement out = *this;
  out *= -1;
  return out;
}

ExtElement wedge(const ExtElement& a, const ExtElement& b) {
  if (!(a.ambient() == b.ambient())) throw AmbientMismatch("wedge of elements from different exterior algebras");
  const Prime p = a.ambient().p;
  ExtElement out(a.ambient());
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      const int s = merge_sign(ma, mb);
      if (s == 0) continue;
      const auto c = p.mul(ca, cb);
      out.add_term({ma.e | mb.e, ma.x | mb.x}, s > 0 ? c : p.neg(c));
    }
  }
  return out;
}

ExtElement embed(const ExtElement& element, const Ambient& target) {
  if (!(element.ambient().p == target.p)) throw AmbientMismatch("cannot embed across different primes");
  ExtElement out(target);
  for (const auto& [m, c] : element.terms()) out.add_term(m, c);
  return out;
}

std::vector<Monomial> basis(std::size_t d, const Ambient& ambient) {
  std::vector<Monomial> out;
  if (d > ambient.w + ambient.r) return out;
  for (std::size_t k = 0; k <= std::min(d, ambient.r); ++k) {
    if (d - k > ambient.w) continue;
    const auto es = combinations(ambient.w, d - k);
    for (auto x : combinations(ambient.r, k)) {
      for (auto e : es) out.push_back({e, x});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

GradedBasis::GradedBasis(const Ambient& ambient, std::size_t degree)
    : GradedBasis(ambient, degree, basis(degree, ambient)) {}

GradedBasis::GradedBasis(const Ambient& ambient, std::size_t degree, std::vector<Monomial> monomials)
    : ambient_(ambient), degree_(degree), monomials_(std::move(monomials)) {
  index_.reserve(monomials_.size());
  for (std::size_t i = 0; i < monomials_.size(); ++i) index_.emplace(monomials_[i], i);
}

std::size_t GradedBasis::index_of(const Monomial& m) const {
  auto it = index_.find(m);
  return it == index_.end() ? monomials_.size() : it->second;
}

FpVector GradedBasis::to_vector(const ExtElement& element) const {
  if (!(element.ambient() == ambient_)) throw AmbientMismatch("element not in the basis ambient");
  FpVector v(monomials_.size(), 0);
  for (const auto& [m, c] : element.terms()) {
    const auto i = index_of(m);
    if (i == monomials_.size()) {
      throw InvalidArgument("term " + format_monomial(m) + " is not in the degree-" + std::to_string(degree_) + " basis");
    }
    v[i] = c;
  }
  return v;
}

ExtElement GradedBasis::from_vector(std::span<const std::uint32_t> coords) const {
  if (coords.size() != monomials_.size()) throw InvalidArgument("coordinate vector length mismatch");
  ExtElement out(ambient_);
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (coords[i] != 0) out.add_term(monomials_[i], coords[i]);
  }
  return out;
}

std::string format_monomial(const Monomial& m) {
  if (m.e == 0 && m.x == 0) return "1";
  std::string out;
  auto emit = [&out](char name, std::uint64_t bits) {
    for (; bits != 0; bits &= bits - 1) {
      if (!out.empty()) out += '^';
      out += name;
      out += std::to_string(std::countr_zero(bits) + 1);
    }
  };
  emit('e', m.e);
  emit('x', m.x);
  return out;
}

std::string format_element(const ExtElement& element) {
  if (element.is_zero()) return "0";
  const std::uint32_t p = element.ambient().p.value();
  std::string out;
  for (const auto& [m, c] : element.terms()) {
    const bool negative = c > p / 2;
    const std::uint32_t magnitude = negative ? p - c : c;
    if (out.empty()) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    const bool unit = m.e == 0 && m.x == 0;
    if (magnitude != 1 || unit) {
      out += std::to_string(magnitude);
      if (!unit) out += ' ';
    }
    if (!unit) out += format_monomial(m);
  }
  return out;
}

namespace {

class ElementParser {
 public:
  ElementParser(std::string_view text, const Ambient& ambient) : text_(text), ambient_(ambient) {}

  ExtElement parse() {
    ExtElement out(ambient_);
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
      if (c != '+' && c != '-') fail("expected '+' or '-'", pos_ - 1);
      skip_ws();
      out += term(c == '-' ? -1 : 1);
      skip_ws();
    }
    return out;
  }

 private:
  ExtElement term(std::int64_t sign) {
    std::uint32_t coeff = 1;
    bool have_coeff = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      coeff = number_mod_p();
      have_coeff = true;
      skip_ws();
    }
    ExtElement value = ExtElement::monomial(ambient_, Monomial{}, sign * coeff);
    if (peek() != 'e' && peek() != 'x') {
      if (!have_coeff) fail("expected a coefficient or a factor e<i>/x<i>", pos_);
      return value;
    }
    value = wedge(value, factor());
    skip_ws();
    while (peek() == '^') {
      ++pos_;
      skip_ws();
      value = wedge(value, factor());
      skip_ws();
    }
    return value;
  }

  ExtElement factor() {
    const std::size_t start = pos_;
    const char name = get();
    if (name != 'e' && name != 'x') fail("expected factor e<i> or x<i>", start);
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected an index after '" + std::string(1, name) + "'", pos_);
    std::size_t index = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      index = index * 10 + static_cast<std::size_t>(get() - '0');
      if (index > kMaxGenerators) throw IndexOutOfRange("index too large at position " + std::to_string(start));
    }
    const std::size_t bound = name == 'e' ? ambient_.w : ambient_.r;
    if (index < 1 || index > bound) {
      throw IndexOutOfRange(std::string(1, name) + std::to_string(index) + " out of range 1.." + std::to_string(bound) +
                            " at position " + std::to_string(start));
    }
    return name == 'e' ? ExtElement::e(ambient_, index) : ExtElement::x(ambient_, index);
  }

  std::uint32_t number_mod_p() {
    const std::uint64_t p = ambient_.p.value();
    std::uint64_t v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) v = (v * 10 + static_cast<std::uint64_t>(get() - '0')) % p;
    return static_cast<std::uint32_t>(v);
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  char get() { return pos_ < text_.size() ? text_[pos_++] : '\0'; }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what, std::size_t at) const { throw SyntaxError(what, at); }

  std::string_view text_;
  const Ambient& ambient_;
  std::size_t pos_ = 0;
};

}  // namespace

ExtElement parse_element(std::string_view text, const Ambient& ambient) { return ElementParser(text, ambient).parse(); }

QuadraticForm::QuadraticForm(ExtElement element) : element_(std::move(element)) {
  for (const auto& [m, c] : element_.terms()) {
    if (m.x != 0 || m.e_degree() != 2) {
      throw InvalidArgument("quadratic form term " + format_monomial(m) + " is not a product e_i^e_j");
    }
  }
}

}  // namespace frattini
