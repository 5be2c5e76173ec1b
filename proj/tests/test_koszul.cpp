#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "frattini/error.hpp"
#include "frattini/koszul.hpp"

using namespace frattini;

namespace {

std::vector<QuadraticForm> parse_quadratics(std::size_t w, Prime p, std::initializer_list<const char*> texts) {
  std::vector<QuadraticForm> out;
  for (const auto* t : texts) out.emplace_back(parse_element(t, Ambient(w, 0, p)));
  return out;
}

KoszulComplex heisenberg(Prime p = Prime(5)) { return KoszulComplex(2, parse_quadratics(2, p, {"e1^e2"}), p); }

KoszulComplex unp_complex(std::size_t n, Prime p) {
  std::vector<QuadraticForm> qs;
  const Ambient amb(n, 0, p);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = i + 1; j <= n; ++j) qs.emplace_back(wedge(ExtElement::e(amb, i), ExtElement::e(amb, j)));
  }
  return KoszulComplex(n, std::move(qs), p);
}

// Random complex with independent quadratics. `monomial` picks single-term q's.
KoszulComplex random_complex(std::mt19937_64& rng, bool monomial) {
  static const std::int64_t primes[] = {3, 5, 7};
  for (;;) {
    const Prime p(primes[rng() % 3]);
    const std::size_t w = 1 + rng() % 5;
    const std::size_t pairs = w * (w - 1) / 2;
    const std::size_t r = pairs == 0 ? 0 : rng() % (std::min<std::size_t>(4, pairs) + 1);
    const Ambient amb(w, 0, p);
    const auto quad_basis = basis(2, amb);
    std::vector<QuadraticForm> qs;
    for (std::size_t t = 0; t < r; ++t) {
      ExtElement q(amb);
      const int terms = monomial ? 1 : 1 + static_cast<int>(rng() % 3);
      for (int k = 0; k < terms; ++k) {
        q.add_term(quad_basis[rng() % quad_basis.size()], static_cast<std::uint32_t>(1 + rng() % (p.value() - 1)));
      }
      qs.emplace_back(q);
    }
    try {
      return KoszulComplex(w, std::move(qs), p);
    } catch (const DependentQuadratics&) {
    }
  }
}

// delta computed directly from the derivation rule with wedge products.
ExtElement oracle_differential(const KoszulComplex& c, const Monomial& m) {
  const Ambient& amb = c.ambient();
  ExtElement out(amb);
  ExtElement prefix = ExtElement::monomial(amb, Monomial{m.e, 0});
  std::vector<std::size_t> xs;
  for (std::size_t t = 1; t <= amb.r; ++t) {
    if ((m.x >> (t - 1)) & 1) xs.push_back(t);
  }
  std::int64_t sign = m.e_degree() % 2 == 0 ? 1 : -1;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    ExtElement term = wedge(prefix, c.quadratics()[xs[j] - 1]);
    for (std::size_t k = j + 1; k < xs.size(); ++k) term = wedge(term, ExtElement::x(amb, xs[k]));
    out += sign * term;
    prefix = wedge(prefix, ExtElement::x(amb, xs[j]));
    sign = -sign;
  }
  return out;
}

// b_d from ranks of the full differential matrices, bypassing the block split.
std::vector<std::uint64_t> betti_by_full_ranks(const KoszulComplex& c) {
  std::vector<std::size_t> ranks;
  for (std::size_t d = 0; d <= c.top_degree(); ++d) ranks.push_back(rank(differential_matrix(c, d)));
  std::vector<std::uint64_t> out;
  for (std::size_t d = 0; d <= c.top_degree(); ++d) {
    const auto dim = basis(d, c.ambient()).size();
    out.push_back(dim - ranks[d] - (d > 0 ? ranks[d - 1] : 0));
  }
  return out;
}

}  // namespace

TEST_CASE("differential examples") {
  const auto c = heisenberg();
  const auto& amb = c.ambient();
  CHECK(differential(c, ExtElement::x(amb, 1)) == parse_element("e1^e2", amb));
  CHECK(differential(c, ExtElement::e(amb, 1)).is_zero());
  CHECK(differential(c, parse_element("e1^x1", amb)).is_zero());
  CHECK(differential(c, parse_element("2 x1 + e2", amb)) == parse_element("2 e1^e2", amb));
  CHECK_THROWS_AS(differential(c, ExtElement::x(Ambient(2, 1, Prime(7)), 1)), AmbientMismatch);
}

TEST_CASE("differential matrices") {
  const auto c = heisenberg();
  const auto d1 = differential_matrix(c, 1);
  CHECK(d1.rows() == 3);
  CHECK(d1.cols() == 3);
  CHECK(rank(d1) == 1);
  CHECK(differential_matrix(c, 0).is_zero());
  CHECK(differential_matrix(c, 3).rows() == 0);
  CHECK(differential_matrix(c, 3).cols() == 1);
  CHECK_THROWS(differential_matrix(c, 4));
  const KoszulComplex flat(3, {}, Prime(3));
  for (std::size_t d = 0; d <= 3; ++d) CHECK(differential_matrix(flat, d).is_zero());
}

TEST_CASE("complex validation") {
  const Prime p(5);
  CHECK_THROWS_AS(KoszulComplex(2, parse_quadratics(2, p, {"e1^e2", "2 e1^e2"}), p), DependentQuadratics);
  const KoszulComplex forced(3, parse_quadratics(3, p, {"e1^e2", "2 e1^e2"}), p, true);
  CHECK_FALSE(forced.quadratics_independent());
  CHECK_FALSE(forced.warnings().empty());
  CHECK(betti(forced).dim(1) == 4);  // x2 - 2 x1 is a new cycle
  CHECK_THROWS(KoszulComplex(2, parse_quadratics(2, p, {"e1^e2", "e1^e2", "e1^e2"}), p, true));
  CHECK_FALSE(KoszulComplex(3, parse_quadratics(3, Prime(3), {"e1^e2", "e1^e3", "e2^e3"}), Prime(3)).hypothesis_met());
  CHECK(unp_complex(3, Prime(5)).hypothesis_met());
}

TEST_CASE("canonicalize") {
  const Prime p(5);
  const Ambient amb(2, 0, p);
  auto q = [&](const char* t) { return QuadraticForm(parse_element(t, amb)); };
  const QuadraticForm zero{ExtElement(amb)};

  const auto c = canonicalize(KInvariantSubspace(2, p, {{{1, 0}, zero}, {{0, 1}, zero}, {{1, 0}, q("e1^e2")}}));
  CHECK(c.r() == 1);
  CHECK(format_element(c.quadratics()[0]) == "e1^e2");

  CHECK(canonicalize(KInvariantSubspace(2, p, {{{1, 0}, zero}, {{0, 1}, zero}})).r() == 0);

  try {
    canonicalize(KInvariantSubspace(2, p, {{{1, 0}, zero}, {{0, 0}, q("e1^e2")}}));
    FAIL("expected BocksteinNotContained");
  } catch (const BocksteinNotContained& e) {
    CHECK(e.corank() == 1);
  }
  CHECK_THROWS_AS(canonicalize(KInvariantSubspace(2, p, {{{1, 0}, zero}, {{0, 1}, zero}, {{2, 0}, zero}})),
                  DegenerateSubspace);
  CHECK_THROWS_AS(KInvariantSubspace(2, p, {{{1, 0, 0}, zero}}), InvalidArgument);

  // Mixed rows: the quadratic survives with its b-part eliminated.
  const auto mixed = canonicalize(
      KInvariantSubspace(2, p, {{{1, 1}, q("e1^e2")}, {{0, 1}, zero}, {{1, 0}, q("2 e1^e2")}}));
  CHECK(mixed.r() == 1);
  CHECK(betti(mixed).dims() == std::vector<std::uint64_t>{1, 2, 2, 1});
}

TEST_CASE("Heisenberg homology and products") {
  const auto c = heisenberg();
  const auto table = betti(c);
  CHECK(table.dims() == std::vector<std::uint64_t>{1, 2, 2, 1});
  const auto& amb = c.ambient();

  // Degree two: classes of e1 x1 and e2 x1 are a basis, e1 e2 is a boundary.
  const auto a = table.class_of(parse_element("e1^x1", amb));
  const auto b = table.class_of(parse_element("e2^x1", amb));
  CHECK_FALSE(a.is_zero());
  CHECK_FALSE(b.is_zero());
  CHECK(rank(FpMatrix::from_rows({{a.coords[0], a.coords[1]}, {b.coords[0], b.coords[1]}}, c.p())) == 2);
  CHECK(table.class_of(parse_element("e1^e2", amb)).is_zero());
  CHECK_THROWS_AS(table.class_of(ExtElement::x(amb, 1)), NotACocycle);

  const auto e1 = table.class_of(ExtElement::e(amb, 1));
  const auto e2 = table.class_of(ExtElement::e(amb, 2));
  CHECK(cup(e1, e2).is_zero());
  CHECK(cup(e1, b).degree == 3);
  CHECK_FALSE(cup(e1, b).is_zero());
  CHECK(cup(e1, b).coords == table.class_of(parse_element("e1^e2^x1", amb)).coords);
  CHECK(cup(table.unit(), a).coords == a.coords);
  CHECK(cup(table.basis_class(3, 0), e1).is_zero());
  CHECK(cup(table.basis_class(3, 0), e1).degree == 4);
}

TEST_CASE("small examples") {
  CHECK(betti(KoszulComplex(2, {}, Prime(3))).dims() == std::vector<std::uint64_t>{1, 2, 1});
  CHECK(betti(KoszulComplex(0, {}, Prime(3))).dims() == std::vector<std::uint64_t>{1});
  CHECK(betti(unp_complex(3, Prime(7))).dims() == std::vector<std::uint64_t>{1, 3, 8, 12, 8, 3, 1});
}

TEST_CASE("differential agrees with the derivation oracle") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 60; ++t) {
    const auto c = random_complex(rng, t % 2 == 0);
    for (std::size_t d = 0; d <= c.top_degree(); ++d) {
      for (const auto& m : basis(d, c.ambient())) {
        CHECK(differential(c, ExtElement::monomial(c.ambient(), m)) == oracle_differential(c, m));
      }
    }
  }
}

TEST_CASE("delta squared vanishes on random complexes") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 200; ++t) {
    const auto c = random_complex(rng, t % 3 == 0);
    for (std::size_t d = 0; d + 1 <= c.top_degree(); ++d) {
      CHECK((differential_matrix(c, d + 1) * differential_matrix(c, d)).is_zero());
    }
  }
}

TEST_CASE("block homology matches full-matrix ranks, duality and Euler characteristic") {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 120; ++t) {
    const auto c = random_complex(rng, t % 2 == 0);
    const auto table = betti(c);
    const auto& b = table.dims();
    CHECK(b == betti_by_full_ranks(c));
    const std::size_t top = c.top_degree();
    REQUIRE(b.size() == top + 1);
    std::int64_t euler = 0;
    for (std::size_t d = 0; d <= top; ++d) {
      CHECK(b[d] == b[top - d]);
      euler += (d % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(b[d]);
      CHECK(table.representatives(d).size() == b[d]);
      for (const auto& rep : table.representatives(d)) {
        CHECK(rep.is_homogeneous(d));
        CHECK(differential(c, rep).is_zero());
      }
    }
    if (c.w() >= 1) CHECK(euler == 0);
    CHECK(b[0] == 1);
    if (top >= 1) CHECK(b[1] == c.w());
    CHECK(b[top] == 1);
  }
}

TEST_CASE("class coordinates ignore boundaries") {
  std::mt19937_64 rng(31);
  const auto c = unp_complex(3, Prime(7));
  const auto table = betti(c);
  for (std::size_t d = 1; d < c.top_degree(); ++d) {
    const auto below = basis(d - 1, c.ambient());
    for (std::size_t i = 0; i < table.dim(d); ++i) {
      const auto cls = table.basis_class(d, i);
      ExtElement shifted = cls.representative;
      shifted += differential(c, ExtElement::monomial(c.ambient(), below[rng() % below.size()], 3));
      CHECK(table.class_of(shifted).coords == cls.coords);
      FpVector unit(table.dim(d), 0);
      unit[i] = 1;
      CHECK(cls.coords == unit);
    }
  }
}

TEST_CASE("cup product is graded-commutative, associative and unital") {
  std::mt19937_64 rng(37);
  const auto c = unp_complex(3, Prime(7));
  const auto table = betti(c);
  auto random_class = [&](std::size_t d) {
    ExtElement rep(c.ambient());
    for (std::size_t i = 0; i < table.dim(d); ++i) {
      rep += static_cast<std::int64_t>(rng() % 7) * table.representatives(d)[i];
    }
    return rep.is_zero() ? table.zero_class(d) : table.class_of(rep);
  };
  for (int t = 0; t < 60; ++t) {
    const std::size_t da = rng() % 4, db = rng() % 4, dc = rng() % 3;
    const auto a = random_class(da), b = random_class(db), x = random_class(dc);
    const auto ab = cup(a, b), ba = cup(b, a);
    FpVector expected = ba.coords;
    if ((da * db) % 2 == 1) {
      for (auto& v : expected) v = c.p().neg(v);
    }
    CHECK(ab.coords == expected);
    CHECK(cup(cup(a, b), x).coords == cup(a, cup(b, x)).coords);
    CHECK(cup(table.unit(), a).coords == a.coords);
    CHECK(cup(a, table.unit()).coords == a.coords);
  }
}

TEST_CASE("prime independence and worker independence") {
  const auto reference = betti(unp_complex(3, Prime(7))).dims();
  CHECK(betti(unp_complex(3, Prime(11))).dims() == reference);
  CHECK(betti(unp_complex(3, Prime(101))).dims() == reference);
  const auto c = unp_complex(4, Prime(11));
  const auto one = betti(c, {.representatives = true, .workers = 1});
  const auto many = betti(c, {.representatives = true, .workers = 4});
  CHECK(one.dims() == many.dims());
  for (std::size_t d = 0; d <= c.top_degree(); ++d) CHECK(one.representatives(d) == many.representatives(d));
  CHECK(betti(c, {.representatives = false}).dims() == one.dims());
}
