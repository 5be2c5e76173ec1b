#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <deque>
#include <random>
#include <set>

#include "frattini/error.hpp"
#include "frattini/pgroups.hpp"

using namespace frattini;

namespace {

// Subgroup generated by `gens`, by breadth-first closure under the group law.
std::set<PGroupElement> closure(const PGroup& g, const std::vector<PGroupElement>& gens) {
  std::set<PGroupElement> seen{g.identity()};
  std::deque<PGroupElement> queue{g.identity()};
  while (!queue.empty()) {
    const auto x = queue.front();
    queue.pop_front();
    for (const auto& s : gens) {
      auto y = g.multiply(x, s);
      if (seen.insert(y).second) queue.push_back(std::move(y));
    }
  }
  return seen;
}

// Additive closure mod p^2 of `gens`.
std::size_t brute_submodule_size(const std::vector<PGroupElement>& gens, std::uint32_t p) {
  const std::uint32_t mod = p * p;
  std::set<std::vector<std::uint32_t>> seen{std::vector<std::uint32_t>(gens.front().coords.size(), 0)};
  std::deque<std::vector<std::uint32_t>> queue(seen.begin(), seen.end());
  while (!queue.empty()) {
    const auto x = queue.front();
    queue.pop_front();
    for (const auto& s : gens) {
      auto y = x;
      for (std::size_t i = 0; i < y.size(); ++i) y[i] = (y[i] + s.coords[i]) % mod;
      if (seen.insert(y).second) queue.push_back(std::move(y));
    }
  }
  return seen.size();
}

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

TEST_CASE("free two-step algebras") {
  CHECK(free_two_step(1).dim() == 1);
  CHECK(free_two_step(1).constants().empty());
  const auto h2 = free_two_step(2);
  CHECK(h2.dim() == 3);
  CHECK(h2.labels() == std::vector<std::string>{"e1", "e2", "e1,2"});
  CHECK(h2.bracket(0, 1) == std::vector<std::int64_t>{0, 0, 1});
  CHECK(h2.bracket(1, 0) == std::vector<std::int64_t>{0, 0, -1});
  CHECK(h2.constants().size() == 2);
  CHECK(free_two_step(3).dim() == 6);
  CHECK(free_two_step(4).dim() == 10);
  CHECK(h2.is_central(2));
  CHECK_FALSE(h2.is_central(0));
}

TEST_CASE("algebra validation") {
  using B = TwoStepLieAlgebra::Bracket;
  CHECK_THROWS_AS(TwoStepLieAlgebra({"a", "b"}, {false, false}, {B{0, 1, {1, 0}}}), InvalidArgument);
  CHECK_THROWS_AS(TwoStepLieAlgebra({"a", "z"}, {false, true}, {B{0, 1, {0, 1}}}), InvalidArgument);
  CHECK_THROWS_AS(TwoStepLieAlgebra({"a", "b", "z"}, {false, false, true}, {B{0, 1, {0, 0, 1}}, B{1, 0, {0, 0, 1}}}),
                  InvalidArgument);
  CHECK_THROWS_AS(TwoStepLieAlgebra({"a"}, {false, true}, {}), InvalidArgument);
  CHECK_THROWS_AS(TwoStepLieAlgebra({"a", "b", "z"}, {false, false, true}, {B{0, 3, {0, 0, 1}}}), IndexOutOfRange);
  CHECK_NOTHROW(TwoStepLieAlgebra({"a", "b", "z"}, {false, false, true}, {B{0, 1, {0, 0, 2}}}));
}

TEST_CASE("group law examples") {
  const auto g = PGroup::free_group(2, Prime(3));
  const auto x = g.element({1, 0, 0}), y = g.element({0, 1, 0});
  CHECK(g.multiply(x, y).coords == std::vector<std::uint32_t>{1, 1, 3});
  CHECK(g.multiply(y, x).coords == std::vector<std::uint32_t>{1, 1, 6});
  CHECK(multiply(g, x, g.identity()) == x);
  CHECK(g.order() == 729);
  CHECK(order_of(g, x) == 9);
  CHECK(order_of(g, g.element({3, 0, 0})) == 3);
  CHECK(order_of(g, g.identity()) == 1);
  CHECK(g.commutator(x, y).coords == std::vector<std::uint32_t>{0, 0, 6});
  CHECK(g.element({-1, 10, 9}).coords == std::vector<std::uint32_t>{8, 1, 0});
  CHECK_THROWS_AS(g.element({1, 2}), InvalidArgument);
}

TEST_CASE("constraint handling") {
  const auto u = PGroup::unp(2, Prime(3));
  CHECK(u.constrained());
  CHECK(u.constraint_rank() == 2);
  CHECK(u.log_order() == 5);
  CHECK(u.order() == 243);
  CHECK(u.contains(u.element({1, 2, 3})));
  CHECK_FALSE(u.contains(PGroupElement{{0, 0, 1}}));
  CHECK_THROWS_AS(u.element({0, 0, 1}), ConstraintViolation);
  CHECK_THROWS_AS(u.multiply(u.identity(), PGroupElement{{0, 0, 1}}), ConstraintViolation);
  CHECK_THROWS_AS(u.multiply(u.identity(), PGroupElement{{9, 0, 0}}), ConstraintViolation);
  const auto elems = u.elements(1000);
  CHECK(elems.size() == 243);
  CHECK(std::is_sorted(elems.begin(), elems.end()));
  CHECK(std::set<PGroupElement>(elems.begin(), elems.end()).size() == 243);
  for (const auto& e : elems) CHECK(u.contains(e));
  CHECK_THROWS_AS(u.elements(100), BudgetExceeded);
  CHECK(closure(u, u.generators()).size() == 243);
}

TEST_CASE("powers, inverses and associativity on random elements") {
  std::mt19937_64 rng(43);
  for (std::int64_t p : {3, 5, 7, 11}) {
    for (std::size_t n = 1; n <= 4; ++n) {
      const auto g = n % 2 ? PGroup::unp(n, Prime(p)) : PGroup::free_group(n, Prime(p));
      for (int t = 0; t < 50; ++t) {
        const auto x = g.random_element(rng), y = g.random_element(rng), z = g.random_element(rng);
        CHECK(g.contains(x));
        CHECK(g.multiply(g.multiply(x, y), z) == g.multiply(x, g.multiply(y, z)));
        CHECK(g.multiply(x, g.inverse(x)) == g.identity());
        auto px = x;
        for (auto& c : px.coords) c = static_cast<std::uint32_t>(std::uint64_t{c} * p % (p * p));
        CHECK(g.power(x, static_cast<std::uint64_t>(p)) == px);
        auto repeated = g.identity();
        for (int k = 0; k < 5; ++k) repeated = g.multiply(repeated, x);
        CHECK(g.power(x, 5) == repeated);
        // Commutators are central.
        const auto c = g.commutator(x, y);
        CHECK(g.multiply(c, z) == g.multiply(z, c));
      }
    }
  }
}

TEST_CASE("submodule orders against additive closure") {
  std::mt19937_64 rng(47);
  for (int t = 0; t < 80; ++t) {
    const std::uint32_t p = t % 2 ? 3 : 5;
    const std::size_t n = 1 + rng() % 3, count = 1 + rng() % 3;
    std::vector<PGroupElement> gens(count);
    for (auto& g : gens) {
      g.coords.resize(n);
      for (auto& c : g.coords) {
        const auto kind = rng() % 3;
        c = kind == 0 ? 0 : kind == 1 ? static_cast<std::uint32_t>(p * (rng() % p)) : static_cast<std::uint32_t>(rng() % (p * p));
      }
    }
    CHECK(ipow(p, submodule_log_order(gens, Prime(p))) == brute_submodule_size(gens, p));
  }
  CHECK(submodule_log_order({}, Prime(3)) == 0);
}

TEST_CASE("verification of U(2,3)") {
  const auto rep = verify(PGroup::unp(2, Prime(3)));
  CHECK(rep.group_order == 243);
  CHECK(rep.log_order == 5);
  CHECK(rep.exhaustive);
  CHECK(rep.associativity_ok);
  CHECK(rep.associativity_exhaustive);
  CHECK(rep.associativity_triples == 243ULL * 243 * 243);
  CHECK(rep.identity_inverse_ok);
  CHECK(rep.pc_ok);
  CHECK(rep.pc_method == "all-pairs");
  CHECK(rep.omega1_size == 27);
  CHECK(rep.omega1_rank == 3);
  CHECK(rep.omega1_method == "enumerated");
  CHECK(rep.abelianization_rank == 2);
  CHECK(rep.commutator_rank == 1);
  CHECK(rep.exponent == 9);
}

TEST_CASE("verification of other small groups") {
  const auto z9 = verify(PGroup::unp(1, Prime(3)));
  CHECK(z9.group_order == 9);
  CHECK(z9.pc_ok);
  CHECK(z9.associativity_ok);
  CHECK(z9.abelianization_rank == 1);
  CHECK(z9.commutator_rank == 0);
  CHECK(z9.omega1_rank == 1);
  CHECK(z9.exponent == 9);

  VerifyOptions sampled;
  sampled.mode = VerifyMode::Sampled;
  sampled.sampled_triples = 20000;
  sampled.sampled_elements = 2000;
  const auto g5 = verify(PGroup::free_group(2, Prime(5)), sampled);
  CHECK(g5.group_order == 15625);
  CHECK_FALSE(g5.exhaustive);
  CHECK(g5.pc_ok);
  CHECK(g5.pc_method == "sampled");
  CHECK(g5.omega1_rank == 3);
  CHECK(g5.omega1_method == "structural");
  CHECK(g5.associativity_ok);
  CHECK(g5.exponent == 25);

  const auto u33 = verify(PGroup::unp(3, Prime(3)));
  CHECK(u33.group_order == 19683);
  CHECK(u33.exhaustive);
  CHECK_FALSE(u33.associativity_exhaustive);
  CHECK(u33.associativity_ok);
  CHECK(u33.pc_ok);
  CHECK(u33.omega1_rank == 6);
  CHECK(u33.abelianization_rank == 3);
  CHECK(u33.commutator_rank == 3);

  VerifyOptions strict;
  strict.mode = VerifyMode::Exhaustive;
  CHECK_THROWS_AS(verify(PGroup::unp(3, Prime(5)), strict), BudgetExceeded);
}

TEST_CASE("abelianization and commutator ranks of U(n,p)") {
  VerifyOptions sampled;
  sampled.mode = VerifyMode::Sampled;
  sampled.sampled_triples = 2000;
  sampled.sampled_elements = 500;
  for (std::size_t n = 1; n <= 4; ++n) {
    for (std::int64_t p : {3, 5, 7}) {
      const auto rep = verify(PGroup::unp(n, Prime(p)), sampled);
      CHECK(rep.abelianization_rank == n);
      CHECK(rep.commutator_rank == n * (n - 1) / 2);
      CHECK(rep.frattini_rank == rep.log_order - n);
    }
  }
}

TEST_CASE("sampled reports are reproducible") {
  VerifyOptions o;
  o.mode = VerifyMode::Sampled;
  o.sampled_triples = 3000;
  o.sampled_elements = 300;
  const auto g = PGroup::unp(3, Prime(5));
  const auto a = verify(g, o), b = verify(g, o);
  CHECK(a.associativity_triples == b.associativity_triples);
  CHECK(a.pc_ok == b.pc_ok);
  CHECK(a.exponent == b.exponent);
  o.workers = 3;
  CHECK(verify(g, o).pc_ok == a.pc_ok);
}
