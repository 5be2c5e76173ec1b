#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "frattini/error.hpp"
#include "frattini/fplin.hpp"

using namespace frattini;

namespace {

FpMatrix random_matrix(std::size_t rows, std::size_t cols, Prime p, std::mt19937_64& rng, int zero_bias = 0) {
  FpMatrix m(rows, cols, p);
  std::uniform_int_distribution<std::int64_t> dist(-zero_bias, p.value() - 1);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, std::max<std::int64_t>(0, dist(rng)));
  }
  return m;
}

// p^rank = size of the row space, counted by enumerating every combination of rows.
std::size_t brute_force_rank(const FpMatrix& m) {
  const std::uint32_t p = m.prime().value();
  std::set<FpVector> span;
  std::vector<std::uint32_t> coeffs(m.rows(), 0);
  for (;;) {
    FpVector v(m.cols(), 0);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      for (std::size_t c = 0; c < m.cols(); ++c) v[c] = (v[c] + coeffs[r] * m.at(r, c)) % p;
    }
    span.insert(v);
    std::size_t i = 0;
    while (i < coeffs.size() && ++coeffs[i] == p) coeffs[i++] = 0;
    if (i == coeffs.size()) break;
  }
  std::size_t rank = 0;
  for (std::size_t size = span.size(); size > 1; size /= p) ++rank;
  return rank;
}

}  // namespace

TEST_CASE("prime validation") {
  CHECK_NOTHROW(Prime(3));
  CHECK_NOTHROW(Prime(2147483647));
  CHECK_THROWS_AS(Prime(2), InvalidArgument);
  CHECK_THROWS_AS(Prime(9), InvalidArgument);
  CHECK_THROWS_AS(Prime(1), InvalidArgument);
  CHECK_THROWS_AS(Prime(-7), InvalidArgument);
  CHECK_THROWS_AS(Prime(std::int64_t{1} << 31), InvalidArgument);
  CHECK(next_prime_above(2) == 3);
  CHECK(next_prime_above(4) == 5);
  CHECK(next_prime_above(7) == 11);
  CHECK(is_prime(101));
  CHECK_FALSE(is_prime(91));
}

TEST_CASE("field arithmetic") {
  const Prime p(7);
  CHECK(p.reduce(-1) == 6);
  CHECK(p.reduce(15) == 1);
  for (std::uint32_t a = 1; a < 7; ++a) CHECK(p.mul(a, p.inv(a)) == 1);
  const Prime big(2147483647);
  CHECK(big.mul(2147483646, 2147483646) == 1);
}

TEST_CASE("rank examples") {
  CHECK(rank(FpMatrix::identity(2, Prime(5))) == 2);
  CHECK(rank(FpMatrix(1, 3, Prime(3))) == 0);
  CHECK(rank(FpMatrix::from_rows({{1, 2}, {2, 4}}, Prime(7))) == 1);
  CHECK(rank(FpMatrix(0, 4, Prime(3))) == 0);
  CHECK(rank(FpMatrix(4, 0, Prime(3))) == 0);
  // Full rank over Q but singular mod 3.
  CHECK(rank(FpMatrix::from_rows({{1, 1}, {1, 4}}, Prime(3))) == 1);
}

TEST_CASE("rank agrees with row-space enumeration") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 150; ++trial) {
    const Prime p(trial % 2 == 0 ? 3 : 5);
    const std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 5;
    const auto m = random_matrix(rows, cols, p, rng, trial % 3 == 0 ? 4 : 0);
    CHECK(rank(m) == brute_force_rank(m));
  }
}

TEST_CASE("rank is invariant under row operations") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const Prime p(7);
    auto m = random_matrix(4, 6, p, rng, 3);
    const auto before = rank(m);
    auto swapped = m;
    for (std::size_t c = 0; c < 6; ++c) {
      swapped.set(0, c, m.at(3, c));
      swapped.set(3, c, m.at(0, c));
    }
    auto scaled = m;
    for (std::size_t c = 0; c < 6; ++c) scaled.set(1, c, std::int64_t{m.at(1, c)} * 5);
    CHECK(rank(swapped) == before);
    CHECK(rank(scaled) == before);
  }
}

TEST_CASE("kernel basis examples") {
  CHECK(kernel_basis(FpMatrix::identity(3, Prime(5))).empty());
  const auto k = kernel_basis(FpMatrix::from_rows({{1, 1}}, Prime(3)));
  REQUIRE(k.size() == 1);
  CHECK((k[0][0] + k[0][1]) % 3 == 0);
  CHECK(k[0] != FpVector{0, 0});
  CHECK(kernel_basis(FpMatrix(2, 2, Prime(7))).size() == 2);
}

TEST_CASE("rank-nullity and kernel vectors on random matrices") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const Prime p(trial % 3 == 0 ? 3 : trial % 3 == 1 ? 5 : 101);
    const std::size_t rows = rng() % 7, cols = 1 + rng() % 8;
    const auto m = random_matrix(rows, cols, p, rng, trial % 2 == 0 ? 5 : 0);
    const auto k = kernel_basis(m);
    CHECK(rank(m) + k.size() == cols);
    for (const auto& v : k) {
      const auto image = m * v;
      CHECK(std::all_of(image.begin(), image.end(), [](auto x) { return x == 0; }));
    }
    CHECK(rank(FpMatrix::from_rows([&] {
            std::vector<std::vector<std::int64_t>> rs;
            for (const auto& v : k) rs.emplace_back(v.begin(), v.end());
            if (rs.empty()) rs.emplace_back(cols, 0);
            return rs;
          }(), p)) == k.size());
    CHECK(kernel_basis(m) == k);
  }
}

TEST_CASE("row echelon form") {
  const auto e = row_reduce(FpMatrix::from_rows({{0, 2, 4}, {3, 0, 1}, {3, 2, 5}}, Prime(7)));
  CHECK(e.pivots == std::vector<std::size_t>{0, 1});
  CHECK(e.matrix.at(0, 0) == 1);
  CHECK(e.matrix.at(1, 1) == 1);
  CHECK(e.matrix.at(0, 1) == 0);
  CHECK(e.matrix.at(2, 2) == 0);
}

TEST_CASE("matrix products") {
  const Prime p(5);
  const auto a = FpMatrix::from_rows({{1, 2}, {3, 4}}, p);
  const auto b = FpMatrix::from_rows({{0, 1}, {1, 0}}, p);
  CHECK(a * b == FpMatrix::from_rows({{2, 1}, {4, 3}}, p));
  CHECK(a * FpMatrix::identity(2, p) == a);
  const FpVector v{1, 1};
  CHECK(a * v == FpVector{3, 2});
}

TEST_CASE("quotient representatives") {
  const Prime p(5);
  const std::vector<FpVector> cycles{{1, 0}, {0, 1}};
  const std::vector<FpVector> one{{1, 0}};
  CHECK(quotient_representatives(cycles, one, p).size() == 1);
  CHECK(quotient_representatives(cycles, cycles, p).empty());
  CHECK(quotient_representatives(cycles, {}, p).size() == 2);

  const std::vector<FpVector> line{{1, 1, 0}};
  const std::vector<FpVector> outside{{0, 0, 1}};
  CHECK_THROWS_AS(quotient_representatives(line, outside, p), BoundaryNotCycle);

  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t dim = 6;
    std::vector<FpVector> cyc(1 + rng() % 5, FpVector(dim));
    for (auto& v : cyc) {
      for (auto& x : v) x = static_cast<std::uint32_t>(rng() % 5);
    }
    std::vector<FpVector> bnd;
    for (std::size_t i = 0; i < rng() % 4; ++i) {
      FpVector v(dim, 0);
      for (const auto& c : cyc) {
        const auto k = static_cast<std::uint32_t>(rng() % 5);
        for (std::size_t j = 0; j < dim; ++j) v[j] = (v[j] + k * c[j]) % 5;
      }
      bnd.push_back(v);
    }
    EchelonBasis cspan(dim, p), bspan(dim, p);
    for (const auto& v : cyc) cspan.insert(v);
    for (const auto& v : bnd) bspan.insert(v);
    const auto reps = quotient_representatives(cyc, bnd, p);
    CHECK(reps.size() == cspan.rank() - bspan.rank());
    EchelonBasis together = bspan;
    for (const auto& r : reps) {
      CHECK_FALSE(bspan.contains(r));
      CHECK(cspan.contains(r));
      together.insert(r);
    }
    CHECK(together.rank() == cspan.rank());
    CHECK(quotient_representatives(cyc, bnd, p) == reps);
  }
}

TEST_CASE("echelon basis with tags") {
  const Prime p(7);
  EchelonBasis b(3, p, 2);
  const FpVector a{1, 2, 0}, c{0, 1, 3};
  CHECK(b.insert_tagged(a, 0));
  CHECK(b.insert_tagged(c, 1));
  CHECK_FALSE(b.insert_tagged(FpVector{2, 4, 0}, 1));
  FpVector v(3);
  for (std::size_t i = 0; i < 3; ++i) v[i] = (2 * a[i] + 3 * c[i]) % 7;
  FpVector tags(2, 0);
  CHECK(b.reduce(v, tags));
  CHECK(tags == FpVector{2, 3});
  CHECK(std::all_of(v.begin(), v.end(), [](auto x) { return x == 0; }));
  CHECK_FALSE(b.contains(FpVector{0, 0, 1}));
  CHECK(b.rank() == 2);
}
