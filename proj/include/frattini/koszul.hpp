#pragma once

// The Koszul complex Lambda(e_1..e_w) (x) Lambda(x_1..x_r) with differential
// determined by d(x_i) = q_i, its homology, and the cup product on homology.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "frattini/extalg.hpp"
#include "frattini/fplin.hpp"

namespace frattini {

/// Soft and hard limits on w + r for Koszul computations.
inline constexpr std::size_t kKoszulWarnGenerators = 16;
inline constexpr std::size_t kKoszulMaxGenerators = 22;

/// One basis vector of K in H^2((Z/p)^w; F_p) = span(b_1..b_w) + Lambda^2(e_1..e_w).
struct KInvariant {
  std::vector<std::int64_t> bockstein;  // length w, coefficients of b_1..b_w
  QuadraticForm quadratic;              // element of Lambda^2(e_1..e_w), ambient (w, 0, p)
};

class KInvariantSubspace {
 public:
  /// Checks shapes only; linear independence and Bockstein containment are
  /// checked by canonicalize().
  KInvariantSubspace(std::size_t w, Prime p, std::vector<KInvariant> basis);

  std::size_t w() const noexcept { return w_; }
  std::size_t v() const noexcept { return basis_.size(); }
  Prime p() const noexcept { return p_; }
  const std::vector<KInvariant>& basis() const noexcept { return basis_; }

 private:
  std::size_t w_;
  Prime p_;
  std::vector<KInvariant> basis_;
};

struct BettiOptions {
  bool representatives = true;
  std::size_t workers = 0;  // 0: one per hardware thread
};

class KoszulComplex {
 public:
  /// `quadratics` may live in ambient (w, 0, p) or (w, r, p). Dependent
  /// quadratics throw DependentQuadratics unless `allow_dependent` is set, in
  /// which case a warning is recorded instead.
  KoszulComplex(std::size_t w, std::vector<QuadraticForm> quadratics, Prime p, bool allow_dependent = false);

  std::size_t w() const noexcept { return ambient_.w; }
  std::size_t r() const noexcept { return ambient_.r; }
  Prime p() const noexcept { return ambient_.p; }
  std::size_t top_degree() const noexcept { return ambient_.w + ambient_.r; }
  const Ambient& ambient() const noexcept { return ambient_; }
  /// The q_i, re-homed into the complex ambient.
  const std::vector<ExtElement>& quadratics() const noexcept { return quadratics_; }

  bool quadratics_independent() const noexcept { return independent_; }
  /// p > r + 1: the range in which the homology is identified with H*(G)/(zeta).
  bool hypothesis_met() const noexcept { return p().value() > r() + 1; }
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

  /// d(e_S x_T) = sum_j (-1)^(|S|+j-1) q_{t_j} e_S x_{T - t_j}.
  ExtElement differential(const ExtElement& element) const;

  /// Calls fn(monomial, coefficient) for each term of d(m); a monomial may repeat.
  template <class Fn>
  void for_each_differential_term(const Monomial& m, Fn&& fn) const {
    const Prime p = ambient_.p;
    const std::size_t s = m.e_degree();
    std::size_t j = 0;
    for (std::uint64_t bits = m.x; bits != 0; bits &= bits - 1, ++j) {
      const std::uint64_t t = bits & (~bits + 1);
      const int t_index = std::countr_zero(bits);
      const bool negative = ((s + j) & 1) != 0;
      for (const auto& term : terms_[static_cast<std::size_t>(t_index)]) {
        const Monomial q{term.mask, 0};
        const int sign = merge_sign(q, Monomial{m.e, 0});
        if (sign == 0) continue;
        const bool neg = negative != (sign < 0);
        fn(Monomial{m.e | term.mask, m.x & ~t}, neg ? p.neg(term.coeff) : term.coeff);
      }
    }
  }

 private:
  struct QuadraticTerm {
    std::uint64_t mask;
    std::uint32_t coeff;
  };

  Ambient ambient_;
  std::vector<ExtElement> quadratics_;
  std::vector<std::vector<QuadraticTerm>> terms_;
  bool independent_ = true;
  std::vector<std::string> warnings_;
};

/// Row-reduces K to the canonical basis {b_1..b_w, q_1..q_{v-w}}.
KoszulComplex canonicalize(const KInvariantSubspace& k);

ExtElement differential(const KoszulComplex& c, const ExtElement& element);

/// Matrix of d from basis(d) (columns) to basis(d+1) (rows). For d = w + r
/// the result has zero rows.
FpMatrix differential_matrix(const KoszulComplex& c, std::size_t d);

class BettiTable;

struct CohomologyClass {
  std::size_t degree = 0;
  /// Coordinates with respect to table->representatives(degree).
  FpVector coords;
  ExtElement representative;
  const BettiTable* table = nullptr;

  bool is_zero() const noexcept;
};

/// Homology of a Koszul complex. The complex is split into blocks by a
/// grading preserved by d (an e-multidegree when every q_i is a monomial,
/// otherwise the weight |S| + 2|T|), and every block is reduced separately.
class BettiTable {
 public:
  const KoszulComplex& complex() const noexcept { return *complex_; }
  const std::vector<std::uint64_t>& dims() const noexcept { return dims_; }
  std::uint64_t dim(std::size_t d) const { return d < dims_.size() ? dims_[d] : 0; }
  bool has_representatives() const noexcept { return has_representatives_; }
  /// Cocycles whose classes form a basis of H^d.
  const std::vector<ExtElement>& representatives(std::size_t d) const;

  /// Number of blocks the grading splits degree d into.
  std::size_t block_count(std::size_t d) const;

  CohomologyClass unit() const;
  CohomologyClass basis_class(std::size_t d, std::size_t i) const;
  CohomologyClass zero_class(std::size_t d) const;
  /// The class of a homogeneous cocycle. Throws NotACocycle otherwise.
  CohomologyClass class_of(const ExtElement& cocycle) const;

 private:
  friend BettiTable betti(const KoszulComplex&, const BettiOptions&);
  struct State;

  BettiTable() = default;
  FpVector decompose(const ExtElement& cocycle, std::size_t d) const;

  std::shared_ptr<const KoszulComplex> complex_;
  std::vector<std::uint64_t> dims_;
  std::vector<std::vector<ExtElement>> representatives_;
  bool has_representatives_ = false;
  std::shared_ptr<State> state_;
};

BettiTable betti(const KoszulComplex& c, const BettiOptions& options = {});

/// Product of two classes of the same table. Degrees beyond w + r give the zero class.
CohomologyClass cup(const CohomologyClass& a, const CohomologyClass& b);

}  // namespace frattini
