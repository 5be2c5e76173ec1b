#pragma once

// Finite p-groups of exponent p^2 built from two-step nilpotent F_p-Lie
// algebras: the set K = (Z/p^2)^n' with product x.y = x + y + i([pi x, pi y]),
// where pi reduces mod p and i lifts a residue vector and multiplies by p.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "frattini/fplin.hpp"
#include "frattini/series.hpp"

namespace frattini {

class TwoStepLieAlgebra {
 public:
  /// [b_i, b_j] = sum_k value[k] b_k for i != j; [b_j, b_i] is set to the negative.
  struct Bracket {
    std::size_t i;
    std::size_t j;
    std::vector<std::int64_t> value;
  };

  /// Throws InvalidArgument unless every bracket lands in the span of the
  /// central basis elements and brackets with central elements vanish.
  TwoStepLieAlgebra(std::vector<std::string> labels, std::vector<bool> central, const std::vector<Bracket>& brackets);

  std::size_t dim() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  bool is_central(std::size_t i) const { return central_.at(i); }
  /// [b_i, b_j] as integer coordinates.
  std::vector<std::int64_t> bracket(std::size_t i, std::size_t j) const;
  /// Bracket of two vectors, reduced mod p.
  FpVector bracket(std::span<const std::uint32_t> u, std::span<const std::uint32_t> v, Prime p) const;

  struct Constant {
    std::size_t i, j, k;
    std::int64_t value;
  };
  /// Nonzero structure constants [b_i, b_j] -> value * b_k over all ordered pairs.
  const std::vector<Constant>& constants() const noexcept { return constants_; }

 private:
  std::vector<std::string> labels_;
  std::vector<bool> central_;
  std::vector<Constant> constants_;
};

/// The free two-step nilpotent Lie algebra h(n): basis e_1..e_n, then e_{i,j}
/// (i < j, lexicographic), with [e_i, e_j] = e_{i,j} central.
TwoStepLieAlgebra free_two_step(std::size_t n);

struct PGroupElement {
  std::vector<std::uint32_t> coords;  // residues mod p^2
  friend auto operator<=>(const PGroupElement&, const PGroupElement&) = default;
};

class PGroup {
 public:
  /// Without a constraint the group is all of K. With one, it is pi^{-1}(S)
  /// for S the F_p-span of `constraint`.
  PGroup(TwoStepLieAlgebra algebra, Prime p, std::optional<std::vector<FpVector>> constraint = std::nullopt);

  /// G(h(n)).
  static PGroup free_group(std::size_t n, Prime p);
  /// U(n, p) = pi^{-1}(span(e_1..e_n)) inside G(h(n)).
  static PGroup unp(std::size_t n, Prime p);

  const TwoStepLieAlgebra& algebra() const noexcept { return algebra_; }
  Prime p() const noexcept { return p_; }
  std::uint32_t modulus() const noexcept { return modulus_; }
  std::size_t dim() const noexcept { return algebra_.dim(); }
  bool constrained() const noexcept { return constrained_; }
  /// F_p-dimension of S (dim() when unconstrained).
  std::size_t constraint_rank() const noexcept { return constraint_basis_.size(); }
  /// log_p of the group order: dim() + constraint_rank().
  std::size_t log_order() const noexcept { return dim() + constraint_rank(); }
  BigInt order() const;

  bool contains(const PGroupElement& x) const;
  PGroupElement element(std::vector<std::int64_t> coords) const;
  PGroupElement identity() const;
  PGroupElement multiply(const PGroupElement& x, const PGroupElement& y) const;
  PGroupElement inverse(const PGroupElement& x) const;
  PGroupElement power(const PGroupElement& x, std::uint64_t k) const;
  /// x^-1 y^-1 x y.
  PGroupElement commutator(const PGroupElement& x, const PGroupElement& y) const;

  /// Lifts of a basis of S together with p*E_i for every i.
  std::vector<PGroupElement> generators() const;
  /// All elements in lexicographic coordinate order. Throws BudgetExceeded above `bound`.
  std::vector<PGroupElement> elements(std::uint64_t bound) const;
  PGroupElement random_element(std::mt19937_64& rng) const;

 private:
  void check(const PGroupElement& x) const;

  TwoStepLieAlgebra algebra_;
  Prime p_;
  std::uint32_t modulus_;
  bool constrained_;
  std::vector<FpVector> constraint_basis_;
  EchelonBasis constraint_span_;
};

PGroupElement multiply(const PGroup& g, const PGroupElement& x, const PGroupElement& y);

/// Least k >= 1 with x^k = 1 (always 1, p or p^2).
std::uint64_t order_of(const PGroup& g, const PGroupElement& x);

/// log_p of the order of the Z/p^2-submodule generated by `generators`.
std::size_t submodule_log_order(const std::vector<PGroupElement>& generators, Prime p);

enum class VerifyMode { Auto, Exhaustive, Sampled };

struct VerifyOptions {
  VerifyMode mode = VerifyMode::Auto;
  std::uint64_t exhaustive_bound = 1'000'000;
  std::uint64_t triple_budget = 100'000'000;  // exhaustive associativity when |G|^3 <= this
  std::uint64_t sampled_triples = 100'000;
  std::uint64_t sampled_elements = 10'000;
  std::uint64_t seed = 20240611;
  std::size_t workers = 0;
};

struct VerificationReport {
  BigInt group_order;
  std::size_t log_order = 0;
  bool exhaustive = false;

  bool associativity_ok = false;
  bool associativity_exhaustive = false;
  std::uint64_t associativity_triples = 0;

  bool identity_inverse_ok = false;

  bool pc_ok = false;
  std::string pc_method;  // "all-pairs", "generators" or "sampled"
  BigInt omega1_size;
  std::size_t omega1_rank = 0;
  std::string omega1_method;  // "enumerated" or "structural"

  std::size_t frattini_rank = 0;  // log_p |Phi(G)|, Phi = <commutators, p-th powers>
  std::size_t abelianization_rank = 0;
  std::size_t commutator_rank = 0;
  std::uint64_t exponent = 0;
};

VerificationReport verify(const PGroup& g, const VerifyOptions& options = {});

}  // namespace frattini
