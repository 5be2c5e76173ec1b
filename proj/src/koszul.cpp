#include "frattini/koszul.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <unordered_map>

#include "frattini/error.hpp"
#include "frattini/parallel.hpp"

namespace frattini {

namespace {

std::size_t pair_count(std::size_t w) { return w * (w - (w > 0 ? 1 : 0)) / 2; }

// Column of e_i e_j (i < j, 1-based) among the lexicographically ordered pairs.
std::size_t pair_index(std::size_t i, std::size_t j, std::size_t w) {
  // pairs (1,2..w), (2,3..w), ...
  return (i - 1) * w - (i - 1) * i / 2 + (j - i - 1);
}

FpVector quadratic_coords(const ExtElement& q, std::size_t w) {
  FpVector v(pair_count(w), 0);
  for (const auto& [m, c] : q.terms()) {
    const std::size_t i = static_cast<std::size_t>(std::countr_zero(m.e)) + 1;
    const std::size_t j = static_cast<std::size_t>(63 - std::countl_zero(m.e)) + 1;
    v[pair_index(i, j, w)] = c;
  }
  return v;
}

ExtElement quadratic_from_coords(std::span<const std::uint32_t> coords, const Ambient& ambient) {
  ExtElement q(ambient);
  const std::size_t w = ambient.w;
  for (std::size_t i = 1; i <= w; ++i) {
    for (std::size_t j = i + 1; j <= w; ++j) {
      const auto c = coords[pair_index(i, j, w)];
      if (c != 0) q.add_term(Monomial{(std::uint64_t{1} << (i - 1)) | (std::uint64_t{1} << (j - 1)), 0}, c);
    }
  }
  return q;
}

}  // namespace

KInvariantSubspace::KInvariantSubspace(std::size_t w, Prime p, std::vector<KInvariant> basis)
    : w_(w), p_(p), basis_(std::move(basis)) {
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const auto& k = basis_[i];
    if (k.bockstein.size() != w_) {
      throw InvalidArgument("k-invariant " + std::to_string(i) + " has " + std::to_string(k.bockstein.size()) +
                            " Bockstein coordinates, expected " + std::to_string(w_));
    }
    const auto& a = k.quadratic.element().ambient();
    if (a.w > w_ || !(a.p == p_)) throw AmbientMismatch("k-invariant quadratic part outside Lambda^2(e_1..e_w)");
    for (const auto& [m, c] : k.quadratic.element().terms()) {
      if ((m.e >> w_) != 0) throw IndexOutOfRange("k-invariant quadratic part uses an index above w");
    }
  }
}

KoszulComplex::KoszulComplex(std::size_t w, std::vector<QuadraticForm> quadratics, Prime p, bool allow_dependent)
    : ambient_(w, quadratics.size(), p) {
  const std::size_t r = quadratics.size();
  if (w + r > kKoszulMaxGenerators) {
    throw SizeLimitExceeded("Koszul complex with w + r = " + std::to_string(w + r) + " exceeds the limit of " +
                            std::to_string(kKoszulMaxGenerators));
  }
  if (w + r > kKoszulWarnGenerators) {
    warnings_.push_back("w + r = " + std::to_string(w + r) + " > " + std::to_string(kKoszulWarnGenerators) +
                        ": matrices reach C(w+r, d) columns");
  }
  if (r > pair_count(w)) {
    throw DependentQuadratics(std::to_string(r) + " quadratics cannot be independent in Lambda^2 of dimension " +
                              std::to_string(pair_count(w)));
  }
  EchelonBasis span(pair_count(w), p);
  for (std::size_t t = 0; t < r; ++t) {
    const auto& q = quadratics[t].element();
    if (!(q.ambient().p == p)) throw AmbientMismatch("quadratic over a different prime");
    if ((q.ambient().w > w)) {
      for (const auto& [m, c] : q.terms()) {
        if ((m.e >> w) != 0) throw IndexOutOfRange("quadratic q" + std::to_string(t + 1) + " uses an index above w");
      }
    }
    quadratics_.push_back(embed(q, ambient_));
    std::vector<QuadraticTerm> terms;
    for (const auto& [m, c] : q.terms()) terms.push_back({m.e, c});
    terms_.push_back(std::move(terms));
    if (!span.insert(quadratic_coords(q, w))) independent_ = false;
  }
  if (!independent_) {
    if (!allow_dependent) throw DependentQuadratics("quadratics q_1..q_r are linearly dependent");
    warnings_.push_back("quadratics are linearly dependent: not a Frattini basis, b_1 = w is not guaranteed");
  }
  if (!hypothesis_met()) {
    warnings_.push_back("p = " + std::to_string(p.value()) + " <= r + 1 = " + std::to_string(r + 1) +
                        ": homology is not identified with H*(G)/(zeta)");
  }
}

ExtElement KoszulComplex::differential(const ExtElement& element) const {
  if (!(element.ambient() == ambient_)) throw AmbientMismatch("element is not in the Koszul complex ambient");
  const Prime p = ambient_.p;
  ExtElement out(ambient_);
  for (const auto& [m, c] : element.terms()) {
    for_each_differential_term(m, [&](const Monomial& target, std::uint32_t coeff) {
      out.add_term(target, p.mul(coeff, c));
    });
  }
  return out;
}

KoszulComplex canonicalize(const KInvariantSubspace& k) {
  const std::size_t w = k.w();
  const Prime p = k.p();
  const std::size_t cols = w + pair_count(w);
  FpMatrix m(k.v(), cols, p);
  for (std::size_t i = 0; i < k.v(); ++i) {
    const auto& inv = k.basis()[i];
    for (std::size_t j = 0; j < w; ++j) m.set(i, j, inv.bockstein[j]);
    const auto q = quadratic_coords(inv.quadratic.element(), w);
    for (std::size_t j = 0; j < q.size(); ++j) m.set(i, w + j, q[j]);
  }
  // In reduced echelon form the rows pivoting in the b-columns come first;
  // the remaining rows have zero b-part and are the canonical quadratics.
  const auto reduced = row_reduce(m);
  const auto& pivots = reduced.pivots;
  const auto& work = reduced.matrix;
  if (pivots.size() < k.v()) {
    throw DegenerateSubspace("k-invariant basis is linearly dependent (rank " + std::to_string(pivots.size()) +
                             " < v = " + std::to_string(k.v()) + ")");
  }
  const std::size_t b_rank = static_cast<std::size_t>(
      std::count_if(pivots.begin(), pivots.end(), [w](std::size_t c) { return c < w; }));
  if (b_rank < w) {
    throw BocksteinNotContained("K does not contain the image of the Bockstein: b-coordinate corank " +
                                    std::to_string(w - b_rank),
                                w - b_rank);
  }
  const Ambient quad_ambient(w, 0, p);
  std::vector<QuadraticForm> qs;
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    if (pivots[i] < w) continue;
    auto row = work.row(i);
    qs.emplace_back(quadratic_from_coords(row.subspan(w), quad_ambient));
  }
  return KoszulComplex(w, std::move(qs), p);
}

ExtElement differential(const KoszulComplex& c, const ExtElement& element) { return c.differential(element); }

FpMatrix differential_matrix(const KoszulComplex& c, std::size_t d) {
  if (d > c.top_degree()) throw InvalidArgument("degree " + std::to_string(d) + " exceeds w + r");
  const GradedBasis source(c.ambient(), d);
  const GradedBasis target(c.ambient(), d + 1);
  FpMatrix m(target.size(), source.size(), c.p());
  const Prime p = c.p();
  for (std::size_t col = 0; col < source.size(); ++col) {
    c.for_each_differential_term(source[col], [&](const Monomial& t, std::uint32_t coeff) {
      const auto row = target.index_of(t);
      m.set(row, col, p.add(m.at(row, col), coeff));
    });
  }
  return m;
}

// ---------------------------------------------------------------------------
// Homology

namespace detail {

using GradingKey = std::vector<std::uint16_t>;

// A grading preserved by d: every e_i and x_t gets a weight vector, and the
// key of a monomial is the sum. With all q_t monomials, x_t weighs as q_t.
class Grading {
 public:
  explicit Grading(const KoszulComplex& c) : w_(c.w()) {
    multigraded_ = std::all_of(c.quadratics().begin(), c.quadratics().end(),
                               [](const ExtElement& q) { return q.terms().size() <= 1; });
    if (!multigraded_) return;
    x_weights_.resize(c.r());
    for (std::size_t t = 0; t < c.r(); ++t) {
      const auto& q = c.quadratics()[t];
      x_weights_[t] = q.is_zero() ? 0 : q.terms().begin()->first.e;
      zero_q_.push_back(q.is_zero());
    }
  }

  GradingKey key(const Monomial& m) const {
    if (!multigraded_) return {static_cast<std::uint16_t>(m.e_degree() + 2 * m.x_degree())};
    GradingKey k(w_ + x_weights_.size(), 0);
    for (std::uint64_t bits = m.e; bits != 0; bits &= bits - 1) ++k[static_cast<std::size_t>(std::countr_zero(bits))];
    for (std::uint64_t bits = m.x; bits != 0; bits &= bits - 1) {
      const auto t = static_cast<std::size_t>(std::countr_zero(bits));
      if (zero_q_[t]) {
        ++k[w_ + t];
        continue;
      }
      for (std::uint64_t q = x_weights_[t]; q != 0; q &= q - 1) ++k[static_cast<std::size_t>(std::countr_zero(q))];
    }
    return k;
  }

 private:
  std::size_t w_;
  bool multigraded_ = false;
  std::vector<std::uint64_t> x_weights_;
  std::vector<bool> zero_q_;
};

struct DegreeBlocks {
  std::unique_ptr<GradedBasis> basis;
  std::map<GradingKey, std::size_t> block_id;
  std::vector<std::vector<std::size_t>> members;  // global indices per block
  std::vector<GradingKey> keys;                  // per block
  std::vector<std::size_t> block_of;             // global index -> block
  std::vector<std::size_t> local;                // global index -> index within block
};

struct BlockResult {
  std::size_t rank = 0;  // rank of d restricted to this block
  FpMatrix matrix{0, 0, Prime(3)};
  std::vector<FpVector> kernel;
  std::vector<FpVector> reps;  // local coordinates
};

}  // namespace detail

using detail::BlockResult;
using detail::DegreeBlocks;
using detail::GradingKey;

struct BettiTable::State {
  std::vector<DegreeBlocks> degrees;
  // results[d][b] for block b of degree d.
  std::vector<std::vector<BlockResult>> results;
  // Rep numbering: first global rep index of each block.
  std::vector<std::vector<std::size_t>> rep_offset;

  struct Decomposer {
    std::once_flag once;
    std::vector<EchelonBasis> echelons;  // per block
  };
  std::vector<std::unique_ptr<Decomposer>> decomposers;

  // Index of the block with the same key in degree d, or none.
  std::size_t matching_block(std::size_t d, std::size_t b_from, std::size_t d_from) const {
    auto it = degrees[d].block_id.find(degrees[d_from].keys[b_from]);
    return it == degrees[d].block_id.end() ? kNone : it->second;
  }
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);
};

namespace {

// Matrix of d restricted to (degree d, block b) -> (degree d + 1, same key).
FpMatrix block_matrix(const KoszulComplex& c, const std::vector<DegreeBlocks>& degrees, std::size_t d,
                      std::size_t b, std::size_t target_block) {
  const auto& src = degrees[d];
  const auto& cols = src.members[b];
  const Prime p = c.p();
  if (d + 1 >= degrees.size() || target_block == static_cast<std::size_t>(-1)) {
    return FpMatrix(0, cols.size(), p);
  }
  const auto& dst = degrees[d + 1];
  FpMatrix m(dst.members[target_block].size(), cols.size(), p);
  for (std::size_t col = 0; col < cols.size(); ++col) {
    c.for_each_differential_term((*src.basis)[cols[col]], [&](const Monomial& t, std::uint32_t coeff) {
      const auto global = dst.basis->index_of(t);
      const auto row = dst.local[global];
      m.set(row, col, p.add(m.at(row, col), coeff));
    });
  }
  return m;
}

}  // namespace

BettiTable betti(const KoszulComplex& c, const BettiOptions& options) {
  BettiTable table;
  table.complex_ = std::make_shared<const KoszulComplex>(c);
  table.has_representatives_ = options.representatives;
  auto state = std::make_shared<BettiTable::State>();
  const std::size_t top = c.top_degree();
  const detail::Grading grading(c);

  state->degrees.resize(top + 1);
  parallel_for(top + 1, options.workers, [&](std::size_t d) {
    auto& deg = state->degrees[d];
    deg.basis = std::make_unique<GradedBasis>(c.ambient(), d);
    const auto n = deg.basis->size();
    deg.block_of.resize(n);
    deg.local.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      auto key = grading.key((*deg.basis)[i]);
      auto [it, inserted] = deg.block_id.try_emplace(std::move(key), deg.members.size());
      if (inserted) deg.members.emplace_back();
      deg.block_of[i] = it->second;
      deg.local[i] = deg.members[it->second].size();
      deg.members[it->second].push_back(i);
    }
  });

  // Block ids follow first appearance in basis order, so representatives do too.
  for (auto& deg : state->degrees) {
    deg.keys.resize(deg.members.size());
    for (const auto& [k, id] : deg.block_id) deg.keys[id] = k;
  }

  // Phase 1: rank (and kernel) of d on every block.
  std::vector<std::pair<std::size_t, std::size_t>> tasks;
  state->results.resize(top + 1);
  for (std::size_t d = 0; d <= top; ++d) {
    state->results[d].resize(state->degrees[d].members.size());
    for (std::size_t b = 0; b < state->degrees[d].members.size(); ++b) tasks.emplace_back(d, b);
  }
  parallel_for(tasks.size(), options.workers, [&](std::size_t i) {
    const auto [d, b] = tasks[i];
    const std::size_t target = d + 1 <= top ? state->matching_block(d + 1, b, d) : BettiTable::State::kNone;
    auto m = block_matrix(c, state->degrees, d, b, target);
    auto& res = state->results[d][b];
    if (options.representatives) {
      res.kernel = kernel_basis(m);
      res.rank = m.cols() - res.kernel.size();
      res.matrix = std::move(m);
    } else {
      res.rank = rank(m);
    }
  });

  // Phase 2: dimensions and representatives.
  table.dims_.assign(top + 1, 0);
  for (std::size_t d = 0; d <= top; ++d) {
    for (std::size_t b = 0; b < state->degrees[d].members.size(); ++b) {
      const std::size_t size = state->degrees[d].members[b].size();
      std::size_t incoming = 0;
      if (d > 0) {
        const auto src = state->matching_block(d - 1, b, d);
        if (src != BettiTable::State::kNone) incoming = state->results[d - 1][src].rank;
      }
      table.dims_[d] += size - state->results[d][b].rank - incoming;
    }
  }

  if (options.representatives) {
    parallel_for(tasks.size(), options.workers, [&](std::size_t i) {
      const auto [d, b] = tasks[i];
      auto& res = state->results[d][b];
      std::vector<FpVector> boundaries;
      if (d > 0) {
        const auto src = state->matching_block(d - 1, b, d);
        if (src != BettiTable::State::kNone) {
          const auto& m = state->results[d - 1][src].matrix;
          for (std::size_t col = 0; col < m.cols(); ++col) {
            FpVector v(m.rows());
            bool zero = true;
            for (std::size_t row = 0; row < m.rows(); ++row) {
              v[row] = m.at(row, col);
              zero = zero && v[row] == 0;
            }
            if (!zero) boundaries.push_back(std::move(v));
          }
        }
      }
      res.reps = quotient_representatives(res.kernel, boundaries, c.p());
    });
    table.representatives_.resize(top + 1);
    state->rep_offset.resize(top + 1);
    for (std::size_t d = 0; d <= top; ++d) {
      const auto& deg = state->degrees[d];
      for (std::size_t b = 0; b < deg.members.size(); ++b) {
        state->rep_offset[d].push_back(table.representatives_[d].size());
        for (const auto& rep : state->results[d][b].reps) {
          ExtElement e(c.ambient());
          for (std::size_t j = 0; j < rep.size(); ++j) {
            if (rep[j] != 0) e.add_term((*deg.basis)[deg.members[b][j]], rep[j]);
          }
          table.representatives_[d].push_back(std::move(e));
        }
      }
    }
    state->decomposers.resize(top + 1);
    for (auto& dec : state->decomposers) dec = std::make_unique<BettiTable::State::Decomposer>();
  }
  table.state_ = std::move(state);
  return table;
}

const std::vector<ExtElement>& BettiTable::representatives(std::size_t d) const {
  if (!has_representatives_) throw InvalidArgument("homology was computed without representatives");
  if (d >= representatives_.size()) throw InvalidArgument("degree " + std::to_string(d) + " exceeds w + r");
  return representatives_[d];
}

std::size_t BettiTable::block_count(std::size_t d) const {
  return d < state_->degrees.size() ? state_->degrees[d].members.size() : 0;
}

CohomologyClass BettiTable::zero_class(std::size_t d) const {
  return CohomologyClass{d, FpVector(dim(d), 0), ExtElement(complex_->ambient()), this};
}

CohomologyClass BettiTable::unit() const { return class_of(ExtElement::one(complex_->ambient())); }

CohomologyClass BettiTable::basis_class(std::size_t d, std::size_t i) const {
  const auto& reps = representatives(d);
  if (i >= reps.size()) throw IndexOutOfRange("H^" + std::to_string(d) + " has no basis class " + std::to_string(i));
  FpVector coords(reps.size(), 0);
  coords[i] = 1;
  return CohomologyClass{d, std::move(coords), reps[i], this};
}

CohomologyClass BettiTable::class_of(const ExtElement& cocycle) const {
  if (!has_representatives_) throw InvalidArgument("homology was computed without representatives");
  if (!(cocycle.ambient() == complex_->ambient())) throw AmbientMismatch("cocycle outside the complex ambient");
  if (cocycle.is_zero()) throw InvalidArgument("class_of(0) needs a degree; use zero_class(d)");
  const std::size_t d = cocycle.terms().begin()->first.degree();
  if (!cocycle.is_homogeneous(d)) throw NotACocycle("element is not homogeneous");
  if (!complex_->differential(cocycle).is_zero()) throw NotACocycle(format_element(cocycle) + " is not a cocycle");
  return CohomologyClass{d, decompose(cocycle, d), cocycle, this};
}

FpVector BettiTable::decompose(const ExtElement& cocycle, std::size_t d) const {
  auto& st = *state_;
  auto& dec = *st.decomposers[d];
  const Prime p = complex_->p();
  std::call_once(dec.once, [&] {
    const auto& deg = st.degrees[d];
    for (std::size_t b = 0; b < deg.members.size(); ++b) {
      const auto& reps = st.results[d][b].reps;
      EchelonBasis e(deg.members[b].size(), p, reps.size());
      if (d > 0) {
        const auto src = st.matching_block(d - 1, b, d);
        if (src != State::kNone) {
          const auto& m = st.results[d - 1][src].matrix;
          for (std::size_t col = 0; col < m.cols(); ++col) {
            FpVector v(m.rows());
            for (std::size_t row = 0; row < m.rows(); ++row) v[row] = m.at(row, col);
            e.insert(std::move(v));
          }
        }
      }
      for (std::size_t i = 0; i < reps.size(); ++i) e.insert_tagged(reps[i], i);
      dec.echelons.push_back(std::move(e));
    }
  });
  const auto& deg = st.degrees[d];
  std::vector<FpVector> parts(deg.members.size());
  for (const auto& [m, c] : cocycle.terms()) {
    const auto g = deg.basis->index_of(m);
    const auto b = deg.block_of[g];
    if (parts[b].empty()) parts[b].assign(deg.members[b].size(), 0);
    parts[b][deg.local[g]] = c;
  }
  FpVector coords(dims_[d], 0);
  for (std::size_t b = 0; b < parts.size(); ++b) {
    if (parts[b].empty()) continue;
    FpVector tags;
    if (!dec.echelons[b].reduce(parts[b], tags)) {
      throw NotACocycle("cocycle is not in the span of boundaries and representatives");
    }
    for (std::size_t i = 0; i < tags.size(); ++i) coords[st.rep_offset[d][b] + i] = tags[i];
  }
  return coords;
}

bool CohomologyClass::is_zero() const noexcept {
  return std::all_of(coords.begin(), coords.end(), [](std::uint32_t c) { return c == 0; });
}

CohomologyClass cup(const CohomologyClass& a, const CohomologyClass& b) {
  if (a.table == nullptr || a.table != b.table) throw InvalidArgument("cup of classes from different tables");
  const auto& table = *a.table;
  const std::size_t d = a.degree + b.degree;
  if (d > table.complex().top_degree()) return table.zero_class(d);
  auto product = wedge(a.representative, b.representative);
  if (product.is_zero()) return table.zero_class(d);
  return table.class_of(product);
}

}  // namespace frattini
