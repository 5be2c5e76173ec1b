#include "frattini/pgroups.hpp"

#include <algorithm>
#include <atomic>

#include "frattini/error.hpp"
#include "frattini/parallel.hpp"

namespace frattini {

TwoStepLieAlgebra::TwoStepLieAlgebra(std::vector<std::string> labels, std::vector<bool> central,
                                     const std::vector<Bracket>& brackets)
    : labels_(std::move(labels)), central_(std::move(central)) {
  const std::size_t n = labels_.size();
  if (central_.size() != n) throw InvalidArgument("central mask length differs from the basis size");
  std::vector<std::vector<std::int64_t>> table(n * n, std::vector<std::int64_t>(n, 0));
  std::vector<bool> seen(n * n, false);
  for (const auto& b : brackets) {
    if (b.i >= n || b.j >= n) throw IndexOutOfRange("bracket index outside the basis");
    if (b.value.size() != n) throw InvalidArgument("bracket value has the wrong length");
    if (b.i == b.j) {
      if (std::any_of(b.value.begin(), b.value.end(), [](std::int64_t c) { return c != 0; })) {
        throw InvalidArgument("[b_i, b_i] must vanish");
      }
      continue;
    }
    if (seen[b.i * n + b.j]) throw InvalidArgument("bracket [b_i, b_j] given twice");
    seen[b.i * n + b.j] = seen[b.j * n + b.i] = true;
    for (std::size_t k = 0; k < n; ++k) {
      if (b.value[k] == 0) continue;
      if (!central_[k]) throw InvalidArgument("bracket [" + labels_[b.i] + ", " + labels_[b.j] + "] leaves the center");
      if (central_[b.i] || central_[b.j]) {
        throw InvalidArgument("bracket with central element " + labels_[central_[b.i] ? b.i : b.j] + " is nonzero");
      }
      table[b.i * n + b.j][k] = b.value[k];
      table[b.j * n + b.i][k] = -b.value[k];
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (table[i * n + j][k] != 0) constants_.push_back({i, j, k, table[i * n + j][k]});
      }
    }
  }
}

std::vector<std::int64_t> TwoStepLieAlgebra::bracket(std::size_t i, std::size_t j) const {
  std::vector<std::int64_t> out(dim(), 0);
  for (const auto& c : constants_) {
    if (c.i == i && c.j == j) out[c.k] += c.value;
  }
  return out;
}

FpVector TwoStepLieAlgebra::bracket(std::span<const std::uint32_t> u, std::span<const std::uint32_t> v, Prime p) const {
  FpVector out(dim(), 0);
  for (const auto& c : constants_) {
    if (u[c.i] == 0 || v[c.j] == 0) continue;
    out[c.k] = p.add(out[c.k], p.mul(p.mul(u[c.i], v[c.j]), p.reduce(c.value)));
  }
  return out;
}

TwoStepLieAlgebra free_two_step(std::size_t n) {
  if (n < 1) throw InvalidArgument("free_two_step needs n >= 1");
  const std::size_t dim = n + n * (n - 1) / 2;
  std::vector<std::string> labels;
  std::vector<bool> central(dim, false);
  for (std::size_t i = 1; i <= n; ++i) labels.push_back("e" + std::to_string(i));
  std::vector<TwoStepLieAlgebra::Bracket> brackets;
  std::size_t k = n;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = i + 1; j <= n; ++j, ++k) {
      labels.push_back("e" + std::to_string(i) + "," + std::to_string(j));
      central[k] = true;
      std::vector<std::int64_t> value(dim, 0);
      value[k] = 1;
      brackets.push_back({i - 1, j - 1, std::move(value)});
    }
  }
  return TwoStepLieAlgebra(std::move(labels), std::move(central), brackets);
}

// ---------------------------------------------------------------------------

PGroup::PGroup(TwoStepLieAlgebra algebra, Prime p, std::optional<std::vector<FpVector>> constraint)
    : algebra_(std::move(algebra)),
      p_(p),
      modulus_(p.value() * p.value()),
      constrained_(constraint.has_value()),
      constraint_span_(algebra_.dim(), p) {
  if (std::uint64_t{p.value()} * p.value() >= (std::uint64_t{1} << 31)) {
    throw InvalidArgument("p^2 must fit in 31 bits");
  }
  const std::size_t n = algebra_.dim();
  if (!constraint) {
    for (std::size_t i = 0; i < n; ++i) {
      FpVector e(n, 0);
      e[i] = 1;
      constraint_span_.insert(e);
      constraint_basis_.push_back(std::move(e));
    }
    return;
  }
  for (auto v : *constraint) {
    if (v.size() != n) throw InvalidArgument("constraint vector has the wrong length");
    for (auto& c : v) c %= p.value();
    if (constraint_span_.insert(v)) constraint_basis_.push_back(std::move(v));
  }
}

PGroup PGroup::free_group(std::size_t n, Prime p) { return PGroup(free_two_step(n), p); }

PGroup PGroup::unp(std::size_t n, Prime p) {
  auto algebra = free_two_step(n);
  std::vector<FpVector> s;
  for (std::size_t i = 0; i < n; ++i) {
    FpVector e(algebra.dim(), 0);
    e[i] = 1;
    s.push_back(std::move(e));
  }
  return PGroup(std::move(algebra), p, std::move(s));
}

BigInt PGroup::order() const { return boost::multiprecision::pow(BigInt(p_.value()), static_cast<unsigned>(log_order())); }

bool PGroup::contains(const PGroupElement& x) const {
  if (x.coords.size() != dim()) return false;
  FpVector reduced(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    if (x.coords[i] >= modulus_) return false;
    reduced[i] = x.coords[i] % p_.value();
  }
  return constraint_span_.contains(std::move(reduced));
}

void PGroup::check(const PGroupElement& x) const {
  if (!contains(x)) throw ConstraintViolation("element is not in the group (pi(x) outside S or bad coordinates)");
}

PGroupElement PGroup::element(std::vector<std::int64_t> coords) const {
  if (coords.size() != dim()) throw InvalidArgument("element has the wrong number of coordinates");
  PGroupElement x;
  x.coords.reserve(coords.size());
  const auto m = static_cast<std::int64_t>(modulus_);
  for (auto c : coords) x.coords.push_back(static_cast<std::uint32_t>(((c % m) + m) % m));
  check(x);
  return x;
}

PGroupElement PGroup::identity() const { return PGroupElement{std::vector<std::uint32_t>(dim(), 0)}; }

PGroupElement PGroup::multiply(const PGroupElement& x, const PGroupElement& y) const {
  check(x);
  check(y);
  const std::size_t n = dim();
  FpVector px(n), py(n);
  for (std::size_t i = 0; i < n; ++i) {
    px[i] = x.coords[i] % p_.value();
    py[i] = y.coords[i] % p_.value();
  }
  const auto b = algebra_.bracket(px, py, p_);
  PGroupElement z;
  z.coords.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t s = std::uint64_t{x.coords[i]} + y.coords[i] + std::uint64_t{p_.value()} * b[i];
    z.coords[i] = static_cast<std::uint32_t>(s % modulus_);
  }
  return z;
}

PGroupElement PGroup::inverse(const PGroupElement& x) const {
  check(x);
  // [pi x, pi(-x)] = 0, so -x is the inverse.
  PGroupElement y = x;
  for (auto& c : y.coords) c = c == 0 ? 0 : modulus_ - c;
  return y;
}

PGroupElement PGroup::power(const PGroupElement& x, std::uint64_t k) const {
  PGroupElement result = identity();
  PGroupElement base = x;
  while (k > 0) {
    if (k & 1) result = multiply(result, base);
    k >>= 1;
    if (k > 0) base = multiply(base, base);
  }
  return result;
}

PGroupElement PGroup::commutator(const PGroupElement& x, const PGroupElement& y) const {
  return multiply(multiply(inverse(x), inverse(y)), multiply(x, y));
}

std::vector<PGroupElement> PGroup::generators() const {
  std::vector<PGroupElement> gens;
  for (const auto& s : constraint_basis_) gens.push_back(PGroupElement{std::vector<std::uint32_t>(s.begin(), s.end())});
  for (std::size_t i = 0; i < dim(); ++i) {
    PGroupElement e = identity();
    e.coords[i] = p_.value();
    gens.push_back(std::move(e));
  }
  return gens;
}

std::vector<PGroupElement> PGroup::elements(std::uint64_t bound) const {
  if (order() > bound) {
    throw BudgetExceeded("group of order " + order().str() + " exceeds the enumeration bound " + std::to_string(bound));
  }
  const std::size_t n = dim();
  const std::size_t s = constraint_rank();
  const std::uint32_t p = p_.value();
  std::vector<PGroupElement> out;
  out.reserve(static_cast<std::size_t>(order()));
  // x = lift(sum c_i s_i) + p * k, every (c, k) exactly once.
  std::vector<std::uint32_t> c(s, 0);
  while (true) {
    FpVector base(n, 0);
    for (std::size_t i = 0; i < s; ++i) {
      for (std::size_t j = 0; j < n; ++j) base[j] = p_.add(base[j], p_.mul(c[i], constraint_basis_[i][j]));
    }
    std::vector<std::uint32_t> k(n, 0);
    while (true) {
      PGroupElement x;
      x.coords.resize(n);
      for (std::size_t j = 0; j < n; ++j) x.coords[j] = base[j] + p * k[j];
      out.push_back(std::move(x));
      std::size_t j = 0;
      while (j < n && ++k[j] == p) k[j++] = 0;
      if (j == n) break;
    }
    std::size_t i = 0;
    while (i < s && ++c[i] == p) c[i++] = 0;
    if (i == s) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

PGroupElement PGroup::random_element(std::mt19937_64& rng) const {
  std::uniform_int_distribution<std::uint32_t> residue(0, p_.value() - 1);
  const std::size_t n = dim();
  FpVector base(n, 0);
  for (const auto& s : constraint_basis_) {
    const auto c = residue(rng);
    for (std::size_t j = 0; j < n; ++j) base[j] = p_.add(base[j], p_.mul(c, s[j]));
  }
  PGroupElement x;
  x.coords.resize(n);
  for (std::size_t j = 0; j < n; ++j) x.coords[j] = base[j] + p_.value() * residue(rng);
  return x;
}

PGroupElement multiply(const PGroup& g, const PGroupElement& x, const PGroupElement& y) { return g.multiply(x, y); }

std::uint64_t order_of(const PGroup& g, const PGroupElement& x) {
  const auto e = g.identity();
  if (x == e) return 1;
  const std::uint64_t p = g.p().value();
  if (g.power(x, p) == e) return p;
  if (g.power(x, p * p) == e) return p * p;
  throw Error("element order exceeds p^2");
}

std::size_t submodule_log_order(const std::vector<PGroupElement>& generators, Prime p) {
  if (generators.empty()) return 0;
  const std::size_t n = generators.front().coords.size();
  const std::uint32_t pv = p.value();
  // Stage 1: rows with a unit entry are eliminated mod p^2 with unit pivots.
  // What survives is divisible by p; together with p times the pivot rows it
  // spans M intersect pK, measured by an F_p rank after dividing by p.
  const std::uint64_t mod = std::uint64_t{pv} * pv;
  std::vector<std::vector<std::uint64_t>> rows;
  for (const auto& g : generators) rows.emplace_back(g.coords.begin(), g.coords.end());
  std::vector<std::vector<std::uint64_t>> pivot_rows;
  std::vector<bool> used(rows.size(), false);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t found = rows.size();
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (!used[r] && rows[r][col] % pv != 0) {
        found = r;
        break;
      }
    }
    if (found == rows.size()) continue;
    used[found] = true;
    auto& piv = rows[found];
    // Unit mod p^2: invert via the inverse mod p lifted by one Newton step.
    const std::uint64_t a = piv[col] % mod;
    std::uint64_t inv = p.inv(static_cast<std::uint32_t>(a % pv));
    inv = inv * ((2 + mod - a * inv % mod) % mod) % mod;
    for (auto& v : piv) v = v * inv % mod;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == found || rows[r][col] % mod == 0) continue;
      const std::uint64_t f = rows[r][col] % mod;
      for (std::size_t j = 0; j < n; ++j) rows[r][j] = (rows[r][j] + (mod - f) * piv[j] % mod) % mod;
    }
    pivot_rows.push_back(piv);
  }
  EchelonBasis divisible(n, p);
  for (const auto& piv : pivot_rows) {
    FpVector v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = static_cast<std::uint32_t>(piv[j] % pv);
    divisible.insert(std::move(v));
  }
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (used[r]) continue;
    FpVector v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = static_cast<std::uint32_t>(rows[r][j] / pv);
    divisible.insert(std::move(v));
  }
  return pivot_rows.size() + divisible.rank();
}

// ---------------------------------------------------------------------------

namespace {

std::size_t log_p(BigInt value, std::uint32_t p) {
  std::size_t k = 0;
  while (value > 1) {
    if (value % p != 0) throw Error("count " + value.str() + " is not a power of p");
    value /= p;
    ++k;
  }
  return k;
}

}  // namespace

VerificationReport verify(const PGroup& g, const VerifyOptions& options) {
  VerificationReport rep;
  rep.group_order = g.order();
  rep.log_order = g.log_order();
  const std::uint64_t p = g.p().value();

  bool exhaustive = false;
  switch (options.mode) {
    case VerifyMode::Exhaustive:
      if (rep.group_order > options.exhaustive_bound) {
        throw BudgetExceeded("group order " + rep.group_order.str() + " exceeds the exhaustive bound " +
                             std::to_string(options.exhaustive_bound) + "; use sampled mode");
      }
      exhaustive = true;
      break;
    case VerifyMode::Auto:
      exhaustive = rep.group_order <= options.exhaustive_bound;
      break;
    case VerifyMode::Sampled:
      exhaustive = false;
      break;
  }
  rep.exhaustive = exhaustive;

  std::mt19937_64 rng(options.seed);
  const auto e = g.identity();
  const auto gens = g.generators();

  std::vector<PGroupElement> elems;
  if (exhaustive) {
    elems = g.elements(options.exhaustive_bound);
  } else {
    for (std::uint64_t i = 0; i < options.sampled_elements; ++i) elems.push_back(g.random_element(rng));
  }

  // Identity and inverses.
  rep.identity_inverse_ok = true;
  for (const auto& x : elems) {
    if (!(g.multiply(x, e) == x && g.multiply(e, x) == x && g.multiply(x, g.inverse(x)) == e &&
          g.multiply(g.inverse(x), x) == e)) {
      rep.identity_inverse_ok = false;
      break;
    }
  }

  // Associativity.
  const BigInt cube = rep.group_order * rep.group_order * rep.group_order;
  std::atomic<bool> assoc_ok{true};
  if (exhaustive && cube <= options.triple_budget) {
    rep.associativity_exhaustive = true;
    const std::size_t n = elems.size();
    parallel_for(n, options.workers, [&](std::size_t i) {
      if (!assoc_ok) return;
      const auto& x = elems[i];
      for (const auto& y : elems) {
        const auto xy = g.multiply(x, y);
        for (const auto& z : elems) {
          if (!(g.multiply(xy, z) == g.multiply(x, g.multiply(y, z)))) {
            assoc_ok = false;
            return;
          }
        }
      }
    });
    rep.associativity_triples = static_cast<std::uint64_t>(n) * n * n;
  } else {
    for (std::uint64_t t = 0; t < options.sampled_triples && assoc_ok; ++t) {
      const auto x = g.random_element(rng), y = g.random_element(rng), z = g.random_element(rng);
      if (!(g.multiply(g.multiply(x, y), z) == g.multiply(x, g.multiply(y, z)))) assoc_ok = false;
    }
    rep.associativity_triples = options.sampled_triples;
  }
  rep.associativity_ok = assoc_ok;

  // Omega_1 and the pC condition.
  std::vector<PGroupElement> omega;
  if (exhaustive) {
    for (const auto& x : elems) {
      if (g.power(x, p) == e) omega.push_back(x);
    }
    rep.omega1_size = BigInt(omega.size());
    rep.omega1_rank = log_p(rep.omega1_size, g.p().value());
    rep.omega1_method = "enumerated";
  } else {
    // x^p = p x, so Omega_1 = pK, which lies in every pi^{-1}(S).
    rep.omega1_rank = g.dim();
    rep.omega1_size = boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(g.dim()));
    rep.omega1_method = "structural";
    for (std::uint64_t i = 0; i < options.sampled_elements; ++i) {
      auto x = g.random_element(rng);
      for (auto& c : x.coords) c = (c % p) * static_cast<std::uint32_t>(p) % g.modulus();
      omega.push_back(std::move(x));
    }
  }
  auto commutes = [&](const PGroupElement& x, const PGroupElement& y) { return g.multiply(x, y) == g.multiply(y, x); };
  std::atomic<bool> pc_ok{true};
  const std::vector<PGroupElement>* partners = &gens;
  if (exhaustive && BigInt(omega.size()) * BigInt(elems.size()) <= options.triple_budget) {
    partners = &elems;
    rep.pc_method = "all-pairs";
  } else {
    rep.pc_method = exhaustive ? "generators" : "sampled";
  }
  parallel_for(omega.size(), options.workers, [&](std::size_t i) {
    if (!pc_ok) return;
    if (g.power(omega[i], p) != e) return;  // sampled candidates are order p by construction
    for (const auto& y : *partners) {
      if (!commutes(omega[i], y)) {
        pc_ok = false;
        return;
      }
    }
    // Sampled mode spends about sampled_triples extra pairs in total.
    if (!exhaustive && !elems.empty()) {
      const std::size_t per = std::max<std::uint64_t>(1, options.sampled_triples / omega.size());
      for (std::size_t j = 0; j < per; ++j) {
        if (!commutes(omega[i], elems[(i * per + j) % elems.size()])) {
          pc_ok = false;
          return;
        }
      }
    }
  });
  rep.pc_ok = pc_ok;

  // Frattini subgroup, abelianization and commutator subgroup from generators.
  std::vector<PGroupElement> commutators;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) commutators.push_back(g.commutator(gens[i], gens[j]));
  }
  rep.commutator_rank = submodule_log_order(commutators, g.p());
  auto frattini = commutators;
  for (const auto& x : gens) frattini.push_back(g.power(x, p));
  rep.frattini_rank = submodule_log_order(frattini, g.p());
  rep.abelianization_rank = rep.log_order - rep.frattini_rank;

  // Exponent.
  rep.exponent = 1;
  for (const auto& x : elems) rep.exponent = std::max(rep.exponent, order_of(g, x));
  for (const auto& x : gens) rep.exponent = std::max(rep.exponent, order_of(g, x));
  return rep;
}

}  // namespace frattini
