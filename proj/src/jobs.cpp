#include "frattini/jobs.hpp"

#include <algorithm>
#include <sstream>

#include "frattini/bockstein.hpp"
#include "frattini/error.hpp"
#include "frattini/extalg.hpp"
#include "frattini/koszul.hpp"
#include "frattini/parallel.hpp"
#include "frattini/series.hpp"
#include "frattini/younghook.hpp"

namespace frattini {

using nlohmann::json;

namespace {

json big(const BigInt& v) {
  if (v >= 0 && v <= std::numeric_limits<std::uint64_t>::max()) return v.convert_to<std::uint64_t>();
  return v.str();
}

json big_list(const std::vector<BigInt>& values) {
  json out = json::array();
  for (const auto& v : values) out.push_back(big(v));
  return out;
}

std::uint64_t binomial2(std::uint64_t n) { return n * (n - 1) / 2; }

// Extension data resolved into a Koszul complex, plus the facts that fed it.
struct Extension {
  KoszulComplex complex;
  std::string source;
  bool bockstein_contained = true;
};

ExtElement quadratic_from_triples(const json& triples, std::size_t w, Prime p) {
  const Ambient ambient(w, 0, p);
  ExtElement q(ambient);
  if (!triples.is_array()) throw InvalidArgument("a quadratic must be a list of [i, j, coeff] triples");
  for (const auto& t : triples) {
    if (!t.is_array() || t.size() != 3) throw InvalidArgument("expected an [i, j, coeff] triple, got " + t.dump());
    const auto i = t[0].get<std::int64_t>(), j = t[1].get<std::int64_t>();
    const auto c = t[2].get<std::int64_t>();
    if (i < 1 || j <= i || static_cast<std::size_t>(j) > w) {
      throw IndexOutOfRange("quadratic term " + t.dump() + " needs 1 <= i < j <= " + std::to_string(w));
    }
    q += ExtElement::monomial(ambient, Monomial{(std::uint64_t{1} << (i - 1)) | (std::uint64_t{1} << (j - 1)), 0}, c);
  }
  return q;
}

Extension load_extension(const JobSpec& spec) {
  if (spec.input) {
    const json& doc = *spec.input;
    if (!doc.is_object()) throw InvalidArgument("input must be a JSON object");
    const auto p = Prime(spec.p ? *spec.p : doc.at("p").get<std::int64_t>());
    const auto w_signed = spec.w ? static_cast<std::int64_t>(*spec.w) : doc.at("w").get<std::int64_t>();
    if (w_signed < 0) throw InvalidArgument("w must be nonnegative");
    const auto w = static_cast<std::size_t>(w_signed);
    const bool has_q = doc.contains("quadratics"), has_k = doc.contains("k_basis");
    if (has_q == has_k) throw InvalidArgument("input needs exactly one of 'quadratics' or 'k_basis'");
    if (has_q) {
      std::vector<QuadraticForm> qs;
      for (const auto& q : doc.at("quadratics")) qs.emplace_back(quadratic_from_triples(q, w, p));
      return {KoszulComplex(w, std::move(qs), p, spec.force), "quadratics", true};
    }
    std::vector<KInvariant> basis;
    for (const auto& k : doc.at("k_basis")) {
      basis.push_back({k.at("b").get<std::vector<std::int64_t>>(), QuadraticForm(quadratic_from_triples(k.at("q"), w, p))});
    }
    return {canonicalize(KInvariantSubspace(w, p, std::move(basis))), "k_basis", true};
  }
  if (!spec.p || !spec.w) throw InvalidArgument("koszul needs --p and --w, or an input file");
  const Prime p(*spec.p);
  const Ambient ambient(*spec.w, 0, p);
  std::vector<QuadraticForm> qs;
  for (const auto& text : spec.quadratics) qs.emplace_back(parse_element(text, ambient));
  return {KoszulComplex(*spec.w, std::move(qs), p, spec.force), "inline", true};
}

std::size_t default_truncation(std::size_t w_plus_r) { return 2 * w_plus_r; }

json series_block(const PoincarePolynomial& q, std::size_t v, std::size_t truncation) {
  const auto expansion = expand(PoincareSeries{q, v}, truncation);
  const auto back = multiply_by_denominator(expansion, v, truncation);
  bool recovers = true;
  for (std::size_t d = 0; d <= truncation; ++d) recovers = recovers && back[d] == q[d];
  return {{"q", big_list(q.coefficients())},
          {"denominator_exponent", v},
          {"truncation", truncation},
          {"expansion", big_list(expansion)},
          {"recovers_q", recovers}};
}

json checks_block(const PoincarePolynomial& q, std::size_t w, std::size_t r) {
  const auto c = checks(q, w, r);
  return {{"palindrome", c.palindrome}, {"euler_zero", c.euler_zero}, {"degree_match", c.degree_match}};
}

// Koszul complex of U(n, p): w = n, q_{ij} = e_i e_j for i < j.
KoszulComplex unp_complex(std::size_t n, Prime p) {
  const Ambient ambient(n, 0, p);
  std::vector<QuadraticForm> qs;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = i + 1; j <= n; ++j) qs.emplace_back(wedge(ExtElement::e(ambient, i), ExtElement::e(ambient, j)));
  }
  return KoszulComplex(n, std::move(qs), p);
}

json closed_forms(std::size_t n_size) {
  const auto n = static_cast<std::int64_t>(n_size);
  return {{"a1", n},
          {"a2", n * (n + 1) * (n - 1) / 3},
          {"a3", n * (n * n - 1) * (3 * n - 4) * (n + 3) / 60}};
}

json compare_block(const std::vector<std::uint64_t>& koszul, const std::vector<std::uint64_t>& oracle, bool guaranteed) {
  json degrees = json::array();
  bool all = koszul.size() == oracle.size();
  const std::size_t top = std::max(koszul.size(), oracle.size());
  for (std::size_t d = 0; d < top; ++d) {
    const std::uint64_t k = d < koszul.size() ? koszul[d] : 0, o = d < oracle.size() ? oracle[d] : 0;
    degrees.push_back({{"degree", d}, {"koszul", k}, {"oracle", o}, {"agree", k == o}});
    all = all && k == o;
  }
  const std::string match = all ? "AGREE" : "DISAGREE";
  return {{"degrees", degrees}, {"match", match}, {"verdict", guaranteed ? match : "INFORMATIONAL"}};
}

std::string error_type(const std::exception& e) {
  if (dynamic_cast<const SyntaxError*>(&e)) return "SyntaxError";
  if (dynamic_cast<const BocksteinNotContained*>(&e)) return "BocksteinNotContained";
  if (dynamic_cast<const BudgetExceeded*>(&e)) return "BudgetExceeded";
  if (dynamic_cast<const DegenerateSubspace*>(&e)) return "DegenerateSubspace";
  if (dynamic_cast<const DependentQuadratics*>(&e)) return "DependentQuadratics";
  if (dynamic_cast<const PrimeTooSmall*>(&e)) return "PrimeTooSmall";
  if (dynamic_cast<const SizeLimitExceeded*>(&e)) return "SizeLimitExceeded";
  if (dynamic_cast<const IndexOutOfRange*>(&e)) return "IndexOutOfRange";
  if (dynamic_cast<const AmbientMismatch*>(&e)) return "AmbientMismatch";
  if (dynamic_cast<const InvalidArgument*>(&e)) return "InvalidArgument";
  if (dynamic_cast<const json::exception*>(&e)) return "InputFormatError";
  if (dynamic_cast<const Error*>(&e)) return "Error";
  return "InternalError";
}

}  // namespace

std::string to_string(Command command) {
  switch (command) {
    case Command::Koszul: return "koszul";
    case Command::Unp: return "unp";
    case Command::Group: return "group";
    case Command::Bockstein: return "bockstein";
    case Command::Series: return "series";
    case Command::Crosscheck: return "crosscheck";
  }
  return "unknown";
}

std::optional<Command> parse_command(std::string_view name) {
  for (auto c : {Command::Koszul, Command::Unp, Command::Group, Command::Bockstein, Command::Series, Command::Crosscheck}) {
    if (to_string(c) == name) return c;
  }
  return std::nullopt;
}

int exit_code_for(const std::exception& error) noexcept {
  if (dynamic_cast<const BocksteinNotContained*>(&error)) return kExitBocksteinNotContained;
  if (dynamic_cast<const BudgetExceeded*>(&error)) return kExitBudget;
  if (dynamic_cast<const SyntaxError*>(&error) || dynamic_cast<const InvalidArgument*>(&error) ||
      dynamic_cast<const IndexOutOfRange*>(&error) || dynamic_cast<const AmbientMismatch*>(&error) ||
      dynamic_cast<const DegenerateSubspace*>(&error) || dynamic_cast<const DependentQuadratics*>(&error) ||
      dynamic_cast<const PrimeTooSmall*>(&error) || dynamic_cast<const SizeLimitExceeded*>(&error) ||
      dynamic_cast<const json::exception*>(&error)) {
    return kExitUsage;
  }
  return kExitDisagreement;
}

json run_koszul(const JobSpec& spec) {
  const auto ext = load_extension(spec);
  const auto& c = ext.complex;
  const auto table = betti(c, {.representatives = true, .workers = spec.workers});

  json quadratics = json::array();
  for (const auto& q : c.quadratics()) quadratics.push_back(format_element(q));

  json reps = json::array();
  const std::size_t limit = spec.full ? std::numeric_limits<std::size_t>::max() : spec.representatives;
  for (std::size_t d = 0; d <= c.top_degree(); ++d) {
    const auto& all = table.representatives(d);
    json shown = json::array();
    for (std::size_t i = 0; i < all.size() && i < limit; ++i) shown.push_back(format_element(all[i]));
    reps.push_back({{"degree", d}, {"count", all.size()}, {"shown", shown}, {"truncated", all.size() > limit}});
  }

  const auto q = from_betti(table);
  const std::size_t v = c.w() + c.r();
  const std::size_t truncation = spec.truncation.value_or(default_truncation(c.w() + c.r()));
  return {{"command", "koszul"},
          {"input", {{"p", c.p().value()}, {"w", c.w()}, {"r", c.r()}, {"v", v}, {"source", ext.source}, {"quadratics", quadratics}}},
          {"hypotheses",
           {{"bockstein_contained", ext.bockstein_contained},
            {"quadratics_independent", c.quadratics_independent()},
            {"p_gt_r_plus_1", c.hypothesis_met()},
            {"p_gt_3", c.p().value() > 3}}},
          {"warnings", c.warnings()},
          {"betti", table.dims()},
          {"representatives", reps},
          {"poincare", series_block(q, v, truncation)},
          {"checks", checks_block(q, c.w(), c.r())}};
}

json run_unp(const JobSpec& spec) {
  if (spec.n < 1) throw InvalidArgument("unp needs n >= 1");
  const std::uint64_t r = binomial2(spec.n);
  const bool automatic = !spec.p.has_value();
  const Prime p(automatic ? static_cast<std::int64_t>(next_prime_above(r + 1)) : *spec.p);
  const auto c = unp_complex(spec.n, p);
  const auto table = betti(c, {.representatives = false, .workers = spec.workers});
  const auto oracle = unp_betti(spec.n);
  json report = compare_block(table.dims(), oracle, c.hypothesis_met());
  auto forms = closed_forms(spec.n);
  bool forms_ok = true;
  for (std::size_t d = 1; d <= 3; ++d) {
    forms_ok = forms_ok && forms["a" + std::to_string(d)].get<std::int64_t>() == static_cast<std::int64_t>(table.dim(d));
  }
  forms["agree"] = forms_ok;
  report.update({{"command", "unp"},
                 {"n", spec.n},
                 {"p", p.value()},
                 {"p_source", automatic ? "auto" : "given"},
                 {"w", c.w()},
                 {"r", c.r()},
                 {"hypothesis_met", c.hypothesis_met()},
                 {"koszul", table.dims()},
                 {"oracle", oracle},
                 {"closed_forms", forms},
                 {"warnings", c.warnings()}});
  return report;
}

json run_group(const JobSpec& spec) {
  if (spec.n < 1) throw InvalidArgument("group needs n >= 1");
  if (!spec.p) throw InvalidArgument("group needs --p");
  const Prime p(*spec.p);
  const auto g = spec.free_group ? PGroup::free_group(spec.n, p) : PGroup::unp(spec.n, p);
  VerifyOptions options;
  options.mode = spec.verify_mode;
  options.seed = spec.seed;
  options.workers = spec.workers;
  const auto rep = verify(g, options);
  const char* mode = spec.verify_mode == VerifyMode::Auto ? "auto" : spec.verify_mode == VerifyMode::Exhaustive ? "exhaustive" : "sampled";
  return {{"command", "group"},
          {"group", spec.free_group ? "G(h(" + std::to_string(spec.n) + "))" : "U(" + std::to_string(spec.n) + "," + std::to_string(p.value()) + ")"},
          {"n", spec.n},
          {"p", p.value()},
          {"mode", mode},
          {"seed", spec.seed},
          {"order", big(rep.group_order)},
          {"log_order", rep.log_order},
          {"exhaustive", rep.exhaustive},
          {"associativity", {{"ok", rep.associativity_ok}, {"exhaustive", rep.associativity_exhaustive}, {"triples", rep.associativity_triples}}},
          {"identity_inverse_ok", rep.identity_inverse_ok},
          {"pc", {{"ok", rep.pc_ok}, {"method", rep.pc_method}}},
          {"omega1", {{"size", big(rep.omega1_size)}, {"rank", rep.omega1_rank}, {"method", rep.omega1_method}}},
          {"frattini_rank", rep.frattini_rank},
          {"abelianization_rank", rep.abelianization_rank},
          {"commutator_rank", rep.commutator_rank},
          {"exponent", rep.exponent}};
}

json run_bockstein(const JobSpec& spec) {
  if (spec.n < 1) throw InvalidArgument("bockstein needs n >= 1");
  if (!spec.p) throw InvalidArgument("bockstein needs --p");
  const Prime p(*spec.p);
  if (p.value() <= 3) throw PrimeTooSmall("the Bockstein formulas need p > 3, got p = " + std::to_string(p.value()));
  const std::size_t n = spec.n;

  json generators = json::array();
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = i + 1; j <= n; ++j) {
      for (const auto& g : {BigradedElement::zeta(n, p, i, j), BigradedElement::x(n, p, i, j)}) {
        generators.push_back({{"generator", format_bigraded(g)}, {"beta", format_bigraded(bockstein(g))}});
      }
    }
  }

  json expressions = json::array();
  for (const auto& text : spec.expressions) {
    const auto a = parse_bigraded(text, n, p);
    const auto b = bockstein(a);
    expressions.push_back({{"input", text},
                           {"parsed", format_bigraded(a)},
                           {"beta", format_bigraded(b)},
                           {"beta_unp", format_bigraded(restrict_to_unp(b))}});
  }

  const auto rep = verify_differential(n, p, spec.max_degree, spec.seed);
  return {{"command", "bockstein"},
          {"n", n},
          {"p", p.value()},
          {"seed", spec.seed},
          {"hypotheses", {{"p_gt_3", true}}},
          {"generators", generators},
          {"expressions", expressions},
          {"verification",
           {{"max_degree", rep.max_degree},
            {"monomials_checked", rep.monomials_checked},
            {"square_violations", rep.square_violations.size()},
            {"square_witnesses", rep.square_violations},
            {"degree_violations", rep.degree_violations},
            {"leibniz_pairs_checked", rep.leibniz_pairs_checked},
            {"leibniz_violations", rep.leibniz_violations.size()},
            {"leibniz_witnesses", rep.leibniz_violations},
            {"ok", rep.ok()}}}};
}

json run_series(const JobSpec& spec) {
  json report{{"command", "series"}};
  if (!spec.series_q.empty()) {
    const PoincarePolynomial q = PoincarePolynomial::from_dims(spec.series_q);
    if (!spec.series_v) throw InvalidArgument("series with --q needs --v");
    const std::size_t v = *spec.series_v;
    const std::size_t truncation = spec.truncation.value_or(default_truncation(v > 0 ? v : q.degree()));
    report["poincare"] = series_block(q, v, truncation);
    if (spec.w) {
      if (v < *spec.w) throw InvalidArgument("--v must be at least --w");
      report["checks"] = checks_block(q, *spec.w, v - *spec.w);
    }
    return report;
  }
  const auto ext = load_extension(spec);
  const auto& c = ext.complex;
  const auto table = betti(c, {.representatives = false, .workers = spec.workers});
  const auto q = from_betti(table);
  const std::size_t v = spec.series_v.value_or(c.w() + c.r());
  report["input"] = {{"p", c.p().value()}, {"w", c.w()}, {"r", c.r()}, {"source", ext.source}};
  report["poincare"] = series_block(q, v, spec.truncation.value_or(default_truncation(c.w() + c.r())));
  report["checks"] = checks_block(q, c.w(), c.r());
  return report;
}

json run_crosscheck(const JobSpec& spec) {
  if (spec.n_max < 1 || spec.n_max > 5) throw InvalidArgument("crosscheck needs 1 <= n_max <= 5");
  if (spec.primes.empty()) throw InvalidArgument("crosscheck needs at least one prime");
  std::vector<Prime> primes;
  for (auto p : spec.primes) primes.emplace_back(p);

  struct Item {
    std::size_t n;
    Prime p;
    std::vector<std::uint64_t> koszul;
  };
  std::vector<Item> items;
  std::vector<std::vector<std::uint64_t>> oracles;
  for (std::size_t n = 1; n <= spec.n_max; ++n) {
    oracles.push_back(unp_betti(n));
    for (auto p : primes) items.push_back({n, p, {}});
  }
  parallel_for(items.size(), spec.workers, [&](std::size_t i) {
    const auto c = unp_complex(items[i].n, items[i].p);
    items[i].koszul = betti(c, {.representatives = false, .workers = 1}).dims();
  });

  json rows = json::array();
  std::size_t agree = 0, guaranteed_disagreements = 0;
  for (const auto& item : items) {
    const std::uint64_t r = binomial2(item.n);
    const bool guaranteed = item.p.value() > r + 1;
    const auto& oracle = oracles[item.n - 1];
    json row = compare_block(item.koszul, oracle, guaranteed);
    row.erase("degrees");
    row.update({{"n", item.n}, {"p", item.p.value()}, {"r", r}, {"guaranteed", guaranteed}, {"koszul", item.koszul}, {"oracle", oracle}});
    if (row["match"] == "AGREE") {
      ++agree;
    } else if (guaranteed) {
      ++guaranteed_disagreements;
    }
    rows.push_back(std::move(row));
  }
  return {{"command", "crosscheck"},
          {"n_max", spec.n_max},
          {"primes", spec.primes},
          {"rows", rows},
          {"summary", {{"rows", items.size()}, {"agree", agree}, {"disagree", items.size() - agree}, {"guaranteed_disagreements", guaranteed_disagreements}}}};
}

JobResult run_job(const JobSpec& spec) {
  JobResult result;
  try {
    switch (spec.command) {
      case Command::Koszul: result.report = run_koszul(spec); break;
      case Command::Unp: result.report = run_unp(spec); break;
      case Command::Group: result.report = run_group(spec); break;
      case Command::Bockstein: result.report = run_bockstein(spec); break;
      case Command::Series: result.report = run_series(spec); break;
      case Command::Crosscheck: result.report = run_crosscheck(spec); break;
    }
    const auto& r = result.report;
    if (spec.command == Command::Unp && r["verdict"] == "DISAGREE") result.exit_code = kExitDisagreement;
    if (spec.command == Command::Crosscheck && r["summary"]["guaranteed_disagreements"] != 0) result.exit_code = kExitDisagreement;
    if (spec.command == Command::Bockstein && !r["verification"]["ok"].get<bool>()) result.exit_code = kExitDisagreement;
  } catch (const std::exception& e) {
    result.exit_code = exit_code_for(e);
    json error{{"type", error_type(e)}, {"message", e.what()}};
    if (const auto* b = dynamic_cast<const BocksteinNotContained*>(&e)) error["corank"] = b->corank();
    if (dynamic_cast<const BudgetExceeded*>(&e)) error["suggestion"] = "rerun with --mode sampled";
    result.report = {{"command", to_string(spec.command)}, {"error", error}, {"exit_code", result.exit_code}};
  }
  return result;
}

std::string render_json(const json& report) { return report.dump() + "\n"; }

namespace {

class TextWriter {
 public:
  explicit TextWriter(bool color) : color_(color) {}

  std::string yes_no(const json& flag) const { return paint(flag.get<bool>() ? "yes" : "no", flag.get<bool>() ? kGreen : kRed); }
  std::string verdict(const json& v) const {
    const auto s = v.get<std::string>();
    return paint(s, s == "AGREE" ? kGreen : s == "DISAGREE" ? kRed : kYellow);
  }
  std::string paint(const std::string& text, const char* code) const {
    return color_ ? std::string(code) + text + "\033[0m" : text;
  }

  static constexpr const char* kGreen = "\033[32m";
  static constexpr const char* kRed = "\033[31m";
  static constexpr const char* kYellow = "\033[33m";

 private:
  bool color_;
};

std::string join(const json& values, const std::string& sep = " ") {
  std::string out;
  for (const auto& v : values) {
    if (!out.empty()) out += sep;
    out += v.is_string() ? v.get<std::string>() : v.dump();
  }
  return out;
}

std::string power_series(const json& coefficients) {
  std::string out;
  std::size_t d = 0;
  for (const auto& c : coefficients) {
    const std::string s = c.is_string() ? c.get<std::string>() : c.dump();
    if (!out.empty()) out += " + ";
    out += s;
    if (d >= 1) out += " t";
    if (d >= 2) out += "^" + std::to_string(d);
    ++d;
  }
  return out + " + O(t^" + std::to_string(d) + ")";
}

void render_poincare(std::ostringstream& os, const json& poincare, const TextWriter& tw) {
  os << "q(t) coefficients: " << join(poincare["q"]) << "\n";
  os << "p(t) = q(t) / (1 - t^2)^" << poincare["denominator_exponent"].dump() << " = "
     << power_series(poincare["expansion"]) << "\n";
  os << "remultiplication recovers q: " << tw.yes_no(poincare["recovers_q"]) << "\n";
}

void render_checks(std::ostringstream& os, const json& c, const TextWriter& tw) {
  os << "checks: palindrome " << tw.yes_no(c["palindrome"]) << ", euler characteristic zero " << tw.yes_no(c["euler_zero"])
     << ", degree w + r " << tw.yes_no(c["degree_match"]) << "\n";
}

void render_koszul(std::ostringstream& os, const json& r, const TextWriter& tw) {
  const auto& in = r["input"];
  os << "koszul complex: w = " << in["w"].dump() << ", r = " << in["r"].dump() << ", p = " << in["p"].dump()
     << " (source " << in["source"].get<std::string>() << ")\n";
  std::size_t i = 1;
  for (const auto& q : in["quadratics"]) os << "  q" << i++ << " = " << q.get<std::string>() << "\n";
  const auto& h = r["hypotheses"];
  os << "hypotheses: bockstein contained " << tw.yes_no(h["bockstein_contained"]) << ", quadratics independent "
     << tw.yes_no(h["quadratics_independent"]) << ", p > r + 1 " << tw.yes_no(h["p_gt_r_plus_1"]) << ", p > 3 "
     << tw.yes_no(h["p_gt_3"]) << "\n";
  for (const auto& w : r["warnings"]) os << tw.paint("warning: ", TextWriter::kYellow) << w.get<std::string>() << "\n";
  os << "betti: " << join(r["betti"]) << "\n";
  for (const auto& rep : r["representatives"]) {
    os << "  H^" << rep["degree"].dump() << " (dim " << rep["count"].dump() << "): " << join(rep["shown"], ", ");
    if (rep["truncated"].get<bool>()) os << ", ...";
    os << "\n";
  }
  render_poincare(os, r["poincare"], tw);
  render_checks(os, r["checks"], tw);
}

void render_unp(std::ostringstream& os, const json& r, const TextWriter& tw) {
  os << "U(" << r["n"].dump() << ", " << r["p"].dump() << "): w = " << r["w"].dump() << ", r = " << r["r"].dump()
     << ", p " << r["p_source"].get<std::string>() << ", p > r + 1 " << tw.yes_no(r["hypothesis_met"]) << "\n";
  for (const auto& w : r["warnings"]) os << tw.paint("warning: ", TextWriter::kYellow) << w.get<std::string>() << "\n";
  os << "degree  koszul  oracle\n";
  for (const auto& d : r["degrees"]) {
    char line[96];
    std::snprintf(line, sizeof line, "%6s  %6s  %6s", d["degree"].dump().c_str(), d["koszul"].dump().c_str(), d["oracle"].dump().c_str());
    os << line << (d["agree"].get<bool>() ? "" : "  " + tw.paint("differs", TextWriter::kRed)) << "\n";
  }
  const auto& f = r["closed_forms"];
  os << "closed forms a1 a2 a3: " << f["a1"].dump() << " " << f["a2"].dump() << " " << f["a3"].dump() << " (match "
     << tw.yes_no(f["agree"]) << ")\n";
  os << "match: " << tw.verdict(r["match"]) << "\nverdict: " << tw.verdict(r["verdict"]) << "\n";
}

void render_group(std::ostringstream& os, const json& r, const TextWriter& tw) {
  const auto str = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  os << r["group"].get<std::string>() << ": order " << str(r["order"]) << " = p^" << r["log_order"].dump() << ", "
     << (r["exhaustive"].get<bool>() ? "exhaustive" : "sampled") << " verification (mode " << r["mode"].get<std::string>()
     << ", seed " << r["seed"].dump() << ")\n";
  const auto& a = r["associativity"];
  os << "associativity: " << tw.yes_no(a["ok"]) << " (" << a["triples"].dump() << " triples, "
     << (a["exhaustive"].get<bool>() ? "all" : "sampled") << ")\n";
  os << "identity and inverses: " << tw.yes_no(r["identity_inverse_ok"]) << "\n";
  os << "pC: " << tw.yes_no(r["pc"]["ok"]) << " (" << r["pc"]["method"].get<std::string>() << ")\n";
  os << "omega1: " << str(r["omega1"]["size"]) << " elements, rank " << r["omega1"]["rank"].dump() << " ("
     << r["omega1"]["method"].get<std::string>() << ")\n";
  os << "frattini rank " << r["frattini_rank"].dump() << ", abelianization rank " << r["abelianization_rank"].dump()
     << ", commutator rank " << r["commutator_rank"].dump() << ", exponent " << r["exponent"].dump() << "\n";
}

void render_bockstein(std::ostringstream& os, const json& r, const TextWriter& tw) {
  os << "bockstein on n = " << r["n"].dump() << ", p = " << r["p"].dump() << "\n";
  for (const auto& g : r["generators"]) {
    os << "  beta(" << g["generator"].get<std::string>() << ") = " << g["beta"].get<std::string>() << "\n";
  }
  for (const auto& e : r["expressions"]) {
    os << "  beta(" << e["parsed"].get<std::string>() << ") = " << e["beta"].get<std::string>() << "   [U(n,p): "
       << e["beta_unp"].get<std::string>() << "]\n";
  }
  const auto& v = r["verification"];
  os << "degree <= " << v["max_degree"].dump() << ": " << v["monomials_checked"].dump() << " monomials, beta^2 violations "
     << v["square_violations"].dump() << ", degree violations " << v["degree_violations"].dump() << "; "
     << v["leibniz_pairs_checked"].dump() << " leibniz pairs, violations " << v["leibniz_violations"].dump() << "\n";
  for (const auto& w : v["square_witnesses"]) os << "  beta^2 != 0 on " << w.get<std::string>() << "\n";
  for (const auto& w : v["leibniz_witnesses"]) os << "  leibniz fails on " << w.get<std::string>() << "\n";
  os << "derivation ok: " << tw.yes_no(v["ok"]) << "\n";
}

void render_series(std::ostringstream& os, const json& r, const TextWriter& tw) {
  if (r.contains("input")) {
    const auto& in = r["input"];
    os << "complex: w = " << in["w"].dump() << ", r = " << in["r"].dump() << ", p = " << in["p"].dump() << "\n";
  }
  render_poincare(os, r["poincare"], tw);
  if (r.contains("checks")) render_checks(os, r["checks"], tw);
}

void render_crosscheck(std::ostringstream& os, const json& r, const TextWriter& tw) {
  os << "   n       p  guaranteed  match     verdict        betti\n";
  for (const auto& row : r["rows"]) {
    char line[64];
    std::snprintf(line, sizeof line, "%4s  %6s  %-10s  ", row["n"].dump().c_str(), row["p"].dump().c_str(),
                  row["guaranteed"].get<bool>() ? "yes" : "no");
    const auto m = row["match"].get<std::string>(), v = row["verdict"].get<std::string>();
    os << line << tw.verdict(row["match"]) << std::string(10 - std::min<std::size_t>(m.size(), 9), ' ')
       << tw.verdict(row["verdict"]) << std::string(15 - std::min<std::size_t>(v.size(), 14), ' ') << join(row["koszul"]);
    if (row["match"] != "AGREE") os << "  (oracle " << join(row["oracle"]) << ")";
    os << "\n";
  }
  const auto& s = r["summary"];
  os << s["agree"].dump() << " of " << s["rows"].dump() << " agree; disagreements inside the guaranteed range: "
     << s["guaranteed_disagreements"].dump() << "\n";
}

}  // namespace

std::string render_text(const json& report, bool color) {
  const TextWriter tw(color);
  std::ostringstream os;
  if (report.contains("error")) {
    const auto& e = report["error"];
    os << tw.paint("error", TextWriter::kRed) << " (" << e["type"].get<std::string>() << "): " << e["message"].get<std::string>() << "\n";
    if (e.contains("corank")) os << "bockstein corank: " << e["corank"].dump() << "\n";
    if (e.contains("suggestion")) os << "hint: " << e["suggestion"].get<std::string>() << "\n";
    return os.str();
  }
  const auto command = parse_command(report.at("command").get<std::string>());
  switch (command.value_or(Command::Koszul)) {
    case Command::Koszul: render_koszul(os, report, tw); break;
    case Command::Unp: render_unp(os, report, tw); break;
    case Command::Group: render_group(os, report, tw); break;
    case Command::Bockstein: render_bockstein(os, report, tw); break;
    case Command::Series: render_series(os, report, tw); break;
    case Command::Crosscheck: render_crosscheck(os, report, tw); break;
  }
  return os.str();
}

}  // namespace frattini
