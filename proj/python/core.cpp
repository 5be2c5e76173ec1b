#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "frattini/bockstein.hpp"
#include "frattini/error.hpp"
#include "frattini/jobs.hpp"
#include "frattini/koszul.hpp"
#include "frattini/series.hpp"
#include "frattini/younghook.hpp"

namespace py = pybind11;
using namespace frattini;

namespace {

template <typename T>
std::optional<T> get(const py::dict& d, const char* key) {
  if (!d.contains(key) || d[key].is_none()) return std::nullopt;
  return d[key].cast<T>();
}

JobSpec spec_from(const std::string& command, const py::dict& o) {
  JobSpec s;
  const auto c = parse_command(command);
  if (!c) throw InvalidArgument("unknown command '" + command + "'");
  s.command = *c;
  s.format = OutputFormat::Json;
  if (auto v = get<std::uint64_t>(o, "seed")) s.seed = *v;
  if (auto v = get<std::size_t>(o, "truncation")) s.truncation = *v;
  if (auto v = get<std::size_t>(o, "workers")) s.workers = *v;
  if (auto v = get<std::string>(o, "input")) s.input = nlohmann::json::parse(*v);
  s.p = get<std::int64_t>(o, "p");
  s.w = get<std::size_t>(o, "w");
  if (auto v = get<std::vector<std::string>>(o, "quadratics")) s.quadratics = *v;
  if (auto v = get<bool>(o, "force")) s.force = *v;
  if (auto v = get<std::size_t>(o, "representatives")) s.representatives = *v;
  if (auto v = get<bool>(o, "full")) s.full = *v;
  if (auto v = get<std::size_t>(o, "n")) s.n = *v;
  if (auto v = get<std::string>(o, "kind")) {
    if (*v != "U" && *v != "G") throw InvalidArgument("kind must be 'U' or 'G'");
    s.free_group = *v == "G";
  }
  if (auto v = get<std::string>(o, "mode")) {
    if (*v == "auto") {
      s.verify_mode = VerifyMode::Auto;
    } else if (*v == "exhaustive") {
      s.verify_mode = VerifyMode::Exhaustive;
    } else if (*v == "sampled") {
      s.verify_mode = VerifyMode::Sampled;
    } else {
      throw InvalidArgument("mode must be auto, exhaustive or sampled");
    }
  }
  if (auto v = get<std::size_t>(o, "degree")) s.max_degree = *v;
  if (auto v = get<std::vector<std::string>>(o, "expressions")) s.expressions = *v;
  if (auto v = get<std::vector<std::uint64_t>>(o, "coefficients")) s.series_q = *v;
  s.series_v = get<std::size_t>(o, "v");
  if (auto v = get<std::size_t>(o, "n_max")) s.n_max = *v;
  if (auto v = get<std::vector<std::int64_t>>(o, "primes")) s.primes = *v;
  return s;
}

py::int_ to_python(const BigInt& x) { return py::int_(py::str(x.str())); }

KoszulComplex make_complex(std::size_t w, const std::vector<std::string>& quadratics, std::int64_t p, bool force) {
  const Prime prime(p);
  std::vector<QuadraticForm> qs;
  for (const auto& q : quadratics) qs.emplace_back(parse_element(q, Ambient(w, 0, prime)));
  return KoszulComplex(w, std::move(qs), prime, force);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Native core of the frattini package";

  static py::exception<Error> base(m, "FrattiniError", PyExc_ValueError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", base);
  py::register_exception<AmbientMismatch>(m, "AmbientMismatch", base);
  py::register_exception<IndexOutOfRange>(m, "IndexOutOfRange", base);
  py::register_exception<SyntaxError>(m, "ExpressionSyntaxError", base);
  py::register_exception<BocksteinNotContained>(m, "BocksteinNotContained", base);
  py::register_exception<DegenerateSubspace>(m, "DegenerateSubspace", base);
  py::register_exception<DependentQuadratics>(m, "DependentQuadratics", base);
  py::register_exception<SizeLimitExceeded>(m, "SizeLimitExceeded", base);
  py::register_exception<NotACocycle>(m, "NotACocycle", base);
  py::register_exception<ConstraintViolation>(m, "ConstraintViolation", base);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", base);
  py::register_exception<PrimeTooSmall>(m, "PrimeTooSmall", base);

  m.def(
      "run_job",
      [](const std::string& command, const py::dict& options) {
        const auto spec = spec_from(command, options);
        JobResult r;
        {
          py::gil_scoped_release release;
          r = run_job(spec);
        }
        return py::make_tuple(render_json(r.report), r.exit_code);
      },
      py::arg("command"), py::arg("options"), "Runs a job and returns (json text, exit code).");

  m.def(
      "betti",
      [](std::size_t w, const std::vector<std::string>& quadratics, std::int64_t p, bool force) {
        return betti(make_complex(w, quadratics, p, force), {.representatives = false}).dims();
      },
      py::arg("w"), py::arg("quadratics"), py::arg("p"), py::arg("force") = false);

  m.def(
      "representatives",
      [](std::size_t w, const std::vector<std::string>& quadratics, std::int64_t p) {
        const auto c = make_complex(w, quadratics, p, false);
        const auto table = betti(c);
        std::vector<std::vector<std::string>> out;
        for (std::size_t d = 0; d <= c.top_degree(); ++d) {
          auto& row = out.emplace_back();
          for (const auto& rep : table.representatives(d)) row.push_back(format_element(rep));
        }
        return out;
      },
      py::arg("w"), py::arg("quadratics"), py::arg("p"));

  m.def("unp_betti", [](std::size_t n) { return unp_betti(n); }, py::arg("n"));

  m.def(
      "expand",
      [](const std::vector<std::uint64_t>& q, std::size_t v, std::size_t n) {
        py::list out;
        for (const auto& c : expand({PoincarePolynomial::from_dims(q), v}, n)) out.append(to_python(c));
        return out;
      },
      py::arg("q"), py::arg("v"), py::arg("n"));

  m.def(
      "hook_content_dimension",
      [](const std::vector<std::size_t>& parts, std::size_t n) {
        return to_python(hook_content_dimension(SelfConjugatePartition(parts), n));
      },
      py::arg("parts"), py::arg("n"));

  m.def(
      "self_conjugate_partitions",
      [](std::size_t size, std::size_t diagonal) {
        std::vector<std::vector<std::size_t>> out;
        for (const auto& l : enumerate_self_conjugate(size, diagonal)) out.push_back(l.parts());
        return out;
      },
      py::arg("size"), py::arg("diagonal"));

  m.def(
      "bockstein",
      [](const std::string& expr, std::size_t n, std::int64_t p) {
        return format_bigraded(bockstein(parse_bigraded(expr, n, Prime(p))));
      },
      py::arg("expr"), py::arg("n"), py::arg("p"));

  m.def(
      "restrict_to_unp",
      [](const std::string& expr, std::size_t n, std::int64_t p) {
        return format_bigraded(restrict_to_unp(parse_bigraded(expr, n, Prime(p))));
      },
      py::arg("expr"), py::arg("n"), py::arg("p"));
}
