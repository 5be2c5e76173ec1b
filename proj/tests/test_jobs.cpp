#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "frattini/jobs.hpp"

using namespace frattini;
using nlohmann::json;

namespace {

JobSpec heisenberg_spec() {
  JobSpec s;
  s.command = Command::Koszul;
  s.p = 5;
  s.w = 2;
  s.quadratics = {"e1^e2"};
  return s;
}

JobSpec command(Command c, std::size_t n, std::optional<std::int64_t> p) {
  JobSpec s;
  s.command = c;
  s.n = n;
  s.p = p;
  return s;
}

std::vector<std::uint64_t> dims(const json& j) { return j.get<std::vector<std::uint64_t>>(); }

}  // namespace

TEST_CASE("koszul job") {
  const auto r = run_job(heisenberg_spec());
  CHECK(r.exit_code == kExitOk);
  const auto& j = r.report;
  CHECK(j["command"] == "koszul");
  CHECK(dims(j["betti"]) == std::vector<std::uint64_t>{1, 2, 2, 1});
  CHECK(j["input"]["r"] == 1);
  CHECK(j["input"]["v"] == 3);
  CHECK(j["input"]["source"] == "inline");
  CHECK(j["hypotheses"]["p_gt_r_plus_1"] == true);
  CHECK(j["poincare"]["expansion"].size() == 7);
  CHECK(j["poincare"]["recovers_q"] == true);
  CHECK(j["checks"]["palindrome"] == true);
  CHECK(j["representatives"][1]["shown"] == json::array({"e1", "e2"}));

  const auto text = render_text(j);
  CHECK(text.find("betti: 1 2 2 1") != std::string::npos);
  CHECK(text.find("H^1 (dim 2): e1, e2") != std::string::npos);
  CHECK(text.find("\033[") == std::string::npos);
  CHECK(render_text(j, true).find("\033[32myes") != std::string::npos);

  auto limited = heisenberg_spec();
  limited.representatives = 1;
  const auto lj = run_job(limited).report;
  CHECK(lj["representatives"][1]["shown"].size() == 1);
  CHECK(lj["representatives"][1]["truncated"] == true);
  CHECK(render_text(lj).find("e1, ...") != std::string::npos);
}

TEST_CASE("input documents") {
  auto s = heisenberg_spec();
  s.quadratics.clear();
  s.p.reset();
  s.w.reset();
  s.input = json{{"p", 5}, {"w", 2}, {"quadratics", {{{1, 2, 1}}}}};
  auto r = run_job(s);
  CHECK(r.exit_code == kExitOk);
  CHECK(dims(r.report["betti"]) == std::vector<std::uint64_t>{1, 2, 2, 1});
  CHECK(r.report["input"]["source"] == "quadratics");

  // The command line overrides the prime of the document.
  s.p = 7;
  CHECK(run_job(s).report["input"]["p"] == 7);
  s.p.reset();

  s.input = json{{"p", 5}, {"w", 2}, {"k_basis", {{{"b", {1, 0}}, {"q", json::array()}}, {{"b", {0, 1}}, {"q", json::array()}}, {{"b", {1, 0}}, {"q", {{1, 2, 1}}}}}}};
  r = run_job(s);
  CHECK(r.exit_code == kExitOk);
  CHECK(r.report["input"]["source"] == "k_basis");
  CHECK(dims(r.report["betti"]) == std::vector<std::uint64_t>{1, 2, 2, 1});

  s.input = json{{"p", 5}, {"w", 2}, {"k_basis", {{{"b", {1, 0}}, {"q", json::array()}}, {{"b", {0, 0}}, {"q", {{1, 2, 1}}}}}}};
  r = run_job(s);
  CHECK(r.exit_code == kExitBocksteinNotContained);
  CHECK(r.report["error"]["type"] == "BocksteinNotContained");
  CHECK(r.report["error"]["corank"] == 1);
  CHECK(r.report["exit_code"] == kExitBocksteinNotContained);

  s.input = json{{"p", 5}, {"w", 2}, {"quadratics", {{{2, 1, 1}}}}};
  CHECK(run_job(s).exit_code == kExitUsage);
  s.input = json{{"p", 5}, {"w", 2}};
  CHECK(run_job(s).exit_code == kExitUsage);
  s.input = json{{"p", "five"}, {"w", 2}, {"quadratics", json::array()}};
  CHECK(run_job(s).report["error"]["type"] == "InputFormatError");
  CHECK(run_job(s).exit_code == kExitUsage);
}

TEST_CASE("usage errors") {
  auto s = heisenberg_spec();
  s.quadratics = {"e1^"};
  auto r = run_job(s);
  CHECK(r.exit_code == kExitUsage);
  CHECK(r.report["error"]["type"] == "SyntaxError");
  CHECK(render_text(r.report).find("error (SyntaxError)") != std::string::npos);

  s.w = 3;
  s.quadratics = {"e1^e2", "2 e1^e2"};
  CHECK(run_job(s).report["error"]["type"] == "DependentQuadratics");
  s.force = true;
  CHECK(run_job(s).exit_code == kExitOk);

  s = heisenberg_spec();
  s.p = 6;
  CHECK(run_job(s).exit_code == kExitUsage);
  s.w.reset();
  CHECK(run_job(s).exit_code == kExitUsage);

  CHECK(run_job(command(Command::Bockstein, 2, 3)).report["error"]["type"] == "PrimeTooSmall");
  CHECK(run_job(command(Command::Bockstein, 2, 3)).exit_code == kExitUsage);
  CHECK(run_job(command(Command::Unp, 0, 5)).exit_code == kExitUsage);
  CHECK(run_job(command(Command::Unp, 9, std::nullopt)).report["error"]["type"] == "SizeLimitExceeded");
  CHECK(run_job(command(Command::Group, 2, std::nullopt)).exit_code == kExitUsage);
}

TEST_CASE("unp job") {
  auto r = run_job(command(Command::Unp, 3, 7));
  CHECK(r.exit_code == kExitOk);
  CHECK(r.report["match"] == "AGREE");
  CHECK(r.report["verdict"] == "AGREE");
  CHECK(r.report["closed_forms"]["agree"] == true);
  CHECK(r.report["p_source"] == "given");

  r = run_job(command(Command::Unp, 2, std::nullopt));
  CHECK(r.report["p"] == 3);
  CHECK(r.report["p_source"] == "auto");
  CHECK(r.report["verdict"] == "AGREE");

  r = run_job(command(Command::Unp, 3, 3));
  CHECK(r.exit_code == kExitOk);
  CHECK(r.report["verdict"] == "INFORMATIONAL");
  CHECK_FALSE(r.report["warnings"].empty());
  CHECK(render_text(r.report).find("verdict: INFORMATIONAL") != std::string::npos);
}

TEST_CASE("group job") {
  auto r = run_job(command(Command::Group, 2, 3));
  CHECK(r.exit_code == kExitOk);
  CHECK(r.report["order"] == 243);
  CHECK(r.report["omega1"]["size"] == 27);
  CHECK(r.report["exponent"] == 9);

  auto s = command(Command::Group, 3, 5);
  s.verify_mode = VerifyMode::Exhaustive;
  r = run_job(s);
  CHECK(r.exit_code == kExitBudget);
  CHECK(r.report["error"]["suggestion"] == "rerun with --mode sampled");
  CHECK(render_text(r.report).find("hint: rerun with --mode sampled") != std::string::npos);
}

TEST_CASE("bockstein job") {
  auto s = command(Command::Bockstein, 2, 5);
  s.max_degree = 4;
  s.expressions = {"z1_2*x1_2", "z1_2"};
  const auto r = run_job(s);
  CHECK(r.exit_code == kExitOk);
  CHECK(r.report["generators"][0]["beta"] == "z1*x2 - z2*x1");
  CHECK(r.report["generators"][1]["beta"] == "-x1*x2");
  CHECK(r.report["expressions"][1]["beta_unp"] == "s1*x2 - s2*x1");
  CHECK(r.report["verification"]["ok"] == true);

  s.expressions = {"z1_3"};
  CHECK(run_job(s).exit_code == kExitUsage);
}

TEST_CASE("series job") {
  JobSpec s;
  s.command = Command::Series;
  s.series_q = {1, 2, 2, 1};
  s.series_v = 3;
  s.truncation = 5;
  auto r = run_job(s);
  CHECK(r.exit_code == kExitOk);
  CHECK(dims(r.report["poincare"]["expansion"]) == std::vector<std::uint64_t>{1, 2, 5, 7, 12, 15});
  CHECK_FALSE(r.report.contains("checks"));
  s.w = 2;
  CHECK(run_job(s).report["checks"]["euler_zero"] == true);
  s.w = 4;
  CHECK(run_job(s).exit_code == kExitUsage);
  s.series_v.reset();
  CHECK(run_job(s).exit_code == kExitUsage);

  auto e = heisenberg_spec();
  e.command = Command::Series;
  r = run_job(e);
  CHECK(r.report["poincare"]["denominator_exponent"] == 3);
  CHECK(r.report["checks"]["degree_match"] == true);
}

TEST_CASE("crosscheck job") {
  JobSpec s;
  s.command = Command::Crosscheck;
  s.n_max = 3;
  s.primes = {7, 11, 101};
  auto r = run_job(s);
  CHECK(r.exit_code == kExitOk);
  CHECK(r.report["summary"]["rows"] == 9);
  CHECK(r.report["summary"]["agree"] == 9);
  for (const auto& row : r.report["rows"]) CHECK(row["verdict"] == "AGREE");

  s.primes = {3};
  r = run_job(s);
  CHECK(r.exit_code == kExitOk);
  CHECK(r.report["summary"]["guaranteed_disagreements"] == 0);
  CHECK(r.report["rows"][1]["guaranteed"] == true);
  CHECK(r.report["rows"][2]["guaranteed"] == false);

  // Outside the guaranteed range a disagreement is data, not a failure.
  s.n_max = 4;
  r = run_job(s);
  CHECK(r.exit_code == kExitOk);
  for (const auto& row : r.report["rows"]) {
    if (row["guaranteed"] == false) CHECK(row["verdict"] == "INFORMATIONAL");
  }

  s.n_max = 6;
  CHECK(run_job(s).exit_code == kExitUsage);
  s.n_max = 2;
  s.primes.clear();
  CHECK(run_job(s).exit_code == kExitUsage);
}

TEST_CASE("identical specs give identical bytes") {
  JobSpec s;
  s.command = Command::Crosscheck;
  s.n_max = 3;
  s.primes = {7, 11};
  const auto a = render_json(run_job(s).report);
  s.workers = 3;
  CHECK(render_json(run_job(s).report) == a);

  auto g = command(Command::Group, 3, 5);
  g.verify_mode = VerifyMode::Sampled;
  CHECK(render_json(run_job(g).report) == render_json(run_job(g).report));
  auto b = command(Command::Bockstein, 3, 7);
  b.max_degree = 4;
  CHECK(render_json(run_job(b).report) == render_json(run_job(b).report));
  CHECK(render_json(run_job(heisenberg_spec()).report) == render_json(run_job(heisenberg_spec()).report));
  CHECK(render_json(json{{"b", 1}, {"a", 2}}) == "{\"a\":2,\"b\":1}\n");
}

TEST_CASE("command names") {
  for (auto c : {Command::Koszul, Command::Unp, Command::Group, Command::Bockstein, Command::Series, Command::Crosscheck}) {
    CHECK(parse_command(to_string(c)) == c);
  }
  CHECK_FALSE(parse_command("homology").has_value());
}
