// Command-line front end: parses flags into a JobSpec, runs it and prints the report.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <unistd.h>

#include "CLI11.hpp"
#include "frattini/jobs.hpp"

namespace {

using frattini::Command;
using frattini::JobSpec;

bool want_color(const std::string& flag) {
  std::string mode = flag;
  if (mode.empty()) {
    const char* env = std::getenv("FRATTINI_COLOR");
    mode = env ? env : "auto";
  }
  if (mode == "always" || mode == "1") return true;
  if (mode == "never" || mode == "0") return false;
  return isatty(STDOUT_FILENO) != 0;
}

void add_common(CLI::App* sub, JobSpec& spec, std::string& format) {
  sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  sub->add_option("--seed", spec.seed, "Seed for sampled checks");
  sub->add_option("--workers", spec.workers, "Worker threads (0: one per processor)");
}

void add_extension(CLI::App* sub, JobSpec& spec, std::string& input_path) {
  sub->add_option("-i,--input", input_path, "Extension data as JSON (p, w, quadratics or k_basis)");
  sub->add_option("--p", spec.p, "Prime (overrides the input file)");
  sub->add_option("--w", spec.w, "Number of degree-one generators e_1..e_w");
  sub->add_option("-q,--q", spec.quadratics, "Quadratic form such as \"e1^e2 + 2 e1^e3\" (repeatable)");
  sub->add_flag("--force", spec.force, "Accept linearly dependent quadratics");
  sub->add_option("--truncation", spec.truncation, "Expand p(t) through this degree (default 2(w+r))");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mod-p cohomology of central Frattini extensions"};
  app.require_subcommand(1);
  JobSpec spec;
  std::string format = "text";
  std::string color;
  std::string input_path;
  std::string group_kind = "U";
  std::string verify_mode = "auto";
  app.add_option("--color", color, "Color text output")->check(CLI::IsMember({"auto", "always", "never"}));

  auto* koszul = app.add_subcommand("koszul", "Betti table, representatives and Poincare series of an extension");
  add_common(koszul, spec, format);
  add_extension(koszul, spec, input_path);
  koszul->add_option("--representatives", spec.representatives, "Representatives printed per degree");
  koszul->add_flag("--full", spec.full, "Print every representative");

  auto* unp = app.add_subcommand("unp", "U(n,p): Koszul Betti numbers against the hook-length oracle");
  add_common(unp, spec, format);
  unp->add_option("n", spec.n, "Rank n")->required();
  unp->add_option("--p", spec.p, "Prime (default: least prime > C(n,2) + 1)");

  auto* group = app.add_subcommand("group", "Build and verify the p-group U(n,p) or G(h(n))");
  add_common(group, spec, format);
  group->add_option("n", spec.n, "Rank n")->required();
  group->add_option("--p", spec.p, "Odd prime")->required();
  group->add_option("--kind", group_kind, "U for U(n,p), G for G(h(n))")->check(CLI::IsMember({"U", "G"}));
  group->add_option("--mode", verify_mode, "Verification mode")->check(CLI::IsMember({"auto", "exhaustive", "sampled"}));

  auto* bock = app.add_subcommand("bockstein", "Bockstein derivation on the bigraded model");
  add_common(bock, spec, format);
  bock->add_option("n", spec.n, "Rank n")->required();
  bock->add_option("--p", spec.p, "Prime p > 3")->required();
  bock->add_option("--degree", spec.max_degree, "Check beta^2 = 0 through this degree");
  bock->add_option("-e,--expr", spec.expressions, "Element such as \"z1_2*x3\" to apply beta to (repeatable)");

  auto* series = app.add_subcommand("series", "Poincare series q(t) / (1 - t^2)^v");
  add_common(series, spec, format);
  add_extension(series, spec, input_path);
  series->add_option("--coefficients", spec.series_q, "Coefficients of q(t), lowest degree first")->delimiter(',');
  series->add_option("--v", spec.series_v, "Denominator exponent");

  auto* cross = app.add_subcommand("crosscheck", "Koszul against oracle for n <= n_max and several primes");
  add_common(cross, spec, format);
  cross->add_option("n_max", spec.n_max, "Largest rank (at most 5)")->required();
  cross->add_option("--primes", spec.primes, "Primes, comma separated")->delimiter(',')->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : frattini::kExitUsage;
  }

  for (auto* sub : app.get_subcommands()) spec.command = *frattini::parse_command(sub->get_name());
  spec.format = format == "json" ? frattini::OutputFormat::Json : frattini::OutputFormat::Text;
  spec.free_group = group_kind == "G";
  spec.verify_mode = verify_mode == "exhaustive" ? frattini::VerifyMode::Exhaustive
                     : verify_mode == "sampled"  ? frattini::VerifyMode::Sampled
                                                 : frattini::VerifyMode::Auto;

  frattini::JobResult result;
  if (!input_path.empty()) {
    std::ifstream in(input_path);
    if (!in) {
      std::cerr << "error: cannot open " << input_path << "\n";
      return frattini::kExitUsage;
    }
    try {
      spec.input = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      std::cerr << "error: " << input_path << ": " << e.what() << "\n";
      return frattini::kExitUsage;
    }
  }
  result = frattini::run_job(spec);

  if (spec.format == frattini::OutputFormat::Json) {
    std::cout << frattini::render_json(result.report);
  } else if (result.report.contains("error")) {
    std::cerr << frattini::render_text(result.report, false);
  } else {
    std::cout << frattini::render_text(result.report, want_color(color));
  }
  return result.exit_code;
}
