#pragma once

// Batch jobs behind the command-line tool. Every job produces a JSON report;
// the text form is rendered from that report so both carry the same numbers.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "frattini/pgroups.hpp"

namespace frattini {

enum class Command { Koszul, Unp, Group, Bockstein, Series, Crosscheck };
enum class OutputFormat { Text, Json };

/// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDisagreement = 1;
inline constexpr int kExitBocksteinNotContained = 2;
inline constexpr int kExitUsage = 3;
inline constexpr int kExitBudget = 4;

inline constexpr std::uint64_t kDefaultSeed = 20240611;
inline constexpr std::size_t kDefaultRepresentatives = 10;

struct JobSpec {
  Command command = Command::Koszul;
  OutputFormat format = OutputFormat::Text;
  std::uint64_t seed = kDefaultSeed;
  std::optional<std::size_t> truncation;
  std::size_t workers = 0;

  // koszul, series: extension data, either a parsed input document or inline.
  std::optional<nlohmann::json> input;
  std::optional<std::int64_t> p;
  std::optional<std::size_t> w;
  std::vector<std::string> quadratics;
  bool force = false;
  std::size_t representatives = kDefaultRepresentatives;
  bool full = false;

  // unp, group, bockstein
  std::size_t n = 0;
  bool free_group = false;  // group: G(h(n)) instead of U(n, p)
  VerifyMode verify_mode = VerifyMode::Auto;
  std::size_t max_degree = 6;
  std::vector<std::string> expressions;

  // series without a complex: q(t) and the denominator exponent
  std::vector<std::uint64_t> series_q;
  std::optional<std::size_t> series_v;

  // crosscheck
  std::size_t n_max = 0;
  std::vector<std::int64_t> primes;
};

struct JobResult {
  nlohmann::json report;
  int exit_code = kExitOk;
};

/// Validates the job and runs it. Library errors are caught and turned into
/// a report with an "error" object and the matching exit code.
JobResult run_job(const JobSpec& spec);

nlohmann::json run_koszul(const JobSpec& spec);
nlohmann::json run_unp(const JobSpec& spec);
nlohmann::json run_group(const JobSpec& spec);
nlohmann::json run_bockstein(const JobSpec& spec);
nlohmann::json run_series(const JobSpec& spec);
nlohmann::json run_crosscheck(const JobSpec& spec);

/// Exit code for an exception thrown by a job.
int exit_code_for(const std::exception& error) noexcept;

/// Compact, key-sorted JSON followed by a newline.
std::string render_json(const nlohmann::json& report);
std::string render_text(const nlohmann::json& report, bool color = false);

std::string to_string(Command command);
std::optional<Command> parse_command(std::string_view name);

}  // namespace frattini
