#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "cheval/verify.hpp"

namespace cheval {

// Malformed job input; the message names the line or the field.
struct JobError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Json = nlohmann::ordered_json;

// Parses job text; syntax errors become JobError("line L, column C: ...").
nlohmann::json parse_job_text(const std::string& text);

// Terms [i, j, num, den] for num/den X^i Y^j; num and den may be integers or
// decimal strings.  `where` prefixes diagnostics.
QPoly2 parse_bivariate(const nlohmann::json& terms, const std::string& where);
// Terms [i, num, den] for num/den X^i.
QPoly parse_univariate(const nlohmann::json& terms, const std::string& where);
CoveringSpec parse_covering(const nlohmann::json& c, const std::string& where);
std::vector<mpq_class> parse_samples(const nlohmann::json& job, const CoveringSpec& spec, std::optional<int> count);

struct RunOptions {
  std::optional<int> samples;          // overrides the job's sample count
  std::optional<long double> tolerance;  // overrides the discriminant-agreement tolerance
  int threads = 0;                     // 0: OpenMP default
  ChartPolicy charts = ChartPolicy::both;
};

struct JobOutcome {
  Json report;
  std::vector<std::string> summary;  // human-readable lines
  bool counterexample = false;       // some audited inequality failed
};

const std::vector<std::string>& job_commands();  // bound, badplaces, puiseux, verify, audit-all

// Runs one command on a parsed job.  Input problems throw JobError.
JobOutcome run_job(const std::string& command, const nlohmann::json& job, const RunOptions& opts);

// Fixed 12-significant-digit rendering used throughout the reports.
std::string format_number(long double x);

}  // namespace cheval
