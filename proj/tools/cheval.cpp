#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "cheval/job.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitCounterexample = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw cheval::JobError("cannot read job file \"" + path + "\"");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chevalley-Weil bound evaluation and certification"};
  app.require_subcommand(1);
  std::string job_path, out_path, chart = "both";
  int samples = -1, parallel = 0;
  double tolerance = -1;

  for (const auto& name : cheval::job_commands()) {
    CLI::App* sub = app.add_subcommand(name, "run the " + name + " job");
    sub->add_option("job_file", job_path, "job file (JSON)");
    sub->add_option("--job", job_path, "job file (JSON)");
    sub->add_option("--out", out_path, "write the JSON report here ('-' for standard output)");
    sub->add_option("--samples", samples, "number of sample points")->check(CLI::NonNegativeNumber);
    sub->add_option("--tolerance", tolerance, "tolerance on the two relative discriminant routes")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--parallel", parallel, "worker threads for fibers (0: all cores)")->check(CLI::NonNegativeNumber);
    sub->add_option("--chart", chart, "projective two-chart control")->check(CLI::IsMember({"both", "finite"}));
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }
  CLI::App* sub = app.get_subcommands().front();
  if (job_path.empty()) {
    std::cerr << "error: a job file is required\n";
    return kExitInput;
  }
  cheval::RunOptions opts;
  if (samples >= 0) opts.samples = samples;
  if (tolerance >= 0) opts.tolerance = tolerance;
  opts.threads = parallel > 0 ? parallel : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  opts.charts = chart == "finite" ? cheval::ChartPolicy::finite : cheval::ChartPolicy::both;

  cheval::JobOutcome outcome;
  try {
    nlohmann::json job = cheval::parse_job_text(read_file(job_path));
    outcome = cheval::run_job(sub->get_name(), job, opts);
  } catch (const cheval::JobError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }

  std::string report = outcome.report.dump(2) + "\n";
  if (out_path == "-") {
    std::cout << report;
  } else {
    for (auto& line : outcome.summary) std::cout << line << "\n";
    std::cout << (outcome.counterexample ? "result: COUNTEREXAMPLE" : "result: all audited inequalities hold") << "\n";
    if (!out_path.empty()) {
      std::ofstream o(out_path);
      if (!o) {
        std::cerr << "error: cannot write \"" << out_path << "\"\n";
        return kExitInput;
      }
      o << report;
    }
  }
  return outcome.counterexample ? kExitCounterexample : kExitOk;
}
