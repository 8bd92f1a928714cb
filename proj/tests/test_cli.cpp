#include "doctest.h"

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "cheval/job.hpp"

using namespace cheval;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

std::string env_or(const char* name, const std::string& fallback) {
  const char* v = std::getenv(name);
  return v ? v : fallback;
}

std::string source_dir() { return env_or("CHEVAL_SOURCE_DIR", "."); }
std::string job(const std::string& name) { return source_dir() + "/docs/jobs/" + name; }

Run run(const std::string& args) {
  Run r;
  std::string cmd = env_or("CHEVAL_BIN", "./cheval") + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  size_t k;
  while ((k = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), k);
  int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string temp_path(const std::string& name) { return env_or("TMPDIR", "/tmp") + "/cheval_cli_" + name; }

bool has_binary() { return std::getenv("CHEVAL_BIN") != nullptr; }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("job parsing") {
    auto j = parse_job_text(R"({"model": [[0, 2, 1, 1], [1, 0, -1, 1]]})");
    QPoly2 f = parse_bivariate(j["model"], "job.model");
    CHECK(f == make_qpoly2({{0, 2, 1}, {1, 0, -1}}));
    // big and fractional coefficients travel losslessly
    auto big = parse_bivariate(parse_job_text(R"([[0, 1, "123456789012345678901234567890", 7]])"), "t");
    mpq_class expected("123456789012345678901234567890/7");
    expected.canonicalize();
    CHECK(big.coeff(1).coeff(0) == expected);
    CHECK(parse_univariate(parse_job_text("[[0, 2, 1], [1, -1, 3]]"), "d") == QPoly({mpq_class(2), mpq_class(-1, 3)}));

    CHECK_THROWS_WITH_AS(parse_job_text("{\n  \"model\": [1,\n}"), doctest::Contains("line 3, column 1"), JobError);
    CHECK_THROWS_WITH_AS(parse_bivariate(parse_job_text("[[0, 2, 1]]"), "job.model"),
                         "job.model[0]: expected [i, j, num, den]", JobError);
    CHECK_THROWS_WITH_AS(parse_bivariate(parse_job_text("[[0, 2, 1, 0]]"), "job.model"),
                         "job.model[0]: zero denominator", JobError);
    CHECK_THROWS_WITH_AS(parse_bivariate(parse_job_text("[[0, -1, 1, 1]]"), "job.model"),
                         doctest::Contains("job.model[0] Y-exponent"), JobError);
    CHECK_THROWS_WITH_AS(parse_bivariate(parse_job_text("[[0, 1, \"x\", 1]]"), "job.model"),
                         doctest::Contains("not an integer"), JobError);
  }

  TEST_CASE("covering and samples from a job") {
    auto j = parse_job_text(slurp(job("joukowski-verify.json")));
    CoveringSpec s = parse_covering(j["covering"], "job.covering");
    CHECK(s.mode == CoveringMode::affine);
    CHECK(s.S.has_infinite());
    CHECK(s.S.primes().empty());
    auto pts = parse_samples(j, s, std::nullopt);
    CHECK(pts.size() == 24);
    for (auto& x : pts) CHECK(x.get_den() == 1);
    CHECK(parse_samples(j, s, 5).size() == 5);
    auto explicit_pts = parse_samples(parse_job_text(R"({"samples": {"points": [[1, 2], 3, ["4", "6"]]}})"), s, {});
    CHECK(explicit_pts == std::vector<mpq_class>{mpq_class(1, 2), 3, mpq_class(2, 3)});

    auto bad = parse_job_text(R"({"f": [[0, 2, 1, 1]], "f_tilde": [[0, 2, 1, 1]], "y_numerator": [[0, 1, 1, 1]],
                                  "mode": "sideways"})");
    CHECK_THROWS_WITH_AS(parse_covering(bad, "job.covering"), doctest::Contains("job.covering.mode"), JobError);
    auto not_prime = parse_job_text(R"({"f": [[0, 2, 1, 1]], "f_tilde": [[0, 2, 1, 1]], "y_numerator": [[0, 1, 1, 1]],
                                        "mode": "affine", "S": [4]})");
    CHECK_THROWS_WITH_AS(parse_covering(not_prime, "c"), "c.S[0]: not a prime", JobError);
  }

  TEST_CASE("commands in process") {
    RunOptions o;
    auto b = run_job("bound", parse_job_text(slurp(job("joukowski-bound.json"))), o);
    CHECK_FALSE(b.counterexample);
    const auto& r = b.report["result"];
    CHECK(r["mode"] == "affine");
    CHECK(std::fabs(r["bound"].get<double>() - 184099.891157) < 1e-6);
    CHECK(r["minimal_model"]["Lambda"] == "4^100");
    CHECK(r["minimal_model"]["chain_holds"] == false);

    auto p = run_job("badplaces", parse_job_text(slurp(job("square-root-badplaces.json"))), o);
    CHECK_FALSE(p.counterexample);
    CHECK(p.report["result"]["union"] == Json::array({"2"}));
    for (auto& c : p.report["result"]["checks"]) CHECK(c["holds"] == true);

    auto q = run_job("puiseux", parse_job_text(slurp(job("node-puiseux.json"))), o);
    CHECK_FALSE(q.counterexample);
    CHECK(q.report["result"]["centers"].size() == 2);

    CHECK_THROWS_AS(run_job("verify", parse_job_text(slurp(job("node-puiseux.json"))), o), JobError);
    CHECK_THROWS_WITH_AS(run_job("bound", parse_job_text(R"({"command": "verify"})"), o),
                         doctest::Contains("job.command"), JobError);
    CHECK_THROWS_AS(run_job("frobnicate", parse_job_text("{}"), o), JobError);

    auto bad_cov = parse_job_text(slurp(job("joukowski-verify.json")));
    bad_cov["covering"]["y_numerator"] = nlohmann::json::parse("[[0, 1, 1, 1]]");
    CHECK_THROWS_WITH_AS(run_job("verify", bad_cov, o),
                         "job.covering: y-expression does not define a covering map", JobError);
  }

  TEST_CASE("number rendering") {
    CHECK(format_number(184099.89115672148L) == "184099.891157");
    CHECK(format_number(0) == "0");
    CHECK(format_number(1136118.4293590477L) == "1136118.42936");
    CHECK(format_number(6.02214076e23L) == "6.02214076e+23");
  }

  TEST_CASE("binary: exit codes and reports") {
    if (!has_binary()) {
      MESSAGE("CHEVAL_BIN not set; binary checks skipped");
      return;
    }
    auto b = run("bound " + job("joukowski-bound.json"));
    CHECK(b.status == 0);
    CHECK(b.out.find("affine bound = 184099.891157") != std::string::npos);

    auto v = run("verify --job " + job("descent-verify.json") + " --parallel 2");
    CHECK(v.status == 0);
    CHECK(v.out.find("fibers checked: 20, skipped: 0, failures: 0") != std::string::npos);

    auto bp = run("badplaces " + job("square-root-badplaces.json"));
    CHECK(bp.status == 0);
    CHECK(bp.out.find("T = {2}") != std::string::npos);

    auto cx = run("verify " + job("false-hypothesis-verify.json"));
    CHECK(cx.status == 2);
    CHECK(cx.out.find("COUNTEREXAMPLE") != std::string::npos);

    std::string broken = temp_path("broken.json");
    std::ofstream(broken) << "{\n  \"covering\": {\"f\": [[0, 2, 1]]}\n}\n";
    auto in = run("verify " + broken);
    CHECK(in.status == 1);
    CHECK(in.out.find("job.covering.f[0]") != std::string::npos);
    std::ofstream(broken) << "{\n  \"covering\": \n";
    auto syn = run("verify " + broken);
    CHECK(syn.status == 1);
    CHECK(syn.out.find("line 3") != std::string::npos);
    CHECK(run("verify").status == 1);
    CHECK(run("bound " + job("missing.json")).status == 1);
    CHECK(run("verify " + job("descent-verify.json") + " --chart sideways").status == 1);
  }

  TEST_CASE("binary: deterministic JSON report") {
    if (!has_binary()) return;
    std::string a = temp_path("a.json"), b = temp_path("b.json");
    REQUIRE(run("audit-all " + job("descent-audit-all.json") + " --out " + a + " --parallel 1").status == 0);
    REQUIRE(run("audit-all " + job("descent-audit-all.json") + " --out " + b + " --parallel 2").status == 0);
    std::string ta = slurp(a), tb = slurp(b);
    CHECK(ta == tb);
    auto r = nlohmann::json::parse(ta);
    CHECK(r["counterexample"] == false);
    CHECK(r["result"]["verify"]["checked"] == 20);
    CHECK(r["result"]["verify"]["charts"] == "both");
    CHECK(r["result"]["badplaces"].contains("infinite"));

    auto fin = run("verify " + job("descent-verify.json") + " --chart finite --samples 4 --out -");
    CHECK(fin.status == 0);
    auto j = nlohmann::json::parse(fin.out);
    CHECK(j["result"]["charts"] == "finite");
    CHECK(j["result"]["fibers"].size() == 4);
  }
}
