#include "cheval/job.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "cheval/badplaces.hpp"
#include "cheval/cw_bounds.hpp"
#include "cheval/integer.hpp"
#include "cheval/puiseux.hpp"

namespace cheval {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) { throw JobError(where + ": " + what); }

mpz_class parse_integer(const json& v, const std::string& where) {
  if (v.is_number_integer()) return mpz_class(std::to_string(v.get<long long>()));
  if (v.is_string()) {
    mpz_class z;
    if (z.set_str(v.get<std::string>(), 10) != 0) fail(where, "not an integer: \"" + v.get<std::string>() + "\"");
    return z;
  }
  fail(where, "expected an integer or a decimal string");
}

int parse_small(const json& v, const std::string& where, int lo, int hi) {
  if (!v.is_number_integer()) fail(where, "expected an integer");
  long long x = v.get<long long>();
  if (x < lo || x > hi) fail(where, "out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return static_cast<int>(x);
}

mpq_class parse_rational(const json& num, const json& den, const std::string& where) {
  mpz_class d = parse_integer(den, where + " denominator");
  if (d == 0) fail(where, "zero denominator");
  mpq_class q(parse_integer(num, where + " numerator"), d);
  q.canonicalize();
  return q;
}

const json& require(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object()) fail(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(where, "missing field \"" + key + "\"");
  return *it;
}

long double parse_real(const json& v, const std::string& where) {
  if (!v.is_number()) fail(where, "expected a number");
  return v.get<long double>();
}

Json num(long double x) {
  // beyond double range the fixed rendering is kept as a string
  if (!std::isfinite(static_cast<double>(x)) || std::fabs(x) > 1e300L) return format_number(x);
  return std::stod(format_number(x));
}

Json height_json(const HeightValue& h) { return Json{{"value", num(h.mid())}, {"half_width", num(h.width() / 2)}}; }

Json check_json(const BoundCheck& c) {
  return Json{{"name", c.name},       {"provenance", c.provenance}, {"lhs", height_json(c.lhs)},
              {"rhs", num(c.rhs)},    {"slack", num(c.slack)},      {"holds", c.holds()}};
}

Json checks_json(const std::vector<BoundCheck>& cs) {
  Json a = Json::array();
  for (auto& c : cs) a.push_back(check_json(c));
  return a;
}

Json primes_json(const std::vector<mpz_class>& ps) {
  Json a = Json::array();
  for (auto& p : ps) a.push_back(p.get_str());
  return a;
}

Json place_set_json(const PlaceSet& S) {
  Json a = Json::array();
  for (auto& p : S.primes()) a.push_back(p.get_str());
  if (S.has_infinite()) a.push_back("infinity");
  return a;
}

std::string elem_string(const NFElem& a) { return a.is_rational() ? a.rational_value().get_str() : to_string(a.poly(), "t"); }

const char* mode_name(CoveringMode m) { return m == CoveringMode::projective ? "projective" : "affine"; }

std::string check_line(const BoundCheck& c) {
  return c.name + ": " + format_number(c.lhs.upper) + " <= " + format_number(c.rhs) + (c.holds() ? "  pass" : "  FAIL");
}

Json model_json(const PlaneCurveModel& M) {
  return Json{{"f", to_string(M.f())},
              {"m", M.m()},
              {"n", M.n()},
              {"projective_height", height_json(M.hp())},
              {"resultant", to_string(M.R())},
              {"irreducibility", M.irreducibility().message}};
}

PlaneCurveModel parse_model(const json& job, const std::string& key) {
  QPoly2 f = parse_bivariate(require(job, key, "job"), "job." + key);
  try {
    return PlaneCurveModel::normalize_f0_monic(f);
  } catch (const std::invalid_argument& e) {
    fail("job." + key, e.what());
  }
}

CheckedCovering checked(const json& job) {
  CoveringSpec spec = parse_covering(require(job, "covering", "job"), "job.covering");
  try {
    return validate_covering(spec);
  } catch (const std::invalid_argument& e) {
    fail("job.covering", e.what());
  }
}

// ---- bound ----

void run_bound(const json& job, JobOutcome& out) {
  BoundInputs in;
  CoveringMode mode = CoveringMode::projective;
  std::optional<CheckedCovering> cov;
  if (job.contains("covering")) {
    cov = checked(job);
    mode = cov->spec.mode;
    in = {cov->base.m(),        cov->base.n(),         cov->cover.m(), cov->cover.n(),
          cov->base.hp().lower, cov->cover.hp().lower, mode == CoveringMode::affine ? cov->spec.S.height().lower : 0};
  } else {
    const json& p = require(job, "parameters", "job");
    const std::string w = "job.parameters";
    in.m = parse_small(require(p, "m", w), w + ".m", 1, 1 << 20);
    in.n = parse_small(require(p, "n", w), w + ".n", 1, 1 << 20);
    in.mt = parse_small(require(p, "m_tilde", w), w + ".m_tilde", 1, 1 << 20);
    in.nt = parse_small(require(p, "n_tilde", w), w + ".n_tilde", 1, 1 << 20);
    in.hp_f = parse_real(require(p, "hp_f", w), w + ".hp_f");
    in.hp_ft = parse_real(require(p, "hp_f_tilde", w), w + ".hp_f_tilde");
    if (p.contains("h_S")) in.h_S = parse_real(p["h_S"], w + ".h_S");
    if (p.contains("mode")) {
      std::string m = p["mode"].is_string() ? p["mode"].get<std::string>() : "";
      if (m != "projective" && m != "affine") fail(w + ".mode", "expected \"projective\" or \"affine\"");
      mode = m == "affine" ? CoveringMode::affine : CoveringMode::projective;
    }
  }
  MainQuantities q;
  long double bound = 0;
  try {
    q = main_quantities(in);
    bound = cw_bound(in, mode);
  } catch (const std::invalid_argument& e) {
    fail("job", e.what());
  }
  Json r{{"mode", mode_name(mode)},
         {"m", in.m},
         {"n", in.n},
         {"m_tilde", in.mt},
         {"n_tilde", in.nt},
         {"hp_f", num(in.hp_f)},
         {"hp_f_tilde", num(in.hp_ft)},
         {"h_S", num(in.h_S)},
         {"Omega", num(q.Omega)},
         {"Omega_tilde", num(q.Omega_tilde)},
         {"Upsilon", num(q.Upsilon)},
         {"Xi", num(q.Xi)},
         {"bound", num(bound)},
         {"provenance",
          {{"Omega", "200 m n^3 log n (h_p(f) + 2m + 2n), bad places of one model"},
           {"Upsilon", "2 n~ (m~ h_p(f) + m h_p(f~)), height of the tower places"},
           {"Xi", "2 m n~ (2 m~ + 3 log n~) + (m + 2 m~ n~) log(m + 2 m~ n~), resultant correction"},
           {"bound", mode == CoveringMode::projective ? "2 (Omega + Omega~ + Upsilon), unramified covering"
                                                      : "Omega + Omega~ + Upsilon + h(S), covering unramified "
                                                        "outside the poles of x"}}}};
  if (cov) {
    r["base"] = model_json(cov->base);
    r["cover"] = model_json(cov->cover);
  }
  out.summary.push_back("Omega = " + format_number(q.Omega));
  out.summary.push_back("Omega~ = " + format_number(q.Omega_tilde));
  out.summary.push_back("Upsilon = " + format_number(q.Upsilon));
  out.summary.push_back("Xi = " + format_number(q.Xi));
  out.summary.push_back(std::string(mode_name(mode)) + " bound = " + format_number(bound));

  if (job.contains("minimal_model")) {
    const json& mm = job["minimal_model"];
    const std::string w = "job.minimal_model";
    long double hA = parse_real(require(mm, "h_A", w), w + ".h_A");
    long delta = mm.contains("delta") ? parse_small(mm["delta"], w + ".delta", 1, 1 << 20) : 1;
    int g, gt;
    if (mm.contains("g") && mm.contains("g_tilde")) {
      g = parse_small(mm["g"], w + ".g", 0, 1 << 16);
      gt = parse_small(mm["g_tilde"], w + ".g_tilde", 0, 1 << 16);
    } else if (cov) {
      g = branch_genus(cov->base).genus();
      gt = branch_genus(cov->cover).genus();
    } else {
      fail(w, "genera g and g_tilde are required without a covering");
    }
    MinimalModelBounds b = minimal_model_bounds(g, in.n, gt, in.nt, delta, hA, mode, in.h_S);
    r["minimal_model"] = Json{{"g", g},
                              {"g_tilde", gt},
                              {"delta", delta},
                              {"h_A", num(hA)},
                              {"Lambda", b.Lambda.to_string()},
                              {"Lambda_prime", b.Lambda_prime.to_string()},
                              {"Lambda_prime_tilde", b.Lambda_prime_tilde.to_string()},
                              {"log_bound", num(b.log_bound)},
                              {"log_chain", num(b.log_chain)},
                              {"chain_holds", b.chain_holds()}};
    out.summary.push_back("Lambda = " + b.Lambda.to_string() + ", log bound = " + format_number(b.log_bound));
    if (!b.chain_holds())
      out.summary.push_back("note: the chain through the equation-free models exceeds Lambda (h + 1) here");
  }
  out.report = r;
}

// ---- badplaces ----

Json table_json(const BadPlaceTable& t) {
  Json sets = Json::array();
  for (int i = 1; i <= 7; ++i)
    sets.push_back(Json{{"index", i},
                        {"places", place_set_json(t.T[static_cast<size_t>(i)])},
                        {"exact", t.exact[static_cast<size_t>(i)]},
                        {"provenance", tset_provenance(i)}});
  return Json{{"sets", sets},
              {"union", place_set_json(t.all)},
              {"T5_witnessed", place_set_json(t.T5_witnessed)},
              {"checks", checks_json(t.checks)},
              {"all_hold", t.all_hold()}};
}

void table_summary(const std::string& label, const BadPlaceTable& t, JobOutcome& out) {
  for (int i = 1; i <= 7; ++i)
    out.summary.push_back(label + "T" + std::to_string(i) + " = " + t.T[static_cast<size_t>(i)].to_string() + "  " +
                          check_line(t.checks[static_cast<size_t>(i - 1)]));
  out.summary.push_back(label + "T = " + t.all.to_string() + "  " + check_line(t.checks.back()));
}

void run_badplaces(const json& job, JobOutcome& out) {
  if (job.contains("covering")) {
    CheckedCovering c = checked(job);
    CoveringBadPlaces b = covering_bad_places(c.base, c.cover);
    out.report = Json{{"base", table_json(b.base)},
                      {"cover", table_json(b.cover)},
                      {"U", Json{{"R1", to_string(b.tower.R1)},
                                 {"R2", to_string(b.tower.R2)},
                                 {"Theta", b.tower.Theta.get_str()},
                                 {"places", place_set_json(b.tower.U)},
                                 {"check", check_json(b.tower.check)}}},
                      {"union", place_set_json(b.all)},
                      {"union_check", check_json(b.union_check)},
                      {"all_hold", b.all_hold()}};
    table_summary("", b.base, out);
    table_summary("cover ", b.cover, out);
    out.summary.push_back("U = " + b.tower.U.to_string() + "  " + check_line(b.tower.check));
    out.summary.push_back("T u T~ u U = " + b.all.to_string() + "  " + check_line(b.union_check));
    out.counterexample = !b.all_hold();
  } else {
    PlaneCurveModel M = parse_model(job, "model");
    BadPlaceTable t = bad_place_table(M);
    out.report = table_json(t);
    out.report["model"] = model_json(M);
    table_summary("", t, out);
    out.counterexample = !t.all_hold();
  }
}

// ---- puiseux ----

Json center_json(const CenterAnalysis& A) {
  Json branches = Json::array();
  for (size_t i = 0; i < A.branches.size(); ++i) {
    const PuiseuxBranch& b = A.branches[i];
    Json coeffs = Json::array();
    for (auto& a : b.a) coeffs.push_back(elem_string(a));
    branches.push_back(Json{{"e", b.e},
                            {"cycles", b.cycles},
                            {"k0", b.k0},
                            {"N", b.N},
                            {"field_degree", b.field->degree()},
                            {"field", to_string(b.field->minpoly(), "t")},
                            {"coefficients", coeffs},
                            {"residual_order", A.residuals[i].residual_order},
                            {"required_order", A.residuals[i].required},
                            {"residual_ok", A.residuals[i].ok()},
                            {"growth_holds", A.growth[i].holds},
                            {"growth_worst_margin", num(A.growth[i].worst_margin)},
                            {"growth_checked", A.growth[i].checked}});
  }
  return Json{{"center", to_string(A.center.minpoly)},
              {"mu", A.center.mu},
              {"u", A.center.u},
              {"ramification_sum", A.ramification_sum},
              {"branches", branches},
              {"checks", checks_json(A.checks())},
              {"all_hold", A.all_hold()}};
}

void run_puiseux(const json& job, JobOutcome& out) {
  PlaneCurveModel M = parse_model(job, "model");
  int N = job.contains("truncation") ? parse_small(job["truncation"], "job.truncation", 0, 4096) : -1;
  Json centers = Json::array();
  bool ok = true;
  for (auto& c : M.centers()) {
    CenterAnalysis A = analyze_center(M, c, N);
    centers.push_back(center_json(A));
    ok = ok && A.all_hold();
    std::ostringstream line;
    line << "center " << to_string(c.minpoly) << ": ";
    for (size_t i = 0; i < A.branches.size(); ++i)
      line << (i ? ", " : "") << "e=" << A.branches[i].e << " x" << A.branches[i].cycles;
    line << "  sum e = " << A.ramification_sum << (A.all_hold() ? "  pass" : "  FAIL");
    out.summary.push_back(line.str());
  }
  out.report = Json{{"model", model_json(M)}, {"centers", centers}, {"all_hold", ok}};
  out.counterexample = !ok;
}

// ---- verify ----

Json fiber_json(const FiberReport& r, const TmainAudit& t, long double tol) {
  Json base = Json::array();
  for (auto& p : r.base)
    base.push_back(Json{{"factor", to_string(p.factor, "Y")}, {"field_degree", p.field->degree()}});
  Json cover = Json::array();
  for (auto& c : r.cover)
    cover.push_back(Json{{"factor", to_string(c.point.factor, "Y")},
                         {"base_index", c.base_index},
                         {"y", elem_string(c.y_in_cover)},
                         {"relative_degree", c.relative_degree},
                         {"disc_cover", c.disc_cover.get_str()},
                         {"disc_base", c.disc_base.get_str()},
                         {"partial", height_json(c.partial)},
                         {"relative_norm", c.relative_norm.get_str()},
                         {"partial_from_norm", num(c.partial_from_norm)},
                         {"relative_ramified", primes_json(c.relative_ramified)},
                         {"ramified_over_Q", primes_json(c.ramified_over_Q)},
                         {"consistent", c.consistent(tol)},
                         {"within_bound", c.within_bound}});
  Json entries = Json::array();
  for (auto& e : t.entries)
    entries.push_back(Json{{"p", e.p.get_str()},
                           {"xi_integral", e.xi_integral},
                           {"chart", e.chart},
                           {"covered", e.covered},
                           {"in_bad_set", e.in_bad_set}});
  Json j{{"xi", r.xi.get_str()}, {"skipped", r.skipped}};
  if (r.skipped) {
    j["reason"] = r.skip_reason;
    return j;
  }
  j["bound"] = num(r.bound);
  j["matching_complete"] = r.matching_complete;
  j["base"] = base;
  j["cover"] = cover;
  j["ramification_audit"] = Json{{"entries", entries},
                                 {"violations", primes_json(t.violations)},
                                 {"uncovered", primes_json(t.uncovered)},
                                 {"holds", t.holds()}};
  j["holds"] = r.holds(tol) && t.holds();
  return j;
}

struct VerifyRun {
  Json report;
  bool counterexample = false;
};

VerifyRun verify_covering(const CheckedCovering& c, const CoveringAudit& audit, const std::vector<mpq_class>& sample,
                          const RunOptions& opts, long double tol, JobOutcome& out) {
  std::vector<FiberReport> fibers = cw_empirical_check(c, sample, opts.threads);
  Json arr = Json::array();
  int checked = 0, skipped = 0, failed = 0;
  long double worst = 0;
  for (auto& r : fibers) {
    TmainAudit t = tmain_ramification_check(audit, r);
    arr.push_back(fiber_json(r, t, tol));
    if (r.skipped) {
      ++skipped;
      out.summary.push_back("xi = " + r.xi.get_str() + ": skipped (" + r.skip_reason + ")");
      continue;
    }
    ++checked;
    long double mx = 0;
    for (auto& p : r.cover) mx = std::max(mx, p.partial.upper);
    worst = std::max(worst, mx);
    bool ok = r.holds(tol) && t.holds();
    if (!ok) ++failed;
    out.summary.push_back("xi = " + r.xi.get_str() + ": " + std::to_string(r.cover.size()) +
                          " cover point class(es), max partial " + format_number(mx) + (ok ? "  pass" : "  FAIL"));
  }
  RiemannHurwitz rh = riemann_hurwitz_check(c);
  Json rhj{{"genus", rh.base.genus()},
           {"genus_tilde", rh.cover.genus()},
           {"nu", rh.nu},
           {"consistent", rh.consistent},
           {"note", rh.note},
           {"ramification_asserted", c.spec.ramification_asserted}};
  long double bound = fibers.empty() ? 0 : fibers.front().bound;
  out.summary.push_back("fibers checked: " + std::to_string(checked) + ", skipped: " + std::to_string(skipped) +
                        ", failures: " + std::to_string(failed) + ", max partial " + format_number(worst) +
                        " vs bound " + format_number(bound));
  out.summary.push_back("genus " + std::to_string(rh.base.genus()) + " -> " + std::to_string(rh.cover.genus()) +
                        ": " + rh.note);
  return {Json{{"mode", mode_name(c.spec.mode)},
               {"S", place_set_json(c.spec.S)},
               {"nu", c.nu},
               {"tolerance", num(tol)},
               {"bound", num(bound)},
               {"charts", audit.infinite ? "both" : "finite"},
               {"fibers", arr},
               {"checked", checked},
               {"skipped", skipped},
               {"failures", failed},
               {"max_partial", num(worst)},
               {"riemann_hurwitz", rhj}},
          failed > 0};
}

long double job_tolerance(const json& job, const RunOptions& opts) {
  if (opts.tolerance) return *opts.tolerance;
  if (job.contains("tolerance")) {
    long double t = parse_real(job["tolerance"], "job.tolerance");
    if (!(t >= 0)) fail("job.tolerance", "must be nonnegative");
    return t;
  }
  return kPartialTolerance;
}

ChartPolicy job_charts(const json& job, const RunOptions& opts) {
  if (!job.contains("chart")) return opts.charts;
  std::string c = job["chart"].is_string() ? job["chart"].get<std::string>() : "";
  if (c != "both" && c != "finite") fail("job.chart", "expected \"both\" or \"finite\"");
  // a command-line flag set to finite wins over the job file
  if (opts.charts == ChartPolicy::finite) return ChartPolicy::finite;
  return c == "finite" ? ChartPolicy::finite : ChartPolicy::both;
}

void run_verify(const json& job, const RunOptions& opts, JobOutcome& out) {
  CheckedCovering c = checked(job);
  std::vector<mpq_class> sample = parse_samples(job, c.spec, opts.samples);
  CoveringAudit audit = covering_audit(c, job_charts(job, opts));
  VerifyRun v = verify_covering(c, audit, sample, opts, job_tolerance(job, opts), out);
  out.report = v.report;
  out.counterexample = v.counterexample;
}

void run_audit_all(const json& job, const RunOptions& opts, JobOutcome& out) {
  CheckedCovering c = checked(job);
  std::vector<mpq_class> sample = parse_samples(job, c.spec, opts.samples);
  JobOutcome bound;
  run_bound(job, bound);
  CoveringAudit audit = covering_audit(c, job_charts(job, opts));
  const CoveringBadPlaces& b = audit.finite_places;
  Json puiseux = Json::array();
  bool puiseux_ok = true;
  for (auto* t : {&b.base, &b.cover})
    for (auto& A : t->centers) {
      puiseux.push_back(center_json(A));
      puiseux_ok = puiseux_ok && A.all_hold();
    }
  Json charts{{"finite", Json{{"base", table_json(b.base)},
                              {"cover", table_json(b.cover)},
                              {"U", place_set_json(b.tower.U)},
                              {"U_check", check_json(b.tower.check)},
                              {"union", place_set_json(b.all)},
                              {"union_check", check_json(b.union_check)},
                              {"all_hold", b.all_hold()}}}};
  bool places_ok = b.all_hold();
  if (audit.infinite_places) {
    const CoveringBadPlaces& bi = *audit.infinite_places;
    charts["infinite"] = Json{{"base", table_json(bi.base)},
                              {"cover", table_json(bi.cover)},
                              {"U", place_set_json(bi.tower.U)},
                              {"U_check", check_json(bi.tower.check)},
                              {"union", place_set_json(bi.all)},
                              {"union_check", check_json(bi.union_check)},
                              {"all_hold", bi.all_hold()}};
    places_ok = places_ok && bi.all_hold();
  }
  out.summary = bound.summary;
  out.summary.push_back("bad places: " + b.all.to_string() + "  " + check_line(b.union_check));
  if (audit.infinite_places)
    out.summary.push_back("bad places at infinity: " + audit.infinite_places->all.to_string() + "  " +
                          check_line(audit.infinite_places->union_check));
  out.summary.push_back(std::string("Puiseux audits at every center: ") + (puiseux_ok ? "pass" : "FAIL"));
  VerifyRun v = verify_covering(c, audit, sample, opts, job_tolerance(job, opts), out);
  out.report = Json{{"bound", bound.report},
                    {"badplaces", charts},
                    {"puiseux", puiseux},
                    {"verify", v.report},
                    {"all_hold", places_ok && puiseux_ok && !v.counterexample}};
  out.counterexample = !places_ok || !puiseux_ok || v.counterexample;
}

}  // namespace

std::string format_number(long double x) {
  if (std::isnan(static_cast<double>(x))) return "nan";
  if (std::isinf(static_cast<double>(x))) return x > 0 ? "inf" : "-inf";
  if (x == 0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12Lg", x);
  return buf;
}

json parse_job_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    size_t pos = std::min(e.byte == 0 ? 0 : e.byte - 1, text.size());
    long line = 1 + std::count(text.begin(), text.begin() + static_cast<long>(pos), '\n');
    size_t nl = text.rfind('\n', pos == 0 ? 0 : pos - 1);
    long column = static_cast<long>(pos - (nl == std::string::npos || pos == 0 ? 0 : nl + 1)) + 1;
    throw JobError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + e.what());
  }
}

QPoly2 parse_bivariate(const json& terms, const std::string& where) {
  if (!terms.is_array() || terms.empty()) fail(where, "expected a nonempty list of [i, j, num, den] terms");
  std::vector<std::tuple<int, int, mpq_class>> t;
  for (size_t k = 0; k < terms.size(); ++k) {
    const std::string w = where + "[" + std::to_string(k) + "]";
    const json& a = terms[k];
    if (!a.is_array() || a.size() != 4) fail(w, "expected [i, j, num, den]");
    t.emplace_back(parse_small(a[0], w + " X-exponent", 0, 4096), parse_small(a[1], w + " Y-exponent", 0, 4096),
                   parse_rational(a[2], a[3], w));
  }
  QPoly2 f = make_qpoly2(t);
  if (f.zero()) fail(where, "polynomial is zero");
  return f;
}

QPoly parse_univariate(const json& terms, const std::string& where) {
  if (!terms.is_array() || terms.empty()) fail(where, "expected a nonempty list of [i, num, den] terms");
  QPoly p;
  for (size_t k = 0; k < terms.size(); ++k) {
    const std::string w = where + "[" + std::to_string(k) + "]";
    const json& a = terms[k];
    if (!a.is_array() || a.size() != 3) fail(w, "expected [i, num, den]");
    int i = parse_small(a[0], w + " exponent", 0, 4096);
    p += QPoly::monomial(parse_rational(a[1], a[2], w), i);
  }
  if (p.zero()) fail(where, "polynomial is zero");
  return p;
}

CoveringSpec parse_covering(const json& c, const std::string& where) {
  CoveringSpec s;
  s.f = parse_bivariate(require(c, "f", where), where + ".f");
  s.ft = parse_bivariate(require(c, "f_tilde", where), where + ".f_tilde");
  s.Phi = parse_bivariate(require(c, "y_numerator", where), where + ".y_numerator");
  s.D = c.contains("y_denominator") ? parse_univariate(c["y_denominator"], where + ".y_denominator") : QPoly(1);
  const json& mode = require(c, "mode", where);
  if (!mode.is_string() || (mode != "projective" && mode != "affine"))
    fail(where + ".mode", "expected \"projective\" or \"affine\"");
  s.mode = mode == "affine" ? CoveringMode::affine : CoveringMode::projective;
  if (c.contains("S")) {
    const json& S = c["S"];
    if (!S.is_array()) fail(where + ".S", "expected a list of primes");
    for (size_t k = 0; k < S.size(); ++k) {
      const std::string w = where + ".S[" + std::to_string(k) + "]";
      if (S[k].is_string() && S[k] == "infinity") {
        s.S.insert_infinite();
        continue;
      }
      mpz_class p = parse_integer(S[k], w);
      if (p < 2 || !is_probable_prime(p)) fail(w, "not a prime");
      s.S.insert(p);
    }
  }
  if (s.mode == CoveringMode::affine) s.S.insert_infinite();
  if (c.contains("ramification_asserted")) {
    if (!c["ramification_asserted"].is_boolean()) fail(where + ".ramification_asserted", "expected true or false");
    s.ramification_asserted = c["ramification_asserted"].get<bool>();
  }
  return s;
}

std::vector<mpq_class> parse_samples(const json& job, const CoveringSpec& spec, std::optional<int> count) {
  const std::string w = "job.samples";
  const json& s = require(job, "samples", "job");
  if (s.contains("points")) {
    const json& pts = s["points"];
    if (!pts.is_array()) fail(w + ".points", "expected a list of [num, den] pairs");
    std::vector<mpq_class> out;
    for (size_t k = 0; k < pts.size(); ++k) {
      const std::string wk = w + ".points[" + std::to_string(k) + "]";
      if (pts[k].is_array() && pts[k].size() == 2)
        out.push_back(parse_rational(pts[k][0], pts[k][1], wk));
      else
        out.push_back(parse_rational(pts[k], json(1), wk));
    }
    if (count && *count < static_cast<int>(out.size())) out.resize(static_cast<size_t>(*count));
    return out;
  }
  int n = count ? *count : parse_small(require(s, "count", w), w + ".count", 0, 100000);
  long h = s.contains("max_height") ? parse_small(s["max_height"], w + ".max_height", 1, 1000000) : 50;
  unsigned seed = s.contains("seed") ? static_cast<unsigned>(parse_small(s["seed"], w + ".seed", 0, 1 << 30)) : 1u;
  std::optional<PlaceSet> S;
  if (spec.mode == CoveringMode::affine) S = spec.S;
  return sample_points(n, h, S, seed);
}

const std::vector<std::string>& job_commands() {
  static const std::vector<std::string> c{"bound", "badplaces", "puiseux", "verify", "audit-all"};
  return c;
}

JobOutcome run_job(const std::string& command, const json& job, const RunOptions& opts) {
  if (!job.is_object()) throw JobError("job: expected a JSON object");
  if (job.contains("command") && (!job["command"].is_string() || job["command"] != command))
    fail("job.command", "does not match the requested command \"" + command + "\"");
  JobOutcome out;
  if (command == "bound")
    run_bound(job, out);
  else if (command == "badplaces")
    run_badplaces(job, out);
  else if (command == "puiseux")
    run_puiseux(job, out);
  else if (command == "verify")
    run_verify(job, opts, out);
  else if (command == "audit-all")
    run_audit_all(job, opts, out);
  else
    throw JobError("unknown command \"" + command + "\"");
  out.report = Json{{"command", command}, {"counterexample", out.counterexample}, {"result", out.report}};
  return out;
}

}  // namespace cheval
