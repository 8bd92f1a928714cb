#include "doctest.h"

#include <cmath>

#include "cheval/fixtures.hpp"
#include "cheval/integer.hpp"
#include "cheval/verify.hpp"

using namespace cheval;

namespace {

const long double kLog2 = std::log(2.0L);

std::vector<std::string> minpolys(const std::vector<FiberPoint>& pts) {
  std::vector<std::string> out;
  for (auto& p : pts) out.push_back(to_string(p.factor, "Y"));
  return out;
}

}  // namespace

TEST_SUITE("verify") {
  TEST_CASE("covering validation") {
    auto j = validate_covering(fixtures::joukowski_covering());
    CHECK(j.nu == 2);
    CHECK(j.spec.S.has_infinite());
    auto d = validate_covering(fixtures::descent_covering());
    CHECK(d.nu == 2);
    CHECK(d.base.m() == 4);
    CHECK(d.cover.m() == 2);

    CoveringSpec bad = fixtures::joukowski_covering();
    bad.Phi = make_qpoly2({{0, 1, 1}});
    CHECK_THROWS_WITH(validate_covering(bad), "y-expression does not define a covering map");
    CoveringSpec wrong_d = fixtures::descent_covering();
    wrong_d.D = QPoly(3);
    CHECK_THROWS_WITH(validate_covering(wrong_d), "y-expression does not define a covering map");
    CoveringSpec degree = fixtures::joukowski_covering();
    degree.f = make_qpoly2({{0, 3, 1}, {1, 0, -1}});
    CHECK_THROWS_AS(validate_covering(degree), std::invalid_argument);
  }

  TEST_CASE("fiber points") {
    auto a = fiber_points(fixtures::descent_cover(), 0);
    REQUIRE(a.size() == 2);
    CHECK(minpolys(a) == std::vector<std::string>{"Y^2 + 1", "Y^2 + 9"});
    for (auto& p : a) CHECK(p.field->discriminant() == -4);

    auto b = fiber_points(fixtures::joukowski(), 3);
    REQUIRE(b.size() == 1);
    CHECK(b[0].field->discriminant() == 5);

    auto c = fiber_points(fixtures::square_root(), 4);
    REQUIRE(c.size() == 2);
    CHECK(c[0].field->degree() == 1);
    CHECK(c[0].y.rational_value() * c[1].y.rational_value() == -4);

    int total = 0;
    for (auto& p : fiber_points(fixtures::descent_cover(), mpq_class(7, 3))) total += p.factor.degree();
    CHECK(total == 4);

    // X Y^2 - 1 has no fiber over 0
    CHECK_THROWS_WITH(fiber_points(make_qpoly2({{1, 2, 1}, {0, 0, -1}}), 0), "fiber at infinity; transform model");
  }

  TEST_CASE("model at infinity") {
    auto a = model_at_infinity(PlaneCurveModel::normalize_f0_monic(fixtures::square_root(), false));
    CHECK(a.f() == make_qpoly2({{1, 2, 1}, {0, 0, -1}}));
    auto b = model_at_infinity(PlaneCurveModel::normalize_f0_monic(fixtures::joukowski(), false));
    CHECK(b.f() == make_qpoly2({{1, 2, 1}, {0, 1, -1}, {1, 0, 1}}));
    CHECK(b.f0() == QPoly::x());
    for (auto f : {fixtures::node(), fixtures::descent(), fixtures::descent_cover()}) {
      auto M = PlaneCurveModel::normalize_f0_monic(f, false);
      auto I = model_at_infinity(M);
      CHECK(I.m() == M.m());
      CHECK(I.n() == M.n());
    }
    // the reciprocal covering still passes the congruence
    auto inf = covering_at_infinity(validate_covering(fixtures::descent_covering()));
    CHECK(inf.nu == 2);
  }

  TEST_CASE("descent fiber over zero") {
    auto c = validate_covering(fixtures::descent_covering());
    auto r = fiber_report(c, 0);
    REQUIRE_FALSE(r.skipped);
    CHECK(r.matching_complete);
    REQUIRE(r.base.size() == 2);
    REQUIRE(r.cover.size() == 2);
    for (auto& p : r.cover) {
      CHECK(p.relative_degree == 2);
      CHECK(p.disc_cover == -4);
      CHECK(p.disc_base == 1);
      CHECK(p.relative_norm == 4);
      CHECK(std::fabs(p.partial.mid() - kLog2) < 1e-15);
      CHECK(std::fabs(p.partial_from_norm - kLog2) < 1e-15);
      CHECK(p.relative_ramified == std::vector<mpz_class>{2});
      CHECK(p.consistent());
      CHECK(p.within_bound);
    }
    // y~ = i gives y = 2 and y~ = 3i gives y = -2
    CHECK(r.cover[0].y_in_cover == NFElem(2));
    CHECK(r.cover[1].y_in_cover == NFElem(-2));
    CHECK(std::fabs((double)r.bound - 1136118.4293590477) < 1e-6);
    CHECK(r.holds());
  }

  TEST_CASE("Joukowski fibers") {
    auto c = validate_covering(fixtures::joukowski_covering());
    auto three = fiber_report(c, 3);
    REQUIRE_FALSE(three.skipped);
    CHECK(three.matching_complete);
    REQUIRE(three.cover.size() == 2);
    for (auto& p : three.cover) {
      CHECK(p.point.field->discriminant() == 5);
      CHECK(p.relative_degree == 1);
      CHECK(p.partial.upper <= 1e-15);
      CHECK(p.relative_ramified.empty());
      CHECK(p.consistent());
    }
    auto four = fiber_report(c, 4);
    REQUIRE(four.cover.size() == 1);
    const auto& p = four.cover[0];
    CHECK(p.disc_cover == 2304);
    CHECK(p.disc_base == 12);
    CHECK(p.relative_norm == 16);
    CHECK(std::fabs(p.partial.mid() - kLog2) < 1e-15);
    CHECK(p.relative_ramified == std::vector<mpz_class>{2});
    CHECK(p.ramified_over_Q == std::vector<mpz_class>{2, 3});
    CHECK(p.consistent());
    CHECK(std::fabs((double)four.bound - 184099.89115672148) < 1e-6);
    CHECK(four.holds());

    // branch values and non-S-integral points are skipped with a reason
    CHECK(fiber_report(c, 2).skipped);
    CHECK(fiber_report(c, -2).skipped);
    auto half = fiber_report(c, mpq_class(1, 2));
    CHECK(half.skipped);
    CHECK(half.skip_reason == "xi is not S-integral");
  }

  TEST_CASE("ramification localization") {
    auto d = validate_covering(fixtures::descent_covering());
    auto da = covering_audit(d, ChartPolicy::both);
    REQUIRE(da.infinite_places.has_value());
    CHECK(da.finite_places.all_hold());
    CHECK(da.infinite_places->all_hold());
    auto t0 = tmain_ramification_check(da, fiber_report(d, 0));
    REQUIRE(t0.entries.size() == 1);
    CHECK(t0.entries[0].p == 2);
    CHECK(t0.entries[0].chart == "finite");
    CHECK(da.finite_places.cover.T[1].contains(2));
    CHECK(t0.holds());

    auto j = validate_covering(fixtures::joukowski_covering());
    auto ja = covering_audit(j, ChartPolicy::both);
    CHECK_FALSE(ja.infinite.has_value());
    auto t4 = tmain_ramification_check(ja, fiber_report(j, 4));
    REQUIRE(t4.entries.size() == 1);
    CHECK(t4.entries[0].p == 2);
    CHECK(t4.holds());
    CHECK(tmain_ramification_check(ja, fiber_report(j, 3)).entries.empty());

    // primes where xi has a pole fall to the second chart
    auto finite_only = covering_audit(d, ChartPolicy::finite);
    for (auto& r : cw_empirical_check_serial(d, sample_points(12, 50, std::nullopt, 3))) {
      auto a = tmain_ramification_check(finite_only, r);
      auto b = tmain_ramification_check(da, r);
      CHECK(a.holds());
      CHECK(b.holds());
      CHECK(b.uncovered.empty());
      for (auto& p : a.uncovered) CHECK(valuation(r.xi, p) < 0);
      for (auto& e : b.entries) CHECK(e.chart == (e.xi_integral ? "finite" : "infinite"));
    }
  }

  TEST_CASE("empirical bounds on sampled fibers") {
    auto d = validate_covering(fixtures::descent_covering());
    auto da = covering_audit(d, ChartPolicy::both);
    auto ds = sample_points(24, 50, std::nullopt, 11);
    auto dr = cw_empirical_check(d, ds);
    int checked = 0;
    for (auto& r : dr) {
      CHECK_MESSAGE(r.holds(), "xi = ", r.xi.get_str());
      CHECK(tmain_ramification_check(da, r).holds());
      if (!r.skipped) ++checked;
    }
    CHECK(checked >= 20);

    auto j = validate_covering(fixtures::joukowski_covering());
    auto ja = covering_audit(j, ChartPolicy::both);
    auto js = sample_points(24, 50, j.spec.S, 11);
    for (auto& x : js) CHECK(x.get_den() == 1);
    auto jr = cw_empirical_check(j, js);
    checked = 0;
    for (auto& r : jr) {
      CHECK_MESSAGE(r.holds(), "xi = ", r.xi.get_str());
      auto t = tmain_ramification_check(ja, r);
      CHECK(t.holds());
      CHECK(t.uncovered.empty());
      if (!r.skipped) ++checked;
    }
    CHECK(checked >= 20);
  }

  TEST_CASE("parallel fibers match the serial reference") {
    auto d = validate_covering(fixtures::descent_covering());
    auto s = sample_points(8, 20, std::nullopt, 5);
    auto a = cw_empirical_check_serial(d, s);
    auto b = cw_empirical_check(d, s, 2);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].xi == b[i].xi);
      CHECK(a[i].skipped == b[i].skipped);
      REQUIRE(a[i].cover.size() == b[i].cover.size());
      for (size_t k = 0; k < a[i].cover.size(); ++k) {
        CHECK(a[i].cover[k].relative_norm == b[i].cover[k].relative_norm);
        CHECK(a[i].cover[k].partial.mid() == b[i].cover[k].partial.mid());
      }
    }
  }

  TEST_CASE("Riemann-Hurwitz from branch data") {
    auto d = riemann_hurwitz_check(validate_covering(fixtures::descent_covering()));
    CHECK(d.base.genus() == 1);
    CHECK(d.cover.genus() == 1);
    CHECK(d.consistent);
    auto j = riemann_hurwitz_check(validate_covering(fixtures::joukowski_covering()));
    CHECK(j.base.genus() == 0);
    CHECK(j.cover.genus() == 0);
    CHECK(j.cover.euler > j.nu * j.base.euler);
    CHECK(j.consistent);
    // the same pair declared unramified is caught
    CoveringSpec s = fixtures::joukowski_covering();
    s.mode = CoveringMode::projective;
    CHECK_FALSE(riemann_hurwitz_check(validate_covering(s)).consistent);
  }

  TEST_CASE("sample points") {
    auto a = sample_points(30, 50, std::nullopt, 7);
    auto b = sample_points(30, 50, std::nullopt, 7);
    CHECK(a == b);
    CHECK(a.size() == 30);
    std::set<mpq_class> distinct(a.begin(), a.end());
    CHECK(distinct.size() == 30);
    for (auto& x : a) {
      CHECK(abs(x.get_num()) <= 50);
      CHECK(x.get_den() <= 50);
    }
    PlaceSet S{2};
    for (auto& x : sample_points(20, 50, S, 7)) {
      mpz_class d = x.get_den();
      while (d % 2 == 0) d /= 2;
      CHECK(d == 1);
    }
  }
}
