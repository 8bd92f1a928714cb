#include "doctest.h"

#include <cmath>
#include <random>

#include "cheval/eliminate.hpp"
#include "cheval/factor.hpp"
#include "cheval/integer.hpp"

using namespace cheval;

namespace {
QPoly zp(std::initializer_list<long> c) {
  std::vector<mpq_class> v;
  for (long x : c) v.emplace_back(x);
  return QPoly(v);
}
QPoly2 q2(std::initializer_list<std::tuple<int, int, mpq_class>> t) { return make_qpoly2(t); }

QPoly2 random_poly2(std::mt19937_64& rng, int m, int n, long range = 100) {
  std::uniform_int_distribution<long> coef(-range, range);
  std::vector<QPoly> cols;
  for (int j = 0; j <= n; ++j) {
    std::vector<mpq_class> c;
    for (int i = 0; i <= m; ++i) c.emplace_back(coef(rng));
    cols.emplace_back(c);
  }
  while (cols.back().zero()) cols.back() = zp({1});
  return QPoly2(cols);
}

QPoly random_poly(std::mt19937_64& rng, int d, long range = 100) {
  std::uniform_int_distribution<long> coef(-range, range);
  std::vector<mpq_class> c;
  for (int i = 0; i <= d; ++i) c.emplace_back(coef(rng));
  if (sgn(c.back()) == 0) c.back() = 1;
  return QPoly(c);
}
}  // namespace

TEST_SUITE("eliminate") {
  TEST_CASE("Y-resultant examples") {
    CHECK(resultant_y(q2({{0, 2, 1}, {1, 0, -1}})) == zp({0, -4}));
    CHECK(resultant_y(q2({{0, 2, 1}, {1, 0, -1}, {2, 0, -1}})) == zp({0, -4, -4}));
    // Res(Y^2 - XY + 1, 2Y - X) = lc^1 * (2y1 - X)(2y2 - X) = 4 - X^2
    CHECK(resultant_y(q2({{0, 2, 1}, {1, 1, -1}, {0, 0, 1}})) == zp({4, 0, -1}));
    CHECK_THROWS_AS(resultant_y(QPoly2(zp({0, 1}))), std::invalid_argument);
  }

  TEST_CASE("Y-resultant of quadratics matches a(4ac - b^2)") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 40; ++t) {
      QPoly2 f = random_poly2(rng, 3, 2, 20);
      QPoly a = f[2], b = f[1], c = f[0];
      CHECK(resultant_y(f) == a * (QPoly(mpq_class(4)) * a * c - b * b));
    }
  }

  TEST_CASE("Y-resultant agrees with fiberwise Euclidean resultants") {
    std::mt19937_64 rng(12);
    for (int t = 0; t < 30; ++t) {
      QPoly2 f = random_poly2(rng, 3, 3 + t % 2, 30);
      QPoly R = resultant_y(f);
      for (long x = -3; x <= 3; ++x) {
        if (sgn(f.lead().eval(mpq_class(x))) == 0) continue;
        QPoly F = eval_x(f, x);
        CHECK(R.eval(mpq_class(x)) == resultant_field(F, F.derivative()));
      }
    }
  }

  TEST_CASE("resultant vanishing criterion in both directions") {
    std::vector<QPoly2> fixtures = {
        q2({{0, 2, 1}, {1, 0, -1}, {2, 0, -1}}),
        q2({{0, 2, 1}, {1, 1, -1}, {0, 0, 1}}),
        q2({{1, 2, 1}, {0, 2, -1}, {0, 0, 1}, {2, 1, 1}}),
        q2({{0, 3, 1}, {2, 1, -3}, {3, 0, 1}, {0, 0, -1}}),
        q2({{2, 3, 1}, {0, 3, -1}, {1, 1, 2}, {0, 0, 5}}),
    };
    for (auto& f : fixtures) {
      QPoly R = resultant_y(f);
      int roots_hit = 0;
      for (long num = -12; num <= 12; ++num)
        for (long den = 1; den <= 4; ++den) {
          mpq_class x(num, den);
          x.canonicalize();
          QPoly F = eval_x(f, x);
          bool drop = F.degree() < f.degree();
          bool repeated = !drop && gcd(F, F.derivative()).degree() >= 1;
          bool vanishes = sgn(R.eval(x)) == 0;
          CHECK(vanishes == (drop || repeated));
          roots_hit += vanishes;
        }
      CHECK(roots_hit >= 1);
    }
  }

  TEST_CASE("radical") {
    CHECK(radical(zp({2, -3, 0, 1})) == zp({-2, 1, 1}));
    CHECK(radical(zp({0, -4, -4})) == zp({0, -4, -4}));
    CHECK(radical(zp({-1, 3, -3, 1})) == zp({-1, 1}));
    CHECK(radical(zp({7})) == zp({7}));
    CHECK_THROWS(radical(QPoly()));
    std::mt19937_64 rng(13);
    for (int t = 0; t < 50; ++t) {
      QPoly a = random_poly(rng, 2, 9), b = random_poly(rng, 1, 9);
      QPoly F = a * a * b * b * b * random_poly(rng, 1, 9);
      QPoly h = radical(F);
      CHECK(h.lead() == F.lead());
      CHECK(is_squarefree(h));
      CHECK((F % h).zero());
      CHECK(squarefree_part(F) == h.monic());
    }
  }

  TEST_CASE("translation") {
    QPoly2 f = q2({{0, 2, 1}, {1, 0, -1}});
    CHECK(translate(f, NFElem(0)) == to_nfpoly2(f));
    QPoly2 g = q2({{0, 2, 1}, {1, 0, -1}, {2, 0, -1}});
    CHECK(translate(g, NFElem(-1)) == to_nfpoly2(q2({{0, 2, 1}, {2, 0, -1}, {1, 0, 1}})));
    CHECK(translate(f, NFElem(1)) == to_nfpoly2(q2({{0, 2, 1}, {1, 0, -1}, {0, 0, -1}})));

    auto K = NumberField::create(zp({-2, 0, 1}));
    NFElem r = NFElem::generator(K);
    NFPoly2 t = translate(g, r);
    // f(X + sqrt2, Y) at X = -sqrt2 gives f(0, Y) = Y^2
    for (int j = 0; j <= t.degree(); ++j) {
      NFElem v = t[j].eval(-r);
      CHECK(v == (j == 2 ? NFElem(1) : NFElem(0)));
    }
    std::mt19937_64 rng(14);
    for (int k = 0; k < 20; ++k) {
      QPoly2 h = random_poly2(rng, 3, 2, 50);
      CHECK(check_translation(h, r).holds());
      CHECK(check_translation(h, NFElem(mpq_class(k - 10, 3))).holds());
    }
  }

  TEST_CASE("f0-monic normalization") {
    auto M = PlaneCurveModel::normalize_f0_monic(q2({{0, 2, 2}, {1, 0, -1}}));
    CHECK(M.f() == q2({{0, 2, 1}, {1, 0, mpq_class(-1, 2)}}));
    CHECK(M.normalization() == 2);
    auto N = PlaneCurveModel::normalize_f0_monic(q2({{0, 2, 1}, {1, 1, -1}, {0, 0, 1}}));
    CHECK(N.f() == N.original());
    CHECK(N.normalization() == 1);
    auto P = PlaneCurveModel::normalize_f0_monic(q2({{1, 1, 3}, {0, 1, 1}, {1, 0, -1}}));
    CHECK(P.f() == q2({{1, 1, 1}, {0, 1, mpq_class(1, 3)}, {1, 0, mpq_class(-1, 3)}}));
    CHECK(P.f0().lead() == 1);
    // monic f0 gives equal affine and projective heights
    std::mt19937_64 rng(15);
    for (int t = 0; t < 20; ++t) {
      auto Q = PlaneCurveModel::normalize_f0_monic(random_poly2(rng, 3, 3, 40), false);
      CHECK(Q.f0().lead() == 1);
      CHECK(std::fabs(Q.ha().mid() - Q.hp().mid()) < 1e-12L);
    }
  }

  TEST_CASE("model data for the standard examples") {
    auto M = PlaneCurveModel::normalize_f0_monic(q2({{0, 2, 1}, {1, 0, -1}}));
    CHECK(M.m() == 1);
    CHECK(M.n() == 2);
    CHECK(M.r0() == -4);
    CHECK(M.Delta() == -4);
    REQUIRE(M.centers().size() == 1);
    CHECK(M.centers()[0].mu == 1);
    CHECK(M.centers()[0].u == 0);
    CHECK(M.irreducibility().status == IrreducibilityStatus::certified);

    auto N = PlaneCurveModel::normalize_f0_monic(q2({{0, 2, 1}, {1, 0, -1}, {2, 0, -1}}));
    CHECK(N.Delta() == 64);
    CHECK(N.centers().size() == 2);

    // Res(4 - X^2, -2X) = 16 under lc(A)^deg B * prod B(roots of A)
    auto T = PlaneCurveModel::normalize_f0_monic(q2({{0, 2, 1}, {1, 1, -1}, {0, 0, 1}}));
    CHECK(T.Delta() == 16);
    CHECK(prime_divisors(T.Delta().get_num()) == std::vector<mpz_class>{2});

    // f0 = X vanishes at the center 0
    auto U = PlaneCurveModel::normalize_f0_monic(q2({{1, 2, 1}, {0, 0, -1}, {0, 1, 1}}));
    bool found = false;
    for (auto& c : U.centers())
      if (c.minpoly == zp({0, 1})) {
        found = true;
        CHECK(c.u == 1);
        CHECK(c.mu >= 1);
      }
    CHECK(found);
  }

  TEST_CASE("absolute irreducibility certificate") {
    CHECK(absolute_irreducibility(q2({{0, 2, 1}, {1, 0, -1}})).status == IrreducibilityStatus::certified);
    CHECK(absolute_irreducibility(q2({{0, 3, 1}, {1, 0, -1}, {2, 1, 1}})).status == IrreducibilityStatus::certified);
    // Y^2 - 2X^2 = (Y - sqrt2 X)(Y + sqrt2 X): irreducible over Q, reducible over Q(sqrt2)
    auto r = absolute_irreducibility(q2({{0, 2, 1}, {2, 0, -2}}));
    CHECK(r.status != IrreducibilityStatus::certified);
    CHECK(r.message.find("warning") != std::string::npos);
    // (Y - X)(Y + X) has no irreducible fiber
    CHECK(absolute_irreducibility(q2({{0, 2, 1}, {2, 0, -1}})).status == IrreducibilityStatus::assumed);
    CHECK_THROWS_AS(absolute_irreducibility(q2({{1, 2, 1}, {2, 0, 1}})), std::invalid_argument);
  }

  TEST_CASE("height inequality examples") {
    QPoly2 f = q2({{0, 2, 1}, {1, 0, -1}});
    auto c6 = check_resultant_affine(f);
    CHECK(std::fabs(c6.rhs - 3 * (std::log(8.0L) + std::log(2.0L))) < 1e-15L);
    CHECK(std::fabs(c6.rhs - 8.318L) < 1e-3L);
    CHECK(std::fabs(c6.lhs.mid() - std::log(4.0L)) < 1e-15L);
    CHECK(c6.holds());

    auto mh = check_mahler(zp({-2, 0, 1}));
    CHECK(std::fabs(mh.lhs.mid() - std::log(2.0L)) < 1e-12L);
    CHECK(std::fabs(mh.rhs - std::log(6.0L)) < 1e-15L);
    CHECK(mh.holds());

    auto dv = check_divisor(zp({-1, 1}), zp({-1, 0, 1}));
    CHECK(dv[0].lhs.mid() == doctest::Approx(0));
    CHECK(std::fabs(dv[0].rhs - 2) < 1e-15L);
    CHECK(dv[0].holds());
    CHECK(dv[1].holds());
    CHECK_THROWS(check_divisor(zp({-2, 1}), zp({-1, 0, 1})));

    auto u = check_univariate_resultant(zp({-2, 0, 1}));
    CHECK(std::fabs(u.lhs.mid() - std::log(8.0L)) < 1e-15L);
    CHECK(u.holds());
  }

  TEST_CASE("random resultant inequalities (property)") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> deg(1, 4);
    int count = 0;
    for (int t = 0; t < 120; ++t) {
      QPoly2 f = random_poly2(rng, deg(rng), deg(rng));
      if (resultant_y(f).zero()) continue;
      auto a = check_resultant_affine(f), p = check_resultant_projective(f);
      CHECK_MESSAGE(a.holds(), to_string(f));
      CHECK_MESSAGE(p.holds(), to_string(f));
      ++count;
    }
    CHECK(count >= 100);
  }

  TEST_CASE("random Gelfond and affine product inequalities (property)") {
    std::mt19937_64 rng(2025);
    std::uniform_int_distribution<int> deg(0, 3), parts(2, 4);
    for (int t = 0; t < 100; ++t) {
      std::vector<QPoly2> fs;
      int k = parts(rng);
      for (int i = 0; i < k; ++i) fs.push_back(random_poly2(rng, deg(rng), deg(rng) + (i == 0)));
      CHECK(check_gelfond(fs).holds());
      std::vector<QPoly2> two(fs.begin(), fs.begin() + 2);
      CHECK(check_product_affine(two).holds());
    }
  }

  TEST_CASE("random Mahler and divisor inequalities (property)") {
    std::mt19937_64 rng(2026);
    std::uniform_int_distribution<int> deg(1, 8);
    for (int t = 0; t < 100; ++t) {
      QPoly F = random_poly(rng, deg(rng));
      CHECK_MESSAGE(check_mahler(F).holds(), to_string(F));
      QPoly g = random_poly(rng, 1 + t % 3, 20);
      for (auto& c : check_divisor(g, g * random_poly(rng, 1 + t % 4, 20))) CHECK(c.holds());
    }
  }

  TEST_CASE("determinant height inequality (property)") {
    std::mt19937_64 rng(2027);
    for (int t = 0; t < 40; ++t) {
      int s = 2 + t % 3;
      std::vector<std::vector<QPoly>> M(s, std::vector<QPoly>(s));
      for (auto& row : M)
        for (auto& e : row) e = random_poly(rng, t % 3, 50);
      CHECK(check_determinant(M).holds());
    }
  }

  TEST_CASE("height bound suite") {
    auto s = height_bound_suite(q2({{0, 3, 1}, {1, 1, -3}, {3, 0, 2}, {0, 0, 1}}));
    CHECK(s.checks.size() >= 5);
    CHECK(s.all_hold());
    for (auto& c : s.checks) CHECK(!c.provenance.empty());
  }
}
