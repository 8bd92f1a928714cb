#include "doctest.h"

#include <cmath>
#include <random>

#include "cheval/badplaces.hpp"
#include "cheval/factor.hpp"
#include "cheval/integer.hpp"

using namespace cheval;

namespace {
QPoly2 q2(std::initializer_list<std::tuple<int, int, mpq_class>> t) { return make_qpoly2(t); }
PlaneCurveModel model(const QPoly2& f) { return PlaneCurveModel::normalize_f0_monic(f, false); }

const QPoly2 kSqrt = q2({{0, 2, 1}, {1, 0, -1}});                       // Y^2 - X
const QPoly2 kNode = q2({{0, 2, 1}, {1, 0, -1}, {2, 0, -1}});           // Y^2 - X(X+1)
const QPoly2 kJoukowski = q2({{0, 2, 1}, {1, 1, -1}, {0, 0, 1}});       // Y^2 - XY + 1
const QPoly2 kJoukowskiCover = q2({{0, 4, 1}, {1, 2, -1}, {0, 0, 1}});  // Y^4 - XY^2 + 1
const QPoly2 kDescent = q2({{0, 2, 1}, {4, 0, -1}, {2, 0, 5}, {0, 0, -4}});
const QPoly2 kDescentCover = q2({{0, 4, 1}, {0, 2, 10}, {2, 2, -4}, {0, 0, 9}});

PlaceSet primes(std::initializer_list<long> ps) { return PlaceSet(ps); }

void check_all(const std::vector<BoundCheck>& cs) {
  for (auto& c : cs) CHECK_MESSAGE(c.holds(), c.name, ": ", (double)c.lhs.upper, " > ", (double)c.rhs);
}
}  // namespace

TEST_SUITE("badplaces") {
  TEST_CASE("resultant sets") {
    auto a = tsets_resultant(model(kSqrt));
    CHECK(a.T1 == primes({2}));
    CHECK(a.T2.empty());
    CHECK(a.T3 == primes({2}));
    CHECK(a.T4 == primes({2}));
    auto b = tsets_resultant(model(kNode));
    CHECK(b.T1 == primes({2}));
    CHECK(b.T2.empty());
    CHECK(b.T3 == primes({2}));
    CHECK(b.T4 == primes({2}));
    auto c = tsets_resultant(model(kJoukowski));
    CHECK(c.T1 == primes({2}));
    CHECK(c.T2.empty());
    CHECK(c.T3.empty());
    CHECK(c.T4 == primes({2}));
    for (auto* r : {&a, &b, &c}) {
      REQUIRE(r->checks.size() == 4);
      check_all(r->checks);
    }
    // T2 from a non-integral coefficient, T1 for n = 5
    auto d = tsets_resultant(model(q2({{0, 5, 1}, {1, 1, mpq_class(1, 6)}, {0, 0, 1}})));
    CHECK(d.T1 == primes({2, 3, 5}));
    CHECK(d.T2 == primes({2, 3}));
    check_all(d.checks);
  }

  TEST_CASE("Puiseux sets of the square root curve") {
    auto M = model(kSqrt);
    auto t = bad_place_table(M);
    CHECK(t.T[5].subset_of(primes({2})));
    CHECK(t.T[6].empty());
    CHECK(t.T[7].empty());
    CHECK_FALSE(t.exact[5]);
    CHECK(t.exact[6]);
    CHECK(t.exact[7]);
    CHECK(t.all == primes({2}));
    CHECK(std::fabs(t.all.height().mid() - std::log(2.0L)) < 1e-15L);
    REQUIRE(t.checks.size() == 8);
    CHECK(std::fabs(t.checks[7].rhs - 4990.659L) < 0.001L);
    check_all(t.checks);
    CHECK(t.all_hold());
  }

  TEST_CASE("Puiseux sets of the nodal curve") {
    auto t = bad_place_table(model(kNode));
    CHECK(t.T[5].subset_of(primes({2})));
    // Q(i) carries the coefficients at alpha = -1
    CHECK(t.T[6] == primes({2}));
    CHECK(t.T[7].empty());
    CHECK(t.all == primes({2}));
    CHECK(t.all_hold());
    CHECK(t.centers.size() == 2);
  }

  TEST_CASE("Puiseux sets of the Joukowski curve and its cover") {
    auto t = bad_place_table(model(kJoukowski));
    // at alpha = -2 the branch is (-2 + x +- 2i x^{1/2} (1 - x/4)^{1/2}) / 2
    CHECK(t.T[6] == primes({2}));
    CHECK(t.T[7].empty());
    CHECK(t.all_hold());
    auto tt = bad_place_table(model(kJoukowskiCover));
    CHECK(tt.T[1] == primes({2, 3}));
    CHECK(tt.all_hold());
    CHECK(tt.T5_witnessed.subset_of(tt.T[5]));
  }

  TEST_CASE("a non-integral Puiseux coefficient lies in T5") {
    // Y^2 = X + X^2 / 9: y = X^{1/2} (1 + X/18 + ...), 3 in the denominators
    auto t = bad_place_table(model(q2({{0, 2, 9}, {1, 0, -9}, {2, 0, -1}})));
    CHECK(t.T5_witnessed.contains(3));
    CHECK(t.T[5].contains(3));
    CHECK(t.all_hold());
  }

  TEST_CASE("essential coefficient numerators form T7") {
    // Y^2 = 9X: a(2) = 3 at alpha = 0
    auto t = bad_place_table(model(q2({{0, 2, 1}, {1, 0, -9}})));
    CHECK(t.T[7] == primes({3}));
    CHECK(t.all_hold());
  }

  TEST_CASE("tower set U") {
    auto J = model(kJoukowski), JC = model(kJoukowskiCover);
    auto t = u_set(J, JC);
    CHECK(t.Theta == 1);
    CHECK(t.U.empty());
    CHECK(t.check.holds());
    auto d = u_set(model(kDescent), model(kDescentCover));
    CHECK(d.U.empty());
    CHECK(d.Theta == 1);
    // f_0 = X - 3 and R~ a multiple of X (X - 3)(X - 5): R~2 = X^2 - 5X
    auto f = model(q2({{1, 2, 1}, {0, 2, -3}, {1, 0, -1}}));
    auto ft = model(q2({{0, 2, 1}, {3, 0, -1}, {2, 0, 8}, {1, 0, -15}}));
    auto u = u_set(f, ft);
    CHECK(u.R2 == QPoly{mpq_class(0), mpq_class(-5), mpq_class(1)});
    CHECK(u.R1.degree() == 1);
    // independent route: Theta = R~2(3) for the monic linear f_0
    CHECK(u.Theta == eval(u.R2, 3));
    CHECK(u.Theta == -6);
    CHECK(u.U == primes({2, 3}));
    CHECK(u.check.holds());
    // repeated f_0 root in R~
    auto ft2 = model(q2({{0, 2, 1}, {3, 0, -1}, {2, 0, 6}, {1, 0, -9}}));
    auto u2 = u_set(f, ft2);
    CHECK(u2.R2 == QPoly{mpq_class(0), mpq_class(1)});
    CHECK(u2.Theta == 3);
    CHECK(u2.U == primes({3}));
  }

  TEST_CASE("covering fixtures") {
    for (auto [a, b] : {std::pair{kJoukowski, kJoukowskiCover}, std::pair{kDescent, kDescentCover}}) {
      auto c = covering_bad_places(model(a), model(b));
      check_all(c.base.checks);
      check_all(c.cover.checks);
      CHECK(c.tower.check.holds());
      CHECK(c.union_check.holds());
      CHECK(c.all_hold());
      CHECK(c.base.all.subset_of(c.all));
      CHECK(c.cover.all.subset_of(c.all));
    }
  }

  TEST_CASE("proximity") {
    auto zero = CenterPoint::rational(0);
    CHECK(proximity_ell(4, zero, 2) == 2);
    CHECK(proximity_ell(3, zero, 3) == 1);
    CHECK(proximity_ell(18, zero, 3) == 2);
    CHECK(proximity_ell(mpq_class(50, 7), zero, 5) == 2);
    CHECK_THROWS_WITH(proximity_ell(3, zero, 2), "not close");
    // alpha = i: 2 - i has norm 5; 7 - i = -i(1 + i)(2 - i)^2 up to units
    auto gi = CenterPoint::algebraic(QPoly{mpq_class(1), mpq_class(0), mpq_class(1)});
    CHECK(proximity_ell(2, gi, 5) == 1);
    CHECK(proximity_ell(7, gi, 5) == 2);
    CHECK_THROWS_WITH(proximity_ell(1, gi, 3), "not close");
    // alpha = sqrt 2 at the ramified prime: 2 - sqrt 2 = sqrt 2 (sqrt 2 - 1)
    auto r2 = CenterPoint::algebraic(QPoly{mpq_class(-2), mpq_class(0), mpq_class(1)});
    CHECK(proximity_ell(2, r2, 2) == mpq_class(1, 2));
  }

  TEST_CASE("predicted ramification") {
    CHECK(predicted_ramification(2, 1) == 2);
    CHECK(predicted_ramification(2, 2) == 1);
    CHECK(predicted_ramification(6, 4) == 3);
    CHECK_THROWS(predicted_ramification(0, 1));
    CHECK_THROWS(predicted_ramification(2, 0));
    // sqrt 3 ramifies at 3; sqrt 18 = 3 sqrt 2 does not
    CHECK(NumberField::create(QPoly{mpq_class(-3), mpq_class(0), mpq_class(1)})->primes_above(3)[0].e ==
          predicted_ramification(2, proximity_ell(3, CenterPoint::rational(0), 3).get_num().get_si()));
    CHECK(NumberField::create(QPoly{mpq_class(-18), mpq_class(0), mpq_class(1)})->primes_above(3)[0].e ==
          predicted_ramification(2, proximity_ell(18, CenterPoint::rational(0), 3).get_num().get_si()));
  }

  TEST_CASE("ramification prediction on pure root covers (property)") {
    std::mt19937_64 rng(31);
    for (int e : {2, 3}) {
      // Y^e = X
      std::vector<std::tuple<int, int, mpq_class>> terms{{0, e, 1}, {1, 0, -1}};
      auto M = model(make_qpoly2(terms));
      auto t = bad_place_table(M);
      PlaceSet excluded = t.T[1].united(t.T[5]).united(t.T[6]).united(t.T[7]);
      std::vector<long> ps;
      for (long p : primes_up_to(60))
        if (!excluded.contains(p)) ps.push_back(p);
      REQUIRE(!ps.empty());
      CHECK_FALSE(excluded.contains(5));
      std::uniform_int_distribution<size_t> pick(0, ps.size() - 1);
      std::uniform_int_distribution<long> unit(1, 50), lexp(1, 4);
      int checked = 0;
      while (checked < 200) {
        long p = ps[pick(rng)], l = lexp(rng), a = unit(rng), b = unit(rng);
        if (a % p == 0 || b % p == 0) continue;
        mpq_class xi = mpq_class(ipow(p, l) * a, b) * (rng() % 2 ? 1 : -1);
        xi.canonicalize();
        mpq_class ell = proximity_ell(xi, CenterPoint::rational(0), p);
        REQUIRE(ell.get_den() == 1);
        CHECK(ell == l);
        long predicted = predicted_ramification(e, ell.get_num().get_si());
        // true ramification in every field K(P) above xi
        std::vector<mpq_class> c(e + 1);
        c[0] = -xi;
        c[e] = 1;
        for (auto& fac : factor_rational_poly(QPoly(c))) {
          FieldPtr K = NumberField::create(fac.poly);
          for (auto& P : K->primes_above(mpz_class(p)))
            CHECK_MESSAGE(P.e == predicted, "e=", e, " xi=", xi.get_str(), " p=", p);
        }
        ++checked;
      }
      CHECK(checked >= 200);
    }
  }

  TEST_CASE("random small models (property)") {
    std::mt19937_64 rng(19);
    std::uniform_int_distribution<long> coef(-20, 20);
    std::uniform_int_distribution<int> deg(1, 3);
    int tested = 0;
    for (int t = 0; tested < 30 && t < 800; ++t) {
      int m = deg(rng), n = 1 + deg(rng) % 3;
      if (n < 2) n = 2;
      std::vector<std::tuple<int, int, mpq_class>> terms;
      for (int i = 0; i <= m; ++i)
        for (int j = 0; j <= n; ++j)
          if (rng() % 2) terms.emplace_back(i, j, mpq_class(coef(rng)));
      terms.emplace_back(0, n, mpq_class(1 + static_cast<long>(rng() % 3)));
      terms.emplace_back(m, 0, mpq_class(1 + static_cast<long>(rng() % 5)));
      QPoly2 f = make_qpoly2(terms);
      if (f.degree() != n || deg_x(f) != m) continue;
      try {
        if (absolute_irreducibility(f).status != IrreducibilityStatus::certified) continue;
      } catch (const std::invalid_argument&) {
        continue;
      }
      PlaneCurveModel M = model(f);
      bool small = true;
      for (auto& c : M.centers()) small = small && c.minpoly.degree() <= 2;
      if (!small) continue;
      BadPlaceTable tb;
      try {
        tb = bad_place_table(M);
      } catch (const std::runtime_error& ex) {
        MESSAGE(to_string(f), " skipped: ", ex.what());
        continue;
      }
      check_all(tb.checks);
      CHECK_MESSAGE(tb.all_hold(), to_string(f));
      ++tested;
    }
    CHECK(tested >= 30);
  }
}
