#pragma once

#include <gmpxx.h>

#include <array>
#include <vector>

#include "cheval/cw_bounds.hpp"
#include "cheval/eliminate.hpp"
#include "cheval/heights.hpp"
#include "cheval/puiseux.hpp"

namespace cheval {

// T1..T4 from the model and its Y-resultant.
struct ResultantSets {
  PlaceSet T1, T2, T3, T4;
  std::vector<BoundCheck> checks;  // one per set
};
ResultantSets tsets_resultant(const PlaneCurveModel& M);

// T5..T7 from the Puiseux data at one center of every conjugacy class.
// T5 is the certified superset {A_v > 1 or B_v > 1}; T6 and T7 are exact.
struct PuiseuxSets {
  PlaceSet T5, T6, T7;
  bool T5_superset = true;
  // primes where a computed coefficient is not integral; always inside T5
  PlaceSet T5_witnessed;
  std::vector<BoundCheck> checks;
};
PuiseuxSets tsets_puiseux(const PlaneCurveModel& M, const std::vector<CenterAnalysis>& centers);
std::vector<CenterAnalysis> analyze_centers(const PlaneCurveModel& M);

struct BadPlaceTable {
  std::array<PlaceSet, 8> T;  // T[1] .. T[7]; T[0] unused
  std::array<bool, 8> exact{};
  PlaceSet all;               // union of T[1..7]
  std::vector<BoundCheck> checks;  // seven set estimates, then the union estimate
  std::vector<CenterAnalysis> centers;
  PlaceSet T5_witnessed;
  bool all_hold() const;
};
BadPlaceTable bad_place_table(const PlaneCurveModel& M);

// R~ = R~1 R~2 with the roots of R~1 among those of f_0 and R~2 monic and
// coprime to f_0; Theta = Res(f_0, R~2) and U = {p : |Theta|_p < 1}.
struct TowerSet {
  QPoly R1, R2;
  mpq_class Theta;
  PlaceSet U;
  BoundCheck check;  // h(U) <= Upsilon + Xi
};
TowerSet u_set(const PlaneCurveModel& f, const PlaneCurveModel& ft);

struct CoveringBadPlaces {
  BadPlaceTable base, cover;
  TowerSet tower;
  MainQuantities q;
  PlaceSet all;      // T u T~ u U
  BoundCheck union_check;  // h(T u T~ u U) <= Omega + Omega~ + Upsilon
  bool all_hold() const;
};
CoveringBadPlaces covering_bad_places(const PlaneCurveModel& f, const PlaneCurveModel& ft);

// log|xi - alpha|_P / log|p| at the primes P above p where xi - alpha is
// small.  Throws invalid_argument("not close") when there is none, and when
// two such primes disagree.
mpq_class proximity_ell(const mpq_class& xi, const CenterPoint& alpha, const mpz_class& p);

// e / gcd(e, ell), both positive.
long predicted_ramification(long e, long ell);

}  // namespace cheval
