#include "cheval/fixtures.hpp"

namespace cheval::fixtures {

QPoly2 square_root() { return make_qpoly2({{0, 2, 1}, {1, 0, -1}}); }
QPoly2 node() { return make_qpoly2({{0, 2, 1}, {1, 0, -1}, {2, 0, -1}}); }
QPoly2 joukowski() { return make_qpoly2({{0, 2, 1}, {1, 1, -1}, {0, 0, 1}}); }
QPoly2 joukowski_cover() { return make_qpoly2({{0, 4, 1}, {1, 2, -1}, {0, 0, 1}}); }
QPoly2 descent() { return make_qpoly2({{0, 2, 1}, {4, 0, -1}, {2, 0, 5}, {0, 0, -4}}); }
QPoly2 descent_cover() { return make_qpoly2({{0, 4, 1}, {0, 2, 10}, {2, 2, -4}, {0, 0, 9}}); }

CoveringSpec joukowski_covering() {
  CoveringSpec s;
  s.f = joukowski();
  s.ft = joukowski_cover();
  s.Phi = make_qpoly2({{0, 2, 1}});
  s.D = QPoly(1);
  s.mode = CoveringMode::affine;
  s.S.insert_infinite();
  return s;
}

CoveringSpec descent_covering() {
  CoveringSpec s;
  s.f = descent();
  s.ft = descent_cover();
  s.Phi = make_qpoly2({{0, 2, 1}, {2, 0, -2}, {0, 0, 5}});
  s.D = QPoly(2);
  s.mode = CoveringMode::projective;
  return s;
}

}  // namespace cheval::fixtures
