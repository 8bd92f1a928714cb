#pragma once

#include "cheval/verify.hpp"

namespace cheval::fixtures {

// Y^2 - X, Y^2 - X(X+1), Y^2 - XY + 1, Y~^4 - XY~^2 + 1, Y~^4 + (10 - 4X^2)Y~^2 + 9,
// and the genus-one base Y^2 - (X^2 - 1)(X^2 - 4).
QPoly2 square_root();
QPoly2 node();
QPoly2 joukowski();
QPoly2 joukowski_cover();
QPoly2 descent();
QPoly2 descent_cover();

// x = t + 1/t with y = t and y~ = sqrt(t): affine, S = {infinity}.
CoveringSpec joukowski_covering();
// Multiplication-by-two style covering of Y^2 = (X^2 - 1)(X^2 - 4) with
// y = (Y~^2 - 2X^2 + 5) / 2: unramified, projective.
CoveringSpec descent_covering();

}  // namespace cheval::fixtures
