#pragma once

#include <optional>
#include <vector>

#include "rsdkit/rational.hpp"

namespace rsdkit {

using IntMatrix = std::vector<std::vector<Int>>;

// Exact determinant via Bareiss fraction-free elimination: every division is
// by a previous pivot and exact, so intermediates stay integers (bounded by
// minors of the input). First nonzero pivot, row swaps flip the sign.
Int determinant(IntMatrix m);

struct DeterminantCheck {
    Int value;
    bool nonzero = false;
};

DeterminantCheck det_nonzero(const IntMatrix& m);

// Gaussian elimination over exact rationals with first-nonzero pivoting.
// Empty optional when the matrix is singular.
std::optional<std::vector<Rational>> solve_linear_system(const IntMatrix& a,
                                                         const std::vector<Rational>& b);

}  // namespace rsdkit
