#pragma once

#include "ratl2/config.hpp"

namespace ratl2 {

// One-sided limits on the cut [a,b]: Plus approaches from the upper half
// plane, Minus from the lower.  None means z is taken off the cut.
enum class Side { None, Plus, Minus };

/**
 * w(z) = sqrt((z-a)(z-b)) branched so that w is holomorphic off [a,b] and
 * w(z)/z -> 1 at infinity.  With a side flag, returns the one-sided limit
 * +-i sqrt((x-a)(b-x)) for x in [a,b].
 */
cplx sqrt_branch(cplx z, double a, double b, Side side = Side::None);

/**
 * Conformal map of the complement of [a,b] onto the unit disk with
 * phi(inf) = 0: phi(z) = (2/(b-a)) (z - (a+b)/2 - w(z)).  Inverse relation
 * z = (a+b)/2 + ((b-a)/4)(phi + 1/phi).  |phi| = 1 on the cut.
 */
cplx disk_coordinate(cplx z, double a, double b, Side side = Side::None);

// The inverse of disk_coordinate: maps 0 < |u| <= 1 back to the complement.
cplx from_disk_coordinate(cplx u, double a, double b);

}  // namespace ratl2
