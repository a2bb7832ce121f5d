#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "ratl2/laurent.hpp"

namespace ratl2 {

/**
 * Outer function with prescribed boundary modulus: o is zero-free in the
 * closed disk, |o| = |w| on the circle, and o(0) > 0.  Built by analytic
 * completion of log|w| through its Fourier coefficients on the sample grid.
 */
struct OuterFactor {
  CircleGrid boundary;               // o on the sample grid
  std::function<cplx(cplx)> eval;    // interior evaluator, |z| < 1
  double at_zero = 0.0;              // o(0) = exp(mean log |w|)
};

OuterFactor outer_factor(const CircleGrid& w_samples, const Tolerances& tol = default_tol());

/**
 * Singular values of the truncated Hankel matrix of a symbol given by its
 * negative-index Fourier coefficients (minus_coeffs[k-1] is the coefficient
 * of z^-k).  The truncation starts at max(8n, 128) and doubles until the top
 * n values are stable to 1e-6; instability at the largest affordable size
 * raises numerical_error.
 */
std::vector<double> hankel_singular_values(const std::vector<cplx>& minus_coeffs, int n);

/**
 * Winding-gated lower bound for the n-th Hankel approximation number:
 * if wn(s - g) <= 1 - 2n then inf over the circle of |s - g| bounds
 * sigma_{n-1} from below.  Returns nothing when the winding hypothesis
 * fails (that is not an error).  Identically zero difference returns 0.
 */
std::optional<double> dvp_lower_bound(const std::vector<cplx>& symbol_samples,
                                      const std::vector<cplx>& g_samples, int n,
                                      const Tolerances& tol = default_tol());

}  // namespace ratl2
