#pragma once

#include <functional>

#include "ratl2/complex_poly.hpp"
#include "ratl2/laurent.hpp"

namespace ratl2 {

/**
 * L2(T) scalar product with normalized arclength, conjugate-linear in the
 * second slot.  The tail overload pairs coefficients directly; the grid
 * overload is the trapezoid mean over matching grids.
 */
cplx inner_product(const LaurentTail& f, const LaurentTail& g);
cplx inner_product(const CircleGrid& f, const CircleGrid& g);

/**
 * Isometric involution f -> (1/z) * conj(f(1/conj(z))) exchanging the Hardy
 * space of the disk with that of its exterior.  A tail sum a_k z^{-k} maps to
 * the power series sum conj(a_k) z^{k-1}; a polynomial (power-series
 * truncation) maps back to a tail.  Applying the map twice is the identity.
 */
ComplexPoly involution_to_disk(const LaurentTail& f);
LaurentTail involution_to_exterior(const ComplexPoly& g);

/**
 * Orthogonal projection onto V_q = { p/q : deg p < deg q } for a monic q with
 * all zeros in the open unit disk, by the normal equations in the basis
 * z^k/q.  Inner products are trapezoid sums on a circle grid sized from the
 * zero locations.
 */
struct ProjectionResult {
  ComplexPoly numerator;   // the p with <f - p/q, z^k/q> = 0 for all k < n
  double gram_cond = 0.0;  // rough condition estimate of the normal equations
  bool ill_conditioned = false;
};

ProjectionResult project_onto_vq(const std::function<cplx(cplx)>& f, const MonicPoly& q,
                                 int grid_m = 0, const Tolerances& tol = default_tol());

// Same computation from precomputed samples of f on the circle grid of size
// f_samples.size() (a power of two, large enough for the zeros of q).
ProjectionResult project_onto_vq(const std::vector<cplx>& f_samples, const MonicPoly& q,
                                 const Tolerances& tol = default_tol());

// Smallest power-of-two grid on which integrands with poles at the reflected
// zeros of q (dominant modulus rho < 1) alias below 1e-14.
int grid_size_for(double rho, int degree);

/**
 * Same projection through the contour representation: coefficients of the
 * numerator are integrals over a circle |t| = rho_contour that separates the
 * singularities of f from the reflected zeros of q.  Valid even when zeros of
 * q approach or touch the unit circle, where the Gram route degenerates.
 */
ComplexPoly project_onto_vq_contour(const std::function<cplx(cplx)>& f, const MonicPoly& q,
                                    double rho_contour, int grid_m = 4096);

/**
 * Winding number of a closed sample loop around 0, as phase increments summed
 * over the grid.  Throws resolution_error when an increment reaches pi/2
 * (grid too coarse) and numerical_error when a sample is within tau_zero of 0.
 */
int winding_number(const std::vector<cplx>& samples, const Tolerances& tol = default_tol());

// Doubles the grid until two consecutive winding evaluations agree.
int winding_number_adaptive(const std::function<cplx(cplx)>& f, int m_start = 4096,
                            int m_max = 1 << 20, const Tolerances& tol = default_tol());

}  // namespace ratl2
