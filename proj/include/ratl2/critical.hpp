#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ratl2/hardy.hpp"
#include "ratl2/target.hpp"

namespace ratl2 {

/**
 * Residual data of the best approximation from V_q at fixed denominator q:
 * the numerator L of the projection, the outer-space remainder
 * u = (F q - L) / reciprocal(q), and the squared error computed two ways
 * (grid mean of |F - L/q|^2 and coefficient sum of |u_k|^2).  The remainder
 * must be free of nonnegative-index content; its residual there is reported.
 */
struct RemainderData {
  ComplexPoly numerator;       // L with F - L/q orthogonal to V_q
  LaurentTail u;               // remainder coefficients, u(z) = sum u_k z^-k
  double value_grid = 0.0;     // mean over the grid of |F - L/q|^2
  double value_coeff = 0.0;    // sum |u_k|^2 over the computed tail
  double analytic_defect = 0.0;  // nonnegative-index energy of u, as a norm
  double f_norm_sq = 0.0;        // mean of |F|^2 on the grid, the error scale
  double gram_cond = 0.0;
  int grid_m = 0;
};

RemainderData projection_remainder(const TargetFunction& F, const MonicPoly& q,
                                   const Tolerances& tol = default_tol());

/**
 * Remainder values on the unit circle through the contour representation
 * u(z) = mean_j F(t_j) q(t_j)/qt(t_j) * t_j/(z - t_j) over |t| = rho_contour.
 * Usable when zeros of q sit near or on the unit circle, where the grid
 * route degenerates; the numerator is computed by the contour projection.
 */
std::vector<cplx> remainder_on_circle_contour(const TargetFunction& F, const MonicPoly& q,
                                              double rho_contour, int contour_m,
                                              int circle_m);

/**
 * phi_n(q) = ||F - L_q/q||^2 as the coefficient sum, after checking
 * agreement of the two routes to 1e-8 relative (above the rounding floor)
 * and that the remainder has no nonnegative-index content.
 */
double error_functional(const TargetFunction& F, const MonicPoly& q,
                        const Tolerances& tol = default_tol());

// Wirtinger derivatives d phi / d q_k = -<z^k L/q^2, F - L/q>, k < deg q.
std::vector<cplx> error_gradient(const TargetFunction& F, const MonicPoly& q,
                                 const Tolerances& tol = default_tol());

/**
 * Second-order data at a critical denominator: the complex-symmetric block
 * A_{jk} = d^2 phi / dq_k dq_j and the Hermitian block
 * B_{jk} = d^2 phi / d conj(q_k) dq_j = <nu_j/q, nu_k/q>.  The associated
 * real quadratic form on coefficient perturbations v in C^n is
 * 2 Re( sum v_j v_k A_jk + sum v_j conj(v_k) B_jk ).
 */
struct HessianForm {
  Eigen::MatrixXcd sym;   // A, symmetrized
  Eigen::MatrixXcd herm;  // B, positive semidefinite at critical points

  Eigen::MatrixXd as_real() const;          // 2n x 2n form in (Re q, Im q)
  double quadratic(const std::vector<cplx>& v) const;
};

HessianForm error_hessian(const TargetFunction& F, const MonicPoly& q,
                          const Tolerances& tol = default_tol());

// Number of negative eigenvalues of the real form; |eigenvalue| <= 1e-9
// signals a degenerate critical point and raises numerical_error.
int morse_index(const HessianForm& h);

// Number of zeros of q matched (within tau_gcd) by zeros of L: the degree of
// an approximate common factor.  Zero means L/q is in lowest terms.
int common_factor_degree(const ComplexPoly& L, const MonicPoly& q,
                         const Tolerances& tol = default_tol());

/**
 * One located critical point of the degree-n error functional.  Coefficient
 * lists are ascending and include the leading 1 of q.
 */
struct CriticalPointRecord {
  int degree = 0;
  std::vector<cplx> q_coeffs;
  std::vector<cplx> L_coeffs;
  double value = 0.0;
  double grad_norm = 0.0;
  std::vector<double> hessian_eigs;
  int morse_index = 0;
  bool irreducible = false;
  std::vector<cplx> poles;  // zeros of q, sorted by real then imaginary part
  int iterations = 0;
  std::vector<std::string> flags;

  MonicPoly denominator() const;
  ComplexPoly numerator() const;
};

struct IterateLog {
  double value_grid = 0.0;
  double value_coeff = 0.0;
  double displacement = 0.0;  // max root movement in the step
};

/**
 * Critical-point search from a set of starting zeros: interpolation-driven
 * fixed point (denominator of the multipoint Pade approximant at the
 * reflections 1/conj(zero)) until root movement falls under
 * fixed_point_switch, then Newton on the real gradient with backtracking.
 * Escaped zeros are reflected back into the disk (flagged).  Flags record
 * nonconvergence, boundary-attracted zeros, and reducibility.
 */
CriticalPointRecord solve_critical(const TargetFunction& F, int degree,
                                   const std::vector<cplx>& start_zeros,
                                   const Tolerances& tol = default_tol(),
                                   std::vector<IterateLog>* iterates = nullptr);

// Deterministic start configurations: zeros sampled on Joukowski images of
// circles around the segment [a,b], staying inside the unit disk.
std::vector<cplx> starting_zeros(double a, double b, int degree, std::uint64_t seed);

// splitmix64 step, the seed chain used everywhere randomness is needed.
std::uint64_t split_mix(std::uint64_t& state);

}  // namespace ratl2
