#pragma once

#include <functional>
#include <string>

#include "ratl2/complex_poly.hpp"
#include "ratl2/conformal.hpp"
#include "ratl2/target.hpp"

namespace ratl2 {

/**
 * Interpolation nodes for one approximation order: finite points (each taken
 * with multiplicity two by the interpolation conditions) plus a count of
 * nodes at infinity.  Total cardinality is points.size() + at_infinity.
 */
struct InterpolationSet {
  std::vector<cplx> points;
  int at_infinity = 0;

  int size() const { return static_cast<int>(points.size()) + at_infinity; }
  static InterpolationSet all_at_infinity(int n) { return {{}, n}; }
};

struct InterpolationScheme {
  std::vector<InterpolationSet> sets;
  std::string provenance;
};

/**
 * Rational interpolant of type (n-1, n): denominator of degree n, numerator
 * of degree < n, matching the target with multiplicity two at every finite
 * node, 2*at_infinity + 1 coefficients at infinity, solved as the null space
 * of the linearized conditions (smallest singular vector).
 */
struct PadeApproximant {
  ComplexPoly numerator;
  ComplexPoly denominator;       // monic of degree n in the regular case
  InterpolationSet nodes;
  bool full_degree = false;      // denominator reached degree n and was re-monicized
  bool degenerate = false;       // null space dimension > 1 within tolerance
  bool reduced = false;          // a common root was removed
  double smallest_singular = 0.0;
  double second_singular = 0.0;

  int order() const { return nodes.size(); }
  cplx eval(cplx z) const { return numerator.eval(z) / denominator.eval(z); }
};

PadeApproximant build_pade(const TargetFunction& F, const InterpolationSet& E,
                           const Tolerances& tol = default_tol());

/**
 * Pointwise error F - numerator/denominator evaluated through the
 * residue/jump representation of the interpolation conditions: a Cauchy-type
 * integral of l^2 d mu / v^2 plus residues of l^2 r / v^2 at the poles of the
 * rational part, divided by l^2(z) and multiplied by v^2(z).  Every factor is
 * benign, so errors far below the subtraction floor are computed to full
 * relative accuracy.  Valid for z bounded away from the cut and the poles.
 */
std::function<cplx(cplx)> pade_error_evaluator(const TargetFunction& F,
                                               const PadeApproximant& P);

/**
 * Product of disk-coordinate Blaschke factors over the nodes of E, with each
 * node at infinity contributing a plain factor phi(z).  Conjugate-symmetric
 * node sets give |R| < 1 wherever |phi| < 1.
 */
cplx blaschke_product(const InterpolationSet& E, cplx z, double a, double b,
                      Side side = Side::None);

/** Diagnostics for a scheme: conjugate-symmetry defect, clearance, drift. */
struct AdmissibilityRow {
  int n = 0;
  double symmetry_sum = 0.0;       // sum |phi(e) - phi(conj(e))|
  double min_distance = 0.0;       // node clearance from the cut and the poles
  double transport_to_next = -1.0; // sliced transport distance to the next set
};

std::vector<AdmissibilityRow> admissibility_report(const InterpolationScheme& scheme,
                                                   const TargetFunction& F);

// Derivatives f^(0..max_order)(center) of an analytic f via a small Cauchy
// circle of the given radius (trapezoid, exact for analytic integrands).
std::vector<cplx> analytic_derivatives(const std::function<cplx(cplx)>& f, cplx center,
                                       double radius, int max_order, int grid = 64);

}  // namespace ratl2
