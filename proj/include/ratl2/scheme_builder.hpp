#pragma once

#include <vector>

#include "ratl2/critical.hpp"
#include "ratl2/pade.hpp"

namespace ratl2 {

/**
 * Real signed measure on [a,b] written against the arcsine distribution,
 * used as the mass source for the comparison-scheme construction.  An empty
 * value list means exactly twice the arcsine distribution (total mass 2,
 * closed-form cell masses); otherwise values sample the density at the
 * angular-midpoint nodes for their count and cells integrate node-wise.
 */
struct SignedMeasureSamples {
  double a = 0.0, b = 0.0;
  std::vector<double> values;

  static SignedMeasureSamples two_omega(double a, double b);
  static SignedMeasureSamples from_samples(double a, double b, std::vector<double> values);

  double mass(double lo, double hi) const;  // measure of [lo, hi]
  double total() const { return mass(a, b); }
  double variation() const;                 // total-variation norm
};

/**
 * Lower-degree interpolation set built from a degree-n critical point: the
 * chain of zeros with real parts inside (a,b) is replaced by n-1 auxiliary
 * points obtained from cumulative masses of nu over half-point cells, the
 * remaining zeros (rational-pole-attracted ones and strays) kept as they
 * are; everything is then reflected across the unit circle.  Output has
 * exactly n-1 nodes.
 */
InterpolationSet build_comparison_scheme(const SignedMeasureSamples& nu,
                                         const CriticalPointRecord& record,
                                         const std::vector<cplx>& rational_poles = {},
                                         const Tolerances& tol = default_tol());

}  // namespace ratl2
