#pragma once

#include <functional>
#include <vector>

#include "ratl2/critical.hpp"
#include "ratl2/green.hpp"
#include "ratl2/pade.hpp"

namespace ratl2 {

/**
 * Outcome of the comparison test at one critical point: the minimum over the
 * circle of |1 - (F - Pi)/(F - L/q)| and the winding number of F - Pi.  The
 * test passes when the minimum exceeds 2 and the winding equals 1 - 2n; a
 * failed test only disqualifies this candidate Pi, never the point itself.
 */
struct CriterionReport {
  int n = 0;
  double min_ratio = 0.0;
  int winding = 0;
  bool passed = false;
  int grid = 0;  // grid size at which the winding stabilized
};

CriterionReport check_comparison_criterion(const TargetFunction& F,
                                           const CriticalPointRecord& record,
                                           const std::function<cplx(cplx)>& Pi,
                                           int grid_size = 4096,
                                           const Tolerances& tol = default_tol());

struct AsymptoticsRow {
  int n = 0;
  double sup_error = 0.0;        // sup over the contour of |(F - Pi_n) w|
  double predicted = 0.0;        // sup of |2 G (D R_n / R)^2|
  double ratio_deviation = 0.0;  // sup of |actual / pointwise predicted - 1|
};

struct AsymptoticsReport {
  std::vector<AsymptoticsRow> rows;  // ascending in n
};

// Uniformly sampled test contour |z| = radius.
std::vector<cplx> circle_contour(double radius = 2.0, int points = 512);

/**
 * Compares the interpolant error (F - Pi_n) w against the outer-model
 * prediction 2 G (D R_n / R)^2 on a contour, where G and D are the geometric
 * mean and the Szego function of the measure's density, R_n the Blaschke
 * product over the nodes and R the one over the poles of the rational part.
 * The scheme overload builds the Pade interpolant of each set; the record
 * overload takes L/q with nodes at the reflected zeros.  An empty contour
 * means circle_contour().
 */
AsymptoticsReport verify_strong_asymptotics(const TargetFunction& F,
                                            const InterpolationScheme& scheme,
                                            const std::vector<cplx>& contour = {},
                                            const Tolerances& tol = default_tol());

AsymptoticsReport verify_strong_asymptotics(const TargetFunction& F,
                                            const std::vector<CriticalPointRecord>& records,
                                            const std::vector<cplx>& contour = {},
                                            const Tolerances& tol = default_tol());

struct PoleDiagnosticsRow {
  int n = 0;
  double sum_abs_im = 0.0;
  double max_abs_im = 0.0;
  double ks_distance = 0.0;       // empirical CDF of Re roots vs Green equilibrium
  std::vector<double> re_roots;   // sorted real parts
};

struct PoleDiagnostics {
  std::vector<PoleDiagnosticsRow> rows;  // ascending in degree
};

// Imaginary-part budget of the zeros and clustering of their real parts
// toward the Green equilibrium distribution of [a,b]; requires records of at
// least three distinct degrees.
PoleDiagnostics pole_diagnostics(const std::vector<CriticalPointRecord>& records,
                                 double a, double b);

}  // namespace ratl2
