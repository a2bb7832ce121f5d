#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "ratl2/config.hpp"
#include "ratl2/laurent.hpp"

namespace ratl2 {

// Distance from z to the real segment [a,b].
double segment_distance(cplx z, double a, double b);

/**
 * Continuous argument along a sample sequence: arg(s_0) plus accumulated
 * principal phase increments.  An increment at pi (sign ambiguity) raises
 * resolution_error.
 */
std::vector<double> unwrap_arguments(const std::vector<cplx>& samples);
double total_argument_variation(const std::vector<cplx>& samples);

/**
 * Absolutely continuous complex measure on [a,b] in (-1,1), written against
 * the arcsine (equilibrium) distribution of the segment: d mu = density * d w.
 * Integrals against d w use the midpoint rule in the angular variable, which
 * is the Gauss quadrature of the arcsine weight; nodes for a given count are
 * cached.  The density must not vanish on the segment and is expected to be
 * smooth (Dini smoothness is the caller's responsibility, not checked here).
 */
class MeasureM {
 public:
  MeasureM(double a, double b, std::function<cplx(double)> density);
  // Samples at the angular-midpoint nodes for their count define a Chebyshev
  // interpolant which then serves as the density.
  static MeasureM from_samples(double a, double b, const std::vector<cplx>& values);

  double a() const { return a_; }
  double b() const { return b_; }
  double midpoint() const { return 0.5 * (a_ + b_); }
  double half_length() const { return 0.5 * (b_ - a_); }

  cplx density(double t) const { return density_(t); }
  const std::vector<double>& nodes(int k) const;
  const std::vector<cplx>& density_at_nodes(int k) const;

  // (1/k) sum_j g(t_j): the d w integral of a pointwise integrand.
  cplx integrate(int k, const std::function<cplx(double)>& g) const;

  double min_density_modulus(int k = 1024) const;
  double argument_variation(int k = 1024) const;

 private:
  struct Cache {
    std::mutex mutex;
    std::map<int, std::vector<double>> nodes;
    std::map<int, std::vector<cplx>> values;
  };

  double a_, b_;
  std::function<cplx(double)> density_;
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();  // shared across copies
};

/** Finite sum of polar parts sum_l coeffs[l-1]/(z - pole)^l per pole. */
struct PolePart {
  cplx pole;
  int mult = 1;
  std::vector<cplx> coeffs;  // length mult, coeffs[l-1] multiplies (z-pole)^{-l}
};

struct RationalPart {
  std::vector<PolePart> parts;

  bool empty() const { return parts.empty(); }
  int degree() const;
  cplx eval(cplx z) const;
  cplx eval_deriv(cplx z, int order) const;
  double max_interior_modulus() const;   // sup |pole| over poles in the unit disk
  bool has_exterior_pole() const;        // any pole with |pole| >= 1
  double min_distance(cplx z) const;
};

/**
 * The approximation target: Cauchy transform of the measure plus a rational
 * part holomorphic at infinity.  Evaluation doubles the quadrature until two
 * consecutive counts agree to 1e-11 (relative).
 */
class TargetFunction {
 public:
  TargetFunction() = default;
  TargetFunction(std::optional<MeasureM> measure, RationalPart rational,
                 Tolerances tol = default_tol());

  const std::optional<MeasureM>& measure() const { return measure_; }
  const RationalPart& rational() const { return rational_; }
  const Tolerances& tol() const { return tol_; }

  cplx eval(cplx z) const;
  cplx eval_deriv(cplx z, int order) const;
  std::function<cplx(cplx)> evaluator() const;

  // Coefficients m_0..m_kmax of the expansion sum m_k z^{-k-1} at infinity.
  std::vector<cplx> moments(int k_max) const;

  // Expansion of the part holomorphic outside rho() and vanishing at
  // infinity (the full function when no pole lies outside the closed disk).
  LaurentTail tail(int n_terms) const;
  double rho() const;  // radius enclosing [a,b] and all interior poles

  bool interior_rational_only() const { return !rational_.has_exterior_pole(); }
  double distance_to_singularities(cplx z) const;

  // Values on the unit-circle grid of size m (power of two), cached and
  // shared across copies; the solver hits the same grids every iterate.
  const std::vector<cplx>& circle_samples(int m) const;

 private:
  struct SampleCache {
    std::mutex mutex;
    std::map<int, std::vector<cplx>> grids;
  };

  void check_distance(cplx z, int order_hint) const;
  cplx eval_measure(cplx z, int order) const;

  std::optional<MeasureM> measure_;
  RationalPart rational_;
  Tolerances tol_;
  std::shared_ptr<SampleCache> samples_ = std::make_shared<SampleCache>();
};

}  // namespace ratl2
