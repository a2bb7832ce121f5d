#pragma once

#include <map>
#include <memory>
#include <mutex>

#include "ratl2/conformal.hpp"
#include "ratl2/target.hpp"

namespace ratl2 {

/**
 * Multiplicative normalization of a non-vanishing density h on [a,b]: the
 * geometric mean G = exp(int log h dw) and the outer-type function
 *   D(z) = exp( w(z)/2 * int log h(t)/(z-t) dw(t) - 1/2 * int log h dw ),
 * holomorphic and zero-free off the cut, D(inf) = 1, with boundary values
 * satisfying h = G * D_plus * D_minus on (a,b).  All integrals share one
 * continuously unwrapped branch of log h along the segment.
 */
class SzegoData {
 public:
  explicit SzegoData(const MeasureM& h, int k_start = 256);

  double a() const { return h_.a(); }
  double b() const { return h_.b(); }
  int quadrature_size() const { return k_; }

  cplx log_mean() const { return i0_; }              // int log h dw, unwrapped
  cplx geometric_mean() const { return std::exp(i0_); }

  cplx eval(cplx z) const;                            // D(z), z off the cut
  cplx boundary(double x, Side side) const;           // one-sided limit on (a,b)

  // |h(x) - G * D_plus(x) * D_minus(x)| at a probe point (consistency).
  double factorization_residual(double x) const;

 private:
  struct Level {
    std::vector<cplx> logs;  // unwrapped log h at the k nodes
  };
  const Level& level(int k) const;
  cplx unwrapped_log_at(double x) const;
  cplx cauchy_integral(cplx z, int k) const;

  MeasureM h_;
  int k_;
  cplx i0_;
  mutable std::mutex mutex_;
  mutable std::map<int, Level> levels_;
};

// Convenience wrapper matching the common use: geometric mean of a density.
cplx geometric_mean(const MeasureM& h);

}  // namespace ratl2
