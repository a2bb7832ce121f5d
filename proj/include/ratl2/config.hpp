#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace ratl2 {

using cplx = std::complex<double>;

inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr cplx iu{0.0, 1.0};

/**
 * Central numeric tolerances. Every module reads these defaults; the CLI can
 * override them per run. Values are absolute unless noted.
 */
struct Tolerances {
  double tau_zero = 1e-13;    // below this (times scale) a coefficient is zero
  double tau_margin = 1e-8;   // minimal distance to excluded sets ([a,b], T, poles)
  double tau_series = 1e-9;   // truncation / analyticity-leak threshold
  double tau_gcd = 1e-8;      // root clustering radius for common factors
  double tol_crit = 1e-10;    // gradient norm at an accepted critical point
  int max_iterations = 200;   // solver cap (fixed-point + Newton combined)
  double fixed_point_switch = 1e-4;  // root displacement that hands over to Newton
};

inline const Tolerances& default_tol() {
  static const Tolerances t{};
  return t;
}

// Ascending-power coefficient tail length used for series representations.
inline int tail_length(int degree) { return degree * 16 > 256 ? degree * 16 : 256; }

// Thrown when a sampling grid is provably too coarse for the request
// (phase jumps too large, unstable refinement, flatness checks failing).
class resolution_error : public std::runtime_error {
 public:
  explicit resolution_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when an internal cross-check fails (analyticity leakage, identity
// discrepancies beyond tolerance); signals a numerically meaningless result.
class numerical_error : public std::runtime_error {
 public:
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ratl2
