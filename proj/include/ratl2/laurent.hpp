#pragma once

#include <functional>
#include <vector>

#include "ratl2/complex_poly.hpp"
#include "ratl2/config.hpp"

namespace ratl2 {

/**
 * Truncated expansion of a function holomorphic outside a disk of radius
 * rho < 1 and vanishing at infinity:
 *   f(z) = sum_{k>=1} a[k-1] z^{-k},  |z| > rho.
 * An optional exact evaluator can be attached for callers that need values
 * beyond the truncation accuracy.
 */
struct LaurentTail {
  std::vector<cplx> a;   // a[k-1] multiplies z^{-(k)}
  double rho = 0.0;      // radius of holomorphy (singularities inside |z| <= rho)
  std::function<cplx(cplx)> exact;  // optional

  int length() const { return static_cast<int>(a.size()); }
  cplx coeff(int k) const {  // coefficient of z^{-k}, k >= 1
    return (k >= 1 && k <= length()) ? a[k - 1] : cplx{0.0};
  }
  cplx eval(cplx z) const;  // truncated sum (or exact() if attached)
  double norm_sq() const;   // sum |a_k|^2
};

/**
 * Uniform sampling of the unit circle: node(j) = exp(2*pi*i*j/m), m a power
 * of two.  values[j] holds a function sample at node(j).
 */
struct CircleGrid {
  int m = 0;
  std::vector<cplx> values;

  static bool power_of_two(int m) { return m > 0 && (m & (m - 1)) == 0; }
  static cplx node(int j, int m) {
    double t = 2.0 * pi * static_cast<double>(j) / static_cast<double>(m);
    return {std::cos(t), std::sin(t)};
  }
  static CircleGrid sample(int m, const std::function<cplx(cplx)>& f);
};

/**
 * Discrete Fourier coefficients of grid samples: returns c where
 * c[k] = (1/m) sum_j values[j] exp(-2*pi*i*j*k/m), k = 0..m-1.
 * Frequency -k lives at index m-k.
 */
std::vector<cplx> circle_fft(const CircleGrid& g);

// Inverse: samples from coefficient array laid out as above.
CircleGrid circle_ifft(const std::vector<cplx>& coeff);

// Strictly negative-frequency part of the samples as a tail a_k = c[m-k],
// truncated to n_terms.  If nonneg_energy is given it receives
// sum_{k>=0} |c_k|^2, the energy a pure tail cannot carry.
LaurentTail negative_part(const CircleGrid& g, int n_terms, double* nonneg_energy = nullptr);

}  // namespace ratl2
