#include "ratl2/hankel.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "ratl2/hardy.hpp"

namespace ratl2 {

OuterFactor outer_factor(const CircleGrid& w_samples, const Tolerances& tol) {
  int m = w_samples.m;
  if (!CircleGrid::power_of_two(m) || m < 8)
    throw std::invalid_argument("outer_factor: need a power-of-two sample grid");
  double wmin = std::numeric_limits<double>::infinity();
  for (cplx v : w_samples.values) wmin = std::min(wmin, std::abs(v));
  if (wmin <= tol.tau_zero)
    throw std::domain_error("outer_factor: boundary modulus vanishes on the grid");

  CircleGrid lw;
  lw.m = m;
  lw.values.resize(static_cast<size_t>(m));
  for (int j = 0; j < m; ++j)
    lw.values[static_cast<size_t>(j)] = std::log(std::abs(w_samples.values[static_cast<size_t>(j)]));
  std::vector<cplx> c = circle_fft(lw);

  // Analytic completion: keep the mean, double the positive frequencies.
  // log|w| real makes c[m-k] = conj(c[k]), so this is log o with Re = log|w|.
  std::vector<cplx> d(static_cast<size_t>(m), cplx{0.0});
  d[0] = c[0];
  for (int k = 1; k < m / 2; ++k) d[static_cast<size_t>(k)] = 2.0 * c[static_cast<size_t>(k)];
  d[static_cast<size_t>(m / 2)] = c[static_cast<size_t>(m / 2)];

  OuterFactor out;
  CircleGrid lo = circle_ifft(d);
  out.boundary.m = m;
  out.boundary.values.resize(static_cast<size_t>(m));
  for (int j = 0; j < m; ++j)
    out.boundary.values[static_cast<size_t>(j)] = std::exp(lo.values[static_cast<size_t>(j)]);
  out.at_zero = std::exp(std::real(c[0]));
  out.eval = [d](cplx z) {
    if (std::abs(z) >= 1.0)
      throw std::domain_error("outer_factor: evaluator is for the open disk");
    cplx s{0.0}, zp{1.0};
    for (size_t k = 0; k < d.size() / 2 + 1; ++k) {
      s += d[k] * zp;
      zp *= z;
    }
    return std::exp(s);
  };
  return out;
}

std::vector<double> hankel_singular_values(const std::vector<cplx>& minus_coeffs, int n) {
  if (n < 1) throw std::invalid_argument("hankel_singular_values: n must be >= 1");
  if (minus_coeffs.empty())
    throw std::invalid_argument("hankel_singular_values: empty coefficient list");
  int have = static_cast<int>(minus_coeffs.size());
  int N = std::max(8 * n, 128);

  auto top_values = [&](int size) {
    Eigen::MatrixXcd H(size, size);
    for (int j = 0; j < size; ++j)
      for (int k = 0; k < size; ++k) {
        int idx = j + k;  // coefficient of z^-(j+k+1)
        H(j, k) = idx < have ? minus_coeffs[static_cast<size_t>(idx)] : cplx{0.0};
      }
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(H);
    return std::vector<double>(svd.singularValues().data(),
                               svd.singularValues().data() + size);
  };

  std::vector<double> prev = top_values(N);
  while (true) {
    int N2 = 2 * N;
    std::vector<double> cur = top_values(N2);
    double scale = std::max(1.0, cur[0]);
    double diff = 0.0;
    for (int i = 0; i < n; ++i) diff = std::max(diff, std::abs(cur[static_cast<size_t>(i)] - prev[static_cast<size_t>(i)]));
    if (diff <= 1e-6 * scale) return cur;
    // past the supplied coefficients growth only appends zeros, so apparent
    // stability from here on would be vacuous
    if (N >= have)
      throw numerical_error("hankel_singular_values: values not stable at the largest truncation");
    prev = std::move(cur);
    N = N2;
  }
}

std::optional<double> dvp_lower_bound(const std::vector<cplx>& symbol_samples,
                                      const std::vector<cplx>& g_samples, int n,
                                      const Tolerances& tol) {
  if (symbol_samples.size() != g_samples.size() || symbol_samples.empty())
    throw std::invalid_argument("dvp_lower_bound: sample grids must match");
  std::vector<cplx> diff(symbol_samples.size());
  double dmax = 0.0, dmin = std::numeric_limits<double>::infinity();
  for (size_t j = 0; j < diff.size(); ++j) {
    diff[j] = symbol_samples[j] - g_samples[j];
    double a = std::abs(diff[j]);
    dmax = std::max(dmax, a);
    dmin = std::min(dmin, a);
  }
  if (dmax <= tol.tau_zero) return 0.0;  // degenerate but valid
  int w = winding_number(diff, tol);
  if (w > 1 - 2 * n) return std::nullopt;
  return dmin;
}

}  // namespace ratl2
