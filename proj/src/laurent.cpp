#include "ratl2/laurent.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>

namespace ratl2 {

cplx LaurentTail::eval(cplx z) const {
  if (exact) return exact(z);
  // Horner in 1/z.
  cplx w = 1.0 / z;
  cplx acc{0.0};
  for (int k = length() - 1; k >= 0; --k) acc = acc * w + a[k];
  return acc * w;
}

double LaurentTail::norm_sq() const {
  double s = 0.0;
  for (cplx v : a) s += std::norm(v);
  return s;
}

CircleGrid CircleGrid::sample(int m, const std::function<cplx(cplx)>& f) {
  if (!power_of_two(m)) throw std::invalid_argument("CircleGrid: m must be a power of two");
  CircleGrid g;
  g.m = m;
  g.values.resize(m);
  for (int j = 0; j < m; ++j) g.values[j] = f(node(j, m));
  return g;
}

std::vector<cplx> circle_fft(const CircleGrid& g) {
  if (!CircleGrid::power_of_two(g.m) || static_cast<int>(g.values.size()) != g.m)
    throw std::invalid_argument("circle_fft: invalid grid");
  Eigen::FFT<double> fft;
  std::vector<cplx> out;
  std::vector<cplx> in = g.values;
  fft.fwd(out, in);
  double inv = 1.0 / static_cast<double>(g.m);
  for (cplx& v : out) v *= inv;
  return out;
}

CircleGrid circle_ifft(const std::vector<cplx>& coeff) {
  int m = static_cast<int>(coeff.size());
  if (!CircleGrid::power_of_two(m)) throw std::invalid_argument("circle_ifft: invalid length");
  Eigen::FFT<double> fft;
  std::vector<cplx> in = coeff;
  std::vector<cplx> out;
  fft.inv(out, in);
  CircleGrid g;
  g.m = m;
  g.values = std::move(out);
  for (cplx& v : g.values) v *= static_cast<double>(m);
  return g;
}

LaurentTail negative_part(const CircleGrid& g, int n_terms, double* nonneg_energy) {
  std::vector<cplx> c = circle_fft(g);
  int m = g.m;
  if (n_terms > m / 2 - 1) n_terms = m / 2 - 1;  // leave the Nyquist bin out
  LaurentTail t;
  t.a.resize(n_terms);
  for (int k = 1; k <= n_terms; ++k) t.a[k - 1] = c[m - k];
  if (nonneg_energy) {
    double s = 0.0;
    for (int k = 0; k <= m / 2; ++k) s += std::norm(c[k]);
    *nonneg_energy = s;
  }
  return t;
}

}  // namespace ratl2
