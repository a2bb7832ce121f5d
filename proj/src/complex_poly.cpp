#include "ratl2/complex_poly.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace ratl2 {

ComplexPoly ComplexPoly::monomial(int k, cplx a) {
  if (k < 0) throw std::invalid_argument("monomial: negative exponent");
  std::vector<cplx> c(k + 1, cplx{0.0});
  c[k] = a;
  return ComplexPoly(std::move(c));
}

ComplexPoly ComplexPoly::from_roots(const std::vector<cplx>& roots, cplx leading) {
  std::vector<cplx> c{leading};
  for (cplx r : roots) {
    c.push_back(c.back());
    for (int j = static_cast<int>(c.size()) - 2; j > 0; --j) c[j] = c[j - 1] - r * c[j];
    c[0] *= -r;
  }
  return ComplexPoly(std::move(c));
}

double ComplexPoly::max_abs_coeff() const {
  double m = 0.0;
  for (cplx a : c_) m = std::max(m, std::abs(a));
  return m;
}

cplx ComplexPoly::eval(cplx z) const {
  cplx acc{0.0};
  for (int k = static_cast<int>(c_.size()) - 1; k >= 0; --k) acc = acc * z + c_[k];
  return acc;
}

cplx ComplexPoly::eval_deriv(cplx z, int order) const {
  if (order < 0) throw std::invalid_argument("eval_deriv: negative order");
  ComplexPoly p = *this;
  for (int i = 0; i < order; ++i) p = p.derivative();
  return p.eval(z);
}

ComplexPoly ComplexPoly::derivative() const {
  if (c_.size() <= 1) return ComplexPoly();
  std::vector<cplx> d(c_.size() - 1);
  for (size_t k = 1; k < c_.size(); ++k) d[k - 1] = static_cast<double>(k) * c_[k];
  return ComplexPoly(std::move(d));
}

std::vector<cplx> ComplexPoly::roots() const {
  int d = degree();
  if (d <= 0) return {};
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(d, d);
  cplx lead = c_.back();
  for (int k = 0; k < d; ++k) comp(k, d - 1) = -c_[k] / lead;
  for (int k = 1; k < d; ++k) comp(k, k - 1) = 1.0;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  std::vector<cplx> out(d);
  for (int k = 0; k < d; ++k) out[k] = es.eigenvalues()(k);
  std::sort(out.begin(), out.end(), [](cplx a, cplx b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return out;
}

ComplexPoly ComplexPoly::operator+(const ComplexPoly& o) const {
  std::vector<cplx> c(std::max(c_.size(), o.c_.size()), cplx{0.0});
  for (size_t k = 0; k < c_.size(); ++k) c[k] += c_[k];
  for (size_t k = 0; k < o.c_.size(); ++k) c[k] += o.c_[k];
  return ComplexPoly(std::move(c));
}

ComplexPoly ComplexPoly::operator-(const ComplexPoly& o) const {
  return *this + o * cplx{-1.0};
}

ComplexPoly ComplexPoly::operator*(const ComplexPoly& o) const {
  if (is_zero() || o.is_zero()) return ComplexPoly();
  std::vector<cplx> c(c_.size() + o.c_.size() - 1, cplx{0.0});
  for (size_t j = 0; j < c_.size(); ++j)
    for (size_t k = 0; k < o.c_.size(); ++k) c[j + k] += c_[j] * o.c_[k];
  return ComplexPoly(std::move(c));
}

ComplexPoly ComplexPoly::operator*(cplx s) const {
  std::vector<cplx> c = c_;
  for (cplx& a : c) a *= s;
  return ComplexPoly(std::move(c));
}

std::pair<ComplexPoly, ComplexPoly> ComplexPoly::divide(const ComplexPoly& divisor) const {
  if (divisor.is_zero()) throw std::invalid_argument("divide: zero divisor");
  std::vector<cplx> rem = c_;
  int dd = divisor.degree();
  int dn = degree();
  if (dn < dd) return {ComplexPoly(), *this};
  std::vector<cplx> quot(dn - dd + 1, cplx{0.0});
  cplx lead = divisor.c_.back();
  for (int k = dn; k >= dd; --k) {
    cplx f = rem[k] / lead;
    quot[k - dd] = f;
    for (int j = 0; j <= dd; ++j) rem[k - dd + j] -= f * divisor.c_[j];
  }
  rem.resize(dd);
  return {ComplexPoly(std::move(quot)), ComplexPoly(std::move(rem))};
}

std::pair<ComplexPoly, cplx> ComplexPoly::deflate(cplx root) const {
  if (is_zero()) return {ComplexPoly(), cplx{0.0}};
  int d = degree();
  if (d == 0) return {ComplexPoly(), c_[0]};
  std::vector<cplx> q(d);
  cplx acc = c_[d];
  for (int k = d - 1; k >= 0; --k) {
    q[k] = acc;
    acc = c_[k] + root * acc;
  }
  return {ComplexPoly(std::move(q)), acc};
}

void ComplexPoly::normalize(double tau_zero) {
  double scale = max_abs_coeff();
  if (scale == 0.0) {
    c_.clear();
    return;
  }
  while (!c_.empty() && std::abs(c_.back()) <= tau_zero * scale) c_.pop_back();
}

MonicPoly::MonicPoly(const ComplexPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("MonicPoly: zero polynomial");
  p_ = p * (1.0 / p.coeffs().back());
}

MonicPoly MonicPoly::from_roots(const std::vector<cplx>& roots) {
  MonicPoly m;
  m.p_ = ComplexPoly::from_roots(roots);
  return m;
}

double MonicPoly::max_root_modulus() const {
  double m = 0.0;
  for (cplx r : p_.roots()) m = std::max(m, std::abs(r));
  return m;
}

ComplexPoly reciprocal(const ComplexPoly& p, int k) {
  if (p.degree() > k) throw std::invalid_argument("reciprocal: degree exceeds k");
  std::vector<cplx> c(k + 1, cplx{0.0});
  for (int j = 0; j <= p.degree(); ++j) c[k - j] = std::conj(p.coeff(j));
  return ComplexPoly(std::move(c));
}

ComplexPoly conj_coeffs(const ComplexPoly& p) {
  std::vector<cplx> c = p.coeffs();
  for (cplx& a : c) a = std::conj(a);
  return ComplexPoly(std::move(c));
}

}  // namespace ratl2
