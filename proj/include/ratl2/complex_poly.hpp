#pragma once

#include <vector>

#include "ratl2/config.hpp"

namespace ratl2 {

/**
 * Dense polynomial with complex coefficients, stored ascending:
 * p(z) = c[0] + c[1] z + ... + c[d] z^d.  The zero polynomial has an empty
 * coefficient vector and reported degree -1.  Trailing coefficients smaller
 * than tau_zero times the coefficient scale are dropped by normalize().
 */
class ComplexPoly {
 public:
  ComplexPoly() = default;
  explicit ComplexPoly(std::vector<cplx> coeffs) : c_(std::move(coeffs)) { normalize(); }
  static ComplexPoly constant(cplx a) { return ComplexPoly({a}); }
  static ComplexPoly monomial(int k, cplx a = 1.0);
  static ComplexPoly from_roots(const std::vector<cplx>& roots, cplx leading = 1.0);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  cplx coeff(int k) const { return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : cplx{0.0}; }
  const std::vector<cplx>& coeffs() const { return c_; }
  double max_abs_coeff() const;

  cplx eval(cplx z) const;                 // Horner
  cplx eval_deriv(cplx z, int order) const;
  ComplexPoly derivative() const;
  std::vector<cplx> roots() const;         // companion-matrix eigenvalues

  ComplexPoly operator+(const ComplexPoly& o) const;
  ComplexPoly operator-(const ComplexPoly& o) const;
  ComplexPoly operator*(const ComplexPoly& o) const;
  ComplexPoly operator*(cplx s) const;

  // Euclidean division by a nonzero divisor: {quotient, remainder}.
  std::pair<ComplexPoly, ComplexPoly> divide(const ComplexPoly& divisor) const;

  // Synthetic division by (z - root); remainder returned separately.
  std::pair<ComplexPoly, cplx> deflate(cplx root) const;

  void normalize(double tau_zero = default_tol().tau_zero);

 private:
  std::vector<cplx> c_;
};

/**
 * Monic polynomial of exact degree n.  Used for denominators whose zeros are
 * tracked explicitly; construction from roots keeps the product expansion
 * numerically tame by multiplying linear factors.
 */
class MonicPoly {
 public:
  MonicPoly() : p_(ComplexPoly::constant(1.0)) {}
  explicit MonicPoly(const ComplexPoly& p);  // rescales by the leading coefficient
  static MonicPoly from_roots(const std::vector<cplx>& roots);

  int degree() const { return p_.degree(); }
  const ComplexPoly& poly() const { return p_; }
  cplx eval(cplx z) const { return p_.eval(z); }
  std::vector<cplx> roots() const { return p_.roots(); }
  double max_root_modulus() const;

 private:
  ComplexPoly p_;
};

/**
 * Reciprocal conjugate polynomial relative to degree k:
 * given p of degree <= k, returns z^k * conj(p(1/conj(z))), i.e. the
 * coefficient vector conjugated and reversed into length k+1.  On the unit
 * circle its modulus equals |p|.
 */
ComplexPoly reciprocal(const ComplexPoly& p, int k);

// conj(p(conj(z))): plain coefficient conjugation.
ComplexPoly conj_coeffs(const ComplexPoly& p);

}  // namespace ratl2
