#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "ratl2/complex_poly.hpp"
#include "ratl2/hardy.hpp"
#include "ratl2/laurent.hpp"

using namespace ratl2;

namespace {

LaurentTail tail_of(std::vector<cplx> a) {
  LaurentTail t;
  t.a = std::move(a);
  t.rho = 0.0;
  return t;
}

// mean over the unit circle of f * conj(g), both given pointwise
cplx grid_inner(const std::vector<cplx>& f, const std::vector<cplx>& g) {
  cplx s = 0.0;
  for (size_t j = 0; j < f.size(); ++j) s += f[j] * std::conj(g[j]);
  return s / static_cast<double>(f.size());
}

}  // namespace

TEST_CASE("inner product matches the coefficient pairing") {
  LaurentTail e1 = tail_of({1.0});         // 1/z
  LaurentTail e2 = tail_of({0.0, 1.0});    // 1/z^2
  CHECK(std::abs(inner_product(e1, e1) - cplx(1.0)) < 1e-15);
  CHECK(std::abs(inner_product(e1, e2)) < 1e-15);

  LaurentTail f = tail_of({2.0, cplx(0.0, 3.0)});  // 2/z + 3i/z^2
  CHECK(std::abs(inner_product(f, f) - cplx(13.0)) < 1e-13);
  CHECK(std::abs(f.norm_sq() - 13.0) < 1e-13);
}

TEST_CASE("inner product agrees with direct circle integration") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  std::vector<cplx> fa(12), ga(12);
  for (auto& c : fa) c = cplx(U(rng), U(rng));
  for (auto& c : ga) c = cplx(U(rng), U(rng));
  LaurentTail f = tail_of(fa), g = tail_of(ga);

  const int m = 256;
  std::vector<cplx> fs(m), gs(m);
  for (int j = 0; j < m; ++j) {
    cplx tau = CircleGrid::node(j, m);
    fs[j] = f.eval(tau);
    gs[j] = g.eval(tau);
  }
  CHECK(std::abs(inner_product(f, g) - grid_inner(fs, gs)) < 1e-12);
}

TEST_CASE("involution maps 1/z to 1 and constants to scaled 1/z") {
  ComplexPoly p = involution_to_disk(tail_of({1.0}));
  REQUIRE(p.degree() == 0);
  CHECK(std::abs(p.coeff(0) - cplx(1.0)) < 1e-15);

  // the disk-side constant c maps back to conj(c)/z
  ComplexPoly c = ComplexPoly::monomial(0, cplx(0.5, -0.25));
  LaurentTail back = involution_to_exterior(c);
  REQUIRE(back.a.size() >= 1);
  CHECK(std::abs(back.coeff(1) - cplx(0.5, 0.25)) < 1e-15);
  for (size_t k = 1; k < back.a.size(); ++k) CHECK(std::abs(back.a[k]) < 1e-15);
}

TEST_CASE("involution round trip is exact and isometric") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  std::vector<cplx> a(20);
  for (auto& c : a) c = cplx(U(rng), U(rng));
  LaurentTail f = tail_of(a);

  ComplexPoly p = involution_to_disk(f);
  LaurentTail f2 = involution_to_exterior(p);
  REQUIRE(f2.a.size() >= a.size());
  for (size_t k = 0; k < a.size(); ++k) CHECK(std::abs(f2.a[k] - a[k]) < 1e-15);

  // isometry: same norm on both sides
  double disk_norm = 0.0;
  for (int k = 0; k <= p.degree(); ++k) disk_norm += std::norm(p.coeff(k));
  CHECK(std::abs(disk_norm - f.norm_sq()) < 1e-13);

  // pointwise identity on the circle: f(tau) = conj(p(tau)) / tau
  for (int j = 0; j < 64; ++j) {
    cplx tau = CircleGrid::node(j, 64);
    CHECK(std::abs(f.eval(tau) - std::conj(p.eval(tau)) / tau) < 1e-13);
  }
}

TEST_CASE("reciprocal polynomial basics") {
  // z - xi with k = 1 flips to 1 - conj(xi) z
  cplx xi(0.3, -0.2);
  ComplexPoly p = ComplexPoly({-xi, 1.0});
  ComplexPoly r = reciprocal(p, 1);
  REQUIRE(r.degree() == 1);
  CHECK(std::abs(r.coeff(0) - cplx(1.0)) < 1e-15);
  CHECK(std::abs(r.coeff(1) + std::conj(xi)) < 1e-15);

  // z^2 with k = 2 flips to the constant 1
  ComplexPoly z2 = ComplexPoly::monomial(2);
  ComplexPoly r2 = reciprocal(z2, 2);
  CHECK(r2.degree() == 0);
  CHECK(std::abs(r2.coeff(0) - cplx(1.0)) < 1e-15);

  CHECK_THROWS_AS(reciprocal(z2, 1), std::invalid_argument);
}

TEST_CASE("reciprocal polynomial has matching modulus on the circle") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<cplx> coeffs(5);
    for (auto& c : coeffs) c = cplx(U(rng), U(rng));
    ComplexPoly p(coeffs);
    ComplexPoly r = reciprocal(p, 4);
    for (int j = 0; j < 64; ++j) {
      cplx tau = CircleGrid::node(j, 64);
      CHECK(std::abs(std::abs(r.eval(tau)) - std::abs(p.eval(tau))) < 1e-12);
    }
  }
}

TEST_CASE("projection recovers exact rational members") {
  // f = 1/(z - c) lies in the space attached to q = z - c, numerator 1
  cplx c(0.4, 0.1);
  MonicPoly q = MonicPoly::from_roots({c});
  auto f = [&](cplx z) { return 1.0 / (z - c); };
  ProjectionResult pr = project_onto_vq(f, q);
  REQUIRE(pr.numerator.degree() <= 0);
  CHECK(std::abs(pr.numerator.coeff(0) - cplx(1.0)) < 1e-12);
  CHECK(!pr.ill_conditioned);

  // f = 1/z^2 is orthogonal to the span attached to q = z
  MonicPoly qz = MonicPoly::from_roots({cplx(0.0)});
  auto f2 = [](cplx z) { return 1.0 / (z * z); };
  ProjectionResult pr2 = project_onto_vq(f2, qz);
  CHECK(std::abs(pr2.numerator.coeff(0)) < 1e-12);
}

TEST_CASE("projection leaves an orthogonal residual") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  std::vector<cplx> a(20);
  for (auto& c : a) c = cplx(U(rng), U(rng));
  LaurentTail f = tail_of(a);

  std::vector<cplx> roots = {cplx(0.2, 0.3), cplx(-0.5, 0.0), cplx(0.1, -0.6)};
  MonicPoly q = MonicPoly::from_roots(roots);
  auto fe = [&](cplx z) { return f.eval(z); };
  ProjectionResult pr = project_onto_vq(fe, q);
  REQUIRE(pr.numerator.degree() < 3);

  // residual f - L/q hits every z^j / q at zero, checked by direct quadrature
  const int m = 4096;
  std::vector<cplx> res(m);
  for (int j = 0; j < m; ++j) {
    cplx tau = CircleGrid::node(j, m);
    res[j] = f.eval(tau) - pr.numerator.eval(tau) / q.poly().eval(tau);
  }
  for (int k = 0; k < 3; ++k) {
    std::vector<cplx> basis(m);
    for (int j = 0; j < m; ++j) {
      cplx tau = CircleGrid::node(j, m);
      basis[j] = std::pow(tau, k) / q.poly().eval(tau);
    }
    CHECK(std::abs(grid_inner(res, basis)) < 1e-10);
  }

  // idempotence: projecting the projection returns it unchanged
  auto le = [&](cplx z) { return pr.numerator.eval(z) / q.poly().eval(z); };
  ProjectionResult pr2 = project_onto_vq(le, q);
  for (int k = 0; k < 3; ++k)
    CHECK(std::abs(pr2.numerator.coeff(k) - pr.numerator.coeff(k)) < 1e-11);
}

TEST_CASE("projection complement pairs to zero") {
  // (qt/q) u lies in the complement: its projection numerator vanishes
  std::vector<cplx> roots = {cplx(0.1, 0.2), cplx(-0.3, -0.1)};
  MonicPoly q = MonicPoly::from_roots(roots);
  ComplexPoly qt = reciprocal(q.poly(), 2);
  LaurentTail u = tail_of({cplx(0.7, -0.2), cplx(-0.1, 0.4), cplx(0.05, 0.3)});
  auto g = [&](cplx z) { return qt.eval(z) / q.poly().eval(z) * u.eval(z); };
  ProjectionResult pr = project_onto_vq(g, q);
  for (int k = 0; k <= pr.numerator.degree(); ++k)
    CHECK(std::abs(pr.numerator.coeff(k)) < 1e-10);
}

TEST_CASE("projection rejects boundary poles") {
  MonicPoly q = MonicPoly::from_roots({cplx(0.999999999, 0.0)});
  auto f = [](cplx z) { return 1.0 / z; };
  CHECK_THROWS_AS(project_onto_vq(f, q), std::domain_error);
}

TEST_CASE("winding numbers of basic symbols") {
  const int m = 256;
  for (int k : {1, 2, 3}) {
    std::vector<cplx> s(m);
    for (int j = 0; j < m; ++j) s[j] = std::pow(CircleGrid::node(j, m), -k);
    CHECK(winding_number(s) == -k);
  }
  std::vector<cplx> c(m, cplx(2.0, -1.0));
  CHECK(winding_number(c) == 0);

  // positive scalar multiples do not change the winding
  std::vector<cplx> s(m), s2(m);
  for (int j = 0; j < m; ++j) {
    cplx tau = CircleGrid::node(j, m);
    s[j] = tau * tau + 0.5;
    s2[j] = 3.75 * s[j];
  }
  CHECK(winding_number(s) == winding_number(s2));
  CHECK(winding_number(s) == 2);
}

TEST_CASE("adaptive winding refines undersampled symbols") {
  // z^{-9} needs more than 16 nodes to resolve; the adaptive wrapper finds it
  auto f = [](cplx z) { return std::pow(z, -9); };
  CHECK(winding_number_adaptive(f, 16) == -9);
}
