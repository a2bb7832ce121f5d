#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "ratl2/conformal.hpp"
#include "ratl2/config.hpp"
#include "ratl2/szego.hpp"
#include "ratl2/target.hpp"

using namespace ratl2;

namespace {

MeasureM arcsine_half() {
  return MeasureM(-0.5, 0.5, [](double) { return cplx(1.0); });
}

}  // namespace

TEST_CASE("Cauchy transform of the unit density") {
  TargetFunction F(arcsine_half(), {});
  // closed form 1/sqrt(z^2 - 1/4): at z = 1 this is 2/sqrt(3)
  CHECK(std::abs(F.eval(1.0) - cplx(2.0 / std::sqrt(3.0))) < 1e-12);
  // z f(z) -> 1 far away
  CHECK(std::abs(cplx(1e6) * F.eval(1e6) - cplx(1.0)) < 1e-6);

  // adding an exterior pole shifts the value by the pole term
  PolePart p;
  p.pole = 2.0;
  p.mult = 1;
  p.coeffs = {cplx(1.0)};
  TargetFunction G(arcsine_half(), RationalPart{{p}});
  CHECK(std::abs(G.eval(1.0) - (cplx(2.0 / std::sqrt(3.0)) - 1.0)) < 1e-12);
}

TEST_CASE("moments of the arcsine measure") {
  TargetFunction F(arcsine_half(), {});
  std::vector<cplx> m = F.moments(2);
  REQUIRE(m.size() == 3);
  CHECK(std::abs(m[0] - cplx(1.0)) < 1e-13);
  CHECK(std::abs(m[1]) < 1e-13);
  CHECK(std::abs(m[2] - cplx(0.125)) < 1e-13);
}

TEST_CASE("square root branch normalized at infinity") {
  const double a = -0.5, b = 0.5;
  CHECK(std::abs(sqrt_branch(1.0, a, b, Side::None) - cplx(std::sqrt(3.0) / 2.0)) < 1e-13);
  CHECK(std::abs(sqrt_branch(1e6, a, b, Side::None) / 1e6 - cplx(1.0)) < 1e-6);
  // upper-edge value on the cut at the midpoint: i sqrt((x-a)(b-x)) = i/2
  CHECK(std::abs(sqrt_branch(0.0, a, b, Side::Plus) - cplx(0.0, 0.5)) < 1e-13);
  CHECK(std::abs(sqrt_branch(0.0, a, b, Side::Minus) + cplx(0.0, 0.5)) < 1e-13);
  // conjugate symmetry off the cut
  cplx z(0.7, 0.4);
  CHECK(std::abs(sqrt_branch(std::conj(z), a, b, Side::None) -
                 std::conj(sqrt_branch(z, a, b, Side::None))) < 1e-13);
}

TEST_CASE("disk coordinate of the cut exterior") {
  const double a = -0.5, b = 0.5;
  // vanishes at infinity, unimodular on the cut edges, explicit value at 1
  CHECK(std::abs(disk_coordinate(1e8, a, b, Side::None)) < 1e-7);
  CHECK(std::abs(disk_coordinate(1.0, a, b, Side::None) - cplx(2.0 - std::sqrt(3.0))) < 1e-12);
  for (double x : {-0.45, -0.2, 0.0, 0.3, 0.49}) {
    CHECK(std::abs(std::abs(disk_coordinate(x, a, b, Side::Plus)) - 1.0) < 1e-12);
    CHECK(std::abs(std::abs(disk_coordinate(x, a, b, Side::Minus)) - 1.0) < 1e-12);
  }

  // inverse Joukowski pair: z = mid + (b-a)/4 * (u + 1/u) with u the coordinate
  for (cplx z : {cplx(0.9, 0.3), cplx(-1.2, 0.1), cplx(0.0, 2.0), cplx(3.0, -0.5)}) {
    cplx u = disk_coordinate(z, a, b, Side::None);
    CHECK(std::abs(u) < 1.0);
    cplx back = (a + b) / 2.0 + (b - a) / 4.0 * (u + 1.0 / u);
    CHECK(std::abs(back - z) < 1e-10);
    CHECK(std::abs(from_disk_coordinate(u, a, b) - z) < 1e-10);
    // conjugate symmetry
    CHECK(std::abs(disk_coordinate(std::conj(z), a, b, Side::None) - std::conj(u)) < 1e-12);
  }
}

TEST_CASE("Szego function of a constant density is trivial") {
  for (cplx c : {cplx(1.0), cplx(2.5), cplx(0.3, 0.4)}) {
    MeasureM h(-0.5, 0.5, [c](double) { return c; });
    SzegoData D(h);
    CHECK(std::abs(D.geometric_mean() - c) < 1e-10);
    for (cplx z : {cplx(1.0, 0.5), cplx(-2.0, 0.0), cplx(0.0, 0.8)}) {
      CHECK(std::abs(D.eval(z) - cplx(1.0)) < 1e-10);
    }
  }
}

TEST_CASE("Szego data for a linear density") {
  MeasureM h(-0.5, 0.5, [](double t) { return cplx(1.0 + t); });
  SzegoData D(h);
  // geometric mean (2 + sqrt(3))/4
  CHECK(std::abs(D.geometric_mean() - cplx((2.0 + std::sqrt(3.0)) / 4.0)) < 1e-10);
  // normalization at infinity
  CHECK(std::abs(D.eval(1e7) - cplx(1.0)) < 1e-6);
  // boundary factorization h = G D+ D- at interior points
  for (int j = 1; j <= 32; ++j) {
    double x = -0.5 + j / 33.0;
    CHECK(D.factorization_residual(x) < 1e-8);
  }
}

TEST_CASE("Szego function is multiplicative in the density") {
  auto h1 = [](double t) { return cplx(1.0 + 0.5 * t); };
  auto h2 = [](double t) { return std::exp(cplx(0.0, 0.3) * t); };
  SzegoData D1(MeasureM(-0.5, 0.5, h1));
  SzegoData D2(MeasureM(-0.5, 0.5, h2));
  SzegoData D12(MeasureM(-0.5, 0.5, [&](double t) { return h1(t) * h2(t); }));
  for (cplx z : {cplx(0.8, 0.6), cplx(-1.5, 0.2), cplx(0.1, -1.0)}) {
    CHECK(std::abs(D12.eval(z) - D1.eval(z) * D2.eval(z)) < 1e-9);
  }
  CHECK(std::abs(D12.geometric_mean() - D1.geometric_mean() * D2.geometric_mean()) < 1e-9);
}

TEST_CASE("unit density transform equals the reciprocal square root") {
  TargetFunction F(arcsine_half(), {});
  for (int j = 0; j < 32; ++j) {
    cplx z = 2.0 * std::exp(cplx(0.0, 2.0 * pi * j / 32.0));
    CHECK(std::abs(F.eval(z) - 1.0 / sqrt_branch(z, -0.5, 0.5, Side::None)) < 1e-9);
  }
}

TEST_CASE("argument unwrapping follows continuous paths") {
  std::vector<cplx> c(50, cplx(2.0, 1.0));
  CHECK(total_argument_variation(c) < 1e-14);

  std::vector<cplx> slow(64), fast(128);
  for (size_t j = 0; j < slow.size(); ++j) {
    double t = static_cast<double>(j) / (slow.size() - 1);
    slow[j] = std::exp(cplx(0.0, 0.3) * t);
  }
  for (size_t j = 0; j < fast.size(); ++j) {
    double t = static_cast<double>(j) / (fast.size() - 1);
    fast[j] = std::exp(cplx(0.0, 4.0 * pi) * t);
  }
  CHECK(std::abs(total_argument_variation(slow) - 0.3) < 1e-10);
  CHECK(std::abs(total_argument_variation(fast) - 4.0 * pi) < 1e-8);

  std::vector<double> args = unwrap_arguments(fast);
  REQUIRE(args.size() == fast.size());
  CHECK(std::abs(args.back() - args.front() - 4.0 * pi) < 1e-8);
}

TEST_CASE("density class diagnostics") {
  MeasureM tilted(-0.5, 0.5, [](double t) { return std::exp(cplx(0.0, 0.3) * t); });
  CHECK(std::abs(tilted.min_density_modulus() - 1.0) < 1e-12);
  CHECK(std::abs(tilted.argument_variation() - 0.3) < 1e-3);

  MeasureM flat = arcsine_half();
  CHECK(flat.argument_variation() < 1e-12);
  CHECK(std::abs(flat.min_density_modulus() - 1.0) < 1e-12);
}

TEST_CASE("target geometry accessors") {
  PolePart p;
  p.pole = cplx(0.1, 0.2);
  p.mult = 2;
  p.coeffs = {cplx(1.0), cplx(0.0, 1.0)};
  TargetFunction F(arcsine_half(), RationalPart{{p}});
  CHECK(F.interior_rational_only());
  // radius of holomorphy of the tail: the cut endpoint dominates the pole
  CHECK(std::abs(F.rho() - 0.5) < 1e-14);
  // nearest singularity from 2 is the cut endpoint at 1/2
  CHECK(std::abs(F.distance_to_singularities(cplx(2.0)) - 1.5) < 1e-12);

  PolePart pe;
  pe.pole = 3.0;
  pe.mult = 1;
  pe.coeffs = {cplx(1.0)};
  TargetFunction G(arcsine_half(), RationalPart{{pe}});
  CHECK(!G.interior_rational_only());
  CHECK(G.rational().has_exterior_pole());
}
