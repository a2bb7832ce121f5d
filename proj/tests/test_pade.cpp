#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "ratl2/conformal.hpp"
#include "ratl2/config.hpp"
#include "ratl2/pade.hpp"
#include "ratl2/target.hpp"

using namespace ratl2;

namespace {

TargetFunction simple_poles(const std::vector<cplx>& poles) {
  RationalPart r;
  for (cplx p : poles) {
    PolePart part;
    part.pole = p;
    part.mult = 1;
    part.coeffs = {cplx(1.0)};
    r.parts.push_back(part);
  }
  return TargetFunction(std::nullopt, r);
}

double sup_on_circle(const std::function<cplx(cplx)>& f, double radius, int m = 512) {
  double s = 0.0;
  for (int j = 0; j < m; ++j) {
    cplx z = radius * std::exp(cplx(0.0, 2.0 * pi * j / m));
    s = std::max(s, std::abs(f(z)));
  }
  return s;
}

}  // namespace

TEST_CASE("rational targets are reproduced exactly") {
  for (int n = 1; n <= 6; ++n) {
    std::vector<cplx> poles;
    for (int j = 0; j < n; ++j)
      poles.push_back(0.45 * std::exp(cplx(0.0, 2.0 * pi * j / n + 0.37)));
    TargetFunction F = simple_poles(poles);

    std::vector<InterpolationSet> schemes;
    schemes.push_back(InterpolationSet::all_at_infinity(n));
    InterpolationSet finite;
    for (int j = 0; j < n; ++j)
      finite.points.push_back(3.0 * std::exp(cplx(0.0, 2.0 * pi * j / n + 0.11)));
    schemes.push_back(finite);
    InterpolationSet mixed;
    mixed.at_infinity = (n + 1) / 2;
    double spots[] = {2.2, -2.7, 3.1};
    for (int j = 0; j < n - mixed.at_infinity; ++j) mixed.points.push_back(spots[j % 3] + 0.1 * j);
    schemes.push_back(mixed);

    for (const InterpolationSet& E : schemes) {
      PadeApproximant P = build_pade(F, E);
      REQUIRE(P.full_degree);
      CHECK(P.denominator.degree() == n);
      double sup = sup_on_circle([&](cplx z) { return F.eval(z) - P.eval(z); }, 2.0);
      CHECK(sup < 1e-10);
    }
  }
}

TEST_CASE("first interpolant of the square root transform") {
  MeasureM mu(-0.5, 0.5, [](double) { return cplx(1.0); });
  TargetFunction F(mu, {});
  PadeApproximant P = build_pade(F, InterpolationSet::all_at_infinity(1));
  REQUIRE(P.full_degree);
  // denominator z, numerator 1, so the interpolant is 1/z
  REQUIRE(P.denominator.degree() == 1);
  CHECK(std::abs(P.denominator.coeff(0)) < 1e-12);
  CHECK(std::abs(P.numerator.coeff(0) - cplx(1.0)) < 1e-12);

  // the error starts at z^{-3}: its z^{-2} Laurent coefficient vanishes
  auto err = pade_error_evaluator(F, P);
  auto g = [&](cplx u) { return err(1.0 / u); };
  std::vector<cplx> d = analytic_derivatives(g, 0.0, 0.3, 2);
  CHECK(std::abs(d[2] / 2.0) < 1e-12);
  // and the z^{-3} coefficient is the second moment 1/8
  std::vector<cplx> d3 = analytic_derivatives(g, 0.0, 0.3, 3);
  CHECK(std::abs(d3[3] / 6.0 - cplx(0.125)) < 1e-10);
}

TEST_CASE("finite nodes are matched with multiplicity two") {
  MeasureM mu(-0.5, 0.5, [](double) { return cplx(1.0); });
  TargetFunction F(mu, {});
  InterpolationSet E;
  E.points = {cplx(3.0), cplx(0.0, 2.0), cplx(-2.5)};
  PadeApproximant P = build_pade(F, E);
  REQUIRE(P.full_degree);

  auto err = pade_error_evaluator(F, P);
  double scale = sup_on_circle(err, 2.5, 64);
  REQUIRE(scale > 0.0);
  for (cplx e : E.points) {
    // value and first derivative both vanish at each node
    CHECK(std::abs(err(e)) < 1e-7 * scale);
    std::vector<cplx> d = analytic_derivatives(err, e, 0.15, 1);
    CHECK(std::abs(d[1]) < 1e-5 * scale);
  }
}

TEST_CASE("interpolant is linear in the target and monic in the denominator") {
  TargetFunction F = simple_poles({cplx(0.3, 0.1), cplx(-0.2, -0.4)});
  RationalPart scaled;
  for (PolePart part : F.rational().parts) {
    for (cplx& c : part.coeffs) c *= 3.75;
    scaled.parts.push_back(part);
  }
  TargetFunction G(std::nullopt, scaled);

  InterpolationSet E = InterpolationSet::all_at_infinity(2);
  PadeApproximant PF = build_pade(F, E);
  PadeApproximant PG = build_pade(G, E);
  REQUIRE(PF.full_degree);
  REQUIRE(PG.full_degree);
  CHECK(std::abs(PF.denominator.coeff(2) - cplx(1.0)) < 1e-15);
  CHECK(std::abs(PG.denominator.coeff(2) - cplx(1.0)) < 1e-15);
  for (int k = 0; k < 2; ++k)
    CHECK(std::abs(PF.denominator.coeff(k) - PG.denominator.coeff(k)) < 1e-10);
  for (int k = 0; k < 2; ++k)
    CHECK(std::abs(3.75 * PF.numerator.coeff(k) - PG.numerator.coeff(k)) < 1e-9);
}

TEST_CASE("node Blaschke products") {
  const double a = -0.5, b = 0.5;
  cplx z(1.2, 0.7);
  CHECK(std::abs(blaschke_product(InterpolationSet::all_at_infinity(0), z, a, b) - cplx(1.0)) <
        1e-15);
  CHECK(std::abs(blaschke_product(InterpolationSet::all_at_infinity(1), z, a, b) -
                 disk_coordinate(z, a, b, Side::None)) < 1e-13);

  InterpolationSet E;
  E.points = {cplx(2.0, 1.0), cplx(2.0, -1.0)};
  E.at_infinity = 1;
  for (cplx w : {cplx(0.9, 0.4), cplx(-1.5, 0.3), cplx(0.0, 1.1), cplx(4.0, 0.0)}) {
    CHECK(std::abs(blaschke_product(E, w, a, b)) < 1.0);
  }
  // vanishes at its own nodes
  CHECK(std::abs(blaschke_product(E, E.points[0], a, b)) < 1e-12);
}

TEST_CASE("admissibility diagnostics") {
  MeasureM mu(-0.5, 0.5, [](double) { return cplx(1.0); });
  TargetFunction F(mu, {});

  InterpolationScheme ray;
  for (int n = 1; n <= 4; ++n) ray.sets.push_back(InterpolationSet::all_at_infinity(n));
  std::vector<AdmissibilityRow> rows = admissibility_report(ray, F);
  REQUIRE(rows.size() == 4);
  for (const AdmissibilityRow& r : rows) {
    CHECK(r.symmetry_sum < 1e-14);
    if (r.transport_to_next >= 0.0) CHECK(r.transport_to_next < 1e-14);
  }

  InterpolationScheme real_nodes;
  InterpolationSet E1;
  E1.points = {cplx(3.0), cplx(-2.0)};
  E1.at_infinity = 1;
  real_nodes.sets.push_back(E1);
  CHECK(admissibility_report(real_nodes, F)[0].symmetry_sum < 1e-13);

  // a purely imaginary pair registers its reflection asymmetry
  InterpolationScheme tilted;
  InterpolationSet E2;
  E2.points = {cplx(0.0, 10.0), cplx(0.0, -10.0)};
  tilted.sets.push_back(E2);
  double expected = 2.0 * std::abs(disk_coordinate(cplx(0.0, 10.0), -0.5, 0.5, Side::None) -
                                   disk_coordinate(cplx(0.0, -10.0), -0.5, 0.5, Side::None));
  CHECK(std::abs(admissibility_report(tilted, F)[0].symmetry_sum - expected) < 1e-12);
}
