#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "ratl2/certify.hpp"
#include "ratl2/config.hpp"
#include "ratl2/critical.hpp"
#include "ratl2/green.hpp"
#include "ratl2/hankel.hpp"
#include "ratl2/scheme_builder.hpp"

using namespace ratl2;

namespace {

TargetFunction markov(double a, double b) {
  return TargetFunction(MeasureM(a, b, [](double) { return cplx(1.0); }), {});
}

CircleGrid sample(int m, const std::function<cplx(cplx)>& f) {
  return CircleGrid::sample(m, f);
}

}  // namespace

TEST_CASE("outer factor reproduces outer functions") {
  // exp(z) is already outer with positive value at the origin
  OuterFactor o = outer_factor(sample(512, [](cplx z) { return std::exp(z); }));
  CHECK(std::abs(o.at_zero - 1.0) < 1e-9);
  for (int j = 0; j < 512; ++j) {
    cplx tau = CircleGrid::node(j, 512);
    CHECK(std::abs(o.boundary.values[j] - std::exp(tau)) < 1e-9);
  }
  CHECK(std::abs(o.eval(cplx(0.3, 0.2)) - std::exp(cplx(0.3, 0.2))) < 1e-9);
}

TEST_CASE("outer factor strips inner content") {
  // z is purely inner: its outer part is the constant 1
  OuterFactor o1 = outer_factor(sample(256, [](cplx z) { return z; }));
  CHECK(std::abs(o1.at_zero - 1.0) < 1e-10);
  for (const cplx& v : o1.boundary.values) CHECK(std::abs(v - cplx(1.0)) < 1e-9);

  // z - 1/2 has a disk zero; the outer part is 1 - z/2
  OuterFactor o2 = outer_factor(sample(512, [](cplx z) { return z - 0.5; }));
  CHECK(std::abs(o2.at_zero - 1.0) < 1e-9);
  for (int j = 0; j < 512; ++j) {
    cplx tau = CircleGrid::node(j, 512);
    CHECK(std::abs(o2.boundary.values[j] - (1.0 - tau / 2.0)) < 1e-8);
    CHECK(std::abs(std::abs(o2.boundary.values[j]) - std::abs(tau - 0.5)) < 1e-9);
  }
}

TEST_CASE("Hankel singular values of finite rank symbols") {
  std::vector<double> s1 = hankel_singular_values({cplx(0.0, -0.7)}, 2);
  REQUIRE(s1.size() == 2);
  CHECK(std::abs(s1[0] - 0.7) < 1e-12);
  CHECK(s1[1] < 1e-12);

  // rank two symbol 1/(z - 0.3) + 1/(z + 0.4)
  std::vector<cplx> m(64);
  for (int k = 1; k <= 64; ++k)
    m[k - 1] = std::pow(0.3, k - 1) + std::pow(-0.4, k - 1);
  std::vector<double> s = hankel_singular_values(m, 4);
  REQUIRE(s.size() == 4);
  CHECK(s[0] >= s[1]);
  CHECK(s[1] >= s[2]);
  CHECK(s[2] >= s[3]);
  CHECK(s[1] > 1e-3);
  CHECK(s[2] < 1e-10);
  CHECK(s[3] < 1e-10);
  for (double v : s) CHECK(v >= 0.0);
}

TEST_CASE("winding gated lower bound") {
  const int grid = 512;
  std::vector<cplx> s(grid), g(grid, cplx(0.0));
  // s = 2/z + 0.3/z^2 has winding -1; with g = 0 and n = 1 the gate holds
  for (int j = 0; j < grid; ++j) {
    cplx tau = CircleGrid::node(j, grid);
    s[j] = 2.0 / tau + 0.3 / (tau * tau);
  }
  std::optional<double> bound = dvp_lower_bound(s, g, 1);
  REQUIRE(bound.has_value());
  CHECK(std::abs(*bound - 1.7) < 1e-10);

  // the bound really sits under the Hankel singular value
  std::vector<double> sv = hankel_singular_values({cplx(2.0), cplx(0.3)}, 1);
  CHECK(*bound <= sv[0] + 1e-9);

  // identical samples: zero difference reports a zero bound
  std::optional<double> zero = dvp_lower_bound(s, s, 1);
  REQUIRE(zero.has_value());
  CHECK(*zero == 0.0);

  // winding 0 difference fails the hypothesis for n = 1
  std::vector<cplx> c(grid, cplx(3.0, 1.0));
  CHECK(!dvp_lower_bound(c, g, 1).has_value());
}

TEST_CASE("Green equilibrium distribution") {
  GreenEquilibrium eq = green_equilibrium(-0.3, 0.3);
  double total = 0.0;
  for (double m : eq.mass) total += m;
  CHECK(std::abs(total - 1.0) < 1e-10);

  // symmetric interval, symmetric density
  size_t n = eq.density.size();
  for (size_t i = 0; i < n / 2; ++i)
    CHECK(std::abs(eq.density[i] - eq.density[n - 1 - i]) < 1e-8 * eq.density[n / 2]);

  // CDF is monotone and spans [0, 1]
  CHECK(eq.cdf(-0.31) == 0.0);
  CHECK(eq.cdf(0.31) == 1.0);
  double prev = 0.0;
  for (int j = 0; j <= 50; ++j) {
    double t = -0.3 + 0.6 * j / 50.0;
    double c = eq.cdf(t);
    CHECK(c >= prev - 1e-14);
    prev = c;
  }

  // a short interval is nearly unaffected by the disk: close to arcsine
  GreenEquilibrium tiny = green_equilibrium(-0.05, 0.05);
  double l1 = 0.0;
  for (size_t i = 0; i < tiny.x.size(); ++i) {
    double w = tiny.edges[i + 1] - tiny.edges[i];
    double arcsine = 1.0 / (pi * std::sqrt((tiny.x[i] + 0.05) * (0.05 - tiny.x[i])));
    l1 += std::abs(tiny.density[i] - arcsine) * w;
  }
  CHECK(l1 < 0.05);
}

TEST_CASE("Green kernel of the disk") {
  CHECK(std::abs(green_kernel_disk(0.3, -0.2) - (std::log(1.06) - std::log(0.5))) < 1e-14);
  CHECK(std::abs(green_kernel_disk(0.3, -0.2) - green_kernel_disk(-0.2, 0.3)) < 1e-14);
  CHECK(green_kernel_disk(0.1, 0.4) > 0.0);
}

TEST_CASE("comparison scheme interleaves the zeros") {
  TargetFunction F = markov(-0.4, 0.4);
  CriticalPointRecord rec = solve_critical(F, 4, starting_zeros(-0.4, 0.4, 4, 5));
  REQUIRE(rec.grad_norm < 1e-10);
  std::vector<double> xi;
  for (const cplx& p : rec.poles) xi.push_back(p.real());
  std::sort(xi.begin(), xi.end());

  SignedMeasureSamples nu = SignedMeasureSamples::two_omega(-0.4, 0.4);
  CHECK(std::abs(nu.total() - 2.0) < 1e-10);
  CHECK(std::abs(nu.variation() - 2.0) < 1e-10);

  InterpolationSet E = build_comparison_scheme(nu, rec);
  REQUIRE(E.size() == 3);
  REQUIRE(E.points.size() == 3);
  std::vector<double> y;
  for (const cplx& e : E.points) {
    cplx back = 1.0 / std::conj(e);  // nodes live at reflected auxiliary points
    CHECK(std::abs(back.imag()) < 1e-10);
    y.push_back(back.real());
  }
  std::sort(y.begin(), y.end());
  for (int j = 0; j < 3; ++j) {
    CHECK(y[j] > xi[j]);
    CHECK(y[j] < xi[j + 1]);
  }

  // wrong total mass is rejected
  SignedMeasureSamples bad = SignedMeasureSamples::from_samples(-0.4, 0.4,
                                                               std::vector<double>(64, 1.0));
  CHECK_THROWS_AS(build_comparison_scheme(bad, rec), std::invalid_argument);
}

TEST_CASE("comparison criterion against trivial candidates") {
  TargetFunction F = markov(-0.5, 0.5);
  CriticalPointRecord rec1 = solve_critical(F, 1, starting_zeros(-0.5, 0.5, 1, 2));
  REQUIRE(rec1.grad_norm < 1e-10);

  // Pi = 0 is admissible at n = 1: the ratio is huge and the winding matches
  CriterionReport zero = check_comparison_criterion(F, rec1, [](cplx) { return cplx(0.0); });
  CHECK(zero.winding == -1);
  CHECK(zero.min_ratio > 2.0);
  CHECK(zero.passed);

  // comparing the point against itself gives ratio zero, never a pass
  CriticalPointRecord rec2 = solve_critical(F, 2, starting_zeros(-0.5, 0.5, 2, 2));
  MonicPoly q = rec2.denominator();
  ComplexPoly L = rec2.numerator();
  CriterionReport self = check_comparison_criterion(
      F, rec2, [&](cplx z) { return L.eval(z) / q.poly().eval(z); });
  CHECK(self.min_ratio < 1e-6);
  CHECK(!self.passed);
}

TEST_CASE("strong asymptotics report shape") {
  TargetFunction F = markov(-0.5, 0.5);
  InterpolationScheme scheme;
  for (int n = 1; n <= 6; ++n) scheme.sets.push_back(InterpolationSet::all_at_infinity(n));
  AsymptoticsReport rep = verify_strong_asymptotics(F, scheme);
  REQUIRE(rep.rows.size() == 6);
  for (int i = 0; i < 6; ++i) {
    CHECK(rep.rows[i].n == i + 1);
    CHECK(rep.rows[i].sup_error > 0.0);
    CHECK(rep.rows[i].predicted > 0.0);
    if (i > 0) CHECK(rep.rows[i].sup_error < rep.rows[i - 1].sup_error);
  }
  CHECK(rep.rows[5].ratio_deviation < rep.rows[0].ratio_deviation);
}

TEST_CASE("pole diagnostics across degrees") {
  TargetFunction F = markov(-0.4, 0.4);
  std::vector<CriticalPointRecord> recs;
  for (int n = 2; n <= 4; ++n)
    recs.push_back(solve_critical(F, n, starting_zeros(-0.4, 0.4, n, 31)));

  PoleDiagnostics diag = pole_diagnostics(recs, -0.4, 0.4);
  REQUIRE(diag.rows.size() == 3);
  for (const PoleDiagnosticsRow& r : diag.rows) {
    CHECK(r.sum_abs_im < 1e-9);
    CHECK(r.max_abs_im < 1e-9);
    CHECK(r.ks_distance >= 0.0);
    CHECK(r.ks_distance <= 1.0);
    CHECK(std::is_sorted(r.re_roots.begin(), r.re_roots.end()));
    for (double x : r.re_roots) {
      CHECK(x > -0.4);
      CHECK(x < 0.4);
    }
  }

  std::vector<CriticalPointRecord> two(recs.begin(), recs.begin() + 2);
  CHECK_THROWS_AS(pole_diagnostics(two, -0.4, 0.4), std::invalid_argument);
}
