#include "ratl2/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "ratl2/szego.hpp"

namespace ratl2 {

namespace {

bool power_of_two(int m) { return m >= 2 && (m & (m - 1)) == 0; }

// F on the uniform circle grid of size m, through the shared cache when the
// size allows it.
std::vector<cplx> target_on_circle(const TargetFunction& F, int m) {
  if (power_of_two(m)) return F.circle_samples(m);
  std::vector<cplx> out(static_cast<size_t>(m));
  for (int j = 0; j < m; ++j) out[static_cast<size_t>(j)] = F.eval(CircleGrid::node(j, m));
  return out;
}

}  // namespace

CriterionReport check_comparison_criterion(const TargetFunction& F,
                                           const CriticalPointRecord& record,
                                           const std::function<cplx(cplx)>& Pi,
                                           int grid_size, const Tolerances& tol) {
  if (!record.irreducible)
    throw std::domain_error("check_comparison_criterion: record must be irreducible");
  if (grid_size < 16)
    throw std::invalid_argument("check_comparison_criterion: grid_size below 16");
  const MonicPoly q = record.denominator();
  const ComplexPoly L = record.numerator();

  CriterionReport rep;
  rep.n = record.degree;
  bool have_winding = false;
  int prev_winding = 0;
  for (int m = grid_size; m <= (1 << 20); m *= 2) {
    const std::vector<cplx>& fv = target_on_circle(F, m);
    double min_err = std::numeric_limits<double>::infinity();
    double min_ratio = std::numeric_limits<double>::infinity();
    std::vector<cplx> diff(static_cast<size_t>(m));
    for (int j = 0; j < m; ++j) {
      cplx t = CircleGrid::node(j, m);
      cplx e = fv[static_cast<size_t>(j)] - L.eval(t) / q.eval(t);
      cplx d = fv[static_cast<size_t>(j)] - Pi(t);
      diff[static_cast<size_t>(j)] = d;
      min_err = std::min(min_err, std::abs(e));
      min_ratio = std::min(min_ratio, std::abs(1.0 - d / e));
    }
    if (min_err <= tol.tau_zero)
      throw std::domain_error(
          "check_comparison_criterion: error function vanishes on the circle, "
          "criterion inapplicable");
    rep.min_ratio = min_ratio;
    rep.grid = m;
    int w;
    try {
      w = winding_number(diff, tol);
    } catch (const resolution_error&) {
      have_winding = false;
      continue;
    }
    if (have_winding && w == prev_winding) {
      rep.winding = w;
      rep.passed = (rep.min_ratio > 2.0) && (rep.winding == 1 - 2 * rep.n);
      return rep;
    }
    prev_winding = w;
    have_winding = true;
  }
  throw resolution_error("check_comparison_criterion: winding did not stabilize");
}

std::vector<cplx> circle_contour(double radius, int points) {
  if (!(radius > 0.0) || points < 8)
    throw std::invalid_argument("circle_contour: need radius > 0 and at least 8 points");
  std::vector<cplx> out(static_cast<size_t>(points));
  for (int j = 0; j < points; ++j)
    out[static_cast<size_t>(j)] =
        radius * std::exp(iu * (2.0 * pi * static_cast<double>(j) / points));
  return out;
}

namespace {

struct AsympCase {
  int n = 0;
  InterpolationSet nodes;
  std::function<cplx(cplx)> error;  // (F - Pi_n)(z)
};

AsymptoticsReport run_asymptotics(const TargetFunction& F, std::vector<AsympCase> cases,
                                  std::vector<cplx> contour, const Tolerances& tol) {
  if (!F.measure())
    throw std::domain_error("verify_strong_asymptotics: target has no measure part");
  const MeasureM& mu = *F.measure();
  const double a = mu.a(), b = mu.b();
  if (contour.empty()) contour = circle_contour();
  for (cplx z : contour)
    if (segment_distance(z, a, b) <= tol.tau_margin ||
        (!F.rational().empty() && F.rational().min_distance(z) <= tol.tau_margin))
      throw std::domain_error("verify_strong_asymptotics: contour touches the cut or a pole");

  SzegoData szego(mu);
  cplx gm = szego.geometric_mean();
  InterpolationSet lambda;  // poles of the rational part with multiplicity
  for (const PolePart& part : F.rational().parts)
    for (int l = 0; l < part.mult; ++l) lambda.points.push_back(part.pole);

  AsymptoticsReport rep;
  for (AsympCase& c : cases) {
    AsymptoticsRow row;
    row.n = c.n;
    double dev = 0.0;
    for (cplx z : contour) {
      cplx w = sqrt_branch(z, a, b);
      cplx actual = c.error(z) * w;
      cplx ratio = szego.eval(z) * blaschke_product(c.nodes, z, a, b) /
                   blaschke_product(lambda, z, a, b);
      cplx pred = 2.0 * gm * ratio * ratio;
      row.sup_error = std::max(row.sup_error, std::abs(actual));
      row.predicted = std::max(row.predicted, std::abs(pred));
      if (std::abs(pred) > 0.0) dev = std::max(dev, std::abs(actual / pred - 1.0));
    }
    row.ratio_deviation = dev;
    rep.rows.push_back(row);
  }
  std::sort(rep.rows.begin(), rep.rows.end(),
            [](const AsymptoticsRow& x, const AsymptoticsRow& y) { return x.n < y.n; });
  return rep;
}

}  // namespace

AsymptoticsReport verify_strong_asymptotics(const TargetFunction& F,
                                            const InterpolationScheme& scheme,
                                            const std::vector<cplx>& contour,
                                            const Tolerances& tol) {
  std::vector<AsympCase> cases;
  for (const InterpolationSet& E : scheme.sets) {
    AsympCase c;
    c.n = E.size();
    c.nodes = E;
    PadeApproximant P = build_pade(F, E, tol);
    c.error = pade_error_evaluator(F, P);
    cases.push_back(std::move(c));
  }
  return run_asymptotics(F, std::move(cases), contour, tol);
}

AsymptoticsReport verify_strong_asymptotics(const TargetFunction& F,
                                            const std::vector<CriticalPointRecord>& records,
                                            const std::vector<cplx>& contour,
                                            const Tolerances& tol) {
  std::vector<AsympCase> cases;
  for (const CriticalPointRecord& rec : records) {
    AsympCase c;
    c.n = rec.degree;
    for (cplx xi : rec.poles) {
      if (std::abs(xi) < 1e-8)
        c.nodes.at_infinity += 1;
      else
        c.nodes.points.push_back(1.0 / std::conj(xi));
    }
    // F - L/q = u * reciprocal(q) / q with u supported on negative powers:
    // every factor is evaluated without cancellation.
    MonicPoly q = rec.denominator();
    RemainderData rd = projection_remainder(F, q, tol);
    ComplexPoly qt = reciprocal(q.poly(), q.degree());
    c.error = [q, qt, u = rd.u](cplx z) { return u.eval(z) * qt.eval(z) / q.eval(z); };
    cases.push_back(std::move(c));
  }
  return run_asymptotics(F, std::move(cases), contour, tol);
}

PoleDiagnostics pole_diagnostics(const std::vector<CriticalPointRecord>& records,
                                 double a, double b) {
  std::set<int> degrees;
  for (const CriticalPointRecord& rec : records) degrees.insert(rec.degree);
  if (degrees.size() < 3)
    throw std::invalid_argument("pole_diagnostics: need at least three distinct degrees");
  GreenEquilibrium eq = green_equilibrium(a, b);

  PoleDiagnostics out;
  for (const CriticalPointRecord& rec : records) {
    PoleDiagnosticsRow row;
    row.n = rec.degree;
    for (cplx xi : rec.poles) {
      double im = std::abs(std::imag(xi));
      row.sum_abs_im += im;
      row.max_abs_im = std::max(row.max_abs_im, im);
      row.re_roots.push_back(std::real(xi));
    }
    std::sort(row.re_roots.begin(), row.re_roots.end());
    int k = static_cast<int>(row.re_roots.size());
    for (int i = 0; i < k; ++i) {
      double cv = eq.cdf(row.re_roots[static_cast<size_t>(i)]);
      row.ks_distance = std::max(row.ks_distance, std::abs(cv - static_cast<double>(i) / k));
      row.ks_distance =
          std::max(row.ks_distance, std::abs(static_cast<double>(i + 1) / k - cv));
    }
    out.rows.push_back(std::move(row));
  }
  std::sort(out.rows.begin(), out.rows.end(),
            [](const PoleDiagnosticsRow& x, const PoleDiagnosticsRow& y) { return x.n < y.n; });
  return out;
}

}  // namespace ratl2
