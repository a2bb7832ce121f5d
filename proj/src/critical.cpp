#include "ratl2/critical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ratl2/pade.hpp"

namespace ratl2 {

namespace {

void require_solvable(const TargetFunction& F) {
  if (!F.interior_rational_only())
    throw std::domain_error("critical: rational part must have all poles inside the disk");
}

double l2_norm(const std::vector<cplx>& v) {
  double s = 0.0;
  for (cplx z : v) s += std::norm(z);
  return std::sqrt(s);
}

// One projection pass at fixed q: Gram solve for L plus per-node residuals.
// The factorization and coefficient vector stay around for second-order work.
struct Pass {
  int m = 0, n = 0;
  ComplexPoly qt;  // reciprocal of q
  ComplexPoly L;
  std::vector<cplx> qv, Lv, err;  // values over the circle grid
  double value_grid = 0.0;
  double f_norm_sq = 0.0;
  double gram_cond = 0.0;
  Eigen::LDLT<Eigen::MatrixXcd> ldlt;
  Eigen::VectorXcd c;
};

Pass run_pass(const TargetFunction& F, const MonicPoly& q, const Tolerances& tol) {
  require_solvable(F);
  int n = q.degree();
  if (n < 1) throw std::invalid_argument("critical: denominator degree must be >= 1");
  double rmax = q.max_root_modulus();
  if (rmax >= 1.0 - tol.tau_margin)
    throw std::domain_error("critical: zero of q within margin of the unit circle");

  Pass w;
  w.n = n;
  w.m = grid_size_for(std::max(F.rho(), rmax), n);
  const std::vector<cplx>& fs = F.circle_samples(w.m);

  std::vector<cplx> ring(static_cast<size_t>(2 * n - 1), cplx{0.0});
  std::vector<cplx> rhs(static_cast<size_t>(n), cplx{0.0});
  w.qv.resize(static_cast<size_t>(w.m));
  double fn2 = 0.0;
  for (int j = 0; j < w.m; ++j) {
    cplx tau = CircleGrid::node(j, w.m);
    cplx qvj = q.eval(tau);
    w.qv[static_cast<size_t>(j)] = qvj;
    double inv_q2 = 1.0 / std::norm(qvj);
    cplx fv = fs[static_cast<size_t>(j)];
    fn2 += std::norm(fv);
    cplx tpow{1.0};
    for (int d = 0; d < n; ++d) {
      ring[static_cast<size_t>(n - 1 + d)] += tpow * inv_q2;
      rhs[static_cast<size_t>(d)] += fv * std::conj(tpow / qvj);
      tpow *= tau;
    }
  }
  double inv_m = 1.0 / static_cast<double>(w.m);
  w.f_norm_sq = fn2 * inv_m;
  for (int d = 0; d < n; ++d) ring[static_cast<size_t>(n - 1 + d)] *= inv_m;
  for (int d = 1; d < n; ++d)
    ring[static_cast<size_t>(n - 1 - d)] = std::conj(ring[static_cast<size_t>(n - 1 + d)]);
  Eigen::MatrixXcd G(n, n);
  Eigen::VectorXcd beta(n);
  for (int k = 0; k < n; ++k) {
    beta(k) = rhs[static_cast<size_t>(k)] * inv_m;
    for (int j = 0; j < n; ++j) G(k, j) = ring[static_cast<size_t>(n - 1 + (j - k))];
  }
  w.ldlt.compute(G);
  w.c = w.ldlt.solve(beta);
  w.c += w.ldlt.solve(beta - G * w.c);  // one refinement pass squeezes the residual
  {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G);
    double lmin = es.eigenvalues().minCoeff(), lmax = es.eigenvalues().maxCoeff();
    w.gram_cond = (lmin > 0.0) ? lmax / lmin : std::numeric_limits<double>::infinity();
  }
  std::vector<cplx> lc(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) lc[static_cast<size_t>(k)] = w.c(k);
  w.L = ComplexPoly(lc);

  w.qt = reciprocal(q.poly(), n);
  w.Lv.resize(static_cast<size_t>(w.m));
  w.err.resize(static_cast<size_t>(w.m));
  double vg = 0.0;
  for (int j = 0; j < w.m; ++j) {
    cplx tau = CircleGrid::node(j, w.m);
    cplx Lvj = w.L.eval(tau);
    w.Lv[static_cast<size_t>(j)] = Lvj;
    cplx e = fs[static_cast<size_t>(j)] - Lvj / w.qv[static_cast<size_t>(j)];
    w.err[static_cast<size_t>(j)] = e;
    vg += std::norm(e);
  }
  w.value_grid = vg * inv_m;
  return w;
}

// Squared error by the grid route only, for line searches.
double phi_grid(const TargetFunction& F, const MonicPoly& q, const Tolerances& tol) {
  return run_pass(F, q, tol).value_grid;
}

RemainderData remainder_from_pass(const Pass& w, const TargetFunction& F,
                                  const MonicPoly& q) {
  RemainderData rd;
  rd.numerator = w.L;
  rd.value_grid = w.value_grid;
  rd.f_norm_sq = w.f_norm_sq;
  rd.gram_cond = w.gram_cond;
  rd.grid_m = w.m;
  CircleGrid ug;
  ug.m = w.m;
  ug.values.resize(static_cast<size_t>(w.m));
  for (int j = 0; j < w.m; ++j) {
    cplx tau = CircleGrid::node(j, w.m);
    ug.values[static_cast<size_t>(j)] =
        w.err[static_cast<size_t>(j)] * w.qv[static_cast<size_t>(j)] / w.qt.eval(tau);
  }
  double nonneg = 0.0;
  rd.u = negative_part(ug, tail_length(w.n), &nonneg);
  rd.u.rho = std::max(F.rho(), q.max_root_modulus());
  rd.analytic_defect = std::sqrt(nonneg);
  rd.value_coeff = rd.u.norm_sq();
  return rd;
}

void check_routes(const RemainderData& rd) {
  if (rd.analytic_defect > 1e-9 * std::max(1.0, std::sqrt(rd.value_grid)))
    throw numerical_error("critical: remainder has nonnegative-index content");
  double floor = 1e-24 * std::max(1.0, rd.f_norm_sq);
  if (rd.value_grid > floor) {
    double rel = std::abs(rd.value_grid - rd.value_coeff) / rd.value_grid;
    if (rel > 1e-8)
      throw numerical_error("critical: grid and coefficient error routes disagree");
  }
}

}  // namespace

RemainderData projection_remainder(const TargetFunction& F, const MonicPoly& q,
                                   const Tolerances& tol) {
  Pass w = run_pass(F, q, tol);
  return remainder_from_pass(w, F, q);
}

std::vector<cplx> remainder_on_circle_contour(const TargetFunction& F, const MonicPoly& q,
                                              double rho_contour, int contour_m,
                                              int circle_m) {
  require_solvable(F);
  int n = q.degree();
  ComplexPoly L = project_onto_vq_contour(F.evaluator(), q, rho_contour, contour_m);
  ComplexPoly qt = reciprocal(q.poly(), n);
  std::vector<cplx> tvals(static_cast<size_t>(contour_m)), wgt(static_cast<size_t>(contour_m));
  for (int j = 0; j < contour_m; ++j) {
    cplx t = rho_contour * CircleGrid::node(j, contour_m);
    tvals[static_cast<size_t>(j)] = t;
    // u(z) = mean_t (F q - L)(t)/qt(t) * t/(z - t) picks up the outer part.
    wgt[static_cast<size_t>(j)] =
        (F.eval(t) * q.eval(t) - L.eval(t)) / qt.eval(t) * t / static_cast<double>(contour_m);
  }
  std::vector<cplx> out(static_cast<size_t>(circle_m));
  for (int i = 0; i < circle_m; ++i) {
    cplx z = CircleGrid::node(i, circle_m);
    cplx s{0.0};
    for (int j = 0; j < contour_m; ++j)
      s += wgt[static_cast<size_t>(j)] / (z - tvals[static_cast<size_t>(j)]);
    out[static_cast<size_t>(i)] = s;
  }
  return out;
}

double error_functional(const TargetFunction& F, const MonicPoly& q, const Tolerances& tol) {
  RemainderData rd = projection_remainder(F, q, tol);
  check_routes(rd);
  return rd.value_coeff;
}

std::vector<cplx> error_gradient(const TargetFunction& F, const MonicPoly& q,
                                 const Tolerances& tol) {
  Pass w = run_pass(F, q, tol);
  std::vector<cplx> g(static_cast<size_t>(w.n), cplx{0.0});
  for (int j = 0; j < w.m; ++j) {
    cplx tau = CircleGrid::node(j, w.m);
    cplx base = w.Lv[static_cast<size_t>(j)] /
                (w.qv[static_cast<size_t>(j)] * w.qv[static_cast<size_t>(j)]) *
                std::conj(w.err[static_cast<size_t>(j)]);
    cplx tpow{1.0};
    for (int k = 0; k < w.n; ++k) {
      g[static_cast<size_t>(k)] -= tpow * base;
      tpow *= tau;
    }
  }
  for (cplx& v : g) v /= static_cast<double>(w.m);
  return g;
}

HessianForm error_hessian(const TargetFunction& F, const MonicPoly& q, const Tolerances& tol) {
  Pass w = run_pass(F, q, tol);
  if (common_factor_degree(w.L, q, tol) > 0)
    throw std::domain_error("error_hessian: numerator and denominator share a factor");
  int n = w.n, m = w.m;

  // Second ring: mean(tau^d / (q^2 conj q)) for d = -(n-1) .. (2n-2), feeding
  // the derivative of the Gram matrix in each coefficient of q.
  std::vector<cplx> ring2(static_cast<size_t>(3 * n - 2), cplx{0.0});
  for (int j = 0; j < m; ++j) {
    cplx tau = CircleGrid::node(j, m);
    cplx qvj = w.qv[static_cast<size_t>(j)];
    cplx base = 1.0 / (qvj * qvj * std::conj(qvj));
    cplx tpow = std::pow(tau, static_cast<double>(-(n - 1)));
    for (int d = -(n - 1); d <= 2 * n - 2; ++d) {
      ring2[static_cast<size_t>(d + n - 1)] += tpow * base;
      tpow *= tau;
    }
  }
  for (cplx& v : ring2) v /= static_cast<double>(m);

  // dL/dq_j solves the differentiated normal equations with the same factor:
  // G dc_j = -(dG/dq_j) c, (dG/dq_j)_{k,j'} = -ring2[j' + j - k].
  std::vector<Eigen::VectorXcd> dc(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    Eigen::VectorXcd r(n);
    for (int k = 0; k < n; ++k) {
      cplx s{0.0};
      for (int jp = 0; jp < n; ++jp) s += ring2[static_cast<size_t>(jp + j - k + n - 1)] * w.c(jp);
      r(k) = s;
    }
    dc[static_cast<size_t>(j)] = w.ldlt.solve(r);
  }

  // nu_j = (q dL_j - z^j L) / reciprocal(q): sampled on the grid (the values
  // are stable there, |reciprocal(q)| = |q|), then read off as a polynomial of
  // degree < n through the discrete transform; content elsewhere must vanish.
  std::vector<std::vector<cplx>> nu_vals(static_cast<size_t>(n));
  std::vector<ComplexPoly> nu(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    ComplexPoly dLj;
    {
      std::vector<cplx> cc(static_cast<size_t>(n));
      for (int k = 0; k < n; ++k) cc[static_cast<size_t>(k)] = dc[static_cast<size_t>(j)](k);
      dLj = ComplexPoly(cc);
    }
    CircleGrid g;
    g.m = m;
    g.values.resize(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) {
      cplx tau = CircleGrid::node(i, m);
      cplx num = w.qv[static_cast<size_t>(i)] * dLj.eval(tau) -
                 std::pow(tau, static_cast<double>(j)) * w.Lv[static_cast<size_t>(i)];
      g.values[static_cast<size_t>(i)] = num / w.qt.eval(tau);
    }
    std::vector<cplx> coef = circle_fft(g);
    double total = 0.0, kept = 0.0;
    for (const cplx& v : coef) total += std::norm(v);
    std::vector<cplx> pc(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
      pc[static_cast<size_t>(k)] = coef[static_cast<size_t>(k)];
      kept += std::norm(coef[static_cast<size_t>(k)]);
    }
    double defect = std::sqrt(std::max(0.0, total - kept));
    if (total > 0.0 && defect > tol.tau_series * std::sqrt(total) + 1e-300)
      throw numerical_error("error_hessian: variation field is not polynomial of low degree");
    nu[static_cast<size_t>(j)] = ComplexPoly(pc);
    nu_vals[static_cast<size_t>(j)] = std::move(g.values);
  }

  // Outer-space factor of the remainder: w_sigma = (F - L/q) q / (qt conj(q))
  // on the circle; it must carry no nonnegative-index content.
  CircleGrid ws;
  ws.m = m;
  ws.values.resize(static_cast<size_t>(m));
  double ws_norm2 = 0.0;
  for (int i = 0; i < m; ++i) {
    cplx tau = CircleGrid::node(i, m);
    cplx qvj = w.qv[static_cast<size_t>(i)];
    cplx v = w.err[static_cast<size_t>(i)] * qvj / (w.qt.eval(tau) * std::conj(qvj));
    ws.values[static_cast<size_t>(i)] = v;
    ws_norm2 += std::norm(v);
  }
  ws_norm2 /= static_cast<double>(m);
  {
    std::vector<cplx> wc = circle_fft(ws);
    double nonneg = 0.0;
    for (int k = 0; k <= m / 2; ++k) nonneg += std::norm(wc[static_cast<size_t>(k)]);
    // The gate is floored at the norm of F: residuals of the critical
    // equations surface here amplified by the conditioning of the reflected
    // point geometry, so machine-exact membership is not reachable.
    double scale = std::max(std::sqrt(ws_norm2), std::sqrt(w.f_norm_sq));
    if (std::sqrt(nonneg) > 1e-6 * scale + 1e-300)
      throw numerical_error("error_hessian: remainder factor leaves the outer space");
    // The true factor carries no nonnegative-index content; what the samples
    // picked up is spurious and would poison the small eigenvalues, so it is
    // projected away rather than merely tolerated.
    for (int k = 0; k <= m / 2; ++k) wc[static_cast<size_t>(k)] = cplx{0.0};
    ws = circle_ifft(wc);
  }

  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(n, n);
  Eigen::MatrixXcd B = Eigen::MatrixXcd::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      cplx a{0.0}, b{0.0};
      for (int i = 0; i < m; ++i) {
        cplx tau = CircleGrid::node(i, m);
        cplx qvj = w.qv[static_cast<size_t>(i)];
        a += std::pow(tau, static_cast<double>(j)) * nu_vals[static_cast<size_t>(k)][static_cast<size_t>(i)] /
             qvj * std::conj(ws.values[static_cast<size_t>(i)]);
        b += nu_vals[static_cast<size_t>(j)][static_cast<size_t>(i)] *
             std::conj(nu_vals[static_cast<size_t>(k)][static_cast<size_t>(i)]) / std::norm(qvj);
      }
      A(j, k) = 2.0 * a / static_cast<double>(m);
      B(j, k) = b / static_cast<double>(m);
    }
  }
  double scale = A.norm() + B.norm();
  if (scale > 0.0 && (A - A.transpose()).norm() > 1e-8 * scale)
    throw numerical_error("error_hessian: second-order block lost its symmetry");
  HessianForm h;
  h.sym = 0.5 * (A + A.transpose());
  h.herm = 0.5 * (B + B.adjoint());
  return h;
}

Eigen::MatrixXd HessianForm::as_real() const {
  int n = static_cast<int>(sym.rows());
  Eigen::MatrixXd rs = sym.real(), is = sym.imag();
  Eigen::MatrixXd rb = herm.real(), ib = herm.imag();
  Eigen::MatrixXd H(2 * n, 2 * n);
  H.topLeftCorner(n, n) = 2.0 * (rs + rb);
  H.bottomRightCorner(n, n) = 2.0 * (rb - rs);
  H.topRightCorner(n, n) = 2.0 * (ib - is);
  H.bottomLeftCorner(n, n) = H.topRightCorner(n, n).transpose();
  return H;
}

double HessianForm::quadratic(const std::vector<cplx>& v) const {
  int n = static_cast<int>(sym.rows());
  if (static_cast<int>(v.size()) != n)
    throw std::invalid_argument("HessianForm::quadratic: direction has wrong length");
  cplx s{0.0}, h{0.0};
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      s += v[static_cast<size_t>(j)] * v[static_cast<size_t>(k)] * sym(j, k);
      h += v[static_cast<size_t>(j)] * std::conj(v[static_cast<size_t>(k)]) * herm(j, k);
    }
  return 2.0 * std::real(s + h);
}

int morse_index(const HessianForm& h) {
  Eigen::MatrixXd H = h.as_real();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
  double scale = 0.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i)
    scale = std::max(scale, std::abs(es.eigenvalues()(i)));
  int idx = 0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    double e = es.eigenvalues()(i);
    if (std::abs(e) <= 1e-9 * scale)
      throw numerical_error("morse_index: eigenvalue at the degeneracy threshold");
    if (e < 0.0) ++idx;
  }
  return idx;
}

int common_factor_degree(const ComplexPoly& L, const MonicPoly& q, const Tolerances& tol) {
  if (L.is_zero()) return q.degree();
  std::vector<cplx> lr = L.roots();
  std::vector<cplx> qr = q.roots();
  std::vector<bool> used(qr.size(), false);
  int matched = 0;
  for (cplx r : lr) {
    int best = -1;
    double bd = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < qr.size(); ++i) {
      if (used[i]) continue;
      double d = std::abs(r - qr[i]);
      if (d < bd) {
        bd = d;
        best = static_cast<int>(i);
      }
    }
    if (best >= 0 && bd < tol.tau_gcd) {
      used[static_cast<size_t>(best)] = true;
      ++matched;
    }
  }
  return matched;
}

MonicPoly CriticalPointRecord::denominator() const { return MonicPoly(ComplexPoly(q_coeffs)); }

ComplexPoly CriticalPointRecord::numerator() const { return ComplexPoly(L_coeffs); }

std::uint64_t split_mix(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::vector<cplx> starting_zeros(double a, double b, int degree, std::uint64_t seed) {
  if (!(a < b)) throw std::invalid_argument("starting_zeros: need a < b");
  if (degree < 1) throw std::invalid_argument("starting_zeros: degree must be >= 1");
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double rho_max = std::max(1.0, 0.9 / half);
  std::uint64_t state = seed;
  auto unit = [&state]() {
    return static_cast<double>(split_mix(state) >> 11) * 0x1.0p-53;
  };
  std::vector<cplx> out;
  out.reserve(static_cast<size_t>(degree));
  for (int i = 0; i < degree; ++i) {
    cplx z;
    for (int tries = 0; tries < 100; ++tries) {
      double rho = 1.0 + (rho_max - 1.0) * unit();
      double th = 2.0 * pi * unit();
      cplx u = rho * std::exp(iu * th);
      z = mid + 0.5 * half * (u + 1.0 / u);
      if (std::abs(z) < 1.0 - 1e-3) break;
      z = mid;  // fall back onto the segment when the ellipse pokes out
    }
    out.push_back(z);
  }
  return out;
}

namespace {

std::vector<cplx> sorted_points(std::vector<cplx> v) {
  std::sort(v.begin(), v.end(), [](cplx x, cplx y) {
    if (std::real(x) != std::real(y)) return std::real(x) < std::real(y);
    return std::imag(x) < std::imag(y);
  });
  return v;
}

double max_displacement(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  std::vector<cplx> sa = sorted_points(a), sb = sorted_points(b);
  double d = 0.0;
  for (size_t i = 0; i < sa.size() && i < sb.size(); ++i)
    d = std::max(d, std::abs(sa[i] - sb[i]));
  if (sa.size() != sb.size()) d = std::numeric_limits<double>::infinity();
  return d;
}

// Pull escaped zeros back: reflect across the circle, then keep a strict gap.
void confine_zeros(std::vector<cplx>& zeros, double gap, bool* reflected, bool* clamped) {
  for (cplx& z : zeros) {
    double r = std::abs(z);
    if (r > 1.0) {
      z = 1.0 / std::conj(z);
      if (reflected) *reflected = true;
      r = std::abs(z);
    }
    if (r > 1.0 - gap) {
      z *= (1.0 - gap) / r;
      if (clamped) *clamped = true;
    }
  }
}

struct GradStatus {
  Eigen::VectorXd G;
  double gnorm = 0.0;
  bool ok = false;
};

bool has_flag(const CriticalPointRecord& rec, const char* name) {
  for (const std::string& f : rec.flags)
    if (f == name) return true;
  return false;
}

// A pure Cauchy transform of a sign-definite real density admits an exact
// reformulation of the critical equations: contour deformation of the
// double-interpolation conditions onto the segment turns them into
//   integral x^k q(x) dmu(x) / qt(x)^2 = 0,  k = 0..n-1,
// with qt the reflected polynomial of q.  A critical denominator is thus the
// monic orthogonal polynomial for the varying weight |density| / qt^2, and
// every critical point is a fixed point of q -> OP_n(dmu / qt^2).  The
// detection gate samples the density on the arcsine nodes.
bool sign_definite_markov_target(const TargetFunction& F) {
  if (!F.measure() || !F.rational().empty()) return false;
  const std::vector<cplx>& d = F.measure()->density_at_nodes(512);
  double scale = 0.0;
  for (const cplx& v : d) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return false;
  bool pos = d.front().real() > 0.0;
  for (const cplx& v : d) {
    if (std::abs(std::imag(v)) > 1e-12 * scale) return false;
    if ((v.real() > 0.0) != pos || v.real() == 0.0) return false;
  }
  return true;
}

// One application of the orthogonality map: weight |density(x)| / qt(x)^2 at
// the arcsine nodes, Stieltjes recurrence, zeros as Jacobi matrix
// eigenvalues.  The reflected factor never vanishes on the segment, the
// weight is positive, and all output zeros are real in (a, b); the whole step
// runs at full relative accuracy, far below the plain-gradient floor.
std::vector<double> orthogonality_step(const MeasureM& mu,
                                       const std::vector<double>& x,
                                       const std::vector<double>& dens,
                                       const std::vector<cplx>& zeros) {
  const size_t m = x.size();
  const int n = static_cast<int>(zeros.size());
  std::vector<double> w(m);
  for (size_t j = 0; j < m; ++j) {
    // only |qt|^2 enters, so each factor contributes through its modulus
    double qt = 1.0;
    for (const cplx& z : zeros) qt *= std::abs(1.0 - std::conj(z) * x[j]);
    w[j] = dens[j] / (qt * qt);
  }
  // monic Stieltjes recurrence evaluated on the nodes
  std::vector<double> pkm(m, 0.0), pk(m, 1.0);
  Eigen::VectorXd alpha(n), beta(n);
  double nrm_prev = 0.0;
  for (int k = 0; k < n; ++k) {
    double nrm = 0.0, xav = 0.0;
    for (size_t j = 0; j < m; ++j) {
      double t = w[j] * pk[j] * pk[j];
      nrm += t;
      xav += t * x[j];
    }
    alpha(k) = xav / nrm;
    beta(k) = k == 0 ? 0.0 : nrm / nrm_prev;
    if (k + 1 < n) {
      for (size_t j = 0; j < m; ++j) {
        double next = (x[j] - alpha(k)) * pk[j] - (k == 0 ? 0.0 : beta(k) * pkm[j]);
        pkm[j] = pk[j];
        pk[j] = next;
      }
    }
    nrm_prev = nrm;
  }
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    J(k, k) = alpha(k);
    if (k > 0) {
      double b = std::sqrt(beta(k));
      J(k, k - 1) = b;
      J(k - 1, k) = b;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  std::vector<double> roots(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    double r = es.eigenvalues()(k);
    roots[static_cast<size_t>(k)] = std::clamp(r, mu.a(), mu.b());
  }
  return roots;
}

}  // namespace

CriticalPointRecord solve_critical(const TargetFunction& F, int degree,
                                   const std::vector<cplx>& start_zeros,
                                   const Tolerances& tol,
                                   std::vector<IterateLog>* iterates) {
  require_solvable(F);
  if (degree < 1) throw std::invalid_argument("solve_critical: degree must be >= 1");
  if (static_cast<int>(start_zeros.size()) != degree)
    throw std::invalid_argument("solve_critical: need exactly degree starting zeros");

  const int n = degree;
  const double gap = 10.0 * tol.tau_margin;
  CriticalPointRecord rec;
  rec.degree = n;

  bool reflected = false, clamped_any = false, clamped_last = false;
  std::vector<cplx> zeros = start_zeros;
  confine_zeros(zeros, gap, &reflected, &clamped_any);
  MonicPoly q = MonicPoly::from_roots(zeros);

  auto log_state = [&](double disp) {
    if (!iterates) return;
    RemainderData rd = projection_remainder(F, q, tol);
    iterates->push_back({rd.value_grid, rd.value_coeff, disp});
  };

  // A near-exact match at the starting denominator means F sits in a lower
  // approximation class; there is nothing to iterate on then.
  {
    Pass w = run_pass(F, q, tol);
    if (w.value_grid <= tol.tau_zero * std::max(1.0, w.f_norm_sq)) {
      rec.flags.push_back("target_in_lower_class");
    }
  }

  int iter = 0;
  const int max_it = tol.max_iterations;
  const int fp_budget = std::max(10, (3 * max_it) / 5);

  // Stage 1: interpolation fixed point.  The next denominator comes from the
  // multipoint approximant at the reflections of the current zeros (each node
  // carries an implicit double multiplicity).  Zeros close to the origin
  // reflect to nodes at infinity.
  std::vector<double> disps;
  if (rec.flags.empty()) {
    while (iter < fp_budget) {
      InterpolationSet E;
      for (cplx z : sorted_points(zeros)) {
        if (std::abs(z) < 1e-8) {
          E.at_infinity += 1;
        } else {
          E.points.push_back(1.0 / std::conj(z));
        }
      }
      PadeApproximant P;
      try {
        P = build_pade(F, E, tol);
      } catch (const std::exception&) {
        rec.flags.push_back("interpolation_step_failed");
        break;
      }
      if (!P.full_degree || P.denominator.degree() != n) {
        rec.flags.push_back("interpolation_step_degenerate");
        break;
      }
      // A numerically two-dimensional null space still yields a usable
      // fixed-point step; note it and continue rather than abandoning the
      // contraction.
      if (P.degenerate && !has_flag(rec, "interpolation_step_degenerate"))
        rec.flags.push_back("interpolation_step_degenerate");
      std::vector<cplx> next = P.denominator.roots();
      bool cl = false;
      confine_zeros(next, gap, &reflected, &cl);
      clamped_any = clamped_any || cl;
      clamped_last = cl;
      double disp = max_displacement(zeros, next);
      zeros = std::move(next);
      q = MonicPoly::from_roots(zeros);
      ++iter;
      log_state(disp);
      disps.push_back(disp);
      if (disp < tol.fixed_point_switch) break;
      // Cycling or a plateau wastes the budget; Newton can take over early.
      size_t k = disps.size();
      if (k >= 12 && disps[k - 1] > 0.5 * disps[k - 9]) break;
    }
  }

  // Stage 2: Newton on the real gradient in the coefficients of q, merit
  // ||grad||^2 so saddle-type critical points are reachable as well.
  auto coeffs_of = [&](const MonicPoly& p) {
    Eigen::VectorXd u(2 * n);
    for (int k = 0; k < n; ++k) {
      cplx ck = p.poly().coeff(k);
      u(k) = std::real(ck);
      u(n + k) = std::imag(ck);
    }
    return u;
  };
  auto poly_of = [&](const Eigen::VectorXd& u) {
    std::vector<cplx> c(static_cast<size_t>(n + 1));
    for (int k = 0; k < n; ++k) c[static_cast<size_t>(k)] = cplx{u(k), u(n + k)};
    c[static_cast<size_t>(n)] = cplx{1.0};
    return MonicPoly(ComplexPoly(c));
  };
  auto grad_at = [&](const Eigen::VectorXd& u) {
    GradStatus s;
    s.G.resize(2 * n);
    try {
      MonicPoly p = poly_of(u);
      if (p.max_root_modulus() >= 1.0 - tol.tau_margin) return s;
      std::vector<cplx> g = error_gradient(F, p, tol);
      for (int k = 0; k < n; ++k) {
        s.G(k) = 2.0 * std::real(g[static_cast<size_t>(k)]);
        s.G(n + k) = -2.0 * std::imag(g[static_cast<size_t>(k)]);
      }
      s.gnorm = l2_norm(g);
      s.ok = true;
    } catch (const std::exception&) {
      s.ok = false;
    }
    return s;
  };

  Eigen::VectorXd u = coeffs_of(q);
  double gnorm = std::numeric_limits<double>::infinity();
  bool converged = false;
  if (!rec.flags.empty() && rec.flags.front() == "target_in_lower_class") {
    converged = true;  // nothing to iterate on
    GradStatus s0 = grad_at(u);
    gnorm = s0.ok ? s0.gnorm : 0.0;
  }
  // The loop pushes past tol_crit toward the round-off floor: the extra
  // Newton steps are cheap and sharpen the point for deduplication.  Once
  // below the gate, a step that no longer halves the gradient means the
  // floor is reached and further grinding is pointless.
  const double gnorm_target = 1e-3 * tol.tol_crit;
  const double far_from_critical = 1e3 * tol.tol_crit;
  double prev_gnorm = std::numeric_limits<double>::infinity();
  std::vector<double> merits;
  int boundary_streak = 0;
  while (!converged && iter < max_it) {
    GradStatus s = grad_at(u);
    if (!s.ok) {
      rec.flags.push_back("gradient_evaluation_failed");
      break;
    }
    gnorm = s.gnorm;
    if (gnorm < gnorm_target || (gnorm < tol.tol_crit && gnorm > 0.5 * prev_gnorm)) {
      converged = true;
      break;
    }
    prev_gnorm = gnorm;
    // Zeros glued to the unit circle force enormous tail grids and mark a
    // start that left every basin; give up early rather than grind.
    if (gnorm > far_from_critical && q.max_root_modulus() > 0.99) {
      if (++boundary_streak >= 3) {
        rec.flags.push_back("boundary_divergence");
        break;
      }
    } else {
      boundary_streak = 0;
    }
    // Newton matrix: central differences of the gradient.  The analytic
    // Hessian is not a substitute away from criticality (its derivation
    // assumes the critical equations hold), so it is reserved for the final
    // classification.
    Eigen::MatrixXd J(2 * n, 2 * n);
    bool jac_ok = false;
    {
      jac_ok = true;
      for (int i = 0; i < 2 * n && jac_ok; ++i) {
        double h = 1e-6 * std::max(1.0, std::abs(u(i)));
        Eigen::VectorXd up = u, um = u;
        up(i) += h;
        um(i) -= h;
        GradStatus sp = grad_at(up), sm = grad_at(um);
        if (!sp.ok || !sm.ok) {
          h *= 0.125;
          up = u;
          um = u;
          up(i) += h;
          um(i) -= h;
          sp = grad_at(up);
          sm = grad_at(um);
        }
        if (sp.ok && sm.ok) {
          J.col(i) = (sp.G - sm.G) / (2.0 * h);
        } else {
          jac_ok = false;
        }
      }
      if (jac_ok) J = 0.5 * (J + J.transpose());  // the true Jacobian is a Hessian
    }
    Eigen::VectorXd delta;
    if (jac_ok) {
      delta = Eigen::ColPivHouseholderQR<Eigen::MatrixXd>(J).solve(-s.G);
      if (!delta.allFinite()) jac_ok = false;
    }
    if (!jac_ok) delta = -s.G;

    // Backtracking: prefer value decrease; fall back on residual decrease so
    // saddle-type critical points stay reachable.
    double phi0;
    try {
      phi0 = phi_grid(F, q, tol);
    } catch (const std::exception&) {
      phi0 = std::numeric_limits<double>::infinity();
    }
    double merit0 = 0.5 * s.G.squaredNorm();
    double slope = s.G.dot(delta);
    double alpha = 1.0;
    bool accepted = false;
    while (alpha >= 1e-12) {
      Eigen::VectorXd ut = u + alpha * delta;
      GradStatus st = grad_at(ut);
      bool ok = false;
      if (st.ok) {
        double phit = std::numeric_limits<double>::infinity();
        try {
          phit = phi_grid(F, poly_of(ut), tol);
        } catch (const std::exception&) {
        }
        bool value_drop = phit <= phi0 + 1e-4 * alpha * std::min(0.0, slope);
        bool residual_drop = 0.5 * st.G.squaredNorm() <= (1.0 - 1e-4 * alpha) * merit0;
        ok = value_drop || residual_drop;
      }
      if (ok) {
        std::vector<cplx> prev = zeros;
        u = ut;
        q = poly_of(u);
        zeros = q.roots();
        ++iter;
        log_state(max_displacement(prev, zeros));
        accepted = true;
        merits.push_back(0.5 * st.G.squaredNorm());
        break;
      }
      alpha *= 0.5;
    }
    // Accepting micro-improvements forever is possible under the residual
    // rule; a merit plateau far from any critical point means the start is
    // lost.
    if (accepted && gnorm > far_from_critical) {
      size_t k = merits.size();
      if (k >= 10 && merits[k - 1] > 0.5 * merits[k - 10]) {
        rec.flags.push_back("newton_no_progress");
        break;
      }
    }
    if (!accepted) {
      if (gnorm < tol.tol_crit) {
        converged = true;  // stalled below the acceptance gate, that is fine
      } else if (gnorm < 1e-6) {
        rec.flags.push_back("newton_stagnated");
      } else {
        rec.flags.push_back("newton_no_progress");
      }
      break;
    }
  }
  if (!converged && gnorm < tol.tol_crit) converged = true;

  // Refinement through the orthogonality map.  Once the approximation error
  // falls near the round-off floor, gradient data cannot localize the point:
  // every start certifies somewhere inside a flat basin the size of the dedup
  // radius.  For sign-definite Markov targets the map q -> OP_n(dmu / qt^2)
  // has exactly the critical points as fixed points and is computed from
  // positive-weight inner products at full relative accuracy, so iterating it
  // from any certified (or nearly certified) record pins the true point to
  // machine precision.  The loop only commits when the iteration settles, so
  // an unstable fixed point (a saddle) is left where Newton put it.
  if ((converged || gnorm < 1e-6) && sign_definite_markov_target(F)) {
    const MeasureM& mu = *F.measure();
    const std::vector<double>& x = mu.nodes(512);
    std::vector<double> dens(x.size());
    {
      const std::vector<cplx>& d = mu.density_at_nodes(512);
      for (size_t j = 0; j < x.size(); ++j) dens[j] = std::abs(d[j].real());
    }
    std::vector<cplx> zc = sorted_points(zeros);
    double disp = std::numeric_limits<double>::infinity();
    bool settled = false;
    for (int it = 0; it < 80; ++it) {
      std::vector<double> next = orthogonality_step(mu, x, dens, zc);
      double d = 0.0;
      for (size_t j = 0; j < next.size(); ++j)
        d = std::max(d, std::abs(zc[j] - next[j]));
      for (size_t j = 0; j < next.size(); ++j) zc[j] = next[j];
      bool grew = d > 1.25 * disp && d > 1e-12;
      disp = d;
      if (d < 1e-14) {
        settled = true;
        break;
      }
      if (grew) break;  // repelled: not in the basin of a stable fixed point
    }
    if (settled) {
      Eigen::VectorXd uc = coeffs_of(MonicPoly::from_roots(zc));
      GradStatus sf = grad_at(uc);
      if (sf.ok && sf.gnorm < tol.tol_crit) {
        bool rescued = !converged;
        std::vector<cplx> prev = zeros;
        u = uc;
        q = poly_of(u);
        zeros = zc;
        gnorm = sf.gnorm;
        converged = true;
        double moved = max_displacement(prev, sorted_points(zeros));
        if (moved > 0.0) log_state(moved);
        if (rescued || moved > 1e-12) rec.flags.push_back("markov_refined");
      }
    }
  }
  if (!converged) rec.flags.push_back("nonconverged");
  if (reflected) rec.flags.push_back("reflected_escapee");
  if (clamped_last) rec.flags.push_back("boundary_attracted");
  else if (clamped_any) rec.flags.push_back("boundary_clamped");

  // Final assembly; route disagreement is reported, not thrown, so mass
  // searches survive a bad point.
  Pass w = run_pass(F, q, tol);
  RemainderData rd = remainder_from_pass(w, F, q);
  try {
    check_routes(rd);
  } catch (const numerical_error&) {
    rec.flags.push_back("route_mismatch");
  }
  rec.q_coeffs.assign(q.poly().coeffs().begin(), q.poly().coeffs().end());
  rec.L_coeffs.assign(static_cast<size_t>(n), cplx{0.0});
  for (int k = 0; k <= rd.numerator.degree() && k < n; ++k)
    rec.L_coeffs[static_cast<size_t>(k)] = rd.numerator.coeff(k);
  rec.value = rd.value_coeff;
  {
    GradStatus s = grad_at(u);
    rec.grad_norm = s.ok ? s.gnorm : std::numeric_limits<double>::quiet_NaN();
  }
  rec.poles = sorted_points(zeros);
  if (q.max_root_modulus() > 1.0 - 1e-6) rec.flags.push_back("boundary_suspect");
  rec.iterations = iter;
  // The analytic Hessian only exists near a critical point; assembling it
  // for a lost start wastes seconds on the inflated tail grid.
  if (!converged && !(rec.grad_norm < 1e3 * tol.tol_crit)) {
    rec.morse_index = -1;
    rec.flags.push_back("hessian_unreliable");
    rec.irreducible = common_factor_degree(rd.numerator, q, tol) == 0;
    if (!rec.irreducible) rec.flags.push_back("reducible");
    return rec;
  }
  try {
    HessianForm h = error_hessian(F, q, tol);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.as_real());
    rec.hessian_eigs.assign(es.eigenvalues().data(),
                            es.eigenvalues().data() + es.eigenvalues().size());
    double scale = 0.0;
    for (double e : rec.hessian_eigs) scale = std::max(scale, std::abs(e));
    int idx = 0;
    bool degen = false;
    for (double e : rec.hessian_eigs) {
      if (std::abs(e) <= 1e-9 * scale) degen = true;
      if (e < 0.0) ++idx;
    }
    rec.morse_index = idx;
    if (degen) rec.flags.push_back("degenerate_hessian");
  } catch (const std::exception&) {
    rec.morse_index = -1;
    rec.flags.push_back("hessian_unreliable");
  }
  rec.irreducible = common_factor_degree(rd.numerator, q, tol) == 0;
  if (!rec.irreducible) rec.flags.push_back("reducible");
  return rec;
}

}  // namespace ratl2
