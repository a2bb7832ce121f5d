#include "ratl2/hardy.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>

namespace ratl2 {

cplx inner_product(const LaurentTail& f, const LaurentTail& g) {
  int n = std::min(f.length(), g.length());
  cplx s{0.0};
  for (int k = 0; k < n; ++k) s += f.a[k] * std::conj(g.a[k]);
  return s;
}

cplx inner_product(const CircleGrid& f, const CircleGrid& g) {
  if (f.m != g.m) throw std::invalid_argument("inner_product: grid sizes differ");
  cplx s{0.0};
  for (int j = 0; j < f.m; ++j) s += f.values[j] * std::conj(g.values[j]);
  return s / static_cast<double>(f.m);
}

ComplexPoly involution_to_disk(const LaurentTail& f) {
  std::vector<cplx> c(f.a.size());
  for (size_t k = 0; k < f.a.size(); ++k) c[k] = std::conj(f.a[k]);
  return ComplexPoly(std::move(c));
}

LaurentTail involution_to_exterior(const ComplexPoly& g) {
  LaurentTail t;
  t.a.resize(g.degree() + 1);
  for (int k = 0; k <= g.degree(); ++k) t.a[k] = std::conj(g.coeff(k));
  return t;
}

int grid_size_for(double rho, int degree) {
  int m = 1024;
  while (rho > 0.0 && std::pow(rho, m) > 1e-14 && m < (1 << 18)) m *= 2;
  int need = 4 * (degree + 1);
  while (m < need) m *= 2;
  return m;
}

namespace {

int grid_for_roots(const MonicPoly& q, int requested, const Tolerances& tol) {
  if (requested > 0) {
    if (!CircleGrid::power_of_two(requested))
      throw std::invalid_argument("project_onto_vq: grid size must be a power of two");
    return requested;
  }
  double r = q.max_root_modulus();
  if (r >= 1.0 - tol.tau_margin)
    throw std::domain_error("project_onto_vq: zero of q within margin of the unit circle");
  // Aliasing decays like r^m; pick m so the error clears 1e-14, capped sanely.
  return grid_size_for(r, q.degree());
}

}  // namespace

ProjectionResult project_onto_vq(const std::function<cplx(cplx)>& f, const MonicPoly& q,
                                 int grid_m, const Tolerances& tol) {
  int m = grid_for_roots(q, grid_m, tol);
  std::vector<cplx> samples(static_cast<size_t>(m));
  for (int j = 0; j < m; ++j) samples[static_cast<size_t>(j)] = f(CircleGrid::node(j, m));
  return project_onto_vq(samples, q, tol);
}

ProjectionResult project_onto_vq(const std::vector<cplx>& f_samples, const MonicPoly& q,
                                 const Tolerances& tol) {
  (void)tol;
  int n = q.degree();
  if (n < 1) throw std::invalid_argument("project_onto_vq: denominator must have degree >= 1");
  int m = static_cast<int>(f_samples.size());
  if (!CircleGrid::power_of_two(m))
    throw std::invalid_argument("project_onto_vq: sample count must be a power of two");

  // Gram matrix G_{k,j} = <z^j/q, z^k/q> depends only on j-k: one pass over
  // the grid accumulates mean(tau^d / |q|^2) for d = -(n-1)..(n-1).
  std::vector<cplx> ring(2 * n - 1, cplx{0.0});
  std::vector<cplx> rhs_acc(n, cplx{0.0});
  for (int j = 0; j < m; ++j) {
    cplx tau = CircleGrid::node(j, m);
    cplx qv = q.eval(tau);
    double inv_q2 = 1.0 / std::norm(qv);
    cplx fv = f_samples[static_cast<size_t>(j)];
    cplx tpow{1.0};
    // d >= 0 entries; negatives are conjugates by symmetry of the integrand.
    for (int d = 0; d < n; ++d) {
      ring[n - 1 + d] += tpow * inv_q2;
      rhs_acc[d] += fv * std::conj(tpow / qv);
      tpow *= tau;
    }
  }
  double inv_m = 1.0 / static_cast<double>(m);
  Eigen::MatrixXcd G(n, n);
  Eigen::VectorXcd beta(n);
  for (int d = 0; d < n; ++d) ring[n - 1 + d] *= inv_m;
  for (int d = 1; d < n; ++d) ring[n - 1 - d] = std::conj(ring[n - 1 + d]);
  for (int k = 0; k < n; ++k) {
    beta(k) = rhs_acc[k] * inv_m;
    for (int j = 0; j < n; ++j) G(k, j) = ring[n - 1 + (j - k)];
  }

  Eigen::LDLT<Eigen::MatrixXcd> ldlt(G);
  Eigen::VectorXcd c = ldlt.solve(beta);

  ProjectionResult out;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G);
  double lmin = es.eigenvalues().minCoeff(), lmax = es.eigenvalues().maxCoeff();
  out.gram_cond = (lmin > 0.0) ? lmax / lmin : std::numeric_limits<double>::infinity();
  out.ill_conditioned = !(lmin > lmax * 1e-14);
  std::vector<cplx> coeffs(n);
  for (int k = 0; k < n; ++k) coeffs[k] = c(k);
  out.numerator = ComplexPoly(std::move(coeffs));
  return out;
}

ComplexPoly project_onto_vq_contour(const std::function<cplx(cplx)>& f, const MonicPoly& q,
                                    double rho_contour, int grid_m) {
  int n = q.degree();
  if (n < 1) throw std::invalid_argument("project_onto_vq_contour: degree >= 1 required");
  if (!(rho_contour > 0.0 && rho_contour < 1.0))
    throw std::domain_error("project_onto_vq_contour: contour radius must lie in (0,1)");
  ComplexPoly qt = reciprocal(q.poly(), n);
  std::vector<cplx> acc(n, cplx{0.0});
  for (int j = 0; j < grid_m; ++j) {
    cplx tau = rho_contour * CircleGrid::node(j, grid_m);
    // (q(z) qt(tau) - qt(z) q(tau)) / (z - tau) expanded in powers of z.
    ComplexPoly num = q.poly() * qt.eval(tau) - qt * q.eval(tau);
    auto [quot, rem] = num.deflate(tau);
    (void)rem;  // zero by construction
    cplx wgt = f(tau) / qt.eval(tau) * tau / static_cast<double>(grid_m);
    for (int k = 0; k < n; ++k) acc[k] += wgt * quot.coeff(k);
  }
  return ComplexPoly(std::move(acc));
}

int winding_number(const std::vector<cplx>& samples, const Tolerances& tol) {
  size_t m = samples.size();
  if (m < 8) throw std::invalid_argument("winding_number: too few samples");
  double total = 0.0;
  for (size_t j = 0; j < m; ++j) {
    cplx cur = samples[j], nxt = samples[(j + 1) % m];
    if (std::abs(cur) <= tol.tau_zero)
      throw numerical_error("winding_number: sample within tau_zero of the origin");
    double jump = std::arg(nxt / cur);
    if (std::abs(jump) >= pi / 2.0)
      throw resolution_error("winding_number: phase jump >= pi/2, refine the grid");
    total += jump;
  }
  double w = total / (2.0 * pi);
  long r = std::lround(w);
  if (std::abs(w - static_cast<double>(r)) > 1e-6)
    throw numerical_error("winding_number: non-integral total phase");
  return static_cast<int>(r);
}

int winding_number_adaptive(const std::function<cplx(cplx)>& f, int m_start, int m_max,
                            const Tolerances& tol) {
  int prev = 0;
  bool have_prev = false;
  for (int m = m_start; m <= m_max; m *= 2) {
    std::vector<cplx> s(m);
    for (int j = 0; j < m; ++j) s[j] = f(CircleGrid::node(j, m));
    try {
      int w = winding_number(s, tol);
      if (have_prev && w == prev) return w;
      prev = w;
      have_prev = true;
    } catch (const resolution_error&) {
      have_prev = false;
    }
  }
  throw resolution_error("winding_number_adaptive: no stable winding up to m_max");
}

}  // namespace ratl2
