#include "ratl2/pade.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>

#include "ratl2/laurent.hpp"

namespace ratl2 {

namespace {

// Groups equal nodes (within tau_zero) into (point, multiplicity) pairs.
std::vector<std::pair<cplx, int>> cluster_nodes(const std::vector<cplx>& pts, double tol) {
  std::vector<std::pair<cplx, int>> out;
  for (cplx p : pts) {
    bool merged = false;
    for (auto& [q, m] : out) {
      if (std::abs(p - q) <= tol) {
        q = (q * static_cast<double>(m) + p) / static_cast<double>(m + 1);
        ++m;
        merged = true;
        break;
      }
    }
    if (!merged) out.emplace_back(p, 1);
  }
  return out;
}

}  // namespace

PadeApproximant build_pade(const TargetFunction& F, const InterpolationSet& E,
                           const Tolerances& tol) {
  int n = E.size();
  if (n < 1) throw std::invalid_argument("build_pade: empty interpolation set");
  for (cplx e : E.points)
    if (F.distance_to_singularities(e) <= tol.tau_margin)
      throw std::domain_error("build_pade: node within margin of a singularity of the target");

  auto clusters = cluster_nodes(E.points, 1e-12);
  int d = static_cast<int>(E.points.size());
  int rows = 2 * n + 1, cols = 2 * n + 2;  // unknowns p_0..p_n, l_0..l_n
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(rows, cols);
  int row = 0;

  // Conditions at the finite nodes: derivatives 0..2m-1 of (l F - p) vanish.
  for (const auto& [e, mult] : clusters) {
    std::vector<cplx> fder(2 * mult + 1);
    for (int i = 0; i <= 2 * mult; ++i) fder[i] = F.eval_deriv(e, i);
    for (int iota = 0; iota < 2 * mult; ++iota, ++row) {
      // Leibniz on z^j * F for the denominator block.
      for (int j = 0; j <= n; ++j) {
        cplx acc{0.0};
        for (int r = 0; r <= std::min(iota, j); ++r) {
          double binom = 1.0, fall = 1.0;
          for (int i = 1; i <= r; ++i) {
            binom *= static_cast<double>(iota - i + 1) / i;
            fall *= static_cast<double>(j - i + 1);
          }
          acc += binom * fall * std::pow(e, j - r) * fder[iota - r];
        }
        A(row, n + 1 + j) = acc;
      }
      for (int s = iota; s <= n; ++s) {
        double fall = 1.0;
        for (int i = 0; i < iota; ++i) fall *= static_cast<double>(s - i);
        A(row, s) = -fall * std::pow(e, s - iota);
      }
    }
  }

  // Conditions at infinity: coefficients of z^s in (l F - p) vanish for
  // s = n down to 2d - n, using the expansion F = sum m_k z^{-k-1}.
  std::vector<cplx> mom = F.moments(2 * (n - d) + n + 2);
  for (int s = n; s >= 2 * d - n; --s, ++row) {
    for (int j = 0; j <= n; ++j) {
      int k = j - s - 1;
      if (k >= 0) A(row, n + 1 + j) = mom[k];
    }
    if (s >= 0) A(row, s) -= 1.0;
  }

  // Row equilibration: each condition to unit max modulus (harmless for the
  // null space, tames distant nodes and large-moment rows).
  for (int r = 0; r < rows; ++r) {
    double m = A.row(r).cwiseAbs().maxCoeff();
    if (m > 0.0) A.row(r) /= m;
  }

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeFullV);
  Eigen::VectorXcd x = svd.matrixV().col(cols - 1);
  PadeApproximant P;
  P.nodes = E;
  P.smallest_singular = svd.singularValues()(rows - 1);
  P.second_singular = svd.singularValues()(rows - 2);
  P.degenerate = P.second_singular <= 1e-12 * svd.singularValues()(0);

  std::vector<cplx> pc(n + 1), lc(n + 1);
  for (int j = 0; j <= n; ++j) {
    pc[j] = x(j);
    lc[j] = x(n + 1 + j);
  }
  ComplexPoly p(std::move(pc)), l(std::move(lc));
  if (l.is_zero()) throw numerical_error("build_pade: vanishing denominator in the null vector");

  // Scale to unit max denominator coefficient, re-monicize at full degree.
  double lmax = l.max_abs_coeff();
  p = p * (1.0 / lmax);
  l = l * (1.0 / lmax);
  if (std::abs(l.coeff(n)) > tol.tau_zero) {
    cplx lead = l.coeff(n);
    p = p * (1.0 / lead);
    l = l * (1.0 / lead);
    P.full_degree = true;
  }

  // Coprime reduction: deflate root pairs closer than tau_gcd.
  if (!p.is_zero()) {
    bool changed = true;
    while (changed && p.degree() >= 0 && l.degree() >= 1) {
      changed = false;
      std::vector<cplx> pr = p.roots(), lr = l.roots();
      for (cplx rp : pr) {
        for (cplx rl : lr) {
          if (std::abs(rp - rl) <= tol.tau_gcd) {
            cplx shared = 0.5 * (rp + rl);
            p = p.deflate(shared).first;
            l = l.deflate(shared).first;
            P.reduced = true;
            changed = true;
            break;
          }
        }
        if (changed) break;
      }
    }
  }

  P.numerator = p;
  P.denominator = l;
  return P;
}

std::function<cplx(cplx)> pade_error_evaluator(const TargetFunction& F,
                                               const PadeApproximant& P) {
  ComplexPoly v = ComplexPoly::from_roots(P.nodes.points);
  ComplexPoly l = P.denominator;
  const RationalPart rat = F.rational();
  std::optional<MeasureM> meas = F.measure();

  // Safe Cauchy-circle radii around each pole: clear of the cut, the other
  // poles and the interpolation nodes (z-dependence handled per call).
  std::vector<double> clearance(rat.parts.size(), std::numeric_limits<double>::infinity());
  for (size_t i = 0; i < rat.parts.size(); ++i) {
    cplx lam = rat.parts[i].pole;
    if (meas) clearance[i] = segment_distance(lam, meas->a(), meas->b());
    for (size_t j = 0; j < rat.parts.size(); ++j)
      if (j != i) clearance[i] = std::min(clearance[i], std::abs(lam - rat.parts[j].pole));
    for (cplx e : P.nodes.points) clearance[i] = std::min(clearance[i], std::abs(e - lam));
    if (!(clearance[i] > 0.0))
      throw std::domain_error("pade_error_evaluator: pole not isolated");
  }

  return [v, l, rat, meas, clearance](cplx z) -> cplx {
    cplx integral{0.0};
    if (meas) {
      int k = 4096;
      const std::vector<double>& t = meas->nodes(k);
      const std::vector<cplx>& mu = meas->density_at_nodes(k);
      for (int j = 0; j < k; ++j) {
        cplx lt = l.eval(t[j]);
        cplx vt = v.eval(t[j]);
        integral += lt * lt * mu[j] / (vt * vt * (z - t[j]));
      }
      integral /= static_cast<double>(k);
    }
    cplx residues{0.0};
    for (size_t i = 0; i < rat.parts.size(); ++i) {
      const PolePart& pp = rat.parts[i];
      double rad = 0.45 * std::min(clearance[i], std::abs(z - pp.pole));
      if (!(rad > 0.0))
        throw std::domain_error("pade_error_evaluator: evaluation point on a pole");
      auto g = [&](cplx tt) {
        cplx lt = l.eval(tt), vt = v.eval(tt);
        return lt * lt / (vt * vt * (z - tt));
      };
      std::vector<cplx> der = analytic_derivatives(g, pp.pole, rad, pp.mult - 1);
      double fact = 1.0;
      for (int lidx = 1; lidx <= pp.mult; ++lidx) {
        if (lidx > 1) fact *= (lidx - 1);
        residues += pp.coeffs[lidx - 1] * der[lidx - 1] / fact;
      }
    }
    cplx vz = v.eval(z), lz = l.eval(z);
    return vz * vz / (lz * lz) * (integral + residues);
  };
}

cplx blaschke_product(const InterpolationSet& E, cplx z, double a, double b, Side side) {
  cplx phi_z = disk_coordinate(z, a, b, side);
  cplx out{1.0};
  for (int i = 0; i < E.at_infinity; ++i) out *= phi_z;
  for (cplx e : E.points) {
    cplx phi_e = disk_coordinate(e, a, b);
    out *= (phi_z - phi_e) / (1.0 - phi_z * phi_e);
  }
  return out;
}

namespace {

// 1-Wasserstein distance between two weighted point sets on the line.
double w1_line(std::vector<std::pair<double, double>> a, std::vector<std::pair<double, double>> b) {
  for (auto& [x, w] : b) w = -w;
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  double dist = 0.0, cdf = 0.0;
  for (size_t i = 0; i + 1 < a.size(); ++i) {
    cdf += a[i].second;
    dist += std::abs(cdf) * (a[i + 1].first - a[i].first);
  }
  return dist;
}

double sliced_transport(const std::vector<cplx>& p, const std::vector<cplx>& q) {
  const int dirs = 8;
  double acc = 0.0;
  for (int di = 0; di < dirs; ++di) {
    double th = pi * di / dirs;
    cplx u{std::cos(th), std::sin(th)};
    std::vector<std::pair<double, double>> a, b;
    for (cplx x : p) a.emplace_back((x * std::conj(u)).real(), 1.0 / p.size());
    for (cplx x : q) b.emplace_back((x * std::conj(u)).real(), 1.0 / q.size());
    acc += w1_line(std::move(a), std::move(b));
  }
  return acc / dirs;
}

}  // namespace

std::vector<AdmissibilityRow> admissibility_report(const InterpolationScheme& scheme,
                                                   const TargetFunction& F) {
  if (!F.measure()) throw std::invalid_argument("admissibility_report: target has no measure");
  double a = F.measure()->a(), b = F.measure()->b();
  cplx z0{0.5 * (a + b), 0.0};  // on the cut, hence never a node

  auto mobius_image = [&](const InterpolationSet& E) {
    std::vector<cplx> img;
    for (cplx e : E.points) {
      if (std::abs(e - z0) < 1e-9)
        throw std::domain_error("admissibility_report: node collides with the base point");
      img.push_back(1.0 / (e - z0));
    }
    for (int i = 0; i < E.at_infinity; ++i) img.push_back({0.0, 0.0});
    return img;
  };

  std::vector<AdmissibilityRow> rows;
  for (size_t i = 0; i < scheme.sets.size(); ++i) {
    const InterpolationSet& E = scheme.sets[i];
    AdmissibilityRow r;
    r.n = E.size();
    r.min_distance = std::numeric_limits<double>::infinity();
    for (cplx e : E.points) {
      cplx pe = disk_coordinate(e, a, b);
      cplx pec = disk_coordinate(std::conj(e), a, b);
      r.symmetry_sum += std::abs(pe - pec);
      r.min_distance = std::min(r.min_distance, F.distance_to_singularities(e));
    }
    if (E.points.empty()) r.min_distance = std::numeric_limits<double>::infinity();
    if (i + 1 < scheme.sets.size())
      r.transport_to_next = sliced_transport(mobius_image(E), mobius_image(scheme.sets[i + 1]));
    rows.push_back(r);
  }
  return rows;
}

std::vector<cplx> analytic_derivatives(const std::function<cplx(cplx)>& f, cplx center,
                                       double radius, int max_order, int grid) {
  // f^(k)(c) = k! / (2 pi i) * integral f(t) (t-c)^{-k-1} dt
  //          = k! / (grid * radius^k) * sum_j f(c + r u_j) u_j^{-k}
  std::vector<cplx> out(std::max(0, max_order) + 1, cplx{0.0});
  for (int j = 0; j < grid; ++j) {
    double th = 2.0 * pi * j / grid;
    cplx u{std::cos(th), std::sin(th)};
    cplx val = f(center + radius * u);
    cplx upow{1.0};
    for (int k = 0; k <= max_order; ++k) {
      out[k] += val * std::conj(upow);  // u^{-k} = conj(u^k) on |u| = 1
      upow *= u;
    }
  }
  double fact = 1.0;
  double rpow = 1.0;
  for (int k = 0; k <= max_order; ++k) {
    if (k > 0) {
      fact *= k;
      rpow *= radius;
    }
    out[k] *= fact / (grid * rpow);
  }
  return out;
}

}  // namespace ratl2
