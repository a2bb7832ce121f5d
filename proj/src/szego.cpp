#include "ratl2/szego.hpp"

#include <cmath>

namespace ratl2 {

SzegoData::SzegoData(const MeasureM& h, int k_start) : h_(h), k_(k_start) {
  cplx z0{h_.midpoint(), 0.5};
  cplx prev_i0{0.0}, prev_c{0.0};
  bool have = false;
  for (int k = k_start; k <= (1 << 16); k *= 2) {
    const Level& lv = level(k);
    cplx i0{0.0};
    for (const cplx& l : lv.logs) i0 += l;
    i0 /= static_cast<double>(k);
    cplx c = cauchy_integral(z0, k);
    if (have && std::abs(i0 - prev_i0) <= 1e-11 && std::abs(c - prev_c) <= 1e-11) {
      k_ = k;
      i0_ = i0;
      return;
    }
    prev_i0 = i0;
    prev_c = c;
    have = true;
  }
  throw resolution_error("SzegoData: quadrature did not stabilize to 1e-11");
}

const SzegoData::Level& SzegoData::level(int k) const {
  std::lock_guard<std::mutex> lk(mutex_);
  auto it = levels_.find(k);
  if (it != levels_.end()) return it->second;
  const std::vector<cplx>& v = h_.density_at_nodes(k);
  std::vector<double> args = unwrap_arguments(v);
  Level lv;
  lv.logs.resize(k);
  for (int j = 0; j < k; ++j) lv.logs[j] = cplx{std::log(std::abs(v[j])), args[j]};
  return levels_.emplace(k, std::move(lv)).first->second;
}

cplx SzegoData::cauchy_integral(cplx z, int k) const {
  const Level& lv = level(k);
  const std::vector<double>& t = h_.nodes(k);
  cplx s{0.0};
  for (int j = 0; j < k; ++j) s += lv.logs[j] / (z - t[j]);
  return s / static_cast<double>(k);
}

cplx SzegoData::eval(cplx z) const {
  double d = segment_distance(z, a(), b());
  if (d <= default_tol().tau_margin)
    throw std::domain_error("SzegoData::eval: point within margin of the cut");
  int k_eff = (d < 0.05) ? 4 * k_ : k_;
  cplx c = cauchy_integral(z, k_eff);
  cplx w = sqrt_branch(z, a(), b());
  return std::exp(0.5 * w * c - 0.5 * i0_);
}

cplx SzegoData::unwrapped_log_at(double x) const {
  int k_eff = std::max(4 * k_, 4096);
  const Level& lv = level(k_eff);
  const std::vector<double>& t = h_.nodes(k_eff);
  int jbest = 0;
  double dbest = std::abs(x - t[0]);
  for (int j = 1; j < k_eff; ++j) {
    double dj = std::abs(x - t[j]);
    if (dj < dbest) {
      dbest = dj;
      jbest = j;
    }
  }
  cplx ratio = h_.density(x) / h_.density(t[jbest]);
  return lv.logs[jbest] + std::log(ratio);
}

cplx SzegoData::boundary(double x, Side side) const {
  if (side == Side::None) throw std::invalid_argument("SzegoData::boundary: side required");
  double margin = 1e-6 * (b() - a());
  if (!(x > a() + margin && x < b() - margin))
    throw std::domain_error("SzegoData::boundary: point must lie strictly inside (a,b)");
  int k_eff = std::max(4 * k_, 4096);
  const Level& lv = level(k_eff);
  const std::vector<double>& t = h_.nodes(k_eff);
  cplx lx = unwrapped_log_at(x);
  // Principal-value integral, with the arcsine's vanishing PV of 1/(x-t)
  // already subtracted: only the smooth difference quotient remains.
  cplx pv{0.0};
  double guard = 1e-9 * (b() - a());
  for (int j = 0; j < k_eff; ++j) {
    double dx = x - t[j];
    if (std::abs(dx) < guard) {
      int jl = (j > 0) ? j - 1 : j + 1;
      int jr = (j + 1 < k_eff) ? j + 1 : j - 1;
      pv += -(lv.logs[jr] - lv.logs[jl]) / (t[jr] - t[jl]);
    } else {
      pv += (lv.logs[j] - lx) / dx;
    }
  }
  pv /= static_cast<double>(k_eff);
  double s = std::sqrt((x - a()) * (b() - x));
  cplx c = (side == Side::Plus) ? pv - iu * lx / s : pv + iu * lx / s;
  cplx w = (side == Side::Plus) ? iu * s : -iu * s;
  return std::exp(0.5 * w * c - 0.5 * i0_);
}

double SzegoData::factorization_residual(double x) const {
  cplx lhs = h_.density(x);
  cplx rhs = geometric_mean() * boundary(x, Side::Plus) * boundary(x, Side::Minus);
  return std::abs(lhs - rhs);
}

cplx geometric_mean(const MeasureM& h) { return SzegoData(h).geometric_mean(); }

}  // namespace ratl2
