#include "ratl2/target.hpp"

#include <algorithm>
#include <cmath>

namespace ratl2 {

double segment_distance(cplx z, double a, double b) {
  double dx = 0.0;
  if (z.real() < a) dx = a - z.real();
  else if (z.real() > b) dx = z.real() - b;
  return std::hypot(dx, z.imag());
}

std::vector<double> unwrap_arguments(const std::vector<cplx>& samples) {
  if (samples.empty()) return {};
  std::vector<double> out(samples.size());
  out[0] = std::arg(samples[0]);
  for (size_t j = 1; j < samples.size(); ++j) {
    if (samples[j] == cplx{0.0} || samples[j - 1] == cplx{0.0})
      throw std::domain_error("unwrap_arguments: zero sample");
    double jump = std::arg(samples[j] / samples[j - 1]);
    if (std::abs(jump) >= pi * (1.0 - 1e-9))
      throw resolution_error("unwrap_arguments: adjacent phase jump at pi, refine sampling");
    out[j] = out[j - 1] + jump;
  }
  return out;
}

double total_argument_variation(const std::vector<cplx>& samples) {
  std::vector<double> u = unwrap_arguments(samples);
  double tv = 0.0;
  for (size_t j = 1; j < u.size(); ++j) tv += std::abs(u[j] - u[j - 1]);
  return tv;
}

MeasureM::MeasureM(double a, double b, std::function<cplx(double)> density)
    : a_(a), b_(b), density_(std::move(density)) {
  if (!(a < b)) throw std::invalid_argument("MeasureM: need a < b");
  if (!(-1.0 < a && b < 1.0)) throw std::domain_error("MeasureM: segment must lie in (-1,1)");
  if (!density_) throw std::invalid_argument("MeasureM: null density");
  if (min_density_modulus() <= 0.0)
    throw std::domain_error("MeasureM: density vanishes on the segment");
}

MeasureM MeasureM::from_samples(double a, double b, const std::vector<cplx>& values) {
  int k = static_cast<int>(values.size());
  if (k < 4) throw std::invalid_argument("MeasureM::from_samples: need at least 4 samples");
  // Chebyshev coefficients from midpoint-node samples (discrete cosine sums),
  // evaluated by Clenshaw recurrence over x = (t - mid)/half.
  std::vector<double> cre(k, 0.0), cim(k, 0.0);
  for (int n = 0; n < k; ++n) {
    double sre = 0.0, sim = 0.0;
    for (int j = 0; j < k; ++j) {
      double th = (2.0 * j + 1.0) * pi / (2.0 * k);
      double w = std::cos(n * th);
      sre += values[j].real() * w;
      sim += values[j].imag() * w;
    }
    double scale = (n == 0 ? 1.0 : 2.0) / k;
    cre[n] = sre * scale;
    cim[n] = sim * scale;
  }
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  auto density = [cre = std::move(cre), cim = std::move(cim), mid, half, k](double t) -> cplx {
    double x = (t - mid) / half;
    double b1r = 0.0, b2r = 0.0, b1i = 0.0, b2i = 0.0;
    for (int n = k - 1; n >= 1; --n) {
      double tr = 2.0 * x * b1r - b2r + cre[n];
      double ti = 2.0 * x * b1i - b2i + cim[n];
      b2r = b1r; b1r = tr;
      b2i = b1i; b1i = ti;
    }
    return {cre[0] + x * b1r - b2r, cim[0] + x * b1i - b2i};
  };
  return MeasureM(a, b, density);
}

const std::vector<double>& MeasureM::nodes(int k) const {
  std::lock_guard<std::mutex> lk(cache_->mutex);
  auto it = cache_->nodes.find(k);
  if (it != cache_->nodes.end()) return it->second;
  std::vector<double> t(k);
  double mid = 0.5 * (a_ + b_), half = 0.5 * (b_ - a_);
  for (int j = 0; j < k; ++j) t[j] = mid + half * std::cos((2.0 * j + 1.0) * pi / (2.0 * k));
  return cache_->nodes.emplace(k, std::move(t)).first->second;
}

const std::vector<cplx>& MeasureM::density_at_nodes(int k) const {
  {
    std::lock_guard<std::mutex> lk(cache_->mutex);
    auto it = cache_->values.find(k);
    if (it != cache_->values.end()) return it->second;
  }
  const std::vector<double>& t = nodes(k);
  std::vector<cplx> v(k);
  for (int j = 0; j < k; ++j) v[j] = density_(t[j]);
  std::lock_guard<std::mutex> lk(cache_->mutex);
  return cache_->values.emplace(k, std::move(v)).first->second;
}

cplx MeasureM::integrate(int k, const std::function<cplx(double)>& g) const {
  const std::vector<double>& t = nodes(k);
  cplx s{0.0};
  for (int j = 0; j < k; ++j) s += g(t[j]);
  return s / static_cast<double>(k);
}

double MeasureM::min_density_modulus(int k) const {
  const std::vector<cplx>& v = density_at_nodes(k);
  double m = std::numeric_limits<double>::infinity();
  for (cplx x : v) m = std::min(m, std::abs(x));
  return m;
}

double MeasureM::argument_variation(int k) const { return total_argument_variation(density_at_nodes(k)); }

int RationalPart::degree() const {
  int d = 0;
  for (const PolePart& p : parts) d += p.mult;
  return d;
}

cplx RationalPart::eval(cplx z) const { return eval_deriv(z, 0); }

cplx RationalPart::eval_deriv(cplx z, int order) const {
  cplx s{0.0};
  for (const PolePart& p : parts) {
    cplx dz = z - p.pole;
    for (int l = 1; l <= p.mult; ++l) {
      // d^m/dz^m (z-p)^{-l} = (-1)^m (l)_m (z-p)^{-l-m}
      double factor = 1.0;
      for (int i = 0; i < order; ++i) factor *= -(l + i);
      s += p.coeffs[l - 1] * factor * std::pow(dz, -static_cast<double>(l + order));
    }
  }
  return s;
}

double RationalPart::max_interior_modulus() const {
  double m = 0.0;
  for (const PolePart& p : parts)
    if (std::abs(p.pole) < 1.0) m = std::max(m, std::abs(p.pole));
  return m;
}

bool RationalPart::has_exterior_pole() const {
  for (const PolePart& p : parts)
    if (std::abs(p.pole) >= 1.0) return true;
  return false;
}

double RationalPart::min_distance(cplx z) const {
  double d = std::numeric_limits<double>::infinity();
  for (const PolePart& p : parts) d = std::min(d, std::abs(z - p.pole));
  return d;
}

TargetFunction::TargetFunction(std::optional<MeasureM> measure, RationalPart rational,
                               Tolerances tol)
    : measure_(std::move(measure)), rational_(std::move(rational)), tol_(tol) {
  if (!measure_ && rational_.empty())
    throw std::invalid_argument("TargetFunction: both parts empty");
  if (measure_) {
    for (const PolePart& p : rational_.parts)
      if (segment_distance(p.pole, measure_->a(), measure_->b()) <= tol_.tau_margin)
        throw std::domain_error("TargetFunction: rational pole touches the segment");
  }
}

double TargetFunction::distance_to_singularities(cplx z) const {
  double d = std::numeric_limits<double>::infinity();
  if (measure_) d = segment_distance(z, measure_->a(), measure_->b());
  d = std::min(d, rational_.min_distance(z));
  return d;
}

void TargetFunction::check_distance(cplx z, int) const {
  if (distance_to_singularities(z) <= tol_.tau_margin)
    throw std::domain_error("TargetFunction: evaluation within margin of a singularity");
}

cplx TargetFunction::eval_measure(cplx z, int order) const {
  if (!measure_) return {0.0};
  // Kernel 1/(z-t) differentiated 'order' times in z.
  double sign = (order % 2 == 0) ? 1.0 : -1.0;
  double fact = 1.0;
  for (int i = 2; i <= order; ++i) fact *= i;
  int k = 256;
  double d = segment_distance(z, measure_->a(), measure_->b());
  if (d < 0.05) k = 1024;
  cplx prev{0.0};
  bool have_prev = false;
  for (; k <= (1 << 16); k *= 2) {
    const std::vector<double>& t = measure_->nodes(k);
    const std::vector<cplx>& mu = measure_->density_at_nodes(k);
    cplx s{0.0};
    for (int j = 0; j < k; ++j) s += mu[j] * std::pow(z - t[j], -static_cast<double>(order + 1));
    s *= sign * fact / static_cast<double>(k);
    if (have_prev && std::abs(s - prev) <= 1e-11 * std::max(1.0, std::abs(s))) return s;
    prev = s;
    have_prev = true;
  }
  throw resolution_error("TargetFunction: quadrature not converged (point too close to the cut)");
}

cplx TargetFunction::eval(cplx z) const { return eval_deriv(z, 0); }

cplx TargetFunction::eval_deriv(cplx z, int order) const {
  check_distance(z, order);
  return eval_measure(z, order) + rational_.eval_deriv(z, order);
}

std::function<cplx(cplx)> TargetFunction::evaluator() const {
  return [this](cplx z) { return eval(z); };
}

std::vector<cplx> TargetFunction::moments(int k_max) const {
  std::vector<cplx> m(k_max + 1, cplx{0.0});
  if (measure_) {
    int k = 4096;
    const std::vector<double>& t = measure_->nodes(k);
    const std::vector<cplx>& mu = measure_->density_at_nodes(k);
    for (int j = 0; j < k; ++j) {
      cplx p{1.0};
      for (int s = 0; s <= k_max; ++s) {
        m[s] += mu[j] * p;
        p *= t[j];
      }
    }
    for (cplx& v : m) v /= static_cast<double>(k);
  }
  for (const PolePart& p : rational_.parts) {
    for (int l = 1; l <= p.mult; ++l) {
      // (z-pole)^{-l} = sum_{s>=l-1} C(s, l-1) pole^{s+1-l} z^{-s-1}
      for (int s = l - 1; s <= k_max; ++s) {
        double binom = 1.0;
        for (int i = 1; i < l; ++i) binom *= static_cast<double>(s - i + 1) / i;
        m[s] += p.coeffs[l - 1] * binom * std::pow(p.pole, s + 1 - l);
      }
    }
  }
  return m;
}

const std::vector<cplx>& TargetFunction::circle_samples(int m) const {
  if (m < 2 || (m & (m - 1)) != 0)
    throw std::invalid_argument("circle_samples: size must be a power of two");
  std::lock_guard<std::mutex> lock(samples_->mutex);
  auto it = samples_->grids.find(m);
  if (it != samples_->grids.end()) return it->second;
  std::vector<cplx> vals(static_cast<size_t>(m));
  double rm = 0.0;
  if (measure_) rm = std::max(std::abs(measure_->a()), std::abs(measure_->b()));
  if (measure_ && rm < 0.995) {
    // The Laurent tail of the measure part converges geometrically on the
    // circle; summing it beats per-node quadrature by orders of magnitude in
    // both accuracy and cost.  The rational part is exact pointwise.
    int K = 16;
    if (rm > 0.0)
      K = std::max(16, static_cast<int>(std::ceil(
                           (std::log(1e-18) + std::log1p(-rm)) / std::log(rm))));
    std::vector<cplx> mom = moments(K);
    for (int j = 0; j < m; ++j) {
      cplx t = CircleGrid::node(j, m);
      cplx w = 1.0 / t;
      cplx acc{0.0};
      for (int s = K; s >= 0; --s) acc = acc * w + mom[static_cast<size_t>(s)];
      vals[static_cast<size_t>(j)] = acc * w + rational_.eval_deriv(t, 0);
    }
  } else {
    for (int j = 0; j < m; ++j) vals[static_cast<size_t>(j)] = eval(CircleGrid::node(j, m));
  }
  return samples_->grids.emplace(m, std::move(vals)).first->second;
}

double TargetFunction::rho() const {
  double r = 0.0;
  if (measure_) r = std::max(std::abs(measure_->a()), std::abs(measure_->b()));
  r = std::max(r, rational_.max_interior_modulus());
  return r;
}

LaurentTail TargetFunction::tail(int n_terms) const {
  RationalPart interior;
  for (const PolePart& p : rational_.parts)
    if (std::abs(p.pole) < 1.0) interior.parts.push_back(p);
  LaurentTail t;
  t.rho = rho();
  if (!measure_ && interior.empty()) {
    t.a.assign(n_terms, cplx{0.0});
    t.exact = [](cplx) { return cplx{0.0}; };
    return t;
  }
  TargetFunction inner(measure_, interior, tol_);
  std::vector<cplx> m = inner.moments(n_terms - 1);
  t.a.assign(m.begin(), m.end());
  t.exact = [inner](cplx z) { return inner.eval(z); };
  return t;
}

}  // namespace ratl2
