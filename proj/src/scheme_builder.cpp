#include "ratl2/scheme_builder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace ratl2 {

SignedMeasureSamples SignedMeasureSamples::two_omega(double a, double b) {
  if (!(a < b)) throw std::invalid_argument("SignedMeasureSamples: need a < b");
  return {a, b, {}};
}

SignedMeasureSamples SignedMeasureSamples::from_samples(double a, double b,
                                                        std::vector<double> values) {
  if (!(a < b)) throw std::invalid_argument("SignedMeasureSamples: need a < b");
  if (values.size() < 64)
    throw std::invalid_argument("SignedMeasureSamples: need at least 64 sample values");
  return {a, b, std::move(values)};
}

double SignedMeasureSamples::mass(double lo, double hi) const {
  lo = std::max(lo, a);
  hi = std::min(hi, b);
  if (!(lo < hi)) return 0.0;
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  if (values.empty()) {
    // twice the arcsine distribution, closed form through its CDF
    auto cdf = [&](double t) {
      double u = std::clamp((t - mid) / half, -1.0, 1.0);
      return 0.5 + std::asin(u) / pi;
    };
    return 2.0 * (cdf(hi) - cdf(lo));
  }
  int k = static_cast<int>(values.size());
  double acc = 0.0;
  for (int j = 0; j < k; ++j) {
    double t = mid + half * std::cos((2.0 * j + 1.0) * pi / (2.0 * k));
    if (t >= lo && t <= hi) acc += values[static_cast<size_t>(j)];
  }
  return acc / static_cast<double>(k);
}

double SignedMeasureSamples::variation() const {
  if (values.empty()) return 2.0;
  double acc = 0.0;
  for (double v : values) acc += std::abs(v);
  return acc / static_cast<double>(values.size());
}

InterpolationSet build_comparison_scheme(const SignedMeasureSamples& nu,
                                         const CriticalPointRecord& record,
                                         const std::vector<cplx>& rational_poles,
                                         const Tolerances& tol) {
  if (std::abs(nu.total() - 2.0) > 1e-9)
    throw std::invalid_argument("build_comparison_scheme: measure must have mass 2");
  const double a = nu.a, b = nu.b;
  const int n = record.degree;
  if (static_cast<int>(record.poles.size()) != n)
    throw std::invalid_argument("build_comparison_scheme: record is missing its zeros");

  // Zeros attracted by the rational part stay out of the chain, matched
  // greedily by distance, one per pole.
  std::vector<bool> attracted(record.poles.size(), false);
  for (cplx lam : rational_poles) {
    int best = -1;
    double bd = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < record.poles.size(); ++i) {
      if (attracted[i]) continue;
      double d = std::abs(record.poles[i] - lam);
      if (d < bd) {
        bd = d;
        best = static_cast<int>(i);
      }
    }
    if (best >= 0) attracted[static_cast<size_t>(best)] = true;
  }

  std::vector<cplx> chain, others;
  for (size_t i = 0; i < record.poles.size(); ++i) {
    cplx z = record.poles[i];
    if (!attracted[i] && std::real(z) > a && std::real(z) < b)
      chain.push_back(z);
    else
      others.push_back(z);
  }
  std::sort(chain.begin(), chain.end(),
            [](cplx x, cplx y) { return std::real(x) < std::real(y); });

  // Equal real parts are only tolerable for near-identical zeros (one of the
  // pair leaves the chain); genuinely different zeros cannot be ordered.
  for (size_t i = 0; i + 1 < chain.size();) {
    if (std::abs(std::real(chain[i]) - std::real(chain[i + 1])) <= 1e-12) {
      if (std::abs(chain[i] - chain[i + 1]) > tol.tau_gcd) {
        std::ostringstream msg;
        msg << "build_comparison_scheme: chain ordering ambiguous at indices " << i << ","
            << (i + 1);
        throw std::invalid_argument(msg.str());
      }
      others.push_back(chain[i + 1]);
      chain.erase(chain.begin() + static_cast<std::ptrdiff_t>(i + 1));
    } else {
      ++i;
    }
  }
  int d = static_cast<int>(chain.size());
  if (d < 1)
    throw std::invalid_argument("build_comparison_scheme: no zeros over the interval");

  // Cumulative masses over half-point cells of the chain's real parts.
  std::vector<double> cut(static_cast<size_t>(d + 1));
  cut[0] = a;
  cut[static_cast<size_t>(d)] = b;
  for (int j = 1; j < d; ++j)
    cut[static_cast<size_t>(j)] =
        0.5 * (std::real(chain[static_cast<size_t>(j - 1)]) + std::real(chain[static_cast<size_t>(j)]));
  std::vector<cplx> ys;
  double bj = 0.0;
  for (int j = 1; j < d; ++j) {
    bj += nu.mass(cut[static_cast<size_t>(j - 1)], cut[static_cast<size_t>(j)]);
    double aj = 2.0 - bj;
    ys.push_back(0.5 * (aj * chain[static_cast<size_t>(j - 1)] + bj * chain[static_cast<size_t>(j)]));
  }

  InterpolationSet out;
  auto push_reflected = [&out](cplx z) {
    if (std::abs(z) < 1e-8)
      out.at_infinity += 1;
    else
      out.points.push_back(1.0 / std::conj(z));
  };
  for (cplx y : ys) push_reflected(y);
  for (cplx z : others) push_reflected(z);
  return out;
}

}  // namespace ratl2
