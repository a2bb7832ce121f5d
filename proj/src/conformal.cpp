#include "ratl2/conformal.hpp"

#include <cmath>

namespace ratl2 {

cplx sqrt_branch(cplx z, double a, double b, Side side) {
  if (!(a < b)) throw std::invalid_argument("sqrt_branch: need a < b");
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  if (side != Side::None) {
    double x = z.real();
    if (std::abs(z.imag()) > 1e-12 || x < a || x > b)
      throw std::domain_error("sqrt_branch: side flag requires a point on the cut");
    double s = std::sqrt(std::max(0.0, (x - a) * (b - x)));
    return (side == Side::Plus) ? cplx{0.0, s} : cplx{0.0, -s};
  }
  // Principal square roots of (zeta-1) and (zeta+1) multiply to the branch
  // with cut exactly [-1,1] and asymptotics ~ zeta at infinity.
  cplx zeta = (z - mid) / half;
  return half * std::sqrt(zeta - 1.0) * std::sqrt(zeta + 1.0);
}

cplx disk_coordinate(cplx z, double a, double b, Side side) {
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  // (z-mid-w)(z-mid+w) = half^2, so phi = half/(z-mid+w); this form avoids
  // the cancellation of z-mid-w at large |z| and |z-mid+w| >= half always.
  cplx w = sqrt_branch(z, a, b, side);
  return half / (z - mid + w);
}

cplx from_disk_coordinate(cplx u, double a, double b) {
  if (u == cplx{0.0}) throw std::domain_error("from_disk_coordinate: 0 maps to infinity");
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  return mid + 0.5 * half * (u + 1.0 / u);
}

}  // namespace ratl2
