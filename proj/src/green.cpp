#include "ratl2/green.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace ratl2 {

double green_kernel_disk(double x, double y) {
  return std::log(std::abs(1.0 - x * y)) - std::log(std::abs(x - y));
}

namespace {

// antiderivative of log|u| minus the constant: psi'(u) = log|u|, psi(0) = 0
double psi(double u) {
  if (u == 0.0) return 0.0;
  return u * std::log(std::abs(u)) - u;
}

}  // namespace

double GreenEquilibrium::cdf(double t) const {
  if (t <= a) return 0.0;
  if (t >= b) return 1.0;
  double acc = 0.0;
  for (size_t j = 0; j < x.size(); ++j) {
    double l = edges[j], r = edges[j + 1];
    if (t >= r) {
      acc += mass[j];
    } else {
      if (t > l) acc += mass[j] * (t - l) / (r - l);
      break;
    }
  }
  return acc;
}

GreenEquilibrium green_equilibrium(double a, double b, int grid_size) {
  if (!(a < b) || !(a > -1.0) || !(b < 1.0))
    throw std::invalid_argument("green_equilibrium: need -1 < a < b < 1");
  if (grid_size < 8) throw std::invalid_argument("green_equilibrium: grid too small");
  int n = grid_size;
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  std::vector<double> edge(static_cast<size_t>(n + 1));
  for (int k = 0; k <= n; ++k)
    edge[static_cast<size_t>(k)] =
        mid - half * std::cos(pi * static_cast<double>(k) / static_cast<double>(n));
  edge.front() = a;
  edge.back() = b;

  // Potential of cell j at point t, with the log-singular part averaged over
  // the cell so the kernel stays finite and consistent on and off the grid.
  auto cell_potential = [&](double t, int j) {
    double l = edge[static_cast<size_t>(j)], r = edge[static_cast<size_t>(j + 1)];
    double xj = 0.5 * (l + r);
    return std::log(std::abs(1.0 - t * xj)) - (psi(r - t) - psi(l - t)) / (r - l);
  };

  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n + 1, n + 1);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + 1);
  for (int i = 0; i < n; ++i) {
    double xi = 0.5 * (edge[static_cast<size_t>(i)] + edge[static_cast<size_t>(i + 1)]);
    for (int j = 0; j < n; ++j) M(i, j) = cell_potential(xi, j);
    M(i, n) = -1.0;  // constant potential on the support
  }
  for (int j = 0; j < n; ++j) M(n, j) = 1.0;  // unit mass
  rhs(n) = 1.0;
  Eigen::VectorXd sol = M.partialPivLu().solve(rhs);

  GreenEquilibrium g;
  g.a = a;
  g.b = b;
  g.potential = sol(n);
  g.edges = edge;
  g.x.resize(static_cast<size_t>(n));
  g.mass.resize(static_cast<size_t>(n));
  g.density.resize(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    double l = edge[static_cast<size_t>(j)], r = edge[static_cast<size_t>(j + 1)];
    g.x[static_cast<size_t>(j)] = 0.5 * (l + r);
    g.mass[static_cast<size_t>(j)] = sol(j);
    g.density[static_cast<size_t>(j)] = sol(j) / (r - l);
  }

  // Flatness between the collocation points decides whether the grid resolves
  // the equilibrium condition.
  double dev = 0.0;
  for (int k = 1; k < n; ++k) {
    double t = edge[static_cast<size_t>(k)];
    double u = 0.0;
    for (int j = 0; j < n; ++j) u += g.mass[static_cast<size_t>(j)] * cell_potential(t, j);
    dev = std::max(dev, std::abs(u - g.potential));
  }
  if (dev > 1e-3 * std::max(1.0, std::abs(g.potential)))
    throw resolution_error("green_equilibrium: potential not flat between grid points");
  return g;
}

}  // namespace ratl2
