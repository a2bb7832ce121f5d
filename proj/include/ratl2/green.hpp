#pragma once

#include <vector>

#include "ratl2/config.hpp"

namespace ratl2 {

/**
 * Discrete Green equilibrium distribution of [a,b] relative to the unit
 * disk: the probability measure minimizing the Green energy, found from the
 * stationarity system (constant Green potential on the support, mass one).
 * Cells follow a cosine grading so the edge singularity of the density is
 * resolved; masses live at cell midpoints.
 */
struct GreenEquilibrium {
  double a = 0.0, b = 0.0;
  std::vector<double> edges;    // cell boundaries, size n+1
  std::vector<double> x;        // cell midpoints
  std::vector<double> mass;     // cell masses, summing to 1
  std::vector<double> density;  // mass / cell width
  double potential = 0.0;       // the constant Green potential on the grid

  // Piecewise-linear CDF evaluated at t (0 left of a, 1 right of b).
  double cdf(double t) const;
};

GreenEquilibrium green_equilibrium(double a, double b, int grid_size = 400);

// Green kernel of the unit disk restricted to real points:
// log|1 - x y| - log|x - y|.
double green_kernel_disk(double x, double y);

}  // namespace ratl2
