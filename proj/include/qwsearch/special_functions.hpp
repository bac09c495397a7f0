#pragma once

#include <functional>

namespace qwsearch::special {

// exp(-x) I_0(x) for x >= 0. Power series below the crossover, Hankel
// asymptotic series above it; both sides are good to about 1e-15 relative.
double scaled_bessel_i0(double x);

inline constexpr double kBesselCrossover = 17.5;

struct Quadrature {
  double value;
  double error;
  int intervals;
};

// Adaptive Gauss-Kronrod (7/15) on [a, b]: bisects the worst interval until
// the summed error estimate is below max(abs_tol, rel_tol * |value|).
Quadrature integrate(const std::function<double(double)>& f, double a, double b,
                     double abs_tol, double rel_tol, int max_intervals = 2000);

}  // namespace qwsearch::special
