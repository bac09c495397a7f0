#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "qwsearch/secular.hpp"

namespace qwsearch {

struct EvolutionTrace {
  double gamma;
  std::vector<double> times;
  std::vector<std::complex<double>> amplitudes;  // <w| exp(-iHt) |s>
  std::vector<double> probabilities;             // |amplitude|^2
};

// Success amplitude -(1/sqrt N) sum_a exp(-i E_a t) / (E_a F'(E_a)). Meant
// for t >= 0; the formula itself is valid for any real t.
std::complex<double> amplitude(const SecularSpectrum& spec, double t);

inline double probability(const SecularSpectrum& spec, double t) {
  return std::norm(amplitude(spec, t));
}

// Uniform grid of num_points times on [0, t_max], endpoints included.
// Throws RangeError for t_max <= 0 or num_points < 2.
EvolutionTrace trace(const SecularSpectrum& spec, double t_max, int num_points);

struct OptimalTime {
  double t_star;
  double p_star;
};

inline constexpr int kOptimalTimeGrid = 2048;

// Default search window 4 sqrt(N).
double default_time_window(std::int64_t num_vertices);

// Best point of a 2048-sample grid on [0, t_max], refined by golden section
// between its grid neighbours to relative width 1e-6.
OptimalTime find_optimal_time(const SecularSpectrum& spec, double t_max);
OptimalTime find_optimal_time(const SecularSpectrum& spec);

}  // namespace qwsearch
