#include "qwsearch/evolution.hpp"

#include <cmath>
#include <string>

#include "qwsearch/errors.hpp"
#include "qwsearch/numeric.hpp"

namespace qwsearch {

std::complex<double> amplitude(const SecularSpectrum& spec, double t) {
  numeric::CompensatedSum re, im;
  for (const SecularRoot& r : spec.roots) {
    const double c = 1.0 / (r.energy * r.fprime);
    const double phase = r.energy * t;
    re.add(c * std::cos(phase));
    im.add(-c * std::sin(phase));
  }
  const double scale = -1.0 / std::sqrt(static_cast<double>(spec.num_vertices));
  return {scale * re.value(), scale * im.value()};
}

EvolutionTrace trace(const SecularSpectrum& spec, double t_max, int num_points) {
  if (!(t_max > 0.0) || !std::isfinite(t_max)) {
    throw RangeError("trace: t_max must be positive, got " + std::to_string(t_max));
  }
  if (num_points < 2) throw RangeError("trace: need at least two time points");
  EvolutionTrace out;
  out.gamma = spec.gamma;
  out.times.reserve(num_points);
  out.amplitudes.reserve(num_points);
  out.probabilities.reserve(num_points);
  for (int i = 0; i < num_points; ++i) {
    const double t = (i == num_points - 1) ? t_max : t_max * i / (num_points - 1);
    const auto a = amplitude(spec, t);
    out.times.push_back(t);
    out.amplitudes.push_back(a);
    out.probabilities.push_back(std::norm(a));
  }
  return out;
}

double default_time_window(std::int64_t num_vertices) {
  return 4.0 * std::sqrt(static_cast<double>(num_vertices));
}

OptimalTime find_optimal_time(const SecularSpectrum& spec, double t_max) {
  if (!(t_max > 0.0)) throw RangeError("find_optimal_time: t_max must be positive");
  const EvolutionTrace tr = trace(spec, t_max, kOptimalTimeGrid);
  std::size_t best = 0;
  for (std::size_t i = 1; i < tr.probabilities.size(); ++i) {
    if (tr.probabilities[i] > tr.probabilities[best]) best = i;
  }
  const double lo = tr.times[best == 0 ? 0 : best - 1];
  const double hi = tr.times[std::min(best + 1, tr.times.size() - 1)];
  const auto refined = numeric::golden_section_max(
      [&](double t) { return probability(spec, t); }, lo, hi, 1e-6);
  if (refined.value >= tr.probabilities[best]) return {refined.x, refined.value};
  return {tr.times[best], tr.probabilities[best]};
}

OptimalTime find_optimal_time(const SecularSpectrum& spec) {
  return find_optimal_time(spec, default_time_window(spec.num_vertices));
}

}  // namespace qwsearch
