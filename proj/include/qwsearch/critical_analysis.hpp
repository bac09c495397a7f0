#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qwsearch/graph_spectra.hpp"
#include "qwsearch/secular.hpp"

namespace qwsearch {

// One gamma sample of the gap/overlap curves.
struct ScanRecord {
  double gamma;
  double ground;
  double first_excited;
  double gap;
  double overlap_s_psi0;
  double overlap_s_psi1;
  double overlap_w_psi0;
  double overlap_w_psi1;
};

ScanRecord scan_point(const LevelSpectrum& ls, double gamma);

// num_points couplings evenly spaced on [gamma_lo, gamma_hi].
std::vector<ScanRecord> scan_gamma(const GraphFamily& g, double gamma_lo,
                                   double gamma_hi, int num_points);

// Finite-N analogue of I_{1,d}: (1/N) sum_{k != 0} 1 / E(k). Used only as the
// centre of the search window for the critical coupling.
double critical_window_center(const LevelSpectrum& ls);

// Gap-minimizing coupling: 64-point log scan over [center/4, 4 center], then
// golden section between the best sample's neighbours to relative width 1e-6.
double find_critical_gamma(const LevelSpectrum& ls);
double find_critical_gamma(const GraphFamily& g);

// Couplings closer than this to gamma_c are inside the critical window.
double critical_margin(double gamma_c, std::int64_t num_vertices);

// Asymptotic location of the transition: I_{1,d} for lattices with d > 2,
// ln(N)/(4 pi) + A for d = 2, and the finite-N window centre otherwise.
double asymptotic_critical_gamma(const GraphFamily& g);

inline constexpr double kSmallTermsSlack = 1.5;
inline constexpr double kD2FiniteSizeSlack = 2.0;

struct BoundCheck {
  std::string bound_id;
  double lhs;
  double rhs;
  double slack;  // pass when lhs <= rhs * slack
  bool pass;
};

struct BoundReport {
  std::string graph;
  double gamma;
  double gamma_c;         // measured
  double gamma_asymptotic;
  bool above_critical;
  std::vector<BoundCheck> checks;

  bool all_pass() const;
};

// Energy and |s>-leakage bounds on the side of the transition gamma lies on.
// Throws CriticalMarginError inside the critical window.
BoundReport verify_transition_bounds(const GraphFamily& g, double gamma);

// Maximum |<w|exp(-iHt)|s>| over t_grid against every closed-form amplitude
// bound that applies. The default grid is 2048 points on [0, 8 sqrt(N)].
BoundReport verify_failure_bounds(const GraphFamily& g, double gamma,
                                  const std::vector<double>& t_grid);
BoundReport verify_failure_bounds(const GraphFamily& g, double gamma);

// Time grid used when verify_failure_bounds is not given one.
std::vector<double> default_failure_grid(std::int64_t num_vertices);

struct CriticalPrediction {
  int side;
  std::int64_t num_vertices;
  double gamma;
  double ground_predicted, ground;
  double first_excited_predicted, first_excited;
  double gap_predicted, gap;
  double fprime_predicted, fprime_ground, fprime_first;
  double p_max_predicted, p_star;
  double t_predicted, t_star;

  double gap_deviation() const { return gap / gap_predicted - 1.0; }
  double p_deviation() const { return p_star / p_max_predicted - 1.0; }
};

enum class CouplingChoice { Measured, Asymptotic };

// Two-level predictions at the critical point for d >= 4 against the exact
// solver. For d = 4, I_{2,d} is replaced by ln(N) / (32 pi^2). Throws
// RangeError for d < 4.
std::vector<CriticalPrediction> critical_predictions(
    int dim, const std::vector<int>& sides,
    CouplingChoice coupling = CouplingChoice::Measured);

struct ScalingRecord {
  std::int64_t num_vertices;
  double gamma_used;
  double gap;
  double t_star;
  double p_star;
  double runtime_metric;  // t_star / p_star
};

// Optimal measurement at the given coupling (measured gamma_c by default).
ScalingRecord measure_scaling_point(const GraphFamily& g,
                                    std::optional<double> gamma = std::nullopt);

struct CeilingCheck {
  std::int64_t num_vertices;
  double rescaled_offset;  // a, from the measured gamma_c
  double x0;               // G(x0) = a
  double x0_at_zero;       // G(x0) = 0, for reference
  double max_amplitude;
  double amplitude_ceiling;
  bool ceiling_pass;
  double runtime_floor;        // sqrt(N) / max|amp|
  bool runtime_floor_pass;
  double runtime_asymptotic;   // N^(2/3)/(8 pi^2 I|x0|) or N/(4 pi |x0| ln N)
  double runtime_slack;
  bool runtime_asymptotic_pass;
};

struct SubcriticalReport {
  int dim;
  std::vector<ScalingRecord> records;
  std::vector<CeilingCheck> ceilings;
};

// d in {2, 3}: optimal measurement at the measured gamma_c for each side and
// the amplitude/runtime ceilings derived from the rescaled root x0.
SubcriticalReport subcritical_scaling(int dim, const std::vector<int>& sides);

// Slope of log(ys) against log(xs).
double fit_exponent(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace qwsearch
