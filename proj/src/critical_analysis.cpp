#include "qwsearch/critical_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qwsearch/errors.hpp"
#include "qwsearch/evolution.hpp"
#include "qwsearch/lattice_constants.hpp"
#include "qwsearch/numeric.hpp"

namespace qwsearch {

namespace {

constexpr double kPi = std::numbers::pi;

double cached_d2_intercept() {
  static const double a = d2_intercept();
  return a;
}

void require_outside_window(double gamma, double gamma_c, std::int64_t n) {
  if (!(gamma > 0.0)) throw RangeError("gamma must be positive");
  const double margin = critical_margin(gamma_c, n);
  if (std::abs(gamma - gamma_c) < margin) {
    throw CriticalMarginError("gamma = " + std::to_string(gamma) +
                              " is within " + std::to_string(margin) +
                              " of the critical coupling " + std::to_string(gamma_c));
  }
}

BoundCheck make_check(std::string id, double lhs, double rhs, double slack) {
  return {std::move(id), lhs, rhs, slack, lhs <= rhs * slack};
}

// Rigorous inequalities still get a rounding allowance.
constexpr double kExactSlack = 1.0 + 1e-9;

// Smallest |E| compatible with F(E) = 1 in d = 4 below the critical point:
// root of I/gamma - (pi^2 e / (256 gamma^2)) ln(1 + 16 gamma / e) = 1.
double d4_energy_floor(double i1, double gamma) {
  auto excess = [&](double e) {
    return 1.0 - (i1 / gamma - kPi * kPi * e / (256.0 * gamma * gamma) *
                                   std::log1p(16.0 * gamma / e));
  };
  double hi = gamma;
  while (excess(hi) <= 0.0) {
    hi *= 2.0;
    if (hi > 1e12) throw NoRootError("d = 4 energy floor: no sign change");
  }
  double lo = hi;
  while (excess(lo) >= 0.0) {
    lo *= 0.5;
    if (lo < 1e-300) throw NoRootError("d = 4 energy floor: no sign change");
  }
  return numeric::bracketed_root(
      [&](double e) {
        const double h = 1e-7 * e;
        return std::pair<double, double>{excess(e), (excess(e + h) - excess(e - h)) / (2 * h)};
      },
      lo, hi);
}

int lattice_dim(const GraphFamily& g) {
  const auto* lat = g.as_lattice();
  return lat ? lat->dim : 0;
}

}  // namespace

ScanRecord scan_point(const LevelSpectrum& ls, double gamma) {
  const auto r = lowest_roots(ls, gamma, 2);
  return {gamma,
          r[0].energy,
          r[1].energy,
          r[1].energy - r[0].energy,
          r[0].s_overlap_sq,
          r[1].s_overlap_sq,
          r[0].w_overlap_sq,
          r[1].w_overlap_sq};
}

std::vector<ScanRecord> scan_gamma(const GraphFamily& g, double gamma_lo,
                                   double gamma_hi, int num_points) {
  if (!(gamma_lo > 0.0) || !(gamma_hi > gamma_lo)) {
    throw RangeError("scan_gamma: need 0 < gamma_lo < gamma_hi");
  }
  if (num_points < 2) throw RangeError("scan_gamma: need at least two points");
  const LevelSpectrum ls = level_spectrum(g);
  std::vector<ScanRecord> out;
  out.reserve(num_points);
  for (int i = 0; i < num_points; ++i) {
    const double gamma = (i == num_points - 1)
                             ? gamma_hi
                             : gamma_lo + (gamma_hi - gamma_lo) * i / (num_points - 1);
    out.push_back(scan_point(ls, gamma));
  }
  return out;
}

double critical_window_center(const LevelSpectrum& ls) { return ls.inverse_moment(1); }

double find_critical_gamma(const LevelSpectrum& ls) {
  const double center = critical_window_center(ls);
  constexpr int kSamples = 64;
  const double lo = center / 4.0;
  const double ratio = std::pow(16.0, 1.0 / (kSamples - 1));
  std::vector<double> gammas(kSamples);
  std::size_t best = 0;
  double best_gap = 0.0;
  for (int i = 0; i < kSamples; ++i) {
    gammas[i] = lo * std::pow(ratio, i);
    const double gap = ground_and_gap(ls, gammas[i]).gap;
    if (i == 0 || gap < best_gap) {
      best = i;
      best_gap = gap;
    }
  }
  const double a = gammas[best == 0 ? 0 : best - 1];
  const double b = gammas[std::min<std::size_t>(best + 1, kSamples - 1)];
  return numeric::golden_section_min([&](double g) { return ground_and_gap(ls, g).gap; },
                                     a, b, 1e-6)
      .x;
}

double find_critical_gamma(const GraphFamily& g) {
  return find_critical_gamma(level_spectrum(g));
}

double critical_margin(double gamma_c, std::int64_t num_vertices) {
  return std::max(0.1 * gamma_c, 5.0 * gamma_c / std::sqrt(static_cast<double>(num_vertices)));
}

double asymptotic_critical_gamma(const GraphFamily& g) {
  const int d = lattice_dim(g);
  if (d >= 3) return integral_I(1, d).value;
  if (d == 2) {
    return std::log(static_cast<double>(g.num_vertices())) / (4.0 * kPi) + cached_d2_intercept();
  }
  return critical_window_center(level_spectrum(g));
}

bool BoundReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const BoundCheck& c) { return c.pass; });
}

BoundReport verify_transition_bounds(const GraphFamily& g, double gamma) {
  const LevelSpectrum ls = level_spectrum(g);
  const std::int64_t n = g.num_vertices();
  const double nd = static_cast<double>(n);
  BoundReport rep;
  rep.graph = g.spec();
  rep.gamma = gamma;
  rep.gamma_c = find_critical_gamma(ls);
  require_outside_window(gamma, rep.gamma_c, n);
  rep.gamma_asymptotic = asymptotic_critical_gamma(g);
  rep.above_critical = gamma > rep.gamma_c;

  const auto roots = lowest_roots(ls, gamma, 2);
  const double s2 = ls.inverse_moment(2);
  const double ic = rep.gamma_asymptotic;
  // The closed forms need gamma on the same side of the asymptotic value.
  if (rep.above_critical && gamma > ic) {
    const double dist = gamma - ic;
    rep.checks.push_back(make_check("ground_energy", std::abs(roots[0].energy),
                                    gamma / (nd * dist), kSmallTermsSlack));
    rep.checks.push_back(make_check("ground_s_leakage", 1.0 - roots[0].s_overlap_sq,
                                    s2 / (nd * dist * dist), kSmallTermsSlack));
  } else if (!rep.above_critical && gamma < ic) {
    const double dist = ic - gamma;
    rep.checks.push_back(make_check("first_excited_energy", roots[1].energy,
                                    gamma / (nd * dist), kSmallTermsSlack));
    rep.checks.push_back(make_check("first_excited_s_leakage", 1.0 - roots[1].s_overlap_sq,
                                    s2 / (nd * dist * dist), kSmallTermsSlack));
  }
  return rep;
}

std::vector<double> default_failure_grid(std::int64_t num_vertices) {
  const double t_max = 8.0 * std::sqrt(static_cast<double>(num_vertices));
  std::vector<double> grid(2048);
  for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = t_max * i / (grid.size() - 1);
  return grid;
}

BoundReport verify_failure_bounds(const GraphFamily& g, double gamma) {
  return verify_failure_bounds(g, gamma, default_failure_grid(g.num_vertices()));
}

BoundReport verify_failure_bounds(const GraphFamily& g, double gamma,
                                  const std::vector<double>& t_grid) {
  if (t_grid.empty()) throw RangeError("verify_failure_bounds: empty time grid");
  const LevelSpectrum ls = level_spectrum(g);
  const std::int64_t n = g.num_vertices();
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  BoundReport rep;
  rep.graph = g.spec();
  rep.gamma = gamma;
  rep.gamma_c = find_critical_gamma(ls);
  require_outside_window(gamma, rep.gamma_c, n);
  rep.gamma_asymptotic = asymptotic_critical_gamma(g);
  rep.above_critical = gamma > rep.gamma_c;

  const SecularSpectrum spec = solve_spectrum(ls, gamma);
  double max_amp = 0.0;
  for (double t : t_grid) max_amp = std::max(max_amp, std::abs(amplitude(spec, t)));
  const SecularRoot& ground = spec.roots[0];
  const double e0 = std::abs(ground.energy);

  rep.checks.push_back(make_check("sum_rule_amplitude", max_amp,
                                  (2.0 / (e0 * ground.fprime) - 1.0) / sqrt_n, kExactSlack));
  rep.checks.push_back(make_check("global_ground_energy", max_amp, 2.0 * sqrt_n * e0, kExactSlack));

  const int d = lattice_dim(g);
  const double ic = rep.gamma_asymptotic;
  if (rep.above_critical) {
    if (gamma > ic) {
      rep.checks.push_back(make_check("above_critical_amplitude", max_amp,
                                      2.0 * gamma / (sqrt_n * (gamma - ic)), kSmallTermsSlack));
    }
  } else if (d > 4 && gamma < ic) {
    const double i2 = integral_I(2, d).value;
    rep.checks.push_back(make_check("below_critical_amplitude_d_gt_4", max_amp,
                                    2.0 * i2 / (gamma * (ic - gamma)) / sqrt_n,
                                    kSmallTermsSlack));
  } else if (d == 4 && gamma < ic) {
    rep.checks.push_back(make_check("below_critical_amplitude_d4", max_amp,
                                    2.0 / (sqrt_n * d4_energy_floor(ic, gamma)),
                                    kSmallTermsSlack));
  } else if (d == 3 && gamma < ic) {
    const double dist = ic - gamma;
    rep.checks.push_back(make_check("below_critical_amplitude_d3", max_amp,
                                    2.0 * std::pow(kPi, 4) / (1024.0 * gamma * dist * dist) / sqrt_n,
                                    kSmallTermsSlack));
  } else if (d == 2) {
    rep.checks.push_back(make_check("below_critical_amplitude_d2", max_amp,
                                    8.0 * (e0 + kPi * kPi * gamma) / kPi / sqrt_n,
                                    kSmallTermsSlack));
  }
  return rep;
}

std::vector<CriticalPrediction> critical_predictions(int dim, const std::vector<int>& sides,
                                                     CouplingChoice coupling) {
  if (dim < 4) {
    throw RangeError("critical predictions need d >= 4; the expansion fails below");
  }
  const double i1 = integral_I(1, dim).value;
  std::vector<CriticalPrediction> rows;
  for (int side : sides) {
    const GraphFamily g = GraphFamily::lattice(dim, side);
    const LevelSpectrum ls = level_spectrum(g);
    const double n = static_cast<double>(g.num_vertices());
    const double i2 = dim > 4 ? integral_I(2, dim).value : std::log(n) / (32.0 * kPi * kPi);

    CriticalPrediction row{};
    row.side = side;
    row.num_vertices = g.num_vertices();
    row.gamma = coupling == CouplingChoice::Measured ? find_critical_gamma(ls) : i1;
    const double e = i1 / std::sqrt(i2 * n);
    row.ground_predicted = -e;
    row.first_excited_predicted = e;
    row.gap_predicted = 2.0 * e;
    row.fprime_predicted = 2.0 * i2 / (i1 * i1);
    row.p_max_predicted = i1 * i1 / i2;
    row.t_predicted = 0.5 * kPi / e;

    const SecularSpectrum spec = solve_spectrum(ls, row.gamma);
    row.ground = spec.roots[0].energy;
    row.first_excited = spec.roots[1].energy;
    row.gap = row.first_excited - row.ground;
    row.fprime_ground = spec.roots[0].fprime;
    row.fprime_first = spec.roots[1].fprime;
    const double window = std::max(default_time_window(row.num_vertices), 2.0 * row.t_predicted);
    const OptimalTime opt = find_optimal_time(spec, window);
    row.t_star = opt.t_star;
    row.p_star = opt.p_star;
    rows.push_back(row);
  }
  return rows;
}

ScalingRecord measure_scaling_point(const GraphFamily& g, std::optional<double> gamma) {
  const LevelSpectrum ls = level_spectrum(g);
  const double used = gamma ? *gamma : find_critical_gamma(ls);
  const SecularSpectrum spec = solve_spectrum(ls, used);
  const OptimalTime opt = find_optimal_time(spec);
  return {g.num_vertices(), used, spec.roots[1].energy - spec.roots[0].energy,
          opt.t_star, opt.p_star, opt.t_star / opt.p_star};
}

SubcriticalReport subcritical_scaling(int dim, const std::vector<int>& sides) {
  if (dim != 2 && dim != 3) throw RangeError("subcritical scaling covers d = 2 and d = 3");
  SubcriticalReport rep{dim, {}, {}};
  const double i13 = dim == 3 ? integral_I(1, 3).value : 0.0;
  const double x0_zero = solve_x0(0.0, dim);
  for (int side : sides) {
    const GraphFamily g = GraphFamily::lattice(dim, side);
    const ScalingRecord rec = measure_scaling_point(g);
    rep.records.push_back(rec);

    const double n = static_cast<double>(rec.num_vertices);
    const double ln_n = std::log(n);
    CeilingCheck c{};
    c.num_vertices = rec.num_vertices;
    c.x0_at_zero = x0_zero;
    c.max_amplitude = std::sqrt(rec.p_star);
    if (dim == 3) {
      c.rescaled_offset = (rec.gamma_used - i13) * std::cbrt(n);
      c.x0 = solve_x0(c.rescaled_offset, 3);
      c.amplitude_ceiling = 8.0 * kPi * kPi * i13 * std::abs(c.x0) / std::pow(n, 1.0 / 6.0);
      c.runtime_asymptotic =
          std::pow(n, 2.0 / 3.0) / (8.0 * kPi * kPi * i13 * std::abs(c.x0));
      c.runtime_slack = 1.0 / kSmallTermsSlack;
    } else {
      c.rescaled_offset = rec.gamma_used - ln_n / (4.0 * kPi) - cached_d2_intercept();
      c.x0 = solve_x0(c.rescaled_offset, 2);
      c.amplitude_ceiling = 4.0 * kPi * std::abs(c.x0) * ln_n / std::sqrt(n);
      c.runtime_asymptotic = n / (4.0 * kPi * std::abs(c.x0) * ln_n);
      c.runtime_slack = 1.0 / kD2FiniteSizeSlack;
    }
    c.ceiling_pass = c.max_amplitude <= c.amplitude_ceiling;
    c.runtime_floor = std::sqrt(n) / c.max_amplitude;
    c.runtime_floor_pass = rec.runtime_metric >= c.runtime_floor;
    c.runtime_asymptotic_pass = rec.runtime_metric >= c.runtime_slack * c.runtime_asymptotic;
    rep.ceilings.push_back(c);
  }
  return rep;
}

double fit_exponent(const std::vector<double>& xs, const std::vector<double>& ys) {
  std::vector<double> lx, ly;
  for (double x : xs) lx.push_back(std::log(x));
  for (double y : ys) ly.push_back(std::log(y));
  return numeric::fit_line(lx, ly).slope;
}

}  // namespace qwsearch
