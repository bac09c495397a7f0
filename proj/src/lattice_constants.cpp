#include "qwsearch/lattice_constants.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "qwsearch/errors.hpp"
#include "qwsearch/numeric.hpp"
#include "qwsearch/special_functions.hpp"

namespace qwsearch {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

double inverse_power(double base, int j) {
  const double inv = 1.0 / base;
  double r = inv;
  for (int i = 1; i < j; ++i) r *= inv;
  return r;
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Surface area of the unit sphere in R^d.
double sphere_area(int d) { return 2.0 * std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d); }

double ball_volume(int d) { return std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d + 1.0); }

// Visits every m in Z^d with m_i >= 0 and |m|^2 <= limit, passing |m|^2 and
// the number of sign choices it stands for.
template <class Visit>
void visit_positive_orthant(int dims_left, std::int64_t partial, std::int64_t weight,
                            std::int64_t limit, Visit& visit) {
  for (std::int64_t m = 0; partial + m * m <= limit; ++m) {
    const std::int64_t w = (m == 0) ? weight : 2 * weight;
    if (dims_left == 1) {
      visit(partial + m * m, w);
    } else {
      visit_positive_orthant(dims_left - 1, partial + m * m, w, limit, visit);
    }
  }
}

// r_d(n): number of m in Z^d with |m|^2 = n, for n <= radius^2.
const std::vector<std::int64_t>& shell_counts(int dim) {
  static const auto build = [](int d) {
    const std::int64_t limit = std::int64_t{kGFunctionRadius} * kGFunctionRadius;
    std::vector<std::int64_t> counts(static_cast<std::size_t>(limit + 1), 0);
    auto visit = [&](std::int64_t n, std::int64_t w) { counts[n] += w; };
    visit_positive_orthant(d, 0, 1, limit, visit);
    return counts;
  };
  static const std::vector<std::int64_t> two = build(2);
  static const std::vector<std::int64_t> three = build(3);
  return dim == 2 ? two : three;
}

void require_g_dim(int dim) {
  if (dim != 2 && dim != 3) throw RangeError("G function defined for dim 2 or 3");
}

}  // namespace

Estimate integral_I(int j, int d) {
  if (j < 1) throw RangeError("integral_I: j must be >= 1");
  if (d <= 2 * j) {
    throw DivergenceError("I_{" + std::to_string(j) + "," + std::to_string(d) +
                          "} diverges: need d > 2j");
  }
  const double split = 40.0 * d;
  const auto body = special::integrate(
      [&](double a) {
        return std::pow(a, j - 1) * std::pow(special::scaled_bessel_i0(a / d), d);
      },
      0.0, split, 1e-17, 1e-14, 4000);

  // [exp(-x) I_0(x)]^d ~ (2 pi x)^(-d/2) sum_k b_k x^-k, with b = (sum_k a_k y^k)^d.
  constexpr int kTerms = 16;
  std::array<double, kTerms> hankel{};
  hankel[0] = 1.0;
  for (int k = 1; k < kTerms; ++k) {
    hankel[k] = hankel[k - 1] * (2.0 * k - 1.0) * (2.0 * k - 1.0) / (8.0 * k);
  }
  std::array<double, kTerms> power{};
  power[0] = 1.0;
  for (int p = 0; p < d; ++p) {
    std::array<double, kTerms> next{};
    for (int a = 0; a < kTerms; ++a) {
      for (int b = 0; a + b < kTerms; ++b) next[a + b] += power[a] * hankel[b];
    }
    power = next;
  }
  // int_T^inf a^(j-1) (2 pi a / d)^(-d/2) (a/d)^-k da, term by term.
  const double prefactor = std::pow(2.0 * kPi / d, -0.5 * d);
  double tail = 0.0;
  double last = 0.0;
  for (int k = 0; k < kTerms; ++k) {
    const double expo = 0.5 * d + k - j;
    last = power[k] * std::pow(static_cast<double>(d), k) * std::pow(split, -expo) / expo;
    tail += last;
  }
  tail *= prefactor;
  last = std::abs(last) * prefactor;

  const double norm = std::pow(2.0 * d, j) * factorial(j - 1);
  const double value = (body.value + tail) / norm;
  const double error = (body.error + last) / norm + 16.0 * kEps * std::abs(value);
  return {value, error};
}

double finite_sum_S(int j, int d, int side) {
  if (side < 2) throw RangeError("finite_sum_S: side must be >= 2");
  if (d < 1 || j < 1) throw RangeError("finite_sum_S: need d >= 1 and j >= 1");
  // Distinct per-axis energies 4 sin^2(pi m / L), m = 0..L/2, with their
  // multiplicities; the d-fold product enumerates the grid exactly once.
  std::vector<double> axis;
  std::vector<double> mult;
  for (int m = 0; 2 * m <= side; ++m) {
    const double s = std::sin(kPi * m / side);
    axis.push_back(4.0 * s * s);
    mult.push_back((m == 0 || 2 * m == side) ? 1.0 : 2.0);
  }
  const std::size_t base = axis.size();
  std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
  numeric::CompensatedSum acc;
  while (true) {
    // Advance first so the all-zero (k = 0) combination is skipped.
    int pos = d - 1;
    while (pos >= 0 && ++idx[pos] == base) idx[pos--] = 0;
    if (pos < 0) break;
    double e = 0.0;
    double w = 1.0;
    for (int i = 0; i < d; ++i) {
      e += axis[idx[i]];
      w *= mult[idx[i]];
    }
    acc.add(w * inverse_power(e, j));
  }
  return acc.value() / std::pow(static_cast<double>(side), d);
}

double integral_I_bruteforce(int j, int d, int side) {
  if (d <= 2 * j) throw DivergenceError("integral_I_bruteforce: need d > 2j");
  if (side < 4) throw RangeError("integral_I_bruteforce: side must be >= 4");
  return finite_sum_S(j, d, side);
}

Estimate lattice_sum_c(int j, int d) {
  if (d < 1 || j < 1) throw RangeError("lattice_sum_c: need d >= 1 and j >= 1");
  if (2 * j <= d) {
    throw DivergenceError("c_{" + std::to_string(j) + "," + std::to_string(d) +
                          "} diverges: need 2j > d");
  }
  // Radius sized to roughly 2e7 lattice points.
  const std::int64_t radius =
      d == 1 ? 1'000'000
             : static_cast<std::int64_t>(std::pow(2e7 / ball_volume(d), 1.0 / d));
  const std::int64_t half = radius / 2;
  const std::int64_t limit = radius * radius;
  const std::int64_t half_limit = half * half;

  numeric::CompensatedSum inner, outer;
  auto visit = [&](std::int64_t n, std::int64_t w) {
    if (n == 0) return;
    const double t = static_cast<double>(w) * inverse_power(static_cast<double>(n), j);
    (n <= half_limit ? inner : outer).add(t);
  };
  visit_positive_orthant(d, 0, 1, limit, visit);

  // Continuum remainder beyond the shell; rho^2 = R^2 + 1/2 sits between the
  // last counted shell and the first uncounted one.
  const double expo = 2.0 * j - d;
  auto shell_tail = [&](std::int64_t r2) {
    const double rho = std::sqrt(static_cast<double>(r2) + 0.5);
    return sphere_area(d) * std::pow(rho, -expo) / expo;
  };
  const double scale = std::pow(2.0 * kPi, -2.0 * j);
  const double full = (inner.value() + outer.value() + shell_tail(limit)) * scale;
  const double coarse = (inner.value() + shell_tail(half_limit)) * scale;
  return {full, std::max(std::abs(full - coarse), 16.0 * kEps * full)};
}

InterceptFit fit_d2_intercept() {
  InterceptFit fit;
  fit.sides = {64, 128, 256, 512};
  std::vector<double> inv_n;
  for (int side : fit.sides) {
    const double n = static_cast<double>(side) * side;
    fit.offsets.push_back(finite_sum_S(1, 2, side) - std::log(n) / (4.0 * kPi));
    inv_n.push_back(1.0 / n);
  }
  const auto line = numeric::fit_line(inv_n, fit.offsets);
  fit.intercept = line.intercept;
  fit.slope = line.slope;
  fit.residuals = line.residuals;
  double worst = 0.0;
  for (double r : fit.residuals) worst = std::max(worst, std::abs(r));
  // Disagreement with the two largest lattices alone, plus the fit misfit.
  const std::size_t last = fit.sides.size() - 1;
  const double pair_intercept =
      fit.offsets[last] - (fit.offsets[last] - fit.offsets[last - 1]) * inv_n[last] /
                              (inv_n[last] - inv_n[last - 1]);
  fit.error = worst + std::abs(pair_intercept - fit.intercept) + 1e-15;
  return fit;
}

double d2_intercept() { return fit_d2_intercept().intercept; }

double g_function(double x, int dim) {
  require_g_dim(dim);
  if (!(x < 0.0)) throw RangeError("g_function: x must be negative");
  const auto& counts = shell_counts(dim);
  numeric::CompensatedSum acc;
  for (std::size_t n = counts.size() - 1; n >= 1; --n) {
    if (counts[n] == 0) continue;
    const double dn = static_cast<double>(n);
    acc.add(static_cast<double>(counts[n]) * x / (dn * (dn - x)));
  }
  const double u = -x;
  const double rho2 = static_cast<double>(counts.size() - 1) + 0.5;
  const double rho = std::sqrt(rho2);
  // Continuum remainder of sum x / (m^2 (m^2 - x)) over |m| > rho.
  const double tail = dim == 3 ? -4.0 * kPi * std::sqrt(u) * std::atan(std::sqrt(u) / rho)
                               : -kPi * std::log1p(u / rho2);
  return (acc.value() + tail - 1.0 / x) / (4.0 * kPi * kPi);
}

double g_function_derivative(double x, int dim) {
  require_g_dim(dim);
  if (!(x < 0.0)) throw RangeError("g_function_derivative: x must be negative");
  const auto& counts = shell_counts(dim);
  numeric::CompensatedSum acc;
  for (std::size_t n = counts.size() - 1; n >= 1; --n) {
    if (counts[n] == 0) continue;
    const double diff = static_cast<double>(n) - x;
    acc.add(static_cast<double>(counts[n]) / (diff * diff));
  }
  const double u = -x;
  const double rho2 = static_cast<double>(counts.size() - 1) + 0.5;
  const double rho = std::sqrt(rho2);
  const double tail =
      dim == 3 ? 2.0 * kPi * (std::atan(std::sqrt(u) / rho) / std::sqrt(u) + rho / (rho2 + u))
               : kPi / (rho2 + u);
  return (acc.value() + tail + 1.0 / (x * x)) / (4.0 * kPi * kPi);
}

double solve_x0(double a, int dim) {
  require_g_dim(dim);
  if (!std::isfinite(a)) throw RangeError("solve_x0: a must be finite");
  double hi = -1e-3;
  while (g_function(hi, dim) <= a) {
    hi *= 0.1;
    if (hi > -1e-200) throw NoRootError("solve_x0: G stays below a near zero");
  }
  double lo = -1.0;
  while (g_function(lo, dim) >= a) {
    lo *= 2.0;
    if (lo < -1e12) throw NoRootError("solve_x0: a below the range reached by G");
  }
  const double x0 = numeric::bracketed_root(
      [&](double x) {
        return std::pair<double, double>{g_function(x, dim) - a, g_function_derivative(x, dim)};
      },
      lo, hi);
  return x0;
}

std::vector<ConstantEntry> constant_table() {
  std::vector<ConstantEntry> table;
  const std::string quad = "bessel quadrature (GK15 adaptive to 40d + Hankel tail)";
  for (int d = 3; d <= 10; ++d) {
    const auto e = integral_I(1, d);
    table.push_back({"I", 1, d, std::nullopt, std::nullopt, e.value, e.error, quad, "split=40d"});
  }
  for (int d = 5; d <= 10; ++d) {
    const auto e = integral_I(2, d);
    table.push_back({"I", 2, d, std::nullopt, std::nullopt, e.value, e.error, quad, "split=40d"});
  }
  for (int d = 1; d <= 3; ++d) {
    const auto e = lattice_sum_c(2, d);
    table.push_back({"c", 2, d, std::nullopt, std::nullopt, e.value, e.error,
                     "ball sum + shell integral", "~2e7 lattice points"});
  }
  const auto fit = fit_d2_intercept();
  for (std::size_t i = 0; i < fit.sides.size(); ++i) {
    const std::int64_t n = std::int64_t{fit.sides[i]} * fit.sides[i];
    const double s = fit.offsets[i] + std::log(static_cast<double>(n)) / (4.0 * kPi);
    table.push_back({"S", 1, 2, n, std::nullopt, s, static_cast<double>(n) * kEps * s,
                     "exact momentum-grid sum", "none"});
  }
  table.push_back({"A-intercept", 1, 2, std::nullopt, std::nullopt, fit.intercept, fit.error,
                   "least squares A + B/N", "L=64,128,256,512"});
  for (int dim : {2, 3}) {
    const double x0 = solve_x0(0.0, dim);
    const double err = 1e-8 / g_function_derivative(x0, dim);
    table.push_back({"x0", 0, dim, std::nullopt, 0.0, x0, err, "bisection + Newton on G",
                     "radius=" + std::to_string(kGFunctionRadius)});
  }
  return table;
}

}  // namespace qwsearch
