#include "qwsearch/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qwsearch::numeric {

void CompensatedSum::add(double x) noexcept {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    compensation_ += (sum_ - t) + x;
  } else {
    compensation_ += (x - t) + sum_;
  }
  sum_ = t;
}

double compensated_total(std::span<const double> terms) {
  CompensatedSum acc;
  for (double t : terms) acc.add(t);
  return acc.value();
}

namespace {

constexpr double kInvPhi = 0.6180339887498949;  // (sqrt(5) - 1) / 2

Extremum golden_section(const std::function<double(double)>& score, double lo,
                        double hi, double rel_tol) {
  if (!(hi > lo)) return {lo, score(lo)};
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = score(x1);
  double f2 = score(x2);
  const double scale = std::max({std::abs(lo), std::abs(hi), 1e-300});
  while (hi - lo > rel_tol * scale) {
    if (f1 >= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = score(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = score(x2);
    }
  }
  return f1 >= f2 ? Extremum{x1, f1} : Extremum{x2, f2};
}

}  // namespace

Extremum golden_section_max(const std::function<double(double)>& f, double lo,
                            double hi, double rel_tol) {
  return golden_section(f, lo, hi, rel_tol);
}

Extremum golden_section_min(const std::function<double(double)>& f, double lo,
                            double hi, double rel_tol) {
  auto r = golden_section([&](double x) { return -f(x); }, lo, hi, rel_tol);
  return {r.x, -r.value};
}

double bracketed_root(const ValueAndSlope& f, double lo, double hi,
                      const RootOptions& opts) {
  if (!(hi > lo)) throw std::invalid_argument("bracketed_root: empty bracket");
  for (int i = 0; i < opts.max_bisections; ++i) {
    if (hi - lo <= opts.abs_width) break;
    double mid;
    if (lo > 0.0 && hi > 4.0 * lo) {
      mid = std::sqrt(lo) * std::sqrt(hi);
    } else if (hi < 0.0 && lo < 4.0 * hi) {
      mid = -std::sqrt(-lo) * std::sqrt(-hi);
    } else {
      mid = lo + 0.5 * (hi - lo);
    }
    if (!(mid > lo && mid < hi)) break;
    const double v = f(mid).first;
    if (v == 0.0) return mid;
    (v < 0.0 ? lo : hi) = mid;
  }

  double x = lo + 0.5 * (hi - lo);
  auto [v, slope] = f(x);
  for (int k = 0; k < opts.max_newton && v != 0.0; ++k) {
    if (!(slope > 0.0) || !std::isfinite(slope)) break;
    const double next = x - v / slope;
    if (!(next > lo && next < hi)) break;
    auto [vn, sn] = f(next);
    if (!(std::abs(vn) < std::abs(v))) break;
    (vn < 0.0 ? lo : hi) = next;
    const double step = std::abs(next - x);
    x = next;
    v = vn;
    slope = sn;
    if (step <= 2.0 * std::numeric_limits<double>::epsilon() * std::abs(x)) break;
  }
  return x;
}

LineFit fit_line(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw std::invalid_argument("fit_line: need at least two paired samples");
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_line: degenerate abscissae");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.residuals.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    fit.residuals.push_back(ys[i] - (fit.intercept + fit.slope * xs[i]));
  }
  return fit;
}

}  // namespace qwsearch::numeric
