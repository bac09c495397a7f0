#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace qwsearch::numeric {

// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double x) noexcept;
  double value() const noexcept { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

double compensated_total(std::span<const double> terms);

struct Extremum {
  double x;
  double value;
};

// Golden-section search for a maximum of f on [lo, hi], stopping when the
// bracket is narrower than rel_tol * max(|lo|, |hi|, tiny).
Extremum golden_section_max(const std::function<double(double)>& f, double lo,
                            double hi, double rel_tol = 1e-6);
Extremum golden_section_min(const std::function<double(double)>& f, double lo,
                            double hi, double rel_tol = 1e-6);

struct RootOptions {
  // Stop bisecting once hi - lo <= abs_width.
  double abs_width = 0.0;
  int max_bisections = 400;
  int max_newton = 8;
};

// Value and derivative of an increasing function.
using ValueAndSlope = std::function<std::pair<double, double>(double)>;

// Root of an increasing function bracketed by f(lo) < 0 < f(hi). Bisection
// (geometric midpoints when the bracket spans decades on one side of zero)
// narrows the bracket, then Newton steps polish the estimate as long as they
// stay inside it and reduce |f|.
double bracketed_root(const ValueAndSlope& f, double lo, double hi,
                      const RootOptions& opts = {});

struct LineFit {
  double slope;
  double intercept;
  std::vector<double> residuals;  // y - (intercept + slope * x)
};

// Ordinary least squares y = intercept + slope * x.
LineFit fit_line(std::span<const double> xs, std::span<const double> ys);

}  // namespace qwsearch::numeric
