#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qwsearch {

struct Estimate {
  double value;
  double error;  // estimated absolute error, always > 0
};

// Brillouin-zone integral I_{j,d} = (2 pi)^-d int d^dk E(k)^-j, evaluated
// through its Bessel representation
//   (2d)^-j / (j-1)! int_0^inf a^(j-1) [exp(-a/d) I_0(a/d)]^d da.
// The integral is split at a = 40 d: adaptive Gauss-Kronrod below, and the
// Hankel expansion of the integrand integrated term by term above.
// Throws DivergenceError unless d > 2j.
Estimate integral_I(int j, int d);

// Finite Brillouin sum S_{j,d} at N = L^d, as an independent estimate of
// I_{j,d}. Requires d > 2j and L >= 4.
double integral_I_bruteforce(int j, int d, int side);

// S_{j,d} = (1/N) sum_{k != 0} E(k)^-j over the momentum grid. Requires L >= 2.
double finite_sum_S(int j, int d, int side);

// c_{j,d} = (2 pi)^-2j sum_{m in Z^d, m != 0} (m^2)^-j. Direct sum over the
// ball m^2 <= R^2 plus a continuum shell integral for the remainder; the
// error estimate is the change when R is halved. Requires 2j > d.
Estimate lattice_sum_c(int j, int d);

struct InterceptFit {
  std::vector<int> sides;
  std::vector<double> offsets;  // S_{1,2}(L) - ln(N) / (4 pi), per side
  double intercept;             // A
  double slope;                 // coefficient of 1/N
  std::vector<double> residuals;
  double error;
};

// Least-squares fit of S_{1,2}(N) - ln(N)/(4 pi) = A + B/N over
// L in {64, 128, 256, 512}.
InterceptFit fit_d2_intercept();
double d2_intercept();

// Rescaled secular function near the critical point for dim in {2, 3}:
//   G(x) = (1/4 pi^2) (sum_{m != 0} x / (m^2 (m^2 - x)) - 1/x),  x < 0.
// Shells m^2 <= 200^2 are summed exactly, the rest by a continuum integral.
double g_function(double x, int dim);
double g_function_derivative(double x, int dim);

inline constexpr int kGFunctionRadius = 200;

// The negative root of G(x) = a. Throws NoRootError if no bracket is found.
double solve_x0(double a, int dim);

struct ConstantEntry {
  std::string kind;  // "I", "c", "S", "A-intercept", "x0"
  int j;
  int d;
  std::optional<std::int64_t> num_vertices;
  std::optional<double> a;
  double value;
  double error;
  std::string method;
  std::string truncation;
};

// I_{1,3..10}, I_{2,5..10}, c_{2,1..3}, the S_{1,2} fit points, A and x_0(a=0)
// for dims 2 and 3.
std::vector<ConstantEntry> constant_table();

}  // namespace qwsearch
