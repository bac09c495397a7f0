#pragma once

#include <cstdint>
#include <vector>

#include "qwsearch/graph_spectra.hpp"

namespace qwsearch {

// One eigenvalue of H = -gamma L - |w><w| with nonzero weight on |w>.
struct SecularRoot {
  double energy;        // E_a, solves F(E_a) = 1
  double fprime;        // F'(E_a)
  double w_overlap_sq;  // R_a = |<w|psi_a>|^2 = 1 / F'(E_a)
  double s_overlap_sq;  // |<s|psi_a>|^2 = 1 / (N E_a^2 F'(E_a))
};

struct SecularSpectrum {
  double gamma;
  std::vector<SecularRoot> roots;  // ascending; roots[0] is the ground state
  std::int64_t num_vertices;
  std::int64_t irrelevant_count;   // eigenvectors of H orthogonal to |w>
};

// F(E) = (1/N) sum_levels multiplicity / (gamma * level - E). Throws
// PoleError when E sits on a scaled level to machine precision.
double secular_value(const LevelSpectrum& ls, double gamma, double energy);

// F'(E) = (1/N) sum_levels multiplicity / (gamma * level - E)^2.
double secular_derivative(const LevelSpectrum& ls, double gamma, double energy);

// All relevant roots: one below zero and one strictly between each pair of
// consecutive scaled levels. Throws RangeError for gamma <= 0 and
// BracketError if a bracket cannot be established.
SecularSpectrum solve_spectrum(const LevelSpectrum& ls, double gamma);

// The `count` lowest relevant roots only (count is clamped to the number of
// levels). Cheaper than solve_spectrum when only the bottom matters.
std::vector<SecularRoot> lowest_roots(const LevelSpectrum& ls, double gamma,
                                      int count);

struct GroundAndGap {
  double ground;         // E_0 < 0
  double first_excited;  // lowest positive relevant root E_1
  double gap;            // E_1 - E_0
};

GroundAndGap ground_and_gap(const LevelSpectrum& ls, double gamma);

}  // namespace qwsearch
