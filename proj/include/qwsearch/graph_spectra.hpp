#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace qwsearch {

struct CompleteGraph {
  std::int64_t num_vertices;
  friend bool operator==(const CompleteGraph&, const CompleteGraph&) = default;
};

// n-bit strings, adjacent when they differ in exactly one bit.
struct Hypercube {
  int num_bits;
  friend bool operator==(const Hypercube&, const Hypercube&) = default;
};

// d-dimensional cubic lattice, periodic with period `side` in every direction.
struct PeriodicLattice {
  int dim;
  int side;
  friend bool operator==(const PeriodicLattice&, const PeriodicLattice&) = default;
};

// The search domain. Construction validates sizes (N >= 2, lattice side >= 2)
// and throws RangeError otherwise.
class GraphFamily {
 public:
  using Variant = std::variant<CompleteGraph, Hypercube, PeriodicLattice>;

  static GraphFamily complete(std::int64_t num_vertices);
  static GraphFamily hypercube(int num_bits);
  static GraphFamily lattice(int dim, int side);

  const Variant& variant() const noexcept { return variant_; }
  const PeriodicLattice* as_lattice() const noexcept {
    return std::get_if<PeriodicLattice>(&variant_);
  }

  std::int64_t num_vertices() const noexcept { return num_vertices_; }
  int max_degree() const noexcept;

  // Canonical text form: complete:N, hypercube:n or lattice:d:L.
  std::string spec() const;

  friend bool operator==(const GraphFamily& a, const GraphFamily& b) {
    return a.variant_ == b.variant_;
  }

 private:
  GraphFamily(Variant v, std::int64_t n) : variant_(v), num_vertices_(n) {}
  Variant variant_;
  std::int64_t num_vertices_;
};

// Integer momentum labels m_j; the wavenumber is k_j = 2 pi m_j / side.
struct MomentumVector {
  std::vector<int> m;
  int side;

  std::vector<double> wavenumbers() const;
};

// Lattice dispersion 2 (d - sum_j cos k_j), evaluated as 4 sum_j sin^2(k_j / 2)
// so that small-k energies keep full relative precision.
double dispersion(const MomentumVector& k);

// All side^dim momenta. Per component the labels run 0, +1, -1, +2, -2, ...,
// ending at +-(side-1)/2 for odd side and at +side/2 for even side.
std::vector<MomentumVector> momentum_grid(int dim, int side);

struct Level {
  double energy;  // eigenvalue of -L (L = A - D)
  std::int64_t multiplicity;
};

// Distinct eigenvalues of -L with multiplicities. All three families are
// vertex-transitive with a uniform-magnitude eigenbasis, so every eigenvector
// has |<phi|w>|^2 = 1/N.
class LevelSpectrum {
 public:
  LevelSpectrum(std::vector<Level> levels, std::int64_t num_vertices);

  const std::vector<Level>& levels() const noexcept { return levels_; }
  std::int64_t num_vertices() const noexcept { return num_vertices_; }
  double marked_overlap_sq() const noexcept {
    return 1.0 / static_cast<double>(num_vertices_);
  }

  // (1/N) sum over nonzero levels of multiplicity / energy^j; the finite-N
  // lattice sum S_j.
  double inverse_moment(int j) const;

 private:
  std::vector<Level> levels_;
  std::int64_t num_vertices_;
};

// Two lattice energies are one level when they differ by at most this much.
double lattice_level_tolerance(int dim);

LevelSpectrum level_spectrum(const GraphFamily& g);

}  // namespace qwsearch
