#include "qwsearch/graph_spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qwsearch/errors.hpp"
#include "qwsearch/numeric.hpp"

namespace qwsearch {

namespace {

constexpr std::int64_t kMaxVertices = std::int64_t{1} << 40;

std::int64_t checked_power(int base, int exponent) {
  std::int64_t n = 1;
  for (int i = 0; i < exponent; ++i) {
    if (n > kMaxVertices / base) {
      throw RangeError("graph has more than 2^40 vertices");
    }
    n *= base;
  }
  return n;
}

std::int64_t binomial(int n, int r) {
  std::int64_t c = 1;
  for (int i = 1; i <= r; ++i) c = c * (n - r + i) / i;
  return c;
}

// Sort by energy and merge neighbours closer than tol.
std::vector<Level> group_levels(std::vector<Level> raw, double tol) {
  std::sort(raw.begin(), raw.end(),
            [](const Level& a, const Level& b) { return a.energy < b.energy; });
  std::vector<Level> out;
  out.reserve(raw.size());
  for (const Level& lv : raw) {
    if (!out.empty() && lv.energy - out.back().energy <= tol) {
      out.back().multiplicity += lv.multiplicity;
    } else {
      out.push_back(lv);
    }
  }
  return out;
}

LevelSpectrum lattice_levels(const PeriodicLattice& lat, std::int64_t n) {
  // Per-direction energies 4 sin^2(pi m / L) for m = 0..L/2; m and L-m coincide.
  std::vector<Level> axis;
  for (int m = 0; 2 * m <= lat.side; ++m) {
    const double s = std::sin(std::numbers::pi * m / lat.side);
    const bool self_paired = (m == 0) || (2 * m == lat.side);
    axis.push_back({4.0 * s * s, self_paired ? 1 : 2});
  }
  const double tol = lattice_level_tolerance(lat.dim);
  std::vector<Level> acc{{0.0, 1}};
  for (int j = 0; j < lat.dim; ++j) {
    std::vector<Level> next;
    next.reserve(acc.size() * axis.size());
    for (const Level& a : acc) {
      for (const Level& b : axis) {
        next.push_back({a.energy + b.energy, a.multiplicity * b.multiplicity});
      }
    }
    acc = group_levels(std::move(next), tol);
  }
  acc.front().energy = 0.0;
  return LevelSpectrum(std::move(acc), n);
}

}  // namespace

GraphFamily GraphFamily::complete(std::int64_t num_vertices) {
  if (num_vertices < 2) throw RangeError("complete graph needs N >= 2");
  if (num_vertices > kMaxVertices) throw RangeError("complete graph too large");
  return GraphFamily(CompleteGraph{num_vertices}, num_vertices);
}

GraphFamily GraphFamily::hypercube(int num_bits) {
  if (num_bits < 1) throw RangeError("hypercube needs n >= 1 bits");
  return GraphFamily(Hypercube{num_bits}, checked_power(2, num_bits));
}

GraphFamily GraphFamily::lattice(int dim, int side) {
  if (dim < 1) throw RangeError("lattice dimension must be >= 1");
  if (side < 2) throw RangeError("lattice side must be >= 2");
  return GraphFamily(PeriodicLattice{dim, side}, checked_power(side, dim));
}

int GraphFamily::max_degree() const noexcept {
  return std::visit(
      [](const auto& g) -> int {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, CompleteGraph>) {
          return static_cast<int>(std::min<std::int64_t>(
              g.num_vertices - 1, std::numeric_limits<int>::max()));
        } else if constexpr (std::is_same_v<T, Hypercube>) {
          return g.num_bits;
        } else {
          return 2 * g.dim;
        }
      },
      variant_);
}

std::string GraphFamily::spec() const {
  return std::visit(
      [](const auto& g) -> std::string {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, CompleteGraph>) {
          return "complete:" + std::to_string(g.num_vertices);
        } else if constexpr (std::is_same_v<T, Hypercube>) {
          return "hypercube:" + std::to_string(g.num_bits);
        } else {
          return "lattice:" + std::to_string(g.dim) + ":" + std::to_string(g.side);
        }
      },
      variant_);
}

std::vector<double> MomentumVector::wavenumbers() const {
  std::vector<double> k;
  k.reserve(m.size());
  for (int mj : m) k.push_back(2.0 * std::numbers::pi * mj / side);
  return k;
}

double dispersion(const MomentumVector& k) {
  double e = 0.0;
  for (int mj : k.m) {
    const double s = std::sin(std::numbers::pi * mj / k.side);
    e += 4.0 * s * s;
  }
  return e;
}

std::vector<MomentumVector> momentum_grid(int dim, int side) {
  if (side < 2) throw RangeError("momentum grid needs side >= 2");
  if (dim < 1) throw RangeError("momentum grid needs dim >= 1");
  std::vector<int> labels{0};
  for (int m = 1; 2 * m < side; ++m) {
    labels.push_back(m);
    labels.push_back(-m);
  }
  if (side % 2 == 0) labels.push_back(side / 2);

  const std::int64_t total = checked_power(side, dim);
  std::vector<MomentumVector> grid;
  grid.reserve(static_cast<std::size_t>(total));
  std::vector<int> idx(dim, 0);
  for (std::int64_t n = 0; n < total; ++n) {
    MomentumVector v{std::vector<int>(dim), side};
    for (int j = 0; j < dim; ++j) v.m[j] = labels[idx[j]];
    grid.push_back(std::move(v));
    for (int j = dim - 1; j >= 0; --j) {
      if (++idx[j] < side) break;
      idx[j] = 0;
    }
  }
  return grid;
}

LevelSpectrum::LevelSpectrum(std::vector<Level> levels, std::int64_t num_vertices)
    : levels_(std::move(levels)), num_vertices_(num_vertices) {
  if (levels_.empty() || levels_.front().energy != 0.0 ||
      levels_.front().multiplicity != 1) {
    throw ComputationError("level spectrum must start with a simple zero level");
  }
  std::int64_t total = 0;
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    if (levels_[i].multiplicity <= 0) {
      throw ComputationError("level multiplicities must be positive");
    }
    if (i > 0 && !(levels_[i].energy > levels_[i - 1].energy)) {
      throw ComputationError("level energies must be strictly increasing");
    }
    total += levels_[i].multiplicity;
  }
  if (total != num_vertices_) {
    throw ComputationError("level multiplicities must sum to N");
  }
}

double LevelSpectrum::inverse_moment(int j) const {
  numeric::CompensatedSum acc;
  for (std::size_t i = levels_.size(); i-- > 1;) {
    acc.add(static_cast<double>(levels_[i].multiplicity) /
            std::pow(levels_[i].energy, j));
  }
  return acc.value() / static_cast<double>(num_vertices_);
}

double lattice_level_tolerance(int dim) { return 1e-9 * 4.0 * dim; }

LevelSpectrum level_spectrum(const GraphFamily& g) {
  return std::visit(
      [&](const auto& v) -> LevelSpectrum {
        using T = std::decay_t<decltype(v)>;
        const std::int64_t n = g.num_vertices();
        if constexpr (std::is_same_v<T, CompleteGraph>) {
          return LevelSpectrum({{0.0, 1}, {static_cast<double>(n), n - 1}}, n);
        } else if constexpr (std::is_same_v<T, Hypercube>) {
          // -L = n I - sum_j sigma_x^(j): eigenvalue 2r on Hamming weight r.
          std::vector<Level> lv;
          for (int r = 0; r <= v.num_bits; ++r) {
            lv.push_back({2.0 * r, binomial(v.num_bits, r)});
          }
          return LevelSpectrum(std::move(lv), n);
        } else {
          return lattice_levels(v, n);
        }
      },
      g.variant());
}

}  // namespace qwsearch
