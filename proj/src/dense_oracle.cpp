#include "qwsearch/dense_oracle.hpp"

#include <lapacke.h>

#include <cmath>
#include <string>

#include "qwsearch/errors.hpp"

namespace qwsearch {

namespace {

void check_cap(const GraphFamily& g, std::int64_t cap) {
  if (g.num_vertices() > cap) {
    throw OracleCapError("dense oracle: N = " + std::to_string(g.num_vertices()) +
                         " exceeds cap " + std::to_string(cap));
  }
}

}  // namespace

std::vector<double> dense_negative_laplacian(const GraphFamily& g, std::int64_t cap) {
  check_cap(g, cap);
  const std::int64_t n = g.num_vertices();
  std::vector<double> m(static_cast<std::size_t>(n * n), 0.0);
  auto at = [&](std::int64_t i, std::int64_t j) -> double& { return m[i * n + j]; };

  // Off-diagonal entries are -A (edge multiplicities), the diagonal is the degree.
  if (const auto* c = std::get_if<CompleteGraph>(&g.variant())) {
    for (std::int64_t i = 0; i < n; ++i) {
      for (std::int64_t j = 0; j < n; ++j) at(i, j) = (i == j) ? double(c->num_vertices - 1) : -1.0;
    }
  } else if (const auto* h = std::get_if<Hypercube>(&g.variant())) {
    for (std::int64_t i = 0; i < n; ++i) {
      at(i, i) = h->num_bits;
      for (int b = 0; b < h->num_bits; ++b) at(i, i ^ (std::int64_t{1} << b)) -= 1.0;
    }
  } else {
    const auto& lat = *g.as_lattice();
    for (std::int64_t i = 0; i < n; ++i) {
      at(i, i) = 2.0 * lat.dim;
      std::int64_t stride = 1;
      for (int d = 0; d < lat.dim; ++d) {
        const std::int64_t coord = (i / stride) % lat.side;
        const std::int64_t up = i + (((coord + 1) % lat.side) - coord) * stride;
        const std::int64_t down =
            i + (((coord + lat.side - 1) % lat.side) - coord) * stride;
        at(i, up) -= 1.0;
        at(i, down) -= 1.0;
        stride *= lat.side;
      }
    }
  }
  return m;
}

SymmetricEigen symmetric_eigen(std::vector<double> matrix, std::int64_t n) {
  if (static_cast<std::int64_t>(matrix.size()) != n * n) {
    throw ComputationError("symmetric_eigen: matrix size mismatch");
  }
  SymmetricEigen out{n, std::vector<double>(static_cast<std::size_t>(n)), {}};
  const lapack_int info =
      LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'U', static_cast<lapack_int>(n),
                     matrix.data(), static_cast<lapack_int>(n), out.values.data());
  if (info != 0) {
    throw ComputationError("dsyevd failed with info = " + std::to_string(info));
  }
  out.vectors = std::move(matrix);
  return out;
}

DenseOracle::DenseOracle(const GraphFamily& g, double gamma, std::int64_t w_index,
                         std::int64_t cap) {
  if (w_index < 0 || w_index >= g.num_vertices()) {
    throw RangeError("dense oracle: marked vertex index out of range");
  }
  if (!(gamma > 0.0)) throw RangeError("dense oracle: gamma must be positive");
  std::vector<double> h = dense_negative_laplacian(g, cap);
  const std::int64_t n = g.num_vertices();
  for (double& x : h) x *= gamma;
  h[w_index * n + w_index] -= 1.0;
  eig_ = symmetric_eigen(std::move(h), n);

  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
  w_component_.resize(static_cast<std::size_t>(n));
  s_component_.resize(static_cast<std::size_t>(n));
  for (std::int64_t a = 0; a < n; ++a) {
    const double* col = eig_.vectors.data() + a * n;
    double total = 0.0;
    for (std::int64_t j = 0; j < n; ++j) total += col[j];
    w_component_[a] = col[w_index];
    s_component_[a] = total * inv_sqrt_n;
  }
}

std::complex<double> DenseOracle::amplitude(double t) const {
  double re = 0.0, im = 0.0;
  for (std::size_t a = 0; a < w_component_.size(); ++a) {
    const double c = w_component_[a] * s_component_[a];
    re += c * std::cos(eig_.values[a] * t);
    im -= c * std::sin(eig_.values[a] * t);
  }
  return {re, im};
}

std::vector<DenseOracle::Group> DenseOracle::grouped(double tol) const {
  std::vector<Group> out;
  for (std::size_t a = 0; a < eig_.values.size(); ++a) {
    const double w = w_component_[a] * w_component_[a];
    const double s = s_component_[a] * s_component_[a];
    if (!out.empty() && eig_.values[a] - out.back().energy <= tol) {
      out.back().w_weight += w;
      out.back().s_weight += s;
      out.back().size += 1;
    } else {
      out.push_back({eig_.values[a], w, s, 1});
    }
  }
  return out;
}

std::complex<double> dense_oracle(const GraphFamily& g, double gamma,
                                  std::int64_t w_index, double t, std::int64_t cap) {
  return DenseOracle(g, gamma, w_index, cap).amplitude(t);
}

}  // namespace qwsearch
