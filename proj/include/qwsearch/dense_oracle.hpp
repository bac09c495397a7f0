#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "qwsearch/graph_spectra.hpp"

namespace qwsearch {

// Brute-force reference: builds H = -gamma L - |w><w| as an explicit N x N
// matrix and diagonalizes it completely. Shares nothing with the secular path.

inline constexpr std::int64_t kDefaultOracleCap = 4096;

// Row-major N x N matrix of -L. Throws OracleCapError when N > cap.
std::vector<double> dense_negative_laplacian(const GraphFamily& g,
                                             std::int64_t cap = kDefaultOracleCap);

struct SymmetricEigen {
  std::int64_t n;
  std::vector<double> values;   // ascending
  std::vector<double> vectors;  // column-major; column a is eigenvector a
};

// Full eigendecomposition of a symmetric matrix (LAPACK dsyevd).
SymmetricEigen symmetric_eigen(std::vector<double> matrix, std::int64_t n);

class DenseOracle {
 public:
  DenseOracle(const GraphFamily& g, double gamma, std::int64_t w_index,
              std::int64_t cap = kDefaultOracleCap);

  std::int64_t num_vertices() const noexcept { return eig_.n; }
  const std::vector<double>& eigenvalues() const noexcept { return eig_.values; }

  std::complex<double> amplitude(double t) const;

  // Eigenvalues merged within `tol`, with |<w|.>|^2 and |<s|.>|^2 summed over
  // each merged eigenspace (individual eigenvectors inside a degenerate space
  // are not unique, the summed weights are).
  struct Group {
    double energy;
    double w_weight;
    double s_weight;
    int size;
  };
  std::vector<Group> grouped(double tol) const;

 private:
  SymmetricEigen eig_;
  std::vector<double> w_component_;  // <w|v_a>
  std::vector<double> s_component_;  // <s|v_a>
};

std::complex<double> dense_oracle(const GraphFamily& g, double gamma,
                                  std::int64_t w_index, double t,
                                  std::int64_t cap = kDefaultOracleCap);

}  // namespace qwsearch
