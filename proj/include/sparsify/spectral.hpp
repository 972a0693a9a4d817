#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sparsify/graph.hpp"

namespace sparsify {

// Dense symmetric matrix. Mutators always touch both (i, j) and (j, i), so the
// stored matrix is exactly symmetric.
class SymmetricMatrix {
 public:
  explicit SymmetricMatrix(std::size_t n) : m_(Eigen::MatrixXd::Zero(n, n)) {}

  // Builds from the lower triangle of `lower`; the upper triangle is ignored.
  static SymmetricMatrix from_lower(const Eigen::MatrixXd& lower);
  static SymmetricMatrix diagonal(std::span<const double> values);

  std::size_t order() const { return static_cast<std::size_t>(m_.rows()); }
  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

  void set(std::size_t i, std::size_t j, double value);
  void add(std::size_t i, std::size_t j, double value);

  const Eigen::MatrixXd& dense() const { return m_; }

  // Max absolute row sum; an upper bound on the spectral norm.
  double inf_norm() const;

 private:
  Eigen::MatrixXd m_;
};

inline constexpr std::size_t kDenseEigenLimit = 4000;

SymmetricMatrix laplacian(const WeightedGraph& g);
SymmetricMatrix adjacency_matrix(const WeightedGraph& g);

// x^T L_G x as the edge sum of w_uv (x_u - x_v)^2.
double laplacian_quadratic_form(const WeightedGraph& g, std::span<const double> x);

struct EigenDecomposition {
  std::vector<double> values;  // ascending
  Eigen::MatrixXd vectors;     // column j pairs with values[j]
};

std::vector<double> symmetric_eigenvalues(const SymmetricMatrix& a);
EigenDecomposition symmetric_eigen(const SymmetricMatrix& a);

struct SpectralReport {
  double epsilon = 0.0;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  bool kernel_ok = true;
  std::size_t n = 0;
  std::string method;  // "whitened" or "clique"
};

// Extreme generalized eigenvalues of (L_H, L_G) on range(L_G). Uses the
// clique shortcut when G is a uniform-weight clique, whitening otherwise.
SpectralReport spectral_error(const WeightedGraph& h, const WeightedGraph& g);

// Whitens with the pseudo-inverse square root of L_G.
SpectralReport spectral_error_whitened(const WeightedGraph& h, const WeightedGraph& g);

// G must be a uniform clique: L_G acts as w * n * I on the complement of 1.
SpectralReport spectral_error_clique(const WeightedGraph& h, const WeightedGraph& g);

}  // namespace sparsify
