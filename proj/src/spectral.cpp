#include "sparsify/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sparsify/error.hpp"

namespace sparsify {

SymmetricMatrix SymmetricMatrix::from_lower(const Eigen::MatrixXd& lower) {
  if (lower.rows() != lower.cols()) throw InvalidArgument("matrix must be square");
  SymmetricMatrix out(static_cast<std::size_t>(lower.rows()));
  out.m_.triangularView<Eigen::Lower>() = lower.triangularView<Eigen::Lower>();
  out.m_.triangularView<Eigen::StrictlyUpper>() = lower.transpose().triangularView<Eigen::StrictlyUpper>();
  return out;
}

SymmetricMatrix SymmetricMatrix::diagonal(std::span<const double> values) {
  SymmetricMatrix out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out.m_(i, i) = values[i];
  return out;
}

void SymmetricMatrix::set(std::size_t i, std::size_t j, double value) {
  m_(i, j) = value;
  m_(j, i) = value;
}

void SymmetricMatrix::add(std::size_t i, std::size_t j, double value) {
  m_(i, j) += value;
  if (i != j) m_(j, i) += value;
}

double SymmetricMatrix::inf_norm() const {
  if (m_.size() == 0) return 0.0;
  return m_.cwiseAbs().rowwise().sum().maxCoeff();
}

namespace {

void require_dense_size(std::size_t n) {
  if (n > kDenseEigenLimit) {
    throw SizeLimit("dense eigensolver is limited to n <= " + std::to_string(kDenseEigenLimit) +
                    " (got " + std::to_string(n) + ")");
  }
}

void require_same_vertices(const WeightedGraph& h, const WeightedGraph& g) {
  if (h.vertex_count() != g.vertex_count()) {
    throw InvalidArgument("graphs have different vertex counts (" +
                          std::to_string(h.vertex_count()) + " vs " +
                          std::to_string(g.vertex_count()) + ")");
  }
}

SpectralReport from_eigenvalues(std::span<const double> lambdas, std::size_t n, std::string method) {
  SpectralReport report;
  report.n = n;
  report.method = std::move(method);
  if (lambdas.empty()) {
    report.lambda_min = report.lambda_max = 1.0;
    return report;
  }
  const auto [lo, hi] = std::minmax_element(lambdas.begin(), lambdas.end());
  report.lambda_min = *lo;
  report.lambda_max = *hi;
  report.epsilon = std::max(std::abs(*lo - 1.0), std::abs(*hi - 1.0));
  return report;
}

}  // namespace

SymmetricMatrix laplacian(const WeightedGraph& g) {
  SymmetricMatrix l(g.vertex_count());
  for (const Edge& e : g.edges()) {
    l.add(e.u, e.u, e.weight);
    l.add(e.v, e.v, e.weight);
    l.add(e.u, e.v, -e.weight);
  }
  return l;
}

SymmetricMatrix adjacency_matrix(const WeightedGraph& g) {
  SymmetricMatrix a(g.vertex_count());
  for (const Edge& e : g.edges()) a.add(e.u, e.v, e.weight);
  return a;
}

double laplacian_quadratic_form(const WeightedGraph& g, std::span<const double> x) {
  if (x.size() != g.vertex_count()) throw InvalidArgument("vector length differs from n");
  double sum = 0.0;
  for (const Edge& e : g.edges()) {
    const double diff = x[e.u] - x[e.v];
    sum += e.weight * diff * diff;
  }
  return sum;
}

std::vector<double> symmetric_eigenvalues(const SymmetricMatrix& a) {
  require_dense_size(a.order());
  if (a.order() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a.dense(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error("eigensolver did not converge");
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

EigenDecomposition symmetric_eigen(const SymmetricMatrix& a) {
  require_dense_size(a.order());
  EigenDecomposition out;
  if (a.order() == 0) return out;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a.dense(), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw Error("eigensolver did not converge");
  const auto& ev = solver.eigenvalues();
  out.values.assign(ev.data(), ev.data() + ev.size());
  out.vectors = solver.eigenvectors();
  return out;
}

SpectralReport spectral_error(const WeightedGraph& h, const WeightedGraph& g) {
  require_same_vertices(h, g);
  if (g.vertex_count() >= 2 && g.uniform_clique_weight()) return spectral_error_clique(h, g);
  return spectral_error_whitened(h, g);
}

SpectralReport spectral_error_whitened(const WeightedGraph& h, const WeightedGraph& g) {
  require_same_vertices(h, g);
  const std::size_t n = g.vertex_count();
  require_dense_size(n);
  const auto lg = symmetric_eigen(laplacian(g));
  const SymmetricMatrix lh = laplacian(h);

  double scale = 0.0;
  for (double v : lg.values) scale = std::max(scale, std::abs(v));
  const double cutoff = 1e-10 * scale;
  std::vector<Eigen::Index> range, kernel;
  for (std::size_t j = 0; j < lg.values.size(); ++j) {
    (lg.values[j] > cutoff ? range : kernel).push_back(static_cast<Eigen::Index>(j));
  }

  const double lh_norm = lh.inf_norm();
  for (Eigen::Index j : kernel) {
    const double residual = (lh.dense() * lg.vectors.col(j)).norm();
    if (residual > 1e-8 * lh_norm) {
      throw NotComparable("kernel of L_G is not contained in kernel of L_H (|L_H v| = " +
                          std::to_string(residual) + "); no finite epsilon exists");
    }
  }

  const auto r = static_cast<Eigen::Index>(range.size());
  Eigen::MatrixXd w(n, r);
  for (Eigen::Index c = 0; c < r; ++c) {
    w.col(c) = lg.vectors.col(range[c]) / std::sqrt(lg.values[range[c]]);
  }
  const Eigen::MatrixXd m = w.transpose() * lh.dense() * w;
  const auto lambdas = symmetric_eigenvalues(SymmetricMatrix::from_lower(m));
  auto report = from_eigenvalues(lambdas, n, "whitened");
  report.kernel_ok = true;
  return report;
}

SpectralReport spectral_error_clique(const WeightedGraph& h, const WeightedGraph& g) {
  require_same_vertices(h, g);
  const std::size_t n = g.vertex_count();
  const auto w = g.uniform_clique_weight();
  if (n < 2 || !w) throw InvalidArgument("reference graph is not a uniform-weight clique");
  require_dense_size(n);
  const SymmetricMatrix lh = laplacian(h);
  // The all-ones vector spans ker(L_G); L_H annihilates it up to rounding.
  const double residual = (lh.dense() * Eigen::VectorXd::Ones(n)).norm() / std::sqrt(double(n));
  if (residual > 1e-8 * std::max(lh.inf_norm(), 1e-300)) {
    throw NotComparable("L_H does not annihilate the all-ones vector");
  }
  auto lambdas = symmetric_eigenvalues(lh);
  lambdas.erase(lambdas.begin());
  const double scale = *w * static_cast<double>(n);
  for (double& v : lambdas) v /= scale;
  return from_eigenvalues(lambdas, n, "clique");
}

}  // namespace sparsify
