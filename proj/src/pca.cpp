#include "hetpca/pca.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hetpca {

template <typename Scalar>
PcaResult<Scalar> pca(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& Y,
                      std::int64_t k) {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const std::int64_t d = Y.rows();
  const std::int64_t n = Y.cols();
  if (k < 1 || k > std::min(n, d)) {
    throw std::invalid_argument("pca: need 1 <= k <= min(n, d)");
  }

  const bool left_side = d <= n;  // eigendecompose the smaller Gram matrix
  const std::int64_t m = left_side ? d : n;

  Matrix gram(m, m);
  gram.setZero();
  if (left_side) {
    gram.template selfadjointView<Eigen::Lower>().rankUpdate(Y, 1.0 / static_cast<double>(n));
  } else {
    gram.template selfadjointView<Eigen::Lower>().rankUpdate(Y.adjoint(),
                                                             1.0 / static_cast<double>(n));
  }

  Eigen::SelfAdjointEigenSolver<Matrix> es(gram);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("pca: eigendecomposition failed");
  }

  PcaResult<Scalar> out;
  out.components.resize(d, k);
  out.scores.resize(n, k);
  out.amplitudes_sq.resize(k);

  const double lambda_max = std::max(es.eigenvalues()(m - 1), 0.0);
  const double tiny = lambda_max * 1e-28;
  for (std::int64_t j = 0; j < k; ++j) {
    const std::int64_t idx = m - 1 - j;  // eigenvalues come back ascending
    const double lambda = std::max(es.eigenvalues()(idx), 0.0);
    out.amplitudes_sq(j) = lambda;
    const auto v = es.eigenvectors().col(idx);
    const double sigma = std::sqrt(lambda);
    if (left_side) {
      out.components.col(j) = v;
      if (lambda > tiny && lambda > 0.0) {
        out.scores.col(j).noalias() = Y.adjoint() * v;
        out.scores.col(j) /= std::sqrt(static_cast<double>(n)) * sigma;
        out.scores.col(j).normalize();
      } else {
        out.scores.col(j).setZero();  // defective triple, no score direction
      }
    } else {
      out.scores.col(j) = v;
      if (lambda > tiny && lambda > 0.0) {
        out.components.col(j).noalias() = Y * v;
        out.components.col(j) /= std::sqrt(static_cast<double>(n)) * sigma;
        out.components.col(j).normalize();
      } else {
        out.components.col(j).setZero();
      }
    }
  }
  return out;
}

template PcaResult<double> pca<double>(const Eigen::MatrixXd&, std::int64_t);
template PcaResult<std::complex<double>> pca<std::complex<double>>(const Eigen::MatrixXcd&,
                                                                   std::int64_t);

}  // namespace hetpca
