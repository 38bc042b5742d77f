#include "hetpca/metrics.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace hetpca {

namespace {

template <typename Scalar>
void check_shapes(const PcaResult<Scalar>& pca, const Dataset<Scalar>& truth,
                  std::int64_t i = 0) {
  const std::int64_t k = pca.components.cols();
  if (k != truth.spec.rank() || pca.components.rows() != truth.U.rows() ||
      pca.scores.rows() != truth.Z.rows()) {
    throw std::invalid_argument("metrics: PCA result and dataset shapes disagree");
  }
  if (i < 0 || i >= k) {
    throw std::invalid_argument("metrics: component index out of range");
  }
}

std::vector<std::int64_t> same_group(const std::vector<double>& thetas, std::int64_t i) {
  std::vector<std::int64_t> idx;
  for (std::size_t j = 0; j < thetas.size(); ++j) {
    if (thetas[j] == thetas[static_cast<std::size_t>(i)]) {
      idx.push_back(static_cast<std::int64_t>(j));
    }
  }
  return idx;
}

std::vector<std::int64_t> other_group(const std::vector<double>& thetas, std::int64_t i) {
  std::vector<std::int64_t> idx;
  for (std::size_t j = 0; j < thetas.size(); ++j) {
    if (thetas[j] != thetas[static_cast<std::size_t>(i)]) {
      idx.push_back(static_cast<std::int64_t>(j));
    }
  }
  return idx;
}

template <typename Matrix>
Matrix select_columns(const Matrix& M, const std::vector<std::int64_t>& idx) {
  Matrix out(M.rows(), static_cast<std::int64_t>(idx.size()));
  for (std::size_t j = 0; j < idx.size(); ++j) out.col(static_cast<std::int64_t>(j)) = M.col(idx[j]);
  return out;
}

// squared norm of the projection of unit vector v onto the span of the
// orthonormal columns of Q
template <typename Vector, typename Matrix>
double sq_projection(const Vector& v, const Matrix& Q) {
  if (Q.cols() == 0) return 0.0;
  return (Q.adjoint() * v).squaredNorm();
}

template <typename Matrix>
Matrix thin_q(const Matrix& M) {
  Eigen::HouseholderQR<Matrix> qr(M);
  Matrix q = Matrix::Identity(M.rows(), M.cols());
  q = qr.householderQ() * q;
  return q;
}

}  // namespace

template <typename Scalar>
std::pair<double, double> subspace_metric(const PcaResult<Scalar>& pca,
                                          const Dataset<Scalar>& truth, std::int64_t i) {
  check_shapes(pca, truth, i);
  const auto& thetas = truth.spec.amplitudes;
  const auto u_same = select_columns(truth.U, same_group(thetas, i));
  const auto u_other = select_columns(truth.U, other_group(thetas, i));
  return {sq_projection(pca.components.col(i), u_same),
          sq_projection(pca.components.col(i), u_other)};
}

template <typename Scalar>
std::pair<double, double> coefficient_metric(const PcaResult<Scalar>& pca,
                                             const Dataset<Scalar>& truth,
                                             std::int64_t i) {
  check_shapes(pca, truth, i);
  const auto& thetas = truth.spec.amplitudes;
  const auto z_same = select_columns(truth.Z, same_group(thetas, i));
  const auto z_other = select_columns(truth.Z, other_group(thetas, i));
  double same = 0.0;
  double other = 0.0;
  if (z_same.cols() > 0) same = sq_projection(pca.scores.col(i), thin_q(z_same));
  if (z_other.cols() > 0) other = sq_projection(pca.scores.col(i), thin_q(z_other));
  return {same, other};
}

template <typename Scalar>
std::pair<double, double> mixed_metric(const PcaResult<Scalar>& pca,
                                       const Dataset<Scalar>& truth, std::int64_t i) {
  check_shapes(pca, truth, i);
  const auto& thetas = truth.spec.amplitudes;
  std::complex<double> sum = 0.0;
  for (std::int64_t j : same_group(thetas, i)) {
    const std::complex<double> left =
        (pca.components.col(i).adjoint() * truth.U.col(j))(0);
    const std::complex<double> right =
        (pca.scores.col(i).adjoint() * (truth.Z.col(j) / truth.Z.col(j).norm()))(0);
    sum += left * std::conj(right);
  }
  return {sum.real(), std::abs(sum.imag())};
}

template <typename Scalar>
double mse_metric(const PcaResult<Scalar>& pca, const Dataset<Scalar>& truth) {
  check_shapes(pca, truth);
  using Matrix = typename Dataset<Scalar>::Matrix;
  const std::int64_t n = truth.Z.rows();
  const std::int64_t k = truth.spec.rank();
  const double root_n = std::sqrt(static_cast<double>(n));

  Matrix signal = truth.U;  // U Theta
  Matrix estimate = pca.components;  // Uhat Thetahat
  for (std::int64_t j = 0; j < k; ++j) {
    signal.col(j) *= truth.spec.amplitudes[static_cast<std::size_t>(j)];
    estimate.col(j) *= std::sqrt(pca.amplitudes_sq(j));
  }

  // blockwise ||U Theta (Z/sqrt(n))^H - Uhat Thetahat S^H||_F^2
  const std::int64_t block = 2048;
  double acc = 0.0;
  for (std::int64_t j0 = 0; j0 < n; j0 += block) {
    const std::int64_t cols = std::min(block, n - j0);
    Matrix diff = signal * (truth.Z.middleRows(j0, cols).adjoint() / root_n) -
                  estimate * pca.scores.middleRows(j0, cols).adjoint();
    acc += diff.squaredNorm();
  }
  return acc;
}

template <typename Scalar>
EmpiricalMetrics compute_metrics(const PcaResult<Scalar>& pca,
                                 const Dataset<Scalar>& truth) {
  check_shapes(pca, truth);
  const std::int64_t k = truth.spec.rank();
  EmpiricalMetrics out;
  out.components.resize(static_cast<std::size_t>(k));
  for (std::int64_t i = 0; i < k; ++i) {
    auto& cm = out.components[static_cast<std::size_t>(i)];
    std::tie(cm.subspace_sq_cos, cm.subspace_sq_cos_other) = subspace_metric(pca, truth, i);
    std::tie(cm.coeff_sq_cos, cm.coeff_sq_cos_other) = coefficient_metric(pca, truth, i);
    std::tie(cm.mixed_real, cm.mixed_imag_abs) = mixed_metric(pca, truth, i);
    const double theta = truth.spec.amplitudes[static_cast<std::size_t>(i)];
    cm.amplitude_ratio = pca.amplitudes_sq(i) / (theta * theta);
  }
  out.mse = mse_metric(pca, truth);
  out.overall_subspace =
      (pca.components.adjoint() * truth.U).squaredNorm() / static_cast<double>(k);
  return out;
}

template std::pair<double, double> subspace_metric<double>(const PcaResult<double>&,
                                                           const Dataset<double>&,
                                                           std::int64_t);
template std::pair<double, double> coefficient_metric<double>(const PcaResult<double>&,
                                                              const Dataset<double>&,
                                                              std::int64_t);
template std::pair<double, double> mixed_metric<double>(const PcaResult<double>&,
                                                        const Dataset<double>&,
                                                        std::int64_t);
template double mse_metric<double>(const PcaResult<double>&, const Dataset<double>&);
template EmpiricalMetrics compute_metrics<double>(const PcaResult<double>&,
                                                  const Dataset<double>&);

using Cplx = std::complex<double>;
template std::pair<double, double> subspace_metric<Cplx>(const PcaResult<Cplx>&,
                                                         const Dataset<Cplx>&,
                                                         std::int64_t);
template std::pair<double, double> coefficient_metric<Cplx>(const PcaResult<Cplx>&,
                                                            const Dataset<Cplx>&,
                                                            std::int64_t);
template std::pair<double, double> mixed_metric<Cplx>(const PcaResult<Cplx>&,
                                                      const Dataset<Cplx>&, std::int64_t);
template double mse_metric<Cplx>(const PcaResult<Cplx>&, const Dataset<Cplx>&);
template EmpiricalMetrics compute_metrics<Cplx>(const PcaResult<Cplx>&,
                                                const Dataset<Cplx>&);

}  // namespace hetpca
