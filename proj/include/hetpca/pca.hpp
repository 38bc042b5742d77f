#pragma once

#include <Eigen/Core>
#include <complex>
#include <cstdint>

namespace hetpca {

/// Truncated PCA of a d x n data matrix: the top-k singular triples of
/// Y / sqrt(n). `components` are the left singular vectors (principal
/// components), `amplitudes_sq` the squared singular values (PCA
/// amplitudes) in nonincreasing order, and `scores` the unit-norm right
/// singular vectors (normalized score vectors zhat / sqrt(n)).
template <typename Scalar>
struct PcaResult {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  Matrix components;             // d x k
  Eigen::VectorXd amplitudes_sq; // k
  Matrix scores;                 // n x k
};

/// Computed from the Gram matrix on the smaller side of Y, so the cost is
/// O(min(n,d)^2 max(n,d)). The sign/phase of each singular pair is
/// arbitrary; downstream metrics must be (and are) invariant to it.
template <typename Scalar>
PcaResult<Scalar> pca(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& Y,
                      std::int64_t k);

}  // namespace hetpca
