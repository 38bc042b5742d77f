#pragma once

#include <utility>
#include <vector>

#include "hetpca/datagen.hpp"
#include "hetpca/pca.hpp"

namespace hetpca {

/// Empirical counterparts of the per-component limits, measured against the
/// dataset's retained ground truth.
struct ComponentMetrics {
  double subspace_sq_cos = 0.0;        // |<uhat_i, Span{u_j : theta_j = theta_i}>|^2
  double subspace_sq_cos_other = 0.0;  // against the complementary span
  double coeff_sq_cos = 0.0;
  double coeff_sq_cos_other = 0.0;
  double mixed_real = 0.0;      // real part of the cross-term sum
  double mixed_imag_abs = 0.0;  // |imag part|; zero for real-field data
  double amplitude_ratio = 0.0; // thetahat_i^2 / theta_i^2
};

struct EmpiricalMetrics {
  std::vector<ComponentMetrics> components;
  double mse = 0.0;               // reconstruction mean square error
  double overall_subspace = 0.0;  // (1/k) ||Uhat^H U||_F^2
};

/// Amplitude groups use exact equality of the spec's theta values.
template <typename Scalar>
std::pair<double, double> subspace_metric(const PcaResult<Scalar>& pca,
                                          const Dataset<Scalar>& truth, std::int64_t i);

/// Ground-truth coefficient vectors of the group are orthonormalized before
/// projecting, since at finite n they are not exactly orthogonal.
template <typename Scalar>
std::pair<double, double> coefficient_metric(const PcaResult<Scalar>& pca,
                                             const Dataset<Scalar>& truth,
                                             std::int64_t i);

/// Returns (real part, |imag part|) of the component/score cross-term sum.
/// No absolute value is applied to the real part; finite-sample negative
/// values are data.
template <typename Scalar>
std::pair<double, double> mixed_metric(const PcaResult<Scalar>& pca,
                                       const Dataset<Scalar>& truth, std::int64_t i);

/// (1/n) sum_i ||U Theta z_i - Uhat Thetahat zhat_i||^2 via the rank-k
/// reconstruction difference.
template <typename Scalar>
double mse_metric(const PcaResult<Scalar>& pca, const Dataset<Scalar>& truth);

template <typename Scalar>
EmpiricalMetrics compute_metrics(const PcaResult<Scalar>& pca,
                                 const Dataset<Scalar>& truth);

}  // namespace hetpca
