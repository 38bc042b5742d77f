#pragma once

#include <cstddef>
#include <vector>

namespace hetpca {

/// Discrete distribution of per-sample noise variances: L levels
/// sigma_l^2 >= 0 occurring in proportions p_l > 0 with sum(p) = 1.
class NoiseProfile {
 public:
  NoiseProfile(std::vector<double> variances, std::vector<double> proportions);

  static NoiseProfile homoscedastic(double sigma_sq);

  const std::vector<double>& variances() const { return variances_; }
  const std::vector<double>& proportions() const { return proportions_; }
  std::size_t levels() const { return variances_.size(); }

  /// Average noise variance sigma_bar^2 = sum p_l sigma_l^2.
  double average_variance() const;
  /// Average inverse noise variance sum p_l / sigma_l^2.
  /// Throws std::domain_error if any variance is zero.
  double average_inverse_variance() const;
  double max_variance() const;
  double min_variance() const;
  bool all_zero() const;

  /// Collapses levels with bitwise-equal variances, summing proportions.
  NoiseProfile merged() const;
  /// All variances shifted by delta >= 0.
  NoiseProfile shifted(double delta) const;

 private:
  std::vector<double> variances_;
  std::vector<double> proportions_;
};

}  // namespace hetpca
