#pragma once

#include <Eigen/Core>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hetpca/noise_profile.hpp"

namespace hetpca {

enum class Field { Real, Complex };
enum class CoeffDist { Gaussian, Rademacher };

/// How per-sample noise levels are chosen (or, for the comparison
/// generators, how the whole sample is drawn).
enum class NoiseAssignment {
  Deterministic,         // fixed counts per level, contiguous blocks
  RandomIid,             // eta_i^2 drawn iid from the profile
  JohnstoneSpiked,       // diagonal spiked covariance at the average variance
  MixtureHomoscedastic,  // single eta = avg std, mixture-distributed noise entries
};

std::string to_string(Field f);
std::string to_string(CoeffDist d);
std::string to_string(NoiseAssignment a);
Field field_from_string(const std::string& s);
CoeffDist coeff_dist_from_string(const std::string& s);
NoiseAssignment assignment_from_string(const std::string& s);

struct DatasetSpec {
  std::int64_t n = 0;
  std::int64_t d = 0;
  std::vector<double> amplitudes;  // theta_i > 0, one per component
  NoiseProfile noise = NoiseProfile::homoscedastic(1.0);
  Field field = Field::Real;
  CoeffDist coeff_dist = CoeffDist::Gaussian;
  NoiseAssignment assignment = NoiseAssignment::Deterministic;
  std::uint64_t seed = 0;
  bool retain_noise = false;  // keep the unscaled noise matrix for debugging

  std::int64_t rank() const { return static_cast<std::int64_t>(amplitudes.size()); }
  void validate() const;  // throws std::invalid_argument
};

template <typename Scalar>
struct Dataset {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  Matrix Y;             // d x n samples, one per column
  Matrix U;             // d x k orthonormal ground-truth basis
  Matrix Z;             // n x k coefficient vectors z^{(j)} as columns
  Eigen::VectorXd eta;  // per-sample noise standard deviations
  std::optional<Matrix> noise;  // unscaled noise matrix E when retained
  DatasetSpec spec;
};

/// Orthonormal d x k basis from Gram-Schmidt on a random Gaussian matrix.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> sample_subspace(
    std::int64_t d, std::int64_t k, std::uint64_t seed);

template <typename Scalar>
Dataset<Scalar> generate(const DatasetSpec& spec);

/// Deterministic per-level sample counts by largest-remainder rounding of
/// p_l * n; sums to n with every |count - p_l n| < 1.
std::vector<std::int64_t> level_counts(const NoiseProfile& noise, std::int64_t n);

}  // namespace hetpca
