#include "hetpca/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "hetpca/rng.hpp"

namespace hetpca {

namespace {

// Independent sub-streams of a dataset seed.
constexpr std::uint64_t kSubspaceStream = 0x5f5b5bA5Eull;
constexpr std::uint64_t kCoeffStream = 0xc0effull;
constexpr std::uint64_t kNoiseStream = 0x901f5eull;
constexpr std::uint64_t kAssignStream = 0xa551611ull;

template <typename Scalar>
Scalar draw_unit(Rng& rng) {
  if constexpr (std::is_same_v<Scalar, double>) {
    return rng.gaussian();
  } else {
    return rng.gaussian_complex();
  }
}

std::size_t draw_level(Rng& rng, const std::vector<double>& proportions) {
  const double u = rng.uniform01();
  double acc = 0.0;
  for (std::size_t l = 0; l + 1 < proportions.size(); ++l) {
    acc += proportions[l];
    if (u < acc) return l;
  }
  return proportions.size() - 1;
}

}  // namespace

std::string to_string(Field f) { return f == Field::Real ? "real" : "complex"; }

std::string to_string(CoeffDist d) {
  return d == CoeffDist::Gaussian ? "gaussian" : "rademacher";
}

std::string to_string(NoiseAssignment a) {
  switch (a) {
    case NoiseAssignment::Deterministic: return "deterministic";
    case NoiseAssignment::RandomIid: return "random-iid";
    case NoiseAssignment::JohnstoneSpiked: return "johnstone-spiked";
    case NoiseAssignment::MixtureHomoscedastic: return "mixture-homoscedastic";
  }
  return "deterministic";
}

Field field_from_string(const std::string& s) {
  if (s == "real") return Field::Real;
  if (s == "complex") return Field::Complex;
  throw std::invalid_argument("unknown field: " + s);
}

CoeffDist coeff_dist_from_string(const std::string& s) {
  if (s == "gaussian") return CoeffDist::Gaussian;
  if (s == "rademacher") return CoeffDist::Rademacher;
  throw std::invalid_argument("unknown coefficient distribution: " + s);
}

NoiseAssignment assignment_from_string(const std::string& s) {
  if (s == "deterministic") return NoiseAssignment::Deterministic;
  if (s == "random-iid") return NoiseAssignment::RandomIid;
  if (s == "johnstone-spiked") return NoiseAssignment::JohnstoneSpiked;
  if (s == "mixture-homoscedastic") return NoiseAssignment::MixtureHomoscedastic;
  throw std::invalid_argument("unknown noise assignment: " + s);
}

void DatasetSpec::validate() const {
  if (n < 1 || d < 1) {
    throw std::invalid_argument("dataset spec: n and d must be >= 1");
  }
  if (amplitudes.empty()) {
    throw std::invalid_argument("dataset spec: need at least one amplitude");
  }
  for (double t : amplitudes) {
    if (!std::isfinite(t) || t <= 0.0) {
      throw std::invalid_argument("dataset spec: amplitudes must be finite and > 0");
    }
  }
  if (rank() > std::min(n, d)) {
    throw std::invalid_argument("dataset spec: rank k must satisfy k <= min(n, d)");
  }
  if (assignment == NoiseAssignment::JohnstoneSpiked &&
      coeff_dist == CoeffDist::Rademacher) {
    throw std::invalid_argument(
        "dataset spec: johnstone-spiked has no separate coefficient draw; "
        "rademacher coefficients are not available");
  }
}

std::vector<std::int64_t> level_counts(const NoiseProfile& noise, std::int64_t n) {
  const auto& ps = noise.proportions();
  const std::size_t L = ps.size();
  std::vector<std::int64_t> counts(L);
  std::vector<double> remainders(L);
  std::int64_t assigned = 0;
  for (std::size_t l = 0; l < L; ++l) {
    const double ideal = ps[l] * static_cast<double>(n);
    counts[l] = static_cast<std::int64_t>(std::floor(ideal));
    remainders[l] = ideal - static_cast<double>(counts[l]);
    assigned += counts[l];
  }
  std::vector<std::size_t> order(L);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return remainders[a] > remainders[b];
  });
  for (std::int64_t r = n - assigned, i = 0; r > 0; --r, ++i) {
    counts[order[static_cast<std::size_t>(i) % L]] += 1;
  }
  return counts;
}

template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> sample_subspace(
    std::int64_t d, std::int64_t k, std::uint64_t seed) {
  if (k > d) {
    throw std::invalid_argument("sample_subspace: k must satisfy k <= d");
  }
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Rng rng(seed);
  Matrix Q(d, k);
  for (std::int64_t j = 0; j < k; ++j) {
    for (std::int64_t i = 0; i < d; ++i) Q(i, j) = draw_unit<Scalar>(rng);
  }
  // modified Gram-Schmidt, two passes
  for (std::int64_t j = 0; j < k; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::int64_t i = 0; i < j; ++i) {
        Q.col(j) -= Q.col(i) * (Q.col(i).adjoint() * Q.col(j))(0);
      }
    }
    const double norm = Q.col(j).norm();
    if (!(norm > 0.0)) {
      throw std::runtime_error("sample_subspace: degenerate random draw");
    }
    Q.col(j) /= norm;
  }
  return Q;
}

template <typename Scalar>
Dataset<Scalar> generate(const DatasetSpec& spec) {
  spec.validate();
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const std::int64_t n = spec.n;
  const std::int64_t d = spec.d;
  const std::int64_t k = spec.rank();
  const auto& variances = spec.noise.variances();

  Dataset<Scalar> out;
  out.spec = spec;
  out.eta.resize(n);

  if (spec.assignment == NoiseAssignment::JohnstoneSpiked) {
    // Diagonal spiked covariance: entry variances theta_j^2 + avg for the
    // first k coordinates, avg elsewhere. The subspace is the leading
    // coordinate basis and the latent unit-variance coordinates stand in
    // for the coefficients.
    const double avg = spec.noise.average_variance();
    Rng rng(splitmix64(spec.seed ^ kNoiseStream));
    out.U = Matrix::Zero(d, k);
    for (std::int64_t j = 0; j < k; ++j) out.U(j, j) = Scalar(1);
    out.Z.resize(n, k);
    out.Y.resize(d, n);
    std::vector<double> scale(static_cast<std::size_t>(k));
    for (std::int64_t j = 0; j < k; ++j) {
      scale[static_cast<std::size_t>(j)] =
          std::sqrt(spec.amplitudes[static_cast<std::size_t>(j)] *
                        spec.amplitudes[static_cast<std::size_t>(j)] +
                    avg);
    }
    const double tail = std::sqrt(avg);
    for (std::int64_t i = 0; i < n; ++i) {
      for (std::int64_t r = 0; r < d; ++r) {
        const Scalar x = draw_unit<Scalar>(rng);
        if (r < k) {
          out.Y(r, i) = scale[static_cast<std::size_t>(r)] * x;
          if constexpr (std::is_same_v<Scalar, double>) {
            out.Z(i, r) = x;
          } else {
            out.Z(i, r) = std::conj(x);
          }
        } else {
          out.Y(r, i) = tail * x;
        }
      }
      out.eta(i) = tail;
    }
    return out;
  }

  out.U = sample_subspace<Scalar>(d, k, splitmix64(spec.seed ^ kSubspaceStream));

  Rng coeff_rng(splitmix64(spec.seed ^ kCoeffStream));
  out.Z.resize(n, k);
  for (std::int64_t j = 0; j < k; ++j) {
    for (std::int64_t i = 0; i < n; ++i) {
      out.Z(i, j) = spec.coeff_dist == CoeffDist::Gaussian
                        ? draw_unit<Scalar>(coeff_rng)
                        : Scalar(coeff_rng.rademacher());
    }
  }

  // per-sample noise standard deviations
  const double avg_std = std::sqrt(spec.noise.average_variance());
  switch (spec.assignment) {
    case NoiseAssignment::Deterministic: {
      const auto counts = level_counts(spec.noise, n);
      std::int64_t i = 0;
      for (std::size_t l = 0; l < counts.size(); ++l) {
        const double sd = std::sqrt(variances[l]);
        for (std::int64_t r = 0; r < counts[l]; ++r) out.eta(i++) = sd;
      }
      break;
    }
    case NoiseAssignment::RandomIid: {
      Rng assign_rng(splitmix64(spec.seed ^ kAssignStream));
      for (std::int64_t i = 0; i < n; ++i) {
        out.eta(i) = std::sqrt(variances[draw_level(assign_rng, spec.noise.proportions())]);
      }
      break;
    }
    case NoiseAssignment::MixtureHomoscedastic: {
      out.eta.setConstant(avg_std);
      break;
    }
    case NoiseAssignment::JohnstoneSpiked:
      break;  // handled above
  }

  // noise entries, scaled per sample as they are drawn
  Rng noise_rng(splitmix64(spec.seed ^ kNoiseStream));
  out.Y.resize(d, n);
  const bool mixture = spec.assignment == NoiseAssignment::MixtureHomoscedastic;
  if (spec.retain_noise) out.noise.emplace(d, n);
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::int64_t r = 0; r < d; ++r) {
      Scalar e;
      if (mixture) {
        // unit-variance Gaussian mixture: component l has variance
        // sigma_l^2 / avg var, picked with probability p_l
        const std::size_t l = draw_level(noise_rng, spec.noise.proportions());
        const double sd = avg_std > 0.0 ? std::sqrt(variances[l]) / avg_std : 0.0;
        e = sd * draw_unit<Scalar>(noise_rng);
      } else {
        e = draw_unit<Scalar>(noise_rng);
      }
      if (spec.retain_noise) (*out.noise)(r, i) = e;
      out.Y(r, i) = out.eta(i) * e;
    }
  }

  // Y += U Theta Z^H
  Matrix scaled = out.U;
  for (std::int64_t j = 0; j < k; ++j) {
    scaled.col(j) *= spec.amplitudes[static_cast<std::size_t>(j)];
  }
  out.Y.noalias() += scaled * out.Z.adjoint();
  return out;
}

template Eigen::MatrixXd sample_subspace<double>(std::int64_t, std::int64_t,
                                                 std::uint64_t);
template Eigen::MatrixXcd sample_subspace<std::complex<double>>(std::int64_t,
                                                                std::int64_t,
                                                                std::uint64_t);
template Dataset<double> generate<double>(const DatasetSpec&);
template Dataset<std::complex<double>> generate<std::complex<double>>(const DatasetSpec&);

}  // namespace hetpca
