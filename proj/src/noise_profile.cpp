#include "hetpca/noise_profile.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace hetpca {

NoiseProfile::NoiseProfile(std::vector<double> variances,
                           std::vector<double> proportions)
    : variances_(std::move(variances)), proportions_(std::move(proportions)) {
  if (variances_.empty() || variances_.size() != proportions_.size()) {
    throw std::invalid_argument(
        "noise profile: variances and proportions must be non-empty lists of "
        "equal length");
  }
  for (double v : variances_) {
    if (!std::isfinite(v) || v < 0.0) {
      throw std::invalid_argument("noise profile: variances must be finite and >= 0");
    }
  }
  double total = 0.0;
  for (double p : proportions_) {
    if (!std::isfinite(p) || p <= 0.0) {
      throw std::invalid_argument("noise profile: proportions must be finite and > 0");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("noise profile: proportions must sum to 1 (got " +
                                std::to_string(total) + ")");
  }
}

NoiseProfile NoiseProfile::homoscedastic(double sigma_sq) {
  return NoiseProfile({sigma_sq}, {1.0});
}

double NoiseProfile::average_variance() const {
  double s = 0.0;
  for (std::size_t l = 0; l < variances_.size(); ++l) s += proportions_[l] * variances_[l];
  return s;
}

double NoiseProfile::average_inverse_variance() const {
  double s = 0.0;
  for (std::size_t l = 0; l < variances_.size(); ++l) {
    if (variances_[l] <= 0.0) {
      throw std::domain_error("average inverse variance undefined: zero noise variance");
    }
    s += proportions_[l] / variances_[l];
  }
  return s;
}

double NoiseProfile::max_variance() const {
  return *std::max_element(variances_.begin(), variances_.end());
}

double NoiseProfile::min_variance() const {
  return *std::min_element(variances_.begin(), variances_.end());
}

bool NoiseProfile::all_zero() const {
  return std::all_of(variances_.begin(), variances_.end(),
                     [](double v) { return v == 0.0; });
}

NoiseProfile NoiseProfile::merged() const {
  std::vector<double> vs;
  std::vector<double> ps;
  for (std::size_t l = 0; l < variances_.size(); ++l) {
    auto it = std::find(vs.begin(), vs.end(), variances_[l]);
    if (it == vs.end()) {
      vs.push_back(variances_[l]);
      ps.push_back(proportions_[l]);
    } else {
      ps[static_cast<std::size_t>(it - vs.begin())] += proportions_[l];
    }
  }
  // renormalize so merged proportions still pass the sum check exactly
  double total = std::accumulate(ps.begin(), ps.end(), 0.0);
  for (double& p : ps) p /= total;
  return NoiseProfile(std::move(vs), std::move(ps));
}

NoiseProfile NoiseProfile::shifted(double delta) const {
  std::vector<double> vs = variances_;
  for (double& v : vs) v += delta;
  return NoiseProfile(std::move(vs), proportions_);
}

}  // namespace hetpca
