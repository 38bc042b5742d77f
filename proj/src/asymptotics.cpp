#include "hetpca/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hetpca {

namespace {

// Eq-(2) style amplitude limit evaluated at x = max(alpha, beta).
double amplitude_limit_at(double x, double c, const NoiseProfile& noise) {
  double s = 0.0;
  const auto& vs = noise.variances();
  const auto& ps = noise.proportions();
  for (std::size_t l = 0; l < vs.size(); ++l) {
    s += ps[l] * vs[l] / (x - vs[l]);
  }
  return (x / c) * (1.0 + c * s);
}

// Same value as amplitude_limit_at but assembled from the pole sum
// (1-c)x/c + x^2 sum_l p_l/(x - sigma_l^2), so the two routes can be
// cross-checked against each other.
double psi_inverse_sq(double x, double c, const NoiseProfile& noise) {
  double s = 0.0;
  const auto& vs = noise.variances();
  const auto& ps = noise.proportions();
  for (std::size_t l = 0; l < vs.size(); ++l) {
    s += ps[l] / (x - vs[l]);
  }
  const double r = (1.0 - c) * x / c + x * x * s;
  if (r < 0.0) {
    throw std::runtime_error("psi_inverse: negative radicand (internal invariant)");
  }
  return r;
}

}  // namespace

bool IdentityReport::pass(double tol) const {
  bool ok = std::abs(a_rewrite_residual) <= tol && std::abs(q_residual) <= tol &&
            beta_gap_slack >= -tol && b_prime_slack >= -tol && a_upper_slack >= -tol &&
            std::abs(mixed_geometric_residual) <= tol;
  if (above_transition) ok = ok && std::abs(amplitude_psi_residual) <= tol;
  return ok;
}

ComponentPrediction predict_component(const SpectrumParams& params) {
  validate_params(params);
  ComponentPrediction out;
  out.alpha = solve_alpha(params.c, params.noise);
  out.beta = solve_beta(params);
  out.a_at_beta = eval_A(out.beta, params.c, params.noise);
  out.above_transition = out.a_at_beta > 0.0;

  const double x = std::max(out.alpha, out.beta);
  out.amplitude_sq_limit = amplitude_limit_at(x, params.c, params.noise);
  out.amplitude_sq_ratio = out.amplitude_sq_limit / params.theta_sq;

  if (out.above_transition) {
    const double b_prime = eval_B_prime(out.beta, params);
    const double score_den = out.beta + (1.0 - params.c) * params.theta_sq;
    if (!(score_den > 0.0)) {
      // beta >= c theta^2 + avg var forces this positive; see the root bounds
      throw std::runtime_error(
          "predict_component: nonpositive score denominator (internal invariant)");
    }
    out.subspace_recovery = out.a_at_beta / (out.beta * b_prime);
    out.coefficient_recovery = out.a_at_beta / (params.c * score_den * b_prime);
    out.mixed_recovery =
        out.a_at_beta / (std::sqrt(params.c * out.beta * score_den) * b_prime);
  } else {
    out.subspace_recovery = 0.0;
    out.coefficient_recovery = 0.0;
    out.mixed_recovery = 0.0;
    out.conjectured_zero = true;
  }
  return out;
}

ComponentPrediction predict_homoscedastic(double c, double theta_sq, double sigma_sq) {
  if (!std::isfinite(c) || c <= 0.0) {
    throw std::invalid_argument("sample-to-dimension ratio c must be finite and > 0");
  }
  if (!std::isfinite(theta_sq) || theta_sq <= 0.0) {
    throw std::invalid_argument("subspace amplitude theta^2 must be finite and > 0");
  }
  if (!std::isfinite(sigma_sq) || sigma_sq < 0.0) {
    throw std::invalid_argument("noise variance must be finite and >= 0");
  }
  ComponentPrediction out;
  out.alpha = (1.0 + std::sqrt(c)) * sigma_sq;
  out.beta = sigma_sq + c * theta_sq;
  const double snr = sigma_sq / theta_sq;  // sigma^2 / theta^2
  out.a_at_beta = 1.0 - snr * snr / c;
  out.above_transition = c * theta_sq * theta_sq > sigma_sq * sigma_sq;

  if (out.above_transition) {
    out.amplitude_sq_limit = theta_sq * (1.0 + sigma_sq / (c * theta_sq)) * (1.0 + snr);
    out.subspace_recovery = (c - snr * snr) / (c + snr);
    out.coefficient_recovery = (c - snr * snr) / (c * (1.0 + snr));
    out.mixed_recovery = std::sqrt(out.subspace_recovery * out.coefficient_recovery);
  } else {
    const double rc = 1.0 + 1.0 / std::sqrt(c);
    out.amplitude_sq_limit = sigma_sq * rc * rc;
    out.subspace_recovery = 0.0;
    out.coefficient_recovery = 0.0;
    out.mixed_recovery = 0.0;
    out.conjectured_zero = true;
  }
  out.amplitude_sq_ratio = out.amplitude_sq_limit / theta_sq;
  return out;
}

OverallPrediction predict_overall(double c, const std::vector<double>& amplitudes_sq,
                                  const NoiseProfile& noise) {
  if (amplitudes_sq.empty()) {
    throw std::invalid_argument("predict_overall: need at least one amplitude");
  }
  OverallPrediction out;
  for (std::size_t i = 0; i < amplitudes_sq.size(); ++i) {
    const SpectrumParams params{c, amplitudes_sq[i], noise};
    const ComponentPrediction p = predict_component(params);
    if (!p.above_transition) {
      throw std::domain_error("predict_overall: component " + std::to_string(i + 1) +
                              " is below the phase transition (corollary hypothesis "
                              "violated)");
    }
    const double theta_sq = amplitudes_sq[i];
    const double b_prime = eval_B_prime(p.beta, params);
    out.mean_subspace_recovery += p.subspace_recovery;
    out.mse += 2.0 * (theta_sq - p.a_at_beta / (c * b_prime)) +
               (p.beta / (c * theta_sq) - 1.0) * (p.beta + theta_sq);
  }
  out.mean_subspace_recovery /= static_cast<double>(amplitudes_sq.size());
  return out;
}

double amplitude_bias_alt(double beta, double c, double theta_sq) {
  if (!(beta > 0.0) || !(c > 0.0) || !(theta_sq > 0.0)) {
    throw std::invalid_argument("amplitude_bias_alt: beta, c and theta^2 must be > 0");
  }
  return 1.0 + (beta / (c * theta_sq) - 1.0) * (beta / theta_sq + 1.0);
}

RecoveryBounds homoscedastic_bounds(double c, double theta_sq, const NoiseProfile& noise) {
  if (!(c > 0.0) || !(theta_sq > 0.0)) {
    throw std::invalid_argument("homoscedastic_bounds: c and theta^2 must be > 0");
  }
  const double snr = noise.average_variance() / theta_sq;
  RecoveryBounds b;
  b.amplitude_sq_ratio_lower = (1.0 + snr / c) * (1.0 + snr);
  b.subspace_upper = (c - snr * snr) / (c + snr);
  b.coefficient_upper = (c - snr * snr) / (c * (1.0 + snr));
  return b;
}

double average_inverse_variance(const NoiseProfile& noise) {
  return noise.average_inverse_variance();
}

double psi_inverse(double x, double c, const NoiseProfile& noise) {
  if (!std::isfinite(x) || x <= noise.max_variance()) {
    throw std::domain_error("psi_inverse evaluated at or below the largest pole");
  }
  if (!(c > 0.0)) {
    throw std::invalid_argument("psi_inverse: c must be > 0");
  }
  return std::sqrt(psi_inverse_sq(x, c, noise));
}

IdentityReport check_spectrum_identities(const SpectrumParams& params) {
  validate_params(params);
  IdentityReport rep;
  const ComponentPrediction p = predict_component(params);
  rep.above_transition = p.above_transition;

  const double c = params.c;
  const double theta_sq = params.theta_sq;
  const double beta = p.beta;
  const double b_prime = eval_B_prime(beta, params);
  const double avg_var = params.noise.average_variance();

  rep.a_rewrite_residual =
      p.a_at_beta - (1.0 - c - (beta / theta_sq) * (beta * b_prime - 2.0));

  // Q(s, z) = c z^2/s^2 + (c-1)/s - c sum_l p_l/(s - sigma_l^2) at s = beta,
  // z = psi^{-1}(beta).
  const double z_sq = psi_inverse_sq(beta, c, params.noise);
  double pole_sum = 0.0;
  const auto& vs = params.noise.variances();
  const auto& ps = params.noise.proportions();
  for (std::size_t l = 0; l < vs.size(); ++l) {
    pole_sum += ps[l] / (beta - vs[l]);
  }
  rep.q_residual = c * z_sq / (beta * beta) + (c - 1.0) / beta - c * pole_sum;

  rep.beta_gap_slack = beta - (c * theta_sq + avg_var);
  rep.b_prime_slack = b_prime - 1.0 / (c * theta_sq);
  const double ratio = avg_var / theta_sq;
  rep.a_upper_slack = (1.0 - ratio * ratio / c) - p.a_at_beta;

  if (p.above_transition) {
    const double psi_route = psi_inverse(beta, c, params.noise);
    rep.amplitude_psi_residual = p.amplitude_sq_limit - psi_route * psi_route;
    rep.mixed_geometric_residual =
        p.mixed_recovery * p.mixed_recovery -
        p.subspace_recovery * p.coefficient_recovery;
  }
  return rep;
}

}  // namespace hetpca
