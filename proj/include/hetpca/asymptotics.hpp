#pragma once

#include <vector>

#include "hetpca/noise_profile.hpp"
#include "hetpca/spectrum.hpp"

namespace hetpca {

/// Almost-sure limits of the PCA estimates for one subspace component.
/// Below the phase transition (a_at_beta <= 0) all three recoveries are
/// reported as 0; the zeroing is conjectured rather than proved, which
/// `conjectured_zero` flags for downstream consumers.
struct ComponentPrediction {
  double alpha = 0.0;                // largest real root of A
  double beta = 0.0;                 // largest real root of B_i
  double a_at_beta = 0.0;            // A(beta)
  bool above_transition = false;     // A(beta) > 0
  double amplitude_sq_limit = 0.0;   // limit of thetahat_i^2
  double amplitude_sq_ratio = 0.0;   // limit of thetahat_i^2 / theta_i^2
  double subspace_recovery = 0.0;    // squared cosine to the matching span
  double coefficient_recovery = 0.0; // squared cosine of the score vector
  double mixed_recovery = 0.0;       // component/score cross term
  bool conjectured_zero = false;     // recoveries zeroed by the transition conjecture
};

struct OverallPrediction {
  double mean_subspace_recovery = 0.0;
  double mse = 0.0;
};

/// Performance bounds attained by homoscedastic noise at the same
/// average variance.
struct RecoveryBounds {
  double amplitude_sq_ratio_lower = 0.0;
  double subspace_upper = 0.0;
  double coefficient_upper = 0.0;
};

/// Residuals of the algebraic identities tying the closed-form limits
/// together, plus the slacks of the root bounds (each must be >= 0).
struct IdentityReport {
  bool above_transition = false;
  double a_rewrite_residual = 0.0;       // A(beta) vs its beta/B' form
  double q_residual = 0.0;               // Q(beta, psi^{-1}(beta))
  double beta_gap_slack = 0.0;           // beta - (c theta^2 + avg var)
  double b_prime_slack = 0.0;            // B'(beta) - 1/(c theta^2)
  double a_upper_slack = 0.0;            // bound - A(beta)
  double amplitude_psi_residual = 0.0;   // Eq-(2) amplitude vs psi^{-1}(beta)^2
  double mixed_geometric_residual = 0.0; // mixed^2 vs subspace * coefficient

  bool pass(double tol = 1e-9) const;
};

ComponentPrediction predict_component(const SpectrumParams& params);

/// Closed-form special case for a single noise variance.
ComponentPrediction predict_homoscedastic(double c, double theta_sq, double sigma_sq);

/// Mean subspace recovery and reconstruction MSE over all k components.
/// Throws std::domain_error if any component is at or below the transition.
OverallPrediction predict_overall(double c, const std::vector<double>& amplitudes_sq,
                                  const NoiseProfile& noise);

/// Amplitude bias written in terms of beta alone:
/// 1 + (beta/(c theta^2) - 1)(beta/theta^2 + 1).
double amplitude_bias_alt(double beta, double c, double theta_sq);

RecoveryBounds homoscedastic_bounds(double c, double theta_sq, const NoiseProfile& noise);

double average_inverse_variance(const NoiseProfile& noise);

/// psi^{-1}(x) = sqrt((x/c)(1 + c sum_l p_l sigma_l^2/(x - sigma_l^2))),
/// defined for x > max_l sigma_l^2.
double psi_inverse(double x, double c, const NoiseProfile& noise);

IdentityReport check_spectrum_identities(const SpectrumParams& params);

}  // namespace hetpca
