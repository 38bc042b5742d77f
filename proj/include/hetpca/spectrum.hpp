#pragma once

#include "hetpca/noise_profile.hpp"

namespace hetpca {

/// Inputs of the component-wise secular equations: sample-to-dimension
/// ratio c, squared subspace amplitude theta^2 and the noise profile.
struct SpectrumParams {
  double c;
  double theta_sq;
  NoiseProfile noise;
};

/// Throws std::invalid_argument unless c and theta_sq are finite and > 0.
void validate_params(const SpectrumParams& params);

/// A(x) = 1 - c sum_l p_l sigma_l^4 / (x - sigma_l^2)^2.
/// Requires x > max_l sigma_l^2 (std::domain_error otherwise).
double eval_A(double x, double c, const NoiseProfile& noise);

/// A'(x) = 2c sum_l p_l sigma_l^4 / (x - sigma_l^2)^3.
double eval_A_prime(double x, double c, const NoiseProfile& noise);

/// B(x) = 1 - c theta^2 sum_l p_l / (x - sigma_l^2).
double eval_B(double x, const SpectrumParams& params);

/// B'(x) = c theta^2 sum_l p_l / (x - sigma_l^2)^2; positive on the domain.
double eval_B_prime(double x, const SpectrumParams& params);

/// Largest real root of A, bracketed in (max sigma^2, max sigma^2 (1+sqrt(c))].
/// Returns 0 for an all-zero profile, where A has no root.
double solve_alpha(double c, const NoiseProfile& noise);

/// Largest real root of B, bracketed in (max sigma^2, max sigma^2 + c theta^2].
double solve_beta(const SpectrumParams& params);

/// Residual bound guaranteed by the solvers (|A(alpha)|, |B(beta)| after polish).
inline constexpr double kRootResidualTol = 1e-10;

}  // namespace hetpca
