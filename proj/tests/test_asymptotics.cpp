#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "hetpca/asymptotics.hpp"
#include "oracles.hpp"

using hetpca::NoiseProfile;
using hetpca::SpectrumParams;

namespace {

const NoiseProfile kSetting1 = NoiseProfile::homoscedastic(1.0);
const NoiseProfile kSetting2({1.01, 0.01}, {0.99, 0.01});
const NoiseProfile kSetting3({0.01, 99.01}, {0.99, 0.01});

// Eq-12 term assembled from an independently scanned root.
double mse_term_oracle(double c, double theta_sq, const NoiseProfile& noise) {
  auto b = [&](double x) {
    double s = 0.0;
    for (std::size_t l = 0; l < noise.levels(); ++l) {
      s += noise.proportions()[l] / (x - noise.variances()[l]);
    }
    return 1.0 - c * theta_sq * s;
  };
  const double m = noise.max_variance();
  const auto bracket = testutil::scan_largest_root(b, m, m + c * theta_sq + 1.0, 1e-7);
  const double beta = 0.5 * (bracket.first + bracket.second);
  double a = 1.0;
  double bp = 0.0;
  for (std::size_t l = 0; l < noise.levels(); ++l) {
    const double dx = beta - noise.variances()[l];
    a -= c * noise.proportions()[l] * noise.variances()[l] * noise.variances()[l] /
         (dx * dx);
    bp += c * theta_sq * noise.proportions()[l] / (dx * dx);
  }
  return 2.0 * (theta_sq - a / (c * bp)) + (beta / (c * theta_sq) - 1.0) * (beta + theta_sq);
}

}  // namespace

TEST_CASE("settings table from the importance-of-homoscedasticity comparison") {
  const auto s1 = hetpca::predict_component({10.0, 1.0, kSetting1});
  CHECK(std::abs(s1.subspace_recovery - 0.818) < 0.0005);
  CHECK(s1.above_transition);

  const auto s2 = hetpca::predict_component({10.0, 1.0, kSetting2});
  CHECK(std::abs(s2.subspace_recovery - 0.817) < 0.0005);
  CHECK(s2.above_transition);

  const auto s3 = hetpca::predict_component({10.0, 1.0, kSetting3});
  CHECK(s3.subspace_recovery == 0.0);
  CHECK_FALSE(s3.above_transition);
  CHECK(s3.conjectured_zero);

  const auto low = hetpca::predict_component({0.1, 1.0, NoiseProfile::homoscedastic(0.01)});
  CHECK(std::abs(low.subspace_recovery - 0.908) < 0.0005);
}

TEST_CASE("noiseless prediction is perfect recovery") {
  const auto p = hetpca::predict_component({10.0, 1.0, NoiseProfile::homoscedastic(0.0)});
  CHECK(p.alpha == 0.0);
  CHECK(p.beta == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(p.a_at_beta == 1.0);
  CHECK(p.subspace_recovery == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(p.coefficient_recovery == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(p.mixed_recovery == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(p.amplitude_sq_ratio == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("homoscedastic closed forms") {
  const auto p = hetpca::predict_homoscedastic(10.0, 1.0, 1.0);
  CHECK(p.subspace_recovery == doctest::Approx(9.0 / 11.0).epsilon(1e-12));
  CHECK(p.coefficient_recovery == doctest::Approx(0.45).epsilon(1e-12));
  CHECK(p.amplitude_sq_limit == doctest::Approx(2.2).epsilon(1e-12));
  CHECK(p.beta == doctest::Approx(11.0).epsilon(1e-12));

  // below the transition: c theta^4 = 0.0625 < sigma^4 = 1
  const auto q = hetpca::predict_homoscedastic(1.0, 0.25, 1.0);
  CHECK_FALSE(q.above_transition);
  CHECK(q.amplitude_sq_limit == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(q.subspace_recovery == 0.0);
  CHECK(q.coefficient_recovery == 0.0);

  CHECK_THROWS_AS(hetpca::predict_homoscedastic(-1.0, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(hetpca::predict_homoscedastic(1.0, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(hetpca::predict_homoscedastic(1.0, 1.0, -0.1), std::invalid_argument);
}

TEST_CASE("single-level prediction matches the closed forms over a small grid") {
  for (double c : {0.2, 0.9, 2.0, 11.0, 64.0}) {
    for (double theta_sq : {0.15, 1.0, 7.5}) {
      for (double sigma_sq : {0.0, 0.4, 2.0, 9.0}) {
        const auto numeric =
            hetpca::predict_component({c, theta_sq, NoiseProfile::homoscedastic(sigma_sq)});
        const auto closed = hetpca::predict_homoscedastic(c, theta_sq, sigma_sq);
        auto close = [](double a, double b) {
          return std::abs(a - b) <= 1e-10 * std::max({1.0, std::abs(a), std::abs(b)});
        };
        CHECK(numeric.above_transition == closed.above_transition);
        CHECK(close(numeric.alpha, closed.alpha));
        CHECK(close(numeric.beta, closed.beta));
        CHECK(close(numeric.a_at_beta, closed.a_at_beta));
        CHECK(close(numeric.amplitude_sq_limit, closed.amplitude_sq_limit));
        CHECK(close(numeric.subspace_recovery, closed.subspace_recovery));
        CHECK(close(numeric.coefficient_recovery, closed.coefficient_recovery));
        CHECK(close(numeric.mixed_recovery, closed.mixed_recovery));
      }
    }
  }
}

TEST_CASE("amplitude bias alternate formula") {
  CHECK(hetpca::amplitude_bias_alt(10.0, 10.0, 1.0) == doctest::Approx(1.0));
  CHECK(hetpca::amplitude_bias_alt(11.0, 10.0, 1.0) == doctest::Approx(2.2).epsilon(1e-12));

  // cross-check against the full amplitude limit on the setting-2 profile
  const SpectrumParams params{10.0, 1.0, kSetting2};
  const auto p = hetpca::predict_component(params);
  CHECK(hetpca::amplitude_bias_alt(p.beta, params.c, params.theta_sq) ==
        doctest::Approx(p.amplitude_sq_ratio).epsilon(1e-10));
}

TEST_CASE("overall recovery and mse") {
  // noiseless: every bracket vanishes
  const auto zero = hetpca::predict_overall(10.0, {1.0, 0.64},
                                            NoiseProfile::homoscedastic(0.0));
  CHECK(zero.mean_subspace_recovery == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(zero.mse == doctest::Approx(0.0).scale(1).epsilon(1e-12));

  // homoscedastic single component: mse = 2(1 - 0.9) + 0.1 * 12 = 1.4
  const auto one = hetpca::predict_overall(10.0, {1.0}, kSetting1);
  CHECK(one.mean_subspace_recovery == doctest::Approx(9.0 / 11.0).epsilon(1e-12));
  CHECK(one.mse == doctest::Approx(1.4).epsilon(1e-12));

  // term-by-term against independently scanned roots
  const NoiseProfile mixed({0.1, 1.5}, {0.5, 0.5});
  const auto overall = hetpca::predict_overall(10.0, {1.0, 0.64}, mixed);
  const double expected =
      mse_term_oracle(10.0, 1.0, mixed) + mse_term_oracle(10.0, 0.64, mixed);
  CHECK(overall.mse == doctest::Approx(expected).epsilon(1e-6));
  const auto p1 = hetpca::predict_component({10.0, 1.0, mixed});
  const auto p2 = hetpca::predict_component({10.0, 0.64, mixed});
  CHECK(overall.mean_subspace_recovery ==
        doctest::Approx(0.5 * (p1.subspace_recovery + p2.subspace_recovery))
            .epsilon(1e-12));

  // a component at or below the transition violates the hypothesis
  const NoiseProfile contaminated({0.1, 3.25}, {0.5, 0.5});
  CHECK_THROWS_AS(hetpca::predict_overall(10.0, {1.0, 0.64}, contaminated),
                  std::domain_error);
}

TEST_CASE("homoscedastic bounds") {
  const auto b1 = hetpca::homoscedastic_bounds(10.0, 1.0, kSetting1);
  CHECK(b1.subspace_upper == doctest::Approx(9.0 / 11.0).epsilon(1e-12));
  const auto s1 = hetpca::predict_component({10.0, 1.0, kSetting1});
  CHECK(s1.subspace_recovery == doctest::Approx(b1.subspace_upper).epsilon(1e-12));

  const auto b2 = hetpca::homoscedastic_bounds(10.0, 1.0, kSetting2);
  CHECK(b2.subspace_upper == doctest::Approx(9.0 / 11.0).epsilon(1e-12));
  const auto s2 = hetpca::predict_component({10.0, 1.0, kSetting2});
  CHECK(s2.subspace_recovery < b2.subspace_upper);

  const auto b0 = hetpca::homoscedastic_bounds(10.0, 1.0, NoiseProfile::homoscedastic(0.0));
  CHECK(b0.subspace_upper == doctest::Approx(1.0));
  CHECK(b0.amplitude_sq_ratio_lower == doctest::Approx(1.0));
}

TEST_CASE("average inverse noise variance") {
  CHECK(hetpca::average_inverse_variance(kSetting1) == doctest::Approx(1.0));
  const NoiseProfile two({0.1, 3.25}, {0.7, 0.3});
  CHECK(hetpca::average_inverse_variance(two) ==
        doctest::Approx(0.7 / 0.1 + 0.3 / 3.25).epsilon(1e-12));
  const NoiseProfile dup({2.0, 2.0}, {0.5, 0.5});
  CHECK(hetpca::average_inverse_variance(dup) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_THROWS_AS(hetpca::average_inverse_variance(NoiseProfile::homoscedastic(0.0)),
                  std::domain_error);
}

TEST_CASE("psi inverse") {
  CHECK(hetpca::psi_inverse(11.0, 10.0, kSetting1) ==
        doctest::Approx(std::sqrt(2.2)).epsilon(1e-12));
  // all-zero profile: psi^{-1}(c theta^2) = theta
  CHECK(hetpca::psi_inverse(10.0, 10.0, NoiseProfile::homoscedastic(0.0)) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(hetpca::psi_inverse(1.0, 10.0, kSetting1), std::domain_error);

  // grid scan: on (max sigma^2, infinity) psi^{-1} attains its minimum at
  // alpha (the spectrum edge) and increases beyond it
  testutil::TestRng rng(0x9519u);
  for (int trial = 0; trial < 20; ++trial) {
    const auto noise = testutil::random_profile(rng);
    const double c = rng.uniform(0.3, 20.0);
    const double m = noise.max_variance();
    const double alpha = hetpca::solve_alpha(c, noise);
    const double at_alpha = hetpca::psi_inverse(alpha, c, noise);
    double prev = at_alpha;
    for (int i = 1; i <= 40; ++i) {
      const double x = alpha + 0.05 * i * (1.0 + alpha);
      const double v = hetpca::psi_inverse(x, c, noise);
      CHECK(v >= std::sqrt(x / c) - 1e-12);
      CHECK(v > prev);
      prev = v;
    }
    for (int i = 1; i <= 20; ++i) {
      const double x = alpha + (m - alpha) * 0.04 * i;  // inside (m, alpha)
      if (x <= m) break;
      CHECK(hetpca::psi_inverse(x, c, noise) >= at_alpha - 1e-9);
    }
  }

  // homoscedastic edge: psi^{-1}(alpha)^2 = sigma^2 (1 + 1/sqrt(c))^2
  for (double c : {0.3, 2.0, 25.0}) {
    for (double var : {0.2, 1.0, 5.0}) {
      const auto noise = NoiseProfile::homoscedastic(var);
      const double alpha = hetpca::solve_alpha(c, noise);
      const double edge = hetpca::psi_inverse(alpha, c, noise);
      const double rc = 1.0 + 1.0 / std::sqrt(c);
      CHECK(edge * edge == doctest::Approx(var * rc * rc).epsilon(1e-10));
    }
  }
}

TEST_CASE("spectrum identities") {
  // homoscedastic: equality case, all slacks vanish
  auto rep = hetpca::check_spectrum_identities({10.0, 1.0, kSetting1});
  CHECK(rep.pass(1e-10));
  CHECK(std::abs(rep.beta_gap_slack) < 1e-10);
  CHECK(std::abs(rep.b_prime_slack) < 1e-10);
  CHECK(std::abs(rep.a_upper_slack) < 1e-10);

  // heteroscedastic: identities hold, slacks strictly positive
  auto rep2 = hetpca::check_spectrum_identities({10.0, 1.0, kSetting2});
  CHECK(rep2.pass(1e-9));
  CHECK(rep2.beta_gap_slack > 0.0);
  CHECK(rep2.b_prime_slack > 0.0);
  CHECK(rep2.a_upper_slack > 0.0);

  auto rep3 = hetpca::check_spectrum_identities({10.0, 1.0, NoiseProfile({0.1, 3.25}, {0.7, 0.3})});
  CHECK(rep3.pass(1e-9));
  CHECK(rep3.beta_gap_slack > 0.0);
}

TEST_CASE("homoscedasticity is optimal at fixed average variance") {
  testutil::TestRng rng(0x0b71u);
  int tested = 0;
  while (tested < 200) {
    const auto noise = testutil::random_profile(rng);
    const double c = rng.uniform(0.5, 40.0);
    const double theta_sq = rng.uniform(0.3, 3.0);
    const auto het = hetpca::predict_component({c, theta_sq, noise});
    if (!het.above_transition) continue;
    ++tested;
    const auto hom = hetpca::predict_homoscedastic(c, theta_sq, noise.average_variance());
    CHECK(het.subspace_recovery <= hom.subspace_recovery + 1e-9);
    CHECK(het.coefficient_recovery <= hom.coefficient_recovery + 1e-9);
    CHECK(het.amplitude_sq_ratio >= hom.amplitude_sq_ratio - 1e-9);
    if (noise.max_variance() - noise.min_variance() > 1e-6) {
      CHECK(het.subspace_recovery < hom.subspace_recovery);
      CHECK(het.coefficient_recovery < hom.coefficient_recovery);
      CHECK(het.amplitude_sq_ratio > hom.amplitude_sq_ratio);
    }
  }
}

TEST_CASE("geometric mean, psi consistency and transition coherence") {
  testutil::TestRng rng(0x6e0du);
  for (int trial = 0; trial < 300; ++trial) {
    const auto noise = testutil::random_profile(rng);
    const double c = rng.uniform(0.2, 50.0);
    const double theta_sq = rng.uniform(0.1, 5.0);
    const auto p = hetpca::predict_component({c, theta_sq, noise});

    // above_transition <=> A(beta) > 0 <=> beta > alpha
    CHECK(p.above_transition == (p.a_at_beta > 0.0));
    if (std::abs(p.a_at_beta) > 1e-9) {  // away from the boundary
      CHECK(p.above_transition == (p.beta > p.alpha));
    }

    if (p.above_transition) {
      CHECK(std::abs(p.mixed_recovery * p.mixed_recovery -
                     p.subspace_recovery * p.coefficient_recovery) < 1e-10);
      const double psi = hetpca::psi_inverse(p.beta, c, noise);
      CHECK(std::abs(p.amplitude_sq_limit - psi * psi) <
            1e-9 * std::max(1.0, p.amplitude_sq_limit));
      CHECK(p.amplitude_sq_ratio >= 1.0 - 1e-12);
      CHECK(p.subspace_recovery >= 0.0);
      CHECK(p.subspace_recovery <= 1.0 + 1e-12);
      CHECK(p.coefficient_recovery >= 0.0);
      CHECK(p.coefficient_recovery <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("hessians at a homoscedastic point have the rank-one-deflated form") {
  // Hess(beta - avg) = (2/(c theta^2)) (diag p - p p^T) and
  // Hess(B'(beta))   = (2/(c theta^2)^3) (diag p - p p^T).
  // The cube in the second scale follows by differentiating through the
  // root constraint twice (and by dimensional analysis: B' carries 1/x,
  // so its variance-Hessian carries 1/x^3); finite differences confirm it
  // at every c theta^2, matching the quartic form only when c theta^2 = 1.
  const std::vector<double> props{0.2, 0.3, 0.5};
  const double h = 1e-4;
  for (const auto& [c, theta_sq] : std::vector<std::pair<double, double>>{
           {2.0, 1.0}, {2.0, 0.5}, {0.5, 1.0}, {4.0, 1.0}}) {
    auto beta_minus_avg = [&, c = c, theta_sq = theta_sq](const std::vector<double>& v) {
      NoiseProfile noise(v, props);
      double avg = noise.average_variance();
      return hetpca::solve_beta({c, theta_sq, noise}) - avg;
    };
    auto b_prime_at_root = [&, c = c, theta_sq = theta_sq](const std::vector<double>& v) {
      NoiseProfile noise(v, props);
      const SpectrumParams params{c, theta_sq, noise};
      return hetpca::eval_B_prime(hetpca::solve_beta(params), params);
    };

    const std::vector<double> v0(props.size(), 1.0);
    const auto h_beta = testutil::fd_hessian(beta_minus_avg, v0, h);
    const auto h_bp = testutil::fd_hessian(b_prime_at_root, v0, h);

    Eigen::VectorXd p = Eigen::Map<const Eigen::VectorXd>(props.data(), 3);
    const Eigen::MatrixXd base = Eigen::MatrixXd(p.asDiagonal()) - p * p.transpose();
    const double ct2 = c * theta_sq;
    CHECK((h_beta - (2.0 / ct2) * base).cwiseAbs().maxCoeff() < 1e-4);
    CHECK((h_bp - (2.0 / (ct2 * ct2 * ct2)) * base).cwiseAbs().maxCoeff() < 1e-4);

    // the all-ones direction is in the numerical kernel
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(3);
    CHECK((h_beta * ones).norm() / ones.norm() < 1e-6);
    CHECK((h_bp * ones).norm() / ones.norm() < 1e-6);
  }
}

TEST_CASE("adding infinitely many noisier samples") {
  const double c1 = 10.0;
  const double theta_sq = 1.0;
  const double sigma1 = 1.0;
  for (double sigma2 : {4.0, 1.4}) {
    const double c2 = 1e6;
    const double c = c1 + c2;
    const NoiseProfile noise({sigma1, sigma2}, {c1 / c, c2 / c});
    const auto p = hetpca::predict_component({c, theta_sq, noise});
    CHECK(p.above_transition);
    CHECK(std::abs(p.subspace_recovery - 1.0) < 1e-3);
    CHECK(std::abs(p.amplitude_sq_ratio - (1.0 + sigma2 / theta_sq)) < 1e-3);
    CHECK(std::abs(p.coefficient_recovery - 1.0 / (1.0 + sigma2 / theta_sq)) < 1e-3);
  }
}
