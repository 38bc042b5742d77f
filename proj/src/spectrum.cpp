#include "hetpca/spectrum.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace hetpca {

namespace {

void check_domain(double x, const NoiseProfile& noise) {
  if (!std::isfinite(x) || x <= noise.max_variance()) {
    throw std::domain_error("secular function evaluated at or below its largest pole");
  }
}

// Profile re-expressed relative to its largest pole: gap_l = max_var - sigma_l^2.
// Solving for the root offset y = x - max_var avoids cancellation when the
// root sits close to the pole.
struct GapProfile {
  double max_var = 0.0;
  double top_prop = 0.0;  // proportion carried by the largest variance
  std::vector<double> gap;
  std::vector<double> var;
  std::vector<double> prop;

  explicit GapProfile(const NoiseProfile& merged) {
    max_var = merged.max_variance();
    const auto& vs = merged.variances();
    const auto& ps = merged.proportions();
    gap.resize(vs.size());
    var = vs;
    prop = ps;
    for (std::size_t l = 0; l < vs.size(); ++l) {
      gap[l] = max_var - vs[l];
      if (vs[l] == max_var) top_prop += ps[l];
    }
  }
};

// Bisection on a bracket with g(lo) < 0 <= g(hi), then damped Newton.
// g must be strictly increasing on (0, inf).
template <typename G, typename Gp>
double bisect_newton(const G& g, const Gp& gp, double lo, double hi, double width_tol) {
  double ghi = g(hi);
  // Analytic sign at hi is >= 0; absorb roundoff by nudging the end outward.
  for (int i = 0; i < 64 && ghi < 0.0; ++i) {
    hi += std::max(hi, 1.0) * 1e-15;
    ghi = g(hi);
  }
  if (g(lo) >= 0.0 || ghi < 0.0) {
    throw std::runtime_error("secular root bracket lost its sign change");
  }
  const double lo0 = lo;
  const double hi0 = hi;
  while (hi - lo > width_tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (g(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double y = 0.5 * (lo + hi);
  double best = std::abs(g(y));
  for (int it = 0; it < 5 && best > 0.0; ++it) {
    const double slope = gp(y);
    if (!(slope > 0.0) || !std::isfinite(slope)) break;
    const double cand = y - g(y) / slope;
    if (!(cand > lo0) || !(cand <= hi0)) break;
    const double r = std::abs(g(cand));
    if (r < best) {
      best = r;
      y = cand;
    } else {
      break;
    }
  }
  return y;
}

// Final Newton steps against the public x-form evaluators so the reported
// residual is minimal in that representation too.
template <typename F, typename Fp>
double polish_x(double x, double lo_x, double hi_x, const F& f, const Fp& fp) {
  double best = std::abs(f(x));
  for (int it = 0; it < 3 && best > 0.0; ++it) {
    const double slope = fp(x);
    if (!(slope > 0.0) || !std::isfinite(slope)) break;
    const double cand = x - f(x) / slope;
    if (!(cand > lo_x) || !(cand <= hi_x)) break;
    const double r = std::abs(f(cand));
    if (r < best) {
      best = r;
      x = cand;
    } else {
      break;
    }
  }
  return x;
}

}  // namespace

void validate_params(const SpectrumParams& params) {
  if (!std::isfinite(params.c) || params.c <= 0.0) {
    throw std::invalid_argument("sample-to-dimension ratio c must be finite and > 0");
  }
  if (!std::isfinite(params.theta_sq) || params.theta_sq <= 0.0) {
    throw std::invalid_argument("subspace amplitude theta^2 must be finite and > 0");
  }
}

double eval_A(double x, double c, const NoiseProfile& noise) {
  check_domain(x, noise);
  double s = 0.0;
  const auto& vs = noise.variances();
  const auto& ps = noise.proportions();
  for (std::size_t l = 0; l < vs.size(); ++l) {
    const double dx = x - vs[l];
    s += ps[l] * vs[l] * vs[l] / (dx * dx);
  }
  return 1.0 - c * s;
}

double eval_A_prime(double x, double c, const NoiseProfile& noise) {
  check_domain(x, noise);
  double s = 0.0;
  const auto& vs = noise.variances();
  const auto& ps = noise.proportions();
  for (std::size_t l = 0; l < vs.size(); ++l) {
    const double dx = x - vs[l];
    s += ps[l] * vs[l] * vs[l] / (dx * dx * dx);
  }
  return 2.0 * c * s;
}

double eval_B(double x, const SpectrumParams& params) {
  validate_params(params);
  check_domain(x, params.noise);
  double s = 0.0;
  const auto& vs = params.noise.variances();
  const auto& ps = params.noise.proportions();
  for (std::size_t l = 0; l < vs.size(); ++l) {
    s += ps[l] / (x - vs[l]);
  }
  return 1.0 - params.c * params.theta_sq * s;
}

double eval_B_prime(double x, const SpectrumParams& params) {
  validate_params(params);
  check_domain(x, params.noise);
  double s = 0.0;
  const auto& vs = params.noise.variances();
  const auto& ps = params.noise.proportions();
  for (std::size_t l = 0; l < vs.size(); ++l) {
    const double dx = x - vs[l];
    s += ps[l] / (dx * dx);
  }
  return params.c * params.theta_sq * s;
}

double solve_alpha(double c, const NoiseProfile& noise) {
  if (!std::isfinite(c) || c <= 0.0) {
    throw std::invalid_argument("sample-to-dimension ratio c must be finite and > 0");
  }
  if (noise.all_zero()) {
    // A is identically 1; the noiseless edge sits at 0 by convention.
    return 0.0;
  }
  const GapProfile gp(noise.merged());
  const double m = gp.max_var;
  auto g = [&](double y) {
    double s = 0.0;
    for (std::size_t l = 0; l < gp.gap.size(); ++l) {
      const double dy = y + gp.gap[l];
      s += gp.prop[l] * gp.var[l] * gp.var[l] / (dy * dy);
    }
    return 1.0 - c * s;
  };
  auto gprime = [&](double y) {
    double s = 0.0;
    for (std::size_t l = 0; l < gp.gap.size(); ++l) {
      const double dy = y + gp.gap[l];
      s += gp.prop[l] * gp.var[l] * gp.var[l] / (dy * dy * dy);
    }
    return 2.0 * c * s;
  };
  const double hi = m * std::sqrt(c);
  // g(y) <= 1 - c p_top m^2 / y^2 < 0 below this point
  const double lo = 0.5 * std::min(hi, m * std::sqrt(c * gp.top_prop));
  const double y = bisect_newton(g, gprime, lo, hi, 1e-13 * (1.0 + m + hi));
  double x = m + y;
  x = polish_x(
      x, m, (m + hi) * (1.0 + 1e-9), [&](double t) { return eval_A(t, c, noise); },
      [&](double t) { return eval_A_prime(t, c, noise); });
  if (std::abs(eval_A(x, c, noise)) > kRootResidualTol) {
    throw std::runtime_error("solve_alpha: residual above tolerance (internal invariant)");
  }
  return x;
}

double solve_beta(const SpectrumParams& params) {
  validate_params(params);
  const GapProfile gp(params.noise.merged());
  const double m = gp.max_var;
  const double ct2 = params.c * params.theta_sq;
  auto g = [&](double y) {
    double s = 0.0;
    for (std::size_t l = 0; l < gp.gap.size(); ++l) {
      s += gp.prop[l] / (y + gp.gap[l]);
    }
    return 1.0 - ct2 * s;
  };
  auto gprime = [&](double y) {
    double s = 0.0;
    for (std::size_t l = 0; l < gp.gap.size(); ++l) {
      const double dy = y + gp.gap[l];
      s += gp.prop[l] / (dy * dy);
    }
    return ct2 * s;
  };
  const double hi = ct2;
  // g(y) <= 1 - c theta^2 p_top / y < 0 below this point
  const double lo = 0.5 * std::min(hi, ct2 * gp.top_prop);
  const double y = bisect_newton(g, gprime, lo, hi, 1e-13 * (1.0 + m + hi));
  double x = m + y;
  x = polish_x(
      x, m, (m + hi) * (1.0 + 1e-9), [&](double t) { return eval_B(t, params); },
      [&](double t) { return eval_B_prime(t, params); });
  if (std::abs(eval_B(x, params)) > kRootResidualTol) {
    throw std::runtime_error("solve_beta: residual above tolerance (internal invariant)");
  }
  return x;
}

}  // namespace hetpca
