// Test-only oracles, independent of the library's solver and PCA paths:
// fine-grid sign-change scans, a dense Jacobi-SVD reference route, finite
// differences and small random-input generators.
#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hetpca/noise_profile.hpp"

namespace testutil {

// Bracket [a, b] of the last (largest) sign change of f on (lo, hi], found
// by walking a fixed grid. Step is the resolution of the answer.
inline std::pair<double, double> scan_largest_root(
    const std::function<double(double)>& f, double lo, double hi, double step) {
  double prev_x = lo + step;
  double prev_f = f(prev_x);
  double best_a = std::nan("");
  double best_b = std::nan("");
  for (double x = prev_x + step; x <= hi + step * 0.5; x += step) {
    const double fx = f(x);
    if (prev_f < 0.0 && fx >= 0.0) {
      best_a = prev_x;
      best_b = x;
    }
    prev_x = x;
    prev_f = fx;
  }
  if (std::isnan(best_a)) {
    throw std::runtime_error("scan_largest_root: no sign change on the grid");
  }
  return {best_a, best_b};
}

// Deterministic uniform/integer helpers for property-style tests.
class TestRng {
 public:
  explicit TestRng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    return dist(engine_);
  }

  int uniform_int(int lo, int hi) {  // inclusive
    std::uniform_int_distribution<int> dist(lo, hi);
    return dist(engine_);
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

// Random profile with proportions bounded away from zero. Variances are
// drawn from a coarse grid so distinct levels are well separated.
inline hetpca::NoiseProfile random_profile(TestRng& rng, int max_levels = 4,
                                           double var_lo = 0.05, double var_hi = 5.0) {
  const int L = rng.uniform_int(1, max_levels);
  std::vector<double> vs(static_cast<std::size_t>(L));
  std::vector<double> ps(static_cast<std::size_t>(L));
  double total = 0.0;
  for (int l = 0; l < L; ++l) {
    const int ticks = rng.uniform_int(1, 499);
    vs[static_cast<std::size_t>(l)] = var_lo + (var_hi - var_lo) * ticks / 500.0;
    ps[static_cast<std::size_t>(l)] = 0.05 + rng.uniform(0.0, 1.0);
    total += ps[static_cast<std::size_t>(l)];
  }
  for (double& p : ps) p /= total;
  return hetpca::NoiseProfile(std::move(vs), std::move(ps));
}

// Central-difference Hessian of a scalar function of an L-vector.
inline Eigen::MatrixXd fd_hessian(const std::function<double(const std::vector<double>&)>& f,
                                  std::vector<double> v, double h) {
  const std::size_t L = v.size();
  Eigen::MatrixXd H(static_cast<Eigen::Index>(L), static_cast<Eigen::Index>(L));
  const double f0 = f(v);
  for (std::size_t s = 0; s < L; ++s) {
    for (std::size_t t = s; t < L; ++t) {
      double val;
      if (s == t) {
        auto vp = v, vm = v;
        vp[s] += h;
        vm[s] -= h;
        val = (f(vp) - 2.0 * f0 + f(vm)) / (h * h);
      } else {
        auto vpp = v, vpm = v, vmp = v, vmm = v;
        vpp[s] += h; vpp[t] += h;
        vpm[s] += h; vpm[t] -= h;
        vmp[s] -= h; vmp[t] += h;
        vmm[s] -= h; vmm[t] -= h;
        val = (f(vpp) - f(vpm) - f(vmp) + f(vmm)) / (4.0 * h * h);
      }
      H(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(t)) = val;
      H(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(s)) = val;
    }
  }
  return H;
}

// Reference SVD route for tiny instances: full Jacobi SVD of Y/sqrt(n).
template <typename Scalar>
struct ReferenceSvd {
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> left;   // d x k
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> right;  // n x k
  Eigen::VectorXd sq_values;                                    // k
};

template <typename Scalar>
ReferenceSvd<Scalar> reference_svd(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& Y, int k) {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const double root_n = std::sqrt(static_cast<double>(Y.cols()));
  Eigen::JacobiSVD<Matrix> svd(Y / root_n, Eigen::ComputeThinU | Eigen::ComputeThinV);
  ReferenceSvd<Scalar> out;
  out.left = svd.matrixU().leftCols(k);
  out.right = svd.matrixV().leftCols(k);
  out.sq_values = svd.singularValues().head(k).array().square();
  return out;
}

}  // namespace testutil
