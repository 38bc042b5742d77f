#include "hetpca/simulate.hpp"

#include "hetpca/pca.hpp"

namespace hetpca {

EmpiricalMetrics run_trial(const DatasetSpec& spec) {
  if (spec.field == Field::Real) {
    const auto ds = generate<double>(spec);
    const auto result = pca<double>(ds.Y, spec.rank());
    return compute_metrics(result, ds);
  }
  const auto ds = generate<std::complex<double>>(spec);
  const auto result = pca<std::complex<double>>(ds.Y, spec.rank());
  return compute_metrics(result, ds);
}

NoiseProfile effective_noise_profile(const DatasetSpec& spec, bool realized_counts) {
  if (spec.assignment == NoiseAssignment::MixtureHomoscedastic ||
      spec.assignment == NoiseAssignment::JohnstoneSpiked) {
    return NoiseProfile::homoscedastic(spec.noise.average_variance());
  }
  if (realized_counts && spec.assignment == NoiseAssignment::Deterministic) {
    const auto counts = level_counts(spec.noise, spec.n);
    std::vector<double> vs;
    std::vector<double> ps;
    for (std::size_t l = 0; l < counts.size(); ++l) {
      if (counts[l] > 0) {
        vs.push_back(spec.noise.variances()[l]);
        ps.push_back(static_cast<double>(counts[l]) / static_cast<double>(spec.n));
      }
    }
    return NoiseProfile(std::move(vs), std::move(ps));
  }
  return spec.noise;
}

std::vector<ComponentPrediction> predict_components(double c,
                                                    const std::vector<double>& amplitudes,
                                                    const NoiseProfile& noise) {
  std::vector<ComponentPrediction> out;
  out.reserve(amplitudes.size());
  for (double theta : amplitudes) {
    out.push_back(predict_component({c, theta * theta, noise}));
  }
  return out;
}

}  // namespace hetpca
