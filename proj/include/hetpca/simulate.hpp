#pragma once

#include <vector>

#include "hetpca/asymptotics.hpp"
#include "hetpca/datagen.hpp"
#include "hetpca/metrics.hpp"

namespace hetpca {

/// Generate one dataset from the spec, run PCA at the ground-truth rank and
/// measure every empirical metric. Dispatches on the spec's field.
EmpiricalMetrics run_trial(const DatasetSpec& spec);

/// The noise profile the theory should be evaluated at for data generated
/// from this spec. The mixture and spiked-covariance comparison generators
/// produce homoscedastic data at the average variance; the model generators
/// use the profile itself (with realized per-level counts when requested,
/// since deterministic assignment rounds p_l * n).
NoiseProfile effective_noise_profile(const DatasetSpec& spec, bool realized_counts);

/// Per-component predictions for amplitudes theta_i at ratio c.
std::vector<ComponentPrediction> predict_components(double c,
                                                    const std::vector<double>& amplitudes,
                                                    const NoiseProfile& noise);

}  // namespace hetpca
