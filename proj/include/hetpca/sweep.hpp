#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hetpca/simulate.hpp"

namespace hetpca {

enum class SweepKind {
  P2Sweep,    // contamination fraction p2 over a two-variance profile
  CThetaGrid, // sample-to-dimension ratio x subspace amplitude
  SigmaGrid,  // two noise variances at fixed proportions
  AddedData,  // extra samples at a second noise variance
};

std::string to_string(SweepKind k);
SweepKind sweep_kind_from_string(const std::string& s);

struct AxisSpec {
  double start = 0.0;
  double stop = 0.0;
  int count = 1;

  std::vector<double> values() const;
};

struct SweepConfig {
  SweepKind kind = SweepKind::P2Sweep;
  std::int64_t n = 1000;
  std::int64_t d = 100;
  std::vector<double> amplitudes{1.0};
  std::vector<double> variances{1.0};
  std::vector<double> proportions{1.0};
  Field field = Field::Real;
  CoeffDist coeff_dist = CoeffDist::Gaussian;
  NoiseAssignment assignment = NoiseAssignment::Deterministic;
  AxisSpec axis1;
  std::optional<AxisSpec> axis2;
  int trials = 1;
  std::uint64_t master_seed = 0;

  void validate() const;
};

/// One grid point: the dataset spec to simulate (seed filled per trial) and
/// the ideal parameters the asymptotic predictions are evaluated at.
struct SweepPoint {
  int index = 0;
  double axis1 = 0.0;
  std::optional<double> axis2;
  DatasetSpec spec;
  double prediction_c = 0.0;
  NoiseProfile prediction_noise = NoiseProfile::homoscedastic(1.0);
};

/// One CSV row: empirical mean and interquartile endpoints of one metric at
/// one sweep point, alongside its asymptotic value (NaN when the theory
/// leaves it undefined, e.g. MSE with a component below the transition).
struct SummaryRow {
  std::string sweep_kind;
  int point_index = 0;
  double axis1 = 0.0;
  std::optional<double> axis2;
  int component = 0;  // 1-based; 0 for dataset-level metrics
  std::string metric;
  double asymptotic = 0.0;
  double mean = 0.0;
  double q25 = 0.0;
  double q75 = 0.0;
  int trials = 0;
  std::int64_t n = 0;
  std::int64_t d = 0;
  int seed_scheme_version = 1;
};

inline constexpr int kSeedSchemeVersion = 1;
inline constexpr const char* kCsvHeader =
    "sweep_kind,point_index,axis1,axis2,component,metric,asymptotic,mean,q25,q75,"
    "trials,n,d,seed_scheme_version";

std::vector<SweepPoint> build_points(const SweepConfig& config);

/// Runs trials on `threads` workers. Per-trial seeds are derived from
/// (master_seed, point, trial), so the output is identical for any worker
/// count or scheduling order.
std::vector<SummaryRow> run_sweep(const SweepConfig& config, int threads = 1);

void write_csv(const std::vector<SummaryRow>& rows, std::ostream& out);

/// Quantile by linear interpolation on the sorted sample (inclusive
/// endpoints): position q * (m - 1), interpolating between neighbors.
double quantile_linear(std::vector<double> values, double q);

/// Parses a JSON document mirroring SweepConfig field names in snake_case.
SweepConfig parse_sweep_config(const std::string& json_text);

}  // namespace hetpca
