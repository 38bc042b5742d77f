#include "hetpca/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "hetpca/rng.hpp"

namespace hetpca {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

NoiseProfile two_level_profile(double v1, double v2, double p2) {
  if (p2 <= 0.0) return NoiseProfile({v1}, {1.0});
  if (p2 >= 1.0) return NoiseProfile({v2}, {1.0});
  return NoiseProfile({v1, v2}, {1.0 - p2, p2});
}

struct MetricColumn {
  int component;  // 1-based, 0 for dataset-level
  std::string name;
  double asymptotic;
  std::vector<double> samples;
};

}  // namespace

std::string to_string(SweepKind k) {
  switch (k) {
    case SweepKind::P2Sweep: return "p2-sweep";
    case SweepKind::CThetaGrid: return "c-theta-grid";
    case SweepKind::SigmaGrid: return "sigma-grid";
    case SweepKind::AddedData: return "added-data";
  }
  return "p2-sweep";
}

SweepKind sweep_kind_from_string(const std::string& s) {
  if (s == "p2-sweep") return SweepKind::P2Sweep;
  if (s == "c-theta-grid") return SweepKind::CThetaGrid;
  if (s == "sigma-grid") return SweepKind::SigmaGrid;
  if (s == "added-data") return SweepKind::AddedData;
  throw std::invalid_argument("unknown sweep kind: " + s);
}

std::vector<double> AxisSpec::values() const {
  if (count < 1) throw std::invalid_argument("axis count must be >= 1");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  if (count == 1) {
    out.push_back(start);
    return out;
  }
  const double step = (stop - start) / static_cast<double>(count - 1);
  for (int i = 0; i < count; ++i) out.push_back(start + step * i);
  return out;
}

void SweepConfig::validate() const {
  if (n < 1 || d < 1) throw std::invalid_argument("sweep config: n and d must be >= 1");
  if (trials < 1) throw std::invalid_argument("sweep config: trials must be >= 1");
  if (axis1.count < 1) throw std::invalid_argument("sweep config: axis1 count must be >= 1");
  if (axis2 && axis2->count < 1) {
    throw std::invalid_argument("sweep config: axis2 count must be >= 1");
  }
  if (amplitudes.empty()) throw std::invalid_argument("sweep config: amplitudes empty");
  NoiseProfile base(variances, proportions);  // validates lengths/sum
  switch (kind) {
    case SweepKind::P2Sweep:
    case SweepKind::SigmaGrid:
    case SweepKind::AddedData:
      if (variances.size() != 2) {
        throw std::invalid_argument("sweep config: this sweep kind needs exactly two "
                                    "noise variances");
      }
      break;
    case SweepKind::CThetaGrid:
      if (!axis2) throw std::invalid_argument("sweep config: c-theta-grid needs axis2");
      break;
  }
  if (kind == SweepKind::SigmaGrid && !axis2) {
    throw std::invalid_argument("sweep config: sigma-grid needs axis2");
  }
}

std::vector<SweepPoint> build_points(const SweepConfig& config) {
  config.validate();
  std::vector<SweepPoint> points;

  DatasetSpec base;
  base.n = config.n;
  base.d = config.d;
  base.amplitudes = config.amplitudes;
  base.noise = NoiseProfile(config.variances, config.proportions);
  base.field = config.field;
  base.coeff_dist = config.coeff_dist;
  base.assignment = config.assignment;

  auto push_point = [&](double a1, std::optional<double> a2, DatasetSpec spec, double c,
                        const NoiseProfile& profile) {
    spec.noise = profile;
    SweepPoint pt;
    pt.index = static_cast<int>(points.size());
    pt.axis1 = a1;
    pt.axis2 = a2;
    pt.spec = std::move(spec);
    pt.prediction_c = c;
    // comparison generators are predicted at their homoscedastic equivalent
    pt.prediction_noise = effective_noise_profile(pt.spec, /*realized_counts=*/false);
    points.push_back(std::move(pt));
  };

  switch (config.kind) {
    case SweepKind::P2Sweep: {
      for (double p2 : config.axis1.values()) {
        if (p2 < -1e-12 || p2 > 1.0 + 1e-12) {
          throw std::invalid_argument("p2-sweep: axis values must lie in [0, 1]");
        }
        const auto profile =
            two_level_profile(config.variances[0], config.variances[1], p2);
        push_point(p2, std::nullopt, base, static_cast<double>(config.n) / config.d,
                   profile);
      }
      break;
    }
    case SweepKind::CThetaGrid: {
      const NoiseProfile profile(config.variances, config.proportions);
      for (double c : config.axis1.values()) {
        for (double theta : config.axis2->values()) {
          DatasetSpec spec = base;
          spec.amplitudes = {theta};
          spec.n = std::max<std::int64_t>(1, std::llround(c * static_cast<double>(config.d)));
          push_point(c, theta, spec, c, profile);
        }
      }
      break;
    }
    case SweepKind::SigmaGrid: {
      for (double v1 : config.axis1.values()) {
        for (double v2 : config.axis2->values()) {
          const NoiseProfile profile({v1, v2}, config.proportions);
          push_point(v1, v2, base, static_cast<double>(config.n) / config.d, profile);
        }
      }
      break;
    }
    case SweepKind::AddedData: {
      const double c1 = static_cast<double>(config.n) / config.d;
      for (double c2 : config.axis1.values()) {
        if (c2 < 0.0) throw std::invalid_argument("added-data: c2 must be >= 0");
        const double c = c1 + c2;
        DatasetSpec spec = base;
        spec.n = std::max<std::int64_t>(1, std::llround(c * static_cast<double>(config.d)));
        const auto profile =
            two_level_profile(config.variances[0], config.variances[1], c2 / c);
        push_point(c2, std::nullopt, spec, c, profile);
      }
      break;
    }
  }
  return points;
}

double quantile_linear(std::vector<double> values, double q) {
  if (values.empty()) throw std::invalid_argument("quantile of empty sample");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
  if (lo + 1 >= values.size()) return values.back();
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[lo + 1] - values[lo]);
}

std::vector<SummaryRow> run_sweep(const SweepConfig& config, int threads) {
  const auto points = build_points(config);
  const int trials = config.trials;
  const std::size_t total = points.size() * static_cast<std::size_t>(trials);

  std::vector<EmpiricalMetrics> results(total);
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto worker = [&]() {
    while (true) {
      const std::size_t job = next.fetch_add(1);
      if (job >= total) return;
      const std::size_t pi = job / static_cast<std::size_t>(trials);
      const std::size_t ti = job % static_cast<std::size_t>(trials);
      try {
        DatasetSpec spec = points[pi].spec;
        spec.seed = derive_trial_seed(config.master_seed, pi, ti);
        results[job] = run_trial(spec);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  const int nworkers = std::max(1, threads);
  if (nworkers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nworkers));
    for (int t = 0; t < nworkers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  std::vector<SummaryRow> rows;
  for (const auto& pt : points) {
    const auto preds =
        predict_components(pt.prediction_c, pt.spec.amplitudes, pt.prediction_noise);
    const std::size_t k = preds.size();

    std::vector<MetricColumn> columns;
    for (std::size_t i = 0; i < k; ++i) {
      const int comp = static_cast<int>(i) + 1;
      columns.push_back({comp, "subspace_recovery", preds[i].subspace_recovery, {}});
      columns.push_back({comp, "subspace_other", 0.0, {}});
      columns.push_back({comp, "coefficient_recovery", preds[i].coefficient_recovery, {}});
      columns.push_back({comp, "coefficient_other", 0.0, {}});
      columns.push_back({comp, "mixed_recovery", preds[i].mixed_recovery, {}});
      columns.push_back({comp, "amplitude_ratio", preds[i].amplitude_sq_ratio, {}});
    }
    double overall_pred = 0.0;
    bool all_above = true;
    for (const auto& p : preds) {
      overall_pred += p.subspace_recovery;
      all_above = all_above && p.above_transition;
    }
    overall_pred /= static_cast<double>(k);
    columns.push_back({0, "overall_subspace", overall_pred, {}});
    double mse_pred = kNaN;
    if (all_above) {
      std::vector<double> amp_sq;
      for (double t : pt.spec.amplitudes) amp_sq.push_back(t * t);
      mse_pred = predict_overall(pt.prediction_c, amp_sq, pt.prediction_noise).mse;
    }
    columns.push_back({0, "mse", mse_pred, {}});

    for (int ti = 0; ti < trials; ++ti) {
      const auto& m =
          results[static_cast<std::size_t>(pt.index) * trials + static_cast<std::size_t>(ti)];
      std::size_t col = 0;
      for (std::size_t i = 0; i < k; ++i) {
        const auto& cm = m.components[i];
        columns[col++].samples.push_back(cm.subspace_sq_cos);
        columns[col++].samples.push_back(cm.subspace_sq_cos_other);
        columns[col++].samples.push_back(cm.coeff_sq_cos);
        columns[col++].samples.push_back(cm.coeff_sq_cos_other);
        columns[col++].samples.push_back(cm.mixed_real);
        columns[col++].samples.push_back(cm.amplitude_ratio);
      }
      columns[col++].samples.push_back(m.overall_subspace);
      columns[col++].samples.push_back(m.mse);
    }

    for (const auto& column : columns) {
      SummaryRow row;
      row.sweep_kind = to_string(config.kind);
      row.point_index = pt.index;
      row.axis1 = pt.axis1;
      row.axis2 = pt.axis2;
      row.component = column.component;
      row.metric = column.name;
      row.asymptotic = column.asymptotic;
      double mean = 0.0;
      for (double v : column.samples) mean += v;
      row.mean = mean / static_cast<double>(column.samples.size());
      row.q25 = quantile_linear(column.samples, 0.25);
      row.q75 = quantile_linear(column.samples, 0.75);
      row.trials = trials;
      row.n = pt.spec.n;
      row.d = pt.spec.d;
      row.seed_scheme_version = kSeedSchemeVersion;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

void write_csv(const std::vector<SummaryRow>& rows, std::ostream& out) {
  out << kCsvHeader << "\n";
  for (const auto& r : rows) {
    out << r.sweep_kind << ',' << r.point_index << ',' << format_double(r.axis1) << ',';
    if (r.axis2) out << format_double(*r.axis2);
    out << ',' << r.component << ',' << r.metric << ',' << format_double(r.asymptotic)
        << ',' << format_double(r.mean) << ',' << format_double(r.q25) << ','
        << format_double(r.q75) << ',' << r.trials << ',' << r.n << ',' << r.d << ','
        << r.seed_scheme_version << "\n";
  }
}

SweepConfig parse_sweep_config(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("sweep config: invalid JSON: ") + e.what());
  }
  SweepConfig config;
  try {
    config.kind = sweep_kind_from_string(j.at("sweep_kind").get<std::string>());
    if (j.contains("n")) config.n = j["n"].get<std::int64_t>();
    if (j.contains("d")) config.d = j["d"].get<std::int64_t>();
    if (j.contains("amplitudes")) config.amplitudes = j["amplitudes"].get<std::vector<double>>();
    if (j.contains("variances")) config.variances = j["variances"].get<std::vector<double>>();
    if (j.contains("proportions")) {
      config.proportions = j["proportions"].get<std::vector<double>>();
    }
    if (j.contains("field")) config.field = field_from_string(j["field"].get<std::string>());
    if (j.contains("coeff_dist")) {
      config.coeff_dist = coeff_dist_from_string(j["coeff_dist"].get<std::string>());
    }
    if (j.contains("assignment")) {
      config.assignment = assignment_from_string(j["assignment"].get<std::string>());
    }
    auto parse_axis = [](const nlohmann::json& a) {
      AxisSpec axis;
      axis.start = a.at("start").get<double>();
      axis.stop = a.at("stop").get<double>();
      axis.count = a.at("count").get<int>();
      return axis;
    };
    config.axis1 = parse_axis(j.at("axis1"));
    if (j.contains("axis2") && !j["axis2"].is_null()) {
      config.axis2 = parse_axis(j["axis2"]);
    }
    if (j.contains("trials")) config.trials = j["trials"].get<int>();
    if (j.contains("master_seed")) config.master_seed = j["master_seed"].get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("sweep config: ") + e.what());
  }
  config.validate();
  return config;
}

}  // namespace hetpca
