// Python bindings for the prediction, data-generation and measurement APIs.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hetpca/asymptotics.hpp"
#include "hetpca/datagen.hpp"
#include "hetpca/metrics.hpp"
#include "hetpca/pca.hpp"
#include "hetpca/simulate.hpp"
#include "hetpca/sweep.hpp"

namespace py = pybind11;
using namespace hetpca;

namespace {

NoiseProfile make_noise(const std::vector<double>& variances,
                        const std::vector<double>& proportions) {
  return NoiseProfile(variances, proportions);
}

DatasetSpec make_spec(std::int64_t n, std::int64_t d, const std::vector<double>& thetas,
                      const std::vector<double>& variances,
                      const std::vector<double>& proportions, const std::string& field,
                      const std::string& coeff_dist, const std::string& assignment,
                      std::uint64_t seed) {
  DatasetSpec spec;
  spec.n = n;
  spec.d = d;
  spec.amplitudes = thetas;
  spec.noise = make_noise(variances, proportions);
  spec.field = field_from_string(field);
  spec.coeff_dist = coeff_dist_from_string(coeff_dist);
  spec.assignment = assignment_from_string(assignment);
  spec.seed = seed;
  spec.validate();
  return spec;
}

py::dict metrics_to_dict(const EmpiricalMetrics& m) {
  py::list comps;
  for (const auto& cm : m.components) {
    py::dict c;
    c["subspace_sq_cos"] = cm.subspace_sq_cos;
    c["subspace_sq_cos_other"] = cm.subspace_sq_cos_other;
    c["coeff_sq_cos"] = cm.coeff_sq_cos;
    c["coeff_sq_cos_other"] = cm.coeff_sq_cos_other;
    c["mixed_real"] = cm.mixed_real;
    c["mixed_imag_abs"] = cm.mixed_imag_abs;
    c["amplitude_ratio"] = cm.amplitude_ratio;
    comps.append(c);
  }
  py::dict out;
  out["components"] = comps;
  out["mse"] = m.mse;
  out["overall_subspace"] = m.overall_subspace;
  return out;
}

template <typename Scalar>
py::dict dataset_to_dict(const Dataset<Scalar>& ds) {
  py::dict out;
  out["Y"] = ds.Y;
  out["U"] = ds.U;
  out["Z"] = ds.Z;
  out["eta"] = ds.eta;
  return out;
}

template <typename Scalar>
py::dict pca_to_dict(const PcaResult<Scalar>& r) {
  py::dict out;
  out["components"] = r.components;
  out["amplitudes_sq"] = r.amplitudes_sq;
  out["scores"] = r.scores;
  return out;
}

}  // namespace

PYBIND11_MODULE(_hetpca, m) {
  m.doc() = "asymptotic PCA performance under heteroscedastic noise";

  py::class_<NoiseProfile>(m, "NoiseProfile")
      .def(py::init(&make_noise), py::arg("variances"), py::arg("proportions"))
      .def_property_readonly("variances", &NoiseProfile::variances)
      .def_property_readonly("proportions", &NoiseProfile::proportions)
      .def_property_readonly("avg_variance", &NoiseProfile::average_variance)
      .def("avg_inverse_variance", &NoiseProfile::average_inverse_variance)
      .def_static("homoscedastic", &NoiseProfile::homoscedastic, py::arg("sigma_sq"));

  py::class_<ComponentPrediction>(m, "ComponentPrediction")
      .def_readonly("alpha", &ComponentPrediction::alpha)
      .def_readonly("beta", &ComponentPrediction::beta)
      .def_readonly("a_at_beta", &ComponentPrediction::a_at_beta)
      .def_readonly("above_transition", &ComponentPrediction::above_transition)
      .def_readonly("conjectured_zero", &ComponentPrediction::conjectured_zero)
      .def_readonly("amplitude_sq_limit", &ComponentPrediction::amplitude_sq_limit)
      .def_readonly("amplitude_sq_ratio", &ComponentPrediction::amplitude_sq_ratio)
      .def_readonly("subspace_recovery", &ComponentPrediction::subspace_recovery)
      .def_readonly("coefficient_recovery", &ComponentPrediction::coefficient_recovery)
      .def_readonly("mixed_recovery", &ComponentPrediction::mixed_recovery)
      .def("__repr__", [](const ComponentPrediction& p) {
        return "ComponentPrediction(beta=" + std::to_string(p.beta) +
               ", subspace=" + std::to_string(p.subspace_recovery) + ")";
      });

  py::class_<OverallPrediction>(m, "OverallPrediction")
      .def_readonly("mean_subspace_recovery", &OverallPrediction::mean_subspace_recovery)
      .def_readonly("mse", &OverallPrediction::mse);

  py::class_<RecoveryBounds>(m, "RecoveryBounds")
      .def_readonly("amplitude_sq_ratio_lower", &RecoveryBounds::amplitude_sq_ratio_lower)
      .def_readonly("subspace_upper", &RecoveryBounds::subspace_upper)
      .def_readonly("coefficient_upper", &RecoveryBounds::coefficient_upper);

  py::class_<IdentityReport>(m, "IdentityReport")
      .def_readonly("above_transition", &IdentityReport::above_transition)
      .def_readonly("a_rewrite_residual", &IdentityReport::a_rewrite_residual)
      .def_readonly("q_residual", &IdentityReport::q_residual)
      .def_readonly("beta_gap_slack", &IdentityReport::beta_gap_slack)
      .def_readonly("b_prime_slack", &IdentityReport::b_prime_slack)
      .def_readonly("a_upper_slack", &IdentityReport::a_upper_slack)
      .def_readonly("amplitude_psi_residual", &IdentityReport::amplitude_psi_residual)
      .def_readonly("mixed_geometric_residual",
                    &IdentityReport::mixed_geometric_residual)
      .def("passes", &IdentityReport::pass, py::arg("tol") = 1e-9);

  m.def(
      "eval_A",
      [](double x, double c, const NoiseProfile& noise) { return eval_A(x, c, noise); },
      py::arg("x"), py::arg("c"), py::arg("noise"));
  m.def(
      "eval_B",
      [](double x, double c, double theta_sq, const NoiseProfile& noise) {
        return eval_B(x, {c, theta_sq, noise});
      },
      py::arg("x"), py::arg("c"), py::arg("theta_sq"), py::arg("noise"));
  m.def(
      "eval_B_prime",
      [](double x, double c, double theta_sq, const NoiseProfile& noise) {
        return eval_B_prime(x, {c, theta_sq, noise});
      },
      py::arg("x"), py::arg("c"), py::arg("theta_sq"), py::arg("noise"));
  m.def(
      "solve_alpha",
      [](double c, const NoiseProfile& noise) { return solve_alpha(c, noise); },
      py::arg("c"), py::arg("noise"));
  m.def(
      "solve_beta",
      [](double c, double theta_sq, const NoiseProfile& noise) {
        return solve_beta({c, theta_sq, noise});
      },
      py::arg("c"), py::arg("theta_sq"), py::arg("noise"));

  m.def(
      "predict_component",
      [](double c, double theta_sq, const NoiseProfile& noise) {
        return predict_component({c, theta_sq, noise});
      },
      py::arg("c"), py::arg("theta_sq"), py::arg("noise"));
  m.def("predict_homoscedastic", &predict_homoscedastic, py::arg("c"),
        py::arg("theta_sq"), py::arg("sigma_sq"));
  m.def("predict_overall", &predict_overall, py::arg("c"), py::arg("amplitudes_sq"),
        py::arg("noise"));
  m.def("amplitude_bias_alt", &amplitude_bias_alt, py::arg("beta"), py::arg("c"),
        py::arg("theta_sq"));
  m.def("homoscedastic_bounds", &homoscedastic_bounds, py::arg("c"), py::arg("theta_sq"),
        py::arg("noise"));
  m.def("average_inverse_variance", &average_inverse_variance, py::arg("noise"));
  m.def("psi_inverse", &psi_inverse, py::arg("x"), py::arg("c"), py::arg("noise"));
  m.def(
      "check_spectrum_identities",
      [](double c, double theta_sq, const NoiseProfile& noise) {
        return check_spectrum_identities({c, theta_sq, noise});
      },
      py::arg("c"), py::arg("theta_sq"), py::arg("noise"));

  m.def(
      "generate",
      [](std::int64_t n, std::int64_t d, const std::vector<double>& thetas,
         const std::vector<double>& variances, const std::vector<double>& proportions,
         const std::string& field, const std::string& coeff_dist,
         const std::string& assignment, std::uint64_t seed) {
        const auto spec = make_spec(n, d, thetas, variances, proportions, field,
                                    coeff_dist, assignment, seed);
        if (spec.field == Field::Real) return dataset_to_dict(generate<double>(spec));
        return dataset_to_dict(generate<std::complex<double>>(spec));
      },
      py::arg("n"), py::arg("d"), py::arg("thetas"), py::arg("variances"),
      py::arg("proportions"), py::arg("field") = "real",
      py::arg("coeff_dist") = "gaussian", py::arg("assignment") = "deterministic",
      py::arg("seed") = 0);

  m.def(
      "pca", [](const Eigen::MatrixXd& Y, std::int64_t k) { return pca_to_dict(pca(Y, k)); },
      py::arg("Y"), py::arg("k"));
  m.def(
      "pca_complex",
      [](const Eigen::MatrixXcd& Y, std::int64_t k) { return pca_to_dict(pca(Y, k)); },
      py::arg("Y"), py::arg("k"));

  m.def(
      "run_trial",
      [](std::int64_t n, std::int64_t d, const std::vector<double>& thetas,
         const std::vector<double>& variances, const std::vector<double>& proportions,
         const std::string& field, const std::string& coeff_dist,
         const std::string& assignment, std::uint64_t seed) {
        const auto spec = make_spec(n, d, thetas, variances, proportions, field,
                                    coeff_dist, assignment, seed);
        return metrics_to_dict(run_trial(spec));
      },
      py::arg("n"), py::arg("d"), py::arg("thetas"), py::arg("variances"),
      py::arg("proportions"), py::arg("field") = "real",
      py::arg("coeff_dist") = "gaussian", py::arg("assignment") = "deterministic",
      py::arg("seed") = 0);

#ifdef VERSION_INFO
  m.attr("__version__") = VERSION_INFO;
#else
  m.attr("__version__") = "dev";
#endif
}
