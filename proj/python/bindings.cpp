#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "numsparse/bounds.hpp"
#include "numsparse/deconv.hpp"
#include "numsparse/error.hpp"
#include "numsparse/inference.hpp"
#include "numsparse/io.hpp"
#include "numsparse/simlab.hpp"
#include "numsparse/sparsity.hpp"
#include "numsparse/stable.hpp"

namespace py = pybind11;
using namespace numsparse;

// Structured results cross the boundary as JSON text; the Python package
// decodes them into dicts.
namespace {

NormEstimate norm_of(const std::vector<double>& y, double q, double gamma, double sigma, const std::string& noise,
                     double epsilon_q, std::optional<double> eta0) {
  return estimate_norm(y, q, gamma, sigma, NoiseModel::parse(noise), epsilon_q, eta0);
}

SparsityEstimate sparsity_of(const std::vector<double>& y_q, const std::vector<double>& y_1, double q,
                             double gamma_q, double gamma_1, double sigma, const std::string& noise,
                             double epsilon_2, std::optional<double> eta0) {
  const auto eq = norm_of(y_q, q, gamma_q, sigma, noise, q == 2.0 ? epsilon_2 : 0.0, eta0);
  const auto e1 = norm_of(y_1, 1.0, gamma_1, sigma, noise, 0.0, eta0);
  return estimate_sparsity(eq, e1);
}

}  // namespace

PYBIND11_MODULE(_numsparse, m) {
  m.doc() = "Numerical sparsity estimation from stable random sketches";

  // Messages carry the error kind as a "Kind: " prefix.
  py::register_exception<Error>(m, "NumsparseError", PyExc_ValueError);

  m.def(
      "numerical_sparsity", [](const std::vector<double>& x, double q) { return numerical_sparsity(Signal(x), q); },
      py::arg("x"), py::arg("q"));
  m.def(
      "norm_pow", [](const std::vector<double>& x, double q) { return norm_pow(x, q); }, py::arg("x"), py::arg("q"));
  m.def(
      "lq_norm", [](const std::vector<double>& x, double q) { return lq_norm(x, q); }, py::arg("x"), py::arg("q"));
  m.def(
      "power_law_signal",
      [](std::size_t p, double tau) {
        const auto s = power_law_signal(p, tau);
        return std::vector<double>(s.values().begin(), s.values().end());
      },
      py::arg("p"), py::arg("tau"));

  m.def(
      "noise_cf", [](const std::string& noise, double t) { return noise_cf(NoiseModel::parse(noise), t); },
      py::arg("noise"), py::arg("t"));
  m.def(
      "sample_stable",
      [](double q, double gamma, std::size_t count, std::uint64_t seed) {
        CounterRng rng(seed);
        return sample_stable(q, gamma, count, rng);
      },
      py::arg("q"), py::arg("gamma"), py::arg("count"), py::arg("seed"));
  m.def(
      "measure",
      [](const std::vector<double>& x, std::size_t n, double q, double gamma, double sigma, const std::string& noise,
         const std::string& mode, std::uint64_t seed) {
        const auto b = numsparse::measure(Signal(x), n, q, gamma, sigma, NoiseModel::parse(noise),
                                          parse_measure_mode(mode), seed);
        return py::make_tuple(b.y, io::batch_metadata(b).dump());
      },
      py::arg("x"), py::arg("n"), py::arg("q"), py::arg("gamma") = 1.0, py::arg("sigma") = 0.0,
      py::arg("noise") = "none", py::arg("mode") = "induced", py::arg("seed") = 0);

  m.def(
      "nu_hat_at",
      [](const std::vector<double>& y, double t, double q, double gamma, double sigma, const std::string& noise) {
        return nu_hat_at(y, t, q, gamma, sigma, NoiseModel::parse(noise));
      },
      py::arg("y"), py::arg("t"), py::arg("q"), py::arg("gamma") = 1.0, py::arg("sigma") = 0.0,
      py::arg("noise") = "none");
  m.def(
      "variance_ext",
      [](double c, double rho, double q, const std::string& noise) {
        return variance_ext(c, rho, q, NoiseModel::parse(noise));
      },
      py::arg("c"), py::arg("rho"), py::arg("q"), py::arg("noise") = "none");
  m.def(
      "minimize_variance",
      [](double rho, double q, const std::string& noise, double epsilon_q) {
        const auto r = minimize_variance(rho, q, NoiseModel::parse(noise), epsilon_q);
        py::dict d;
        d["c_star"] = r.c_star;
        d["v_min"] = r.v_min;
        d["c_max"] = r.c_max;
        d["local_minima"] = r.local_minima;
        d["near_tie"] = r.near_tie;
        return d;
      },
      py::arg("rho"), py::arg("q"), py::arg("noise") = "none", py::arg("epsilon_q") = 0.0);

  m.def(
      "estimate_norm",
      [](const std::vector<double>& y, double q, double gamma, double sigma, const std::string& noise,
         double epsilon_q, std::optional<double> eta0) {
        return io::to_json(norm_of(y, q, gamma, sigma, noise, epsilon_q, eta0)).dump();
      },
      py::arg("y"), py::arg("q"), py::arg("gamma") = 1.0, py::arg("sigma") = 0.0, py::arg("noise") = "none",
      py::arg("epsilon_q") = 0.0, py::arg("eta0") = py::none());
  m.def(
      "estimate_sparsity",
      [](const std::vector<double>& y_q, const std::vector<double>& y_1, double q, double gamma_q, double gamma_1,
         double sigma, const std::string& noise, double epsilon_2, double alpha, double alpha_prime,
         std::optional<double> eta0) {
        const auto est = sparsity_of(y_q, y_1, q, gamma_q, gamma_1, sigma, noise, epsilon_2, eta0);
        return io::to_json(est, sparsity_ci(est, alpha, alpha_prime)).dump();
      },
      py::arg("y_q"), py::arg("y_1"), py::arg("q"), py::arg("gamma_q") = 1.0, py::arg("gamma_1") = 1.0,
      py::arg("sigma") = 0.0, py::arg("noise") = "none", py::arg("epsilon_2") = 0.3, py::arg("alpha") = 0.05,
      py::arg("alpha_prime") = 0.05, py::arg("eta0") = py::none());
  m.def(
      "test_sparsity",
      [](const std::vector<double>& y_q, const std::vector<double>& y_1, double q, double kappa, double alpha,
         double gamma_q, double gamma_1, double sigma, const std::string& noise, double epsilon_2,
         std::optional<double> eta0) {
        const auto est = sparsity_of(y_q, y_1, q, gamma_q, gamma_1, sigma, noise, epsilon_2, eta0);
        auto j = io::to_json(test_sparsity(est, kappa, alpha));
        j["s_hat"] = est.s_hat;
        j["vartheta_hat"] = est.vartheta_hat;
        return j.dump();
      },
      py::arg("y_q"), py::arg("y_1"), py::arg("q"), py::arg("kappa"), py::arg("alpha") = 0.05,
      py::arg("gamma_q") = 1.0, py::arg("gamma_1") = 1.0, py::arg("sigma") = 0.0, py::arg("noise") = "none",
      py::arg("epsilon_2") = 0.3, py::arg("eta0") = py::none());
  m.def("test_power", &test_power, py::arg("s_true"), py::arg("kappa"), py::arg("alpha"), py::arg("vartheta"),
        py::arg("n_total"));

  m.def(
      "minimax_lower_bound", [](std::size_t n, std::size_t p, double q) { return minimax_lower_bound(n, p, q).value; },
      py::arg("n"), py::arg("p"), py::arg("q"));
  m.def("bpdn_upper_bound", &bpdn_upper_bound, py::arg("s2"), py::arg("n"), py::arg("p"),
        py::arg("noise_term") = 0.0, py::arg("c2") = 1.0, py::arg("c3") = 1.0);
  m.def("adversarial_sparsity_bound", &adversarial_sparsity_bound, py::arg("n"), py::arg("p"), py::arg("q"));
  m.def(
      "adversarial_signal",
      [](const std::vector<std::vector<double>>& a, const std::vector<double>& x0, double q, std::size_t trials,
         std::uint64_t seed) {
        if (a.empty()) throw Error(ErrorKind::InvalidDims, "matrix has no rows");
        Matrix mat(a.size(), a.front().size());
        for (std::size_t i = 0; i < a.size(); ++i) {
          if (a[i].size() != mat.cols()) throw Error(ErrorKind::InvalidDims, "ragged matrix rows");
          for (std::size_t j = 0; j < mat.cols(); ++j) mat(i, j) = a[i][j];
        }
        CounterRng rng(seed);
        const auto r = adversarial_signal(mat, Signal(x0), q, trials, rng);
        py::dict d;
        d["x_tilde"] = std::vector<double>(r.x_tilde.values().begin(), r.x_tilde.values().end());
        d["s_q"] = r.s_q;
        d["bound"] = r.bound;
        d["success"] = r.success;
        d["residual"] = r.residual;
        return d;
      },
      py::arg("a"), py::arg("x0"), py::arg("q"), py::arg("trials") = 50, py::arg("seed") = 0);

  m.def(
      "theoretical_error_curve",
      [](double q, double rho_q, double rho_1, double pi_bar, const std::string& noise, double epsilon_q,
         std::size_t n_total) {
        return theoretical_error_curve(q, rho_q, rho_1, pi_bar, NoiseModel::parse(noise), epsilon_q, n_total);
      },
      py::arg("q"), py::arg("rho_q"), py::arg("rho_1"), py::arg("pi_bar"), py::arg("noise"), py::arg("epsilon_q"),
      py::arg("n_total"));
  m.def(
      "run_relative_error",
      [](const std::string& config) {
        const auto cfg = io::config_from_json(nlohmann::json::parse(config));
        ExperimentResult r;
        {
          py::gil_scoped_release release;
          r = run_relative_error(cfg);
        }
        return py::make_tuple(io::to_json(r).dump(), io::relative_error_csv(r));
      },
      py::arg("config"));
  m.def(
      "run_clt",
      [](const std::string& config, const std::vector<double>& kappa) {
        const auto cfg = io::config_from_json(nlohmann::json::parse(config));
        CltResult r;
        {
          py::gil_scoped_release release;
          r = run_clt(cfg, kappa);
        }
        return py::make_tuple(io::clt_summary(r).dump(), io::clt_csv(r));
      },
      py::arg("config"), py::arg("kappa") = std::vector<double>{});
}
