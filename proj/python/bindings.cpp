#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "smdpen/benchmarks.hpp"
#include "smdpen/config.hpp"
#include "smdpen/experiments.hpp"
#include "smdpen/mirror.hpp"
#include "smdpen/penalty.hpp"
#include "smdpen/solver.hpp"
#include "smdpen/trace_io.hpp"

namespace py = pybind11;
using namespace smdpen;

namespace {

using PyPair = std::pair<py::function, py::function>;

std::vector<ScalarFunction> wrap(const std::vector<PyPair>& fns) {
  std::vector<ScalarFunction> out;
  for (const auto& [value, grad] : fns) {
    out.push_back({[value](const Vector& x) { return value(x).cast<double>(); },
                   [grad](const Vector& x) { return grad(x).cast<Vector>(); }});
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_smdpen, m) {
  m.doc() = "Stochastic mirror descent on exact beta-norm penalty functions";

  py::register_exception<Error>(m, "Error");
  py::register_exception<PreconditionError>(m, "PreconditionError");
  py::register_exception<UnsupportedFormulation>(m, "UnsupportedFormulation");
  py::register_exception<EvaluationError>(m, "EvaluationError");
  py::register_exception<DivergenceError>(m, "DivergenceError");
  py::register_exception<ConfigError>(m, "ConfigError");

  py::class_<ConstraintSystem>(m, "ConstraintSystem")
      .def(py::init([](Index dim, const std::vector<PyPair>& eqs,
                       const std::vector<PyPair>& ineqs) {
             return ConstraintSystem(dim, wrap(eqs), wrap(ineqs));
           }),
           py::arg("dim"), py::arg("equalities") = std::vector<PyPair>{},
           py::arg("inequalities") = std::vector<PyPair>{})
      .def_property_readonly("dim", &ConstraintSystem::dim)
      .def_property_readonly("num_equalities", &ConstraintSystem::num_equalities)
      .def_property_readonly("num_inequalities", &ConstraintSystem::num_inequalities);

  py::class_<FeasibleDomain>(m, "FeasibleDomain")
      .def_static("all_space", &FeasibleDomain::all_space)
      .def_static("box", &FeasibleDomain::box, py::arg("lower"), py::arg("upper"))
      .def_static("ball", &FeasibleDomain::ball, py::arg("center"), py::arg("radius"))
      .def("contains", &FeasibleDomain::contains, py::arg("x"), py::arg("slack") = 0.0);

  py::class_<ViolationSnapshot>(m, "ViolationSnapshot")
      .def_readonly("h_values", &ViolationSnapshot::h_values)
      .def_readonly("g_values", &ViolationSnapshot::g_values)
      .def_readonly("g_plus", &ViolationSnapshot::g_plus)
      .def_readonly("beta", &ViolationSnapshot::beta)
      .def_readonly("m_beta", &ViolationSnapshot::m_beta)
      .def_readonly("m_inf", &ViolationSnapshot::m_inf)
      .def("feasible", &ViolationSnapshot::feasible);

  m.def("beta_norm", &beta_norm, py::arg("v"), py::arg("beta"));
  m.def("residuals", py::overload_cast<const ConstraintSystem&, const Vector&, double>(&residuals),
        py::arg("cs"), py::arg("x"), py::arg("beta") = 2.0);
  m.def("violation", &violation, py::arg("cs"), py::arg("x"), py::arg("beta") = 2.0);
  m.def("project", &project, py::arg("domain"), py::arg("x"));

  py::enum_<PenaltyFormulation>(m, "PenaltyFormulation")
      .value("BetaNorm", PenaltyFormulation::BetaNorm)
      .value("L1", PenaltyFormulation::L1);

  py::class_<PenaltyConfig>(m, "PenaltyConfig")
      .def(py::init<>())
      .def_readwrite("beta", &PenaltyConfig::beta)
      .def_readwrite("p", &PenaltyConfig::p)
      .def_readwrite("kappa", &PenaltyConfig::kappa)
      .def_readwrite("p_max", &PenaltyConfig::p_max)
      .def_readwrite("max_multiplications_per_step", &PenaltyConfig::max_multiplications_per_step);

  py::class_<PenaltyGradient>(m, "PenaltyGradient")
      .def_readonly("objective_part", &PenaltyGradient::objective_part)
      .def_readonly("constraint_part", &PenaltyGradient::constraint_part)
      .def_readonly("sigma", &PenaltyGradient::sigma)
      .def_readonly("eta", &PenaltyGradient::eta)
      .def("total", &PenaltyGradient::total, py::arg("p"));

  m.def("penalty_gradient",
        py::overload_cast<const ConstraintSystem&, const Vector&, const Vector&, double>(
            &penalty_gradient),
        py::arg("cs"), py::arg("grad_f"), py::arg("x"), py::arg("beta") = 2.0);
  m.def("delta", py::overload_cast<const ConstraintSystem&, const Vector&, const Vector&, double>(&delta),
        py::arg("cs"), py::arg("x"), py::arg("d"), py::arg("beta"));
  m.def("dir_derivative",
        py::overload_cast<const Vector&, const ConstraintSystem&, const Vector&, const Vector&,
                          double, double>(&dir_derivative),
        py::arg("grad_f"), py::arg("cs"), py::arg("x"), py::arg("d"), py::arg("p"),
        py::arg("beta"));
  m.def("l1_subgradient", py::overload_cast<const ConstraintSystem&, const Vector&>(&l1_subgradient),
        py::arg("cs"), py::arg("x"));

  py::class_<PenaltyUpdateResult>(m, "PenaltyUpdateResult")
      .def_readonly("p", &PenaltyUpdateResult::p)
      .def_readonly("multiplications", &PenaltyUpdateResult::multiplications)
      .def_readonly("capped", &PenaltyUpdateResult::capped);
  m.def("penalty_update",
        py::overload_cast<const Vector&, double, const Vector&, const PenaltyConfig&,
                          const ConstraintSystem&, PenaltyFormulation>(&penalty_update),
        py::arg("x"), py::arg("p_in"), py::arg("grad_f"), py::arg("config"), py::arg("cs"),
        py::arg("formulation") = PenaltyFormulation::BetaNorm);

  m.def("step_size",
        [](const std::string& kind, double base, long k, double grad_norm) {
          StepSchedule s;
          if (kind == "inverse_k") s = StepSchedule::inverse_k(base);
          else if (kind == "normalized") s = StepSchedule::normalized(base);
          else if (kind == "constant") s = StepSchedule::constant(base);
          else throw PreconditionError("unknown schedule '" + kind + "'");
          return step_size(s, k, grad_norm);
        },
        py::arg("kind"), py::arg("base"), py::arg("k"), py::arg("grad_norm") = 0.0);

  m.def("mirror", [](const Vector& y, const FeasibleDomain& d) {
    return mirror(y, Regularizer::euclidean(), d);
  }, py::arg("y"), py::arg("domain"));
  m.def("conjugate", [](const Vector& y, const FeasibleDomain& d) {
    return conjugate(y, Regularizer::euclidean(), d);
  }, py::arg("y"), py::arg("domain"));
  m.def("fenchel", [](const Vector& x, const Vector& y, const FeasibleDomain& d) {
    return fenchel(x, y, Regularizer::euclidean(), d);
  }, py::arg("x"), py::arg("y"), py::arg("domain"));

  auto b = m.def_submodule("bench", "benchmark problems");
  b.def("test_function", &bench::test_function, py::arg("name"), py::arg("x"));
  b.def("test_gradient", &bench::test_gradient, py::arg("name"), py::arg("x"));
  b.def("test_penalty", &bench::test_penalty, py::arg("name"), py::arg("x"));
  b.def("rosenbrock", &bench::rosenbrock, py::arg("x"));
  b.def("rosenbrock_gradient", &bench::rosenbrock_gradient, py::arg("x"));
  b.def("rosenbrock_term_grad", &bench::rosenbrock_term_grad, py::arg("x"), py::arg("i"));

  py::class_<bench::RegressionDataset>(b, "RegressionDataset")
      .def_readonly("x_train", &bench::RegressionDataset::x_train)
      .def_readonly("y_train", &bench::RegressionDataset::y_train)
      .def_readonly("x_test", &bench::RegressionDataset::x_test)
      .def_readonly("y_test", &bench::RegressionDataset::y_test)
      .def_readonly("w_star", &bench::RegressionDataset::w_star)
      .def_readonly("seed", &bench::RegressionDataset::seed);
  b.def("make_regression", &bench::make_regression, py::arg("seed"), py::arg("n_samples"),
        py::arg("p_features"), py::arg("noise_std") = 0.1);
  b.def("support_recovery", &bench::support_recovery, py::arg("w_hat"), py::arg("w_star"));
  b.def("test_mse", &bench::test_mse, py::arg("w_hat"), py::arg("data"));

  m.def("experiment_names", &experiment_names);
  m.def("_run_experiment",
        [](const std::string& config_json) {
          RunConfig c = parse_config(config_json);
          c = merge(default_config(c.experiment), c);
          validate(c);
          ExperimentResult result;
          {
            py::gil_scoped_release release;
            result = run_experiment(c);
          }
          std::vector<std::pair<std::string, std::string>> traces;
          for (const auto& arm : result.arms)
            traces.emplace_back(arm.name.empty() ? arm.report.name : arm.name,
                                trace_csv(arm.report));
          return std::make_pair(summary_json(result), traces);
        },
        py::arg("config_json"));
}
