#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "gompgof/bootstrap.hpp"
#include "gompgof/cli.hpp"
#include "gompgof/distributions.hpp"
#include "gompgof/edf_tests.hpp"
#include "gompgof/errors.hpp"
#include "gompgof/estimation.hpp"
#include "gompgof/lifetable.hpp"
#include "gompgof/simulation.hpp"
#include "gompgof/stein_statistic.hpp"

namespace py = pybind11;
using namespace gompgof;

namespace {

std::vector<double> to_vector(const Sample& s) { return {s.values().begin(), s.values().end()}; }

std::vector<TestKind> make_kinds(const std::vector<std::string>& tests, const std::vector<double>& a_grid) {
  std::vector<TestKind> kinds;
  for (const auto& name : tests) {
    const auto family = TestKind::parse_family(name);
    if (family == TestKind::Family::Stein) {
      for (double a : a_grid) kinds.push_back(TestKind::stein(a));
    } else {
      kinds.push_back({family, 0.0});
    }
  }
  return kinds;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Gompertz goodness-of-fit core";

  py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);

  m.def("gompertz_pdf", [](double eta, double b, double x) { return gompertz_pdf({eta, b}, x); },
        py::arg("eta"), py::arg("b"), py::arg("x"));
  m.def("gompertz_cdf", [](double eta, double b, double x) { return gompertz_cdf({eta, b}, x); },
        py::arg("eta"), py::arg("b"), py::arg("x"));
  m.def("gompertz_quantile", [](double eta, double b, double u) { return gompertz_quantile({eta, b}, u); },
        py::arg("eta"), py::arg("b"), py::arg("u"));
  m.def("gompertz_sample",
        [](double eta, double b, std::size_t n, std::uint64_t seed) {
          return to_vector(gompertz_sample({eta, b}, n, seed));
        },
        py::arg("eta"), py::arg("b"), py::arg("n"), py::arg("seed"));
  m.def("sample",
        [](const std::string& family, std::size_t n, std::uint64_t seed) {
          return to_vector(alt_sample(cli::parse_family(family), n, seed));
        },
        py::arg("family"), py::arg("n"), py::arg("seed"),
        "Draw from a family given as e.g. 'gamma k=3' or 'ig mu=1 lambda=3'.");
  m.def("pdf", [](const std::string& family, double x) { return alt_pdf(cli::parse_family(family), x); },
        py::arg("family"), py::arg("x"));
  m.def("cdf", [](const std::string& family, double x) { return alt_cdf(cli::parse_family(family), x); },
        py::arg("family"), py::arg("x"));

  py::class_<FitResult>(m, "FitResult")
      .def_readonly("eta_hat", &FitResult::eta_hat)
      .def_readonly("b_hat", &FitResult::b_hat)
      .def_readonly("b_pilot", &FitResult::b_pilot)
      .def_readonly("converged", &FitResult::converged)
      .def_readonly("fallback_used", &FitResult::fallback_used)
      .def_readonly("iterations", &FitResult::iterations)
      .def("__repr__", [](const FitResult& f) {
        std::ostringstream s;
        s << "FitResult(eta_hat=" << f.eta_hat << ", b_hat=" << f.b_hat << ", converged=" << f.converged
          << ", fallback_used=" << f.fallback_used << ")";
        return s.str();
      });

  m.def("fit", [](std::vector<double> x) { return fit_mle(Sample(std::move(x))); }, py::arg("x"),
        "Maximum-likelihood estimates of (eta, b).");
  m.def("nelson_aalen", [](std::vector<double> x, double t) { return nelson_aalen(Sample(std::move(x)), t); },
        py::arg("x"), py::arg("t"));
  m.def("pilot_scale", [](std::vector<double> x) { return pilot_scale(Sample(std::move(x))); }, py::arg("x"));
  m.def("score", [](double b, std::vector<double> x) { return score_h(b, Sample(std::move(x))); }, py::arg("b"),
        py::arg("x"));

  m.def("v_process",
        [](std::vector<double> y, double eta_hat, double s) { return v_process(StatisticInput(std::move(y), eta_hat), s); },
        py::arg("y"), py::arg("eta_hat"), py::arg("s"));
  m.def("t_statistic",
        [](std::vector<double> y, double eta_hat, double a, const std::string& method) {
          const StatisticInput in(std::move(y), eta_hat);
          if (method == "piecewise") return t_statistic_quadrature(in, WeightParam(a));
          if (method == "closed") return t_statistic_closed_form(in, WeightParam(a));
          throw DomainError("method must be 'piecewise' or 'closed'");
        },
        py::arg("y"), py::arg("eta_hat"), py::arg("a"), py::arg("method") = "piecewise",
        "n * int V_n(s)^2 exp(-a s) ds on already rescaled values y.");
  m.def("stein_transform",
        [](const std::string& family, double eta, double b, double s) {
          return stein_transform(cli::parse_family(family), {eta, b}, s);
        },
        py::arg("family"), py::arg("eta"), py::arg("b"), py::arg("s"));

  m.def("ks", [](std::vector<double> u) { return ks_statistic(EdfInput(std::move(u))); }, py::arg("u"));
  m.def("cm", [](std::vector<double> u) { return cm_statistic(EdfInput(std::move(u))); }, py::arg("u"));
  m.def("ad", [](std::vector<double> u) { return ad_statistic(EdfInput(std::move(u))); }, py::arg("u"));
  m.def("watson", [](std::vector<double> u) { return watson_statistic(EdfInput(std::move(u))); }, py::arg("u"));

  py::class_<TestOutcome>(m, "TestOutcome")
      .def_property_readonly("test", [](const TestOutcome& o) { return o.kind.name(); })
      .def_property_readonly("a", [](const TestOutcome& o) -> py::object {
        if (o.kind.family == TestKind::Family::Stein) return py::float_(o.kind.a);
        return py::none();
      })
      .def_readonly("statistic", &TestOutcome::statistic)
      .def_readonly("p_value", &TestOutcome::p_value)
      .def_readonly("critical_value", &TestOutcome::critical_value)
      .def_readonly("alpha", &TestOutcome::alpha)
      .def_readonly("B", &TestOutcome::B)
      .def_readonly("reject", &TestOutcome::reject)
      .def_readonly("not_found_frequency_bootstrap", &TestOutcome::not_found_frequency_bootstrap)
      .def_readonly("fit", &TestOutcome::fit);

  m.def("gof",
        [](std::vector<double> x, const std::vector<std::string>& tests, const std::vector<double>& a,
           std::size_t bootstrap, double alpha, std::uint64_t seed, unsigned threads) {
          const Sample sample(std::move(x));
          const auto kinds = make_kinds(tests, a);
          py::gil_scoped_release release;
          return bootstrap_tests(sample, kinds, {bootstrap, alpha, seed, threads});
        },
        py::arg("x"), py::arg("tests") = std::vector<std::string>{"stein", "ks", "ad", "cm", "wa"},
        py::arg("a") = std::vector<double>{1.0}, py::arg("bootstrap") = 500, py::arg("alpha") = 0.05,
        py::arg("seed") = 1, py::arg("threads") = 1, "Parametric bootstrap goodness-of-fit tests.");

  m.def("hazard_to_pmf",
        [](std::vector<double> q) {
          const Pmf p = hazard_to_pmf(LifeTable(std::move(q)));
          return std::vector<double>(p.masses().begin(), p.masses().end());
        },
        py::arg("hazards"));
  m.def("truncate_pmf",
        [](std::vector<double> p, long left, long right) {
          const Pmf t = truncate_pmf(Pmf(std::move(p)), left, right);
          return std::vector<double>(t.masses().begin(), t.masses().end());
        },
        py::arg("pmf"), py::arg("left"), py::arg("right"));
  m.def("sample_lifetimes",
        [](std::vector<double> p, std::size_t n, std::uint64_t seed, bool jitter) {
          return sample_lifetimes(Pmf(std::move(p)), n, seed, jitter);
        },
        py::arg("pmf"), py::arg("n"), py::arg("seed"), py::arg("jitter") = false);

  m.def("simulate",
        [](const std::string& config_text) {
          std::istringstream in(config_text);
          const SimulationConfig config = cli::parse_simulation_config(in);
          py::gil_scoped_release release;
          return report_to_csv(run_study(config));
        },
        py::arg("config"), "Run a study from key = value config text; returns the report as CSV text.");
}
