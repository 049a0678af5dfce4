#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tobitadf/estimation.hpp"
#include "tobitadf/inference.hpp"
#include "tobitadf/io.hpp"
#include "tobitadf/limit.hpp"
#include "tobitadf/model.hpp"
#include "tobitadf/rng.hpp"
#include "tobitadf/stability.hpp"

namespace py = pybind11;
using namespace tobit;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Censored (dynamic Tobit) autoregressions: simulation, OLS estimation in ADF "
            "form, and censoring-adjusted unit-root tests";

  py::register_exception<SingularDesignError>(m, "SingularDesignError");
  py::register_exception<ZeroVarianceError>(m, "ZeroVarianceError");

  py::enum_<InnovationLaw>(m, "InnovationLaw")
      .value("gaussian", InnovationLaw::gaussian)
      .value("student_t5", InnovationLaw::student_t5)
      .value("rademacher", InnovationLaw::rademacher);

  py::class_<RandomStream>(m, "RandomStream")
      .def(py::init<std::uint64_t, std::uint64_t>(), py::arg("seed"), py::arg("stream") = 0)
      .def("uniform", &RandomStream::uniform)
      .def("normal", &RandomStream::normal)
      .def("innovation", &RandomStream::innovation);

  // ---- model-core ----------------------------------------------------------
  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init<>())
      .def_readwrite("k", &ModelParams::k)
      .def_readwrite("alpha", &ModelParams::alpha)
      .def_readwrite("beta", &ModelParams::beta)
      .def_readwrite("phi", &ModelParams::phi)
      .def_readwrite("sigma", &ModelParams::sigma)
      .def_readwrite("lower_bound", &ModelParams::lower_bound)
      .def_readwrite("init", &ModelParams::init);

  py::class_<LocalParams>(m, "LocalParams")
      .def(py::init<>())
      .def_readwrite("a", &LocalParams::a)
      .def_readwrite("b0", &LocalParams::b0)
      .def_readwrite("c", &LocalParams::c)
      .def_readwrite("T", &LocalParams::T)
      .def("to_model", &LocalParams::to_model, py::arg("k") = 1,
           py::arg("phi") = std::vector<double>{}, py::arg("sigma") = 1.0,
           py::arg("lower_bound") = 0.0);

  py::class_<Series>(m, "Series")
      .def(py::init<>())
      .def_readwrite("values", &Series::values)
      .def_readwrite("dates", &Series::dates)
      .def_readwrite("lower_bound", &Series::lower_bound)
      .def("__len__", &Series::size);

  py::class_<SimOutput>(m, "SimOutput")
      .def_readonly("y", &SimOutput::y)
      .def_readonly("y_minus", &SimOutput::y_minus)
      .def_readonly("innovations", &SimOutput::innovations);

  py::class_<ShiftRecord>(m, "ShiftRecord")
      .def_readonly("bound", &ShiftRecord::bound)
      .def_readonly("ell", &ShiftRecord::ell);

  m.def("simulate_tobit", &simulate_tobit, py::arg("params"), py::arg("innovations"));
  m.def("simulate_linear_ar", &simulate_linear_ar, py::arg("params"), py::arg("innovations"));
  m.def("simulate_limited_ar", &simulate_limited_ar, py::arg("phi"), py::arg("c"),
        py::arg("T"), py::arg("innovations"));
  m.def("shift_bound", &shift_bound, py::arg("series"));
  m.def("make_innovations", &make_innovations, py::arg("sigma"), py::arg("law"), py::arg("T"),
        py::arg("stream"));

  // ---- limit-proc ----------------------------------------------------------
  py::class_<Theta>(m, "Theta")
      .def(py::init<>())
      .def_readwrite("a", &Theta::a)
      .def_readwrite("b0", &Theta::b0)
      .def_readwrite("c", &Theta::c)
      .def_readwrite("sigma", &Theta::sigma);

  py::class_<GridPath>(m, "GridPath")
      .def_readonly("steps", &GridPath::steps)
      .def_readonly("values", &GridPath::values);

  m.def("simulate_K",
        py::overload_cast<const Theta&, std::size_t, const std::vector<double>&>(&simulate_K),
        py::arg("theta"), py::arg("n"), py::arg("increments"));
  m.def("simulate_K", py::overload_cast<const Theta&, std::size_t, RandomStream&>(&simulate_K),
        py::arg("theta"), py::arg("n"), py::arg("stream"));
  m.def("regulate", &regulate, py::arg("path"), py::arg("c"));
  m.def("simulate_Y",
        py::overload_cast<const Theta&, double, std::size_t, const std::vector<double>&>(
            &simulate_Y),
        py::arg("theta"), py::arg("phi1"), py::arg("n"), py::arg("increments"));
  m.def("simulate_Y",
        py::overload_cast<const Theta&, double, std::size_t, RandomStream&>(&simulate_Y),
        py::arg("theta"), py::arg("phi1"), py::arg("n"), py::arg("stream"));
  m.def(
      "limit_tstat_sample",
      [](const Theta& theta, double phi1, std::size_t n, std::size_t R, std::uint64_t seed,
         int threads) { return limit_tstat_sample(theta, phi1, n, R, seed, 0, threads); },
      py::arg("theta"), py::arg("phi1"), py::arg("n"), py::arg("R"), py::arg("seed"),
      py::arg("threads") = 0, py::call_guard<py::gil_scoped_release>());

  // ---- stability -----------------------------------------------------------
  py::class_<SquareMatrix>(m, "SquareMatrix")
      .def(py::init<>())
      .def_readwrite("dim", &SquareMatrix::dim)
      .def_readwrite("a", &SquareMatrix::a);

  py::class_<CompanionPair>(m, "CompanionPair")
      .def_readonly("f0", &CompanionPair::f0)
      .def_readonly("f1", &CompanionPair::f1)
      .def_readonly("phi", &CompanionPair::phi);

  py::class_<JsrCertificate>(m, "JsrCertificate")
      .def_readonly("lower", &JsrCertificate::lower)
      .def_readonly("upper", &JsrCertificate::upper)
      .def_readonly("depth", &JsrCertificate::depth)
      .def_readonly("conclusive", &JsrCertificate::conclusive)
      .def_readonly("notes", &JsrCertificate::notes);

  py::class_<ExplosionReport>(m, "ExplosionReport")
      .def_readonly("replications", &ExplosionReport::replications)
      .def_readonly("explosive_fraction", &ExplosionReport::explosive_fraction)
      .def_readonly("classified_explosive", &ExplosionReport::classified_explosive)
      .def_readonly("growth_ratio_median", &ExplosionReport::growth_ratio_median)
      .def_readonly("max_dy_median", &ExplosionReport::max_dy_median)
      .def_readonly("max_dy_q90", &ExplosionReport::max_dy_q90)
      .def_readonly("threshold", &ExplosionReport::threshold);

  m.def("companion_pair", &companion_pair, py::arg("phi"));
  m.def("sufficient_condition", &sufficient_condition, py::arg("phi"));
  m.def("spectral_radius", &spectral_radius, py::arg("matrix"));
  m.def("jsr_bounds", &jsr_bounds, py::arg("pair"), py::arg("depth") = 14,
        py::arg("tol") = 1e-3);
  m.def("jsr_bounds_pair", &jsr_bounds_pair, py::arg("m0"), py::arg("m1"), py::arg("depth"),
        py::arg("tol"), py::arg("norm_cap") = 0.0);
  m.def("explosion_probe", &explosion_probe, py::arg("params"), py::arg("T"),
        py::arg("replications"), py::arg("seed"), py::arg("threshold") = 10.0,
        py::arg("threads") = 0, py::call_guard<py::gil_scoped_release>());

  // ---- estimation ----------------------------------------------------------
  py::enum_<InfoCriterion>(m, "InfoCriterion")
      .value("aic", InfoCriterion::aic)
      .value("bic", InfoCriterion::bic);

  py::class_<Regressors>(m, "Regressors")
      .def_readonly("k", &Regressors::k)
      .def_readonly("rows", &Regressors::rows)
      .def_readonly("cols", &Regressors::cols)
      .def_readonly("x", &Regressors::x)
      .def_readonly("y", &Regressors::y)
      .def_readonly("first_index", &Regressors::first_index);

  py::class_<OlsFit>(m, "OlsFit")
      .def(py::init<>())
      .def_readwrite("k", &OlsFit::k)
      .def_readonly("t_eff", &OlsFit::t_eff)
      .def_readwrite("alpha_hat", &OlsFit::alpha_hat)
      .def_readwrite("beta_hat", &OlsFit::beta_hat)
      .def_readonly("phi_hat", &OlsFit::phi_hat)
      .def_readwrite("phi1_hat", &OlsFit::phi1_hat)
      .def_readonly("residuals", &OlsFit::residuals)
      .def_readwrite("sigma2_hat", &OlsFit::sigma2_hat)
      .def_readonly("gram", &OlsFit::gram)
      .def_readonly("gram_inv_diag", &OlsFit::gram_inv_diag)
      .def_readonly("t_alpha", &OlsFit::t_alpha)
      .def_readwrite("t_beta", &OlsFit::t_beta)
      .def_readwrite("tstats_defined", &OlsFit::tstats_defined);

  py::class_<LagSelection>(m, "LagSelection")
      .def_readonly("k", &LagSelection::k)
      .def_readonly("criterion_values", &LagSelection::criterion_values)
      .def_readonly("skipped", &LagSelection::skipped);

  m.def("build_regressors", &build_regressors, py::arg("series"), py::arg("k"),
        py::arg("min_start") = 0);
  m.def("ols_fit", &ols_fit, py::arg("regressors"));
  m.def("fwl_check", &fwl_check, py::arg("regressors"), py::arg("fit"));
  m.def("select_lag", &select_lag, py::arg("series"), py::arg("k_max"), py::arg("criterion"));

  // ---- inference -----------------------------------------------------------
  py::class_<CvRow>(m, "CvRow")
      .def_readonly("ratio", &CvRow::ratio)
      .def_readonly("q", &CvRow::q);

  py::class_<CvTable>(m, "CvTable")
      .def_readonly("rows", &CvTable::rows)
      .def_readonly("adf_row", &CvTable::adf_row)
      .def_readonly("sample_length", &CvTable::sample_length)
      .def_readonly("replications", &CvTable::replications)
      .def_readonly("seed", &CvTable::seed)
      .def_readonly("source", &CvTable::source);

  m.def("default_cv_table", &default_cv_table, py::return_value_policy::reference);
  m.def(
      "critical_value_lookup",
      [](const CvTable& table, double ratio, int level) {
        return critical_value_lookup(table, ratio, level);
      },
      py::arg("table"), py::arg("ratio"), py::arg("level"));

  py::class_<McConfig>(m, "McConfig")
      .def(py::init<>())
      .def_readwrite("replications", &McConfig::replications)
      .def_readwrite("sample_length", &McConfig::sample_length)
      .def_readwrite("seed", &McConfig::seed)
      .def_readwrite("law", &McConfig::law)
      .def_readwrite("threads", &McConfig::threads);

  m.def("tabulate_null", &tabulate_null, py::arg("config"), py::arg("ratios"),
        py::call_guard<py::gil_scoped_release>());

  py::enum_<PvalueBackend>(m, "PvalueBackend")
      .value("finite_sample", PvalueBackend::finite_sample)
      .value("limit_grid", PvalueBackend::limit_grid);

  py::class_<TestOptions>(m, "TestOptions")
      .def(py::init<>())
      .def_readwrite("k", &TestOptions::k)
      .def_readwrite("k_max", &TestOptions::k_max)
      .def_readwrite("criterion", &TestOptions::criterion)
      .def_readwrite("simulate_p", &TestOptions::simulate_p)
      .def_readwrite("backend", &TestOptions::backend)
      .def_readwrite("sim_replications", &TestOptions::sim_replications)
      .def_readwrite("sim_length", &TestOptions::sim_length)
      .def_readwrite("grid_steps", &TestOptions::grid_steps)
      .def_readwrite("impose_b0", &TestOptions::impose_b0)
      .def_readwrite("bootstrap_replications", &TestOptions::bootstrap_replications)
      .def_readwrite("bootstrap_length", &TestOptions::bootstrap_length)
      .def_readwrite("seed", &TestOptions::seed)
      .def_readwrite("threads", &TestOptions::threads);

  py::class_<TestReport>(m, "TestReport")
      .def_readonly("k", &TestReport::k)
      .def_readonly("sample_length", &TestReport::sample_length)
      .def_readonly("t_alpha", &TestReport::t_alpha)
      .def_readonly("t_beta", &TestReport::t_beta)
      .def_readonly("alpha_hat", &TestReport::alpha_hat)
      .def_readonly("beta_hat", &TestReport::beta_hat)
      .def_readonly("b0_hat", &TestReport::b0_hat)
      .def_readonly("phi1_hat", &TestReport::phi1_hat)
      .def_readonly("sigma_hat", &TestReport::sigma_hat)
      .def_readonly("ratio", &TestReport::ratio)
      .def_readonly("bound", &TestReport::bound)
      .def_readonly("critical_values", &TestReport::critical_values)
      .def_readonly("reject", &TestReport::reject)
      .def_readonly("p_value_table", &TestReport::p_value_table)
      .def_readonly("p_value_sim", &TestReport::p_value_sim)
      .def_readonly("p_value_boot", &TestReport::p_value_boot)
      .def_readonly("b0_clamped", &TestReport::b0_clamped)
      .def_readonly("used_adf_row", &TestReport::used_adf_row)
      .def_readonly("k_aic", &TestReport::k_aic)
      .def_readonly("k_bic", &TestReport::k_bic)
      .def_readonly("backend", &TestReport::backend)
      .def_readonly("seed", &TestReport::seed);

  m.def("unit_root_test", &unit_root_test, py::arg("series"), py::arg("table"),
        py::arg("options"), py::call_guard<py::gil_scoped_release>());
  m.def("parametric_bootstrap", &parametric_bootstrap, py::arg("fit"), py::arg("series"),
        py::arg("replications"), py::arg("simulated_length"), py::arg("seed"),
        py::arg("threads") = 0, py::call_guard<py::gil_scoped_release>());

  py::class_<SizePowerCell>(m, "SizePowerCell")
      .def_readonly("a", &SizePowerCell::a)
      .def_readonly("c", &SizePowerCell::c)
      .def_readonly("mean_t", &SizePowerCell::mean_t)
      .def_readonly("reject_tobit_5pct", &SizePowerCell::reject_tobit_5pct)
      .def_readonly("reject_adf_5pct", &SizePowerCell::reject_adf_5pct)
      .def_readonly("degenerate", &SizePowerCell::degenerate);

  m.def("size_power_experiment", &size_power_experiment, py::arg("a_grid"), py::arg("c_grid"),
        py::arg("config"), py::arg("table"), py::call_guard<py::gil_scoped_release>());

  py::enum_<TstatModel>(m, "TstatModel")
      .value("tobit", TstatModel::tobit)
      .value("linear", TstatModel::linear);

  py::class_<DistributionOptions>(m, "DistributionOptions")
      .def(py::init<>())
      .def_readwrite("model", &DistributionOptions::model)
      .def_readwrite("b0", &DistributionOptions::b0)
      .def_readwrite("a", &DistributionOptions::a)
      .def_readwrite("c", &DistributionOptions::c)
      .def_readwrite("grid_min", &DistributionOptions::grid_min)
      .def_readwrite("grid_max", &DistributionOptions::grid_max)
      .def_readwrite("grid_step", &DistributionOptions::grid_step)
      .def_readwrite("bin_width", &DistributionOptions::bin_width);

  py::class_<DistributionGrid>(m, "DistributionGrid")
      .def_readonly("x", &DistributionGrid::x)
      .def_readonly("cdf", &DistributionGrid::cdf)
      .def_readonly("bin_center", &DistributionGrid::bin_center)
      .def_readonly("density", &DistributionGrid::density)
      .def_readonly("replications", &DistributionGrid::replications)
      .def_readonly("below_grid", &DistributionGrid::below_grid)
      .def_readonly("above_grid", &DistributionGrid::above_grid);

  m.def("tstat_distribution", &tstat_distribution, py::arg("config"), py::arg("options"),
        py::call_guard<py::gil_scoped_release>());

  // ---- io -------------------------------------------------------------
  py::class_<CsvOptions>(m, "CsvOptions")
      .def(py::init<>())
      .def_readwrite("apply_log", &CsvOptions::apply_log)
      .def_readwrite("bound", &CsvOptions::bound)
      .def_readwrite("bound_is_raw", &CsvOptions::bound_is_raw);

  m.def("read_series_csv", &read_series_csv, py::arg("path"),
        py::arg("options") = CsvOptions{});
  m.def(
      "write_series_csv",
      [](const Series& series, const std::string& path) { write_series_csv(series, path); },
      py::arg("series"), py::arg("path"));
  m.def("read_cv_table_csv", py::overload_cast<const std::string&>(&read_cv_table_csv),
        py::arg("path"));
}
