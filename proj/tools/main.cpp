#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tobitadf/io.hpp"
#include "tobitadf/parallel.hpp"

using nlohmann::json;

namespace {

// Expands "a:b:step" ranges and comma lists, e.g. "0:0.3:0.1,2.5".  Range
// values are snapped to 9 decimals so decimal steps stay clean.
std::vector<double> parse_grid(const std::string& spec) {
  std::vector<double> out;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (part.empty()) continue;
    const std::size_t c1 = part.find(':');
    if (c1 == std::string::npos) {
      out.push_back(std::stod(part));
      continue;
    }
    const std::size_t c2 = part.find(':', c1 + 1);
    if (c2 == std::string::npos) throw std::runtime_error("bad grid spec: " + part);
    const double from = std::stod(part.substr(0, c1));
    const double to = std::stod(part.substr(c1 + 1, c2 - c1 - 1));
    const double step = std::stod(part.substr(c2 + 1));
    if (!(step > 0.0)) throw std::runtime_error("grid step must be positive: " + part);
    for (int i = 0;; ++i) {
      const double v = std::round((from + i * step) * 1e9) / 1e9;
      if (v > to + step * 1e-9) break;
      out.push_back(v);
    }
  }
  if (out.empty()) throw std::runtime_error("empty grid spec: " + spec);
  return out;
}

std::vector<double> parse_list(const std::string& spec) {
  std::vector<double> out;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (!part.empty()) out.push_back(std::stod(part));
  }
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
}

// JSON payloads go to --out or stdout; CSV payloads go to --out with the
// metadata sidecar at <out>.meta.json, or to stdout with metadata on stderr.
void emit_json(const std::optional<std::string>& out, const json& doc) {
  const std::string text = doc.dump(2) + "\n";
  if (out)
    write_text(*out, text);
  else
    std::cout << text;
}

void emit_csv(const std::optional<std::string>& out, const std::string& csv, const json& meta) {
  if (out) {
    write_text(*out, csv);
    write_text(*out + ".meta.json", meta.dump(2) + "\n");
  } else {
    std::cout << csv;
    std::cerr << meta.dump(2) << "\n";
  }
}

json base_meta(const std::string& command, const json& config) {
  return json{{"schema", "tobitadf/v1/run_meta"},
              {"command", command},
              {"timestamp", tobit::timestamp_utc()},
              {"config", config}};
}

struct InputOptions {
  std::string path;
  bool apply_log = false;
  std::optional<double> bound;
  std::optional<double> bound_raw;

  tobit::Series load() const {
    tobit::CsvOptions opt;
    opt.apply_log = apply_log;
    if (bound && bound_raw) throw std::runtime_error("use either --bound or --bound-raw");
    if (bound) opt.bound = *bound;
    if (bound_raw) {
      opt.bound = *bound_raw;
      opt.bound_is_raw = true;
    }
    return tobit::read_series_csv(path, opt);
  }

  void add_flags(CLI::App* cmd) {
    cmd->add_option("--input", path, "input series CSV (`value` or `date,value`)")->required();
    cmd->add_flag("--log", apply_log, "apply natural log to the values");
    cmd->add_option("--bound", bound, "lower bound L on the analysis (post-log) scale");
    cmd->add_option("--bound-raw", bound_raw, "lower bound on the raw scale (logged with --log)");
  }

  json config() const {
    return json{{"input", path},
                {"log", apply_log},
                {"bound", bound ? json(*bound) : json()},
                {"bound_raw", bound_raw ? json(*bound_raw) : json()}};
  }
};

int run_simulate(const std::string& dist, std::size_t T, int k, double a, double c, double b0,
                 std::optional<double> alpha, std::optional<double> beta,
                 const std::string& phi_spec, double sigma, double bound,
                 std::uint64_t seed, const std::optional<std::string>& out) {
  std::vector<double> phi = phi_spec.empty() ? std::vector<double>{} : parse_list(phi_spec);
  tobit::ModelParams params;
  if (alpha || beta) {
    params.k = k;
    params.phi = phi;
    params.sigma = sigma;
    params.lower_bound = bound;
    params.alpha = alpha.value_or(0.0);
    params.beta = beta.value_or(1.0);
    params.init = {b0 * std::sqrt(static_cast<double>(T)) + bound};
  } else {
    tobit::LocalParams local{a, b0, c, T};
    params = local.to_model(k, phi, sigma, bound);
  }
  const auto law = tobit::innovation_law_from_string(dist);
  tobit::RandomStream stream(seed, 0);
  const auto u = tobit::make_innovations(params.sigma, law, T, stream);
  const tobit::SimOutput sim = tobit::simulate_tobit(params, u);

  std::ostringstream csv;
  tobit::write_sim_output_csv(sim, csv);
  json config{{"T", T},         {"k", k},           {"a", a},
              {"c", c},         {"b0", b0},         {"alpha", params.alpha},
              {"beta", params.beta},                {"phi", phi},
              {"sigma", sigma}, {"bound", bound},   {"dist", dist},
              {"seed", seed},
              {"init_rule", "flat start: pre-sample levels default to y_0"}};
  emit_csv(out, csv.str(), base_meta("simulate", config));
  return 0;
}

int run_estimate(const InputOptions& input, int k, const std::optional<std::string>& out) {
  const tobit::Series series = input.load();
  auto [shifted, record] = tobit::shift_bound(series);
  const tobit::OlsFit fit = tobit::ols_fit(tobit::build_regressors(shifted, k));
  json doc = tobit::to_json(fit);
  doc["bound"] = record.bound;
  doc["timestamp"] = tobit::timestamp_utc();
  json config = input.config();
  config["k"] = k;
  doc["config"] = config;
  emit_json(out, doc);
  return 0;
}

int run_test(const InputOptions& input, const std::string& k_spec, int k_max,
             const std::string& criterion, bool no_p_sim, std::size_t sim_reps,
             std::size_t sim_length, const std::string& backend, std::optional<double> impose_b0,
             std::size_t bootstrap, std::size_t bootstrap_length, const std::string& table_path,
             std::uint64_t seed, int threads, const std::optional<std::string>& out) {
  const tobit::Series series = input.load();

  tobit::TestOptions opt;
  if (k_spec != "auto") opt.k = std::stoi(k_spec);
  opt.k_max = k_max;
  opt.criterion = criterion == "aic" ? tobit::InfoCriterion::aic : tobit::InfoCriterion::bic;
  opt.simulate_p = !no_p_sim;
  opt.sim_replications = sim_reps;
  opt.sim_length = sim_length;
  opt.backend = backend == "grid" ? tobit::PvalueBackend::limit_grid
                                  : tobit::PvalueBackend::finite_sample;
  opt.impose_b0 = impose_b0;
  opt.bootstrap_replications = bootstrap;
  opt.bootstrap_length = bootstrap_length;
  opt.seed = seed;
  opt.threads = threads;

  const tobit::CvTable table =
      table_path.empty() ? tobit::default_cv_table() : tobit::read_cv_table_csv(table_path);
  const tobit::TestReport report = tobit::unit_root_test(series, table, opt);

  json doc = tobit::to_json(report);
  doc["timestamp"] = tobit::timestamp_utc();
  json config = input.config();
  config["k"] = k_spec;
  config["k_max"] = k_max;
  config["criterion"] = criterion;
  config["p_sim"] = !no_p_sim;
  config["sim_reps"] = sim_reps;
  config["sim_length"] = sim_length;
  config["backend"] = backend;
  config["impose_b0"] = impose_b0 ? json(*impose_b0) : json();
  config["bootstrap"] = bootstrap;
  config["table"] = table_path.empty() ? "embedded" : table_path;
  config["seed"] = seed;
  config["threads"] = threads;
  doc["config"] = config;
  emit_json(out, doc);
  return 0;  // statistical decisions never drive the exit code
}

int run_tabulate(const std::string& ratios, std::size_t T, std::size_t reps, std::uint64_t seed,
                 int threads, const std::string& dist, const std::optional<std::string>& out) {
  tobit::McConfig config;
  config.sample_length = T;
  config.replications = reps;
  config.seed = seed;
  config.threads = threads;
  config.law = tobit::innovation_law_from_string(dist);
  const tobit::CvTable table = tobit::tabulate_null(config, parse_grid(ratios));

  std::ostringstream csv;
  tobit::write_cv_table_csv(table, csv);
  json meta = tobit::cv_table_provenance(table);
  meta["timestamp"] = tobit::timestamp_utc();
  meta["config"] = json{{"ratios", ratios}, {"T", T},           {"reps", reps},
                        {"seed", seed},     {"dist", dist},     {"threads", threads}};
  emit_csv(out, csv.str(), meta);
  return 0;
}

int run_power(const std::string& a_spec, const std::string& c_spec, std::size_t T,
              std::size_t reps, std::uint64_t seed, int threads, const std::string& table_path,
              const std::optional<std::string>& out) {
  tobit::McConfig config;
  config.sample_length = T;
  config.replications = reps;
  config.seed = seed;
  config.threads = threads;
  const tobit::CvTable table =
      table_path.empty() ? tobit::default_cv_table() : tobit::read_cv_table_csv(table_path);
  const auto cells =
      tobit::size_power_experiment(parse_grid(a_spec), parse_grid(c_spec), config, table);

  std::ostringstream csv;
  csv << "a,c,mean_t,reject_tobit_5pct,reject_adf_5pct,degenerate\n";
  for (const auto& cell : cells)
    csv << tobit::format_full(cell.a) << ',' << tobit::format_full(cell.c) << ','
        << tobit::format_full(cell.mean_t) << ',' << tobit::format_full(cell.reject_tobit_5pct)
        << ',' << tobit::format_full(cell.reject_adf_5pct) << ',' << cell.degenerate << '\n';
  json config_echo{{"a_grid", a_spec}, {"c_grid", c_spec}, {"T", T},
                   {"reps", reps},     {"seed", seed},     {"threads", threads},
                   {"table", table_path.empty() ? "embedded" : table_path}};
  emit_csv(out, csv.str(), base_meta("power", config_echo));
  return 0;
}

int run_dist(const std::string& model, double b0, double a, double c, std::size_t T,
             std::size_t reps, std::uint64_t seed, int threads, double grid_min, double grid_max,
             double grid_step, double bin_width, const std::optional<std::string>& out) {
  tobit::McConfig config;
  config.sample_length = T;
  config.replications = reps;
  config.seed = seed;
  config.threads = threads;
  tobit::DistributionOptions opt;
  opt.model = model == "linear" ? tobit::TstatModel::linear : tobit::TstatModel::tobit;
  opt.b0 = b0;
  opt.a = a;
  opt.c = c;
  opt.grid_min = grid_min;
  opt.grid_max = grid_max;
  opt.grid_step = grid_step;
  opt.bin_width = bin_width;
  const tobit::DistributionGrid grid = tobit::tstat_distribution(config, opt);

  std::ostringstream csv;
  csv << "kind,x,value\n";
  for (std::size_t i = 0; i < grid.x.size(); ++i)
    csv << "cdf," << tobit::format_full(grid.x[i]) << ',' << tobit::format_full(grid.cdf[i])
        << '\n';
  for (std::size_t i = 0; i < grid.bin_center.size(); ++i)
    csv << "pdf," << tobit::format_full(grid.bin_center[i]) << ','
        << tobit::format_full(grid.density[i]) << '\n';
  json config_echo{{"model", model},     {"b0", b0},
                   {"a", a},             {"c", c},
                   {"T", T},             {"reps", reps},
                   {"seed", seed},       {"threads", threads},
                   {"grid_min", grid_min}, {"grid_max", grid_max},
                   {"grid_step", grid_step}, {"bin_width", bin_width},
                   {"below_grid", grid.below_grid}, {"above_grid", grid.above_grid}};
  emit_csv(out, csv.str(), base_meta("dist", config_echo));
  return 0;
}

int run_jsr(const std::string& phi_spec, int depth, double tol, bool probe, std::size_t probe_T,
            std::size_t probe_reps, std::uint64_t seed, const std::optional<std::string>& out) {
  const std::vector<double> phi = phi_spec.empty() ? std::vector<double>{} : parse_list(phi_spec);
  const tobit::CompanionPair pair = tobit::companion_pair(phi);
  const tobit::JsrCertificate cert = tobit::jsr_bounds(pair, depth, tol);
  json doc = tobit::to_json(cert);
  doc["phi"] = phi;
  doc["sufficient_condition"] = tobit::sufficient_condition(phi);
  doc["timestamp"] = tobit::timestamp_utc();
  if (probe) {
    tobit::ModelParams params;
    params.k = static_cast<int>(phi.size()) + 1;
    params.phi = phi;
    params.beta = 1.0;
    params.init = {0.0};
    doc["explosion_probe"] =
        tobit::to_json(tobit::explosion_probe(params, probe_T, probe_reps, seed));
  }
  doc["config"] = json{{"phi", phi},   {"depth", depth},         {"tol", tol},
                       {"probe", probe}, {"probe_T", probe_T},   {"probe_reps", probe_reps},
                       {"seed", seed}};
  emit_json(out, doc);
  return 0;
}

int run_fetch_ecb(const std::string& key, const std::string& start, const std::string& end,
                  const std::string& cache_dir, const std::optional<std::string>& out) {
  tobit::EcbRequest request;
  request.series_key = key;
  request.start = start;
  request.end = end;
  request.cache_dir = cache_dir;
  if (request.cache_dir.empty())
    if (const char* env = std::getenv("TOBITADF_CACHE_DIR")) request.cache_dir = env;

  std::string raw;
  const tobit::Series series = tobit::fetch_ecb(request, &raw);
  std::ostringstream csv;
  tobit::write_series_csv(series, csv);
  json config{{"key", key}, {"start", start}, {"end", end},
              {"cache_dir", request.cache_dir}, {"observations", series.size()}};
  emit_csv(out, csv.str(), base_meta("fetch-ecb", config));
  if (out) write_text(*out + ".raw.csv", raw);  // raw payload beside the output
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Censored (dynamic Tobit) autoregression simulation and unit-root testing"};
  app.require_subcommand(1);

  // simulate ---------------------------------------------------------------
  auto* sim = app.add_subcommand("simulate", "simulate a censored Tobit path (CSV: t,y,y_minus,u)");
  std::size_t sim_T = 500;
  int sim_k = 1;
  double sim_a = 0.0, sim_c = 0.0, sim_b0 = 0.0, sim_sigma = 1.0, sim_bound = 0.0;
  std::optional<double> sim_alpha, sim_beta;
  std::string sim_phi, sim_dist = "normal";
  std::uint64_t sim_seed = tobit::kDefaultSeed;
  std::optional<std::string> sim_out;
  sim->add_option("--T", sim_T, "sample length")->required();
  sim->add_option("--k", sim_k, "lag order");
  sim->add_option("--a", sim_a, "local drift a (alpha = a/sqrt(T))");
  sim->add_option("--c", sim_c, "local exponent c (beta = exp(c/T))");
  sim->add_option("--b0", sim_b0, "scaled initialisation (y_0 = b0*sqrt(T) + L)");
  sim->add_option("--alpha", sim_alpha, "direct intercept (overrides --a)");
  sim->add_option("--beta", sim_beta, "direct level coefficient (overrides --c)");
  sim->add_option("--phi", sim_phi, "difference coefficients, comma separated");
  sim->add_option("--sigma", sim_sigma, "innovation standard deviation");
  sim->add_option("--bound", sim_bound, "censoring point L");
  sim->add_option("--dist", sim_dist, "innovation law: normal|student|rademacher");
  sim->add_option("--seed", sim_seed, "RNG seed");
  sim->add_option("--out", sim_out, "output CSV path (stdout when omitted)");

  // estimate ---------------------------------------------------------------
  auto* est = app.add_subcommand("estimate", "OLS fit of the ADF regression (JSON)");
  InputOptions est_input;
  est_input.add_flags(est);
  int est_k = 1;
  std::optional<std::string> est_out;
  est->add_option("--k", est_k, "lag order");
  est->add_option("--out", est_out, "output JSON path (stdout when omitted)");

  // test ---------------------------------------------------------------
  auto* tst = app.add_subcommand("test", "censoring-adjusted unit-root test (JSON report)");
  InputOptions tst_input;
  tst_input.add_flags(tst);
  std::string tst_k = "auto", tst_criterion = "bic", tst_backend = "finite", tst_table;
  int tst_kmax = 15, tst_threads = 0;
  bool tst_no_p_sim = false;
  std::size_t tst_sim_reps = 10000, tst_sim_length = 100000, tst_boot = 0, tst_boot_len = 0;
  std::optional<double> tst_impose_b0;
  std::uint64_t tst_seed = tobit::kDefaultSeed;
  std::optional<std::string> tst_out;
  tst->add_option("--k", tst_k, "lag order, or 'auto' for information-criterion selection");
  tst->add_option("--kmax", tst_kmax, "maximum lag order under --k auto");
  tst->add_option("--criterion", tst_criterion, "aic|bic (for --k auto)")
      ->check(CLI::IsMember({"aic", "bic"}));
  tst->add_flag("--no-p-sim", tst_no_p_sim, "skip the simulated-null p-value");
  tst->add_option("--sim-reps", tst_sim_reps, "simulated-null replications");
  tst->add_option("--sim-length", tst_sim_length, "simulated-null sample length (finite backend)");
  tst->add_option("--backend", tst_backend, "simulated-null backend: finite|grid")
      ->check(CLI::IsMember({"finite", "grid"}));
  tst->add_option("--impose-b0", tst_impose_b0, "impose this b0 instead of the estimate");
  tst->add_option("--bootstrap", tst_boot, "parametric bootstrap replications (0 = off)");
  tst->add_option("--bootstrap-length", tst_boot_len, "bootstrap series length (default T)");
  tst->add_option("--table", tst_table, "critical-value table CSV (default: embedded)");
  tst->add_option("--seed", tst_seed, "RNG seed");
  tst->add_option("--threads", tst_threads, "worker threads (0 = all cores)");
  tst->add_option("--out", tst_out, "output JSON path (stdout when omitted)");

  // tabulate ---------------------------------------------------------------
  auto* tab = app.add_subcommand("tabulate", "tabulate null critical values (CSV + JSON sidecar)");
  std::string tab_ratios = "0:2:0.1,2.5";  // the published 22-row layout
  std::size_t tab_T = 100000, tab_reps = 100000;
  std::uint64_t tab_seed = tobit::kDefaultSeed;
  int tab_threads = 0;
  std::string tab_dist = "normal";
  std::optional<std::string> tab_out;
  tab->add_option("--ratios", tab_ratios, "ratio grid, e.g. 0:2.5:0.1 or 0,0.5,1");
  tab->add_option("--T", tab_T, "sample length");
  tab->add_option("--reps", tab_reps, "Monte Carlo replications");
  tab->add_option("--seed", tab_seed, "RNG seed");
  tab->add_option("--threads", tab_threads, "worker threads (0 = all cores)");
  tab->add_option("--dist", tab_dist, "innovation law");
  tab->add_option("--out", tab_out, "output CSV path");

  // power ---------------------------------------------------------------
  auto* pow_cmd = app.add_subcommand("power", "size/power experiment over (a, c) grids (CSV)");
  std::string pow_a = "-5:5:1", pow_c = "-5:5:1", pow_table;
  std::size_t pow_T = 1000, pow_reps = 100000;
  std::uint64_t pow_seed = tobit::kDefaultSeed;
  int pow_threads = 0;
  std::optional<std::string> pow_out;
  pow_cmd->add_option("--a-grid", pow_a, "grid for a");
  pow_cmd->add_option("--c-grid", pow_c, "grid for c");
  pow_cmd->add_option("--T", pow_T, "sample length");
  pow_cmd->add_option("--reps", pow_reps, "replications per cell");
  pow_cmd->add_option("--seed", pow_seed, "RNG seed");
  pow_cmd->add_option("--threads", pow_threads, "worker threads");
  pow_cmd->add_option("--table", pow_table, "critical-value table CSV (default: embedded)");
  pow_cmd->add_option("--out", pow_out, "output CSV path");

  // dist ---------------------------------------------------------------
  auto* dst = app.add_subcommand("dist", "empirical CDF/PDF grid of t_beta (CSV)");
  std::string dst_model = "tobit";
  double dst_b0 = 0.0, dst_a = 0.0, dst_c = 0.0;
  double dst_gmin = -8.0, dst_gmax = 8.0, dst_gstep = 0.02, dst_bw = 0.1;
  std::size_t dst_T = 1000, dst_reps = 100000;
  std::uint64_t dst_seed = tobit::kDefaultSeed;
  int dst_threads = 0;
  std::optional<std::string> dst_out;
  dst->add_option("--model", dst_model, "tobit|linear")->check(CLI::IsMember({"tobit", "linear"}));
  dst->add_option("--b0", dst_b0, "initialisation ratio (Tobit model)");
  dst->add_option("--a", dst_a, "local drift");
  dst->add_option("--c", dst_c, "local exponent");
  dst->add_option("--T", dst_T, "sample length");
  dst->add_option("--reps", dst_reps, "replications");
  dst->add_option("--seed", dst_seed, "RNG seed");
  dst->add_option("--threads", dst_threads, "worker threads");
  dst->add_option("--grid-min", dst_gmin, "CDF grid minimum");
  dst->add_option("--grid-max", dst_gmax, "CDF grid maximum");
  dst->add_option("--grid-step", dst_gstep, "CDF grid step");
  dst->add_option("--bin-width", dst_bw, "histogram bin width");
  dst->add_option("--out", dst_out, "output CSV path");

  // jsr ---------------------------------------------------------------
  auto* jsr = app.add_subcommand("jsr", "joint-spectral-radius certificate (JSON)");
  std::string jsr_phi;
  int jsr_depth = 14;
  double jsr_tol = 1e-3;
  bool jsr_probe = false;
  std::size_t jsr_probe_T = 1000, jsr_probe_reps = 200;
  std::uint64_t jsr_seed = tobit::kDefaultSeed;
  std::optional<std::string> jsr_out;
  jsr->add_option("--phi", jsr_phi, "difference coefficients, comma separated")->required();
  jsr->add_option("--depth", jsr_depth, "maximum product length");
  jsr->add_option("--tol", jsr_tol, "certificate gap target");
  jsr->add_flag("--probe", jsr_probe, "also run the explosion probe");
  jsr->add_option("--probe-T", jsr_probe_T, "probe sample length");
  jsr->add_option("--probe-reps", jsr_probe_reps, "probe replications");
  jsr->add_option("--seed", jsr_seed, "RNG seed");
  jsr->add_option("--out", jsr_out, "output JSON path");

  // fetch-ecb ---------------------------------------------------------------
  auto* fetch = app.add_subcommand("fetch-ecb", "fetch an ECB SDMX series as CSV");
  std::string fetch_key = "EXR.D.CHF.EUR.SP00.A", fetch_start, fetch_end, fetch_cache;
  std::optional<std::string> fetch_out;
  fetch->add_option("--key", fetch_key, "SDMX series key");
  fetch->add_option("--start", fetch_start, "start date (YYYY-MM-DD)")->required();
  fetch->add_option("--end", fetch_end, "end date (YYYY-MM-DD)")->required();
  fetch->add_option("--cache-dir", fetch_cache, "cache directory (env TOBITADF_CACHE_DIR)");
  fetch->add_option("--out", fetch_out, "output CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*sim)
      return run_simulate(sim_dist, sim_T, sim_k, sim_a, sim_c, sim_b0, sim_alpha, sim_beta,
                          sim_phi, sim_sigma, sim_bound, sim_seed, sim_out);
    if (*est) return run_estimate(est_input, est_k, est_out);
    if (*tst)
      return run_test(tst_input, tst_k, tst_kmax, tst_criterion, tst_no_p_sim, tst_sim_reps,
                      tst_sim_length, tst_backend, tst_impose_b0, tst_boot, tst_boot_len,
                      tst_table, tst_seed, tst_threads, tst_out);
    if (*tab)
      return run_tabulate(tab_ratios, tab_T, tab_reps, tab_seed, tab_threads, tab_dist, tab_out);
    if (*pow_cmd)
      return run_power(pow_a, pow_c, pow_T, pow_reps, pow_seed, pow_threads, pow_table, pow_out);
    if (*dst)
      return run_dist(dst_model, dst_b0, dst_a, dst_c, dst_T, dst_reps, dst_seed, dst_threads,
                      dst_gmin, dst_gmax, dst_gstep, dst_bw, dst_out);
    if (*jsr)
      return run_jsr(jsr_phi, jsr_depth, jsr_tol, jsr_probe, jsr_probe_T, jsr_probe_reps,
                     jsr_seed, jsr_out);
    if (*fetch) return run_fetch_ecb(fetch_key, fetch_start, fetch_end, fetch_cache, fetch_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
