#include "tobitadf/inference.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>

#include "tobitadf/parallel.hpp"
#include "tobitadf/stats.hpp"

namespace tobit {

namespace {

// Stream-id bases keep the draws of the different stages of one run from
// overlapping.
constexpr std::uint64_t kSimStreamBase = std::uint64_t{1} << 40;
constexpr std::uint64_t kBootStreamBase = std::uint64_t{2} << 40;

constexpr std::array<double, 3> kLevels = {0.01, 0.05, 0.10};

std::array<double, 3> quantile_triple(std::vector<double>& sample) {
  std::sort(sample.begin(), sample.end());
  return {lower_empirical_quantile(sample, kLevels[0]),
          lower_empirical_quantile(sample, kLevels[1]),
          lower_empirical_quantile(sample, kLevels[2])};
}

}  // namespace

double k1_path_tstat(double y0, double alpha, double beta, const double* u, std::size_t T,
                     bool censored) {
  double y = y0;
  double s_lag = 0.0, s_lag2 = 0.0, s_y = 0.0, s_y2 = 0.0, s_xy = 0.0;
  for (std::size_t t = 0; t < T; ++t) {
    const double prev = y;
    double arg = alpha + beta * prev + u[t];
    if (censored && arg < 0.0) arg = 0.0;
    y = arg;
    s_lag += prev;
    s_lag2 += prev * prev;
    s_y += y;
    s_y2 += y * y;
    s_xy += prev * y;
  }
  const double n = static_cast<double>(T);
  const double det = n * s_lag2 - s_lag * s_lag;
  if (!(det > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  const double beta_hat = (n * s_xy - s_lag * s_y) / det;
  const double alpha_hat = (s_y - beta_hat * s_lag) / n;
  const double rss = s_y2 - alpha_hat * s_y - beta_hat * s_xy;
  const double sigma2 = rss / n;
  if (!(sigma2 > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  // (M^{-1})_{22} = n / det.
  return (beta_hat - 1.0) / std::sqrt(sigma2 * n / det);
}

void CvTable::validate() const {
  if (rows.empty()) throw std::invalid_argument("CvTable: no rows");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (!(r.ratio >= 0.0)) throw std::invalid_argument("CvTable: negative ratio");
    if (!(r.q[0] < r.q[1] && r.q[1] < r.q[2]))
      throw std::invalid_argument("CvTable: quantiles within a row must increase with level");
    if (i > 0) {
      if (!(rows[i - 1].ratio < r.ratio))
        throw std::invalid_argument("CvTable: ratios must be strictly increasing");
      for (int j = 0; j < 3; ++j)
        if (r.q[static_cast<std::size_t>(j)] < rows[i - 1].q[static_cast<std::size_t>(j)])
          throw std::invalid_argument(
              "CvTable: quantile columns must be nondecreasing in the ratio "
              "(stochastic ordering); increase the replication count");
    }
  }
  if (!(adf_row[0] < adf_row[1] && adf_row[1] < adf_row[2]))
    throw std::invalid_argument("CvTable: malformed ADF row");
}

void McConfig::validate() const {
  if (replications < 1) throw std::invalid_argument("McConfig: replications must be >= 1");
  if (sample_length < 10) throw std::invalid_argument("McConfig: sample length must be >= 10");
}

double critical_value_lookup(const CvTable& table, double ratio, int level, LookupInfo* info) {
  table.validate();
  std::size_t col;
  switch (level) {
    case 1: col = 0; break;
    case 5: col = 1; break;
    case 10: col = 2; break;
    default: throw std::invalid_argument("critical_value_lookup: level must be 1, 5 or 10");
  }
  LookupInfo local;
  if (ratio < 0.0) {
    ratio = 0.0;
    local.clamped_negative_ratio = true;
  }
  double value;
  if (ratio > table.rows.back().ratio) {
    local.used_adf_row = true;
    local.row_ratio = std::numeric_limits<double>::infinity();
    value = table.adf_row[col];
  } else {
    std::size_t best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
      const double dist = std::abs(table.rows[i].ratio - ratio);
      if (dist < best_dist) {  // ties keep the earlier (smaller) ratio
        best_dist = dist;
        best = i;
      }
    }
    local.row_ratio = table.rows[best].ratio;
    value = table.rows[best].q[col];
  }
  if (info) *info = local;
  return value;
}

CvTable tabulate_null(const McConfig& config, const std::vector<double>& ratios) {
  config.validate();
  if (ratios.empty()) throw std::invalid_argument("tabulate_null: empty ratio grid");
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    if (ratios[i] < 0.0) throw std::invalid_argument("tabulate_null: negative ratio");
    if (i > 0 && ratios[i] < ratios[i - 1])
      throw std::invalid_argument("tabulate_null: ratio grid must be nondecreasing");
  }

  const std::size_t R = config.replications;
  const std::size_t T = config.sample_length;
  const double root_t = std::sqrt(static_cast<double>(T));
  const std::size_t n_rows = ratios.size();

  // One innovation stream per replication, shared by every row (and the
  // linear ADF row), so the table is a deterministic function of the seed.
  std::vector<std::vector<double>> stats(n_rows + 1);
  for (auto& s : stats) s.resize(R);
  parallel_for(R, config.threads, [&](std::size_t r) {
    RandomStream stream(config.seed, r);
    std::vector<double> u(T);
    if (config.law == InnovationLaw::gaussian) {
      stream.fill_normal(u);
    } else {
      for (auto& v : u) v = stream.innovation(config.law);
    }
    for (std::size_t row = 0; row < n_rows; ++row)
      stats[row][r] = k1_path_tstat(ratios[row] * root_t, 0.0, 1.0, u.data(), T, true);
    stats[n_rows][r] = k1_path_tstat(0.0, 0.0, 1.0, u.data(), T, false);
  });

  CvTable table;
  table.sample_length = T;
  table.replications = R;
  table.seed = config.seed;
  table.law = config.law;
  table.source = "finite-sample";
  table.rows.resize(n_rows);
  for (std::size_t row = 0; row < n_rows; ++row) {
    table.rows[row].ratio = ratios[row];
    table.rows[row].q = quantile_triple(stats[row]);
  }
  table.adf_row = quantile_triple(stats[n_rows]);
  table.validate();
  return table;
}

namespace {

double interpolate_table_pvalue(double t, const std::array<double, 3>& cv, bool* below,
                                bool* above) {
  *below = *above = false;
  if (t <= cv[0]) {
    *below = t < cv[0];
    return kLevels[0];
  }
  if (t >= cv[2]) {
    *above = t > cv[2];
    return kLevels[2];
  }
  const std::size_t hi = t <= cv[1] ? 1 : 2;
  const double w = (t - cv[hi - 1]) / (cv[hi] - cv[hi - 1]);
  return kLevels[hi - 1] + w * (kLevels[hi] - kLevels[hi - 1]);
}

double simulated_null_pvalue(double t_obs, double ratio, const TestOptions& opt) {
  const std::size_t R = opt.sim_replications;
  std::vector<double> draws(R);
  if (opt.backend == PvalueBackend::finite_sample) {
    const std::size_t T = opt.sim_length;
    const double y0 = ratio * std::sqrt(static_cast<double>(T));
    parallel_for(R, opt.threads, [&](std::size_t r) {
      RandomStream stream(opt.seed, kSimStreamBase + r);
      std::vector<double> u(T);
      stream.fill_normal(u);
      draws[r] = k1_path_tstat(y0, 0.0, 1.0, u.data(), T, true);
    });
  } else {
    Theta theta;
    theta.b0 = ratio;
    draws = limit_tstat_sample(theta, 1.0, opt.grid_steps, R, opt.seed, kSimStreamBase,
                               opt.threads);
  }
  std::size_t count = 0;
  for (double d : draws)
    if (d <= t_obs) ++count;  // NaN draws never count
  return static_cast<double>(1 + count) / static_cast<double>(R + 1);
}

}  // namespace

TestReport unit_root_test(const Series& series, const CvTable& table,
                          const TestOptions& options) {
  auto [shifted, record] = shift_bound(series);
  const std::size_t n = shifted.size();

  TestReport report;
  report.bound = record.bound;
  report.sample_length = n;
  report.seed = options.seed;
  report.backend =
      options.backend == PvalueBackend::finite_sample ? "finite-sample" : "limit-grid";

  int k = options.k;
  if (k <= 0) {
    report.k_aic = select_lag(shifted, options.k_max, InfoCriterion::aic).k;
    report.k_bic = select_lag(shifted, options.k_max, InfoCriterion::bic).k;
    k = options.criterion == InfoCriterion::aic ? *report.k_aic : *report.k_bic;
  }
  report.k = k;

  const Regressors reg = build_regressors(shifted, k);
  const OlsFit fit = ols_fit(reg);
  if (!fit.tstats_defined)
    throw ZeroVarianceError("unit_root_test: residual variance is zero; t statistics undefined");

  report.t_alpha = fit.t_alpha;
  report.t_beta = fit.t_beta;
  report.alpha_hat = fit.alpha_hat;
  report.beta_hat = fit.beta_hat;
  report.phi1_hat = fit.phi1_hat;
  report.sigma_hat = std::sqrt(fit.sigma2_hat);

  double b0 = shifted.values.front() / std::sqrt(static_cast<double>(n));
  if (b0 < 0.0) {
    b0 = 0.0;
    report.b0_clamped = true;
  }
  report.b0_hat = b0;
  if (options.impose_b0) b0 = *options.impose_b0;

  double ratio = b0 * fit.phi1_hat / report.sigma_hat;
  if (ratio < 0.0) {  // phi1_hat below zero; the table domain is [0, inf)
    ratio = 0.0;
    report.ratio_clamped = true;
  }
  report.ratio = ratio;

  LookupInfo info;
  for (int lev : {1, 5, 10}) {
    const std::size_t col = lev == 1 ? 0 : (lev == 5 ? 1 : 2);
    report.critical_values[col] = critical_value_lookup(table, ratio, lev, &info);
    report.reject[col] = report.t_beta <= report.critical_values[col];
  }
  report.used_adf_row = info.used_adf_row;
  report.p_value_table = interpolate_table_pvalue(report.t_beta, report.critical_values,
                                                  &report.p_table_below_range,
                                                  &report.p_table_above_range);

  if (options.simulate_p)
    report.p_value_sim = simulated_null_pvalue(report.t_beta, ratio, options);

  if (options.bootstrap_replications > 0) {
    const std::size_t len =
        options.bootstrap_length > 0 ? options.bootstrap_length : n;
    report.p_value_boot = parametric_bootstrap(fit, series, options.bootstrap_replications,
                                               len, options.seed, options.threads);
  }
  return report;
}

double parametric_bootstrap(const OlsFit& fit, const Series& series, std::size_t replications,
                            std::size_t simulated_length, std::uint64_t seed, int threads) {
  if (replications < 99)
    throw std::invalid_argument("parametric_bootstrap: need at least 99 replications");
  auto [shifted, record] = shift_bound(series);
  const std::size_t T = shifted.size();
  if (simulated_length < T)
    throw std::invalid_argument("parametric_bootstrap: simulated length must be >= T");
  if (!fit.tstats_defined)
    throw ZeroVarianceError("parametric_bootstrap: observed fit has undefined t statistics");

  const double t_obs = fit.t_beta;
  const double sigma_hat = std::sqrt(fit.sigma2_hat);
  const double y1 = std::sqrt(static_cast<double>(simulated_length)) * fit.phi1_hat *
                    shifted.values.front() / std::sqrt(static_cast<double>(T));
  const int k = fit.k;

  std::vector<double> draws(replications);
  parallel_for(replications, threads, [&](std::size_t r) {
    RandomStream stream(seed, kBootStreamBase + r);
    Series boot;
    boot.values.resize(simulated_length);
    boot.values[0] = y1;
    double y = y1;
    for (std::size_t t = 1; t < simulated_length; ++t) {
      const double arg = y + sigma_hat * stream.normal();
      y = arg > 0.0 ? arg : 0.0;
      boot.values[t] = y;
    }
    // Re-estimate with the lag order used on the data.
    try {
      const OlsFit refit = ols_fit(build_regressors(boot, k));
      draws[r] = refit.tstats_defined ? refit.t_beta
                                      : std::numeric_limits<double>::infinity();
    } catch (const SingularDesignError&) {
      draws[r] = std::numeric_limits<double>::infinity();
    }
  });

  std::size_t count = 0;
  for (double d : draws)
    if (d <= t_obs) ++count;
  return static_cast<double>(1 + count) / static_cast<double>(replications + 1);
}

std::vector<SizePowerCell> size_power_experiment(const std::vector<double>& a_grid,
                                                 const std::vector<double>& c_grid,
                                                 const McConfig& config, const CvTable& table) {
  config.validate();
  if (a_grid.empty() || c_grid.empty())
    throw std::invalid_argument("size_power_experiment: empty grid");

  const std::size_t R = config.replications;
  const std::size_t T = config.sample_length;
  const double root_t = std::sqrt(static_cast<double>(T));
  const std::size_t n_cells = a_grid.size() * c_grid.size();

  std::vector<std::vector<double>> stats(n_cells);
  for (auto& s : stats) s.resize(R);
  parallel_for(R, config.threads, [&](std::size_t r) {
    RandomStream stream(config.seed, r);
    std::vector<double> u(T);
    if (config.law == InnovationLaw::gaussian) {
      stream.fill_normal(u);
    } else {
      for (auto& v : u) v = stream.innovation(config.law);
    }
    std::size_t cell = 0;
    for (const double a : a_grid)
      for (const double c : c_grid) {
        stats[cell][r] = k1_path_tstat(0.0, a / root_t, 1.0 + c / static_cast<double>(T),
                                       u.data(), T, true);
        ++cell;
      }
  });

  const double cv_tobit = critical_value_lookup(table, 0.0, 5);
  const double cv_adf = table.adf_row[1];

  std::vector<SizePowerCell> cells(n_cells);
  std::size_t idx = 0;
  for (const double a : a_grid)
    for (const double c : c_grid) {
      SizePowerCell& cell = cells[idx];
      cell.a = a;
      cell.c = c;
      double sum = 0.0;
      std::size_t used = 0, rej_t = 0, rej_a = 0;
      for (const double t : stats[idx]) {
        if (std::isnan(t)) {
          ++cell.degenerate;
          continue;
        }
        sum += t;
        ++used;
        if (t <= cv_tobit) ++rej_t;
        if (t <= cv_adf) ++rej_a;
      }
      cell.mean_t = used > 0 ? sum / static_cast<double>(used)
                             : std::numeric_limits<double>::quiet_NaN();
      cell.reject_tobit_5pct = static_cast<double>(rej_t) / static_cast<double>(R);
      cell.reject_adf_5pct = static_cast<double>(rej_a) / static_cast<double>(R);
      ++idx;
    }
  return cells;
}

DistributionGrid tstat_distribution(const McConfig& config, const DistributionOptions& options) {
  config.validate();
  if (!(options.grid_step > 0.0) || !(options.bin_width > 0.0) ||
      !(options.grid_max > options.grid_min))
    throw std::invalid_argument("tstat_distribution: malformed grid");

  const std::size_t R = config.replications;
  const std::size_t T = config.sample_length;
  const double root_t = std::sqrt(static_cast<double>(T));
  const bool censored = options.model == TstatModel::tobit;
  const double y0 = censored ? options.b0 * root_t : 0.0;
  const double alpha = options.a / root_t;
  const double beta = 1.0 + options.c / static_cast<double>(T);

  std::vector<double> stats(R);
  parallel_for(R, config.threads, [&](std::size_t r) {
    RandomStream stream(config.seed, r);
    std::vector<double> u(T);
    if (config.law == InnovationLaw::gaussian) {
      stream.fill_normal(u);
    } else {
      for (auto& v : u) v = stream.innovation(config.law);
    }
    stats[r] = k1_path_tstat(y0, alpha, beta, u.data(), T, censored);
  });
  std::sort(stats.begin(), stats.end());

  DistributionGrid grid;
  grid.replications = R;
  const auto n_points = static_cast<std::size_t>(
      std::floor((options.grid_max - options.grid_min) / options.grid_step + 1e-9)) + 1;
  grid.x.resize(n_points);
  grid.cdf.resize(n_points);
  for (std::size_t i = 0; i < n_points; ++i) {
    const double x = options.grid_min + static_cast<double>(i) * options.grid_step;
    grid.x[i] = x;
    const auto it = std::upper_bound(stats.begin(), stats.end(), x);
    grid.cdf[i] = static_cast<double>(it - stats.begin()) / static_cast<double>(R);
  }

  const auto n_bins = static_cast<std::size_t>(
      std::ceil((options.grid_max - options.grid_min) / options.bin_width - 1e-9));
  grid.bin_center.resize(n_bins);
  grid.density.assign(n_bins, 0.0);
  for (std::size_t b = 0; b < n_bins; ++b)
    grid.bin_center[b] = options.grid_min + (static_cast<double>(b) + 0.5) * options.bin_width;
  for (const double t : stats) {
    if (std::isnan(t)) continue;
    if (t < options.grid_min) {
      ++grid.below_grid;
      continue;
    }
    const auto b = static_cast<std::size_t>((t - options.grid_min) / options.bin_width);
    if (b >= n_bins) {
      ++grid.above_grid;
      continue;
    }
    grid.density[b] += 1.0;
  }
  const double denom = static_cast<double>(R) * options.bin_width;
  for (double& d : grid.density) d /= denom;
  return grid;
}

}  // namespace tobit
