#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tobitadf/estimation.hpp"
#include "tobitadf/limit.hpp"
#include "tobitadf/model.hpp"

namespace tobit {

inline constexpr std::uint64_t kDefaultSeed = 12345;

class ZeroVarianceError : public std::runtime_error {
 public:
  explicit ZeroVarianceError(const std::string& what) : std::runtime_error(what) {}
};

struct CvRow {
  double ratio = 0.0;
  std::array<double, 3> q{};  // 1%, 5%, 10%
};

/// Quantile surface of the null t_beta distribution by nuisance ratio
/// b0*phi(1)/sigma, plus the conventional ADF row used beyond the grid.
struct CvTable {
  std::vector<CvRow> rows;
  std::array<double, 3> adf_row{};
  // provenance
  std::size_t sample_length = 0;
  std::size_t replications = 0;
  std::uint64_t seed = 0;
  InnovationLaw law = InnovationLaw::gaussian;
  std::string source;  // "embedded-table", "finite-sample", "limit-grid"

  void validate() const;  // ratio ordering, column monotonicity, row ordering
};

/// The critical-value table shipped with the library (asymptotic quantiles
/// tabulated at T = 1e5 from 1e7 replications, Gaussian innovations).
const CvTable& default_cv_table();

struct LookupInfo {
  bool clamped_negative_ratio = false;
  bool used_adf_row = false;
  double row_ratio = 0.0;
};

/// Nearest-row lookup; ratios beyond the last tabulated row fall back to
/// the ADF row; exact midpoints resolve toward the smaller ratio.
/// `level` is the size in percent (1, 5 or 10).
double critical_value_lookup(const CvTable& table, double ratio, int level,
                             LookupInfo* info = nullptr);

struct McConfig {
  std::size_t replications = 100000;
  std::size_t sample_length = 100000;
  std::uint64_t seed = kDefaultSeed;
  InnovationLaw law = InnovationLaw::gaussian;
  int threads = 0;

  void validate() const;  // R >= 1, T >= 10
};

/// Tabulates null critical values: for each ratio r, R paths of
/// y_t = [y_{t-1} + u_t]_+ with y_0 = r*sqrt(T), plus the linear-model ADF
/// row.  Replication streams are shared across rows, and quantiles are read
/// from per-row sorted samples, so the result is independent of the worker
/// count.
CvTable tabulate_null(const McConfig& config, const std::vector<double>& ratios);

enum class PvalueBackend { finite_sample, limit_grid };

struct TestOptions {
  int k = 0;  // 0 = select by information criterion
  int k_max = 15;
  InfoCriterion criterion = InfoCriterion::bic;
  bool simulate_p = false;
  PvalueBackend backend = PvalueBackend::finite_sample;
  std::size_t sim_replications = 10000;
  std::size_t sim_length = 100000;  // finite-sample backend T
  std::size_t grid_steps = 10000;   // limit-grid backend n
  std::optional<double> impose_b0;  // override the estimated b0
  std::size_t bootstrap_replications = 0;  // 0 = no bootstrap
  std::size_t bootstrap_length = 0;        // 0 = series length
  std::uint64_t seed = kDefaultSeed;
  int threads = 0;
};

struct TestReport {
  int k = 1;
  std::size_t sample_length = 0;
  double t_alpha = 0.0;
  double t_beta = 0.0;
  double alpha_hat = 0.0;
  double beta_hat = 0.0;
  double b0_hat = 0.0;
  double phi1_hat = 1.0;
  double sigma_hat = 0.0;
  double ratio = 0.0;
  double bound = 0.0;
  std::array<double, 3> critical_values{};  // at 1%, 5%, 10%
  std::array<bool, 3> reject{};
  double p_value_table = 0.0;
  bool p_table_below_range = false;
  bool p_table_above_range = false;
  std::optional<double> p_value_sim;
  std::optional<double> p_value_boot;
  bool b0_clamped = false;
  bool ratio_clamped = false;
  bool used_adf_row = false;
  // lag selection detail when k was chosen automatically
  std::optional<int> k_aic;
  std::optional<int> k_bic;
  std::string backend;
  std::uint64_t seed = 0;
};

/// The censoring-adjusted unit-root test of H0: a = c = 0.  Shifts the
/// declared bound to zero, fits the ADF regression, evaluates t_beta under
/// beta = 1 and refers it to the table row at b0_hat*phi1_hat/sigma_hat with
/// b0_hat = y_1/sqrt(T) (clamped at zero).  Optional simulated-null and
/// bootstrap p-values.
TestReport unit_root_test(const Series& series, const CvTable& table,
                          const TestOptions& options);

/// Parametric bootstrap p-value following the k = 1 null recipe
/// y_1 = sqrt(T')*phi1_hat*y1/sqrt(T), y_t = [y_{t-1} + u_t]_+ with
/// u ~ N(0, sigma2_hat); each replication is re-estimated with the fitted k.
/// Returns (1 + #{t_r <= t_obs}) / (R + 1).
double parametric_bootstrap(const OlsFit& fit, const Series& series, std::size_t replications,
                            std::size_t simulated_length, std::uint64_t seed, int threads = 0);

struct SizePowerCell {
  double a = 0.0;
  double c = 0.0;
  double mean_t = 0.0;
  double reject_tobit_5pct = 0.0;  // ratio-0 row critical value
  double reject_adf_5pct = 0.0;    // conventional ADF critical value
  std::size_t degenerate = 0;
};

/// Section-4 experiment: for each (a, c), R paths of
/// y_t = [a/sqrt(T) + (1 + c/T) y_{t-1} + u_t]_+ from y_0 = 0, recording the
/// mean of t_beta and 5% rejection rates under both critical values.
std::vector<SizePowerCell> size_power_experiment(const std::vector<double>& a_grid,
                                                 const std::vector<double>& c_grid,
                                                 const McConfig& config, const CvTable& table);

enum class TstatModel { tobit, linear };

struct DistributionGrid {
  std::vector<double> x;    // CDF evaluation points
  std::vector<double> cdf;
  std::vector<double> bin_center;
  std::vector<double> density;  // histogram, normalised by R * bin width
  std::size_t replications = 0;
  std::size_t below_grid = 0;
  std::size_t above_grid = 0;
};

struct DistributionOptions {
  TstatModel model = TstatModel::tobit;
  double b0 = 0.0;  // nuisance ratio (y_0 = b0*sqrt(T))
  double a = 0.0;
  double c = 0.0;
  double grid_min = -8.0;
  double grid_max = 8.0;
  double grid_step = 0.02;
  double bin_width = 0.1;
};

/// Empirical CDF/PDF of t_beta under the Tobit or linear DGP, on a fixed
/// documented grid.
DistributionGrid tstat_distribution(const McConfig& config, const DistributionOptions& options);

/// t_beta of the k = 1 regression of y_t on (1, y_{t-1}) over t = 1..T for
/// a path generated by y_t = [alpha + beta*y_{t-1} + u_t]_+ (or the linear
/// recursion); the regression uses y_0 as the first lag.  Returns NaN for
/// degenerate samples.  Shared by every replication engine above.
double k1_path_tstat(double y0, double alpha, double beta, const double* u, std::size_t T,
                     bool censored);

}  // namespace tobit
