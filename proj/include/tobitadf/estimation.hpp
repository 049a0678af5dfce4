#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "tobitadf/model.hpp"

namespace tobit {

class SingularDesignError : public std::runtime_error {
 public:
  explicit SingularDesignError(const std::string& what) : std::runtime_error(what) {}
};

/// Design matrix for the ADF regression of y_t on
/// (1, y_{t-1}, dy_{t-1}, ..., dy_{t-k+1}).
struct Regressors {
  int k = 1;
  std::size_t rows = 0;
  std::size_t cols = 0;          // k + 1
  std::vector<double> x;         // row-major rows x cols
  std::vector<double> y;
  std::size_t first_index = 0;   // 0-based index of the first response in the raw series
};

struct OlsFit {
  int k = 1;
  std::size_t t_eff = 0;
  double alpha_hat = 0.0;
  double beta_hat = 0.0;
  std::vector<double> phi_hat;
  double phi1_hat = 1.0;               // 1 - sum(phi_hat)
  std::vector<double> residuals;
  double sigma2_hat = 0.0;
  std::vector<double> gram;            // (k+1)^2, row-major
  std::vector<double> gram_inv_diag;   // k+1
  // t statistics under the joint null alpha = 0, beta = 1.
  double t_alpha = 0.0;
  double t_beta = 0.0;
  bool tstats_defined = false;
};

enum class InfoCriterion { aic, bic };

/// Builds the aligned design; responses start at raw index k (0-based),
/// or at `min_start` when a larger common sample is requested.
Regressors build_regressors(const Series& series, int k, std::size_t min_start = 0);

/// Solves the normal equations by Cholesky on the Gram matrix, falling back
/// to Householder QR when the condition proxy exceeds 1e12.  Throws
/// SingularDesignError when the design has no usable rank.
OlsFit ols_fit(const Regressors& reg);

/// Absolute discrepancy between beta_hat - 1 and the Frisch-Waugh-Lovell
/// partial-summation expression (k = 1 only); a numerical self-test.
double fwl_check(const Regressors& reg, const OlsFit& fit);

struct LagSelection {
  int k = 1;
  std::vector<double> criterion_values;  // indexed k-1, NaN where skipped
  std::vector<int> skipped;              // lag orders skipped as singular
};

/// argmin over k in {1..k_max} of T_eff*log(sigma2_k) + penalty*(k+1) on a
/// common estimation sample; penalty 2 (AIC) or log(T_eff) (BIC); ties break
/// toward smaller k.
LagSelection select_lag(const Series& series, int k_max, InfoCriterion criterion);

}  // namespace tobit
