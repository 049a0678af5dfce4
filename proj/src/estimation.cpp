#include "tobitadf/estimation.hpp"

#include <cmath>
#include <limits>

namespace tobit {

namespace {

constexpr double kConditionLimit = 1e12;

// Cholesky factorisation of a symmetric positive definite matrix; returns
// false when a pivot fails or the diagonal condition proxy exceeds the limit.
bool cholesky(const std::vector<double>& g, std::size_t p, std::vector<double>& l) {
  l.assign(p * p, 0.0);
  double dmax = 0.0, dmin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double sum = g[i * p + j];
      for (std::size_t m = 0; m < j; ++m) sum -= l[i * p + m] * l[j * p + m];
      if (i == j) {
        if (sum <= 0.0) return false;
        l[i * p + i] = std::sqrt(sum);
        dmax = std::max(dmax, l[i * p + i]);
        dmin = std::min(dmin, l[i * p + i]);
      } else {
        l[i * p + j] = sum / l[j * p + j];
      }
    }
  }
  const double ratio = dmax / dmin;
  return ratio * ratio < kConditionLimit;
}

void solve_lower(const std::vector<double>& l, std::size_t p, std::vector<double>& b) {
  for (std::size_t i = 0; i < p; ++i) {
    double sum = b[i];
    for (std::size_t j = 0; j < i; ++j) sum -= l[i * p + j] * b[j];
    b[i] = sum / l[i * p + i];
  }
}

void solve_upper_from_lower(const std::vector<double>& l, std::size_t p, std::vector<double>& b) {
  for (std::size_t ii = p; ii-- > 0;) {
    double sum = b[ii];
    for (std::size_t j = ii + 1; j < p; ++j) sum -= l[j * p + ii] * b[j];
    b[ii] = sum / l[ii * p + ii];
  }
}

// Householder QR of the design; fills R (p x p, upper) and applies the
// transformations to rhs in place.  Returns false on rank deficiency.
bool qr_solve(std::vector<double> x, std::vector<double> y, std::size_t rows, std::size_t p,
              std::vector<double>& coef, std::vector<double>& r_out) {
  std::vector<double> v(rows);
  double scale_probe = 0.0;
  for (std::size_t col = 0; col < p; ++col) {
    double norm2 = 0.0;
    for (std::size_t i = col; i < rows; ++i) norm2 += x[i * p + col] * x[i * p + col];
    const double norm = std::sqrt(norm2);
    scale_probe = std::max(scale_probe, norm);
    if (norm <= 1e-13 * (1.0 + scale_probe)) return false;
    const double head = x[col * p + col];
    const double alpha = head >= 0.0 ? -norm : norm;
    double vnorm2 = 0.0;
    for (std::size_t i = col; i < rows; ++i) {
      v[i] = x[i * p + col] - (i == col ? alpha : 0.0);
      vnorm2 += v[i] * v[i];
    }
    if (vnorm2 == 0.0) continue;
    for (std::size_t j = col; j < p; ++j) {
      double dot = 0.0;
      for (std::size_t i = col; i < rows; ++i) dot += v[i] * x[i * p + j];
      const double f = 2.0 * dot / vnorm2;
      for (std::size_t i = col; i < rows; ++i) x[i * p + j] -= f * v[i];
    }
    double dot = 0.0;
    for (std::size_t i = col; i < rows; ++i) dot += v[i] * y[i];
    const double f = 2.0 * dot / vnorm2;
    for (std::size_t i = col; i < rows; ++i) y[i] -= f * v[i];
  }
  r_out.assign(p * p, 0.0);
  double rmax = 0.0, rmin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = i; j < p; ++j) r_out[i * p + j] = x[i * p + j];
    rmax = std::max(rmax, std::abs(r_out[i * p + i]));
    rmin = std::min(rmin, std::abs(r_out[i * p + i]));
  }
  if (rmin <= 1e-13 * rmax || rmin == 0.0) return false;
  coef.assign(p, 0.0);
  for (std::size_t ii = p; ii-- > 0;) {
    double sum = y[ii];
    for (std::size_t j = ii + 1; j < p; ++j) sum -= r_out[ii * p + j] * coef[j];
    coef[ii] = sum / r_out[ii * p + ii];
  }
  return true;
}

}  // namespace

Regressors build_regressors(const Series& series, int k, std::size_t min_start) {
  series.validate();
  if (k < 1) throw std::invalid_argument("build_regressors: k must be >= 1");
  const std::size_t n = series.size();
  if (n < static_cast<std::size_t>(k) + 2)
    throw std::invalid_argument("build_regressors: series too short for k lags");

  Regressors reg;
  reg.k = k;
  reg.cols = static_cast<std::size_t>(k) + 1;
  reg.first_index = std::max<std::size_t>(static_cast<std::size_t>(k), min_start);
  if (reg.first_index >= n)
    throw std::invalid_argument("build_regressors: no usable observations");
  reg.rows = n - reg.first_index;
  reg.x.resize(reg.rows * reg.cols);
  reg.y.resize(reg.rows);
  const auto& v = series.values;
  for (std::size_t row = 0; row < reg.rows; ++row) {
    const std::size_t t = reg.first_index + row;
    double* xr = &reg.x[row * reg.cols];
    xr[0] = 1.0;
    xr[1] = v[t - 1];
    for (int i = 1; i < k; ++i)
      xr[1 + i] = v[t - static_cast<std::size_t>(i)] - v[t - static_cast<std::size_t>(i) - 1];
    reg.y[row] = v[t];
  }
  return reg;
}

OlsFit ols_fit(const Regressors& reg) {
  const std::size_t p = reg.cols;
  const std::size_t rows = reg.rows;
  if (rows < p) throw SingularDesignError("ols_fit: fewer rows than parameters");

  // Gram matrix and cross moments, accumulated in row order.
  std::vector<double> gram(p * p, 0.0);
  std::vector<double> rhs(p, 0.0);
  for (std::size_t r = 0; r < rows; ++r) {
    const double* xr = &reg.x[r * p];
    for (std::size_t i = 0; i < p; ++i) {
      rhs[i] += xr[i] * reg.y[r];
      for (std::size_t j = 0; j <= i; ++j) gram[i * p + j] += xr[i] * xr[j];
    }
  }
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = i + 1; j < p; ++j) gram[i * p + j] = gram[j * p + i];

  std::vector<double> coef = rhs;
  std::vector<double> inv_diag(p, 0.0);
  std::vector<double> l;
  if (cholesky(gram, p, l)) {
    solve_lower(l, p, coef);
    solve_upper_from_lower(l, p, coef);
    for (std::size_t i = 0; i < p; ++i) {
      std::vector<double> e(p, 0.0);
      e[i] = 1.0;
      solve_lower(l, p, e);
      solve_upper_from_lower(l, p, e);
      inv_diag[i] = e[i];
    }
  } else {
    std::vector<double> r_mat;
    if (!qr_solve(reg.x, reg.y, rows, p, coef, r_mat))
      throw SingularDesignError("ols_fit: singular or near-singular design");
    // (X'X)^{-1} = R^{-1} R^{-T}; only the diagonal is needed.
    for (std::size_t i = 0; i < p; ++i) {
      std::vector<double> e(p, 0.0);
      e[i] = 1.0;
      for (std::size_t jj = p; jj-- > 0;) {  // solve R' z = e (lower triangular R')
        double sum = e[jj];
        for (std::size_t m = jj + 1; m < p; ++m) sum -= r_mat[jj * p + m] * e[m];
        e[jj] = sum / r_mat[jj * p + jj];
      }
      double q = 0.0;
      for (std::size_t m = 0; m < p; ++m) q += e[m] * e[m];
      inv_diag[i] = q;
    }
  }

  OlsFit fit;
  fit.k = reg.k;
  fit.t_eff = rows;
  fit.alpha_hat = coef[0];
  fit.beta_hat = coef[1];
  fit.phi_hat.assign(coef.begin() + 2, coef.end());
  double phi_sum = 0.0;
  for (double f : fit.phi_hat) phi_sum += f;
  fit.phi1_hat = 1.0 - phi_sum;
  fit.gram = std::move(gram);
  fit.gram_inv_diag = std::move(inv_diag);

  fit.residuals.resize(rows);
  double rss = 0.0, ysq = 0.0;
  for (std::size_t r = 0; r < rows; ++r) {
    const double* xr = &reg.x[r * p];
    double pred = 0.0;
    for (std::size_t i = 0; i < p; ++i) pred += xr[i] * coef[i];
    fit.residuals[r] = reg.y[r] - pred;
    rss += fit.residuals[r] * fit.residuals[r];
    ysq += reg.y[r] * reg.y[r];
  }
  fit.sigma2_hat = rss / static_cast<double>(rows);

  fit.tstats_defined = fit.sigma2_hat > 1e-24 * (1.0 + ysq / static_cast<double>(rows));
  if (fit.tstats_defined) {
    const double sigma_hat = std::sqrt(fit.sigma2_hat);
    fit.t_alpha = fit.alpha_hat / (sigma_hat * std::sqrt(fit.gram_inv_diag[0]));
    fit.t_beta = (fit.beta_hat - 1.0) / (sigma_hat * std::sqrt(fit.gram_inv_diag[1]));
  } else {
    fit.t_alpha = std::numeric_limits<double>::quiet_NaN();
    fit.t_beta = std::numeric_limits<double>::quiet_NaN();
  }
  return fit;
}

double fwl_check(const Regressors& reg, const OlsFit& fit) {
  if (reg.k != 1) throw std::invalid_argument("fwl_check: defined for k = 1 only");
  const std::size_t rows = reg.rows;
  double mean_lag = 0.0;
  for (std::size_t r = 0; r < rows; ++r) mean_lag += reg.x[r * 2 + 1];
  mean_lag /= static_cast<double>(rows);

  double sum_sq_lag = 0.0, sum_sq_diff = 0.0;
  for (std::size_t r = 0; r < rows; ++r) {
    const double lag = reg.x[r * 2 + 1] - mean_lag;
    sum_sq_lag += lag * lag;
    const double diff = reg.y[r] - reg.x[r * 2 + 1];
    sum_sq_diff += diff * diff;
  }
  const double y_last = reg.y[rows - 1] - mean_lag;
  const double y_first = reg.x[1] - mean_lag;  // y_0 of the regression sample
  const double expr = (y_last * y_last - y_first * y_first - sum_sq_diff) / (2.0 * sum_sq_lag);
  return std::abs(expr - (fit.beta_hat - 1.0));
}

LagSelection select_lag(const Series& series, int k_max, InfoCriterion criterion) {
  if (k_max < 1) throw std::invalid_argument("select_lag: k_max must be >= 1");
  series.validate();
  if (series.size() < static_cast<std::size_t>(k_max) + 2)
    throw std::invalid_argument("select_lag: series too short for k_max");

  LagSelection sel;
  sel.criterion_values.assign(static_cast<std::size_t>(k_max),
                              std::numeric_limits<double>::quiet_NaN());
  double best = std::numeric_limits<double>::infinity();
  int best_k = 0;
  for (int k = 1; k <= k_max; ++k) {
    double value;
    try {
      const Regressors reg = build_regressors(series, k, static_cast<std::size_t>(k_max));
      const OlsFit fit = ols_fit(reg);
      const double t_eff = static_cast<double>(reg.rows);
      const double penalty = criterion == InfoCriterion::aic ? 2.0 : std::log(t_eff);
      value = t_eff * std::log(fit.sigma2_hat) + penalty * static_cast<double>(k + 1);
    } catch (const SingularDesignError&) {
      sel.skipped.push_back(k);
      continue;
    }
    sel.criterion_values[static_cast<std::size_t>(k) - 1] = value;
    if (value < best) {
      best = value;
      best_k = k;
    }
  }
  if (best_k == 0) throw SingularDesignError("select_lag: every candidate design was singular");
  sel.k = best_k;
  return sel;
}

}  // namespace tobit
