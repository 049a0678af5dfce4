#include "tobitadf/model.hpp"

#include <cmath>
#include <stdexcept>

namespace tobit {

void ModelParams::validate() const {
  if (k < 1) throw std::invalid_argument("ModelParams: k must be >= 1");
  if (static_cast<int>(phi.size()) != k - 1)
    throw std::invalid_argument("ModelParams: need k-1 phi coefficients");
  if (!(sigma >= 0.0)) throw std::invalid_argument("ModelParams: sigma must be >= 0");
  if (init.empty() || static_cast<int>(init.size()) > k)
    throw std::invalid_argument("ModelParams: need between 1 and k initial levels");
  for (double v : init) {
    if (!std::isfinite(v)) throw std::invalid_argument("ModelParams: non-finite initial level");
    if (v < lower_bound)
      throw std::invalid_argument("ModelParams: initial level below the bound");
  }
  if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(lower_bound))
    throw std::invalid_argument("ModelParams: non-finite parameter");
  for (double p : phi)
    if (!std::isfinite(p)) throw std::invalid_argument("ModelParams: non-finite phi");
}

std::vector<double> ModelParams::padded_init() const {
  std::vector<double> full(static_cast<std::size_t>(k), init.back());
  // Most recent provided values keep their position at the end.
  for (std::size_t i = 0; i < init.size(); ++i)
    full[full.size() - init.size() + i] = init[i];
  return full;
}

ModelParams LocalParams::to_model(int k, std::vector<double> phi, double sigma,
                                  double lower_bound) const {
  if (T == 0) throw std::invalid_argument("LocalParams: T must be positive");
  if (b0 < 0.0) throw std::invalid_argument("LocalParams: b0 must be >= 0");
  ModelParams p;
  p.k = k;
  p.phi = std::move(phi);
  p.sigma = sigma;
  p.lower_bound = lower_bound;
  const double root_t = std::sqrt(static_cast<double>(T));
  p.alpha = a / root_t;
  p.beta = std::exp(c / static_cast<double>(T));
  p.init = {b0 * root_t + lower_bound};
  return p;
}

void Series::validate() const {
  if (values.empty()) throw std::invalid_argument("Series: empty values");
  if (!dates.empty() && dates.size() != values.size())
    throw std::invalid_argument("Series: dates/values length mismatch");
  for (double v : values)
    if (!std::isfinite(v)) throw std::invalid_argument("Series: non-finite value");
}

namespace {

void check_innovations(const std::vector<double>& u) {
  if (u.empty()) throw std::invalid_argument("innovation sequence must be nonempty");
  for (double v : u)
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite innovation");
}

}  // namespace

SimOutput simulate_tobit(const ModelParams& params, const std::vector<double>& innovations) {
  params.validate();
  check_innovations(innovations);

  const int k = params.k;
  const double bound = params.lower_bound;
  const double alpha_shifted = params.alpha + (params.beta - 1.0) * bound;
  std::vector<double> lags = params.padded_init();  // levels y_{t-k} .. y_{t-1}
  for (double& v : lags) v -= bound;

  const std::size_t T = innovations.size();
  SimOutput out;
  out.y.resize(T);
  out.y_minus.resize(T);
  out.innovations = innovations;

  for (std::size_t t = 0; t < T; ++t) {
    double arg = alpha_shifted + params.beta * lags[static_cast<std::size_t>(k) - 1];
    for (int i = 1; i < k; ++i) {
      const std::size_t j = static_cast<std::size_t>(k - i);
      arg += params.phi[static_cast<std::size_t>(i) - 1] * (lags[j] - lags[j - 1]);
    }
    arg += innovations[t];
    const double yt = arg > 0.0 ? arg : 0.0;
    out.y_minus[t] = arg < 0.0 ? arg : 0.0;
    out.y[t] = yt + bound;
    for (int i = 0; i + 1 < k; ++i) lags[static_cast<std::size_t>(i)] = lags[static_cast<std::size_t>(i) + 1];
    lags[static_cast<std::size_t>(k) - 1] = yt;
  }
  return out;
}

std::vector<double> simulate_linear_ar(const ModelParams& params,
                                       const std::vector<double>& innovations) {
  params.validate();
  check_innovations(innovations);

  const int k = params.k;
  std::vector<double> lags = params.padded_init();
  const std::size_t T = innovations.size();
  std::vector<double> y(T);
  for (std::size_t t = 0; t < T; ++t) {
    double arg = params.alpha + params.beta * lags[static_cast<std::size_t>(k) - 1];
    for (int i = 1; i < k; ++i) {
      const std::size_t j = static_cast<std::size_t>(k - i);
      arg += params.phi[static_cast<std::size_t>(i) - 1] * (lags[j] - lags[j - 1]);
    }
    arg += innovations[t];
    y[t] = arg;
    for (int i = 0; i + 1 < k; ++i) lags[static_cast<std::size_t>(i)] = lags[static_cast<std::size_t>(i) + 1];
    lags[static_cast<std::size_t>(k) - 1] = arg;
  }
  return y;
}

std::vector<double> simulate_limited_ar(const std::vector<double>& phi, double c,
                                        std::size_t T, const std::vector<double>& innovations) {
  if (T == 0) throw std::invalid_argument("simulate_limited_ar: T must be >= 1");
  if (innovations.size() != T)
    throw std::invalid_argument("simulate_limited_ar: need exactly T innovations");
  check_innovations(innovations);
  double abs_sum = 0.0;
  for (double p : phi) abs_sum += std::abs(p);
  if (!phi.empty() && abs_sum >= 1.0)
    throw std::invalid_argument("simulate_limited_ar: unstable filter (sum |phi_i| >= 1)");

  // eps_t = u_t + sum_i phi_i eps_{t-i}, zero pre-sample.
  const std::size_t p = phi.size();
  std::vector<double> eps(T);
  for (std::size_t t = 0; t < T; ++t) {
    double e = innovations[t];
    for (std::size_t i = 0; i < p && i < t; ++i) e += phi[i] * eps[t - 1 - i];
    eps[t] = e;
  }

  const double rho = 1.0 + c / static_cast<double>(T);
  std::vector<double> x(T);
  double prev = 0.0;
  for (std::size_t t = 0; t < T; ++t) {
    const double arg = prev * rho + eps[t];
    prev = arg > 0.0 ? arg : 0.0;
    x[t] = prev;
  }
  return x;
}

std::pair<Series, ShiftRecord> shift_bound(const Series& series) {
  series.validate();
  if (!std::isfinite(series.lower_bound))
    throw std::invalid_argument("shift_bound: non-finite bound");
  Series shifted = series;
  for (double& v : shifted.values) v -= series.lower_bound;
  shifted.lower_bound = 0.0;
  ShiftRecord rec;
  rec.bound = series.lower_bound;
  rec.ell = series.lower_bound / std::sqrt(static_cast<double>(series.size()));
  return {std::move(shifted), rec};
}

std::vector<double> make_innovations(double sigma, InnovationLaw law, std::size_t T,
                                     RandomStream& stream) {
  std::vector<double> u(T);
  if (law == InnovationLaw::gaussian && sigma == 1.0) {
    stream.fill_normal(u);
  } else {
    for (auto& v : u) v = sigma * stream.innovation(law);
  }
  return u;
}

}  // namespace tobit
