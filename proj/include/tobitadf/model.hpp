#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "tobitadf/rng.hpp"

namespace tobit {

/// Parameters of the censored dynamic Tobit AR(k) in ADF form:
///   y_t = max{ L, alpha + beta*y_{t-1} + sum_i phi_i * dy_{t-i} + u_t }.
struct ModelParams {
  int k = 1;                      // lag order, >= 1
  double alpha = 0.0;             // intercept
  double beta = 1.0;              // level coefficient
  std::vector<double> phi;        // k-1 difference coefficients
  double sigma = 1.0;             // innovation standard deviation, >= 0
  double lower_bound = 0.0;       // censoring point L
  std::vector<double> init;       // initial levels, most recent last (y_0)

  void validate() const;          // throws std::invalid_argument

  /// Initial levels padded to length k (missing older values default to
  /// y_0, the flat start).  Most recent value last.
  std::vector<double> padded_init() const;
};

/// Local-to-unity parameterisation: alpha = a/sqrt(T), beta = exp(c/T),
/// y_0 = b0*sqrt(T) + L.
struct LocalParams {
  double a = 0.0;
  double b0 = 0.0;   // >= 0
  double c = 0.0;
  std::size_t T = 0;

  ModelParams to_model(int k = 1, std::vector<double> phi = {}, double sigma = 1.0,
                       double lower_bound = 0.0) const;
};

/// An observed series with an optional date index and a declared bound.
struct Series {
  std::vector<double> values;
  std::vector<std::string> dates;  // empty or same length as values
  double lower_bound = 0.0;

  std::size_t size() const { return values.size(); }
  void validate() const;
};

struct SimOutput {
  std::vector<double> y;        // simulated levels, all >= L
  std::vector<double> y_minus;  // censored shortfalls, all <= 0
  std::vector<double> innovations;
};

/// Record of the affine change of variables that moves the bound to zero:
/// y~ = y - L, with local parameters mapping a~ = a + c*ell, b0~ = b0 - ell,
/// where ell = L / sqrt(T).
struct ShiftRecord {
  double bound = 0.0;
  double ell = 0.0;
};

/// Exact recursion of the censored Tobit model.  Internally the bound is
/// shifted to zero (alpha~ = alpha + (beta-1)*L) and L is added back, which
/// makes the bound-shift equivariance hold bit-for-bit.
SimOutput simulate_tobit(const ModelParams& params, const std::vector<double>& innovations);

/// The same recursion without the censoring max (ADF-form linear AR).
std::vector<double> simulate_linear_ar(const ModelParams& params,
                                       const std::vector<double>& innovations);

/// Limited (regulated) autoregression of Cavaliere/Cavaliere-Xu type:
/// eps_t from the stationary filter phi(L) eps_t = u_t with zero pre-sample,
/// then x_t = [x_{t-1}(1 + c/T) + eps_t]_+ from x_0 = 0.
/// Requires sum |phi_i| < 1.
std::vector<double> simulate_limited_ar(const std::vector<double>& phi, double c,
                                        std::size_t T, const std::vector<double>& innovations);

/// Subtract the declared bound, returning the zero-bound series and the
/// reparameterisation record.
std::pair<Series, ShiftRecord> shift_bound(const Series& series);

/// sigma-scaled innovation draws for a DGP.
std::vector<double> make_innovations(double sigma, InnovationLaw law, std::size_t T,
                                     RandomStream& stream);

}  // namespace tobit
