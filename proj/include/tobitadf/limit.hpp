#pragma once

#include <cstddef>
#include <vector>

#include "tobitadf/rng.hpp"

namespace tobit {

/// Parameters of the limit process K(r) = b0 + a*int_0^r e^{-cs} ds
///                                      + sigma*int_0^r e^{-cs} dW(s).
struct Theta {
  double a = 0.0;
  double b0 = 0.0;     // >= 0
  double c = 0.0;
  double sigma = 1.0;  // > 0

  void validate() const;
};

/// A path sampled on the uniform grid r = j/n, j = 0..n.
struct GridPath {
  std::size_t steps = 0;       // n
  std::vector<double> values;  // n + 1 entries
};

/// Euler-Ito discretisation of K on an n-point grid; `increments` supplies
/// the i.i.d. standard normal xi_1..xi_n (so deterministic tests can
/// suppress the stochastic term).
GridPath simulate_K(const Theta& theta, std::size_t n, const std::vector<double>& increments);

/// Draws the increments from `stream`.
GridPath simulate_K(const Theta& theta, std::size_t n, RandomStream& stream);

/// Skorokhod regulation with exponential rescaling:
/// J_j = e^{c j/n} ( K_j + max_{i<=j} [-K_i]_+ ).  Output is >= 0 everywhere.
GridPath regulate(const GridPath& path, double c);

/// AR(k) limit process Y = phi1^{-1} J_{theta_phi} with
/// theta_phi = [a, phi1*b0, c/phi1]; phi1 = phi(1) must be positive.
GridPath simulate_Y(const Theta& theta, double phi1, std::size_t n,
                    const std::vector<double>& increments);
GridPath simulate_Y(const Theta& theta, double phi1, std::size_t n, RandomStream& stream);

/// One draw from the limiting distribution of the t-statistic on the level
/// coefficient: left-point sums of int J, int J^2 and the Ito sum int J dW
/// (coupled to the increments that drove K), assembled into
/// (u2 - int J * u1) / (sigma * sqrt(int J^2 - (int J)^2)).
/// Degenerate Gram draws are resampled; `rejected` (optional) counts them.
double limit_tstat_draw(const Theta& theta, double phi1, std::size_t n,
                        RandomStream& stream, std::size_t* rejected = nullptr);

/// R independent draws of the limiting t-statistic, replication-parallel.
/// Draw r uses the substream (seed, stream_offset + r).
std::vector<double> limit_tstat_sample(const Theta& theta, double phi1, std::size_t n,
                                       std::size_t R, std::uint64_t seed,
                                       std::uint64_t stream_offset = 0, int threads = 0,
                                       std::size_t* rejected = nullptr);

}  // namespace tobit
