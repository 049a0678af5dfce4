#include "tobitadf/limit.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>

#include "tobitadf/parallel.hpp"

namespace tobit {

void Theta::validate() const {
  if (!(b0 >= 0.0)) throw std::invalid_argument("Theta: b0 must be >= 0");
  if (!(sigma > 0.0)) throw std::invalid_argument("Theta: sigma must be > 0");
  if (!std::isfinite(a) || !std::isfinite(c)) throw std::invalid_argument("Theta: non-finite");
}

GridPath simulate_K(const Theta& theta, std::size_t n, const std::vector<double>& increments) {
  theta.validate();
  if (n < 1) throw std::invalid_argument("simulate_K: n must be >= 1");
  if (increments.size() != n) throw std::invalid_argument("simulate_K: need n increments");

  GridPath path;
  path.steps = n;
  path.values.resize(n + 1);
  path.values[0] = theta.b0;

  const double inv_n = 1.0 / static_cast<double>(n);
  const double root_inv_n = std::sqrt(inv_n);
  const double decay = std::exp(-theta.c * inv_n);
  double weight = 1.0;  // e^{-c s/n}
  double drift = 0.0;
  double stoch = 0.0;
  for (std::size_t s = 1; s <= n; ++s) {
    weight *= decay;
    drift += weight;
    stoch += weight * increments[s - 1];
    path.values[s] = theta.b0 + theta.a * inv_n * drift + theta.sigma * root_inv_n * stoch;
  }
  return path;
}

GridPath simulate_K(const Theta& theta, std::size_t n, RandomStream& stream) {
  std::vector<double> xi(n);
  stream.fill_normal(xi);
  return simulate_K(theta, n, xi);
}

GridPath regulate(const GridPath& path, double c) {
  if (path.values.size() != path.steps + 1)
    throw std::invalid_argument("regulate: malformed grid path");
  GridPath out;
  out.steps = path.steps;
  out.values.resize(path.values.size());
  const double grow = std::exp(c / static_cast<double>(path.steps));
  double scale = 1.0;  // e^{c j/n}
  double running_max = 0.0;
  for (std::size_t j = 0; j < path.values.size(); ++j) {
    const double neg = -path.values[j];
    if (neg > running_max) running_max = neg;
    out.values[j] = scale * (path.values[j] + running_max);
    scale *= grow;
  }
  return out;
}

namespace {

Theta transform_theta(const Theta& theta, double phi1) {
  if (!(phi1 > 0.0)) throw std::invalid_argument("phi(1) must be > 0");
  Theta t = theta;
  t.b0 = phi1 * theta.b0;
  t.c = theta.c / phi1;
  return t;
}

}  // namespace

GridPath simulate_Y(const Theta& theta, double phi1, std::size_t n,
                    const std::vector<double>& increments) {
  const Theta theta_phi = transform_theta(theta, phi1);
  GridPath j = regulate(simulate_K(theta_phi, n, increments), theta_phi.c);
  for (double& v : j.values) v /= phi1;
  return j;
}

GridPath simulate_Y(const Theta& theta, double phi1, std::size_t n, RandomStream& stream) {
  std::vector<double> xi(n);
  stream.fill_normal(xi);
  return simulate_Y(theta, phi1, n, xi);
}

double limit_tstat_draw(const Theta& theta, double phi1, std::size_t n,
                        RandomStream& stream, std::size_t* rejected) {
  if (n < 100) throw std::invalid_argument("limit_tstat_draw: n must be >= 100");
  const Theta tp = transform_theta(theta, phi1);

  const double inv_n = 1.0 / static_cast<double>(n);
  const double root_inv_n = std::sqrt(inv_n);
  const double decay = std::exp(-tp.c * inv_n);
  const double grow = std::exp(tp.c * inv_n);

  std::vector<double> xi(n);
  for (;;) {
    stream.fill_normal(xi);

    // Single pass: K_j incrementally, its regulated counterpart J_j, and the
    // left-point functionals int J, int J^2, int J dW.
    double weight = 1.0, drift = 0.0, stoch = 0.0;
    double scale = 1.0, running_max = 0.0;
    double int_j = 0.0, int_j2 = 0.0, int_jdw = 0.0;
    double j_cur = tp.b0;  // J_0 (b0 >= 0 so the regulator starts at 0)
    for (std::size_t s = 1; s <= n; ++s) {
      int_j += j_cur;
      int_j2 += j_cur * j_cur;
      int_jdw += j_cur * xi[s - 1];

      weight *= decay;
      drift += weight;
      stoch += weight * xi[s - 1];
      const double k = tp.b0 + tp.a * inv_n * drift + tp.sigma * root_inv_n * stoch;
      if (-k > running_max) running_max = -k;
      scale *= grow;
      j_cur = scale * (k + running_max);
    }
    int_j *= inv_n;
    int_j2 *= inv_n;
    int_jdw *= root_inv_n;

    const double det = int_j2 - int_j * int_j;
    if (det <= 1e-14 * (1.0 + int_j2)) {
      if (rejected) ++*rejected;
      continue;
    }
    const double u1 = j_cur - tp.b0 - tp.c * int_j - tp.a;
    const double u2 = tp.sigma * int_jdw;
    return (u2 - int_j * u1) / (tp.sigma * std::sqrt(det));
  }
}

std::vector<double> limit_tstat_sample(const Theta& theta, double phi1, std::size_t n,
                                       std::size_t R, std::uint64_t seed,
                                       std::uint64_t stream_offset, int threads,
                                       std::size_t* rejected) {
  std::vector<double> out(R);
  std::atomic<std::size_t> reject_count{0};
  parallel_for(R, threads, [&](std::size_t r) {
    RandomStream stream(seed, stream_offset + r);
    std::size_t local = 0;
    out[r] = limit_tstat_draw(theta, phi1, n, stream, &local);
    if (local) reject_count.fetch_add(local, std::memory_order_relaxed);
  });
  if (rejected) *rejected = reject_count.load();
  return out;
}

}  // namespace tobit
