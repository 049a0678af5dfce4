#include "tobitadf/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "tobitadf/parallel.hpp"

namespace tobit {

SquareMatrix matmul(const SquareMatrix& x, const SquareMatrix& y) {
  if (x.dim != y.dim) throw std::invalid_argument("matmul: dimension mismatch");
  SquareMatrix out;
  out.dim = x.dim;
  out.a.assign(x.a.size(), 0.0);
  const int n = x.dim;
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < n; ++l) {
      const double v = x.at(i, l);
      if (v == 0.0) continue;
      for (int j = 0; j < n; ++j) out.at(i, j) += v * y.at(l, j);
    }
  return out;
}

double inf_norm(const SquareMatrix& m) {
  double best = 0.0;
  for (int i = 0; i < m.dim; ++i) {
    double row = 0.0;
    for (int j = 0; j < m.dim; ++j) row += std::abs(m.at(i, j));
    best = std::max(best, row);
  }
  return best;
}

double spectral_radius(const SquareMatrix& m) {
  const int n = m.dim;
  if (n == 0) return 0.0;
  if (n == 1) return std::abs(m.a[0]);
  if (n == 2) {
    const double tr = m.at(0, 0) + m.at(1, 1);
    const double det = m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0);
    const double disc = tr * tr - 4.0 * det;
    if (disc >= 0.0) {
      const double root = std::sqrt(disc);
      return std::max(std::abs((tr + root) / 2.0), std::abs((tr - root) / 2.0));
    }
    return std::sqrt(det);  // complex pair, |lambda|^2 = det
  }
  // Gelfand iteration with normalised repeated squaring:
  // B_j ~ M^{2^j} / e^{a_j}, rho = lim (a_j + log||B_j||) / 2^j.  A fixed
  // 55 squarings reach m = 2^55, where ||M^m||^{1/m} sits within machine
  // precision of the spectral radius; no early exit, because equal-modulus
  // eigenvalue sets can hold consecutive estimates equal far from the limit.
  SquareMatrix b = m;
  double log_accum = 0.0;
  for (int j = 0; j < 55; ++j) {
    const double norm = inf_norm(b);
    if (norm == 0.0) return 0.0;
    for (double& v : b.a) v /= norm;
    b = matmul(b, b);
    log_accum = 2.0 * (log_accum + std::log(norm));
  }
  const double final_norm = inf_norm(b);
  if (final_norm == 0.0) return 0.0;
  return std::exp((log_accum + std::log(final_norm)) / std::exp2(55));
}

CompanionPair companion_pair(const std::vector<double>& phi) {
  const int d = static_cast<int>(phi.size());
  CompanionPair pair;
  pair.phi = phi;
  for (SquareMatrix* m : {&pair.f0, &pair.f1}) {
    m->dim = d;
    m->a.assign(static_cast<std::size_t>(d) * static_cast<std::size_t>(d), 0.0);
  }
  if (d == 0) return pair;
  const auto fill = [&](SquareMatrix& m, double delta) {
    m.at(0, 0) = phi[0] * delta;
    for (int j = 1; j < d; ++j) m.at(0, j) = phi[static_cast<std::size_t>(j)];
    if (d >= 2) m.at(1, 0) = delta;
    for (int i = 2; i < d; ++i) m.at(i, i - 1) = 1.0;
  };
  fill(pair.f0, 0.0);
  fill(pair.f1, 1.0);
  return pair;
}

bool sufficient_condition(const std::vector<double>& phi) {
  double sum = 0.0;
  for (double p : phi) sum += std::abs(p);
  return sum < 1.0;
}

JsrCertificate jsr_bounds_pair(const SquareMatrix& m0, const SquareMatrix& m1, int depth,
                               double tol, double norm_cap) {
  if (depth < 1) throw std::invalid_argument("jsr_bounds: depth must be >= 1");
  if (m0.dim != m1.dim) throw std::invalid_argument("jsr_bounds: dimension mismatch");

  JsrCertificate cert;
  cert.depth = depth;
  if (m0.dim == 0) {
    cert.conclusive = true;
    cert.notes = "empty matrices; JSR defined as 0";
    return cert;
  }

  const double gen_norm = std::max(inf_norm(m0), inf_norm(m1));
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
  if (norm_cap > 0.0) upper = norm_cap;

  std::vector<SquareMatrix> level = {m0, m1};
  for (int d = 1; d <= depth; ++d) {
    cert.depth = d;
    double level_norm_max = 0.0;
    for (const SquareMatrix& m : level) {
      lower = std::max(lower, std::pow(spectral_radius(m), 1.0 / d));
      level_norm_max = std::max(level_norm_max, inf_norm(m));
    }
    // Pruned subtrees are covered by the running lower bound (see prune
    // rule below), so the level maximum may be floored by lower^d.
    const double covered = std::max(level_norm_max, std::pow(lower, d));
    upper = std::min(upper, std::pow(covered, 1.0 / d));
    if (d == depth || upper - lower <= tol) break;

    std::vector<SquareMatrix> next;
    next.reserve(level.size() * 2);
    for (const SquareMatrix& m : level) {
      // A product subtree cannot move either bound once every extension's
      // norm is dominated by lower^(length); the condition is log-affine in
      // the target length so the two endpoints suffice.
      const double norm = inf_norm(m);
      if (norm == 0.0) continue;
      if (lower > 0.0 && gen_norm > 0.0) {
        const double near = norm * gen_norm;                            // length d+1
        const double far = norm * std::pow(gen_norm, depth - d);        // length depth
        if (near <= std::pow(lower, d + 1) && far <= std::pow(lower, depth)) continue;
      }
      next.push_back(matmul(m, m0));
      next.push_back(matmul(m, m1));
    }
    if (next.empty()) break;
    level = std::move(next);
  }

  if (!std::isfinite(upper)) upper = gen_norm;  // depth-1 norm bound at worst
  cert.lower = lower;
  cert.upper = std::max(upper, lower);
  cert.conclusive = (cert.upper - cert.lower) <= tol;
  if (!cert.conclusive) cert.notes = "depth exhausted with gap above tol";
  return cert;
}

JsrCertificate jsr_bounds(const CompanionPair& pair, int depth, double tol) {
  double cap = 0.0;
  double abs_sum = 0.0;
  for (double p : pair.phi) abs_sum += std::abs(p);
  const std::size_t k_minus_1 = pair.phi.size();
  if (k_minus_1 >= 1 && abs_sum < 1.0)
    cap = std::pow(abs_sum, 1.0 / static_cast<double>(k_minus_1));
  JsrCertificate cert = jsr_bounds_pair(pair.f0, pair.f1, depth, tol, cap);
  if (cap > 0.0 && cert.notes.empty()) cert.notes = "upper capped by Phi^{1/(k-1)}";
  return cert;
}

namespace {

double quantile_of_sorted(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return std::numeric_limits<double>::quiet_NaN();
  const std::size_t idx =
      std::min(sorted.size() - 1,
               static_cast<std::size_t>(std::ceil(q * static_cast<double>(sorted.size()))) -
                   (q > 0.0 ? 1 : 0));
  return sorted[idx];
}

}  // namespace

ExplosionReport explosion_probe(const ModelParams& params, std::size_t T,
                                std::size_t replications, std::uint64_t seed,
                                double threshold, int threads) {
  if (replications < 1) throw std::invalid_argument("explosion_probe: replications >= 1");
  params.validate();

  std::vector<double> ratios(replications);
  std::vector<double> maxima(replications);
  std::vector<char> explosive(replications, 0);

  parallel_for(replications, threads, [&](std::size_t r) {
    RandomStream stream(seed, r);
    const std::vector<double> u = make_innovations(params.sigma, InnovationLaw::gaussian, T, stream);
    const SimOutput sim = simulate_tobit(params, u);

    double first_half = 0.0, second_half = 0.0;
    bool blew_up = false;
    double prev = params.padded_init().back();
    for (std::size_t t = 0; t < T; ++t) {
      const double dy = sim.y[t] - prev;
      prev = sim.y[t];
      if (!std::isfinite(dy) || std::abs(dy) > 1e100) {
        blew_up = true;
        break;
      }
      if (t < T / 2)
        first_half = std::max(first_half, std::abs(dy));
      else
        second_half = std::max(second_half, std::abs(dy));
    }
    double ratio;
    if (blew_up)
      ratio = std::numeric_limits<double>::infinity();
    else if (first_half == 0.0)
      ratio = second_half == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
    else
      ratio = second_half / first_half;
    ratios[r] = ratio;
    maxima[r] = blew_up ? std::numeric_limits<double>::infinity()
                        : std::max(first_half, second_half);
    explosive[r] = (blew_up || ratio > threshold) ? 1 : 0;
  });

  ExplosionReport report;
  report.replications = replications;
  report.threshold = threshold;
  std::size_t count = 0;
  for (char e : explosive) count += static_cast<std::size_t>(e);
  report.explosive_fraction = static_cast<double>(count) / static_cast<double>(replications);
  report.classified_explosive = report.explosive_fraction > 0.5;
  std::sort(ratios.begin(), ratios.end());
  std::sort(maxima.begin(), maxima.end());
  report.growth_ratio_median = quantile_of_sorted(ratios, 0.5);
  report.max_dy_median = quantile_of_sorted(maxima, 0.5);
  report.max_dy_q90 = quantile_of_sorted(maxima, 0.9);
  return report;
}

}  // namespace tobit
