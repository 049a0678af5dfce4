#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tobitadf/model.hpp"

namespace tobit {

/// Small dense square matrix, row-major.
struct SquareMatrix {
  int dim = 0;
  std::vector<double> a;  // dim*dim entries

  double& at(int i, int j) { return a[static_cast<std::size_t>(i * dim + j)]; }
  double at(int i, int j) const { return a[static_cast<std::size_t>(i * dim + j)]; }
};

SquareMatrix matmul(const SquareMatrix& x, const SquareMatrix& y);

/// Operator norm induced by the max norm (maximum absolute row sum).
double inf_norm(const SquareMatrix& m);

/// Spectral radius of a general real matrix, via closed forms for dim <= 2
/// and a normalised repeated-squaring (Gelfand) iteration otherwise.
double spectral_radius(const SquareMatrix& m);

/// The switching companion pair {F_0, F_1} for the first-difference
/// dynamics: first row (phi_1*delta, phi_2, ..., phi_{k-1}), second row
/// delta*e_1, identity on the subdiagonal below.
struct CompanionPair {
  SquareMatrix f0;
  SquareMatrix f1;
  std::vector<double> phi;
};

CompanionPair companion_pair(const std::vector<double>& phi);

/// True iff sum_i |phi_i| < 1 strictly (sufficient for the joint spectral
/// radius of {F_0, F_1} to be below one).
bool sufficient_condition(const std::vector<double>& phi);

struct JsrCertificate {
  double lower = 0.0;
  double upper = 0.0;
  int depth = 0;            // longest product length explored
  bool conclusive = false;  // upper - lower <= tol
  std::string notes;
};

/// Certified bounds on the joint spectral radius of an arbitrary matrix
/// pair.  Lower bounds come from spectral radii of explored products,
/// upper bounds from max-norm maxima per product length; subtrees whose
/// norm can no longer affect either bound are pruned.  `norm_cap`, when
/// positive, is an externally known upper bound folded into the result.
JsrCertificate jsr_bounds_pair(const SquareMatrix& m0, const SquareMatrix& m1, int depth,
                               double tol, double norm_cap = 0.0);

/// JSR certificate for the companion pair of `phi`; applies the
/// Phi^{1/(k-1)} cap when sum |phi_i| = Phi < 1.  k = 1 yields the empty
/// certificate with JSR 0.
JsrCertificate jsr_bounds(const CompanionPair& pair, int depth = 14, double tol = 1e-3);

struct ExplosionReport {
  std::size_t replications = 0;
  double explosive_fraction = 0.0;
  bool classified_explosive = false;
  double growth_ratio_median = 0.0;  // second-half vs first-half max |dy|
  double max_dy_median = 0.0;
  double max_dy_q90 = 0.0;
  double threshold = 10.0;
};

/// Simulates the Tobit DGP and classifies trajectories as explosive when
/// the half-sample growth ratio of max |dy_t| exceeds `threshold` (or the
/// path leaves the representable range) in more than half the replications.
ExplosionReport explosion_probe(const ModelParams& params, std::size_t T,
                                std::size_t replications, std::uint64_t seed,
                                double threshold = 10.0, int threads = 0);

}  // namespace tobit
