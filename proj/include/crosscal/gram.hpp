#pragma once

#include <Eigen/Dense>
#include <optional>
#include <stdexcept>

#include "crosscal/rng.hpp"

namespace crosscal {

// Modified Gram-Schmidt with re-orthogonalization, no pivoting: preserves
// column order and orientation.  Returns nullopt if a column drops below
// `tol` after projection (rank deficiency).
inline std::optional<Eigen::MatrixXd> try_orthonormalize(const Eigen::MatrixXd& X,
                                                         double tol = 1e-12) {
  Eigen::MatrixXd Q = X;
  for (int j = 0; j < Q.cols(); ++j) {
    for (int pass = 0; pass < 2; ++pass)
      for (int i = 0; i < j; ++i) Q.col(j) -= Q.col(i).dot(Q.col(j)) * Q.col(i);
    const double nrm = Q.col(j).norm();
    if (nrm < tol) return std::nullopt;
    Q.col(j) /= nrm;
  }
  return Q;
}

inline Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& X, double tol = 1e-12) {
  auto Q = try_orthonormalize(X, tol);
  if (!Q) throw std::invalid_argument("orthonormalize: rank-deficient input");
  return *Q;
}

// Gram-Schmidt over a candidate list: greedily keeps candidates whose residual
// after projecting out `seed` columns and previously kept candidates exceeds
// `pivot_tol`, until `count` vectors are collected.  Candidates are scanned in
// order (ties broken by position), so coordinate-axis candidates yield
// coordinate complements.  Returns the kept orthonormal columns only.
inline Eigen::MatrixXd orthonormal_complement(const Eigen::MatrixXd& seed,
                                              const Eigen::MatrixXd& candidates, int count,
                                              double pivot_tol = 1e-8) {
  const int n = static_cast<int>(seed.rows());
  Eigen::MatrixXd kept(n, count);
  int got = 0;
  for (int c = 0; c < candidates.cols() && got < count; ++c) {
    Eigen::VectorXd v = candidates.col(c);
    for (int pass = 0; pass < 2; ++pass) {
      for (int i = 0; i < seed.cols(); ++i) v -= seed.col(i).dot(v) * seed.col(i);
      for (int i = 0; i < got; ++i) v -= kept.col(i).dot(v) * kept.col(i);
    }
    const double nrm = v.norm();
    if (nrm < pivot_tol) continue;
    kept.col(got++) = v / nrm;
  }
  if (got < count)
    throw std::invalid_argument("orthonormal_complement: candidates span too small");
  return kept;
}

// Random n x k orthonormal frame from Gaussian draws (rotation-invariant);
// rank-deficient draws (below pivot tolerance 1e-8) are redrawn.
inline Eigen::MatrixXd random_orthonormal_frame(int n, int k, Rng& rng) {
  for (;;) {
    auto Q = try_orthonormalize(rng.gaussian_matrix(n, k), 1e-8);
    if (Q) return *Q;
  }
}

}  // namespace crosscal
