#pragma once

#include <cstdint>
#include <vector>

#include "crosscal/calibrate.hpp"
#include "crosscal/plane.hpp"
#include "crosscal/vcp.hpp"

namespace crosscal {

struct OptimizerConfig {
  int restarts = 50;
  int max_iter = 500;
  double step0 = 0.1;
  double shrink = 0.5;
  double tol = 1e-10;
  double fd_step = 1e-5;
  std::uint64_t seed = 0;
};

struct OptResult {
  OrientedPlane plane;
  double defect;
  int iterations;
  bool converged;
  std::vector<double> history;  // accepted objective values, nonincreasing
  int restart_index;
};

// Rotation-invariant random oriented plane (Gaussian frame, orthonormalized).
OrientedPlane random_plane(int n, int k, std::uint64_t seed);

// |tau(frame of P)|^2: zero exactly on instanton planes.
double instanton_defect(const VcpStructure& S, const OrientedPlane& P);

// ||restrict(phi, C)||^2: zero exactly when phi vanishes on C.
double brane_residual(const VcpStructure& S, const OrientedPlane& C);

enum class Objective { InstantonDefect, BraneResidual };

// Objective evaluated through the orthonormalization retraction at an
// arbitrary full-rank n x k matrix.
double objective_value(const VcpStructure& S, Objective obj, const Eigen::MatrixXd& X);

// Central finite-difference gradient of objective_value in the frame entries.
Eigen::MatrixXd fd_gradient(const VcpStructure& S, Objective obj, const Eigen::MatrixXd& X,
                            double h);

// Projected-gradient descent with backtracking line search from one random
// start; converged = (defect < config.tol).
OptResult minimize_single(const VcpStructure& S, Objective obj, int k,
                          const OptimizerConfig& config, std::uint64_t seed,
                          int restart_index = 0);

// Best result over config.restarts independent seeded starts (ties broken by
// lowest restart index; identical results for any thread count).
OptResult minimize(const VcpStructure& S, Objective obj, int k, const OptimizerConfig& config,
                   int threads = 1);

// Repeated brane_residual minimization that is expected NOT to converge;
// reports the smallest residual seen.
struct ScanResult {
  double min_residual;
  int runs;
  int converged_runs;
  std::vector<double> final_residuals;  // per restart, in restart order
};
ScanResult nonexistence_scan(const VcpStructure& S, int k, const OptimizerConfig& config,
                             int threads = 1);

}  // namespace crosscal
