#include "crosscal/optimize.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <thread>

#include "crosscal/gram.hpp"

namespace crosscal {

OrientedPlane random_plane(int n, int k, std::uint64_t seed) {
  if (k < 1 || k > n) throw std::invalid_argument("random_plane: need 1 <= k <= n");
  Rng rng(seed);
  return OrientedPlane::from_frame(random_orthonormal_frame(n, k, rng));
}

double instanton_defect(const VcpStructure& S, const OrientedPlane& P) {
  if (P.k() != S.r + 1)
    throw std::invalid_argument("instanton_defect: plane dimension must be r + 1");
  std::vector<Eigen::VectorXd> vs;
  for (int j = 0; j < P.k(); ++j) vs.push_back(P.basis_vector(j));
  const AlternatingTensor t = tau(S, vs);
  return inner(t, t);
}

double brane_residual(const VcpStructure& S, const OrientedPlane& C) {
  if (C.k() < S.phi.grade()) return 0.0;  // restriction is identically zero
  const AlternatingTensor rest = restrict_to(S.phi, C);
  return inner(rest, rest);
}

double objective_value(const VcpStructure& S, Objective obj, const Eigen::MatrixXd& X) {
  auto Q = try_orthonormalize(X, 1e-10);
  if (!Q) return std::numeric_limits<double>::infinity();
  const OrientedPlane P = OrientedPlane::from_frame(*Q);
  return obj == Objective::InstantonDefect ? instanton_defect(S, P) : brane_residual(S, P);
}

Eigen::MatrixXd fd_gradient(const VcpStructure& S, Objective obj, const Eigen::MatrixXd& X,
                            double h) {
  Eigen::MatrixXd G(X.rows(), X.cols());
  Eigen::MatrixXd Y = X;
  for (int c = 0; c < X.cols(); ++c)
    for (int r = 0; r < X.rows(); ++r) {
      Y(r, c) = X(r, c) + h;
      const double fp = objective_value(S, obj, Y);
      Y(r, c) = X(r, c) - h;
      const double fm = objective_value(S, obj, Y);
      Y(r, c) = X(r, c);
      G(r, c) = (fp - fm) / (2.0 * h);
    }
  return G;
}

OptResult minimize_single(const VcpStructure& S, Objective obj, int k,
                          const OptimizerConfig& config, std::uint64_t seed,
                          int restart_index) {
  Rng rng(seed);
  Eigen::MatrixXd X = random_orthonormal_frame(S.n, k, rng);
  double f = objective_value(S, obj, X);
  std::vector<double> history{f};

  // Descend until the line search is exhausted rather than stopping at
  // config.tol: converged runs then land near the numerical floor of the
  // objective, far below tol, which downstream predicate cross-checks rely on.
  int iter = 0;
  double step = config.step0;
  for (; iter < config.max_iter; ++iter) {
    const Eigen::MatrixXd G = fd_gradient(S, obj, X, config.fd_step);
    bool accepted = false;
    while (step >= 1e-14) {
      const Eigen::MatrixXd cand = X - step * G;
      auto Q = try_orthonormalize(cand, 1e-10);
      if (Q) {
        const double fc = objective_value(S, obj, *Q);
        if (fc < f) {
          X = *Q;
          f = fc;
          history.push_back(f);
          accepted = true;
          break;
        }
      }
      step *= config.shrink;
    }
    if (!accepted) break;        // line search exhausted
    step = std::min(2.0 * step, 1.0);
  }
  return {OrientedPlane::from_frame(X), f, iter, f < config.tol, std::move(history),
          restart_index};
}

namespace {

// Runs fn(i) for i in [0, count) over the requested number of threads and
// deposits results into indexed slots, so aggregation order is fixed.
template <typename Fn>
std::vector<std::optional<OptResult>> run_restarts(int count, int threads, Fn fn) {
  std::vector<std::optional<OptResult>> slots(count);
  const int workers = std::max(1, std::min(threads, count));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) slots[i] = fn(i);
    return slots;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= count) return;
        slots[i] = fn(i);
      }
    });
  for (auto& t : pool) t.join();
  return slots;
}

}  // namespace

OptResult minimize(const VcpStructure& S, Objective obj, int k, const OptimizerConfig& config,
                   int threads) {
  if (config.restarts < 1) throw std::invalid_argument("minimize: restarts must be >= 1");
  auto slots = run_restarts(config.restarts, threads, [&](int i) {
    return minimize_single(S, obj, k, config, derive_seed(config.seed, i), i);
  });
  int best = 0;
  for (int i = 1; i < config.restarts; ++i)
    if (slots[i]->defect < slots[best]->defect) best = i;
  return *slots[best];
}

ScanResult nonexistence_scan(const VcpStructure& S, int k, const OptimizerConfig& config,
                             int threads) {
  auto slots = run_restarts(config.restarts, threads, [&](int i) {
    return minimize_single(S, Objective::BraneResidual, k, config, derive_seed(config.seed, i),
                           i);
  });
  ScanResult out{std::numeric_limits<double>::infinity(), config.restarts, 0, {}};
  out.final_residuals.reserve(config.restarts);
  for (const auto& s : slots) {
    out.final_residuals.push_back(s->defect);
    out.min_residual = std::min(out.min_residual, s->defect);
    if (s->converged) ++out.converged_runs;
  }
  return out;
}

}  // namespace crosscal
