#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "immunet/errors.hpp"
#include "immunet/graph.hpp"

namespace immunet {

/// Principal eigenpair of the adjacency matrix.
struct EigenPair {
  double lambda = 0.0;
  std::vector<double> u;        // unit 2-norm; nonnegative on connected graphs
  double residual = 0.0;        // ||A u - lambda u||_2
  std::uint32_t iterations = 0;
};

struct PowerIterationOptions {
  double tol = 1e-10;
  std::uint32_t max_iter = 10000;
  std::uint64_t rng_seed = 0;  // only consulted if the iterate degenerates
};

/// Thrown when the iteration hits max_iter; carries the best iterate so far.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& msg, EigenPair best)
      : std::runtime_error(msg), best_(std::move(best)) {}
  const EigenPair& best() const { return best_; }

 private:
  EigenPair best_;
};

/// Power iteration on A with a +I shift so that bipartite spectra
/// (lambda_min = -lambda_max) cannot stall the iteration. The start vector is
/// all-ones normalized, which keeps the iterate entrywise nonnegative and
/// guarantees overlap with the Perron vector. lambda and the residual are
/// measured against A itself.
inline EigenPair power_iteration(const Graph& g, const PowerIterationOptions& opts = {}) {
  const NodeIndex n = g.node_count();
  if (n == 0) throw ContractError("power_iteration: empty graph");
  if (!(opts.tol > 0.0)) throw ContractError("power_iteration: tol must be > 0");
  if (opts.max_iter < 1) throw ContractError("power_iteration: max_iter must be >= 1");

  std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
  std::vector<double> y(n);
  EigenPair best;
  best.residual = std::numeric_limits<double>::infinity();

  std::uint64_t restart_state = opts.rng_seed;
  for (std::uint32_t iter = 1; iter <= opts.max_iter; ++iter) {
    for (NodeIndex v = 0; v < n; ++v) {
      double sum = 0.0;
      for (NodeIndex w : g.neighbors(v)) sum += x[w];
      y[v] = sum;
    }
    double lambda = 0.0;
    for (NodeIndex v = 0; v < n; ++v) lambda += x[v] * y[v];
    double residual_sq = 0.0;
    for (NodeIndex v = 0; v < n; ++v) {
      double d = y[v] - lambda * x[v];
      residual_sq += d * d;
    }
    double residual = std::sqrt(residual_sq);
    if (residual < best.residual) {
      best.lambda = lambda;
      best.u = x;
      best.residual = residual;
      best.iterations = iter;
    }
    if (residual <= opts.tol) {
      double sum = 0.0;
      for (double v : x) sum += v;
      if (sum < 0.0)
        for (double& v : x) v = -v;  // Perron sign convention
      return EigenPair{lambda, std::move(x), residual, iter};
    }

    // shifted step: z = (A + I) x
    double norm_sq = 0.0;
    for (NodeIndex v = 0; v < n; ++v) {
      y[v] += x[v];
      norm_sq += y[v] * y[v];
    }
    double norm = std::sqrt(norm_sq);
    if (norm < 1e-250) {
      // degenerate iterate; restart from a seeded pseudo-random vector
      double rs = 0.0;
      for (NodeIndex v = 0; v < n; ++v) {
        restart_state += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = restart_state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        z ^= z >> 31;
        x[v] = 0.5 + 0.5 * static_cast<double>(z >> 11) * 0x1.0p-53;
        rs += x[v] * x[v];
      }
      rs = std::sqrt(rs);
      for (NodeIndex v = 0; v < n; ++v) x[v] /= rs;
      continue;
    }
    for (NodeIndex v = 0; v < n; ++v) x[v] = y[v] / norm;
  }

  throw ConvergenceError("power_iteration: no convergence after " +
                             std::to_string(opts.max_iter) + " iterations (best residual " +
                             std::to_string(best.residual) + ")",
                         std::move(best));
}

}  // namespace immunet
