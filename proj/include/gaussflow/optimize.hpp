#pragma once

// Derivative-free maximization: compass (coordinate pattern) search with
// expand-on-success / shrink-on-failure step control, plus a deterministic
// multistart driver. Objectives may signal an infeasible probe by returning
// -infinity; such probes are never accepted.

#include <Eigen/Dense>

#include <cstdint>
#include <limits>
#include <vector>

namespace gaussflow {

struct PatternSearchOptions {
  double initial_step = 0.25;
  double step_tol = 1e-6;       // stop once the step drops below this
  double expand = 2.0;          // growth after an improving sweep
  double shrink = 0.5;          // decay after a failed sweep
  double max_step_factor = 8.0; // cap relative to initial_step
  std::int64_t max_evals = 20000;
  Eigen::VectorXd scale;        // per-coordinate step scale; empty = isotropic
};

struct OptimResult {
  Eigen::VectorXd x;
  double value = -std::numeric_limits<double>::infinity();
  std::int64_t evals = 0;
};

// Maximizes f : R^n -> R from x0. Probes all 2n compass directions each
// sweep and moves to the best improving point.
template <class F>
OptimResult maximize_pattern(F&& f, const Eigen::VectorXd& x0, const PatternSearchOptions& opts = {}) {
  const Eigen::Index n = x0.size();
  Eigen::VectorXd scale = opts.scale.size() ? opts.scale : Eigen::VectorXd::Ones(n);
  OptimResult res;
  res.x = x0;
  res.value = f(res.x);
  ++res.evals;

  double step = opts.initial_step;
  const double step_cap = opts.initial_step * opts.max_step_factor;
  while (step >= opts.step_tol && res.evals < opts.max_evals) {
    double best_value = res.value;
    Eigen::VectorXd best_x = res.x;
    for (Eigen::Index i = 0; i < n && res.evals < opts.max_evals; ++i) {
      for (double sign : {1.0, -1.0}) {
        Eigen::VectorXd cand = res.x;
        cand[i] += sign * step * scale[i];
        const double v = f(cand);
        ++res.evals;
        if (v > best_value) {
          best_value = v;
          best_x = std::move(cand);
        }
      }
    }
    if (best_value > res.value) {
      res.value = best_value;
      res.x = std::move(best_x);
      step = std::min(step * opts.expand, step_cap);
    } else {
      step *= opts.shrink;
    }
  }
  return res;
}

// Runs pattern search from every start; ties keep the earliest start, so the
// result is deterministic for a fixed start list.
template <class F>
OptimResult maximize_multistart(F&& f, const std::vector<Eigen::VectorXd>& starts,
                                const PatternSearchOptions& opts = {}) {
  OptimResult best;
  for (const auto& s : starts) {
    OptimResult r = maximize_pattern(f, s, opts);
    r.evals += best.evals;
    if (r.value > best.value) {
      best = std::move(r);
    } else {
      best.evals = r.evals;
    }
  }
  return best;
}

}  // namespace gaussflow
