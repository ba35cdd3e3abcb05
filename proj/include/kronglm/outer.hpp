#pragma once

#include <functional>
#include <vector>

#include "kronglm/inner.hpp"

namespace kronglm {

enum class WeightMode { exact, unit, tensor_approx };

const char* weight_mode_name(WeightMode m);
WeightMode weight_mode_from_name(const std::string& name);

struct OuterConfig {
  Index max_outer = 100;
  double armijo_alpha0 = 1.0;
  double armijo_b = 0.5;
  double armijo_v = 0.1;
  Index armijo_max_backtracks = 50;
  WeightMode weight_mode = WeightMode::exact;
  double outer_tol = 1e-8;
  InnerConfig inner;
};

struct OuterIterationRecord {
  double objective = 0.0;      // F(theta^{(k+1)})
  double alpha = 0.0;          // accepted Armijo stepsize
  double delta_k = 0.0;        // directional decrease bound
  double lipschitz = 0.0;      // stepsize bound used by the inner loop
  Index inner_iterations = 0;
  bool inner_converged = false;
};

enum class SolveStatus { converged, max_iterations, line_search_failed, inner_divergence };

const char* solve_status_name(SolveStatus s);

struct OuterTrace {
  double initial_objective = 0.0;
  std::vector<OuterIterationRecord> iterations;
  SolveStatus status = SolveStatus::max_iterations;
  Index weight_evaluations = 0;
  double final_objective = 0.0;

  bool converged() const { return status == SolveStatus::converged; }
};

struct OuterResult {
  CoefficientBlocks coef;
  OuterTrace trace;
};

/// The penalized negative log-likelihood F = -l/n + lambda J, the
/// objective minimized by the solver.
double penalized_objective(const FamilySpec& spec, const ObservationData& data, double lambda,
                           const PenaltySpec& penalty, const DenseArray& eta,
                           const Eigen::Ref<const Vector>& theta);

/// Weights for one outer iteration. exact: the GLM weights; unit: all
/// ones; tensor_approx: the geometric-mean per-dimension factors, rescaled
/// so the reconstructed rank-one array keeps the geometric mean of the
/// input weights. The reconstructed array is always returned; factors are
/// present only in tensor mode.
struct Weights {
  DenseArray array;
  std::vector<Vector> factors;
};
Weights compute_weights(WeightMode mode, const FamilySpec& spec, const DenseArray& eta);

struct ArmijoResult {
  bool accepted = false;
  Index j = 0;
  double alpha = 0.0;
  double delta_k = 0.0;
  double f_next = 0.0;
  CoefficientBlocks theta_next;
  DenseArray eta_next;
};

/// Backtracking line search along d = theta_tilde - theta_k: accepts the
/// first stepsize b^j alpha_0 with
///   F(theta_k + t d) <= F(theta_k) + t v min(Delta_k, 0),
/// where Delta_k = -(1/n) <u, eta_tilde - eta_k> + lambda (J(theta_tilde) - J(theta_k)).
/// Trial predictors are convex combinations of the two precomputed ones,
/// so no extra H map is needed per trial.
ArmijoResult armijo_search(
    const std::function<double(const CoefficientBlocks&, const DenseArray&)>& objective,
    const CoefficientBlocks& theta_k, const DenseArray& eta_k, double f_k,
    const CoefficientBlocks& theta_tilde, const DenseArray& eta_tilde,
    const DenseArray& score_k, double lambda, const PenaltySpec& penalty,
    const OuterConfig& config);

/// The outer gradient-descent loop: per iteration compute score, weights
/// and working response, solve the penalized weighted least squares
/// subproblem by fista_solve warm-started at the current iterate, and take
/// an Armijo step. Gaussian models with the identity link need no outer
/// iteration: the subproblem with the prior weights folded in is the full
/// problem, so a single inner solve is performed.
OuterResult outer_solve(const TensorDesign& design, const FamilySpec& spec,
                        const ObservationData& data, double lambda, const PenaltySpec& penalty,
                        const OuterConfig& config, const CoefficientBlocks& init);

}  // namespace kronglm
