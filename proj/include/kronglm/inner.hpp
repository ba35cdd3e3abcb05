#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "kronglm/design.hpp"
#include "kronglm/penalty.hpp"

namespace kronglm {

/// The penalized weighted least squares subproblem
///   minimize G(theta) = 1/(2n) |sqrt(W)(X theta - z)|_2^2 + lambda J(theta)
/// with diagonal weights W given as the array v. When the weights are a
/// tensor product, the per-dimension diagonal factors can be supplied in
/// tensor_weights (their outer product must reproduce v) to enable the
/// faster gram-block route for X^T W X.
struct InnerProblem {
  const TensorDesign* design = nullptr;
  DenseArray v;
  DenseArray z;
  double lambda = 0.0;
  PenaltySpec penalty;
  std::vector<Vector> tensor_weights;
};

enum class Extrapolation { fista, none };

struct InnerConfig {
  double nu = 1.0;                 // stepsize policy knob in [0, 1]
  Index max_iters = 2000;
  double tol = 1e-8;               // relative objective-change stop
  Extrapolation extrapolation = Extrapolation::fista;
  Index monitor_every = 1;         // objective check cadence
  bool record_history = false;     // keep (prox steps, objective) pairs
};

struct InnerResult {
  CoefficientBlocks coef;
  double objective = 0.0;
  Index iterations = 0;
  bool converged = false;
  Index backtracks = 0;
  double lipschitz = 0.0;  // the bound the stepsize was derived from
  std::vector<std::pair<Index, double>> history;
};

class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, Index iterate)
      : std::runtime_error(what + " at iterate " + std::to_string(iterate)),
        iterate_(iterate) {}
  Index iterate() const { return iterate_; }

 private:
  Index iterate_;
};

/// Upper bound on the Lipschitz constant |X^T W X|_2 / n:
/// max(w_i)/n * sum_r prod_j rho(X_{r,j}^T X_{r,j}), with the spectral
/// radii of the small gram factors from power iteration.
double lipschitz_upper(const TensorDesign& design, const DenseArray& v);

/// Exact Lipschitz constant for c = 1 and a tensor-product weight matrix:
/// (1/n) prod_j rho(X_{1,j}^T W_j X_{1,j}).
double lipschitz_tensor_exact(const TensorDesign& design, const std::vector<Vector>& factors);

/// X^T (W .* z) as coefficient blocks, precomputed once per inner solve.
CoefficientBlocks precompute_xtwz(const InnerProblem& problem);

/// grad h(theta) = (1/n) X^T W (X theta - z) using the precomputed
/// X^T W z part. Uses the gram-block route when one is supplied.
CoefficientBlocks grad_h(const InnerProblem& problem, const CoefficientBlocks& coef,
                         const CoefficientBlocks& xtwz, const GramBlocks* gram = nullptr);

/// Quadratic part h(theta) = 1/(2n) sum_i v_i (eta_i - z_i)^2.
double inner_quadratic(const InnerProblem& problem, const CoefficientBlocks& coef);

/// Full inner objective G = h + lambda J.
double inner_objective(const InnerProblem& problem, const CoefficientBlocks& coef);

/// Accelerated proximal gradient for the inner problem with extrapolation
/// omega_l = (l-1)/(l+2). Stepsize policy: nu = 1 uses 1/L with no
/// backtracking, nu in (0,1) starts at 1/(nu L) and backtracks only when
/// divergence is detected, nu = 0 starts at 1 and backtracks every
/// iteration against the majorization inequality.
InnerResult fista_solve(const InnerProblem& problem, const InnerConfig& config,
                        const CoefficientBlocks& init);

}  // namespace kronglm
