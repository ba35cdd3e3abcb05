#include "kronglm/inner.hpp"

#include <cmath>
#include <stdexcept>

#include "kronglm/spectral.hpp"

namespace kronglm {

namespace {

void check_problem(const InnerProblem& problem) {
  if (problem.design == nullptr) {
    throw std::invalid_argument("inner problem: missing design");
  }
  const TensorDesign& design = *problem.design;
  if (problem.v.dims() != design.row_dims() || problem.z.dims() != design.row_dims()) {
    throw std::invalid_argument("inner problem: weight/working-response dims do not match");
  }
  if (!(problem.lambda >= 0.0)) {
    throw std::invalid_argument("inner problem: lambda must be nonnegative");
  }
  if (problem.v.vec().minCoeff() < 0.0) {
    throw std::invalid_argument("inner problem: weights must be nonnegative");
  }
  if (!problem.tensor_weights.empty()) {
    if (static_cast<Index>(problem.tensor_weights.size()) != design.order()) {
      throw std::invalid_argument("inner problem: need one weight factor per dimension");
    }
    // the factors must reproduce the weight array
    const ArrayDims& dims = design.row_dims();
    std::vector<Index> idx(static_cast<std::size_t>(dims.ndim()), 0);
    for (Index cell = 0; cell < dims.size(); ++cell) {
      double prod = 1.0;
      for (Index j = 0; j < dims.ndim(); ++j) {
        prod *= problem.tensor_weights[static_cast<std::size_t>(j)]
                                      [idx[static_cast<std::size_t>(j)]];
      }
      if (std::abs(prod - problem.v[cell]) > 1e-10 * std::max(1.0, std::abs(prod))) {
        throw std::invalid_argument(
            "inner problem: tensor weight factors do not reproduce the weight array");
      }
      for (Index j = 0; j < dims.ndim(); ++j) {
        if (++idx[static_cast<std::size_t>(j)] < dims.extent(j)) break;
        idx[static_cast<std::size_t>(j)] = 0;
      }
    }
  }
}

}  // namespace

double lipschitz_upper(const TensorDesign& design, const DenseArray& v) {
  if (v.dims() != design.row_dims()) {
    throw std::invalid_argument("lipschitz_upper: weight dims do not match the design");
  }
  const double wmax = v.vec().maxCoeff();
  if (!(wmax > 0.0)) {
    throw std::invalid_argument("lipschitz_upper: weights must not be all zero");
  }
  double sum = 0.0;
  for (Index r = 0; r < design.n_components(); ++r) {
    double prod = 1.0;
    for (Index j = 0; j < design.order(); ++j) {
      const Matrix& x = design.factor(r, j);
      prod *= spectral_radius(x.transpose() * x);
    }
    sum += prod;
  }
  return wmax * sum / static_cast<double>(design.n());
}

double lipschitz_tensor_exact(const TensorDesign& design, const std::vector<Vector>& factors) {
  if (design.n_components() != 1) {
    throw std::invalid_argument(
        "lipschitz_tensor_exact: only c = 1 is supported; use lipschitz_upper");
  }
  if (static_cast<Index>(factors.size()) != design.order()) {
    throw std::invalid_argument("lipschitz_tensor_exact: need one weight factor per dimension");
  }
  double prod = 1.0;
  for (Index j = 0; j < design.order(); ++j) {
    const Vector& w = factors[static_cast<std::size_t>(j)];
    if (w.size() != design.row_dims().extent(j)) {
      throw std::invalid_argument("lipschitz_tensor_exact: weight factor length mismatch");
    }
    const Matrix& x = design.factor(0, j);
    prod *= spectral_radius(x.transpose() * w.asDiagonal() * x);
  }
  return prod / static_cast<double>(design.n());
}

CoefficientBlocks precompute_xtwz(const InnerProblem& problem) {
  check_problem(problem);
  DenseArray wz(problem.z.dims());
  wz.vec() = problem.v.vec().cwiseProduct(problem.z.vec());
  return g_map(*problem.design, wz);
}

CoefficientBlocks grad_h(const InnerProblem& problem, const CoefficientBlocks& coef,
                         const CoefficientBlocks& xtwz, const GramBlocks* gram) {
  const TensorDesign& design = *problem.design;
  CoefficientBlocks out = gram != nullptr ? xtwx_apply_tensor(design, *gram, coef)
                                          : xtwx_apply(design, problem.v, coef);
  out.vec() = (out.vec() - xtwz.vec()) / static_cast<double>(design.n());
  return out;
}

double inner_quadratic(const InnerProblem& problem, const CoefficientBlocks& coef) {
  DenseArray eta = h_map(*problem.design, coef);
  eta.vec() -= problem.z.vec();
  const double ss = problem.v.vec().dot(eta.vec().cwiseProduct(eta.vec()));
  return 0.5 * ss / static_cast<double>(problem.design->n());
}

double inner_objective(const InnerProblem& problem, const CoefficientBlocks& coef) {
  return inner_quadratic(problem, coef) +
         problem.lambda * penalty_value(problem.penalty, coef.vec());
}

InnerResult fista_solve(const InnerProblem& problem, const InnerConfig& config,
                        const CoefficientBlocks& init) {
  check_problem(problem);
  const TensorDesign& design = *problem.design;
  if (!init.matches(design)) {
    throw std::invalid_argument("fista_solve: init does not match the design");
  }
  if (!(config.nu >= 0.0 && config.nu <= 1.0)) {
    throw std::invalid_argument("fista_solve: nu must lie in [0,1]");
  }

  const bool tensor = !problem.tensor_weights.empty();
  const double lip = (tensor && design.n_components() == 1)
                         ? lipschitz_tensor_exact(design, problem.tensor_weights)
                         : lipschitz_upper(design, problem.v);
  std::optional<GramBlocks> gram;
  if (tensor) gram.emplace(design, problem.tensor_weights);

  const CoefficientBlocks xtwz = precompute_xtwz(problem);
  const double lambda = problem.lambda;
  const bool backtrack_always = config.nu == 0.0;
  const bool backtrack_on_divergence = config.nu > 0.0 && config.nu < 1.0;

  double delta = backtrack_always ? 1.0 : 1.0 / (std::max(config.nu, 1.0e-300) * lip);
  if (config.nu == 1.0) delta = 1.0 / lip;

  CoefficientBlocks x = init;
  CoefficientBlocks x_prev = init;
  CoefficientBlocks y = init;
  CoefficientBlocks cand = init;

  InnerResult result;
  result.lipschitz = lip;
  double g_prev = inner_objective(problem, x);
  CoefficientBlocks best = x;
  double best_g = g_prev;
  if (config.record_history) result.history.emplace_back(0, g_prev);

  Index momentum = 1;
  Index increase_streak = 0;
  Index prox_steps = 0;

  for (Index it = 1; it <= config.max_iters; ++it) {
    const double omega = config.extrapolation == Extrapolation::fista
                             ? static_cast<double>(momentum - 1) / static_cast<double>(momentum + 2)
                             : 0.0;
    y.vec() = x.vec() + omega * (x.vec() - x_prev.vec());
    const CoefficientBlocks grad = grad_h(problem, y, xtwz, gram ? &*gram : nullptr);

    if (backtrack_always) {
      const double h_y = inner_quadratic(problem, y);
      for (;;) {
        cand.vec() = y.vec() - delta * grad.vec();
        if (lambda > 0.0) prox_inplace(problem.penalty, delta * lambda, cand.vec());
        Vector step = cand.vec() - y.vec();
        const double h_c = inner_quadratic(problem, cand);
        const double bound = h_y + grad.vec().dot(step) + step.squaredNorm() / (2.0 * delta) +
                             1e-12 * std::max(1.0, std::abs(h_y));
        if (h_c <= bound) break;
        delta *= 0.5;
        ++result.backtracks;
        if (delta < 1e-300) throw DivergenceError("stepsize underflow in backtracking", it);
      }
    } else {
      cand.vec() = y.vec() - delta * grad.vec();
      if (lambda > 0.0) prox_inplace(problem.penalty, delta * lambda, cand.vec());
    }

    x_prev = x;
    x = cand;
    ++prox_steps;
    ++momentum;
    result.iterations = it;

    const bool monitored = (it % std::max<Index>(config.monitor_every, 1) == 0) ||
                           it == config.max_iters;
    if (!monitored) continue;

    const double g_cur = inner_objective(problem, x);
    if (config.record_history) result.history.emplace_back(prox_steps, g_cur);

    const bool bad = !std::isfinite(g_cur);
    if (bad || (backtrack_on_divergence && g_cur > g_prev && ++increase_streak >= 3)) {
      if (!backtrack_on_divergence) {
        throw DivergenceError("non-finite inner objective", it);
      }
      // Divergence detected: restart from the best iterate with a halved
      // stepsize and a fresh extrapolation counter.
      x = best;
      x_prev = best;
      g_prev = best_g;
      delta *= 0.5;
      momentum = 1;
      increase_streak = 0;
      ++result.backtracks;
      continue;
    }
    if (g_cur <= g_prev) increase_streak = 0;

    if (g_cur <= best_g) {
      best = x;
      best_g = g_cur;
    }
    if (std::abs(g_cur - g_prev) / std::max(1.0, std::abs(g_cur)) < config.tol) {
      result.converged = true;
      g_prev = g_cur;
      break;
    }
    g_prev = g_cur;
  }

  result.coef = best;
  result.objective = best_g;
  return result;
}

}  // namespace kronglm
