#include "kronglm/outer.hpp"

#include <cmath>
#include <stdexcept>

namespace kronglm {

const char* weight_mode_name(WeightMode m) {
  switch (m) {
    case WeightMode::exact: return "exact";
    case WeightMode::unit: return "unit";
    case WeightMode::tensor_approx: return "tensor";
  }
  return "?";
}

WeightMode weight_mode_from_name(const std::string& name) {
  if (name == "exact") return WeightMode::exact;
  if (name == "unit" || name == "one") return WeightMode::unit;
  if (name == "tensor" || name == "tensor_approx") return WeightMode::tensor_approx;
  throw std::invalid_argument("unknown weight mode: " + name);
}

const char* solve_status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::converged: return "converged";
    case SolveStatus::max_iterations: return "max_iterations";
    case SolveStatus::line_search_failed: return "line_search_failed";
    case SolveStatus::inner_divergence: return "inner_divergence";
  }
  return "?";
}

double penalized_objective(const FamilySpec& spec, const ObservationData& data, double lambda,
                           const PenaltySpec& penalty, const DenseArray& eta,
                           const Eigen::Ref<const Vector>& theta) {
  const double n = static_cast<double>(eta.size());
  return -loglik(spec, data, eta) / n + lambda * penalty_value(penalty, theta);
}

Weights compute_weights(WeightMode mode, const FamilySpec& spec, const DenseArray& eta) {
  Weights out;
  if (mode == WeightMode::unit) {
    out.array = DenseArray::constant(eta.dims(), 1.0);
    return out;
  }
  DenseArray v = glm_weights(spec, eta);
  if (mode == WeightMode::exact) {
    out.array = std::move(v);
    return out;
  }

  // Geometric-mean tensor approximation: per-dimension factors
  //   v_{j,i} = exp( (1/m_j) sum over the slab {i_j = i} of log V - log Vbar ),
  // then each factor picks up Vbar^{1/d} so the reconstructed array has the
  // same geometric mean as V and rank-one weights are reproduced exactly.
  const ArrayDims& dims = eta.dims();
  const Index d = dims.ndim();
  const Index n = dims.size();
  std::vector<Vector> slab_log(static_cast<std::size_t>(d));
  for (Index j = 0; j < d; ++j) {
    slab_log[static_cast<std::size_t>(j)] = Vector::Zero(dims.extent(j));
  }
  double total_log = 0.0;
  std::vector<Index> idx(static_cast<std::size_t>(d), 0);
  for (Index cell = 0; cell < n; ++cell) {
    const double lv = std::log(v[cell]);
    total_log += lv;
    for (Index j = 0; j < d; ++j) {
      slab_log[static_cast<std::size_t>(j)][idx[static_cast<std::size_t>(j)]] += lv;
    }
    for (Index j = 0; j < d; ++j) {
      if (++idx[static_cast<std::size_t>(j)] < dims.extent(j)) break;
      idx[static_cast<std::size_t>(j)] = 0;
    }
  }
  const double log_vbar = total_log / static_cast<double>(n);
  out.factors.resize(static_cast<std::size_t>(d));
  for (Index j = 0; j < d; ++j) {
    const double mj = static_cast<double>(n / dims.extent(j));
    Vector& f = out.factors[static_cast<std::size_t>(j)];
    f.resize(dims.extent(j));
    for (Index i = 0; i < dims.extent(j); ++i) {
      f[i] = std::exp(slab_log[static_cast<std::size_t>(j)][i] / mj - log_vbar +
                      log_vbar / static_cast<double>(d));
    }
  }

  // Reconstructed array, bitwise the outer product of the factors.
  out.array = DenseArray(dims);
  std::fill(idx.begin(), idx.end(), 0);
  for (Index cell = 0; cell < n; ++cell) {
    double prod = 1.0;
    for (Index j = 0; j < d; ++j) {
      prod *= out.factors[static_cast<std::size_t>(j)][idx[static_cast<std::size_t>(j)]];
    }
    out.array[cell] = prod;
    for (Index j = 0; j < d; ++j) {
      if (++idx[static_cast<std::size_t>(j)] < dims.extent(j)) break;
      idx[static_cast<std::size_t>(j)] = 0;
    }
  }
  return out;
}

ArmijoResult armijo_search(
    const std::function<double(const CoefficientBlocks&, const DenseArray&)>& objective,
    const CoefficientBlocks& theta_k, const DenseArray& eta_k, double f_k,
    const CoefficientBlocks& theta_tilde, const DenseArray& eta_tilde,
    const DenseArray& score_k, double lambda, const PenaltySpec& penalty,
    const OuterConfig& config) {
  const double n = static_cast<double>(eta_k.size());
  const double delta_k =
      -score_k.vec().dot(eta_tilde.vec() - eta_k.vec()) / n +
      lambda * (penalty_value(penalty, theta_tilde.vec()) - penalty_value(penalty, theta_k.vec()));
  // A valid search direction has delta_k <= 0; clip at zero so an accepted
  // step can never increase the objective.
  const double decrease = std::min(delta_k, 0.0);

  ArmijoResult out;
  out.delta_k = delta_k;
  out.theta_next = theta_k;
  out.eta_next = eta_k;
  out.f_next = f_k;

  CoefficientBlocks trial_theta = theta_k;
  DenseArray trial_eta = eta_k;
  double t = config.armijo_alpha0;
  for (Index j = 0; j <= config.armijo_max_backtracks; ++j, t *= config.armijo_b) {
    trial_theta.vec() = theta_k.vec() + t * (theta_tilde.vec() - theta_k.vec());
    trial_eta.vec() = eta_k.vec() + t * (eta_tilde.vec() - eta_k.vec());
    const double f_trial = objective(trial_theta, trial_eta);
    if (std::isfinite(f_trial) && f_trial <= f_k + t * config.armijo_v * decrease) {
      out.accepted = true;
      out.j = j;
      out.alpha = t;
      out.f_next = f_trial;
      out.theta_next = std::move(trial_theta);
      out.eta_next = std::move(trial_eta);
      return out;
    }
  }
  return out;
}

namespace {

DenseArray generic_working_response(const DenseArray& u, const DenseArray& v,
                                    const DenseArray& eta) {
  DenseArray z(eta.dims());
  for (Index i = 0; i < eta.size(); ++i) {
    z[i] = u[i] / v[i] + eta[i];
  }
  return z;
}

}  // namespace

OuterResult outer_solve(const TensorDesign& design, const FamilySpec& spec,
                        const ObservationData& data, double lambda, const PenaltySpec& penalty,
                        const OuterConfig& config, const CoefficientBlocks& init) {
  if (data.y.dims() != design.row_dims()) {
    throw std::invalid_argument("outer_solve: data dims do not match the design");
  }
  if (!init.matches(design)) {
    throw std::invalid_argument("outer_solve: init does not match the design");
  }
  if (!(lambda >= 0.0)) {
    throw std::invalid_argument("outer_solve: lambda must be nonnegative");
  }
  if (!(config.armijo_alpha0 > 0.0) || !(config.armijo_b > 0.0 && config.armijo_b < 1.0) ||
      !(config.armijo_v > 0.0 && config.armijo_v < 1.0)) {
    throw std::invalid_argument(
        "outer_solve: need alpha0 > 0 and Armijo constants b, v in (0,1)");
  }
  if (config.max_outer < 1 || !(config.outer_tol > 0.0)) {
    throw std::invalid_argument("outer_solve: need max_outer >= 1 and outer_tol > 0");
  }
  validate(spec, data);

  OuterResult result;
  result.coef = init;
  OuterTrace& trace = result.trace;

  DenseArray eta = h_map(design, result.coef);
  double f_cur = penalized_objective(spec, data, lambda, penalty, eta, result.coef.vec());
  trace.initial_objective = f_cur;
  trace.final_objective = f_cur;

  const auto objective = [&](const CoefficientBlocks& theta, const DenseArray& e) {
    return penalized_objective(spec, data, lambda, penalty, e, theta.vec());
  };

  // Gaussian + identity: with the prior weights folded into W and z = y,
  // the subproblem objective equals F up to a constant, so one inner
  // solve computes the estimate and no outer iteration is needed.
  const bool gaussian_identity = spec.family == Family::gaussian && spec.link == Link::identity;
  if (gaussian_identity && config.weight_mode == WeightMode::exact) {
    Weights w = compute_weights(WeightMode::exact, spec, eta);
    trace.weight_evaluations = 1;
    InnerProblem problem;
    problem.design = &design;
    problem.v = std::move(w.array);
    problem.v.vec().array() *= data.a.vec().array();
    problem.z = data.y;
    problem.lambda = lambda;
    problem.penalty = penalty;
    InnerResult inner;
    try {
      inner = fista_solve(problem, config.inner, result.coef);
    } catch (const DivergenceError&) {
      trace.status = SolveStatus::inner_divergence;
      return result;
    }
    DenseArray eta_tilde = h_map(design, inner.coef);
    const double f_new = objective(inner.coef, eta_tilde);
    DenseArray u = score(spec, data, eta);
    const double delta_k =
        -u.vec().dot(eta_tilde.vec() - eta.vec()) / static_cast<double>(design.n()) +
        lambda * (penalty_value(penalty, inner.coef.vec()) -
                  penalty_value(penalty, result.coef.vec()));
    if (f_new <= f_cur) {
      result.coef = inner.coef;
      f_cur = f_new;
    }
    trace.iterations.push_back({f_cur, 1.0, delta_k, inner.lipschitz, inner.iterations,
                                inner.converged});
    trace.final_objective = f_cur;
    trace.status = inner.converged ? SolveStatus::converged : SolveStatus::max_iterations;
    return result;
  }

  // Unit weights do not depend on eta; hoist them out of the loop.
  Weights unit_weights;
  if (config.weight_mode == WeightMode::unit) {
    unit_weights = compute_weights(WeightMode::unit, spec, eta);
    trace.weight_evaluations = 1;
  }

  for (Index k = 0; k < config.max_outer; ++k) {
    DenseArray u = score(spec, data, eta);

    InnerProblem problem;
    problem.design = &design;
    problem.lambda = lambda;
    problem.penalty = penalty;
    switch (config.weight_mode) {
      case WeightMode::exact: {
        Weights w = compute_weights(WeightMode::exact, spec, eta);
        ++trace.weight_evaluations;
        problem.v = std::move(w.array);
        problem.z = working_response(spec, data, eta);
        break;
      }
      case WeightMode::unit:
        problem.v = unit_weights.array;
        problem.z = generic_working_response(u, problem.v, eta);
        break;
      case WeightMode::tensor_approx: {
        Weights w = compute_weights(WeightMode::tensor_approx, spec, eta);
        ++trace.weight_evaluations;
        problem.v = std::move(w.array);
        problem.tensor_weights = std::move(w.factors);
        problem.z = generic_working_response(u, problem.v, eta);
        break;
      }
    }

    InnerResult inner;
    try {
      inner = fista_solve(problem, config.inner, result.coef);
    } catch (const DivergenceError&) {
      trace.status = SolveStatus::inner_divergence;
      return result;
    }

    DenseArray eta_tilde = h_map(design, inner.coef);
    ArmijoResult step = armijo_search(objective, result.coef, eta, f_cur, inner.coef, eta_tilde,
                                      u, lambda, penalty, config);
    if (!step.accepted) {
      trace.iterations.push_back({f_cur, 0.0, step.delta_k, inner.lipschitz, inner.iterations,
                                  inner.converged});
      trace.status = SolveStatus::line_search_failed;
      return result;
    }

    result.coef = std::move(step.theta_next);
    eta = std::move(step.eta_next);
    const double f_new = step.f_next;
    trace.iterations.push_back({f_new, step.alpha, step.delta_k, inner.lipschitz,
                                inner.iterations, inner.converged});
    trace.final_objective = f_new;

    const double rel_change = std::abs(f_new - f_cur) / std::max(1.0, std::abs(f_cur));
    f_cur = f_new;
    if (rel_change < config.outer_tol) {
      trace.status = SolveStatus::converged;
      return result;
    }
  }
  trace.status = SolveStatus::max_iterations;
  return result;
}

}  // namespace kronglm
