#include "kronglm/path.hpp"

#include <cmath>
#include <stdexcept>

namespace kronglm {

std::vector<double> lambda_sequence(double lambda_max, const PathConfig& config) {
  if (!(lambda_max > 0.0)) {
    throw std::invalid_argument("lambda_sequence: lambda_max must be positive");
  }
  if (config.n_lambda < 1) {
    throw std::invalid_argument("lambda_sequence: n_lambda must be positive");
  }
  if (!(config.lambda_min_ratio > 0.0 && config.lambda_min_ratio < 1.0)) {
    throw std::invalid_argument("lambda_sequence: lambda_min_ratio must lie in (0,1)");
  }
  std::vector<double> out(static_cast<std::size_t>(config.n_lambda));
  out[0] = lambda_max;
  if (config.n_lambda == 1) return out;
  const double step = std::log(config.lambda_min_ratio) /
                      static_cast<double>(config.n_lambda - 1);
  for (Index t = 1; t < config.n_lambda; ++t) {
    out[static_cast<std::size_t>(t)] = lambda_max * std::exp(step * static_cast<double>(t));
  }
  return out;
}

FitPath fit_path(const TensorDesign& design, const FamilySpec& spec,
                 const ObservationData& data, const PenaltySpec& penalty,
                 const PathConfig& config) {
  if (!penalty.has_l1()) {
    throw std::invalid_argument(
        "fit_path: penalty has no l1 component; supply an explicit lambda sequence");
  }
  const double lmax = lambda_max(design, spec, data, penalty);
  if (!(lmax > 0.0)) {
    throw std::invalid_argument(
        "fit_path: lambda_max is zero (score vanishes at theta = 0); supply an explicit "
        "lambda sequence");
  }
  FitPath path = fit_path(design, spec, data, penalty, config, lambda_sequence(lmax, config));
  path.lambda_max_value = lmax;
  return path;
}

FitPath fit_path(const TensorDesign& design, const FamilySpec& spec,
                 const ObservationData& data, const PenaltySpec& penalty,
                 const PathConfig& config, std::vector<double> lambdas) {
  if (lambdas.empty()) {
    throw std::invalid_argument("fit_path: empty lambda sequence");
  }
  for (std::size_t t = 0; t < lambdas.size(); ++t) {
    if (!(lambdas[t] >= 0.0)) {
      throw std::invalid_argument("fit_path: lambda values must be nonnegative");
    }
    if (t > 0 && !(lambdas[t] < lambdas[t - 1])) {
      throw std::invalid_argument("fit_path: lambda sequence must be strictly decreasing");
    }
  }

  FitPath path;
  CoefficientBlocks warm = CoefficientBlocks::zeros(design);
  for (std::size_t t = 0; t < lambdas.size(); ++t) {
    OuterResult res = outer_solve(design, spec, data, lambdas[t], penalty, config.outer, warm);
    if (!res.trace.converged()) {
      if (t == 0) {
        throw std::runtime_error(std::string("fit_path: first model did not converge (") +
                                 solve_status_name(res.trace.status) + ")");
      }
      path.truncated = true;
      break;
    }
    warm = res.coef;
    path.lambdas.push_back(lambdas[t]);
    path.fits.push_back(std::move(res.coef));
    path.objectives.push_back(res.trace.final_objective);
    path.diagnostics.push_back(std::move(res.trace));
  }
  return path;
}

Prediction predict(const TensorDesign& design, const FamilySpec& spec,
                   const CoefficientBlocks& coef) {
  Prediction out;
  out.eta = h_map(design, coef);
  out.mu = mean(spec, out.eta);
  return out;
}

HeldoutMse mse_heldout(const FitPath& path, const TensorDesign& design, const FamilySpec& spec,
                       const DenseArray& y_full, const DenseArray& heldout_mask) {
  if (y_full.dims() != design.row_dims() || heldout_mask.dims() != design.row_dims()) {
    throw std::invalid_argument("mse_heldout: array dims do not match the design");
  }
  Index n_held = 0;
  for (Index i = 0; i < heldout_mask.size(); ++i) {
    const double m = heldout_mask[i];
    if (m != 0.0 && m != 1.0) {
      throw std::invalid_argument("mse_heldout: mask entries must be 0 or 1");
    }
    if (m == 1.0) ++n_held;
  }
  if (n_held == 0) {
    throw std::invalid_argument("mse_heldout: empty held-out mask");
  }
  if (path.n_models() == 0) {
    throw std::invalid_argument("mse_heldout: empty path");
  }

  HeldoutMse out;
  out.mse.reserve(static_cast<std::size_t>(path.n_models()));
  for (Index t = 0; t < path.n_models(); ++t) {
    const DenseArray mu = predict(design, spec, path.fits[static_cast<std::size_t>(t)]).mu;
    double sum = 0.0;
    for (Index i = 0; i < mu.size(); ++i) {
      if (heldout_mask[i] == 1.0) {
        const double diff = mu[i] - y_full[i];
        sum += diff * diff;
      }
    }
    out.mse.push_back(sum);
    if (sum < out.mse[static_cast<std::size_t>(out.argmin)]) out.argmin = t;
  }
  return out;
}

}  // namespace kronglm
