#pragma once

#include <vector>

#include "kronglm/outer.hpp"

namespace kronglm {

struct PathConfig {
  Index n_lambda = 100;
  double lambda_min_ratio = 1e-4;
  OuterConfig outer;
};

/// A fitted regularization path. When a model fails to converge the path
/// is truncated: only the fits for the preceding lambda values are kept
/// and `truncated` is set.
struct FitPath {
  std::vector<double> lambdas;
  std::vector<CoefficientBlocks> fits;
  std::vector<double> objectives;
  std::vector<OuterTrace> diagnostics;
  bool truncated = false;
  double lambda_max_value = 0.0;

  Index n_models() const { return static_cast<Index>(lambdas.size()); }
};

/// n_lambda values log-uniformly spaced from lambda_max down to
/// lambda_max * lambda_min_ratio.
std::vector<double> lambda_sequence(double lambda_max, const PathConfig& config);

/// Fits the whole path, warm-starting each model at the previous solution
/// (zero blocks for the first). Computes lambda_max from the data; the
/// penalty must have an l1 component.
FitPath fit_path(const TensorDesign& design, const FamilySpec& spec,
                 const ObservationData& data, const PenaltySpec& penalty,
                 const PathConfig& config);

/// Same, over an explicit strictly decreasing lambda sequence.
FitPath fit_path(const TensorDesign& design, const FamilySpec& spec,
                 const ObservationData& data, const PenaltySpec& penalty,
                 const PathConfig& config, std::vector<double> lambdas);

struct Prediction {
  DenseArray eta;
  DenseArray mu;
};

/// Linear predictor and fitted mean arrays for one coefficient tuple.
Prediction predict(const TensorDesign& design, const FamilySpec& spec,
                   const CoefficientBlocks& coef);

struct HeldoutMse {
  std::vector<double> mse;
  Index argmin = 0;
};

/// Per-lambda sum of squared errors of the fitted means over the cells
/// flagged by the 0/1 mask, and the index of the minimizing model. The
/// path should have been fitted with zero observation weights on the
/// masked cells; y_full carries the true values everywhere.
HeldoutMse mse_heldout(const FitPath& path, const TensorDesign& design, const FamilySpec& spec,
                       const DenseArray& y_full, const DenseArray& heldout_mask);

}  // namespace kronglm
