#pragma once

#include <cstdint>

#include "kronglm/design.hpp"
#include "kronglm/family.hpp"

namespace kronglm {

/// Simulated 3-dimensional GLAM benchmark family: grid sizes
/// (60r, 20r, 10r), p_j = max(3, n_j q), marginal design rows drawn from
/// N(0, Sigma) with equicorrelated Sigma (diagonal sigma, off-diagonal
/// kappa), and coefficients theta_m = (-1)^m exp(-(m-1)/10) B_m with
/// B_m ~ Bernoulli(s).
struct SimConfig {
  double r = 0.1;
  double q = 0.5;
  double kappa = 0.0;
  double sigma = 1.0;
  double s = 1.0;
  std::uint64_t seed = 1;
};

struct Simulated {
  TensorDesign design;
  CoefficientBlocks theta;
  DenseArray response;
  DenseArray weights;
};

/// Generates the design, coefficients and responses for the gaussian
/// (identity link, unit variance) or poisson (log link) model. All output
/// is a deterministic function of the seed.
Simulated simulate_glam(const SimConfig& config, const FamilySpec& spec);

}  // namespace kronglm
