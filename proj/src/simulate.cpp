#include "kronglm/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace kronglm {

Simulated simulate_glam(const SimConfig& config, const FamilySpec& spec) {
  if (!(config.r > 0.0) || !(config.q > 0.0)) {
    throw std::invalid_argument("simulate_glam: r and q must be positive");
  }
  if (!(config.sigma > 0.0) || config.kappa < 0.0 || config.kappa > config.sigma) {
    throw std::invalid_argument("simulate_glam: need 0 <= kappa <= sigma, sigma > 0");
  }
  if (config.s < 0.0 || config.s > 1.0) {
    throw std::invalid_argument("simulate_glam: sparsity s must lie in [0,1]");
  }
  if (spec.family != Family::gaussian && spec.family != Family::poisson) {
    throw std::invalid_argument("simulate_glam: only gaussian and poisson models are generated");
  }

  const Index base[3] = {60, 20, 10};
  std::vector<Matrix> factors(3);
  std::mt19937_64 rng(config.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  // Row i of each factor: sqrt(sigma-kappa) z + sqrt(kappa) g 1, so the
  // covariance is (sigma-kappa) I + kappa 11^T.
  const double indep = std::sqrt(config.sigma - config.kappa);
  const double shared = std::sqrt(config.kappa);
  for (int j = 0; j < 3; ++j) {
    const Index nj = std::max<Index>(1, static_cast<Index>(std::lround(
                                            static_cast<double>(base[j]) * config.r)));
    const Index pj = std::max<Index>(3, static_cast<Index>(std::lround(
                                            static_cast<double>(nj) * config.q)));
    Matrix x(nj, pj);
    for (Index i = 0; i < nj; ++i) {
      const double g = normal(rng);
      for (Index m = 0; m < pj; ++m) {
        x(i, m) = indep * normal(rng) + shared * g;
      }
    }
    factors[static_cast<std::size_t>(j)] = std::move(x);
  }
  TensorDesign design(std::vector<std::vector<Matrix>>{std::move(factors)});

  CoefficientBlocks theta = CoefficientBlocks::zeros(design);
  {
    auto vec = theta.vec();
    for (Index m = 1; m <= vec.size(); ++m) {
      const double active = unif(rng) < config.s ? 1.0 : 0.0;
      const double sign = (m % 2 == 0) ? 1.0 : -1.0;
      vec[m - 1] = sign * std::exp(-static_cast<double>(m - 1) / 10.0) * active;
    }
  }

  DenseArray eta = h_map(design, theta);
  DenseArray response(eta.dims());
  if (spec.family == Family::gaussian) {
    for (Index i = 0; i < eta.size(); ++i) {
      response[i] = eta[i] + normal(rng);
    }
  } else {
    for (Index i = 0; i < eta.size(); ++i) {
      const double mu = std::exp(std::clamp(eta[i], -kEtaExpBound, kEtaExpBound));
      std::poisson_distribution<long long> pois(mu);
      response[i] = static_cast<double>(pois(rng));
    }
  }

  return Simulated{std::move(design), std::move(theta), std::move(response),
                   DenseArray::constant(eta.dims(), 1.0)};
}

}  // namespace kronglm
