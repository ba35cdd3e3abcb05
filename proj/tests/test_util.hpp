#pragma once

#include <random>
#include <vector>

#include "kronglm/design.hpp"
#include "kronglm/family.hpp"

namespace testutil {

using kronglm::ArrayDims;
using kronglm::CoefficientBlocks;
using kronglm::DenseArray;
using kronglm::Index;
using kronglm::Matrix;
using kronglm::TensorDesign;
using kronglm::Vector;

using Rng = std::mt19937_64;

inline Matrix random_matrix(Rng& rng, Index rows, Index cols, double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, scale);
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) m(i, j) = normal(rng);
  }
  return m;
}

inline DenseArray random_array(Rng& rng, const ArrayDims& dims, double lo = -1.0,
                               double hi = 1.0) {
  std::uniform_real_distribution<double> unif(lo, hi);
  DenseArray a(dims);
  for (Index i = 0; i < a.size(); ++i) a[i] = unif(rng);
  return a;
}

inline std::vector<Index> random_extents(Rng& rng, Index d, Index max_extent) {
  std::uniform_int_distribution<Index> pick(1, max_extent);
  std::vector<Index> out(static_cast<std::size_t>(d));
  for (auto& e : out) e = pick(rng);
  return out;
}

/// Random design with d <= max_d, c <= max_c, n_j <= max_n, p_{r,j} <= max_p.
inline TensorDesign random_design(Rng& rng, Index max_c, Index max_d, Index max_n,
                                  Index max_p) {
  std::uniform_int_distribution<Index> pick_c(1, max_c);
  std::uniform_int_distribution<Index> pick_d(1, max_d);
  std::uniform_int_distribution<Index> pick_n(1, max_n);
  std::uniform_int_distribution<Index> pick_p(1, max_p);
  const Index c = pick_c(rng);
  const Index d = pick_d(rng);
  std::vector<Index> rows(static_cast<std::size_t>(d));
  for (auto& n : rows) n = pick_n(rng);
  std::vector<std::vector<Matrix>> comps;
  for (Index r = 0; r < c; ++r) {
    std::vector<Matrix> factors;
    for (Index j = 0; j < d; ++j) {
      factors.push_back(random_matrix(rng, rows[static_cast<std::size_t>(j)], pick_p(rng)));
    }
    comps.push_back(std::move(factors));
  }
  return TensorDesign(std::move(comps));
}

/// Design with fixed factor shapes: rows[j] x cols[r][j].
inline TensorDesign make_design(Rng& rng, const std::vector<Index>& rows,
                                const std::vector<std::vector<Index>>& cols) {
  std::vector<std::vector<Matrix>> comps;
  for (const auto& comp_cols : cols) {
    std::vector<Matrix> factors;
    for (std::size_t j = 0; j < rows.size(); ++j) {
      factors.push_back(random_matrix(rng, rows[j], comp_cols[j]));
    }
    comps.push_back(std::move(factors));
  }
  return TensorDesign(std::move(comps));
}

inline TensorDesign identity_design(const std::vector<Index>& rows) {
  std::vector<Matrix> factors;
  for (Index n : rows) factors.push_back(Matrix::Identity(n, n));
  return TensorDesign({std::move(factors)});
}

inline CoefficientBlocks random_coef(Rng& rng, const TensorDesign& design, double lo = -1.0,
                                     double hi = 1.0) {
  std::uniform_real_distribution<double> unif(lo, hi);
  CoefficientBlocks coef = CoefficientBlocks::zeros(design);
  auto vec = coef.vec();
  for (Index i = 0; i < vec.size(); ++i) vec[i] = unif(rng);
  return coef;
}

inline CoefficientBlocks coef_from_vec(const TensorDesign& design, const Vector& theta) {
  CoefficientBlocks coef = CoefficientBlocks::zeros(design);
  coef.vec() = theta;
  return coef;
}

/// Random response data in the family's support, unit prior weights.
inline kronglm::ObservationData random_data(Rng& rng, const kronglm::FamilySpec& spec,
                                            const ArrayDims& dims) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  DenseArray y(dims);
  for (Index i = 0; i < y.size(); ++i) {
    switch (spec.family) {
      case kronglm::Family::gaussian: y[i] = normal(rng); break;
      case kronglm::Family::binomial: y[i] = unif(rng); break;
      case kronglm::Family::poisson: y[i] = std::floor(unif(rng) * 6.0); break;
      case kronglm::Family::gamma: y[i] = 0.1 + 3.0 * unif(rng); break;
    }
  }
  return kronglm::ObservationData(std::move(y));
}

}  // namespace testutil
