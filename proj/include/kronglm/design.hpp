#pragma once

#include <vector>

#include "kronglm/array.hpp"

namespace kronglm {

/// Design matrix X = [X_1 | ... | X_c] where each component
/// X_r = X_{r,d} (x) ... (x) X_{r,1} is a tensor product of d marginal
/// matrices. Only the marginal factors are stored; X itself is never
/// formed.
class TensorDesign {
 public:
  /// components[r][j] is the n_j x p_{r,j} factor of component r in
  /// dimension j (0-based here, dimension j+1 in the model).
  explicit TensorDesign(std::vector<std::vector<Matrix>> components);

  Index n_components() const { return static_cast<Index>(components_.size()); }
  Index order() const { return static_cast<Index>(components_.front().size()); }

  const Matrix& factor(Index r, Index j) const {
    return components_[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)];
  }

  const ArrayDims& row_dims() const { return row_dims_; }
  const ArrayDims& coef_dims(Index r) const {
    return coef_dims_[static_cast<std::size_t>(r)];
  }

  Index n() const { return row_dims_.size(); }
  Index p() const { return p_total_; }
  Index block_size(Index r) const { return coef_dims(r).size(); }

 private:
  std::vector<std::vector<Matrix>> components_;
  ArrayDims row_dims_;
  std::vector<ArrayDims> coef_dims_;
  Index p_total_ = 0;
};

/// The coefficient tuple <Theta_1,...,Theta_c>. Block r is a
/// p_{r,1} x ... x p_{r,d} array; the blocks are stored contiguously so
/// that vec() is the concatenated coefficient vector of length p.
class CoefficientBlocks {
 public:
  CoefficientBlocks() = default;
  explicit CoefficientBlocks(std::vector<ArrayDims> block_dims);

  static CoefficientBlocks zeros(const TensorDesign& design);

  Index n_blocks() const { return static_cast<Index>(block_dims_.size()); }
  const ArrayDims& block_dims(Index r) const {
    return block_dims_[static_cast<std::size_t>(r)];
  }
  Index block_offset(Index r) const { return offsets_[static_cast<std::size_t>(r)]; }
  Index size() const { return static_cast<Index>(values_.size()); }

  VectorMap vec() { return VectorMap(values_.data(), size()); }
  ConstVectorMap vec() const { return ConstVectorMap(values_.data(), size()); }

  VectorMap block_vec(Index r) {
    return VectorMap(values_.data() + block_offset(r), block_dims(r).size());
  }
  ConstVectorMap block_vec(Index r) const {
    return ConstVectorMap(values_.data() + block_offset(r), block_dims(r).size());
  }

  /// Copy block r out as a standalone array.
  DenseArray block_array(Index r) const;

  bool matches(const TensorDesign& design) const;

 private:
  std::vector<ArrayDims> block_dims_;
  std::vector<Index> offsets_;
  std::vector<double> values_;
};

/// Linear predictor as an n_1 x ... x n_d array:
/// H(<X_{r,j}>, <Theta_r>) = sum_r rho(X_{r,d}, ..., rho(X_{r,1}, Theta_r)...),
/// so vec(h_map(design, coef)) = X * theta.
DenseArray h_map(const TensorDesign& design, const CoefficientBlocks& coef);

/// Adjoint of h_map: block r of the result is
/// rho(X_{r,d}^T, ..., rho(X_{r,1}^T, U)...), so vec(g_map(design, u)) = X^T vec(u).
CoefficientBlocks g_map(const TensorDesign& design, const DenseArray& u);

/// X^T diag(v) X theta computed as g_map(design, v .* h_map(design, coef)).
CoefficientBlocks xtwx_apply(const TensorDesign& design, const DenseArray& v,
                             const CoefficientBlocks& coef);

/// Precomputed blocks X_{m,j}^T diag(w_j) X_{r,j} for a tensor-product
/// weight matrix W = W_d (x) ... (x) W_1 with diagonal factors w_j.
class GramBlocks {
 public:
  GramBlocks(const TensorDesign& design, const std::vector<Vector>& weight_factors);

  Index n_components() const { return static_cast<Index>(blocks_.size()); }
  Index order() const { return static_cast<Index>(blocks_.front().front().size()); }
  /// The p_{m,j} x p_{r,j} factor X_{m,j}^T W_j X_{r,j}.
  const Matrix& factor(Index m, Index r, Index j) const {
    return blocks_[static_cast<std::size_t>(m)][static_cast<std::size_t>(r)]
                  [static_cast<std::size_t>(j)];
  }

 private:
  std::vector<std::vector<std::vector<Matrix>>> blocks_;
};

/// X^T W X theta for a tensor-product W, evaluated through d-fold H maps
/// on the small precomputed gram factors. Identical to xtwx_apply with
/// v equal to the outer product of the weight factors.
CoefficientBlocks xtwx_apply_tensor(const TensorDesign& design, const GramBlocks& gram,
                                    const CoefficientBlocks& coef);

}  // namespace kronglm
