#pragma once

#include <vector>

#include <Eigen/Core>

namespace kronglm {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using MatrixMap = Eigen::Map<Matrix>;
using ConstMatrixMap = Eigen::Map<const Matrix>;
using VectorMap = Eigen::Map<Vector>;
using ConstVectorMap = Eigen::Map<const Vector>;
using Index = Eigen::Index;

/// Shape (n_1,...,n_d) of a d-dimensional array.
class ArrayDims {
 public:
  ArrayDims() = default;
  explicit ArrayDims(std::vector<Index> extents);

  Index ndim() const { return static_cast<Index>(extents_.size()); }
  Index extent(Index j) const { return extents_[static_cast<std::size_t>(j)]; }
  Index size() const { return total_; }
  const std::vector<Index>& extents() const { return extents_; }

  friend bool operator==(const ArrayDims& a, const ArrayDims& b) {
    return a.extents_ == b.extents_;
  }
  friend bool operator!=(const ArrayDims& a, const ArrayDims& b) {
    return !(a == b);
  }

 private:
  std::vector<Index> extents_;
  Index total_ = 0;
};

/// Column-major linear position of a 1-based multi-index,
/// [i_1,...,i_d] = i_1 + n_1((i_2 - 1) + n_2((i_3 - 1) + ...)).
Index linear_index(const std::vector<Index>& multi_index, const ArrayDims& dims);

/// A d-dimensional array stored flat in column-major order. The flat
/// buffer is the vec of the array, so no copy is ever needed to move
/// between the array and vector views.
class DenseArray {
 public:
  DenseArray() = default;
  explicit DenseArray(ArrayDims dims)
      : dims_(std::move(dims)),
        values_(static_cast<std::size_t>(dims_.size()), 0.0) {}
  DenseArray(ArrayDims dims, std::vector<double> values);

  static DenseArray constant(ArrayDims dims, double value);

  const ArrayDims& dims() const { return dims_; }
  Index size() const { return dims_.size(); }

  double* data() { return values_.data(); }
  const double* data() const { return values_.data(); }

  VectorMap vec() { return VectorMap(values_.data(), size()); }
  ConstVectorMap vec() const { return ConstVectorMap(values_.data(), size()); }

  double operator[](Index i) const { return values_[static_cast<std::size_t>(i)]; }
  double& operator[](Index i) { return values_[static_cast<std::size_t>(i)]; }

  /// Entry at a 1-based multi-index.
  double at(const std::vector<Index>& multi_index) const {
    return values_[static_cast<std::size_t>(linear_index(multi_index, dims_) - 1)];
  }
  double& at(const std::vector<Index>& multi_index) {
    return values_[static_cast<std::size_t>(linear_index(multi_index, dims_) - 1)];
  }

 private:
  ArrayDims dims_;
  std::vector<double> values_;
};

/// Rotated contraction of an r x n_1 matrix against an n_1 x ... x n_d
/// array: contracts the first array dimension and rotates the new one to
/// the last position, giving an n_2 x ... x n_d x r array. Applying it d
/// times with the marginal factors of a tensor product realizes the
/// Kronecker matrix-vector product without forming the product matrix.
DenseArray rho(const Matrix& x, const DenseArray& a);

}  // namespace kronglm
