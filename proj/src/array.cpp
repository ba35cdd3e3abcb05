#include "kronglm/array.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace kronglm {

ArrayDims::ArrayDims(std::vector<Index> extents) : extents_(std::move(extents)) {
  if (extents_.empty()) {
    throw std::invalid_argument("ArrayDims: need at least one dimension");
  }
  total_ = 1;
  for (Index n : extents_) {
    if (n < 1) {
      throw std::invalid_argument("ArrayDims: extents must be positive");
    }
    total_ *= n;
  }
}

Index linear_index(const std::vector<Index>& multi_index, const ArrayDims& dims) {
  if (static_cast<Index>(multi_index.size()) != dims.ndim()) {
    throw std::invalid_argument("linear_index: index arity does not match dims");
  }
  Index pos = 0;
  for (Index j = dims.ndim() - 1; j >= 0; --j) {
    const Index i = multi_index[static_cast<std::size_t>(j)];
    if (i < 1 || i > dims.extent(j)) {
      throw std::invalid_argument("linear_index: index " + std::to_string(i) +
                                  " out of range in dimension " + std::to_string(j + 1));
    }
    pos = (i - 1) + dims.extent(j) * pos;
  }
  return pos + 1;
}

DenseArray::DenseArray(ArrayDims dims, std::vector<double> values)
    : dims_(std::move(dims)), values_(std::move(values)) {
  if (static_cast<Index>(values_.size()) != dims_.size()) {
    throw std::invalid_argument("DenseArray: value count does not match dims");
  }
}

DenseArray DenseArray::constant(ArrayDims dims, double value) {
  DenseArray out(std::move(dims));
  out.vec().setConstant(value);
  return out;
}

DenseArray rho(const Matrix& x, const DenseArray& a) {
  const ArrayDims& ad = a.dims();
  if (x.cols() != ad.extent(0)) {
    throw std::invalid_argument("rho: matrix has " + std::to_string(x.cols()) +
                                " columns but array's first extent is " +
                                std::to_string(ad.extent(0)));
  }
  const Index n1 = ad.extent(0);
  const Index rest = ad.size() / n1;
  const Index r = x.rows();

  std::vector<Index> out_dims(ad.extents().begin() + 1, ad.extents().end());
  out_dims.push_back(r);
  DenseArray out{ArrayDims(std::move(out_dims))};

  // The flat buffer of A is an n_1 x (n/n_1) matrix in column-major order;
  // the rotated result is the transpose of x * A, again column-major.
  ConstMatrixMap in(a.data(), n1, rest);
  MatrixMap dst(out.data(), rest, r);
  dst.noalias() = in.transpose() * x.transpose();
  return out;
}

}  // namespace kronglm
