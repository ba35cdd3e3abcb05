#include "kronglm/design.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace kronglm {

namespace {

void check_same_dims(const ArrayDims& got, const ArrayDims& want, const char* what) {
  if (got != want) {
    throw std::invalid_argument(std::string(what) + ": array dimensions do not match");
  }
}

}  // namespace

TensorDesign::TensorDesign(std::vector<std::vector<Matrix>> components)
    : components_(std::move(components)) {
  if (components_.empty()) {
    throw std::invalid_argument("TensorDesign: need at least one component");
  }
  const std::size_t d = components_.front().size();
  if (d == 0) {
    throw std::invalid_argument("TensorDesign: need at least one marginal factor");
  }
  std::vector<Index> rows(d);
  for (std::size_t j = 0; j < d; ++j) {
    rows[j] = components_.front()[j].rows();
  }
  for (const auto& comp : components_) {
    if (comp.size() != d) {
      throw std::invalid_argument("TensorDesign: components must share the array order d");
    }
    std::vector<Index> cols(d);
    for (std::size_t j = 0; j < d; ++j) {
      if (comp[j].rows() != rows[j]) {
        throw std::invalid_argument("TensorDesign: factor row counts differ across components");
      }
      if (comp[j].cols() < 1) {
        throw std::invalid_argument("TensorDesign: factors must have at least one column");
      }
      cols[j] = comp[j].cols();
    }
    coef_dims_.emplace_back(std::move(cols));
    p_total_ += coef_dims_.back().size();
  }
  row_dims_ = ArrayDims(std::move(rows));
}

CoefficientBlocks::CoefficientBlocks(std::vector<ArrayDims> block_dims)
    : block_dims_(std::move(block_dims)) {
  if (block_dims_.empty()) {
    throw std::invalid_argument("CoefficientBlocks: need at least one block");
  }
  Index total = 0;
  offsets_.reserve(block_dims_.size());
  for (const ArrayDims& bd : block_dims_) {
    offsets_.push_back(total);
    total += bd.size();
  }
  values_.assign(static_cast<std::size_t>(total), 0.0);
}

CoefficientBlocks CoefficientBlocks::zeros(const TensorDesign& design) {
  std::vector<ArrayDims> dims;
  dims.reserve(static_cast<std::size_t>(design.n_components()));
  for (Index r = 0; r < design.n_components(); ++r) {
    dims.push_back(design.coef_dims(r));
  }
  return CoefficientBlocks(std::move(dims));
}

DenseArray CoefficientBlocks::block_array(Index r) const {
  DenseArray out(block_dims(r));
  out.vec() = block_vec(r);
  return out;
}

bool CoefficientBlocks::matches(const TensorDesign& design) const {
  if (n_blocks() != design.n_components()) return false;
  for (Index r = 0; r < n_blocks(); ++r) {
    if (block_dims(r) != design.coef_dims(r)) return false;
  }
  return true;
}

DenseArray h_map(const TensorDesign& design, const CoefficientBlocks& coef) {
  if (!coef.matches(design)) {
    throw std::invalid_argument("h_map: coefficient blocks do not match the design");
  }
  DenseArray out(design.row_dims());
  for (Index r = 0; r < design.n_components(); ++r) {
    DenseArray cur = coef.block_array(r);
    for (Index j = 0; j < design.order(); ++j) {
      cur = rho(design.factor(r, j), cur);
    }
    out.vec() += cur.vec();
  }
  return out;
}

CoefficientBlocks g_map(const TensorDesign& design, const DenseArray& u) {
  check_same_dims(u.dims(), design.row_dims(), "g_map");
  CoefficientBlocks out = CoefficientBlocks::zeros(design);
  for (Index r = 0; r < design.n_components(); ++r) {
    DenseArray cur = u;
    for (Index j = 0; j < design.order(); ++j) {
      Matrix xt = design.factor(r, j).transpose();
      cur = rho(xt, cur);
    }
    out.block_vec(r) = cur.vec();
  }
  return out;
}

CoefficientBlocks xtwx_apply(const TensorDesign& design, const DenseArray& v,
                             const CoefficientBlocks& coef) {
  check_same_dims(v.dims(), design.row_dims(), "xtwx_apply");
  DenseArray eta = h_map(design, coef);
  eta.vec().array() *= v.vec().array();
  return g_map(design, eta);
}

GramBlocks::GramBlocks(const TensorDesign& design, const std::vector<Vector>& weight_factors) {
  const Index c = design.n_components();
  const Index d = design.order();
  if (static_cast<Index>(weight_factors.size()) != d) {
    throw std::invalid_argument("GramBlocks: need one weight factor per dimension");
  }
  for (Index j = 0; j < d; ++j) {
    if (weight_factors[static_cast<std::size_t>(j)].size() != design.row_dims().extent(j)) {
      throw std::invalid_argument("GramBlocks: weight factor length does not match n_j");
    }
  }
  blocks_.resize(static_cast<std::size_t>(c));
  for (Index m = 0; m < c; ++m) {
    auto& row = blocks_[static_cast<std::size_t>(m)];
    row.resize(static_cast<std::size_t>(c));
    for (Index r = 0; r < c; ++r) {
      auto& cell = row[static_cast<std::size_t>(r)];
      cell.reserve(static_cast<std::size_t>(d));
      for (Index j = 0; j < d; ++j) {
        const Vector& w = weight_factors[static_cast<std::size_t>(j)];
        cell.emplace_back(design.factor(m, j).transpose() * w.asDiagonal() *
                          design.factor(r, j));
      }
    }
  }
}

CoefficientBlocks xtwx_apply_tensor(const TensorDesign& design, const GramBlocks& gram,
                                    const CoefficientBlocks& coef) {
  if (!coef.matches(design)) {
    throw std::invalid_argument("xtwx_apply_tensor: coefficient blocks do not match the design");
  }
  if (gram.n_components() != design.n_components() || gram.order() != design.order()) {
    throw std::invalid_argument("xtwx_apply_tensor: gram blocks do not match the design");
  }
  CoefficientBlocks out = CoefficientBlocks::zeros(design);
  for (Index m = 0; m < design.n_components(); ++m) {
    for (Index r = 0; r < design.n_components(); ++r) {
      DenseArray cur = coef.block_array(r);
      for (Index j = 0; j < design.order(); ++j) {
        const Matrix& b = gram.factor(m, r, j);
        if (b.rows() != design.coef_dims(m).extent(j) ||
            b.cols() != design.coef_dims(r).extent(j)) {
          throw std::invalid_argument("xtwx_apply_tensor: gram block shape mismatch");
        }
        cur = rho(b, cur);
      }
      out.block_vec(m) += cur.vec();
    }
  }
  return out;
}

}  // namespace kronglm
