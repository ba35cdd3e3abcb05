#pragma once

#include <utility>
#include <vector>

#include "kronglm/array.hpp"

namespace kronglm {

/// Strictly increasing marginal grid points of one array dimension.
struct MarginalGrid {
  std::vector<double> points;

  explicit MarginalGrid(std::vector<double> pts);
  Index size() const { return static_cast<Index>(points.size()); }
  double lo() const { return points.front(); }
  double hi() const { return points.back(); }
};

/// B-spline basis on a clamped knot vector with uniform interior spans
/// over the grid range. order 4 is the cubic basis.
struct BasisSpec {
  Index order = 4;
  Index n_basis = 0;
};

/// The n_j x p_j marginal design matrix Phi_j = (phi_{j,m}(x_k))_{k,m}
/// evaluated by the two-term B-spline recursion. Rows sum to one and
/// have at most `order` nonzero entries.
Matrix bspline_design(const MarginalGrid& grid, const BasisSpec& spec);

/// Basis-count rule max(ceil(n_j / ratio), 5).
Index default_basis_count(Index n_points, Index ratio);

struct BinnedCounts {
  DenseArray counts;
  Index dropped = 0;
};

/// Bins scattered d-tuples into an equal-width grid. Bins are
/// right-open except the last, which is right-closed; points outside the
/// bounds are dropped (and counted).
BinnedCounts bin_scatter(const std::vector<std::vector<double>>& points,
                         const std::vector<std::pair<double, double>>& bounds,
                         const std::vector<Index>& bins);

}  // namespace kronglm
