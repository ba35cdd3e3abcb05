#include "kronglm/bspline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kronglm {

MarginalGrid::MarginalGrid(std::vector<double> pts) : points(std::move(pts)) {
  if (points.size() < 2) {
    throw std::invalid_argument("MarginalGrid: need at least two grid points");
  }
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (!(points[i] > points[i - 1])) {
      throw std::invalid_argument("MarginalGrid: points must be strictly increasing");
    }
  }
}

Index default_basis_count(Index n_points, Index ratio) {
  if (n_points < 1 || ratio < 1) {
    throw std::invalid_argument("default_basis_count: arguments must be positive");
  }
  const Index ceil_div = (n_points + ratio - 1) / ratio;
  return std::max<Index>(ceil_div, 5);
}

namespace {

// Clamped knot vector: `order` copies of each boundary, p - order
// interior knots on a uniform spacing (p - order + 1 spans).
std::vector<double> clamped_uniform_knots(double lo, double hi, Index p, Index order) {
  const Index spans = p - order + 1;
  const double h = (hi - lo) / static_cast<double>(spans);
  std::vector<double> t(static_cast<std::size_t>(p + order));
  for (Index i = 0; i < order; ++i) t[static_cast<std::size_t>(i)] = lo;
  for (Index i = 0; i < p - order; ++i) {
    t[static_cast<std::size_t>(order + i)] = lo + h * static_cast<double>(i + 1);
  }
  for (Index i = 0; i < order; ++i) t[static_cast<std::size_t>(p + i)] = hi;
  return t;
}

// Largest span index s in [order-1, p-1] with t[s] <= x < t[s+1]; the
// right boundary belongs to the last span.
Index find_span(const std::vector<double>& t, Index p, Index order, double x) {
  const Index deg = order - 1;
  if (x >= t[static_cast<std::size_t>(p)]) return p - 1;
  Index lo = deg;
  Index hi = p;
  while (hi - lo > 1) {
    const Index mid = (lo + hi) / 2;
    if (x < t[static_cast<std::size_t>(mid)]) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return lo;
}

}  // namespace

Matrix bspline_design(const MarginalGrid& grid, const BasisSpec& spec) {
  const Index p = spec.n_basis;
  const Index order = spec.order;
  if (order < 1) {
    throw std::invalid_argument("bspline_design: order must be at least 1");
  }
  if (p < order) {
    throw std::invalid_argument("bspline_design: need at least `order` basis functions");
  }
  const Index deg = order - 1;
  const std::vector<double> t = clamped_uniform_knots(grid.lo(), grid.hi(), p, order);

  Matrix design = Matrix::Zero(grid.size(), p);
  std::vector<double> nvals(static_cast<std::size_t>(order));
  std::vector<double> left(static_cast<std::size_t>(order));
  std::vector<double> right(static_cast<std::size_t>(order));
  for (Index k = 0; k < grid.size(); ++k) {
    const double x = grid.points[static_cast<std::size_t>(k)];
    const Index s = find_span(t, p, order, x);
    // Two-term recursion on the nonvanishing functions of the span.
    nvals[0] = 1.0;
    for (Index j = 1; j <= deg; ++j) {
      left[static_cast<std::size_t>(j)] = x - t[static_cast<std::size_t>(s + 1 - j)];
      right[static_cast<std::size_t>(j)] = t[static_cast<std::size_t>(s + j)] - x;
      double saved = 0.0;
      for (Index m = 0; m < j; ++m) {
        const double denom = right[static_cast<std::size_t>(m + 1)] +
                             left[static_cast<std::size_t>(j - m)];
        const double temp = nvals[static_cast<std::size_t>(m)] / denom;
        nvals[static_cast<std::size_t>(m)] =
            saved + right[static_cast<std::size_t>(m + 1)] * temp;
        saved = left[static_cast<std::size_t>(j - m)] * temp;
      }
      nvals[static_cast<std::size_t>(j)] = saved;
    }
    for (Index m = 0; m <= deg; ++m) {
      design(k, s - deg + m) = nvals[static_cast<std::size_t>(m)];
    }
  }
  return design;
}

BinnedCounts bin_scatter(const std::vector<std::vector<double>>& points,
                         const std::vector<std::pair<double, double>>& bounds,
                         const std::vector<Index>& bins) {
  const std::size_t d = bins.size();
  if (d == 0 || bounds.size() != d) {
    throw std::invalid_argument("bin_scatter: bounds and bins must agree on the dimension");
  }
  std::vector<Index> extents(d);
  for (std::size_t j = 0; j < d; ++j) {
    if (bins[j] < 1) throw std::invalid_argument("bin_scatter: need at least one bin");
    if (!(bounds[j].second > bounds[j].first)) {
      throw std::invalid_argument("bin_scatter: degenerate bounds");
    }
    extents[j] = bins[j];
  }

  BinnedCounts out{DenseArray(ArrayDims(extents)), 0};
  std::vector<Index> idx(d);
  for (const auto& pt : points) {
    if (pt.size() != d) {
      throw std::invalid_argument("bin_scatter: point arity does not match the grid");
    }
    bool keep = true;
    for (std::size_t j = 0; j < d && keep; ++j) {
      const double lo = bounds[j].first;
      const double hi = bounds[j].second;
      const double x = pt[j];
      if (x < lo || x > hi) {
        keep = false;
        break;
      }
      const double width = (hi - lo) / static_cast<double>(bins[j]);
      Index cell = static_cast<Index>(std::floor((x - lo) / width));
      if (cell >= bins[j]) cell = bins[j] - 1;  // upper bound closes the last bin
      idx[j] = cell;
    }
    if (!keep) {
      ++out.dropped;
      continue;
    }
    Index offset = 0;
    for (std::size_t j = d; j-- > 0;) {
      offset = offset * extents[j] + idx[j];
    }
    out.counts[offset] += 1.0;
  }
  return out;
}

}  // namespace kronglm
