// Python bindings for the core operations: the array maps, the path
// solver, prediction, the spline basis and the simulator. Arrays cross
// the boundary as numpy arrays in column-major (Fortran) layout.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>

#include "kronglm/bspline.hpp"
#include "kronglm/oracle.hpp"
#include "kronglm/path.hpp"
#include "kronglm/simulate.hpp"

namespace py = pybind11;
using namespace kronglm;

namespace {

using FArray = py::array_t<double, py::array::f_style | py::array::forcecast>;

DenseArray array_in(const FArray& a) {
  std::vector<Index> extents(static_cast<std::size_t>(a.ndim()));
  for (py::ssize_t j = 0; j < a.ndim(); ++j) {
    extents[static_cast<std::size_t>(j)] = static_cast<Index>(a.shape(j));
  }
  DenseArray out{ArrayDims(std::move(extents))};
  std::memcpy(out.data(), a.data(), sizeof(double) * static_cast<std::size_t>(out.size()));
  return out;
}

py::array_t<double> array_out(const DenseArray& a) {
  std::vector<py::ssize_t> shape;
  std::vector<py::ssize_t> strides;
  py::ssize_t stride = static_cast<py::ssize_t>(sizeof(double));
  for (Index j = 0; j < a.dims().ndim(); ++j) {
    shape.push_back(static_cast<py::ssize_t>(a.dims().extent(j)));
    strides.push_back(stride);
    stride *= static_cast<py::ssize_t>(a.dims().extent(j));
  }
  py::array_t<double> out(shape, strides);
  std::memcpy(out.mutable_data(), a.data(),
              sizeof(double) * static_cast<std::size_t>(a.size()));
  return out;
}

Matrix matrix_in(const FArray& a) {
  if (a.ndim() != 2) {
    throw std::invalid_argument("expected a 2-d array");
  }
  return Eigen::Map<const Matrix>(a.data(), static_cast<Index>(a.shape(0)),
                                  static_cast<Index>(a.shape(1)));
}

py::array_t<double> matrix_out(const Matrix& m) {
  py::array_t<double> out({static_cast<py::ssize_t>(m.rows()),
                           static_cast<py::ssize_t>(m.cols())},
                          {static_cast<py::ssize_t>(sizeof(double)),
                           static_cast<py::ssize_t>(sizeof(double) * m.rows())});
  std::memcpy(out.mutable_data(), m.data(),
              sizeof(double) * static_cast<std::size_t>(m.size()));
  return out;
}

TensorDesign design_in(const std::vector<std::vector<FArray>>& components) {
  std::vector<std::vector<Matrix>> comps;
  for (const auto& comp : components) {
    std::vector<Matrix> factors;
    for (const auto& f : comp) factors.push_back(matrix_in(f));
    comps.push_back(std::move(factors));
  }
  return TensorDesign(std::move(comps));
}

CoefficientBlocks coef_in(const TensorDesign& design, const std::vector<FArray>& blocks) {
  CoefficientBlocks coef = CoefficientBlocks::zeros(design);
  if (static_cast<Index>(blocks.size()) != design.n_components()) {
    throw std::invalid_argument("wrong number of coefficient blocks");
  }
  for (Index r = 0; r < design.n_components(); ++r) {
    DenseArray block = array_in(blocks[static_cast<std::size_t>(r)]);
    if (block.dims() != design.coef_dims(r)) {
      throw std::invalid_argument("coefficient block " + std::to_string(r) +
                                  " does not match the design");
    }
    coef.block_vec(r) = block.vec();
  }
  return coef;
}

py::list coef_out(const CoefficientBlocks& coef) {
  py::list blocks;
  for (Index r = 0; r < coef.n_blocks(); ++r) {
    blocks.append(array_out(coef.block_array(r)));
  }
  return blocks;
}

ObservationData data_in(const FArray& y, const py::object& weights) {
  DenseArray response = array_in(y);
  if (weights.is_none()) return ObservationData(std::move(response));
  return ObservationData(std::move(response), array_in(weights.cast<FArray>()));
}

PenaltySpec penalty_in(const std::string& name, double alpha) {
  if (name == "lasso") return PenaltySpec::lasso();
  if (name == "ridge") return PenaltySpec::ridge();
  if (name == "elasticnet" || name == "elastic_net") return PenaltySpec::elastic_net(alpha);
  throw std::invalid_argument("unknown penalty: " + name);
}

}  // namespace

PYBIND11_MODULE(kronglm, m) {
  m.doc() = "design-matrix-free penalized estimation for generalized linear array models";

  m.def(
      "linear_index",
      [](const std::vector<Index>& multi, const std::vector<Index>& dims) {
        return linear_index(multi, ArrayDims(dims));
      },
      py::arg("multi_index"), py::arg("dims"),
      "column-major linear position of a 1-based multi-index");

  m.def(
      "rho", [](const FArray& x, const FArray& a) { return array_out(rho(matrix_in(x), array_in(a))); },
      py::arg("x"), py::arg("a"),
      "rotated contraction of a matrix against the first array dimension");

  m.def(
      "h_map",
      [](const std::vector<std::vector<FArray>>& design, const std::vector<FArray>& coef) {
        TensorDesign d = design_in(design);
        return array_out(h_map(d, coef_in(d, coef)));
      },
      py::arg("design"), py::arg("coef"),
      "linear predictor array of the tensor-product design, vec = X theta");

  m.def(
      "g_map",
      [](const std::vector<std::vector<FArray>>& design, const FArray& u) {
        TensorDesign d = design_in(design);
        return coef_out(g_map(d, array_in(u)));
      },
      py::arg("design"), py::arg("u"), "adjoint of h_map, vec = X^T vec(u)");

  m.def(
      "lambda_max",
      [](const std::vector<std::vector<FArray>>& design, const std::string& family,
         const FArray& y, const py::object& weights) {
        TensorDesign d = design_in(design);
        return lambda_max(d, family_from_name(family), data_in(y, weights),
                          PenaltySpec::lasso());
      },
      py::arg("design"), py::arg("family"), py::arg("y"), py::arg("weights") = py::none(),
      "smallest penalty level with an all-zero solution");

  m.def(
      "fit_path",
      [](const std::vector<std::vector<FArray>>& design, const std::string& family,
         const FArray& y, const py::object& weights, const std::string& penalty, double alpha,
         Index n_lambda, double lambda_min_ratio, const py::object& lambdas,
         const std::string& iwls, double nu, double tol, Index maxit, double inner_tol,
         Index inner_maxit) {
        TensorDesign d = design_in(design);
        ObservationData data = data_in(y, weights);
        PathConfig config;
        config.n_lambda = n_lambda;
        config.lambda_min_ratio = lambda_min_ratio;
        config.outer.weight_mode = weight_mode_from_name(iwls);
        config.outer.outer_tol = tol;
        config.outer.max_outer = maxit;
        config.outer.inner.nu = nu;
        config.outer.inner.tol = inner_tol;
        config.outer.inner.max_iters = inner_maxit;
        const PenaltySpec pen = penalty_in(penalty, alpha);
        FitPath path;
        if (lambdas.is_none()) {
          path = fit_path(d, family_from_name(family), data, pen, config);
        } else {
          path = fit_path(d, family_from_name(family), data, pen, config,
                          lambdas.cast<std::vector<double>>());
        }
        py::dict out;
        out["lambdas"] = path.lambdas;
        out["objectives"] = path.objectives;
        out["lambda_max"] = path.lambda_max_value;
        out["truncated"] = path.truncated;
        py::list coefs;
        py::list nonzeros;
        py::list outer_iters;
        py::list converged;
        for (Index t = 0; t < path.n_models(); ++t) {
          const auto& fit = path.fits[static_cast<std::size_t>(t)];
          coefs.append(coef_out(fit));
          Index nnz = 0;
          for (Index i = 0; i < fit.size(); ++i) {
            if (fit.vec()[i] != 0.0) ++nnz;
          }
          nonzeros.append(nnz);
          outer_iters.append(
              path.diagnostics[static_cast<std::size_t>(t)].iterations.size());
          converged.append(path.diagnostics[static_cast<std::size_t>(t)].converged());
        }
        out["coefficients"] = coefs;
        out["nonzero"] = nonzeros;
        out["outer_iters"] = outer_iters;
        out["converged"] = converged;
        return out;
      },
      py::arg("design"), py::arg("family"), py::arg("y"), py::arg("weights") = py::none(),
      py::arg("penalty") = "lasso", py::arg("alpha") = 0.0, py::arg("n_lambda") = 100,
      py::arg("lambda_min_ratio") = 1e-4, py::arg("lambdas") = py::none(),
      py::arg("iwls") = "exact", py::arg("nu") = 1.0, py::arg("tol") = 1e-8,
      py::arg("maxit") = 100, py::arg("inner_tol") = 1e-8, py::arg("inner_maxit") = 2000,
      "fit a warm-started regularization path");

  m.def(
      "predict",
      [](const std::vector<std::vector<FArray>>& design, const std::string& family,
         const std::vector<FArray>& coef) {
        TensorDesign d = design_in(design);
        Prediction pred = predict(d, family_from_name(family), coef_in(d, coef));
        return py::make_tuple(array_out(pred.eta), array_out(pred.mu));
      },
      py::arg("design"), py::arg("family"), py::arg("coef"),
      "linear predictor and fitted mean arrays");

  m.def(
      "bspline_design",
      [](const std::vector<double>& points, Index order, Index n_basis) {
        return matrix_out(bspline_design(MarginalGrid(points), BasisSpec{order, n_basis}));
      },
      py::arg("points"), py::arg("order") = 4, py::arg("n_basis") = 0,
      "marginal B-spline design matrix on a clamped uniform knot vector");

  m.def("default_basis_count", &default_basis_count, py::arg("n_points"), py::arg("ratio"),
        "basis-count rule max(ceil(n/ratio), 5)");

  m.def(
      "dense_materialize",
      [](const std::vector<std::vector<FArray>>& design, Index cap) {
        return matrix_out(oracle::dense_materialize(design_in(design), cap));
      },
      py::arg("design"), py::arg("cap") = oracle::kDefaultMaterializeCap,
      "explicit dense design matrix (desk-scale verification only)");

  m.def(
      "simulate",
      [](double r, double q, double kappa, double sigma, double s, std::uint64_t seed,
         const std::string& family) {
        SimConfig config{r, q, kappa, sigma, s, seed};
        Simulated sim = simulate_glam(config, family_from_name(family));
        py::dict out;
        py::list factors;
        for (Index j = 0; j < sim.design.order(); ++j) {
          factors.append(matrix_out(sim.design.factor(0, j)));
        }
        out["design"] = factors;
        out["theta"] = array_out(sim.theta.block_array(0));
        out["response"] = array_out(sim.response);
        out["weights"] = array_out(sim.weights);
        return out;
      },
      py::arg("r") = 0.1, py::arg("q") = 0.5, py::arg("kappa") = 0.0, py::arg("sigma") = 1.0,
      py::arg("s") = 1.0, py::arg("seed") = 1, py::arg("family") = "gaussian",
      "generate the 3-d benchmark design, coefficients and responses");
}
