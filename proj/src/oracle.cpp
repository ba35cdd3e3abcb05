#include "kronglm/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "kronglm/alloctrack.hpp"

namespace kronglm::oracle {

Matrix dense_materialize(const TensorDesign& design, Index max_entries) {
  const Index n = design.n();
  const Index p = design.p();
  if (n > max_entries / p) {
    throw std::length_error("dense_materialize: refusing to materialize " + std::to_string(n) +
                            " x " + std::to_string(p) + " = " + std::to_string(n * p) +
                            " entries (cap " + std::to_string(max_entries) + ")");
  }
  alloc::note_external(static_cast<std::size_t>(n * p) * sizeof(double));

  Matrix x(n, p);
  Index col0 = 0;
  for (Index r = 0; r < design.n_components(); ++r) {
    // Fold the factors left to right: kron(X_{r,j}, acc) after dimension j
    // equals X_{r,j} (x) ... (x) X_{r,1}.
    Matrix acc = design.factor(r, 0);
    for (Index j = 1; j < design.order(); ++j) {
      const Matrix& a = design.factor(r, j);
      Matrix next(a.rows() * acc.rows(), a.cols() * acc.cols());
      for (Index i = 0; i < a.rows(); ++i) {
        for (Index m = 0; m < a.cols(); ++m) {
          next.block(i * acc.rows(), m * acc.cols(), acc.rows(), acc.cols()) = a(i, m) * acc;
        }
      }
      acc = std::move(next);
    }
    x.middleCols(col0, acc.cols()) = acc;
    col0 += acc.cols();
  }
  return x;
}

double dense_objective(const DenseProblem& problem, const Eigen::Ref<const Vector>& theta) {
  if (theta.size() != problem.x.cols()) {
    throw std::invalid_argument("dense_objective: theta length does not match the design");
  }
  DenseArray eta(problem.data.y.dims());
  eta.vec().noalias() = problem.x * theta;
  const double n = static_cast<double>(problem.x.rows());
  return -loglik(problem.family, problem.data, eta) / n +
         problem.lambda * penalty_value(problem.penalty, theta);
}

namespace {

// Local curvature of -l in eta (the diagonal of the negative Hessian),
// including the prior weights. Written out here so the oracle's stepsize
// does not lean on the solver's weight code.
Vector curvature_weights(const FamilySpec& spec, const ObservationData& data,
                         const Vector& eta) {
  const Index n = eta.size();
  Vector w(n);
  for (Index i = 0; i < n; ++i) {
    const double e = std::clamp(eta[i], -kEtaExpBound, kEtaExpBound);
    double wi = 1.0;
    switch (spec.family) {
      case Family::gaussian:
        wi = 1.0;
        break;
      case Family::binomial: {
        const double mu = 1.0 / (1.0 + std::exp(-e));
        wi = mu * (1.0 - mu);
        break;
      }
      case Family::poisson:
        wi = std::exp(e);
        break;
      case Family::gamma:
        wi = std::exp(-e) * data.y[i];
        break;
    }
    w[i] = data.a[i] * std::max(wi, kWeightFloor) / spec.dispersion;
  }
  return w;
}

// |X^T diag(w) X|_2 / n by power iteration through matrix-vector
// products; the iteration vector is kept warm across calls.
double weighted_gram_norm(const Matrix& x, const Vector& w, Vector& warm) {
  const Index p = x.cols();
  if (warm.size() != p) {
    warm = Vector::Constant(p, 1.0 / std::sqrt(static_cast<double>(p)));
  }
  Vector v = warm;
  double value = 0.0;
  Index settled = 0;
  for (Index it = 0; it < 20000; ++it) {
    Vector xv = x * v;
    xv.array() *= w.array();
    Vector mv = x.transpose() * xv;
    const double norm = mv.norm();
    if (norm == 0.0) return 0.0;
    const double next = v.dot(mv);
    v = mv / norm;
    if (std::abs(next - value) <= 1e-13 * std::max(std::abs(next), 1e-300)) {
      if (++settled >= 2) {
        value = next;
        break;
      }
    } else {
      settled = 0;
    }
    value = next;
  }
  warm = v;
  return value / static_cast<double>(x.rows());
}

}  // namespace

Vector dense_reference_solve(const DenseProblem& problem, Index iters) {
  const Index n = problem.x.rows();
  const Index p = problem.x.cols();
  if (problem.data.y.size() != n) {
    throw std::invalid_argument("dense_reference_solve: data length does not match the design");
  }
  validate(problem.family, problem.data);

  const bool constant_weights =
      problem.family.family == Family::gaussian && problem.family.link == Link::identity;
  Vector theta = Vector::Zero(p);
  Vector warm;
  double lip = 0.0;

  DenseArray eta(problem.data.y.dims());
  Index unchanged = 0;
  for (Index it = 0; it < iters; ++it) {
    eta.vec().noalias() = problem.x * theta;
    const DenseArray u = score(problem.family, problem.data, eta);
    if (it == 0 || !constant_weights) {
      const Vector w = curvature_weights(problem.family, problem.data, eta.vec());
      lip = weighted_gram_norm(problem.x, w, warm);
    }
    const double delta = 1.0 / std::max(lip, 1e-300);
    Vector step = theta + delta / static_cast<double>(n) * (problem.x.transpose() * u.vec());
    if (problem.lambda > 0.0) {
      step = prox(problem.penalty, delta * problem.lambda, step);
    }
    if (!step.allFinite()) {
      throw std::runtime_error("dense_reference_solve: non-finite iterate at iteration " +
                               std::to_string(it));
    }
    const bool same = (step - theta).lpNorm<Eigen::Infinity>() == 0.0;
    theta = std::move(step);
    if (same) {
      // Exact fixed point; further iterations cannot move it.
      if (++unchanged >= 2) break;
    } else {
      unchanged = 0;
    }
  }
  return theta;
}

double relative_deviation(double f_a, double f_b) {
  if (f_b == 0.0) {
    throw std::domain_error("relative_deviation: reference objective is zero");
  }
  return (f_a - f_b) / std::abs(f_b);
}

}  // namespace kronglm::oracle
