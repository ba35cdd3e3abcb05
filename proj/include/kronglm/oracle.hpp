#pragma once

#include "kronglm/design.hpp"
#include "kronglm/family.hpp"
#include "kronglm/penalty.hpp"

namespace kronglm::oracle {

/// Default refusal threshold (entries of the dense matrix) for
/// materialization; the dense route exists for desk-scale verification
/// only.
inline constexpr Index kDefaultMaterializeCap = 10'000'000;

/// The explicit n x p design matrix [X_1 | ... | X_c] with each component
/// expanded as a Kronecker product. Column order matches the vec of the
/// coefficient blocks. Refuses when n*p exceeds the cap.
Matrix dense_materialize(const TensorDesign& design,
                         Index max_entries = kDefaultMaterializeCap);

struct DenseProblem {
  Matrix x;
  FamilySpec family;
  ObservationData data;
  PenaltySpec penalty;
  double lambda = 0.0;
};

/// F(theta) = -l(X theta)/n + lambda J(theta) evaluated through the dense
/// matrix.
double dense_objective(const DenseProblem& problem, const Eigen::Ref<const Vector>& theta);

/// Plain (non-accelerated) proximal gradient on the dense problem, run
/// for a fixed iteration count from the zero vector, with the weights and
/// the exact dense Lipschitz constant refreshed every iteration. Slow and
/// simple on purpose: it shares no code with the matrix-free solver
/// beyond the family formulas.
Vector dense_reference_solve(const DenseProblem& problem, Index iters = 100000);

/// (f_a - f_b) / |f_b|; undefined when f_b is zero.
double relative_deviation(double f_a, double f_b);

}  // namespace kronglm::oracle
