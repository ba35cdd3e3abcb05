#pragma once

#include <Eigen/Core>

#include "kronglm/design.hpp"
#include "kronglm/family.hpp"

namespace kronglm {

enum class PenaltyKind { lasso, ridge, elastic_net };

/// Convex penalty J. For the elastic net J(theta) = |theta|_1 + alpha*|theta|_2^2,
/// so lasso is elastic_net with alpha = 0; ridge is the plain squared 2-norm.
struct PenaltySpec {
  PenaltyKind kind = PenaltyKind::lasso;
  double alpha = 0.0;

  static PenaltySpec lasso() { return {PenaltyKind::lasso, 0.0}; }
  static PenaltySpec ridge() { return {PenaltyKind::ridge, 0.0}; }
  static PenaltySpec elastic_net(double alpha);

  bool has_l1() const { return kind != PenaltyKind::ridge; }
};

const char* penalty_name(PenaltyKind k);

double penalty_value(const PenaltySpec& spec, const Eigen::Ref<const Vector>& theta);

/// prox_{gamma J}(z) = argmin_x 1/2 |x - z|^2 + gamma J(x), entrywise:
/// soft thresholding for the 1-norm, multiplicative shrinkage for the
/// squared 2-norm, and their composition for the elastic net.
Vector prox(const PenaltySpec& spec, double gamma, const Eigen::Ref<const Vector>& z);
void prox_inplace(const PenaltySpec& spec, double gamma, VectorMap z);

/// Smallest penalty level at which the all-zero coefficient vector is
/// optimal: the sup-norm of (1/n) X^T u(eta(0)), from the subgradient
/// condition of the l1 part at theta = 0. Requires an l1 component.
double lambda_max(const TensorDesign& design, const FamilySpec& spec,
                  const ObservationData& data, const PenaltySpec& penalty);

}  // namespace kronglm
