#include "kronglm/penalty.hpp"

#include <cmath>
#include <stdexcept>

namespace kronglm {

PenaltySpec PenaltySpec::elastic_net(double alpha) {
  if (!(alpha >= 0.0)) {
    throw std::invalid_argument("elastic net alpha must be nonnegative");
  }
  return {PenaltyKind::elastic_net, alpha};
}

const char* penalty_name(PenaltyKind k) {
  switch (k) {
    case PenaltyKind::lasso: return "lasso";
    case PenaltyKind::ridge: return "ridge";
    case PenaltyKind::elastic_net: return "elasticnet";
  }
  return "?";
}

double penalty_value(const PenaltySpec& spec, const Eigen::Ref<const Vector>& theta) {
  switch (spec.kind) {
    case PenaltyKind::lasso:
      return theta.lpNorm<1>();
    case PenaltyKind::ridge:
      return theta.squaredNorm();
    case PenaltyKind::elastic_net:
      return theta.lpNorm<1>() + spec.alpha * theta.squaredNorm();
  }
  return 0.0;
}

namespace {

inline double soft_threshold(double z, double gamma) {
  const double mag = std::abs(z) - gamma;
  if (mag <= 0.0) return 0.0;
  return z > 0.0 ? mag : -mag;
}

}  // namespace

void prox_inplace(const PenaltySpec& spec, double gamma, VectorMap z) {
  if (!(gamma > 0.0)) {
    throw std::invalid_argument("prox: gamma must be positive");
  }
  const Index n = z.size();
  switch (spec.kind) {
    case PenaltyKind::lasso:
      for (Index i = 0; i < n; ++i) z[i] = soft_threshold(z[i], gamma);
      break;
    case PenaltyKind::ridge:
      z *= 1.0 / (1.0 + 2.0 * gamma);
      break;
    case PenaltyKind::elastic_net: {
      const double shrink = 1.0 / (1.0 + 2.0 * spec.alpha * gamma);
      for (Index i = 0; i < n; ++i) z[i] = shrink * soft_threshold(z[i], gamma);
      break;
    }
  }
}

Vector prox(const PenaltySpec& spec, double gamma, const Eigen::Ref<const Vector>& z) {
  Vector out = z;
  prox_inplace(spec, gamma, VectorMap(out.data(), out.size()));
  return out;
}

double lambda_max(const TensorDesign& design, const FamilySpec& spec,
                  const ObservationData& data, const PenaltySpec& penalty) {
  if (!penalty.has_l1()) {
    throw std::invalid_argument("lambda_max: pure ridge penalty has no finite lambda_max");
  }
  if (data.y.dims() != design.row_dims()) {
    throw std::invalid_argument("lambda_max: data dims do not match the design");
  }
  validate(spec, data);
  DenseArray eta0(design.row_dims());
  DenseArray u0 = score(spec, data, eta0);
  CoefficientBlocks grad0 = g_map(design, u0);
  return grad0.vec().cwiseAbs().maxCoeff() / static_cast<double>(design.n());
}

}  // namespace kronglm
