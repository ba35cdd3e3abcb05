#pragma once

#include <stdexcept>
#include <string>

#include "kronglm/array.hpp"

namespace kronglm {

enum class Family { gaussian, binomial, poisson, gamma };
enum class Link { identity, logit, log };

/// Linear predictors feeding an exponential are clamped to this range and
/// computed weights are floored, to keep the entrywise maps finite on
/// extreme inputs.
inline constexpr double kEtaExpBound = 30.0;
inline constexpr double kWeightFloor = 1e-10;

/// Exponential family plus link. Only the four canonical-style pairs are
/// supported: gaussian+identity, binomial+logit, poisson+log, gamma+log.
struct FamilySpec {
  Family family = Family::gaussian;
  Link link = Link::identity;
  double dispersion = 1.0;

  static FamilySpec make(Family family, Link link, double dispersion = 1.0);
  static FamilySpec gaussian() { return make(Family::gaussian, Link::identity); }
  static FamilySpec binomial() { return make(Family::binomial, Link::logit); }
  static FamilySpec poisson() { return make(Family::poisson, Link::log); }
  static FamilySpec gamma_log() { return make(Family::gamma, Link::log); }
};

const char* family_name(Family f);
const char* link_name(Link l);
FamilySpec family_from_name(const std::string& name);

/// Observed array and prior observation weights a_i >= 0 on the same
/// grid. For the binomial family y holds success proportions and a the
/// trial counts; cells with a_i = 0 are unobserved.
struct ObservationData {
  DenseArray y;
  DenseArray a;

  explicit ObservationData(DenseArray response)
      : y(std::move(response)), a(DenseArray::constant(y.dims(), 1.0)) {}
  ObservationData(DenseArray response, DenseArray weights);
};

/// Checks that the response lies in the family support wherever a_i > 0.
void validate(const FamilySpec& spec, const ObservationData& data);

/// Entrywise evaluation failure; carries the 0-based flat cell index.
class EvalError : public std::runtime_error {
 public:
  EvalError(const std::string& what, Index cell)
      : std::runtime_error(what + " at cell " + std::to_string(cell)), cell_(cell) {}
  Index cell() const { return cell_; }

 private:
  Index cell_;
};

/// Inverse link applied entrywise: mu_i = g^{-1}(eta_i).
DenseArray mean(const FamilySpec& spec, const DenseArray& eta);

/// Log-likelihood kernel sum_i a_i (y_i theta(eta_i) - b(theta(eta_i)));
/// terms not depending on eta are omitted.
double loglik(const FamilySpec& spec, const ObservationData& data, const DenseArray& eta);

/// Score u_i = a_i theta'(eta_i) (y_i - g^{-1}(eta_i)).
DenseArray score(const FamilySpec& spec, const ObservationData& data, const DenseArray& eta);

/// GLM weights w_i = theta'(eta_i) (g^{-1})'(eta_i), floored away from zero.
DenseArray glm_weights(const FamilySpec& spec, const DenseArray& eta);

/// Working response z_i = a_i (y_i - g^{-1}(eta_i)) g'(g^{-1}(eta_i)) + eta_i,
/// valid together with glm_weights (z = W^{-1}u + eta).
DenseArray working_response(const FamilySpec& spec, const ObservationData& data,
                            const DenseArray& eta);

}  // namespace kronglm
