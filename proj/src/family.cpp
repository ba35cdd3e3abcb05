#include "kronglm/family.hpp"

#include <algorithm>
#include <cmath>

namespace kronglm {

namespace {

double clamp_eta(double eta) {
  return std::clamp(eta, -kEtaExpBound, kEtaExpBound);
}

double logistic(double eta) { return 1.0 / (1.0 + std::exp(-clamp_eta(eta))); }

// log(1 + exp(eta)) without overflow.
double log1pexp(double eta) {
  if (eta > 0.0) return eta + std::log1p(std::exp(-eta));
  return std::log1p(std::exp(eta));
}

}  // namespace

FamilySpec FamilySpec::make(Family family, Link link, double dispersion) {
  const bool supported = (family == Family::gaussian && link == Link::identity) ||
                         (family == Family::binomial && link == Link::logit) ||
                         (family == Family::poisson && link == Link::log) ||
                         (family == Family::gamma && link == Link::log);
  if (!supported) {
    throw std::invalid_argument(std::string("unsupported family/link pair: ") +
                                family_name(family) + "+" + link_name(link));
  }
  if (!(dispersion > 0.0)) {
    throw std::invalid_argument("dispersion must be positive");
  }
  return FamilySpec{family, link, dispersion};
}

const char* family_name(Family f) {
  switch (f) {
    case Family::gaussian: return "gaussian";
    case Family::binomial: return "binomial";
    case Family::poisson: return "poisson";
    case Family::gamma: return "gamma";
  }
  return "?";
}

const char* link_name(Link l) {
  switch (l) {
    case Link::identity: return "identity";
    case Link::logit: return "logit";
    case Link::log: return "log";
  }
  return "?";
}

FamilySpec family_from_name(const std::string& name) {
  if (name == "gaussian") return FamilySpec::gaussian();
  if (name == "binomial") return FamilySpec::binomial();
  if (name == "poisson") return FamilySpec::poisson();
  if (name == "gamma") return FamilySpec::gamma_log();
  throw std::invalid_argument("unknown family: " + name);
}

ObservationData::ObservationData(DenseArray response, DenseArray weights)
    : y(std::move(response)), a(std::move(weights)) {
  if (y.dims() != a.dims()) {
    throw std::invalid_argument("ObservationData: response and weight dims differ");
  }
}

void validate(const FamilySpec& spec, const ObservationData& data) {
  const Index n = data.y.size();
  for (Index i = 0; i < n; ++i) {
    const double ai = data.a[i];
    if (!(ai >= 0.0) || !std::isfinite(ai)) {
      throw std::invalid_argument("observation weight must be finite and nonnegative at cell " +
                                  std::to_string(i));
    }
    if (ai == 0.0) continue;
    const double yi = data.y[i];
    if (!std::isfinite(yi)) {
      throw std::invalid_argument("response must be finite at cell " + std::to_string(i));
    }
    switch (spec.family) {
      case Family::gaussian:
        break;
      case Family::binomial:
        if (yi < 0.0 || yi > 1.0) {
          throw std::invalid_argument("binomial response must be a proportion in [0,1] at cell " +
                                      std::to_string(i));
        }
        break;
      case Family::poisson:
        if (yi < 0.0) {
          throw std::invalid_argument("poisson response must be nonnegative at cell " +
                                      std::to_string(i));
        }
        break;
      case Family::gamma:
        if (!(yi > 0.0)) {
          throw std::invalid_argument("gamma response must be positive at cell " +
                                      std::to_string(i));
        }
        break;
    }
  }
}

DenseArray mean(const FamilySpec& spec, const DenseArray& eta) {
  DenseArray mu(eta.dims());
  const Index n = eta.size();
  switch (spec.family) {
    case Family::gaussian:
      mu.vec() = eta.vec();
      break;
    case Family::binomial:
      for (Index i = 0; i < n; ++i) mu[i] = logistic(eta[i]);
      break;
    case Family::poisson:
    case Family::gamma:
      for (Index i = 0; i < n; ++i) mu[i] = std::exp(clamp_eta(eta[i]));
      break;
  }
  return mu;
}

double loglik(const FamilySpec& spec, const ObservationData& data, const DenseArray& eta) {
  if (eta.dims() != data.y.dims()) {
    throw std::invalid_argument("loglik: eta dims do not match the data");
  }
  const Index n = eta.size();
  double sum = 0.0;
  for (Index i = 0; i < n; ++i) {
    const double ai = data.a[i];
    if (ai == 0.0) continue;
    const double yi = data.y[i];
    const double e = eta[i];
    double term = 0.0;
    switch (spec.family) {
      case Family::gaussian:
        term = ai * (yi * e - 0.5 * e * e);
        break;
      case Family::binomial:
        term = ai * (yi * e - log1pexp(e));
        break;
      case Family::poisson:
        term = ai * (yi * e - std::exp(clamp_eta(e)));
        break;
      case Family::gamma:
        // theta(eta) = -exp(-eta), b(theta) = -log(-theta) = eta.
        term = ai * (-yi * std::exp(-clamp_eta(e)) - e);
        break;
    }
    if (!std::isfinite(term)) {
      throw EvalError("non-finite log-likelihood term", i);
    }
    sum += term;
  }
  return sum / spec.dispersion;
}

DenseArray score(const FamilySpec& spec, const ObservationData& data, const DenseArray& eta) {
  if (eta.dims() != data.y.dims()) {
    throw std::invalid_argument("score: eta dims do not match the data");
  }
  DenseArray u(eta.dims());
  const Index n = eta.size();
  for (Index i = 0; i < n; ++i) {
    const double ai = data.a[i];
    const double e = eta[i];
    const double ec = clamp_eta(e);
    double ui = 0.0;
    switch (spec.family) {
      case Family::gaussian:
        ui = ai * (data.y[i] - e);
        break;
      case Family::binomial:
        ui = ai * (data.y[i] - logistic(e));
        break;
      case Family::poisson:
        ui = ai * (data.y[i] - std::exp(ec));
        break;
      case Family::gamma:
        ui = ai * std::exp(-ec) * (data.y[i] - std::exp(ec));
        break;
    }
    ui /= spec.dispersion;
    if (!std::isfinite(ui)) {
      throw EvalError("non-finite score entry", i);
    }
    u[i] = ui;
  }
  return u;
}

DenseArray glm_weights(const FamilySpec& spec, const DenseArray& eta) {
  DenseArray w(eta.dims());
  const Index n = eta.size();
  for (Index i = 0; i < n; ++i) {
    double wi = 1.0;
    switch (spec.family) {
      case Family::gaussian:
      case Family::gamma:
        // gamma+log: theta'(eta) (g^{-1})'(eta) = e^{-eta} e^{eta} = 1.
        wi = 1.0;
        break;
      case Family::binomial: {
        const double mu = logistic(eta[i]);
        wi = mu * (1.0 - mu);
        break;
      }
      case Family::poisson:
        wi = std::exp(clamp_eta(eta[i]));
        break;
    }
    w[i] = std::max(wi, kWeightFloor) / spec.dispersion;
  }
  return w;
}

DenseArray working_response(const FamilySpec& spec, const ObservationData& data,
                            const DenseArray& eta) {
  if (eta.dims() != data.y.dims()) {
    throw std::invalid_argument("working_response: eta dims do not match the data");
  }
  DenseArray z(eta.dims());
  const Index n = eta.size();
  for (Index i = 0; i < n; ++i) {
    const double ai = data.a[i];
    const double e = eta[i];
    const double ec = clamp_eta(e);
    double zi = e;
    switch (spec.family) {
      case Family::gaussian:
        zi = ai * (data.y[i] - e) + e;
        break;
      case Family::binomial: {
        const double mu = logistic(ec);
        zi = ai * (data.y[i] - mu) / std::max(mu * (1.0 - mu), kWeightFloor) + e;
        break;
      }
      case Family::poisson: {
        const double mu = std::exp(ec);
        zi = ai * (data.y[i] - mu) / std::max(mu, kWeightFloor) + e;
        break;
      }
      case Family::gamma: {
        const double mu = std::exp(ec);
        zi = ai * (data.y[i] - mu) / mu + e;
        break;
      }
    }
    if (!std::isfinite(zi)) {
      throw EvalError("non-finite working response entry", i);
    }
    z[i] = zi;
  }
  return z;
}

}  // namespace kronglm
