// Acceptance suite: one check per shipping criterion, each printed as a
// single pass/fail line. Exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "kronglm/alloctrack.hpp"
#include "kronglm/bspline.hpp"
#include "kronglm/oracle.hpp"
#include "kronglm/path.hpp"
#include "test_util.hpp"

using namespace kronglm;
using testutil::Rng;
using Clock = std::chrono::steady_clock;

namespace {

struct Criterion {
  int number;
  std::string name;
  bool passed = true;
  std::string detail;

  void require(bool ok, const std::string& why) {
    if (!ok && passed) {
      passed = false;
      detail = why;
    }
  }
};

std::vector<Criterion> g_results;
std::vector<std::pair<std::string, OuterTrace>> g_traces;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void note_trace(const std::string& tag, const OuterTrace& trace) {
  g_traces.emplace_back(tag, trace);
}

// ---- criteria 1 & 2: Kronecker equivalence and adjointness -------------

void run_kronecker_and_adjoint() {
  Criterion kron{1, "Kronecker equivalence of H and G against dense products"};
  Criterion adjoint{2, "adjoint identity <H(theta),u> = <theta,G(u)>"};
  const auto t0 = Clock::now();
  Rng rng(1001);
  for (int trial = 0; trial < 200; ++trial) {
    TensorDesign design = testutil::random_design(rng, 2, 3, 5, 4);
    Matrix xd = oracle::dense_materialize(design);
    CoefficientBlocks theta = testutil::random_coef(rng, design);
    DenseArray u = testutil::random_array(rng, design.row_dims());

    DenseArray h = h_map(design, theta);
    CoefficientBlocks g = g_map(design, u);
    const double h_err = (h.vec() - xd * theta.vec()).lpNorm<Eigen::Infinity>();
    const double g_err = (g.vec() - xd.transpose() * u.vec()).lpNorm<Eigen::Infinity>();
    kron.require(h_err <= 1e-12, "h_map deviates by " + std::to_string(h_err));
    kron.require(g_err <= 1e-12, "g_map deviates by " + std::to_string(g_err));

    const double lhs = h.vec().dot(u.vec());
    const double rhs = theta.vec().dot(g.vec());
    adjoint.require(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)),
                    "adjoint identity off by " + std::to_string(lhs - rhs));
  }
  const double elapsed = seconds_since(t0);
  kron.require(elapsed < 10.0, "corpus took " + std::to_string(elapsed) + " s (budget 10 s)");
  g_results.push_back(kron);
  g_results.push_back(adjoint);
}

// ---- criterion 3: gradient checks ---------------------------------------

void run_gradient_checks() {
  Criterion crit{3, "grad h and family scores match central finite differences"};
  Rng rng(1003);

  for (int trial = 0; trial < 100; ++trial) {
    TensorDesign design = testutil::random_design(rng, 2, 2, 4, 3);
    InnerProblem problem;
    problem.design = &design;
    problem.v = testutil::random_array(rng, design.row_dims(), 0.2, 2.0);
    problem.z = testutil::random_array(rng, design.row_dims());
    CoefficientBlocks coef = testutil::random_coef(rng, design);
    CoefficientBlocks grad = grad_h(problem, coef, precompute_xtwz(problem));
    for (Index i = 0; i < coef.size(); ++i) {
      const double h = 1e-6 * std::max(1.0, std::abs(coef.vec()[i]));
      CoefficientBlocks lo = coef;
      CoefficientBlocks hi = coef;
      lo.vec()[i] -= h;
      hi.vec()[i] += h;
      const double fd =
          (inner_quadratic(problem, hi) - inner_quadratic(problem, lo)) / (2.0 * h);
      crit.require(std::abs(fd - grad.vec()[i]) <= 1e-6 * std::max(1.0, std::abs(grad.vec()[i])),
                   "grad h coordinate off at trial " + std::to_string(trial));
    }
  }

  for (const FamilySpec& spec : {FamilySpec::gaussian(), FamilySpec::binomial(),
                                 FamilySpec::poisson(), FamilySpec::gamma_log()}) {
    for (int trial = 0; trial < 100; ++trial) {
      ArrayDims dims(testutil::random_extents(rng, 2, 4));
      ObservationData data = testutil::random_data(rng, spec, dims);
      DenseArray eta = testutil::random_array(rng, dims, -2.0, 2.0);
      DenseArray u = score(spec, data, eta);
      for (Index i = 0; i < eta.size(); ++i) {
        const double h = 1e-6 * std::max(1.0, std::abs(eta[i]));
        DenseArray lo = eta;
        DenseArray hi = eta;
        lo[i] -= h;
        hi[i] += h;
        const double fd = (loglik(spec, data, hi) - loglik(spec, data, lo)) / (2.0 * h);
        crit.require(std::abs(fd - u[i]) <= 1e-6 * std::max(1.0, std::abs(u[i])),
                     std::string("score mismatch for ") + family_name(spec.family));
      }
    }
  }
  g_results.push_back(crit);
}

// ---- criterion 4: Lipschitz bounds ---------------------------------------

void run_lipschitz() {
  Criterion crit{4, "Lipschitz upper bound dominates; tensor-weight constant is exact"};
  Rng rng(1004);
  for (int trial = 0; trial < 100; ++trial) {
    TensorDesign design = testutil::random_design(rng, 2, 3, 5, 4);
    DenseArray v = testutil::random_array(rng, design.row_dims(), 0.1, 3.0);
    const Matrix xd = oracle::dense_materialize(design);
    const Matrix gram = xd.transpose() * v.vec().asDiagonal() * xd;
    Eigen::SelfAdjointEigenSolver<Matrix> eig(gram);
    const double dense = eig.eigenvalues().maxCoeff() / static_cast<double>(design.n());
    crit.require(lipschitz_upper(design, v) >= dense * (1.0 - 1e-12),
                 "upper bound fell below the dense norm at trial " + std::to_string(trial));
  }
  for (int trial = 0; trial < 30; ++trial) {
    TensorDesign design = testutil::make_design(rng, {4, 3, 2}, {{3, 2, 2}});
    std::vector<Vector> factors;
    std::uniform_real_distribution<double> unif(0.2, 2.0);
    for (Index j = 0; j < design.order(); ++j) {
      Vector f(design.row_dims().extent(j));
      for (Index i = 0; i < f.size(); ++i) f[i] = unif(rng);
      factors.push_back(std::move(f));
    }
    DenseArray v(design.row_dims());
    std::vector<Index> idx(3, 0);
    for (Index cell = 0; cell < v.size(); ++cell) {
      v[cell] = factors[0][idx[0]] * factors[1][idx[1]] * factors[2][idx[2]];
      for (int j = 0; j < 3; ++j) {
        if (++idx[static_cast<std::size_t>(j)] < design.row_dims().extent(j)) break;
        idx[static_cast<std::size_t>(j)] = 0;
      }
    }
    const Matrix xd = oracle::dense_materialize(design);
    const Matrix gram = xd.transpose() * v.vec().asDiagonal() * xd;
    Eigen::SelfAdjointEigenSolver<Matrix> eig(gram);
    const double dense = eig.eigenvalues().maxCoeff() / static_cast<double>(design.n());
    const double exact = lipschitz_tensor_exact(design, factors);
    crit.require(std::abs(exact - dense) <= 1e-10 * std::max(1.0, dense),
                 "tensor-weight constant off by " + std::to_string(exact - dense));
  }
  g_results.push_back(crit);
}

// ---- criterion 5: accelerated rate certificate ---------------------------

void run_rate_certificate() {
  Criterion crit{5, "accelerated objective rate 2L|x0-x*|^2/(l+1)^2 holds every iteration"};
  const auto t0 = Clock::now();
  Rng rng(1005);
  for (int trial = 0; trial < 20; ++trial) {
    TensorDesign design = testutil::make_design(rng, {4, 3, 3}, {{3, 2, 2}});
    InnerProblem problem;
    problem.design = &design;
    problem.v = testutil::random_array(rng, design.row_dims(), 0.5, 2.0);
    problem.z = testutil::random_array(rng, design.row_dims(), -2.0, 2.0);
    problem.penalty = PenaltySpec::lasso();
    problem.lambda = 0.02;

    InnerConfig config;
    config.nu = 1.0;
    config.tol = 0.0;
    config.max_iters = 150;
    config.record_history = true;
    CoefficientBlocks init = testutil::random_coef(rng, design);
    InnerResult res = fista_solve(problem, config, init);

    oracle::DenseProblem dense{oracle::dense_materialize(design),
                               FamilySpec::gaussian(),
                               ObservationData(problem.z, problem.v),
                               problem.penalty,
                               problem.lambda};
    Vector star = oracle::dense_reference_solve(dense, 100000);
    const double g_star = inner_objective(problem, testutil::coef_from_vec(design, star));
    const double dist0 = (init.vec() - star).squaredNorm();
    for (const auto& [k, g] : res.history) {
      if (k == 0) continue;
      const double bound = 2.0 * res.lipschitz * dist0 /
                           (static_cast<double>(k + 1) * static_cast<double>(k + 1));
      crit.require(g - g_star <= bound + 1e-12 * std::max(1.0, std::abs(g_star)),
                   "rate bound violated at prox step " + std::to_string(k));
    }
  }
  const double elapsed = seconds_since(t0);
  crit.require(elapsed < 60.0, "took " + std::to_string(elapsed) + " s (budget 60 s)");
  g_results.push_back(crit);
}

// ---- criterion 7: path agreement with the dense reference ---------------

void run_path_agreement() {
  Criterion crit{7, "path objectives match the dense reference within 1e-4 relative"};
  Rng rng(1007);
  for (const FamilySpec& spec : {FamilySpec::gaussian(), FamilySpec::poisson()}) {
    TensorDesign design = testutil::make_design(rng, {6, 5, 4}, {{3, 3, 3}});
    DenseArray eta_true = h_map(design, testutil::random_coef(rng, design, -0.25, 0.25));
    DenseArray y(design.row_dims());
    std::normal_distribution<double> noise(0.0, 0.5);
    for (Index i = 0; i < y.size(); ++i) {
      if (spec.family == Family::gaussian) {
        y[i] = eta_true[i] + noise(rng);
      } else {
        std::poisson_distribution<long> pois(std::exp(eta_true[i]));
        y[i] = static_cast<double>(pois(rng));
      }
    }
    ObservationData data{y};

    PathConfig config;
    config.n_lambda = 50;
    config.lambda_min_ratio = 1e-4;
    config.outer.outer_tol = 1e-10;
    config.outer.max_outer = 300;
    config.outer.inner.tol = 1e-12;
    config.outer.inner.max_iters = 20000;
    FitPath path = fit_path(design, spec, data, PenaltySpec::lasso(), config);
    crit.require(!path.truncated && path.n_models() == 50,
                 std::string(family_name(spec.family)) + " path truncated");

    const Matrix xd = oracle::dense_materialize(design);
    const Index oracle_iters = spec.family == Family::gaussian ? 60000 : 120000;
    for (Index t = 0; t < path.n_models(); ++t) {
      note_trace(std::string(family_name(spec.family)) + " path model " + std::to_string(t),
                 path.diagnostics[static_cast<std::size_t>(t)]);
      oracle::DenseProblem problem{xd, spec, data, PenaltySpec::lasso(),
                                   path.lambdas[static_cast<std::size_t>(t)]};
      Vector star = oracle::dense_reference_solve(problem, oracle_iters);
      const double f_star = oracle::dense_objective(problem, star);
      const double f_main = path.objectives[static_cast<std::size_t>(t)];
      if (std::abs(f_star) < 1e-3) {
        // the relative deviation blows up near zero; compare absolutely
        crit.require(std::abs(f_main - f_star) <= 1e-4,
                     std::string(family_name(spec.family)) + " model " + std::to_string(t) +
                         " differs absolutely by " + std::to_string(f_main - f_star));
        continue;
      }
      const double dev = oracle::relative_deviation(f_main, f_star);
      crit.require(std::abs(dev) <= 1e-4,
                   std::string(family_name(spec.family)) + " model " + std::to_string(t) +
                       " deviates by " + std::to_string(dev));
    }
  }
  g_results.push_back(crit);
}

// ---- criterion 8: lambda_max boundary ------------------------------------

void run_lambda_max_boundary() {
  Criterion crit{8, "fits are zero at lambda_max(1+1e-6) and nonzero at 0.99 lambda_max"};
  Rng rng(1008);
  for (const FamilySpec& spec : {FamilySpec::gaussian(), FamilySpec::poisson()}) {
    TensorDesign design = testutil::make_design(rng, {5, 4, 3}, {{2, 3, 2}});
    ObservationData data = testutil::random_data(rng, spec, design.row_dims());
    const double lmax = lambda_max(design, spec, data, PenaltySpec::lasso());
    crit.require(lmax > 0.0, "degenerate lambda_max");

    OuterConfig config;
    config.inner.tol = 1e-10;
    CoefficientBlocks zero = CoefficientBlocks::zeros(design);
    OuterResult above =
        outer_solve(design, spec, data, lmax * (1.0 + 1e-6), PenaltySpec::lasso(), config, zero);
    note_trace(std::string(family_name(spec.family)) + " at lambda_max(1+1e-6)", above.trace);
    crit.require(above.coef.vec().lpNorm<Eigen::Infinity>() == 0.0,
                 std::string(family_name(spec.family)) + " fit above lambda_max is not zero");

    OuterResult below =
        outer_solve(design, spec, data, lmax * 0.99, PenaltySpec::lasso(), config, zero);
    note_trace(std::string(family_name(spec.family)) + " at 0.99 lambda_max", below.trace);
    crit.require(below.coef.vec().lpNorm<Eigen::Infinity>() > 0.0,
                 std::string(family_name(spec.family)) + " fit below lambda_max is zero");
  }
  g_results.push_back(crit);
}

// ---- criterion 9: basis-count reproduction -------------------------------

void run_basis_counts() {
  Criterion crit{9, "basis-count rule reproduces the reference shapes and totals"};
  crit.require(default_basis_count(25, 5) == 5, "p(25, 5) != 5");
  crit.require(default_basis_count(977, 5) == 196, "p(977, 5) != 196");
  crit.require(default_basis_count(33, 4) == 9, "p(33, 4) != 9");
  crit.require(default_basis_count(81, 4) == 21, "p(81, 4) != 21");
  crit.require(default_basis_count(168, 4) == 42, "p(168, 4) != 42");
  crit.require(5 * 5 * 196 == 4900, "first total is not 4900");
  crit.require(9 * 21 * 42 == 7938, "second total is not 7938");
  g_results.push_back(crit);
}

// ---- criterion 10: zero-weight insulation --------------------------------

void run_insulation() {
  Criterion crit{10, "masked response cells cannot move the fitted coefficients"};
  Rng rng(1010);
  for (const FamilySpec& spec : {FamilySpec::gaussian(), FamilySpec::poisson()}) {
    TensorDesign design = testutil::make_design(rng, {5, 4, 3}, {{2, 2, 2}});
    ObservationData data = testutil::random_data(rng, spec, design.row_dims());
    for (Index i = 0; i < data.a.size(); i += 4) data.a[i] = 0.0;

    PathConfig config;
    config.n_lambda = 10;
    config.lambda_min_ratio = 1e-3;
    FitPath base = fit_path(design, spec, data, PenaltySpec::lasso(), config);

    ObservationData tweaked = data;
    for (Index i = 0; i < data.a.size(); i += 4) tweaked.y[i] = 1e6;
    FitPath other = fit_path(design, spec, tweaked, PenaltySpec::lasso(), config);

    crit.require(base.n_models() == other.n_models(), "path lengths differ");
    for (Index t = 0; t < base.n_models(); ++t) {
      note_trace(std::string(family_name(spec.family)) + " masked path model " +
                     std::to_string(t),
                 base.diagnostics[static_cast<std::size_t>(t)]);
      const double diff = (base.fits[static_cast<std::size_t>(t)].vec() -
                           other.fits[static_cast<std::size_t>(t)].vec())
                              .lpNorm<Eigen::Infinity>();
      crit.require(diff <= 1e-10,
                   "fit moved by " + std::to_string(diff) + " under masked perturbation");
    }
  }
  g_results.push_back(crit);
}

// ---- criterion 11: tensor weight approximation ---------------------------

void run_tensor_weights() {
  Criterion crit{11, "rank-one weights reconstruct exactly and stay within the weight bounds"};
  Rng rng(1011);
  ArrayDims dims({6, 5, 4});
  std::uniform_real_distribution<double> unif(-0.8, 0.8);
  for (int trial = 0; trial < 20; ++trial) {
    // additively separable eta makes the poisson weights exp(eta) rank one
    std::vector<Vector> logf(3);
    for (int j = 0; j < 3; ++j) {
      logf[static_cast<std::size_t>(j)].resize(dims.extent(j));
      for (Index i = 0; i < dims.extent(j); ++i) logf[static_cast<std::size_t>(j)][i] = unif(rng);
    }
    DenseArray eta(dims);
    std::vector<Index> idx(3, 0);
    for (Index cell = 0; cell < eta.size(); ++cell) {
      eta[cell] = logf[0][idx[0]] + logf[1][idx[1]] + logf[2][idx[2]];
      for (int j = 0; j < 3; ++j) {
        if (++idx[static_cast<std::size_t>(j)] < dims.extent(j)) break;
        idx[static_cast<std::size_t>(j)] = 0;
      }
    }
    DenseArray v = glm_weights(FamilySpec::poisson(), eta);
    Weights w = compute_weights(WeightMode::tensor_approx, FamilySpec::poisson(), eta);
    for (Index i = 0; i < v.size(); ++i) {
      crit.require(std::abs(w.array[i] - v[i]) <= 1e-12 * v[i],
                   "rank-one reconstruction off at cell " + std::to_string(i));
    }
  }
  for (int trial = 0; trial < 20; ++trial) {
    DenseArray eta = testutil::random_array(rng, dims, -1.5, 1.5);
    DenseArray v = glm_weights(FamilySpec::poisson(), eta);
    Weights w = compute_weights(WeightMode::tensor_approx, FamilySpec::poisson(), eta);
    const double lo = v.vec().minCoeff();
    const double hi = v.vec().maxCoeff();
    for (Index i = 0; i < w.array.size(); ++i) {
      crit.require(w.array[i] >= lo * (1.0 - 1e-10) && w.array[i] <= hi * (1.0 + 1e-10),
                   "approximated weight escapes [min V, max V] at cell " + std::to_string(i));
    }
  }
  g_results.push_back(crit);
}

// ---- criterion 12: complexity evidence -----------------------------------

void run_complexity() {
  Criterion crit{12, "h_map beats the dense matvec and fitting allocates no n*p buffer"};
  const auto t0 = Clock::now();
  Rng rng(1012);
  const Index s = 20;
  std::vector<Matrix> factors;
  for (int j = 0; j < 3; ++j) factors.push_back(testutil::random_matrix(rng, s, s));
  TensorDesign design({factors});
  CoefficientBlocks theta = testutil::random_coef(rng, design);
  const Index n = design.n();
  const Index p = design.p();
  const std::size_t dense_bytes = static_cast<std::size_t>(n * p) * sizeof(double);

  // allocation accounting over a small path fit
  {
    DenseArray y = h_map(design, theta);
    std::normal_distribution<double> noise(0.0, 1.0);
    for (Index i = 0; i < y.size(); ++i) y[i] += noise(rng);
    ObservationData data{y};
    PathConfig config;
    config.n_lambda = 3;
    config.lambda_min_ratio = 0.1;
    config.outer.inner.max_iters = 300;
    alloc::reset();
    FitPath path = fit_path(design, FamilySpec::gaussian(), data, PenaltySpec::lasso(), config);
    const auto stats = alloc::stats();
    crit.require(alloc::hooks_active(), "allocation hooks are not linked in");
    crit.require(stats.largest_single < dense_bytes,
                 "fit allocated a buffer of " + std::to_string(stats.largest_single) +
                     " bytes (n*p is " + std::to_string(dense_bytes) + ")");
    crit.require(path.n_models() == 3, "complexity fit did not complete");
    for (Index t = 0; t < path.n_models(); ++t) {
      note_trace("complexity fit model " + std::to_string(t),
                 path.diagnostics[static_cast<std::size_t>(t)]);
    }
  }

  const auto median_time = [](std::vector<double>& samples) {
    std::sort(samples.begin(), samples.end());
    return samples[samples.size() / 2];
  };

  std::vector<double> hmap_times;
  double sink = 0.0;
  for (int rep = 0; rep < 9; ++rep) {
    const auto t1 = Clock::now();
    DenseArray eta = h_map(design, theta);
    hmap_times.push_back(seconds_since(t1));
    sink += eta[0];
  }

  Matrix xd = oracle::dense_materialize(design, n * p);
  std::vector<double> matvec_times;
  Vector result(n);
  for (int rep = 0; rep < 5; ++rep) {
    const auto t1 = Clock::now();
    result.noalias() = xd * theta.vec();
    matvec_times.push_back(seconds_since(t1));
  }
  sink += result[0];
  crit.require(std::isfinite(sink), "unexpected non-finite result");

  const double hmap_t = median_time(hmap_times);
  const double matvec_t = median_time(matvec_times);
  crit.require(hmap_t < matvec_t, "h_map took " + std::to_string(hmap_t) +
                                      " s vs dense matvec " + std::to_string(matvec_t) + " s");
  const double elapsed = seconds_since(t0);
  crit.require(elapsed < 30.0, "took " + std::to_string(elapsed) + " s (budget 30 s)");
  g_results.push_back(crit);
}

// ---- criterion 13: gaussian-identity shortcut ----------------------------

void run_gaussian_shortcut() {
  Criterion crit{13, "gaussian identity uses one weight evaluation and equals a direct"
                     " inner solve"};
  Rng rng(1013);
  TensorDesign design = testutil::make_design(rng, {5, 4, 3}, {{3, 2, 2}});
  ObservationData data = testutil::random_data(rng, FamilySpec::gaussian(), design.row_dims());
  const double lambda = 0.03;
  OuterConfig config;
  config.inner.tol = 1e-12;
  config.inner.max_iters = 50000;

  OuterResult res = outer_solve(design, FamilySpec::gaussian(), data, lambda,
                                PenaltySpec::lasso(), config, CoefficientBlocks::zeros(design));
  note_trace("gaussian shortcut", res.trace);
  crit.require(res.trace.weight_evaluations == 1,
               "expected one weight evaluation, saw " +
                   std::to_string(res.trace.weight_evaluations));

  InnerProblem problem;
  problem.design = &design;
  problem.v = DenseArray::constant(design.row_dims(), 1.0);
  problem.z = data.y;
  problem.lambda = lambda;
  problem.penalty = PenaltySpec::lasso();
  InnerResult direct = fista_solve(problem, config.inner, CoefficientBlocks::zeros(design));
  const double diff = (res.coef.vec() - direct.coef.vec()).lpNorm<Eigen::Infinity>();
  crit.require(diff <= 1e-10, "outer and direct inner solves differ by " + std::to_string(diff));
  g_results.push_back(crit);
}

// ---- criterion 6: outer descent over every fitted model ------------------

void run_descent_audit() {
  Criterion crit{6, "the outer objective never increased on any fitted model"};
  Rng rng(1006);
  // add binomial and gamma fits so every family is audited
  for (const FamilySpec& spec : {FamilySpec::binomial(), FamilySpec::gamma_log()}) {
    TensorDesign design = testutil::make_design(rng, {5, 4, 2}, {{2, 2, 2}});
    ObservationData data = testutil::random_data(rng, spec, design.row_dims());
    OuterResult res = outer_solve(design, spec, data, 0.01, PenaltySpec::lasso(), OuterConfig{},
                                  CoefficientBlocks::zeros(design));
    note_trace(std::string(family_name(spec.family)) + " audit fit", res.trace);
  }

  std::size_t audited = 0;
  for (const auto& [tag, trace] : g_traces) {
    double prev = trace.initial_objective;
    for (const auto& rec : trace.iterations) {
      crit.require(rec.objective <= prev + 1e-12 * std::max(1.0, std::abs(prev)),
                   "objective increased in " + tag);
      prev = rec.objective;
    }
    ++audited;
  }
  crit.require(audited >= 120, "too few fitted models audited: " + std::to_string(audited));
  crit.detail += crit.passed ? "(" + std::to_string(audited) + " models audited)" : "";
  g_results.push_back(crit);
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  run_kronecker_and_adjoint();
  run_gradient_checks();
  run_lipschitz();
  run_rate_certificate();
  run_path_agreement();
  run_lambda_max_boundary();
  run_basis_counts();
  run_insulation();
  run_tensor_weights();
  run_complexity();
  run_gaussian_shortcut();
  run_descent_audit();

  std::sort(g_results.begin(), g_results.end(),
            [](const Criterion& a, const Criterion& b) { return a.number < b.number; });
  int failures = 0;
  for (const Criterion& c : g_results) {
    std::printf("[%s] %2d. %s %s\n", c.passed ? "PASS" : "FAIL", c.number, c.name.c_str(),
                c.detail.c_str());
    if (!c.passed) ++failures;
  }
  std::printf("%d/%zu criteria passed in %.1f s\n", static_cast<int>(g_results.size()) - failures,
              g_results.size(), seconds_since(t0));
  return failures == 0 ? 0 : 1;
}
