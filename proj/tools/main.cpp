// Command-line front end: data ingestion, model specification, path
// fitting, prediction, simulation and benchmarking.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kronglm/alloctrack.hpp"
#include "kronglm/bspline.hpp"
#include "kronglm/io.hpp"
#include "kronglm/oracle.hpp"
#include "kronglm/path.hpp"
#include "kronglm/simulate.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace kronglm;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitTruncated = 3;

struct DesignFlags {
  std::vector<std::string> csv_files;
  bool bspline = false;
  Index basis_ratio = 5;
  Index basis_order = 4;
};

void add_design_flags(CLI::App* cmd, DesignFlags& flags) {
  cmd->add_option("--design", flags.csv_files,
                  "marginal design matrix CSV, repeated per dimension per component");
  cmd->add_flag("--bspline", flags.bspline,
                "build a B-spline design on the grid indices 1..n_j");
  cmd->add_option("--basis-ratio", flags.basis_ratio,
                  "basis-count rule p_j = max(ceil(n_j/ratio), 5)")
      ->default_val(5);
  cmd->add_option("--order", flags.basis_order, "B-spline order (4 = cubic)")->default_val(4);
}

TensorDesign build_design(const DesignFlags& flags, const ArrayDims& dims) {
  if (flags.bspline) {
    if (!flags.csv_files.empty()) {
      throw std::invalid_argument("give either --design files or --bspline, not both");
    }
    std::vector<Matrix> factors;
    for (Index j = 0; j < dims.ndim(); ++j) {
      std::vector<double> grid(static_cast<std::size_t>(dims.extent(j)));
      for (Index i = 0; i < dims.extent(j); ++i) {
        grid[static_cast<std::size_t>(i)] = static_cast<double>(i + 1);
      }
      BasisSpec spec{flags.basis_order,
                     default_basis_count(dims.extent(j), flags.basis_ratio)};
      factors.push_back(bspline_design(MarginalGrid(std::move(grid)), spec));
    }
    return TensorDesign({std::move(factors)});
  }

  const Index d = dims.ndim();
  if (flags.csv_files.empty() || static_cast<Index>(flags.csv_files.size()) % d != 0) {
    throw std::invalid_argument(
        "need --bspline or c*d --design files (d = response dimension count)");
  }
  const Index c = static_cast<Index>(flags.csv_files.size()) / d;
  std::vector<std::vector<Matrix>> comps;
  std::size_t next = 0;
  for (Index r = 0; r < c; ++r) {
    std::vector<Matrix> factors;
    for (Index j = 0; j < d; ++j) {
      Matrix m = io::read_csv_matrix(flags.csv_files[next++]);
      if (m.rows() != dims.extent(j)) {
        throw std::invalid_argument("design file " + flags.csv_files[next - 1] + " has " +
                                    std::to_string(m.rows()) + " rows but dimension " +
                                    std::to_string(j + 1) + " needs " +
                                    std::to_string(dims.extent(j)));
      }
      factors.push_back(std::move(m));
    }
    comps.push_back(std::move(factors));
  }
  return TensorDesign(std::move(comps));
}

std::string model_tag(Index t) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "L%03d", static_cast<int>(t));
  return buf;
}

json dims_to_json(const ArrayDims& dims) {
  json out = json::array();
  for (Index j = 0; j < dims.ndim(); ++j) out.push_back(dims.extent(j));
  return out;
}

// ---------------------------------------------------------------- fit ----

struct FitArgs {
  std::string response_file;
  std::string weights_file;
  DesignFlags design;
  std::string family = "gaussian";
  std::string penalty = "lasso";
  double alpha = 0.0;
  Index n_lambda = 100;
  double lambda_min_ratio = 1e-4;
  std::vector<double> lambdas;
  double nu = 1.0;
  std::string iwls = "exact";
  double tol = 1e-8;
  Index maxit = 100;
  double inner_tol = 1e-8;
  Index inner_maxit = 2000;
  bool save_mu = false;
  std::string out_dir;
};

PenaltySpec parse_penalty(const std::string& name, double alpha) {
  if (name == "lasso") return PenaltySpec::lasso();
  if (name == "ridge") return PenaltySpec::ridge();
  if (name == "elasticnet" || name == "elastic_net") return PenaltySpec::elastic_net(alpha);
  throw std::invalid_argument("unknown penalty: " + name);
}

int run_fit(const FitArgs& args) {
  DenseArray y = io::read_array(args.response_file);
  ObservationData data = args.weights_file.empty()
                             ? ObservationData(std::move(y))
                             : ObservationData(std::move(y), io::read_array(args.weights_file));
  const FamilySpec spec = family_from_name(args.family);
  const PenaltySpec penalty = parse_penalty(args.penalty, args.alpha);
  TensorDesign design = build_design(args.design, data.y.dims());

  PathConfig config;
  config.n_lambda = args.n_lambda;
  config.lambda_min_ratio = args.lambda_min_ratio;
  config.outer.weight_mode = weight_mode_from_name(args.iwls);
  config.outer.outer_tol = args.tol;
  config.outer.max_outer = args.maxit;
  config.outer.inner.nu = args.nu;
  config.outer.inner.tol = args.inner_tol;
  config.outer.inner.max_iters = args.inner_maxit;

  FitPath path;
  if (!args.lambdas.empty()) {
    std::vector<double> grid = args.lambdas;
    std::sort(grid.begin(), grid.end(), std::greater<double>());
    path = fit_path(design, spec, data, penalty, config, grid);
  } else {
    path = fit_path(design, spec, data, penalty, config);
  }

  fs::create_directories(args.out_dir);
  json meta;
  meta["format"] = "kronglm-path";
  meta["version"] = 1;
  meta["family"] = family_name(spec.family);
  meta["link"] = link_name(spec.link);
  meta["penalty"] = penalty_name(penalty.kind);
  meta["alpha"] = penalty.alpha;
  meta["iwls"] = weight_mode_name(config.outer.weight_mode);
  meta["nu"] = args.nu;
  meta["lambda_max"] = path.lambda_max_value;
  meta["truncated"] = path.truncated;
  meta["response_dims"] = dims_to_json(data.y.dims());
  meta["n_components"] = design.n_components();
  json coef_dims = json::array();
  for (Index r = 0; r < design.n_components(); ++r) {
    coef_dims.push_back(dims_to_json(design.coef_dims(r)));
  }
  meta["coef_dims"] = coef_dims;
  json design_meta;
  design_meta["kind"] = args.design.bspline ? "bspline" : "csv";
  if (args.design.bspline) {
    design_meta["basis_ratio"] = args.design.basis_ratio;
    design_meta["order"] = args.design.basis_order;
  } else {
    design_meta["files"] = args.design.csv_files;
  }
  meta["design"] = design_meta;

  json models = json::array();
  for (Index t = 0; t < path.n_models(); ++t) {
    const auto& trace = path.diagnostics[static_cast<std::size_t>(t)];
    Index inner_total = 0;
    for (const auto& rec : trace.iterations) inner_total += rec.inner_iterations;
    Index nonzero = 0;
    const auto& fit = path.fits[static_cast<std::size_t>(t)];
    for (Index i = 0; i < fit.size(); ++i) {
      if (fit.vec()[i] != 0.0) ++nonzero;
    }

    json model;
    model["lambda"] = path.lambdas[static_cast<std::size_t>(t)];
    model["objective"] = path.objectives[static_cast<std::size_t>(t)];
    model["nonzero"] = nonzero;
    model["outer_iters"] = trace.iterations.size();
    model["inner_iters"] = inner_total;
    model["converged"] = trace.converged();
    json files = json::array();
    for (Index r = 0; r < design.n_components(); ++r) {
      const std::string name =
          "coef_" + model_tag(t) + "_C" + std::to_string(r) + ".glam";
      io::write_array(fs::path(args.out_dir) / name, fit.block_array(r));
      files.push_back(name);
    }
    model["coef_files"] = files;
    models.push_back(model);

    if (args.save_mu) {
      Prediction pred = predict(design, spec, fit);
      io::write_array(fs::path(args.out_dir) / ("mu_" + model_tag(t) + ".glam"), pred.mu);
    }
  }
  meta["models"] = models;

  std::ofstream meta_out(fs::path(args.out_dir) / "path.json");
  meta_out << meta.dump(2) << "\n";
  if (!meta_out) {
    throw std::runtime_error("failed to write path.json");
  }
  std::cout << "fitted " << path.n_models() << " models"
            << (path.truncated ? " (path truncated)" : "") << "\n";
  return path.truncated ? kExitTruncated : kExitOk;
}

// ------------------------------------------------------------- predict ----

struct PredictArgs {
  std::string fit_dir;
  DesignFlags design;
  std::string truth_file;
  std::string mask_file;
  bool write_eta = false;
  std::string out_dir;
};

int run_predict(const PredictArgs& args) {
  std::ifstream meta_in(fs::path(args.fit_dir) / "path.json");
  if (!meta_in) {
    throw std::runtime_error("cannot open " + args.fit_dir + "/path.json");
  }
  json meta = json::parse(meta_in);
  if (meta.value("format", "") != "kronglm-path") {
    throw std::runtime_error("not a fit directory: " + args.fit_dir);
  }
  const FamilySpec spec = family_from_name(meta.at("family"));
  std::vector<Index> extents;
  for (const auto& e : meta.at("response_dims")) extents.push_back(e.get<Index>());
  const ArrayDims dims(extents);

  DesignFlags flags = args.design;
  const auto& dmeta = meta.at("design");
  if (flags.csv_files.empty() && !flags.bspline) {
    // reconstruct the design from the fit metadata
    if (dmeta.at("kind") == "bspline") {
      flags.bspline = true;
      flags.basis_ratio = dmeta.at("basis_ratio").get<Index>();
      flags.basis_order = dmeta.at("order").get<Index>();
    } else {
      for (const auto& f : dmeta.at("files")) flags.csv_files.push_back(f.get<std::string>());
    }
  }
  TensorDesign design = build_design(flags, dims);

  FitPath path;
  for (const auto& model : meta.at("models")) {
    path.lambdas.push_back(model.at("lambda").get<double>());
    CoefficientBlocks coef = CoefficientBlocks::zeros(design);
    const auto& files = model.at("coef_files");
    for (Index r = 0; r < design.n_components(); ++r) {
      DenseArray block =
          io::read_array(fs::path(args.fit_dir) / files.at(static_cast<std::size_t>(r))
                                                      .get<std::string>());
      if (block.dims() != design.coef_dims(r)) {
        throw std::runtime_error("coefficient file dims do not match the design");
      }
      coef.block_vec(r) = block.vec();
    }
    path.fits.push_back(std::move(coef));
  }

  fs::create_directories(args.out_dir);
  for (Index t = 0; t < path.n_models(); ++t) {
    Prediction pred = predict(design, spec, path.fits[static_cast<std::size_t>(t)]);
    io::write_array(fs::path(args.out_dir) / ("mu_" + model_tag(t) + ".glam"), pred.mu);
    if (args.write_eta) {
      io::write_array(fs::path(args.out_dir) / ("eta_" + model_tag(t) + ".glam"), pred.eta);
    }
  }

  if (!args.truth_file.empty()) {
    if (args.mask_file.empty()) {
      throw std::invalid_argument("--truth needs --mask");
    }
    DenseArray truth = io::read_array(args.truth_file);
    DenseArray mask = io::read_array(args.mask_file);
    HeldoutMse mse = mse_heldout(path, design, spec, truth, mask);
    std::ofstream tsv(fs::path(args.out_dir) / "mse.tsv");
    tsv << "model\tlambda\tmse\targmin\n";
    char buf[64];
    for (Index t = 0; t < path.n_models(); ++t) {
      std::snprintf(buf, sizeof(buf), "%.17g", path.lambdas[static_cast<std::size_t>(t)]);
      tsv << t << '\t' << buf << '\t';
      std::snprintf(buf, sizeof(buf), "%.17g", mse.mse[static_cast<std::size_t>(t)]);
      tsv << buf << '\t' << (t == mse.argmin ? 1 : 0) << '\n';
    }
    std::cout << "minimal held-out MSE at model " << mse.argmin << " (lambda = "
              << path.lambdas[static_cast<std::size_t>(mse.argmin)] << ")\n";
  }
  return kExitOk;
}

// ------------------------------------------------------------ simulate ----

struct SimulateArgs {
  SimConfig config;
  std::string family = "gaussian";
  std::string out_dir;
};

int run_simulate(const SimulateArgs& args) {
  const FamilySpec spec = family_from_name(args.family);
  Simulated sim = simulate_glam(args.config, spec);

  fs::create_directories(args.out_dir);
  for (Index j = 0; j < sim.design.order(); ++j) {
    io::write_csv_matrix(fs::path(args.out_dir) / ("X" + std::to_string(j + 1) + ".csv"),
                         sim.design.factor(0, j));
  }
  io::write_array(fs::path(args.out_dir) / "response.glam", sim.response);
  io::write_array(fs::path(args.out_dir) / "weights.glam", sim.weights);
  io::write_array(fs::path(args.out_dir) / "theta.glam", sim.theta.block_array(0));

  json meta;
  meta["family"] = family_name(spec.family);
  meta["r"] = args.config.r;
  meta["q"] = args.config.q;
  meta["kappa"] = args.config.kappa;
  meta["sigma"] = args.config.sigma;
  meta["s"] = args.config.s;
  meta["seed"] = args.config.seed;
  meta["response_dims"] = dims_to_json(sim.response.dims());
  meta["coef_dims"] = dims_to_json(sim.theta.block_dims(0));
  std::ofstream meta_out(fs::path(args.out_dir) / "sim.json");
  meta_out << meta.dump(2) << "\n";
  std::cout << "simulated " << family_name(spec.family) << " array";
  for (Index j = 0; j < sim.response.dims().ndim(); ++j) {
    std::cout << (j == 0 ? " " : " x ") << sim.response.dims().extent(j);
  }
  std::cout << "\n";
  return kExitOk;
}

// --------------------------------------------------------------- bench ----

struct BenchArgs {
  std::vector<Index> sizes;
  Index reps = 3;
  std::uint64_t seed = 1;
  Index n_lambda = 10;
  Index cap = 200'000'000;
  std::string out_file = "-";
};

double median_seconds(std::vector<double>& samples) {
  std::sort(samples.begin(), samples.end());
  return samples[samples.size() / 2];
}

int run_bench(const BenchArgs& args) {
  std::ostream* out = &std::cout;
  std::ofstream file;
  if (args.out_file != "-") {
    file.open(args.out_file);
    if (!file) throw std::runtime_error("cannot write " + args.out_file);
    out = &file;
  }
  *out << "size\tmethod\tseconds\tpeak_alloc_bytes\tcheck\n";

  char num[64];
  for (Index size : args.sizes) {
    std::mt19937_64 rng(args.seed + static_cast<std::uint64_t>(size));
    std::normal_distribution<double> normal;
    std::vector<Matrix> factors;
    for (int j = 0; j < 3; ++j) {
      Matrix m(size, size);
      for (Index a = 0; a < size; ++a) {
        for (Index b = 0; b < size; ++b) m(a, b) = normal(rng);
      }
      factors.push_back(std::move(m));
    }
    TensorDesign design({factors});
    CoefficientBlocks theta = CoefficientBlocks::zeros(design);
    for (Index i = 0; i < theta.size(); ++i) theta.vec()[i] = normal(rng);
    DenseArray y = h_map(design, theta);
    for (Index i = 0; i < y.size(); ++i) y[i] += normal(rng);
    ObservationData data{y};

    // matrix-free path fit
    {
      PathConfig config;
      config.n_lambda = args.n_lambda;
      config.lambda_min_ratio = 1e-2;
      alloc::reset();
      std::vector<double> times;
      double check = 0.0;
      for (Index rep = 0; rep < args.reps; ++rep) {
        const auto t0 = std::chrono::steady_clock::now();
        FitPath path = fit_path(design, FamilySpec::gaussian(), data, PenaltySpec::lasso(),
                                config);
        const auto t1 = std::chrono::steady_clock::now();
        times.push_back(std::chrono::duration<double>(t1 - t0).count());
        check = path.objectives.back();
      }
      const auto stats = alloc::stats();
      std::snprintf(num, sizeof(num), "%.17g", check);
      *out << size << "\tglam_fit\t" << median_seconds(times) << '\t'
           << stats.largest_single << '\t' << num << '\n';
    }

    // dense matrix-vector baseline
    {
      alloc::reset();
      std::vector<double> times;
      std::string check = "NA";
      const Index entries = design.n() * design.p();
      if (entries <= args.cap) {
        Matrix xd = oracle::dense_materialize(design, args.cap);
        Vector result;
        for (Index rep = 0; rep < args.reps; ++rep) {
          const auto t0 = std::chrono::steady_clock::now();
          result.noalias() = xd * theta.vec();
          const auto t1 = std::chrono::steady_clock::now();
          times.push_back(std::chrono::duration<double>(t1 - t0).count());
        }
        std::snprintf(num, sizeof(num), "%.17g", result.sum());
        check = num;
      } else {
        times.push_back(0.0);
      }
      const auto stats = alloc::stats();
      *out << size << "\tdense_matvec\t"
           << (check == "NA" ? std::string("NA") : std::to_string(median_seconds(times)))
           << '\t' << stats.largest_single << '\t' << check << '\n';
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"design-matrix-free penalized estimation for generalized linear array models"};
  app.require_subcommand(1);

  FitArgs fit_args;
  CLI::App* fit = app.add_subcommand("fit", "fit a regularization path");
  fit->add_option("--response", fit_args.response_file, "response ArrayFile")->required();
  fit->add_option("--weights", fit_args.weights_file, "prior observation weight ArrayFile");
  add_design_flags(fit, fit_args.design);
  fit->add_option("--family", fit_args.family, "gaussian|binomial|poisson|gamma")->required();
  fit->add_option("--penalty", fit_args.penalty, "lasso|ridge|elasticnet")->default_val("lasso");
  fit->add_option("--alpha", fit_args.alpha, "elastic net quadratic mix")->default_val(0.0);
  fit->add_option("--nlambda", fit_args.n_lambda)->default_val(100);
  fit->add_option("--lambda-min-ratio", fit_args.lambda_min_ratio)->default_val(1e-4);
  fit->add_option("--lambda", fit_args.lambdas, "explicit lambda values")->delimiter(',');
  fit->add_option("--nu", fit_args.nu, "inner stepsize policy in [0,1]")->default_val(1.0);
  fit->add_option("--iwls", fit_args.iwls, "exact|unit|tensor")->default_val("exact");
  fit->add_option("--tol", fit_args.tol, "outer relative tolerance")->default_val(1e-8);
  fit->add_option("--maxit", fit_args.maxit, "outer iteration cap")->default_val(100);
  fit->add_option("--inner-tol", fit_args.inner_tol)->default_val(1e-8);
  fit->add_option("--inner-maxit", fit_args.inner_maxit)->default_val(2000);
  fit->add_flag("--save-mu", fit_args.save_mu, "also write fitted mean arrays");
  fit->add_option("--out", fit_args.out_dir, "output directory")->required();

  PredictArgs predict_args;
  CLI::App* pred = app.add_subcommand("predict", "evaluate fitted models");
  pred->add_option("--fit", predict_args.fit_dir, "directory written by fit")->required();
  add_design_flags(pred, predict_args.design);
  pred->add_option("--truth", predict_args.truth_file, "true response ArrayFile for MSE");
  pred->add_option("--mask", predict_args.mask_file, "0/1 held-out mask ArrayFile");
  pred->add_flag("--eta", predict_args.write_eta, "also write linear predictor arrays");
  pred->add_option("--out", predict_args.out_dir, "output directory")->required();

  SimulateArgs sim_args;
  CLI::App* sim = app.add_subcommand("simulate", "generate a benchmark data set");
  sim->add_option("--r", sim_args.config.r, "size scale: grid (60r, 20r, 10r)")
      ->default_val(0.1);
  sim->add_option("--q", sim_args.config.q, "p/n regime: p_j = max(3, n_j q)")
      ->default_val(0.5);
  sim->add_option("--kappa", sim_args.config.kappa)->default_val(0.0);
  sim->add_option("--sigma", sim_args.config.sigma)->default_val(1.0);
  sim->add_option("--s", sim_args.config.s, "coefficient sparsity")->default_val(1.0);
  sim->add_option("--seed", sim_args.config.seed)->default_val(1);
  sim->add_option("--family", sim_args.family, "gaussian|poisson")->default_val("gaussian");
  sim->add_option("--out", sim_args.out_dir, "output directory")->required();

  BenchArgs bench_args;
  CLI::App* bench = app.add_subcommand("bench", "time matrix-free fits against a dense baseline");
  bench->add_option("--sizes", bench_args.sizes, "marginal sizes n_j = p_j")
      ->delimiter(',')
      ->required();
  bench->add_option("--reps", bench_args.reps)->default_val(3);
  bench->add_option("--seed", bench_args.seed)->default_val(1);
  bench->add_option("--nlambda", bench_args.n_lambda)->default_val(10);
  bench->add_option("--cap", bench_args.cap, "dense materialization cap in entries")
      ->default_val(200000000);
  bench->add_option("--out", bench_args.out_file, "output TSV ('-' for stdout)")
      ->default_val("-");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*fit) return run_fit(fit_args);
    if (*pred) return run_predict(predict_args);
    if (*sim) return run_simulate(sim_args);
    if (*bench) return run_bench(bench_args);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
