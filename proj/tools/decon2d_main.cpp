//! Command-line front end: simulate benchmark data, run the deconvolution
//! estimators over a grid, inspect combination weights, replicate the
//! bias/variance laws and transform quadrant-censored records.
//!
//! Every file-producing subcommand writes a JSON sidecar `<out>.meta.json`
//! recording the command, the fully resolved configuration, the sample
//! size, the wall-clock runtime and the library version.  Exit codes:
//! 0 success, 2 invalid user input (arguments or data files), 1 internal
//! failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "decon2d/csv.hpp"
#include "decon2d/datagen.hpp"
#include "decon2d/diagnostics.hpp"
#include "decon2d/estimators.hpp"
#include "decon2d/kernels.hpp"
#include "decon2d/model.hpp"
#include "decon2d/version.hpp"
#include "decon2d/weights.hpp"

namespace {

using decon2d::Point2;
using nlohmann::json;

//! "auto" resolves to `fallback`; anything else must parse as a double.
double resolve_auto(const std::string& s, double fallback) {
  if (s == "auto") return fallback;
  return decon2d::parse_double(s);
}

Point2 parse_point(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos || s.find(',', comma + 1) != std::string::npos)
    throw std::invalid_argument("point must be 'x1,x2': '" + s + "'");
  return {decon2d::parse_double(s.substr(0, comma)),
          decon2d::parse_double(s.substr(comma + 1))};
}

std::vector<Point2> parse_points(const std::string& s) {
  std::vector<Point2> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t semi = s.find(';', pos);
    if (semi == std::string::npos) semi = s.size();
    const std::string piece = s.substr(pos, semi - pos);
    if (!piece.empty()) out.push_back(parse_point(piece));
    pos = semi + 1;
  }
  if (out.empty()) throw std::invalid_argument("no evaluation points given");
  return out;
}

void write_meta(const std::string& out, const std::string& command,
                std::size_t n, double runtime_ms, const json& config) {
  json meta;
  meta["command"] = command;
  meta["library_version"] = DECON2D_VERSION;
  meta["n"] = n;
  meta["runtime_ms"] = runtime_ms;
  meta["resolved_config"] = config;
  std::ofstream f(out + ".meta.json");
  if (!f) throw std::runtime_error("cannot open for writing: " + out + ".meta.json");
  f << meta.dump(2) << "\n";
}

class Timer {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

decon2d::EstimatorConfig make_config(double h1, double h2,
                                     const std::string& h_tilde,
                                     const std::string& eps, std::size_t n) {
  if ((h_tilde == "auto" || eps == "auto") && n < 2)
    throw std::invalid_argument(
        "automatic h-tilde/eps need at least 2 observations");
  const double nn = static_cast<double>(n);
  const double ht = resolve_auto(h_tilde, std::pow(nn, -1.0 / 6.0));
  const double ep = resolve_auto(eps, 1.0 / std::log(nn));
  return decon2d::EstimatorConfig(h1, h2, ht, ep);
}

void warn_bandwidth(const decon2d::EstimatorConfig& cfg) {
  if (cfg.bandwidth_warning())
    std::cerr << "warning: max(h1, h2) = " << std::max(cfg.h1, cfg.h2)
              << " >= 0.5: adjacent shifted kernel copies overlap and the "
                 "variance predictions degrade\n";
}

json config_json(const decon2d::EstimatorConfig& cfg) {
  return json{{"h1", cfg.h1},
              {"h2", cfg.h2},
              {"h_tilde", cfg.h_tilde},
              {"eps", cfg.eps},
              {"kernel", "biweight"}};
}

struct SimulateArgs {
  int example = 1;
  std::size_t n = 0;
  std::uint64_t seed = 1;
  std::string out;
  bool with_truth = false;
};

void run_simulate(const SimulateArgs& a) {
  Timer timer;
  const decon2d::PairedSample sample = a.example == 1
                                           ? decon2d::gen_example1(a.n, a.seed)
                                           : decon2d::gen_example2(a.n, a.seed);
  decon2d::write_sample_csv(a.out, sample, a.with_truth);
  write_meta(a.out, "simulate", a.n, timer.ms(),
             json{{"example", a.example},
                  {"seed", a.seed},
                  {"with_truth", a.with_truth}});
}

struct EstimateArgs {
  std::string data;
  double h = 0.0;
  double h1 = 0.0;
  double h2 = 0.0;
  std::string h_tilde = "auto";
  std::string eps = "auto";
  double grid_lo = 0.0;
  double grid_hi = 0.0;
  int grid_cpu = 0;
  std::string method = "combined";
  std::string mode = "binned";
  std::string out;
  bool clip_negative = false;
  int threads = 0;
};

decon2d::GridMethod parse_method(const std::string& s) {
  if (s == "combined") return decon2d::GridMethod::combined;
  if (s == "mm") return decon2d::GridMethod::mm;
  if (s == "mp") return decon2d::GridMethod::mp;
  if (s == "pm") return decon2d::GridMethod::pm;
  if (s == "pp") return decon2d::GridMethod::pp;
  throw std::invalid_argument("unknown method: " + s);
}

void run_estimate(const EstimateArgs& a) {
  Timer timer;
  const decon2d::Sample2D sample = decon2d::read_points_csv(a.data);

  double h1 = a.h1, h2 = a.h2;
  if (h1 == 0.0 && h2 == 0.0) h1 = h2 = a.h;
  if (h1 == 0.0 || h2 == 0.0)
    throw std::invalid_argument("specify --h or both --h1 and --h2");
  const decon2d::EstimatorConfig cfg =
      make_config(h1, h2, a.h_tilde, a.eps, sample.size());
  warn_bandwidth(cfg);

  const decon2d::GridSpec grid{a.grid_lo, a.grid_hi, a.grid_cpu};
  const decon2d::GridMode mode = a.mode == "exact" ? decon2d::GridMode::exact
                                                   : decon2d::GridMode::binned;
  const decon2d::GridResult result =
      decon2d::evaluate_grid(sample, cfg, grid, parse_method(a.method), mode,
                             a.threads, a.clip_negative);
  decon2d::write_grid_csv(a.out, result);

  json config = config_json(cfg);
  config["method"] = a.method;
  config["mode"] = a.mode;
  config["clip_negative"] = a.clip_negative;
  config["threads"] = a.threads;
  config["grid"] = json{{"lo", grid.lo},
                        {"hi", grid.hi},
                        {"count_per_unit", grid.count_per_unit},
                        {"nodes_per_axis", result.nodes}};
  write_meta(a.out, "estimate", sample.size(), timer.ms(), config);
}

struct WeightsArgs {
  std::string data;
  std::string point;
  std::string h_tilde = "auto";
  std::string eps = "auto";
};

void run_weights(const WeightsArgs& a) {
  const decon2d::Sample2D sample = decon2d::read_points_csv(a.data);
  const Point2 x = parse_point(a.point);
  // the density bandwidth is irrelevant here; any valid value works
  const decon2d::EstimatorConfig cfg =
      make_config(0.25, 0.25, a.h_tilde, a.eps, sample.size());

  decon2d::QuadrantProbs probs;
  probs.mm = decon2d::F_hat_truncated(decon2d::Quadrant::mm, sample, cfg, x);
  probs.mp = decon2d::F_hat_truncated(decon2d::Quadrant::mp, sample, cfg, x);
  probs.pm = decon2d::F_hat_truncated(decon2d::Quadrant::pm, sample, cfg, x);
  probs.pp = decon2d::F_hat_truncated(decon2d::Quadrant::pp, sample, cfg, x);
  const decon2d::ConvexWeights w = decon2d::optimal_weights(probs);
  const double rho = decon2d::Kernel1D::biweight().rough_dw();
  const decon2d::VarianceFunctionals fn =
      decon2d::variance_functionals(probs, w, rho, rho);

  json out;
  out["point"] = json{{"x1", x.x1}, {"x2", x.x2}};
  out["n"] = sample.size();
  out["h_tilde"] = cfg.h_tilde;
  out["eps"] = cfg.eps;
  out["probs"] = json{
      {"mm", probs.mm}, {"mp", probs.mp}, {"pm", probs.pm}, {"pp", probs.pp}};
  out["weights"] =
      json{{"mm", w.mm}, {"mp", w.mp}, {"pm", w.pm}, {"pp", w.pp}};
  out["functionals"] = json{
      {"B", fn.B}, {"C", fn.C}, {"A", fn.A}, {"sigma2", fn.sigma2}};
  std::cout << out.dump(2) << "\n";
}

struct DiagnoseArgs {
  int example = 1;
  std::size_t n = 0;
  double h = 0.0;
  std::string h_tilde = "auto";
  std::string eps = "auto";
  std::size_t reps = 400;
  std::string points;
  std::uint64_t seed = 1;
  std::string kind = "density";
  std::string weights = "estimated";
  std::string out;
  int threads = 0;
};

void write_report_csv(const std::string& path,
                      const std::vector<decon2d::MCReport>& reports) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << "x1,x2,estimator,reps,mean_est,var_est,true_value,empirical_bias,"
       "predicted_bias,predicted_var,bias_ratio,var_ratio,skewness,"
       "excess_kurtosis,var_mm,var_mp,var_pm,var_pp\n";
  using decon2d::format_double;
  for (const decon2d::MCReport& r : reports) {
    f << format_double(r.point.x1) << ',' << format_double(r.point.x2) << ','
      << r.estimator << ',' << r.reps << ',' << format_double(r.mean_est)
      << ',' << format_double(r.var_est) << ',' << format_double(r.true_value)
      << ',' << format_double(r.empirical_bias) << ','
      << format_double(r.predicted_bias) << ','
      << format_double(r.predicted_var) << ',' << format_double(r.bias_ratio)
      << ',' << format_double(r.var_ratio) << ',' << format_double(r.skewness)
      << ',' << format_double(r.excess_kurtosis);
    for (double v : r.per_tag_var) f << ',' << format_double(v);
    f << '\n';
  }
}

void run_diagnose(const DiagnoseArgs& a) {
  Timer timer;
  const std::vector<Point2> xs = parse_points(a.points);
  const double nn = static_cast<double>(a.n);
  if (a.n < 2) throw std::invalid_argument("need n >= 2");
  const double h_tilde = resolve_auto(a.h_tilde, std::pow(nn, -1.0 / 6.0));
  const double eps = resolve_auto(a.eps, 1.0 / std::log(nn));

  std::vector<decon2d::MCReport> reports;
  json config{{"example", a.example}, {"reps", a.reps},   {"seed", a.seed},
              {"kind", a.kind},       {"h_tilde", h_tilde}, {"threads", a.threads},
              {"kernel", "biweight"}};
  if (a.kind == "distribution") {
    reports = decon2d::run_mc_F(a.example, a.n, h_tilde, a.reps, xs, a.seed,
                                a.threads);
  } else {
    if (a.h <= 0.0)
      throw std::invalid_argument("--h is required for kind 'density'");
    const decon2d::EstimatorConfig cfg(a.h, a.h, h_tilde, eps);
    warn_bandwidth(cfg);
    const decon2d::WeightMode mode = a.weights == "oracle"
                                         ? decon2d::WeightMode::oracle
                                         : decon2d::WeightMode::estimated;
    reports = decon2d::run_mc(a.example, a.n, a.h, h_tilde, eps, a.reps, xs,
                              a.seed, mode, a.threads);
    config["h"] = a.h;
    config["eps"] = eps;
    config["weights"] = a.weights;
  }
  write_report_csv(a.out, reports);
  write_meta(a.out, "diagnose", a.n, timer.ms(), config);
}

struct CensorArgs {
  std::string data;
  std::string out;
};

void run_censor(const CensorArgs& a) {
  Timer timer;
  const std::vector<decon2d::CensoredRow> rows =
      decon2d::read_censored_csv(a.data);
  decon2d::write_points_csv(a.out, decon2d::censor_transform(rows));
  write_meta(a.out, "censor", rows.size(), timer.ms(),
             json{{"input", a.data}});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bivariate uniform deconvolution toolkit"};
  // free the short name 'h' for bandwidth options
  app.set_help_flag("--help", "print help and exit");
  app.set_version_flag("--version", DECON2D_VERSION);
  app.require_subcommand(1);

  SimulateArgs sim;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "draw a benchmark sample and write it as CSV");
  simulate->add_option("--example", sim.example, "benchmark model (1 or 2)")
      ->required()
      ->check(CLI::IsMember({1, 2}));
  simulate->add_option("--n", sim.n, "sample size")
      ->required()
      ->check(CLI::PositiveNumber);
  simulate->add_option("--seed", sim.seed, "random seed");
  simulate->add_option("--out", sim.out, "output CSV path")->required();
  simulate->add_flag("--with-truth", sim.with_truth,
                     "also write the latent coordinates y1,y2");
  simulate->callback([&sim] { run_simulate(sim); });

  EstimateArgs est;
  CLI::App* estimate = app.add_subcommand(
      "estimate", "evaluate a density estimator over a square grid");
  estimate->set_help_flag("--help", "print help and exit");
  estimate->add_option("--data", est.data, "input CSV with columns x1,x2")
      ->required();
  estimate->add_option("--h", est.h, "density bandwidth (both axes)");
  estimate->add_option("--h1", est.h1, "density bandwidth, axis 1");
  estimate->add_option("--h2", est.h2, "density bandwidth, axis 2");
  estimate->add_option("--h-tilde", est.h_tilde,
                       "distribution bandwidth, or 'auto' (n^(-1/6))");
  estimate->add_option("--eps", est.eps,
                       "weight truncation level, or 'auto' (1/log n)");
  estimate->add_option("--grid-lo", est.grid_lo, "grid lower corner")
      ->required();
  estimate->add_option("--grid-hi", est.grid_hi, "grid upper corner")
      ->required();
  estimate->add_option("--grid-cpu", est.grid_cpu, "grid nodes per unit length")
      ->required()
      ->check(CLI::PositiveNumber);
  estimate->add_option("--method", est.method, "estimator to evaluate")
      ->check(CLI::IsMember({"combined", "mm", "mp", "pm", "pp"}));
  estimate->add_option("--mode", est.mode, "evaluation algorithm")
      ->check(CLI::IsMember({"binned", "exact"}));
  estimate->add_option("--out", est.out, "output CSV path")->required();
  estimate->add_flag("--clip-negative", est.clip_negative,
                     "zero out negative density values");
  estimate->add_option("--threads", est.threads,
                       "worker threads (0: DECON2D_THREADS or all cores)");
  estimate->callback([&est] { run_estimate(est); });

  WeightsArgs wts;
  CLI::App* weights = app.add_subcommand(
      "weights", "print combination weights at a point as JSON");
  weights->add_option("--data", wts.data, "input CSV with columns x1,x2")
      ->required();
  weights->add_option("--point", wts.point, "evaluation point 'x1,x2'")
      ->required();
  weights->add_option("--h-tilde", wts.h_tilde,
                      "distribution bandwidth, or 'auto'");
  weights->add_option("--eps", wts.eps, "truncation level, or 'auto'");
  weights->callback([&wts] { run_weights(wts); });

  DiagnoseArgs diag;
  CLI::App* diagnose = app.add_subcommand(
      "diagnose", "replicate an estimator and compare with the predicted laws");
  diagnose->set_help_flag("--help", "print help and exit");
  diagnose->add_option("--example", diag.example, "benchmark model (1 or 2)")
      ->required()
      ->check(CLI::IsMember({1, 2}));
  diagnose->add_option("--n", diag.n, "sample size per replication")
      ->required()
      ->check(CLI::PositiveNumber);
  diagnose->add_option("--h", diag.h, "density bandwidth");
  diagnose->add_option("--h-tilde", diag.h_tilde,
                       "distribution bandwidth, or 'auto'");
  diagnose->add_option("--eps", diag.eps, "truncation level, or 'auto'");
  diagnose->add_option("--reps", diag.reps, "number of replications")
      ->check(CLI::PositiveNumber);
  diagnose->add_option("--points", diag.points,
                       "evaluation points 'x1,x2;x1,x2;...'")
      ->required();
  diagnose->add_option("--seed", diag.seed, "random seed");
  diagnose->add_option("--kind", diag.kind, "study target")
      ->check(CLI::IsMember({"density", "distribution"}));
  diagnose->add_option("--weights", diag.weights,
                       "weight choice for the combined estimator")
      ->check(CLI::IsMember({"estimated", "oracle"}));
  diagnose->add_option("--out", diag.out, "output CSV path")->required();
  diagnose->add_option("--threads", diag.threads,
                       "worker threads (0: DECON2D_THREADS or all cores)");
  diagnose->callback([&diag] { run_diagnose(diag); });

  CensorArgs cen;
  CLI::App* censor = app.add_subcommand(
      "censor", "transform quadrant-censored records into points");
  censor->add_option("--data", cen.data, "input CSV with columns t1,t2,delta")
      ->required();
  censor->add_option("--out", cen.out, "output CSV path")->required();
  censor->callback([&cen] { run_censor(cen); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
