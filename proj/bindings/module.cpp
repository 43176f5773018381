//! Python bindings for the deconvolution core.
//!
//! Samples cross the boundary as numpy arrays of shape (n, 2) (censored
//! records as (n, 3)); small results come back as dicts keyed by the
//! quadrant tags "mm", "mp", "pm", "pp".

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <cstring>
#include <stdexcept>
#include <string>
#include <vector>

#include "decon2d/csv.hpp"
#include "decon2d/datagen.hpp"
#include "decon2d/diagnostics.hpp"
#include "decon2d/estimators.hpp"
#include "decon2d/kernels.hpp"
#include "decon2d/model.hpp"
#include "decon2d/version.hpp"
#include "decon2d/weights.hpp"

namespace py = pybind11;
using namespace decon2d;

namespace {

using DoubleArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

Sample2D to_sample(const DoubleArray& arr) {
  if (arr.ndim() != 2 || arr.shape(1) != 2)
    throw std::invalid_argument("sample must have shape (n, 2)");
  const auto n = static_cast<std::size_t>(arr.shape(0));
  Sample2D out(n);
  const double* data = arr.data();
  for (std::size_t k = 0; k < n; ++k) out[k] = {data[2 * k], data[2 * k + 1]};
  return out;
}

py::array_t<double> from_sample(const Sample2D& sample) {
  py::array_t<double> arr({static_cast<py::ssize_t>(sample.size()),
                           static_cast<py::ssize_t>(2)});
  double* data = arr.mutable_data();
  for (std::size_t k = 0; k < sample.size(); ++k) {
    data[2 * k] = sample[k].x1;
    data[2 * k + 1] = sample[k].x2;
  }
  return arr;
}

Quadrant parse_tag(const std::string& tag) {
  for (Quadrant q : all_quadrants)
    if (tag == quadrant_name(q)) return q;
  throw std::invalid_argument("unknown quadrant tag: " + tag);
}

GridMethod parse_method(const std::string& s) {
  if (s == "combined") return GridMethod::combined;
  if (s == "mm") return GridMethod::mm;
  if (s == "mp") return GridMethod::mp;
  if (s == "pm") return GridMethod::pm;
  if (s == "pp") return GridMethod::pp;
  throw std::invalid_argument("unknown method: " + s);
}

py::dict quadrant_dict(const QuadrantProbs& p) {
  py::dict d;
  for (Quadrant q : all_quadrants) d[quadrant_name(q)] = p.get(q);
  return d;
}

py::dict weights_dict(const ConvexWeights& w) {
  py::dict d;
  for (Quadrant q : all_quadrants) d[quadrant_name(q)] = w.get(q);
  return d;
}

EstimatorConfig make_config(double h1, double h2, double h_tilde, double eps,
                            std::size_t n) {
  if (h_tilde <= 0.0 || eps <= 0.0) {
    if (n < 3)
      throw std::invalid_argument("automatic h_tilde/eps need n >= 3");
    const double nn = static_cast<double>(n);
    if (h_tilde <= 0.0) h_tilde = std::pow(nn, -1.0 / 6.0);
    if (eps <= 0.0) eps = 1.0 / std::log(nn);
  }
  return EstimatorConfig(h1, h2, h_tilde, eps);
}

py::dict report_dict(const MCReport& r) {
  py::dict d;
  d["point"] = py::make_tuple(r.point.x1, r.point.x2);
  d["estimator"] = r.estimator;
  d["reps"] = r.reps;
  d["mean_est"] = r.mean_est;
  d["var_est"] = r.var_est;
  d["true_value"] = r.true_value;
  d["empirical_bias"] = r.empirical_bias;
  d["predicted_bias"] = r.predicted_bias;
  d["predicted_var"] = r.predicted_var;
  d["bias_ratio"] = r.bias_ratio;
  d["var_ratio"] = r.var_ratio;
  d["skewness"] = r.skewness;
  d["excess_kurtosis"] = r.excess_kurtosis;
  py::dict tv;
  for (std::size_t t = 0; t < 4; ++t)
    tv[quadrant_name(all_quadrants[t])] = r.per_tag_var[t];
  d["per_tag_var"] = tv;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "bivariate uniform deconvolution: inversion-series density and "
      "distribution estimators, optimal tag combination, benchmark "
      "samplers and replication diagnostics";
  m.attr("__version__") = DECON2D_VERSION;

  m.def("biweight_constants", [] {
    const Kernel1D& k = Kernel1D::biweight();
    py::dict d;
    d["mu2"] = k.mu2();
    d["rough_w"] = k.rough_w();
    d["rough_dw"] = k.rough_dw();
    return d;
  }, "moment and roughness constants of the biweight kernel");

  m.def("kde2",
        [](const DoubleArray& sample, double h1, double h2, double x1,
           double x2) {
          return kde2(to_sample(sample), Kernel1D::biweight(),
                      Kernel1D::biweight(), h1, h2, {x1, x2});
        },
        py::arg("sample"), py::arg("h1"), py::arg("h2"), py::arg("x1"),
        py::arg("x2"),
        "plain product-kernel density estimate of the observed density");

  m.def("list_models",
        [] {
          return std::vector<std::string>{"uniform", "example1", "example2",
                                          "beta33"};
        },
        "names accepted by the model_* functions");
  m.def("model_pdf",
        [](const std::string& name, double x1, double x2) {
          return bundled_model(name).pdf({x1, x2});
        },
        py::arg("model"), py::arg("x1"), py::arg("x2"));
  m.def("model_cdf",
        [](const std::string& name, double x1, double x2) {
          return bundled_model(name).cdf({x1, x2});
        },
        py::arg("model"), py::arg("x1"), py::arg("x2"));
  m.def("forward_g",
        [](const std::string& name, double x1, double x2) {
          return forward_g(bundled_model(name), {x1, x2});
        },
        py::arg("model"), py::arg("x1"), py::arg("x2"),
        "density of X = Y + Z under the named model");
  m.def("quadrant_probs",
        [](const std::string& name, double x1, double x2) {
          return quadrant_dict(quadrant_probs_exact(bundled_model(name),
                                                    {x1, x2}));
        },
        py::arg("model"), py::arg("x1"), py::arg("x2"));
  m.def("invert_f",
        [](const std::string& name, const std::string& tag, double x1,
           double x2, int shift_bound) {
          const TrueModel& model = bundled_model(name);
          if (shift_bound < 0) shift_bound = default_shift_bound(model);
          return invert_f_series(
              [&model](Point2 p) { return mixed_partial_g(model, p); },
              parse_tag(tag), {x1, x2}, shift_bound);
        },
        py::arg("model"), py::arg("tag"), py::arg("x1"), py::arg("x2"),
        py::arg("shift_bound") = -1,
        "density inversion series on the exact mixed partial of g");
  m.def("invert_F",
        [](const std::string& name, const std::string& tag, double x1,
           double x2, int shift_bound) {
          const TrueModel& model = bundled_model(name);
          if (shift_bound < 0) shift_bound = default_shift_bound(model);
          return invert_F_series(
              [&model](Point2 p) { return forward_g(model, p); },
              parse_tag(tag), {x1, x2}, shift_bound);
        },
        py::arg("model"), py::arg("tag"), py::arg("x1"), py::arg("x2"),
        py::arg("shift_bound") = -1,
        "distribution inversion series on the exact g");

  m.def("gen_example1",
        [](std::size_t n, std::uint64_t seed) {
          const PairedSample s = gen_example1(n, seed);
          return py::make_tuple(from_sample(s.x), from_sample(s.y));
        },
        py::arg("n"), py::arg("seed"),
        "observed and latent samples of the smooth product benchmark");
  m.def("gen_example2",
        [](std::size_t n, std::uint64_t seed) {
          const PairedSample s = gen_example2(n, seed);
          return py::make_tuple(from_sample(s.x), from_sample(s.y));
        },
        py::arg("n"), py::arg("seed"),
        "observed and latent samples of the mixture benchmark");
  m.def("sample_convolved",
        [](const std::string& name, std::size_t n, std::uint64_t seed) {
          const PairedSample s = sample_convolved(bundled_model(name), n, seed);
          return py::make_tuple(from_sample(s.x), from_sample(s.y));
        },
        py::arg("model"), py::arg("n"), py::arg("seed"));

  m.def("gen_censored",
        [](const std::string& name, std::size_t n, std::uint64_t seed) {
          const auto rows = gen_censored(bundled_model(name), n, seed);
          py::array_t<double> arr({static_cast<py::ssize_t>(rows.size()),
                                   static_cast<py::ssize_t>(3)});
          double* data = arr.mutable_data();
          for (std::size_t k = 0; k < rows.size(); ++k) {
            data[3 * k] = rows[k].t1;
            data[3 * k + 1] = rows[k].t2;
            data[3 * k + 2] = static_cast<double>(rows[k].delta);
          }
          return arr;
        },
        py::arg("model"), py::arg("n"), py::arg("seed"),
        "quadrant-censored records (t1, t2, delta)");
  m.def("censor_transform",
        [](const DoubleArray& arr) {
          if (arr.ndim() != 2 || arr.shape(1) != 3)
            throw std::invalid_argument("records must have shape (n, 3)");
          const auto n = static_cast<std::size_t>(arr.shape(0));
          std::vector<CensoredRow> rows(n);
          const double* data = arr.data();
          for (std::size_t k = 0; k < n; ++k) {
            rows[k].t1 = data[3 * k];
            rows[k].t2 = data[3 * k + 1];
            rows[k].delta = static_cast<int>(data[3 * k + 2]);
          }
          return from_sample(censor_transform(rows));
        },
        py::arg("records"),
        "map (t, delta) records to points distributed like X + Z");

  m.def("f_hat",
        [](const DoubleArray& sample, const std::string& tag, double x1,
           double x2, double h1, double h2, double h_tilde, double eps) {
          const Sample2D s = to_sample(sample);
          return f_hat(parse_tag(tag), s,
                       make_config(h1, h2, h_tilde, eps, s.size()), {x1, x2});
        },
        py::arg("sample"), py::arg("tag"), py::arg("x1"), py::arg("x2"),
        py::arg("h1"), py::arg("h2"), py::arg("h_tilde") = -1.0,
        py::arg("eps") = -1.0,
        "inversion-series density estimate for one quadrant tag");
  m.def("F_hat",
        [](const DoubleArray& sample, const std::string& tag, double x1,
           double x2, double h_tilde, double eps) {
          const Sample2D s = to_sample(sample);
          return F_hat(parse_tag(tag), s,
                       make_config(0.25, 0.25, h_tilde, eps, s.size()),
                       {x1, x2});
        },
        py::arg("sample"), py::arg("tag"), py::arg("x1"), py::arg("x2"),
        py::arg("h_tilde") = -1.0, py::arg("eps") = -1.0,
        "inversion-series estimate of a quadrant probability");
  m.def("f_combined",
        [](const DoubleArray& sample, double x1, double x2, double h1,
           double h2, double h_tilde, double eps) {
          const Sample2D s = to_sample(sample);
          const CombinedDensity c = f_combined_auto(
              s, make_config(h1, h2, h_tilde, eps, s.size()), {x1, x2});
          py::dict d;
          d["value"] = c.value;
          d["weights"] = weights_dict(c.weights);
          d["probs"] = quadrant_dict(c.probs);
          return d;
        },
        py::arg("sample"), py::arg("x1"), py::arg("x2"), py::arg("h1"),
        py::arg("h2"), py::arg("h_tilde") = -1.0, py::arg("eps") = -1.0,
        "optimally weighted combination with estimated weights");

  m.def("optimal_weights",
        [](double mm, double mp, double pm, double pp) {
          return weights_dict(optimal_weights(QuadrantProbs{mm, mp, pm, pp}));
        },
        py::arg("mm"), py::arg("mp"), py::arg("pm"), py::arg("pp"),
        "variance-optimal convex weights for given quadrant probabilities");

  m.def("evaluate_grid",
        [](const DoubleArray& sample, double lo, double hi, int count_per_unit,
           double h1, double h2, double h_tilde, double eps,
           const std::string& method, const std::string& mode, int threads,
           bool clip_negative) {
          const Sample2D s = to_sample(sample);
          const EstimatorConfig cfg = make_config(h1, h2, h_tilde, eps,
                                                  s.size());
          const GridMethod gm = parse_method(method);
          const GridMode go =
              mode == "exact" ? GridMode::exact : GridMode::binned;
          const GridResult r = evaluate_grid(s, cfg, GridSpec{lo, hi,
                                             count_per_unit},
                                             gm, go, threads, clip_negative);
          py::array_t<double> nodes(
              std::vector<py::ssize_t>{static_cast<py::ssize_t>(r.nodes)});
          double* nd = nodes.mutable_data();
          for (std::size_t k = 0; k < r.nodes; ++k) nd[k] = r.spec.node(k);
          py::array_t<double> values({static_cast<py::ssize_t>(r.nodes),
                                      static_cast<py::ssize_t>(r.nodes)});
          std::memcpy(values.mutable_data(), r.values.data(),
                      r.values.size() * sizeof(double));
          return py::make_tuple(nodes, values);
        },
        py::arg("sample"), py::arg("lo"), py::arg("hi"),
        py::arg("count_per_unit"), py::arg("h1"), py::arg("h2"),
        py::arg("h_tilde") = -1.0, py::arg("eps") = -1.0,
        py::arg("method") = "combined", py::arg("mode") = "binned",
        py::arg("threads") = 0, py::arg("clip_negative") = false,
        "evaluate an estimator on a square grid; returns (nodes, values)");

  m.def("run_mc",
        [](int example, std::size_t n, double h, std::size_t reps,
           const std::vector<std::pair<double, double>>& points,
           std::uint64_t seed, double h_tilde, double eps,
           const std::string& weights, int threads) {
          if (h_tilde <= 0.0)
            h_tilde = std::pow(static_cast<double>(n), -1.0 / 6.0);
          if (eps <= 0.0) eps = 1.0 / std::log(static_cast<double>(n));
          std::vector<Point2> xs;
          for (const auto& p : points) xs.push_back({p.first, p.second});
          const WeightMode mode = weights == "oracle" ? WeightMode::oracle
                                                      : WeightMode::estimated;
          py::list out;
          for (const MCReport& r :
               run_mc(example, n, h, h_tilde, eps, reps, xs, seed, mode,
                      threads))
            out.append(report_dict(r));
          return out;
        },
        py::arg("example"), py::arg("n"), py::arg("h"), py::arg("reps"),
        py::arg("points"), py::arg("seed"), py::arg("h_tilde") = -1.0,
        py::arg("eps") = -1.0, py::arg("weights") = "estimated",
        py::arg("threads") = 0,
        "replicated study of the combined density estimator");

  m.def("run_mc_F",
        [](int example, std::size_t n, std::size_t reps,
           const std::vector<std::pair<double, double>>& points,
           std::uint64_t seed, double h_tilde, int threads) {
          if (h_tilde <= 0.0)
            h_tilde = std::pow(static_cast<double>(n), -1.0 / 6.0);
          std::vector<Point2> xs;
          for (const auto& p : points) xs.push_back({p.first, p.second});
          py::list out;
          for (const MCReport& r :
               run_mc_F(example, n, h_tilde, reps, xs, seed, threads))
            out.append(report_dict(r));
          return out;
        },
        py::arg("example"), py::arg("n"), py::arg("reps"), py::arg("points"),
        py::arg("seed"), py::arg("h_tilde") = -1.0, py::arg("threads") = 0,
        "replicated study of the distribution estimators");
}
