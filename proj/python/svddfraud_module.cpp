#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <optional>
#include <span>

#include "svddfraud/dataio.hpp"
#include "svddfraud/errors.hpp"
#include "svddfraud/eval.hpp"
#include "svddfraud/model_io.hpp"
#include "svddfraud/pipeline.hpp"
#include "svddfraud/redbscan.hpp"
#include "svddfraud/svdd.hpp"
#include "svddfraud/svm.hpp"
#include "svddfraud/tuner.hpp"

namespace py = pybind11;
using namespace svddfraud;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;
using IntArray = py::array_t<int, py::array::c_style | py::array::forcecast>;

DataMatrix to_matrix(const Array& x) {
  if (x.ndim() != 2) throw py::value_error("expected a 2-D array of shape (rows, features)");
  DataMatrix m(static_cast<std::size_t>(x.shape(1)));
  m.values.assign(x.data(), x.data() + x.size());
  return m;
}

DataMatrix to_matrix(const Array& x, const IntArray& y) {
  DataMatrix m = to_matrix(x);
  if (y.ndim() != 1 || static_cast<std::size_t>(y.shape(0)) != m.rows())
    throw py::value_error("labels must be a 1-D array with one entry per row");
  m.labels.assign(y.data(), y.data() + y.size());
  return m;
}

Array to_array(const DataMatrix& m) {
  Array out({m.rows(), m.cols()});
  std::copy(m.values.begin(), m.values.end(), out.mutable_data());
  return out;
}

template <typename T>
py::array_t<T> to_array(const std::vector<T>& v) {
  return py::array_t<T>(static_cast<py::ssize_t>(v.size()), v.data());
}

template <typename Score>
py::array_t<double> score_rows(const Array& x, Score score) {
  const DataMatrix m = to_matrix(x);
  py::array_t<double> out(static_cast<py::ssize_t>(m.rows()));
  auto* o = out.mutable_data();
  for (std::size_t r = 0; r < m.rows(); ++r) o[r] = score(m.row(r));
  return out;
}

}  // namespace

PYBIND11_MODULE(_svddfraud, m) {
  m.doc() = "SVDD fraud detection with density-based training-set reduction";

  py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
  py::register_exception<pipeline::StageError>(m, "StageError", PyExc_RuntimeError);

  py::class_<SvddModel>(m, "SvddModel")
      .def_property_readonly("sigma", [](const SvddModel& s) { return s.kernel.sigma; })
      .def_readonly("radius_sq", &SvddModel::radius_sq)
      .def_readonly("box_c", &SvddModel::box_c)
      .def_readonly("training_rows", &SvddModel::training_rows)
      .def_property_readonly("alphas", [](const SvddModel& s) { return to_array(s.alphas); })
      .def_property_readonly("support_indices", [](const SvddModel& s) { return to_array(s.support_indices); })
      .def("decision_function",
           [](const SvddModel& s, const Array& x) {
             return score_rows(x, [&](std::span<const double> z) { return decision_score(s, z); });
           },
           "R^2 minus the kernel distance to the center; negative means outside (fraud).")
      .def("distance_sq",
           [](const SvddModel& s, const Array& x) {
             return score_rows(x, [&](std::span<const double> z) { return kernel_distance_sq(s, z); });
           })
      .def("predict", [](const SvddModel& s, const Array& x) { return to_array(classify(s, to_matrix(x))); })
      .def("dual_objective", [](const SvddModel& s) { return dual_objective(s); })
      .def("save", [](const SvddModel& s, const std::filesystem::path& p) { model_io::save(p, s); });

  py::class_<SvmModel>(m, "SvmModel")
      .def_property_readonly("sigma", [](const SvmModel& s) { return s.kernel.sigma; })
      .def_readonly("bias", &SvmModel::bias)
      .def_readonly("box_c", &SvmModel::box_c)
      .def_property_readonly("signed_alphas", [](const SvmModel& s) { return to_array(s.signed_alphas); })
      .def_property_readonly("support_indices", [](const SvmModel& s) { return to_array(s.support_indices); })
      .def("decision_function",
           [](const SvmModel& s, const Array& x) {
             return score_rows(x, [&](std::span<const double> z) { return svm_decision(s, z); });
           })
      .def("predict", [](const SvmModel& s, const Array& x) { return to_array(svm_predict(s, to_matrix(x))); })
      .def("dual_objective", [](const SvmModel& s) { return dual_objective(s); })
      .def("save", [](const SvmModel& s, const std::filesystem::path& p) { model_io::save(p, s); });

  m.def(
      "train_svdd",
      [](const Array& x, double sigma, double fracrej, std::optional<double> box_c, double tolerance) {
        SvddConfig c;
        c.kernel.sigma = sigma;
        c.fracrej = fracrej;
        c.box_c = box_c;
        c.solver_tolerance = tolerance;
        const DataMatrix data = to_matrix(x);
        py::gil_scoped_release release;
        return train_svdd(data, c);
      },
      py::arg("x"), py::arg("sigma") = 1.0, py::arg("fracrej") = 0.05, py::arg("box_c") = py::none(),
      py::arg("tolerance") = 1e-6, "Fits a one-class SVDD with an RBF kernel exp(-||a-b||^2 / sigma^2).");

  m.def(
      "train_svm",
      [](const Array& x, const IntArray& y, double sigma, double box_c, double tolerance) {
        SvmConfig c;
        c.kernel.sigma = sigma;
        c.box_c = box_c;
        c.solver_tolerance = tolerance;
        const DataMatrix data = to_matrix(x, y);
        py::gil_scoped_release release;
        return train_svm(data, c);
      },
      py::arg("x"), py::arg("y"), py::arg("sigma") = 1.0, py::arg("box_c") = 1.0, py::arg("tolerance") = 1e-3,
      "Fits a two-class C-SVM; labels are 0/1 with 1 = fraud.");

  m.def(
      "load_model",
      [](const std::filesystem::path& p) -> py::object {
        auto any = model_io::load(p);
        if (auto* s = std::get_if<SvddModel>(&any)) return py::cast(std::move(*s));
        return py::cast(std::get<SvmModel>(std::move(any)));
      },
      py::arg("path"));

  m.def("estimate_eps", [](const Array& x, std::size_t minpts) { return redbscan::estimate_eps(to_matrix(x), minpts); },
        py::arg("x"), py::arg("minpts") = 4);

  m.def(
      "reduce",
      [](const Array& x, std::size_t minpts, std::optional<double> eps) {
        redbscan::ReductionConfig c;
        c.minpts = minpts;
        c.eps = eps;
        const auto r = redbscan::reduce(to_matrix(x), c);
        py::dict d;
        d["selected"] = to_array(r.selected);
        d["indices"] = to_array(r.selected_indices);
        d["eps"] = r.eps_used;
        d["weights"] = to_array(r.weights);
        d["provenance"] = to_array(r.provenance);
        return d;
      },
      py::arg("x"), py::arg("minpts") = 4, py::arg("eps") = py::none(),
      "Density-weighted representative selection; returns selected rows, their input indices, eps, "
      "weights and provenance.");

  m.def("normalize", [](const Array& x) {
        const DataMatrix n = dataio::normalize_by_column_max(to_matrix(x));
        return py::make_tuple(to_array(n), to_array(n.column_maxima));
      },
      py::arg("x"), "Divides each column by its maximum absolute value; returns (scaled, maxima).");

  m.def(
      "roc_auc",
      [](const Array& scores, const IntArray& labels) {
        const std::span<const double> s(scores.data(), static_cast<std::size_t>(scores.size()));
        const std::span<const int> t(labels.data(), static_cast<std::size_t>(labels.size()));
        const auto r = eval::roc_and_auc(s, t);
        std::vector<double> fpr, tpr;
        for (const auto& p : r.points) {
          fpr.push_back(p.fpr);
          tpr.push_back(p.tpr);
        }
        return py::make_tuple(to_array(fpr), to_array(tpr), r.auc);
      },
      py::arg("scores"), py::arg("labels"), "Returns (fpr, tpr, auc); higher scores mean more fraud-like.");

  m.def("f_measure", &eval::f_measure, py::arg("precision"), py::arg("recall"));

  m.def(
      "run_ga",
      [](const py::function& objective, const std::vector<std::pair<double, double>>& bounds,
         std::size_t population_size, std::size_t generations, std::uint64_t seed) {
        tuner::GaConfig c;
        c.population_size = population_size;
        c.generations = generations;
        c.seed = seed;
        for (const auto& [lo, hi] : bounds) c.bounds.push_back({lo, hi});
        const auto r = tuner::run_ga(c, [&](std::span<const double> g) {
          return objective(std::vector<double>(g.begin(), g.end())).cast<double>();
        });
        std::vector<double> history;
        for (const auto& h : r.history) history.push_back(h.best_fitness);
        return py::make_tuple(r.best.genes, r.best.fitness, to_array(history));
      },
      py::arg("objective"), py::arg("bounds"), py::arg("population_size") = 16, py::arg("generations") = 10,
      py::arg("seed") = 0, "Maximizes objective(genes); returns (best_genes, best_fitness, best_per_generation).");

  m.def(
      "generate_fraud_like",
      [](std::size_t rows, double fraud_fraction, std::uint64_t seed) {
        const DataMatrix d = dataio::generate_fraud_like({.rows = rows, .fraud_fraction = fraud_fraction, .seed = seed});
        return py::make_tuple(to_array(d), to_array(d.labels));
      },
      py::arg("rows") = 20000, py::arg("fraud_fraction") = 0.01, py::arg("seed") = 0);

  m.def(
      "run_pipeline",
      [](const std::string& config_json, const std::filesystem::path& out_dir) {
        const auto c = pipeline::PipelineConfig::from_json_text(config_json);
        {
          py::gil_scoped_release release;
          pipeline::run_pipeline(c, out_dir);
        }
        return pipeline::read_key_values(out_dir / "comparison.txt");
      },
      py::arg("config_json"), py::arg("out_dir"),
      "Runs every stage into out_dir and returns the comparison summary.");
}
