#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <string>
#include <vector>

#include "fdrbench/adjust.hpp"
#include "fdrbench/de_test.hpp"
#include "fdrbench/matrix.hpp"
#include "fdrbench/metrics.hpp"
#include "fdrbench/plots.hpp"
#include "fdrbench/rng.hpp"
#include "fdrbench/simulate.hpp"

namespace py = pybind11;
using namespace fdrbench;

namespace {

template <typename T>
py::array_t<T> matrix_to_numpy(const Matrix<T>& m) {
  py::array_t<T> out({m.rows(), m.cols()});
  std::copy(m.data().begin(), m.data().end(), out.mutable_data());
  return out;
}

template <typename T>
Matrix<T> numpy_to_matrix(const py::array_t<T, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 2) throw std::invalid_argument("expected a 2-d array");
  Matrix<T> m(static_cast<std::size_t>(a.shape(0)), static_cast<std::size_t>(a.shape(1)));
  std::copy(a.data(), a.data() + a.size(), m.data().begin());
  return m;
}

template <typename T>
py::array_t<T> vector_to_numpy(const std::vector<T>& v) {
  py::array_t<T> out(std::vector<py::ssize_t>{static_cast<py::ssize_t>(v.size())});
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

py::array_t<bool> flags_to_numpy(const std::vector<std::uint8_t>& v) {
  py::array_t<bool> out(std::vector<py::ssize_t>{static_cast<py::ssize_t>(v.size())});
  auto* data = out.mutable_data();
  for (std::size_t i = 0; i < v.size(); ++i) data[i] = v[i] != 0;
  return out;
}

std::vector<std::uint8_t> to_flags(const std::vector<bool>& v) {
  std::vector<std::uint8_t> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] ? 1 : 0;
  return out;
}

py::array_t<double> points_to_numpy(const std::vector<CurvePoint>& points) {
  py::array_t<double> out({points.size(), std::size_t{2}});
  auto* data = out.mutable_data();
  for (std::size_t i = 0; i < points.size(); ++i) {
    data[2 * i] = points[i].x;
    data[2 * i + 1] = points[i].y;
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Negative-binomial DE simulation with BH/BY/Storey FDR control";

  py::class_<Rng>(m, "Rng")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def_property_readonly("seed", &Rng::seed)
      .def("uniform", &Rng::next_uniform)
      .def("normal", &Rng::sample_normal, py::arg("mean"), py::arg("sd"))
      .def("gamma", &Rng::sample_gamma, py::arg("shape"), py::arg("scale"))
      .def("poisson", &Rng::sample_poisson, py::arg("mean"))
      .def("nb", &Rng::sample_nb, py::arg("mu"), py::arg("dispersion"));

  py::enum_<FcScheme>(m, "FcScheme")
      .value("signed_magnitude", FcScheme::signed_magnitude)
      .value("plain_normal", FcScheme::plain_normal);

  py::class_<SimulationConfig>(m, "SimulationConfig")
      .def(py::init<>())
      .def_readwrite("n_genes", &SimulationConfig::n_genes)
      .def_readwrite("n_per_group", &SimulationConfig::n_per_group)
      .def_readwrite("prop_de", &SimulationConfig::prop_de)
      .def_readwrite("dispersion", &SimulationConfig::dispersion)
      .def_readwrite("baseline_shape", &SimulationConfig::baseline_shape)
      .def_readwrite("baseline_scale", &SimulationConfig::baseline_scale)
      .def_readwrite("baseline_multiplier", &SimulationConfig::baseline_multiplier)
      .def_readwrite("library_mean", &SimulationConfig::library_mean)
      .def_readwrite("fc_log2_mean", &SimulationConfig::fc_log2_mean)
      .def_readwrite("fc_log2_sd", &SimulationConfig::fc_log2_sd)
      .def_readwrite("fc_min_abs_log2", &SimulationConfig::fc_min_abs_log2)
      .def_readwrite("fc_scheme", &SimulationConfig::fc_scheme)
      .def_readwrite("seed", &SimulationConfig::seed);

  py::class_<GroundTruth>(m, "GroundTruth")
      .def_property_readonly("is_de",
                             [](const GroundTruth& t) { return flags_to_numpy(t.is_de); })
      .def_property_readonly("true_log2_fc",
                             [](const GroundTruth& t) { return vector_to_numpy(t.true_log2_fc); })
      .def_property_readonly("baseline_mean",
                             [](const GroundTruth& t) { return vector_to_numpy(t.baseline_mean); });

  py::class_<CountMatrix>(m, "CountMatrix")
      .def_property_readonly("counts",
                             [](const CountMatrix& c) { return matrix_to_numpy(c.counts); })
      .def_property_readonly("group_labels",
                             [](const CountMatrix& c) {
                               std::vector<std::string> labels;
                               labels.reserve(c.group_labels.size());
                               for (const char l : c.group_labels) labels.emplace_back(1, l);
                               return labels;
                             })
      .def_property_readonly("library_sizes",
                             [](const CountMatrix& c) { return vector_to_numpy(c.library_sizes); });

  m.def("simulate_dataset",
        [](const SimulationConfig& cfg) { return simulate_dataset(cfg); },
        py::arg("config"));

  py::class_<TestResult>(m, "TestResult")
      .def_property_readonly("p_value",
                             [](const TestResult& t) { return vector_to_numpy(t.p_value); })
      .def_property_readonly("statistic",
                             [](const TestResult& t) { return vector_to_numpy(t.statistic); })
      .def_property_readonly("est_log2_fc",
                             [](const TestResult& t) { return vector_to_numpy(t.est_log2_fc); })
      .def_property_readonly("mean_log2_expr",
                             [](const TestResult& t) { return vector_to_numpy(t.mean_log2_expr); });

  m.def("run_de_tests",
        [](const CountMatrix& counts, double pseudo_count, bool cpm_normalize) {
          return run_de_tests(counts, {pseudo_count, cpm_normalize});
        },
        py::arg("counts"), py::arg("pseudo_count") = 1.0,
        py::arg("cpm_normalize") = false);

  m.def("log2_transform",
        [](const CountMatrix& counts, double pseudo_count) {
          return matrix_to_numpy(log2_transform(counts.counts, pseudo_count));
        },
        py::arg("counts"), py::arg("pseudo_count") = 1.0);

  m.def("wilcoxon_rank_sum",
        [](const std::vector<double>& a, const std::vector<double>& b) {
          const RankSumTest t = wilcoxon_rank_sum(a, b);
          return py::make_tuple(t.statistic, t.p_value);
        },
        py::arg("group_a"), py::arg("group_b"));

  py::class_<AdjustedResults>(m, "AdjustedResults")
      .def_property_readonly("method",
                             [](const AdjustedResults& r) { return method_name(r.method); })
      .def_property_readonly("adjusted",
                             [](const AdjustedResults& r) { return vector_to_numpy(r.adjusted); })
      .def_property_readonly("significant",
                             [](const AdjustedResults& r) { return flags_to_numpy(r.significant); })
      .def_readonly("alpha", &AdjustedResults::alpha)
      .def_readonly("pi0_hat", &AdjustedResults::pi0_hat);

  m.def("adjust_bh",
        [](const std::vector<double>& p, double alpha) { return adjust_bh(p, alpha); },
        py::arg("pvals"), py::arg("alpha") = 0.05);
  m.def("adjust_by",
        [](const std::vector<double>& p, double alpha) { return adjust_by(p, alpha); },
        py::arg("pvals"), py::arg("alpha") = 0.05);
  m.def("estimate_pi0",
        [](const std::vector<double>& p, double lam) { return estimate_pi0(p, lam); },
        py::arg("pvals"), py::arg("lambda_") = 0.5);
  m.def("qvalues",
        [](const std::vector<double>& p, double pi0, double alpha) {
          return qvalues(p, pi0, alpha);
        },
        py::arg("pvals"), py::arg("pi0"), py::arg("alpha") = 0.05);
  m.def("storey_qvalues",
        [](const std::vector<double>& p, double alpha, double lam, bool grid) {
          return storey_qvalues(p, alpha, {lam, grid});
        },
        py::arg("pvals"), py::arg("alpha") = 0.05, py::arg("lambda_") = 0.5,
        py::arg("lambda_grid") = false);

  py::class_<ConfusionSummary>(m, "ConfusionSummary")
      .def_readonly("tp", &ConfusionSummary::tp)
      .def_readonly("fp", &ConfusionSummary::fp)
      .def_readonly("tn", &ConfusionSummary::tn)
      .def_readonly("fn", &ConfusionSummary::fn)
      .def_readonly("type1", &ConfusionSummary::type1)
      .def_readonly("fdr", &ConfusionSummary::fdr)
      .def_readonly("power", &ConfusionSummary::power);

  m.def("confusion",
        [](const std::vector<bool>& sig, const std::vector<bool>& truth) {
          return confusion(to_flags(sig), to_flags(truth));
        },
        py::arg("significant"), py::arg("truth"));
  m.def("error_rates",
        [](std::int64_t tp, std::int64_t fp, std::int64_t tn, std::int64_t fn) {
          const ErrorRates r = error_rates(tp, fp, tn, fn);
          return py::make_tuple(r.type1, r.fdr, r.power);
        },
        py::arg("tp"), py::arg("fp"), py::arg("tn"), py::arg("fn"));

  py::class_<CurveSeries>(m, "CurveSeries")
      .def_property_readonly("kind",
                             [](const CurveSeries& c) {
                               return c.kind == CurveKind::roc ? "roc" : "pr";
                             })
      .def_property_readonly("points",
                             [](const CurveSeries& c) { return points_to_numpy(c.points); })
      .def_readonly("auc", &CurveSeries::auc);

  m.def("roc_curve",
        [](const std::vector<double>& p, const std::vector<bool>& truth) {
          return roc_curve(p, to_flags(truth));
        },
        py::arg("pvals"), py::arg("truth"));
  m.def("pr_curve",
        [](const std::vector<double>& p, const std::vector<bool>& truth) {
          return pr_curve(p, to_flags(truth));
        },
        py::arg("pvals"), py::arg("truth"));

  py::class_<ProjectionResult>(m, "ProjectionResult")
      .def_property_readonly("pc1",
                             [](const ProjectionResult& p) { return vector_to_numpy(p.pc1); })
      .def_property_readonly("pc2",
                             [](const ProjectionResult& p) { return vector_to_numpy(p.pc2); })
      .def_property_readonly("variance_explained", [](const ProjectionResult& p) {
        return vector_to_numpy(p.variance_explained);
      });

  m.def("pca_projection",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& log_counts) {
          return pca_projection(numpy_to_matrix(log_counts));
        },
        py::arg("log_counts"));
}
