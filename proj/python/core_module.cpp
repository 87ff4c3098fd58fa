#include "duo/embedding.hpp"
#include "duo/error.hpp"
#include "duo/evaluation.hpp"
#include "duo/pipeline.hpp"
#include "duo/screening.hpp"
#include "duo/serialize.hpp"
#include "duo/simulation.hpp"
#include "duo/spectral_diagnostics.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace duo;

namespace {

py::object to_py(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

DataMatrix data(const Eigen::MatrixXd& m, const char* label) { return DataMatrix(m, label); }

LabeledPartition partition(const std::vector<int>& labels) { return LabeledPartition::from_labels(labels); }

py::dict cluster_pair(const ClusterPair& c) {
  py::dict d;
  d["x"] = c.x.values();
  d["y"] = c.y.values();
  d["labels_x"] = c.labels_x;
  d["labels_y"] = c.labels_y;
  d["x_clean"] = c.x_clean.values();
  d["y_clean"] = c.y_clean.values();
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Joint kernel embeddings of two datasets through a duo-landmark kernel";

  auto& base = py::register_exception<Error>(m, "DuoError", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<ShapeError>(m, "ShapeError", base.ptr());
  py::register_exception<IndexError>(m, "IndexError", base.ptr());
  py::register_exception<DegenerateError>(m, "DegenerateError", base.ptr());
  py::register_exception<IoError>(m, "IoError", base.ptr());

  m.def(
      "cross_sq_distances",
      [](const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) { return cross_sq_distances(x, y).d; },
      py::arg("x"), py::arg("y"));

  m.def(
      "duo_kernel",
      [](const Eigen::MatrixXd& x, const Eigen::MatrixXd& y, double omega) {
        DistanceMatrix d = cross_sq_distances(x, y);
        Bandwidth h = select_bandwidth(d, omega);
        return py::make_tuple(build_duo_kernel(d, h).k, h.h);
      },
      py::arg("x"), py::arg("y"), py::arg("omega") = kDefaultOmega,
      "Kernel matrix exp(-|x_i - y_j|^2 / h) and the percentile bandwidth h.");

  m.def(
      "duo_svd",
      [](const Eigen::MatrixXd& k) {
        ScaledSvd s = duo_svd(KernelMatrix{k, 1.0});
        return py::make_tuple(s.s, s.u, s.v);
      },
      py::arg("k"), "Singular triplets of K / sqrt(n1 n2) as (s, u, v).");

  m.def(
      "screen_alignability",
      [](const Eigen::MatrixXd& x, const Eigen::MatrixXd& y, double omega, int k, const IndexSet& gamma) {
        nlohmann::json j = screen_alignability(center_columns(data(x, "x")), center_columns(data(y, "y")), omega, k,
                                               gamma.empty() ? default_screen_gamma() : gamma);
        return to_py(j);
      },
      py::arg("x"), py::arg("y"), py::arg("omega") = kDefaultOmega, py::arg("k") = kDefaultScreenK,
      py::arg("gamma") = IndexSet{});

  m.def(
      "bulk_eigenvalues",
      [](const Eigen::MatrixXd& x, const Eigen::MatrixXd& y, double omega, bool calibrated) {
        DataMatrix cx = center_columns(data(x, "x")), cy = center_columns(data(y, "y"));
        DistanceMatrix d = cross_sq_distances(cx, cy);
        KernelMatrix k = build_duo_kernel(d, select_bandwidth(d, omega));
        return calibrated ? calibrated_bulk_eigenvalues(k, cx, cy) : scaled_bulk_eigenvalues(k, cx.p());
      },
      py::arg("x"), py::arg("y"), py::arg("omega") = kDefaultOmega, py::arg("calibrated") = true);

  m.def(
      "detect_noise_regime",
      [](const Eigen::VectorXd& w, int k_skip, double c1, double c2) {
        nlohmann::json j = detect_noise_regime(w, k_skip, c1, c2);
        return to_py(j);
      },
      py::arg("w"), py::arg("k_skip") = kDefaultKSkip, py::arg("c1") = kDefaultC1, py::arg("c2") = kDefaultC2);

  m.def(
      "mp_edges",
      [](double phi) {
        MpLaw l = mp_edges(phi);
        return py::make_tuple(l.gamma_minus, l.gamma_plus);
      },
      py::arg("phi"));

  m.def(
      "free_conv_quantiles",
      [](Index n1, Index n2, Index p, int reps, std::uint64_t seed) {
        nlohmann::json j = free_conv_quantiles_mc(n1, n2, p, reps, seed);
        return to_py(j);
      },
      py::arg("n1"), py::arg("n2"), py::arg("p"), py::arg("reps") = 40, py::arg("seed") = 0);

  m.def(
      "run",
      [](const Eigen::MatrixXd& x, const Eigen::MatrixXd& y, py::object omega, const IndexSet& gamma1,
         const IndexSet& gamma2, bool skip_screening, bool noise_check, int k, std::uint64_t seed) {
        RunConfig cfg;
        if (py::isinstance<py::str>(omega)) {
          if (omega.cast<std::string>() != "auto") throw ConfigError("omega must be a number or 'auto'");
          cfg.auto_omega = true;
        } else {
          cfg.omega = omega.cast<double>();
        }
        cfg.gamma1 = gamma1;
        cfg.gamma2 = gamma2;
        cfg.skip_screening = skip_screening;
        cfg.noise_check = noise_check;
        cfg.k_screen = k;
        cfg.seed = seed;
        RunResult r = run(data(x, "x"), data(y, "y"), cfg);
        py::dict out;
        out["status"] = to_string(r.status);
        out["h"] = r.bandwidth.h;
        out["omega"] = r.bandwidth.omega;
        if (r.alignability) out["alignability"] = to_py(nlohmann::json(*r.alignability));
        if (r.noise) out["noise"] = to_py(nlohmann::json(*r.noise));
        if (r.embedding) {
          out["embedding_x"] = r.embedding->ex;
          out["embedding_y"] = r.embedding->ey;
          out["singular_values"] = r.singular_values;
        }
        return out;
      },
      py::arg("x"), py::arg("y"), py::arg("omega") = py::float_(kDefaultOmega),
      py::arg("gamma1") = default_embedding_gamma(6), py::arg("gamma2") = default_embedding_gamma(6),
      py::arg("skip_screening") = false, py::arg("noise_check") = false, py::arg("k") = kDefaultScreenK,
      py::arg("seed") = 0,
      "Screen, optionally noise-check, and embed. Returns a dict with status and arrays.");

  m.def(
      "extend",
      [](const Eigen::MatrixXd& x, const Eigen::MatrixXd& y, const Eigen::MatrixXd& points,
         const IndexSet& components, const std::string& side, double omega) {
        DataMatrix lx = data(x, "x"), ly = data(y, "y");
        DistanceMatrix d = cross_sq_distances(lx, ly);
        Bandwidth h = select_bandwidth(d, omega);
        ExtensionContext ctx(lx, ly, h, duo_svd(build_duo_kernel(d, h)));
        if (side != "x" && side != "y") throw ConfigError("side must be 'x' or 'y'");
        return extend_points(side == "x" ? Side::left : Side::right, points, components, ctx);
      },
      py::arg("x"), py::arg("y"), py::arg("points"), py::arg("components"), py::arg("side") = "x",
      py::arg("omega") = kDefaultOmega, "Out-of-sample eigenfunction values at new points.");

  m.def(
      "sample_setting",
      [](int setting, Index n1, Index n2, Index p, double tau, std::optional<double> s1, std::optional<double> s2,
         std::uint64_t seed) {
        if (setting != 1 && setting != 2) throw ConfigError("setting must be 1 or 2");
        auto f = setting == 1 ? static_cast<ClusterPair (*)(Index, Index, Index, double, double, double,
                                                            std::uint64_t)>(sample_setting1)
                              : static_cast<ClusterPair (*)(Index, Index, Index, double, double, double,
                                                            std::uint64_t)>(sample_setting2);
        return cluster_pair(f(n1, n2, p, tau, s1.value_or(0.25), s2.value_or(1.0), seed));
      },
      py::arg("setting"), py::arg("n1") = 600, py::arg("n2") = 600, py::arg("p") = 800, py::arg("tau") = 0.0,
      py::arg("sigma1_sq") = py::none(), py::arg("sigma2_sq") = py::none(), py::arg("seed") = 0);

  m.def(
      "sample_torus_pair",
      [](Index n1, Index n2, Index p, double s1, double s2, std::uint64_t seed) {
        TorusPair t = sample_torus_pair(n1, n2, p, s1, s2, seed);
        py::dict d;
        d["x"] = t.x.values();
        d["y"] = t.y.values();
        d["y_clean"] = t.y_clean.values();
        d["theta"] = t.theta;
        return d;
      },
      py::arg("n1") = 600, py::arg("n2") = 600, py::arg("p") = 800, py::arg("sigma1_sq") = 0.16,
      py::arg("sigma2_sq") = 1.0, py::arg("seed") = 0);

  m.def(
      "sample_pure_noise_pair",
      [](Index n1, Index n2, Index p, double s1, double s2, std::uint64_t seed) {
        DataPair d = sample_pure_noise_pair(n1, n2, p, s1, s2, seed);
        return py::make_tuple(d.x.values(), d.y.values());
      },
      py::arg("n1"), py::arg("n2"), py::arg("p"), py::arg("sigma1_sq") = 1.0, py::arg("sigma2_sq") = 1.0,
      py::arg("seed") = 0);

  m.def(
      "sample_negative_control",
      [](const std::string& kind, Index n1, Index n2, std::uint64_t seed) {
        DataPair d = sample_negative_control(parse_negative_control(kind), n1, n2, seed);
        return py::make_tuple(d.x.values(), d.y.values());
      },
      py::arg("kind"), py::arg("n1") = 600, py::arg("n2") = 600, py::arg("seed") = 0);

  m.def(
      "rand_index",
      [](const std::vector<int>& a, const std::vector<int>& b) { return rand_index(partition(a), partition(b)); },
      py::arg("a"), py::arg("b"));

  m.def(
      "jaccard_concordance",
      [](const Eigen::MatrixXd& e, const Eigen::MatrixXd& clean, int k) { return jaccard_concordance(e, clean, k); },
      py::arg("embedding"), py::arg("clean"), py::arg("k") = kDefaultJaccardK);

  m.def(
      "kmeans", [](const Eigen::MatrixXd& pts, int k, std::uint64_t seed) { return kmeans(pts, k, seed).assignments(); },
      py::arg("points"), py::arg("k"), py::arg("seed") = 0);

  m.def(
      "hierarchical_cluster",
      [](const Eigen::MatrixXd& pts, int k) { return hierarchical_cluster(pts, k).assignments(); }, py::arg("points"),
      py::arg("k"));

  m.def(
      "pca_embed", [](const Eigen::MatrixXd& x, int r) { return pca_embed(data(x, "x"), r); }, py::arg("x"),
      py::arg("r"));
}
