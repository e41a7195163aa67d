#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mtuple/errors.hpp"
#include "mtuple/io.hpp"
#include "mtuple/pipeline.hpp"
#include "mtuple/plane_refinement.hpp"
#include "mtuple/report_json.hpp"
#include "mtuple/synthetic.hpp"
#include "mtuple/tuple_io.hpp"

namespace py = pybind11;
using namespace mtuple;

namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// numpy (M, n) rows <-> PointCloud
PointCloud cloud_from(const Eigen::MatrixXd& rows, const std::optional<Eigen::VectorXd>& weights) {
  return weights ? PointCloud::from_rows(rows, *weights) : PointCloud::from_rows(rows);
}

Eigen::MatrixXd rows_of(const PointCloud& c) { return c.points().transpose(); }

TupleBattery battery_for(int n, const std::optional<std::vector<std::string>>& specs) {
  if (!specs) return default_battery(n);
  std::vector<BasisSpec> parsed;
  for (const auto& s : *specs) parsed.push_back(BasisSpec::parse(n, s));
  TupleBattery b = derive_battery(parsed);
  validate_battery(b, n);
  return b;
}

std::string dumps(const io::Json& j) { return j.dump(); }

}  // namespace

PYBIND11_MODULE(_mtuple, m) {
  m.doc() = "Moment n-tuples: symmetry detection and orthogonal pose estimation";

  static py::exception<ArgumentError> argument_error(m, "ArgumentError", PyExc_ValueError);
  static py::exception<DegenerateInputError> degenerate_error(m, "DegenerateInputError", PyExc_RuntimeError);
  static py::exception<AmbiguityError> ambiguity_error(m, "AmbiguityError", PyExc_RuntimeError);
  static py::exception<StateError> state_error(m, "StateError", PyExc_RuntimeError);
  static py::exception<FormatError> format_error(m, "FormatError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ArgumentError& e) {
      py::set_error(argument_error, e.what());
    } catch (const DegenerateInputError& e) {
      py::set_error(degenerate_error, e.what());
    } catch (const AmbiguityError& e) {
      py::set_error(ambiguity_error, e.what());
    } catch (const StateError& e) {
      py::set_error(state_error, e.what());
    } catch (const FormatError& e) {
      py::set_error(format_error, e.what());
    }
  });

  m.def("enumerate_multi_indices", [](int n, int p) {
    std::vector<std::vector<int>> out;
    for (const auto& idx : enumerate_multi_indices(n, p)) out.push_back(idx.exponents());
    return out;
  }, py::arg("n"), py::arg("p"));

  m.def("raw_moments", [](const Eigen::MatrixXd& pts, int p, std::optional<Eigen::VectorXd> w) {
    const auto mv = compute_raw_moments(cloud_from(pts, w), p);
    return std::vector<double>(mv.values().begin(), mv.values().end());
  }, py::arg("points"), py::arg("order"), py::arg("weights") = py::none());
  m.def("central_moments", [](const Eigen::MatrixXd& pts, int p, std::optional<Eigen::VectorXd> w) {
    const auto mv = compute_central_moments(cloud_from(pts, w), p);
    return std::vector<double>(mv.values().begin(), mv.values().end());
  }, py::arg("points"), py::arg("order"), py::arg("weights") = py::none());
  m.def("gravity_center", [](const Eigen::MatrixXd& pts, std::optional<Eigen::VectorXd> w) {
    return Eigen::VectorXd(gravity_center(cloud_from(pts, w)));
  }, py::arg("points"), py::arg("weights") = py::none());
  m.def("image_to_points", [](const RowMatrix& pixels, double threshold) {
    DensityImage img{static_cast<int>(pixels.cols()), static_cast<int>(pixels.rows()),
                     std::vector<double>(pixels.data(), pixels.data() + pixels.size())};
    return rows_of(image_to_cloud(img, threshold));
  }, py::arg("pixels"), py::arg("threshold") = kDefaultImageThreshold);

  py::class_<TupleFamily>(m, "TupleFamily")
      .def_property_readonly("spec", [](const TupleFamily& f) { return f.spec().to_string(); })
      .def_property_readonly("dimension", &TupleFamily::dimension)
      .def_property_readonly("basis_size", [](const TupleFamily& f) { return f.basis()->size(); })
      .def_property_readonly("basis", [](const TupleFamily& f) {
        std::vector<std::string> labels;
        for (std::size_t i = 0; i < f.basis()->size(); ++i) labels.push_back(f.basis()->label(i));
        return labels;
      })
      .def_property_readonly("alphas", [](const TupleFamily& f) {
        std::vector<std::vector<std::vector<std::int64_t>>> out;
        for (const auto& t : f.tuples()) out.push_back(t.alphas);
        return out;
      })
      .def("__len__", &TupleFamily::size)
      .def("to_json", [](const TupleFamily& f) { return dumps(io::family_to_json(f)); })
      .def("evaluate", [](const TupleFamily& f, const Eigen::MatrixXd& pts) {
        const PointCloud c = PointCloud::from_rows(pts);
        return Eigen::MatrixXd(f.evaluate(compute_central_moments(c, f.spec().orders())));
      }, py::arg("points"), "tuple rows on the central moments of the points (no scale normalization)");

  m.def("derive_tuples", [](int n, const std::string& spec) { return derive_tuples(BasisSpec::parse(n, spec)); },
        py::arg("dimension"), py::arg("spec"));
  m.def("default_battery_specs", [](int n) {
    std::vector<std::string> out;
    for (const auto& s : default_battery_specs(n)) out.push_back(s.to_string());
    return out;
  }, py::arg("dimension"));
  m.def("load_tuples", [](const std::string& path) { return io::load_tuples(path).battery; }, py::arg("path"));
  m.def("save_tuples", [](const std::string& path, const TupleBattery& b) { io::save_tuples(path, b); },
        py::arg("path"), py::arg("families"));

  m.def("tuple_rows", [](const Eigen::MatrixXd& pts, std::optional<std::vector<std::string>> specs) {
    const PointCloud c = PointCloud::from_rows(pts);
    return compute_tuple_set(c, battery_for(c.dimension(), specs)).rows;
  }, py::arg("points"), py::arg("specs") = py::none());

  m.def("_analyze", [](const Eigen::MatrixXd& pts, std::optional<std::vector<std::string>> specs, double tau_plane,
                       double tau_axis, double point_floor) {
    const PointCloud c = PointCloud::from_rows(pts);
    const Thresholds th{tau_plane, tau_axis, point_floor};
    return dumps(io::analysis_to_json(analyze_cloud(c, battery_for(c.dimension(), specs), th), "<array>"));
  }, py::arg("points"), py::arg("specs") = py::none(), py::arg("tau_plane") = 100.0, py::arg("tau_axis") = 100.0,
     py::arg("point_floor") = 1e-6);

  m.def("_estimate", [](const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, const std::string& mode,
                        std::optional<std::vector<std::string>> specs) {
    const PointCloud ca = PointCloud::from_rows(a);
    const PointCloud cb = PointCloud::from_rows(b);
    const auto& battery = battery_for(ca.dimension(), specs);
    if (estimation_mode_from_string(mode) == EstimationMode::allow_reflection) {
      return dumps(io::composition_to_json(estimate_composition(ca, cb, battery)));
    }
    return dumps(io::estimate_to_json(estimate_transform(ca, cb, battery, EstimationMode::rotation_only)));
  }, py::arg("a"), py::arg("b"), py::arg("mode") = "rotation_only", py::arg("specs") = py::none());

  m.def("_refine_planes", [](const Eigen::MatrixXd& pts, const Eigen::VectorXd& axis, int b_max, double grid_step,
                             double accept, int max_iters) {
    RefineConfig cfg;
    cfg.grid_step_deg = grid_step;
    cfg.accept_residual = accept;
    cfg.max_iters = max_iters;
    return dumps(io::refinement_to_json(refine_planes(PointCloud::from_rows(pts), axis, b_max, cfg)));
  }, py::arg("points"), py::arg("axis"), py::arg("b_max") = 8, py::arg("grid_step") = 2.0, py::arg("accept") = 0.02,
     py::arg("max_iters") = 20);

  m.def("read_cloud", [](const std::string& path) { return rows_of(io::read_cloud(path)); }, py::arg("path"));

  auto syn = m.def_submodule("synthetic", "synthetic test shapes, rows are points");
  syn.def("rect_image", [](const std::string& kind, int size) {
    const DensityImage img = synthetic::rect_image(synthetic::rect_kind_from_string(kind), size);
    return RowMatrix(Eigen::Map<const RowMatrix>(img.pixels.data(), img.height, img.width));
  }, py::arg("kind") = "mirror-x", py::arg("size") = 64);
  syn.def("mug", [](std::uint64_t seed, std::size_t n) { return rows_of(synthetic::mug(seed, n)); },
          py::arg("seed") = 0, py::arg("base_points") = 4000);
  syn.def("bottle", [](int p, int a) { return rows_of(synthetic::bottle(p, a)); }, py::arg("profile_steps") = 60,
          py::arg("azimuth_steps") = 360);
  syn.def("table", [](std::uint64_t seed, std::size_t n) { return rows_of(synthetic::table(seed, n)); },
          py::arg("seed") = 0, py::arg("base_points") = 2500);
  syn.def("camera", [](std::uint64_t seed, std::size_t n) { return rows_of(synthetic::camera(seed, n)); },
          py::arg("seed") = 0, py::arg("points") = 8000);
}
