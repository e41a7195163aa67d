#include "mtuple/report_json.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "mtuple/errors.hpp"
#include "mtuple/tuple_io.hpp"

namespace mtuple::io {

Json number_to_json(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json vector_to_json(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(number_to_json(v[i]));
  return out;
}

Json matrix_to_json(const Eigen::MatrixXd& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) out.push_back(vector_to_json(m.row(r).transpose()));
  return out;
}

Eigen::VectorXd vector_from_json(const Json& j) {
  if (!j.is_array()) throw FormatError("expected an array of numbers");
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw FormatError("expected an array of numbers");
    v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  }
  return v;
}

Eigen::MatrixXd matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw FormatError("expected a non-empty array of rows");
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Eigen::MatrixXd m(static_cast<Eigen::Index>(j.size()), cols);
  for (std::size_t r = 0; r < j.size(); ++r) {
    const Eigen::VectorXd row = vector_from_json(j[r]);
    if (row.size() != cols) throw FormatError("ragged matrix rows");
    m.row(static_cast<Eigen::Index>(r)) = row.transpose();
  }
  return m;
}

Json report_to_json(const SymmetryReport& report) {
  Json ratios = Json::array();
  for (const double r : report.ratios) ratios.push_back(number_to_json(r));
  Json out = {
      {"classification", to_string(report.classification)},
      {"dimension", report.dimension},
      {"singular_values", vector_to_json(report.singular_values)},
      // columns nu_1..nu_n, each listed as one array
      {"singular_vectors", matrix_to_json(report.singular_vectors.transpose())},
      {"ratios", std::move(ratios)},
      {"plane_normal", report.plane_normal ? vector_to_json(*report.plane_normal) : Json(nullptr)},
      {"axis", report.axis ? vector_to_json(*report.axis) : Json(nullptr)},
      {"thresholds",
       {{"plane", report.thresholds.plane},
        {"axis", report.thresholds.axis},
        {"point_floor", report.thresholds.point_floor}}},
      {"reference_magnitude", number_to_json(report.reference_magnitude)},
      {"warnings", report.warnings},
  };
  if (report.dimension == 2 && report.plane_normal) {
    out["mirror_line"] = vector_to_json(report.singular_vectors.col(0));
  }
  return out;
}

Json analysis_to_json(const Analysis& analysis, const std::string& input) {
  Json per_spec = Json::array();
  for (const auto& s : analysis.per_spec) {
    Json ratios = Json::array();
    for (const double r : s.ratios) ratios.push_back(number_to_json(r));
    per_spec.push_back({{"spec", s.spec.to_string()},
                        {"singular_values", vector_to_json(s.singular_values)},
                        {"ratios", std::move(ratios)}});
  }
  Json battery = Json::array();
  for (const auto& s : analysis.per_spec) battery.push_back(s.spec.to_string());
  Json out = {{"format", kReportFormat},
              {"input", input},
              {"tuple_count", analysis.tuples.count()},
              {"scale", analysis.tuples.scale},
              {"battery", std::move(battery)}};
  out.update(report_to_json(analysis.report));
  out["per_spec"] = std::move(per_spec);
  return out;
}

Json estimate_to_json(const OrthogonalEstimate& est) {
  return {{"format", kEstimateFormat},
          {"mode", to_string(est.mode)},
          {"matrix", matrix_to_json(est.matrix)},
          {"determinant", est.determinant},
          {"residual", number_to_json(est.residual)},
          {"reflection_ambiguous", est.reflection_ambiguous},
          {"warnings", est.warnings}};
}

Json composition_to_json(const ReflectionComposition& comp) {
  Json out = estimate_to_json(comp.estimate);
  out["rotation"] = matrix_to_json(comp.rotation);
  out["reflection"] = matrix_to_json(comp.reflection);
  return out;
}

Json refinement_to_json(const PlaneRefinement& result) {
  Json planes = Json::array();
  for (const auto& p : result.planes) {
    planes.push_back({{"normal", vector_to_json(p.normal)}, {"score", p.score}, {"iterations", p.iterations}});
  }
  return {{"format", kPlanesFormat},
          {"planes", std::move(planes)},
          {"continuous_symmetry", result.continuous_symmetry},
          {"accepted_fraction", result.accepted_fraction},
          {"seeds", result.seeds},
          {"diagnostics", result.diagnostics}};
}

Eigen::VectorXd axis_from_report_json(const Json& j) {
  if (!j.is_object()) throw FormatError("report must be a JSON object");
  if (j.contains("axis") && !j["axis"].is_null()) return vector_from_json(j["axis"]);
  const std::string cls = j.value("classification", std::string("unknown"));
  throw ArgumentError("report classification is '" + cls + "' and carries no axis; pass --axis");
}

std::string tuple_rows_csv(const TupleSet& set) {
  std::ostringstream os;
  os << std::setprecision(17) << "spec,tuple";
  for (int a = 0; a < set.dimension; ++a) os << ",x" << (a + 1);
  os << '\n';
  for (Eigen::Index r = 0; r < set.count(); ++r) {
    const auto& p = set.provenance[static_cast<std::size_t>(r)];
    os << '"' << p.spec.to_string() << "\"," << p.tuple_id;
    for (int a = 0; a < set.dimension; ++a) os << ',' << set.rows(r, a);
    os << '\n';
  }
  return os.str();
}

Json run_config_to_json(const RunConfig& cfg) {
  return {{"format", kRunConfigFormat},
          {"command", cfg.command},
          {"inputs", cfg.inputs},
          {"dimension", cfg.dimension},
          {"specs", cfg.specs},
          {"tuples", cfg.tuples},
          {"thresholds",
           {{"plane", cfg.thresholds.plane},
            {"axis", cfg.thresholds.axis},
            {"point_floor", cfg.thresholds.point_floor}}},
          {"image_threshold", cfg.image_threshold},
          {"refine",
           {{"grid_step_deg", cfg.refine.grid_step_deg},
            {"min_separation_deg", cfg.refine.min_separation_deg},
            {"accept_residual", cfg.refine.accept_residual},
            {"max_iters", cfg.refine.max_iters},
            {"angle_tolerance_deg", cfg.refine.angle_tolerance_deg},
            {"continuous_fraction", cfg.refine.continuous_fraction}}},
          {"b_max", cfg.b_max},
          {"axis", cfg.axis},
          {"report", cfg.report},
          {"mode", cfg.mode},
          {"output", cfg.output},
          {"csv", cfg.csv},
          {"operators_out", cfg.operators_out},
          {"jobs", cfg.jobs},
          {"seed", cfg.seed},
          {"gen",
           {{"shape", cfg.gen.shape},
            {"kind", cfg.gen.kind},
            {"size", cfg.gen.size},
            {"points", cfg.gen.points},
            {"rotation", cfg.gen.rotation},
            {"random_rotation", cfg.gen.random_rotation},
            {"reflect_axis", cfg.gen.reflect_axis},
            {"noise", cfg.gen.noise}}}};
}

RunConfig run_config_from_json(const Json& j) {
  if (!j.is_object() || j.value("format", std::string()) != kRunConfigFormat) {
    throw FormatError(std::string("run config must be a ") + kRunConfigFormat + " document");
  }
  try {
    RunConfig cfg;
    const RunConfig def;
    cfg.command = j.at("command").get<std::string>();
    cfg.inputs = j.value("inputs", def.inputs);
    cfg.dimension = j.value("dimension", def.dimension);
    cfg.specs = j.value("specs", def.specs);
    cfg.tuples = j.value("tuples", def.tuples);
    if (j.contains("thresholds")) {
      const auto& t = j["thresholds"];
      cfg.thresholds.plane = t.value("plane", def.thresholds.plane);
      cfg.thresholds.axis = t.value("axis", def.thresholds.axis);
      cfg.thresholds.point_floor = t.value("point_floor", def.thresholds.point_floor);
    }
    cfg.image_threshold = j.value("image_threshold", def.image_threshold);
    if (j.contains("refine")) {
      const auto& r = j["refine"];
      cfg.refine.grid_step_deg = r.value("grid_step_deg", def.refine.grid_step_deg);
      cfg.refine.min_separation_deg = r.value("min_separation_deg", def.refine.min_separation_deg);
      cfg.refine.accept_residual = r.value("accept_residual", def.refine.accept_residual);
      cfg.refine.max_iters = r.value("max_iters", def.refine.max_iters);
      cfg.refine.angle_tolerance_deg = r.value("angle_tolerance_deg", def.refine.angle_tolerance_deg);
      cfg.refine.continuous_fraction = r.value("continuous_fraction", def.refine.continuous_fraction);
    }
    cfg.b_max = j.value("b_max", def.b_max);
    cfg.axis = j.value("axis", def.axis);
    cfg.report = j.value("report", def.report);
    cfg.mode = j.value("mode", def.mode);
    cfg.output = j.value("output", def.output);
    cfg.csv = j.value("csv", def.csv);
    cfg.operators_out = j.value("operators_out", def.operators_out);
    cfg.jobs = j.value("jobs", def.jobs);
    cfg.seed = j.value("seed", def.seed);
    if (j.contains("gen")) {
      const auto& g = j["gen"];
      cfg.gen.shape = g.value("shape", def.gen.shape);
      cfg.gen.kind = g.value("kind", def.gen.kind);
      cfg.gen.size = g.value("size", def.gen.size);
      cfg.gen.points = g.value("points", def.gen.points);
      cfg.gen.rotation = g.value("rotation", def.gen.rotation);
      cfg.gen.random_rotation = g.value("random_rotation", def.gen.random_rotation);
      cfg.gen.reflect_axis = g.value("reflect_axis", def.gen.reflect_axis);
      cfg.gen.noise = g.value("noise", def.gen.noise);
    }
    return cfg;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed run config: ") + e.what());
  }
}

}  // namespace mtuple::io
