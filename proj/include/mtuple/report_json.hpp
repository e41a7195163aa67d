#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "mtuple/pipeline.hpp"
#include "mtuple/plane_refinement.hpp"

namespace mtuple::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportFormat = "mtuple.report/1";
inline constexpr const char* kEstimateFormat = "mtuple.estimate/1";
inline constexpr const char* kPlanesFormat = "mtuple.planes/1";
inline constexpr const char* kRunConfigFormat = "mtuple.run/1";

/// Non-finite values become null.
Json number_to_json(double x);
Json vector_to_json(const Eigen::VectorXd& v);
/// Array of rows.
Json matrix_to_json(const Eigen::MatrixXd& m);
Eigen::MatrixXd matrix_from_json(const Json& j);
Eigen::VectorXd vector_from_json(const Json& j);

Json report_to_json(const SymmetryReport& report);
/// Report plus per-spec ratios, battery description and normalization scale.
Json analysis_to_json(const Analysis& analysis, const std::string& input);
Json estimate_to_json(const OrthogonalEstimate& est);
Json composition_to_json(const ReflectionComposition& comp);
Json refinement_to_json(const PlaneRefinement& result);

/// Axis of an analysis/report document; ArgumentError when the report is
/// not axial (an axis cannot be taken from it).
Eigen::VectorXd axis_from_report_json(const Json& j);

/// One line per tuple row: spec, tuple id, components.
std::string tuple_rows_csv(const TupleSet& set);

/// Parameters of the synthetic shape generator.
struct GenConfig {
  std::string shape;              // rect | mug | bottle | table | camera
  std::string kind = "mirror-x";  // rect only
  int size = 64;                  // rect only
  std::size_t points = 0;         // 0: shape default
  std::vector<double> rotation;   // row-major n x n, applied after reflection
  bool random_rotation = false;
  int reflect_axis = -1;          // 0-based, -1 for none
  double noise = 0.0;
};

/// Everything a command needs, echoed so that a run can be repeated.
struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;
  int dimension = 0;               // 0: from the input
  std::vector<std::string> specs;  // empty: default battery
  std::string tuples;              // tuple file replacing specs
  Thresholds thresholds;
  double image_threshold = kDefaultImageThreshold;
  RefineConfig refine;
  int b_max = 8;
  std::vector<double> axis;        // empty: from report
  std::string report;
  std::string mode = "rotation_only";
  std::string output;
  std::string csv;
  std::string operators_out;
  int jobs = 1;
  std::uint64_t seed = 0;
  GenConfig gen;
};

Json run_config_to_json(const RunConfig& cfg);
RunConfig run_config_from_json(const Json& j);

}  // namespace mtuple::io
