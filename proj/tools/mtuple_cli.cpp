// mtuple: derive moment n-tuples, analyze symmetry, estimate poses, refine
// mirror planes, generate synthetic fixtures.

#include <Eigen/Core>
#include <Eigen/LU>
#include <atomic>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <thread>

#include "CLI11.hpp"
#include "mtuple/errors.hpp"
#include "mtuple/io.hpp"
#include "mtuple/pipeline.hpp"
#include "mtuple/plane_refinement.hpp"
#include "mtuple/report_json.hpp"
#include "mtuple/synthetic.hpp"
#include "mtuple/tuple_io.hpp"

namespace {

using namespace mtuple;
using io::Json;
using io::RunConfig;

constexpr int kExitArgument = 2;
constexpr int kExitDegenerate = 3;
constexpr int kExitAmbiguity = 4;

void emit(const std::string& path, const Json& j) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << '\n';
  } else {
    io::write_json(path, j);
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ArgumentError("cannot open '" + path + "' for writing");
  out << text;
}

std::vector<BasisSpec> parse_specs(int n, const std::vector<std::string>& specs) {
  std::vector<BasisSpec> out;
  for (const auto& s : specs) out.push_back(BasisSpec::parse(n, s));
  return out;
}

// Battery for inputs of dimension n: tuple file, explicit specs, or the default.
class BatterySource {
 public:
  explicit BatterySource(const RunConfig& cfg) : cfg_(cfg) {}

  const TupleBattery& get(int n) {
    auto it = cache_.find(n);
    if (it != cache_.end()) return it->second;
    TupleBattery battery;
    if (!cfg_.tuples.empty()) {
      auto loaded = io::load_tuples(cfg_.tuples, n);
      for (const auto& w : loaded.warnings) std::cerr << "warning: " << w << '\n';
      battery = std::move(loaded.battery);
    } else if (!cfg_.specs.empty()) {
      battery = derive_battery(parse_specs(n, cfg_.specs));
    } else {
      battery = default_battery(n);
    }
    validate_battery(battery, n);
    return cache_.emplace(n, std::move(battery)).first->second;
  }

 private:
  const RunConfig& cfg_;
  std::map<int, TupleBattery> cache_;
};

std::optional<int> dim_hint(const RunConfig& cfg) {
  return cfg.dimension > 0 ? std::optional<int>(cfg.dimension) : std::nullopt;
}

PointCloud load_input(const RunConfig& cfg, const std::string& path) {
  return io::read_cloud(path, dim_hint(cfg), cfg.image_threshold);
}

void cmd_derive(const RunConfig& cfg) {
  if (cfg.dimension < 2) throw ArgumentError("derive needs --dim >= 2");
  const auto specs = cfg.specs.empty() ? default_battery_specs(cfg.dimension) : parse_specs(cfg.dimension, cfg.specs);
  TupleBattery battery;
  Json operators = Json::array();
  for (const auto& spec : specs) {
    battery.push_back(derive_tuples(spec));
    const auto& f = battery.back();
    std::cout << "spec " << spec.to_string() << ": basis " << f.basis()->size() << ", nullspace dimension "
              << f.size() << '\n';
    if (!cfg.operators_out.empty()) {
      for (const auto& g : all_generators(cfg.dimension)) {
        operators.push_back(io::operator_to_json(build_monomial_operator(f.basis(), g)));
      }
    }
  }
  if (cfg.output.empty() || cfg.output == "-") {
    std::cout << (battery.size() == 1 ? io::family_to_json(battery.front()) : io::battery_to_json(battery)).dump(2)
              << '\n';
  } else if (battery.size() == 1) {
    io::save_tuples(cfg.output, battery.front());
  } else {
    io::save_tuples(cfg.output, battery);
  }
  if (!cfg.operators_out.empty()) {
    io::write_json(cfg.operators_out, {{"format", "mtuple.operators/1"}, {"operators", std::move(operators)}});
  }
}

void cmd_analyze(const RunConfig& cfg) {
  if (cfg.inputs.empty()) throw ArgumentError("analyze needs at least one input");
  if (!cfg.csv.empty() && cfg.inputs.size() > 1) throw ArgumentError("--csv takes a single input");
  cfg.thresholds.validate();
  std::vector<PointCloud> clouds;
  BatterySource source(cfg);
  for (const auto& path : cfg.inputs) {
    clouds.push_back(load_input(cfg, path));
    source.get(clouds.back().dimension());
  }

  std::vector<Json> results(clouds.size());
  std::vector<std::exception_ptr> errors(clouds.size());
  std::vector<TupleSet> tuple_sets(clouds.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < clouds.size(); i = next++) {
      try {
        const Analysis a = analyze_cloud(clouds[i], source.get(clouds[i].dimension()), cfg.thresholds);
        results[i] = io::analysis_to_json(a, cfg.inputs[i]);
        tuple_sets[i] = a.tuples;
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int jobs = std::max(1, std::min<int>(cfg.jobs, static_cast<int>(clouds.size())));
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  if (!cfg.csv.empty()) write_text(cfg.csv, io::tuple_rows_csv(tuple_sets.front()));
  if (results.size() == 1) {
    emit(cfg.output, results.front());
  } else {
    emit(cfg.output, Json(results));
  }
}

void cmd_estimate(const RunConfig& cfg) {
  if (cfg.inputs.size() != 2) throw ArgumentError("estimate needs exactly two inputs (reference, moved)");
  const PointCloud a = load_input(cfg, cfg.inputs[0]);
  const PointCloud b = load_input(cfg, cfg.inputs[1]);
  if (a.dimension() != b.dimension()) throw ArgumentError("inputs differ in dimension");
  BatterySource source(cfg);
  const auto& battery = source.get(a.dimension());
  const EstimationMode mode = estimation_mode_from_string(cfg.mode);
  Json out;
  if (mode == EstimationMode::allow_reflection) {
    out = io::composition_to_json(estimate_composition(a, b, battery));
  } else {
    out = io::estimate_to_json(estimate_transform(a, b, battery, mode));
  }
  for (const auto& w : out["warnings"]) std::cerr << "warning: " << w.get<std::string>() << '\n';
  emit(cfg.output, out);
}

void cmd_refine(const RunConfig& cfg) {
  if (cfg.inputs.size() != 1) throw ArgumentError("refine needs exactly one input");
  const PointCloud cloud = load_input(cfg, cfg.inputs[0]);
  Eigen::VectorXd axis;
  if (!cfg.axis.empty()) {
    axis = Eigen::Map<const Eigen::VectorXd>(cfg.axis.data(), static_cast<Eigen::Index>(cfg.axis.size()));
  } else if (!cfg.report.empty()) {
    Json report = io::read_json(cfg.report);
    if (report.is_array()) {
      if (report.size() != 1) throw ArgumentError("report holds several analyses; pass a single one");
      report = report[0];
    }
    axis = io::axis_from_report_json(report);
  } else if (cloud.dimension() != 2) {
    throw ArgumentError("refine needs --axis or --report with an axial classification");
  }
  emit(cfg.output, io::refinement_to_json(refine_planes(cloud, axis, cfg.b_max, cfg.refine)));
}

void cmd_gen(const RunConfig& cfg) {
  const auto& g = cfg.gen;
  if (cfg.output.empty()) throw ArgumentError("gen needs --out");
  if (g.shape == "rect") {
    if (!g.rotation.empty() || g.random_rotation || g.reflect_axis >= 0 || g.noise > 0.0) {
      throw ArgumentError("rect images take no pose or noise options");
    }
    io::write_pgm(cfg.output, synthetic::rect_image(synthetic::rect_kind_from_string(g.kind), g.size));
    return;
  }
  PointCloud cloud;
  if (g.shape == "mug") {
    cloud = g.points ? synthetic::mug(cfg.seed, g.points) : synthetic::mug(cfg.seed);
  } else if (g.shape == "bottle") {
    cloud = synthetic::bottle();
  } else if (g.shape == "table") {
    cloud = g.points ? synthetic::table(cfg.seed, g.points) : synthetic::table(cfg.seed);
  } else if (g.shape == "camera") {
    cloud = g.points ? synthetic::camera(cfg.seed, g.points) : synthetic::camera(cfg.seed);
  } else {
    throw ArgumentError("unknown shape '" + g.shape + "' (rect | mug | bottle | table | camera)");
  }
  const int n = cloud.dimension();
  Eigen::MatrixXd pose = Eigen::MatrixXd::Identity(n, n);
  if (g.reflect_axis >= 0) pose = synthetic::axis_reflection(n, g.reflect_axis);
  if (!g.rotation.empty()) {
    if (static_cast<int>(g.rotation.size()) != n * n) throw ArgumentError("--rotation needs n*n row-major entries");
    const Eigen::MatrixXd r =
        Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(g.rotation.data(), n, n);
    const double drift = (r.transpose() * r - Eigen::MatrixXd::Identity(n, n)).norm();
    if (drift > 1e-2) throw ArgumentError("--rotation is not orthogonal");
    if (drift > 1e-10 || r.determinant() < 0.0) {
      // rounded matrices (e.g. printed to 4 decimals) are snapped to SO(n)
      std::cerr << "warning: --rotation projected to the nearest rotation (|R^T R - I| = " << drift << ")\n";
      pose = nearest_rotation(r) * pose;
    } else {
      pose = r * pose;
    }
  } else if (g.random_rotation) {
    std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
    pose = synthetic::random_rotation(n, rng) * pose;
  }
  cloud = cloud.transformed(pose);
  if (g.noise > 0.0) cloud = synthetic::add_noise(cloud, g.noise, cfg.seed + 1);
  const std::string& out = cfg.output;
  if (out.size() >= 4 && out.compare(out.size() - 4, 4, ".ply") == 0) {
    io::write_ply(out, cloud);
  } else {
    io::write_xyz(out, cloud);
  }
}

void run(const RunConfig& cfg) {
  if (cfg.jobs < 1) throw ArgumentError("--jobs must be at least 1");
  if (cfg.command == "derive") return cmd_derive(cfg);
  if (cfg.command == "analyze") return cmd_analyze(cfg);
  if (cfg.command == "estimate") return cmd_estimate(cfg);
  if (cfg.command == "refine") return cmd_refine(cfg);
  if (cfg.command == "gen") return cmd_gen(cfg);
  throw ArgumentError("unknown command '" + cfg.command + "'");
}

void add_battery_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--spec", cfg.specs, "basis spec p:k[,p:k...], repeatable (default: built-in battery)");
  sub->add_option("--tuples", cfg.tuples, "tuple definition file from `derive`")->excludes("--spec");
  sub->add_option("--dim", cfg.dimension, "coordinates per XYZ row (default: all columns but a weight)");
  sub->add_option("--threshold", cfg.image_threshold, "binarization threshold for PGM input")
      ->check(CLI::Range(0.0, 1.0));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Moment n-tuples: symmetry detection and orthogonal pose estimation"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string config_out;
  std::string rerun_path;
  app.add_option("--config-out", config_out, "also write the resolved run configuration here");

  auto* derive = app.add_subcommand("derive", "derive n-tuples for basis specs");
  derive->add_option("--dim", cfg.dimension, "dimension n")->required();
  derive->add_option("--spec", cfg.specs, "basis spec p:k[,p:k...], repeatable (default: built-in battery)");
  derive->add_option("-o,--out", cfg.output, "tuple file (default: stdout)");
  derive->add_option("--operators-out", cfg.operators_out, "write the generator operators of each basis");

  auto* analyze = app.add_subcommand("analyze", "classify the symmetry of clouds or images");
  analyze->add_option("inputs", cfg.inputs, "XYZ, PLY or PGM files")->required();
  add_battery_options(analyze, cfg);
  analyze->add_option("--tau-plane", cfg.thresholds.plane, "planar ratio threshold")->envname("MTUPLE_TAU_PLANE");
  analyze->add_option("--tau-axis", cfg.thresholds.axis, "axial ratio threshold")->envname("MTUPLE_TAU_AXIS");
  analyze->add_option("--point-floor", cfg.thresholds.point_floor, "relative point-symmetry floor")
      ->envname("MTUPLE_POINT_FLOOR");
  analyze->add_option("-o,--out", cfg.output, "report JSON (default: stdout)");
  analyze->add_option("--csv", cfg.csv, "tuple rows as CSV");
  analyze->add_option("-j,--jobs", cfg.jobs, "parallel workers over inputs");

  auto* estimate = app.add_subcommand("estimate", "orthogonal transform from a reference pose to a moved pose");
  estimate->add_option("inputs", cfg.inputs, "reference and moved cloud")->required()->expected(2);
  add_battery_options(estimate, cfg);
  estimate->add_option("--mode", cfg.mode, "rotation_only | allow_reflection");
  estimate->add_option("-o,--out", cfg.output, "estimate JSON (default: stdout)");

  auto* refine = app.add_subcommand("refine", "find mirror planes containing a symmetry axis");
  refine->add_option("input", cfg.inputs, "cloud")->required()->expected(1);
  refine->add_option("--dim", cfg.dimension, "coordinates per XYZ row");
  auto* axis_opt = refine->add_option("--axis", cfg.axis, "axis x y z")->expected(3);
  refine->add_option("--report", cfg.report, "analysis report carrying an axis")->excludes(axis_opt);
  refine->add_option("--b-max", cfg.b_max, "maximum number of planes");
  refine->add_option("--grid-step", cfg.refine.grid_step_deg, "grid step in degrees");
  refine->add_option("--min-separation", cfg.refine.min_separation_deg, "merge planes closer than this (degrees)");
  refine->add_option("--accept", cfg.refine.accept_residual, "acceptance residual (RMS radii)");
  refine->add_option("--max-iters", cfg.refine.max_iters, "descent iterations per seed");
  refine->add_option("-o,--out", cfg.output, "plane list JSON (default: stdout)");

  auto* gen = app.add_subcommand("gen", "write a synthetic test shape");
  gen->add_option("shape", cfg.gen.shape, "rect | mug | bottle | table | camera")->required();
  gen->add_option("--kind", cfg.gen.kind, "rect: plain | mirror-x | mirror-y | asym");
  gen->add_option("--size", cfg.gen.size, "rect: image size in pixels (multiple of 16)");
  gen->add_option("--points", cfg.gen.points, "sample count (shape default when 0)");
  gen->add_option("--seed", cfg.seed, "random seed");
  gen->add_option("--rotation", cfg.gen.rotation, "row-major rotation applied to the shape")->expected(4, 16);
  gen->add_flag("--random-rotation", cfg.gen.random_rotation, "apply a seeded random rotation");
  gen->add_option("--reflect-axis", cfg.gen.reflect_axis, "negate this coordinate (0-based) before rotating");
  gen->add_option("--noise", cfg.gen.noise, "Gaussian coordinate noise sigma");
  gen->add_option("-o,--out", cfg.output, "output file (.pgm for rect, .ply or XYZ otherwise)")->required();

  auto* rerun = app.add_subcommand("rerun", "repeat a run from an echoed configuration");
  rerun->add_option("config", rerun_path, "run configuration JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitArgument;
  }

  try {
    if (rerun->parsed()) {
      cfg = io::run_config_from_json(io::read_json(rerun_path));
    } else {
      cfg.command = app.get_subcommands().front()->get_name();
    }
    const Json echo = io::run_config_to_json(cfg);
    std::cerr << "config: " << echo.dump() << '\n';
    if (!config_out.empty()) io::write_json(config_out, echo);
    run(cfg);
  } catch (const DegenerateInputError& e) {
    std::cerr << "error: degenerate input: " << e.what() << '\n';
    return kExitDegenerate;
  } catch (const AmbiguityError& e) {
    std::cerr << "error: ambiguous: " << e.what() << '\n';
    return kExitAmbiguity;
  } catch (const std::exception& e) {
    // argument, format, state and I/O errors
    std::cerr << "error: " << e.what() << '\n';
    return kExitArgument;
  }
  return 0;
}
