#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mtuple/kd_tree.hpp"
#include "mtuple/point_cloud.hpp"

namespace mtuple {

/// Mirror plane through the centroid.
struct CandidatePlane {
  Eigen::VectorXd normal;
  double score = 0.0;  // reflection residual, in RMS radii
  int iterations = 0;  // descent updates spent on this plane
};

/// Exact nearest-neighbour structure over a cloud's points.
using NeighborIndex = KdTree;

NeighborIndex build_neighbor_index(const PointCloud& cloud);

struct RefineConfig {
  double grid_step_deg = 2.0;
  double min_separation_deg = 5.0;
  /// Acceptance bound on the residual of the scale-normalized cloud.
  double accept_residual = 0.02;
  int max_iters = 20;
  /// Descent stops once an update moves the plane by less than this.
  double angle_tolerance_deg = 1e-6;
  /// Fraction of grid samples passing acceptance that flags continuous symmetry.
  double continuous_fraction = 0.9;

  void validate() const;
};

/// RMS distance between each reflected point and its nearest neighbour in
/// the cloud (`index` must be built over the same points). With `normals`
/// (n x M, unit), the distance is measured along the neighbour's normal.
///
/// If `axis` is given the plane must contain it (normal . axis ~ 0).
double reflection_residual(const PointCloud& cloud, const Eigen::VectorXd& normal, const NeighborIndex& index,
                           const Eigen::MatrixXd* normals = nullptr,
                           const std::optional<Eigen::VectorXd>& axis = std::nullopt);

struct GridSample {
  double angle_deg = 0.0;
  double residual = 0.0;
};

struct PlaneRefinement {
  std::vector<CandidatePlane> planes;  // sorted by score, at most b_max
  bool continuous_symmetry = false;
  double accepted_fraction = 0.0;  // of grid samples
  std::vector<GridSample> grid;
  int seeds = 0;
  std::vector<std::string> diagnostics;
};

/// Finds up to `b_max` mirror planes containing `axis` (3D) or mirror lines
/// through the centroid (2D, axis ignored). The cloud is centred and scaled
/// to unit RMS radius first.
///
/// A grid over the normal angle in [0, pi) picks seeds at its local minima;
/// each seed is refined by alternating nearest-neighbour matching with the
/// closed-form best reflection about the axis.
PlaneRefinement refine_planes(const PointCloud& cloud, const Eigen::VectorXd& axis, int b_max,
                              const RefineConfig& cfg = {});

/// Comparison run: `seeds` random normals in full R^n, not constrained to
/// the axis, each refined for at most cfg.max_iters steps (nearest-neighbour
/// matching, then the dominant direction of the displacement field).
PlaneRefinement refine_planes_random(const PointCloud& cloud, int b_max, int seeds, std::uint64_t seed,
                                     const RefineConfig& cfg = {});

/// Angle between two plane normals in degrees, ignoring orientation.
double plane_angle_deg(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

}  // namespace mtuple
