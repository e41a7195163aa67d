#include "mtuple/plane_refinement.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/Geometry>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "mtuple/errors.hpp"
#include "mtuple/symmetry.hpp"

namespace mtuple {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDeg = kPi / 180.0;

Eigen::VectorXd reflect(const Eigen::VectorXd& x, const Eigen::VectorXd& n) { return x - 2.0 * n.dot(x) * n; }

// Orthonormal pair spanning the normals of planes that contain the axis.
struct PlaneFrame {
  Eigen::VectorXd u;
  Eigen::VectorXd w;

  [[nodiscard]] Eigen::VectorXd normal(double theta) const { return std::cos(theta) * u + std::sin(theta) * w; }
};

PlaneFrame plane_frame(int n, const Eigen::VectorXd& axis) {
  if (n == 2) return {Eigen::Vector2d::UnitX(), Eigen::Vector2d::UnitY()};
  if (n != 3) throw ArgumentError("plane refinement supports 2D and 3D clouds");
  if (axis.size() != 3 || !(axis.norm() > 0.0)) throw ArgumentError("refinement axis must be a nonzero 3-vector");
  const Eigen::Vector3d a = axis.normalized();
  Eigen::Index k = 0;
  a.cwiseAbs().minCoeff(&k);
  Eigen::Vector3d u = Eigen::Vector3d::Unit(k) - a[k] * a;
  u.normalize();
  return {u, a.cross(u)};
}

double wrap_pi(double theta) {
  theta = std::fmod(theta, kPi);
  return theta < 0.0 ? theta + kPi : theta;
}

double angle_between_deg(double t1, double t2) {
  const double d = std::abs(wrap_pi(t1 - t2));
  return std::min(d, kPi - d) / kDeg;
}

struct Matches {
  Eigen::MatrixXd targets;  // nearest neighbour of each reflected point
  double residual = 0.0;
};

Matches match(const Eigen::MatrixXd& pts, const Eigen::VectorXd& normal, const NeighborIndex& index) {
  Matches m;
  m.targets.resize(pts.rows(), pts.cols());
  double sum = 0.0;
  for (Eigen::Index i = 0; i < pts.cols(); ++i) {
    const Neighbor nb = index.nearest(reflect(pts.col(i), normal));
    m.targets.col(i) = index.points().col(static_cast<Eigen::Index>(nb.index));
    sum += nb.squared_distance;
  }
  m.residual = std::sqrt(sum / static_cast<double>(pts.cols()));
  return m;
}

// Best reflection about the axis mapping pts onto targets: within the plane
// spanned by (u, w) this is a 2D line reflection, solved in closed form.
double best_angle(const Eigen::MatrixXd& pts, const Eigen::MatrixXd& targets, const PlaneFrame& f, double fallback) {
  double c = 0.0;
  double s = 0.0;
  for (Eigen::Index i = 0; i < pts.cols(); ++i) {
    const double a1 = f.u.dot(pts.col(i));
    const double a2 = f.w.dot(pts.col(i));
    const double b1 = f.u.dot(targets.col(i));
    const double b2 = f.w.dot(targets.col(i));
    c += b1 * a1 - b2 * a2;
    s += b1 * a2 + b2 * a1;
  }
  if (c == 0.0 && s == 0.0) return fallback;
  const double line = 0.5 * std::atan2(s, c);
  return wrap_pi(line + 0.5 * kPi);
}

std::vector<CandidatePlane> select_planes(std::vector<CandidatePlane> candidates, int b_max, const RefineConfig& cfg) {
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const CandidatePlane& a, const CandidatePlane& b) { return a.score < b.score; });
  std::vector<CandidatePlane> kept;
  for (auto& c : candidates) {
    if (c.score > cfg.accept_residual) break;
    const bool distinct = std::all_of(kept.begin(), kept.end(), [&](const CandidatePlane& k) {
      return plane_angle_deg(k.normal, c.normal) >= cfg.min_separation_deg;
    });
    if (!distinct) continue;
    kept.push_back(std::move(c));
    if (static_cast<int>(kept.size()) == b_max) break;
  }
  return kept;
}

ScaledCloud prepare(const PointCloud& cloud) {
  if (cloud.empty()) throw ArgumentError("plane refinement on an empty cloud");
  return normalize_scale(centered(cloud));
}

}  // namespace

void RefineConfig::validate() const {
  if (!(grid_step_deg > 0.0) || grid_step_deg > 90.0) throw ArgumentError("grid step must lie in (0, 90] degrees");
  if (!(min_separation_deg >= 0.0)) throw ArgumentError("minimum plane separation must be non-negative");
  if (!(accept_residual > 0.0)) throw ArgumentError("acceptance residual must be positive");
  if (max_iters < 1) throw ArgumentError("max_iters must be at least 1");
  if (!(angle_tolerance_deg > 0.0)) throw ArgumentError("angle tolerance must be positive");
  if (!(continuous_fraction > 0.0 && continuous_fraction <= 1.0)) {
    throw ArgumentError("continuous fraction must lie in (0, 1]");
  }
}

NeighborIndex build_neighbor_index(const PointCloud& cloud) {
  if (cloud.empty()) throw ArgumentError("neighbour index over an empty cloud");
  return NeighborIndex(cloud.points());
}

double plane_angle_deg(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const Eigen::VectorXd ua = a.normalized();
  Eigen::VectorXd ub = b.normalized();
  if (ua.dot(ub) < 0.0) ub = -ub;
  // atan2 of both components stays accurate near zero, unlike acos
  const double c = ua.dot(ub);
  const double s = (ub - c * ua).norm();
  return std::atan2(s, c) / kDeg;
}

double reflection_residual(const PointCloud& cloud, const Eigen::VectorXd& normal, const NeighborIndex& index,
                           const Eigen::MatrixXd* normals, const std::optional<Eigen::VectorXd>& axis) {
  if (cloud.empty()) throw ArgumentError("reflection residual of an empty cloud");
  const int n = cloud.dimension();
  if (normal.size() != n || index.dimension() != n) throw ArgumentError("plane normal dimension mismatch");
  if (std::abs(normal.norm() - 1.0) > 1e-9) throw ArgumentError("plane normal must be a unit vector");
  if (axis) {
    if (axis->size() != n) throw ArgumentError("axis dimension mismatch");
    if (std::abs(normal.dot(axis->normalized())) > 1e-9) {
      throw ArgumentError("plane normal is not perpendicular to the axis; the plane must contain it");
    }
  }
  if (normals && (normals->rows() != n || normals->cols() != static_cast<Eigen::Index>(index.size()))) {
    throw ArgumentError("normals must be n x M over the indexed points");
  }
  const auto& pts = cloud.points();
  double sum = 0.0;
  for (Eigen::Index i = 0; i < pts.cols(); ++i) {
    const Eigen::VectorXd r = reflect(pts.col(i), normal);
    const Neighbor nb = index.nearest(r);
    if (normals) {
      const auto j = static_cast<Eigen::Index>(nb.index);
      const double d = (r - index.points().col(j)).dot(normals->col(j));
      sum += d * d;
    } else {
      sum += nb.squared_distance;
    }
  }
  return std::sqrt(sum / static_cast<double>(pts.cols()));
}

PlaneRefinement refine_planes(const PointCloud& cloud, const Eigen::VectorXd& axis, int b_max, const RefineConfig& cfg) {
  cfg.validate();
  if (b_max < 1) throw ArgumentError("b_max must be at least 1");
  const PlaneFrame frame = plane_frame(cloud.dimension(), axis);
  const ScaledCloud prepared = prepare(cloud);
  const Eigen::MatrixXd& pts = prepared.cloud.points();
  const NeighborIndex index(pts);

  PlaneRefinement out;
  const int steps = std::max(1, static_cast<int>(std::lround(180.0 / cfg.grid_step_deg)));
  const double step = kPi / steps;
  out.grid.reserve(static_cast<std::size_t>(steps));
  int accepted = 0;
  for (int k = 0; k < steps; ++k) {
    const double r = match(pts, frame.normal(k * step), index).residual;
    out.grid.push_back({k * step / kDeg, r});
    if (r <= cfg.accept_residual) ++accepted;
  }
  out.accepted_fraction = static_cast<double>(accepted) / steps;

  if (out.accepted_fraction >= cfg.continuous_fraction) {
    // every orientation about the axis is a mirror: report grid planes only
    out.continuous_symmetry = true;
    out.diagnostics.push_back("residual is flat over the grid: continuous rotational symmetry about the axis");
    std::vector<CandidatePlane> grid_planes;
    for (int k = 0; k < steps; ++k) {
      grid_planes.push_back({fix_sign(frame.normal(k * step)), out.grid[static_cast<std::size_t>(k)].residual, 0});
    }
    out.planes = select_planes(std::move(grid_planes), b_max, cfg);
    return out;
  }

  std::vector<CandidatePlane> candidates;
  for (int k = 0; k < steps; ++k) {
    const double prev = out.grid[static_cast<std::size_t>((k + steps - 1) % steps)].residual;
    const double next = out.grid[static_cast<std::size_t>((k + 1) % steps)].residual;
    const double here = out.grid[static_cast<std::size_t>(k)].residual;
    if (!(here < prev && here <= next) && steps > 2) continue;
    ++out.seeds;
    // parabola through the neighbouring mean squared residuals
    double theta = k * step;
    const double fm = prev * prev;
    const double f0 = here * here;
    const double fp = next * next;
    const double curvature = fm - 2.0 * f0 + fp;
    if (curvature > 0.0) theta += std::clamp(0.5 * (fm - fp) / curvature, -1.0, 1.0) * step;
    theta = wrap_pi(theta);
    int iters = 0;
    for (int it = 1; it <= cfg.max_iters; ++it) {
      const Matches m = match(pts, frame.normal(theta), index);
      const double next_theta = best_angle(pts, m.targets, frame, theta);
      const double moved = angle_between_deg(theta, next_theta);
      theta = next_theta;
      iters = it;
      if (moved < cfg.angle_tolerance_deg) break;
    }
    const double score = match(pts, frame.normal(theta), index).residual;
    candidates.push_back({fix_sign(frame.normal(theta)), score, iters});
  }
  out.planes = select_planes(std::move(candidates), b_max, cfg);
  if (out.planes.empty()) out.diagnostics.push_back("no plane passed the acceptance residual");
  return out;
}

PlaneRefinement refine_planes_random(const PointCloud& cloud, int b_max, int seeds, std::uint64_t seed,
                                     const RefineConfig& cfg) {
  cfg.validate();
  if (b_max < 1 || seeds < 1) throw ArgumentError("b_max and seed count must be at least 1");
  const ScaledCloud prepared = prepare(cloud);
  const Eigen::MatrixXd& pts = prepared.cloud.points();
  const NeighborIndex index(pts);
  const auto n = pts.rows();

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  PlaneRefinement out;
  out.seeds = seeds;
  std::vector<CandidatePlane> candidates;
  for (int s = 0; s < seeds; ++s) {
    Eigen::VectorXd normal(n);
    for (Eigen::Index j = 0; j < n; ++j) normal[j] = gauss(rng);
    normal.normalize();
    int iters = 0;
    for (int it = 1; it <= cfg.max_iters; ++it) {
      const Matches m = match(pts, normal, index);
      const Eigen::MatrixXd d = pts - m.targets;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(d * d.transpose());
      Eigen::VectorXd next = eig.eigenvectors().col(n - 1);
      if (next.dot(normal) < 0.0) next = -next;
      const double moved = plane_angle_deg(normal, next);
      normal = next;
      iters = it;
      if (moved < cfg.angle_tolerance_deg) break;
    }
    const double score = match(pts, normal, index).residual;
    candidates.push_back({fix_sign(normal), score, iters});
  }
  out.planes = select_planes(std::move(candidates), b_max, cfg);
  return out;
}

}  // namespace mtuple
