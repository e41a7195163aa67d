#include "mtuple/synthetic.hpp"

#include <Eigen/LU>
#include <Eigen/QR>
#include <array>
#include <cmath>
#include <numbers>

#include "mtuple/errors.hpp"

namespace mtuple::synthetic {

namespace {

constexpr double kPi = std::numbers::pi;

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

// Parts are sampled in proportion to their area so density is uniform.
struct Part {
  double area;
  Eigen::Vector3d (*sample)(Rng&, const std::array<double, 8>&);
  std::array<double, 8> p;
};

// p: x0 x1 y0 y1 z0 z1
Eigen::Vector3d box_surface(Rng& rng, const std::array<double, 8>& p) {
  const double dx = p[1] - p[0], dy = p[3] - p[2], dz = p[5] - p[4];
  const double axy = dx * dy, axz = dx * dz, ayz = dy * dz;
  double t = uniform(rng, 0.0, 2.0 * (axy + axz + ayz));
  Eigen::Vector3d v(uniform(rng, p[0], p[1]), uniform(rng, p[2], p[3]), uniform(rng, p[4], p[5]));
  const bool high = std::uniform_int_distribution<int>(0, 1)(rng) == 1;
  if ((t -= 2.0 * axy) < 0.0) {
    v.z() = high ? p[5] : p[4];
  } else if ((t -= 2.0 * axz) < 0.0) {
    v.y() = high ? p[3] : p[2];
  } else {
    v.x() = high ? p[1] : p[0];
  }
  return v;
}

// Lateral cylinder surface. p: cx cy cz radius half_length axis(0..2)
Eigen::Vector3d cylinder_surface(Rng& rng, const std::array<double, 8>& p) {
  const double phi = uniform(rng, 0.0, 2.0 * kPi);
  const double h = uniform(rng, -p[4], p[4]);
  const int ax = static_cast<int>(p[5]);
  Eigen::Vector3d local;
  local[ax] = h;
  local[(ax + 1) % 3] = p[3] * std::cos(phi);
  local[(ax + 2) % 3] = p[3] * std::sin(phi);
  return Eigen::Vector3d(p[0], p[1], p[2]) + local;
}

// Flat disc normal to z. p: cx cy cz radius
Eigen::Vector3d disc(Rng& rng, const std::array<double, 8>& p) {
  const double r = p[3] * std::sqrt(uniform(rng, 0.0, 1.0));
  const double phi = uniform(rng, 0.0, 2.0 * kPi);
  return {p[0] + r * std::cos(phi), p[1] + r * std::sin(phi), p[2]};
}

// Half torus in the xz-plane. p: cx cz ring_radius tube_radius
Eigen::Vector3d handle(Rng& rng, const std::array<double, 8>& p) {
  const double t = uniform(rng, -0.5 * kPi, 0.5 * kPi);
  const double s = uniform(rng, 0.0, 2.0 * kPi);
  const double rr = p[2] + p[3] * std::cos(s);
  return {p[0] + rr * std::cos(t), p[3] * std::sin(s), p[1] + rr * std::sin(t)};
}

Eigen::MatrixXd sample_parts(Rng& rng, const std::vector<Part>& parts, std::size_t count) {
  double total = 0.0;
  for (const auto& part : parts) total += part.area;
  Eigen::MatrixXd pts(3, static_cast<Eigen::Index>(count));
  for (std::size_t i = 0; i < count; ++i) {
    double t = uniform(rng, 0.0, total);
    std::size_t k = 0;
    while (k + 1 < parts.size() && (t -= parts[k].area) >= 0.0) ++k;
    pts.col(static_cast<Eigen::Index>(i)) = parts[k].sample(rng, parts[k].p);
  }
  return pts;
}

}  // namespace

RectKind rect_kind_from_string(const std::string& s) {
  if (s == "plain") return RectKind::plain;
  if (s == "mirror-x" || s == "mirror_x") return RectKind::mirror_x;
  if (s == "mirror-y" || s == "mirror_y") return RectKind::mirror_y;
  if (s == "asym") return RectKind::asym;
  throw ArgumentError("unknown rectangle kind '" + s + "' (plain | mirror-x | mirror-y | asym)");
}

std::string to_string(RectKind k) {
  switch (k) {
    case RectKind::plain: return "plain";
    case RectKind::mirror_x: return "mirror-x";
    case RectKind::mirror_y: return "mirror-y";
    case RectKind::asym: return "asym";
  }
  return "?";
}

DensityImage rect_image(RectKind kind, int size) {
  if (size < 16 || size % 16 != 0) throw ArgumentError("image size must be a positive multiple of 16");
  const int u = size / 16;  // layout grid unit
  struct Block { int r0, r1, c0, c1; };  // half-open, in grid units
  std::vector<Block> blocks;
  switch (kind) {
    case RectKind::plain: blocks = {{5, 11, 3, 13}}; break;
    case RectKind::mirror_x: blocks = {{3, 5, 3, 13}, {5, 13, 7, 9}}; break;
    case RectKind::mirror_y: blocks = {{3, 13, 3, 5}, {7, 9, 5, 13}}; break;
    case RectKind::asym: blocks = {{2, 14, 2, 5}, {11, 14, 5, 12}, {2, 4, 5, 8}}; break;
  }
  DensityImage img{size, size, std::vector<double>(static_cast<std::size_t>(size) * static_cast<std::size_t>(size), 0.0)};
  for (const auto& b : blocks) {
    for (int r = b.r0 * u; r < b.r1 * u; ++r) {
      for (int c = b.c0 * u; c < b.c1 * u; ++c) {
        img.pixels[static_cast<std::size_t>(r) * static_cast<std::size_t>(size) + static_cast<std::size_t>(c)] = 1.0;
      }
    }
  }
  return img;
}

PointCloud mug(std::uint64_t seed, std::size_t base_points) {
  if (base_points == 0) throw ArgumentError("mug needs at least one point");
  Rng rng(seed);
  const std::vector<Part> parts = {
      {2.0 * kPi * 1.0 * 2.0, cylinder_surface, {0, 0, 0, 1.0, 1.0, 2}},
      {kPi, disc, {0, 0, -1.0, 1.0}},
      {2.0 * kPi * 0.5 * kPi * 0.08 * 2.0, handle, {1.0, 0.1, 0.5, 0.08}},
  };
  const Eigen::MatrixXd half = sample_parts(rng, parts, base_points);
  Eigen::MatrixXd pts(3, 2 * half.cols());
  pts << half, axis_reflection(3, 1) * half;
  return PointCloud(std::move(pts));
}

PointCloud bottle(int profile_steps, int azimuth_steps) {
  if (profile_steps < 4 || azimuth_steps < 8) throw ArgumentError("bottle needs at least 4 x 8 samples");
  // radius as a function of height: body, shoulder, neck; bottom rings
  auto radius = [](double z) {
    if (z < 0.3) return 0.5;
    if (z < 0.6) return 0.5 - (z - 0.3) / 0.3 * 0.32;
    return 0.18;
  };
  const int bottom = profile_steps / 5;
  const int wall = profile_steps - bottom;
  Eigen::MatrixXd pts(3, static_cast<Eigen::Index>(profile_steps) * azimuth_steps);
  Eigen::Index col = 0;
  for (int i = 0; i < profile_steps; ++i) {
    double r;
    double z;
    if (i < bottom) {
      r = 0.5 * (i + 0.5) / bottom;
      z = -1.0;
    } else {
      z = -1.0 + 2.0 * (i - bottom + 0.5) / wall;
      r = radius(z);
    }
    for (int k = 0; k < azimuth_steps; ++k) {
      const double phi = 2.0 * kPi * k / azimuth_steps;
      pts.col(col++) = Eigen::Vector3d(r * std::cos(phi), r * std::sin(phi), z);
    }
  }
  return PointCloud(std::move(pts));
}

std::vector<Eigen::Vector3d> table_mirror_normals() {
  const double h = std::sqrt(0.5);
  return {{1, 0, 0}, {h, h, 0}, {0, 1, 0}, {h, -h, 0}};
}

PointCloud table(std::uint64_t seed, std::size_t base_points) {
  if (base_points == 0) throw ArgumentError("table needs at least one point");
  Rng rng(seed);
  const double leg_r = 0.08;
  const double leg_half = 0.75;
  std::vector<Part> parts = {{2.0 * 2.0 * 2.0 + 4.0 * 2.0 * 0.1, box_surface, {-1, 1, -1, 1, 0.5, 0.6}}};
  for (const double x : {-0.75, 0.75}) {
    for (const double y : {-0.75, 0.75}) {
      parts.push_back({2.0 * kPi * leg_r * 2.0 * leg_half, cylinder_surface, {x, y, 0.5 - leg_half, leg_r, leg_half, 2}});
    }
  }
  const Eigen::MatrixXd base = sample_parts(rng, parts, base_points);
  // the symmetry group of the square: 4 rotations, each with and without x -> -x
  Eigen::MatrixXd pts(3, 8 * base.cols());
  Eigen::Index k = 0;
  for (int quarter = 0; quarter < 4; ++quarter) {
    Eigen::Matrix3d rot = Eigen::Matrix3d::Identity();
    const int c = quarter == 0 ? 1 : quarter == 2 ? -1 : 0;
    const int s = quarter == 1 ? 1 : quarter == 3 ? -1 : 0;
    rot(0, 0) = c; rot(0, 1) = -s; rot(1, 0) = s; rot(1, 1) = c;
    for (const bool mirror : {false, true}) {
      Eigen::Matrix3d m = rot;
      if (mirror) m = rot * axis_reflection(3, 0);
      pts.middleCols(k * base.cols(), base.cols()) = m * base;
      ++k;
    }
  }
  return PointCloud(std::move(pts));
}

PointCloud camera(std::uint64_t seed, std::size_t points) {
  if (points == 0) throw ArgumentError("camera needs at least one point");
  Rng rng(seed);
  const std::vector<Part> parts = {
      {2.0 * (2.0 * 1.2 + 2.0 * 0.8 + 1.2 * 0.8), box_surface, {-1.0, 1.0, -0.6, 0.6, -0.4, 0.4}},  // body
      {2.0 * kPi * 0.35 * 0.7, cylinder_surface, {0.25, -0.95, -0.05, 0.35, 0.35, 1}},           // lens along y
      {2.0 * (0.5 * 0.4 + 0.5 * 0.3 + 0.4 * 0.3), box_surface, {-0.6, -0.1, -0.3, 0.1, 0.4, 0.7}},  // viewfinder
      {2.0 * (0.25 * 0.5 + 0.25 * 0.7 + 0.5 * 0.7), box_surface, {0.75, 1.0, -0.85, -0.35, -0.4, 0.3}},  // grip
      {2.0 * kPi * 0.08 * 0.1, cylinder_surface, {0.6, 0.3, 0.45, 0.08, 0.05, 2}},  // shutter button
  };
  return PointCloud(sample_parts(rng, parts, points));
}

Eigen::MatrixXd random_rotation(int n, Rng& rng) {
  if (n < 2) throw ArgumentError("rotation dimension must be at least 2");
  std::normal_distribution<double> gauss;
  Eigen::MatrixXd g(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) g(i, j) = gauss(rng);
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  }
  if (q.determinant() < 0.0) q.col(0) *= -1.0;
  return q;
}

Eigen::MatrixXd axis_reflection(int n, int axis) {
  if (axis < 0 || axis >= n) throw ArgumentError("reflection axis out of range");
  Eigen::MatrixXd f = Eigen::MatrixXd::Identity(n, n);
  f(axis, axis) = -1.0;
  return f;
}

PointCloud add_noise(const PointCloud& cloud, double sigma, std::uint64_t seed) {
  if (!(sigma >= 0.0)) throw ArgumentError("noise sigma must be non-negative");
  Rng rng(seed);
  std::normal_distribution<double> gauss(0.0, sigma);
  Eigen::MatrixXd pts = cloud.points();
  for (Eigen::Index j = 0; j < pts.cols(); ++j) {
    for (Eigen::Index i = 0; i < pts.rows(); ++i) pts(i, j) += gauss(rng);
  }
  return PointCloud(std::move(pts), cloud.weights());
}

}  // namespace mtuple::synthetic
