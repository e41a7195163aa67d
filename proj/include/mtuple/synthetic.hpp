#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "mtuple/point_cloud.hpp"

// Synthetic stand-ins for the shapes used in the experiments. Every
// symmetric shape is symmetric by construction (images of one random sample
// under the symmetry group), so tuple-level symmetry holds to rounding.
namespace mtuple::synthetic {

enum class RectKind {
  plain,     // one rectangle: centrally symmetric
  mirror_x,  // T shape, mirror x -> -x about the image centre
  mirror_y,  // T shape on its side, mirror y -> -y
  asym,      // no mirror symmetry
};

RectKind rect_kind_from_string(const std::string& s);
std::string to_string(RectKind k);

/// Binary size x size image built from axis-aligned pixel blocks.
DensityImage rect_image(RectKind kind, int size = 64);

/// Cylinder shell, bottom and a handle at +x, mirrored across y = 0.
/// 2 * base_points points; the only mirror plane has normal e_y.
PointCloud mug(std::uint64_t seed, std::size_t base_points = 4000);

/// Surface of revolution about z, deterministic: profile_steps x azimuth_steps points.
PointCloud bottle(int profile_steps = 60, int azimuth_steps = 360);

/// Square top on four legs, with the 8-element symmetry group of the square
/// applied to a random sample: 8 * base_points points, axis e_z, mirror
/// normals at 0, 45, 90 and 135 degrees in the xy-plane.
PointCloud table(std::uint64_t seed, std::size_t base_points = 2500);
/// Unit normals of the table's mirror planes.
std::vector<Eigen::Vector3d> table_mirror_normals();

/// Body, lens, viewfinder and grip with no symmetry.
PointCloud camera(std::uint64_t seed, std::size_t points = 8000);

/// Haar-random rotation (det +1).
Eigen::MatrixXd random_rotation(int n, std::mt19937_64& rng);

/// diag(1, ..., -1, ..., 1) negating coordinate `axis` (0-based).
Eigen::MatrixXd axis_reflection(int n, int axis);

/// Adds i.i.d. N(0, sigma^2) to every coordinate.
PointCloud add_noise(const PointCloud& cloud, double sigma, std::uint64_t seed);

}  // namespace mtuple::synthetic
