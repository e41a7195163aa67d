#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>

#include "mtuple/point_cloud.hpp"

namespace mtuple::io {

/// ASCII XYZ: one point per line, n whitespace-separated reals, optionally a
/// trailing weight column. Blank lines and lines starting with '#' are
/// skipped. Without `dimension`, every line must have the same column count
/// and all columns are coordinates.
PointCloud read_xyz(std::istream& in, std::optional<int> dimension = std::nullopt);
PointCloud read_xyz(const std::filesystem::path& path, std::optional<int> dimension = std::nullopt);
void write_xyz(std::ostream& out, const PointCloud& cloud, bool with_weights = false);
void write_xyz(const std::filesystem::path& path, const PointCloud& cloud, bool with_weights = false);

/// ASCII PLY, vertex x/y/z only; other vertex properties and elements are ignored.
PointCloud read_ply(std::istream& in);
PointCloud read_ply(const std::filesystem::path& path);
void write_ply(const std::filesystem::path& path, const PointCloud& cloud);

/// PGM (P2 or P5, 8 or 16 bit), values divided by maxval.
DensityImage read_pgm(std::istream& in);
DensityImage read_pgm(const std::filesystem::path& path);
/// Binary P5 with maxval 255.
void write_pgm(const std::filesystem::path& path, const DensityImage& image);

/// Dispatch on extension: .ply, .pgm (thresholded image), anything else XYZ.
PointCloud read_cloud(const std::filesystem::path& path, std::optional<int> dimension = std::nullopt,
                      double image_threshold = kDefaultImageThreshold);

}  // namespace mtuple::io
