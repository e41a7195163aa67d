#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <vector>

namespace mtuple {

/// Discrete density distribution: weighted points in R^n.
///
/// Points are stored column-wise (n x M) so that a linear map applies as
/// `Q * points()`.
class PointCloud {
 public:
  PointCloud() = default;
  /// Unit weights.
  explicit PointCloud(Eigen::MatrixXd points);
  PointCloud(Eigen::MatrixXd points, Eigen::VectorXd weights);

  /// Rows are points (M x n), as read from a file or passed from numpy.
  static PointCloud from_rows(const Eigen::MatrixXd& rows);
  static PointCloud from_rows(const Eigen::MatrixXd& rows, const Eigen::VectorXd& weights);

  [[nodiscard]] int dimension() const { return static_cast<int>(points_.rows()); }
  [[nodiscard]] std::size_t size() const { return static_cast<std::size_t>(points_.cols()); }
  [[nodiscard]] bool empty() const { return points_.cols() == 0; }
  [[nodiscard]] const Eigen::MatrixXd& points() const { return points_; }
  [[nodiscard]] const Eigen::VectorXd& weights() const { return weights_; }
  [[nodiscard]] Eigen::VectorXd point(std::size_t i) const {
    return points_.col(static_cast<Eigen::Index>(i));
  }
  [[nodiscard]] double total_weight() const { return weights_.sum(); }

  /// New cloud with every point mapped through `m` (n x n).
  [[nodiscard]] PointCloud transformed(const Eigen::MatrixXd& m) const;
  [[nodiscard]] PointCloud translated(const Eigen::VectorXd& offset) const;
  [[nodiscard]] PointCloud scaled(double factor) const;

 private:
  void validate() const;

  Eigen::MatrixXd points_;
  Eigen::VectorXd weights_;
};

/// Row-major grey-level image with values in [0, 1].
struct DensityImage {
  int width = 0;
  int height = 0;
  std::vector<double> pixels;

  [[nodiscard]] double at(int row, int col) const {
    return pixels[static_cast<std::size_t>(row) * static_cast<std::size_t>(width) +
                  static_cast<std::size_t>(col)];
  }
  void validate() const;
};

inline constexpr double kDefaultImageThreshold = 0.5;

/// One unit-weight 2D point per pixel >= threshold, at the pixel centre
/// (column + 0.5, row + 0.5).
PointCloud image_to_cloud(const DensityImage& image, double threshold = kDefaultImageThreshold);

/// m_{e_j} / m_0 for each axis j.
Eigen::VectorXd gravity_center(const PointCloud& cloud);

/// Cloud translated so that its gravity centre is the origin.
PointCloud centered(const PointCloud& cloud);

/// Weighted RMS distance of the points to the origin.
double rms_radius(const PointCloud& cloud);

struct ScaledCloud {
  PointCloud cloud;
  double scale = 1.0;
};

/// Divides a centred cloud by its RMS radius.
ScaledCloud normalize_scale(const PointCloud& cloud);

}  // namespace mtuple
