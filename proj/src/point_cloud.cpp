#include "mtuple/point_cloud.hpp"

#include <cmath>
#include <string>

#include "mtuple/errors.hpp"

namespace mtuple {

PointCloud::PointCloud(Eigen::MatrixXd points)
    : points_(std::move(points)), weights_(Eigen::VectorXd::Ones(points_.cols())) {
  validate();
}

PointCloud::PointCloud(Eigen::MatrixXd points, Eigen::VectorXd weights)
    : points_(std::move(points)), weights_(std::move(weights)) {
  validate();
}

PointCloud PointCloud::from_rows(const Eigen::MatrixXd& rows) {
  return PointCloud(rows.transpose());
}

PointCloud PointCloud::from_rows(const Eigen::MatrixXd& rows, const Eigen::VectorXd& weights) {
  return PointCloud(rows.transpose(), weights);
}

void PointCloud::validate() const {
  if (points_.cols() > 0 && points_.rows() < 2) {
    throw ArgumentError("point dimension must be at least 2, got " +
                        std::to_string(points_.rows()));
  }
  if (weights_.size() != points_.cols()) {
    throw ArgumentError("weight count " + std::to_string(weights_.size()) +
                        " does not match point count " + std::to_string(points_.cols()));
  }
  for (Eigen::Index i = 0; i < weights_.size(); ++i) {
    if (!(weights_[i] > 0.0) || !std::isfinite(weights_[i])) {
      throw ArgumentError("point weights must be positive and finite");
    }
  }
  if (!points_.allFinite()) throw ArgumentError("point coordinates must be finite");
}

PointCloud PointCloud::transformed(const Eigen::MatrixXd& m) const {
  if (m.rows() != points_.rows() || m.cols() != points_.rows()) {
    throw ArgumentError("transform must be n x n for an n-dimensional cloud");
  }
  return PointCloud(m * points_, weights_);
}

PointCloud PointCloud::translated(const Eigen::VectorXd& offset) const {
  if (offset.size() != points_.rows()) throw ArgumentError("offset dimension mismatch");
  return PointCloud(points_.colwise() + offset, weights_);
}

PointCloud PointCloud::scaled(double factor) const {
  return PointCloud(points_ * factor, weights_);
}

void DensityImage::validate() const {
  if (width <= 0 || height <= 0) throw ArgumentError("image dimensions must be positive");
  if (pixels.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw ArgumentError("pixel count does not match width*height");
  }
}

PointCloud image_to_cloud(const DensityImage& image, double threshold) {
  image.validate();
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw ArgumentError("threshold must lie in [0, 1]");
  }
  std::vector<double> coords;
  for (int r = 0; r < image.height; ++r) {
    for (int c = 0; c < image.width; ++c) {
      if (image.at(r, c) >= threshold && image.at(r, c) > 0.0) {
        coords.push_back(c + 0.5);
        coords.push_back(r + 0.5);
      }
    }
  }
  if (coords.empty()) throw DegenerateInputError("no pixel passes the threshold");
  const Eigen::Index m = static_cast<Eigen::Index>(coords.size() / 2);
  return PointCloud(Eigen::Map<const Eigen::MatrixXd>(coords.data(), 2, m));
}

Eigen::VectorXd gravity_center(const PointCloud& cloud) {
  if (cloud.empty()) throw ArgumentError("gravity centre of an empty cloud");
  const double mass = cloud.total_weight();
  if (!(mass > 0.0)) throw DegenerateInputError("total weight is zero");
  return (cloud.points() * cloud.weights()) / mass;
}

PointCloud centered(const PointCloud& cloud) { return cloud.translated(-gravity_center(cloud)); }

double rms_radius(const PointCloud& cloud) {
  if (cloud.empty()) throw ArgumentError("RMS radius of an empty cloud");
  const Eigen::VectorXd sq = cloud.points().colwise().squaredNorm().transpose();
  return std::sqrt(sq.dot(cloud.weights()) / cloud.total_weight());
}

ScaledCloud normalize_scale(const PointCloud& cloud) {
  const double s = rms_radius(cloud);
  if (!(s > 0.0)) throw DegenerateInputError("all points coincide with the origin");
  return {cloud.scaled(1.0 / s), s};
}

}  // namespace mtuple
