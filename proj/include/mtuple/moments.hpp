#pragma once

#include <map>
#include <memory>
#include <span>
#include <vector>

#include "mtuple/multi_index.hpp"
#include "mtuple/point_cloud.hpp"

namespace mtuple {

/// All moments of one order p, stored in canonical multi-index order.
class MomentVector {
 public:
  MomentVector(int n, int p);
  MomentVector(int n, int p, std::vector<double> values);

  [[nodiscard]] int dimension() const { return table_->dimension(); }
  [[nodiscard]] int order() const { return table_->order(); }
  [[nodiscard]] std::size_t size() const { return values_.size(); }
  [[nodiscard]] const MultiIndexTable& table() const { return *table_; }

  [[nodiscard]] std::span<const double> values() const { return values_; }
  [[nodiscard]] std::span<double> values() { return values_; }
  [[nodiscard]] double operator[](std::size_t pos) const { return values_[pos]; }
  [[nodiscard]] double& operator[](std::size_t pos) { return values_[pos]; }
  [[nodiscard]] double at(const MultiIndex& idx) const { return values_[table_->position(idx.exponents())]; }
  [[nodiscard]] double at(const std::vector<int>& exponents) const {
    return values_[table_->position(exponents)];
  }

 private:
  std::shared_ptr<const MultiIndexTable> table_;
  std::vector<double> values_;
};

/// Moment vectors keyed by order.
using MomentSet = std::map<int, MomentVector>;

MomentVector compute_raw_moments(const PointCloud& cloud, int p);
MomentVector compute_central_moments(const PointCloud& cloud, int p);

/// Raw moments of several orders in one pass over the points.
MomentSet compute_raw_moments(const PointCloud& cloud, std::span<const int> orders);
MomentSet compute_central_moments(const PointCloud& cloud, std::span<const int> orders);

/// Central moments of |x|: sum f * prod |x_j|^p_j. They bound the central
/// moments entrywise and vanish only when every point sits at the centroid.
MomentSet compute_absolute_moments(const PointCloud& cloud, std::span<const int> orders);

/// Moments after negating coordinate `axis`: m' = (-1)^{p_axis} m.
MomentSet reflect_moments(const MomentSet& moments, int axis);

/// Shared, immutable canonical table for (n, p).
std::shared_ptr<const MultiIndexTable> multi_index_table(int n, int p);

}  // namespace mtuple
