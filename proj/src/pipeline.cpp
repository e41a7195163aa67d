#include "mtuple/pipeline.hpp"

#include <Eigen/SVD>
#include <limits>
#include <map>
#include <mutex>

#include "mtuple/errors.hpp"

namespace mtuple {

PreparedMoments prepare_moments(const PointCloud& cloud, const std::vector<int>& orders) {
  if (cloud.empty()) throw ArgumentError("empty point cloud");
  PreparedMoments out;
  out.center = gravity_center(cloud);
  ScaledCloud scaled = normalize_scale(cloud.translated(-out.center));
  out.scale = scaled.scale;
  // the cloud is centred already; central moments only remove rounding
  out.moments = compute_central_moments(scaled.cloud, orders);
  out.absolute = compute_absolute_moments(scaled.cloud, orders);
  return out;
}

void validate_battery(const TupleBattery& battery, int dimension) {
  if (battery.empty()) throw ArgumentError("empty tuple battery");
  for (const auto& f : battery) {
    if (f.dimension() != dimension) {
      throw ArgumentError("tuple family " + f.spec().to_string() + " has dimension " +
                          std::to_string(f.dimension()) + ", input has " + std::to_string(dimension));
    }
    for (const auto& factor : f.spec().factors()) {
      if (factor.order < 2) {
        throw ArgumentError("tuple family " + f.spec().to_string() +
                            " uses first-order moments, which vanish on centred input");
      }
    }
  }
}

const TupleBattery& default_battery(int n) {
  static std::mutex mutex;
  static std::map<int, TupleBattery> cache;
  const std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, derive_battery(default_battery_specs(n))).first;
  return it->second;
}

TupleSet compute_tuple_set(const PointCloud& cloud, const TupleBattery& battery) {
  validate_battery(battery, cloud.dimension());
  const PreparedMoments pm = prepare_moments(cloud, required_orders(battery));
  return evaluate_tuple_set(battery, pm.moments, pm.scale, &pm.absolute);
}

Analysis analyze_cloud(const PointCloud& cloud, const TupleBattery& battery, const Thresholds& thresholds) {
  Analysis out;
  out.tuples = compute_tuple_set(cloud, battery);
  out.report = classify_symmetry(out.tuples, thresholds);
  Eigen::Index row = 0;
  for (const auto& f : battery) {
    const auto count = static_cast<Eigen::Index>(f.size());
    SpecRatios sr;
    sr.spec = f.spec();
    sr.singular_values = Eigen::VectorXd::Zero(out.tuples.dimension);
    if (count > 0) {
      const Eigen::MatrixXd block = out.tuples.rows.middleRows(row, count);
      const Eigen::VectorXd s = Eigen::JacobiSVD<Eigen::MatrixXd>(block).singularValues();
      sr.singular_values.head(s.size()) = s;
    }
    for (Eigen::Index k = 1; k < sr.singular_values.size(); ++k) {
      const double sk = sr.singular_values[k];
      sr.ratios.push_back(sk > 0.0 ? sr.singular_values[0] / sk : std::numeric_limits<double>::infinity());
    }
    out.per_spec.push_back(std::move(sr));
    row += count;
  }
  return out;
}

OrthogonalEstimate estimate_transform(const PointCloud& a, const PointCloud& b, const TupleBattery& battery,
                                      EstimationMode mode) {
  if (a.dimension() != b.dimension()) throw ArgumentError("poses differ in dimension");
  return estimate_orthogonal(compute_tuple_set(a, battery), compute_tuple_set(b, battery), mode);
}

ReflectionComposition estimate_composition(const PointCloud& a, const PointCloud& b, const TupleBattery& battery) {
  if (a.dimension() != b.dimension()) throw ArgumentError("poses differ in dimension");
  return estimate_reflection_composition(compute_tuple_set(a, battery), compute_tuple_set(b, battery));
}

}  // namespace mtuple
