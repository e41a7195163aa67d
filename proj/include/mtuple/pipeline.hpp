#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "mtuple/moments.hpp"
#include "mtuple/procrustes.hpp"
#include "mtuple/symmetry.hpp"
#include "mtuple/tuples.hpp"

namespace mtuple {

/// Central moments of a cloud after centring and scaling to unit RMS radius.
struct PreparedMoments {
  MomentSet moments;
  MomentSet absolute;  // for tuple magnitudes
  Eigen::VectorXd center;
  double scale = 1.0;
};

PreparedMoments prepare_moments(const PointCloud& cloud, const std::vector<int>& orders);

/// Rejects batteries that cannot be used for analysis: empty, wrong
/// dimension, or using first-order moments (zero once the cloud is centred).
void validate_battery(const TupleBattery& battery, int dimension);

/// Battery derived from default_battery_specs(n), cached per dimension.
const TupleBattery& default_battery(int n);

/// Tuple rows of a cloud: centre, normalize, central moments, evaluate.
TupleSet compute_tuple_set(const PointCloud& cloud, const TupleBattery& battery);

struct SpecRatios {
  BasisSpec spec;
  Eigen::VectorXd singular_values;
  std::vector<double> ratios;  // sigma_1 / sigma_k, k = 2..n
};

struct Analysis {
  TupleSet tuples;
  SymmetryReport report;
  /// Singular-value ratios of each family on its own.
  std::vector<SpecRatios> per_spec;
};

Analysis analyze_cloud(const PointCloud& cloud, const TupleBattery& battery, const Thresholds& thresholds = {});

OrthogonalEstimate estimate_transform(const PointCloud& a, const PointCloud& b, const TupleBattery& battery,
                                      EstimationMode mode);

ReflectionComposition estimate_composition(const PointCloud& a, const PointCloud& b, const TupleBattery& battery);

}  // namespace mtuple
