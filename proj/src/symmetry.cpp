#include "mtuple/symmetry.hpp"

#include <Eigen/Geometry>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>

#include "mtuple/errors.hpp"

namespace mtuple {

std::string to_string(SymmetryClass c) {
  switch (c) {
    case SymmetryClass::point: return "point";
    case SymmetryClass::planar: return "planar";
    case SymmetryClass::axial: return "axial";
    case SymmetryClass::asymmetric: return "asymmetric";
  }
  return "unknown";
}

void Thresholds::validate() const {
  if (!(plane > 1.0) || !(axis > 1.0)) throw ArgumentError("ratio thresholds must exceed 1");
  if (!(point_floor >= 0.0)) throw ArgumentError("point floor must be non-negative");
}

TupleSet evaluate_tuple_set(const TupleBattery& battery, const MomentSet& moments, double scale,
                            const MomentSet* absolute) {
  if (battery.empty()) throw ArgumentError("empty tuple battery");
  const int n = battery.front().dimension();
  Eigen::Index total = 0;
  for (const auto& f : battery) {
    if (f.dimension() != n) throw ArgumentError("tuple families of mixed dimension");
    total += static_cast<Eigen::Index>(f.size());
  }
  TupleSet set;
  set.dimension = n;
  set.scale = scale;
  set.rows.resize(total, n);
  set.magnitudes.resize(total);
  Eigen::Index row = 0;
  for (const auto& f : battery) {
    if (f.size() == 0) continue;
    const auto x = f.evaluate(moments);
    const auto mag = f.evaluate_magnitude(absolute ? *absolute : moments);
    set.rows.middleRows(row, x.rows()) = x;
    set.magnitudes.segment(row, x.rows()) = mag.rowwise().norm();
    for (const auto& t : f.tuples()) set.provenance.push_back({f.spec(), t.id});
    row += x.rows();
  }
  return set;
}

Eigen::VectorXd fix_sign(Eigen::VectorXd v) {
  const double tol = 1e-9 * std::max(v.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > tol) {
      if (v[i] < 0) v = -v;
      break;
    }
  }
  return v;
}

void fix_column_signs(Eigen::MatrixXd& m) {
  for (Eigen::Index c = 0; c < m.cols(); ++c) m.col(c) = fix_sign(m.col(c));
}

SymmetryReport classify_symmetry(const TupleSet& set, Thresholds thresholds) {
  thresholds.validate();
  if (set.count() == 0) throw ArgumentError("empty tuple set");
  const int n = set.dimension;
  if (set.rows.cols() != n) throw ArgumentError("tuple set width does not match its dimension");

  SymmetryReport report;
  report.dimension = n;
  report.thresholds = thresholds;
  if (set.count() < n) {
    report.warnings.push_back("only " + std::to_string(set.count()) + " tuples for dimension " +
                              std::to_string(n) + "; singular structure is under-determined");
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(set.rows, Eigen::ComputeFullV);
  report.singular_values = Eigen::VectorXd::Zero(n);
  const auto& sv = svd.singularValues();
  report.singular_values.head(sv.size()) = sv;
  report.singular_vectors = svd.matrixV();
  fix_column_signs(report.singular_vectors);

  const double s1 = report.singular_values[0];
  for (int k = 1; k < n; ++k) {
    const double sk = report.singular_values[k];
    report.ratios.push_back(sk > 0.0 ? s1 / sk : std::numeric_limits<double>::infinity());
  }

  if (set.magnitudes.size() > 0) {
    std::vector<double> mags(set.magnitudes.data(), set.magnitudes.data() + set.magnitudes.size());
    std::nth_element(mags.begin(), mags.begin() + static_cast<std::ptrdiff_t>(mags.size() / 2), mags.end());
    report.reference_magnitude = mags[mags.size() / 2];
    if (report.reference_magnitude == 0.0) report.reference_magnitude = *std::max_element(mags.begin(), mags.end());
  }

  const bool is_point = s1 == 0.0 || report.reference_magnitude == 0.0 ||
                        s1 < thresholds.point_floor * report.reference_magnitude;
  if (is_point) {
    report.classification = SymmetryClass::point;
  } else if (n >= 3 && report.ratios[0] >= thresholds.axis) {
    report.classification = SymmetryClass::axial;
  } else if (report.ratios[static_cast<std::size_t>(n - 2)] >= thresholds.plane) {
    report.classification = SymmetryClass::planar;
  } else {
    report.classification = SymmetryClass::asymmetric;
  }

  if (report.classification == SymmetryClass::planar) {
    report.plane_normal = report.singular_vectors.col(n - 1);
  } else if (report.classification == SymmetryClass::axial) {
    report.axis = symmetry_axis(report);
  }
  return report;
}

Eigen::VectorXd symmetry_plane(const SymmetryReport& report) {
  if (report.classification != SymmetryClass::planar) {
    throw StateError("symmetry plane requested from a report classified " + to_string(report.classification));
  }
  return report.singular_vectors.col(report.dimension - 1);
}

Eigen::VectorXd symmetry_axis(const SymmetryReport& report) {
  if (report.classification != SymmetryClass::axial) {
    throw StateError("symmetry axis requested from a report classified " + to_string(report.classification));
  }
  if (report.dimension != 3) throw StateError("symmetry axis is defined for 3D reports only");
  const Eigen::Vector3d nu2 = report.singular_vectors.col(1);
  const Eigen::Vector3d nu3 = report.singular_vectors.col(2);
  return fix_sign(nu2.cross(nu3).normalized());
}

double reflection_parity(const TupleFamily& family, const MomentSet& moments, int axis) {
  const int n = family.dimension();
  if (axis < 0 || axis >= n) throw ArgumentError("reflection axis out of range");
  if (family.size() == 0) return 0.0;
  const Eigen::MatrixXd x = family.evaluate(moments);
  Eigen::MatrixXd expected = x;
  expected.col(axis) *= -1.0;
  const Eigen::MatrixXd reflected = family.evaluate(reflect_moments(moments, axis));
  const double scale = x.cwiseAbs().maxCoeff();
  const double diff = (reflected - expected).cwiseAbs().maxCoeff();
  if (scale == 0.0) return diff;
  return diff / scale;
}

double reflection_parity(const TupleBattery& battery, const MomentSet& moments, int axis) {
  double worst = 0.0;
  for (const auto& f : battery) worst = std::max(worst, reflection_parity(f, moments, axis));
  return worst;
}

}  // namespace mtuple
