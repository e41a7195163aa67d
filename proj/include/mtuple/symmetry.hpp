#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>
#include <vector>

#include "mtuple/moments.hpp"
#include "mtuple/tuples.hpp"

namespace mtuple {

enum class SymmetryClass { point, planar, axial, asymmetric };

std::string to_string(SymmetryClass c);

struct Thresholds {
  /// sigma_1 / sigma_n at or above which the rows are taken to lie in a hyperplane.
  double plane = 100.0;
  /// sigma_1 / sigma_2 at or above which the rows are taken to lie on a line (n >= 3).
  double axis = 100.0;
  /// Point symmetry when sigma_1 < point_floor * reference magnitude.
  double point_floor = 1e-6;

  void validate() const;
};

struct RowProvenance {
  BasisSpec spec;
  int tuple_id = 0;
};

/// Evaluated n-tuples of one distribution, one row per tuple definition.
struct TupleSet {
  int dimension = 0;
  Eigen::MatrixXd rows;  // T x n
  /// Row norms of the tuples evaluated with |alpha| on absolute moments: an
  /// upper bound on each row that does not cancel on symmetric inputs.
  Eigen::VectorXd magnitudes;
  std::vector<RowProvenance> provenance;
  /// RMS radius the cloud was divided by before computing moments (1 if not normalized).
  double scale = 1.0;

  [[nodiscard]] Eigen::Index count() const { return rows.rows(); }
};

/// Rows in battery order. `moments` should be central moments of a
/// scale-normalized cloud and must cover every order the battery uses.
/// Magnitudes use `absolute` (see compute_absolute_moments) when given,
/// otherwise |moments|.
TupleSet evaluate_tuple_set(const TupleBattery& battery, const MomentSet& moments, double scale = 1.0,
                            const MomentSet* absolute = nullptr);

struct SymmetryReport {
  SymmetryClass classification = SymmetryClass::asymmetric;
  int dimension = 0;
  Eigen::VectorXd singular_values;   // descending, length n
  Eigen::MatrixXd singular_vectors;  // n x n, columns nu_1..nu_n, first nonzero entry positive
  /// sigma_1 / sigma_k for k = 2..n (infinite when sigma_k = 0).
  std::vector<double> ratios;
  std::optional<Eigen::VectorXd> plane_normal;
  std::optional<Eigen::VectorXd> axis;
  Thresholds thresholds;
  double reference_magnitude = 0.0;
  std::vector<std::string> warnings;
};

SymmetryReport classify_symmetry(const TupleSet& set, Thresholds thresholds = {});

/// Normal of the symmetry hyperplane: the singular vector of the smallest
/// singular value. In 2D the mirror line runs along nu_1.
Eigen::VectorXd symmetry_plane(const SymmetryReport& report);

/// Rotation axis of an axial 3D report: nu_2 x nu_3.
Eigen::VectorXd symmetry_axis(const SymmetryReport& report);

/// Flips each column so that its first non-negligible entry is positive.
void fix_column_signs(Eigen::MatrixXd& m);
Eigen::VectorXd fix_sign(Eigen::VectorXd v);

/// Evaluates the tuples on `moments` and on the moments of the axis-reflected
/// distribution; returns the largest deviation from "component `axis` negates,
/// the others persist", relative to the largest tuple entry.
double reflection_parity(const TupleFamily& family, const MomentSet& moments, int axis);
double reflection_parity(const TupleBattery& battery, const MomentSet& moments, int axis);

}  // namespace mtuple
