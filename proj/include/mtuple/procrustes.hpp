#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "mtuple/symmetry.hpp"

namespace mtuple {

enum class EstimationMode { rotation_only, allow_reflection };

std::string to_string(EstimationMode m);
EstimationMode estimation_mode_from_string(const std::string& s);

struct OrthogonalEstimate {
  Eigen::MatrixXd matrix;  // Q with b_t ~= Q a_t
  double determinant = 1.0;
  double residual = 0.0;
  EstimationMode mode = EstimationMode::rotation_only;
  /// allow_reflection on rank n-1 tuples: a mirror across the tuple
  /// hyperplane fits equally well, so the sign of det(Q) is not observable.
  bool reflection_ambiguous = false;
  std::vector<std::string> warnings;
};

/// Relative rank threshold below which a singular value of A counts as zero.
inline constexpr double kRankTolerance = 1e-8;

/// Orthogonal Procrustes between corresponding tuple rows (T x n each):
/// Q = argmin ||Q A^T - B^T||_F over O(n) or SO(n).
///
/// Throws AmbiguityError when rank(A) < n - 1: a symmetry of the object
/// leaves the rotation about the degenerate directions unobservable.
OrthogonalEstimate estimate_orthogonal(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, EstimationMode mode);
OrthogonalEstimate estimate_orthogonal(const TupleSet& a, const TupleSet& b, EstimationMode mode);

struct ReflectionComposition {
  Eigen::MatrixXd rotation;    // R in SO(n)
  Eigen::MatrixXd reflection;  // F = diag(1, -1, 1, ...) or I
  OrthogonalEstimate estimate;  // Q = R F
};

/// Splits an O(n) estimate into a rotation after the canonical reflection of
/// the second axis. When det(Q) = +1, F = I and R = Q.
ReflectionComposition estimate_reflection_composition(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);
ReflectionComposition estimate_reflection_composition(const TupleSet& a, const TupleSet& b);

/// RMS over rows of ||Q a_t - b_t||, divided by the RMS row norm of B.
double alignment_residual(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, const Eigen::MatrixXd& q);

/// Nearest rotation (det +1) to an arbitrary square matrix in Frobenius norm.
Eigen::MatrixXd nearest_rotation(const Eigen::MatrixXd& m);
/// Nearest orthogonal matrix.
Eigen::MatrixXd nearest_orthogonal(const Eigen::MatrixXd& m);

}  // namespace mtuple
