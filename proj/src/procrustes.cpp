#include "mtuple/procrustes.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>
#include <cmath>

#include "mtuple/errors.hpp"

namespace mtuple {

std::string to_string(EstimationMode m) {
  return m == EstimationMode::rotation_only ? "rotation_only" : "allow_reflection";
}

EstimationMode estimation_mode_from_string(const std::string& s) {
  if (s == "rotation_only" || s == "rotation") return EstimationMode::rotation_only;
  if (s == "allow_reflection" || s == "reflection") return EstimationMode::allow_reflection;
  throw ArgumentError("unknown estimation mode '" + s + "' (rotation_only | allow_reflection)");
}

double alignment_residual(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, const Eigen::MatrixXd& q) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || q.rows() != a.cols() || q.cols() != a.cols()) {
    throw ArgumentError("alignment residual: shape mismatch");
  }
  if (a.rows() == 0) throw ArgumentError("alignment residual of empty tuple sets");
  const double num = (a * q.transpose() - b).rowwise().squaredNorm().mean();
  const double den = b.rowwise().squaredNorm().mean();
  if (den == 0.0) return std::sqrt(num);
  return std::sqrt(num / den);
}

Eigen::MatrixXd nearest_orthogonal(const Eigen::MatrixXd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().transpose();
}

Eigen::MatrixXd nearest_rotation(const Eigen::MatrixXd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::MatrixXd u = svd.matrixU();
  if ((u * svd.matrixV().transpose()).determinant() < 0.0) u.col(u.cols() - 1) *= -1.0;
  return u * svd.matrixV().transpose();
}

OrthogonalEstimate estimate_orthogonal(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, EstimationMode mode) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ArgumentError("tuple sets differ in shape; both poses must use the same battery");
  }
  const auto n = a.cols();
  if (n < 2 || a.rows() == 0) throw ArgumentError("empty tuple sets");

  Eigen::JacobiSVD<Eigen::MatrixXd> sa(a);
  Eigen::VectorXd sig = Eigen::VectorXd::Zero(n);
  sig.head(sa.singularValues().size()) = sa.singularValues();
  if (sig[0] == 0.0 || sig[n - 2] < kRankTolerance * sig[0]) {
    throw AmbiguityError("tuple set has rank < n-1: the object's symmetry leaves the rotation unobservable");
  }

  OrthogonalEstimate est;
  est.mode = mode;
  // b_t ~= Q a_t: maximize tr(Q^T B^T A) => H = B^T A = U S V^T, Q = U V^T
  const Eigen::MatrixXd h = b.transpose() * a;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(h, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::MatrixXd u = svd.matrixU();
  const Eigen::MatrixXd v = svd.matrixV();
  const double det_free = (u * v.transpose()).determinant();
  const bool rank_deficient = sig[n - 1] < kRankTolerance * sig[0];

  if (mode == EstimationMode::rotation_only) {
    if (det_free < 0.0) {
      u.col(n - 1) *= -1.0;
      if (!rank_deficient) {
        est.warnings.push_back("best orthogonal fit has determinant -1; the poses may differ by a reflection");
      }
    }
  } else if (rank_deficient) {
    est.reflection_ambiguous = true;
    est.warnings.push_back("tuples span only a hyperplane: reflection across it is indistinguishable");
  }
  est.matrix = u * v.transpose();
  est.determinant = est.matrix.determinant() < 0.0 ? -1.0 : 1.0;
  est.residual = alignment_residual(a, b, est.matrix);
  return est;
}

OrthogonalEstimate estimate_orthogonal(const TupleSet& a, const TupleSet& b, EstimationMode mode) {
  if (a.dimension != b.dimension) throw ArgumentError("tuple sets of different dimension");
  if (a.provenance.size() == b.provenance.size()) {
    for (std::size_t i = 0; i < a.provenance.size(); ++i) {
      if (a.provenance[i].spec != b.provenance[i].spec || a.provenance[i].tuple_id != b.provenance[i].tuple_id) {
        throw ArgumentError("tuple sets were produced by different batteries");
      }
    }
  }
  return estimate_orthogonal(a.rows, b.rows, mode);
}

ReflectionComposition estimate_reflection_composition(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  ReflectionComposition out;
  out.estimate = estimate_orthogonal(a, b, EstimationMode::allow_reflection);
  const auto n = a.cols();
  out.reflection = Eigen::MatrixXd::Identity(n, n);
  if (out.estimate.determinant < 0.0) out.reflection(1, 1) = -1.0;
  // F is its own inverse.
  out.rotation = out.estimate.matrix * out.reflection;
  return out;
}

ReflectionComposition estimate_reflection_composition(const TupleSet& a, const TupleSet& b) {
  if (a.dimension != b.dimension) throw ArgumentError("tuple sets of different dimension");
  return estimate_reflection_composition(a.rows, b.rows);
}

}  // namespace mtuple
