#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <memory>
#include <vector>

#include "mtuple/exact_nullspace.hpp"
#include "mtuple/monomial_basis.hpp"
#include "mtuple/point_cloud.hpp"

namespace mtuple {

struct ConstraintOptions {
  /// Restrict coefficients to those compatible with the coordinate reflection
  /// law m' = (-1)^{p_j} m, so tuples are equivariant under all of O(n). In 3D
  /// this does not change the solution space; in 2D it removes the
  /// quarter-turned copy J x of every doublet x.
  bool reflection_parity = true;
};

/// Linear system whose nullspace holds the stacked coefficients
/// (alpha_1 | ... | alpha_n) of every equivariant n-tuple on a basis.
///
/// Row block (g, a), generator-major, encodes
///   L_g^T alpha_a - sum_b G^g_{ab} alpha_b = 0,
/// i.e. d/dt (alpha_a^T v) = (G^g x)_a for every generator g.
struct ConstraintSystem {
  BasisSpec spec;
  std::shared_ptr<const MonomialBasis> basis;
  std::vector<GeneratorId> generators;
  /// (n * P * N) x (n * N) with P = n(n-1)/2.
  SparseIntMatrix rotation;
  /// Column mask from the reflection law; all true when parity is disabled.
  std::vector<bool> admissible;
  ConstraintOptions options;

  [[nodiscard]] int dimension() const { return spec.dimension(); }
  [[nodiscard]] std::size_t basis_size() const { return basis->size(); }
  /// Rotation block restricted to admissible columns (empty rows dropped),
  /// with the map back to full column indices.
  [[nodiscard]] std::pair<SparseIntMatrix, std::vector<std::int64_t>> reduced() const;
  /// True when `stacked` (length n*N) satisfies every rotation row and the
  /// parity mask exactly.
  [[nodiscard]] bool satisfied_by(const IntVector& stacked) const;
};

/// Throws EvenDegreeError for even total degree: such bases only admit the
/// zero tuple (odd-degree rule of the derivation procedure).
ConstraintSystem assemble_constraints(const BasisSpec& spec, ConstraintOptions options = {});

/// Exact nullspace of the assembled system, in full n*N coordinates.
std::vector<IntVector> exact_nullspace(const ConstraintSystem& system);

/// One derived n-tuple: x_a = alpha_a^T v for a = 1..n.
struct TupleDefinition {
  std::shared_ptr<const MonomialBasis> basis;
  int id = 0;
  /// n coefficient vectors of length N; primitive, first nonzero positive.
  std::vector<std::vector<std::int64_t>> alphas;

  [[nodiscard]] int dimension() const { return static_cast<int>(alphas.size()); }
  [[nodiscard]] IntVector stacked() const;
  /// (alpha_1^T v, ..., alpha_n^T v)
  [[nodiscard]] Eigen::VectorXd evaluate(const Eigen::VectorXd& v) const;
  [[nodiscard]] Eigen::VectorXd evaluate(const MomentSet& moments) const;
};

/// All tuples derived from one basis specification.
class TupleFamily {
 public:
  TupleFamily(std::shared_ptr<const MonomialBasis> basis, std::vector<TupleDefinition> tuples);

  [[nodiscard]] const BasisSpec& spec() const { return basis_->spec(); }
  [[nodiscard]] int dimension() const { return basis_->dimension(); }
  [[nodiscard]] const std::shared_ptr<const MonomialBasis>& basis() const { return basis_; }
  [[nodiscard]] const std::vector<TupleDefinition>& tuples() const { return tuples_; }
  [[nodiscard]] std::size_t size() const { return tuples_.size(); }

  /// T x n matrix, row t = tuple t evaluated on `moments`.
  [[nodiscard]] Eigen::MatrixXd evaluate(const MomentSet& moments) const;
  /// Same, with |alpha| and |v|: a cancellation-free magnitude per row.
  [[nodiscard]] Eigen::MatrixXd evaluate_magnitude(const MomentSet& moments) const;

 private:
  std::shared_ptr<const MonomialBasis> basis_;
  std::vector<TupleDefinition> tuples_;
  Eigen::MatrixXd coefficients_;  // (T*n) x N, row t*n + a = alpha_a of tuple t
};

TupleFamily derive_tuples(const BasisSpec& spec, ConstraintOptions options = {});

/// Tuple families evaluated together; row order is family order, then tuple id.
using TupleBattery = std::vector<TupleFamily>;

/// Specs used when no battery is supplied. 2D: the ten (p:1,p':1) bases of the
/// image experiments; 3D and higher: 2:1,3:1 / 2:1,5:1 / 3:1,4:1 / 4:1,5:1.
std::vector<BasisSpec> default_battery_specs(int n);
TupleBattery derive_battery(const std::vector<BasisSpec>& specs, ConstraintOptions options = {});
/// Every moment order referenced by the battery, ascending.
std::vector<int> required_orders(const TupleBattery& battery);

/// ||x_v(R C) - R x_v(C)|| / max(||x_v(C)||, eps) on central moments.
/// R must be a rotation (orthogonal to 1e-10, det +1).
double verify_equivariance(const TupleDefinition& def, const PointCloud& cloud, const Eigen::MatrixXd& rotation);

}  // namespace mtuple
