#pragma once

#include <Eigen/Core>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "mtuple/generators.hpp"
#include "mtuple/moments.hpp"
#include "mtuple/multi_index.hpp"
#include "mtuple/sparse_int_matrix.hpp"

namespace mtuple {

/// One factor of a basis specification: all degree-k products of the order-p moments.
struct BasisFactor {
  int order = 0;
  int degree = 1;
  friend bool operator==(const BasisFactor&, const BasisFactor&) = default;
  friend auto operator<=>(const BasisFactor&, const BasisFactor&) = default;
};

/// Specification of a monomial basis v^{(k,k',...)}_{(p,p',...)} in dimension n.
///
/// Factors are kept sorted by order, and factors repeating an order are merged
/// (degrees add), so equal bases have equal specs.
class BasisSpec {
 public:
  BasisSpec() = default;
  BasisSpec(int dimension, std::vector<BasisFactor> factors);

  /// Parses "p:k[,p':k'...]", e.g. "2:1,3:1".
  static BasisSpec parse(int dimension, std::string_view text);

  [[nodiscard]] int dimension() const { return dimension_; }
  [[nodiscard]] const std::vector<BasisFactor>& factors() const { return factors_; }
  [[nodiscard]] int total_degree() const;
  /// Number of moments multiplied together in each monomial (sum of degrees).
  [[nodiscard]] int monomial_degree() const;
  [[nodiscard]] std::vector<int> orders() const;
  [[nodiscard]] bool odd() const { return total_degree() % 2 == 1; }

  /// "2:1,3:1"
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const BasisSpec&, const BasisSpec&) = default;
  friend auto operator<=>(const BasisSpec&, const BasisSpec&) = default;

 private:
  int dimension_ = 0;
  std::vector<BasisFactor> factors_;
};

/// Ordered, deduplicated list of moment monomials for a BasisSpec.
///
/// A monomial is stored as one table position per multiplied moment ("slot").
/// Slots of a factor are contiguous and non-decreasing, which makes symmetric
/// powers unique. Monomials are ordered lexicographically on their slots, the
/// first factor varying slowest.
class MonomialBasis {
 public:
  explicit MonomialBasis(BasisSpec spec);

  [[nodiscard]] const BasisSpec& spec() const { return spec_; }
  [[nodiscard]] int dimension() const { return spec_.dimension(); }
  [[nodiscard]] std::size_t size() const { return monomials_.size(); }
  [[nodiscard]] const std::vector<int>& monomial(std::size_t i) const { return monomials_.at(i); }
  [[nodiscard]] std::size_t slot_count() const { return slot_order_.size(); }
  [[nodiscard]] int slot_order(std::size_t s) const { return slot_order_[s]; }
  [[nodiscard]] const MultiIndexTable& table_for_order(int p) const { return *tables_.at(p); }

  /// Moments multiplied in monomial i.
  [[nodiscard]] std::vector<MultiIndex> factors_of(std::size_t i) const;
  /// "m200*m300"
  [[nodiscard]] std::string label(std::size_t i) const;
  /// Sum over the monomial's moments of their exponent on `axis`.
  [[nodiscard]] int axis_degree(std::size_t i, int axis) const;

  /// Index of the monomial with the given slots (slots need not be sorted
  /// within a factor); throws ArgumentError if it is not in the basis.
  [[nodiscard]] std::size_t find(std::vector<int> slots) const;
  /// Index of the monomial multiplying exactly these moments.
  [[nodiscard]] std::size_t find(const std::vector<MultiIndex>& factors) const;

 private:
  void canonicalize(std::vector<int>& slots) const;

  BasisSpec spec_;
  std::vector<int> slot_order_;
  std::vector<std::pair<std::size_t, std::size_t>> factor_slots_;  // [begin, end) per factor
  std::map<int, std::shared_ptr<const MultiIndexTable>> tables_;
  std::vector<std::vector<int>> monomials_;
  std::map<std::vector<int>, std::size_t> lookup_;
};

MonomialBasis build_monomial_basis(const BasisSpec& spec);

/// Action of a generator on a monomial basis (Leibniz rule):
/// d/dt v = matrix * v.
struct MonomialOperator {
  GeneratorId generator;
  std::shared_ptr<const MonomialBasis> basis;
  SparseIntMatrix matrix;
};

MonomialOperator build_monomial_operator(std::shared_ptr<const MonomialBasis> basis, GeneratorId g);

/// Product of the referenced moment values for every monomial.
Eigen::VectorXd evaluate_monomials(const MonomialBasis& basis, const MomentSet& moments);

}  // namespace mtuple
