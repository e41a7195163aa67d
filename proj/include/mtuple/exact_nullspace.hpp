#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

#include "mtuple/sparse_int_matrix.hpp"

namespace mtuple {

using BigInt = boost::multiprecision::cpp_int;
using IntVector = std::vector<BigInt>;

/// Basis of the rational nullspace {x : A x = 0}, computed by fraction-free
/// integer elimination.
///
/// The basis is canonical for the subspace: the rows of its reduced row
/// echelon form over Q, each scaled to primitive integers with a positive
/// leading entry. An empty result means the nullspace is trivial.
std::vector<IntVector> exact_nullspace(const SparseIntMatrix& a);

/// Canonical basis (RREF, primitive rows, positive pivots) of the span of
/// `vectors`; linearly dependent inputs are dropped.
std::vector<IntVector> canonical_row_basis(const std::vector<IntVector>& vectors);

/// Rank over Q.
std::size_t exact_rank(const std::vector<IntVector>& vectors);

/// Divides by the gcd of all entries and makes the first nonzero entry positive.
IntVector make_primitive(IntVector v);

}  // namespace mtuple
