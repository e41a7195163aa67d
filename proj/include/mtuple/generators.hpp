#pragma once

#include <string>
#include <vector>

#include "mtuple/sparse_int_matrix.hpp"

namespace mtuple {

/// Infinitesimal rotation in the coordinate plane (a, b), 0-based, a < b.
///
/// Convention: the generator moves points as dx_a/dt = -x_b, dx_b/dt = +x_a.
/// In 3D, (1,2) is the rotation speed w1, (0,1) is w3, and (0,2) is -w2 of
/// the usual cross-product matrix; see `cross_product_sign`.
struct GeneratorId {
  int a = 0;
  int b = 1;

  friend bool operator==(const GeneratorId&, const GeneratorId&) = default;
  friend auto operator<=>(const GeneratorId&, const GeneratorId&) = default;

  /// "(1,2)"-style label with 1-based axes.
  [[nodiscard]] std::string label() const;
};

/// The n(n-1)/2 generators in lexicographic order of (a, b).
std::vector<GeneratorId> all_generators(int n);

/// Throws ArgumentError unless 0 <= a < b < n.
void validate_generator(int n, GeneratorId g);

/// n x n antisymmetric generator matrix G with G(a,b) = -1, G(b,a) = +1.
SparseIntMatrix generator_matrix(int n, GeneratorId g);

/// For n = 3, the sign s with generator_matrix(g) = s * dL/dw_k for the
/// cross-product velocity matrix; +1 for (1,2) and (0,1), -1 for (0,2).
int cross_product_sign(GeneratorId g);

/// Linear action of a generator on the moments of one order:
/// d/dt m = matrix * m with moments in canonical order.
struct MomentOperator {
  int dimension = 0;
  int order = 0;
  GeneratorId generator;
  SparseIntMatrix matrix;
};

MomentOperator moment_rotation_generator(int n, int p, GeneratorId g);

}  // namespace mtuple
