#include "mtuple/generators.hpp"

#include "mtuple/errors.hpp"
#include "mtuple/moments.hpp"

namespace mtuple {

std::string GeneratorId::label() const {
  return "(" + std::to_string(a + 1) + "," + std::to_string(b + 1) + ")";
}

std::vector<GeneratorId> all_generators(int n) {
  if (n < 2) throw ArgumentError("dimension must be at least 2");
  std::vector<GeneratorId> out;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) out.push_back({a, b});
  }
  return out;
}

void validate_generator(int n, GeneratorId g) {
  if (g.a < 0 || g.b >= n || g.a >= g.b) {
    throw ArgumentError("generator axes " + g.label() + " invalid for dimension " + std::to_string(n));
  }
}

SparseIntMatrix generator_matrix(int n, GeneratorId g) {
  validate_generator(n, g);
  return {n, n, {{g.a, g.b, -1}, {g.b, g.a, 1}}};
}

int cross_product_sign(GeneratorId g) { return (g.a == 0 && g.b == 2) ? -1 : 1; }

MomentOperator moment_rotation_generator(int n, int p, GeneratorId g) {
  validate_generator(n, g);
  if (p < 0) throw ArgumentError("moment order must be non-negative");
  const auto table = multi_index_table(n, p);
  std::vector<Triplet> entries;
  // d/dt m_P = sum_i sum_j P_i l_ij m_{P - e_i + e_j}, with l_ab = -1, l_ba = +1.
  for (std::size_t r = 0; r < table->size(); ++r) {
    const auto& exps = table->at(r).exponents();
    const auto a = static_cast<std::size_t>(g.a);
    const auto b = static_cast<std::size_t>(g.b);
    if (exps[a] > 0) {
      auto shifted = exps;
      --shifted[a];
      ++shifted[b];
      entries.push_back({static_cast<std::int64_t>(r),
                         static_cast<std::int64_t>(table->position(shifted)), -exps[a]});
    }
    if (exps[b] > 0) {
      auto shifted = exps;
      --shifted[b];
      ++shifted[a];
      entries.push_back({static_cast<std::int64_t>(r),
                         static_cast<std::int64_t>(table->position(shifted)), exps[b]});
    }
  }
  const auto size = static_cast<std::int64_t>(table->size());
  return {n, p, g, SparseIntMatrix(size, size, std::move(entries))};
}

}  // namespace mtuple
