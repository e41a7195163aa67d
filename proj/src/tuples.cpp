#include "mtuple/tuples.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <limits>
#include <set>

#include "mtuple/errors.hpp"

namespace mtuple {

ConstraintSystem assemble_constraints(const BasisSpec& spec, ConstraintOptions options) {
  if (!spec.odd()) {
    throw EvenDegreeError("basis " + spec.to_string() + " has even total degree " +
                          std::to_string(spec.total_degree()) +
                          "; n-tuples require an odd total degree (even degrees only admit the null tuple)");
  }
  const int n = spec.dimension();
  auto basis = std::make_shared<const MonomialBasis>(spec);
  const auto big_n = static_cast<std::int64_t>(basis->size());
  const auto gens = all_generators(n);

  std::vector<Triplet> entries;
  std::int64_t block = 0;
  for (const auto& g : gens) {
    const auto op = build_monomial_operator(basis, g);
    const auto gm = generator_matrix(n, g);
    for (int a = 0; a < n; ++a, ++block) {
      const std::int64_t row0 = block * big_n;
      // L_g^T alpha_a: row r of the block gets L_g(c, r) at column (a, c)
      for (const auto& t : op.matrix.entries()) {
        entries.push_back({row0 + t.col, a * big_n + t.row, t.value});
      }
      // - G_ab alpha_b
      for (const auto& t : gm.entries()) {
        if (t.row != a) continue;
        for (std::int64_t r = 0; r < big_n; ++r) entries.push_back({row0 + r, t.col * big_n + r, -t.value});
      }
    }
  }

  std::vector<bool> admissible(static_cast<std::size_t>(n * big_n), true);
  if (options.reflection_parity) {
    for (int b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < basis->size(); ++c) {
        bool ok = true;
        for (int j = 0; j < n && ok; ++j) ok = (basis->axis_degree(c, j) % 2) == (j == b ? 1 : 0);
        admissible[static_cast<std::size_t>(b * big_n) + c] = ok;
      }
    }
  }

  const auto rows = static_cast<std::int64_t>(gens.size()) * n * big_n;
  return {spec, basis, gens, SparseIntMatrix(rows, n * big_n, std::move(entries)), std::move(admissible), options};
}

std::pair<SparseIntMatrix, std::vector<std::int64_t>> ConstraintSystem::reduced() const {
  std::vector<std::int64_t> column_map;
  std::vector<std::int64_t> new_index(admissible.size(), -1);
  for (std::size_t c = 0; c < admissible.size(); ++c) {
    if (admissible[c]) {
      new_index[c] = static_cast<std::int64_t>(column_map.size());
      column_map.push_back(static_cast<std::int64_t>(c));
    }
  }
  std::vector<Triplet> entries;
  std::vector<std::int64_t> row_index(static_cast<std::size_t>(rotation.rows()), -1);
  std::int64_t next_row = 0;
  for (const auto& t : rotation.entries()) {
    const auto nc = new_index[static_cast<std::size_t>(t.col)];
    if (nc < 0) continue;
    auto& ri = row_index[static_cast<std::size_t>(t.row)];
    if (ri < 0) ri = next_row++;
    entries.push_back({ri, nc, t.value});
  }
  return {SparseIntMatrix(next_row, static_cast<std::int64_t>(column_map.size()), std::move(entries)),
          std::move(column_map)};
}

bool ConstraintSystem::satisfied_by(const IntVector& stacked) const {
  if (static_cast<std::int64_t>(stacked.size()) != rotation.cols()) return false;
  for (std::size_t c = 0; c < stacked.size(); ++c) {
    if (!admissible[c] && stacked[c] != 0) return false;
  }
  std::vector<BigInt> product(static_cast<std::size_t>(rotation.rows()), 0);
  for (const auto& t : rotation.entries()) {
    product[static_cast<std::size_t>(t.row)] += BigInt(t.value) * stacked[static_cast<std::size_t>(t.col)];
  }
  return std::all_of(product.begin(), product.end(), [](const BigInt& x) { return x == 0; });
}

std::vector<IntVector> exact_nullspace(const ConstraintSystem& system) {
  auto [matrix, column_map] = system.reduced();
  const auto reduced_basis = exact_nullspace(matrix);
  std::vector<IntVector> out;
  out.reserve(reduced_basis.size());
  for (const auto& v : reduced_basis) {
    IntVector full(static_cast<std::size_t>(system.rotation.cols()), 0);
    for (std::size_t k = 0; k < v.size(); ++k) full[static_cast<std::size_t>(column_map[k])] = v[k];
    out.push_back(std::move(full));
  }
  // Re-canonicalize in full coordinates (the column map is monotone, so this
  // is the same subspace representative).
  return canonical_row_basis(out);
}

IntVector TupleDefinition::stacked() const {
  IntVector out;
  for (const auto& a : alphas) {
    for (auto c : a) out.emplace_back(c);
  }
  return out;
}

Eigen::VectorXd TupleDefinition::evaluate(const Eigen::VectorXd& v) const {
  Eigen::VectorXd x(static_cast<Eigen::Index>(alphas.size()));
  for (std::size_t a = 0; a < alphas.size(); ++a) {
    if (static_cast<Eigen::Index>(alphas[a].size()) != v.size()) throw ArgumentError("basis size mismatch");
    double s = 0.0;
    for (std::size_t c = 0; c < alphas[a].size(); ++c) {
      if (alphas[a][c] != 0) s += static_cast<double>(alphas[a][c]) * v[static_cast<Eigen::Index>(c)];
    }
    x[static_cast<Eigen::Index>(a)] = s;
  }
  return x;
}

Eigen::VectorXd TupleDefinition::evaluate(const MomentSet& moments) const {
  return evaluate(evaluate_monomials(*basis, moments));
}

TupleFamily::TupleFamily(std::shared_ptr<const MonomialBasis> basis, std::vector<TupleDefinition> tuples)
    : basis_(std::move(basis)), tuples_(std::move(tuples)) {
  if (!basis_) throw ArgumentError("tuple family without basis");
  const int n = basis_->dimension();
  const auto big_n = static_cast<Eigen::Index>(basis_->size());
  coefficients_ = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(tuples_.size()) * n, big_n);
  for (std::size_t t = 0; t < tuples_.size(); ++t) {
    const auto& def = tuples_[t];
    if (def.dimension() != n) throw ArgumentError("tuple dimension does not match its basis");
    for (int a = 0; a < n; ++a) {
      const auto& alpha = def.alphas[static_cast<std::size_t>(a)];
      if (static_cast<Eigen::Index>(alpha.size()) != big_n) throw ArgumentError("alpha length does not match basis size");
      for (Eigen::Index c = 0; c < big_n; ++c) {
        coefficients_(static_cast<Eigen::Index>(t) * n + a, c) = static_cast<double>(alpha[static_cast<std::size_t>(c)]);
      }
    }
  }
}

Eigen::MatrixXd TupleFamily::evaluate(const MomentSet& moments) const {
  const Eigen::VectorXd v = evaluate_monomials(*basis_, moments);
  const Eigen::VectorXd x = coefficients_ * v;
  return x.reshaped(dimension(), static_cast<Eigen::Index>(tuples_.size())).transpose();
}

Eigen::MatrixXd TupleFamily::evaluate_magnitude(const MomentSet& moments) const {
  const Eigen::VectorXd v = evaluate_monomials(*basis_, moments).cwiseAbs();
  const Eigen::VectorXd x = coefficients_.cwiseAbs() * v;
  return x.reshaped(dimension(), static_cast<Eigen::Index>(tuples_.size())).transpose();
}

TupleFamily derive_tuples(const BasisSpec& spec, ConstraintOptions options) {
  const auto system = assemble_constraints(spec, options);
  const auto null = exact_nullspace(system);
  const int n = spec.dimension();
  const std::size_t big_n = system.basis_size();
  std::vector<TupleDefinition> tuples;
  int id = 0;
  for (const auto& v : null) {
    TupleDefinition def;
    def.basis = system.basis;
    def.id = id++;
    def.alphas.assign(static_cast<std::size_t>(n), std::vector<std::int64_t>(big_n, 0));
    for (int a = 0; a < n; ++a) {
      for (std::size_t c = 0; c < big_n; ++c) {
        const auto& x = v[static_cast<std::size_t>(a) * big_n + c];
        if (x > std::numeric_limits<std::int64_t>::max() || x < std::numeric_limits<std::int64_t>::min()) {
          throw ArgumentError("tuple coefficient exceeds 64-bit range for basis " + spec.to_string());
        }
        def.alphas[static_cast<std::size_t>(a)][c] = static_cast<std::int64_t>(x);
      }
    }
    tuples.push_back(std::move(def));
  }
  return {system.basis, std::move(tuples)};
}

std::vector<BasisSpec> default_battery_specs(int n) {
  if (n < 2) throw ArgumentError("dimension must be at least 2");
  std::vector<std::pair<int, int>> pairs;
  if (n == 2) {
    pairs = {{2, 3}, {2, 5}, {4, 3}, {4, 5}, {6, 3}, {6, 5}, {6, 7}, {6, 9}, {8, 7}, {8, 9}};
  } else {
    pairs = {{2, 3}, {2, 5}, {4, 3}, {4, 5}};
  }
  std::vector<BasisSpec> out;
  for (auto [p, q] : pairs) out.emplace_back(n, std::vector<BasisFactor>{{p, 1}, {q, 1}});
  return out;
}

TupleBattery derive_battery(const std::vector<BasisSpec>& specs, ConstraintOptions options) {
  TupleBattery out;
  for (const auto& s : specs) out.push_back(derive_tuples(s, options));
  return out;
}

std::vector<int> required_orders(const TupleBattery& battery) {
  std::set<int> orders;
  for (const auto& f : battery) {
    for (int p : f.spec().orders()) orders.insert(p);
  }
  return {orders.begin(), orders.end()};
}

double verify_equivariance(const TupleDefinition& def, const PointCloud& cloud, const Eigen::MatrixXd& rotation) {
  const int n = def.dimension();
  if (rotation.rows() != n || rotation.cols() != n) throw ArgumentError("rotation must be n x n");
  if ((rotation * rotation.transpose() - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-10) {
    throw ArgumentError("matrix is not orthogonal");
  }
  if (rotation.determinant() < 0.0) {
    throw ArgumentError("matrix has determinant -1; reflections are checked through reflection parity");
  }
  const auto orders = def.basis->spec().orders();
  const auto before = def.evaluate(compute_central_moments(cloud, orders));
  const auto after = def.evaluate(compute_central_moments(cloud.transformed(rotation), orders));
  const double denom = std::max(before.norm(), std::numeric_limits<double>::min());
  return (after - rotation * before).norm() / denom;
}

}  // namespace mtuple
