#include "mtuple/monomial_basis.hpp"

#include <algorithm>
#include <charconv>

#include "mtuple/errors.hpp"

namespace mtuple {

BasisSpec::BasisSpec(int dimension, std::vector<BasisFactor> factors) : dimension_(dimension) {
  if (dimension < 2) throw ArgumentError("dimension must be at least 2");
  if (factors.empty()) throw ArgumentError("basis specification needs at least one factor");
  for (const auto& f : factors) {
    if (f.order < 1) throw ArgumentError("factor order must be >= 1, got " + std::to_string(f.order));
    if (f.degree < 1) throw ArgumentError("factor degree must be >= 1, got " + std::to_string(f.degree));
  }
  std::sort(factors.begin(), factors.end());
  for (const auto& f : factors) {
    if (!factors_.empty() && factors_.back().order == f.order) {
      factors_.back().degree += f.degree;
    } else {
      factors_.push_back(f);
    }
  }
}

BasisSpec BasisSpec::parse(int dimension, std::string_view text) {
  std::vector<BasisFactor> factors;
  auto parse_int = [&](std::string_view s) {
    int v = 0;
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end || s.empty()) {
      throw ArgumentError("malformed basis spec '" + std::string(text) + "': expected p:k[,p:k...]");
    }
    return v;
  };
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    auto item = text.substr(start, comma - start);
    auto colon = item.find(':');
    if (colon == std::string_view::npos) {
      throw ArgumentError("malformed basis spec '" + std::string(text) + "': expected p:k[,p:k...]");
    }
    factors.push_back({parse_int(item.substr(0, colon)), parse_int(item.substr(colon + 1))});
    start = comma + 1;
  }
  return {dimension, std::move(factors)};
}

int BasisSpec::total_degree() const {
  int d = 0;
  for (const auto& f : factors_) d += f.order * f.degree;
  return d;
}

int BasisSpec::monomial_degree() const {
  int d = 0;
  for (const auto& f : factors_) d += f.degree;
  return d;
}

std::vector<int> BasisSpec::orders() const {
  std::vector<int> out;
  for (const auto& f : factors_) out.push_back(f.order);
  return out;
}

std::string BasisSpec::to_string() const {
  std::string out;
  for (const auto& f : factors_) {
    if (!out.empty()) out += ',';
    out += std::to_string(f.order) + ":" + std::to_string(f.degree);
  }
  return out;
}

namespace {

// Non-decreasing k-tuples from [0, size).
void multisets(int size, int k, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  const int lo = cur.empty() ? 0 : cur.back();
  for (int v = lo; v < size; ++v) {
    cur.push_back(v);
    multisets(size, k, cur, out);
    cur.pop_back();
  }
}

}  // namespace

MonomialBasis::MonomialBasis(BasisSpec spec) : spec_(std::move(spec)) {
  if (spec_.factors().empty()) throw ArgumentError("empty basis specification");
  const int n = spec_.dimension();
  std::vector<std::vector<std::vector<int>>> per_factor;
  for (const auto& f : spec_.factors()) {
    auto table = multi_index_table(n, f.order);
    tables_.emplace(f.order, table);
    const std::size_t begin = slot_order_.size();
    for (int i = 0; i < f.degree; ++i) slot_order_.push_back(f.order);
    factor_slots_.emplace_back(begin, slot_order_.size());
    std::vector<std::vector<int>> combos;
    std::vector<int> cur;
    multisets(static_cast<int>(table->size()), f.degree, cur, combos);
    per_factor.push_back(std::move(combos));
  }
  // Cartesian product, first factor slowest.
  std::vector<std::size_t> counter(per_factor.size(), 0);
  while (true) {
    std::vector<int> slots;
    slots.reserve(slot_order_.size());
    for (std::size_t f = 0; f < per_factor.size(); ++f) {
      const auto& c = per_factor[f][counter[f]];
      slots.insert(slots.end(), c.begin(), c.end());
    }
    lookup_.emplace(slots, monomials_.size());
    monomials_.push_back(std::move(slots));
    std::size_t f = per_factor.size();
    while (f > 0) {
      --f;
      if (++counter[f] < per_factor[f].size()) break;
      counter[f] = 0;
      if (f == 0) return;
    }
    if (per_factor.empty()) return;
  }
}

void MonomialBasis::canonicalize(std::vector<int>& slots) const {
  for (const auto& [b, e] : factor_slots_) {
    std::sort(slots.begin() + static_cast<std::ptrdiff_t>(b), slots.begin() + static_cast<std::ptrdiff_t>(e));
  }
}

std::vector<MultiIndex> MonomialBasis::factors_of(std::size_t i) const {
  const auto& slots = monomials_.at(i);
  std::vector<MultiIndex> out;
  out.reserve(slots.size());
  for (std::size_t s = 0; s < slots.size(); ++s) {
    out.push_back(tables_.at(slot_order_[s])->at(static_cast<std::size_t>(slots[s])));
  }
  return out;
}

std::string MonomialBasis::label(std::size_t i) const {
  std::string out;
  for (const auto& m : factors_of(i)) {
    if (!out.empty()) out += '*';
    out += m.label();
  }
  return out;
}

int MonomialBasis::axis_degree(std::size_t i, int axis) const {
  int d = 0;
  for (const auto& m : factors_of(i)) d += m[static_cast<std::size_t>(axis)];
  return d;
}

std::size_t MonomialBasis::find(std::vector<int> slots) const {
  canonicalize(slots);
  auto it = lookup_.find(slots);
  if (it == lookup_.end()) throw ArgumentError("monomial not in basis " + spec_.to_string());
  return it->second;
}

std::size_t MonomialBasis::find(const std::vector<MultiIndex>& factors) const {
  if (factors.size() != slot_order_.size()) {
    throw ArgumentError("monomial has " + std::to_string(factors.size()) + " factors, basis expects " +
                        std::to_string(slot_order_.size()));
  }
  // Assign each moment to a slot of matching order.
  std::map<int, std::vector<int>> by_order;
  for (const auto& m : factors) {
    if (static_cast<int>(m.dimension()) != dimension()) throw ArgumentError("moment dimension mismatch");
    auto it = tables_.find(m.order());
    if (it == tables_.end()) throw ArgumentError("moment " + m.label() + " has an order absent from the basis");
    by_order[m.order()].push_back(static_cast<int>(it->second->position(m.exponents())));
  }
  std::vector<int> slots;
  for (std::size_t s = 0; s < slot_order_.size();) {
    auto& list = by_order[slot_order_[s]];
    const auto& [b, e] = *std::find_if(factor_slots_.begin(), factor_slots_.end(),
                                       [&](const auto& r) { return r.first == s; });
    if (list.size() != e - b) throw ArgumentError("monomial factor orders do not match the basis");
    slots.insert(slots.end(), list.begin(), list.end());
    s = e;
  }
  return find(std::move(slots));
}

MonomialBasis build_monomial_basis(const BasisSpec& spec) { return MonomialBasis(spec); }

MonomialOperator build_monomial_operator(std::shared_ptr<const MonomialBasis> basis, GeneratorId g) {
  if (!basis) throw ArgumentError("null basis");
  const int n = basis->dimension();
  validate_generator(n, g);

  // Per order, the moment operator rows as (target position, coefficient) lists.
  std::map<int, std::vector<std::vector<std::pair<int, std::int64_t>>>> rows;
  for (const auto& f : basis->spec().factors()) {
    const auto op = moment_rotation_generator(n, f.order, g);
    auto& r = rows[f.order];
    r.resize(static_cast<std::size_t>(op.matrix.rows()));
    for (const auto& t : op.matrix.entries()) {
      r[static_cast<std::size_t>(t.row)].emplace_back(static_cast<int>(t.col), t.value);
    }
  }

  std::vector<Triplet> entries;
  for (std::size_t i = 0; i < basis->size(); ++i) {
    const auto& slots = basis->monomial(i);
    for (std::size_t s = 0; s < slots.size(); ++s) {
      const auto& r = rows.at(basis->slot_order(s))[static_cast<std::size_t>(slots[s])];
      for (const auto& [target, coef] : r) {
        auto next = slots;
        next[s] = target;
        entries.push_back({static_cast<std::int64_t>(i), static_cast<std::int64_t>(basis->find(std::move(next))), coef});
      }
    }
  }
  const auto size = static_cast<std::int64_t>(basis->size());
  return {g, basis, SparseIntMatrix(size, size, std::move(entries))};
}

Eigen::VectorXd evaluate_monomials(const MonomialBasis& basis, const MomentSet& moments) {
  std::vector<const MomentVector*> per_slot(basis.slot_count());
  for (std::size_t s = 0; s < basis.slot_count(); ++s) {
    auto it = moments.find(basis.slot_order(s));
    if (it == moments.end()) {
      throw ArgumentError("moments of order " + std::to_string(basis.slot_order(s)) + " not supplied");
    }
    if (it->second.dimension() != basis.dimension()) throw ArgumentError("moment dimension mismatch");
    per_slot[s] = &it->second;
  }
  Eigen::VectorXd v(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto& slots = basis.monomial(i);
    double prod = 1.0;
    for (std::size_t s = 0; s < slots.size(); ++s) prod *= (*per_slot[s])[static_cast<std::size_t>(slots[s])];
    v[static_cast<Eigen::Index>(i)] = prod;
  }
  return v;
}

}  // namespace mtuple
