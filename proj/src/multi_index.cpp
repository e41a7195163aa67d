#include "mtuple/multi_index.hpp"

#include <numeric>

#include "mtuple/errors.hpp"

namespace mtuple {

MultiIndex::MultiIndex(std::vector<int> exponents) : exponents_(std::move(exponents)) {
  for (int e : exponents_) {
    if (e < 0) throw ArgumentError("multi-index exponents must be non-negative");
  }
  order_ = std::accumulate(exponents_.begin(), exponents_.end(), 0);
}

std::string MultiIndex::label() const {
  bool single_digit = true;
  for (int e : exponents_) single_digit = single_digit && e < 10;
  std::string out = "m";
  if (single_digit) {
    for (int e : exponents_) out += static_cast<char>('0' + e);
    return out;
  }
  out += '(';
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(exponents_[i]);
  }
  out += ')';
  return out;
}

namespace {

void enumerate_rec(std::vector<int>& current, std::size_t slot, int remaining,
                   std::vector<MultiIndex>& out) {
  if (slot + 1 == current.size()) {
    current[slot] = remaining;
    out.emplace_back(current);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    current[slot] = e;
    enumerate_rec(current, slot + 1, remaining - e, out);
  }
}

}  // namespace

std::vector<MultiIndex> enumerate_multi_indices(int n, int p) {
  if (n < 2) throw ArgumentError("dimension must be at least 2, got " + std::to_string(n));
  if (p < 0) throw ArgumentError("moment order must be non-negative, got " + std::to_string(p));
  std::vector<MultiIndex> out;
  out.reserve(multi_index_count(n, p));
  std::vector<int> current(static_cast<std::size_t>(n), 0);
  enumerate_rec(current, 0, p, out);
  return out;
}

std::size_t multi_index_count(int n, int p) {
  if (n < 1 || p < 0) return 0;
  // C(p+n-1, n-1) computed incrementally; each partial product is itself a
  // binomial coefficient so the division is exact.
  std::size_t result = 1;
  const auto k = static_cast<std::size_t>(n - 1);
  for (std::size_t i = 1; i <= k; ++i) {
    result = result * (static_cast<std::size_t>(p) + i) / i;
  }
  return result;
}

MultiIndexTable::MultiIndexTable(int n, int p)
    : n_(n), p_(p), indices_(enumerate_multi_indices(n, p)) {
  for (std::size_t i = 0; i < indices_.size(); ++i) lookup_.emplace(indices_[i].exponents(), i);
}

std::size_t MultiIndexTable::position(const std::vector<int>& exponents) const {
  auto it = lookup_.find(exponents);
  if (it == lookup_.end()) throw ArgumentError("multi-index not of the table's dimension/order");
  return it->second;
}

}  // namespace mtuple
