#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace mtuple {

/// Exponent vector (p_1, ..., p_n) naming the moment m_{p_1...p_n}.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> exponents);

  [[nodiscard]] std::size_t dimension() const { return exponents_.size(); }
  [[nodiscard]] int order() const { return order_; }
  [[nodiscard]] int operator[](std::size_t i) const { return exponents_[i]; }
  [[nodiscard]] const std::vector<int>& exponents() const { return exponents_; }

  /// "m210" when every exponent is a single digit, "m(10,0,1)" otherwise.
  [[nodiscard]] std::string label() const;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend auto operator<=>(const MultiIndex& a, const MultiIndex& b) {
    return a.exponents_ <=> b.exponents_;
  }

 private:
  std::vector<int> exponents_;
  int order_ = 0;
};

/// All multi-indices of order p in dimension n, in canonical order.
///
/// Canonical order is descending lexicographic on the exponent vector, so the
/// first entry is (p,0,...,0) and the last is (0,...,0,p); for n = 3, p = 3
/// this reads m300, m210, m201, m120, m111, m102, m030, m021, m012, m003.
std::vector<MultiIndex> enumerate_multi_indices(int n, int p);

/// Closed-form count C(p+n-1, n-1).
std::size_t multi_index_count(int n, int p);

/// Enumeration of one (n, p) pair with O(log) position lookup.
class MultiIndexTable {
 public:
  MultiIndexTable(int n, int p);

  [[nodiscard]] int dimension() const { return n_; }
  [[nodiscard]] int order() const { return p_; }
  [[nodiscard]] std::size_t size() const { return indices_.size(); }
  [[nodiscard]] const MultiIndex& at(std::size_t pos) const { return indices_.at(pos); }
  [[nodiscard]] const std::vector<MultiIndex>& indices() const { return indices_; }

  /// Position of `exponents` in canonical order; throws ArgumentError if the
  /// vector does not belong to this (n, p).
  [[nodiscard]] std::size_t position(const std::vector<int>& exponents) const;

 private:
  int n_;
  int p_;
  std::vector<MultiIndex> indices_;
  std::map<std::vector<int>, std::size_t> lookup_;
};

}  // namespace mtuple
