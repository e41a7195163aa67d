#include "mtuple/sparse_int_matrix.hpp"

#include <algorithm>
#include <map>

#include "mtuple/errors.hpp"

namespace mtuple {

SparseIntMatrix::SparseIntMatrix(std::int64_t rows, std::int64_t cols, std::vector<Triplet> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows < 0 || cols < 0) throw ArgumentError("negative matrix size");
  for (const auto& t : entries_) {
    if (t.row < 0 || t.row >= rows_ || t.col < 0 || t.col >= cols_) {
      throw ArgumentError("triplet outside matrix bounds");
    }
  }
  compress();
}

void SparseIntMatrix::compress() {
  std::sort(entries_.begin(), entries_.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  std::vector<Triplet> merged;
  merged.reserve(entries_.size());
  for (const auto& t : entries_) {
    if (!merged.empty() && merged.back().row == t.row && merged.back().col == t.col) {
      merged.back().value += t.value;
    } else {
      merged.push_back(t);
    }
  }
  std::erase_if(merged, [](const Triplet& t) { return t.value == 0; });
  entries_ = std::move(merged);
}

std::int64_t SparseIntMatrix::coeff(std::int64_t r, std::int64_t c) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), Triplet{r, c, 0},
                             [](const Triplet& a, const Triplet& b) {
                               return a.row != b.row ? a.row < b.row : a.col < b.col;
                             });
  return (it != entries_.end() && it->row == r && it->col == c) ? it->value : 0;
}

SparseIntMatrix SparseIntMatrix::transpose() const {
  std::vector<Triplet> t;
  t.reserve(entries_.size());
  for (const auto& e : entries_) t.push_back({e.col, e.row, e.value});
  return {cols_, rows_, std::move(t)};
}

Eigen::MatrixXd SparseIntMatrix::to_dense() const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows_, cols_);
  for (const auto& e : entries_) m(e.row, e.col) = static_cast<double>(e.value);
  return m;
}

Eigen::VectorXd SparseIntMatrix::multiply(const Eigen::VectorXd& x) const {
  if (x.size() != cols_) throw ArgumentError("sparse multiply: dimension mismatch");
  Eigen::VectorXd y = Eigen::VectorXd::Zero(rows_);
  for (const auto& e : entries_) y[e.row] += static_cast<double>(e.value) * x[e.col];
  return y;
}

SparseIntMatrix SparseIntMatrix::operator*(const SparseIntMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw ArgumentError("sparse product: dimension mismatch");
  std::map<std::int64_t, std::vector<const Triplet*>> rhs_rows;
  for (const auto& e : rhs.entries_) rhs_rows[e.row].push_back(&e);
  std::vector<Triplet> out;
  for (const auto& a : entries_) {
    auto it = rhs_rows.find(a.col);
    if (it == rhs_rows.end()) continue;
    for (const Triplet* b : it->second) out.push_back({a.row, b->col, a.value * b->value});
  }
  return {rows_, rhs.cols_, std::move(out)};
}

SparseIntMatrix SparseIntMatrix::operator-(const SparseIntMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw ArgumentError("sparse difference: shape mismatch");
  std::vector<Triplet> out(entries_.begin(), entries_.end());
  for (const auto& e : rhs.entries_) out.push_back({e.row, e.col, -e.value});
  return {rows_, cols_, std::move(out)};
}

SparseIntMatrix SparseIntMatrix::operator*(std::int64_t s) const {
  std::vector<Triplet> out(entries_.begin(), entries_.end());
  for (auto& e : out) e.value *= s;
  return {rows_, cols_, std::move(out)};
}

}  // namespace mtuple
