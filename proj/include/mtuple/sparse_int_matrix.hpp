#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <span>
#include <vector>

namespace mtuple {

struct Triplet {
  std::int64_t row = 0;
  std::int64_t col = 0;
  std::int64_t value = 0;
  friend bool operator==(const Triplet&, const Triplet&) = default;
};

/// Exact integer matrix in coordinate (triplet) form.
///
/// After `compress()` triplets are sorted row-major, duplicates are summed and
/// zeros dropped; every constructor path ends compressed.
class SparseIntMatrix {
 public:
  SparseIntMatrix() = default;
  SparseIntMatrix(std::int64_t rows, std::int64_t cols, std::vector<Triplet> entries = {});

  [[nodiscard]] std::int64_t rows() const { return rows_; }
  [[nodiscard]] std::int64_t cols() const { return cols_; }
  [[nodiscard]] std::span<const Triplet> entries() const { return entries_; }
  [[nodiscard]] std::size_t nonzeros() const { return entries_.size(); }

  /// Value at (r, c); zero when absent.
  [[nodiscard]] std::int64_t coeff(std::int64_t r, std::int64_t c) const;

  [[nodiscard]] SparseIntMatrix transpose() const;
  [[nodiscard]] Eigen::MatrixXd to_dense() const;
  [[nodiscard]] Eigen::VectorXd multiply(const Eigen::VectorXd& x) const;
  [[nodiscard]] SparseIntMatrix operator*(const SparseIntMatrix& rhs) const;
  [[nodiscard]] SparseIntMatrix operator-(const SparseIntMatrix& rhs) const;
  [[nodiscard]] SparseIntMatrix operator*(std::int64_t s) const;

  friend bool operator==(const SparseIntMatrix&, const SparseIntMatrix&) = default;

 private:
  void compress();

  std::int64_t rows_ = 0;
  std::int64_t cols_ = 0;
  std::vector<Triplet> entries_;
};

}  // namespace mtuple
