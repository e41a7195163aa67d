#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <vector>

namespace mtuple {

struct Neighbor {
  std::size_t index = 0;
  double squared_distance = 0.0;
};

/// Static k-d tree for exact Euclidean nearest-neighbour queries.
///
/// Holds a copy of the points (n x M, column per point). Ties between
/// equidistant points resolve to whichever is visited first.
class KdTree {
 public:
  explicit KdTree(Eigen::MatrixXd points, std::size_t leaf_size = 8);

  [[nodiscard]] int dimension() const { return static_cast<int>(points_.rows()); }
  [[nodiscard]] std::size_t size() const { return static_cast<std::size_t>(points_.cols()); }
  [[nodiscard]] const Eigen::MatrixXd& points() const { return points_; }

  [[nodiscard]] Neighbor nearest(const Eigen::Ref<const Eigen::VectorXd>& query) const;

 private:
  struct Node {
    int axis = -1;  // -1 for leaves
    double split = 0.0;
    std::size_t begin = 0;  // range into order_ (leaves)
    std::size_t end = 0;
    std::size_t left = 0;
    std::size_t right = 0;
  };

  std::size_t build(std::size_t begin, std::size_t end);
  void search(std::size_t node, const Eigen::Ref<const Eigen::VectorXd>& q, Neighbor& best) const;

  Eigen::MatrixXd points_;
  std::size_t leaf_size_;
  std::vector<std::size_t> order_;
  std::vector<Node> nodes_;
};

/// Brute-force nearest neighbour, the reference for KdTree.
Neighbor linear_scan_nearest(const Eigen::MatrixXd& points, const Eigen::Ref<const Eigen::VectorXd>& query);

}  // namespace mtuple
