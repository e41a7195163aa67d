#include "mtuple/kd_tree.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "mtuple/errors.hpp"

namespace mtuple {

KdTree::KdTree(Eigen::MatrixXd points, std::size_t leaf_size)
    : points_(std::move(points)), leaf_size_(std::max<std::size_t>(leaf_size, 1)) {
  if (points_.cols() == 0) throw ArgumentError("neighbour index over an empty cloud");
  order_.resize(static_cast<std::size_t>(points_.cols()));
  std::iota(order_.begin(), order_.end(), std::size_t{0});
  nodes_.reserve(2 * order_.size() / leaf_size_ + 1);
  build(0, order_.size());
}

std::size_t KdTree::build(std::size_t begin, std::size_t end) {
  const std::size_t id = nodes_.size();
  nodes_.push_back({});
  if (end - begin <= leaf_size_) {
    nodes_[id].begin = begin;
    nodes_[id].end = end;
    return id;
  }
  // split on the widest extent
  Eigen::VectorXd lo = Eigen::VectorXd::Constant(points_.rows(), std::numeric_limits<double>::infinity());
  Eigen::VectorXd hi = -lo;
  for (std::size_t i = begin; i < end; ++i) {
    const auto c = points_.col(static_cast<Eigen::Index>(order_[i]));
    lo = lo.cwiseMin(c);
    hi = hi.cwiseMax(c);
  }
  Eigen::Index axis = 0;
  (hi - lo).maxCoeff(&axis);
  const std::size_t mid = begin + (end - begin) / 2;
  std::nth_element(order_.begin() + static_cast<std::ptrdiff_t>(begin), order_.begin() + static_cast<std::ptrdiff_t>(mid),
                   order_.begin() + static_cast<std::ptrdiff_t>(end), [&](std::size_t a, std::size_t b) {
                     return points_(axis, static_cast<Eigen::Index>(a)) < points_(axis, static_cast<Eigen::Index>(b));
                   });
  const double split = points_(axis, static_cast<Eigen::Index>(order_[mid]));
  const std::size_t left = build(begin, mid);
  const std::size_t right = build(mid, end);
  nodes_[id].axis = static_cast<int>(axis);
  nodes_[id].split = split;
  nodes_[id].left = left;
  nodes_[id].right = right;
  return id;
}

void KdTree::search(std::size_t node_id, const Eigen::Ref<const Eigen::VectorXd>& q, Neighbor& best) const {
  const Node& node = nodes_[node_id];
  if (node.axis < 0) {
    for (std::size_t i = node.begin; i < node.end; ++i) {
      const double d = (points_.col(static_cast<Eigen::Index>(order_[i])) - q).squaredNorm();
      if (d < best.squared_distance) best = {order_[i], d};
    }
    return;
  }
  const double diff = q[node.axis] - node.split;
  // left holds coordinates <= split, right >= split
  const std::size_t near = diff < 0.0 ? node.left : node.right;
  const std::size_t far = diff < 0.0 ? node.right : node.left;
  search(near, q, best);
  if (diff * diff <= best.squared_distance) search(far, q, best);
}

Neighbor KdTree::nearest(const Eigen::Ref<const Eigen::VectorXd>& query) const {
  if (query.size() != points_.rows()) throw ArgumentError("query dimension mismatch");
  Neighbor best{0, std::numeric_limits<double>::infinity()};
  search(0, query, best);
  return best;
}

Neighbor linear_scan_nearest(const Eigen::MatrixXd& points, const Eigen::Ref<const Eigen::VectorXd>& query) {
  if (points.cols() == 0) throw ArgumentError("nearest neighbour in an empty set");
  Neighbor best{0, std::numeric_limits<double>::infinity()};
  for (Eigen::Index i = 0; i < points.cols(); ++i) {
    const double d = (points.col(i) - query).squaredNorm();
    if (d < best.squared_distance) best = {static_cast<std::size_t>(i), d};
  }
  return best;
}

}  // namespace mtuple
