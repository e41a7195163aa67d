#include "mtuple/moments.hpp"

#include <mutex>
#include <string>

#include "mtuple/errors.hpp"

namespace mtuple {

std::shared_ptr<const MultiIndexTable> multi_index_table(int n, int p) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const MultiIndexTable>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{n, p}];
  if (!slot) slot = std::make_shared<const MultiIndexTable>(n, p);
  return slot;
}

MomentVector::MomentVector(int n, int p)
    : table_(multi_index_table(n, p)), values_(table_->size(), 0.0) {}

MomentVector::MomentVector(int n, int p, std::vector<double> values)
    : table_(multi_index_table(n, p)), values_(std::move(values)) {
  if (values_.size() != table_->size()) {
    throw ArgumentError("moment vector of order " + std::to_string(p) + " needs " +
                        std::to_string(table_->size()) + " values");
  }
}

namespace {

// Neumaier-compensated running sum.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      carry += (sum - t) + x;
    } else {
      carry += (x - t) + sum;
    }
    sum = t;
  }
  [[nodiscard]] double value() const { return sum + carry; }
};

constexpr int kCompensatedFromOrder = 5;

}  // namespace

MomentSet compute_raw_moments(const PointCloud& cloud, std::span<const int> orders) {
  if (cloud.empty()) throw ArgumentError("moments of an empty cloud");
  const int n = cloud.dimension();
  int max_order = 0;
  for (int p : orders) {
    if (p < 0) throw ArgumentError("moment order must be non-negative");
    max_order = std::max(max_order, p);
  }

  struct Accumulator {
    std::shared_ptr<const MultiIndexTable> table;
    std::vector<CompensatedSum> sums;
  };
  std::map<int, Accumulator> acc;
  for (int p : orders) {
    if (acc.contains(p)) continue;
    auto table = multi_index_table(n, p);
    acc.emplace(p, Accumulator{table, std::vector<CompensatedSum>(table->size())});
  }

  // powers(j, e) = x_j^e for the current point
  Eigen::MatrixXd powers(n, max_order + 1);
  const auto& pts = cloud.points();
  const auto& w = cloud.weights();
  for (Eigen::Index i = 0; i < pts.cols(); ++i) {
    for (int j = 0; j < n; ++j) {
      powers(j, 0) = 1.0;
      for (int e = 1; e <= max_order; ++e) powers(j, e) = powers(j, e - 1) * pts(j, i);
    }
    for (auto& [p, a] : acc) {
      const bool compensated = p >= kCompensatedFromOrder;
      const auto& indices = a.table->indices();
      for (std::size_t k = 0; k < indices.size(); ++k) {
        double term = w[i];
        for (int j = 0; j < n; ++j) term *= powers(j, indices[k][static_cast<std::size_t>(j)]);
        if (compensated) {
          a.sums[k].add(term);
        } else {
          a.sums[k].sum += term;
        }
      }
    }
  }

  MomentSet out;
  for (auto& [p, a] : acc) {
    std::vector<double> values(a.sums.size());
    for (std::size_t k = 0; k < values.size(); ++k) values[k] = a.sums[k].value();
    out.emplace(p, MomentVector(n, p, std::move(values)));
  }
  return out;
}

MomentSet compute_central_moments(const PointCloud& cloud, std::span<const int> orders) {
  return compute_raw_moments(centered(cloud), orders);
}

MomentSet compute_absolute_moments(const PointCloud& cloud, std::span<const int> orders) {
  const PointCloud c = centered(cloud);
  return compute_raw_moments(PointCloud(c.points().cwiseAbs(), c.weights()), orders);
}

MomentVector compute_raw_moments(const PointCloud& cloud, int p) {
  const int orders[] = {p};
  return compute_raw_moments(cloud, orders).at(p);
}

MomentVector compute_central_moments(const PointCloud& cloud, int p) {
  const int orders[] = {p};
  return compute_central_moments(cloud, orders).at(p);
}

MomentSet reflect_moments(const MomentSet& moments, int axis) {
  MomentSet out;
  for (const auto& [p, mv] : moments) {
    if (axis < 0 || axis >= mv.dimension()) throw ArgumentError("reflection axis out of range");
    MomentVector r = mv;
    for (std::size_t k = 0; k < r.size(); ++k) {
      if (mv.table().at(k)[static_cast<std::size_t>(axis)] % 2 != 0) r[k] = -r[k];
    }
    out.emplace(p, std::move(r));
  }
  return out;
}

}  // namespace mtuple
