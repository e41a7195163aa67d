#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "mtuple/errors.hpp"
#include "mtuple/moments.hpp"
#include "mtuple/multi_index.hpp"
#include "mtuple/point_cloud.hpp"
#include "support.hpp"

using namespace mtuple;

TEST_CASE("multi-index enumeration sizes and order") {
  CHECK(enumerate_multi_indices(3, 2).size() == 6);
  CHECK(enumerate_multi_indices(3, 3).size() == 10);
  const auto zero = enumerate_multi_indices(2, 0);
  REQUIRE(zero.size() == 1);
  CHECK(zero[0].exponents() == std::vector<int>{0, 0});

  // listing order used for the third-order moments
  const auto third = enumerate_multi_indices(3, 3);
  std::vector<std::string> labels;
  for (const auto& m : third) labels.push_back(m.label());
  CHECK(labels == std::vector<std::string>{"m300", "m210", "m201", "m120", "m111", "m102", "m030", "m021", "m012",
                                           "m003"});
  CHECK(enumerate_multi_indices(3, 3) == third);
}

TEST_CASE("multi-index count law against the closed form") {
  for (int n = 2; n <= 4; ++n) {
    for (int p = 0; p <= 9; ++p) {
      const auto idx = enumerate_multi_indices(n, p);
      CHECK(idx.size() == oracle::binomial(p + n - 1, n - 1));
      CHECK(multi_index_count(n, p) == idx.size());
      for (const auto& m : idx) CHECK(m.order() == p);
      CHECK(std::adjacent_find(idx.begin(), idx.end()) == idx.end());
    }
  }
}

TEST_CASE("multi-index arguments are validated") {
  CHECK_THROWS_AS(enumerate_multi_indices(1, 2), ArgumentError);
  CHECK_THROWS_AS(enumerate_multi_indices(3, -1), ArgumentError);
}

TEST_CASE("raw moments: single point and symmetric pair") {
  const PointCloud one(Eigen::Vector3d(2, 0, 0));
  const auto m = compute_raw_moments(one, 2);
  CHECK(m.at({2, 0, 0}) == 4.0);
  double others = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) others += std::abs(m[i]);
  CHECK(others == 4.0);

  Eigen::MatrixXd pair(2, 2);
  pair << 1, -1, 0, 0;
  const auto m1 = compute_raw_moments(PointCloud(pair), 1);
  CHECK(m1.at({1, 0}) == 0.0);
  CHECK(m1.at({0, 1}) == 0.0);
}

TEST_CASE("raw moments match direct summation") {
  oracle::Rng rng(11);
  for (const int n : {2, 3, 4}) {
    const Eigen::MatrixXd pts = oracle::random_points(n, 5, rng);
    Eigen::VectorXd w(5);
    w << 1.0, 0.5, 2.0, 1.5, 0.25;
    const PointCloud cloud(pts, w);
    for (int p = 0; p <= 7; ++p) {
      const auto m = compute_raw_moments(cloud, p);
      const auto& table = m.table();
      for (std::size_t i = 0; i < m.size(); ++i) {
        const double expected = oracle::moment(pts, w, table.at(i).exponents());
        CHECK(std::abs(m[i] - expected) <= 1e-12 * std::max(1.0, std::abs(expected)));
      }
    }
  }
}

TEST_CASE("gravity centre") {
  Eigen::MatrixXd two(2, 2);
  two << 0, 2, 0, 0;
  CHECK(gravity_center(PointCloud(two)).isApprox(Eigen::Vector2d(1, 0)));

  Eigen::MatrixXd wpts(2, 2);
  wpts << 0, 4, 0, 0;
  CHECK(gravity_center(PointCloud(wpts, Eigen::Vector2d(3, 1))).isApprox(Eigen::Vector2d(1, 0)));

  oracle::Rng rng(3);
  const auto c = oracle::random_cloud(3, 50, rng).translated(Eigen::Vector3d(5, -2, 7));
  CHECK(gravity_center(centered(c)).norm() < 1e-12);

  CHECK_THROWS_AS(gravity_center(PointCloud(Eigen::MatrixXd(3, 0))), ArgumentError);
}

TEST_CASE("central moments: first order vanishes, translation invariance") {
  oracle::Rng rng(5);
  for (const int n : {2, 3}) {
    const auto cloud = oracle::random_cloud(n, 40, rng);
    const auto m1 = compute_central_moments(cloud, 1);
    for (std::size_t i = 0; i < m1.size(); ++i) CHECK(std::abs(m1[i]) < 1e-12);

    Eigen::VectorXd t(n);
    for (int j = 0; j < n; ++j) t[j] = 3.0 * (j + 1) - 4.0;
    const auto moved = cloud.translated(t);
    for (int p = 0; p <= 7; ++p) {
      const auto a = compute_central_moments(cloud, p);
      const auto b = compute_central_moments(moved, p);
      // cancellation-free size of the order-p moments
      const std::vector<int> order{p};
      const auto abs_m = compute_absolute_moments(cloud, order).at(p);
      double scale = 0.0;
      for (std::size_t i = 0; i < abs_m.size(); ++i) scale = std::max(scale, abs_m[i]);
      for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) <= 1e-9 * scale);
    }
  }
}

TEST_CASE("central moments equal raw moments of the shifted points") {
  oracle::Rng rng(8);
  const Eigen::MatrixXd pts = oracle::random_points(2, 10, rng) + Eigen::MatrixXd::Constant(2, 10, 3.0);
  const Eigen::VectorXd w = Eigen::VectorXd::Ones(10);
  const Eigen::Vector2d g = pts.rowwise().mean();
  const Eigen::MatrixXd shifted = pts.colwise() - g;
  const auto m = compute_central_moments(PointCloud(pts), 3);
  for (std::size_t i = 0; i < m.size(); ++i) {
    CHECK(m[i] == doctest::Approx(oracle::moment(shifted, w, m.table().at(i).exponents())).epsilon(1e-10));
  }
}

TEST_CASE("weight linearity and permutation invariance") {
  oracle::Rng rng(9);
  const Eigen::MatrixXd pts = oracle::random_points(3, 30, rng);
  const PointCloud a(pts);
  const PointCloud b(pts, Eigen::VectorXd::Constant(30, 2.0));
  std::vector<Eigen::Index> perm(30);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  Eigen::MatrixXd shuffled(3, 30);
  for (Eigen::Index i = 0; i < 30; ++i) shuffled.col(i) = pts.col(perm[static_cast<std::size_t>(i)]);
  const PointCloud c(shuffled);
  for (int p = 0; p <= 6; ++p) {
    const auto ma = compute_raw_moments(a, p);
    const auto mb = compute_raw_moments(b, p);
    const auto mc = compute_raw_moments(c, p);
    double scale = 0.0;
    for (std::size_t i = 0; i < ma.size(); ++i) scale = std::max(scale, std::abs(ma[i]));
    for (std::size_t i = 0; i < ma.size(); ++i) {
      CHECK(mb[i] == 2.0 * ma[i]);
      CHECK(std::abs(ma[i] - mc[i]) <= 1e-12 * scale);
    }
  }
}

TEST_CASE("image to cloud uses pixel centres") {
  DensityImage img{2, 2, {1, 0, 0, 0}};
  const auto c = image_to_cloud(img, 0.5);
  REQUIRE(c.size() == 1);
  CHECK(c.point(0).isApprox(Eigen::Vector2d(0.5, 0.5)));

  DensityImage ones{4, 4, std::vector<double>(16, 1.0)};
  const auto all = image_to_cloud(ones);
  CHECK(all.size() == 16);
  CHECK(gravity_center(all).isApprox(Eigen::Vector2d(2, 2)));

  DensityImage blank{3, 3, std::vector<double>(9, 0.2)};
  CHECK_THROWS_AS(image_to_cloud(blank, 0.5), DegenerateInputError);
  CHECK_THROWS_AS(image_to_cloud(ones, 1.5), ArgumentError);
}

TEST_CASE("rendered rectangle matches analytic moments") {
  const int w = 40, h = 24;
  DensityImage img{64, 48, std::vector<double>(64 * 48, 0.0)};
  for (int r = 10; r < 10 + h; ++r) {
    for (int c = 7; c < 7 + w; ++c) img.pixels[static_cast<std::size_t>(r * 64 + c)] = 1.0;
  }
  const auto cloud = image_to_cloud(img);
  for (int p = 0; p <= 4; p += 2) {
    for (int q = 0; q <= 4 - p; q += 2) {
      const double got = compute_central_moments(cloud, p + q).at({p, q});
      const double want = oracle::rectangle_central_moment(w, h, p, q);
      CHECK(std::abs(got - want) <= 0.02 * want);
    }
  }
}

TEST_CASE("scale normalization") {
  oracle::Rng rng(4);
  Eigen::MatrixXd circle(2, 64);
  for (int i = 0; i < 64; ++i) circle.col(i) << std::cos(i * 2 * M_PI / 64), std::sin(i * 2 * M_PI / 64);
  const auto unit = normalize_scale(PointCloud(circle));
  CHECK(unit.scale == doctest::Approx(1.0).epsilon(1e-12));
  CHECK((unit.cloud.points() - circle).norm() < 1e-12);

  const auto cloud = centered(oracle::random_cloud(3, 100, rng));
  const auto a = normalize_scale(cloud);
  const auto b = normalize_scale(cloud.scaled(10.0));
  CHECK(b.scale == doctest::Approx(10.0 * a.scale).epsilon(1e-12));
  CHECK(std::abs(rms_radius(a.cloud) - 1.0) < 1e-12);

  CHECK_THROWS_AS(normalize_scale(PointCloud(Eigen::MatrixXd::Zero(3, 4))), DegenerateInputError);
}

TEST_CASE("point cloud validation") {
  CHECK_THROWS_AS(PointCloud(Eigen::MatrixXd::Zero(1, 3)), ArgumentError);
  CHECK_THROWS_AS(PointCloud(Eigen::MatrixXd::Zero(2, 3), Eigen::VectorXd::Ones(2)), ArgumentError);
  CHECK_THROWS_AS(PointCloud(Eigen::MatrixXd::Zero(2, 2), Eigen::Vector2d(1, -1)), ArgumentError);
  CHECK_THROWS_AS(compute_raw_moments(PointCloud(Eigen::MatrixXd(2, 0)), 2), ArgumentError);
}

TEST_CASE("reflected moments follow the coordinate sign law") {
  oracle::Rng rng(12);
  const auto cloud = oracle::random_cloud(3, 30, rng);
  const std::vector<int> orders{2, 3};
  const auto m = compute_central_moments(cloud, orders);
  Eigen::Matrix3d f = Eigen::Matrix3d::Identity();
  f(1, 1) = -1;
  const auto direct = compute_central_moments(cloud.transformed(f), orders);
  const auto law = reflect_moments(m, 1);
  for (const int p : orders) {
    for (std::size_t i = 0; i < m.at(p).size(); ++i) {
      CHECK(law.at(p)[i] == doctest::Approx(direct.at(p)[i]).epsilon(1e-12));
    }
  }
}
