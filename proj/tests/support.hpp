#pragma once

// Independent oracles for the test suites. Nothing here calls into the
// library's numerical code paths; results are computed the slow, direct way.

#include <Eigen/Core>
#include <Eigen/LU>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <regex>
#include <string>
#include <vector>

#include "mtuple/monomial_basis.hpp"
#include "mtuple/point_cloud.hpp"

namespace oracle {

using Rng = std::mt19937_64;

// Direct double loop: sum_i f_i prod_j x_ij^p_j.
inline double moment(const Eigen::MatrixXd& pts, const Eigen::VectorXd& w, const std::vector<int>& p) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < pts.cols(); ++i) {
    double term = w[i];
    for (std::size_t j = 0; j < p.size(); ++j) term *= std::pow(pts(static_cast<Eigen::Index>(j), i), p[j]);
    s += term;
  }
  return s;
}

inline std::uint64_t binomial(int n, int k) {
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

inline Eigen::MatrixXd random_points(int n, int m, Rng& rng, double spread = 1.0) {
  std::normal_distribution<double> g(0.0, spread);
  Eigen::MatrixXd p(n, m);
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < n; ++i) p(i, j) = g(rng);
  }
  return p;
}

// A lopsided cloud: Gaussian blob with a skewing nonlinearity so odd
// moments do not vanish.
inline mtuple::PointCloud random_cloud(int n, int m, Rng& rng) {
  Eigen::MatrixXd p = random_points(n, m, rng);
  for (int j = 0; j < m; ++j) {
    p(0, j) += 0.4 * p(1, j) * p(1, j);
    p(n - 1, j) += 0.3 * p(0, j) * p(0, j) - 0.2 * p(0, j);
  }
  return mtuple::PointCloud(std::move(p));
}

// Rotation by angle t in the coordinate plane (a, b) with x_a' = -x_b rate.
inline Eigen::MatrixXd plane_rotation(int n, int a, int b, double t) {
  Eigen::MatrixXd r = Eigen::MatrixXd::Identity(n, n);
  r(a, a) = std::cos(t);
  r(b, b) = std::cos(t);
  r(a, b) = -std::sin(t);
  r(b, a) = std::sin(t);
  return r;
}

// Gram-Schmidt on a Gaussian matrix, then det fixed to +1.
inline Eigen::MatrixXd random_rotation(int n, Rng& rng) {
  Eigen::MatrixXd g = random_points(n, n, rng);
  Eigen::MatrixXd q(n, n);
  for (int c = 0; c < n; ++c) {
    Eigen::VectorXd v = g.col(c);
    for (int k = 0; k < c; ++k) v -= q.col(k).dot(v) * q.col(k);
    q.col(c) = v.normalized();
  }
  if (q.determinant() < 0) q.col(0) = -q.col(0);
  return q;
}

// sin of the largest principal angle between the column spans of u and v
// (same dimension), via projection residuals.
inline double subspace_sine(const Eigen::MatrixXd& u, const Eigen::MatrixXd& v) {
  if (u.cols() != v.cols()) return 1.0;
  const Eigen::MatrixXd qu = Eigen::HouseholderQR<Eigen::MatrixXd>(u).householderQ() *
                             Eigen::MatrixXd::Identity(u.rows(), u.cols());
  const Eigen::MatrixXd qv = Eigen::HouseholderQR<Eigen::MatrixXd>(v).householderQ() *
                             Eigen::MatrixXd::Identity(v.rows(), v.cols());
  const Eigen::MatrixXd ru = qu - qv * (qv.transpose() * qu);
  const Eigen::MatrixXd rv = qv - qu * (qu.transpose() * qv);
  const double a = Eigen::JacobiSVD<Eigen::MatrixXd>(ru).singularValues()(0);
  const double b = Eigen::JacobiSVD<Eigen::MatrixXd>(rv).singularValues()(0);
  return std::max(a, b);
}

// "m003m101+2m011m111-..." -> coefficient vector over a degree-2 basis.
// Each term is [sign][integer]m<digits>m<digits> with one digit per axis.
inline Eigen::VectorXd parse_polynomial(const mtuple::MonomialBasis& basis, const std::string& expr) {
  const int n = basis.dimension();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(basis.size()));
  const std::regex term(R"(([+-]?)(\d*)((?:m\d+)+))");
  const std::regex moment(R"(m(\d+))");
  std::string compact;
  for (const char c : expr) {
    if (c != ' ') compact += c;
  }
  for (auto it = std::sregex_iterator(compact.begin(), compact.end(), term); it != std::sregex_iterator(); ++it) {
    const auto& m = *it;
    double c = m[2].str().empty() ? 1.0 : std::stod(m[2].str());
    if (m[1].str() == "-") c = -c;
    std::vector<mtuple::MultiIndex> factors;
    const std::string body = m[3].str();
    for (auto jt = std::sregex_iterator(body.begin(), body.end(), moment); jt != std::sregex_iterator(); ++jt) {
      const std::string digits = (*jt)[1].str();
      std::vector<int> e;
      for (int k = 0; k < n; ++k) e.push_back(digits.at(static_cast<std::size_t>(k)) - '0');
      factors.emplace_back(e);
    }
    out[static_cast<Eigen::Index>(basis.find(factors))] += c;
  }
  return out;
}

// Central moments of an axis-aligned filled w x h rectangle (continuum).
inline double rectangle_central_moment(double w, double h, int p, int q) {
  auto one = [](double len, int k) {
    if (k % 2 == 1) return 0.0;
    return 2.0 * std::pow(len / 2.0, k + 1) / (k + 1);
  };
  return one(w, p) * one(h, q);
}

// Published to four decimals; rows are not exactly orthonormal.
inline Eigen::Matrix3d published_rotation() {
  Eigen::Matrix3d r;
  r << -0.3085, 0.2118, 0.9273,
        0.8599, -0.3546, 0.3671,
        0.4066, 0.9106, -0.0727;
  return r;
}

// The printed rotation after reflection (second row negated).
inline Eigen::Matrix3d published_reflected_rotation() {
  Eigen::Matrix3d r;
  r << -0.3085, 0.2118, 0.9273,
       -0.8599, 0.3546, -0.3671,
        0.4066, 0.9106, -0.0727;
  return r;
}

// Nearest orthogonal matrix via SVD, kept separate from the library version.
inline Eigen::MatrixXd polar(const Eigen::MatrixXd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().transpose();
}

inline std::size_t linear_nearest(const Eigen::MatrixXd& pts, const Eigen::VectorXd& q, double* dist2 = nullptr) {
  std::size_t best = 0;
  double bd = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < pts.cols(); ++i) {
    double d = 0.0;
    for (Eigen::Index k = 0; k < pts.rows(); ++k) d += (pts(k, i) - q[k]) * (pts(k, i) - q[k]);
    if (d < bd) {
      bd = d;
      best = static_cast<std::size_t>(i);
    }
  }
  if (dist2) *dist2 = bd;
  return best;
}

inline double relative_error(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / scale;
}

}  // namespace oracle

// Published coefficient sets: per tuple, one polynomial per component.
namespace published {

inline const std::vector<std::vector<std::string>> kDoublets2D = {
    {"m03m11-m02m12-m02m30+m11m21", "m11m12-m03m20+m11m30-m20m21"},
    {"2m03m11-2m02m12-m02m30+m12m20", "m02m21-m03m20+2m11m30-2m20m21"},
    {"3m02m12-2m03m11+2m02m30+m20m30", "m02m03+2m03m20-2m11m30+3m20m21"},
};

inline const std::vector<std::vector<std::string>> kTriplets3D = {
    {"m003m101+m012m110+m021m101+m030m110+m101m201+m102m200+m110m210+m120m200+m200m300",
     "m003m011+m011m021+m012m020+m020m030+m011m201+m102m110+m020m210+m110m120+m110m300",
     "m002m003+m002m021+m011m012+m011m030+m002m201+m101m102+m011m210+m101m120+m101m300"},
    {"m002m120-2m011m111+m020m102+m002m300-2m101m201+m102m200+m020m300-2m110m210+m120m200",
     "m002m030-2m011m021+m012m020+m002m210+m012m200-2m101m111+m020m210+m030m200-2m110m120",
     "m002m021+m003m020-2m011m012+m002m201+m003m200-2m101m102+m020m201+m021m200-2m110m111"},
    {"m002m102+2m011m111+m020m120+2m101m201+2m110m210+m200m300",
     "m002m012+2m011m021+m020m030+2m101m111+2m110m120+m200m210",
     "m002m003+2m011m012+m020m021+2m101m102+2m110m111+m200m201"},
};

// Sums of third-order moments transforming as a point.
inline const std::vector<std::string> kWorkedTriplet = {"m300+m120+m102", "m210+m030+m012", "m201+m021+m003"};

}  // namespace published
