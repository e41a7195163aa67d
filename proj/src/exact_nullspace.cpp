#include "mtuple/exact_nullspace.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>

#include "mtuple/errors.hpp"

namespace mtuple {

namespace {

struct Overflow {};

// Arithmetic policy: int64 with overflow detection, or arbitrary precision.
struct CheckedInt64 {
  using Int = std::int64_t;
  static Int mul(Int a, Int b) {
    Int r = 0;
    if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  static Int sub(Int a, Int b) {
    Int r = 0;
    if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  static Int neg(Int a) {
    if (a == std::numeric_limits<Int>::min()) throw Overflow{};
    return -a;
  }
  static Int abs(Int a) { return a < 0 ? neg(a) : a; }
  static Int gcd(Int a, Int b) { return std::gcd(abs(a), abs(b)); }
  static BigInt big(Int a) { return BigInt(a); }
  static Int from(const BigInt& b) {
    if (b > std::numeric_limits<Int>::max() || b < -std::numeric_limits<Int>::max()) throw Overflow{};
    return static_cast<Int>(b);
  }
};

struct Arbitrary {
  using Int = BigInt;
  static Int mul(const Int& a, const Int& b) { return a * b; }
  static Int sub(const Int& a, const Int& b) { return a - b; }
  static Int neg(const Int& a) { return -a; }
  static Int abs(const Int& a) { return a < 0 ? Int(-a) : a; }
  static Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
  static BigInt big(const Int& a) { return a; }
  static Int from(const BigInt& b) { return b; }
};

template <class Ops>
struct Eliminator {
  using Int = typename Ops::Int;
  using Row = std::vector<Int>;

  std::size_t cols;
  std::vector<Row> rows;           // echelon rows, sorted by pivot column
  std::vector<std::size_t> pivots;  // pivot column per row

  explicit Eliminator(std::size_t c) : cols(c) {}

  static std::ptrdiff_t leading(const Row& r) {
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (r[j] != 0) return static_cast<std::ptrdiff_t>(j);
    }
    return -1;
  }

  static void normalize(Row& r) {
    Int g = 0;
    for (const auto& x : r) {
      if (x != 0) g = Ops::gcd(g, x);
    }
    if (g == 0) return;
    const auto lead = leading(r);
    const bool flip = r[static_cast<std::size_t>(lead)] < 0;
    for (auto& x : r) {
      if (x == 0) continue;
      x = x / g;
      if (flip) x = Ops::neg(x);
    }
  }

  // target <- target * src[col] - src * target[col], eliminating `col` from target.
  static void eliminate(Row& target, const Row& src, std::size_t col) {
    if (target[col] == 0) return;
    Int g = Ops::gcd(target[col], src[col]);
    const Int ft = src[col] / g;
    const Int fs = target[col] / g;
    for (std::size_t j = 0; j < target.size(); ++j) {
      if (src[j] == 0) {
        if (target[j] != 0) target[j] = Ops::mul(target[j], ft);
      } else {
        target[j] = Ops::sub(Ops::mul(target[j], ft), Ops::mul(src[j], fs));
      }
    }
    normalize(target);
  }

  // Reduces r against the echelon rows; inserts it if independent.
  bool add(Row r) {
    for (std::size_t i = 0; i < rows.size(); ++i) eliminate(r, rows[i], pivots[i]);
    const auto lead = leading(r);
    if (lead < 0) return false;
    normalize(r);
    const auto pos = static_cast<std::size_t>(
        std::lower_bound(pivots.begin(), pivots.end(), static_cast<std::size_t>(lead)) - pivots.begin());
    rows.insert(rows.begin() + static_cast<std::ptrdiff_t>(pos), std::move(r));
    pivots.insert(pivots.begin() + static_cast<std::ptrdiff_t>(pos), static_cast<std::size_t>(lead));
    return true;
  }

  void reduce_fully() {
    for (std::size_t i = rows.size(); i-- > 0;) {
      for (std::size_t k = 0; k < i; ++k) eliminate(rows[k], rows[i], pivots[i]);
    }
  }

  std::vector<IntVector> nullspace() {
    reduce_fully();
    std::vector<bool> is_pivot(cols, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<IntVector> out;
    for (std::size_t f = 0; f < cols; ++f) {
      if (is_pivot[f]) continue;
      // x_f = L, x_{pivot_r} = -R[r][f] * L / R[r][pivot_r]
      BigInt lcm = 1;
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r][f] != 0) {
          const BigInt d = Ops::big(rows[r][pivots[r]]);
          lcm = lcm / boost::multiprecision::gcd(lcm, d) * d;
        }
      }
      IntVector x(cols, 0);
      x[f] = lcm;
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r][f] == 0) continue;
        x[pivots[r]] = -Ops::big(rows[r][f]) * (lcm / Ops::big(rows[r][pivots[r]]));
      }
      out.push_back(make_primitive(std::move(x)));
    }
    return out;
  }

  std::vector<IntVector> basis() {
    reduce_fully();
    std::vector<IntVector> out;
    for (auto& r : rows) {
      IntVector v(cols);
      for (std::size_t j = 0; j < cols; ++j) v[j] = Ops::big(r[j]);
      out.push_back(make_primitive(std::move(v)));
    }
    return out;
  }
};

template <class Ops>
std::vector<IntVector> nullspace_with(const SparseIntMatrix& a) {
  Eliminator<Ops> elim(static_cast<std::size_t>(a.cols()));
  auto entries = a.entries();
  std::size_t k = 0;
  while (k < entries.size()) {
    typename Eliminator<Ops>::Row row(static_cast<std::size_t>(a.cols()), 0);
    const auto r = entries[k].row;
    for (; k < entries.size() && entries[k].row == r; ++k) {
      row[static_cast<std::size_t>(entries[k].col)] = Ops::from(BigInt(entries[k].value));
    }
    elim.add(std::move(row));
    if (elim.rows.size() == elim.cols) break;
  }
  return elim.nullspace();
}

template <class Ops>
Eliminator<Ops> eliminate_vectors(const std::vector<IntVector>& vectors) {
  const std::size_t cols = vectors.empty() ? 0 : vectors.front().size();
  Eliminator<Ops> elim(cols);
  for (const auto& v : vectors) {
    if (v.size() != cols) throw ArgumentError("vectors of unequal length");
    typename Eliminator<Ops>::Row row(cols);
    for (std::size_t j = 0; j < cols; ++j) row[j] = Ops::from(v[j]);
    elim.add(std::move(row));
  }
  return elim;
}

}  // namespace

IntVector make_primitive(IntVector v) {
  BigInt g = 0;
  for (const auto& x : v) {
    if (x != 0) g = boost::multiprecision::gcd(g, x);
  }
  if (g == 0) return v;
  const auto lead = std::find_if(v.begin(), v.end(), [](const BigInt& x) { return x != 0; });
  if (*lead < 0) g = -g;
  for (auto& x : v) x /= g;
  return v;
}

std::vector<IntVector> exact_nullspace(const SparseIntMatrix& a) {
  std::vector<IntVector> raw;
  try {
    raw = nullspace_with<CheckedInt64>(a);
  } catch (const Overflow&) {
    raw = nullspace_with<Arbitrary>(a);
  }
  return canonical_row_basis(raw);
}

std::vector<IntVector> canonical_row_basis(const std::vector<IntVector>& vectors) {
  if (vectors.empty()) return {};
  try {
    return eliminate_vectors<CheckedInt64>(vectors).basis();
  } catch (const Overflow&) {
    return eliminate_vectors<Arbitrary>(vectors).basis();
  }
}

std::size_t exact_rank(const std::vector<IntVector>& vectors) {
  if (vectors.empty()) return 0;
  try {
    return eliminate_vectors<CheckedInt64>(vectors).rows.size();
  } catch (const Overflow&) {
    return eliminate_vectors<Arbitrary>(vectors).rows.size();
  }
}

}  // namespace mtuple
