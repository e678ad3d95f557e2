#pragma once

// Exact integer and rational linear algebra. Everything here is arbitrary
// precision; no floating point is used anywhere in the library.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace splice {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// ---------------------------------------------------------------------------
// Errors

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Matrix shape or index misuse.
struct dimension_error : error {
  using error::error;
};

// Matrix has no inverse.
struct singular_error : error {
  using error::error;
};

// Bad argument values: unknown ids, empty generator lists, negative targets.
struct argument_error : error {
  using error::error;
};

// Input text rejected. Carries the 1-based line number of the offense.
struct parse_error : error {
  parse_error(int line_number, const std::string& what)
      : error("line " + std::to_string(line_number) + ": " + what),
        line(line_number) {}
  int line;
};

// Graph failed a validity requirement (connectivity, tree shape,
// negative definiteness).
struct validation_error : error {
  using error::error;
};

// A guard against runaway computation tripped.
struct resource_error : error {
  using error::error;
};

// An internal consistency check failed: a bug or a violated structural
// assumption, not bad user input.
struct internal_error : error {
  using error::error;
};

// ---------------------------------------------------------------------------
// Scalar helpers

inline std::string int_string(const Int& v) { return v.str(); }

// "p/q" with q > 0 in lowest terms; plain "p" when q == 1.
inline std::string rat_string(const Rat& q) {
  const Int num = boost::multiprecision::numerator(q);
  const Int den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline Int floor_rat(const Rat& q) {
  const Int num = boost::multiprecision::numerator(q);
  const Int den = boost::multiprecision::denominator(q);  // always > 0
  if (num >= 0) return num / den;
  return -((-num + den - 1) / den);
}

// Representative of q mod 1 in [0, 1).
inline Rat mod1(const Rat& q) { return q - Rat(floor_rat(q)); }

// gcd(a, b) = g >= 0 together with x, y such that x*a + y*b = g.
inline std::tuple<Int, Int, Int> extended_gcd(Int a, Int b) {
  Int x0 = 1, y0 = 0, x1 = 0, y1 = 1;
  while (b != 0) {
    Int q = a / b;
    Int r = a - q * b;
    a = b;
    b = r;
    Int nx = x0 - q * x1, ny = y0 - q * y1;
    x0 = x1;
    y0 = y1;
    x1 = nx;
    y1 = ny;
  }
  if (a < 0) return {-a, -x0, -y0};
  return {a, x0, y0};
}

// ---------------------------------------------------------------------------
// Matrices

template <typename T>
class BasicMatrix {
 public:
  // Empty placeholder (0x0); any sized matrix is at least 1x1.
  BasicMatrix() = default;

  BasicMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), e_(rows * cols) {
    if (rows == 0 || cols == 0)
      throw dimension_error("matrix must be at least 1x1");
  }

  BasicMatrix(std::initializer_list<std::initializer_list<long long>> rows)
      : rows_(rows.size()) {
    if (rows_ == 0) throw dimension_error("matrix must be at least 1x1");
    cols_ = rows.begin()->size();
    if (cols_ == 0) throw dimension_error("matrix must be at least 1x1");
    e_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_)
        throw dimension_error("matrix rows must all have the same length");
      for (long long v : r) e_.emplace_back(v);
    }
  }

  static BasicMatrix identity(std::size_t n) {
    BasicMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& at(std::size_t r, std::size_t c) {
    check(r, c);
    return e_[r * cols_ + c];
  }
  const T& at(std::size_t r, std::size_t c) const {
    check(r, c);
    return e_[r * cols_ + c];
  }

  bool is_square() const { return rows_ == cols_; }

  bool is_symmetric() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if (at(i, j) != at(j, i)) return false;
    return true;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap(at(a, j), at(b, j));
  }

  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap(at(i, a), at(i, b));
  }

  BasicMatrix negated() const {
    BasicMatrix m(rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) m.e_[i] = -e_[i];
    return m;
  }

  friend bool operator==(const BasicMatrix& a, const BasicMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
  }
  friend bool operator!=(const BasicMatrix& a, const BasicMatrix& b) {
    return !(a == b);
  }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i) s += "; ";
      for (std::size_t j = 0; j < cols_; ++j) {
        if (j) s += " ";
        if constexpr (std::is_same_v<T, Rat>)
          s += rat_string(at(i, j));
        else
          s += at(i, j).str();
      }
    }
    s += "]";
    return s;
  }

 private:
  void check(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_)
      throw dimension_error("matrix index out of range");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> e_;
};

using IntMatrix = BasicMatrix<Int>;
using RatMatrix = BasicMatrix<Rat>;

template <typename T, typename U>
auto operator*(const BasicMatrix<T>& a, const BasicMatrix<U>& b) {
  using R = decltype(T() * U());
  if (a.cols() != b.rows())
    throw dimension_error("matrix product shape mismatch");
  BasicMatrix<R> out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a.at(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        out.at(i, j) += R(a.at(i, k)) * R(b.at(k, j));
    }
  return out;
}

inline RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out.at(i, j) = Rat(m.at(i, j));
  return out;
}

// ---------------------------------------------------------------------------
// Determinant: Bareiss fraction-free elimination. Intermediate entries are
// determinants of submatrices, so every division below is exact.

inline Int determinant(const IntMatrix& m) {
  if (!m.is_square())
    throw dimension_error("determinant requires a square matrix");
  const std::size_t n = m.rows();
  IntMatrix w = m;
  int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (w.at(k, k) == 0) {
      std::size_t r = k + 1;
      while (r < n && w.at(r, k) == 0) ++r;
      if (r == n) return Int(0);
      w.swap_rows(k, r);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        w.at(i, j) = (w.at(i, j) * w.at(k, k) - w.at(i, k) * w.at(k, j)) / prev;
    prev = w.at(k, k);
  }
  Int det = w.at(n - 1, n - 1);
  if (sign < 0) det = -det;
  return det;
}

inline Rat determinant(const RatMatrix& m) {
  if (!m.is_square())
    throw dimension_error("determinant requires a square matrix");
  const std::size_t n = m.rows();
  RatMatrix w = m;
  Rat det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && w.at(piv, col) == 0) ++piv;
    if (piv == n) return Rat(0);
    if (piv != col) {
      w.swap_rows(col, piv);
      det = -det;
    }
    det *= w.at(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (w.at(r, col) == 0) continue;
      const Rat f = w.at(r, col) / w.at(col, col);
      for (std::size_t j = col; j < n; ++j) w.at(r, j) -= f * w.at(col, j);
    }
  }
  return det;
}

// ---------------------------------------------------------------------------
// Exact inverse over Q via Gauss-Jordan elimination.

inline RatMatrix inverse(const IntMatrix& m) {
  if (!m.is_square()) throw dimension_error("inverse requires a square matrix");
  const std::size_t n = m.rows();
  RatMatrix a = to_rational(m);
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a.at(piv, col) == 0) ++piv;
    if (piv == n) throw singular_error("matrix is singular");
    a.swap_rows(col, piv);
    inv.swap_rows(col, piv);
    const Rat p = a.at(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a.at(col, j) /= p;
      inv.at(col, j) /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a.at(r, col) == 0) continue;
      const Rat f = a.at(r, col);
      for (std::size_t j = 0; j < n; ++j) {
        a.at(r, j) -= f * a.at(col, j);
        inv.at(r, j) -= f * inv.at(col, j);
      }
    }
  }
  return inv;
}

// ---------------------------------------------------------------------------
// Smith normal form with unimodular transforms: left * a * right is diagonal
// with nonnegative entries d_1 | d_2 | ... ; det(left), det(right) = +-1.

struct SmithDecomposition {
  std::vector<Int> invariant_factors;  // length min(rows, cols)
  IntMatrix left;
  IntMatrix right;

  IntMatrix diagonal(std::size_t rows, std::size_t cols) const {
    IntMatrix d(rows, cols);
    for (std::size_t i = 0; i < invariant_factors.size(); ++i)
      d.at(i, i) = invariant_factors[i];
    return d;
  }
};

inline SmithDecomposition smith_normal_form(const IntMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  IntMatrix d = a;
  IntMatrix u = IntMatrix::identity(m);
  IntMatrix v = IntMatrix::identity(n);

  // Unimodular row operation on rows (r1, r2) clearing d(r2, col) against
  // pivot d(r1, col); mirrored onto u. Column version mirrored onto v.
  auto row_reduce = [&](std::size_t r1, std::size_t r2, std::size_t col) {
    const Int aa = d.at(r1, col), bb = d.at(r2, col);
    if (bb == 0) return;
    if (aa != 0 && bb % aa == 0) {
      const Int q = bb / aa;
      for (std::size_t j = 0; j < n; ++j) d.at(r2, j) -= q * d.at(r1, j);
      for (std::size_t j = 0; j < m; ++j) u.at(r2, j) -= q * u.at(r1, j);
      return;
    }
    auto [g, x, y] = extended_gcd(aa, bb);
    const Int p = aa / g, q = bb / g;  // x*aa + y*bb = g, det = x*p + y*q = 1
    for (std::size_t j = 0; j < n; ++j) {
      const Int t1 = x * d.at(r1, j) + y * d.at(r2, j);
      const Int t2 = -q * d.at(r1, j) + p * d.at(r2, j);
      d.at(r1, j) = t1;
      d.at(r2, j) = t2;
    }
    for (std::size_t j = 0; j < m; ++j) {
      const Int t1 = x * u.at(r1, j) + y * u.at(r2, j);
      const Int t2 = -q * u.at(r1, j) + p * u.at(r2, j);
      u.at(r1, j) = t1;
      u.at(r2, j) = t2;
    }
  };
  auto col_reduce = [&](std::size_t c1, std::size_t c2, std::size_t row) {
    const Int aa = d.at(row, c1), bb = d.at(row, c2);
    if (bb == 0) return;
    if (aa != 0 && bb % aa == 0) {
      const Int q = bb / aa;
      for (std::size_t i = 0; i < m; ++i) d.at(i, c2) -= q * d.at(i, c1);
      for (std::size_t i = 0; i < n; ++i) v.at(i, c2) -= q * v.at(i, c1);
      return;
    }
    auto [g, x, y] = extended_gcd(aa, bb);
    const Int p = aa / g, q = bb / g;
    for (std::size_t i = 0; i < m; ++i) {
      const Int t1 = x * d.at(i, c1) + y * d.at(i, c2);
      const Int t2 = -q * d.at(i, c1) + p * d.at(i, c2);
      d.at(i, c1) = t1;
      d.at(i, c2) = t2;
    }
    for (std::size_t i = 0; i < n; ++i) {
      const Int t1 = x * v.at(i, c1) + y * v.at(i, c2);
      const Int t2 = -q * v.at(i, c1) + p * v.at(i, c2);
      v.at(i, c1) = t1;
      v.at(i, c2) = t2;
    }
  };

  const std::size_t steps = m < n ? m : n;
  for (std::size_t t = 0; t < steps; ++t) {
    // Pivot: nonzero entry of smallest magnitude in the trailing block.
    std::size_t pi = t, pj = t;
    bool found = false;
    Int best = 0;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j) {
        const Int& e = d.at(i, j);
        if (e == 0) continue;
        Int mag = e < 0 ? Int(-e) : e;
        if (!found || mag < best) {
          found = true;
          best = mag;
          pi = i;
          pj = j;
        }
      }
    if (!found) break;
    d.swap_rows(t, pi);
    u.swap_rows(t, pi);
    d.swap_cols(t, pj);
    v.swap_cols(t, pj);

    for (int guard = 0;; ++guard) {
      if (guard > 10000)
        throw internal_error("smith_normal_form failed to converge");
      for (std::size_t i = t + 1; i < m; ++i) row_reduce(t, i, t);
      for (std::size_t j = t + 1; j < n; ++j) col_reduce(t, j, t);
      bool clear = true;
      for (std::size_t i = t + 1; i < m && clear; ++i)
        if (d.at(i, t) != 0) clear = false;
      for (std::size_t j = t + 1; j < n && clear; ++j)
        if (d.at(t, j) != 0) clear = false;
      if (!clear) continue;
      // Pivot must divide the whole trailing block for the divisibility
      // chain; if not, fold the offending row in and reduce again.
      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i)
        for (std::size_t j = t + 1; j < n && divides; ++j)
          if (d.at(i, j) % d.at(t, t) != 0) {
            for (std::size_t jj = 0; jj < n; ++jj)
              d.at(t, jj) += d.at(i, jj);
            for (std::size_t jj = 0; jj < m; ++jj)
              u.at(t, jj) += u.at(i, jj);
            divides = false;
          }
      if (divides) break;
    }
    if (d.at(t, t) < 0) {
      for (std::size_t j = 0; j < n; ++j) d.at(t, j) = -d.at(t, j);
      for (std::size_t j = 0; j < m; ++j) u.at(t, j) = -u.at(t, j);
    }
  }

  SmithDecomposition out{{}, u, v};
  out.invariant_factors.reserve(steps);
  for (std::size_t i = 0; i < steps; ++i)
    out.invariant_factors.push_back(d.at(i, i));

  if (u * a * v != out.diagonal(m, n))
    throw internal_error("smith_normal_form self-check failed");
  return out;
}

// ---------------------------------------------------------------------------
// Negative definiteness of a symmetric integer matrix m: -m is positive
// definite iff all leading principal minors of -m are positive (Sylvester).
// Bareiss pivots are exactly those minors, so one elimination pass decides.

inline bool is_negative_definite(const IntMatrix& m) {
  if (!m.is_square())
    throw dimension_error("is_negative_definite requires a square matrix");
  if (!m.is_symmetric())
    throw dimension_error("is_negative_definite requires a symmetric matrix");
  const std::size_t n = m.rows();
  IntMatrix w = m.negated();
  Int prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (w.at(k, k) <= 0) return false;
    if (k + 1 == n) break;
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        w.at(i, j) = (w.at(i, j) * w.at(k, k) - w.at(i, k) * w.at(k, j)) / prev;
    prev = w.at(k, k);
  }
  return true;
}

}  // namespace splice
