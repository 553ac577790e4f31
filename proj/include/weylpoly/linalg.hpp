#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "weylpoly/rational.hpp"

namespace weylpoly {

/// Fixed-length vector of exact rationals. Componentwise equality; exact
/// lexicographic order so vectors can key ordered containers.
class RatVec {
 public:
  RatVec() = default;
  explicit RatVec(std::size_t n) : c_(n) {}
  RatVec(std::initializer_list<Rational> init) : c_(init) {}
  explicit RatVec(std::vector<Rational> coords) : c_(std::move(coords)) {}

  static RatVec zero(std::size_t n) { return RatVec(n); }
  static RatVec unit(std::size_t n, std::size_t i) {
    RatVec v(n);
    v[i] = 1;
    return v;
  }

  std::size_t size() const { return c_.size(); }
  Rational& operator[](std::size_t i) { return c_[i]; }
  const Rational& operator[](std::size_t i) const { return c_[i]; }

  auto begin() { return c_.begin(); }
  auto end() { return c_.end(); }
  auto begin() const { return c_.begin(); }
  auto end() const { return c_.end(); }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rational& r) { return r.is_zero(); });
  }

  RatVec& operator+=(const RatVec& o) {
    check_same_size(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o[i];
    return *this;
  }
  RatVec& operator-=(const RatVec& o) {
    check_same_size(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o[i];
    return *this;
  }
  RatVec& operator*=(const Rational& s) {
    for (auto& x : c_) x *= s;
    return *this;
  }

  friend RatVec operator+(RatVec a, const RatVec& b) { return a += b; }
  friend RatVec operator-(RatVec a, const RatVec& b) { return a -= b; }
  friend RatVec operator*(const Rational& s, RatVec v) { return v *= s; }
  friend RatVec operator*(RatVec v, const Rational& s) { return v *= s; }
  RatVec operator-() const {
    RatVec r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = -c_[i];
    return r;
  }

  friend bool operator==(const RatVec& a, const RatVec& b) { return a.c_ == b.c_; }
  friend bool operator!=(const RatVec& a, const RatVec& b) { return !(a == b); }
  friend bool operator<(const RatVec& a, const RatVec& b) {
    return std::lexicographical_compare(a.c_.begin(), a.c_.end(), b.c_.begin(), b.c_.end());
  }

  /// Plain dot product (no Gram form).
  Rational dot(const RatVec& o) const {
    check_same_size(o);
    Rational s;
    for (std::size_t i = 0; i < c_.size(); ++i) s += c_[i] * o[i];
    return s;
  }

  std::string str() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < c_.size(); ++i) os << (i ? "," : "") << c_[i];
    os << ")";
    return os.str();
  }

  /// Parses "p/q,p/q,...".
  static RatVec parse(std::string_view s) {
    std::vector<Rational> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
      auto comma = s.find(',', pos);
      if (comma == std::string_view::npos) comma = s.size();
      out.push_back(Rational::parse(s.substr(pos, comma - pos)));
      pos = comma + 1;
      if (comma == s.size()) break;
    }
    return RatVec(std::move(out));
  }

 private:
  void check_same_size(const RatVec& o) const {
    if (c_.size() != o.c_.size()) throw UsageError("RatVec: dimension mismatch");
  }

  std::vector<Rational> c_;
};

/// Rectangular matrix of exact rationals, stored by rows.
class RatMat {
 public:
  RatMat() = default;
  RatMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows, RatVec(cols)) {}
  explicit RatMat(std::vector<RatVec> rows) : rows_(rows.size()), a_(std::move(rows)) {
    cols_ = rows_ ? a_[0].size() : 0;
    for (const auto& r : a_)
      if (r.size() != cols_) throw UsageError("RatMat: ragged rows");
  }
  RatMat(std::initializer_list<std::initializer_list<Rational>> init) {
    for (const auto& row : init) a_.emplace_back(row);
    rows_ = a_.size();
    cols_ = rows_ ? a_[0].size() : 0;
    for (const auto& r : a_)
      if (r.size() != cols_) throw UsageError("RatMat: ragged rows");
  }

  static RatMat identity(std::size_t n) {
    RatMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return a_[i][j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i][j]; }

  const RatVec& row(std::size_t i) const { return a_[i]; }
  RatVec& row(std::size_t i) { return a_[i]; }
  RatVec col(std::size_t j) const {
    RatVec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = a_[i][j];
    return v;
  }

  friend bool operator==(const RatMat& a, const RatMat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }
  friend bool operator!=(const RatMat& a, const RatMat& b) { return !(a == b); }

  RatMat transposed() const {
    RatMat t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = a_[i][j];
    return t;
  }

  RatVec apply(const RatVec& v) const {
    if (v.size() != cols_) throw UsageError("RatMat::apply: dimension mismatch");
    RatVec out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = a_[i].dot(v);
    return out;
  }

  RatMat operator*(const RatMat& o) const {
    if (cols_ != o.rows_) throw UsageError("RatMat: product shape mismatch");
    RatMat out(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        if (a_[i][k].is_zero()) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) out(i, j) += a_[i][k] * o(k, j);
      }
    return out;
  }

  RatMat operator*(const Rational& s) const {
    RatMat out = *this;
    for (auto& r : out.a_) r *= s;
    return out;
  }

  friend bool lex_less(const RatMat& a, const RatMat& b) {
    return a.a_ < b.a_;
  }

  std::string str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) os << (i ? "; " : "") << a_[i].str();
    os << "]";
    return os.str();
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<RatVec> a_;
};

namespace linalg {

/// Reduced row echelon form of [M | rhs...] computed in place with exact
/// pivoting. Returns pivot columns.
inline std::vector<std::size_t> rref(RatMat& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != r) std::swap(m.row(p), m.row(r));
    const Rational inv = Rational(1) / m(r, c);
    m.row(r) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      const Rational f = m(i, c);
      m.row(i) -= f * m.row(r);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t rank(RatMat m) { return rref(m).size(); }

/// Rank of the span of a set of vectors (as rows).
inline std::size_t rank_of(const std::vector<RatVec>& vecs) {
  if (vecs.empty()) return 0;
  return rank(RatMat(vecs));
}

struct LinearSolution {
  RatVec particular;
  std::vector<RatVec> kernel;  // basis of the homogeneous solution space
};

/// Solves M x = v exactly. Returns one solution plus a kernel basis, or
/// nullopt when the system is inconsistent.
inline std::optional<LinearSolution> solve_linear(const RatMat& m, const RatVec& v) {
  if (v.size() != m.rows()) throw UsageError("solve_linear: shape mismatch");
  const std::size_t n = m.cols();
  RatMat aug(m.rows(), n + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n) = v[i];
  }
  const auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == n) return std::nullopt;  // row [0..0 | c], c != 0

  LinearSolution sol;
  sol.particular = RatVec(n);
  std::vector<bool> is_pivot(n, false);
  for (std::size_t k = 0; k < pivots.size(); ++k) {
    is_pivot[pivots[k]] = true;
    sol.particular[pivots[k]] = aug(k, n);
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (is_pivot[j]) continue;
    RatVec k(n);
    k[j] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) k[pivots[r]] = -aug(r, j);
    sol.kernel.push_back(std::move(k));
  }
  return sol;
}

/// Inverse of a square matrix; nullopt when singular.
inline std::optional<RatMat> inverse(const RatMat& m) {
  if (m.rows() != m.cols()) throw UsageError("inverse: matrix not square");
  const std::size_t n = m.rows();
  RatMat aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  const auto pivots = rref(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  RatMat inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

inline Rational determinant(RatMat m) {
  if (m.rows() != m.cols()) throw UsageError("determinant: matrix not square");
  Rational det(1);
  const std::size_t n = m.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c).is_zero()) ++p;
    if (p == n) return Rational(0);
    if (p != c) {
      std::swap(m.row(p), m.row(c));
      det = -det;
    }
    det *= m(c, c);
    const Rational inv = Rational(1) / m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c).is_zero()) continue;
      const Rational f = m(i, c) * inv;
      m.row(i) -= f * m.row(c);
    }
  }
  return det;
}

/// Sylvester criterion on a symmetric matrix.
inline bool is_positive_definite(const RatMat& m) {
  if (m.rows() != m.cols()) return false;
  for (std::size_t k = 1; k <= m.rows(); ++k) {
    RatMat lead(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) lead(i, j) = m(i, j);
    if (determinant(lead).sign() <= 0) return false;
  }
  return true;
}

inline bool is_symmetric(const RatMat& m) {
  if (m.rows() != m.cols()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j)
      if (m(i, j) != m(j, i)) return false;
  return true;
}

}  // namespace linalg

/// Gram-form inner product <x|y> = x^T G y.
inline Rational gram_dot(const RatMat& gram, const RatVec& x, const RatVec& y) {
  return x.dot(gram.apply(y));
}

}  // namespace weylpoly
