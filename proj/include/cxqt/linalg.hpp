#pragma once

// Exact dense linear algebra over a field. Everything is templated on the
// scalar type; the project instantiates it with QSqrt5. Elimination never
// pivots on magnitude, only on nonzero-ness, since arithmetic is exact.

#include <algorithm>
#include <cassert>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "cxqt/scalar.hpp"

namespace cxqt {

template <typename T>
using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <typename T>
using Vec = Eigen::Matrix<T, Eigen::Dynamic, 1>;

using ExactMatrix = Mat<QSqrt5>;
using ExactVector = Vec<QSqrt5>;

/// Dense univariate polynomial, coefficients lowest degree first.
template <typename T>
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
  Poly(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }

  static Poly constant(T c) { return Poly({std::move(c)}); }
  /// t - root
  static Poly linear_factor(const T& root) { return Poly({-root, T(1)}); }

  const std::vector<T>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  T coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : T(0); }
  const T& leading() const { return c_.back(); }

  T operator()(const T& t) const {
    T acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
    return acc;
  }

  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) { return *this += -o; }
  Poly operator-() const {
    Poly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  friend Poly operator+(Poly x, const Poly& y) { return x += y; }
  friend Poly operator-(Poly x, const Poly& y) { return x -= y; }
  friend Poly operator*(const Poly& x, const Poly& y) {
    if (x.is_zero() || y.is_zero()) return {};
    std::vector<T> r(x.c_.size() + y.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < x.c_.size(); ++i)
      for (std::size_t j = 0; j < y.c_.size(); ++j) r[i + j] += x.c_[i] * y.c_[j];
    return Poly(std::move(r));
  }
  friend Poly operator*(const T& s, const Poly& p) { return Poly::constant(s) * p; }
  friend bool operator==(const Poly& x, const Poly& y) { return x.c_ == y.c_; }

  /// Quotient by (t - root), assuming the remainder vanishes.
  Poly deflate(const T& root) const {
    if (degree() < 1) return {};
    std::vector<T> q(c_.size() - 1, T(0));
    T carry(0);
    for (int i = degree(); i >= 1; --i) {
      carry = c_[i] + carry * root;
      q[i - 1] = carry;
    }
    return Poly(std::move(q));
  }

  /// Multiplicity of `root` as a zero (0 for the zero polynomial).
  int root_multiplicity(const T& root) const {
    if (is_zero()) return 0;
    int m = 0;
    Poly p = *this;
    while (p.degree() >= 1 && p(root) == T(0)) {
      p = p.deflate(root);
      ++m;
    }
    return m;
  }

  /// t^n p(1/t) with n = degree(); the coefficient reversal.
  Poly reversed() const {
    std::vector<T> r(c_.rbegin(), c_.rend());
    return Poly(std::move(r));
  }

  /// Comma separated coefficients, lowest degree first.
  std::string str() const {
    if (c_.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (i) out += ',';
      out += c_[i].str();
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == T(0)) c_.pop_back();
  }
  std::vector<T> c_;
};

using ExactPoly = Poly<QSqrt5>;

ExactPoly parse_poly(std::string_view text);

/// Exact determinant by Gaussian elimination.
template <typename Derived>
typename Derived::Scalar det(const Eigen::MatrixBase<Derived>& m) {
  using T = typename Derived::Scalar;
  assert(m.rows() == m.cols());
  Mat<T> a = m;
  const Eigen::Index n = a.rows();
  T result(1);
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index p = k;
    while (p < n && a(p, k) == T(0)) ++p;
    if (p == n) return T(0);
    if (p != k) {
      a.row(p).swap(a.row(k));
      result = -result;
    }
    const T pivot = a(k, k);
    result *= pivot;
    const T inv = T(1) / pivot;
    for (Eigen::Index i = k + 1; i < n; ++i) {
      if (a(i, k) == T(0)) continue;
      const T f = a(i, k) * inv;
      for (Eigen::Index j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return result;
}

/// Reduced row echelon form in place; returns pivot columns.
template <typename T>
std::vector<Eigen::Index> row_reduce(Mat<T>& a) {
  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < a.cols() && row < a.rows(); ++col) {
    Eigen::Index p = row;
    while (p < a.rows() && a(p, col) == T(0)) ++p;
    if (p == a.rows()) continue;
    if (p != row) a.row(p).swap(a.row(row));
    const T inv = T(1) / a(row, col);
    for (Eigen::Index j = col; j < a.cols(); ++j) a(row, j) *= inv;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (i == row || a(i, col) == T(0)) continue;
      const T f = a(i, col);
      for (Eigen::Index j = col; j < a.cols(); ++j) a(i, j) -= f * a(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <typename Derived>
Eigen::Index rank(const Eigen::MatrixBase<Derived>& m) {
  Mat<typename Derived::Scalar> a = m;
  return static_cast<Eigen::Index>(row_reduce(a).size());
}

/// Dimension of the kernel of a square matrix.
template <typename Derived>
Eigen::Index nullity(const Eigen::MatrixBase<Derived>& m) {
  return m.cols() - rank(m);
}

/// Basis of the right kernel, one column per basis vector.
template <typename Derived>
Mat<typename Derived::Scalar> nullspace(const Eigen::MatrixBase<Derived>& m) {
  using T = typename Derived::Scalar;
  Mat<T> a = m;
  const auto pivots = row_reduce(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  Mat<T> basis(a.cols(), a.cols() - static_cast<Eigen::Index>(pivots.size()));
  basis.setZero();
  Eigen::Index out = 0;
  for (Eigen::Index free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    basis(free, out) = T(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) basis(pivots[r], out) = -a(r, free);
    ++out;
  }
  return basis;
}

/// Inverse by Gauss-Jordan; throws DivisionByZero when singular.
template <typename Derived>
Mat<typename Derived::Scalar> inverse(const Eigen::MatrixBase<Derived>& m) {
  using T = typename Derived::Scalar;
  const Eigen::Index n = m.rows();
  Mat<T> aug(n, 2 * n);
  aug.leftCols(n) = m;
  aug.rightCols(n) = Mat<T>::Identity(n, n);
  const auto pivots = row_reduce(aug);
  if (static_cast<Eigen::Index>(pivots.size()) < n || pivots[n - 1] != n - 1)
    throw DivisionByZero("matrix is singular");
  return aug.rightCols(n);
}

/// Monic det(t I - m): similarity reduction to upper Hessenberg form followed
/// by the Hessenberg determinant recurrence. Only field operations are used.
template <typename Derived>
Poly<typename Derived::Scalar> char_poly(const Eigen::MatrixBase<Derived>& m) {
  using T = typename Derived::Scalar;
  assert(m.rows() == m.cols());
  Mat<T> h = m;
  const Eigen::Index n = h.rows();

  for (Eigen::Index col = 0; col + 2 < n; ++col) {
    const Eigen::Index sub = col + 1;
    Eigen::Index p = sub;
    while (p < n && h(p, col) == T(0)) ++p;
    if (p == n) continue;
    if (p != sub) {
      h.row(p).swap(h.row(sub));
      h.col(p).swap(h.col(sub));
    }
    const T inv = T(1) / h(sub, col);
    for (Eigen::Index i = sub + 1; i < n; ++i) {
      if (h(i, col) == T(0)) continue;
      const T u = h(i, col) * inv;
      // row_i -= u row_sub, then col_sub += u col_i (similarity)
      for (Eigen::Index j = 0; j < n; ++j) h(i, j) -= u * h(sub, j);
      for (Eigen::Index j = 0; j < n; ++j) h(j, sub) += u * h(j, i);
    }
  }

  std::vector<Poly<T>> p;
  p.reserve(n + 1);
  p.push_back(Poly<T>::constant(T(1)));
  const Poly<T> t({T(0), T(1)});
  for (Eigen::Index k = 0; k < n; ++k) {
    Poly<T> next = (t - Poly<T>::constant(h(k, k))) * p[k];
    T sub_product(1);
    for (Eigen::Index i = k - 1; i >= 0; --i) {
      sub_product *= h(i + 1, i);
      if (sub_product == T(0)) break;
      const T c = h(i, k) * sub_product;
      if (c != T(0)) next -= c * p[i];
    }
    p.push_back(std::move(next));
  }
  return p[n];
}

/// dim ker(m - lambda I)
template <typename Derived>
Eigen::Index eigenspace_dim(const Eigen::MatrixBase<Derived>& m, const typename Derived::Scalar& lambda) {
  Mat<typename Derived::Scalar> a = m;
  for (Eigen::Index i = 0; i < a.rows(); ++i) a(i, i) -= lambda;
  return nullity(a);
}

template <typename Derived>
bool is_orthogonal(const Eigen::MatrixBase<Derived>& m) {
  using T = typename Derived::Scalar;
  const Mat<T> g = m;
  return (g.transpose() * g).eval() == Mat<T>::Identity(g.rows(), g.cols());
}

std::string matrix_str(const ExactMatrix& m);

}  // namespace cxqt
