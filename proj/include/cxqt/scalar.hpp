#pragma once

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include <Eigen/Core>

namespace cxqt {

using Integer = mpz_class;
using Rational = mpq_class;

struct DivisionByZero : std::domain_error {
  using std::domain_error::domain_error;
};

/**
 * Exact element a + b*sqrt(5) of the real quadratic field Q(sqrt 5).
 *
 * Both parts are GMP rationals kept in lowest terms, so equality is
 * structural. Crystallographic code only ever produces b == 0.
 */
class QSqrt5 {
 public:
  QSqrt5() = default;
  QSqrt5(int a) : a_(a) {}  // NOLINT(google-explicit-constructor)
  QSqrt5(long a) : a_(a) {}  // NOLINT(google-explicit-constructor)
  QSqrt5(Rational a) : a_(std::move(a)) { a_.canonicalize(); }  // NOLINT
  QSqrt5(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {
    a_.canonicalize();
    b_.canonicalize();
  }

  static QSqrt5 sqrt5() { return QSqrt5(Rational(0), Rational(1)); }
  /// (1 + sqrt 5) / 2
  static QSqrt5 golden() { return QSqrt5(Rational(1, 2), Rational(1, 2)); }

  const Rational& rational_part() const { return a_; }
  const Rational& sqrt5_part() const { return b_; }

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  bool is_rational() const { return sgn(b_) == 0; }
  int sign() const;

  /// a - b*sqrt(5)
  QSqrt5 conjugate() const { return QSqrt5(a_, -b_); }
  /// a^2 - 5 b^2
  Rational field_norm() const { return a_ * a_ - 5 * b_ * b_; }
  QSqrt5 inverse() const;

  QSqrt5& operator+=(const QSqrt5& o) {
    a_ += o.a_;
    b_ += o.b_;
    return *this;
  }
  QSqrt5& operator-=(const QSqrt5& o) {
    a_ -= o.a_;
    b_ -= o.b_;
    return *this;
  }
  QSqrt5& operator*=(const QSqrt5& o);
  QSqrt5& operator/=(const QSqrt5& o) { return *this *= o.inverse(); }

  friend QSqrt5 operator+(QSqrt5 x, const QSqrt5& y) { return x += y; }
  friend QSqrt5 operator-(QSqrt5 x, const QSqrt5& y) { return x -= y; }
  friend QSqrt5 operator*(QSqrt5 x, const QSqrt5& y) { return x *= y; }
  friend QSqrt5 operator/(QSqrt5 x, const QSqrt5& y) { return x /= y; }
  QSqrt5 operator-() const { return QSqrt5(-a_, -b_); }
  QSqrt5 operator+() const { return *this; }

  friend bool operator==(const QSqrt5& x, const QSqrt5& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
  /// Real ordering (sqrt 5 taken positive).
  friend std::strong_ordering operator<=>(const QSqrt5& x, const QSqrt5& y);

  /// Canonical text "a", or "a+b*r5" / "a-b*r5" where a, b are "p" or "p/q".
  std::string str() const;
  static QSqrt5 parse(std::string_view text);

  double to_double() const;

 private:
  Rational a_;
  Rational b_;
};

std::ostream& operator<<(std::ostream& os, const QSqrt5& x);

inline QSqrt5 abs(const QSqrt5& x) { return x.sign() < 0 ? -x : x; }

}  // namespace cxqt

namespace Eigen {

template <>
struct NumTraits<cxqt::QSqrt5> : GenericNumTraits<cxqt::QSqrt5> {
  using Real = cxqt::QSqrt5;
  using NonInteger = cxqt::QSqrt5;
  using Nested = cxqt::QSqrt5;
  using Literal = cxqt::QSqrt5;

  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2 * HugeCost / 1000,
    AddCost = 8,
    MulCost = 32
  };

  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
