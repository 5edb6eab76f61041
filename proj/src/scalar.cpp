#include "cxqt/scalar.hpp"

#include <cmath>
#include <ostream>

namespace cxqt {

namespace {

Rational parse_rational(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  Rational r;
  if (r.set_str(std::string(text), 10) != 0)
    throw std::invalid_argument("malformed rational literal '" + std::string(text) + "'");
  if (sgn(r.get_den()) == 0) throw DivisionByZero("zero denominator in '" + std::string(text) + "'");
  r.canonicalize();
  return r;
}

}  // namespace

int QSqrt5::sign() const {
  const int sa = sgn(a_);
  const int sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // opposite signs: compare a^2 with 5 b^2 (never equal, sqrt 5 is irrational)
  return cmp(a_ * a_, 5 * b_ * b_) > 0 ? sa : sb;
}

QSqrt5 QSqrt5::inverse() const {
  if (is_zero()) throw DivisionByZero("division by zero in Q(sqrt 5)");
  if (is_rational()) return QSqrt5(1 / a_);
  const Rational n = field_norm();
  return QSqrt5(a_ / n, -b_ / n);
}

QSqrt5& QSqrt5::operator*=(const QSqrt5& o) {
  if (is_rational() && o.is_rational()) {
    a_ *= o.a_;
    return *this;
  }
  Rational a = a_ * o.a_ + 5 * b_ * o.b_;
  Rational b = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  return *this;
}

std::strong_ordering operator<=>(const QSqrt5& x, const QSqrt5& y) {
  const int s = (x - y).sign();
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string QSqrt5::str() const {
  std::string out = a_.get_str();
  if (is_rational()) return out;
  if (sgn(b_) > 0) {
    out += '+';
    out += b_.get_str();
  } else {
    out += '-';
    out += Rational(-b_).get_str();
  }
  out += "*r5";
  return out;
}

QSqrt5 QSqrt5::parse(std::string_view text) {
  constexpr std::string_view suffix = "*r5";
  if (text.size() < suffix.size() || text.substr(text.size() - suffix.size()) != suffix)
    return QSqrt5(parse_rational(text));
  const std::string_view body = text.substr(0, text.size() - suffix.size());
  const auto split = body.find_first_of("+-", 1);
  if (split == std::string_view::npos)
    throw std::invalid_argument("malformed Q(sqrt 5) literal '" + std::string(text) + "'");
  Rational a = parse_rational(body.substr(0, split));
  Rational b = parse_rational(body.substr(split + 1));
  if (body[split] == '-') b = -b;
  return QSqrt5(std::move(a), std::move(b));
}

double QSqrt5::to_double() const { return a_.get_d() + b_.get_d() * std::sqrt(5.0); }

std::ostream& operator<<(std::ostream& os, const QSqrt5& x) { return os << x.str(); }

}  // namespace cxqt
