#include "adelharm/rational.hpp"

#include <numeric>

namespace adelharm {

i64 gcd_i64(i64 a, i64 b) { return std::gcd(a, b); }

i64 lcm_i64(i64 a, i64 b) {
  if (a == 0 || b == 0) return 0;
  return a / std::gcd(a, b) * b;
}

Rational::Rational(Int n, Int d) : num_(std::move(n)), den_(std::move(d)) {
  require(den_ != 0, ErrorKind::precondition, "rational with zero denominator");
  normalize();
}

void Rational::normalize() {
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_ == 0) {
    den_ = 1;
    return;
  }
  Int g = int_gcd(num_ < 0 ? Int(-num_) : num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

Rational Rational::operator-() const {
  Rational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  num_ = num_ * o.den_ + o.num_ * den_;
  den_ *= o.den_;
  normalize();
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  num_ = num_ * o.den_ - o.num_ * den_;
  den_ *= o.den_;
  normalize();
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  num_ *= o.num_;
  den_ *= o.den_;
  normalize();
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  require(!o.is_zero(), ErrorKind::precondition, "division by zero rational");
  num_ *= o.den_;
  den_ *= o.num_;
  normalize();
  return *this;
}

Int Rational::floor() const {
  Int q = num_ / den_;
  if (num_ < 0 && q * den_ != num_) q -= 1;
  return q;
}

std::string Rational::to_string() const {
  std::string s = num_.str();
  if (den_ != 1) {
    s += "/";
    s += den_.str();
  }
  return s;
}

Rational Rational::parse(std::string_view text) {
  auto slash = text.find('/');
  auto parse_int = [](std::string_view t) {
    require(!t.empty(), ErrorKind::schema, "empty integer literal");
    size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    require(i < t.size(), ErrorKind::schema, "bare sign in integer literal");
    for (; i < t.size(); ++i)
      require(t[i] >= '0' && t[i] <= '9', ErrorKind::schema,
              "invalid integer literal: " + std::string(t));
    return Int(std::string(t));
  };
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  Int n = parse_int(text.substr(0, slash));
  Int d = parse_int(text.substr(slash + 1));
  require(d != 0, ErrorKind::schema, "zero denominator in rational literal");
  return Rational(n, d);
}

QmodZ::QmodZ(const Rational& r) {
  value_ = r - Rational(r.floor());
}

}  // namespace adelharm
