#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "adelharm/error.hpp"

namespace adelharm {

using Int = boost::multiprecision::cpp_int;
using i64 = std::int64_t;

inline Int int_gcd(const Int& a, const Int& b) {
  return boost::multiprecision::gcd(a, b);
}
inline Int int_lcm(const Int& a, const Int& b) {
  return boost::multiprecision::lcm(a, b);
}
i64 gcd_i64(i64 a, i64 b);
i64 lcm_i64(i64 a, i64 b);

// Exact rational number, always stored reduced with positive denominator.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(int n) : num_(n), den_(1) {}
  Rational(i64 n) : num_(n), den_(1) {}
  Rational(Int n) : num_(std::move(n)), den_(1) {}
  Rational(Int n, Int d);

  static Rational parse(std::string_view text);

  const Int& num() const { return num_; }
  const Int& den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return num_ == 0 ? 0 : (num_ > 0 ? 1 : -1); }

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) {
    return !(a == b);
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return a.num_ * b.den_ < b.num_ * a.den_;
  }

  // Largest integer <= value.
  Int floor() const;

  std::string to_string() const;

 private:
  void normalize();
  Int num_;
  Int den_;
};

// Element of Q/Z, stored as the representative in [0, 1).  Houses pairing
// values; the denominator always divides the exponent of the source group.
class QmodZ {
 public:
  QmodZ() = default;
  explicit QmodZ(const Rational& r);

  static QmodZ zero() { return QmodZ(); }

  const Rational& value() const { return value_; }
  bool is_zero() const { return value_.is_zero(); }
  const Int& denominator() const { return value_.den(); }

  QmodZ operator+(const QmodZ& o) const { return QmodZ(value_ + o.value_); }
  QmodZ operator-() const { return QmodZ(-value_); }
  QmodZ operator-(const QmodZ& o) const { return QmodZ(value_ - o.value_); }
  QmodZ scaled(const Int& k) const { return QmodZ(value_ * Rational(k)); }

  friend bool operator==(const QmodZ& a, const QmodZ& b) {
    return a.value_ == b.value_;
  }
  friend bool operator!=(const QmodZ& a, const QmodZ& b) { return !(a == b); }

  std::string to_string() const { return value_.to_string(); }

 private:
  Rational value_;
};

}  // namespace adelharm
