#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "adelharm/rational.hpp"

namespace adelharm {

// L-th cyclotomic polynomial, coefficients ascending, monic, degree phi(L).
// Computed by dividing x^L - 1 by the product of the polynomials at the
// proper divisors of L; results are memoized process-wide.
std::vector<Int> cyclotomic_poly(i64 L);

i64 euler_phi(i64 n);

// Lookup table for one conductor: the cyclotomic polynomial plus the
// reductions of the monomials x^m.  Reducing sums of monomials through the
// table is the hot path of every Fourier transform, so rows are integer
// vectors shared by all scalars of the conductor.
struct CycloTable {
  i64 conductor = 1;
  i64 degree = 1;  // phi(conductor)
  std::vector<Int> poly;
  std::vector<std::vector<Int>> pow;  // pow[m] = x^m mod poly

  const std::vector<Int>& power(i64 m) const { return pow[m]; }
};

// Thread-safe memoized access; `pow` covers m < conductor.
const CycloTable& cyclo_table(i64 L);

// Exact element of the cyclotomic field Q(zeta_L), stored as the canonical
// representative modulo the L-th cyclotomic polynomial.  Every complex value
// the transforms produce lives here; equality is coefficient-wise after
// promoting both operands to the lcm of their conductors.
class CycloScalar {
 public:
  CycloScalar() : conductor_(1), coeffs_(1) {}
  CycloScalar(const Rational& r) : conductor_(1), coeffs_{r} {}
  CycloScalar(i64 n) : conductor_(1), coeffs_{Rational(n)} {}
  CycloScalar(int n) : conductor_(1), coeffs_{Rational(n)} {}

  // Canonical remainder of an arbitrary polynomial in zeta_L.  Acts as a
  // ring homomorphism Q[x] -> Q(zeta_L).
  static CycloScalar reduce(const std::vector<Rational>& poly, i64 L);

  i64 conductor() const { return conductor_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  bool is_zero() const;
  bool is_rational() const;
  Rational rational_part() const;  // valid only when is_rational()

  // Image under the embedding zeta_L -> zeta_M^(M/L); requires L | M.
  CycloScalar promoted(i64 M) const;

  CycloScalar operator-() const;
  CycloScalar& operator+=(const CycloScalar& o);
  CycloScalar& operator-=(const CycloScalar& o);
  CycloScalar& operator*=(const CycloScalar& o);
  CycloScalar& operator*=(const Rational& r);
  CycloScalar& operator/=(const Rational& r);

  friend CycloScalar operator+(CycloScalar a, const CycloScalar& b) { return a += b; }
  friend CycloScalar operator-(CycloScalar a, const CycloScalar& b) { return a -= b; }
  friend CycloScalar operator*(CycloScalar a, const CycloScalar& b) { return a *= b; }
  friend CycloScalar operator*(CycloScalar a, const Rational& r) { return a *= r; }
  friend CycloScalar operator/(CycloScalar a, const Rational& r) { return a /= r; }

  friend bool operator==(const CycloScalar& a, const CycloScalar& b);
  friend bool operator!=(const CycloScalar& a, const CycloScalar& b) {
    return !(a == b);
  }

  // Canonical text form `cyclo(L)[c0, c1, ...]`, bit-exact in golden files.
  std::string to_string() const;
  static CycloScalar parse(std::string_view text);

 private:
  i64 conductor_;
  std::vector<Rational> coeffs_;  // size phi(conductor_)
};

// e^(2 pi i q) as an element of Q(zeta_L); the denominator of q must divide
// L, otherwise a conductor error is raised.
CycloScalar root_of_unity(const QmodZ& q, i64 L);

// Accumulator for sums of terms c * zeta_L^k.  Collects exponents modulo
// the working conductor in Q[x]/(x^M - 1) and reduces modulo the cyclotomic
// polynomial once at the end, which turns the O(|A|) reductions of a
// transform column into one.  Values whose conductor does not divide the
// base enlarge the working conductor to the lcm.
class RootAccumulator {
 public:
  explicit RootAccumulator(i64 L);
  void add(const CycloScalar& value, i64 exponent);  // value * zeta_L^exponent
  CycloScalar finish() const;

 private:
  void grow(i64 M);
  i64 base_;       // unit of the incoming exponents
  i64 conductor_;  // current working conductor, multiple of base_
  std::vector<Rational> slots_;  // indexed by exponent mod conductor_
};

}  // namespace adelharm
