#include "adelharm/fourier.hpp"

namespace adelharm {

namespace {

// Direct O(|A|^2) summation.  Each column accumulates exponents modulo the
// conductor and reduces once; together with the zero-skip this keeps exact
// transforms fast enough for the desk-scale suites.
FnOnGroup transform(const FnOnGroup& f, int sign, bool averaged) {
  const FinAbGroup& a = f.parent();
  const FinAbGroup dual = dual_group(a);
  const i64 n = a.order_i64();
  const i64 expo = a.exponent();
  const size_t rank = a.rank();

  // Scaled residues so that alpha(x) = sum_i x_i alpha_i expo/m_i mod expo.
  std::vector<std::vector<i64>> scaled(static_cast<size_t>(n));
  for (i64 i = 0; i < n; ++i) {
    GroupElement x = a.element_at(i);
    std::vector<i64> row(rank);
    for (size_t k = 0; k < rank; ++k)
      row[k] = x.residues()[k] * (expo / a.orders()[k]) % expo;
    scaled[static_cast<size_t>(i)] = std::move(row);
  }

  const Rational norm = averaged ? Rational(Int(1), a.order()) : Rational(1);
  FnOnGroup out(dual);
  for (i64 ai = 0; ai < n; ++ai) {
    GroupElement alpha = dual.element_at(ai);
    RootAccumulator acc(expo);
    bool any = false;
    for (i64 xi = 0; xi < n; ++xi) {
      const CycloScalar& v = f.at_index(xi);
      if (v.is_zero()) continue;
      i64 e = 0;
      const std::vector<i64>& row = scaled[static_cast<size_t>(xi)];
      for (size_t k = 0; k < rank; ++k)
        e = (e + row[k] * alpha.residues()[k]) % expo;
      acc.add(v, sign < 0 ? (expo - e) % expo : e);
      any = true;
    }
    if (!any) continue;
    CycloScalar total = acc.finish();
    if (averaged) total *= norm;
    out.set_index(ai, total);
  }
  return out;
}

}  // namespace

FnOnGroup fourier_F(const FnOnGroup& f) { return transform(f, -1, true); }

FnOnGroup fourier_Fprime(const FnOnGroup& f) { return transform(f, +1, false); }

FnOnGroup fourier0(const FnOnGroup& f, Transform which) {
  switch (which) {
    case Transform::F:
    case Transform::Ftilde:
      return fourier_F(f);
    case Transform::Fprime:
    case Transform::Ftildeprime:
      return fourier_Fprime(f);
  }
  fail(ErrorKind::precondition, "unknown transform");
}

}  // namespace adelharm
