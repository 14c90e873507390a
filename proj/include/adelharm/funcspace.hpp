#pragma once

#include <vector>

#include "adelharm/cyclo.hpp"
#include "adelharm/finab.hpp"

namespace adelharm {

// Complex-valued function on a finite abelian group, stored densely in the
// fixed enumeration order with exact cyclotomic values.
class FnOnGroup {
 public:
  FnOnGroup() = default;
  explicit FnOnGroup(FinAbGroup parent);

  static FnOnGroup delta(const FinAbGroup& parent, const GroupElement& at);
  static FnOnGroup constant(const FinAbGroup& parent, const CycloScalar& c);

  const FinAbGroup& parent() const { return parent_; }
  i64 size() const { return static_cast<i64>(values_.size()); }

  const CycloScalar& at(const GroupElement& a) const;
  const CycloScalar& at_index(i64 idx) const { return values_[static_cast<size_t>(idx)]; }
  void set(const GroupElement& a, const CycloScalar& v);
  void set_index(i64 idx, const CycloScalar& v) { values_[static_cast<size_t>(idx)] = v; }

  bool is_zero() const;

  FnOnGroup operator+(const FnOnGroup& o) const;
  FnOnGroup operator-(const FnOnGroup& o) const;
  FnOnGroup scaled(const CycloScalar& c) const;

  friend bool operator==(const FnOnGroup& a, const FnOnGroup& b);
  friend bool operator!=(const FnOnGroup& a, const FnOnGroup& b) { return !(a == b); }

 private:
  FinAbGroup parent_;
  std::vector<CycloScalar> values_;
};

// Precomposition (phi* f)(a) = f(phi(a)).
FnOnGroup pullback(const GroupHom& phi, const FnOnGroup& f);

// Fiber sum (phi_* f)(x) = sum over phi(y) = x of f(y); empty sums are zero.
FnOnGroup pushforward(const GroupHom& phi, const FnOnGroup& f);

// Normalized pushforward phi_! = (|coker phi| / |ker phi|) phi_*.
FnOnGroup shriek(const GroupHom& phi, const FnOnGroup& f);

// Bilinear pairing sum_a f(a) g(a); no conjugation.
CycloScalar pair_fn(const FnOnGroup& f, const FnOnGroup& g);

// Translation (t_a)_* f(x) = f(x - a).
FnOnGroup translate(const GroupElement& a, const FnOnGroup& f);

// Pointwise multiplication by the character e^(sign * 2 pi i alpha(.)).
FnOnGroup modulate(const FnOnGroup& f, const GroupElement& alpha, int sign);

}  // namespace adelharm
