#include "adelharm/funcspace.hpp"

namespace adelharm {

FnOnGroup::FnOnGroup(FinAbGroup parent) : parent_(std::move(parent)) {
  values_.assign(static_cast<size_t>(parent_.order_i64()), CycloScalar());
}

FnOnGroup FnOnGroup::delta(const FinAbGroup& parent, const GroupElement& at) {
  FnOnGroup f(parent);
  f.set(at, CycloScalar(1));
  return f;
}

FnOnGroup FnOnGroup::constant(const FinAbGroup& parent, const CycloScalar& c) {
  FnOnGroup f(parent);
  for (auto& v : f.values_) v = c;
  return f;
}

const CycloScalar& FnOnGroup::at(const GroupElement& a) const {
  return values_[static_cast<size_t>(parent_.index_of(a))];
}

void FnOnGroup::set(const GroupElement& a, const CycloScalar& v) {
  values_[static_cast<size_t>(parent_.index_of(a))] = v;
}

bool FnOnGroup::is_zero() const {
  for (const auto& v : values_)
    if (!v.is_zero()) return false;
  return true;
}

FnOnGroup FnOnGroup::operator+(const FnOnGroup& o) const {
  require(parent_ == o.parent_, ErrorKind::parent, "function parents differ");
  FnOnGroup out(parent_);
  for (size_t i = 0; i < values_.size(); ++i) out.values_[i] = values_[i] + o.values_[i];
  return out;
}

FnOnGroup FnOnGroup::operator-(const FnOnGroup& o) const {
  require(parent_ == o.parent_, ErrorKind::parent, "function parents differ");
  FnOnGroup out(parent_);
  for (size_t i = 0; i < values_.size(); ++i) out.values_[i] = values_[i] - o.values_[i];
  return out;
}

FnOnGroup FnOnGroup::scaled(const CycloScalar& c) const {
  FnOnGroup out(parent_);
  for (size_t i = 0; i < values_.size(); ++i) out.values_[i] = values_[i] * c;
  return out;
}

bool operator==(const FnOnGroup& a, const FnOnGroup& b) {
  if (a.parent_ != b.parent_) return false;
  for (size_t i = 0; i < a.values_.size(); ++i)
    if (a.values_[i] != b.values_[i]) return false;
  return true;
}

FnOnGroup pullback(const GroupHom& phi, const FnOnGroup& f) {
  require(f.parent() == phi.target(), ErrorKind::parent,
          "pullback expects a function on the target");
  FnOnGroup out(phi.source());
  const i64 n = phi.source().order_i64();
  for (i64 i = 0; i < n; ++i)
    out.set_index(i, f.at(phi.apply(phi.source().element_at(i))));
  return out;
}

FnOnGroup pushforward(const GroupHom& phi, const FnOnGroup& f) {
  require(f.parent() == phi.source(), ErrorKind::parent,
          "pushforward expects a function on the source");
  FnOnGroup out(phi.target());
  const i64 n = phi.source().order_i64();
  for (i64 i = 0; i < n; ++i) {
    const CycloScalar& v = f.at_index(i);
    if (v.is_zero()) continue;
    i64 idx = phi.target().index_of(phi.apply(phi.source().element_at(i)));
    out.set_index(idx, out.at_index(idx) + v);
  }
  return out;
}

FnOnGroup shriek(const GroupHom& phi, const FnOnGroup& f) {
  Rational factor(phi.cokernel_order(), phi.kernel_order());
  FnOnGroup sum = pushforward(phi, f);
  FnOnGroup out(phi.target());
  const i64 n = phi.target().order_i64();
  for (i64 i = 0; i < n; ++i) out.set_index(i, sum.at_index(i) * factor);
  return out;
}

CycloScalar pair_fn(const FnOnGroup& f, const FnOnGroup& g) {
  require(f.parent() == g.parent(), ErrorKind::parent, "pairing parents differ");
  CycloScalar acc;
  for (i64 i = 0; i < f.size(); ++i) {
    const CycloScalar& a = f.at_index(i);
    if (a.is_zero()) continue;
    const CycloScalar& b = g.at_index(i);
    if (b.is_zero()) continue;
    acc += a * b;
  }
  return acc;
}

FnOnGroup translate(const GroupElement& a, const FnOnGroup& f) {
  require(a.parent() == f.parent(), ErrorKind::parent, "translation parent mismatch");
  FnOnGroup out(f.parent());
  const i64 n = f.parent().order_i64();
  for (i64 i = 0; i < n; ++i) {
    GroupElement x = f.parent().element_at(i);
    out.set_index(i, f.at(x - a));
  }
  return out;
}

FnOnGroup modulate(const FnOnGroup& f, const GroupElement& alpha, int sign) {
  require(alpha.parent().orders() == f.parent().orders(), ErrorKind::parent,
          "character lives on the dual group");
  const i64 expo = f.parent().exponent();
  FnOnGroup out(f.parent());
  const i64 n = f.parent().order_i64();
  for (i64 i = 0; i < n; ++i) {
    const CycloScalar& v = f.at_index(i);
    if (v.is_zero()) continue;
    QmodZ q = pairing0(f.parent().element_at(i), alpha);
    if (sign < 0) q = -q;
    out.set_index(i, v * root_of_unity(q, expo));
  }
  return out;
}

}  // namespace adelharm
