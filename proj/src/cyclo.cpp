#include "adelharm/cyclo.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <sstream>

namespace adelharm {

i64 euler_phi(i64 n) {
  i64 result = n;
  for (i64 p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

namespace {

// Exact division of integer polynomials, remainder must vanish.
std::vector<Int> poly_div_exact(std::vector<Int> num, const std::vector<Int>& den) {
  const size_t dd = den.size() - 1;
  require(den.back() != 0, ErrorKind::precondition, "division by zero polynomial");
  std::vector<Int> quot(num.size() - dd, Int(0));
  for (size_t i = num.size(); i-- > dd;) {
    Int c = num[i] / den[dd];
    require(c * den[dd] == num[i], ErrorKind::precondition,
            "inexact polynomial division");
    quot[i - dd] = c;
    if (c != 0)
      for (size_t k = 0; k <= dd; ++k) num[i - dd + k] -= c * den[k];
  }
  for (const Int& c : num)
    require(c == 0, ErrorKind::precondition, "nonzero polynomial remainder");
  return quot;
}

std::vector<Int> poly_mul(const std::vector<Int>& a, const std::vector<Int>& b) {
  std::vector<Int> out(a.size() + b.size() - 1, Int(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

std::mutex registry_mutex;
std::map<i64, std::unique_ptr<CycloTable>>& table_registry() {
  static std::map<i64, std::unique_ptr<CycloTable>> reg;
  return reg;
}

std::vector<Int> compute_cyclotomic(i64 L) {
  if (L == 1) return {Int(-1), Int(1)};  // x - 1
  // (x^L - 1) / prod_{d | L, d < L} Phi_d
  std::vector<Int> num(static_cast<size_t>(L) + 1, Int(0));
  num[0] = -1;
  num[static_cast<size_t>(L)] = 1;
  std::vector<Int> den{Int(1)};
  for (i64 d = 1; d < L; ++d)
    if (L % d == 0) den = poly_mul(den, cyclotomic_poly(d));
  return poly_div_exact(std::move(num), den);
}

std::unique_ptr<CycloTable> build_table(i64 L) {
  auto t = std::make_unique<CycloTable>();
  t->conductor = L;
  t->poly = compute_cyclotomic(L);
  t->degree = static_cast<i64>(t->poly.size()) - 1;
  const size_t deg = static_cast<size_t>(t->degree);
  const i64 rows = L;  // x^L = 1 in the quotient, so exponents fold mod L
  t->pow.reserve(static_cast<size_t>(rows));
  std::vector<Int> cur(deg, Int(0));
  for (i64 m = 0; m < rows; ++m) {
    if (m < t->degree) {
      cur.assign(deg, Int(0));
      cur[static_cast<size_t>(m)] = 1;
    } else {
      // cur = x * previous mod poly (poly is monic)
      std::vector<Int> nxt(deg, Int(0));
      const std::vector<Int>& prev = t->pow.back();
      for (size_t k = 0; k + 1 < deg; ++k) nxt[k + 1] = prev[k];
      const Int& lead = prev[deg - 1];
      if (lead != 0)
        for (size_t k = 0; k < deg; ++k) nxt[k] -= lead * t->poly[k];
      cur = std::move(nxt);
    }
    t->pow.push_back(cur);
  }
  return t;
}

}  // namespace

const CycloTable& cyclo_table(i64 L) {
  require(L >= 1, ErrorKind::precondition, "conductor must be positive");
  {
    std::lock_guard<std::mutex> lock(registry_mutex);
    auto it = table_registry().find(L);
    if (it != table_registry().end()) return *it->second;
  }
  // Built outside the lock; cyclotomic_poly recurses into smaller conductors.
  auto t = build_table(L);
  std::lock_guard<std::mutex> lock(registry_mutex);
  auto [it, inserted] = table_registry().emplace(L, std::move(t));
  return *it->second;
}

std::vector<Int> cyclotomic_poly(i64 L) { return cyclo_table(L).poly; }

CycloScalar CycloScalar::reduce(const std::vector<Rational>& poly, i64 L) {
  const CycloTable& t = cyclo_table(L);
  CycloScalar out;
  out.conductor_ = L;
  out.coeffs_.assign(static_cast<size_t>(t.degree), Rational());
  for (size_t m = 0; m < poly.size(); ++m) {
    if (poly[m].is_zero()) continue;
    const i64 folded = static_cast<i64>(m) % L;  // x^L = 1 mod Phi_L
    if (folded < t.degree) {
      out.coeffs_[static_cast<size_t>(folded)] += poly[m];
      continue;
    }
    const std::vector<Int>& row = t.power(folded);
    for (size_t k = 0; k < row.size(); ++k)
      if (row[k] != 0) out.coeffs_[k] += poly[m] * Rational(row[k]);
  }
  return out;
}

bool CycloScalar::is_zero() const {
  for (const Rational& c : coeffs_)
    if (!c.is_zero()) return false;
  return true;
}

bool CycloScalar::is_rational() const {
  if (conductor_ == 1 || conductor_ == 2) return true;
  for (size_t k = 1; k < coeffs_.size(); ++k)
    if (!coeffs_[k].is_zero()) return false;
  return true;
}

Rational CycloScalar::rational_part() const {
  require(is_rational(), ErrorKind::precondition, "scalar is not rational");
  return coeffs_[0];
}

CycloScalar CycloScalar::promoted(i64 M) const {
  if (M == conductor_) return *this;
  require(M % conductor_ == 0, ErrorKind::conductor,
          "promotion target is not a multiple of the conductor");
  const i64 step = M / conductor_;
  std::vector<Rational> poly(static_cast<size_t>((static_cast<i64>(coeffs_.size()) - 1) * step + 1));
  for (size_t k = 0; k < coeffs_.size(); ++k)
    poly[k * static_cast<size_t>(step)] = coeffs_[k];
  return reduce(poly, M);
}

CycloScalar CycloScalar::operator-() const {
  CycloScalar out = *this;
  for (Rational& c : out.coeffs_) c = -c;
  return out;
}

CycloScalar& CycloScalar::operator+=(const CycloScalar& o) {
  if (conductor_ != o.conductor_) {
    i64 M = lcm_i64(conductor_, o.conductor_);
    *this = promoted(M);
    return *this += o.promoted(M);
  }
  for (size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  return *this;
}

CycloScalar& CycloScalar::operator-=(const CycloScalar& o) {
  if (conductor_ != o.conductor_) {
    i64 M = lcm_i64(conductor_, o.conductor_);
    *this = promoted(M);
    return *this -= o.promoted(M);
  }
  for (size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
  return *this;
}

CycloScalar& CycloScalar::operator*=(const CycloScalar& o) {
  if (conductor_ != o.conductor_) {
    i64 M = lcm_i64(conductor_, o.conductor_);
    *this = promoted(M);
    return *this *= o.promoted(M);
  }
  std::vector<Rational> conv(coeffs_.size() + o.coeffs_.size() - 1);
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    for (size_t j = 0; j < o.coeffs_.size(); ++j) {
      if (o.coeffs_[j].is_zero()) continue;
      conv[i + j] += coeffs_[i] * o.coeffs_[j];
    }
  }
  *this = reduce(conv, conductor_);
  return *this;
}

CycloScalar& CycloScalar::operator*=(const Rational& r) {
  for (Rational& c : coeffs_) c *= r;
  return *this;
}

CycloScalar& CycloScalar::operator/=(const Rational& r) {
  require(!r.is_zero(), ErrorKind::precondition, "division by zero rational");
  for (Rational& c : coeffs_) c /= r;
  return *this;
}

bool operator==(const CycloScalar& a, const CycloScalar& b) {
  if (a.conductor_ == b.conductor_) return a.coeffs_ == b.coeffs_;
  i64 M = lcm_i64(a.conductor_, b.conductor_);
  return a.promoted(M).coeffs_ == b.promoted(M).coeffs_;
}

std::string CycloScalar::to_string() const {
  std::ostringstream os;
  os << "cyclo(" << conductor_ << ")[";
  for (size_t k = 0; k < coeffs_.size(); ++k) {
    if (k) os << ", ";
    os << coeffs_[k].to_string();
  }
  os << "]";
  return os.str();
}

CycloScalar CycloScalar::parse(std::string_view text) {
  auto bad = [&]() -> void {
    fail(ErrorKind::schema, "invalid scalar literal: " + std::string(text));
  };
  // Accept either a plain rational or the canonical cyclo(L)[...] form.
  if (text.rfind("cyclo(", 0) != 0) return CycloScalar(Rational::parse(text));
  size_t close = text.find(')');
  if (close == std::string_view::npos) bad();
  i64 L = 0;
  for (size_t i = 6; i < close; ++i) {
    if (text[i] < '0' || text[i] > '9') bad();
    L = L * 10 + (text[i] - '0');
  }
  if (L < 1) bad();
  if (close + 1 >= text.size() || text[close + 1] != '[' || text.back() != ']') bad();
  std::string_view body = text.substr(close + 2, text.size() - close - 3);
  std::vector<Rational> coeffs;
  size_t pos = 0;
  while (pos <= body.size() && !body.empty()) {
    size_t comma = body.find(',', pos);
    std::string_view item = body.substr(
        pos, comma == std::string_view::npos ? body.size() - pos : comma - pos);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    coeffs.push_back(Rational::parse(item));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  const CycloTable& t = cyclo_table(L);
  if (static_cast<i64>(coeffs.size()) != t.degree) bad();
  return reduce(coeffs, L);
}

CycloScalar root_of_unity(const QmodZ& q, i64 L) {
  require(Int(L) % q.denominator() == 0, ErrorKind::conductor,
          "denominator of the exponent does not divide the conductor");
  Int k = q.value().num() * (Int(L) / q.value().den());
  i64 exponent = static_cast<i64>(k % L);
  const CycloTable& t = cyclo_table(L);
  std::vector<Rational> poly(static_cast<size_t>(exponent) + 1);
  poly[static_cast<size_t>(exponent)] = Rational(1);
  (void)t;
  return CycloScalar::reduce(poly, L);
}

RootAccumulator::RootAccumulator(i64 L)
    : base_(L), conductor_(L), slots_(static_cast<size_t>(L)) {}

void RootAccumulator::grow(i64 M) {
  const i64 step = M / conductor_;
  std::vector<Rational> wide(static_cast<size_t>(M));
  for (size_t m = 0; m < slots_.size(); ++m)
    if (!slots_[m].is_zero()) wide[m * static_cast<size_t>(step)] = slots_[m];
  slots_ = std::move(wide);
  conductor_ = M;
}

void RootAccumulator::add(const CycloScalar& value, i64 exponent) {
  if (conductor_ % value.conductor() != 0)
    grow(lcm_i64(conductor_, value.conductor()));
  const CycloScalar v =
      value.conductor() == conductor_ ? value : value.promoted(conductor_);
  i64 e = ((exponent % base_) + base_) % base_ * (conductor_ / base_);
  const std::vector<Rational>& c = v.coeffs();
  for (size_t d = 0; d < c.size(); ++d) {
    if (c[d].is_zero()) continue;
    slots_[static_cast<size_t>((e + static_cast<i64>(d)) % conductor_)] += c[d];
  }
}

CycloScalar RootAccumulator::finish() const {
  return CycloScalar::reduce(slots_, conductor_);
}

}  // namespace adelharm
