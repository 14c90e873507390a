#include "adelharm/gen.hpp"

namespace adelharm {

namespace {

void decompose_rec(i64 n, i64 max_factor, std::vector<i64>& cur,
                   std::vector<std::vector<i64>>& out) {
  if (n == 1) {
    out.push_back(cur);
    return;
  }
  for (i64 f = std::min(n, max_factor); f >= 2; --f) {
    if (n % f) continue;
    cur.push_back(f);
    decompose_rec(n / f, f, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<std::vector<i64>> all_decompositions(i64 n) {
  std::vector<std::vector<i64>> out;
  std::vector<i64> cur;
  decompose_rec(n, n, cur, out);
  return out;
}

FinAbGroup random_group(Rng& rng, i64 max_order, size_t max_rank) {
  std::vector<i64> orders;
  i64 budget = max_order;
  size_t rank = static_cast<size_t>(rng.range(0, static_cast<i64>(max_rank)));
  for (size_t i = 0; i < rank && budget >= 2; ++i) {
    i64 m = rng.range(2, std::min<i64>(budget, 9));
    orders.push_back(m);
    budget /= m;
  }
  return FinAbGroup{orders};
}

GroupHom random_hom(Rng& rng, const FinAbGroup& source, const FinAbGroup& target) {
  std::vector<std::vector<i64>> m(target.rank(), std::vector<i64>(source.rank(), 0));
  for (size_t i = 0; i < target.rank(); ++i) {
    const i64 ni = target.orders()[i];
    for (size_t j = 0; j < source.rank(); ++j) {
      const i64 g = gcd_i64(ni, source.orders()[j]);
      m[i][j] = (ni / g) * rng.below(g) % ni;
    }
  }
  return GroupHom(source, target, std::move(m));
}

FnOnGroup random_function(Rng& rng, const FinAbGroup& parent) {
  const i64 n = parent.order_i64();
  const i64 expo = parent.exponent();
  FnOnGroup f(parent);
  for (i64 i = 0; i < n; ++i) {
    if (rng.chance(0.25)) continue;  // keep some sparsity
    CycloScalar v(Rational(rng.range(-3, 3)));
    if (expo > 1 && rng.chance(0.5)) {
      QmodZ q{Rational(Int(rng.below(expo)), Int(expo))};
      v += root_of_unity(q, expo) * Rational(rng.range(-2, 2));
    }
    f.set_index(i, v);
  }
  return f;
}

GroupElement random_element(Rng& rng, const FinAbGroup& parent) {
  std::vector<i64> res(parent.rank());
  for (size_t i = 0; i < parent.rank(); ++i) res[i] = rng.below(parent.orders()[i]);
  return parent.make(std::move(res));
}

SchwartzFunction random_schwartz(Rng& rng, const GradedModel& m, int max_terms,
                                 int level_margin) {
  const int lo = m.lo() - level_margin;
  const int hi = m.hi() + level_margin;
  const i64 expo = m.ambient().exponent();
  std::vector<SchwartzTerm> terms;
  const int count = static_cast<int>(rng.range(1, max_terms));
  for (int t = 0; t < count; ++t) {
    SchwartzTerm term;
    term.coeff = CycloScalar(Rational(rng.range(-3, 3), rng.range(1, 3)));
    if (expo > 1 && rng.chance(0.4)) {
      QmodZ q{Rational(Int(rng.below(expo)), Int(expo))};
      term.coeff += root_of_unity(q, expo);
    }
    if (term.coeff.is_zero()) term.coeff = CycloScalar(1);
    term.base = random_element(rng, m.ambient());
    for (int k = 0; k < m.dims(); ++k)
      term.level.push_back(static_cast<int>(rng.range(lo, hi)));
    terms.push_back(std::move(term));
  }
  return SchwartzFunction(m, std::move(terms));
}

}  // namespace adelharm
