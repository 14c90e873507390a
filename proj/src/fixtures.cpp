#include "adelharm/fixtures.hpp"

namespace adelharm {

FilteredObjectPtr corrupted_provider_fixture() {
  GradedModel m(1, {{{0}, {2}}, {{1}, {2}}});
  FilteredObjectPtr base = m.object();
  FilteredObject::Providers p;
  p.quotient = [base](int i, int j) { return base->quotient(i, j); };
  p.alpha = [base](int i, int j, int k) { return base->alpha(i, j, k); };
  p.pi = [base](int i, int j, int k) -> WindowMap {
    if (i == -1 && j == 0 && k == 1) {
      // Leaks the killed coordinate into the surviving one.
      FinAbGroup src = base->window_group(-1, 1);
      FinAbGroup dst = base->window_group(0, 1);
      return WindowMap(GroupHom(src, dst, {{1, 1}}));
    }
    return base->pi(i, j, k);
  };
  return FilteredObject::from_providers(1, *base->lower_bound(),
                                        *base->upper_bound(), std::move(p));
}

FilteredObjectPtr lazy_half_line(i64 p, std::optional<int> hi) {
  auto group_of = [p](int i, int j) {
    std::vector<i64> orders;
    for (int r = std::max(i + 1, 0); r <= j; ++r) orders.push_back(p);
    return FinAbGroup{orders};
  };
  FilteredObject::Providers prov;
  prov.quotient = [group_of](int i, int j) { return WindowValue(group_of(i, j)); };
  prov.alpha = [group_of](int i, int j, int k) {
    FinAbGroup src = group_of(i, j), dst = group_of(i, k);
    std::vector<std::vector<i64>> m(dst.rank(), std::vector<i64>(src.rank(), 0));
    for (size_t c = 0; c < src.rank(); ++c) m[c][c] = 1;
    return WindowMap(GroupHom(src, dst, std::move(m)));
  };
  prov.pi = [group_of](int i, int j, int k) {
    FinAbGroup src = group_of(i, k), dst = group_of(j, k);
    size_t drop = src.rank() - dst.rank();
    std::vector<std::vector<i64>> m(dst.rank(), std::vector<i64>(src.rank(), 0));
    for (size_t c = 0; c < dst.rank(); ++c) m[c][c + drop] = 1;
    return WindowMap(GroupHom(src, dst, std::move(m)));
  };
  return FilteredObject::from_providers(1, -1, hi, std::move(prov));
}

GradedModel random_graded_model(Rng& rng, int dims, int max_span,
                                const std::vector<i64>& order_pool) {
  std::map<std::vector<int>, std::vector<i64>> support;
  int span_r = static_cast<int>(rng.range(1, max_span));
  int base_r = static_cast<int>(rng.range(-2, 1));
  if (dims == 1) {
    for (int r = base_r; r < base_r + span_r; ++r) {
      if (rng.chance(0.15)) continue;  // occasional gap
      std::vector<i64> orders{order_pool[static_cast<size_t>(
          rng.below(static_cast<i64>(order_pool.size())))]};
      support.emplace(std::vector<int>{r}, std::move(orders));
    }
  } else {
    int span_s = static_cast<int>(rng.range(1, max_span));
    int base_s = static_cast<int>(rng.range(-2, 1));
    for (int r = base_r; r < base_r + span_r; ++r)
      for (int s = base_s; s < base_s + span_s; ++s) {
        if (rng.chance(0.15)) continue;
        std::vector<i64> orders{order_pool[static_cast<size_t>(
            rng.below(static_cast<i64>(order_pool.size())))]};
        support.emplace(std::vector<int>{r, s}, std::move(orders));
      }
  }
  return GradedModel(dims, std::move(support));
}

MorphismFixture random_filtered_endo(Rng& rng, int max_span,
                                     const std::vector<i64>& order_pool) {
  for (;;) {
    GradedModel m = random_graded_model(rng, 1, max_span, order_pool);
    if (m.empty()) continue;
    const FinAbGroup& a = m.ambient();
    // Block lower-triangular in the grading: component w may hit any
    // component with index at most w, which preserves every F(i).
    std::vector<std::vector<i64>> mat(a.rank(), std::vector<i64>(a.rank(), 0));
    for (const auto& src : m.components())
      for (const auto& dst : m.components()) {
        if (dst.idx[0] > src.idx[0]) continue;
        for (size_t sc = 0; sc < src.orders.size(); ++sc)
          for (size_t dc = 0; dc < dst.orders.size(); ++dc) {
            const i64 n = dst.orders[dc];
            const i64 g = gcd_i64(n, src.orders[sc]);
            mat[dst.coord0 + dc][src.coord0 + sc] = (n / g) * rng.below(g) % n;
          }
      }
    GroupHom h(a, a, std::move(mat));
    FilteredObjectPtr obj = m.object();
    return MorphismFixture{m, obj, FilteredMorphism::from_ambient(obj, obj, h)};
  }
}

}  // namespace adelharm
