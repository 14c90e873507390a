#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "adelharm/catlaws.hpp"
#include "adelharm/fixtures.hpp"
#include "adelharm/gen.hpp"

using namespace adelharm;

namespace {

GradedModel row_model(std::map<int, std::vector<i64>> support) {
  std::map<std::vector<int>, std::vector<i64>> s;
  for (auto& [r, orders] : support) s.emplace(std::vector<int>{r}, orders);
  return GradedModel(1, std::move(s));
}

}  // namespace

TEST_CASE("strong object check: graded models pass, zero object passes") {
  GradedModel m = row_model({{-1, {2}}, {0, {3}}, {1, {4}}});
  CHECK(strong_object_check(m.object(), -2, 1).ok);
  CHECK(strong_object_check(GradedModel(1, {}).object(), -1, 1).ok);
  GradedModel g(2, {{{0, 0}, {2}}, {{0, 1}, {2}}, {{1, 0}, {3}}});
  CHECK(strong_object_check(g.object(), g.lo(), g.hi()).ok);
}

TEST_CASE("strong object check: corrupted provider fails with a witness") {
  FilteredObjectPtr bad = corrupted_provider_fixture();
  StrongCheckResult res = strong_object_check(bad, -1, 1);
  CHECK(!res.ok);
  CHECK(res.witness.find("(-1, 0, 1)") != std::string::npos);
}

TEST_CASE("level-0 homs are quasi-strong with a factorization") {
  FinAbGroup z4{{4}}, z2{{2}};
  GroupHom mod2(z4, z2, {{1}});
  QuasiStrongResult r = quasi_strong_check(mod2);
  CHECK(r.ok);
  REQUIRE(r.witness.has_value());
  GroupHom composite =
      hom_compose(*r.witness->image_inclusion->ambient_hom(),
                  *r.witness->coimage_projection->ambient_hom());
  CHECK(composite == mod2);
  // Zero map, identity, random homs.
  Rng rng(211);
  for (int iter = 0; iter < 30; ++iter) {
    FinAbGroup a = random_group(rng, 24, 3);
    FinAbGroup b = random_group(rng, 24, 3);
    GroupHom phi = random_hom(rng, a, b);
    QuasiStrongResult q = quasi_strong_check(phi);
    CHECK(q.ok);
    GroupHom again =
        hom_compose(*q.witness->image_inclusion->ambient_hom(),
                    *q.witness->coimage_projection->ambient_hom());
    CHECK(again == phi);
  }
}

TEST_CASE("identity between differently filtered copies is quasi-strong") {
  // (Z/2)^2 filtered by the first or by the second coordinate.
  FinAbGroup v{{2, 2}};
  auto chain1 = [v](int i) {
    if (i <= -1) return Subgroup::trivial(v);
    if (i == 0) return Subgroup(v, {v.make({1, 0})});
    return Subgroup::full(v);
  };
  auto chain2 = [v](int i) {
    if (i <= -1) return Subgroup::trivial(v);
    if (i == 0) return Subgroup(v, {v.make({0, 1})});
    return Subgroup::full(v);
  };
  FilteredObjectPtr f = FilteredObject::from_chain(v, chain1, -1, 1);
  FilteredObjectPtr g = FilteredObject::from_chain(v, chain2, -1, 1);
  // The identity is not filtration-compatible as aligned, but admissible
  // after a shift, and then quasi-strong.
  auto aligned = align_morphism(f, g, GroupHom::identity(v), 3);
  REQUIRE(aligned.has_value());
  CHECK(quasi_strong_check(*aligned).ok);
  // The two bounded filtrations are sandwich-equivalent.
  CHECK(filtration_equivalence_check(f, g, -2, 2) == Tri::yes);
}

TEST_CASE("componentwise doubling is quasi-strong with explicit factorization") {
  GradedModel m = row_model({{0, {4}}, {1, {4}}});
  FilteredObjectPtr x = m.object();
  GroupHom dbl(m.ambient(), m.ambient(), {{2, 0}, {0, 2}});
  FilteredMorphismPtr f = FilteredMorphism::from_ambient(x, x, dbl);
  QuasiStrongResult r = quasi_strong_check(f);
  CHECK(r.ok);
  REQUIRE(r.witness.has_value());
  // The factorization composes back to f on every window.
  for (int i = -1; i <= 1; ++i)
    for (int j = i; j <= 1; ++j) {
      GroupHom lhs = hom_compose(r.witness->image_inclusion->component(i, j).hom(),
                                 r.witness->coimage_projection->component(i, j).hom());
      CHECK(lhs == f->component(i, j).hom());
    }
}

TEST_CASE("quasi-strong composition closure on seeded pairs") {
  Rng rng(223);
  int done = 0;
  while (done < 25) {
    MorphismFixture fix = random_filtered_endo(rng, 3, {2, 3, 4});
    MorphismFixture fix2{fix.model, fix.object, fix.morphism};
    // Second endomorphism of the same object.
    Rng sub = rng.fork(static_cast<std::uint64_t>(done));
    MorphismFixture other = random_filtered_endo(sub, 3, {2, 3, 4});
    // Regenerate until it lives on the same model (cheap: reuse the hom
    // generator directly on the same object).
    const FinAbGroup& a = fix.model.ambient();
    std::vector<std::vector<i64>> mat(a.rank(), std::vector<i64>(a.rank(), 0));
    for (const auto& srcc : fix.model.components())
      for (const auto& dstc : fix.model.components()) {
        if (dstc.idx[0] > srcc.idx[0]) continue;
        for (size_t sc = 0; sc < srcc.orders.size(); ++sc)
          for (size_t dc = 0; dc < dstc.orders.size(); ++dc) {
            const i64 n = dstc.orders[dc];
            const i64 g = gcd_i64(n, srcc.orders[sc]);
            mat[dstc.coord0 + dc][srcc.coord0 + sc] = (n / g) * sub.below(g) % n;
          }
      }
    FilteredMorphismPtr second = FilteredMorphism::from_ambient(
        fix.object, fix.object, GroupHom(a, a, std::move(mat)));
    (void)other;
    if (!quasi_strong_check(fix.morphism).ok) continue;
    if (!quasi_strong_check(second).ok) continue;
    CHECK(quasi_strong_check(compose_filtered(second, fix.morphism)).ok);
    ++done;
  }
}

TEST_CASE("pullback of a cokernel is a cokernel") {
  // phi: Z/4 -> Z/2 reduction, psi = id on Z/2 (trivial filtrations).
  FinAbGroup z4{{4}}, z2{{2}};
  FilteredObjectPtr a = FilteredObject::trivial(z4);
  FilteredObjectPtr b = FilteredObject::trivial(z2);
  FilteredMorphismPtr phi =
      FilteredMorphism::from_ambient(a, b, GroupHom(z4, z2, {{1}}));
  FilteredMorphismPtr psi = FilteredMorphism::identity(b);
  CHECK(pullback_cokernel_check(phi, psi));
  // psi = 0.
  FilteredMorphismPtr zero =
      FilteredMorphism::from_ambient(b, b, GroupHom::zero(z2, z2));
  CHECK(pullback_cokernel_check(phi, zero));
  // phi an isomorphism.
  FilteredMorphismPtr iso = FilteredMorphism::identity(b);
  CHECK(pullback_cokernel_check(iso, psi));
  // Non-epi phi violates the precondition.
  FilteredMorphismPtr notepi =
      FilteredMorphism::from_ambient(b, a, GroupHom(z2, z4, {{2}}));
  CHECK_THROWS_AS(pullback_cokernel_check(notepi, FilteredMorphism::identity(a)),
                  Error);
  // Graded cokernel with a nontrivial filtration.
  GradedModel m = row_model({{0, {4}}, {1, {2}}});
  GradedModel q = row_model({{0, {2}}, {1, {2}}});
  std::vector<std::vector<i64>> red{{1, 0}, {0, 1}};
  FilteredMorphismPtr gphi = FilteredMorphism::from_ambient(
      m.object(), q.object(), GroupHom(m.ambient(), q.ambient(), red));
  CHECK(pullback_cokernel_check(gphi, FilteredMorphism::identity(q.object())));
}

TEST_CASE("filtration equivalence: identical, shifted, and windowed chains") {
  GradedModel m = row_model({{0, {2}}, {1, {3}}, {2, {2}}});
  FilteredObjectPtr f = m.object();
  CHECK(filtration_equivalence_check(f, f, -1, 2) == Tri::yes);
  FilteredObjectPtr g = FilteredObject::shifted(f, 5);
  // Shifted chains become equivalent once the window sees both ranges.
  CHECK(filtration_equivalence_check(f, g, -7, 3) == Tri::yes);
  // A window too small to reach the shifted floor cannot find sandwiches.
  CHECK(filtration_equivalence_check(f, g, 0, 1) == Tri::no);
  // Two arbitrary bounded chains on the same group are equivalent.
  FinAbGroup v{{2, 2}};
  auto c1 = [v](int i) {
    if (i <= -1) return Subgroup::trivial(v);
    if (i == 0) return Subgroup(v, {v.make({1, 0})});
    return Subgroup::full(v);
  };
  auto c2 = [v](int i) {
    if (i <= -1) return Subgroup::trivial(v);
    if (i == 0) return Subgroup(v, {v.make({1, 1})});
    return Subgroup::full(v);
  };
  CHECK(filtration_equivalence_check(FilteredObject::from_chain(v, c1, -1, 1),
                                     FilteredObject::from_chain(v, c2, -1, 1),
                                     -2, 2) == Tri::yes);
  // Ambient mismatch is rejected.
  CHECK_THROWS_AS(filtration_equivalence_check(
                      f, FilteredObject::trivial(FinAbGroup{{5}}), -1, 1),
                  Error);
}

TEST_CASE("duals of exact window triples stay exact") {
  Rng rng(227);
  for (int iter = 0; iter < 10; ++iter) {
    GradedModel m = random_graded_model(rng, 1, 3, {2, 3, 4});
    if (m.empty()) continue;
    FilteredObjectPtr x = m.object();
    FilteredObjectPtr xd = FilteredObject::dual_of(x);
    CHECK(strong_object_check(xd, *xd->lower_bound(), *xd->upper_bound()).ok);
  }
}
