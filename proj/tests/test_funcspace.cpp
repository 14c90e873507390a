#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "adelharm/fourier.hpp"
#include "adelharm/gen.hpp"

using namespace adelharm;

TEST_CASE("pullback: frozen examples") {
  FinAbGroup z2{{2}}, z4{{4}};
  GroupHom dbl(z2, z4, {{2}});
  FnOnGroup d2 = FnOnGroup::delta(z4, z4.make({2}));
  FnOnGroup pulled = pullback(dbl, d2);
  CHECK(pulled == FnOnGroup::delta(z2, z2.make({1})));
  FnOnGroup f = FnOnGroup::constant(z4, CycloScalar(7));
  CHECK(pullback(dbl, f) == FnOnGroup::constant(z2, CycloScalar(7)));
  CHECK(pullback(GroupHom::identity(z4), d2) == d2);
  CHECK_THROWS_AS(pullback(dbl, FnOnGroup::constant(z2, CycloScalar(1))), Error);
}

TEST_CASE("pushforward: fiber sums and the empty sum") {
  FinAbGroup z2{{2}}, z4{{4}};
  GroupHom dbl(z2, z4, {{2}});
  FnOnGroup d1 = FnOnGroup::delta(z2, z2.make({1}));
  FnOnGroup pushed = pushforward(dbl, d1);
  CHECK(pushed == FnOnGroup::delta(z4, z4.make({2})));
  CHECK(pushed.at(z4.make({1})).is_zero());  // empty fiber
  GroupHom mod2(z4, z2, {{1}});
  CHECK(pushforward(mod2, FnOnGroup::constant(z4, CycloScalar(1))) ==
        FnOnGroup::constant(z2, CycloScalar(2)));
  CHECK(pushforward(GroupHom::identity(z4), d1.is_zero()
                                               ? d1
                                               : FnOnGroup::delta(z4, z4.make({3}))) ==
        FnOnGroup::delta(z4, z4.make({3})));
}

TEST_CASE("shriek: normalization and the cardinality identity") {
  FinAbGroup z2{{2}}, z4{{4}};
  GroupHom mod2(z4, z2, {{1}});
  CHECK(shriek(mod2, FnOnGroup::constant(z4, CycloScalar(1))) ==
        FnOnGroup::constant(z2, CycloScalar(1)));
  CHECK(shriek(GroupHom::identity(z4), FnOnGroup::delta(z4, z4.make({1}))) ==
        FnOnGroup::delta(z4, z4.make({1})));
  // |coker(psi phi)| |ker phi| |ker psi| = |ker(psi phi)| |coker phi| |coker psi|
  GroupHom dbl(z2, z4, {{2}});
  GroupHom comp = hom_compose(mod2, dbl);
  CHECK(comp.cokernel_order() * dbl.kernel_order() * mod2.kernel_order() ==
        comp.kernel_order() * dbl.cokernel_order() * mod2.cokernel_order());
  CHECK(comp.cokernel_order() == 2);
  CHECK(comp.kernel_order() == 2);
}

TEST_CASE("functoriality of the three maps on random composable pairs") {
  Rng rng(101);
  for (int iter = 0; iter < 40; ++iter) {
    FinAbGroup a = random_group(rng, 16, 2);
    FinAbGroup b = random_group(rng, 16, 2);
    FinAbGroup c = random_group(rng, 16, 2);
    GroupHom phi = random_hom(rng, a, b);
    GroupHom psi = random_hom(rng, b, c);
    GroupHom comp = hom_compose(psi, phi);
    FnOnGroup f = random_function(rng, a);
    FnOnGroup g = random_function(rng, c);
    CHECK(pullback(comp, g) == pullback(phi, pullback(psi, g)));
    CHECK(pushforward(comp, f) == pushforward(psi, pushforward(phi, f)));
    CHECK(shriek(comp, f) == shriek(psi, shriek(phi, f)));
    // Cardinality identity.
    CHECK(comp.cokernel_order() * phi.kernel_order() * psi.kernel_order() ==
          comp.kernel_order() * phi.cokernel_order() * psi.cokernel_order());
  }
}

TEST_CASE("pairing: frozen examples, adjunction, perfectness") {
  FinAbGroup z2{{2}};
  FnOnGroup d0 = FnOnGroup::delta(z2, z2.zero());
  FnOnGroup d1 = FnOnGroup::delta(z2, z2.make({1}));
  CHECK(pair_fn(d0, d0) == CycloScalar(1));
  CHECK(pair_fn(d0, d1).is_zero());

  Rng rng(103);
  for (int iter = 0; iter < 40; ++iter) {
    FinAbGroup a = random_group(rng, 16, 2);
    FinAbGroup b = random_group(rng, 16, 2);
    GroupHom phi = random_hom(rng, a, b);
    FnOnGroup f = random_function(rng, a);
    FnOnGroup g = random_function(rng, b);
    CHECK(pair_fn(pushforward(phi, f), g) == pair_fn(f, pullback(phi, g)));
  }

  // Perfectness via the dual basis: the delta functions pair to the
  // identity Gram matrix, so pair_fn(f, .) = 0 forces f = 0.
  for (i64 n : {2, 3, 4, 8}) {
    FinAbGroup a{{n}};
    for (i64 i = 0; i < n; ++i)
      for (i64 j = 0; j < n; ++j) {
        CycloScalar p = pair_fn(FnOnGroup::delta(a, a.element_at(i)),
                                FnOnGroup::delta(a, a.element_at(j)));
        CHECK(p == (i == j ? CycloScalar(1) : CycloScalar(0)));
      }
  }
}

TEST_CASE("translation: group law and interplay with pushforward") {
  FinAbGroup z2{{2}}, z4{{4}};
  CHECK(translate(z2.make({1}), FnOnGroup::delta(z2, z2.zero())) ==
        FnOnGroup::delta(z2, z2.make({1})));
  Rng rng(107);
  FnOnGroup f = random_function(rng, z4);
  CHECK(translate(z4.zero(), f) == f);
  CHECK(translate(z4.make({2}), translate(z4.make({3}), f)) ==
        translate(z4.make({1}), f));
  // phi_* (t_a)_* = (t_phi(a))_* phi_*.
  for (int iter = 0; iter < 30; ++iter) {
    FinAbGroup a = random_group(rng, 16, 2);
    FinAbGroup b = random_group(rng, 16, 2);
    GroupHom phi = random_hom(rng, a, b);
    FnOnGroup h = random_function(rng, a);
    GroupElement t = random_element(rng, a);
    CHECK(pushforward(phi, translate(t, h)) ==
          translate(phi.apply(t), pushforward(phi, h)));
  }
}

TEST_CASE("fourier_F: frozen examples") {
  FinAbGroup z2{{2}};
  // delta_0 on Z/2 transforms to the constant 1/2.
  CHECK(fourier_F(FnOnGroup::delta(z2, z2.zero())) ==
        FnOnGroup::constant(dual_group(z2), CycloScalar(Rational(Int(1), Int(2)))));
  // Constant 1 transforms to delta at the trivial character.
  CHECK(fourier_F(FnOnGroup::constant(z2, CycloScalar(1))) ==
        FnOnGroup::delta(dual_group(z2), dual_group(z2).zero()));
  // On Z/4, delta_1 maps alpha to (1/4) zeta_4^(-alpha).
  FinAbGroup z4{{4}};
  FnOnGroup got = fourier_F(FnOnGroup::delta(z4, z4.make({1})));
  for (i64 k = 0; k < 4; ++k) {
    CycloScalar want =
        root_of_unity(QmodZ{Rational(Int(-k), Int(4))}, 4) * Rational(Int(1), Int(4));
    CHECK(got.at_index(k) == want);
  }
}

TEST_CASE("fourier_Fprime: frozen examples") {
  FinAbGroup z2{{2}};
  CHECK(fourier_Fprime(FnOnGroup::delta(z2, z2.zero())) ==
        FnOnGroup::constant(dual_group(z2), CycloScalar(1)));
  FnOnGroup alt = fourier_Fprime(FnOnGroup::delta(z2, z2.make({1})));
  CHECK(alt.at_index(0) == CycloScalar(1));
  CHECK(alt.at_index(1) == CycloScalar(-1));
  CHECK(fourier_Fprime(FnOnGroup::constant(z2, CycloScalar(1))) ==
        FnOnGroup::delta(dual_group(z2), dual_group(z2).zero()).scaled(CycloScalar(2)));
  // F' = |A| * conjugate-exponent F on random functions.
  Rng rng(109);
  for (int iter = 0; iter < 20; ++iter) {
    FinAbGroup a = random_group(rng, 16, 2);
    FnOnGroup f = random_function(rng, a);
    FnOnGroup lhs = fourier_Fprime(f);
    // Reverse the exponent by evaluating F at -alpha.
    FnOnGroup rhs(dual_group(a));
    FnOnGroup ff = fourier_F(f);
    const i64 n = a.order_i64();
    for (i64 i = 0; i < n; ++i) {
      GroupElement alpha = dual_group(a).element_at(i);
      rhs.set(alpha, ff.at(-alpha) * Rational(a.order()));
    }
    CHECK(lhs == rhs);
  }
}

TEST_CASE("inversion under the double dual identification") {
  Rng rng(113);
  for (int iter = 0; iter < 25; ++iter) {
    FinAbGroup a = random_group(rng, 24, 3);
    GroupHom delta = double_dual_iso(a);
    FnOnGroup f = random_function(rng, a);
    // F-tilde-prime after F returns f through delta.
    FnOnGroup inv = fourier0(fourier0(f, Transform::F), Transform::Ftildeprime);
    CHECK(pullback(delta, inv) == f);
    // Symmetric statement for F-tilde after F-prime.
    FnOnGroup inv2 = fourier0(fourier0(f, Transform::Fprime), Transform::Ftilde);
    CHECK(pullback(delta, inv2) == f);
  }
}

TEST_CASE("plancherel formula") {
  Rng rng(127);
  for (int iter = 0; iter < 30; ++iter) {
    FinAbGroup a = random_group(rng, 16, 2);
    FnOnGroup f = random_function(rng, a);
    FnOnGroup g = random_function(rng, a);
    CHECK(pair_fn(f, g) == pair_fn(fourier_F(f), fourier_Fprime(g)));
  }
}

TEST_CASE("transform functoriality F(phi* f) = phi-hat_* F(f)") {
  FinAbGroup z2{{2}}, z4{{4}};
  GroupHom dbl(z2, z4, {{2}});
  Rng rng(131);
  FnOnGroup worked = random_function(rng, z4);
  CHECK(fourier_F(pullback(dbl, worked)) ==
        pushforward(dual_hom(dbl), fourier_F(worked)));
  for (int iter = 0; iter < 40; ++iter) {
    FinAbGroup a = random_group(rng, 16, 2);
    FinAbGroup b = random_group(rng, 16, 2);
    GroupHom phi = random_hom(rng, a, b);
    FnOnGroup f = random_function(rng, b);
    CHECK(fourier_F(pullback(phi, f)) == pushforward(dual_hom(phi), fourier_F(f)));
  }
}

TEST_CASE("translation becomes modulation") {
  Rng rng(137);
  for (int iter = 0; iter < 20; ++iter) {
    FinAbGroup a = random_group(rng, 16, 2);
    FnOnGroup f = random_function(rng, a);
    GroupElement t = random_element(rng, a);
    FnOnGroup lhs = fourier_F(translate(t, f));
    FnOnGroup rhs(dual_group(a));
    FnOnGroup ff = fourier_F(f);
    const i64 n = a.order_i64();
    const i64 expo = a.exponent();
    for (i64 i = 0; i < n; ++i) {
      GroupElement alpha = dual_group(a).element_at(i);
      rhs.set(alpha, ff.at(alpha) * root_of_unity(-pairing0(t, alpha), expo));
    }
    CHECK(lhs == rhs);
  }
}
