#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "adelharm/filtered.hpp"
#include "adelharm/gen.hpp"

using namespace adelharm;

namespace {

GradedModel row_model(std::map<int, std::vector<i64>> support) {
  std::map<std::vector<int>, std::vector<i64>> s;
  for (auto& [r, orders] : support) s.emplace(std::vector<int>{r}, orders);
  return GradedModel(1, std::move(s));
}

GradedModel grid_model(std::map<std::pair<int, int>, std::vector<i64>> support) {
  std::map<std::vector<int>, std::vector<i64>> s;
  for (auto& [rs, orders] : support)
    s.emplace(std::vector<int>{rs.first, rs.second}, orders);
  return GradedModel(2, std::move(s));
}

// Unbounded level-1 model: one Z/p component at every r >= 0, presented
// lazily with only the floor declared.
FilteredObjectPtr lazy_half_line(i64 p, std::optional<int> hi) {
  FilteredObject::Providers prov;
  prov.quotient = [p](int i, int j) {
    std::vector<i64> orders;
    for (int r = std::max(i + 1, 0); r <= j; ++r) orders.push_back(p);
    return WindowValue(FinAbGroup{orders});
  };
  auto group_of = [p](int i, int j) {
    std::vector<i64> orders;
    for (int r = std::max(i + 1, 0); r <= j; ++r) orders.push_back(p);
    return FinAbGroup{orders};
  };
  prov.alpha = [group_of](int i, int j, int k) {
    FinAbGroup src = group_of(i, j), dst = group_of(i, k);
    std::vector<std::vector<i64>> m(dst.rank(), std::vector<i64>(src.rank(), 0));
    for (size_t c = 0; c < src.rank(); ++c) m[c][c] = 1;  // same leading block
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

}  // namespace

TEST_CASE("graded model: standard filtration unrolled (one dimension)") {
  GradedModel m = row_model({{-1, {2}}, {0, {2}}, {1, {2}}});
  CHECK(m.ambient().order() == 8);
  CHECK(m.outer_filtration(-2).order() == 1);
  CHECK(m.outer_filtration(-1).order() == 2);
  CHECK(m.outer_filtration(0).order() == 4);
  CHECK(m.outer_filtration(1).order() == 8);
  CHECK(m.lo() == -2);
  CHECK(m.hi() == 1);
  // Level-1 total filtration is the standard one.
  for (int z = -2; z <= 1; ++z)
    CHECK(m.total_filtration({z}) == m.outer_filtration(z));
}

TEST_CASE("graded model: two dimensions and the total filtration") {
  GradedModel m = grid_model(
      {{{0, 0}, {2}}, {{0, 1}, {2}}, {{1, 0}, {2}}, {{1, 1}, {2}}});
  CHECK(m.ambient().order() == 16);
  Subgroup f00 = m.total_filtration({0, 0});
  CHECK(f00.order() == 8);  // A_{0,0} + A_{0,1} + A_{1,0}
  // Sandwich F(z1) inside F_tot(z) inside F(z1 + 1).
  CHECK(f00.contains_subgroup(m.outer_filtration(0)));
  CHECK(m.outer_filtration(1).contains_subgroup(f00));
  // Below and above the support.
  CHECK(m.total_filtration({-5, 0}).order() == 1);
  CHECK(m.total_filtration({7, 3}).order() == 16);
  // Lexicographic monotonicity over the window.
  for (int z1 = -1; z1 <= 2; ++z1)
    for (int z2 = -1; z2 <= 2; ++z2) {
      Subgroup cur = m.total_filtration({z1, z2});
      CHECK(m.total_filtration({z1, z2 + 1}).contains_subgroup(cur));
      CHECK(m.total_filtration({z1 + 1, -10}).contains_subgroup(cur));
    }
}

TEST_CASE("empty support gives the zero object") {
  GradedModel m(1, {});
  CHECK(m.empty());
  CHECK(m.ambient().is_trivial());
  FilteredObjectPtr x = m.object();
  CHECK(x->is_zero_object());
  CHECK(x->window_group(-3, 4).is_trivial());
}

TEST_CASE("dual filtration: annihilator route, order reversal, struct route") {
  GradedModel m = grid_model(
      {{{0, 0}, {2}}, {{0, 1}, {2}}, {{1, 0}, {2}}, {{1, 1}, {2}}});
  CHECK(m.dual_filtration({0, 0}).order() == 2);  // 16 / 8
  // Minimal and maximal windows.
  CHECK(m.dual_filtration({-5, -5}).order() == 16);
  CHECK(m.dual_filtration({5, 5}).order() == 1);
  // Exhaustive: structural route equals the annihilator route, and the
  // lexicographic order is reversed.
  for (int z1 = -2; z1 <= 2; ++z1)
    for (int z2 = -2; z2 <= 2; ++z2) {
      std::vector<int> z{z1, z2};
      Subgroup viaperp = m.dual_filtration(z);
      CHECK(viaperp.order() * m.total_filtration(z).order() == 16);
      CHECK(m.structural_dual_filtration(z) == viaperp);
      CHECK(viaperp.contains_subgroup(m.dual_filtration({z1, z2 + 1})));
    }
}

TEST_CASE("exact window triples for graded and chain objects") {
  GradedModel m = row_model({{-1, {2}}, {0, {3}}, {1, {4}}});
  FilteredObjectPtr x = m.object();
  for (int i = -2; i <= 1; ++i)
    for (int j = i; j <= 1; ++j)
      for (int k = j; k <= 1; ++k) {
        GroupHom a = x->alpha(i, j, k).hom();
        GroupHom p = x->pi(i, j, k).hom();
        CHECK(x->quotient(i, k).order() ==
              x->quotient(i, j).order() * x->quotient(j, k).order());
        CHECK(hom_compose(p, a).is_zero_map());
        CHECK(a.is_mono());
        CHECK(p.is_epi());
        CHECK(a.image_order() == p.kernel_order());
        // Sections really retract.
        auto asec = x->alpha_section(i, j, k);
        REQUIRE(asec.has_value());
        CHECK(hom_compose(asec->hom(), a) == GroupHom::identity(a.source()));
        auto psec = x->pi_section(i, j, k);
        REQUIRE(psec.has_value());
        CHECK(hom_compose(p, psec->hom()) == GroupHom::identity(p.target()));
      }

  // Chain-backed object on Z/8: 0 < 2Z/8 < Z/8.
  FinAbGroup z8{{8}};
  auto chain = [z8](int i) {
    if (i <= -1) return Subgroup::trivial(z8);
    if (i == 0) return Subgroup(z8, {z8.make({2})});
    return Subgroup::full(z8);
  };
  FilteredObjectPtr c = FilteredObject::from_chain(z8, chain, -1, 1);
  for (int i = -1; i <= 1; ++i)
    for (int j = i; j <= 1; ++j)
      for (int k = j; k <= 1; ++k) {
        GroupHom a = c->alpha(i, j, k).hom();
        GroupHom p = c->pi(i, j, k).hom();
        CHECK(hom_compose(p, a).is_zero_map());
        CHECK(c->quotient(i, k).order() ==
              c->quotient(i, j).order() * c->quotient(j, k).order());
        CHECK(a.is_mono());
        CHECK(p.is_epi());
      }
  CHECK(c->quotient(-1, 0).order() == 4);
  CHECK(c->quotient(0, 1).order() == 2);
}

TEST_CASE("level-2 window objects collapse consistently") {
  GradedModel m = grid_model(
      {{{0, 0}, {2}}, {{0, 1}, {4}}, {{1, 0}, {3}}, {{1, 1}, {2}}});
  FilteredObjectPtr x = m.object();
  CHECK(x->level() == 2);
  // The window (lo, hi) recovers the whole group up to coordinate order.
  CHECK(x->total_group().order() == m.ambient().order());
  // F(0)/F(-1) as a level-1 object with its own filtration by s.
  WindowValue q = x->quotient(-1, 0);
  REQUIRE(!q.is_group());
  FilteredObjectPtr slice = q.filtered();
  CHECK(slice->level() == 1);
  CHECK(slice->total_group().order() == 8);  // Z/2 (s=0) + Z/4 (s=1)
  CHECK(slice->window_group(-1, 0).orders() == std::vector<i64>{2});
  CHECK(slice->window_group(0, 1).orders() == std::vector<i64>{4});
  // Level-2 transition components are exact per window.
  for (int u = -1; u <= 1; ++u)
    for (int v = u; v <= 1; ++v) {
      GroupHom a = map_total_hom(x->alpha(-1, 0, 1));
      GroupHom p = map_total_hom(x->pi(-1, 0, 1));
      CHECK(hom_compose(p, a).is_zero_map());
    }
  // Bridge round trip through a level-2 window.
  const ElementBridge& b = *x->bridge();
  Rng rng(3);
  for (int probe = 0; probe < 10; ++probe) {
    GroupElement a = random_element(rng, m.ambient());
    if (!b.chain(0).contains(a)) continue;
    GroupElement w = b.to_window(a, -1, 0);
    GroupElement back = b.from_window(w, -1, 0);
    CHECK(b.to_window(back, -1, 0) == w);
  }
}

TEST_CASE("dual object: windows, transitions, and bridge") {
  GradedModel m = row_model({{0, {2}}, {1, {4}}});
  FilteredObjectPtr x = m.object();
  FilteredObjectPtr xd = FilteredObject::dual_of(x);
  CHECK(xd->lower_bound() == -*x->upper_bound());
  CHECK(xd->upper_bound() == -*x->lower_bound());
  CHECK(xd->total_group().order() == 8);
  // Window duality: Q-hat(u, v) has the order of Q(-v, -u).
  for (int u = -1; u <= 0; ++u)
    for (int v = u; v <= 0; ++v)
      CHECK(xd->window_group(u, v).order() == x->window_group(-v, -u).order());
  // Dual chain is the annihilator of the reflected chain.
  const ElementBridge& db = *xd->bridge();
  const ElementBridge& pb = *x->bridge();
  for (int u = -1; u <= 1; ++u)
    CHECK(db.chain(u) == perp(pb.chain(-u)));
  // Bridge round trip: to_window . from_window = id on dual windows.
  for (int u = -1; u <= 0; ++u)
    for (int v = u; v <= 0; ++v) {
      FinAbGroup w = xd->window_group(u, v);
      const i64 n = w.order_i64();
      for (i64 e = 0; e < n; ++e) {
        GroupElement q = w.element_at(e);
        GroupElement chi = db.from_window(q, u, v);
        CHECK(db.chain(v).contains(chi));
        CHECK(db.to_window(chi, u, v) == q);
      }
    }
  // Double dual restores the window orders.
  FilteredObjectPtr xdd = FilteredObject::dual_of(xd);
  CHECK(xdd->total_group().orders() == x->total_group().orders());
}

TEST_CASE("filtered morphisms: ambient induction and validation") {
  GradedModel m = row_model({{0, {4}}, {1, {4}}});
  FilteredObjectPtr x = m.object();
  // Componentwise doubling respects the filtration.
  std::vector<std::vector<i64>> dbl{{2, 0}, {0, 2}};
  GroupHom h(m.ambient(), m.ambient(), dbl);
  FilteredMorphismPtr f = FilteredMorphism::from_ambient(x, x, h);
  f->validate(-1, 1);
  CHECK(f->component(-1, 1).hom() == h);
  CHECK(f->component(-1, 0).hom().matrix() ==
        std::vector<std::vector<i64>>{{2}});
  // A hom that moves the low component up violates the filtration.
  std::vector<std::vector<i64>> swap_up{{0, 1}, {1, 0}};
  CHECK_THROWS_AS(
      FilteredMorphism::from_ambient(x, x, GroupHom(m.ambient(), m.ambient(), swap_up)),
      Error);
  // Composition law and identity.
  FilteredMorphismPtr id = FilteredMorphism::identity(x);
  CHECK(maps_equal(compose_filtered(f, id)->component(-1, 1), f->component(-1, 1)));
}

TEST_CASE("standard splitting: discrete and compact parts with witnesses") {
  GradedModel m = row_model({{-1, {2}}, {0, {2}}});
  StructureSequence seq = standard_splitting(m, {0});
  CHECK(seq.discrete_part.order() == 2);  // the r = 0 component
  CHECK(seq.k_group.order() == 2);
  CHECK(seq.discrete_witness == -1);  // D cap F(-1) = 0
  CHECK(seq.compact_witness == -1);   // F_K(-1) already covers K
  CHECK(seq.k_hat.order() == 2);
  // Cut above all support: D = 0, K = A.
  StructureSequence above = standard_splitting(m, {5});
  CHECK(above.discrete_part.order() == 1);
  CHECK(above.k_group.order() == 4);
  // Cut below all support: D = A, K = 0.
  StructureSequence below = standard_splitting(m, {-5});
  CHECK(below.discrete_part.order() == 4);
  CHECK(below.k_group.is_trivial());
  // Lexicographic cut on a grid.
  GradedModel g = grid_model(
      {{{0, 0}, {2}}, {{0, 1}, {2}}, {{1, 0}, {2}}, {{1, 1}, {2}}});
  StructureSequence gs = standard_splitting(g, {1, 1});
  CHECK(gs.discrete_part.order() == 2);  // only (1,1)
  CHECK(gs.k_group.order() == 8);
  StructureSequence gs2 = standard_splitting(g, {0, 1});
  CHECK(gs2.discrete_part.order() == 8);  // (0,1), (1,0), (1,1)
}

TEST_CASE("discreteness and compactness flags") {
  GradedModel m = row_model({{0, {2}}, {1, {3}}});
  CHECK(is_discrete(m.object()) == Tri::yes);
  CHECK(is_compact(m.object()) == Tri::yes);
  // Declared floor, no ceiling.
  FilteredObjectPtr lazy = lazy_half_line(2, std::nullopt);
  CHECK(is_discrete(lazy) == Tri::yes);
  CHECK(is_compact(lazy) == Tri::unknown);
  FilteredObjectPtr bounded_lazy = lazy_half_line(2, 3);
  CHECK(is_compact(bounded_lazy) == Tri::yes);
  // Level-2 graded model.
  GradedModel g = grid_model({{{0, 0}, {2}}, {{1, 1}, {3}}});
  CHECK(is_discrete(g.object()) == Tri::yes);
  CHECK(is_compact(g.object()) == Tri::yes);
}

TEST_CASE("finite intersection of discrete and compact subobjects") {
  GradedModel m = row_model({{-1, {2}}, {0, {2}}});
  FilteredObjectPtr x = m.object();
  StructureSequence seq = standard_splitting(m, {0});
  // Disjoint supports meet trivially.
  Subgroup k_lift = m.outer_filtration(-1);
  CHECK(discrete_compact_intersection(x, seq.discrete_part, k_lift) == 1);
  // D = K = 0.
  CHECK(discrete_compact_intersection(x, Subgroup::trivial(m.ambient()),
                                      Subgroup::trivial(m.ambient())) == 1);
  // Full overlap counts the subgroup itself.
  CHECK(discrete_compact_intersection(x, seq.discrete_part, seq.discrete_part) == 2);
  // Diagonal subgroup meets the discrete part trivially but has order 2.
  Subgroup diag(m.ambient(), {m.ambient().make({1, 1})});
  CHECK(discrete_compact_intersection(x, seq.discrete_part, diag) == 1);
}

TEST_CASE("support conditions for the existence of a splitting") {
  // Finite box.
  Region box;
  box.r_min = -1;
  box.r_max = 1;
  box.s_min = -1;
  box.s_max = 1;
  CHECK(conditions_ab_check({box}));
  // All of Z^2 fails.
  CHECK(!conditions_ab_check({Region{}}));
  // Empty support holds.
  CHECK(conditions_ab_check({}));
  // Right half-plane with floors is fine; without floors it is not.
  Region right;
  right.r_min = 0;
  right.s_min = 0;
  CHECK(conditions_ab_check({right}));
  Region right_unbounded;
  right_unbounded.r_min = 0;
  CHECK(!conditions_ab_check({right_unbounded}));
  // Empty rectangles are ignored.
  Region empty;
  empty.r_min = 3;
  empty.r_max = 1;
  CHECK(conditions_ab_check({empty}));
}

TEST_CASE("induced kernel and cokernel filtrations (level 1)") {
  GradedModel m = row_model({{0, {4}}, {1, {4}}});
  FilteredObjectPtr x = m.object();
  std::vector<std::vector<i64>> dblmat{{2, 0}, {0, 2}};
  GroupHom h(m.ambient(), m.ambient(), dblmat);
  FilteredMorphismPtr f = FilteredMorphism::from_ambient(x, x, h);

  InducedKernel ker = induced_kernel(f);
  InducedCokernel cok = induced_cokernel(f);
  // Kernel components are Z/2 per doubled Z/4 and carry H(i) = F(i) cap K.
  CHECK(ker.object->window_group(-1, 1).order() == 4);
  CHECK(ker.object->window_group(-1, 0).order() == 2);
  CHECK(cok.object->window_group(-1, 1).order() == 4);
  ker.inclusion->validate(-1, 1);
  cok.projection->validate(-1, 1);
  // Induced triples stay exact.
  for (int i = -1; i <= 1; ++i)
    for (int j = i; j <= 1; ++j)
      for (int k = j; k <= 1; ++k) {
        GroupHom a = ker.object->alpha(i, j, k).hom();
        GroupHom p = ker.object->pi(i, j, k).hom();
        CHECK(hom_compose(p, a).is_zero_map());
        CHECK(ker.object->quotient(i, k).order() ==
              ker.object->quotient(i, j).order() *
                  ker.object->quotient(j, k).order());
      }
  // H(i) = F(i) cap K, verified by window enumeration against the ambient.
  Subgroup kamb(m.ambient(), {m.ambient().make({2, 0}), m.ambient().make({0, 2})});
  for (int i = -1; i <= 1; ++i) {
    Subgroup expect = intersect(kamb, m.outer_filtration(i));
    CHECK(Int(expect.order()) == ker.object->quotient(-1, i).order());
  }

  // Identity morphism: kernel and cokernel are zero objects.
  FilteredMorphismPtr id = FilteredMorphism::identity(x);
  CHECK(induced_kernel(id).object->is_zero_object());
  CHECK(induced_cokernel(id).object->is_zero_object());

  // Graded submodel inclusion: kernel 0, cokernel the complement.
  GradedModel sub = row_model({{0, {4}}});
  std::vector<std::vector<i64>> inc{{1}, {0}};
  GroupHom hin(sub.ambient(), m.ambient(), inc);
  FilteredMorphismPtr fi = FilteredMorphism::from_ambient(sub.object(), x, hin);
  CHECK(induced_kernel(fi).object->is_zero_object());
  InducedCokernel cin = induced_cokernel(fi);
  CHECK(cin.object->window_group(-1, 1).orders() == std::vector<i64>{4});
  CHECK(cin.object->window_group(-1, 0).order() == 1);  // complement sits at r=1
}

TEST_CASE("window pairing: examples, independence, adjunction") {
  GradedModel m = row_model({{-1, {2}}, {0, {2}}});
  FilteredObjectPtr x = m.object();
  const FinAbGroup& a = m.ambient();
  const FinAbGroup ad = dual_group(a);

  // Character killing all of F(j) pairs to zero on F(j).
  Subgroup f0 = m.outer_filtration(-1);
  Subgroup ann = perp(f0);
  for (i64 ci = 0; ci < ann.order(); ++ci) {
    GroupElement chi = ann.element(static_cast<size_t>(ci));
    for (i64 ei = 0; ei < f0.order(); ++ei)
      CHECK(pairing_n(x, f0.element(static_cast<size_t>(ei)), chi, -2, -1).is_zero());
  }

  // Generator of the r = -1 component against a character that is
  // nontrivial on it: value 1/2 through the window.
  GroupElement gen = a.make({1, 0});
  GroupElement chi = ad.make({1, 0});
  CHECK(pairing_n(x, gen, chi, -2, -1) == QmodZ{Rational(Int(1), Int(2))});

  // Window independence: enlarging the window does not change the value.
  Rng rng(17);
  for (int probe = 0; probe < 40; ++probe) {
    GroupElement e = random_element(rng, a);
    GroupElement c = random_element(rng, ad);
    // use window (i, j) = (-2, hi) so preconditions hold for everything
    QmodZ small = pairing_n(x, e, c, -2, 0);
    QmodZ big = pairing_n(x, e, c, -3, 1);
    CHECK(small == big);
    CHECK(small == pairing0(e, c));
  }

  // Incompatible window raises.
  CHECK_THROWS_AS(pairing_n(x, a.make({0, 1}), chi, -2, -1), Error);
}

TEST_CASE("pairing through level-2 windows matches the ambient pairing") {
  GradedModel g = grid_model(
      {{{0, 0}, {2}}, {{0, 1}, {2}}, {{1, 0}, {2}}, {{1, 1}, {2}}});
  FilteredObjectPtr x = g.object();
  Rng rng(19);
  for (int probe = 0; probe < 30; ++probe) {
    GroupElement e = random_element(rng, g.ambient());
    GroupElement c = random_element(rng, dual_group(g.ambient()));
    CHECK(pairing_n(x, e, c, g.lo(), g.hi()) == pairing0(e, c));
  }
}

TEST_CASE("shifted views reindex the chain") {
  GradedModel m = row_model({{0, {2}}, {1, {3}}});
  FilteredObjectPtr x = m.object();
  FilteredObjectPtr s = FilteredObject::shifted(x, 5);
  CHECK(*s->lower_bound() == *x->lower_bound() - 5);
  CHECK(s->window_group(-6, -4).order() == x->window_group(-1, 1).order());
  CHECK(s->bridge()->chain(-5) == x->bridge()->chain(0));
}
