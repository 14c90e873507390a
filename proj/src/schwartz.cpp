#include "adelharm/schwartz.hpp"

namespace adelharm {

SchwartzFunction::SchwartzFunction(GradedModel model, std::vector<SchwartzTerm> terms)
    : model_(std::move(model)), terms_(std::move(terms)) {
  for (const SchwartzTerm& t : terms_) {
    require(t.base.parent() == model_.ambient(), ErrorKind::parent,
            "term base point outside the model");
    require(static_cast<int>(t.level.size()) == model_.dims(), ErrorKind::parent,
            "term level arity mismatch");
  }
}

CycloScalar SchwartzFunction::evaluate(const GroupElement& a) const {
  CycloScalar acc;
  for (const SchwartzTerm& t : terms_) {
    GroupElement diff = a - t.base;
    // Componentwise test: nonzero coordinates must sit inside F_tot(z).
    bool inside = true;
    for (const auto& c : model_.components()) {
      if (GradedModel::component_included(c.idx, t.level)) continue;
      for (size_t k = 0; k < c.orders.size() && inside; ++k)
        if (diff.residues()[c.coord0 + k] != 0) inside = false;
      if (!inside) break;
    }
    if (inside) acc += t.coeff;
  }
  return acc;
}

DualSchwartzFunction::DualSchwartzFunction(GradedModel model,
                                           std::vector<DualSchwartzTerm> terms)
    : model_(std::move(model)), terms_(std::move(terms)) {
  for (const DualSchwartzTerm& t : terms_) {
    require(t.modulation.parent() == model_.ambient(), ErrorKind::parent,
            "modulation point outside the model");
    require(static_cast<int>(t.level.size()) == model_.dims(), ErrorKind::parent,
            "term level arity mismatch");
  }
}

CycloScalar DualSchwartzFunction::evaluate(const GroupElement& chi) const {
  const i64 expo = model_.ambient().exponent();
  CycloScalar acc;
  for (const DualSchwartzTerm& t : terms_) {
    // chi must annihilate F_tot(z): componentwise, chi vanishes on every
    // included component.
    bool inside = true;
    for (const auto& c : model_.components()) {
      if (!GradedModel::component_included(c.idx, t.level)) continue;
      for (size_t k = 0; k < c.orders.size() && inside; ++k)
        if (chi.residues()[c.coord0 + k] != 0) inside = false;
      if (!inside) break;
    }
    if (!inside) continue;
    acc += t.coeff * root_of_unity(pairing0(t.modulation, chi), expo);
  }
  return acc;
}

bool schwartz_equal(const SchwartzFunction& f, const SchwartzFunction& g) {
  require(f.model().ambient() == g.model().ambient(), ErrorKind::parent,
          "comparison across models");
  const FinAbGroup& a = f.model().ambient();
  const i64 n = a.order_i64();
  for (i64 i = 0; i < n; ++i)
    if (f.evaluate(a.element_at(i)) != g.evaluate(a.element_at(i))) return false;
  return true;
}

bool dual_schwartz_equal(const DualSchwartzFunction& f,
                         const DualSchwartzFunction& g) {
  require(f.model().ambient() == g.model().ambient(), ErrorKind::parent,
          "comparison across models");
  const FinAbGroup dual = dual_group(f.model().ambient());
  const i64 n = dual.order_i64();
  for (i64 i = 0; i < n; ++i)
    if (f.evaluate(dual.element_at(i)) != g.evaluate(dual.element_at(i)))
      return false;
  return true;
}

Tri admissibility_check(const SchwartzTerm& term, const StructureSequence& seq) {
  require(term.base.parent() == seq.model.ambient(), ErrorKind::parent,
          "term does not belong to the sequence's model");
  // Bounded models: every intersection is a subgroup of a finite group.
  return Tri::yes;
}

Tri admissibility_check(const std::vector<int>& z,
                        std::optional<int> discrete_floor,
                        std::optional<int> compact_ceiling) {
  require(!z.empty(), ErrorKind::precondition, "empty level vector");
  bool d_finite = discrete_floor.has_value() && z[0] < *discrete_floor;
  bool k_finite = compact_ceiling.has_value() && z[0] >= *compact_ceiling;
  if (d_finite && k_finite) return Tri::yes;
  return Tri::unknown;
}

namespace {

struct TermData {
  Subgroup f_tot;
  Subgroup khat_cap;  // K-hat cap F-hat(z)
  i64 d_cap = 1;
  Rational factor;
};

TermData term_data(const GradedModel& m, const StructureSequence& seq,
                   const std::vector<int>& z) {
  TermData d;
  d.f_tot = m.total_filtration(z);
  d.d_cap = intersect(seq.discrete_part, d.f_tot).order();
  d.khat_cap = intersect(seq.k_hat, m.dual_filtration(z));
  d.factor = Rational(Int(d.d_cap), Int(d.khat_cap.order()));
  return d;
}

}  // namespace

DualSchwartzFunction indicator_fourier(const SchwartzFunction& s,
                                       const StructureSequence& seq) {
  require(s.model().ambient() == seq.model.ambient(), ErrorKind::parent,
          "sequence and function live on different models");
  std::vector<DualSchwartzTerm> out;
  for (const SchwartzTerm& t : s.terms()) {
    require(admissibility_check(t, seq) == Tri::yes, ErrorKind::precondition,
            "inadmissible term level");
    TermData d = term_data(s.model(), seq, t.level);
    DualSchwartzTerm dt;
    dt.coeff = t.coeff * d.factor;
    dt.modulation = t.base;
    dt.level = t.level;
    out.push_back(std::move(dt));
  }
  return DualSchwartzFunction(s.model(), std::move(out));
}

SchwartzFunction refinement_expand(const GradedModel& model,
                                   const SchwartzTerm& term,
                                   const std::vector<int>& finer) {
  Subgroup big = model.total_filtration(term.level);
  Subgroup small = model.total_filtration(finer);
  require(big.contains_subgroup(small), ErrorKind::precondition,
          "refinement level is not nested");
  // Coset representatives of small inside big, first-seen order.
  std::vector<GroupElement> reps;
  std::vector<char> covered(static_cast<size_t>(model.ambient().order_i64()), 0);
  for (i64 pos = 0; pos < big.order(); ++pos) {
    GroupElement e = big.element(static_cast<size_t>(pos));
    i64 eidx = model.ambient().index_of(e);
    if (covered[static_cast<size_t>(eidx)]) continue;
    reps.push_back(e);
    for (i64 spos = 0; spos < small.order(); ++spos) {
      GroupElement shifted = e + small.element(static_cast<size_t>(spos));
      covered[static_cast<size_t>(model.ambient().index_of(shifted))] = 1;
    }
  }
  std::vector<SchwartzTerm> out;
  for (const GroupElement& r : reps)
    out.push_back(SchwartzTerm{term.coeff, term.base + r, finer});
  return SchwartzFunction(model, std::move(out));
}

PoissonResult poisson_eval(const SchwartzFunction& s, const StructureSequence& seq) {
  require(s.model().ambient() == seq.model.ambient(), ErrorKind::parent,
          "sequence and function live on different models");
  const GradedModel& m = s.model();
  const i64 expo = m.ambient().exponent();
  PoissonResult res;

  for (const SchwartzTerm& t : s.terms()) {
    require(admissibility_check(t, seq) == Tri::yes, ErrorKind::precondition,
            "inadmissible term level");
    TermData d = term_data(m, seq, t.level);

    PoissonTermReport report;
    report.factor = d.factor;
    report.d_cap_f = d.d_cap;
    report.khat_cap_fhat = d.khat_cap.order();

    // Left side: |D cap (a + F(z))| is |D cap F(z)| when a lies in
    // D + F(z) and zero otherwise.
    Subgroup reach = join(seq.discrete_part, d.f_tot);
    report.supported = reach.contains(t.base);
    if (report.supported) res.lhs += t.coeff * Rational(Int(d.d_cap));

    // Right side: the character sum over K-hat cap F-hat(z), exact.
    CycloScalar charsum;
    for (i64 pos = 0; pos < d.khat_cap.order(); ++pos) {
      GroupElement chi = d.khat_cap.element(static_cast<size_t>(pos));
      charsum += root_of_unity(pairing0(t.base, chi), expo);
    }
    res.rhs += t.coeff * d.factor * charsum;
    res.term_reports.push_back(std::move(report));
  }
  res.equal = (res.lhs == res.rhs);
  return res;
}

}  // namespace adelharm
