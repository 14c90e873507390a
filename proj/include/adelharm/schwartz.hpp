#pragma once

#include "adelharm/cyclo.hpp"
#include "adelharm/filtered.hpp"

namespace adelharm {

// One summand c * 1_{a + F(z)} of a Schwartz function: an indicator of a
// coset of the total filtration, weighted by an exact scalar.
struct SchwartzTerm {
  CycloScalar coeff;
  GroupElement base;       // a
  std::vector<int> level;  // z
};

// Finite linear combination of coset indicators on a bounded graded model.
// The representation is a formal term list; equality is decided by
// evaluation, which a finite window always settles.
class SchwartzFunction {
 public:
  SchwartzFunction() = default;
  SchwartzFunction(GradedModel model, std::vector<SchwartzTerm> terms);

  const GradedModel& model() const { return model_; }
  const std::vector<SchwartzTerm>& terms() const { return terms_; }

  CycloScalar evaluate(const GroupElement& a) const;

 private:
  GradedModel model_;
  std::vector<SchwartzTerm> terms_;
};

// Transform-side term c * e^(2 pi i (a, .)) * 1_{F-hat(z)}: the modulation
// point is kept symbolically so evaluation stays exact.
struct DualSchwartzTerm {
  CycloScalar coeff;
  GroupElement modulation;  // a
  std::vector<int> level;   // z, supported on the annihilator of F_tot(z)
};

class DualSchwartzFunction {
 public:
  DualSchwartzFunction() = default;
  DualSchwartzFunction(GradedModel model, std::vector<DualSchwartzTerm> terms);

  const GradedModel& model() const { return model_; }
  const std::vector<DualSchwartzTerm>& terms() const { return terms_; }

  CycloScalar evaluate(const GroupElement& chi) const;

 private:
  GradedModel model_;
  std::vector<DualSchwartzTerm> terms_;
};

// Equality by evaluation over the ambient (respectively dual) group.
bool schwartz_equal(const SchwartzFunction& f, const SchwartzFunction& g);
bool dual_schwartz_equal(const DualSchwartzFunction& f,
                         const DualSchwartzFunction& g);

// Admissibility of a term level: both |D cap F(z)| and |K-hat cap F-hat(z)|
// must be finite.  Bounded models always qualify; the lazy variant decides
// from declared bound data only.
Tri admissibility_check(const SchwartzTerm& term, const StructureSequence& seq);
Tri admissibility_check(const std::vector<int>& z,
                        std::optional<int> discrete_floor,
                        std::optional<int> compact_ceiling);

// The canonically normalized transform determined by the structure
// sequence: 1_{a + F(z)} maps to e^(2 pi i (a, .)) |D cap F(z)| / |K-hat
// cap F-hat(z)| 1_{F-hat(z)}.
DualSchwartzFunction indicator_fourier(const SchwartzFunction& s,
                                       const StructureSequence& seq);

// Rewrites one term over the cosets of a finer filtration level; the
// transform of the result equals the transform of the input.
SchwartzFunction refinement_expand(const GradedModel& model,
                                   const SchwartzTerm& term,
                                   const std::vector<int>& finer);

struct PoissonTermReport {
  Rational factor;     // |D cap F(z)| / |K-hat cap F-hat(z)|
  i64 d_cap_f = 0;
  i64 khat_cap_fhat = 0;
  bool supported = false;  // whether a lies in D + F(z)
};

struct PoissonResult {
  CycloScalar lhs;  // sum over D of the values
  CycloScalar rhs;  // sum over K-hat of the transform
  bool equal = false;
  std::vector<PoissonTermReport> term_reports;
};

// Both sides of the summation formula, evaluated exactly.  The left side
// uses the counting shortcut through the subgroup lattice, the right side
// is an honest character sum, so their equality is the theorem.
PoissonResult poisson_eval(const SchwartzFunction& s, const StructureSequence& seq);

}  // namespace adelharm
