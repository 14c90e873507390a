#pragma once

#include <string>

#include "adelharm/filtered.hpp"

namespace adelharm {

struct StrongCheckResult {
  bool ok = true;
  std::string witness;  // offending triple when not ok
};

// Exactness of every window triple Q(i,j) -> Q(i,k) -> Q(j,k) inside
// [wlo, whi], recursing into the quotient structure at higher levels.
StrongCheckResult strong_object_check(const FilteredObjectPtr& x, int wlo, int whi);

// Factorization of a quasi-strong morphism: a cokernel followed by a kernel.
struct QuasiStrongWitness {
  FilteredMorphismPtr coimage_projection;  // A -> coim
  FilteredMorphismPtr image_inclusion;     // coim -> B (through the image)
};

struct QuasiStrongResult {
  bool ok = false;
  std::string reason;
  std::optional<QuasiStrongWitness> witness;
};

// Builds coim = coker(ker phi) and im = ker(coker phi) with their induced
// filtrations, and tests that the canonical map between them is a filtered
// isomorphism on every window.
QuasiStrongResult quasi_strong_check(const FilteredMorphismPtr& phi);
// Level-0 case: homs of finite groups are always quasi-strong.
QuasiStrongResult quasi_strong_check(const GroupHom& phi);

// Pullback of a cokernel along an arbitrary morphism is again a cokernel.
// phi must be a cokernel (epi with the target filtration induced); returns
// whether the projection of the pullback onto psi's source is one too.
bool pullback_cokernel_check(const FilteredMorphismPtr& phi,
                             const FilteredMorphismPtr& psi);

// Sandwich test for equivalence of two filtrations of the same ambient
// group: every F(i) is enclosed by G-terms and conversely.  Bounded chains
// are decided exactly; windowed chains return no when a sandwich is missing
// inside the window and unknown when the window cannot be examined.
Tri filtration_equivalence_check(const FilteredObjectPtr& f,
                                 const FilteredObjectPtr& g, int wlo, int whi);

// General morphism admission: searches a shift of the target chain within
// the given radius that makes the ambient hom filtration-compatible.
std::optional<FilteredMorphismPtr> align_morphism(const FilteredObjectPtr& source,
                                                  const FilteredObjectPtr& target,
                                                  const GroupHom& h, int radius);

}  // namespace adelharm
