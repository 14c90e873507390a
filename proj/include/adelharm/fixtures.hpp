#pragma once

#include "adelharm/filtered.hpp"
#include "adelharm/rng.hpp"

namespace adelharm {

// Fixture builders shared by the verification suites and the tests.

// Level-1 object whose middle projection is deliberately wrong (pi after
// alpha is nonzero), the negative control of the strong-object check.
FilteredObjectPtr corrupted_provider_fixture();

// Unbounded level-1 object with one Z/p component at every index >= 0,
// declared floor at -1 and an optional ceiling.
FilteredObjectPtr lazy_half_line(i64 p, std::optional<int> hi);

// Seeded graded model: dims in {1, 2}, component indices inside a box of
// the given span, cyclic orders drawn from the given list.
GradedModel random_graded_model(Rng& rng, int dims, int max_span,
                                const std::vector<i64>& order_pool);

// Seeded filtered morphism fixture: a graded model together with an
// ambient hom respecting the filtration (built componentwise).
struct MorphismFixture {
  GradedModel model;
  FilteredObjectPtr object;
  FilteredMorphismPtr morphism;  // endomorphism of `object`
};
MorphismFixture random_filtered_endo(Rng& rng, int max_span,
                                     const std::vector<i64>& order_pool);

}  // namespace adelharm
