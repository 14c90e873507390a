#pragma once

#include <vector>

#include "adelharm/finab.hpp"
#include "adelharm/funcspace.hpp"
#include "adelharm/rng.hpp"
#include "adelharm/schwartz.hpp"

namespace adelharm {

// Seeded instance generation shared by the verification suites and the
// tests.  Everything here is a pure function of the generator state so that
// recorded seeds replay exactly.

// All decompositions of n into cyclic factors >= 2, non-increasing.
// n = 1 yields the single empty decomposition (the trivial group).
std::vector<std::vector<i64>> all_decompositions(i64 n);

FinAbGroup random_group(Rng& rng, i64 max_order, size_t max_rank);

// Uniform over all well-defined matrices: the (i, j) entry ranges over the
// multiples of n_i / gcd(n_i, m_j).
GroupHom random_hom(Rng& rng, const FinAbGroup& source, const FinAbGroup& target);

// Values are small integer combinations of roots of unity of the exponent.
FnOnGroup random_function(Rng& rng, const FinAbGroup& parent);

GroupElement random_element(Rng& rng, const FinAbGroup& parent);

// Random coset-indicator combination: up to max_terms terms with levels
// drawn from the window around the model's support.
SchwartzFunction random_schwartz(Rng& rng, const GradedModel& m, int max_terms,
                                 int level_margin);

}  // namespace adelharm
