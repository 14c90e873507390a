#pragma once

#include "adelharm/filtered.hpp"
#include "adelharm/fourier.hpp"

namespace adelharm {

// The four function-space functors, one implementation with a flavor tag.
// E and Etilde are function flavors (contravariant, extended by pullback);
// Eprime and Etildeprime are distribution flavors (extended by zero).
enum class Flavor { E, Etilde, Eprime, Etildeprime };

bool is_function_flavor(Flavor f);
Flavor fourier_source_flavor(Transform t);
Flavor fourier_target_flavor(Transform t);
std::string flavor_name(Flavor f);

// Element of a limit-defined function or distribution space, represented by
// a single window datum.  The canonical extension to any enclosing window
// restricts back to the stored datum; two germs are compared on the
// smallest window enclosing both.
class SmoothGerm {
 public:
  SmoothGerm() = default;
  // Level-1 germ: data is a function on the window group.
  SmoothGerm(Flavor flavor, FilteredObjectPtr parent, int win_lo, int win_hi,
             FnOnGroup data);
  // Higher level: data is a germ on the window object.
  SmoothGerm(Flavor flavor, FilteredObjectPtr parent, int win_lo, int win_hi,
             SmoothGerm inner);

  Flavor flavor() const { return flavor_; }
  const FilteredObjectPtr& parent() const { return parent_; }
  int window_lo() const { return win_lo_; }
  int window_hi() const { return win_hi_; }
  int level() const { return parent_->level(); }

  bool is_level1() const { return std::holds_alternative<FnOnGroup>(data_); }
  const FnOnGroup& fn() const { return std::get<FnOnGroup>(data_); }
  const SmoothGerm& inner() const {
    return *std::get<std::shared_ptr<const SmoothGerm>>(data_);
  }

  SmoothGerm with_flavor(Flavor f) const;

 private:
  Flavor flavor_ = Flavor::E;
  FilteredObjectPtr parent_;
  int win_lo_ = 0, win_hi_ = 0;
  std::variant<FnOnGroup, std::shared_ptr<const SmoothGerm>> data_;
};

// Canonical extension to an enclosing window.  Function flavors pull back
// along the projection transitions and the alpha retractions; distribution
// flavors push forward (extension by zero) along alpha and the pi sections.
SmoothGerm germ_extend(const SmoothGerm& g, int win_lo, int win_hi);

// Equality on the smallest common enclosing window.
bool germs_equal(const SmoothGerm& a, const SmoothGerm& b);

// Evaluation embedding into C(A) for function flavors.
CycloScalar tau(const SmoothGerm& g, const GroupElement& ambient_elem);

// The canonical invariant basis element of a nonzero bounded object.
SmoothGerm one_A(const FilteredObjectPtr& x, Flavor flavor = Flavor::E);

// Translation action; function flavors translate by pullback, distribution
// flavors by pushforward, so both satisfy the additive group law.
SmoothGerm translate_n(const GroupElement& a, const SmoothGerm& g);

// Pointwise multiplication by the character x -> e^(2 pi i chi(x)); chi is
// an element of the dual ambient group.
SmoothGerm mul_character(const SmoothGerm& g, const GroupElement& chi);

// Level-n Fourier transform: applies the level-0 transform to the window
// datum and reflects the window onto the dual object.  The flavor must
// match the transform.
SmoothGerm fourier_n(const SmoothGerm& g, Transform which);

// Perfect pairing of a distribution germ against a function germ of the
// matching flavor, evaluated on a common window.
CycloScalar pair_smooth(const SmoothGerm& dist, const SmoothGerm& fn);

// tau(F' f)(chi) = <1_A, f e^(2 pi i chi)> for a distribution germ f.
bool theorem_functions_check(const SmoothGerm& f, const GroupElement& chi);

// Dimension of the translation-invariant functions on a finite group,
// computed by exact rank reduction of the invariance system.
i64 invariant_function_dimension(const FinAbGroup& w);

}  // namespace adelharm
