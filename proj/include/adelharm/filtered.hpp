#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <variant>

#include "adelharm/finab.hpp"

namespace adelharm {

enum class Tri { no, yes, unknown };

class FilteredObject;
class FilteredMorphism;
using FilteredObjectPtr = std::shared_ptr<const FilteredObject>;
using FilteredMorphismPtr = std::shared_ptr<const FilteredMorphism>;

// Content of one window: a finite group at level 1, a filtered object one
// level down otherwise.
class WindowValue {
 public:
  WindowValue() : v_(FinAbGroup{}) {}
  WindowValue(FinAbGroup g) : v_(std::move(g)) {}
  WindowValue(FilteredObjectPtr f) : v_(std::move(f)) {}

  bool is_group() const { return std::holds_alternative<FinAbGroup>(v_); }
  const FinAbGroup& group() const { return std::get<FinAbGroup>(v_); }
  const FilteredObjectPtr& filtered() const { return std::get<FilteredObjectPtr>(v_); }
  int level() const;
  Int order() const;

 private:
  std::variant<FinAbGroup, FilteredObjectPtr> v_;
};

class WindowMap {
 public:
  WindowMap() : v_(GroupHom{}) {}
  WindowMap(GroupHom h) : v_(std::move(h)) {}
  WindowMap(FilteredMorphismPtr m) : v_(std::move(m)) {}

  bool is_hom() const { return std::holds_alternative<GroupHom>(v_); }
  const GroupHom& hom() const { return std::get<GroupHom>(v_); }
  const FilteredMorphismPtr& filtered() const { return std::get<FilteredMorphismPtr>(v_); }

 private:
  std::variant<GroupHom, FilteredMorphismPtr> v_;
};

// Collapse of window content onto concrete groups; the total group of a
// bounded filtered object is the group of its largest window.
FinAbGroup value_total_group(const WindowValue& v);
GroupHom map_total_hom(const WindowMap& m);
WindowMap compose_maps(const WindowMap& outer, const WindowMap& inner);
bool maps_equal(const WindowMap& a, const WindowMap& b);

// Bounded objects expose their elements through an ambient group: the chain
// of subgroups F(i) plus the canonical projections into window coordinates
// and a deterministic section back.
struct ElementBridge {
  FinAbGroup ambient;
  std::function<Subgroup(int)> chain;  // F(i), clamped outside [lo, hi]
  // a in F(j)  ->  class in the window group of (i, j)
  std::function<GroupElement(const GroupElement&, int, int)> to_window;
  // section: window class -> representative in F(j)
  std::function<GroupElement(const GroupElement&, int, int)> from_window;
};

// Filtered object of level n >= 1 given by pure window providers.  All
// computation happens in the finite quotients Q(i, j) = F(j)/F(i); for a
// bounded object indices clamp to [lo, hi] so that every window beyond the
// bounds is literally the total one.
class FilteredObject : public std::enable_shared_from_this<FilteredObject> {
 public:
  struct Providers {
    std::function<WindowValue(int, int)> quotient;       // i <= j
    std::function<WindowMap(int, int, int)> alpha;       // Q(i,j) -> Q(i,k)
    std::function<WindowMap(int, int, int)> pi;          // Q(i,k) -> Q(j,k)
    // Optional retractions: alpha_section . alpha = id, pi . pi_section = id.
    std::function<std::optional<WindowMap>(int, int, int)> alpha_section;
    std::function<std::optional<WindowMap>(int, int, int)> pi_section;
  };

  static FilteredObjectPtr from_providers(int level, std::optional<int> lo,
                                          std::optional<int> hi, Providers p,
                                          std::optional<ElementBridge> bridge = {});
  // Bounded level-1 object from a monotone chain of subgroups.
  static FilteredObjectPtr from_chain(const FinAbGroup& ambient,
                                      std::function<Subgroup(int)> chain, int lo,
                                      int hi);
  // Finite group viewed as trivially filtered: F(i) = 0 below 0, = A above.
  static FilteredObjectPtr trivial(const FinAbGroup& a);
  // Pontryagin dual: windows are the duals of the reflected windows.
  static FilteredObjectPtr dual_of(const FilteredObjectPtr& x);
  // Reindexed view G(i) = F(i + shift) of the same object.
  static FilteredObjectPtr shifted(const FilteredObjectPtr& x, int shift);

  int level() const { return level_; }
  std::optional<int> lower_bound() const { return lo_; }
  std::optional<int> upper_bound() const { return hi_; }
  bool bounded() const { return lo_.has_value() && hi_.has_value(); }

  WindowValue quotient(int i, int j) const;
  WindowMap alpha(int i, int j, int k) const;
  WindowMap pi(int i, int j, int k) const;
  std::optional<WindowMap> alpha_section(int i, int j, int k) const;
  std::optional<WindowMap> pi_section(int i, int j, int k) const;

  const std::optional<ElementBridge>& bridge() const { return bridge_; }
  // Concrete group of one window (recursively collapsed for level >= 2).
  FinAbGroup window_group(int i, int j) const;
  std::pair<int, int> total_window() const;  // requires bounded
  FinAbGroup total_group() const;

  bool is_zero_object() const;  // bounded with trivial total group

 private:
  int clamp(int i) const;
  int level_ = 1;
  std::optional<int> lo_, hi_;
  Providers providers_;
  std::optional<ElementBridge> bridge_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<int, int>, WindowValue> cache_;
};

// Morphism between filtered objects with aligned integer index sets, given
// by one component per window commuting with the transitions.
class FilteredMorphism : public std::enable_shared_from_this<FilteredMorphism> {
 public:
  static FilteredMorphismPtr from_components(FilteredObjectPtr source,
                                             FilteredObjectPtr target,
                                             std::function<WindowMap(int, int)> comp);
  // Level-1 bounded: induced by an ambient hom with h(F(i)) inside G(i).
  static FilteredMorphismPtr from_ambient(FilteredObjectPtr source,
                                          FilteredObjectPtr target, GroupHom h);
  static FilteredMorphismPtr identity(FilteredObjectPtr x);
  static FilteredMorphismPtr dual_of(const FilteredMorphismPtr& m);

  const FilteredObjectPtr& source() const { return src_; }
  const FilteredObjectPtr& target() const { return dst_; }
  int level() const { return src_->level(); }
  WindowMap component(int i, int j) const;
  const std::optional<GroupHom>& ambient_hom() const { return ambient_; }

  // Commutation with alpha and pi over every triple in [wlo, whi]; throws a
  // morphism error naming the offending window.
  void validate(int wlo, int whi) const;

 private:
  FilteredObjectPtr src_, dst_;
  std::function<WindowMap(int, int)> comp_;
  std::optional<GroupHom> ambient_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<int, int>, WindowMap> cache_;
};

FilteredMorphismPtr compose_filtered(const FilteredMorphismPtr& outer,
                                     const FilteredMorphismPtr& inner);

// Bounded graded model: finitely many finite components indexed by tuples
// in Z^n, carrying the standard filtration by the first index and the
// recursive filtrations by the later ones.
class GradedModel {
 public:
  GradedModel() = default;
  GradedModel(int dims, std::map<std::vector<int>, std::vector<i64>> support);

  int dims() const { return dims_; }
  bool empty() const { return components_.empty(); }
  const std::map<std::vector<int>, std::vector<i64>>& support() const {
    return support_;
  }

  struct Component {
    std::vector<int> idx;
    std::vector<i64> orders;
    size_t coord0;  // first ambient coordinate
  };
  const std::vector<Component>& components() const { return components_; }
  const FinAbGroup& ambient() const { return ambient_; }

  int outer_min() const;
  int outer_max() const;
  int lo() const { return outer_min() - 1; }  // F(i) = 0 for i <= lo
  int hi() const { return outer_max(); }      // F(j) = A for j >= hi

  // Component membership in the total filtration at z (lexicographic).
  static bool component_included(const std::vector<int>& idx,
                                 const std::vector<int>& z);

  Subgroup outer_filtration(int i) const;                     // F(i)
  Subgroup total_filtration(const std::vector<int>& z) const;  // F_tot(z)
  // Annihilator route: perp of the total filtration inside the dual.
  Subgroup dual_filtration(const std::vector<int>& z) const;
  // Structural route: the dual model's own total filtration, mapped back
  // onto the coordinates of the dual ambient group.
  GradedModel dual_model() const;
  std::vector<int> dual_index(const std::vector<int>& z) const;
  Subgroup structural_dual_filtration(const std::vector<int>& z) const;

  // The filtered-object view (level = dims), with element bridge.
  FilteredObjectPtr object() const;

  std::string to_string() const;

 private:
  int dims_ = 1;
  std::map<std::vector<int>, std::vector<i64>> support_;
  std::vector<Component> components_;
  FinAbGroup ambient_;
};

// Exact sequence 0 -> D -> A -> K -> 0 with D discrete and K compact; the
// canonical input of the Schwartz-space transform.  D spans the components
// at or above the cut in lexicographic order.
struct StructureSequence {
  GradedModel model;
  std::vector<int> cut;
  Subgroup discrete_part;     // D
  Subgroup k_hat;             // annihilator of D inside the dual group
  FinAbGroup k_group;         // A / D
  GroupHom k_projection;      // A -> K
  int discrete_witness;       // i with D cap F(i) = 0
  int compact_witness;        // j with F_K(j) = K
};

StructureSequence standard_splitting(const GradedModel& m, std::vector<int> cut);

// Three-valued discreteness and compactness.  Bounds that are missing on a
// lazy object leave the answer undecided rather than guessed.
Tri is_discrete(const FilteredObjectPtr& x, int probe_radius = 4);
Tri is_compact(const FilteredObjectPtr& x, int probe_radius = 4);

// |D cap K| for a discrete and a compact subobject, located and counted in
// a window F(j)/F(i).  Throws a precondition error when no witnesses exist.
i64 discrete_compact_intersection(const FilteredObjectPtr& x, const Subgroup& d,
                                  const Subgroup& k);

// Rectangle with optional infinite sides, describing graded support.
struct Region {
  std::optional<int> r_min, r_max;
  std::optional<int> s_min, s_max;
  bool is_empty() const;
};

// Decides the two column-finiteness conditions a 2-dimensional graded sum
// must satisfy to admit a discrete/compact splitting.
bool conditions_ab_check(const std::vector<Region>& regions);

// Induced filtrations on kernel and cokernel of a level-1 morphism whose
// components commute with the transitions.
struct InducedKernel {
  FilteredObjectPtr object;
  FilteredMorphismPtr inclusion;
};
struct InducedCokernel {
  FilteredObjectPtr object;
  FilteredMorphismPtr projection;
};
InducedKernel induced_kernel(const FilteredMorphismPtr& phi);
InducedCokernel induced_cokernel(const FilteredMorphismPtr& phi);

// Level-n pairing evaluated through a window: a must lie in F(j), chi must
// annihilate F(i).  The result does not depend on the admissible window.
QmodZ pairing_n(const FilteredObjectPtr& x, const GroupElement& a,
                const GroupElement& chi, int i, int j);

}  // namespace adelharm
