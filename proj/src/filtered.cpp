#include "adelharm/filtered.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace adelharm {

// ---------------------------------------------------------------------------
// Window values and maps

int WindowValue::level() const {
  if (is_group()) return 0;
  return filtered()->level();
}

Int WindowValue::order() const { return value_total_group(*this).order(); }

FinAbGroup value_total_group(const WindowValue& v) {
  if (v.is_group()) return v.group();
  return v.filtered()->total_group();
}

GroupHom map_total_hom(const WindowMap& m) {
  if (m.is_hom()) return m.hom();
  const FilteredMorphismPtr& f = m.filtered();
  require(f->source()->bounded() && f->target()->bounded(), ErrorKind::window,
          "total hom of an unbounded morphism");
  int lo = std::min(*f->source()->lower_bound(), *f->target()->lower_bound());
  int hi = std::max(*f->source()->upper_bound(), *f->target()->upper_bound());
  return map_total_hom(f->component(lo, hi));
}

WindowMap compose_maps(const WindowMap& outer, const WindowMap& inner) {
  if (outer.is_hom() && inner.is_hom())
    return WindowMap(hom_compose(outer.hom(), inner.hom()));
  require(!outer.is_hom() && !inner.is_hom(), ErrorKind::compose,
          "cannot compose maps of different levels");
  return WindowMap(compose_filtered(outer.filtered(), inner.filtered()));
}

bool maps_equal(const WindowMap& a, const WindowMap& b) {
  if (a.is_hom() != b.is_hom()) return false;
  if (a.is_hom()) return a.hom() == b.hom();
  const FilteredMorphismPtr& ma = a.filtered();
  const FilteredMorphismPtr& mb = b.filtered();
  require(ma->source()->bounded() && mb->source()->bounded(), ErrorKind::window,
          "comparing unbounded morphisms");
  int lo = std::min(*ma->source()->lower_bound(), *mb->source()->lower_bound());
  int hi = std::max(*ma->source()->upper_bound(), *mb->source()->upper_bound());
  for (int i = lo; i <= hi; ++i)
    for (int j = i; j <= hi; ++j)
      if (!maps_equal(ma->component(i, j), mb->component(i, j))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// FilteredObject

int FilteredObject::clamp(int i) const {
  if (lo_ && i < *lo_) return *lo_;
  if (hi_ && i > *hi_) return *hi_;
  return i;
}

WindowValue FilteredObject::quotient(int i, int j) const {
  i = clamp(i);
  j = clamp(j);
  require(i <= j, ErrorKind::window, "window indices out of order");
  std::lock_guard<std::mutex> lock(mu_);
  auto key = std::make_pair(i, j);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  WindowValue v = providers_.quotient(i, j);
  cache_.emplace(key, v);
  return v;
}

WindowMap FilteredObject::alpha(int i, int j, int k) const {
  i = clamp(i);
  j = clamp(j);
  k = clamp(k);
  require(i <= j && j <= k, ErrorKind::window, "transition indices out of order");
  return providers_.alpha(i, j, k);
}

WindowMap FilteredObject::pi(int i, int j, int k) const {
  i = clamp(i);
  j = clamp(j);
  k = clamp(k);
  require(i <= j && j <= k, ErrorKind::window, "transition indices out of order");
  return providers_.pi(i, j, k);
}

std::optional<WindowMap> FilteredObject::alpha_section(int i, int j, int k) const {
  i = clamp(i);
  j = clamp(j);
  k = clamp(k);
  if (!providers_.alpha_section) return std::nullopt;
  return providers_.alpha_section(i, j, k);
}

std::optional<WindowMap> FilteredObject::pi_section(int i, int j, int k) const {
  i = clamp(i);
  j = clamp(j);
  k = clamp(k);
  if (!providers_.pi_section) return std::nullopt;
  return providers_.pi_section(i, j, k);
}

FinAbGroup FilteredObject::window_group(int i, int j) const {
  return value_total_group(quotient(i, j));
}

std::pair<int, int> FilteredObject::total_window() const {
  require(bounded(), ErrorKind::window, "total window of an unbounded object");
  return {*lo_, *hi_};
}

FinAbGroup FilteredObject::total_group() const {
  auto [lo, hi] = total_window();
  return window_group(lo, hi);
}

bool FilteredObject::is_zero_object() const {
  return bounded() && total_group().is_trivial();
}

FilteredObjectPtr FilteredObject::from_providers(int level, std::optional<int> lo,
                                                 std::optional<int> hi, Providers p,
                                                 std::optional<ElementBridge> bridge) {
  require(level >= 1, ErrorKind::precondition, "filtered objects start at level 1");
  auto obj = std::make_shared<FilteredObject>();
  obj->level_ = level;
  obj->lo_ = lo;
  obj->hi_ = hi;
  obj->providers_ = std::move(p);
  obj->bridge_ = std::move(bridge);
  return obj;
}

namespace {

// Memoized chain and window presentations shared by the provider closures.
struct ChainTable {
  FinAbGroup ambient;
  std::function<Subgroup(int)> chain_fn;
  int lo, hi;
  std::mutex mu;
  std::map<int, Subgroup> chains;
  std::map<std::pair<int, int>, std::shared_ptr<QuotientPresentation>> pres;

  Subgroup chain(int i) {
    if (i < lo) i = lo;
    if (i > hi) i = hi;
    std::lock_guard<std::mutex> lock(mu);
    auto it = chains.find(i);
    if (it != chains.end()) return it->second;
    Subgroup s = chain_fn(i);
    require(s.ambient() == ambient, ErrorKind::parent,
            "chain subgroup has wrong ambient");
    chains.emplace(i, s);
    return s;
  }

  std::shared_ptr<QuotientPresentation> presentation(int i, int j) {
    Subgroup big = chain(j);
    Subgroup small = chain(i);
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(std::max(i, lo), std::min(std::max(j, lo), hi));
    auto it = pres.find(key);
    if (it != pres.end()) return it->second;
    auto p = std::make_shared<QuotientPresentation>(ambient, big, small);
    pres.emplace(key, p);
    return p;
  }
};

}  // namespace

FilteredObjectPtr FilteredObject::from_chain(const FinAbGroup& ambient,
                                             std::function<Subgroup(int)> chain,
                                             int lo, int hi) {
  auto table = std::make_shared<ChainTable>();
  table->ambient = ambient;
  table->chain_fn = std::move(chain);
  table->lo = lo;
  table->hi = hi;
  require(table->chain(lo).order() == 1, ErrorKind::precondition,
          "chain must vanish at the lower bound");
  require(table->chain(hi).order() == ambient.order_i64(), ErrorKind::precondition,
          "chain must exhaust the group at the upper bound");
  for (int i = lo; i < hi; ++i)
    require(table->chain(i + 1).contains_subgroup(table->chain(i)),
            ErrorKind::precondition, "chain is not monotone");

  Providers p;
  p.quotient = [table](int i, int j) {
    return WindowValue(table->presentation(i, j)->group());
  };
  p.alpha = [table](int i, int j, int k) {
    auto pij = table->presentation(i, j);
    auto pik = table->presentation(i, k);
    std::vector<GroupElement> images;
    for (size_t g = 0; g < pij->group().rank(); ++g)
      images.push_back(pik->project(pij->lift(pij->group().generator(g))));
    return WindowMap(GroupHom::from_images(pij->group(), pik->group(), images));
  };
  p.pi = [table](int i, int j, int k) {
    auto pik = table->presentation(i, k);
    auto pjk = table->presentation(j, k);
    std::vector<GroupElement> images;
    for (size_t g = 0; g < pik->group().rank(); ++g)
      images.push_back(pjk->project(pik->lift(pik->group().generator(g))));
    return WindowMap(GroupHom::from_images(pik->group(), pjk->group(), images));
  };
  // Retractions exist only where the transition is an isomorphism of
  // windows, which after clamping covers the indices beyond the bounds.
  p.alpha_section = [table](int i, int j, int k) -> std::optional<WindowMap> {
    if (table->chain(j).order() == table->chain(k).order())
      return WindowMap(GroupHom::identity(table->presentation(i, j)->group()));
    return std::nullopt;
  };
  p.pi_section = [table](int i, int j, int k) -> std::optional<WindowMap> {
    if (table->chain(i).order() == table->chain(j).order())
      return WindowMap(GroupHom::identity(table->presentation(j, k)->group()));
    return std::nullopt;
  };

  ElementBridge bridge;
  bridge.ambient = ambient;
  bridge.chain = [table](int i) { return table->chain(i); };
  bridge.to_window = [table](const GroupElement& a, int i, int j) {
    return table->presentation(i, j)->project(a);
  };
  bridge.from_window = [table](const GroupElement& q, int i, int j) {
    return table->presentation(i, j)->lift(q);
  };
  return from_providers(1, lo, hi, std::move(p), std::move(bridge));
}

FilteredObjectPtr FilteredObject::trivial(const FinAbGroup& a) {
  return from_chain(
      a,
      [a](int i) { return i < 0 ? Subgroup::trivial(a) : Subgroup::full(a); }, -1,
      0);
}

namespace {

WindowMap dual_map(const WindowMap& m) {
  if (m.is_hom()) return WindowMap(dual_hom(m.hom()));
  return WindowMap(FilteredMorphism::dual_of(m.filtered()));
}

}  // namespace

FilteredObjectPtr FilteredObject::dual_of(const FilteredObjectPtr& x) {
  require(x->bounded(), ErrorKind::window, "dual of an unbounded object");
  require(x->bridge().has_value(), ErrorKind::window,
          "dual construction needs an element bridge");
  const int lo = *x->lower_bound();
  const int hi = *x->upper_bound();

  Providers p;
  p.quotient = [x](int u, int v) -> WindowValue {
    WindowValue q = x->quotient(-v, -u);
    if (q.is_group()) return WindowValue(dual_group(q.group()));
    return WindowValue(dual_of(q.filtered()));
  };
  p.alpha = [x](int u, int v, int w) { return dual_map(x->pi(-w, -v, -u)); };
  p.pi = [x](int u, int v, int w) { return dual_map(x->alpha(-w, -v, -u)); };
  p.alpha_section = [x](int u, int v, int w) -> std::optional<WindowMap> {
    auto s = x->pi_section(-w, -v, -u);
    if (!s) return std::nullopt;
    return dual_map(*s);
  };
  p.pi_section = [x](int u, int v, int w) -> std::optional<WindowMap> {
    auto s = x->alpha_section(-w, -v, -u);
    if (!s) return std::nullopt;
    return dual_map(*s);
  };

  const ElementBridge& pb = *x->bridge();
  ElementBridge bridge;
  bridge.ambient = dual_group(pb.ambient);
  bridge.chain = [pb](int u) { return perp(pb.chain(-u)); };
  bridge.to_window = [x, pb](const GroupElement& chi, int u, int v) {
    // Class of a character in the dual window = its values on the lifted
    // generators of the reflected primal window.
    for (const GroupElement& g : pb.chain(-v).generators())
      require(pairing0(g, chi).is_zero(), ErrorKind::window,
              "character does not annihilate the window floor");
    FinAbGroup w = x->window_group(-v, -u);
    FinAbGroup wd = dual_group(w);
    std::vector<i64> coords(w.rank());
    for (size_t k = 0; k < w.rank(); ++k) {
      GroupElement lift = pb.from_window(w.generator(k), -v, -u);
      Rational c = pairing0(lift, chi).value() * Rational(Int(w.orders()[k]));
      require(c.is_integer(), ErrorKind::window,
              "character class is not integral on the window");
      coords[k] = static_cast<i64>(c.num() % w.orders()[k]);
    }
    return wd.make(std::move(coords));
  };
  bridge.from_window = [x, pb](const GroupElement& chibar, int u, int v) {
    // Extend a window character to the whole group by solving through the
    // dual of the floor inclusion.
    FinAbGroup w = x->window_group(-v, -u);
    FinAbGroup p_group = x->window_group(*x->lower_bound(), -u);
    std::vector<GroupElement> incl_images;
    for (size_t k = 0; k < p_group.rank(); ++k)
      incl_images.push_back(
          pb.from_window(p_group.generator(k), *x->lower_bound(), -u));
    GroupHom incl = GroupHom::from_images(p_group, pb.ambient, incl_images);
    std::vector<i64> psi_coords(p_group.rank());
    for (size_t k = 0; k < p_group.rank(); ++k) {
      GroupElement cls = pb.to_window(incl_images[k], -v, -u);
      Rational c = pairing0(cls, chibar).value() * Rational(Int(p_group.orders()[k]));
      require(c.is_integer(), ErrorKind::window, "window character is inconsistent");
      psi_coords[k] = static_cast<i64>(c.num() % p_group.orders()[k]);
    }
    GroupElement psi = dual_group(p_group).make(std::move(psi_coords));
    auto chi = solve_hom(dual_hom(incl), psi);
    require(chi.has_value(), ErrorKind::window,
            "window character does not extend");
    return *chi;
  };
  return from_providers(x->level(), -hi, -lo, std::move(p), std::move(bridge));
}

FilteredObjectPtr FilteredObject::shifted(const FilteredObjectPtr& x, int shift) {
  Providers p;
  p.quotient = [x, shift](int i, int j) { return x->quotient(i + shift, j + shift); };
  p.alpha = [x, shift](int i, int j, int k) {
    return x->alpha(i + shift, j + shift, k + shift);
  };
  p.pi = [x, shift](int i, int j, int k) {
    return x->pi(i + shift, j + shift, k + shift);
  };
  p.alpha_section = [x, shift](int i, int j, int k) {
    return x->alpha_section(i + shift, j + shift, k + shift);
  };
  p.pi_section = [x, shift](int i, int j, int k) {
    return x->pi_section(i + shift, j + shift, k + shift);
  };
  std::optional<int> lo, hi;
  if (x->lower_bound()) lo = *x->lower_bound() - shift;
  if (x->upper_bound()) hi = *x->upper_bound() - shift;
  std::optional<ElementBridge> bridge;
  if (x->bridge()) {
    const ElementBridge& pb = *x->bridge();
    ElementBridge b;
    b.ambient = pb.ambient;
    b.chain = [pb, shift](int i) { return pb.chain(i + shift); };
    b.to_window = [pb, shift](const GroupElement& a, int i, int j) {
      return pb.to_window(a, i + shift, j + shift);
    };
    b.from_window = [pb, shift](const GroupElement& q, int i, int j) {
      return pb.from_window(q, i + shift, j + shift);
    };
    bridge = std::move(b);
  }
  return from_providers(x->level(), lo, hi, std::move(p), std::move(bridge));
}

// ---------------------------------------------------------------------------
// FilteredMorphism

namespace {

std::shared_ptr<FilteredMorphism> make_morphism() {
  return std::make_shared<FilteredMorphism>();
}

}  // namespace

FilteredMorphismPtr FilteredMorphism::from_components(
    FilteredObjectPtr source, FilteredObjectPtr target,
    std::function<WindowMap(int, int)> comp) {
  require(source->level() == target->level(), ErrorKind::compose,
          "morphism between different levels");
  auto m = make_morphism();
  m->src_ = std::move(source);
  m->dst_ = std::move(target);
  m->comp_ = std::move(comp);
  return m;
}

WindowMap FilteredMorphism::component(int i, int j) const {
  // Clamp into the union of both bounds so window identities hold literally.
  auto clamp1 = [&](int v) {
    if (src_->lower_bound() && dst_->lower_bound())
      v = std::max(v, std::min(*src_->lower_bound(), *dst_->lower_bound()));
    if (src_->upper_bound() && dst_->upper_bound())
      v = std::min(v, std::max(*src_->upper_bound(), *dst_->upper_bound()));
    return v;
  };
  i = clamp1(i);
  j = clamp1(j);
  require(i <= j, ErrorKind::window, "component indices out of order");
  std::lock_guard<std::mutex> lock(mu_);
  auto key = std::make_pair(i, j);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  WindowMap m = comp_(i, j);
  cache_.emplace(key, m);
  return m;
}

FilteredMorphismPtr FilteredMorphism::from_ambient(FilteredObjectPtr source,
                                                   FilteredObjectPtr target,
                                                   GroupHom h) {
  require(source->level() == 1 && target->level() == 1, ErrorKind::compose,
          "ambient homs induce level-1 morphisms");
  require(source->bridge() && target->bridge(), ErrorKind::window,
          "ambient morphism needs element bridges");
  require(source->bounded() && target->bounded(), ErrorKind::window,
          "ambient morphism needs bounded objects");
  const ElementBridge& sb = *source->bridge();
  const ElementBridge& tb = *target->bridge();
  require(h.source() == sb.ambient && h.target() == tb.ambient, ErrorKind::parent,
          "ambient hom endpoints mismatch");
  int lo = std::min(*source->lower_bound(), *target->lower_bound());
  int hi = std::max(*source->upper_bound(), *target->upper_bound());
  for (int i = lo; i <= hi; ++i) {
    Subgroup img = image(h, sb.chain(i));
    require(tb.chain(i).contains_subgroup(img), ErrorKind::morphism,
            "ambient hom does not respect the filtrations");
  }
  auto src = source;
  auto dst = target;
  auto m = make_morphism();
  m->src_ = std::move(source);
  m->dst_ = std::move(target);
  m->ambient_ = h;
  m->comp_ = [src, dst, h](int i, int j) -> WindowMap {
    const ElementBridge& fb = *src->bridge();
    const ElementBridge& gb = *dst->bridge();
    FinAbGroup qs = src->window_group(i, j);
    FinAbGroup qt = dst->window_group(i, j);
    std::vector<GroupElement> images;
    for (size_t k = 0; k < qs.rank(); ++k)
      images.push_back(
          gb.to_window(h.apply(fb.from_window(qs.generator(k), i, j)), i, j));
    return WindowMap(GroupHom::from_images(qs, qt, images));
  };
  return m;
}

FilteredMorphismPtr FilteredMorphism::identity(FilteredObjectPtr x) {
  auto obj = x;
  auto m = make_morphism();
  m->src_ = x;
  m->dst_ = x;
  m->comp_ = [obj](int i, int j) -> WindowMap {
    WindowValue q = obj->quotient(i, j);
    if (q.is_group()) return WindowMap(GroupHom::identity(q.group()));
    return WindowMap(identity(q.filtered()));
  };
  if (x->bridge()) m->ambient_ = GroupHom::identity(x->bridge()->ambient);
  return m;
}

FilteredMorphismPtr FilteredMorphism::dual_of(const FilteredMorphismPtr& m) {
  FilteredObjectPtr src = FilteredObject::dual_of(m->target());
  FilteredObjectPtr dst = FilteredObject::dual_of(m->source());
  auto inner = m;
  return from_components(src, dst, [inner](int u, int v) {
    return dual_map(inner->component(-v, -u));
  });
}

void FilteredMorphism::validate(int wlo, int whi) const {
  for (int i = wlo; i <= whi; ++i)
    for (int j = i; j <= whi; ++j)
      for (int k = j; k <= whi; ++k) {
        bool alpha_ok = maps_equal(
            compose_maps(dst_->alpha(i, j, k), component(i, j)),
            compose_maps(component(i, k), src_->alpha(i, j, k)));
        bool pi_ok = maps_equal(
            compose_maps(component(j, k), src_->pi(i, j, k)),
            compose_maps(dst_->pi(i, j, k), component(i, k)));
        if (!alpha_ok || !pi_ok) {
          std::ostringstream os;
          os << "morphism components do not commute with transitions at ("
             << i << ", " << j << ", " << k << ")";
          fail(ErrorKind::morphism, os.str());
        }
      }
}

FilteredMorphismPtr compose_filtered(const FilteredMorphismPtr& outer,
                                     const FilteredMorphismPtr& inner) {
  require(outer->level() == inner->level(), ErrorKind::compose,
          "composition across levels");
  auto a = outer;
  auto b = inner;
  auto m = FilteredMorphism::from_components(
      inner->source(), outer->target(), [a, b](int i, int j) {
        return compose_maps(a->component(i, j), b->component(i, j));
      });
  return m;
}

// ---------------------------------------------------------------------------
// GradedModel

GradedModel::GradedModel(int dims, std::map<std::vector<int>, std::vector<i64>> support)
    : dims_(dims), support_(std::move(support)) {
  require(dims_ >= 1 && dims_ <= 2, ErrorKind::precondition,
          "graded models support one or two grading dimensions");
  std::vector<i64> all_orders;
  for (const auto& [idx, orders] : support_) {
    require(static_cast<int>(idx.size()) == dims_, ErrorKind::schema,
            "component index arity mismatch");
    FinAbGroup comp{orders};  // validates and strips trivial factors
    if (comp.is_trivial()) continue;
    Component c;
    c.idx = idx;
    c.orders = comp.orders();
    c.coord0 = all_orders.size();
    all_orders.insert(all_orders.end(), c.orders.begin(), c.orders.end());
    components_.push_back(std::move(c));
  }
  ambient_ = FinAbGroup{all_orders};
}

int GradedModel::outer_min() const {
  if (components_.empty()) return 0;
  int m = components_.front().idx[0];
  for (const auto& c : components_) m = std::min(m, c.idx[0]);
  return m;
}

int GradedModel::outer_max() const {
  if (components_.empty()) return -1;
  int m = components_.front().idx[0];
  for (const auto& c : components_) m = std::max(m, c.idx[0]);
  return m;
}

bool GradedModel::component_included(const std::vector<int>& idx,
                                     const std::vector<int>& z) {
  const size_t n = z.size();
  for (size_t k = 0; k < n; ++k) {
    if (k + 1 == n) return idx[k] <= z[k];
    if (idx[k] <= z[k]) return true;
    if (idx[k] != z[k] + 1) return false;
  }
  return true;
}

namespace {

std::vector<i64> span_generators(const GradedModel& m,
                                 const std::vector<size_t>& coords) {
  std::vector<i64> gens;
  const FinAbGroup& a = m.ambient();
  for (size_t c : coords) gens.push_back(a.index_of(a.generator(c)));
  return gens;
}

std::vector<size_t> component_coords(const GradedModel::Component& c) {
  std::vector<size_t> out;
  for (size_t k = 0; k < c.orders.size(); ++k) out.push_back(c.coord0 + k);
  return out;
}

}  // namespace

Subgroup GradedModel::outer_filtration(int i) const {
  std::vector<size_t> coords;
  for (const auto& c : components_)
    if (c.idx[0] <= i)
      for (size_t x : component_coords(c)) coords.push_back(x);
  return Subgroup::from_generator_indices(ambient_, span_generators(*this, coords));
}

Subgroup GradedModel::total_filtration(const std::vector<int>& z) const {
  require(static_cast<int>(z.size()) == dims_, ErrorKind::precondition,
          "total filtration index arity mismatch");
  std::vector<size_t> coords;
  for (const auto& c : components_)
    if (component_included(c.idx, z))
      for (size_t x : component_coords(c)) coords.push_back(x);
  return Subgroup::from_generator_indices(ambient_, span_generators(*this, coords));
}

Subgroup GradedModel::dual_filtration(const std::vector<int>& z) const {
  return perp(total_filtration(z));
}

GradedModel GradedModel::dual_model() const {
  std::map<std::vector<int>, std::vector<i64>> support;
  for (const auto& [idx, orders] : support_) {
    std::vector<int> neg(idx.size());
    for (size_t k = 0; k < idx.size(); ++k) neg[k] = -idx[k];
    support.emplace(std::move(neg), orders);
  }
  return GradedModel(dims_, std::move(support));
}

std::vector<int> GradedModel::dual_index(const std::vector<int>& z) const {
  std::vector<int> out(z.size());
  for (size_t k = 0; k < z.size(); ++k)
    out[k] = (k + 1 == z.size()) ? -z[k] - 1 : -z[k] - 2;
  return out;
}

Subgroup GradedModel::structural_dual_filtration(const std::vector<int>& z) const {
  const std::vector<int> zz = dual_index(z);
  std::vector<size_t> coords;
  for (const auto& c : components_) {
    std::vector<int> neg(c.idx.size());
    for (size_t k = 0; k < c.idx.size(); ++k) neg[k] = -c.idx[k];
    if (component_included(neg, zz))
      for (size_t x : component_coords(c)) coords.push_back(x);
  }
  return Subgroup::from_generator_indices(dual_group(ambient_),
                                          span_generators(*this, coords));
}

namespace {

// Coordinates of the box {i < idx[0] <= j}, ordered by the rotated index
// (idx[1], ..., idx[n-1], idx[0]); this is the enumeration the window
// quotients of the filtered view use.
std::vector<size_t> box_coords(const GradedModel& m, int i, int j) {
  std::vector<const GradedModel::Component*> sel;
  for (const auto& c : m.components())
    if (c.idx[0] > i && c.idx[0] <= j) sel.push_back(&c);
  std::stable_sort(sel.begin(), sel.end(), [](const auto* a, const auto* b) {
    std::vector<int> ka(a->idx.begin() + 1, a->idx.end());
    ka.push_back(a->idx[0]);
    std::vector<int> kb(b->idx.begin() + 1, b->idx.end());
    kb.push_back(b->idx[0]);
    return ka < kb;
  });
  std::vector<size_t> out;
  for (const auto* c : sel)
    for (size_t x : component_coords(*c)) out.push_back(x);
  return out;
}

FinAbGroup coords_group(const GradedModel& m, const std::vector<size_t>& coords) {
  std::vector<i64> orders;
  for (size_t c : coords) orders.push_back(m.ambient().orders()[c]);
  return FinAbGroup{orders};
}

// Hom between coordinate-selection groups: coordinates present in both are
// wired through, others map to zero.  Covers inclusions and projections of
// graded windows.
GroupHom coords_hom(const GradedModel& m, const std::vector<size_t>& from,
                    const std::vector<size_t>& to) {
  FinAbGroup src = coords_group(m, from);
  FinAbGroup dst = coords_group(m, to);
  std::vector<std::vector<i64>> mat(dst.rank(), std::vector<i64>(src.rank(), 0));
  for (size_t col = 0; col < from.size(); ++col) {
    auto it = std::find(to.begin(), to.end(), from[col]);
    if (it != to.end()) mat[static_cast<size_t>(it - to.begin())][col] = 1;
  }
  return GroupHom(src, dst, std::move(mat));
}

GroupElement select_coords(const FinAbGroup& window, const GroupElement& a,
                           const std::vector<size_t>& coords) {
  std::vector<i64> res(coords.size());
  for (size_t k = 0; k < coords.size(); ++k) res[k] = a.residues()[coords[k]];
  return window.make(std::move(res));
}

GroupElement inject_coords(const FinAbGroup& ambient, const GroupElement& q,
                           const std::vector<size_t>& coords) {
  std::vector<i64> res(ambient.rank(), 0);
  for (size_t k = 0; k < coords.size(); ++k) res[coords[k]] = q.residues()[k];
  return ambient.make(std::move(res));
}

// Level-1 slice of a 2-dimensional model over the outer range (i, j]：
// grading by the second index, components concatenated by the first.
GradedModel slice_model(const GradedModel& m, int i, int j) {
  std::map<std::vector<int>, std::vector<i64>> support;
  std::map<int, std::vector<std::pair<int, std::vector<i64>>>> rows;
  for (const auto& c : m.components())
    if (c.idx[0] > i && c.idx[0] <= j)
      rows[c.idx[1]].emplace_back(c.idx[0], c.orders);
  for (auto& [s, list] : rows) {
    std::sort(list.begin(), list.end());
    std::vector<i64> orders;
    for (const auto& [r, ord] : list)
      orders.insert(orders.end(), ord.begin(), ord.end());
    support.emplace(std::vector<int>{s}, std::move(orders));
  }
  return GradedModel(1, std::move(support));
}

}  // namespace

FilteredObjectPtr GradedModel::object() const {
  auto model = std::make_shared<GradedModel>(*this);
  const int olo = lo();
  const int ohi = hi();

  FilteredObject::Providers p;
  if (dims_ == 1) {
    p.quotient = [model](int i, int j) {
      return WindowValue(coords_group(*model, box_coords(*model, i, j)));
    };
    p.alpha = [model](int i, int j, int k) {
      return WindowMap(coords_hom(*model, box_coords(*model, i, j),
                                  box_coords(*model, i, k)));
    };
    p.pi = [model](int i, int j, int k) {
      return WindowMap(coords_hom(*model, box_coords(*model, i, k),
                                  box_coords(*model, j, k)));
    };
    p.alpha_section = [model](int i, int j, int k) -> std::optional<WindowMap> {
      return WindowMap(coords_hom(*model, box_coords(*model, i, k),
                                  box_coords(*model, i, j)));
    };
    p.pi_section = [model](int i, int j, int k) -> std::optional<WindowMap> {
      return WindowMap(coords_hom(*model, box_coords(*model, j, k),
                                  box_coords(*model, i, k)));
    };
  } else {
    p.quotient = [model](int i, int j) {
      return WindowValue(slice_model(*model, i, j).object());
    };
    auto slice_map = [model](int ia, int ja, int ib, int jb) {
      // Morphism between the slices over (ia, ja] and (ib, jb].
      FilteredObjectPtr src = slice_model(*model, ia, ja).object();
      FilteredObjectPtr dst = slice_model(*model, ib, jb).object();
      GradedModel m = *model;
      return FilteredMorphism::from_components(
          src, dst, [m, ia, ja, ib, jb](int u, int v) {
            GradedModel sa = slice_model(m, ia, ja);
            GradedModel sb = slice_model(m, ib, jb);
            // Global ambient coordinates of the two level-1 windows.
            auto global = [&m](const GradedModel& s, int u2, int v2,
                               int blo, int bhi) {
              std::vector<size_t> out;
              std::vector<const GradedModel::Component*> sel;
              for (const auto& c : m.components())
                if (c.idx[0] > blo && c.idx[0] <= bhi && c.idx[1] > u2 &&
                    c.idx[1] <= v2)
                  sel.push_back(&c);
              std::stable_sort(sel.begin(), sel.end(),
                               [](const auto* a, const auto* b) {
                                 return std::make_pair(a->idx[1], a->idx[0]) <
                                        std::make_pair(b->idx[1], b->idx[0]);
                               });
              for (const auto* c : sel)
                for (size_t x : component_coords(*c)) out.push_back(x);
              (void)s;
              return out;
            };
            return WindowMap(coords_hom(m, global(sa, u, v, ia, ja),
                                        global(sb, u, v, ib, jb)));
          });
    };
    p.alpha = [slice_map](int i, int j, int k) {
      return WindowMap(slice_map(i, j, i, k));
    };
    p.pi = [slice_map](int i, int j, int k) {
      return WindowMap(slice_map(i, k, j, k));
    };
    p.alpha_section = [slice_map](int i, int j, int k) -> std::optional<WindowMap> {
      return WindowMap(slice_map(i, k, i, j));
    };
    p.pi_section = [slice_map](int i, int j, int k) -> std::optional<WindowMap> {
      return WindowMap(slice_map(j, k, i, k));
    };
  }

  ElementBridge bridge;
  bridge.ambient = ambient_;
  bridge.chain = [model](int i) { return model->outer_filtration(i); };
  bridge.to_window = [model](const GroupElement& a, int i, int j) {
    // Everything strictly above j must vanish for a to lie in F(j).
    for (const auto& c : model->components())
      if (c.idx[0] > j)
        for (size_t x : component_coords(c))
          require(a.residues()[x] == 0, ErrorKind::window,
                  "element is not in the window ceiling");
    std::vector<size_t> coords = box_coords(*model, i, j);
    return select_coords(coords_group(*model, coords), a, coords);
  };
  bridge.from_window = [model](const GroupElement& q, int i, int j) {
    return inject_coords(model->ambient(), q, box_coords(*model, i, j));
  };

  return FilteredObject::from_providers(dims_, olo, ohi, std::move(p),
                                        std::move(bridge));
}

std::string GradedModel::to_string() const {
  std::ostringstream os;
  os << "graded(" << dims_ << "){";
  bool first = true;
  for (const auto& c : components_) {
    if (!first) os << ", ";
    first = false;
    os << "(";
    for (size_t k = 0; k < c.idx.size(); ++k) {
      if (k) os << ",";
      os << c.idx[k];
    }
    os << ")->" << FinAbGroup{c.orders}.to_string();
  }
  os << "}";
  return os.str();
}

// ---------------------------------------------------------------------------
// StructureSequence

StructureSequence standard_splitting(const GradedModel& m, std::vector<int> cut) {
  require(static_cast<int>(cut.size()) == m.dims(), ErrorKind::precondition,
          "cut arity mismatch");
  std::vector<size_t> dcoords;
  for (const auto& c : m.components())
    if (!(c.idx < cut))  // idx >= cut in lexicographic order
      for (size_t k = 0; k < c.orders.size(); ++k) dcoords.push_back(c.coord0 + k);

  StructureSequence seq;
  seq.model = m;
  seq.cut = std::move(cut);
  std::vector<i64> gens;
  for (size_t c : dcoords)
    gens.push_back(m.ambient().index_of(m.ambient().generator(c)));
  seq.discrete_part = Subgroup::from_generator_indices(m.ambient(), gens);
  seq.k_hat = perp(seq.discrete_part);

  QuotientPresentation pres(m.ambient(), Subgroup::full(m.ambient()),
                            seq.discrete_part);
  seq.k_group = pres.group();
  std::vector<GroupElement> images;
  for (size_t k = 0; k < m.ambient().rank(); ++k)
    images.push_back(pres.project(m.ambient().generator(k)));
  seq.k_projection = GroupHom::from_images(m.ambient(), seq.k_group, images);

  // Witnesses: the largest floor missing D and the smallest ceiling seen by K.
  seq.discrete_witness = m.lo();
  for (int i = m.lo(); i <= m.hi(); ++i)
    if (intersect(seq.discrete_part, m.outer_filtration(i)).order() == 1)
      seq.discrete_witness = i;
  require(intersect(seq.discrete_part, m.outer_filtration(seq.discrete_witness))
                  .order() == 1,
          ErrorKind::precondition, "discrete part meets every floor");
  seq.compact_witness = m.hi();
  for (int j = m.hi(); j >= m.lo(); --j) {
    Subgroup img = image(seq.k_projection, m.outer_filtration(j));
    if (img.order() == seq.k_group.order_i64()) seq.compact_witness = j;
  }
  Subgroup img = image(seq.k_projection, m.outer_filtration(seq.compact_witness));
  require(img.order() == seq.k_group.order_i64(), ErrorKind::precondition,
          "quotient filtration never exhausts K");
  return seq;
}

// ---------------------------------------------------------------------------
// Discreteness, compactness, finite intersection

Tri is_discrete(const FilteredObjectPtr& x, int probe_radius) {
  if (!x->lower_bound()) return Tri::unknown;
  const int lo = *x->lower_bound();
  const int hi = x->upper_bound() ? *x->upper_bound() : lo + probe_radius;
  Tri acc = Tri::yes;
  for (int i = lo; i <= hi; ++i)
    for (int j = i; j <= hi; ++j) {
      WindowValue q = x->quotient(i, j);
      if (q.is_group()) continue;  // finite groups are discrete
      Tri t = is_discrete(q.filtered(), probe_radius);
      if (t == Tri::no) return Tri::no;
      if (t == Tri::unknown) acc = Tri::unknown;
    }
  if (!x->upper_bound() && acc == Tri::yes) {
    // Quotients beyond the probe window stay unexamined; for level-1 lazy
    // objects they are groups, so the floor witness already decides.
    if (x->level() > 1) return Tri::unknown;
  }
  return acc;
}

Tri is_compact(const FilteredObjectPtr& x, int probe_radius) {
  if (!x->upper_bound()) return Tri::unknown;
  const int hi = *x->upper_bound();
  const int lo = x->lower_bound() ? *x->lower_bound() : hi - probe_radius;
  Tri acc = Tri::yes;
  for (int i = lo; i <= hi; ++i)
    for (int j = i; j <= hi; ++j) {
      WindowValue q = x->quotient(i, j);
      if (q.is_group()) continue;
      Tri t = is_compact(q.filtered(), probe_radius);
      if (t == Tri::no) return Tri::no;
      if (t == Tri::unknown) acc = Tri::unknown;
    }
  if (!x->lower_bound() && acc == Tri::yes && x->level() > 1) return Tri::unknown;
  return acc;
}

i64 discrete_compact_intersection(const FilteredObjectPtr& x, const Subgroup& d,
                                  const Subgroup& k) {
  require(x->bridge().has_value(), ErrorKind::window,
          "finite intersection needs an element bridge");
  const ElementBridge& b = *x->bridge();
  require(d.ambient() == b.ambient && k.ambient() == b.ambient, ErrorKind::parent,
          "subobjects of a different ambient group");
  auto [lo, hi] = x->total_window();

  std::optional<int> ceiling;
  for (int j = lo; j <= hi && !ceiling; ++j)
    if (b.chain(j).contains_subgroup(k)) ceiling = j;
  require(ceiling.has_value(), ErrorKind::precondition,
          "compact subobject has no window ceiling");
  std::optional<int> floor;
  for (int i = *ceiling; i >= lo && !floor; --i)
    if (intersect(d, b.chain(i)).order() == 1) floor = i;
  require(floor.has_value(), ErrorKind::precondition,
          "discrete subobject meets every floor");

  // D cap K injects into the window, so counting its image there counts it.
  Subgroup meet = intersect(d, k);
  std::set<i64> image_set;
  FinAbGroup w = x->window_group(*floor, *ceiling);
  for (i64 pos = 0; pos < meet.order(); ++pos) {
    GroupElement cls =
        b.to_window(meet.element(static_cast<size_t>(pos)), *floor, *ceiling);
    image_set.insert(w.index_of(cls));
  }
  require(static_cast<i64>(image_set.size()) == meet.order(),
          ErrorKind::precondition, "window projection failed to be injective");
  return static_cast<i64>(image_set.size());
}

// ---------------------------------------------------------------------------
// Support regions

bool Region::is_empty() const {
  if (r_min && r_max && *r_min > *r_max) return true;
  if (s_min && s_max && *s_min > *s_max) return true;
  return false;
}

bool conditions_ab_check(const std::vector<Region>& regions) {
  for (const Region& r : regions) {
    if (r.is_empty()) continue;
    // (a): columns far right must be bounded from below in s.
    if (!r.r_max && !r.s_min) return false;
    // (b): columns far left must be bounded from above in s.
    if (!r.r_min && !r.s_max) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Induced filtrations on kernels and cokernels

namespace {

struct KernelTable {
  FilteredMorphismPtr phi;
  std::mutex mu;
  std::map<std::pair<int, int>, std::pair<FinAbGroup, GroupHom>> entries;

  std::pair<FinAbGroup, GroupHom> get(int i, int j) {
    {
      std::lock_guard<std::mutex> lock(mu);
      auto it = entries.find({i, j});
      if (it != entries.end()) return it->second;
    }
    auto kp = kernel(phi->component(i, j).hom());
    std::lock_guard<std::mutex> lock(mu);
    return entries.emplace(std::make_pair(i, j), std::move(kp)).first->second;
  }
};

struct CokernelTable {
  FilteredMorphismPtr phi;
  std::mutex mu;
  std::map<std::pair<int, int>, std::pair<FinAbGroup, GroupHom>> entries;

  std::pair<FinAbGroup, GroupHom> get(int i, int j) {
    {
      std::lock_guard<std::mutex> lock(mu);
      auto it = entries.find({i, j});
      if (it != entries.end()) return it->second;
    }
    auto cp = cokernel(phi->component(i, j).hom());
    std::lock_guard<std::mutex> lock(mu);
    return entries.emplace(std::make_pair(i, j), std::move(cp)).first->second;
  }
};

std::pair<std::optional<int>, std::optional<int>> union_bounds(
    const FilteredObjectPtr& a, const FilteredObjectPtr& b) {
  std::optional<int> lo, hi;
  if (a->lower_bound() && b->lower_bound())
    lo = std::min(*a->lower_bound(), *b->lower_bound());
  if (a->upper_bound() && b->upper_bound())
    hi = std::max(*a->upper_bound(), *b->upper_bound());
  return {lo, hi};
}

}  // namespace

InducedKernel induced_kernel(const FilteredMorphismPtr& phi) {
  require(phi->level() == 1, ErrorKind::window,
          "induced filtrations are computed on level-1 morphisms");
  auto table = std::make_shared<KernelTable>();
  table->phi = phi;
  auto [lo, hi] = union_bounds(phi->source(), phi->target());
  auto src = phi->source();

  FilteredObject::Providers p;
  p.quotient = [table](int i, int j) { return WindowValue(table->get(i, j).first); };
  auto connect = [table, src](int iota_i, int iota_j, int to_i, int to_j,
                              const GroupHom& transition) {
    auto [kin, iota_in] = table->get(iota_i, iota_j);
    auto [kout, iota_out] = table->get(to_i, to_j);
    std::vector<GroupElement> images;
    for (size_t g = 0; g < kin.rank(); ++g) {
      GroupElement moved = transition.apply(iota_in.apply(kin.generator(g)));
      auto pre = solve_hom(iota_out, moved);
      require(pre.has_value(), ErrorKind::morphism,
              "transition does not preserve the kernel");
      images.push_back(*pre);
    }
    return WindowMap(GroupHom::from_images(kin, kout, images));
  };
  p.alpha = [connect, src](int i, int j, int k) {
    return connect(i, j, i, k, src->alpha(i, j, k).hom());
  };
  p.pi = [connect, src](int i, int j, int k) {
    return connect(i, k, j, k, src->pi(i, j, k).hom());
  };

  auto object = FilteredObject::from_providers(1, lo, hi, std::move(p));
  auto inclusion = FilteredMorphism::from_components(
      object, phi->source(),
      [table](int i, int j) { return WindowMap(table->get(i, j).second); });
  return {object, inclusion};
}

InducedCokernel induced_cokernel(const FilteredMorphismPtr& phi) {
  require(phi->level() == 1, ErrorKind::window,
          "induced filtrations are computed on level-1 morphisms");
  auto table = std::make_shared<CokernelTable>();
  table->phi = phi;
  auto [lo, hi] = union_bounds(phi->source(), phi->target());
  auto dst = phi->target();

  FilteredObject::Providers p;
  p.quotient = [table](int i, int j) { return WindowValue(table->get(i, j).first); };
  auto connect = [table, dst](int from_i, int from_j, int to_i, int to_j,
                              const GroupHom& transition) {
    auto [cin, pi_in] = table->get(from_i, from_j);
    auto [cout, pi_out] = table->get(to_i, to_j);
    std::vector<GroupElement> images;
    for (size_t g = 0; g < cin.rank(); ++g) {
      auto lift = solve_hom(pi_in, cin.generator(g));
      require(lift.has_value(), ErrorKind::morphism, "cokernel projection not epi");
      images.push_back(pi_out.apply(transition.apply(*lift)));
    }
    return WindowMap(GroupHom::from_images(cin, cout, images));
  };
  p.alpha = [connect, dst](int i, int j, int k) {
    return connect(i, j, i, k, dst->alpha(i, j, k).hom());
  };
  p.pi = [connect, dst](int i, int j, int k) {
    return connect(i, k, j, k, dst->pi(i, j, k).hom());
  };

  auto object = FilteredObject::from_providers(1, lo, hi, std::move(p));
  auto projection = FilteredMorphism::from_components(
      phi->target(), object,
      [table](int i, int j) { return WindowMap(table->get(i, j).second); });
  return {object, projection};
}

// ---------------------------------------------------------------------------
// Level-n pairing

QmodZ pairing_n(const FilteredObjectPtr& x, const GroupElement& a,
                const GroupElement& chi, int i, int j) {
  require(x->bridge().has_value(), ErrorKind::window,
          "pairing needs an element bridge");
  const ElementBridge& b = *x->bridge();
  require(i <= j, ErrorKind::window, "pairing window out of order");
  require(b.chain(j).contains(a), ErrorKind::window,
          "element is not in the window ceiling");
  for (const GroupElement& g : b.chain(i).generators())
    require(pairing0(g, chi).is_zero(), ErrorKind::window,
            "character does not annihilate the window floor");

  FinAbGroup w = x->window_group(i, j);
  GroupElement abar = b.to_window(a, i, j);
  std::vector<i64> coords(w.rank());
  for (size_t k = 0; k < w.rank(); ++k) {
    GroupElement lift = b.from_window(w.generator(k), i, j);
    Rational c = pairing0(lift, chi).value() * Rational(Int(w.orders()[k]));
    require(c.is_integer(), ErrorKind::window,
            "character class is not integral on the window");
    coords[k] = static_cast<i64>(c.num() % w.orders()[k]);
  }
  GroupElement chibar = dual_group(w).make(std::move(coords));
  return pairing0(abar, chibar);
}

}  // namespace adelharm
