#include "adelharm/smooth.hpp"

namespace adelharm {

bool is_function_flavor(Flavor f) {
  return f == Flavor::E || f == Flavor::Etilde;
}

Flavor fourier_source_flavor(Transform t) {
  switch (t) {
    case Transform::F: return Flavor::E;
    case Transform::Fprime: return Flavor::Eprime;
    case Transform::Ftilde: return Flavor::Etilde;
    case Transform::Ftildeprime: return Flavor::Etildeprime;
  }
  fail(ErrorKind::precondition, "unknown transform");
}

Flavor fourier_target_flavor(Transform t) {
  switch (t) {
    case Transform::F: return Flavor::Etildeprime;
    case Transform::Fprime: return Flavor::Etilde;
    case Transform::Ftilde: return Flavor::Eprime;
    case Transform::Ftildeprime: return Flavor::E;
  }
  fail(ErrorKind::precondition, "unknown transform");
}

std::string flavor_name(Flavor f) {
  switch (f) {
    case Flavor::E: return "E";
    case Flavor::Etilde: return "E~";
    case Flavor::Eprime: return "E'";
    case Flavor::Etildeprime: return "E~'";
  }
  return "?";
}

SmoothGerm::SmoothGerm(Flavor flavor, FilteredObjectPtr parent, int win_lo,
                       int win_hi, FnOnGroup data)
    : flavor_(flavor), parent_(std::move(parent)), win_lo_(win_lo),
      win_hi_(win_hi), data_(std::move(data)) {
  require(parent_->level() == 1, ErrorKind::window,
          "function data belongs to level-1 germs");
  require(fn().parent() == parent_->window_group(win_lo_, win_hi_),
          ErrorKind::parent, "germ data lives on the wrong window");
}

SmoothGerm::SmoothGerm(Flavor flavor, FilteredObjectPtr parent, int win_lo,
                       int win_hi, SmoothGerm inner)
    : flavor_(flavor), parent_(std::move(parent)), win_lo_(win_lo),
      win_hi_(win_hi),
      data_(std::make_shared<const SmoothGerm>(std::move(inner))) {
  require(parent_->level() >= 2, ErrorKind::window,
          "nested germ data belongs to higher levels");
}

SmoothGerm SmoothGerm::with_flavor(Flavor f) const {
  SmoothGerm g = *this;
  g.flavor_ = f;
  if (!g.is_level1()) {
    SmoothGerm in = inner().with_flavor(f);
    g.data_ = std::make_shared<const SmoothGerm>(std::move(in));
  }
  return g;
}

namespace {

int clamp_index(const FilteredObjectPtr& x, int i) {
  if (x->lower_bound() && i < *x->lower_bound()) i = *x->lower_bound();
  if (x->upper_bound() && i > *x->upper_bound()) i = *x->upper_bound();
  return i;
}

// Transport of level-1 window data along a window map, collapsing filtered
// morphisms through their total windows.
FnOnGroup pull_data(const WindowMap& m, const FnOnGroup& f) {
  return pullback(map_total_hom(m), f);
}
FnOnGroup push_data(const WindowMap& m, const FnOnGroup& f) {
  return pushforward(map_total_hom(m), f);
}

}  // namespace

SmoothGerm germ_extend(const SmoothGerm& g, int win_lo, int win_hi) {
  const FilteredObjectPtr& x = g.parent();
  win_lo = clamp_index(x, win_lo);
  win_hi = clamp_index(x, win_hi);
  require(win_lo <= g.window_lo() && win_hi >= g.window_hi(), ErrorKind::window,
          "extension target does not enclose the germ window");
  const int i = g.window_lo(), j = g.window_hi();
  if (win_lo == i && win_hi == j) return g;

  if (g.level() == 1) {
    FnOnGroup data = g.fn();
    if (is_function_flavor(g.flavor())) {
      if (win_hi > j) {
        auto retract = x->alpha_section(i, j, win_hi);
        require(retract.has_value(), ErrorKind::window,
                "no canonical ceiling extension on this object");
        data = pull_data(*retract, data);
      }
      if (win_lo < i) data = pull_data(x->pi(win_lo, i, win_hi), data);
    } else {
      if (win_hi > j) data = push_data(x->alpha(i, j, win_hi), data);
      if (win_lo < i) {
        auto section = x->pi_section(win_lo, i, win_hi);
        require(section.has_value(), ErrorKind::window,
                "no canonical floor extension on this object");
        data = push_data(*section, data);
      }
    }
    return SmoothGerm(g.flavor(), x, win_lo, win_hi, std::move(data));
  }

  // Higher level: transport the inner germ along the outer transitions.
  require(x->bounded(), ErrorKind::window,
          "higher-level extension needs a bounded object");
  SmoothGerm inner = g.inner();
  // Collapse the inner germ to the total window of its object first.
  FilteredObjectPtr win_obj = x->quotient(i, j).filtered();
  inner = germ_extend(inner, *win_obj->lower_bound(), *win_obj->upper_bound());
  FnOnGroup data = inner.fn();
  if (is_function_flavor(g.flavor())) {
    if (win_hi > j) {
      auto retract = x->alpha_section(i, j, win_hi);
      require(retract.has_value(), ErrorKind::window,
              "no canonical ceiling extension on this object");
      data = pull_data(*retract, data);
    }
    if (win_lo < i) data = pull_data(x->pi(win_lo, i, win_hi), data);
  } else {
    if (win_hi > j) data = push_data(x->alpha(i, j, win_hi), data);
    if (win_lo < i) {
      auto section = x->pi_section(win_lo, i, win_hi);
      require(section.has_value(), ErrorKind::window,
              "no canonical floor extension on this object");
      data = push_data(*section, data);
    }
  }
  FilteredObjectPtr target_obj = x->quotient(win_lo, win_hi).filtered();
  SmoothGerm new_inner(g.flavor(), target_obj, *target_obj->lower_bound(),
                       *target_obj->upper_bound(), std::move(data));
  return SmoothGerm(g.flavor(), x, win_lo, win_hi, std::move(new_inner));
}

bool germs_equal(const SmoothGerm& a, const SmoothGerm& b) {
  if (a.flavor() != b.flavor() || a.level() != b.level()) return false;
  int lo = std::min(a.window_lo(), b.window_lo());
  int hi = std::max(a.window_hi(), b.window_hi());
  SmoothGerm ea = germ_extend(a, lo, hi);
  SmoothGerm eb = germ_extend(b, lo, hi);
  if (ea.is_level1() != eb.is_level1()) return false;
  if (ea.is_level1()) return ea.fn() == eb.fn();
  return germs_equal(ea.inner(), eb.inner());
}

CycloScalar tau(const SmoothGerm& g, const GroupElement& ambient_elem) {
  require(is_function_flavor(g.flavor()), ErrorKind::precondition,
          "evaluation is defined for function flavors");
  const FilteredObjectPtr& x = g.parent();
  require(x->bridge().has_value() && x->bounded(), ErrorKind::window,
          "evaluation needs a bounded bridged object");
  auto [lo, hi] = x->total_window();
  SmoothGerm total = germ_extend(g, lo, hi);
  GroupElement w = x->bridge()->to_window(ambient_elem, lo, hi);
  if (total.is_level1()) return total.fn().at(w);
  // Recurse with the element moved into the window object's coordinates.
  FilteredObjectPtr win_obj = x->quotient(lo, hi).filtered();
  GroupElement inner_elem = win_obj->bridge()->from_window(
      w, *win_obj->lower_bound(), *win_obj->upper_bound());
  return tau(total.inner(), inner_elem);
}

SmoothGerm one_A(const FilteredObjectPtr& x, Flavor flavor) {
  require(is_function_flavor(flavor), ErrorKind::precondition,
          "the invariant germ lives in the function flavors");
  require(x->bounded(), ErrorKind::window, "invariant germ needs bounds");
  require(!x->is_zero_object(), ErrorKind::degenerate,
          "the zero object has no invariant basis element");
  auto [lo, hi] = x->total_window();
  if (x->level() == 1)
    return SmoothGerm(flavor, x, lo, hi,
                      FnOnGroup::constant(x->window_group(lo, hi), CycloScalar(1)));
  FilteredObjectPtr win_obj = x->quotient(lo, hi).filtered();
  return SmoothGerm(flavor, x, lo, hi, one_A(win_obj, flavor));
}

SmoothGerm translate_n(const GroupElement& a, const SmoothGerm& g) {
  const FilteredObjectPtr& x = g.parent();
  require(x->bridge().has_value() && x->bounded(), ErrorKind::window,
          "translation needs a bounded bridged object");
  auto [lo, hi] = x->total_window();
  SmoothGerm total = germ_extend(g, lo, hi);
  GroupElement w = x->bridge()->to_window(a, lo, hi);
  if (total.is_level1()) {
    FnOnGroup data = is_function_flavor(g.flavor()) ? translate(-w, total.fn())
                                                    : translate(w, total.fn());
    return SmoothGerm(g.flavor(), x, lo, hi, std::move(data));
  }
  FilteredObjectPtr win_obj = x->quotient(lo, hi).filtered();
  GroupElement inner_elem = win_obj->bridge()->from_window(
      w, *win_obj->lower_bound(), *win_obj->upper_bound());
  return SmoothGerm(g.flavor(), x, lo, hi, translate_n(inner_elem, total.inner()));
}

namespace {

// Character of the window group induced by an ambient dual element.
GroupElement window_character(const ElementBridge& b, const FinAbGroup& w,
                              const GroupElement& chi, int i, int j) {
  std::vector<i64> coords(w.rank());
  for (size_t k = 0; k < w.rank(); ++k) {
    GroupElement lift = b.from_window(w.generator(k), i, j);
    Rational c = pairing0(lift, chi).value() * Rational(Int(w.orders()[k]));
    require(c.is_integer(), ErrorKind::window,
            "character does not descend to the window");
    coords[k] = static_cast<i64>(c.num() % w.orders()[k]);
  }
  return dual_group(w).make(std::move(coords));
}

// Ambient dual element of a window object induced by a character of its
// total window group.
GroupElement ambient_character(const ElementBridge& b, const FinAbGroup& w,
                               const GroupElement& chibar, int lo, int hi) {
  const FinAbGroup& amb = b.ambient;
  std::vector<i64> coords(amb.rank());
  for (size_t k = 0; k < amb.rank(); ++k) {
    GroupElement cls = b.to_window(amb.generator(k), lo, hi);
    Rational c = pairing0(cls, chibar).value() * Rational(Int(amb.orders()[k]));
    require(c.is_integer(), ErrorKind::window, "window character is inconsistent");
    coords[k] = static_cast<i64>(c.num() % amb.orders()[k]);
  }
  (void)w;
  return dual_group(amb).make(std::move(coords));
}

}  // namespace

SmoothGerm mul_character(const SmoothGerm& g, const GroupElement& chi) {
  const FilteredObjectPtr& x = g.parent();
  require(x->bridge().has_value() && x->bounded(), ErrorKind::window,
          "character multiplication needs a bounded bridged object");
  require(chi.parent().orders() == x->bridge()->ambient.orders(),
          ErrorKind::parent, "character lives on the dual of the ambient group");
  auto [lo, hi] = x->total_window();
  SmoothGerm total = germ_extend(g, lo, hi);
  FinAbGroup w = x->window_group(lo, hi);
  GroupElement chibar = window_character(*x->bridge(), w, chi, lo, hi);
  if (total.is_level1()) {
    return SmoothGerm(g.flavor(), x, lo, hi, modulate(total.fn(), chibar, +1));
  }
  FilteredObjectPtr win_obj = x->quotient(lo, hi).filtered();
  GroupElement inner_chi = ambient_character(
      *win_obj->bridge(), w, chibar, *win_obj->lower_bound(),
      *win_obj->upper_bound());
  return SmoothGerm(g.flavor(), x, lo, hi,
                    mul_character(total.inner(), inner_chi));
}

SmoothGerm fourier_n(const SmoothGerm& g, Transform which) {
  require(g.flavor() == fourier_source_flavor(which), ErrorKind::precondition,
          "transform does not accept flavor " + flavor_name(g.flavor()));
  const FilteredObjectPtr& x = g.parent();
  FilteredObjectPtr xd = FilteredObject::dual_of(x);
  const int i = g.window_lo(), j = g.window_hi();
  if (g.level() == 1) {
    FnOnGroup data = fourier0(g.fn(), which);
    // The dual window group at (-j, -i) is the dual of Q(i, j) literally.
    return SmoothGerm(fourier_target_flavor(which), xd, -j, -i, std::move(data));
  }
  SmoothGerm inner = fourier_n(g.inner(), which);
  // Reparent the inner germ onto the dual object's own window value.
  FilteredObjectPtr win_dual = xd->quotient(-j, -i).filtered();
  SmoothGerm reparented(inner.flavor(), win_dual, inner.window_lo(),
                        inner.window_hi(), inner.fn());
  return SmoothGerm(fourier_target_flavor(which), xd, -j, -i,
                    std::move(reparented));
}

CycloScalar pair_smooth(const SmoothGerm& dist, const SmoothGerm& fn) {
  const bool tilde = dist.flavor() == Flavor::Etildeprime;
  require(dist.flavor() == (tilde ? Flavor::Etildeprime : Flavor::Eprime),
          ErrorKind::precondition, "first argument must be a distribution germ");
  require(fn.flavor() == (tilde ? Flavor::Etilde : Flavor::E),
          ErrorKind::precondition,
          "pairing flavors do not match: " + flavor_name(dist.flavor()) +
              " against " + flavor_name(fn.flavor()));
  int lo = std::min(dist.window_lo(), fn.window_lo());
  int hi = std::max(dist.window_hi(), fn.window_hi());
  SmoothGerm d = germ_extend(dist, lo, hi);
  SmoothGerm f = germ_extend(fn, lo, hi);
  if (d.is_level1()) return pair_fn(d.fn(), f.fn());
  return pair_smooth(d.inner(), f.inner());
}

bool theorem_functions_check(const SmoothGerm& f, const GroupElement& chi) {
  require(f.flavor() == Flavor::Eprime || f.flavor() == Flavor::Etildeprime,
          ErrorKind::precondition, "the identity applies to distribution germs");
  const bool tilde = f.flavor() == Flavor::Etildeprime;
  SmoothGerm transformed =
      fourier_n(f, tilde ? Transform::Ftildeprime : Transform::Fprime);
  CycloScalar lhs = tau(transformed, chi);
  SmoothGerm modulated = mul_character(f, chi);
  SmoothGerm unit = one_A(f.parent(), tilde ? Flavor::Etilde : Flavor::E);
  CycloScalar rhs = pair_smooth(modulated, unit);
  return lhs == rhs;
}

i64 invariant_function_dimension(const FinAbGroup& w) {
  const i64 n = w.order_i64();
  if (n == 0) return 0;
  // Invariance system f(x + g_k) - f(x) = 0 over the rationals.
  std::vector<std::vector<Rational>> rows;
  for (size_t k = 0; k < w.rank(); ++k) {
    GroupElement gen = w.generator(k);
    for (i64 x = 0; x < n; ++x) {
      std::vector<Rational> row(static_cast<size_t>(n));
      i64 shifted = w.index_of(w.element_at(x) + gen);
      if (shifted == x) continue;
      row[static_cast<size_t>(shifted)] = Rational(1);
      row[static_cast<size_t>(x)] = Rational(-1);
      rows.push_back(std::move(row));
    }
  }
  // Exact Gaussian elimination rank.
  size_t rank = 0;
  size_t cols = static_cast<size_t>(n);
  std::vector<std::vector<Rational>> mat = std::move(rows);
  for (size_t col = 0; col < cols && rank < mat.size(); ++col) {
    size_t pivot = rank;
    while (pivot < mat.size() && mat[pivot][col].is_zero()) ++pivot;
    if (pivot == mat.size()) continue;
    std::swap(mat[rank], mat[pivot]);
    for (size_t r = 0; r < mat.size(); ++r) {
      if (r == rank || mat[r][col].is_zero()) continue;
      Rational factor = mat[r][col] / mat[rank][col];
      for (size_t c = col; c < cols; ++c) mat[r][c] -= factor * mat[rank][c];
    }
    ++rank;
  }
  return n - static_cast<i64>(rank);
}

}  // namespace adelharm
