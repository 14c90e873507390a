#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "adelharm/rational.hpp"

namespace adelharm {

using Matrix = std::vector<std::vector<Int>>;

Matrix mat_identity(size_t n);
Matrix mat_mul(const Matrix& a, const Matrix& b);
std::vector<Int> mat_vec(const Matrix& a, const std::vector<Int>& x);
Int bareiss_det(Matrix m);  // exact determinant, fraction-free elimination

// Smith normal form u*m*v = d with u, v unimodular and the diagonal of d
// satisfying d1 | d2 | ... >= 0.  The inverses are tracked alongside, they
// come out of the same elementary operations.
struct SnfResult {
  Matrix u, d, v;
  Matrix u_inv, v_inv;
  std::vector<Int> diag() const;
  size_t rank() const;  // number of nonzero diagonal entries
};
SnfResult smith_normal_form(const Matrix& m);

// Basis of the integer kernel lattice {x : w x = 0}, returned as columns.
Matrix integer_kernel_basis(const Matrix& w);

// Basis of the lattice generated by the columns of g (columns of result).
Matrix lattice_basis(const Matrix& g);

class GroupElement;
class GroupHom;

// Finite abelian group presented as a product of cyclic factors Z/m_i with
// every m_i >= 2.  The empty product is the trivial group.  Elements are
// enumerated in mixed radix with the last coordinate fastest; this order is
// fixed forever because reports are compared byte for byte.
class FinAbGroup {
 public:
  FinAbGroup() = default;
  explicit FinAbGroup(std::vector<i64> orders);

  size_t rank() const { return orders_.size(); }
  const std::vector<i64>& orders() const { return orders_; }
  bool is_trivial() const { return orders_.empty(); }

  Int order() const;
  i64 order_i64() const;  // guarded, enumeration-scale only
  i64 exponent() const;   // lcm of the cyclic orders, 1 for the trivial group

  GroupElement zero() const;
  GroupElement make(std::vector<i64> residues) const;
  GroupElement element_at(i64 index) const;
  i64 index_of(const GroupElement& a) const;
  GroupElement generator(size_t k) const;  // unit vector e_k

  friend bool operator==(const FinAbGroup& a, const FinAbGroup& b) {
    return a.orders_ == b.orders_;
  }
  friend bool operator!=(const FinAbGroup& a, const FinAbGroup& b) {
    return !(a == b);
  }

  std::string to_string() const;  // literal form [m1, m2, ...]

 private:
  std::vector<i64> orders_;
};

class GroupElement {
 public:
  GroupElement() = default;
  GroupElement(FinAbGroup parent, std::vector<i64> residues);

  const FinAbGroup& parent() const { return parent_; }
  const std::vector<i64>& residues() const { return res_; }
  bool is_zero() const;

  GroupElement operator+(const GroupElement& o) const;
  GroupElement operator-() const;
  GroupElement operator-(const GroupElement& o) const;
  GroupElement scaled(i64 k) const;

  friend bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.parent_ == b.parent_ && a.res_ == b.res_;
  }
  friend bool operator!=(const GroupElement& a, const GroupElement& b) {
    return !(a == b);
  }

  std::string to_string() const;

 private:
  FinAbGroup parent_;
  std::vector<i64> res_;
};

// Homomorphism between finite abelian groups as an integer matrix, rows
// indexed by target generators and columns by source generators.  The
// constructor enforces well-definedness: m_j * M[i][j] = 0 mod n_i.
class GroupHom {
 public:
  GroupHom() = default;
  GroupHom(FinAbGroup source, FinAbGroup target, std::vector<std::vector<i64>> matrix);

  static GroupHom identity(const FinAbGroup& a);
  static GroupHom zero(const FinAbGroup& source, const FinAbGroup& target);
  // Columns given by the images of the source generators.
  static GroupHom from_images(const FinAbGroup& source, const FinAbGroup& target,
                              const std::vector<GroupElement>& images);

  const FinAbGroup& source() const { return src_; }
  const FinAbGroup& target() const { return dst_; }
  const std::vector<std::vector<i64>>& matrix() const { return mat_; }

  GroupElement apply(const GroupElement& a) const;

  Int kernel_order() const;
  Int cokernel_order() const;
  Int image_order() const;
  bool is_mono() const { return kernel_order() == 1; }
  bool is_epi() const { return cokernel_order() == 1; }
  bool is_zero_map() const;

  friend bool operator==(const GroupHom& a, const GroupHom& b) {
    return a.src_ == b.src_ && a.dst_ == b.dst_ && a.mat_ == b.mat_;
  }
  friend bool operator!=(const GroupHom& a, const GroupHom& b) { return !(a == b); }

  std::string to_string() const;

 private:
  FinAbGroup src_, dst_;
  std::vector<std::vector<i64>> mat_;
};

GroupHom hom_compose(const GroupHom& psi, const GroupHom& phi);  // psi after phi

// Kernel and cokernel with explicit structure maps, computed through the
// Smith normal form of the relation matrix.  Brute-force enumeration stays
// available in the tests as the independent oracle.
std::pair<FinAbGroup, GroupHom> kernel(const GroupHom& phi);
std::pair<FinAbGroup, GroupHom> cokernel(const GroupHom& phi);

// Invariant-factor normalization together with the isomorphism onto it.
std::pair<FinAbGroup, GroupHom> normalize_group(const FinAbGroup& a);

// Some element a with phi(a) = b, or nothing when b is outside the image.
std::optional<GroupElement> solve_hom(const GroupHom& phi, const GroupElement& b);

FinAbGroup dual_group(const FinAbGroup& a);
QmodZ pairing0(const GroupElement& a, const GroupElement& alpha);
GroupHom dual_hom(const GroupHom& phi);
GroupHom double_dual_iso(const FinAbGroup& a);

// Subgroup of a finite ambient group.  The element set is materialized as a
// sorted index list at construction; generator lists are kept small so that
// perp loops stay linear in the ambient order.
class Subgroup {
 public:
  Subgroup() = default;
  Subgroup(const FinAbGroup& ambient, const std::vector<GroupElement>& gens);

  static Subgroup trivial(const FinAbGroup& ambient);
  static Subgroup full(const FinAbGroup& ambient);
  static Subgroup from_generator_indices(const FinAbGroup& ambient,
                                         const std::vector<i64>& gens);

  const FinAbGroup& ambient() const { return ambient_; }
  i64 order() const { return static_cast<i64>(elems_.size()); }
  const std::vector<i64>& element_indices() const { return elems_; }
  const std::vector<i64>& generator_indices() const { return gens_; }
  std::vector<GroupElement> generators() const;
  GroupElement element(size_t pos) const;

  bool contains_index(i64 index) const;
  bool contains(const GroupElement& a) const;
  bool contains_subgroup(const Subgroup& s) const;

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.ambient_ == b.ambient_ && a.elems_ == b.elems_;
  }
  friend bool operator!=(const Subgroup& a, const Subgroup& b) { return !(a == b); }

 private:
  FinAbGroup ambient_;
  std::vector<i64> gens_;
  std::vector<i64> elems_;
};

Subgroup intersect(const Subgroup& s, const Subgroup& t);
Subgroup join(const Subgroup& s, const Subgroup& t);  // s + t
// Annihilator {alpha : (s, alpha) = 0 for all s in S} inside the dual group.
Subgroup perp(const Subgroup& s);
Subgroup image(const GroupHom& phi, const Subgroup& s);
Subgroup preimage(const GroupHom& phi, const Subgroup& s);
Subgroup image_subgroup(const GroupHom& phi);  // image of the whole source

// Presentation of the quotient T/S of two nested subgroups as an abstract
// group with a deterministic projection and section.  This is the window
// machinery every filtered computation reduces to.
class QuotientPresentation {
 public:
  QuotientPresentation() = default;
  QuotientPresentation(const FinAbGroup& ambient, const Subgroup& t, const Subgroup& s);

  const FinAbGroup& group() const { return group_; }
  const FinAbGroup& ambient() const { return ambient_; }

  GroupElement project(const GroupElement& a) const;  // a must lie in T
  GroupElement lift(const GroupElement& q) const;     // section into T

 private:
  FinAbGroup ambient_;
  FinAbGroup group_;
  Matrix t_gens_;             // ambient coordinates of the chosen T generators
  Matrix u_, u_inv_;          // SNF data of the relation lattice
  std::vector<i64> kept_;     // rows of u_ that survive (order > 1)
  std::vector<Int> kept_div_; // their diagonal divisors
  // solver for expressing an ambient element in the T generators
  SnfResult solver_;
  size_t t_count_ = 0;
};

}  // namespace adelharm
