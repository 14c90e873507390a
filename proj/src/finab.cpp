#include "adelharm/finab.hpp"

#include <algorithm>
#include <sstream>

namespace adelharm {

namespace {

constexpr i64 kEnumerationCap = i64(1) << 26;

Int abs_int(const Int& x) { return x < 0 ? Int(-x) : x; }

}  // namespace

Matrix mat_identity(size_t n) {
  Matrix m(n, std::vector<Int>(n, Int(0)));
  for (size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
  const size_t rows = a.size();
  const size_t mid = rows ? a[0].size() : 0;
  const size_t cols = b.empty() ? 0 : b[0].size();
  require(b.size() == mid, ErrorKind::precondition, "matrix dimension mismatch");
  Matrix out(rows, std::vector<Int>(cols, Int(0)));
  for (size_t i = 0; i < rows; ++i)
    for (size_t k = 0; k < mid; ++k) {
      if (a[i][k] == 0) continue;
      for (size_t j = 0; j < cols; ++j) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

std::vector<Int> mat_vec(const Matrix& a, const std::vector<Int>& x) {
  std::vector<Int> out(a.size(), Int(0));
  for (size_t i = 0; i < a.size(); ++i) {
    require(a[i].size() == x.size(), ErrorKind::precondition,
            "matrix/vector dimension mismatch");
    for (size_t j = 0; j < x.size(); ++j)
      if (a[i][j] != 0) out[i] += a[i][j] * x[j];
  }
  return out;
}

Int bareiss_det(Matrix m) {
  const size_t n = m.size();
  for (const auto& row : m)
    require(row.size() == n, ErrorKind::precondition, "determinant of non-square matrix");
  if (n == 0) return 1;
  Int prev(1);
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      std::swap(m[k], m[swap_row]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) {
        Int num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        m[i][j] = num / prev;  // divides exactly (Bareiss)
      }
    prev = m[k][k];
  }
  return sign > 0 ? m[n - 1][n - 1] : Int(-m[n - 1][n - 1]);
}

std::vector<Int> SnfResult::diag() const {
  std::vector<Int> out;
  const size_t n = std::min(d.size(), d.empty() ? 0 : d[0].size());
  for (size_t k = 0; k < n; ++k) out.push_back(d[k][k]);
  return out;
}

size_t SnfResult::rank() const {
  size_t r = 0;
  for (const Int& x : diag())
    if (x != 0) ++r;
  return r;
}

SnfResult smith_normal_form(const Matrix& m) {
  const size_t rows = m.size();
  const size_t cols = rows ? m[0].size() : 0;
  for (const auto& row : m)
    require(row.size() == cols, ErrorKind::precondition, "ragged matrix");

  SnfResult r;
  r.d = m;
  r.u = mat_identity(rows);
  r.u_inv = mat_identity(rows);
  r.v = mat_identity(cols);
  r.v_inv = mat_identity(cols);
  Matrix& d = r.d;

  auto row_sub = [&](size_t i, size_t k, const Int& q) {
    // row_i -= q * row_k
    for (size_t j = 0; j < cols; ++j) d[i][j] -= q * d[k][j];
    for (size_t j = 0; j < rows; ++j) r.u[i][j] -= q * r.u[k][j];
    for (size_t j = 0; j < rows; ++j) r.u_inv[j][k] += q * r.u_inv[j][i];
  };
  auto col_sub = [&](size_t j, size_t k, const Int& q) {
    // col_j -= q * col_k
    for (size_t i = 0; i < rows; ++i) d[i][j] -= q * d[i][k];
    for (size_t i = 0; i < cols; ++i) r.v[i][j] -= q * r.v[i][k];
    for (size_t i = 0; i < cols; ++i) r.v_inv[k][i] += q * r.v_inv[j][i];
  };
  auto row_swap = [&](size_t i, size_t k) {
    std::swap(d[i], d[k]);
    std::swap(r.u[i], r.u[k]);
    for (size_t j = 0; j < rows; ++j) std::swap(r.u_inv[j][i], r.u_inv[j][k]);
  };
  auto col_swap = [&](size_t j, size_t k) {
    for (size_t i = 0; i < rows; ++i) std::swap(d[i][j], d[i][k]);
    for (size_t i = 0; i < cols; ++i) std::swap(r.v[i][j], r.v[i][k]);
    std::swap(r.v_inv[j], r.v_inv[k]);
  };
  auto row_negate = [&](size_t i) {
    for (size_t j = 0; j < cols; ++j) d[i][j] = -d[i][j];
    for (size_t j = 0; j < rows; ++j) r.u[i][j] = -r.u[i][j];
    for (size_t j = 0; j < rows; ++j) r.u_inv[j][i] = -r.u_inv[j][i];
  };

  const size_t steps = std::min(rows, cols);
  for (size_t k = 0; k < steps; ++k) {
    for (;;) {
      // Deterministic pivot: smallest absolute value, ties by position.
      size_t pi = k, pj = k;
      Int best(0);
      for (size_t i = k; i < rows; ++i)
        for (size_t j = k; j < cols; ++j) {
          if (d[i][j] == 0) continue;
          Int a = abs_int(d[i][j]);
          if (best == 0 || a < best) {
            best = a;
            pi = i;
            pj = j;
          }
        }
      if (best == 0) goto done;  // submatrix is zero
      if (pi != k) row_swap(k, pi);
      if (pj != k) col_swap(k, pj);
      if (d[k][k] < 0) row_negate(k);

      bool dirty = false;
      for (size_t i = k + 1; i < rows; ++i) {
        if (d[i][k] == 0) continue;
        Int q = d[i][k] / d[k][k];
        row_sub(i, k, q);
        if (d[i][k] != 0) dirty = true;
      }
      for (size_t j = k + 1; j < cols; ++j) {
        if (d[k][j] == 0) continue;
        Int q = d[k][j] / d[k][k];
        col_sub(j, k, q);
        if (d[k][j] != 0) dirty = true;
      }
      if (dirty) continue;  // smaller pivot appeared, restart this step

      // Divisibility sweep: fold a non-divisible entry into row k.
      bool fixed = true;
      for (size_t i = k + 1; i < rows && fixed; ++i)
        for (size_t j = k + 1; j < cols && fixed; ++j)
          if (d[i][j] % d[k][k] != 0) {
            row_sub(k, i, Int(-1));  // row_k += row_i
            fixed = false;
          }
      if (fixed) break;
    }
  }
done:
  return r;
}

Matrix integer_kernel_basis(const Matrix& w) {
  const size_t rows = w.size();
  const size_t cols = rows ? w[0].size() : 0;
  if (cols == 0) return Matrix{};
  if (rows == 0) return mat_identity(cols);
  SnfResult s = smith_normal_form(w);
  const size_t r = s.rank();
  Matrix basis(cols, std::vector<Int>(cols - r, Int(0)));
  for (size_t j = r; j < cols; ++j)
    for (size_t i = 0; i < cols; ++i) basis[i][j - r] = s.v[i][j];
  return basis;
}

Matrix lattice_basis(const Matrix& g) {
  const size_t rows = g.size();
  const size_t cols = rows ? g[0].size() : 0;
  if (cols == 0) return Matrix(rows);
  SnfResult s = smith_normal_form(g);
  const size_t r = s.rank();
  std::vector<Int> diag = s.diag();
  Matrix basis(rows, std::vector<Int>(r, Int(0)));
  for (size_t k = 0; k < r; ++k)
    for (size_t i = 0; i < rows; ++i) basis[i][k] = s.u_inv[i][k] * diag[k];
  return basis;
}

// ---------------------------------------------------------------------------
// FinAbGroup

FinAbGroup::FinAbGroup(std::vector<i64> orders) {
  orders_.reserve(orders.size());
  for (i64 m : orders) {
    require(m >= 1, ErrorKind::precondition, "cyclic order must be positive");
    if (m > 1) orders_.push_back(m);  // trivial factors are stripped
  }
}

Int FinAbGroup::order() const {
  Int n(1);
  for (i64 m : orders_) n *= m;
  return n;
}

i64 FinAbGroup::order_i64() const {
  i64 n = 1;
  for (i64 m : orders_) {
    require(n <= kEnumerationCap / m, ErrorKind::resource,
            "group too large for enumeration");
    n *= m;
  }
  return n;
}

i64 FinAbGroup::exponent() const {
  i64 e = 1;
  for (i64 m : orders_) e = lcm_i64(e, m);
  return e;
}

GroupElement FinAbGroup::zero() const {
  return GroupElement(*this, std::vector<i64>(orders_.size(), 0));
}

GroupElement FinAbGroup::make(std::vector<i64> residues) const {
  require(residues.size() == orders_.size(), ErrorKind::parent,
          "residue vector length mismatch");
  for (size_t i = 0; i < residues.size(); ++i)
    residues[i] = ((residues[i] % orders_[i]) + orders_[i]) % orders_[i];
  return GroupElement(*this, std::move(residues));
}

GroupElement FinAbGroup::element_at(i64 index) const {
  std::vector<i64> res(orders_.size());
  for (size_t i = orders_.size(); i-- > 0;) {
    res[i] = index % orders_[i];
    index /= orders_[i];
  }
  return GroupElement(*this, std::move(res));
}

i64 FinAbGroup::index_of(const GroupElement& a) const {
  require(a.parent() == *this, ErrorKind::parent, "element of a different group");
  i64 idx = 0;
  for (size_t i = 0; i < orders_.size(); ++i)
    idx = idx * orders_[i] + a.residues()[i];
  return idx;
}

GroupElement FinAbGroup::generator(size_t k) const {
  require(k < orders_.size(), ErrorKind::precondition, "generator index out of range");
  std::vector<i64> res(orders_.size(), 0);
  res[k] = 1;
  return GroupElement(*this, std::move(res));
}

std::string FinAbGroup::to_string() const {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < orders_.size(); ++i) {
    if (i) os << ", ";
    os << orders_[i];
  }
  os << "]";
  return os.str();
}

// ---------------------------------------------------------------------------
// GroupElement

GroupElement::GroupElement(FinAbGroup parent, std::vector<i64> residues)
    : parent_(std::move(parent)), res_(std::move(residues)) {
  require(res_.size() == parent_.rank(), ErrorKind::parent,
          "residue vector length mismatch");
  for (size_t i = 0; i < res_.size(); ++i)
    require(res_[i] >= 0 && res_[i] < parent_.orders()[i], ErrorKind::parent,
            "residue out of range");
}

bool GroupElement::is_zero() const {
  for (i64 r : res_)
    if (r) return false;
  return true;
}

GroupElement GroupElement::operator+(const GroupElement& o) const {
  require(parent_ == o.parent_, ErrorKind::parent, "addition across groups");
  std::vector<i64> res(res_.size());
  for (size_t i = 0; i < res_.size(); ++i)
    res[i] = (res_[i] + o.res_[i]) % parent_.orders()[i];
  return GroupElement(parent_, std::move(res));
}

GroupElement GroupElement::operator-() const {
  std::vector<i64> res(res_.size());
  for (size_t i = 0; i < res_.size(); ++i)
    res[i] = res_[i] ? parent_.orders()[i] - res_[i] : 0;
  return GroupElement(parent_, std::move(res));
}

GroupElement GroupElement::operator-(const GroupElement& o) const {
  return *this + (-o);
}

GroupElement GroupElement::scaled(i64 k) const {
  std::vector<i64> res(res_.size());
  for (size_t i = 0; i < res_.size(); ++i) {
    i64 m = parent_.orders()[i];
    res[i] = ((res_[i] % m) * ((k % m + m) % m)) % m;
  }
  return GroupElement(parent_, std::move(res));
}

std::string GroupElement::to_string() const {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < res_.size(); ++i) {
    if (i) os << ", ";
    os << res_[i];
  }
  os << ")";
  return os.str();
}

// ---------------------------------------------------------------------------
// GroupHom

GroupHom::GroupHom(FinAbGroup source, FinAbGroup target,
                   std::vector<std::vector<i64>> matrix)
    : src_(std::move(source)), dst_(std::move(target)), mat_(std::move(matrix)) {
  require(mat_.size() == dst_.rank(), ErrorKind::morphism, "matrix row count mismatch");
  for (size_t i = 0; i < mat_.size(); ++i) {
    require(mat_[i].size() == src_.rank(), ErrorKind::morphism,
            "matrix column count mismatch");
    const i64 n = dst_.orders()[i];
    for (size_t j = 0; j < mat_[i].size(); ++j) {
      mat_[i][j] = ((mat_[i][j] % n) + n) % n;
      const i64 m = src_.orders()[j];
      // Well-definedness: the generator relation m_j e_j = 0 must map to 0.
      require((static_cast<Int>(m) * mat_[i][j]) % n == 0, ErrorKind::morphism,
              "matrix does not define a homomorphism");
    }
  }
}

GroupHom GroupHom::identity(const FinAbGroup& a) {
  std::vector<std::vector<i64>> m(a.rank(), std::vector<i64>(a.rank(), 0));
  for (size_t i = 0; i < a.rank(); ++i) m[i][i] = 1;
  return GroupHom(a, a, std::move(m));
}

GroupHom GroupHom::zero(const FinAbGroup& source, const FinAbGroup& target) {
  return GroupHom(source, target,
                  std::vector<std::vector<i64>>(target.rank(),
                                                std::vector<i64>(source.rank(), 0)));
}

GroupHom GroupHom::from_images(const FinAbGroup& source, const FinAbGroup& target,
                               const std::vector<GroupElement>& images) {
  require(images.size() == source.rank(), ErrorKind::morphism,
          "one image per source generator required");
  std::vector<std::vector<i64>> m(target.rank(), std::vector<i64>(source.rank(), 0));
  for (size_t j = 0; j < images.size(); ++j) {
    require(images[j].parent() == target, ErrorKind::parent,
            "image lies in a different group");
    for (size_t i = 0; i < target.rank(); ++i) m[i][j] = images[j].residues()[i];
  }
  return GroupHom(source, target, std::move(m));
}

GroupElement GroupHom::apply(const GroupElement& a) const {
  require(a.parent() == src_, ErrorKind::parent, "element of a different group");
  std::vector<i64> res(dst_.rank(), 0);
  for (size_t i = 0; i < dst_.rank(); ++i) {
    const i64 n = dst_.orders()[i];
    i64 acc = 0;
    for (size_t j = 0; j < src_.rank(); ++j)
      acc = (acc + mat_[i][j] % n * (a.residues()[j] % n)) % n;
    res[i] = acc;
  }
  return GroupElement(dst_, std::move(res));
}

namespace {

// Relation matrix [M | diag(n)] whose image lattice in Z^t is the preimage
// of 0, i.e. M Z^s + n Z^t.
Matrix relation_matrix(const GroupHom& phi) {
  const size_t t = phi.target().rank();
  const size_t s = phi.source().rank();
  Matrix w(t, std::vector<Int>(s + t, Int(0)));
  for (size_t i = 0; i < t; ++i) {
    for (size_t j = 0; j < s; ++j) w[i][j] = phi.matrix()[i][j];
    w[i][s + i] = phi.target().orders()[i];
  }
  return w;
}

}  // namespace

Int GroupHom::cokernel_order() const {
  SnfResult s = smith_normal_form(relation_matrix(*this));
  Int n(1);
  for (const Int& x : s.diag()) n *= x;
  return n;
}

Int GroupHom::image_order() const { return dst_.order() / cokernel_order(); }

Int GroupHom::kernel_order() const { return src_.order() / image_order(); }

bool GroupHom::is_zero_map() const {
  for (const auto& row : mat_)
    for (i64 x : row)
      if (x) return false;
  return true;
}

std::string GroupHom::to_string() const {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < mat_.size(); ++i) {
    if (i) os << "; ";
    for (size_t j = 0; j < mat_[i].size(); ++j) {
      if (j) os << ", ";
      os << mat_[i][j];
    }
  }
  os << "]";
  return os.str();
}

GroupHom hom_compose(const GroupHom& psi, const GroupHom& phi) {
  require(phi.target() == psi.source(), ErrorKind::compose,
          "middle groups do not match");
  const size_t rows = psi.target().rank();
  const size_t mid = psi.source().rank();
  const size_t cols = phi.source().rank();
  std::vector<std::vector<i64>> m(rows, std::vector<i64>(cols, 0));
  for (size_t i = 0; i < rows; ++i) {
    const i64 n = psi.target().orders()[i];
    for (size_t j = 0; j < cols; ++j) {
      i64 acc = 0;
      for (size_t k = 0; k < mid; ++k)
        acc = (acc + psi.matrix()[i][k] % n * (phi.matrix()[k][j] % n)) % n;
      m[i][j] = acc;
    }
  }
  return GroupHom(phi.source(), psi.target(), std::move(m));
}

// ---------------------------------------------------------------------------
// Kernel / cokernel via SNF

std::pair<FinAbGroup, GroupHom> kernel(const GroupHom& phi) {
  if (phi.target().rank() == 0)  // everything maps to zero
    return {phi.source(), GroupHom::identity(phi.source())};
  const size_t s = phi.source().rank();
  const std::vector<i64>& m = phi.source().orders();

  // Lattice L = {x in Z^s : M x = 0 mod n}, as the projection of the
  // integer kernel of [M | diag(n)].
  Matrix kb = integer_kernel_basis(relation_matrix(phi));
  const size_t q = kb.empty() ? 0 : kb[0].size();
  Matrix gen(s, std::vector<Int>(q, Int(0)));
  for (size_t i = 0; i < s; ++i)
    for (size_t j = 0; j < q; ++j) gen[i][j] = kb[i][j];
  Matrix bl = lattice_basis(gen);  // full rank s: diag(m) Z^s sits inside L
  require(bl.empty() || bl[0].size() == s, ErrorKind::precondition,
          "kernel lattice is not full rank");

  // Express the relation lattice diag(m) in the basis: C = bl^{-1} diag(m).
  SnfResult sb = smith_normal_form(bl);
  std::vector<Int> db = sb.diag();
  Matrix y = sb.u;  // y = u * diag(m), built column-scaled below
  for (size_t i = 0; i < s; ++i)
    for (size_t j = 0; j < s; ++j) y[i][j] *= m[j];
  for (size_t i = 0; i < s; ++i)
    for (size_t j = 0; j < s; ++j) {
      require(db[i] != 0 && y[i][j] % db[i] == 0, ErrorKind::precondition,
              "relation lattice escapes the kernel lattice");
      y[i][j] /= db[i];
    }
  Matrix c = mat_mul(sb.v, y);

  SnfResult sc = smith_normal_form(c);
  std::vector<Int> dc = sc.diag();

  std::vector<i64> korders;
  std::vector<size_t> kept;
  for (size_t k = 0; k < dc.size(); ++k) {
    require(dc[k] != 0, ErrorKind::precondition, "kernel quotient not finite");
    if (dc[k] > 1) {
      korders.push_back(static_cast<i64>(dc[k]));
      kept.push_back(k);
    }
  }
  FinAbGroup kgroup{korders};

  // Generator lifts: columns of bl * u_c^{-1} reduced mod the source orders.
  Matrix lifts = mat_mul(bl, sc.u_inv);
  std::vector<std::vector<i64>> iota(s, std::vector<i64>(kept.size(), 0));
  for (size_t col = 0; col < kept.size(); ++col)
    for (size_t i = 0; i < s; ++i) {
      Int v = lifts[i][kept[col]] % m[i];
      if (v < 0) v += m[i];
      iota[i][col] = static_cast<i64>(v);
    }
  return {kgroup, GroupHom(kgroup, phi.source(), std::move(iota))};
}

std::pair<FinAbGroup, GroupHom> cokernel(const GroupHom& phi) {
  const size_t t = phi.target().rank();
  SnfResult s = smith_normal_form(relation_matrix(phi));
  std::vector<Int> diag = s.diag();

  std::vector<i64> corders;
  std::vector<size_t> kept;
  for (size_t k = 0; k < t; ++k) {
    require(k < diag.size() && diag[k] != 0, ErrorKind::precondition,
            "cokernel not finite");
    if (diag[k] > 1) {
      corders.push_back(static_cast<i64>(diag[k]));
      kept.push_back(k);
    }
  }
  FinAbGroup cgroup{corders};

  std::vector<std::vector<i64>> pi(kept.size(), std::vector<i64>(t, 0));
  for (size_t row = 0; row < kept.size(); ++row) {
    const Int d = diag[kept[row]];
    for (size_t j = 0; j < t; ++j) {
      Int v = s.u[kept[row]][j] % d;
      if (v < 0) v += d;
      pi[row][j] = static_cast<i64>(v);
    }
  }
  return {cgroup, GroupHom(phi.target(), cgroup, std::move(pi))};
}

std::pair<FinAbGroup, GroupHom> normalize_group(const FinAbGroup& a) {
  const size_t s = a.rank();
  Matrix rel(s, std::vector<Int>(s, Int(0)));
  for (size_t i = 0; i < s; ++i) rel[i][i] = a.orders()[i];
  SnfResult snf = smith_normal_form(rel);
  std::vector<Int> diag = snf.diag();
  std::vector<i64> orders;
  std::vector<size_t> kept;
  for (size_t k = 0; k < s; ++k)
    if (diag[k] > 1) {
      orders.push_back(static_cast<i64>(diag[k]));
      kept.push_back(k);
    }
  FinAbGroup b{orders};
  std::vector<std::vector<i64>> m(kept.size(), std::vector<i64>(s, 0));
  for (size_t row = 0; row < kept.size(); ++row) {
    const Int d = diag[kept[row]];
    for (size_t j = 0; j < s; ++j) {
      Int v = snf.u[kept[row]][j] % d;
      if (v < 0) v += d;
      m[row][j] = static_cast<i64>(v);
    }
  }
  return {b, GroupHom(a, b, std::move(m))};
}

std::optional<GroupElement> solve_hom(const GroupHom& phi, const GroupElement& b) {
  require(b.parent() == phi.target(), ErrorKind::parent,
          "solve target in a different group");
  if (phi.target().rank() == 0) return phi.source().zero();
  const size_t s = phi.source().rank();
  SnfResult snf = smith_normal_form(relation_matrix(phi));
  std::vector<Int> rhsv(b.residues().begin(), b.residues().end());
  std::vector<Int> ub = mat_vec(snf.u, rhsv);
  std::vector<Int> diag = snf.diag();
  const size_t cols = s + phi.target().rank();
  std::vector<Int> w(cols, Int(0));
  for (size_t k = 0; k < ub.size(); ++k) {
    if (k < diag.size() && diag[k] != 0) {
      if (ub[k] % diag[k] != 0) return std::nullopt;
      w[k] = ub[k] / diag[k];
    } else if (ub[k] != 0) {
      return std::nullopt;
    }
  }
  std::vector<Int> x = mat_vec(snf.v, w);
  std::vector<i64> res(s);
  for (size_t j = 0; j < s; ++j) {
    const i64 mj = phi.source().orders()[j];
    Int v = x[j] % mj;
    if (v < 0) v += mj;
    res[j] = static_cast<i64>(v);
  }
  return phi.source().make(std::move(res));
}

// ---------------------------------------------------------------------------
// Duality

FinAbGroup dual_group(const FinAbGroup& a) { return a; }

QmodZ pairing0(const GroupElement& a, const GroupElement& alpha) {
  require(a.parent().orders() == alpha.parent().orders(), ErrorKind::parent,
          "pairing requires dual groups");
  Rational sum(0);
  for (size_t i = 0; i < a.parent().rank(); ++i)
    sum += Rational(Int(a.residues()[i]) * alpha.residues()[i],
                    Int(a.parent().orders()[i]));
  return QmodZ(sum);
}

GroupHom dual_hom(const GroupHom& phi) {
  const FinAbGroup& a = phi.source();
  const FinAbGroup& b = phi.target();
  std::vector<std::vector<i64>> m(a.rank(), std::vector<i64>(b.rank(), 0));
  for (size_t j = 0; j < a.rank(); ++j) {
    const i64 mj = a.orders()[j];
    for (size_t i = 0; i < b.rank(); ++i) {
      const i64 ni = b.orders()[i];
      // Integer by well-definedness of phi.
      Int e = (Int(mj) * phi.matrix()[i][j]) / ni % mj;
      m[j][i] = static_cast<i64>(e);
    }
  }
  return GroupHom(dual_group(b), dual_group(a), std::move(m));
}

GroupHom double_dual_iso(const FinAbGroup& a) {
  return GroupHom::identity(a);  // delta(a)(alpha) = alpha(a) in coordinates
}

// ---------------------------------------------------------------------------
// Subgroups

namespace {

// Closure of a generator set, breadth first over the ambient enumeration.
std::vector<i64> closure(const FinAbGroup& ambient, const std::vector<i64>& gens) {
  const i64 n = ambient.order_i64();
  std::vector<char> seen(static_cast<size_t>(n), 0);
  std::vector<i64> stack{0}, out;
  seen[0] = 1;
  std::vector<GroupElement> gen_elems;
  gen_elems.reserve(gens.size());
  for (i64 g : gens) gen_elems.push_back(ambient.element_at(g));
  while (!stack.empty()) {
    i64 cur = stack.back();
    stack.pop_back();
    out.push_back(cur);
    GroupElement e = ambient.element_at(cur);
    for (const GroupElement& g : gen_elems) {
      i64 nxt = ambient.index_of(e + g);
      if (!seen[static_cast<size_t>(nxt)]) {
        seen[static_cast<size_t>(nxt)] = 1;
        stack.push_back(nxt);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Extract a small generating set from a full, sorted element list.
std::vector<i64> reduce_generators(const FinAbGroup& ambient,
                                   const std::vector<i64>& elems) {
  std::vector<i64> gens;
  if (elems.size() <= 1) return gens;
  std::vector<i64> current{0};
  for (i64 e : elems) {
    if (std::binary_search(current.begin(), current.end(), e)) continue;
    gens.push_back(e);
    current = closure(ambient, gens);
    if (current.size() == elems.size()) break;
  }
  return gens;
}

}  // namespace

Subgroup::Subgroup(const FinAbGroup& ambient, const std::vector<GroupElement>& gens) {
  ambient_ = ambient;
  for (const GroupElement& g : gens) {
    require(g.parent() == ambient, ErrorKind::parent,
            "generator outside the ambient group");
    if (!g.is_zero()) gens_.push_back(ambient.index_of(g));
  }
  elems_ = closure(ambient_, gens_);
}

Subgroup Subgroup::trivial(const FinAbGroup& ambient) {
  Subgroup s;
  s.ambient_ = ambient;
  s.elems_ = {0};
  return s;
}

Subgroup Subgroup::full(const FinAbGroup& ambient) {
  Subgroup s;
  s.ambient_ = ambient;
  for (size_t k = 0; k < ambient.rank(); ++k)
    s.gens_.push_back(ambient.index_of(ambient.generator(k)));
  const i64 n = ambient.order_i64();
  s.elems_.resize(static_cast<size_t>(n));
  for (i64 i = 0; i < n; ++i) s.elems_[static_cast<size_t>(i)] = i;
  return s;
}

Subgroup Subgroup::from_generator_indices(const FinAbGroup& ambient,
                                          const std::vector<i64>& gens) {
  Subgroup s;
  s.ambient_ = ambient;
  for (i64 g : gens)
    if (g != 0) s.gens_.push_back(g);
  s.elems_ = closure(ambient, s.gens_);
  return s;
}

std::vector<GroupElement> Subgroup::generators() const {
  std::vector<GroupElement> out;
  out.reserve(gens_.size());
  for (i64 g : gens_) out.push_back(ambient_.element_at(g));
  return out;
}

GroupElement Subgroup::element(size_t pos) const {
  return ambient_.element_at(elems_[pos]);
}

bool Subgroup::contains_index(i64 index) const {
  return std::binary_search(elems_.begin(), elems_.end(), index);
}

bool Subgroup::contains(const GroupElement& a) const {
  require(a.parent() == ambient_, ErrorKind::parent,
          "membership test across groups");
  return contains_index(ambient_.index_of(a));
}

bool Subgroup::contains_subgroup(const Subgroup& s) const {
  require(s.ambient_ == ambient_, ErrorKind::parent, "ambient mismatch");
  return std::includes(elems_.begin(), elems_.end(), s.elems_.begin(), s.elems_.end());
}

Subgroup intersect(const Subgroup& s, const Subgroup& t) {
  require(s.ambient() == t.ambient(), ErrorKind::parent, "ambient mismatch");
  std::vector<i64> common;
  std::set_intersection(s.element_indices().begin(), s.element_indices().end(),
                        t.element_indices().begin(), t.element_indices().end(),
                        std::back_inserter(common));
  Subgroup out = Subgroup::from_generator_indices(
      s.ambient(), reduce_generators(s.ambient(), common));
  return out;
}

Subgroup join(const Subgroup& s, const Subgroup& t) {
  require(s.ambient() == t.ambient(), ErrorKind::parent, "ambient mismatch");
  std::vector<i64> gens = s.generator_indices();
  gens.insert(gens.end(), t.generator_indices().begin(), t.generator_indices().end());
  return Subgroup::from_generator_indices(s.ambient(), gens);
}

Subgroup perp(const Subgroup& s) {
  const FinAbGroup& a = s.ambient();
  const FinAbGroup dual = dual_group(a);
  const i64 n = a.order_i64();
  const i64 expo = a.exponent();
  const size_t rank = a.rank();

  // Character alpha kills S iff it kills every generator; the pairing is
  // evaluated in integers scaled by the exponent.
  std::vector<std::vector<i64>> gen_scaled;
  for (i64 g : s.generator_indices()) {
    GroupElement e = a.element_at(g);
    std::vector<i64> row(rank);
    for (size_t i = 0; i < rank; ++i)
      row[i] = e.residues()[i] * (expo / a.orders()[i]) % expo;
    gen_scaled.push_back(std::move(row));
  }

  std::vector<i64> found;
  std::vector<i64> alpha_res(rank, 0);
  for (i64 idx = 0; idx < n; ++idx) {
    bool kills = true;
    for (const auto& row : gen_scaled) {
      i64 acc = 0;
      for (size_t i = 0; i < rank; ++i) acc = (acc + row[i] * alpha_res[i]) % expo;
      if (acc != 0) {
        kills = false;
        break;
      }
    }
    if (kills) found.push_back(idx);
    // Mixed-radix increment, last coordinate fastest.
    for (size_t i = rank; i-- > 0;) {
      if (++alpha_res[i] < dual.orders()[i]) break;
      alpha_res[i] = 0;
    }
  }
  return Subgroup::from_generator_indices(dual, reduce_generators(dual, found));
}

Subgroup image(const GroupHom& phi, const Subgroup& s) {
  require(s.ambient() == phi.source(), ErrorKind::parent,
          "subgroup not in the source");
  std::vector<i64> gens;
  for (i64 g : s.generator_indices())
    gens.push_back(phi.target().index_of(phi.apply(phi.source().element_at(g))));
  return Subgroup::from_generator_indices(phi.target(), gens);
}

Subgroup preimage(const GroupHom& phi, const Subgroup& s) {
  require(s.ambient() == phi.target(), ErrorKind::parent,
          "subgroup not in the target");
  const i64 n = phi.source().order_i64();
  std::vector<i64> found;
  for (i64 idx = 0; idx < n; ++idx)
    if (s.contains(phi.apply(phi.source().element_at(idx)))) found.push_back(idx);
  return Subgroup::from_generator_indices(
      phi.source(), reduce_generators(phi.source(), found));
}

Subgroup image_subgroup(const GroupHom& phi) {
  return image(phi, Subgroup::full(phi.source()));
}

// ---------------------------------------------------------------------------
// QuotientPresentation

QuotientPresentation::QuotientPresentation(const FinAbGroup& ambient,
                                           const Subgroup& t, const Subgroup& s) {
  require(t.ambient() == ambient && s.ambient() == ambient, ErrorKind::parent,
          "quotient presentation ambient mismatch");
  require(t.contains_subgroup(s), ErrorKind::precondition,
          "denominator subgroup not contained in numerator");
  ambient_ = ambient;
  const size_t rank = ambient.rank();

  std::vector<i64> tg = t.generator_indices();
  t_count_ = tg.size();
  t_gens_.assign(rank, std::vector<Int>(t_count_, Int(0)));
  for (size_t col = 0; col < t_count_; ++col) {
    GroupElement e = ambient.element_at(tg[col]);
    for (size_t i = 0; i < rank; ++i) t_gens_[i][col] = e.residues()[i];
  }
  std::vector<i64> sg = s.generator_indices();

  // Relation lattice in the exponents of the T generators:
  // {x : T x in S + diag(m) Z}.
  Matrix w(rank, std::vector<Int>(t_count_ + sg.size() + rank, Int(0)));
  for (size_t i = 0; i < rank; ++i) {
    for (size_t j = 0; j < t_count_; ++j) w[i][j] = t_gens_[i][j];
    for (size_t j = 0; j < sg.size(); ++j)
      w[i][t_count_ + j] = ambient.element_at(sg[j]).residues()[i];
    w[i][t_count_ + sg.size() + i] = ambient.orders()[i];
  }
  Matrix kb = integer_kernel_basis(w);
  const size_t q = kb.empty() ? 0 : kb[0].size();
  Matrix gen(t_count_, std::vector<Int>(q, Int(0)));
  for (size_t i = 0; i < t_count_; ++i)
    for (size_t j = 0; j < q; ++j) gen[i][j] = kb[i][j];
  Matrix bl = lattice_basis(gen);

  SnfResult snf = smith_normal_form(bl);
  u_ = snf.u;
  u_inv_ = snf.u_inv;
  std::vector<Int> diag = snf.diag();
  std::vector<i64> orders;
  for (size_t k = 0; k < t_count_; ++k) {
    require(k < diag.size() && diag[k] != 0, ErrorKind::precondition,
            "quotient is not finite");
    if (diag[k] > 1) {
      orders.push_back(static_cast<i64>(diag[k]));
      kept_.push_back(static_cast<i64>(k));
      kept_div_.push_back(diag[k]);
    }
  }
  group_ = FinAbGroup{orders};

  // Solver for writing an ambient element of T in the chosen generators.
  Matrix solver(rank, std::vector<Int>(t_count_ + rank, Int(0)));
  for (size_t i = 0; i < rank; ++i) {
    for (size_t j = 0; j < t_count_; ++j) solver[i][j] = t_gens_[i][j];
    solver[i][t_count_ + i] = ambient.orders()[i];
  }
  solver_ = smith_normal_form(solver);
}

GroupElement QuotientPresentation::project(const GroupElement& a) const {
  require(a.parent() == ambient_, ErrorKind::parent, "projection ambient mismatch");
  // Solve T x = a mod diag(m).
  std::vector<Int> rhs(a.residues().begin(), a.residues().end());
  std::vector<Int> ub = mat_vec(solver_.u, rhs);
  std::vector<Int> diag = solver_.diag();
  const size_t cols = solver_.v.size();
  std::vector<Int> wv(cols, Int(0));
  for (size_t k = 0; k < ub.size(); ++k) {
    if (k < diag.size() && diag[k] != 0) {
      require(ub[k] % diag[k] == 0, ErrorKind::precondition,
              "element outside the numerator subgroup");
      wv[k] = ub[k] / diag[k];
    } else {
      require(ub[k] == 0, ErrorKind::precondition,
              "element outside the numerator subgroup");
    }
  }
  std::vector<Int> x = mat_vec(solver_.v, wv);
  std::vector<Int> coords(t_count_, Int(0));
  for (size_t j = 0; j < t_count_; ++j) coords[j] = x[j];
  std::vector<Int> ux = mat_vec(u_, coords);
  std::vector<i64> res(kept_.size());
  for (size_t k = 0; k < kept_.size(); ++k) {
    Int v = ux[static_cast<size_t>(kept_[k])] % kept_div_[k];
    if (v < 0) v += kept_div_[k];
    res[k] = static_cast<i64>(v);
  }
  return group_.make(std::move(res));
}

GroupElement QuotientPresentation::lift(const GroupElement& q) const {
  require(q.parent() == group_, ErrorKind::parent, "lift argument mismatch");
  std::vector<Int> emb(t_count_, Int(0));
  for (size_t k = 0; k < kept_.size(); ++k)
    emb[static_cast<size_t>(kept_[k])] = q.residues()[k];
  std::vector<Int> x = mat_vec(u_inv_, emb);
  std::vector<Int> amb = mat_vec(t_gens_, x);
  std::vector<i64> res(ambient_.rank());
  for (size_t i = 0; i < ambient_.rank(); ++i) {
    Int v = amb[i] % ambient_.orders()[i];
    if (v < 0) v += ambient_.orders()[i];
    res[i] = static_cast<i64>(v);
  }
  return ambient_.make(std::move(res));
}

}  // namespace adelharm
