#include "puncta/linalg.hpp"

#include <algorithm>
#include <sstream>

namespace puncta {

Rational dot(const IVec& a, const QVec& b) {
  if (a.size() != b.size()) throw Error("vector dimension mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += Rational(a[i]) * b[i];
  return s;
}

IVec add(const IVec& a, const IVec& b) {
  if (a.size() != b.size()) throw Error("vector dimension mismatch");
  IVec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

IVec sub(const IVec& a, const IVec& b) {
  if (a.size() != b.size()) throw Error("vector dimension mismatch");
  IVec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
  return c;
}

IVec scale(const Integer& k, const IVec& a) {
  IVec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = k * a[i];
  return c;
}

IVec neg(const IVec& a) { return scale(-1, a); }

bool is_zero(const IVec& a) {
  return std::all_of(a.begin(), a.end(), [](const Integer& x) { return x == 0; });
}

bool is_zero(const QVec& a) {
  return std::all_of(a.begin(), a.end(), [](const Rational& x) { return x == 0; });
}

IVec zeros(std::size_t n) { return IVec(n, Integer(0)); }

IVec unit(std::size_t n, std::size_t i) {
  IVec v = zeros(n);
  v[i] = 1;
  return v;
}

IVec concat(const IVec& a, const IVec& b) {
  IVec c = a;
  c.insert(c.end(), b.begin(), b.end());
  return c;
}

Integer gcd_of(const IVec& v) {
  Integer g = 0;
  for (const auto& x : v) g = gcd(g, x);
  return abs(g);
}

IVec primitive(const IVec& v) {
  Integer g = gcd_of(v);
  if (g == 0 || g == 1) return v;
  IVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / g;
  return out;
}

IVec primitive(const QVec& v) {
  Integer l = 1;
  for (const auto& x : v) l = lcm(l, Integer(denominator(x)));
  IVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = Integer(numerator(Rational(v[i] * Rational(l))));
  return primitive(out);
}

QVec to_q(const IVec& v) {
  QVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rational(v[i]);
  return out;
}

QMat to_q(const IMat& m) {
  QMat out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = Rational(m(i, j));
  return out;
}

std::optional<IVec> to_z(const QVec& v) {
  IVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (denominator(v[i]) != 1) return std::nullopt;
    out[i] = Integer(numerator(v[i]));
  }
  return out;
}

IMat hstack(const IMat& a, const IMat& b) {
  if (a.rows() != b.rows()) throw Error("hstack row mismatch");
  IMat m(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) m(i, a.cols() + j) = b(i, j);
  }
  return m;
}

IMat vstack(const IMat& a, const IMat& b) {
  if (a.cols() != b.cols()) throw Error("vstack column mismatch");
  IMat m(a.rows() + b.rows(), a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    for (std::size_t i = 0; i < a.rows(); ++i) m(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i) m(a.rows() + i, j) = b(i, j);
  }
  return m;
}

IMat rows_to_mat(const std::vector<IVec>& rows, std::size_t cols) {
  return IMat::from_rows(rows, cols);
}

IMat cols_to_mat(const std::vector<IVec>& cols, std::size_t rows) {
  return IMat::from_cols(cols, rows);
}

std::string to_string(const IVec& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ")";
  return os.str();
}

std::string to_string(const QVec& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ")";
  return os.str();
}

LatticeVec::LatticeVec(IVec c, Lattice l) : coords(std::move(c)), lattice(std::move(l)) {
  if (coords.size() != lattice.rank)
    throw Error("vector length does not match rank of lattice " + lattice.id);
}

LatticeMap::LatticeMap(IMat m, Lattice src, Lattice tgt)
    : matrix(std::move(m)), source(std::move(src)), target(std::move(tgt)) {
  if (matrix.rows() != target.rank || matrix.cols() != source.rank)
    throw Error("map shape does not match lattices " + source.id + " -> " + target.id);
}

LatticeVec LatticeMap::operator()(const LatticeVec& v) const {
  if (!(v.lattice == source)) throw Error("vector in " + v.lattice.id + ", map expects " + source.id);
  return LatticeVec(matrix * v.coords, target);
}

LatticeMap compose(const LatticeMap& outer, const LatticeMap& inner) {
  if (!(inner.target == outer.source))
    throw Error("cannot compose " + inner.target.id + " with " + outer.source.id);
  return LatticeMap(outer.matrix * inner.matrix, inner.source, outer.target);
}

namespace {

void row_add(IMat& m, std::size_t dst, std::size_t src, const Integer& k) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) += k * m(src, j);
}
void col_add(IMat& m, std::size_t dst, std::size_t src, const Integer& k) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) += k * m(i, src);
}
void row_swap(IMat& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}
void col_swap(IMat& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}
void row_neg(IMat& m, std::size_t a) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(a, j) = -m(a, j);
}

}  // namespace

SmithForm smith_normal_form(const IMat& m0) {
  IMat a = m0;
  const std::size_t r = a.rows(), c = a.cols();
  IMat left = IMat::identity(r), right = IMat::identity(c);
  const std::size_t n = std::min(r, c);
  std::size_t t = 0;
  for (; t < n; ++t) {
    bool any = false;
    while (true) {
      std::size_t pi = 0, pj = 0;
      any = false;
      Integer best;
      for (std::size_t i = t; i < r; ++i)
        for (std::size_t j = t; j < c; ++j)
          if (a(i, j) != 0 && (!any || abs(a(i, j)) < best)) {
            best = abs(a(i, j));
            pi = i;
            pj = j;
            any = true;
          }
      if (!any) break;
      row_swap(a, t, pi);
      row_swap(left, t, pi);
      col_swap(a, t, pj);
      col_swap(right, t, pj);
      bool clear = true;
      for (std::size_t i = t + 1; i < r; ++i) {
        Integer q = a(i, t) / a(t, t);
        if (q != 0) {
          row_add(a, i, t, -q);
          row_add(left, i, t, -q);
        }
        if (a(i, t) != 0) clear = false;
      }
      for (std::size_t j = t + 1; j < c; ++j) {
        Integer q = a(t, j) / a(t, t);
        if (q != 0) {
          col_add(a, j, t, -q);
          col_add(right, j, t, -q);
        }
        if (a(t, j) != 0) clear = false;
      }
      if (!clear) continue;
      bool fixed = false;
      for (std::size_t i = t + 1; i < r && !fixed; ++i)
        for (std::size_t j = t + 1; j < c; ++j)
          if (a(i, j) % a(t, t) != 0) {
            row_add(a, t, i, 1);
            row_add(left, t, i, 1);
            fixed = true;
            break;
          }
      if (!fixed) break;
    }
    if (!any) break;
    if (a(t, t) < 0) {
      row_neg(a, t);
      row_neg(left, t);
    }
  }
  SmithForm s;
  s.rank = t;
  s.diag.assign(n, Integer(0));
  for (std::size_t i = 0; i < t; ++i) s.diag[i] = a(i, i);
  s.left = std::move(left);
  s.right = std::move(right);
  return s;
}

SmithForm smith_normal_form(const LatticeMap& m) { return smith_normal_form(m.matrix); }

std::optional<IntegralSolution> solve_integral(const IMat& m, const IVec& b) {
  if (b.size() != m.rows()) throw Error("right-hand side length mismatch");
  SmithForm s = smith_normal_form(m);
  IVec lb = s.left * b;
  IVec y = zeros(m.cols());
  for (std::size_t i = 0; i < lb.size(); ++i) {
    if (i < s.rank) {
      if (lb[i] % s.diag[i] != 0) return std::nullopt;
      y[i] = lb[i] / s.diag[i];
    } else if (lb[i] != 0) {
      return std::nullopt;
    }
  }
  IntegralSolution out;
  out.particular = s.right * y;
  for (std::size_t j = s.rank; j < m.cols(); ++j) out.kernel.push_back(s.right.col(j));
  return out;
}

std::optional<IntegralSolution> solve_integral(const LatticeMap& m, const LatticeVec& b) {
  if (!(b.lattice == m.target)) throw Error("right-hand side not in target lattice " + m.target.id);
  return solve_integral(m.matrix, b.coords);
}

IMat hermite_rows(const IMat& m0) {
  IMat a = m0;
  const std::size_t r = a.rows(), c = a.cols();
  std::size_t row = 0;
  for (std::size_t col = 0; col < c && row < r; ++col) {
    for (std::size_t i = row + 1; i < r; ++i) {
      while (a(i, col) != 0) {
        Integer q = a(row, col) / a(i, col);
        row_add(a, row, i, -q);
        row_swap(a, row, i);
      }
    }
    if (a(row, col) == 0) continue;
    if (a(row, col) < 0) row_neg(a, row);
    const Integer p = a(row, col);
    for (std::size_t i = 0; i < row; ++i) {
      Integer q = a(i, col) / p;
      if (a(i, col) - q * p < 0) q -= 1;
      if (q != 0) row_add(a, i, row, -q);
    }
    ++row;
  }
  IMat out(row, c);
  for (std::size_t i = 0; i < row; ++i)
    for (std::size_t j = 0; j < c; ++j) out(i, j) = a(i, j);
  return out;
}

std::vector<IVec> lattice_basis(const std::vector<IVec>& gens, std::size_t dim) {
  if (gens.empty()) return {};
  return hermite_rows(rows_to_mat(gens, dim)).row_list();
}

std::vector<IVec> saturate_sublattice(const std::vector<IVec>& gens, std::size_t dim) {
  if (gens.empty()) return {};
  IMat g = cols_to_mat(gens, dim);
  SmithForm s = smith_normal_form(g);
  // g = L^{-1} D R^{-1}: the first rank columns of L^{-1} span the saturation.
  auto linv = inverse(to_q(s.left));
  std::vector<IVec> basis;
  for (std::size_t j = 0; j < s.rank; ++j) basis.push_back(*to_z(linv->col(j)));
  return lattice_basis(basis, dim);
}

std::vector<LatticeVec> saturate_sublattice(const std::vector<LatticeVec>& gens) {
  if (gens.empty()) return {};
  std::vector<IVec> raw;
  for (const auto& g : gens) {
    if (!(g.lattice == gens[0].lattice)) throw Error("generators in different lattices");
    raw.push_back(g.coords);
  }
  std::vector<LatticeVec> out;
  for (auto& v : saturate_sublattice(raw, gens[0].lattice.rank)) out.emplace_back(v, gens[0].lattice);
  return out;
}

std::vector<IVec> integer_kernel(const IMat& m) {
  SmithForm s = smith_normal_form(m);
  std::vector<IVec> k;
  for (std::size_t j = s.rank; j < m.cols(); ++j) k.push_back(s.right.col(j));
  return lattice_basis(k, m.cols());
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(QMat& a) {
  std::vector<std::size_t> piv;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t p = row;
    while (p < a.rows() && a(p, col) == 0) ++p;
    if (p == a.rows()) continue;
    if (p != row)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(row, j));
    Rational inv = 1 / a(row, col);
    for (std::size_t j = 0; j < a.cols(); ++j) a(row, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == row || a(i, col) == 0) continue;
      Rational f = a(i, col);
      for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) -= f * a(row, j);
    }
    piv.push_back(col);
    ++row;
  }
  return piv;
}

}  // namespace

std::size_t rank(const QMat& m) {
  QMat a = m;
  return rref(a).size();
}

std::size_t rank(const IMat& m) { return rank(to_q(m)); }

std::vector<QVec> rational_kernel(const QMat& m) {
  QMat a = m;
  auto piv = rref(a);
  std::vector<bool> is_piv(m.cols(), false);
  for (auto p : piv) is_piv[p] = true;
  std::vector<QVec> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_piv[f]) continue;
    QVec v(m.cols());
    v[f] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -a(i, f);
    basis.push_back(v);
  }
  return basis;
}

std::optional<QVec> solve_rational(const QMat& m, const QVec& b) {
  QMat a(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) a(i, j) = m(i, j);
    a(i, m.cols()) = b[i];
  }
  auto piv = rref(a);
  if (!piv.empty() && piv.back() == m.cols()) return std::nullopt;
  QVec x(m.cols());
  for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = a(i, m.cols());
  return x;
}

Rational determinant(const QMat& m) {
  if (m.rows() != m.cols()) throw Error("determinant of non-square matrix");
  QMat a = m;
  Rational det = 1;
  const std::size_t n = a.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a(i, c) == 0) continue;
      Rational f = a(i, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
    }
  }
  return det;
}

Integer determinant(const IMat& m) { return Integer(numerator(determinant(to_q(m)))); }

std::optional<QMat> inverse(const QMat& m) {
  if (m.rows() != m.cols()) throw Error("inverse of non-square matrix");
  const std::size_t n = m.rows();
  QMat a(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a(i, j) = m(i, j);
    a(i, n + i) = 1;
  }
  auto piv = rref(a);
  if (piv.size() < n || (n > 0 && piv[n - 1] != n - 1)) return std::nullopt;
  QMat inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = a(i, n + j);
  return inv;
}

Integer lattice_index(const IMat& cols) {
  SmithForm s = smith_normal_form(cols);
  Integer idx = 1;
  for (std::size_t i = 0; i < s.rank; ++i) idx *= s.diag[i];
  return idx;
}

}  // namespace puncta
