#include "dgk/linalg.hpp"

#include <string>

namespace dgk {

template <class F>
RowEchelon<F> rref(Matrix<F> m) {
  const F& f = m.field();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && f.is_zero(m(p, c))) ++p;
    if (p == m.rows()) continue;
    if (p != r) {
      auto rp = m.row(p), rr = m.row(r);
      for (std::size_t j = c; j < m.cols(); ++j) std::swap(rp[j], rr[j]);
    }
    auto pivot_row = m.row(r);
    if (!f.is_one(pivot_row[c])) {
      auto inv = f.inv(pivot_row[c]);
      for (std::size_t j = c; j < m.cols(); ++j) pivot_row[j] = f.mul(pivot_row[j], inv);
    }
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r) continue;
      auto target = m.row(i);
      if (f.is_zero(target[c])) continue;
      typename F::Element factor = target[c];
      for (std::size_t j = c; j < m.cols(); ++j) f.sub_scaled(target[j], factor, pivot_row[j]);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

template <class F>
std::size_t rank(const Matrix<F>& m) {
  if (m.empty()) return 0;
  return rref(m).rank();
}

template <class F>
KernelBasis<F> kernel(const Matrix<F>& m) {
  const F& f = m.field();
  auto ech = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : ech.pivots) is_pivot[p] = true;
  KernelBasis<F> out;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) out.free_columns.push_back(c);
  out.basis = Matrix<F>(f, out.free_columns.size(), m.cols());
  for (std::size_t k = 0; k < out.free_columns.size(); ++k) {
    std::size_t fc = out.free_columns[k];
    out.basis(k, fc) = f.one();
    for (std::size_t i = 0; i < ech.pivots.size(); ++i) out.basis(k, ech.pivots[i]) = f.neg(ech.reduced(i, fc));
  }
  return out;
}

template <class F>
Matrix<F> image_basis(const Matrix<F>& m) {
  auto ech = rref(m.transpose());
  return ech.reduced.block(0, 0, ech.rank(), m.rows());
}

template <class F>
QuotientSpace<F> quotient(const F& field, std::size_t ambient_dim, const Matrix<F>& relations) {
  if (relations.cols() != ambient_dim && !(relations.rows() == 0))
    throw StructuralError("quotient: relations have " + std::to_string(relations.cols()) + " columns, ambient dimension is " +
                          std::to_string(ambient_dim));
  QuotientSpace<F> q;
  q.ambient_dim = ambient_dim;
  q.relations = relations.rows() == 0 ? Matrix<F>(field, 0, ambient_dim) : relations;
  auto ech = rref(q.relations);
  std::vector<bool> is_pivot(ambient_dim, false);
  for (auto p : ech.pivots) is_pivot[p] = true;
  for (std::size_t c = 0; c < ambient_dim; ++c)
    if (!is_pivot[c]) q.basis_columns.push_back(c);
  q.quotient_dim = q.basis_columns.size();
  q.projection = Matrix<F>(field, q.quotient_dim, ambient_dim);
  q.section = Matrix<F>(field, ambient_dim, q.quotient_dim);
  for (std::size_t k = 0; k < q.quotient_dim; ++k) {
    std::size_t fc = q.basis_columns[k];
    q.projection(k, fc) = field.one();
    q.section(fc, k) = field.one();
    for (std::size_t i = 0; i < ech.pivots.size(); ++i) q.projection(k, ech.pivots[i]) = field.neg(ech.reduced(i, fc));
  }
  return q;
}

template <class F>
std::optional<Matrix<F>> solve(const Matrix<F>& a, const Matrix<F>& b) {
  if (a.rows() != b.rows()) throw StructuralError("solve: row mismatch");
  const F& f = a.field();
  auto ech = rref(hstack(a, b));
  Matrix<F> x(f, a.cols(), b.cols());
  for (std::size_t i = 0; i < ech.pivots.size(); ++i) {
    std::size_t p = ech.pivots[i];
    if (p >= a.cols()) return std::nullopt;
    for (std::size_t j = 0; j < b.cols(); ++j) x(p, j) = ech.reduced(i, a.cols() + j);
  }
  return x;
}

template <class F>
std::optional<Vector<F>> solve(const Matrix<F>& a, const Vector<F>& b) {
  auto x = solve(a, Matrix<F>::column(a.field(), b));
  if (!x) return std::nullopt;
  return x->column_vector(0);
}

template <class F>
std::optional<Matrix<F>> inverse(const Matrix<F>& m) {
  if (m.rows() != m.cols() || rank(m) != m.rows()) return std::nullopt;
  return solve(m, Matrix<F>::identity(m.field(), m.rows()));
}

template <class F>
bool image_equals_kernel(const Matrix<F>& f, const Matrix<F>& g) {
  if (f.rows() != g.cols()) throw StructuralError("image_equals_kernel: shape mismatch");
  if (!(g * f).is_zero()) return false;
  return rank(f) + rank(g) == g.cols();
}

#define DGK_INSTANTIATE(F)                                                                     \
  template RowEchelon<F> rref<F>(Matrix<F>);                                                   \
  template std::size_t rank<F>(const Matrix<F>&);                                              \
  template KernelBasis<F> kernel<F>(const Matrix<F>&);                                         \
  template Matrix<F> image_basis<F>(const Matrix<F>&);                                         \
  template QuotientSpace<F> quotient<F>(const F&, std::size_t, const Matrix<F>&);              \
  template std::optional<Matrix<F>> solve<F>(const Matrix<F>&, const Matrix<F>&);              \
  template std::optional<Vector<F>> solve<F>(const Matrix<F>&, const Vector<F>&);              \
  template std::optional<Matrix<F>> inverse<F>(const Matrix<F>&);                              \
  template bool image_equals_kernel<F>(const Matrix<F>&, const Matrix<F>&);
DGK_FOR_EACH_FIELD(DGK_INSTANTIATE)
#undef DGK_INSTANTIATE

}  // namespace dgk
