#pragma once

#include <optional>
#include <vector>

#include "dgk/matrix.hpp"

namespace dgk {

template <class F>
struct RowEchelon {
  Matrix<F> reduced;                // same shape as the input, zero rows last
  std::vector<std::size_t> pivots;  // strictly increasing column indices
  std::size_t rank() const { return pivots.size(); }
};

// Unique reduced row echelon form.
template <class F>
RowEchelon<F> rref(Matrix<F> m);

template <class F>
std::size_t rank(const Matrix<F>& m);

// Rows form a basis of {v : m v = 0}. The basis vector attached to free
// column c has a 1 at c and 0 at every other free column.
template <class F>
struct KernelBasis {
  Matrix<F> basis;                      // (cols - rank) x cols
  std::vector<std::size_t> free_columns;
};

template <class F>
KernelBasis<F> kernel(const Matrix<F>& m);

template <class F>
Matrix<F> kernel_basis(const Matrix<F>& m) {
  return kernel(m).basis;
}

// Rows form a basis of the column space of m (reduced echelon, deterministic).
template <class F>
Matrix<F> image_basis(const Matrix<F>& m);

// V / span(relation rows), with the basis given by the non-pivot coordinates
// of rref(relations).
template <class F>
struct QuotientSpace {
  std::size_t ambient_dim = 0;
  Matrix<F> relations;     // as supplied, each row a relation vector
  std::size_t quotient_dim = 0;
  Matrix<F> projection;    // quotient_dim x ambient_dim
  Matrix<F> section;       // ambient_dim x quotient_dim
  std::vector<std::size_t> basis_columns;

  Vector<F> project(const Vector<F>& v) const { return dgk::apply(projection, v); }
  Vector<F> lift(const Vector<F>& q) const { return dgk::apply(section, q); }
};

template <class F>
QuotientSpace<F> quotient(const F& field, std::size_t ambient_dim, const Matrix<F>& relations);

// Some X with a X = b, or nullopt when the system is inconsistent.
template <class F>
std::optional<Matrix<F>> solve(const Matrix<F>& a, const Matrix<F>& b);

template <class F>
std::optional<Vector<F>> solve(const Matrix<F>& a, const Vector<F>& b);

template <class F>
std::optional<Matrix<F>> inverse(const Matrix<F>& m);

// Exactness of U --f--> V --g--> W at V: im f = ker g.
template <class F>
bool image_equals_kernel(const Matrix<F>& f, const Matrix<F>& g);

template <class F>
bool is_surjective(const Matrix<F>& m) {
  return rank(m) == m.rows();
}

template <class F>
bool is_injective(const Matrix<F>& m) {
  return rank(m) == m.cols();
}

template <class F>
bool is_bijective(const Matrix<F>& m) {
  return m.rows() == m.cols() && rank(m) == m.rows();
}

// Vector of length sum(dims) with coordinates taken from selected columns.
template <class F>
Vector<F> select(const Vector<F>& v, const std::vector<std::size_t>& idx) {
  Vector<F> out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(v[i]);
  return out;
}

}  // namespace dgk
