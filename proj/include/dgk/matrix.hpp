#pragma once

#include <cassert>
#include <cstddef>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "dgk/error.hpp"
#include "dgk/field.hpp"

namespace dgk {

template <class F>
using Vector = std::vector<typename F::Element>;

// Dense row-major matrix over F. A matrix of a linear map V -> W has
// dim W rows and dim V columns and acts on column vectors.
template <class F>
class Matrix {
 public:
  using Element = typename F::Element;

  Matrix() = default;
  Matrix(F field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, field_.zero()) {}

  static Matrix identity(const F& field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
    return m;
  }

  static Matrix from_rows(const F& field, std::size_t cols, const std::vector<Vector<F>>& rows) {
    Matrix m(field, rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      assert(rows[r].size() == cols);
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
  }

  // Single column.
  static Matrix column(const F& field, const Vector<F>& v) {
    Matrix m(field, v.size(), 1);
    for (std::size_t r = 0; r < v.size(); ++r) m(r, 0) = v[r];
    return m;
  }

  const F& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Element& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Element& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Element> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Element> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  Vector<F> row_vector(std::size_t r) const { return Vector<F>(row(r).begin(), row(r).end()); }
  Vector<F> column_vector(std::size_t c) const {
    Vector<F> v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }
  void set_column(std::size_t c, const Vector<F>& v) {
    assert(v.size() == rows_);
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
  }

  bool is_zero() const {
    for (const auto& e : data_)
      if (!field_.is_zero(e)) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    assert(r0 + nr <= rows_ && c0 + nc <= cols_);
    Matrix b(field_, nr, nc);
    for (std::size_t r = 0; r < nr; ++r)
      for (std::size_t c = 0; c < nc; ++c) b(r, c) = (*this)(r0 + r, c0 + c);
    return b;
  }

  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    assert(r0 + b.rows() <= rows_ && c0 + b.cols() <= cols_);
    for (std::size_t r = 0; r < b.rows(); ++r)
      for (std::size_t c = 0; c < b.cols(); ++c) (*this)(r0 + r, c0 + c) = b(r, c);
  }

  Matrix select_columns(const std::vector<std::size_t>& cols) const {
    Matrix s(field_, rows_, cols.size());
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t k = 0; k < cols.size(); ++k) s(r, k) = (*this)(r, cols[k]);
    return s;
  }

  void scale(const Element& s) {
    for (auto& e : data_) e = field_.mul(e, s);
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t i = 0; i < a.data_.size(); ++i)
      if (!a.field_.is_zero(a.field_.sub(a.data_[i], b.data_[i]))) return false;
    return true;
  }

 private:
  F field_{};
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Element> data_;
};

template <class F>
Matrix<F> operator*(const Matrix<F>& a, const Matrix<F>& b) {
  if (a.cols() != b.rows())
    throw StructuralError("matrix product shape mismatch: " + std::to_string(a.rows()) + "x" +
                          std::to_string(a.cols()) + " * " + std::to_string(b.rows()) + "x" +
                          std::to_string(b.cols()));
  const F& f = a.field();
  Matrix<F> c(f, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const auto& aik = a(i, k);
      if (f.is_zero(aik)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (!f.is_zero(b(k, j))) c(i, j) = f.add(c(i, j), f.mul(aik, b(k, j)));
    }
  return c;
}

template <class F>
Matrix<F> operator+(const Matrix<F>& a, const Matrix<F>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw StructuralError("matrix sum shape mismatch");
  Matrix<F> c(a.field(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a.field().add(a(i, j), b(i, j));
  return c;
}

template <class F>
Matrix<F> operator-(const Matrix<F>& a, const Matrix<F>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw StructuralError("matrix difference shape mismatch");
  Matrix<F> c(a.field(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a.field().sub(a(i, j), b(i, j));
  return c;
}

template <class F>
Vector<F> apply(const Matrix<F>& m, const Vector<F>& v) {
  if (m.cols() != v.size()) throw StructuralError("matrix-vector shape mismatch");
  const F& f = m.field();
  Vector<F> out(m.rows(), f.zero());
  for (std::size_t j = 0; j < m.cols(); ++j) {
    if (f.is_zero(v[j])) continue;
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (!f.is_zero(m(i, j))) out[i] = f.add(out[i], f.mul(m(i, j), v[j]));
  }
  return out;
}

template <class F>
Vector<F> zero_vector(const F& f, std::size_t n) {
  return Vector<F>(n, f.zero());
}

template <class F>
Vector<F> unit_vector(const F& f, std::size_t n, std::size_t i) {
  Vector<F> v(n, f.zero());
  v[i] = f.one();
  return v;
}

template <class F>
bool is_zero_vector(const F& f, const Vector<F>& v) {
  for (const auto& e : v)
    if (!f.is_zero(e)) return false;
  return true;
}

template <class F>
Vector<F> add(const F& f, const Vector<F>& a, const Vector<F>& b) {
  assert(a.size() == b.size());
  Vector<F> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = f.add(a[i], b[i]);
  return out;
}

template <class F>
Vector<F> scaled(const F& f, const typename F::Element& s, const Vector<F>& v) {
  Vector<F> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = f.mul(s, v[i]);
  return out;
}

// Kronecker product; column (i*b + j) of kron(a, b) is a_i (x) b_j.
template <class F>
Matrix<F> kron(const Matrix<F>& a, const Matrix<F>& b) {
  const F& f = a.field();
  Matrix<F> k(f, a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (f.is_zero(a(i, j))) continue;
      for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t c = 0; c < b.cols(); ++c)
          k(i * b.rows() + r, j * b.cols() + c) = f.mul(a(i, j), b(r, c));
    }
  return k;
}

template <class F>
Vector<F> kron(const F& f, const Vector<F>& a, const Vector<F>& b) {
  Vector<F> out(a.size() * b.size(), f.zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (f.is_zero(a[i])) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i * b.size() + j] = f.mul(a[i], b[j]);
  }
  return out;
}

template <class F>
Matrix<F> hstack(const Matrix<F>& a, const Matrix<F>& b) {
  if (a.rows() != b.rows()) throw StructuralError("hstack row mismatch");
  Matrix<F> m(a.field(), a.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(0, a.cols(), b);
  return m;
}

template <class F>
Matrix<F> vstack(const Matrix<F>& a, const Matrix<F>& b) {
  if (a.cols() != b.cols()) throw StructuralError("vstack column mismatch");
  Matrix<F> m(a.field(), a.rows() + b.rows(), a.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), 0, b);
  return m;
}

template <class F>
Matrix<F> random_matrix(const F& f, std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  Matrix<F> m(f, rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = f.random(rng);
  return m;
}

template <class F>
Vector<F> random_vector(const F& f, std::size_t n, std::mt19937_64& rng) {
  Vector<F> v(n);
  for (auto& e : v) e = f.random(rng);
  return v;
}

}  // namespace dgk
