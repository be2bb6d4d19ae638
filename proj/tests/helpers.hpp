#pragma once

#include <doctest.h>

#include <initializer_list>
#include <map>
#include <memory>

#include "dgk/dg.hpp"
#include "dgk/genlab.hpp"

namespace testing {

using namespace dgk;

template <class F>
Matrix<F> mat(const F& f, std::initializer_list<std::initializer_list<long>> rows) {
  std::size_t cols = rows.size() ? rows.begin()->size() : 0;
  Matrix<F> m(f, rows.size(), cols);
  std::size_t r = 0;
  for (const auto& row : rows) {
    std::size_t c = 0;
    for (long v : row) m(r, c++) = f.from_int(v);
    ++r;
  }
  return m;
}

template <class F>
Vector<F> vec(const F& f, std::initializer_list<long> values) {
  Vector<F> v;
  for (long x : values) v.push_back(f.from_int(x));
  return v;
}

template <class F>
AlgebraPtr<F> ground(const F& f) {
  return std::make_shared<const DGAlgebra<F>>(ground_algebra(f));
}

template <class F>
AlgebraPtr<F> family(const F& f, const std::string& name) {
  return make_family(f, name).algebra;
}

// A complex of vector spaces as a module over the ground field. `diffs`
// maps a degree i to d^i.
template <class F>
DGModule<F> ground_complex(const F& f, Side side, int lo, std::vector<std::size_t> dims,
                           const std::map<int, Matrix<F>>& diffs = {}) {
  const int hi = lo + static_cast<int>(dims.size()) - 1;
  auto m = DGModule<F>::zero_structure(side, ground(f), lo, hi, dims);
  for (int i = lo; i <= hi; ++i) m.action(i, 0) = Matrix<F>::identity(f, m.dim(i));
  for (const auto& [i, d] : diffs) m.differential(i) = d;
  return m;
}

template <class F>
bool same_span(const Matrix<F>& a, const Matrix<F>& b) {
  return rank(a) == rank(b) && rank(vstack(a, b)) == rank(a);
}

}  // namespace testing
