#pragma once

#include <string>

#include "dgk/dg.hpp"
#include "dgk/evidence.hpp"
#include "dgk/tensor.hpp"

namespace dgk {

// Shared JSON instance format; see docs/format.md. Objects use sorted keys
// (nlohmann::json default), so dump() output is canonical.

json field_to_json(const FieldSpec& spec);
FieldSpec field_from_json(const json& j);

// Field spec of an algebra, module, morphism or instance document.
FieldSpec peek_field(const json& doc);

template <class F>
json element_to_json(const F& f, const typename F::Element& e) {
  return f.format(e);
}

template <class F>
json vector_to_json(const F& f, const Vector<F>& v) {
  json out = json::array();
  for (const auto& e : v) out.push_back(f.format(e));
  return out;
}

template <class F>
Vector<F> vector_from_json(const F& f, const json& j, std::size_t expected_size);

template <class F>
json matrix_to_json(const Matrix<F>& m);

// Rows of an empty matrix carry no column count, so the caller supplies the shape.
template <class F>
Matrix<F> matrix_from_json(const F& f, const json& j, std::size_t rows, std::size_t cols, const std::string& where);

template <class F>
json to_json(const DGAlgebra<F>& a);

template <class F>
DGAlgebra<F> algebra_from_json(const F& f, const json& j);

template <class F>
json to_json(const DGModule<F>& m);

// The embedded algebra is parsed too; pass `algebra` to share an existing
// instance when it is equal.
template <class F>
DGModule<F> module_from_json(const F& f, const json& j, AlgebraPtr<F> algebra = nullptr);

template <class F>
json to_json(const StrictMorphism<F>& mor);

template <class F>
StrictMorphism<F> morphism_from_json(const F& f, const json& j);

template <class F>
json to_json(const TensorComplex<F>& t);

template <class F>
json to_json(const QuotientSpace<F>& q);

// Counterexample bundle for a pair of modules plus an optional failing vector.
template <class F>
json pair_bundle(const DGModule<F>& m, const DGModule<F>& n, const json& extra = nullptr) {
  json b = {{"left_factor", to_json(m)}, {"right_factor", to_json(n)}};
  if (!extra.is_null()) b["failure"] = extra;
  return b;
}

}  // namespace dgk
