#include "dgk/serialize.hpp"

#include <memory>

namespace dgk {

json field_to_json(const FieldSpec& spec) {
  if (spec.kind == FieldKind::Rationals) return {{"kind", "rational"}};
  return {{"kind", "prime"}, {"p", spec.p}};
}

FieldSpec field_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind")) throw StructuralError("field: expected an object with 'kind'");
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "rational") return FieldSpec::rationals();
  if (kind == "prime") {
    if (!j.contains("p") || !j.at("p").is_number_unsigned()) throw StructuralError("field: prime field needs integer 'p'");
    auto p = j.at("p").get<std::uint64_t>();
    if (p >= (1ULL << 31) || !is_prime(p)) throw StructuralError("field: p = " + std::to_string(p) + " is not a prime below 2^31");
    return FieldSpec::prime(static_cast<std::uint32_t>(p));
  }
  throw StructuralError("field: unknown kind '" + kind + "'");
}

FieldSpec peek_field(const json& doc) {
  if (!doc.is_object()) throw StructuralError("document root must be an object");
  if (doc.contains("field")) return field_from_json(doc.at("field"));
  for (const char* key : {"algebra", "source", "left_factor"})
    if (doc.contains(key)) return peek_field(doc.at(key));
  throw StructuralError("document carries no field specification");
}

namespace {

const json& member(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw StructuralError(where + ": missing '" + key + "'");
  return j.at(key);
}

int int_member(const json& j, const char* key, const std::string& where) {
  const auto& v = member(j, key, where);
  if (!v.is_number_integer()) throw StructuralError(where + ": '" + key + "' must be an integer");
  return v.get<int>();
}

std::string element_string(const json& e, const std::string& where) {
  if (e.is_string()) return e.get<std::string>();
  if (e.is_number_integer()) return std::to_string(e.get<long long>());
  throw StructuralError(where + ": field elements must be strings");
}

json dims_to_json(int lo, const std::vector<std::size_t>& dims) {
  json out = json::array();
  for (std::size_t k = 0; k < dims.size(); ++k) out.push_back({{"degree", lo + static_cast<int>(k)}, {"dim", dims[k]}});
  return out;
}

std::vector<std::size_t> dims_from_json(const json& j, int lo, int hi, const std::string& where) {
  if (!j.is_array()) throw StructuralError(where + ": 'dims' must be an array");
  std::vector<std::size_t> dims(static_cast<std::size_t>(hi - lo + 1), 0);
  std::vector<bool> seen(dims.size(), false);
  for (const auto& e : j) {
    int deg = int_member(e, "degree", where + ".dims");
    const auto& d = member(e, "dim", where + ".dims");
    if (!d.is_number_unsigned() && !(d.is_number_integer() && d.get<long long>() >= 0))
      throw StructuralError(where + ".dims: 'dim' must be a nonnegative integer");
    if (deg < lo || deg > hi) throw StructuralError(where + ".dims: degree " + std::to_string(deg) + " outside the window");
    auto idx = static_cast<std::size_t>(deg - lo);
    if (seen[idx]) throw StructuralError(where + ".dims: degree " + std::to_string(deg) + " listed twice");
    seen[idx] = true;
    dims[idx] = d.get<std::size_t>();
  }
  return dims;
}

}  // namespace

template <class F>
Vector<F> vector_from_json(const F& f, const json& j, std::size_t expected_size) {
  if (!j.is_array() || j.size() != expected_size)
    throw StructuralError("vector: expected an array of " + std::to_string(expected_size) + " elements");
  Vector<F> v;
  for (const auto& e : j) v.push_back(f.parse(element_string(e, "vector")));
  return v;
}

template <class F>
json matrix_to_json(const Matrix<F>& m) {
  json out = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m.field().format(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

template <class F>
Matrix<F> matrix_from_json(const F& f, const json& j, std::size_t rows, std::size_t cols, const std::string& where) {
  if (!j.is_array()) throw StructuralError(where + ": matrix must be a nested array");
  if (j.size() != rows)
    throw StructuralError(where + ": expected " + std::to_string(rows) + " rows, found " + std::to_string(j.size()));
  Matrix<F> m(f, rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const auto& row = j[r];
    if (!row.is_array() || row.size() != cols)
      throw StructuralError(where + ": row " + std::to_string(r) + " must have " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c) {
      try {
        m(r, c) = f.parse(element_string(row[c], where));
      } catch (const StructuralError& e) {
        throw StructuralError(where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]: " + e.what());
      }
    }
  }
  return m;
}

template <class F>
json to_json(const DGAlgebra<F>& a) {
  json products = json::array();
  for (int i = a.min_degree; i <= 0; ++i)
    for (int j = a.min_degree; j <= 0; ++j)
      if (!a.product(i, j).empty())
        products.push_back({{"left_degree", i}, {"right_degree", j}, {"matrix", matrix_to_json(a.product(i, j))}});
  json diffs = json::array();
  for (int i = a.min_degree; i < 0; ++i)
    if (!a.differential(i).empty()) diffs.push_back({{"degree", i}, {"matrix", matrix_to_json(a.differential(i))}});
  return {{"type", "dg_algebra"},
          {"field", field_to_json(a.field.spec())},
          {"min_degree", a.min_degree},
          {"dims", dims_to_json(a.min_degree, a.dims)},
          {"products", products},
          {"differentials", diffs},
          {"unit", vector_to_json(a.field, a.unit)}};
}

template <class F>
DGAlgebra<F> algebra_from_json(const F& f, const json& j) {
  const std::string where = "algebra";
  if (j.contains("type") && j.at("type") != "dg_algebra") throw StructuralError(where + ": type must be 'dg_algebra'");
  if (!(field_from_json(member(j, "field", where)) == f.spec())) throw StructuralError(where + ": field mismatch");
  int min_degree = int_member(j, "min_degree", where);
  if (min_degree > 0) throw StructuralError(where + ": min_degree must be <= 0");
  auto a = DGAlgebra<F>::zero_structure(f, min_degree, dims_from_json(member(j, "dims", where), min_degree, 0, where));
  for (const auto& e : member(j, "products", where)) {
    int i = int_member(e, "left_degree", where + ".products"), k = int_member(e, "right_degree", where + ".products");
    if (!a.in_range(i) || !a.in_range(k)) throw StructuralError(where + ".products: degree out of range");
    const std::string at = where + ".products(" + std::to_string(i) + "," + std::to_string(k) + ")";
    a.product(i, k) = matrix_from_json(f, member(e, "matrix", at), a.dim(i + k), a.dim(i) * a.dim(k), at);
  }
  for (const auto& e : member(j, "differentials", where)) {
    int i = int_member(e, "degree", where + ".differentials");
    if (!a.in_range(i)) throw StructuralError(where + ".differentials: degree out of range");
    const std::string at = where + ".differentials(" + std::to_string(i) + ")";
    a.differential(i) = matrix_from_json(f, member(e, "matrix", at), a.dim(i + 1), a.dim(i), at);
  }
  a.unit = vector_from_json(f, member(j, "unit", where), a.dim(0));
  a.check_structure();
  return a;
}

template <class F>
json to_json(const DGModule<F>& m) {
  json diffs = json::array();
  for (int i = m.lo; i < m.hi; ++i)
    if (!m.differential(i).empty()) diffs.push_back({{"degree", i}, {"matrix", matrix_to_json(m.differential(i))}});
  json actions = json::array();
  for (int i = m.lo; i <= m.hi; ++i)
    for (int j = m.algebra->min_degree; j <= 0; ++j)
      if (!m.action(i, j).empty())
        actions.push_back({{"module_degree", i}, {"algebra_degree", j}, {"matrix", matrix_to_json(m.action(i, j))}});
  return {{"type", "dg_module"},
          {"side", to_string(m.side)},
          {"algebra", to_json(*m.algebra)},
          {"window", {{"lo", m.lo}, {"hi", m.hi}}},
          {"dims", dims_to_json(m.lo, m.dims)},
          {"differentials", diffs},
          {"actions", actions}};
}

template <class F>
DGModule<F> module_from_json(const F& f, const json& j, AlgebraPtr<F> algebra) {
  const std::string where = "module";
  if (j.contains("type") && j.at("type") != "dg_module") throw StructuralError(where + ": type must be 'dg_module'");
  auto side_name = member(j, "side", where).get<std::string>();
  if (side_name != "left" && side_name != "right") throw StructuralError(where + ": side must be 'left' or 'right'");
  auto parsed = std::make_shared<const DGAlgebra<F>>(algebra_from_json(f, member(j, "algebra", where)));
  if (!algebra || !(*algebra == *parsed)) algebra = parsed;
  const auto& window = member(j, "window", where);
  int lo = int_member(window, "lo", where + ".window"), hi = int_member(window, "hi", where + ".window");
  if (lo > hi) throw StructuralError(where + ": window lo > hi");
  auto m = DGModule<F>::zero_structure(side_name == "left" ? Side::Left : Side::Right, algebra, lo, hi,
                                       dims_from_json(member(j, "dims", where), lo, hi, where));
  for (const auto& e : member(j, "differentials", where)) {
    int i = int_member(e, "degree", where + ".differentials");
    if (!m.in_window(i)) throw StructuralError(where + ".differentials: degree outside the window");
    const std::string at = where + ".differentials(" + std::to_string(i) + ")";
    m.differential(i) = matrix_from_json(f, member(e, "matrix", at), m.dim(i + 1), m.dim(i), at);
  }
  for (const auto& e : member(j, "actions", where)) {
    int i = int_member(e, "module_degree", where + ".actions"), k = int_member(e, "algebra_degree", where + ".actions");
    if (!m.in_window(i) || !algebra->in_range(k)) throw StructuralError(where + ".actions: degree out of range");
    const std::string at = where + ".actions(" + std::to_string(i) + "," + std::to_string(k) + ")";
    m.action(i, k) = matrix_from_json(f, member(e, "matrix", at), m.dim(i + k), algebra->dim(k) * m.dim(i), at);
  }
  m.check_structure();
  return m;
}

template <class F>
json to_json(const StrictMorphism<F>& mor) {
  json maps = json::array();
  for (int i = mor.source.lo; i <= mor.source.hi; ++i)
    if (!mor.maps[i - mor.source.lo].empty())
      maps.push_back({{"degree", i}, {"matrix", matrix_to_json(mor.maps[i - mor.source.lo])}});
  return {{"type", "strict_morphism"}, {"source", to_json(mor.source)}, {"target", to_json(mor.target)}, {"maps", maps}};
}

template <class F>
StrictMorphism<F> morphism_from_json(const F& f, const json& j) {
  const std::string where = "morphism";
  auto source = module_from_json(f, member(j, "source", where));
  auto target = module_from_json(f, member(j, "target", where), source.algebra);
  auto mor = StrictMorphism<F>::zero(source, target);
  for (const auto& e : member(j, "maps", where)) {
    int i = int_member(e, "degree", where + ".maps");
    if (!source.in_window(i)) throw StructuralError(where + ".maps: degree outside the source window");
    const std::string at = where + ".maps(" + std::to_string(i) + ")";
    mor.maps[i - source.lo] = matrix_from_json(f, member(e, "matrix", at), target.dim(i), source.dim(i), at);
  }
  return mor;
}

template <class F>
json to_json(const QuotientSpace<F>& q) {
  json basis = json::array();
  for (auto c : q.basis_columns) basis.push_back(c);
  return {{"ambient_dim", q.ambient_dim},
          {"quotient_dim", q.quotient_dim},
          {"basis_columns", basis},
          {"projection", matrix_to_json(q.projection)},
          {"section", matrix_to_json(q.section)}};
}

template <class F>
json to_json(const TensorComplex<F>& t) {
  json degrees = json::array();
  for (const auto& d : t.degrees) {
    json blocks = json::array();
    for (const auto& b : d.blocks)
      blocks.push_back({{"left_degree", b.left_degree}, {"right_degree", b.right_degree}, {"offset", b.offset}});
    degrees.push_back({{"degree", d.degree}, {"free_dim", d.free_dim}, {"blocks", blocks}, {"quotient", to_json(d.space)}});
  }
  json diffs = json::array();
  for (int n = t.lo; n < t.hi; ++n) diffs.push_back({{"degree", n}, {"matrix", matrix_to_json(t.differentials[n - t.lo])}});
  return {{"type", "tensor_complex"},
          {"field", field_to_json(t.left.field().spec())},
          {"lo", t.lo},
          {"hi", t.hi},
          {"degrees", degrees},
          {"differentials", diffs}};
}

#define DGK_INSTANTIATE(F)                                                                                   \
  template Vector<F> vector_from_json<F>(const F&, const json&, std::size_t);                                \
  template json matrix_to_json<F>(const Matrix<F>&);                                                         \
  template Matrix<F> matrix_from_json<F>(const F&, const json&, std::size_t, std::size_t, const std::string&); \
  template json to_json<F>(const DGAlgebra<F>&);                                                             \
  template DGAlgebra<F> algebra_from_json<F>(const F&, const json&);                                         \
  template json to_json<F>(const DGModule<F>&);                                                              \
  template DGModule<F> module_from_json<F>(const F&, const json&, AlgebraPtr<F>);                            \
  template json to_json<F>(const StrictMorphism<F>&);                                                       \
  template StrictMorphism<F> morphism_from_json<F>(const F&, const json&);                                   \
  template json to_json<F>(const QuotientSpace<F>&);                                                         \
  template json to_json<F>(const TensorComplex<F>&);
DGK_FOR_EACH_FIELD(DGK_INSTANTIATE)
#undef DGK_INSTANTIATE

}  // namespace dgk
