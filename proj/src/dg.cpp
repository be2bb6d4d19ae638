#include "dgk/dg.hpp"

#include <sstream>
#include <stdexcept>

namespace dgk {

namespace {

std::string shape(const Matrix<auto>& m) { return std::to_string(m.rows()) + "x" + std::to_string(m.cols()); }

template <class F>
void expect_shape(const Matrix<F>& m, std::size_t rows, std::size_t cols, const std::string& what) {
  if (m.rows() != rows || m.cols() != cols)
    throw StructuralError(what + " has shape " + shape(m) + ", expected " + std::to_string(rows) + "x" +
                          std::to_string(cols));
}

template <class F>
bool vec_equal(const F& f, const Vector<F>& a, const Vector<F>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!f.is_zero(f.sub(a[i], b[i]))) return false;
  return true;
}

template <class F>
Vector<F> axpy(const F& f, const Vector<F>& x, const typename F::Element& s, const Vector<F>& y) {
  Vector<F> out = x;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f.add(out[i], f.mul(s, y[i]));
  return out;
}

std::string basis_name(const char* space, int degree, std::size_t index) {
  return std::string(space) + "^" + std::to_string(degree) + "[" + std::to_string(index) + "]";
}

}  // namespace

std::string ValidationReport::summary() const {
  if (violations.empty()) return "valid";
  std::ostringstream os;
  os << violations.size() << " violation(s)";
  for (std::size_t i = 0; i < violations.size() && i < 5; ++i)
    os << (i == 0 ? ": " : "; ") << violations[i].axiom << " at " << violations[i].where;
  return os.str();
}

// ---------------------------------------------------------------- algebra

template <class F>
DGAlgebra<F> DGAlgebra<F>::zero_structure(const F& field, int min_degree, std::vector<std::size_t> dims) {
  if (min_degree > 0) throw StructuralError("algebra min_degree must be <= 0");
  if (dims.size() != static_cast<std::size_t>(1 - min_degree))
    throw StructuralError("algebra needs one dimension per degree in [min_degree, 0]");
  DGAlgebra a;
  a.field = field;
  a.min_degree = min_degree;
  a.dims = std::move(dims);
  for (int i = min_degree; i <= 0; ++i)
    for (int j = min_degree; j <= 0; ++j) a.products.emplace_back(field, a.dim(i + j), a.dim(i) * a.dim(j));
  for (int i = min_degree; i <= 0; ++i) a.differentials.emplace_back(field, a.dim(i + 1), a.dim(i));
  a.unit = zero_vector(field, a.dim(0));
  return a;
}

template <class F>
std::size_t DGAlgebra<F>::total_dim() const {
  std::size_t t = 0;
  for (auto d : dims) t += d;
  return t;
}

template <class F>
Vector<F> DGAlgebra<F>::multiply(int i, const Vector<F>& x, int j, const Vector<F>& y) const {
  if (!in_range(i) || !in_range(j) || !in_range(i + j)) return zero_vector(field, dim(i + j));
  return dgk::apply(product(i, j), kron(field, x, y));
}

template <class F>
Vector<F> DGAlgebra<F>::apply_d(int i, const Vector<F>& x) const {
  if (!in_range(i) || !in_range(i + 1)) return zero_vector(field, dim(i + 1));
  return dgk::apply(differential(i), x);
}

template <class F>
void DGAlgebra<F>::check_structure() const {
  if (min_degree > 0) throw StructuralError("algebra min_degree must be <= 0");
  if (dims.size() != static_cast<std::size_t>(1 - min_degree))
    throw StructuralError("algebra dims must cover degrees [min_degree, 0]");
  if (products.size() != dims.size() * dims.size()) throw StructuralError("algebra product table has wrong size");
  if (differentials.size() != dims.size()) throw StructuralError("algebra differential list has wrong size");
  for (int i = min_degree; i <= 0; ++i)
    for (int j = min_degree; j <= 0; ++j) {
      expect_shape(product(i, j), dim(i + j), dim(i) * dim(j),
                   "product(" + std::to_string(i) + "," + std::to_string(j) + ")");
      if (!(product(i, j).field() == field)) throw StructuralError("product matrix over a different field");
    }
  for (int i = min_degree; i <= 0; ++i) expect_shape(differential(i), dim(i + 1), dim(i), "d^" + std::to_string(i));
  if (unit.size() != dim(0)) throw StructuralError("unit must live in A^0");
}

template <class F>
DGAlgebra<F> ground_algebra(const F& field) {
  auto a = DGAlgebra<F>::zero_structure(field, 0, {1});
  a.product(0, 0)(0, 0) = field.one();
  a.unit = {field.one()};
  return a;
}

template <class F>
DGAlgebra<F> opposite(const DGAlgebra<F>& a) {
  DGAlgebra<F> op = a;
  const F& f = a.field;
  for (int i = a.min_degree; i <= 0; ++i)
    for (int j = a.min_degree; j <= 0; ++j) {
      if (!a.in_range(i + j)) continue;
      auto s = sign(f, static_cast<long long>(i) * j);
      auto& dst = op.product(i, j);
      const auto& src = a.product(j, i);
      for (std::size_t k = 0; k < a.dim(i); ++k)
        for (std::size_t l = 0; l < a.dim(j); ++l)
          for (std::size_t r = 0; r < a.dim(i + j); ++r) dst(r, k * a.dim(j) + l) = f.mul(s, src(r, l * a.dim(i) + k));
    }
  return op;
}

template <class F>
ValidationReport validate_algebra(const DGAlgebra<F>& a) {
  a.check_structure();
  const F& f = a.field;
  ValidationReport report;
  auto add = [&](std::string axiom, std::string where) { report.violations.push_back({std::move(axiom), std::move(where)}); };

  for (int i = a.min_degree; i <= -2; ++i)
    for (std::size_t k = 0; k < a.dim(i); ++k) {
      auto dd = a.apply_d(i + 1, a.apply_d(i, a.basis(i, k)));
      if (!is_zero_vector(f, dd)) add("d^2 = 0", basis_name("A", i, k));
    }

  for (int i = a.min_degree; i <= 0; ++i)
    for (int j = a.min_degree; j <= 0; ++j)
      for (std::size_t k = 0; k < a.dim(i); ++k)
        for (std::size_t l = 0; l < a.dim(j); ++l) {
          auto x = a.basis(i, k), y = a.basis(j, l);
          auto lhs = a.apply_d(i + j, a.multiply(i, x, j, y));
          auto rhs = axpy(f, a.multiply(i + 1, a.apply_d(i, x), j, y), sign(f, i), a.multiply(i, x, j + 1, a.apply_d(j, y)));
          if (!vec_equal(f, lhs, rhs)) add("Leibniz", "(" + basis_name("A", i, k) + ", " + basis_name("A", j, l) + ")");
        }

  for (int i = a.min_degree; i <= 0; ++i)
    for (int j = a.min_degree; j <= 0; ++j)
      for (int l = a.min_degree; l <= 0; ++l) {
        if (!a.in_range(i + j + l)) continue;
        for (std::size_t x = 0; x < a.dim(i); ++x)
          for (std::size_t y = 0; y < a.dim(j); ++y)
            for (std::size_t z = 0; z < a.dim(l); ++z) {
              auto ex = a.basis(i, x), ey = a.basis(j, y), ez = a.basis(l, z);
              auto left = a.multiply(i + j, a.multiply(i, ex, j, ey), l, ez);
              auto right = a.multiply(i, ex, j + l, a.multiply(j, ey, l, ez));
              if (!vec_equal(f, left, right))
                add("associativity",
                    "(" + basis_name("A", i, x) + ", " + basis_name("A", j, y) + ", " + basis_name("A", l, z) + ")");
            }
      }

  for (int i = a.min_degree; i <= 0; ++i)
    for (std::size_t k = 0; k < a.dim(i); ++k) {
      auto x = a.basis(i, k);
      if (!vec_equal(f, a.multiply(0, a.unit, i, x), x)) add("left unit", basis_name("A", i, k));
      if (!vec_equal(f, a.multiply(i, x, 0, a.unit), x)) add("right unit", basis_name("A", i, k));
    }
  return report;
}

// ---------------------------------------------------------------- modules

template <class F>
DGModule<F> DGModule<F>::zero_structure(Side side, AlgebraPtr<F> algebra, int lo, int hi, std::vector<std::size_t> dims) {
  if (!algebra) throw StructuralError("module without algebra");
  if (lo > hi) throw StructuralError("module window lo > hi");
  if (dims.size() != static_cast<std::size_t>(hi - lo + 1)) throw StructuralError("module dims must cover the window");
  DGModule m;
  m.side = side;
  m.algebra = std::move(algebra);
  m.lo = lo;
  m.hi = hi;
  m.dims = std::move(dims);
  const F& f = m.algebra->field;
  for (int i = lo; i <= hi; ++i) m.differentials.emplace_back(f, m.dim(i + 1), m.dim(i));
  for (int i = lo; i <= hi; ++i)
    for (int j = m.algebra->min_degree; j <= 0; ++j) m.actions.emplace_back(f, m.dim(i + j), m.algebra->dim(j) * m.dim(i));
  return m;
}

template <class F>
std::size_t DGModule<F>::total_dim() const {
  std::size_t t = 0;
  for (auto d : dims) t += d;
  return t;
}

template <class F>
Matrix<F> DGModule<F>::d(int i) const {
  if (in_window(i)) return differential(i);
  return Matrix<F>(field(), dim(i + 1), dim(i));
}

template <class F>
Vector<F> DGModule<F>::act(int j, const Vector<F>& a, int i, const Vector<F>& m) const {
  if (!in_window(i) || !in_window(i + j) || !algebra->in_range(j)) return zero_vector(field(), dim(i + j));
  const auto& mat = action(i, j);
  return dgk::apply(mat, side == Side::Left ? kron(field(), a, m) : kron(field(), m, a));
}

template <class F>
Matrix<F> DGModule<F>::action_by(int j, const Vector<F>& a, int i) const {
  const F& f = field();
  Matrix<F> out(f, dim(i + j), dim(i));
  if (!in_window(i) || !in_window(i + j) || !algebra->in_range(j)) return out;
  const auto& mat = action(i, j);
  const std::size_t da = algebra->dim(j), dm = dim(i);
  for (std::size_t k = 0; k < da; ++k) {
    if (f.is_zero(a[k])) continue;
    for (std::size_t m = 0; m < dm; ++m) {
      std::size_t col = side == Side::Left ? k * dm + m : m * da + k;
      for (std::size_t r = 0; r < out.rows(); ++r)
        if (!f.is_zero(mat(r, col))) out(r, m) = f.add(out(r, m), f.mul(a[k], mat(r, col)));
    }
  }
  return out;
}

template <class F>
Vector<F> DGModule<F>::apply_d(int i, const Vector<F>& v) const {
  if (!in_window(i) || !in_window(i + 1)) return zero_vector(field(), dim(i + 1));
  return dgk::apply(differential(i), v);
}

template <class F>
void DGModule<F>::check_structure() const {
  if (!algebra) throw StructuralError("module without algebra");
  algebra->check_structure();
  if (lo > hi) throw StructuralError("module window lo > hi");
  if (dims.size() != static_cast<std::size_t>(hi - lo + 1)) throw StructuralError("module dims must cover the window");
  if (differentials.size() != dims.size()) throw StructuralError("module differential list has wrong size");
  if (actions.size() != dims.size() * algebra->dims.size()) throw StructuralError("module action table has wrong size");
  for (int i = lo; i <= hi; ++i) {
    expect_shape(differential(i), dim(i + 1), dim(i), "d^" + std::to_string(i));
    for (int j = algebra->min_degree; j <= 0; ++j)
      expect_shape(action(i, j), dim(i + j), algebra->dim(j) * dim(i),
                   "action(" + std::to_string(i) + "," + std::to_string(j) + ")");
  }
}

template <class F>
ValidationReport validate_module(const DGModule<F>& m) {
  m.check_structure();
  const DGAlgebra<F>& a = *m.algebra;
  const F& f = m.field();
  ValidationReport report;
  auto add = [&](std::string axiom, std::string where) { report.violations.push_back({std::move(axiom), std::move(where)}); };
  const bool left = m.side == Side::Left;

  for (int i = m.lo; i <= m.hi - 2; ++i)
    for (std::size_t k = 0; k < m.dim(i); ++k) {
      auto e = unit_vector(f, m.dim(i), k);
      if (!is_zero_vector(f, m.apply_d(i + 1, m.apply_d(i, e)))) add("d^2 = 0", basis_name("M", i, k));
    }

  for (int i = m.lo; i <= m.hi; ++i)
    for (int j = a.min_degree; j <= 0; ++j)
      for (std::size_t k = 0; k < a.dim(j); ++k)
        for (std::size_t l = 0; l < m.dim(i); ++l) {
          auto x = a.basis(j, k);
          auto v = unit_vector(f, m.dim(i), l);
          auto lhs = m.apply_d(i + j, m.act(j, x, i, v));
          Vector<F> rhs;
          if (left) {
            // d(a·m) = d(a)·m + (-1)^{|a|} a·d(m)
            rhs = axpy(f, m.act(j + 1, a.apply_d(j, x), i, v), sign(f, j), m.act(j, x, i + 1, m.apply_d(i, v)));
          } else {
            // d(m·a) = d(m)·a + (-1)^{|m|} m·d(a)
            rhs = axpy(f, m.act(j, x, i + 1, m.apply_d(i, v)), sign(f, i), m.act(j + 1, a.apply_d(j, x), i, v));
          }
          if (!vec_equal(f, lhs, rhs))
            add("Leibniz", left ? "(" + basis_name("A", j, k) + ", " + basis_name("M", i, l) + ")"
                                : "(" + basis_name("M", i, l) + ", " + basis_name("A", j, k) + ")");
        }

  for (int i = m.lo; i <= m.hi; ++i)
    for (int j = a.min_degree; j <= 0; ++j)
      for (int l = a.min_degree; l <= 0; ++l) {
        if (!m.in_window(i + j + l)) continue;
        for (std::size_t x = 0; x < a.dim(j); ++x)
          for (std::size_t y = 0; y < a.dim(l); ++y)
            for (std::size_t z = 0; z < m.dim(i); ++z) {
              auto ea = a.basis(j, x), eb = a.basis(l, y);
              auto v = unit_vector(f, m.dim(i), z);
              Vector<F> lhs, rhs;
              if (left) {
                // (ab)·m = a·(b·m)
                lhs = m.act(j + l, a.multiply(j, ea, l, eb), i, v);
                rhs = m.act(j, ea, i + l, m.act(l, eb, i, v));
              } else {
                // (m·a)·b = m·(ab)
                lhs = m.act(l, eb, i + j, m.act(j, ea, i, v));
                rhs = m.act(j + l, a.multiply(j, ea, l, eb), i, v);
              }
              if (!vec_equal(f, lhs, rhs))
                add("action associativity",
                    "(" + basis_name("A", j, x) + ", " + basis_name("A", l, y) + ", " + basis_name("M", i, z) + ")");
            }
      }

  for (int i = m.lo; i <= m.hi; ++i)
    for (std::size_t k = 0; k < m.dim(i); ++k) {
      auto v = unit_vector(f, m.dim(i), k);
      if (!vec_equal(f, m.act(0, a.unit, i, v), v)) add("unit acts as identity", basis_name("M", i, k));
    }
  return report;
}

// ---------------------------------------------------------------- morphisms

template <class F>
Matrix<F> StrictMorphism<F>::at(int i) const {
  if (source.in_window(i)) return maps[i - source.lo];
  return Matrix<F>(source.field(), target.dim(i), source.dim(i));
}

template <class F>
Vector<F> StrictMorphism<F>::apply(int i, const Vector<F>& v) const {
  if (!source.in_window(i)) return zero_vector(source.field(), target.dim(i));
  return dgk::apply(maps[i - source.lo], v);
}

template <class F>
StrictMorphism<F> StrictMorphism<F>::zero(const DGModule<F>& source, const DGModule<F>& target) {
  StrictMorphism f{source, target, {}};
  for (int i = source.lo; i <= source.hi; ++i) f.maps.emplace_back(source.field(), target.dim(i), source.dim(i));
  return f;
}

template <class F>
StrictMorphism<F> StrictMorphism<F>::identity(const DGModule<F>& m) {
  StrictMorphism f{m, m, {}};
  for (int i = m.lo; i <= m.hi; ++i) f.maps.push_back(Matrix<F>::identity(m.field(), m.dim(i)));
  return f;
}

template <class F>
StrictMorphism<F> compose(const StrictMorphism<F>& g, const StrictMorphism<F>& f) {
  StrictMorphism<F> h{f.source, g.target, {}};
  for (int i = f.source.lo; i <= f.source.hi; ++i) h.maps.push_back(g.at(i) * f.at(i));
  return h;
}

template <class F>
ValidationReport validate_morphism(const StrictMorphism<F>& mor) {
  const auto& s = mor.source;
  const auto& t = mor.target;
  s.check_structure();
  t.check_structure();
  if (s.side != t.side) throw StructuralError("morphism between modules of different sides");
  if (!(*s.algebra == *t.algebra)) throw StructuralError("morphism between modules over different algebras");
  if (mor.maps.size() != s.dims.size()) throw StructuralError("morphism needs one map per source degree");
  for (int i = s.lo; i <= s.hi; ++i) expect_shape(mor.maps[i - s.lo], t.dim(i), s.dim(i), "f^" + std::to_string(i));
  const F& f = s.field();
  const auto& a = *s.algebra;
  ValidationReport report;
  for (int i = s.lo; i <= s.hi; ++i)
    for (std::size_t k = 0; k < s.dim(i); ++k) {
      auto v = unit_vector(f, s.dim(i), k);
      if (!vec_equal(f, mor.apply(i + 1, s.apply_d(i, v)), t.apply_d(i, mor.apply(i, v))))
        report.violations.push_back({"chain map", basis_name("M", i, k)});
      for (int j = a.min_degree; j <= 0; ++j)
        for (std::size_t l = 0; l < a.dim(j); ++l) {
          auto x = a.basis(j, l);
          if (!vec_equal(f, mor.apply(i + j, s.act(j, x, i, v)), t.act(j, x, i, mor.apply(i, v))))
            report.violations.push_back({"A-linearity", "(" + basis_name("A", j, l) + ", " + basis_name("M", i, k) + ")"});
        }
    }
  return report;
}

// ---------------------------------------------------------------- H^0(A)

template <class F>
H0Ring<F> h0_ring(const DGAlgebra<F>& a) {
  const F& f = a.field;
  H0Ring<F> r;
  Matrix<F> boundaries = a.in_range(-1) ? a.differential(-1).transpose() : Matrix<F>(f, 0, a.dim(0));
  r.space = quotient(f, a.dim(0), boundaries);
  const std::size_t n = r.dim();
  r.product = Matrix<F>(f, n, n * n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l) {
      auto prod = a.multiply(0, r.section().column_vector(k), 0, r.section().column_vector(l));
      r.product.set_column(k * n + l, r.space.project(prod));
    }
  r.unit = r.space.project(a.unit);
  return r;
}

template <class F>
ValidationReport validate_h0_ring(const H0Ring<F>& r, const DGAlgebra<F>& a) {
  const F& f = a.field;
  ValidationReport report;
  const std::size_t n = r.dim();
  auto mul = [&](const Vector<F>& x, const Vector<F>& y) { return dgk::apply(r.product, kron(f, x, y)); };
  for (std::size_t x = 0; x < n; ++x) {
    auto ex = unit_vector(f, n, x);
    if (!vec_equal(f, mul(r.unit, ex), ex) || !vec_equal(f, mul(ex, r.unit), ex))
      report.violations.push_back({"unit", basis_name("Abar", 0, x)});
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        auto ey = unit_vector(f, n, y), ez = unit_vector(f, n, z);
        if (!vec_equal(f, mul(mul(ex, ey), ez), mul(ex, mul(ey, ez))))
          report.violations.push_back({"associativity", "(" + std::to_string(x) + "," + std::to_string(y) + "," +
                                                            std::to_string(z) + ")"});
      }
  }
  for (std::size_t x = 0; x < a.dim(0); ++x)
    for (std::size_t y = 0; y < a.dim(0); ++y) {
      auto ex = a.basis(0, x), ey = a.basis(0, y);
      auto lhs = r.space.project(a.multiply(0, ex, 0, ey));
      auto rhs = mul(r.space.project(ex), r.space.project(ey));
      if (!vec_equal(f, lhs, rhs))
        report.violations.push_back({"projection multiplicative", "(" + basis_name("A", 0, x) + ", " + basis_name("A", 0, y) + ")"});
    }
  return report;
}

// ---------------------------------------------------------------- cohomology

template <class F>
bool CohomologyModule<F>::is_cocycle(const Vector<F>& z) const {
  if (z.size() != ambient_dim) return false;
  return is_zero_vector(outgoing.field(), dgk::apply(outgoing, z));
}

template <class F>
Vector<F> CohomologyModule<F>::class_of(const Vector<F>& z) const {
  if (!is_cocycle(z)) throw std::invalid_argument("class_of: vector is not a cocycle in degree " + std::to_string(degree));
  return dgk::apply(class_map, z);
}

template <class F>
Vector<F> CohomologyModule<F>::representative_of(const Vector<F>& h) const {
  return dgk::apply(representative_map, h);
}

template <class F>
CohomologyModule<F> cohomology(const DGModule<F>& m, int i, const H0Ring<F>& abar) {
  const F& f = m.field();
  CohomologyModule<F> h;
  h.side = m.side;
  h.degree = i;
  h.ambient_dim = m.dim(i);
  h.outgoing = m.d(i);
  auto ker = kernel(h.outgoing);
  h.cocycles = ker.basis;
  h.cocycle_coordinates = ker.free_columns;
  const std::size_t z = ker.free_columns.size();

  Matrix<F> incoming = m.d(i - 1);  // dim(i) x dim(i-1)
  Matrix<F> boundary_coords(f, z, incoming.cols());
  for (std::size_t k = 0; k < z; ++k)
    for (std::size_t c = 0; c < incoming.cols(); ++c) boundary_coords(k, c) = incoming(ker.free_columns[k], c);
  h.space = quotient(f, z, boundary_coords.transpose());

  Matrix<F> select(f, z, h.ambient_dim);
  for (std::size_t k = 0; k < z; ++k) select(k, ker.free_columns[k]) = f.one();
  h.class_map = h.space.projection * select;
  h.representative_map = h.cocycles.transpose() * h.space.section;

  for (std::size_t k = 0; k < abar.dim(); ++k) {
    auto act = m.action_by(0, abar.section().column_vector(k), i);
    h.h0_action.push_back(h.class_map * act * h.representative_map);
  }
  return h;
}

template <class F>
CohomologyModule<F> cohomology(const DGModule<F>& m, int i) {
  return cohomology(m, i, h0_ring(*m.algebra));
}

template <class F>
Evidence verify_cohomology(const CohomologyModule<F>& h, const DGModule<F>& m) {
  const F& f = m.field();
  const int i = h.degree;
  Evidence ev;
  const std::size_t n = h.dim();
  ev.record("section lands in cocycles", (m.d(i) * h.representative_map).is_zero(), {});
  ev.record("class kills boundaries", (h.class_map * m.d(i - 1)).is_zero(), {});
  ev.record("class after representative is identity", h.class_map * h.representative_map == Matrix<F>::identity(f, n), {});

  auto abar = h0_ring(*m.algebra);
  // b ∈ im(d^{-1}) must act by zero on H^i; A^0 must preserve boundaries.
  bool well_defined = true;
  Matrix<F> image = m.algebra->in_range(-1) ? image_basis(m.algebra->differential(-1)) : Matrix<F>(f, 0, m.algebra->dim(0));
  for (std::size_t r = 0; r < image.rows(); ++r)
    if (!(h.class_map * m.action_by(0, image.row_vector(r), i) * h.representative_map).is_zero()) well_defined = false;
  for (std::size_t k = 0; k < m.algebra->dim(0); ++k)
    if (!(h.class_map * m.action_by(0, m.algebra->basis(0, k), i) * m.d(i - 1)).is_zero()) well_defined = false;
  ev.record("abar action well defined", well_defined, {});

  bool unital = h.h0_action.size() == abar.dim();
  bool associative = unital;
  if (unital) {
    Matrix<F> unit_action(f, n, n);
    for (std::size_t k = 0; k < abar.dim(); ++k) {
      Matrix<F> scaled_action = h.h0_action[k];
      scaled_action.scale(abar.unit[k]);
      unit_action = unit_action + scaled_action;
    }
    unital = unit_action == Matrix<F>::identity(f, n);
    // Left: (xy)·h = x·(y·h). Right: h·(xy) = (h·x)·y.
    for (std::size_t x = 0; x < abar.dim() && associative; ++x)
      for (std::size_t y = 0; y < abar.dim() && associative; ++y) {
        Matrix<F> prod_action(f, n, n);
        for (std::size_t k = 0; k < abar.dim(); ++k) {
          Matrix<F> t = h.h0_action[k];
          t.scale(abar.product(k, x * abar.dim() + y));
          prod_action = prod_action + t;
        }
        Matrix<F> expected = h.side == Side::Left ? h.h0_action[x] * h.h0_action[y] : h.h0_action[y] * h.h0_action[x];
        associative = prod_action == expected;
      }
  }
  ev.record("abar action unital", unital || n == 0, {});
  ev.record("abar action associative", associative || n == 0, {});
  return ev;
}

template <class F>
std::vector<Matrix<F>> a0_action(const CohomologyModule<F>& h, const DGModule<F>& m) {
  std::vector<Matrix<F>> out;
  for (std::size_t k = 0; k < m.algebra->dim(0); ++k)
    out.push_back(h.class_map * m.action_by(0, m.algebra->basis(0, k), h.degree) * h.representative_map);
  return out;
}

template <class F>
std::vector<Matrix<F>> a0_action(const DGModule<F>& m, int i) {
  std::vector<Matrix<F>> out;
  for (std::size_t k = 0; k < m.algebra->dim(0); ++k) out.push_back(m.action_by(0, m.algebra->basis(0, k), i));
  return out;
}

template <class F>
Matrix<F> induced_on_cohomology(const StrictMorphism<F>& f, const CohomologyModule<F>& hs, const CohomologyModule<F>& ht) {
  return ht.class_map * f.at(hs.degree) * hs.representative_map;
}

template <class F>
std::optional<int> cohomology_sup(const DGModule<F>& m) {
  for (int i = m.hi; i >= m.lo; --i) {
    Matrix<F> out = m.d(i), in = m.d(i - 1);
    if (m.dim(i) > rank(out) + rank(in)) return i;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- shift, truncation, opposite

template <class F>
DGModule<F> shift(const DGModule<F>& m, int k) {
  DGModule<F> s = m;
  s.lo = m.lo - k;
  s.hi = m.hi - k;
  const F& f = m.field();
  if (k % 2 != 0)
    for (auto& d : s.differentials) d.scale(f.neg(f.one()));
  if (m.side == Side::Left && k % 2 != 0)
    for (int i = s.lo; i <= s.hi; ++i)
      for (int j = m.algebra->min_degree; j <= 0; ++j)
        if (j % 2 != 0) s.action(i, j).scale(f.neg(f.one()));
  return s;
}

template <class F>
DGModule<F> smart_truncate(const DGModule<F>& m, int j) {
  if (j >= m.hi) return m;
  const F& f = m.field();
  const auto& a = *m.algebra;
  if (j < m.lo) return DGModule<F>::zero_structure(m.side, m.algebra, j, j, {0});

  auto ker = kernel(m.differential(j));
  const std::size_t z = ker.free_columns.size();
  Matrix<F> incl = ker.basis.transpose();  // dim(j) x z

  std::vector<std::size_t> dims;
  for (int i = m.lo; i < j; ++i) dims.push_back(m.dim(i));
  dims.push_back(z);
  auto t = DGModule<F>::zero_structure(m.side, m.algebra, m.lo, j, dims);

  auto coords = [&](const Matrix<F>& into_mj) {  // rows restricted to cocycle coordinates
    Matrix<F> c(f, z, into_mj.cols());
    for (std::size_t k = 0; k < z; ++k)
      for (std::size_t col = 0; col < into_mj.cols(); ++col) c(k, col) = into_mj(ker.free_columns[k], col);
    return c;
  };

  for (int i = m.lo; i < j - 1; ++i) t.differential(i) = m.differential(i);
  if (j - 1 >= m.lo) t.differential(j - 1) = coords(m.differential(j - 1));

  for (int i = m.lo; i <= j; ++i)
    for (int jj = a.min_degree; jj <= 0; ++jj) {
      if (!t.in_window(i + jj)) continue;
      if (i < j) {
        t.action(i, jj) = m.action(i, jj);
        continue;
      }
      Matrix<F> ident = Matrix<F>::identity(f, a.dim(jj));
      Matrix<F> src = m.side == Side::Left ? m.action(j, jj) * kron(ident, incl) : m.action(j, jj) * kron(incl, ident);
      t.action(i, jj) = jj == 0 ? coords(src) : src;
    }
  return t;
}

template <class F>
StrictMorphism<F> smart_truncation_inclusion(const DGModule<F>& m, int j) {
  DGModule<F> t = smart_truncate(m, j);
  if (j >= m.hi) return StrictMorphism<F>::identity(m);
  if (j < m.lo) return StrictMorphism<F>::zero(t, m);
  StrictMorphism<F> inc = StrictMorphism<F>::zero(t, m);
  for (int i = m.lo; i < j; ++i) inc.maps[i - t.lo] = Matrix<F>::identity(m.field(), m.dim(i));
  inc.maps[j - t.lo] = kernel_basis(m.differential(j)).transpose();
  return inc;
}

template <class F>
StrictMorphism<F> smart_truncation_map(const StrictMorphism<F>& g, int j) {
  const auto& s = g.source;
  const auto& t = g.target;
  auto ts = smart_truncate(s, j), tt = smart_truncate(t, j);
  auto out = StrictMorphism<F>::zero(ts, tt);
  const F& f = s.field();
  for (int i = ts.lo; i <= ts.hi; ++i) {
    if (i < j) {
      out.maps[i - ts.lo] = g.at(i);
      continue;
    }
    // i == j: cocycles of s in, cocycle coordinates of t out
    Matrix<F> in = j >= s.hi ? Matrix<F>::identity(f, s.dim(j)) : kernel_basis(s.d(j)).transpose();
    Matrix<F> image = g.at(j) * in;
    if (j >= t.hi) {
      out.maps[i - ts.lo] = image;
    } else {
      auto ker = kernel(t.d(j));
      Matrix<F> coords(f, ker.free_columns.size(), image.cols());
      for (std::size_t k = 0; k < ker.free_columns.size(); ++k)
        for (std::size_t c = 0; c < image.cols(); ++c) coords(k, c) = image(ker.free_columns[k], c);
      out.maps[i - ts.lo] = coords;
    }
  }
  return out;
}

template <class F>
DGModule<F> to_opposite(const DGModule<F>& m, AlgebraPtr<F> opposite_algebra) {
  const F& f = m.field();
  const auto& a = *m.algebra;
  Side side = m.side == Side::Left ? Side::Right : Side::Left;
  auto out = DGModule<F>::zero_structure(side, std::move(opposite_algebra), m.lo, m.hi, m.dims);
  out.differentials = m.differentials;
  for (int i = m.lo; i <= m.hi; ++i)
    for (int j = a.min_degree; j <= 0; ++j) {
      if (!m.in_window(i + j)) continue;
      auto s = sign(f, static_cast<long long>(i) * j);
      const auto& src = m.action(i, j);
      auto& dst = out.action(i, j);
      const std::size_t da = a.dim(j), dm = m.dim(i);
      for (std::size_t x = 0; x < da; ++x)
        for (std::size_t y = 0; y < dm; ++y) {
          std::size_t src_col = m.side == Side::Left ? x * dm + y : y * da + x;
          std::size_t dst_col = m.side == Side::Left ? y * da + x : x * dm + y;
          for (std::size_t r = 0; r < dst.rows(); ++r) dst(r, dst_col) = f.mul(s, src(r, src_col));
        }
    }
  return out;
}

#define DGK_INSTANTIATE(F)                                                                                       \
  template struct DGAlgebra<F>;                                                                                  \
  template struct DGModule<F>;                                                                                   \
  template struct StrictMorphism<F>;                                                                             \
  template struct CohomologyModule<F>;                                                                           \
  template DGAlgebra<F> ground_algebra<F>(const F&);                                                             \
  template DGAlgebra<F> opposite<F>(const DGAlgebra<F>&);                                                        \
  template StrictMorphism<F> compose<F>(const StrictMorphism<F>&, const StrictMorphism<F>&);                     \
  template ValidationReport validate_algebra<F>(const DGAlgebra<F>&);                                            \
  template ValidationReport validate_module<F>(const DGModule<F>&);                                              \
  template ValidationReport validate_morphism<F>(const StrictMorphism<F>&);                                      \
  template H0Ring<F> h0_ring<F>(const DGAlgebra<F>&);                                                            \
  template ValidationReport validate_h0_ring<F>(const H0Ring<F>&, const DGAlgebra<F>&);                          \
  template CohomologyModule<F> cohomology<F>(const DGModule<F>&, int);                                           \
  template CohomologyModule<F> cohomology<F>(const DGModule<F>&, int, const H0Ring<F>&);                         \
  template Evidence verify_cohomology<F>(const CohomologyModule<F>&, const DGModule<F>&);                        \
  template std::vector<Matrix<F>> a0_action<F>(const CohomologyModule<F>&, const DGModule<F>&);                  \
  template std::vector<Matrix<F>> a0_action<F>(const DGModule<F>&, int);                                         \
  template Matrix<F> induced_on_cohomology<F>(const StrictMorphism<F>&, const CohomologyModule<F>&,              \
                                              const CohomologyModule<F>&);                                       \
  template std::optional<int> cohomology_sup<F>(const DGModule<F>&);                                             \
  template DGModule<F> shift<F>(const DGModule<F>&, int);                                                        \
  template DGModule<F> smart_truncate<F>(const DGModule<F>&, int);                                               \
  template StrictMorphism<F> smart_truncation_inclusion<F>(const DGModule<F>&, int);                             \
  template StrictMorphism<F> smart_truncation_map<F>(const StrictMorphism<F>&, int);                               \
  template DGModule<F> to_opposite<F>(const DGModule<F>&, AlgebraPtr<F>);
DGK_FOR_EACH_FIELD(DGK_INSTANTIATE)
#undef DGK_INSTANTIATE

}  // namespace dgk
