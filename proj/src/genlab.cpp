#include "dgk/genlab.hpp"

#include <algorithm>
#include <memory>
#include <optional>

#include "dgk/semifree.hpp"
#include "dgk/serialize.hpp"

namespace dgk {

// ---------------------------------------------------------------- algebras

template <class F>
DGAlgebra<F> make_exterior(const F& f, int degree, bool contractible) {
  if (degree >= 0) throw StructuralError("exterior generator must have negative degree");
  if (contractible && degree != -1) throw StructuralError("dε = 1 needs |ε| = -1");
  std::vector<std::size_t> dims(static_cast<std::size_t>(1 - degree), 0);
  dims.front() = 1;
  dims.back() = 1;
  auto a = DGAlgebra<F>::zero_structure(f, degree, dims);
  a.product(0, 0)(0, 0) = f.one();
  a.product(0, degree)(0, 0) = f.one();
  a.product(degree, 0)(0, 0) = f.one();
  if (contractible) a.differential(-1)(0, 0) = f.one();
  a.unit = {f.one()};
  return a;
}

template <class F>
DGAlgebra<F> make_ordinary(const F& f, const Matrix<F>& product, const Vector<F>& unit) {
  const std::size_t n = unit.size();
  if (product.rows() != n || product.cols() != n * n)
    throw StructuralError("structure constants must be a dim x dim^2 matrix");
  auto a = DGAlgebra<F>::zero_structure(f, 0, {n});
  a.product(0, 0) = product;
  a.unit = unit;
  auto report = validate_algebra(a);
  if (!report.ok()) throw StructuralError("structure constants are not a unital associative algebra: " + report.summary());
  return a;
}

template <class F>
DGAlgebra<F> make_dual_numbers(const F& f) {
  Matrix<F> prod(f, 2, 4);
  prod(0, 0) = f.one();  // 1·1
  prod(1, 1) = f.one();  // 1·t
  prod(1, 2) = f.one();  // t·1
  return make_ordinary(f, prod, Vector<F>{f.one(), f.zero()});
}

template <class F>
DGAlgebra<F> make_upper_triangular(const F& f) {
  // e11 = 0, e12 = 1, e22 = 2
  Matrix<F> prod(f, 3, 9);
  prod(0, 0 * 3 + 0) = f.one();
  prod(1, 0 * 3 + 1) = f.one();
  prod(1, 1 * 3 + 2) = f.one();
  prod(2, 2 * 3 + 2) = f.one();
  return make_ordinary(f, prod, Vector<F>{f.one(), f.zero(), f.one()});
}

template <class F>
DGAlgebra<F> make_koszul_like(const F& f, int depth) {
  if (depth < 0) throw StructuralError("koszul-like depth must be >= 0");
  const std::size_t n = static_cast<std::size_t>(depth) + 1;
  auto a = DGAlgebra<F>::zero_structure(f, -1, {n, n});
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; x + y < n; ++y) {
      a.product(0, 0)(x + y, x * n + y) = f.one();
      a.product(0, -1)(x + y, x * n + y) = f.one();
      a.product(-1, 0)(x + y, x * n + y) = f.one();
    }
  for (std::size_t x = 0; x + 1 < n; ++x) a.differential(-1)(x + 1, x) = f.one();
  a.unit = unit_vector(f, n, 0);
  return a;
}

namespace {

// Basis of (A⊗B)^n: blocks (p, n-p) ordered by p, inside a block a*dim B^q + b.
template <class F>
struct TensorAlgebraIndex {
  const DGAlgebra<F>& a;
  const DGAlgebra<F>& b;

  std::size_t dim(int n) const {
    std::size_t total = 0;
    for (int p = a.min_degree; p <= 0; ++p) total += a.dim(p) * b.dim(n - p);
    return total;
  }
  std::size_t offset(int n, int p) const {
    std::size_t total = 0;
    for (int r = a.min_degree; r < p; ++r) total += a.dim(r) * b.dim(n - r);
    return total;
  }
};

}  // namespace

template <class F>
DGAlgebra<F> tensor_algebras(const DGAlgebra<F>& a, const DGAlgebra<F>& b) {
  const F& f = a.field;
  TensorAlgebraIndex<F> idx{a, b};
  const int lo = a.min_degree + b.min_degree;
  std::vector<std::size_t> dims;
  for (int n = lo; n <= 0; ++n) dims.push_back(idx.dim(n));
  auto t = DGAlgebra<F>::zero_structure(f, lo, dims);

  for (int n = lo; n <= 0; ++n)
    for (int n2 = lo; n2 <= 0; ++n2) {
      if (n + n2 < lo) continue;
      auto& prod = t.product(n, n2);
      const std::size_t d2 = t.dim(n2);
      for (int p = a.min_degree; p <= 0; ++p) {
        const int q = n - p;
        if (a.dim(p) * b.dim(q) == 0) continue;
        for (int p2 = a.min_degree; p2 <= 0; ++p2) {
          const int q2 = n2 - p2;
          if (a.dim(p2) * b.dim(q2) == 0 || !a.in_range(p + p2) || !b.in_range(q + q2)) continue;
          const auto s = sign(f, static_cast<long long>(q) * p2);
          const auto& pa = a.product(p, p2);
          const auto& pb = b.product(q, q2);
          const std::size_t out_off = idx.offset(n + n2, p + p2);
          const std::size_t bq = b.dim(q), bq2 = b.dim(q2), bqq = b.dim(q + q2);
          for (std::size_t x = 0; x < a.dim(p); ++x)
            for (std::size_t y = 0; y < bq; ++y)
              for (std::size_t x2 = 0; x2 < a.dim(p2); ++x2)
                for (std::size_t y2 = 0; y2 < bq2; ++y2) {
                  const std::size_t col = (idx.offset(n, p) + x * bq + y) * d2 + idx.offset(n2, p2) + x2 * bq2 + y2;
                  for (std::size_t r = 0; r < a.dim(p + p2); ++r) {
                    const auto& ca = pa(r, x * a.dim(p2) + x2);
                    if (f.is_zero(ca)) continue;
                    for (std::size_t r2 = 0; r2 < bqq; ++r2) {
                      const auto& cb = pb(r2, y * bq2 + y2);
                      if (!f.is_zero(cb)) prod(out_off + r * bqq + r2, col) = f.mul(s, f.mul(ca, cb));
                    }
                  }
                }
        }
      }
    }

  for (int n = lo; n < 0; ++n) {
    auto& d = t.differential(n);
    for (int p = a.min_degree; p <= 0; ++p) {
      const int q = n - p;
      if (a.dim(p) * b.dim(q) == 0) continue;
      const std::size_t src = idx.offset(n, p);
      Matrix<F> da = kron(a.differential(p), Matrix<F>::identity(f, b.dim(q)));
      if (p < 0 && da.rows() > 0) {
        const std::size_t off = idx.offset(n + 1, p + 1);
        for (std::size_t r = 0; r < da.rows(); ++r)
          for (std::size_t c = 0; c < da.cols(); ++c) d(off + r, src + c) = f.add(d(off + r, src + c), da(r, c));
      }
      if (q < 0) {
        Matrix<F> db = kron(Matrix<F>::identity(f, a.dim(p)), b.differential(q));
        db.scale(sign(f, p));
        const std::size_t off = idx.offset(n + 1, p);
        for (std::size_t r = 0; r < db.rows(); ++r)
          for (std::size_t c = 0; c < db.cols(); ++c) d(off + r, src + c) = f.add(d(off + r, src + c), db(r, c));
      }
    }
  }
  t.unit = kron(f, a.unit, b.unit);
  return t;
}

std::vector<std::string> family_names() {
  return {"ground",       "exterior",      "contractible", "dual_numbers",  "upper_triangular",
          "koszul",       "exterior_dual", "exterior_pair", "exterior_even", "triangular_exterior"};
}

template <class F>
AlgebraFamily<F> make_family(const F& f, const std::string& name) {
  auto wrap = [&](DGAlgebra<F> a, std::vector<Vector<F>> augs) {
    return AlgebraFamily<F>{name, std::make_shared<const DGAlgebra<F>>(std::move(a)), std::move(augs)};
  };
  const auto one = f.one(), zero = f.zero();
  if (name == "ground") return wrap(ground_algebra(f), {{one}});
  if (name == "exterior") return wrap(make_exterior(f), {{one}});
  if (name == "contractible") return wrap(make_exterior(f, -1, true), {});
  if (name == "dual_numbers") return wrap(make_dual_numbers(f), {{one, zero}});
  if (name == "upper_triangular") return wrap(make_upper_triangular(f), {{one, zero, zero}, {zero, zero, one}});
  if (name == "koszul") return wrap(make_koszul_like(f, 1), {{one, zero}});
  if (name == "exterior_dual") return wrap(tensor_algebras(make_exterior(f), make_dual_numbers(f)), {{one, zero}});
  if (name == "exterior_pair") return wrap(tensor_algebras(make_exterior(f), make_exterior(f)), {{one}});
  if (name == "exterior_even") return wrap(make_exterior(f, -2), {{one}});
  if (name == "triangular_exterior")
    return wrap(tensor_algebras(make_upper_triangular(f), make_exterior(f)), {{one, zero, zero}, {zero, zero, one}});
  throw StructuralError("unknown algebra family '" + name + "'");
}

// ---------------------------------------------------------------- modules

template <class F>
DGModule<F> trivial_module(AlgebraPtr<F> a, const Vector<F>& augmentation, Side side, int degree) {
  if (augmentation.size() != a->dim(0)) throw StructuralError("augmentation has the wrong length");
  auto m = DGModule<F>::zero_structure(side, a, degree, degree, {1});
  for (std::size_t k = 0; k < a->dim(0); ++k) m.action(degree, 0)(0, k) = augmentation[k];
  return m;
}

template <class F>
DGModule<F> free_rank_one(AlgebraPtr<F> a, Side side, int top) {
  SemiFreeBuilder<F> b(side, a);
  b.add(top, {});
  return b.module();
}

namespace {

template <class F>
Matrix<F> action_or_zero(const DGModule<F>& m, int i, int j) {
  const auto& a = *m.algebra;
  if (m.in_window(i) && m.in_window(i + j) && a.in_range(j)) return m.action(i, j);
  return Matrix<F>(m.field(), m.dim(i + j), a.dim(j) * m.dim(i));
}

// Column of the action matrix for (algebra basis e, module basis v).
inline std::size_t action_column(Side side, std::size_t e, std::size_t v, std::size_t dim_a, std::size_t dim_m) {
  return side == Side::Left ? e * dim_m + v : v * dim_a + e;
}

// Places the action matrix `src` of a summand (module dims sm -> tm) into the
// action matrix `dst` of a sum (dims dm -> dt) at offsets (s_off, t_off).
template <class F>
void embed_action(Matrix<F>& dst, const Matrix<F>& src, Side side, std::size_t dim_a, std::size_t sm, std::size_t dm,
                  std::size_t s_off, std::size_t t_off, const typename F::Element& scale) {
  const F& f = dst.field();
  for (std::size_t e = 0; e < dim_a; ++e)
    for (std::size_t v = 0; v < sm; ++v) {
      const std::size_t sc = action_column(side, e, v, dim_a, sm);
      const std::size_t dc = action_column(side, e, s_off + v, dim_a, dm);
      for (std::size_t r = 0; r < src.rows(); ++r)
        if (!f.is_zero(src(r, sc))) dst(t_off + r, dc) = f.mul(scale, src(r, sc));
    }
}

template <class F>
void check_same_base(const DGModule<F>& x, const DGModule<F>& y) {
  if (x.side != y.side) throw StructuralError("modules on different sides");
  if (x.algebra != y.algebra && !(*x.algebra == *y.algebra)) throw StructuralError("modules over different algebras");
}

}  // namespace

template <class F>
DGModule<F> direct_sum(const DGModule<F>& x, const DGModule<F>& y) {
  check_same_base(x, y);
  const F& f = x.field();
  const auto& a = *x.algebra;
  const int lo = std::min(x.lo, y.lo), hi = std::max(x.hi, y.hi);
  std::vector<std::size_t> dims;
  for (int i = lo; i <= hi; ++i) dims.push_back(x.dim(i) + y.dim(i));
  auto s = DGModule<F>::zero_structure(x.side, x.algebra, lo, hi, dims);
  for (int i = lo; i < hi; ++i) {
    s.differential(i).set_block(0, 0, x.d(i));
    s.differential(i).set_block(x.dim(i + 1), x.dim(i), y.d(i));
  }
  for (int i = lo; i <= hi; ++i)
    for (int j = a.min_degree; j <= 0; ++j) {
      if (!s.in_window(i + j)) continue;
      auto& act = s.action(i, j);
      embed_action(act, action_or_zero(x, i, j), x.side, a.dim(j), x.dim(i), s.dim(i), 0, 0, f.one());
      embed_action(act, action_or_zero(y, i, j), x.side, a.dim(j), y.dim(i), s.dim(i), x.dim(i), x.dim(i + j), f.one());
    }
  return s;
}

template <class F>
StrictMorphism<F> sum_inclusion(const DGModule<F>& x, const DGModule<F>& y, int which) {
  auto s = direct_sum(x, y);
  const auto& part = which == 0 ? x : y;
  auto inc = StrictMorphism<F>::zero(part, s);
  for (int i = part.lo; i <= part.hi; ++i)
    inc.maps[i - part.lo].set_block(which == 0 ? 0 : x.dim(i), 0, Matrix<F>::identity(x.field(), part.dim(i)));
  return inc;
}

template <class F>
StrictMorphism<F> sum_projection(const DGModule<F>& x, const DGModule<F>& y, int which) {
  auto s = direct_sum(x, y);
  const auto& part = which == 0 ? x : y;
  auto proj = StrictMorphism<F>::zero(s, part);
  for (int i = s.lo; i <= s.hi; ++i)
    if (part.dim(i) > 0)
      proj.maps[i - s.lo].set_block(0, which == 0 ? 0 : x.dim(i), Matrix<F>::identity(x.field(), part.dim(i)));
  return proj;
}

template <class F>
DGModule<F> mapping_cone(const StrictMorphism<F>& mor) {
  const auto& m = mor.source;
  const auto& t = mor.target;
  check_same_base(m, t);
  const F& f = m.field();
  const auto& a = *m.algebra;
  const int lo = std::min(m.lo - 1, t.lo), hi = std::max(m.hi - 1, t.hi);
  std::vector<std::size_t> dims;
  for (int i = lo; i <= hi; ++i) dims.push_back(m.dim(i + 1) + t.dim(i));
  auto c = DGModule<F>::zero_structure(m.side, m.algebra, lo, hi, dims);
  for (int i = lo; i < hi; ++i) {
    Matrix<F> dm = m.d(i + 1);
    dm.scale(f.neg(f.one()));
    auto& d = c.differential(i);
    d.set_block(0, 0, dm);
    d.set_block(m.dim(i + 2), 0, mor.at(i + 1));
    d.set_block(m.dim(i + 2), m.dim(i + 1), t.d(i));
  }
  for (int i = lo; i <= hi; ++i)
    for (int j = a.min_degree; j <= 0; ++j) {
      if (!c.in_window(i + j)) continue;
      auto& act = c.action(i, j);
      const auto twist = m.side == Side::Left ? sign(f, j) : f.one();
      embed_action(act, action_or_zero(m, i + 1, j), m.side, a.dim(j), m.dim(i + 1), c.dim(i), 0, 0, twist);
      embed_action(act, action_or_zero(t, i, j), m.side, a.dim(j), t.dim(i), c.dim(i), m.dim(i + 1),
                   m.dim(i + j + 1), f.one());
    }
  return c;
}

namespace {

bool fits(const auto& m, const ModuleShape& shape) {
  if (static_cast<std::size_t>(m.hi - m.lo + 1) > shape.max_span) return false;
  for (auto d : m.dims)
    if (d > shape.max_dim) return false;
  return true;
}

}  // namespace

template <class F>
DGModule<F> random_module(AlgebraPtr<F> a, Side side, const ModuleShape& shape, std::mt19937_64& rng, int budget) {
  const F& f = a->field;
  const int reach = -a->min_degree;  // a generator in degree k spans [k - reach, k]
  const int spread = static_cast<int>(shape.max_span) - 1 - reach;
  if (spread < 0) throw GenerationError("degree span too small for an algebra of amplitude " + std::to_string(reach));
  for (int attempt = 0; attempt < budget; ++attempt) {
    const int count = std::uniform_int_distribution<int>(1, 3)(rng);
    std::vector<int> degrees{shape.top};
    for (int g = 1; g < count; ++g) degrees.push_back(shape.top - std::uniform_int_distribution<int>(0, spread)(rng));
    std::sort(degrees.rbegin(), degrees.rend());

    SemiFreeBuilder<F> b(side, a);
    for (int k : degrees) {
      const auto z = kernel_basis(b.differential(k + 1));
      Vector<F> boundary = zero_vector(f, b.dim(k + 1));
      if (z.rows() > 0 && std::uniform_int_distribution<int>(0, 2)(rng) != 0)
        for (std::size_t r = 0; r < z.rows(); ++r) {
          const auto c = f.random(rng);
          for (std::size_t col = 0; col < z.cols(); ++col) boundary[col] = f.add(boundary[col], f.mul(c, z(r, col)));
        }
      b.add(k, std::move(boundary));
    }
    auto m = b.module();
    if (fits(m, shape)) return m;
  }
  throw GenerationError("random_module: no module within dim <= " + std::to_string(shape.max_dim) + ", span <= " +
                        std::to_string(shape.max_span) + " after " + std::to_string(budget) + " attempts");
}

template <class F>
std::vector<StrictMorphism<F>> morphism_basis(const DGModule<F>& s, const DGModule<F>& t) {
  check_same_base(s, t);
  const F& f = s.field();
  const auto& a = *s.algebra;
  // Unknown f_i(r, c) for i in the source window.
  std::vector<std::size_t> base;
  std::size_t unknowns = 0;
  for (int i = s.lo; i <= s.hi; ++i) {
    base.push_back(unknowns);
    unknowns += t.dim(i) * s.dim(i);
  }
  auto var = [&](int i, std::size_t r, std::size_t c) { return base[i - s.lo] + r * s.dim(i) + c; };

  std::vector<Vector<F>> rows;
  auto push = [&](Vector<F>&& row) {
    if (!is_zero_vector(f, row)) rows.push_back(std::move(row));
  };
  // f_{i+1} d_s - d_t f_i = 0
  for (int i = s.lo; i <= s.hi; ++i) {
    const auto ds = s.d(i), dt = t.d(i);
    for (std::size_t r = 0; r < t.dim(i + 1); ++r)
      for (std::size_t c = 0; c < s.dim(i); ++c) {
        Vector<F> row(unknowns, f.zero());
        if (s.in_window(i + 1))
          for (std::size_t k = 0; k < s.dim(i + 1); ++k) row[var(i + 1, r, k)] = f.add(row[var(i + 1, r, k)], ds(k, c));
        for (std::size_t k = 0; k < t.dim(i); ++k) row[var(i, k, c)] = f.sub(row[var(i, k, c)], dt(r, k));
        push(std::move(row));
      }
  }
  // f(x·e) - f(x)·e = 0 (or the left analogue)
  for (int i = s.lo; i <= s.hi; ++i)
    for (int j = a.min_degree; j <= 0; ++j) {
      const std::size_t da = a.dim(j);
      if (da == 0 || t.dim(i + j) == 0) continue;
      const auto as = action_or_zero(s, i, j), at = action_or_zero(t, i, j);
      for (std::size_t e = 0; e < da; ++e)
        for (std::size_t v = 0; v < s.dim(i); ++v)
          for (std::size_t r = 0; r < t.dim(i + j); ++r) {
            Vector<F> row(unknowns, f.zero());
            const std::size_t sc = action_column(s.side, e, v, da, s.dim(i));
            if (s.in_window(i + j))
              for (std::size_t k = 0; k < s.dim(i + j); ++k) row[var(i + j, r, k)] = f.add(row[var(i + j, r, k)], as(k, sc));
            for (std::size_t k = 0; k < t.dim(i); ++k) {
              const auto& coeff = at(r, action_column(s.side, e, k, da, t.dim(i)));
              row[var(i, k, v)] = f.sub(row[var(i, k, v)], coeff);
            }
            push(std::move(row));
          }
    }
  auto ker = kernel_basis(Matrix<F>::from_rows(f, unknowns, rows));
  std::vector<StrictMorphism<F>> out;
  for (std::size_t b = 0; b < ker.rows(); ++b) {
    auto mor = StrictMorphism<F>::zero(s, t);
    for (int i = s.lo; i <= s.hi; ++i)
      for (std::size_t r = 0; r < t.dim(i); ++r)
        for (std::size_t c = 0; c < s.dim(i); ++c) mor.maps[i - s.lo](r, c) = ker(b, var(i, r, c));
    out.push_back(std::move(mor));
  }
  return out;
}

template <class F>
StrictMorphism<F> random_morphism(const DGModule<F>& s, const DGModule<F>& t, std::mt19937_64& rng) {
  const F& f = s.field();
  auto out = StrictMorphism<F>::zero(s, t);
  for (const auto& b : morphism_basis(s, t)) {
    const auto c = f.random(rng);
    for (std::size_t k = 0; k < out.maps.size(); ++k) {
      Matrix<F> scaled_map = b.maps[k];
      scaled_map.scale(c);
      out.maps[k] = out.maps[k] + scaled_map;
    }
  }
  return out;
}

template <class F>
NoninjectivityWitness<F> noninjectivity_witness(const F& f) {
  NoninjectivityWitness<F> w;
  w.algebra = std::make_shared<const DGAlgebra<F>>(make_exterior(f));
  w.m = free_rank_one(w.algebra, Side::Right, 0);
  w.n = free_rank_one(w.algebra, Side::Left, 0);
  auto t = tensor_over_algebra(w.m, w.n, -1);
  auto terms = top_degree_terms(w.m, w.n, t);
  w.map = terms.obvious_low;
  w.source_dim = terms.low_left.dim() + terms.low_right.dim();
  w.target_dim = t.dim(-1);

  // M^{-1} = span{g·ε}, N^{-1} = span{ε·g}, M^0 = span{g}, N^0 = span{g}:
  // (g·ε)⊗g is the single basis tensor of M^{-1}⊗N^0, g⊗(ε·g) that of M^0⊗N^{-1}.
  const Vector<F> unit{f.one()};
  auto left = terms.low_left.space.project(unit);
  auto right = terms.low_right.space.project(unit);
  for (const auto& e : left) w.element.push_back(e);
  for (const auto& e : right) w.element.push_back(f.neg(e));
  w.image = dgk::apply(w.map, w.element);

  auto& ev = w.evidence;
  ev.record("source dimension is 2", w.source_dim == 2, std::to_string(w.source_dim));
  ev.record("target dimension is 1", w.target_dim == 1, std::to_string(w.target_dim));
  ev.record("witness nonzero in source", !is_zero_vector(f, w.element), {});
  ev.record("witness zero in target", is_zero_vector(f, w.image), {});
  ev.record("map is surjective", is_surjective(w.map), "rank " + std::to_string(rank(w.map)));
  return w;
}

// ---------------------------------------------------------------- corpora

void CorpusProfile::check() const {
  if (instance_count == 0) throw StructuralError("profile: instance_count must be positive");
  if (max_per_degree_dim == 0) throw StructuralError("profile: max_per_degree_dim must be positive");
  if (degree_span == 0) throw StructuralError("profile: degree_span must be positive");
  const auto names = family_names();
  double total = 0;
  for (const auto& [name, w] : family_mix) {
    if (std::find(names.begin(), names.end(), name) == names.end())
      throw StructuralError("profile: unknown family '" + name + "'");
    if (!(w >= 0)) throw StructuralError("profile: family weights must be nonnegative");
    total += w;
  }
  if (!family_mix.empty() && total <= 0) throw StructuralError("profile: family weights are all zero");
}

CorpusProfile default_profile() { return CorpusProfile{}; }

json profile_to_json(const CorpusProfile& p) {
  json mix = json::object();
  for (const auto& [k, v] : p.family_mix) mix[k] = v;
  return {{"field", field_to_json(p.field)},
          {"max_per_degree_dim", p.max_per_degree_dim},
          {"degree_span", p.degree_span},
          {"instance_count", p.instance_count},
          {"seed", p.seed},
          {"family_mix", mix}};
}

CorpusProfile profile_from_json(const json& j) {
  if (!j.is_object()) throw StructuralError("profile: expected an object");
  CorpusProfile p;
  try {
    if (j.contains("field")) p.field = field_from_json(j.at("field"));
    if (j.contains("max_per_degree_dim")) p.max_per_degree_dim = j.at("max_per_degree_dim").get<std::size_t>();
    if (j.contains("degree_span")) p.degree_span = j.at("degree_span").get<std::size_t>();
    if (j.contains("instance_count")) {
      const auto& c = j.at("instance_count");
      if (!c.is_number_integer() || c.get<long long>() < 0)
        throw StructuralError("profile: instance_count must be a nonnegative integer");
      p.instance_count = c.get<std::size_t>();
    }
    if (j.contains("seed")) p.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("family_mix"))
      for (const auto& [k, v] : j.at("family_mix").items()) p.family_mix[k] = v.get<double>();
  } catch (const json::exception& e) {
    throw StructuralError(std::string("profile: ") + e.what());
  }
  p.check();
  return p;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index, std::uint64_t stream) {
  // splitmix64 over a combination of the inputs
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1) + 0xbf58476d1ce4e5b9ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

std::string pick_family(const CorpusProfile& profile, std::mt19937_64& rng) {
  const auto names = family_names();
  std::vector<double> weights;
  for (const auto& n : names) {
    auto it = profile.family_mix.find(n);
    weights.push_back(profile.family_mix.empty() ? 1.0 : (it == profile.family_mix.end() ? 0.0 : it->second));
  }
  // Explicit cumulative draw: std::discrete_distribution's algorithm is unspecified.
  double total = 0;
  for (double w : weights) total += w;
  const double u = std::uniform_int_distribution<std::uint64_t>(0, (1ULL << 53) - 1)(rng) / double(1ULL << 53) * total;
  double acc = 0;
  for (std::size_t k = 0; k < names.size(); ++k) {
    acc += weights[k];
    if (u < acc && weights[k] > 0) return names[k];
  }
  for (std::size_t k = names.size(); k-- > 0;)
    if (weights[k] > 0) return names[k];
  return names.front();
}

template <class F>
struct ModuleMaker {
  const AlgebraFamily<F>& fam;
  ModuleShape shape;
  std::mt19937_64& rng;

  int roll(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

  DGModule<F> random(Side side, std::string& recipe, ModuleShape s) {
    recipe = "semifree";
    return random_module(fam.algebra, side, s, rng);
  }

  DGModule<F> make(Side side, std::string& recipe) {
    ModuleShape s = shape;
    s.top = roll(3) - 1;
    const int reach = -fam.algebra->min_degree;
    for (int attempt = 0; attempt < 20; ++attempt) {
      try {
        if (auto m = attempt_recipe(side, recipe, s, reach)) return *m;
      } catch (const GenerationError&) {
        // the recipe's pieces do not fit this algebra; draw another
      }
    }
    return random(side, recipe, s);
  }

  std::optional<DGModule<F>> attempt_recipe(Side side, std::string& recipe, const ModuleShape& s, int reach) {
    const int r = roll(100);
    if (r < 50) return random(side, recipe, s);
    if (r < 60) {
      if (fam.augmentations.empty()) return std::nullopt;
      recipe = "trivial";
      return trivial_module(fam.algebra, fam.augmentations[roll(static_cast<int>(fam.augmentations.size()))], side, s.top);
    }
    if (r < 72) {
      ModuleShape wide = s;
      wide.top = s.top + 1;
      wide.max_span = s.max_span + 1;
      wide.max_dim = s.max_dim + 2;
      if (static_cast<int>(wide.max_span) - 1 - reach < 0) return std::nullopt;
      auto m = random_module(fam.algebra, side, wide, rng);
      auto t = smart_truncate(m, s.top);
      if (!fits(t, s)) return std::nullopt;
      recipe = "truncated semifree";
      return t;
    }
    if (r < 84) {
      ModuleShape small = s;
      small.max_dim = std::max<std::size_t>(1, s.max_dim / 2);
      small.max_span = s.max_span - 1;
      if (static_cast<int>(small.max_span) - 1 - reach < 0) return std::nullopt;
      auto x = random_module(fam.algebra, side, small, rng);
      small.top = s.top;
      auto y = random_module(fam.algebra, side, small, rng);
      auto c = mapping_cone(random_morphism(x, y, rng));
      if (!fits(c, s)) return std::nullopt;
      recipe = "mapping cone";
      return c;
    }
    if (r < 94) {
      ModuleShape small = s;
      small.max_dim = std::max<std::size_t>(1, s.max_dim / 2);
      auto x = random_module(fam.algebra, side, small, rng);
      small.top = s.top - roll(2);
      if (static_cast<int>(small.max_span) - 1 - reach < 0) return std::nullopt;
      auto y = random_module(fam.algebra, side, small, rng);
      auto sum = direct_sum(x, y);
      if (!fits(sum, s)) return std::nullopt;
      recipe = "direct sum";
      return sum;
    }
    auto m = free_rank_one(fam.algebra, side, s.top);
    if (!fits(m, s)) return std::nullopt;
    recipe = "free rank one";
    return m;
  }
};

}  // namespace

template <class F>
Instance<F> generate_instance(const F& f, const CorpusProfile& profile, std::size_t index) {
  std::mt19937_64 rng(derive_seed(profile.seed, index));
  Instance<F> inst;
  inst.index = index;
  inst.family = pick_family(profile, rng);
  auto fam = make_family(f, inst.family);
  inst.algebra = fam.algebra;
  ModuleShape shape{profile.max_per_degree_dim, profile.degree_span, 0};
  ModuleMaker<F> maker{fam, shape, rng};
  inst.m = maker.make(Side::Right, inst.recipe_left);
  inst.n = maker.make(Side::Left, inst.recipe_right);
  return inst;
}

template <class F>
std::vector<Instance<F>> generate_corpus(const F& f, const CorpusProfile& profile) {
  profile.check();
  std::vector<Instance<F>> out;
  out.reserve(profile.instance_count);
  for (std::size_t k = 0; k < profile.instance_count; ++k) out.push_back(generate_instance(f, profile, k));
  return out;
}

template <class F>
MorphismPair<F> generate_morphism_pair(const F& f, const CorpusProfile& profile, std::size_t index) {
  std::mt19937_64 rng(derive_seed(profile.seed, index, 1));
  MorphismPair<F> pair;
  pair.index = index;
  pair.family = pick_family(profile, rng);
  auto fam = make_family(f, pair.family);
  ModuleShape shape{profile.max_per_degree_dim, profile.degree_span, 0};
  ModuleMaker<F> maker{fam, shape, rng};
  std::string scratch;

  auto one_side = [&](Side side) {
    auto m = maker.make(side, scratch);
    auto target = maker.roll(2) == 0 ? m : maker.make(side, scratch);
    if (index % 5 == 4) return StrictMorphism<F>::zero(m, target);
    if (index % 4 == 3) {
      auto mid = maker.make(side, scratch);
      return compose(random_morphism(mid, target, rng), random_morphism(m, mid, rng));
    }
    return random_morphism(m, target, rng);
  };
  pair.f = one_side(Side::Right);
  pair.g = one_side(Side::Left);
  pair.recipe = index % 5 == 4 ? "zero" : (index % 4 == 3 ? "composite" : "random");
  return pair;
}

#define DGK_INSTANTIATE(F)                                                                                  \
  template DGAlgebra<F> make_exterior<F>(const F&, int, bool);                                              \
  template DGAlgebra<F> make_ordinary<F>(const F&, const Matrix<F>&, const Vector<F>&);                     \
  template DGAlgebra<F> make_dual_numbers<F>(const F&);                                                     \
  template DGAlgebra<F> make_upper_triangular<F>(const F&);                                                 \
  template DGAlgebra<F> make_koszul_like<F>(const F&, int);                                                 \
  template DGAlgebra<F> tensor_algebras<F>(const DGAlgebra<F>&, const DGAlgebra<F>&);                       \
  template AlgebraFamily<F> make_family<F>(const F&, const std::string&);                                   \
  template DGModule<F> trivial_module<F>(AlgebraPtr<F>, const Vector<F>&, Side, int);                       \
  template DGModule<F> free_rank_one<F>(AlgebraPtr<F>, Side, int);                                          \
  template DGModule<F> direct_sum<F>(const DGModule<F>&, const DGModule<F>&);                               \
  template DGModule<F> mapping_cone<F>(const StrictMorphism<F>&);                                           \
  template StrictMorphism<F> sum_inclusion<F>(const DGModule<F>&, const DGModule<F>&, int);                 \
  template StrictMorphism<F> sum_projection<F>(const DGModule<F>&, const DGModule<F>&, int);                \
  template DGModule<F> random_module<F>(AlgebraPtr<F>, Side, const ModuleShape&, std::mt19937_64&, int);    \
  template std::vector<StrictMorphism<F>> morphism_basis<F>(const DGModule<F>&, const DGModule<F>&);        \
  template StrictMorphism<F> random_morphism<F>(const DGModule<F>&, const DGModule<F>&, std::mt19937_64&);  \
  template NoninjectivityWitness<F> noninjectivity_witness<F>(const F&);                                    \
  template Instance<F> generate_instance<F>(const F&, const CorpusProfile&, std::size_t);                   \
  template std::vector<Instance<F>> generate_corpus<F>(const F&, const CorpusProfile&);                     \
  template MorphismPair<F> generate_morphism_pair<F>(const F&, const CorpusProfile&, std::size_t);
DGK_FOR_EACH_FIELD(DGK_INSTANTIATE)
#undef DGK_INSTANTIATE

}  // namespace dgk
