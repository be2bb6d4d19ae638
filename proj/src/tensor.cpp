#include "dgk/tensor.hpp"

#include <algorithm>
#include <memory>

namespace dgk {

namespace {

const TensorBlock* find_block(const std::vector<TensorBlock>& blocks, int left_degree) {
  for (const auto& b : blocks)
    if (b.left_degree == left_degree) return &b;
  return nullptr;
}

}  // namespace

template <class F>
const TensorBlock* TensorDegree<F>::block(int left_degree) const {
  return find_block(blocks, left_degree);
}

template <class F>
Matrix<F> TensorComplex<F>::block_inclusion(int p, int q) const {
  const F& f = left.field();
  const std::size_t width = left.dim(p) * right.dim(q);
  if (!has_degree(p + q)) return Matrix<F>(f, 0, width);
  const auto& deg = at(p + q);
  Matrix<F> inc(f, deg.free_dim, width);
  if (const auto* b = deg.block(p))
    for (std::size_t k = 0; k < b->size(); ++k) inc(b->offset + k, k) = f.one();
  return inc;
}

template <class F>
DGModule<F> TensorComplex<F>::as_complex() const {
  const F& f = left.field();
  auto ground = std::make_shared<const DGAlgebra<F>>(ground_algebra(f));
  std::vector<std::size_t> dims;
  for (const auto& d : degrees) dims.push_back(d.dim());
  auto c = DGModule<F>::zero_structure(Side::Left, ground, lo, hi, dims);
  for (int n = lo; n <= hi; ++n) {
    c.differential(n) = differentials[n - lo];
    c.action(n, 0) = Matrix<F>::identity(f, c.dim(n));
  }
  return c;
}

namespace {

template <class F>
void check_pair(const DGModule<F>& m, const DGModule<F>& n) {
  if (m.side != Side::Right) throw StructuralError("left tensor factor must be a right module");
  if (n.side != Side::Left) throw StructuralError("right tensor factor must be a left module");
  if (!(m.field() == n.field())) throw StructuralError("tensor factors over different fields");
  if (m.algebra != n.algebra && !(*m.algebra == *n.algebra))
    throw StructuralError("tensor factors over different algebras");
}

template <class F>
std::vector<TensorBlock> blocks_for(const DGModule<F>& m, const DGModule<F>& n, int degree, std::size_t& total) {
  std::vector<TensorBlock> blocks;
  total = 0;
  for (int p = m.lo; p <= m.hi; ++p) {
    int q = degree - p;
    if (!n.in_window(q)) continue;
    TensorBlock b{p, q, total, m.dim(p), n.dim(q)};
    total += b.size();
    blocks.push_back(b);
  }
  return blocks;
}

}  // namespace

template <class F>
TensorComplex<F> tensor_over_algebra(const DGModule<F>& m, const DGModule<F>& n, std::optional<int> min_degree) {
  check_pair(m, n);
  const F& f = m.field();
  const auto& a = *m.algebra;
  TensorComplex<F> t;
  t.left = m;
  t.right = n;
  t.hi = m.hi + n.hi;
  t.lo = std::min(t.hi, std::max(m.lo + n.lo, min_degree.value_or(m.lo + n.lo)));

  for (int deg = t.lo; deg <= t.hi; ++deg) {
    TensorDegree<F> td;
    td.degree = deg;
    td.blocks = blocks_for(m, n, deg, td.free_dim);

    // Balancing relations (m·a)⊗v − m⊗(a·v) with m ∈ M^p, a ∈ A^j, v ∈ N^q.
    std::vector<Vector<F>> rows;
    for (int p = m.lo; p <= m.hi; ++p)
      for (int j = a.min_degree; j <= 0; ++j) {
        int q = deg - p - j;
        if (!n.in_window(q) || a.dim(j) == 0) continue;
        const auto* b_left = td.block(p + j);    // holds (m·a) ⊗ v
        const auto* b_right = td.block(p);       // holds m ⊗ (a·v)
        const bool left_live = b_left && m.in_window(p + j);
        const bool right_live = b_right && n.in_window(q + j);
        for (std::size_t mi = 0; mi < m.dim(p); ++mi)
          for (std::size_t ai = 0; ai < a.dim(j); ++ai)
            for (std::size_t vi = 0; vi < n.dim(q); ++vi) {
              Vector<F> row(td.free_dim, f.zero());
              bool nonzero = false;
              if (left_live) {
                const auto& act = m.action(p, j);
                for (std::size_t r = 0; r < m.dim(p + j); ++r) {
                  const auto& c = act(r, mi * a.dim(j) + ai);
                  if (f.is_zero(c)) continue;
                  row[b_left->offset + r * b_left->right_dim + vi] = c;
                  nonzero = true;
                }
              }
              if (right_live) {
                const auto& act = n.action(q, j);
                for (std::size_t s = 0; s < n.dim(q + j); ++s) {
                  const auto& c = act(s, ai * n.dim(q) + vi);
                  if (f.is_zero(c)) continue;
                  auto& slot = row[b_right->offset + mi * b_right->right_dim + s];
                  slot = f.sub(slot, c);
                  nonzero = true;
                }
              }
              if (nonzero && !is_zero_vector(f, row)) rows.push_back(std::move(row));
            }
      }
    td.space = quotient(f, td.free_dim, Matrix<F>::from_rows(f, td.free_dim, rows));
    t.degrees.push_back(std::move(td));
  }

  for (int deg = t.lo; deg <= t.hi; ++deg) {
    const auto& src = t.at(deg);
    std::size_t target_dim = 0;
    std::vector<TensorBlock> target_blocks = blocks_for(m, n, deg + 1, target_dim);
    Matrix<F> dfree(f, target_dim, src.free_dim);
    for (const auto& b : src.blocks) {
      // d(x ⊗ y) = d(x) ⊗ y + (−1)^p x ⊗ d(y)
      if (const auto* tb = find_block(target_blocks, b.left_degree + 1))
        dfree.set_block(tb->offset, b.offset, kron(m.d(b.left_degree), Matrix<F>::identity(f, b.right_dim)));
      if (const auto* tb = find_block(target_blocks, b.left_degree)) {
        Matrix<F> piece = kron(Matrix<F>::identity(f, b.left_dim), n.d(b.right_degree));
        piece.scale(sign(f, b.left_degree));
        dfree.set_block(tb->offset, b.offset, piece);
      }
    }
    t.free_differentials.push_back(dfree);
    if (deg + 1 <= t.hi)
      t.differentials.push_back(t.at(deg + 1).space.projection * dfree * src.space.section);
    else
      t.differentials.emplace_back(f, 0, src.dim());
  }
  return t;
}

template <class F>
Evidence verify_tensor_complex(const TensorComplex<F>& t) {
  Evidence ev;
  bool d2 = true, descends = true, chain = true;
  for (int deg = t.lo; deg + 1 <= t.hi; ++deg) {
    const auto& dn = t.differentials[deg - t.lo];
    const auto& dfree = t.free_differentials[deg - t.lo];
    if (deg + 2 <= t.hi && !(t.differentials[deg + 1 - t.lo] * dn).is_zero()) d2 = false;
    const auto& rel = t.at(deg).space.relations;
    if (rel.rows() > 0 && !(t.at(deg + 1).space.projection * dfree * rel.transpose()).is_zero()) descends = false;
    // projection is a chain map: π_{n+1} D = d π_n
    if (!(t.at(deg + 1).space.projection * dfree == dn * t.at(deg).space.projection)) chain = false;
  }
  ev.record("tensor d^2 = 0", d2, {});
  ev.record("tensor differential preserves relations", descends, {});
  ev.record("tensor projection is a chain map", chain, {});
  return ev;
}

template <class F>
Matrix<F> tensor_map(const StrictMorphism<F>& f, const StrictMorphism<F>& g, const TensorComplex<F>& src,
                     const TensorComplex<F>& dst, int n) {
  const F& field = f.source.field();
  if (!src.has_degree(n) || !dst.has_degree(n)) return Matrix<F>(field, dst.dim(n), src.dim(n));
  const auto& sd = src.at(n);
  const auto& td = dst.at(n);
  Matrix<F> free_map(field, td.free_dim, sd.free_dim);
  for (const auto& b : sd.blocks)
    if (const auto* tb = td.block(b.left_degree))
      free_map.set_block(tb->offset, b.offset, kron(f.at(b.left_degree), g.at(b.right_degree)));
  return td.space.projection * free_map * sd.space.section;
}

// ---------------------------------------------------------------- balanced tensors

template <class F>
BalancedTensorSpace<F> tensor_over_ring(const F& field, const RingModule<F>& x, const RingModule<F>& y) {
  if (x.action.size() != y.action.size())
    throw StructuralError("tensor_over_ring: factors are modules over rings of different dimension");
  for (const auto& m : x.action)
    if (m.rows() != x.dim || m.cols() != x.dim) throw StructuralError("tensor_over_ring: left action has wrong shape");
  for (const auto& m : y.action)
    if (m.rows() != y.dim || m.cols() != y.dim) throw StructuralError("tensor_over_ring: right action has wrong shape");
  BalancedTensorSpace<F> b;
  b.left_dim = x.dim;
  b.right_dim = y.dim;
  b.ring_dim = x.action.size();
  const std::size_t total = x.dim * y.dim;
  std::vector<Vector<F>> rows;
  for (std::size_t r = 0; r < b.ring_dim; ++r)
    for (std::size_t i = 0; i < x.dim; ++i)
      for (std::size_t l = 0; l < y.dim; ++l) {
        Vector<F> row(total, field.zero());
        for (std::size_t k = 0; k < x.dim; ++k) row[k * y.dim + l] = field.add(row[k * y.dim + l], x.action[r](k, i));
        for (std::size_t k = 0; k < y.dim; ++k) row[i * y.dim + k] = field.sub(row[i * y.dim + k], y.action[r](k, l));
        if (!is_zero_vector(field, row)) rows.push_back(std::move(row));
      }
  b.space = quotient(field, total, Matrix<F>::from_rows(field, total, rows));
  return b;
}

template <class F>
bool is_balanced(const BalancedTensorSpace<F>& b, const RingModule<F>& x, const RingModule<F>& y) {
  const F& field = b.space.projection.field();
  for (std::size_t r = 0; r < x.action.size(); ++r)
    for (std::size_t i = 0; i < x.dim; ++i)
      for (std::size_t l = 0; l < y.dim; ++l) {
        auto lhs = b.space.project(kron(field, x.action[r].column_vector(i), unit_vector(field, y.dim, l)));
        auto rhs = b.space.project(kron(field, unit_vector(field, x.dim, i), y.action[r].column_vector(l)));
        if (!(Matrix<F>::column(field, lhs) == Matrix<F>::column(field, rhs))) return false;
      }
  return true;
}

template <class F>
Matrix<F> balanced_map(const Matrix<F>& f, const Matrix<F>& g, const BalancedTensorSpace<F>& src,
                       const BalancedTensorSpace<F>& dst) {
  return dst.space.projection * kron(f, g) * src.space.section;
}

template <class F>
RingModule<F> degree_module(const DGModule<F>& m, int i) {
  return {m.dim(i), a0_action(m, i)};
}

template <class F>
RingModule<F> h0_module(const CohomologyModule<F>& h) {
  return {h.dim(), h.h0_action};
}

template <class F>
RingModule<F> a0_module(const CohomologyModule<F>& h, const DGModule<F>& m) {
  return {h.dim(), a0_action(h, m)};
}

template <class F>
TopDegreeTerms<F> top_degree_terms(const DGModule<F>& m, const DGModule<F>& n, const TensorComplex<F>& t) {
  const F& f = m.field();
  if (m.hi > 0 || n.hi > 0) throw StructuralError("top-degree terms need modules concentrated in degrees <= 0");
  TopDegreeTerms<F> terms;
  auto m0 = degree_module(m, 0), m1 = degree_module(m, -1);
  auto n0 = degree_module(n, 0), n1 = degree_module(n, -1);
  terms.low_left = tensor_over_ring(f, m1, n0);
  terms.low_right = tensor_over_ring(f, m0, n1);
  terms.top = tensor_over_ring(f, m0, n0);

  auto phi_left = balanced_map(m.d(-1), Matrix<F>::identity(f, n.dim(0)), terms.low_left, terms.top);
  auto phi_right = balanced_map(Matrix<F>::identity(f, m.dim(0)), n.d(-1), terms.low_right, terms.top);
  terms.phi = hstack(phi_left, phi_right);

  Matrix<F> into_top = t.has_degree(0) ? t.at(0).space.projection * t.block_inclusion(0, 0)
                                       : Matrix<F>(f, 0, m.dim(0) * n.dim(0));
  terms.obvious_top = into_top * terms.top.space.section;

  if (t.has_degree(-1)) {
    const auto& proj = t.at(-1).space.projection;
    auto low_left = proj * t.block_inclusion(-1, 0) * terms.low_left.space.section;
    auto low_right = proj * t.block_inclusion(0, -1) * terms.low_right.space.section;
    terms.obvious_low = hstack(low_left, low_right);
  } else {
    terms.obvious_low = Matrix<F>(f, 0, terms.low_left.dim() + terms.low_right.dim());
  }
  return terms;
}

template <class F>
Matrix<F> phi_map(const DGModule<F>& m, const DGModule<F>& n) {
  auto t = tensor_over_algebra(m, n, -1);
  return top_degree_terms(m, n, t).phi;
}

template <class F>
Degree0Check<F> degree0_iso_check(const DGModule<F>& m, const DGModule<F>& n) {
  auto t = tensor_over_algebra(m, n, -1);
  auto terms = top_degree_terms(m, n, t);
  Degree0Check<F> out{terms.obvious_top, {}};
  out.evidence.record("degree-0 map is bijective", is_bijective(terms.obvious_top),
                      "dim M^0⊗N^0 = " + std::to_string(terms.top.dim()) + ", dim (M⊗N)^0 = " + std::to_string(t.dim(0)));
  return out;
}

#define DGK_INSTANTIATE(F)                                                                                           \
  template struct TensorDegree<F>;                                                                                   \
  template struct TensorComplex<F>;                                                                                  \
  template TensorComplex<F> tensor_over_algebra<F>(const DGModule<F>&, const DGModule<F>&, std::optional<int>);      \
  template Evidence verify_tensor_complex<F>(const TensorComplex<F>&);                                               \
  template Matrix<F> tensor_map<F>(const StrictMorphism<F>&, const StrictMorphism<F>&, const TensorComplex<F>&,      \
                                   const TensorComplex<F>&, int);                                                    \
  template BalancedTensorSpace<F> tensor_over_ring<F>(const F&, const RingModule<F>&, const RingModule<F>&);         \
  template bool is_balanced<F>(const BalancedTensorSpace<F>&, const RingModule<F>&, const RingModule<F>&);           \
  template Matrix<F> balanced_map<F>(const Matrix<F>&, const Matrix<F>&, const BalancedTensorSpace<F>&,              \
                                     const BalancedTensorSpace<F>&);                                                 \
  template RingModule<F> degree_module<F>(const DGModule<F>&, int);                                                  \
  template RingModule<F> h0_module<F>(const CohomologyModule<F>&);                                                   \
  template RingModule<F> a0_module<F>(const CohomologyModule<F>&, const DGModule<F>&);                               \
  template TopDegreeTerms<F> top_degree_terms<F>(const DGModule<F>&, const DGModule<F>&, const TensorComplex<F>&);   \
  template Matrix<F> phi_map<F>(const DGModule<F>&, const DGModule<F>&);                                             \
  template Degree0Check<F> degree0_iso_check<F>(const DGModule<F>&, const DGModule<F>&);
DGK_FOR_EACH_FIELD(DGK_INSTANTIATE)
#undef DGK_INSTANTIATE

}  // namespace dgk
