#include "dgk/kunneth.hpp"

#include <algorithm>
#include <random>

#include "dgk/serialize.hpp"

namespace dgk {

namespace {

template <class F>
void check_degrees(const DGModule<F>& m, const DGModule<F>& n, int i0, int j0) {
  if (m.hi > i0) throw StructuralError("right module has components above degree " + std::to_string(i0));
  if (n.hi > j0) throw StructuralError("left module has components above degree " + std::to_string(j0));
}

template <class F>
bool vectors_equal(const F& f, const Vector<F>& a, const Vector<F>& b) {
  return Matrix<F>::column(f, a) == Matrix<F>::column(f, b);
}

std::string dims_detail(std::size_t a, std::size_t b) { return std::to_string(a) + " vs " + std::to_string(b); }

// A vector showing why U --f--> V --g--> W fails to be exact at V.
template <class F>
json exactness_failure(const Matrix<F>& f, const Matrix<F>& g) {
  const auto& field = g.field();
  auto gf = g * f;
  for (std::size_t c = 0; c < gf.cols(); ++c)
    if (!is_zero_vector(field, gf.column_vector(c)))
      return {{"kind", "composite is nonzero"}, {"source_vector", vector_to_json(field, unit_vector(field, f.cols(), c))}};
  auto ker = kernel_basis(g);
  for (std::size_t r = 0; r < ker.rows(); ++r)
    if (!solve(f, ker.row_vector(r)))
      return {{"kind", "kernel element outside the image"}, {"vector", vector_to_json(field, ker.row_vector(r))}};
  return nullptr;
}

template <class F>
void record_exact(Evidence& ev, const std::string& name, const Matrix<F>& f, const Matrix<F>& g,
                  const DGModule<F>& m, const DGModule<F>& n) {
  ev.record(name + " exact in the middle", image_equals_kernel(f, g),
            "rank f = " + std::to_string(rank(f)) + ", dim ker g = " + std::to_string(g.cols() - rank(g)),
            [&] { return pair_bundle(m, n, exactness_failure(f, g)); });
  ev.record(name + " final map surjective", is_surjective(g),
            "rank " + std::to_string(rank(g)) + " onto dim " + std::to_string(g.rows()),
            [&] { return pair_bundle(m, n); });
}

}  // namespace

template <class F>
KunnethWitness<F> theta(const DGModule<F>& m, const DGModule<F>& n, std::optional<int> i0_opt,
                        std::optional<int> j0_opt) {
  if (m.side != Side::Right || n.side != Side::Left)
    throw StructuralError("theta needs a right module and a left module");
  const F& f = m.field();
  KunnethWitness<F> w;
  w.i0 = i0_opt.value_or(m.hi);
  w.j0 = j0_opt.value_or(n.hi);
  check_degrees(m, n, w.i0, w.j0);
  const int top = w.top_degree();

  w.abar = h0_ring(*m.algebra);
  w.left_cohomology = cohomology(m, w.i0, w.abar);
  w.right_cohomology = cohomology(n, w.j0, w.abar);
  const auto& hm = w.left_cohomology;
  const auto& hn = w.right_cohomology;
  w.source = tensor_over_ring(f, h0_module(hm), h0_module(hn));

  w.tensor = tensor_over_algebra(m, n, top - 1);
  const auto& t = w.tensor;
  w.target = cohomology(t.as_complex(), top);

  const std::size_t block_width = m.dim(w.i0) * n.dim(w.j0);
  if (t.has_degree(top))
    w.top_class_map = w.target.class_map * t.at(top).space.projection * t.block_inclusion(w.i0, w.j0);
  else
    w.top_class_map = Matrix<F>(f, w.target.dim(), block_width);
  const auto& k = w.top_class_map;

  // L([m]⊗[n]) on the free tensor of the cohomologies via chosen representatives.
  Matrix<F> lift_map = k * kron(hm.representative_map, hn.representative_map);
  w.theta = lift_map * w.source.space.section;

  auto bundle = [&] { return pair_bundle(m, n); };
  auto& ev = w.evidence;
  const auto& rel = w.source.space.relations;
  ev.record("theta kills balancing relations", rel.rows() == 0 || (lift_map * rel.transpose()).is_zero(),
            std::to_string(rel.rows()) + " relations", bundle);

  Matrix<F> left_boundaries = kron(m.d(w.i0 - 1), Matrix<F>::identity(f, n.dim(w.j0)));
  Matrix<F> right_boundaries = kron(Matrix<F>::identity(f, m.dim(w.i0)), n.d(w.j0 - 1));
  ev.record("boundary perturbations vanish", (k * left_boundaries).is_zero() && (k * right_boundaries).is_zero(), {},
            bundle);

  // On every elementary tensor of cocycles, θ([m]⊗[n]) = [m⊗n].
  Matrix<F> class_pairs = w.source.space.projection * kron(hm.class_map, hn.class_map);
  ev.record("theta agrees with [m]⊗[n] -> [m⊗n]", w.theta * class_pairs == k, {}, bundle);
  ev.record("elementary classes span the source", is_surjective(class_pairs),
            "rank " + std::to_string(rank(class_pairs)) + " of " + std::to_string(w.source.dim()), bundle);

  ev.record("source and target dimensions agree", w.source.dim() == w.target.dim(),
            dims_detail(w.source.dim(), w.target.dim()), bundle);
  ev.record("theta is bijective", is_bijective(w.theta), "rank " + std::to_string(rank(w.theta)), bundle);
  return w;
}

template <class F>
Evidence check_exact_sequences(const DGModule<F>& m_in, const DGModule<F>& n_in, std::optional<int> i0_opt,
                               std::optional<int> j0_opt) {
  const int i0 = i0_opt.value_or(m_in.hi), j0 = j0_opt.value_or(n_in.hi);
  check_degrees(m_in, n_in, i0, j0);
  const F& f = m_in.field();
  Evidence ev;

  const DGModule<F> m = shift(m_in, i0);
  const DGModule<F> n = shift(n_in, j0);
  auto t = tensor_over_algebra(m, n, -1);
  auto terms = top_degree_terms(m, n, t);
  auto ht = cohomology(t.as_complex(), 0);
  auto bundle = [&] { return pair_bundle(m, n); };

  ev.record("tensor complex consistent", verify_tensor_complex(t).ok(), {}, bundle);

  // Degree 0 and -1 of M ⊗_A N against the tensors over A^0.
  ev.record("degree-0 comparison bijective", is_bijective(terms.obvious_top),
            dims_detail(terms.top.dim(), t.dim(0)), bundle);
  ev.record("degree-(-1) comparison surjective", is_surjective(terms.obvious_low),
            "rank " + std::to_string(rank(terms.obvious_low)) + " onto dim " + std::to_string(t.dim(-1)), bundle);
  if (t.has_degree(-1)) {
    ev.record("phi matches the tensor differential", t.differentials[-1 - t.lo] * terms.obvious_low ==
                                                          terms.obvious_top * terms.phi,
              {}, bundle);
  }

  const Matrix<F> pi_t = ht.class_map * terms.obvious_top;
  record_exact(ev, "top presentation", terms.phi, pi_t, m, n);

  auto abar = h0_ring(*m.algebra);
  auto hm = cohomology(m, 0, abar);
  auto hn = cohomology(n, 0, abar);
  const Matrix<F>& pi_m = hm.class_map;
  const Matrix<F>& pi_n = hn.class_map;
  const auto hm_a0 = a0_module(hm, m), hn_a0 = a0_module(hn, n);
  const auto m0 = degree_module(m, 0), n0 = degree_module(n, 0), n1 = degree_module(n, -1);
  const auto id_hm = Matrix<F>::identity(f, hm.dim());
  const auto id_n0 = Matrix<F>::identity(f, n.dim(0));

  auto hm_n1 = tensor_over_ring(f, hm_a0, n1);
  auto hm_n0 = tensor_over_ring(f, hm_a0, n0);
  auto hm_hn = tensor_over_ring(f, hm_a0, hn_a0);

  // H(M) ⊗ (N^{-1} -> N^0 -> H(N) -> 0)
  auto g_cohom = balanced_map(id_hm, pi_n, hm_n0, hm_hn);
  record_exact(ev, "H(M) tensor N presentation", balanced_map(id_hm, n.d(-1), hm_n1, hm_n0), g_cohom, m, n);

  // The same with M^0 ⊗ N^{-1} in front, through the surjection π_M.
  auto pi_m_low = balanced_map(pi_m, Matrix<F>::identity(f, n.dim(-1)), terms.low_right, hm_n1);
  ev.record("pi_M tensor N^{-1} surjective", is_surjective(pi_m_low), {}, bundle);
  record_exact(ev, "M^0 tensor N^{-1} presentation", balanced_map(pi_m, n.d(-1), terms.low_right, hm_n0), g_cohom,
               m, n);

  // (M^{-1} -> M^0 -> H(M) -> 0) ⊗ N^0
  record_exact(ev, "M tensor N^0 presentation", balanced_map(m.d(-1), id_n0, terms.low_left, terms.top),
               balanced_map(pi_m, id_n0, terms.top, hm_n0), m, n);

  auto g_both = balanced_map(pi_m, pi_n, terms.top, hm_hn);
  record_exact(ev, "combined presentation", terms.phi, g_both, m, n);

  // Both presentations share the kernel im φ, so π factors through π_M ⊗ π_N.
  auto right_inverse = solve(g_both, Matrix<F>::identity(f, hm_hn.dim()));
  if (!right_inverse) {
    ev.fail("comparison isomorphism exists", "pi_M tensor pi_N has no right inverse", bundle());
    return ev;
  }
  Matrix<F> psi = pi_t * *right_inverse;
  ev.record("comparison isomorphism exists", psi * g_both == pi_t && is_bijective(psi), {}, bundle);

  auto hm_hn_abar = tensor_over_ring(f, h0_module(hm), h0_module(hn));
  auto canon = balanced_map(id_hm, Matrix<F>::identity(f, hn.dim()), hm_hn_abar, hm_hn);
  ev.record("tensor over Abar agrees with tensor over A^0", is_bijective(canon),
            dims_detail(hm_hn_abar.dim(), hm_hn.dim()), bundle);

  auto w = theta(m, n, 0, 0);
  ev.record("comparison isomorphism equals theta", psi * canon == w.theta, {}, bundle);
  return ev;
}

template <class F>
Evidence check_representative_independence(const KunnethWitness<F>& w, std::size_t samples, std::uint64_t seed) {
  const auto& m = w.tensor.left;
  const auto& n = w.tensor.right;
  const F& f = m.field();
  std::mt19937_64 rng(seed);
  Evidence ev;
  const auto& hm = w.left_cohomology;
  const auto& hn = w.right_cohomology;
  const Matrix<F> dm = m.d(w.i0 - 1), dn = n.d(w.j0 - 1);

  std::size_t moved = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    auto h1 = random_vector(f, hm.dim(), rng);
    auto h2 = random_vector(f, hn.dim(), rng);
    auto p1 = random_vector(f, dm.cols(), rng);
    auto p2 = random_vector(f, dn.cols(), rng);
    auto shift1 = dgk::apply(dm, p1), shift2 = dgk::apply(dn, p2);
    if (!is_zero_vector(f, shift1) || !is_zero_vector(f, shift2)) ++moved;
    auto x = add(f, hm.representative_of(h1), shift1);
    auto y = add(f, hn.representative_of(h2), shift2);

    bool ok = vectors_equal(f, hm.class_of(x), h1) && vectors_equal(f, hn.class_of(y), h2);
    auto lhs = dgk::apply(w.top_class_map, kron(f, x, y));
    auto rhs = dgk::apply(w.theta, w.source.space.project(kron(f, h1, h2)));
    ok = ok && vectors_equal(f, lhs, rhs);
    if (!ok) {
      ev.fail("representative independence", "sample " + std::to_string(s),
              pair_bundle(m, n,
                          {{"left_class", vector_to_json(f, h1)},
                           {"right_class", vector_to_json(f, h2)},
                           {"left_perturbation", vector_to_json(f, p1)},
                           {"right_perturbation", vector_to_json(f, p2)}}));
      return ev;
    }
  }
  ev.pass("representative independence",
          std::to_string(samples) + " samples, " + std::to_string(moved) + " with nonzero perturbation");
  return ev;
}

template <class F>
Evidence check_functoriality(const StrictMorphism<F>& f, const StrictMorphism<F>& g, std::optional<int> i0_opt,
                             std::optional<int> j0_opt) {
  const int i0 = i0_opt.value_or(std::max(f.source.hi, f.target.hi));
  const int j0 = j0_opt.value_or(std::max(g.source.hi, g.target.hi));
  auto w = theta(f.source, g.source, i0, j0);
  auto w2 = theta(f.target, g.target, i0, j0);
  const int top = i0 + j0;

  auto hf = induced_on_cohomology(f, w.left_cohomology, w2.left_cohomology);
  auto hg = induced_on_cohomology(g, w.right_cohomology, w2.right_cohomology);
  auto left = w2.theta * balanced_map(hf, hg, w.source, w2.source);
  auto fg = tensor_map(f, g, w.tensor, w2.tensor, top);
  auto right = w2.target.class_map * fg * w.target.representative_map * w.theta;

  Evidence ev;
  ev.record("theta naturality square", left == right, {}, [&] {
    return json{{"source_pair", pair_bundle(f.source, g.source)}, {"target_pair", pair_bundle(f.target, g.target)},
                {"left_morphism", to_json(f)}, {"right_morphism", to_json(g)}};
  });
  return ev;
}

template <class F>
Evidence check_translation_agreement(const DGModule<F>& m, const DGModule<F>& n, std::optional<int> i0_opt,
                                     std::optional<int> j0_opt) {
  const int i0 = i0_opt.value_or(m.hi), j0 = j0_opt.value_or(n.hi);
  auto direct = theta(m, n, i0, j0);
  auto translated = theta(shift(m, i0), shift(n, j0), 0, 0);
  const F& f = m.field();

  // Translation leaves M^{i0}, N^{j0}, their cocycles and coboundary spans
  // unchanged, and m⊗n ↦ (-1)^{j0·p'} m⊗n with p' = 0 on the top block.
  Evidence ev;
  auto same = [&](const Matrix<F>& a, const Matrix<F>& b) { return a.rows() == b.rows() && a.cols() == b.cols() && a == b; };
  bool cohomology_same = same(direct.left_cohomology.class_map, translated.left_cohomology.class_map) &&
                         same(direct.right_cohomology.class_map, translated.right_cohomology.class_map);
  ev.record("translation identifies cohomology bases", cohomology_same, {}, [&] { return pair_bundle(m, n); });
  Matrix<F> top_sign = Matrix<F>::identity(f, direct.target.dim());
  ev.record("direct and translated theta agree", same(direct.theta, top_sign * translated.theta),
            dims_detail(direct.theta.rows(), translated.theta.rows()), [&] { return pair_bundle(m, n); });
  return ev;
}

#define DGK_INSTANTIATE(F)                                                                                          \
  template KunnethWitness<F> theta<F>(const DGModule<F>&, const DGModule<F>&, std::optional<int>, std::optional<int>); \
  template Evidence check_exact_sequences<F>(const DGModule<F>&, const DGModule<F>&, std::optional<int>,            \
                                             std::optional<int>);                                                   \
  template Evidence check_representative_independence<F>(const KunnethWitness<F>&, std::size_t, std::uint64_t);     \
  template Evidence check_functoriality<F>(const StrictMorphism<F>&, const StrictMorphism<F>&, std::optional<int>,  \
                                           std::optional<int>);                                                     \
  template Evidence check_translation_agreement<F>(const DGModule<F>&, const DGModule<F>&, std::optional<int>,      \
                                                   std::optional<int>);
DGK_FOR_EACH_FIELD(DGK_INSTANTIATE)
#undef DGK_INSTANTIATE

}  // namespace dgk
