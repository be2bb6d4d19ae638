#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "dgk/dg.hpp"
#include "dgk/evidence.hpp"
#include "dgk/tensor.hpp"

namespace dgk {

// ---------------------------------------------------------------- algebras

// Λ = 𝕂⟨ε⟩ with ε² = 0 and |ε| = degree (< 0). With contractible = true
// (only for degree -1) dε = 1 and H(Λ) = 0.
template <class F>
DGAlgebra<F> make_exterior(const F& f, int degree = -1, bool contractible = false);

// Degree-0 algebra from structure constants: product is dim x dim*dim with
// column k*dim + l holding e_k e_l. Throws StructuralError unless valid.
template <class F>
DGAlgebra<F> make_ordinary(const F& f, const Matrix<F>& product, const Vector<F>& unit);

template <class F>
DGAlgebra<F> make_dual_numbers(const F& f);

// 2x2 upper-triangular matrices, basis e11, e12, e22.
template <class F>
DGAlgebra<F> make_upper_triangular(const F& f);

// 𝕂[t]/(t^{depth+1}) ⊗ 𝕂⟨ε⟩ with |t| = 0, |ε| = -1, dε = t.
template <class F>
DGAlgebra<F> make_koszul_like(const F& f, int depth);

// A ⊗ B with (a⊗b)(a'⊗b') = (-1)^{|b||a'|} aa'⊗bb' and the Koszul differential.
template <class F>
DGAlgebra<F> tensor_algebras(const DGAlgebra<F>& a, const DGAlgebra<F>& b);

// An algebra with its augmentations A → 𝕂 (characters of A^0 vanishing on
// d(A^{-1})), used to build one-dimensional modules.
template <class F>
struct AlgebraFamily {
  std::string name;
  AlgebraPtr<F> algebra;
  std::vector<Vector<F>> augmentations;  // each of length dim A^0
};

std::vector<std::string> family_names();

template <class F>
AlgebraFamily<F> make_family(const F& f, const std::string& name);

// ---------------------------------------------------------------- modules

// 𝕂 in one degree, A^0 acting through the augmentation, A^{<0} by zero.
template <class F>
DGModule<F> trivial_module(AlgebraPtr<F> a, const Vector<F>& augmentation, Side side, int degree = 0);

// A as a module over itself, placed so its top is in degree `top`.
template <class F>
DGModule<F> free_rank_one(AlgebraPtr<F> a, Side side, int top = 0);

template <class F>
DGModule<F> direct_sum(const DGModule<F>& x, const DGModule<F>& y);

// Cone(f)^i = M^{i+1} ⊕ M'^i, d(m, m') = (-dm, f(m) + dm').
template <class F>
DGModule<F> mapping_cone(const StrictMorphism<F>& f);

template <class F>
StrictMorphism<F> sum_inclusion(const DGModule<F>& x, const DGModule<F>& y, int which);

template <class F>
StrictMorphism<F> sum_projection(const DGModule<F>& x, const DGModule<F>& y, int which);

struct ModuleShape {
  std::size_t max_dim = 4;   // per degree
  std::size_t max_span = 4;  // number of degrees in the window
  int top = 0;
};

// Semi-free module on random generators with random cocycle boundaries.
// Resamples until the shape fits; throws GenerationError after `budget` tries.
template <class F>
DGModule<F> random_module(AlgebraPtr<F> a, Side side, const ModuleShape& shape, std::mt19937_64& rng,
                          int budget = 200);

// All strict morphisms source -> target, as a basis of the solution space.
template <class F>
std::vector<StrictMorphism<F>> morphism_basis(const DGModule<F>& source, const DGModule<F>& target);

// Random combination of morphism_basis (zero when Hom is zero).
template <class F>
StrictMorphism<F> random_morphism(const DGModule<F>& source, const DGModule<F>& target, std::mt19937_64& rng);

// A = M = N = Λ. The element (1·ε)⊗1 − 1⊗(ε·1) of
// (M^{-1}⊗_{A^0}N^0) ⊕ (M^0⊗_{A^0}N^{-1}) is nonzero there and vanishes in
// (M⊗_A N)^{-1}.
template <class F>
struct NoninjectivityWitness {
  AlgebraPtr<F> algebra;
  DGModule<F> m;
  DGModule<F> n;
  Vector<F> element;  // coordinates in the quotient basis of the source
  std::size_t source_dim = 0;
  std::size_t target_dim = 0;
  Vector<F> image;
  Matrix<F> map;
  Evidence evidence;
};

template <class F>
NoninjectivityWitness<F> noninjectivity_witness(const F& f);

// ---------------------------------------------------------------- corpora

template <class F>
struct Instance {
  std::size_t index = 0;
  std::string family;
  std::string recipe_left;
  std::string recipe_right;
  AlgebraPtr<F> algebra;
  DGModule<F> m;  // right module
  DGModule<F> n;  // left module
};

template <class F>
struct MorphismPair {
  std::size_t index = 0;
  std::string family;
  std::string recipe;
  StrictMorphism<F> f;  // right modules
  StrictMorphism<F> g;  // left modules
};

struct CorpusProfile {
  FieldSpec field = FieldSpec::prime(kDefaultPrime);
  std::size_t max_per_degree_dim = 4;
  std::size_t degree_span = 4;
  std::size_t instance_count = 200;
  std::uint64_t seed = 1729;
  std::map<std::string, double> family_mix;  // empty: uniform over family_names()

  void check() const;  // StructuralError on invalid counts or weights
};

CorpusProfile default_profile();
json profile_to_json(const CorpusProfile& p);
CorpusProfile profile_from_json(const json& j);

// Per-instance seeds are derived from (profile seed, index), so instance k
// does not depend on how many instances precede it.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index, std::uint64_t stream = 0);

template <class F>
Instance<F> generate_instance(const F& f, const CorpusProfile& profile, std::size_t index);

template <class F>
std::vector<Instance<F>> generate_corpus(const F& f, const CorpusProfile& profile);

// Pairs (f, g) over a common algebra; every fourth pair is a composite and
// every fifth involves a zero morphism.
template <class F>
MorphismPair<F> generate_morphism_pair(const F& f, const CorpusProfile& profile, std::size_t index);

}  // namespace dgk
