#pragma once

#include <cstdint>
#include <optional>

#include "dgk/dg.hpp"
#include "dgk/evidence.hpp"
#include "dgk/tensor.hpp"

namespace dgk {

// θ : H^{i0}(M) ⊗_Ā H^{j0}(N) -> H^{i0+j0}(M ⊗_A N), [m]⊗[n] ↦ [m⊗n].
template <class F>
struct KunnethWitness {
  int i0 = 0;
  int j0 = 0;
  H0Ring<F> abar;
  CohomologyModule<F> left_cohomology;   // H^{i0}(M)
  CohomologyModule<F> right_cohomology;  // H^{j0}(N)
  BalancedTensorSpace<F> source;
  TensorComplex<F> tensor;
  CohomologyModule<F> target;            // H^{i0+j0} of the tensor complex
  Matrix<F> top_class_map;               // M^{i0} ⊗ N^{j0} -> target, m⊗n ↦ [m⊗n]
  Matrix<F> theta;
  Evidence evidence;

  int top_degree() const { return i0 + j0; }
};

// i0, j0 default to the window tops. Requires m.hi <= i0 and n.hi <= j0.
template <class F>
KunnethWitness<F> theta(const DGModule<F>& m, const DGModule<F>& n, std::optional<int> i0 = {},
                        std::optional<int> j0 = {});

// The presentations used by the classical argument: after translating to
// top degree 0, the four exact sequences, the degree-0 and degree-(-1)
// comparison maps, and agreement of the induced isomorphism with θ.
template <class F>
Evidence check_exact_sequences(const DGModule<F>& m, const DGModule<F>& n, std::optional<int> i0 = {},
                               std::optional<int> j0 = {});

// Perturbing cocycle representatives by coboundaries leaves [m⊗n] fixed.
template <class F>
Evidence check_representative_independence(const KunnethWitness<F>& w, std::size_t samples, std::uint64_t seed);

// θ_{M',N'} ∘ (H(f) ⊗ H(g)) = H(f⊗g) ∘ θ_{M,N}.
template <class F>
Evidence check_functoriality(const StrictMorphism<F>& f, const StrictMorphism<F>& g, std::optional<int> i0 = {},
                             std::optional<int> j0 = {});

// θ computed at (i0, j0) equals θ of the translates at (0, 0), under the
// shift identifications of cohomology and of the top tensor degree.
template <class F>
Evidence check_translation_agreement(const DGModule<F>& m, const DGModule<F>& n, std::optional<int> i0 = {},
                                     std::optional<int> j0 = {});

}  // namespace dgk
