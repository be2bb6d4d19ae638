#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dgk/dg.hpp"
#include "dgk/evidence.hpp"
#include "dgk/kunneth.hpp"
#include "dgk/semifree.hpp"
#include "dgk/tensor.hpp"

namespace dgk {

struct ResolveOptions {
  std::size_t generator_cap = 64;      // per degree
  std::optional<std::uint64_t> seed;   // randomizes generator choices when set
  std::optional<int> anchor;           // depth is measured from here; default sup H(M)
};

// ρ : P -> M with P semi-free on finitely many generators, built degree by
// degree from sup H(M) down to floor = anchor - depth. H^i(ρ) is bijective
// for i > floor and surjective at floor; P^i for i >= floor agrees with
// every longer run of the same construction.
template <class F>
struct SemiFreeResolution {
  DGModule<F> target;
  SemiFreeBuilder<F> builder;
  DGModule<F> p;
  StrictMorphism<F> rho;
  std::vector<Vector<F>> images;  // ρ(generator)
  int depth = 0;
  int anchor = 0;
  int floor = 0;
  std::optional<int> sup;  // sup H(M)
  Evidence evidence;

  const std::vector<typename SemiFreeBuilder<F>::Generator>& generators() const { return builder.generators(); }
};

template <class F>
SemiFreeResolution<F> semifree_resolve(const DGModule<F>& m, int depth, const ResolveOptions& options = {});

template <class F>
Evidence verify_resolution(const SemiFreeResolution<F>& r);

template <class F>
json resolution_to_json(const SemiFreeResolution<F>& r);

// θ^der : H^{i0}(M) ⊗_Ā H^{j0}(N) -> H^{i0+j0}(P ⊗_A τ^{≤j0}N).
template <class F>
struct DerivedKunnethWitness {
  int i0 = 0;
  int j0 = 0;
  SemiFreeResolution<F> resolution;
  DGModule<F> truncated;              // τ^{≤j0} N
  StrictMorphism<F> truncation;       // τ^{≤j0} N -> N
  KunnethWitness<F> plain;            // θ_{P, τN}
  CohomologyModule<F> left_cohomology;   // H^{i0}(M)
  CohomologyModule<F> right_cohomology;  // H^{j0}(N)
  BalancedTensorSpace<F> source;
  Matrix<F> transport;                // H(ρ) ⊗ H(incl) : plain.source -> source
  Matrix<F> theta_der;
  Evidence evidence;

  int top_degree() const { return i0 + j0; }
  const CohomologyModule<F>& target() const { return plain.target; }
};

struct DerivedOptions {
  std::optional<int> i0;
  std::optional<int> j0;
  std::optional<int> depth;  // default width(τN) + 2
  ResolveOptions resolve;
};

template <class F>
DerivedKunnethWitness<F> theta_der(const DGModule<F>& m, const DGModule<F>& n, const DerivedOptions& options = {});

// H^{i0+j0}(P ⊗_A τ^{≤j0}N) for the default resolution depth.
template <class F>
CohomologyModule<F> derived_tensor_top(const DGModule<F>& m, const DGModule<F>& n, const DerivedOptions& options = {});

// H^{i0+j0}(ρ ⊗ incl) : H(P ⊗ τN) -> H(M ⊗ N) in the given witnesses' bases.
template <class F>
Matrix<F> eta_top(const DerivedKunnethWitness<F>& w, const KunnethWitness<F>& plain_mn);

// H(η)·θ^der = θ_{M,N}; needs m.hi <= i0 and n.hi <= j0.
template <class F>
Evidence check_derived_square(const DGModule<F>& m, const DGModule<F>& n, const DerivedOptions& options = {});

// Two differently seeded resolutions give the same composite H(η)·θ^der.
template <class F>
Evidence check_resolution_independence(const DGModule<F>& m, const DGModule<F>& n, std::uint64_t seed_a,
                                       std::uint64_t seed_b, const DerivedOptions& options = {});

// For consecutive depths d < d+1 in `depths`: the shorter run is a prefix of
// the longer one, the inclusion P_d -> P_{d+1} commutes with ρ, and θ^der is
// carried to θ^der.
template <class F>
Evidence check_depth_stabilization(const DGModule<F>& m, const DGModule<F>& n, const std::vector<int>& depths,
                                   const DerivedOptions& options = {});

// Lift of f : M -> M' to f̃ : P -> P' with a homotopy h : ρ'f̃ - fρ = dh + hd.
template <class F>
struct ResolutionLift {
  StrictMorphism<F> lift;
  std::vector<Matrix<F>> homotopy;  // h^i : P^i -> M'^{i-1}, index i - P.lo
  Evidence evidence;
};

template <class F>
ResolutionLift<F> lift_through_resolutions(const StrictMorphism<F>& f, const SemiFreeResolution<F>& r,
                                           const SemiFreeResolution<F>& r2);

// θ^der' ∘ (H(f) ⊗ H(g)) = H(f̃ ⊗ τg) ∘ θ^der.
template <class F>
Evidence check_theta_der_functoriality(const StrictMorphism<F>& f, const StrictMorphism<F>& g,
                                       const DerivedOptions& options = {});

}  // namespace dgk
