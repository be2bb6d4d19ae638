#pragma once

#include <optional>
#include <vector>

#include "dgk/dg.hpp"
#include "dgk/evidence.hpp"

namespace dgk {

// M^p ⊗ N^q inside the free bigraded sum of total degree p + q. Coordinates
// inside a block are m * right_dim + n.
struct TensorBlock {
  int left_degree = 0;
  int right_degree = 0;
  std::size_t offset = 0;
  std::size_t left_dim = 0;
  std::size_t right_dim = 0;
  std::size_t size() const { return left_dim * right_dim; }
};

template <class F>
struct TensorDegree {
  int degree = 0;
  std::vector<TensorBlock> blocks;  // ordered by left degree
  std::size_t free_dim = 0;
  QuotientSpace<F> space;           // free sum / balancing relations

  std::size_t dim() const { return space.quotient_dim; }
  const TensorBlock* block(int left_degree) const;
};

// M ⊗_A N for a right module M and a left module N, presented degreewise as
// a quotient of ⊕_{p+q=n} M^p ⊗ N^q by span{(m·a)⊗n − m⊗(a·n)}, with
// d(m⊗n) = d(m)⊗n + (−1)^{|m|} m⊗d(n).
//
// Only degrees >= lo are presented; H^k is exact for k > lo.
template <class F>
struct TensorComplex {
  DGModule<F> left;
  DGModule<F> right;
  int lo = 0;
  int hi = 0;
  std::vector<TensorDegree<F>> degrees;
  std::vector<Matrix<F>> free_differentials;  // free(n) -> free(n+1), n in [lo, hi]
  std::vector<Matrix<F>> differentials;       // quotient(n) -> quotient(n+1)

  bool has_degree(int n) const { return n >= lo && n <= hi; }
  const TensorDegree<F>& at(int n) const { return degrees[n - lo]; }
  std::size_t dim(int n) const { return has_degree(n) ? at(n).dim() : 0; }

  // free_dim(p+q) x (dim M^p * dim N^q); zero-width if the block is absent.
  Matrix<F> block_inclusion(int p, int q) const;

  // The presented range as a complex of vector spaces over the ground field.
  DGModule<F> as_complex() const;
};

template <class F>
TensorComplex<F> tensor_over_algebra(const DGModule<F>& m, const DGModule<F>& n, std::optional<int> min_degree = {});

// d^2 = 0 on the quotient and the free differential preserves the relations.
template <class F>
Evidence verify_tensor_complex(const TensorComplex<F>& t);

// (f ⊗ g) in degree n on quotient bases, for strict morphisms f, g.
template <class F>
Matrix<F> tensor_map(const StrictMorphism<F>& f, const StrictMorphism<F>& g, const TensorComplex<F>& src,
                     const TensorComplex<F>& dst, int n);

// An ordinary module over a ring given by one action matrix per ring basis
// vector (x ↦ x·r for right modules, y ↦ r·y for left modules).
template <class F>
struct RingModule {
  std::size_t dim = 0;
  std::vector<Matrix<F>> action;
};

// X ⊗_R Y as the quotient of X ⊗ Y by span{(x·r)⊗y − x⊗(r·y)}.
template <class F>
struct BalancedTensorSpace {
  std::size_t left_dim = 0;
  std::size_t right_dim = 0;
  std::size_t ring_dim = 0;
  QuotientSpace<F> space;

  std::size_t dim() const { return space.quotient_dim; }
};

template <class F>
BalancedTensorSpace<F> tensor_over_ring(const F& field, const RingModule<F>& x, const RingModule<F>& y);

// Images of (x·r)⊗y and x⊗(r·y) agree for every basis triple.
template <class F>
bool is_balanced(const BalancedTensorSpace<F>& b, const RingModule<F>& x, const RingModule<F>& y);

// f ⊗ g between balanced tensor spaces, on quotient bases.
template <class F>
Matrix<F> balanced_map(const Matrix<F>& f, const Matrix<F>& g, const BalancedTensorSpace<F>& src,
                       const BalancedTensorSpace<F>& dst);

// M^i as an A^0-module.
template <class F>
RingModule<F> degree_module(const DGModule<F>& m, int i);

// H^i(M) as an Ā-module.
template <class F>
RingModule<F> h0_module(const CohomologyModule<F>& h);

// H^i(M) as an A^0-module.
template <class F>
RingModule<F> a0_module(const CohomologyModule<F>& h, const DGModule<F>& m);

// The degree 0 and -1 pieces of M ⊗_A N for M, N concentrated in degrees <= 0.
template <class F>
struct TopDegreeTerms {
  BalancedTensorSpace<F> low_left;   // M^{-1} ⊗_{A^0} N^0
  BalancedTensorSpace<F> low_right;  // M^0 ⊗_{A^0} N^{-1}
  BalancedTensorSpace<F> top;        // M^0 ⊗_{A^0} N^0
  Matrix<F> phi;                     // (low_left ⊕ low_right) -> top
  Matrix<F> obvious_top;             // top -> (M ⊗_A N)^0
  Matrix<F> obvious_low;             // (low_left ⊕ low_right) -> (M ⊗_A N)^{-1}
};

template <class F>
TopDegreeTerms<F> top_degree_terms(const DGModule<F>& m, const DGModule<F>& n, const TensorComplex<F>& t);

// φ = (d_M ⊗ id) ⊕ (id ⊗ d_N).
template <class F>
Matrix<F> phi_map(const DGModule<F>& m, const DGModule<F>& n);

template <class F>
struct Degree0Check {
  Matrix<F> map;  // M^0 ⊗_{A^0} N^0 -> (M ⊗_A N)^0
  Evidence evidence;
};

template <class F>
Degree0Check<F> degree0_iso_check(const DGModule<F>& m, const DGModule<F>& n);

}  // namespace dgk
