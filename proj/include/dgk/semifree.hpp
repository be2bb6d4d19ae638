#pragma once

#include <vector>

#include "dgk/dg.hpp"

namespace dgk {

// Free graded A-module on homogeneous generators, with the differential fixed
// on generators and extended by the Leibniz rule. Generators are added in
// nonincreasing degree, so a new generator of degree k only appends basis
// vectors to degrees <= k and never disturbs coordinates used by earlier
// boundaries.
//
// The basis of P^i lists, for each generator g (creation order) with
// i - |g| in A's range, the products g·e (right) or e·g (left) for e running
// over the basis of A^{i-|g|}.
template <class F>
class SemiFreeBuilder {
 public:
  struct Generator {
    int degree = 0;
    Vector<F> boundary;  // in P^{degree+1}
    int stage = 0;
  };

  SemiFreeBuilder() = default;
  SemiFreeBuilder(Side side, AlgebraPtr<F> algebra) : side_(side), algebra_(std::move(algebra)) {}

  Side side() const { return side_; }
  const AlgebraPtr<F>& algebra() const { return algebra_; }
  const std::vector<Generator>& generators() const { return gens_; }
  bool empty() const { return gens_.empty(); }
  int top() const { return gens_.front().degree; }
  int bottom() const { return gens_.back().degree + algebra_->min_degree; }

  std::size_t dim(int i) const;
  // Offset of the block of generator g inside P^i (only valid when g contributes).
  std::size_t offset(int i, std::size_t g) const;
  std::size_t count_in_degree(int k) const;
  Matrix<F> differential(int i) const;  // P^i -> P^{i+1}

  // Throws StructuralError when the degree order is violated or the boundary
  // has the wrong length. The boundary must be a cocycle for d^2 = 0.
  std::size_t add(int degree, Vector<F> boundary, int stage = 0);

  // The finite semi-free module on the current generators, window
  // [bottom(), top()]; an empty builder gives the zero module at `empty_degree`.
  DGModule<F> module(int empty_degree = 0) const;

  // Strict morphism P -> target sending generator g to images[g] ∈ target^{|g|}.
  StrictMorphism<F> extend(const DGModule<F>& p, const DGModule<F>& target, const std::vector<Vector<F>>& images) const;

 private:
  Side side_ = Side::Left;
  AlgebraPtr<F> algebra_;
  std::vector<Generator> gens_;
};

}  // namespace dgk
