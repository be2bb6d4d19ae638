#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dgk/evidence.hpp"
#include "dgk/linalg.hpp"

namespace dgk {

enum class Side { Left, Right };

inline const char* to_string(Side s) { return s == Side::Left ? "left" : "right"; }

template <class F>
typename F::Element sign(const F& f, long long exponent) {
  return (exponent % 2 == 0) ? f.one() : f.neg(f.one());
}

// A nonpositive DG algebra A = A^min ⊕ ... ⊕ A^0 given by structure constants.
//
// product(i, j) is the matrix of A^i ⊗ A^j -> A^{i+j}; column k*dim(j) + l
// holds the product of basis vectors e^i_k and e^j_l. differential(i) is
// d: A^i -> A^{i+1} (so differential(0) has no rows).
template <class F>
struct DGAlgebra {
  F field{};
  int min_degree = 0;
  std::vector<std::size_t> dims;
  std::vector<Matrix<F>> products;
  std::vector<Matrix<F>> differentials;
  Vector<F> unit;

  // All structure maps zero, unit zero; callers fill in entries.
  static DGAlgebra zero_structure(const F& field, int min_degree, std::vector<std::size_t> dims);

  int degree_count() const { return static_cast<int>(dims.size()); }
  bool in_range(int i) const { return i >= min_degree && i <= 0; }
  std::size_t dim(int i) const { return in_range(i) ? dims[i - min_degree] : 0; }
  std::size_t total_dim() const;

  Matrix<F>& product(int i, int j) { return products[index(i, j)]; }
  const Matrix<F>& product(int i, int j) const { return products[index(i, j)]; }
  Matrix<F>& differential(int i) { return differentials[i - min_degree]; }
  const Matrix<F>& differential(int i) const { return differentials[i - min_degree]; }

  // x ∈ A^i, y ∈ A^j; result has dim(i + j) entries.
  Vector<F> multiply(int i, const Vector<F>& x, int j, const Vector<F>& y) const;
  // x ∈ A^i; result has dim(i + 1) entries.
  Vector<F> apply_d(int i, const Vector<F>& x) const;
  Vector<F> basis(int i, std::size_t k) const { return unit_vector(field, dim(i), k); }

  // Throws StructuralError when shapes are inconsistent.
  void check_structure() const;

  friend bool operator==(const DGAlgebra& a, const DGAlgebra& b) {
    return a.field == b.field && a.min_degree == b.min_degree && a.dims == b.dims && a.products == b.products &&
           a.differentials == b.differentials && Matrix<F>::column(a.field, a.unit) == Matrix<F>::column(b.field, b.unit);
  }

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i - min_degree) * dims.size() + static_cast<std::size_t>(j - min_degree);
  }
};

template <class F>
using AlgebraPtr = std::shared_ptr<const DGAlgebra<F>>;

// The ground field as a DG algebra concentrated in degree 0.
template <class F>
DGAlgebra<F> ground_algebra(const F& field);

// The opposite DG algebra: a ·op b = (-1)^{|a||b|} b·a, same differential.
template <class F>
DGAlgebra<F> opposite(const DGAlgebra<F>& a);

// A one-sided DG module over a DG algebra, supported on the window [lo, hi].
//
// action(i, j) is the matrix of A^j × M^i -> M^{i+j}. Column layout:
// Left: a*dim(i) + m (A ⊗ M). Right: m*dim(A^j) + a (M ⊗ A).
template <class F>
struct DGModule {
  Side side = Side::Left;
  AlgebraPtr<F> algebra;
  int lo = 0;
  int hi = 0;
  std::vector<std::size_t> dims;
  std::vector<Matrix<F>> differentials;  // d^i : M^i -> M^{i+1}, i in [lo, hi]
  std::vector<Matrix<F>> actions;

  static DGModule zero_structure(Side side, AlgebraPtr<F> algebra, int lo, int hi, std::vector<std::size_t> dims);

  const F& field() const { return algebra->field; }
  bool in_window(int i) const { return i >= lo && i <= hi; }
  std::size_t dim(int i) const { return in_window(i) ? dims[i - lo] : 0; }
  std::size_t total_dim() const;
  int width() const { return hi - lo; }

  const Matrix<F>& differential(int i) const { return differentials[i - lo]; }
  Matrix<F>& differential(int i) { return differentials[i - lo]; }
  // d^i as a dim(i+1) x dim(i) matrix for any i.
  Matrix<F> d(int i) const;

  Matrix<F>& action(int i, int j) { return actions[action_index(i, j)]; }
  const Matrix<F>& action(int i, int j) const { return actions[action_index(i, j)]; }

  // a ∈ A^j, m ∈ M^i; result in M^{i+j}.
  Vector<F> act(int j, const Vector<F>& a, int i, const Vector<F>& m) const;
  // Matrix of m ↦ a·m (Left) or m ↦ m·a (Right) from M^i to M^{i+j}.
  Matrix<F> action_by(int j, const Vector<F>& a, int i) const;
  Vector<F> apply_d(int i, const Vector<F>& v) const;

  void check_structure() const;

  friend bool operator==(const DGModule& a, const DGModule& b) {
    return a.side == b.side && *a.algebra == *b.algebra && a.lo == b.lo && a.hi == b.hi && a.dims == b.dims &&
           a.differentials == b.differentials && a.actions == b.actions;
  }

 private:
  std::size_t action_index(int i, int j) const {
    return static_cast<std::size_t>(i - lo) * algebra->dims.size() + static_cast<std::size_t>(j - algebra->min_degree);
  }
};

// A degree-0 map commuting with differentials and the algebra action.
template <class F>
struct StrictMorphism {
  DGModule<F> source;
  DGModule<F> target;
  std::vector<Matrix<F>> maps;  // index i - source.lo, shape target.dim(i) x source.dim(i)

  Matrix<F> at(int i) const;
  Vector<F> apply(int i, const Vector<F>& v) const;

  static StrictMorphism zero(const DGModule<F>& source, const DGModule<F>& target);
  static StrictMorphism identity(const DGModule<F>& m);
};

// g ∘ f
template <class F>
StrictMorphism<F> compose(const StrictMorphism<F>& g, const StrictMorphism<F>& f);

struct Violation {
  std::string axiom;
  std::string where;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

template <class F>
ValidationReport validate_algebra(const DGAlgebra<F>& a);

template <class F>
ValidationReport validate_module(const DGModule<F>& m);

template <class F>
ValidationReport validate_morphism(const StrictMorphism<F>& f);

// Ā = H^0(A) = A^0 / im(d: A^{-1} -> A^0) with the induced product.
template <class F>
struct H0Ring {
  QuotientSpace<F> space;
  Matrix<F> product;  // dim x dim*dim
  Vector<F> unit;

  std::size_t dim() const { return space.quotient_dim; }
  const Matrix<F>& projection() const { return space.projection; }
  const Matrix<F>& section() const { return space.section; }
};

template <class F>
H0Ring<F> h0_ring(const DGAlgebra<F>& a);

// Associativity, unit, and multiplicativity of A^0 -> Ā.
template <class F>
ValidationReport validate_h0_ring(const H0Ring<F>& r, const DGAlgebra<F>& a);

// H^i(M) = Z^i / B^i. Cocycle coordinates are the free columns of the
// reduced d^i, so class_map is defined on all of M^i but only meaningful on
// cocycles.
template <class F>
struct CohomologyModule {
  Side side = Side::Left;
  int degree = 0;
  std::size_t ambient_dim = 0;
  Matrix<F> outgoing;                     // d^i, used to test the cocycle condition
  Matrix<F> cocycles;                     // rows: basis of Z^i
  std::vector<std::size_t> cocycle_coordinates;
  QuotientSpace<F> space;                 // over cocycle coordinates
  Matrix<F> class_map;                    // dim x ambient_dim
  Matrix<F> representative_map;           // ambient_dim x dim
  std::vector<Matrix<F>> h0_action;       // one dim x dim matrix per Ā basis vector

  std::size_t dim() const { return space.quotient_dim; }
  bool is_cocycle(const Vector<F>& z) const;
  // Throws std::invalid_argument if z is not a cocycle.
  Vector<F> class_of(const Vector<F>& z) const;
  Vector<F> representative_of(const Vector<F>& h) const;
};

template <class F>
CohomologyModule<F> cohomology(const DGModule<F>& m, int i);

template <class F>
CohomologyModule<F> cohomology(const DGModule<F>& m, int i, const H0Ring<F>& abar);

// Invariants of a computed cohomology module, including well-definedness of
// the Ā-action.
template <class F>
Evidence verify_cohomology(const CohomologyModule<F>& h, const DGModule<F>& m);

// The A^0-action on H^i(M): one dim x dim matrix per A^0 basis vector.
template <class F>
std::vector<Matrix<F>> a0_action(const CohomologyModule<F>& h, const DGModule<F>& m);

// The A^0-action on M^i: one dim(i) x dim(i) matrix per A^0 basis vector.
template <class F>
std::vector<Matrix<F>> a0_action(const DGModule<F>& m, int i);

// H^i(f) : H^i(M) -> H^i(M').
template <class F>
Matrix<F> induced_on_cohomology(const StrictMorphism<F>& f, const CohomologyModule<F>& hs,
                                const CohomologyModule<F>& ht);

// Highest degree with nonzero cohomology, or nullopt if M is acyclic.
template <class F>
std::optional<int> cohomology_sup(const DGModule<F>& m);

// M[k]^i = M^{i+k}, d = (-1)^k d_M. Right actions are unchanged; left
// actions pick up (-1)^{k|a|}.
template <class F>
DGModule<F> shift(const DGModule<F>& m, int k);

// τ^{≤j}: M^i for i < j, Z^j at j (in kernel-basis coordinates), 0 above.
template <class F>
DGModule<F> smart_truncate(const DGModule<F>& m, int j);

template <class F>
StrictMorphism<F> smart_truncation_inclusion(const DGModule<F>& m, int j);

// τ^{≤j}(g) : τ^{≤j}M -> τ^{≤j}M' for a strict morphism g : M -> M'.
template <class F>
StrictMorphism<F> smart_truncation_map(const StrictMorphism<F>& g, int j);

// Right A-module <-> left A^op-module, a ·op m = (-1)^{|a||m|} m·a (and back).
template <class F>
DGModule<F> to_opposite(const DGModule<F>& m, AlgebraPtr<F> opposite_algebra);

}  // namespace dgk
