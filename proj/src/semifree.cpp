#include "dgk/semifree.hpp"

namespace dgk {

template <class F>
std::size_t SemiFreeBuilder<F>::dim(int i) const {
  std::size_t total = 0;
  for (const auto& g : gens_) total += algebra_->dim(i - g.degree);
  return total;
}

template <class F>
std::size_t SemiFreeBuilder<F>::offset(int i, std::size_t g) const {
  std::size_t total = 0;
  for (std::size_t k = 0; k < g; ++k) total += algebra_->dim(i - gens_[k].degree);
  return total;
}

template <class F>
std::size_t SemiFreeBuilder<F>::count_in_degree(int k) const {
  std::size_t c = 0;
  for (const auto& g : gens_) c += g.degree == k;
  return c;
}

template <class F>
Matrix<F> SemiFreeBuilder<F>::differential(int i) const {
  const auto& a = *algebra_;
  const F& f = a.field;
  Matrix<F> d(f, dim(i + 1), dim(i));
  std::size_t col = 0;
  for (std::size_t g = 0; g < gens_.size(); ++g) {
    const int k = gens_[g].degree;
    const int j = i - k;
    const std::size_t da = a.dim(j);
    if (da == 0) continue;
    const auto& x = gens_[g].boundary;  // dg ∈ P^{k+1}
    for (std::size_t e = 0; e < da; ++e, ++col) {
      // Leibniz on the generator's own block: g·de or de·g.
      if (a.in_range(j + 1) && a.dim(j + 1) > 0) {
        const auto& dmat = a.differential(j);
        const auto s = side_ == Side::Right ? sign(f, k) : f.one();
        const std::size_t off = offset(i + 1, g);
        for (std::size_t r = 0; r < a.dim(j + 1); ++r)
          if (!f.is_zero(dmat(r, e))) d(off + r, col) = f.add(d(off + r, col), f.mul(s, dmat(r, e)));
      }
      // dg·e (right) or (-1)^j e·dg (left), expanded through the products in A.
      const auto s = side_ == Side::Right ? f.one() : sign(f, j);
      std::size_t pos = 0;
      for (std::size_t h = 0; h < gens_.size(); ++h) {
        const int bdeg = k + 1 - gens_[h].degree;
        const std::size_t db = a.dim(bdeg);
        if (db == 0) continue;
        const int tdeg = bdeg + j;
        const std::size_t dt = a.dim(tdeg);
        const std::size_t toff = dt ? offset(i + 1, h) : 0;
        for (std::size_t b = 0; b < db; ++b, ++pos) {
          const auto& coeff = x[pos];
          if (f.is_zero(coeff) || dt == 0) continue;
          const auto& prod = side_ == Side::Right ? a.product(bdeg, j) : a.product(j, bdeg);
          const std::size_t pc = side_ == Side::Right ? b * da + e : e * db + b;
          const auto c = f.mul(s, coeff);
          for (std::size_t r = 0; r < dt; ++r)
            if (!f.is_zero(prod(r, pc))) d(toff + r, col) = f.add(d(toff + r, col), f.mul(c, prod(r, pc)));
        }
      }
    }
  }
  return d;
}

template <class F>
std::size_t SemiFreeBuilder<F>::add(int degree, Vector<F> boundary, int stage) {
  if (!gens_.empty() && degree > gens_.back().degree)
    throw StructuralError("semi-free generators must be added in nonincreasing degree");
  if (boundary.size() != dim(degree + 1))
    throw StructuralError("generator boundary has length " + std::to_string(boundary.size()) + ", expected " +
                          std::to_string(dim(degree + 1)));
  gens_.push_back({degree, std::move(boundary), stage});
  return gens_.size() - 1;
}

template <class F>
DGModule<F> SemiFreeBuilder<F>::module(int empty_degree) const {
  const auto& a = *algebra_;
  if (gens_.empty()) return DGModule<F>::zero_structure(side_, algebra_, empty_degree, empty_degree, {0});
  const int lo = bottom(), hi = top();
  std::vector<std::size_t> dims;
  for (int i = lo; i <= hi; ++i) dims.push_back(dim(i));
  auto m = DGModule<F>::zero_structure(side_, algebra_, lo, hi, dims);
  for (int i = lo; i < hi; ++i) m.differential(i) = differential(i);

  const F& f = a.field;
  for (int i = lo; i <= hi; ++i)
    for (int j = a.min_degree; j <= 0; ++j) {
      if (!m.in_window(i + j) || a.dim(j) == 0) continue;
      auto& act = m.action(i, j);
      const std::size_t dj = a.dim(j), dmi = m.dim(i);
      for (std::size_t g = 0; g < gens_.size(); ++g) {
        const int b = i - gens_[g].degree;
        const std::size_t db = a.dim(b);
        if (db == 0) continue;
        const int t = b + j;
        const std::size_t dt = a.dim(t);
        if (dt == 0) continue;
        const std::size_t src = offset(i, g), dst = offset(i + j, g);
        const auto& prod = side_ == Side::Right ? a.product(b, j) : a.product(j, b);
        for (std::size_t bi = 0; bi < db; ++bi)
          for (std::size_t e = 0; e < dj; ++e) {
            // right: (g·b)·e = g·(b e); left: e·(b·g) = (e b)·g
            const std::size_t col = side_ == Side::Right ? (src + bi) * dj + e : e * dmi + src + bi;
            const std::size_t pc = side_ == Side::Right ? bi * dj + e : e * db + bi;
            for (std::size_t r = 0; r < dt; ++r)
              if (!f.is_zero(prod(r, pc))) act(dst + r, col) = prod(r, pc);
          }
      }
    }
  return m;
}

template <class F>
StrictMorphism<F> SemiFreeBuilder<F>::extend(const DGModule<F>& p, const DGModule<F>& target,
                                             const std::vector<Vector<F>>& images) const {
  const auto& a = *algebra_;
  auto rho = StrictMorphism<F>::zero(p, target);
  for (int i = p.lo; i <= p.hi; ++i) {
    auto& mat = rho.maps[i - p.lo];
    for (std::size_t g = 0; g < gens_.size(); ++g) {
      const int k = gens_[g].degree;
      const int j = i - k;
      if (a.dim(j) == 0 || !target.in_window(i)) continue;
      const std::size_t off = offset(i, g);
      for (std::size_t e = 0; e < a.dim(j); ++e)
        mat.set_column(off + e, target.act(j, a.basis(j, e), k, images[g]));
    }
  }
  return rho;
}

#define DGK_INSTANTIATE(F) template class SemiFreeBuilder<F>;
DGK_FOR_EACH_FIELD(DGK_INSTANTIATE)
#undef DGK_INSTANTIATE

}  // namespace dgk
