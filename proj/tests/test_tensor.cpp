#include "helpers.hpp"

#include "dgk/tensor.hpp"

using namespace testing;

namespace {

// The multiplication map from the free bigraded sum in degree n onto the
// module, for A ⊗_A N (left = true) or M ⊗_A A.
template <class F>
Matrix<F> multiplication(const TensorComplex<F>& t, const DGModule<F>& target, int n, bool free_on_left) {
  const auto& a = *target.algebra;
  const F& f = a.field;
  const auto& deg = t.at(n);
  Matrix<F> out(f, target.dim(n), deg.free_dim);
  for (const auto& b : deg.blocks)
    for (std::size_t x = 0; x < b.left_dim; ++x)
      for (std::size_t y = 0; y < b.right_dim; ++y) {
        Vector<F> v = free_on_left
                          ? target.act(b.left_degree, a.basis(b.left_degree, x), b.right_degree,
                                       unit_vector(f, b.right_dim, y))
                          : target.act(b.right_degree, a.basis(b.right_degree, y), b.left_degree,
                                       unit_vector(f, b.left_dim, x));
        out.set_column(b.offset + x * b.right_dim + y, v);
      }
  return out;
}

}  // namespace

TEST_CASE_TEMPLATE("tensoring with the algebra is the identity", F, PrimeField, RationalField) {
  F f;
  auto profile = default_profile();
  for (std::size_t k = 0; k < 30; ++k) {
    auto inst = generate_instance(f, profile, k);
    INFO("instance " << k << " " << inst.family);
    auto a_right = free_rank_one(inst.algebra, Side::Right);
    auto a_left = free_rank_one(inst.algebra, Side::Left);

    auto t = tensor_over_algebra(a_right, inst.n);
    for (int n = inst.n.lo; n <= inst.n.hi; ++n) {
      REQUIRE(t.has_degree(n));
      auto mult = multiplication(t, inst.n, n, true);
      CHECK(t.dim(n) == inst.n.dim(n));
      if (t.at(n).space.relations.rows() > 0) CHECK((mult * t.at(n).space.relations.transpose()).is_zero());
      CHECK(is_bijective(mult * t.at(n).space.section));
    }

    auto s = tensor_over_algebra(inst.m, a_left);
    for (int n = inst.m.lo; n <= inst.m.hi; ++n) {
      auto mult = multiplication(s, inst.m, n, false);
      CHECK(s.dim(n) == inst.m.dim(n));
      CHECK(is_bijective(mult * s.at(n).space.section));
    }
  }
}

TEST_CASE("over the ground field the tensor product is the convolution") {
  PrimeField f;
  auto m = ground_complex(f, Side::Right, -1, {2, 1});
  auto n = ground_complex(f, Side::Left, -1, {1, 3});
  auto t = tensor_over_algebra(m, n);
  CHECK(t.dim(0) == 3);
  CHECK(t.dim(-1) == 7);
  CHECK(t.dim(-2) == 2);
  CHECK(t.at(-1).space.relations.rows() == 0);
  CHECK(verify_tensor_complex(t).ok());
}

TEST_CASE_TEMPLATE("exterior algebra tensored with itself", F, PrimeField, RationalField) {
  F f;
  auto lam = family(f, "exterior");
  auto t = tensor_over_algebra(free_rank_one(lam, Side::Right), free_rank_one(lam, Side::Left));
  CHECK(t.dim(0) == 1);
  CHECK(t.dim(-1) == 1);
  CHECK(t.dim(-2) == 0);
  CHECK(verify_tensor_complex(t).ok());
}

TEST_CASE("balanced tensor products over ordinary rings") {
  RationalField q;
  auto x = degree_module(ground_complex(q, Side::Right, 0, {2}), 0);
  auto y = degree_module(ground_complex(q, Side::Left, 0, {3}), 0);
  CHECK(tensor_over_ring(q, x, y).dim() == 6);

  auto dual = make_family(q, "dual_numbers");
  auto fr = degree_module(free_rank_one(dual.algebra, Side::Right), 0);
  auto fl = degree_module(free_rank_one(dual.algebra, Side::Left), 0);
  auto b = tensor_over_ring(q, fr, fl);
  CHECK(b.dim() == 2);
  CHECK(is_balanced(b, fr, fl));

  auto tr = degree_module(trivial_module(dual.algebra, dual.augmentations[0], Side::Right), 0);
  auto tl = degree_module(trivial_module(dual.algebra, dual.augmentations[0], Side::Left), 0);
  CHECK(tensor_over_ring(q, tr, tl).dim() == 1);
}

TEST_CASE("the degree-zero comparison map") {
  PrimeField f;
  auto k = ground_complex(f, Side::Right, 0, {1});
  auto kl = ground_complex(f, Side::Left, 0, {1});
  auto c = degree0_iso_check(k, kl);
  CHECK(c.evidence.ok());
  CHECK(c.map == Matrix<PrimeField>::identity(f, 1));

  auto lam = family(f, "exterior");
  auto d = degree0_iso_check(free_rank_one(lam, Side::Right), free_rank_one(lam, Side::Left));
  CHECK(d.evidence.ok());
  CHECK(d.map.rows() == 1);
  CHECK(is_bijective(d.map));
}

TEST_CASE("the map phi") {
  RationalField q;
  auto m0 = ground_complex(q, Side::Right, -1, {1, 1});
  auto n0 = ground_complex(q, Side::Left, -1, {1, 1});
  CHECK(phi_map(m0, n0).is_zero());

  auto cone = ground_complex(q, Side::Right, -1, {1, 1}, {{-1, mat(q, {{1}})}});
  auto kl = ground_complex(q, Side::Left, 0, {1});
  auto phi = phi_map(cone, kl);
  CHECK(is_surjective(phi));
  auto t = tensor_over_algebra(cone, kl);
  CHECK(cohomology(t.as_complex(), 0).dim() == 0);

  auto lam = family(q, "exterior");
  auto mr = free_rank_one(lam, Side::Right), nl = free_rank_one(lam, Side::Left);
  CHECK(phi_map(mr, nl).is_zero());
  CHECK(cohomology(tensor_over_algebra(mr, nl).as_complex(), 0).dim() == 1);
}

TEST_CASE_TEMPLATE("tensor complexes of generated instances", F, PrimeField, RationalField) {
  F f;
  auto profile = default_profile();
  for (std::size_t k = 0; k < 60; ++k) {
    auto inst = generate_instance(f, profile, k);
    INFO("instance " << k << " " << inst.family);
    auto m = shift(inst.m, inst.m.hi);
    auto n = shift(inst.n, inst.n.hi);
    auto t = tensor_over_algebra(m, n);
    CHECK(verify_tensor_complex(t).ok());
    CHECK(t.hi <= 0);

    auto terms = top_degree_terms(m, n, t);
    CHECK(is_surjective(terms.obvious_low));
    CHECK(is_bijective(terms.obvious_top));
    CHECK(degree0_iso_check(m, n).evidence.ok());

    auto abar = h0_ring(*m.algebra);
    auto hm = h0_module(cohomology(m, 0, abar));
    auto hn = h0_module(cohomology(n, 0, abar));
    CHECK(is_balanced(tensor_over_ring(f, hm, hn), hm, hn));
    CHECK(is_balanced(terms.top, degree_module(m, 0), degree_module(n, 0)));
  }
}
