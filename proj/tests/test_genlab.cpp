#include "helpers.hpp"

#include <random>
#include <set>

#include "dgk/serialize.hpp"

using namespace testing;

TEST_CASE_TEMPLATE("exterior algebras", F, PrimeField, RationalField) {
  F f;
  auto lam = make_exterior(f);
  CHECK(lam.dim(0) == 1);
  CHECK(lam.dim(-1) == 1);
  CHECK(lam.multiply(-1, vec(f, {1}), -1, vec(f, {1})).empty());  // ε² lands in degree -2, which is zero

  auto deep = make_exterior(f, -3);
  CHECK(deep.dim(-3) == 1);
  CHECK(deep.dim(-1) == 0);
  CHECK(validate_algebra(deep).ok());
  CHECK_THROWS_AS(make_exterior(f, -2, true), StructuralError);
}

TEST_CASE_TEMPLATE("ordinary rings", F, PrimeField, RationalField) {
  F f;
  CHECK(ground_algebra(f).dim(0) == 1);
  auto dual = make_dual_numbers(f);
  CHECK(dual.dim(0) == 2);
  CHECK(dual.min_degree == 0);

  auto ut = make_upper_triangular(f);
  CHECK(ut.dim(0) == 3);
  // e11 e12 = e12 but e12 e11 = 0
  CHECK(Matrix<F>::column(f, ut.multiply(0, vec(f, {1, 0, 0}), 0, vec(f, {0, 1, 0}))) ==
        Matrix<F>::column(f, vec(f, {0, 1, 0})));
  CHECK(Matrix<F>::column(f, ut.multiply(0, vec(f, {0, 1, 0}), 0, vec(f, {1, 0, 0}))) ==
        Matrix<F>::column(f, vec(f, {0, 0, 0})));

  // x·x = 1 and x·1 = 1 contradicts the unit
  auto bad = mat(f, {{1, 1, 1, 1}, {0, 0, 0, 0}});
  CHECK_THROWS_AS(make_ordinary(f, bad, vec(f, {1, 0})), StructuralError);
  auto good = mat(f, {{1, 0, 0, 0}, {0, 1, 1, 0}});
  CHECK(make_ordinary(f, good, vec(f, {1, 0})) == dual);
}

TEST_CASE_TEMPLATE("named families and their augmentations", F, PrimeField, RationalField) {
  F f;
  for (const auto& name : family_names()) {
    INFO(name);
    auto fam = make_family(f, name);
    CHECK(fam.name == name);
    CHECK(validate_algebra(*fam.algebra).ok());
    for (const auto& aug : fam.augmentations) {
      CHECK(aug.size() == fam.algebra->dim(0));
      CHECK(validate_module(trivial_module(fam.algebra, aug, Side::Left)).ok());
      CHECK(validate_module(trivial_module(fam.algebra, aug, Side::Right, -2)).ok());
    }
  }
  CHECK(make_family(f, "contractible").augmentations.empty());
  CHECK_THROWS_AS(make_family(f, "octonions"), StructuralError);
}

TEST_CASE_TEMPLATE("tensor products of algebras", F, PrimeField, RationalField) {
  F f;
  auto lam = make_exterior(f);
  auto pair = tensor_algebras(lam, lam);
  CHECK(validate_algebra(pair).ok());
  CHECK(pair.dim(0) == 1);
  CHECK(pair.dim(-1) == 2);
  CHECK(pair.dim(-2) == 1);
  auto k = make_koszul_like(f, 1);
  CHECK(validate_algebra(k).ok());
  CHECK(h0_ring(k).dim() == 1);
}

TEST_CASE_TEMPLATE("cones and sums", F, PrimeField, RationalField) {
  F f;
  auto profile = default_profile();
  for (std::size_t k = 0; k < 20; ++k) {
    auto inst = generate_instance(f, profile, k);
    INFO("instance " << k << " " << inst.family);
    auto cone = mapping_cone(StrictMorphism<F>::identity(inst.n));
    CHECK(validate_module(cone).ok());
    CHECK_FALSE(cohomology_sup(cone).has_value());

    auto s = direct_sum(inst.m, inst.m);
    CHECK(validate_module(s).ok());
    for (int i = s.lo; i <= s.hi; ++i) {
      CHECK(s.dim(i) == 2 * inst.m.dim(i));
      CHECK(cohomology(s, i).dim() == 2 * cohomology(inst.m, i).dim());
    }
    auto in = sum_inclusion(inst.m, inst.m, 1), out = sum_projection(inst.m, inst.m, 1);
    CHECK(validate_morphism(in).ok());
    CHECK(validate_morphism(out).ok());
    auto round = compose(out, in);
    for (int i = inst.m.lo; i <= inst.m.hi; ++i)
      CHECK(round.at(i) == Matrix<F>::identity(f, inst.m.dim(i)));
  }
}

TEST_CASE_TEMPLATE("random modules satisfy the axioms", F, PrimeField, RationalField) {
  F f;
  auto lam = family(f, "exterior");
  std::mt19937_64 rng(23);
  ModuleShape shape;
  for (int t = 0; t < 50; ++t) {
    auto side = t % 2 ? Side::Left : Side::Right;
    auto m = random_module(lam, side, shape, rng);
    CHECK(validate_module(m).ok());
    CHECK(m.hi <= shape.top);
    CHECK(m.hi - m.lo + 1 <= static_cast<int>(shape.max_span));
    for (int i = m.lo; i <= m.hi; ++i) CHECK(m.dim(i) <= shape.max_dim);
  }
}

TEST_CASE_TEMPLATE("random morphisms are strict morphisms", F, PrimeField, RationalField) {
  F f;
  auto dual = family(f, "dual_numbers");
  std::mt19937_64 rng(5);
  auto x = random_module(dual, Side::Left, ModuleShape{}, rng);
  auto y = random_module(dual, Side::Left, ModuleShape{}, rng);
  for (const auto& g : morphism_basis(x, y)) CHECK(validate_morphism(g).ok());
  for (int t = 0; t < 10; ++t) CHECK(validate_morphism(random_morphism(x, y, rng)).ok());
  CHECK(morphism_basis(x, x).size() >= 1);
}

TEST_CASE_TEMPLATE("the noninjectivity witness", F, PrimeField, RationalField) {
  F f;
  auto w = noninjectivity_witness(f);
  CHECK(w.evidence.ok());
  CHECK(w.source_dim == 2);
  CHECK(w.target_dim == 1);
  CHECK_FALSE(is_zero_vector(f, w.element));
  CHECK(is_zero_vector(f, w.image));
  CHECK(w.map.rows() == 1);
  CHECK(w.map.cols() == 2);
  CHECK(is_surjective(w.map));
  CHECK(Matrix<F>::column(f, dgk::apply(w.map, w.element)) == Matrix<F>::column(f, w.image));
}

TEST_CASE_TEMPLATE("corpora are deterministic and indexwise", F, PrimeField, RationalField) {
  F f;
  auto profile = default_profile();
  profile.instance_count = 12;
  auto a = generate_corpus(f, profile);
  auto b = generate_corpus(f, profile);
  REQUIRE(a.size() == 12);
  std::set<std::string> families;
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k].m == b[k].m);
    CHECK(a[k].n == b[k].n);
    auto alone = generate_instance(f, profile, k);
    CHECK(alone.m == a[k].m);
    CHECK(alone.family == a[k].family);
    CHECK(a[k].m.side == Side::Right);
    CHECK(a[k].n.side == Side::Left);
    CHECK(validate_module(a[k].m).ok());
    CHECK(validate_module(a[k].n).ok());
    families.insert(a[k].family);
  }
  CHECK(families.size() > 3);

  auto other = profile;
  other.seed += 1;
  bool differs = false;
  for (std::size_t k = 0; k < 12; ++k) differs |= !(generate_instance(f, other, k).m == a[k].m);
  CHECK(differs);
  CHECK(derive_seed(1, 2, 3) == derive_seed(1, 2, 3));
  CHECK(derive_seed(1, 2, 3) != derive_seed(1, 2, 4));
}

TEST_CASE("family mixes restrict the corpus") {
  PrimeField f;
  auto profile = default_profile();
  profile.family_mix = {{"dual_numbers", 1.0}, {"exterior", 0.0}};
  for (std::size_t k = 0; k < 20; ++k) CHECK(generate_instance(f, profile, k).family == "dual_numbers");
}

TEST_CASE("profile validation and round trip") {
  auto p = default_profile();
  p.family_mix = {{"koszul", 2.0}, {"ground", 1.0}};
  p.seed = 99;
  p.field = FieldSpec::rationals();
  auto back = profile_from_json(profile_to_json(p));
  CHECK(back.seed == 99);
  CHECK(back.field == FieldSpec::rationals());
  CHECK(back.family_mix == p.family_mix);
  CHECK(profile_to_json(back) == profile_to_json(p));

  auto zero = default_profile();
  zero.instance_count = 0;
  CHECK_THROWS_AS(zero.check(), StructuralError);
  auto unknown = default_profile();
  unknown.family_mix = {{"nope", 1.0}};
  CHECK_THROWS_AS(unknown.check(), StructuralError);
  auto negative = default_profile();
  negative.family_mix = {{"ground", -1.0}};
  CHECK_THROWS_AS(negative.check(), StructuralError);
  auto dims = default_profile();
  dims.max_per_degree_dim = 0;
  CHECK_THROWS_AS(dims.check(), StructuralError);
}

TEST_CASE_TEMPLATE("morphism pairs", F, PrimeField, RationalField) {
  F f;
  auto profile = default_profile();
  std::map<std::string, int> recipes;
  for (std::size_t k = 0; k < 60; ++k) {
    auto pair = generate_morphism_pair(f, profile, k);
    INFO("pair " << k << " " << pair.family << " " << pair.recipe);
    ++recipes[pair.recipe];
    CHECK(validate_morphism(pair.f).ok());
    CHECK(validate_morphism(pair.g).ok());
    CHECK(pair.f.source.side == Side::Right);
    CHECK(pair.g.source.side == Side::Left);
    CHECK(*pair.f.source.algebra == *pair.g.source.algebra);
    if (pair.recipe == "zero") {
      bool zero = true;
      for (int i = pair.f.source.lo; i <= pair.f.source.hi; ++i) zero &= pair.f.at(i).is_zero();
      for (int i = pair.g.source.lo; i <= pair.g.source.hi; ++i) zero &= pair.g.at(i).is_zero();
      CHECK(zero);
    }
  }
  CHECK(recipes["zero"] >= 10);
  CHECK(recipes["composite"] >= 10);
  CHECK(recipes["random"] >= 10);
}
