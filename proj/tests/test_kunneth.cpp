#include "helpers.hpp"

#include "dgk/kunneth.hpp"

using namespace testing;

TEST_CASE_TEMPLATE("theta over the ground field", F, PrimeField, RationalField) {
  F f;
  auto w = theta(ground_complex(f, Side::Right, 0, {1}), ground_complex(f, Side::Left, 0, {1}));
  CHECK(w.evidence.ok());
  CHECK(w.theta == Matrix<F>::identity(f, 1));
}

TEST_CASE_TEMPLATE("theta for the exterior algebra", F, PrimeField, RationalField) {
  F f;
  auto lam = family(f, "exterior");
  auto m = free_rank_one(lam, Side::Right), n = free_rank_one(lam, Side::Left);
  auto w = theta(m, n);
  CHECK(w.evidence.ok());
  CHECK(w.source.dim() == 1);
  CHECK(w.target.dim() == 1);
  CHECK(is_bijective(w.theta));
  CHECK(check_exact_sequences(m, n).ok());
  CHECK(phi_map(m, n).is_zero());
}

TEST_CASE("theta with vanishing top cohomology is the empty matrix") {
  RationalField q;
  auto cone = ground_complex(q, Side::Right, -1, {1, 1}, {{-1, mat(q, {{1}})}});
  auto n = ground_complex(q, Side::Left, 0, {2});
  auto w = theta(cone, n);
  CHECK(w.evidence.ok());
  CHECK(w.source.dim() == 0);
  CHECK(w.target.dim() == 0);
  CHECK(w.theta.rows() == 0);
  CHECK(w.theta.cols() == 0);
  CHECK(check_representative_independence(w, 20, 1).ok());
}

TEST_CASE("exact sequences over the ground field") {
  PrimeField f;
  CHECK(check_exact_sequences(ground_complex(f, Side::Right, 0, {1}), ground_complex(f, Side::Left, 0, {1})).ok());
  auto m = ground_complex(f, Side::Right, -2, {1, 2, 2}, {{-1, mat(f, {{1, 0}, {0, 0}})}});
  auto n = ground_complex(f, Side::Left, -1, {2, 1}, {{-1, mat(f, {{1, 1}})}});
  CHECK(check_exact_sequences(m, n).ok());
  CHECK(theta(m, n).evidence.ok());
}

TEST_CASE("representative independence with nonzero boundaries") {
  RationalField q;
  auto m = ground_complex(q, Side::Right, -1, {1, 2}, {{-1, mat(q, {{1}, {2}})}});
  auto n = ground_complex(q, Side::Left, -1, {2, 2}, {{-1, mat(q, {{1, 0}, {0, 0}})}});
  auto w = theta(m, n);
  REQUIRE(w.evidence.ok());
  CHECK(check_representative_independence(w, 20, 99).ok());
}

TEST_CASE_TEMPLATE("functoriality for identities and zero maps", F, PrimeField, RationalField) {
  F f;
  auto profile = default_profile();
  for (std::size_t k = 0; k < 20; ++k) {
    auto inst = generate_instance(f, profile, k);
    auto idm = StrictMorphism<F>::identity(inst.m), idn = StrictMorphism<F>::identity(inst.n);
    CHECK(check_functoriality(idm, idn).ok());
    CHECK(check_functoriality(StrictMorphism<F>::zero(inst.m, inst.m), idn).ok());
  }
}

TEST_CASE_TEMPLATE("theta on generated instances", F, PrimeField, RationalField) {
  F f;
  auto profile = default_profile();
  for (std::size_t k = 0; k < 80; ++k) {
    auto inst = generate_instance(f, profile, k);
    INFO("instance " << k << " " << inst.family << " " << inst.recipe_left << "/" << inst.recipe_right);
    auto w = theta(inst.m, inst.n);
    CHECK(w.evidence.ok());
    CHECK(w.source.dim() == w.target.dim());
    CHECK(is_bijective(w.theta));
    CHECK(check_exact_sequences(inst.m, inst.n).ok());
    CHECK(check_translation_agreement(inst.m, inst.n).ok());
    CHECK(check_representative_independence(w, 5, k).ok());
    // raising i0 above the window leaves nothing in the top degree
    auto up = theta(inst.m, inst.n, inst.m.hi + 1, inst.n.hi);
    CHECK(up.evidence.ok());
    CHECK(up.target.dim() == 0);
  }
}

TEST_CASE_TEMPLATE("naturality on generated morphism pairs", F, PrimeField, RationalField) {
  F f;
  auto profile = default_profile();
  std::size_t zeros = 0, composites = 0;
  for (std::size_t k = 0; k < 40; ++k) {
    auto pair = generate_morphism_pair(f, profile, k);
    INFO("pair " << k << " " << pair.family << " " << pair.recipe);
    zeros += pair.recipe == "zero";
    composites += pair.recipe == "composite";
    CHECK(check_functoriality(pair.f, pair.g).ok());
  }
  CHECK(zeros > 0);
  CHECK(composites > 0);
}
