#include "helpers.hpp"

#include "dgk/kunneth.hpp"
#include "dgk/resolve.hpp"
#include "dgk/suite.hpp"

using namespace testing;

TEST_CASE_TEMPLATE("a free module resolves to itself", F, PrimeField, RationalField) {
  F f;
  for (const auto& name : family_names()) {
    INFO(name);
    auto a = family(f, name);
    auto m = free_rank_one(a, Side::Right);
    if (!cohomology_sup(m)) continue;  // the contractible family has nothing to resolve
    auto r = semifree_resolve(m, 2);
    CHECK(r.evidence.ok());
    CHECK(verify_resolution(r).ok());
    REQUIRE(r.generators().size() == 1);
    CHECK(r.generators()[0].degree == 0);
    for (int i = m.lo; i <= m.hi; ++i) {
      CHECK(r.p.dim(i) == m.dim(i));
      CHECK(is_bijective(r.rho.at(i)));
    }
  }
}

TEST_CASE_TEMPLATE("theta_der agrees with theta for the exterior algebra", F, PrimeField, RationalField) {
  F f;
  auto lam = family(f, "exterior");
  auto m = free_rank_one(lam, Side::Right), n = free_rank_one(lam, Side::Left);
  auto w = theta_der(m, n);
  CHECK(w.evidence.ok());
  auto plain = theta(m, n);
  CHECK(w.theta_der.rows() == 1);
  CHECK(is_bijective(w.theta_der));
  CHECK(eta_top(w, plain) * w.theta_der == plain.theta);
  CHECK(check_derived_square(m, n).ok());
}

TEST_CASE_TEMPLATE("the dual numbers resolve periodically", F, PrimeField, RationalField) {
  F f;
  auto fam = make_family(f, "dual_numbers");
  auto m = trivial_module(fam.algebra, fam.augmentations[0], Side::Right);
  auto r = semifree_resolve(m, 3);
  CHECK(verify_resolution(r).ok());
  REQUIRE(r.generators().size() == 4);
  for (std::size_t g = 0; g < 4; ++g) {
    CHECK(r.generators()[g].degree == -static_cast<int>(g));
    CHECK(r.generators()[g].stage == static_cast<int>(g));
  }
  CHECK(dual_numbers_oracle(f).ok());
}

TEST_CASE("acyclic modules give an empty resolution") {
  RationalField q;
  auto cone = ground_complex(q, Side::Right, -1, {1, 1}, {{-1, mat(q, {{1}})}});
  for (int depth = 1; depth <= 4; ++depth) {
    ResolveOptions o;
    o.anchor = 0;
    auto r = semifree_resolve(cone, depth, o);
    CHECK(r.generators().empty());
    CHECK(r.p.total_dim() == 0);
    CHECK(verify_resolution(r).ok());
  }
}

TEST_CASE_TEMPLATE("over the ground field theta_der is theta", F, PrimeField, RationalField) {
  F f;
  auto m = ground_complex(f, Side::Right, -2, {1, 2, 2}, {{-1, mat(f, {{1, 0}, {0, 0}})}});
  auto n = ground_complex(f, Side::Left, -1, {2, 1}, {{-1, mat(f, {{1, 1}})}});
  auto w = theta_der(m, n);
  REQUIRE(w.evidence.ok());
  auto plain = theta(m, n);
  CHECK(w.target().dim() == plain.target.dim());
  CHECK(derived_tensor_top(m, n).dim() == plain.target.dim());
  CHECK(is_bijective(eta_top(w, plain)));
  CHECK(check_derived_square(m, n).ok());
}

TEST_CASE_TEMPLATE("resolutions are reproducible and independent of the seed", F, PrimeField, RationalField) {
  F f;
  auto profile = default_profile();
  for (std::size_t k = 0; k < 30; ++k) {
    auto inst = generate_instance(f, profile, k);
    INFO("instance " << k << " " << inst.family << " " << inst.recipe_left);
    if (!cohomology_sup(inst.m)) continue;
    ResolveOptions o;
    o.seed = 5 + k;
    auto a = semifree_resolve(inst.m, 3, o);
    auto b = semifree_resolve(inst.m, 3, o);
    CHECK(a.p == b.p);
    CHECK(resolution_to_json(a) == resolution_to_json(b));
    CHECK(verify_resolution(a).ok());
    CHECK(check_resolution_independence(inst.m, inst.n, 1, 2).ok());
  }
}

TEST_CASE_TEMPLATE("the derived checks hold on generated instances", F, PrimeField, RationalField) {
  F f;
  auto profile = default_profile();
  for (std::size_t k = 0; k < 40; ++k) {
    auto inst = generate_instance(f, profile, k);
    INFO("instance " << k << " " << inst.family << " " << inst.recipe_left << "/" << inst.recipe_right);
    auto w = theta_der(inst.m, inst.n);
    CHECK(w.evidence.ok());
    CHECK(verify_resolution(w.resolution).ok());
    CHECK(is_bijective(w.theta_der));
    CHECK(check_derived_square(inst.m, inst.n).ok());
    CHECK(check_depth_stabilization(inst.m, inst.n, {}).ok());
  }
}

TEST_CASE("depth stabilization on the dual numbers") {
  PrimeField f;
  auto fam = make_family(f, "dual_numbers");
  auto m = trivial_module(fam.algebra, fam.augmentations[0], Side::Right);
  auto n = trivial_module(fam.algebra, fam.augmentations[0], Side::Left);
  CHECK(check_depth_stabilization(m, n, {2, 3, 4, 5}).ok());
  for (int d = 2; d <= 5; ++d) {
    DerivedOptions o;
    o.depth = d;
    CHECK(theta_der(m, n, o).theta_der.rows() == 1);
  }
}

TEST_CASE_TEMPLATE("lifts through resolutions", F, PrimeField, RationalField) {
  F f;
  auto profile = default_profile();
  std::size_t nonzero = 0;
  for (std::size_t k = 0; k < 30; ++k) {
    auto pair = generate_morphism_pair(f, profile, k);
    INFO("pair " << k << " " << pair.family << " " << pair.recipe);
    CHECK(check_theta_der_functoriality(pair.f, pair.g).ok());
    CHECK(check_theta_der_functoriality(StrictMorphism<F>::identity(pair.f.source),
                                        StrictMorphism<F>::identity(pair.g.source))
              .ok());
    if (!cohomology_sup(pair.f.source) || !cohomology_sup(pair.f.target)) continue;
    auto r = semifree_resolve(pair.f.source, 2, ResolveOptions{64, std::nullopt, *cohomology_sup(pair.f.source)});
    auto r2 = semifree_resolve(pair.f.target, 2, ResolveOptions{64, std::nullopt, *cohomology_sup(pair.f.source)});
    auto lift = lift_through_resolutions(pair.f, r, r2);
    CHECK(lift.evidence.ok());
    CHECK(validate_morphism(lift.lift).ok());
    nonzero += !lift.homotopy.empty();
  }
  CHECK(nonzero > 0);
}

TEST_CASE("resource and structural limits") {
  PrimeField f;
  auto fam = make_family(f, "dual_numbers");
  auto m = trivial_module(fam.algebra, fam.augmentations[0], Side::Right);
  ResolveOptions o;
  o.generator_cap = 0;
  try {
    semifree_resolve(m, 2, o);
    FAIL("expected a resource error");
  } catch (const ResourceError& e) {
    CHECK(std::string(e.what()).find("cap of 0") != std::string::npos);
  }
  CHECK_THROWS_AS(semifree_resolve(m, 0), StructuralError);

  auto n = trivial_module(fam.algebra, fam.augmentations[0], Side::Left);
  CHECK_THROWS_AS(theta_der(n, n), StructuralError);
  DerivedOptions low;
  low.i0 = -1;
  CHECK_THROWS_AS(theta_der(m, n, low), StructuralError);
}

TEST_CASE("resolution documents carry stage tags") {
  RationalField q;
  auto fam = make_family(q, "dual_numbers");
  auto m = trivial_module(fam.algebra, fam.augmentations[0], Side::Right);
  auto j = resolution_to_json(semifree_resolve(m, 2));
  CHECK(j.at("type") == "semifree_resolution");
  REQUIRE(j.at("generators").size() == 3);
  CHECK(j.at("generators")[2].at("stage") == 2);
  CHECK(j.at("generators")[2].at("degree") == -2);
  CHECK(j.at("depth") == 2);
}
