#include "helpers.hpp"

#include <random>

#include "dgk/linalg.hpp"

using namespace testing;

TEST_CASE("rref of small matrices") {
  PrimeField f;
  auto id = rref(Matrix<PrimeField>::identity(f, 2));
  CHECK(id.reduced == Matrix<PrimeField>::identity(f, 2));
  CHECK(id.pivots == std::vector<std::size_t>{0, 1});
  CHECK(id.rank() == 2);

  auto z = rref(Matrix<PrimeField>(f, 3, 3));
  CHECK(z.reduced.is_zero());
  CHECK(z.pivots.empty());
  CHECK(z.rank() == 0);

  RationalField q;
  auto r = rref(mat(q, {{1, 2}, {2, 4}}));
  CHECK(r.reduced == mat(q, {{1, 2}, {0, 0}}));
  CHECK(r.pivots == std::vector<std::size_t>{0});
  CHECK(r.rank() == 1);
}

TEST_CASE("kernel bases") {
  PrimeField f;
  CHECK(kernel_basis(Matrix<PrimeField>::identity(f, 3)).rows() == 0);
  CHECK(kernel_basis(Matrix<PrimeField>(f, 2, 3)).rows() == 3);

  PrimeField f5(5);
  auto k = kernel_basis(mat(f5, {{1, 1}}));
  REQUIRE(k.rows() == 1);
  CHECK(same_span(k, mat(f5, {{1, 4}})));
}

TEST_CASE("quotient spaces") {
  RationalField q;
  auto none = quotient(q, 3, Matrix<RationalField>(q, 0, 3));
  CHECK(none.quotient_dim == 3);
  CHECK(none.projection == Matrix<RationalField>::identity(q, 3));

  auto all = quotient(q, 2, mat(q, {{1, 0}, {0, 1}}));
  CHECK(all.quotient_dim == 0);

  auto one = quotient(q, 2, mat(q, {{1, -1}}));
  CHECK(one.quotient_dim == 1);
  CHECK(Matrix<RationalField>::column(q, one.project(vec(q, {1, 0}))) ==
        Matrix<RationalField>::column(q, one.project(vec(q, {0, 1}))));

  CHECK_THROWS_AS(quotient(q, 3, mat(q, {{1, 0}})), StructuralError);
}

TEST_CASE_TEMPLATE("random matrices satisfy the elimination invariants", F, PrimeField, RationalField) {
  F f;
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t rows = rng() % 6, cols = 1 + rng() % 6;
    auto m = random_matrix(f, rows, cols, rng);
    if (trial % 3 == 0 && rows > 1) m.set_block(rows - 1, 0, m.block(0, 0, 1, cols));  // force a dependency

    auto r = rref(m);
    CHECK(rref(r.reduced).reduced == r.reduced);
    CHECK(std::is_sorted(r.pivots.begin(), r.pivots.end()));
    CHECK(rank(m) == r.rank());

    auto k = kernel_basis(m);
    CHECK(k.rows() + rank(m) == cols);
    CHECK(rank(k) == k.rows());
    if (k.rows() > 0) CHECK((m * k.transpose()).is_zero());

    auto qs = quotient(f, cols, m);
    CHECK(qs.quotient_dim == cols - rank(m));
    CHECK(qs.projection * qs.section == Matrix<F>::identity(f, qs.quotient_dim));
    if (rows > 0) CHECK((qs.projection * m.transpose()).is_zero());

    auto img = image_basis(m);
    CHECK(img.rows() == rank(m));
  }
}

TEST_CASE_TEMPLATE("solve and inverse", F, PrimeField, RationalField) {
  F f;
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    auto a = random_matrix(f, 4, 4, rng);
    auto x = random_vector(f, 4, rng);
    auto b = dgk::apply(a, x);
    auto s = solve(a, b);
    REQUIRE(s.has_value());
    CHECK(Matrix<F>::column(f, dgk::apply(a, *s)) == Matrix<F>::column(f, b));
    if (auto inv = inverse(a)) CHECK(a * *inv == Matrix<F>::identity(f, 4));
    else CHECK(rank(a) < 4);
  }
  auto singular = mat(f, {{1, 2}, {2, 4}});
  CHECK_FALSE(solve(singular, vec(f, {1, 0})).has_value());
  CHECK_FALSE(inverse(singular).has_value());
}

TEST_CASE("field elements and specs") {
  RationalField q;
  CHECK(q.format(q.parse("6/-4")) == "-3/2");
  CHECK(q.format(q.from_int(0)) == "0/1");
  CHECK(q.format(q.parse("5")) == "5/1");

  PrimeField f(7);
  CHECK(f.format(f.from_int(-1)) == "6");
  CHECK(f.mul(f.from_int(3), f.inv(f.from_int(3))) == 1);
  CHECK_THROWS_AS(f.parse("7"), StructuralError);

  CHECK(parse_field_spec("Q") == FieldSpec::rationals());
  CHECK(parse_field_spec("F101") == FieldSpec::prime(101));
  CHECK(parse_field_spec("GF(7)") == FieldSpec::prime(7));
  CHECK_THROWS_AS(parse_field_spec("F100"), StructuralError);
  CHECK_THROWS_AS(parse_field_spec("R"), StructuralError);
  CHECK(to_string(FieldSpec::prime(101)) == "F101");
}
