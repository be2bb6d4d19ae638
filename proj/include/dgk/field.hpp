#pragma once

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>

#include "dgk/error.hpp"

namespace dgk {

enum class FieldKind { Rationals, PrimeField };

// Runtime description of the coefficient field.
struct FieldSpec {
  FieldKind kind = FieldKind::PrimeField;
  std::uint32_t p = 101;  // meaningful only for PrimeField

  static FieldSpec rationals() { return {FieldKind::Rationals, 0}; }
  static FieldSpec prime(std::uint32_t p) { return {FieldKind::PrimeField, p}; }

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

inline constexpr std::uint32_t kDefaultPrime = 101;

bool is_prime(std::uint64_t n);

// "Q" or "F<p>" (also accepts "QQ", "GF(p)" and a bare prime).
FieldSpec parse_field_spec(std::string_view text);
std::string to_string(const FieldSpec& spec);

// Z/p for a prime p < 2^31. Elements are kept reduced in [0, p).
class PrimeField {
 public:
  using Element = std::uint64_t;

  explicit PrimeField(std::uint32_t p = kDefaultPrime);

  std::uint32_t modulus() const { return p_; }
  FieldSpec spec() const { return FieldSpec::prime(p_); }

  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element from_int(std::int64_t v) const;

  Element add(Element a, Element b) const {
    Element s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Element sub(Element a, Element b) const { return a >= b ? a - b : a + p_ - b; }
  Element neg(Element a) const { return a == 0 ? 0 : p_ - a; }
  Element mul(Element a, Element b) const { return (a * b) % p_; }
  Element inv(Element a) const;
  bool is_zero(Element a) const { return a == 0; }
  bool is_one(Element a) const { return a == 1; }

  // dst -= factor * src
  void sub_scaled(Element& dst, Element factor, Element src) const { dst = sub(dst, mul(factor, src)); }

  Element random(std::mt19937_64& rng) const {
    return std::uniform_int_distribution<Element>(0, p_ - 1)(rng);
  }
  // Small values (here: [-2, 2] reduced) used for sparse-looking random data.
  Element random_small(std::mt19937_64& rng) const {
    return from_int(std::uniform_int_distribution<int>(-2, 2)(rng));
  }

  std::string format(Element a) const { return std::to_string(a); }
  Element parse(std::string_view text) const;

  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

 private:
  std::uint64_t p_;
};

// The rationals, backed by GMP. Elements are canonical (lowest terms, den > 0).
class RationalField {
 public:
  using Element = mpq_class;

  FieldSpec spec() const { return FieldSpec::rationals(); }

  Element zero() const { return Element(0); }
  Element one() const { return Element(1); }
  Element from_int(std::int64_t v) const { return Element(static_cast<long>(v)); }

  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element neg(const Element& a) const { return -a; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element inv(const Element& a) const;
  bool is_zero(const Element& a) const { return sgn(a) == 0; }
  bool is_one(const Element& a) const { return a == 1; }

  void sub_scaled(Element& dst, const Element& factor, const Element& src) const {
    if (sgn(src) != 0) dst -= factor * src;
  }

  Element random(std::mt19937_64& rng) const {
    return from_int(std::uniform_int_distribution<int>(-9, 9)(rng));
  }
  Element random_small(std::mt19937_64& rng) const {
    return from_int(std::uniform_int_distribution<int>(-2, 2)(rng));
  }

  // Always "num/den", e.g. "0/1", "-3/2".
  std::string format(const Element& a) const;
  Element parse(std::string_view text) const;

  friend bool operator==(const RationalField&, const RationalField&) { return true; }
};

template <class F>
concept Field = requires(const F f, typename F::Element a, std::mt19937_64 rng, std::string_view s) {
  { f.zero() } -> std::convertible_to<typename F::Element>;
  { f.add(a, a) } -> std::convertible_to<typename F::Element>;
  { f.mul(a, a) } -> std::convertible_to<typename F::Element>;
  { f.inv(a) } -> std::convertible_to<typename F::Element>;
  { f.is_zero(a) } -> std::same_as<bool>;
  { f.format(a) } -> std::same_as<std::string>;
  { f.parse(s) } -> std::convertible_to<typename F::Element>;
  { f.spec() } -> std::same_as<FieldSpec>;
  { f.random(rng) } -> std::convertible_to<typename F::Element>;
};

static_assert(Field<PrimeField>);
static_assert(Field<RationalField>);

// Calls fn(field) with the concrete field named by spec.
template <class Fn>
decltype(auto) with_field(const FieldSpec& spec, Fn&& fn) {
  if (spec.kind == FieldKind::Rationals) return fn(RationalField{});
  return fn(PrimeField{spec.p});
}

}  // namespace dgk

// Explicit instantiation helper: X(F) is expanded once per supported field.
#define DGK_FOR_EACH_FIELD(X) \
  X(::dgk::PrimeField)        \
  X(::dgk::RationalField)
