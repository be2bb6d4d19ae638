#include "dgk/field.hpp"

#include <cctype>
#include <charconv>

namespace dgk {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::uint32_t parse_prime(std::string_view digits, std::string_view original) {
  std::uint64_t p = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
  if (ec != std::errc{} || ptr != digits.data() + digits.size())
    throw StructuralError("cannot parse field spec '" + std::string(original) + "'");
  if (p >= (1ULL << 31) || !is_prime(p))
    throw StructuralError("field modulus " + std::to_string(p) + " is not a prime below 2^31");
  return static_cast<std::uint32_t>(p);
}

}  // namespace

FieldSpec parse_field_spec(std::string_view text) {
  std::string_view s = trim(text);
  if (s == "Q" || s == "QQ" || s == "q" || s == "rationals") return FieldSpec::rationals();
  if (s.starts_with("GF(") && s.ends_with(")")) return FieldSpec::prime(parse_prime(s.substr(3, s.size() - 4), text));
  if (s.starts_with("F") || s.starts_with("f")) return FieldSpec::prime(parse_prime(s.substr(1), text));
  return FieldSpec::prime(parse_prime(s, text));
}

std::string to_string(const FieldSpec& spec) {
  return spec.kind == FieldKind::Rationals ? "Q" : "F" + std::to_string(spec.p);
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (p >= (1U << 31) || !is_prime(p))
    throw StructuralError("field modulus " + std::to_string(p) + " is not a prime below 2^31");
}

PrimeField::Element PrimeField::from_int(std::int64_t v) const {
  auto r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += static_cast<std::int64_t>(p_);
  return static_cast<Element>(r);
}

PrimeField::Element PrimeField::inv(Element a) const {
  if (a == 0) throw std::domain_error("inverse of zero in F_p");
  // Fermat: a^(p-2)
  Element result = 1, base = a, e = p_ - 2;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

PrimeField::Element PrimeField::parse(std::string_view text) const {
  std::string_view s = trim(text);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
    throw StructuralError("cannot parse F_" + std::to_string(p_) + " element '" + std::string(text) + "'");
  if (v < 0 || static_cast<std::uint64_t>(v) >= p_)
    throw StructuralError("F_" + std::to_string(p_) + " element '" + std::string(text) + "' not in [0, p)");
  return static_cast<Element>(v);
}

RationalField::Element RationalField::inv(const Element& a) const {
  if (sgn(a) == 0) throw std::domain_error("inverse of zero in Q");
  return Element(1) / a;
}

std::string RationalField::format(const Element& a) const {
  return a.get_num().get_str() + "/" + a.get_den().get_str();
}

RationalField::Element RationalField::parse(std::string_view text) const {
  std::string s(trim(text));
  if (s.empty()) throw StructuralError("empty rational literal");
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    bool ok = std::isdigit(static_cast<unsigned char>(c)) || c == '/' || (c == '-' && (i == 0 || s[i - 1] == '/'));
    if (!ok) throw StructuralError("cannot parse rational '" + s + "'");
  }
  Element value;
  if (value.set_str(s, 10) != 0) throw StructuralError("cannot parse rational '" + s + "'");
  if (sgn(value.get_den()) == 0) throw StructuralError("zero denominator in '" + s + "'");
  value.canonicalize();
  return value;
}

}  // namespace dgk
