#include "torfol/rational.hpp"

#include <algorithm>
#include <cctype>

#include "torfol/error.hpp"

namespace torfol {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::RayNotRational: return "RayNotRational";
    case ErrorCode::UnboundedRegion: return "UnboundedRegion";
    case ErrorCode::InvalidLattice: return "InvalidLattice";
    case ErrorCode::InvalidCone: return "InvalidCone";
    case ErrorCode::InvalidFan: return "InvalidFan";
    case ErrorCode::NotInSupport: return "NotInSupport";
    case ErrorCode::NotPrimitive: return "NotPrimitive";
    case ErrorCode::ConeNotInFan: return "ConeNotInFan";
    case ErrorCode::NotRCartier: return "NotRCartier";
    case ErrorCode::RequiresSimplicial: return "RequiresSimplicial";
    case ErrorCode::RequiresCompleteSimplicial: return "RequiresCompleteSimplicial";
    case ErrorCode::InvalidFoliation: return "InvalidFoliation";
    case ErrorCode::InvalidDivisor: return "InvalidDivisor";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::HypothesisFailed: return "HypothesisFailed";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::InternalConsistency: return "InternalConsistency";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownExample: return "UnknownExample";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.find_first_of(".eE") != std::string_view::npos) {
    fail(ErrorCode::ParseError, "'" + std::string(text) +
                                    "' is not an exact rational; write it as p/q (e.g. 1/2 instead of 0.5)");
  }
  std::string_view body = s;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    fail(ErrorCode::ParseError, "'" + std::string(text) + "' is not a rational of the form p/q");
  }
  const Integer d{std::string(den)};
  if (d == 0) fail(ErrorCode::ParseError, "'" + std::string(text) + "' has a zero denominator");
  Rational q{Integer{std::string(num)}, d};
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

Rational ratio(const Integer& p, const Integer& q) {
  if (q == 0) fail(ErrorCode::ZeroDenominator, "zero denominator");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(const Integer& z) { return z.get_str(); }

std::string to_string(std::span<const Rational> v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += v[i].get_str();
  }
  return out + ")";
}

Integer floor(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Rational frac(const Rational& q) { return q - Rational(floor(q)); }

Integer gcd(const Integer& a, const Integer& b) {
  Integer r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Integer common_denominator(std::span<const Rational> v) {
  Integer d = 1;
  for (const auto& q : v) d = lcm(d, q.get_den());
  return d;
}

bool is_integral(const Rational& q) { return q.get_den() == 1; }

bool is_integral(std::span<const Rational> v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& q) { return is_integral(q); });
}

bool is_zero(std::span<const Rational> v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& q) { return sgn(q) == 0; });
}

QVec to_qvec(std::span<const Integer> v) {
  QVec out;
  out.reserve(v.size());
  for (const auto& z : v) out.emplace_back(z);
  return out;
}

QVec unit_vector(std::size_t dim, std::size_t i) {
  QVec e(dim, Rational(0));
  e.at(i) = 1;
  return e;
}

QVec zero_vector(std::size_t dim) { return QVec(dim, Rational(0)); }

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

QVec add(std::span<const Rational> a, std::span<const Rational> b) {
  QVec r(a.begin(), a.end());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

QVec sub(std::span<const Rational> a, std::span<const Rational> b) {
  QVec r(a.begin(), a.end());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

QVec scale(std::span<const Rational> a, const Rational& s) {
  QVec r(a.begin(), a.end());
  for (auto& x : r) x *= s;
  return r;
}

QVec negate(std::span<const Rational> a) { return scale(a, Rational(-1)); }

bool lex_less(std::span<const Rational> a, std::span<const Rational> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace torfol
