#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace torfol {

using Integer = mpz_class;
using Rational = mpq_class;
using QVec = std::vector<Rational>;
using ZVec = std::vector<Integer>;

// Parses "p", "-p" or "p/q" into a canonical rational. Decimal and exponent
// notation is rejected: inputs are exact by contract.
Rational parse_rational(std::string_view text);

// p / q in canonical form; the two-argument mpq_class constructor does not reduce.
Rational ratio(const Integer& p, const Integer& q);

// Canonical "p/q" form; integers print without a denominator.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);
std::string to_string(std::span<const Rational> v);

Integer floor(const Rational& q);
Integer ceil(const Rational& q);
// Fractional part {q} = q - floor(q), always in [0, 1).
Rational frac(const Rational& q);

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);

// Least common denominator of the entries; 1 for an empty span.
Integer common_denominator(std::span<const Rational> v);

bool is_integral(const Rational& q);
bool is_integral(std::span<const Rational> v);
bool is_zero(std::span<const Rational> v);

QVec to_qvec(std::span<const Integer> v);
QVec unit_vector(std::size_t dim, std::size_t i);
QVec zero_vector(std::size_t dim);

Rational dot(std::span<const Rational> a, std::span<const Rational> b);
QVec add(std::span<const Rational> a, std::span<const Rational> b);
QVec sub(std::span<const Rational> a, std::span<const Rational> b);
QVec scale(std::span<const Rational> a, const Rational& s);
QVec negate(std::span<const Rational> a);

// Lexicographic comparison of equal-length vectors.
bool lex_less(std::span<const Rational> a, std::span<const Rational> b);

}  // namespace torfol
