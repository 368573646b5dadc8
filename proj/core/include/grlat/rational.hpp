#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <string>

namespace grlat {

// Exact arithmetic over Q and over the localisation Z_(p) = { a/b : p ∤ b }.
// Rationals are GMP mpq_class values, which are kept canonical (coprime
// numerator/denominator, positive denominator, zero is 0/1).

using Integer = mpz_class;
using Rational = mpq_class;

/// Sentinel for the valuation of 0.
inline constexpr std::int64_t vp_infinity = std::numeric_limits<std::int64_t>::max();

bool is_small_prime(std::int64_t p);

/// Throws UnsupportedPrime unless p is a (small) prime.
void require_prime(std::int64_t p);

/// p-adic valuation of x; vp_infinity for x = 0, negative for p in the
/// denominator.
std::int64_t vp(const Rational& x, std::int64_t p);

/// True iff vp(x, p) >= 0, i.e. x lies in Z_(p).
bool is_p_local(const Rational& x, std::int64_t p);

/// True iff vp(x, p) == 0; these are exactly the units of Z_(p).
bool is_p_unit(const Rational& x, std::int64_t p);

Rational pow_p(std::int64_t p, std::int64_t k);  // p^k as a rational, k may be < 0

/// The unique integer r in [0, p^k) with vp(x - r) >= k.  Requires x p-local
/// and k >= 0.
Integer reduce_mod_pk(const Rational& x, std::int64_t p, std::int64_t k);

/// Canonical representative of x modulo p^k Z_(p): the unique r = m p^v with
/// v = vp(x) and 0 <= m < p^(k-v) such that vp(x - r) >= k.  Returns 0 when
/// vp(x) >= k.  x may have negative valuation.
Rational canonical_rep_mod(const Rational& x, std::int64_t p, std::int64_t k);

/// Parses "num" or "num/den" in base 10.  Throws SchemaError on malformed
/// input or zero denominator.  The result is canonical.
Rational parse_rational(const std::string& text);

/// Formats canonically as "num" or "num/den".
std::string format_rational(const Rational& x);

/// An element of Z_(p): a rational whose denominator is coprime to p,
/// carrying its prime as context.  Mixing primes is a hard error.
struct PLocalScalar {
    Rational value;
    std::int64_t prime = 0;

    PLocalScalar() = default;
    PLocalScalar(Rational v, std::int64_t p);  // validates locality

    bool is_unit() const { return is_p_unit(value, prime); }
    std::int64_t valuation() const { return vp(value, prime); }
};

bool is_p_unit(const PLocalScalar& x);

PLocalScalar operator+(const PLocalScalar& a, const PLocalScalar& b);
PLocalScalar operator-(const PLocalScalar& a, const PLocalScalar& b);
PLocalScalar operator*(const PLocalScalar& a, const PLocalScalar& b);
/// Division is defined exactly when the divisor is a p-unit; throws NotPLocal
/// otherwise.
PLocalScalar operator/(const PLocalScalar& a, const PLocalScalar& b);
bool operator==(const PLocalScalar& a, const PLocalScalar& b);

}  // namespace grlat
