#include "grlat/rational.hpp"

#include <cctype>

#include "grlat/errors.hpp"

namespace grlat {

bool is_small_prime(std::int64_t p) {
    if (p < 2) return false;
    for (std::int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

void require_prime(std::int64_t p) {
    if (!is_small_prime(p))
        throw UnsupportedPrime("p = " + std::to_string(p) + " is not a prime");
}

std::int64_t vp(const Rational& x, std::int64_t p) {
    require_prime(p);
    if (sgn(x) == 0) return vp_infinity;
    const Integer pz(static_cast<long>(p));
    Integer tmp;
    // mpq_class is canonical, so p divides at most one of num/den.
    const auto vnum = mpz_remove(tmp.get_mpz_t(), x.get_num().get_mpz_t(), pz.get_mpz_t());
    if (vnum > 0) return static_cast<std::int64_t>(vnum);
    const auto vden = mpz_remove(tmp.get_mpz_t(), x.get_den().get_mpz_t(), pz.get_mpz_t());
    return -static_cast<std::int64_t>(vden);
}

bool is_p_local(const Rational& x, std::int64_t p) {
    require_prime(p);
    return sgn(x) == 0 || mpz_divisible_ui_p(x.get_den().get_mpz_t(),
                                             static_cast<unsigned long>(p)) == 0;
}

bool is_p_unit(const Rational& x, std::int64_t p) { return vp(x, p) == 0; }

Rational pow_p(std::int64_t p, std::int64_t k) {
    Integer pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(p),
                  static_cast<unsigned long>(k < 0 ? -k : k));
    Rational r(pk);
    if (k < 0) r = 1 / r;
    return r;
}

Integer reduce_mod_pk(const Rational& x, std::int64_t p, std::int64_t k) {
    if (!is_p_local(x, p)) throw NotPLocal("reduce_mod_pk: value not p-local");
    if (k < 0) throw Error("reduce_mod_pk: negative exponent");
    Integer mod;
    mpz_ui_pow_ui(mod.get_mpz_t(), static_cast<unsigned long>(p),
                  static_cast<unsigned long>(k));
    if (mod == 1) return Integer(0);
    Integer deninv;
    if (mpz_invert(deninv.get_mpz_t(), x.get_den().get_mpz_t(), mod.get_mpz_t()) == 0)
        throw NotPLocal("reduce_mod_pk: denominator not invertible");  // unreachable
    Integer r = x.get_num() * deninv;
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), mod.get_mpz_t());
    return r;
}

Rational canonical_rep_mod(const Rational& x, std::int64_t p, std::int64_t k) {
    const std::int64_t v = vp(x, p);
    if (v >= k) return Rational(0);
    const Rational unit = x / pow_p(p, v);
    const Integer m = reduce_mod_pk(unit, p, k - v);
    return Rational(m) * pow_p(p, v);
}

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw SchemaError("empty rational literal");
    // Reject whitespace and anything that is not sign / digits / one slash,
    // then let GMP do the actual conversion.
    bool seen_slash = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (c == '/') {
            if (seen_slash || i == 0 || i + 1 == text.size())
                throw SchemaError("malformed rational literal: " + text);
            seen_slash = true;
        } else if (c == '-') {
            if (i != 0 && text[i - 1] != '/')
                throw SchemaError("malformed rational literal: " + text);
        } else if (!std::isdigit(static_cast<unsigned char>(c))) {
            throw SchemaError("malformed rational literal: " + text);
        }
    }
    Rational r;
    if (mpq_set_str(r.get_mpq_t(), text.c_str(), 10) != 0)
        throw SchemaError("malformed rational literal: " + text);
    if (sgn(Rational(r.get_den())) == 0)
        throw SchemaError("zero denominator: " + text);
    r.canonicalize();
    return r;
}

std::string format_rational(const Rational& x) { return x.get_str(); }

PLocalScalar::PLocalScalar(Rational v, std::int64_t p) : value(std::move(v)), prime(p) {
    require_prime(p);
    if (!is_p_local(value, p))
        throw NotPLocal(format_rational(value) + " is not p-local at p = " + std::to_string(p));
}

bool is_p_unit(const PLocalScalar& x) { return x.is_unit(); }

namespace {
void require_same_prime(const PLocalScalar& a, const PLocalScalar& b) {
    if (a.prime != b.prime)
        throw PrimeMismatch("mixed primes " + std::to_string(a.prime) + " and " +
                            std::to_string(b.prime));
}
}  // namespace

PLocalScalar operator+(const PLocalScalar& a, const PLocalScalar& b) {
    require_same_prime(a, b);
    return PLocalScalar(a.value + b.value, a.prime);
}

PLocalScalar operator-(const PLocalScalar& a, const PLocalScalar& b) {
    require_same_prime(a, b);
    return PLocalScalar(a.value - b.value, a.prime);
}

PLocalScalar operator*(const PLocalScalar& a, const PLocalScalar& b) {
    require_same_prime(a, b);
    return PLocalScalar(a.value * b.value, a.prime);
}

PLocalScalar operator/(const PLocalScalar& a, const PLocalScalar& b) {
    require_same_prime(a, b);
    if (!b.is_unit())
        throw NotPLocal("division by a non-unit of Z_(p)");
    return PLocalScalar(a.value / b.value, a.prime);
}

bool operator==(const PLocalScalar& a, const PLocalScalar& b) {
    return a.prime == b.prime && a.value == b.value;
}

}  // namespace grlat
