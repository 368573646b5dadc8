#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "grlat/errors.hpp"
#include "grlat/rational.hpp"

using namespace grlat;

namespace {

// independent oracle: count factors of p in an integer directly
std::int64_t count_factors(Integer n, std::int64_t p) {
    std::int64_t k = 0;
    while (sgn(n) != 0 && n % p == 0) {
        n /= p;
        ++k;
    }
    return k;
}

Rational random_rational(std::mt19937_64& rng) {
    const std::int64_t num = static_cast<std::int64_t>(rng() % 2001) - 1000;
    const std::int64_t den = static_cast<std::int64_t>(rng() % 60) + 1;
    Rational r(num, den);
    r.canonicalize();
    return r;
}

}  // namespace

TEST_CASE("vp on the defining examples") {
    for (std::int64_t p : {2, 3, 5, 7, 97}) {
        CHECK(vp(Rational(p), p) == 1);
        CHECK(vp(Rational(1, p), p) == -1);
        CHECK(vp(Rational(0), p) == vp_infinity);
    }
    CHECK(vp(Rational(18), 3) == 2);
    CHECK(vp(Rational(5, 9), 3) == -2);
}

TEST_CASE("vp agrees with direct factor counting") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 500; ++i) {
        const Rational x = random_rational(rng);
        if (sgn(x) == 0) continue;
        for (std::int64_t p : {2, 3, 5}) {
            const std::int64_t expected =
                count_factors(x.get_num(), p) - count_factors(x.get_den(), p);
            CHECK(vp(x, p) == expected);
        }
    }
}

TEST_CASE("is_p_local") {
    CHECK(is_p_local(Rational(3, 2), 3));
    CHECK_FALSE(is_p_local(Rational(1, 3), 3));
    CHECK(is_p_local(Rational(0), 5));
}

TEST_CASE("is_p_unit") {
    CHECK(is_p_unit(PLocalScalar(Rational(2), 3)));
    CHECK_FALSE(is_p_unit(PLocalScalar(Rational(3), 3)));
    // 6/5 at p = 3: vp(6) = 1, vp(5) = 0, so the value is not a unit
    CHECK_FALSE(is_p_unit(PLocalScalar(Rational(6, 5), 3)));
}

TEST_CASE("valuation is additive and ultrametric") {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 300; ++i) {
        const Rational x = random_rational(rng);
        const Rational y = random_rational(rng);
        for (std::int64_t p : {2, 3, 5}) {
            if (sgn(x) != 0 && sgn(y) != 0) CHECK(vp(x * y, p) == vp(x, p) + vp(y, p));
            const std::int64_t lhs = vp(x + y, p);
            const std::int64_t rhs = std::min(vp(x, p), vp(y, p));
            CHECK(lhs >= rhs);
        }
    }
}

TEST_CASE("Z_(p) is closed under ring operations, division needs a unit") {
    std::mt19937_64 rng(4);
    for (int i = 0; i < 200; ++i) {
        Rational xv = random_rational(rng), yv = random_rational(rng);
        if (!is_p_local(xv, 5) || !is_p_local(yv, 5)) continue;
        const PLocalScalar x(xv, 5), y(yv, 5);
        CHECK_NOTHROW(x + y);
        CHECK_NOTHROW(x - y);
        CHECK_NOTHROW(x * y);
        if (sgn(yv) != 0) {
            if (y.is_unit())
                CHECK((x / y).valuation() >= 0);
            else
                CHECK_THROWS_AS(x / y, NotPLocal);
        }
    }
}

TEST_CASE("canonical form is unique") {
    Rational a(6, 4);
    a.canonicalize();
    Rational b(3, 2);
    CHECK(a == b);
    CHECK(format_rational(a) == format_rational(b));
    CHECK(format_rational(Rational(0)) == "0");
    CHECK(format_rational(Rational(-4, 8) + Rational(1, 2)) == "0");
}

TEST_CASE("mixing primes is a hard error") {
    const PLocalScalar x(Rational(1), 3);
    const PLocalScalar y(Rational(1), 5);
    CHECK_THROWS_AS(x + y, PrimeMismatch);
    CHECK_THROWS_AS(x * y, PrimeMismatch);
}

TEST_CASE("PLocalScalar rejects p in the denominator") {
    CHECK_THROWS_AS(PLocalScalar(Rational(1, 3), 3), NotPLocal);
    CHECK_NOTHROW(PLocalScalar(Rational(1, 3), 5));
}

TEST_CASE("rational parsing and formatting") {
    CHECK(parse_rational("3/2") == Rational(3, 2));
    CHECK(parse_rational("-7") == Rational(-7));
    CHECK(parse_rational("4/6") == Rational(2, 3));  // canonicalised on parse
    CHECK(format_rational(Rational(5)) == "5");
    CHECK(format_rational(Rational(-1, 2)) == "-1/2");
    CHECK_THROWS_AS(parse_rational("1.5"), SchemaError);
    CHECK_THROWS_AS(parse_rational("1/0"), SchemaError);
    CHECK_THROWS_AS(parse_rational(""), SchemaError);
    CHECK_THROWS_AS(parse_rational("2/"), SchemaError);
    CHECK_THROWS_AS(parse_rational("a/b"), SchemaError);
    CHECK_THROWS_AS(parse_rational("1 /2"), SchemaError);
}

TEST_CASE("round trip parse/format on random rationals") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        const Rational x = random_rational(rng);
        CHECK(parse_rational(format_rational(x)) == x);
    }
}

TEST_CASE("canonical representatives modulo p^k") {
    // vp(x - rep) >= k and rep = m p^v with m in [0, p^(k-v))
    std::mt19937_64 rng(3);
    for (int i = 0; i < 200; ++i) {
        const Rational x = random_rational(rng);
        for (std::int64_t p : {2, 3}) {
            for (std::int64_t k = 0; k <= 3; ++k) {
                const Rational rep = canonical_rep_mod(x, p, k);
                CHECK(vp(x - rep, p) >= k);
                if (sgn(rep) != 0) {
                    const std::int64_t v = vp(rep, p);
                    const Rational m = rep / pow_p(p, v);
                    CHECK(m.get_den() == 1);
                    CHECK(m >= 0);
                    CHECK(m < pow_p(p, k - v));
                }
            }
        }
    }
}

TEST_CASE("prime validation") {
    CHECK_THROWS_AS(vp(Rational(1), 4), UnsupportedPrime);
    CHECK_THROWS_AS(vp(Rational(1), 1), UnsupportedPrime);
    CHECK_NOTHROW(vp(Rational(1), 2));
}
