#include "grlat/groupring.hpp"

#include <algorithm>

#include "grlat/errors.hpp"

namespace grlat {

namespace {

void require_size(const QVector& c, std::size_t n, const char* what) {
    if (c.size() != n) throw DimensionMismatch(std::string(what) + ": wrong length");
}

void require_local(const QVector& c, std::int64_t p, const char* what) {
    for (const auto& x : c)
        if (!is_p_local(x, p)) throw NotPLocal(std::string(what) + ": coefficient not p-local");
}

void require_same_prime(std::int64_t a, std::int64_t b) {
    if (a != b)
        throw PrimeMismatch("mixed primes " + std::to_string(a) + " and " + std::to_string(b));
}

}  // namespace

QAlgebraElt::QAlgebraElt(std::int64_t p, QVector c) : prime(p), coeffs(std::move(c)) {
    require_prime(p);
    require_size(coeffs, static_cast<std::size_t>(p), "QAlgebraElt");
}

GroupRingElt::GroupRingElt(std::int64_t p, QVector c) : prime(p), coeffs(std::move(c)) {
    require_prime(p);
    require_size(coeffs, static_cast<std::size_t>(p), "GroupRingElt");
    require_local(coeffs, p, "GroupRingElt");
}

bool GroupRingElt::is_zero() const { return grlat::is_zero(coeffs); }

GroupRingElt gr_zero(std::int64_t p) { return GroupRingElt(p, QVector(p)); }

GroupRingElt gr_one(std::int64_t p) { return gr_sigma(p, 0); }

GroupRingElt gr_sigma(std::int64_t p, std::int64_t k) {
    require_prime(p);
    QVector c(p);
    const std::int64_t i = ((k % p) + p) % p;
    c[static_cast<std::size_t>(i)] = 1;
    return GroupRingElt(p, std::move(c));
}

GroupRingElt gr_norm(std::int64_t p) {
    QVector c(p, Rational(1));
    return GroupRingElt(p, std::move(c));
}

GroupRingElt gr_scalar(std::int64_t p, const Rational& c) {
    QVector v(p);
    v[0] = c;
    return GroupRingElt(p, std::move(v));
}

QAlgebraElt to_qalgebra(const GroupRingElt& x) { return QAlgebraElt(x.prime, x.coeffs); }

QAlgebraElt qa_e1(std::int64_t p) {
    require_prime(p);
    QVector c(p, Rational(1) / Rational(p));
    return QAlgebraElt(p, std::move(c));
}

QAlgebraElt qa_add(const QAlgebraElt& x, const QAlgebraElt& y) {
    require_same_prime(x.prime, y.prime);
    return QAlgebraElt(x.prime, x.coeffs + y.coeffs);
}

QAlgebraElt qa_sub(const QAlgebraElt& x, const QAlgebraElt& y) {
    require_same_prime(x.prime, y.prime);
    return QAlgebraElt(x.prime, x.coeffs - y.coeffs);
}

QAlgebraElt qa_mul(const QAlgebraElt& x, const QAlgebraElt& y) {
    require_same_prime(x.prime, y.prime);
    const std::size_t p = x.coeffs.size();
    QVector c(p);
    for (std::size_t i = 0; i < p; ++i) {
        if (sgn(x.coeffs[i]) == 0) continue;
        for (std::size_t j = 0; j < p; ++j) {
            if (sgn(y.coeffs[j]) == 0) continue;
            c[(i + j) % p] += x.coeffs[i] * y.coeffs[j];
        }
    }
    return QAlgebraElt(x.prime, std::move(c));
}

QAlgebraElt qa_scale(const Rational& c, const QAlgebraElt& x) {
    return QAlgebraElt(x.prime, c * x.coeffs);
}

QAlgebraElt involution(const QAlgebraElt& x) {
    const std::size_t p = x.coeffs.size();
    QVector c(p);
    c[0] = x.coeffs[0];
    for (std::size_t i = 1; i < p; ++i) c[p - i] = x.coeffs[i];
    return QAlgebraElt(x.prime, std::move(c));
}

GroupRingElt gr_add(const GroupRingElt& x, const GroupRingElt& y) {
    require_same_prime(x.prime, y.prime);
    return GroupRingElt(x.prime, x.coeffs + y.coeffs);
}

GroupRingElt gr_sub(const GroupRingElt& x, const GroupRingElt& y) {
    require_same_prime(x.prime, y.prime);
    return GroupRingElt(x.prime, x.coeffs - y.coeffs);
}

GroupRingElt gr_mul(const GroupRingElt& x, const GroupRingElt& y) {
    require_same_prime(x.prime, y.prime);
    return GroupRingElt(x.prime, qa_mul(to_qalgebra(x), to_qalgebra(y)).coeffs);
}

GroupRingElt gr_scale(const Rational& c, const GroupRingElt& x) {
    return GroupRingElt(x.prime, c * x.coeffs);
}

GroupRingElt involution(const GroupRingElt& x) {
    return GroupRingElt(x.prime, involution(to_qalgebra(x)).coeffs);
}

bool operator==(const GroupRingElt& x, const GroupRingElt& y) {
    return x.prime == y.prime && x.coeffs == y.coeffs;
}

bool operator==(const QAlgebraElt& x, const QAlgebraElt& y) {
    return x.prime == y.prime && x.coeffs == y.coeffs;
}

Rational augmentation(const QAlgebraElt& x) {
    Rational s = 0;
    for (const auto& c : x.coeffs) s += c;
    return s;
}

Rational augmentation(const GroupRingElt& x) { return augmentation(to_qalgebra(x)); }

bool in_radical(const GroupRingElt& x) { return vp(augmentation(x), x.prime) >= 1; }

Rational trace_reg(const QAlgebraElt& x) { return Rational(x.prime) * x.coeffs[0]; }

Rational trace_reg(const GroupRingElt& x) { return trace_reg(to_qalgebra(x)); }

// -- cyclotomic arithmetic ----------------------------------------------------

QVector cyclopoly_reduce(const QVector& coeffs, std::int64_t p) {
    require_prime(p);
    const std::size_t deg = static_cast<std::size_t>(p - 1);
    // First fold exponents >= p via zeta^p = 1, then eliminate zeta^(p-1).
    QVector folded(static_cast<std::size_t>(p));
    for (std::size_t i = 0; i < coeffs.size(); ++i) folded[i % p] += coeffs[i];
    QVector out(deg);
    for (std::size_t i = 0; i < deg; ++i) out[i] = folded[i] - folded[deg];
    return out;
}

QVector cyclopoly_mul(const QVector& a, const QVector& b, std::int64_t p) {
    if (a.size() + 1 != static_cast<std::size_t>(p) || b.size() + 1 != static_cast<std::size_t>(p))
        throw DimensionMismatch("cyclopoly_mul: wrong length");
    QVector prod(2 * a.size(), Rational(0));
    if (prod.empty()) prod.resize(1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (sgn(a[i]) == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] += a[i] * b[j];
    }
    return cyclopoly_reduce(prod, p);
}

QVector cyclopoly_conj(const QVector& a, std::int64_t p) {
    // zeta^i -> zeta^(p-i): substitute and reduce.
    QVector lifted(static_cast<std::size_t>(p) + 1);
    for (std::size_t i = 0; i < a.size(); ++i) lifted[i == 0 ? 0 : p - i] += a[i];
    return cyclopoly_reduce(lifted, p);
}

Rational cyclopoly_eval_one(const QVector& a) {
    Rational s = 0;
    for (const auto& c : a) s += c;
    return s;
}

QVector cyclopoly_inv(const QVector& a, std::int64_t p) {
    // Extended Euclid in Q[x] against Phi_p = 1 + x + ... + x^(p-1).
    if (is_zero(a)) throw SingularMatrix("cyclopoly_inv: zero element");
    const std::size_t n = static_cast<std::size_t>(p - 1);
    auto degree = [](const QVector& f) -> std::ptrdiff_t {
        for (std::ptrdiff_t d = static_cast<std::ptrdiff_t>(f.size()) - 1; d >= 0; --d)
            if (sgn(f[d]) != 0) return d;
        return -1;
    };
    QVector r0(static_cast<std::size_t>(p), Rational(1));  // Phi_p
    QVector r1 = a;
    r1.resize(static_cast<std::size_t>(p), Rational(0));
    QVector s0(static_cast<std::size_t>(p), Rational(0));
    QVector s1(static_cast<std::size_t>(p), Rational(0));
    s1[0] = 1;
    while (true) {
        const auto d1 = degree(r1);
        if (d1 < 0) throw SingularMatrix("cyclopoly_inv: common factor with Phi_p");
        if (d1 == 0) break;
        // r0 = q r1 + r; replace (r0, r1) by (r1, r) and track s.
        QVector rem = r0;
        QVector q(static_cast<std::size_t>(p), Rational(0));
        auto dr = degree(rem);
        while (dr >= d1) {
            const Rational f = rem[dr] / r1[d1];
            q[dr - d1] += f;
            for (std::ptrdiff_t i = 0; i <= d1; ++i) rem[dr - d1 + i] -= f * r1[i];
            dr = degree(rem);
        }
        QVector snew = s0;
        for (std::size_t i = 0; i < snew.size(); ++i) {
            Rational acc = 0;
            for (std::size_t j = 0; j <= i; ++j)
                if (j < q.size() && (i - j) < s1.size()) acc += q[j] * s1[i - j];
            snew[i] -= acc;
        }
        // products q*s1 can exceed degree p-1 only when intermediate degrees
        // do, which the Euclid loop prevents (deg q + deg s1 < p).
        r0 = r1;
        r1 = rem;
        s0 = s1;
        s1 = snew;
    }
    const Rational lead = r1[0];
    QVector inv(n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) inv[i] = s1[i] / lead;
    // Guard: higher coefficients must have cancelled.
    for (std::size_t i = n; i < s1.size(); ++i)
        if (sgn(s1[i]) != 0) throw InternalContradiction("cyclopoly_inv: degree overflow");
    return inv;
}

QVector cyclopoly_pi_inverse(std::int64_t p) {
    require_prime(p);
    QVector g(static_cast<std::size_t>(p - 1));
    for (std::int64_t j = 0; j < p - 1; ++j)
        g[static_cast<std::size_t>(j)] = Rational(p - 1 - j) / Rational(p);
    return g;
}

CycloElt::CycloElt(std::int64_t p, QVector c) : prime(p), coeffs(std::move(c)) {
    require_prime(p);
    require_size(coeffs, static_cast<std::size_t>(p - 1), "CycloElt");
    require_local(coeffs, p, "CycloElt");
}

bool CycloElt::is_zero() const { return grlat::is_zero(coeffs); }

CycloElt cyclo_zero(std::int64_t p) { return CycloElt(p, QVector(p - 1)); }

CycloElt cyclo_one(std::int64_t p) {
    QVector c(p - 1);
    c[0] = 1;
    return CycloElt(p, std::move(c));
}

CycloElt cyclo_pi(std::int64_t p) {
    require_prime(p);
    QVector c(p - 1);
    c[0] = 1;
    if (p > 2) c[1] = -1;
    else c[0] = 2;  // p = 2: pi = 1 - (-1) = 2
    return CycloElt(p, std::move(c));
}

CycloElt cyclo_from_rational(std::int64_t p, const Rational& c) {
    QVector v(p - 1);
    v[0] = c;
    return CycloElt(p, std::move(v));
}

CycloElt cyclo_add(const CycloElt& a, const CycloElt& b) {
    require_same_prime(a.prime, b.prime);
    return CycloElt(a.prime, a.coeffs + b.coeffs);
}

CycloElt cyclo_sub(const CycloElt& a, const CycloElt& b) {
    require_same_prime(a.prime, b.prime);
    return CycloElt(a.prime, a.coeffs - b.coeffs);
}

CycloElt cyclo_mul(const CycloElt& a, const CycloElt& b) {
    require_same_prime(a.prime, b.prime);
    return CycloElt(a.prime, cyclopoly_mul(a.coeffs, b.coeffs, a.prime));
}

CycloElt cyclo_conj(const CycloElt& a) {
    return CycloElt(a.prime, cyclopoly_conj(a.coeffs, a.prime));
}

bool operator==(const CycloElt& a, const CycloElt& b) {
    return a.prime == b.prime && a.coeffs == b.coeffs;
}

std::int64_t pi_valuation(const CycloElt& a) {
    if (a.is_zero()) return vp_infinity;
    const std::int64_t p = a.prime;
    std::int64_t content = vp_infinity;
    for (const auto& c : a.coeffs)
        if (sgn(c) != 0) content = std::min(content, vp(c, p));
    // v_pi(a) <= (p-1) * vp(content) + (p-2), so the loop below terminates
    // within the cap.
    const std::int64_t cap = (p - 1) * (1 + content);
    const QVector pi_inv = cyclopoly_pi_inverse(p);
    QVector cur = a.coeffs;
    std::int64_t k = 0;
    while (k <= cap) {
        QVector next = cyclopoly_mul(cur, pi_inv, p);
        bool local = true;
        for (const auto& c : next)
            if (!is_p_local(c, p)) { local = false; break; }
        if (!local) return k;
        cur = std::move(next);
        ++k;
    }
    throw InternalContradiction("pi_valuation: exceeded theoretical cap");
}

MaxOrderElt::MaxOrderElt(PLocalScalar s_, CycloElt t_) : s(std::move(s_)), t(std::move(t_)) {
    require_same_prime(s.prime, t.prime);
}

MaxOrderElt mo_mul(const MaxOrderElt& a, const MaxOrderElt& b) {
    return MaxOrderElt(a.s * b.s, cyclo_mul(a.t, b.t));
}

bool operator==(const MaxOrderElt& a, const MaxOrderElt& b) {
    return a.s == b.s && a.t == b.t;
}

QComponents components(const QAlgebraElt& x) {
    QComponents out;
    out.s = augmentation(x);
    out.t = cyclopoly_reduce(x.coeffs, x.prime);
    return out;
}

MaxOrderElt components_r(const GroupRingElt& x) {
    const QComponents c = components(to_qalgebra(x));
    return MaxOrderElt(PLocalScalar(c.s, x.prime), CycloElt(x.prime, c.t));
}

bool is_in_R(const MaxOrderElt& m) {
    const Rational diff = m.s.value - cyclopoly_eval_one(m.t.coeffs);
    return vp(diff, m.s.prime) >= 1;
}

GroupRingElt lift_pair(const MaxOrderElt& m) {
    if (!is_in_R(m))
        throw NotInR("pair does not satisfy the residue congruence s = t(1) mod p");
    const std::int64_t p = m.s.prime;
    // x = s e_1 + t(sigma) (1 - e_1): substitute sigma for zeta, then project.
    QVector tpoly(static_cast<std::size_t>(p), Rational(0));
    for (std::size_t i = 0; i < m.t.coeffs.size(); ++i) tpoly[i] = m.t.coeffs[i];
    const QAlgebraElt tq(p, std::move(tpoly));
    const QAlgebraElt e1 = qa_e1(p);
    const QAlgebraElt se1 = qa_scale(m.s.value, e1);
    const QAlgebraElt proj = qa_sub(tq, qa_mul(tq, e1));
    const QAlgebraElt lifted = qa_add(se1, proj);
    return GroupRingElt(p, lifted.coeffs);  // locality is guaranteed by is_in_R
}

QMatrix regular_matrix(const QAlgebraElt& x) {
    const std::size_t p = x.coeffs.size();
    QMatrix m(p, p);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < p; ++j) m(i, (i + j) % p) = x.coeffs[j];
    return m;
}

}  // namespace grlat
