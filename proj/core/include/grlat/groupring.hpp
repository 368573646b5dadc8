#pragma once

#include <cstdint>
#include <vector>

#include "grlat/qmatrix.hpp"
#include "grlat/rational.hpp"

namespace grlat {

// Arithmetic in the group ring R = Z_(p)C_p of the cyclic group of prime
// order p, in the ambient group algebra QC_p, and in the maximal order
// S + T = Z_(p) + Z_(p)[zeta_p].  Elements of QC_p are coefficient vectors
// over the group basis sigma^0 .. sigma^(p-1); elements of T are coefficient
// vectors over the power basis zeta^0 .. zeta^(p-2).

/// Element of the group algebra QC_p (no integrality constraint).
struct QAlgebraElt {
    std::int64_t prime = 0;
    QVector coeffs;  // size p, coefficient of sigma^i at index i

    QAlgebraElt() = default;
    QAlgebraElt(std::int64_t p, QVector c);
};

/// Element of R = Z_(p)C_p: all coefficients p-local.
struct GroupRingElt {
    std::int64_t prime = 0;
    QVector coeffs;  // size p, all entries p-local

    GroupRingElt() = default;
    GroupRingElt(std::int64_t p, QVector c);  // validates locality

    bool is_zero() const;
};

GroupRingElt gr_zero(std::int64_t p);
GroupRingElt gr_one(std::int64_t p);
GroupRingElt gr_sigma(std::int64_t p, std::int64_t k);   // sigma^k
GroupRingElt gr_norm(std::int64_t p);                    // 1 + sigma + ... + sigma^(p-1)
GroupRingElt gr_scalar(std::int64_t p, const Rational& c);

QAlgebraElt to_qalgebra(const GroupRingElt& x);
QAlgebraElt qa_e1(std::int64_t p);  // (1/p)(1 + sigma + ... + sigma^(p-1))

QAlgebraElt qa_add(const QAlgebraElt& x, const QAlgebraElt& y);
QAlgebraElt qa_sub(const QAlgebraElt& x, const QAlgebraElt& y);
QAlgebraElt qa_mul(const QAlgebraElt& x, const QAlgebraElt& y);  // cyclic convolution
QAlgebraElt qa_scale(const Rational& c, const QAlgebraElt& x);
QAlgebraElt involution(const QAlgebraElt& x);  // sigma^i -> sigma^(-i)

GroupRingElt gr_add(const GroupRingElt& x, const GroupRingElt& y);
GroupRingElt gr_sub(const GroupRingElt& x, const GroupRingElt& y);
GroupRingElt gr_mul(const GroupRingElt& x, const GroupRingElt& y);
GroupRingElt gr_scale(const Rational& c, const GroupRingElt& x);  // c must be p-local
GroupRingElt involution(const GroupRingElt& x);
bool operator==(const GroupRingElt& x, const GroupRingElt& y);
bool operator==(const QAlgebraElt& x, const QAlgebraElt& y);

/// Ring map R -> Z_(p), sigma -> 1 (sum of coefficients).
Rational augmentation(const QAlgebraElt& x);
Rational augmentation(const GroupRingElt& x);

/// True iff x lies in the radical J(R) = pS + piT, i.e. the augmentation of x
/// has positive valuation.
bool in_radical(const GroupRingElt& x);

/// Regular trace of the p-dimensional algebra QC_p: p times the coefficient
/// of sigma^0.
Rational trace_reg(const QAlgebraElt& x);
Rational trace_reg(const GroupRingElt& x);

// -- cyclotomic arithmetic (length p-1 coefficient vectors mod Phi_p) --------

/// Reduces a polynomial in zeta of arbitrary degree modulo Phi_p to the power
/// basis zeta^0..zeta^(p-2), using zeta^(p-1) = -(1 + zeta + ... + zeta^(p-2)).
QVector cyclopoly_reduce(const QVector& coeffs, std::int64_t p);
QVector cyclopoly_mul(const QVector& a, const QVector& b, std::int64_t p);
QVector cyclopoly_conj(const QVector& a, std::int64_t p);  // zeta -> zeta^(-1)
/// Field inverse in Q(zeta_p); throws SingularMatrix on zero.
QVector cyclopoly_inv(const QVector& a, std::int64_t p);
Rational cyclopoly_eval_one(const QVector& a);
/// pi^(-1) = (1/p) * sum_{j=0}^{p-2} (p-1-j) zeta^j, where pi = 1 - zeta.
QVector cyclopoly_pi_inverse(std::int64_t p);

/// Element of T = Z_(p)[zeta_p]: p-local coefficients over the power basis.
struct CycloElt {
    std::int64_t prime = 0;
    QVector coeffs;  // size p-1, all entries p-local

    CycloElt() = default;
    CycloElt(std::int64_t p, QVector c);  // validates locality and length

    bool is_zero() const;
};

CycloElt cyclo_zero(std::int64_t p);
CycloElt cyclo_one(std::int64_t p);
CycloElt cyclo_pi(std::int64_t p);  // 1 - zeta
CycloElt cyclo_from_rational(std::int64_t p, const Rational& c);
CycloElt cyclo_add(const CycloElt& a, const CycloElt& b);
CycloElt cyclo_sub(const CycloElt& a, const CycloElt& b);
CycloElt cyclo_mul(const CycloElt& a, const CycloElt& b);
CycloElt cyclo_conj(const CycloElt& a);
bool operator==(const CycloElt& a, const CycloElt& b);

/// Largest k with a in pi^k T; vp_infinity for 0.  Computed by repeated exact
/// division by pi with a divisibility check at each step.
std::int64_t pi_valuation(const CycloElt& a);

/// Element of the maximal order S + T.
struct MaxOrderElt {
    PLocalScalar s;
    CycloElt t;

    MaxOrderElt() = default;
    MaxOrderElt(PLocalScalar s_, CycloElt t_);  // validates matching primes
};

MaxOrderElt mo_mul(const MaxOrderElt& a, const MaxOrderElt& b);
bool operator==(const MaxOrderElt& a, const MaxOrderElt& b);

/// Components of x under QC_p = Q e_1 + Q(zeta): s is the augmentation, t the
/// image under sigma -> zeta reduced mod Phi_p (not necessarily p-local).
struct QComponents {
    Rational s;
    QVector t;  // size p-1
};

QComponents components(const QAlgebraElt& x);
/// Same splitting for elements of R; the output lands in the maximal order.
MaxOrderElt components_r(const GroupRingElt& x);

/// Membership of an S+T pair in the subring R: the two residues agree in
/// F_p, i.e. s = t(1) mod p.
bool is_in_R(const MaxOrderElt& m);

/// The unique element of R with the given components; throws NotInR when the
/// residue congruence fails.  Inverse of components_r.
GroupRingElt lift_pair(const MaxOrderElt& m);

/// Matrix of multiplication by x on QC_p over the basis sigma^0..sigma^(p-1)
/// (row convention: row i holds the coefficients of sigma^i * x).
QMatrix regular_matrix(const QAlgebraElt& x);

}  // namespace grlat
