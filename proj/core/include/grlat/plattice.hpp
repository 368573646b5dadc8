#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "grlat/qmatrix.hpp"

namespace grlat {

// Exact p-local linear algebra: echelon and elementary-divisor normal forms
// over the localisation Z_(p), where every rational with p-coprime numerator
// and denominator is a unit, plus lattice arithmetic for Z_(p)-lattices in
// Q^N given by row bases.

/// Canonical p-local row echelon form of the row span of M.  Pivots are exact
/// powers p^k with unit parts normalised away; entries above a pivot are
/// reduced to the canonical representative m p^v with 0 <= m < p^(k-v); zero
/// rows are dropped.  Row-equivalent matrices over Z_(p) yield the identical
/// result.
QMatrix hnf_local(const QMatrix& m, std::int64_t p);

struct HnfTransform {
    QMatrix h;                        ///< canonical form, zero rows dropped
    QMatrix u;                        ///< unimodular over Z_(p), u*m = [h; 0]
    std::vector<std::size_t> pivot_cols;
    std::size_t rank = 0;
};

/// As hnf_local but also returns the row transform; rows rank.. of u span the
/// left kernel of m over Z_(p).
HnfTransform hnf_local_transform(const QMatrix& m, std::int64_t p);

/// Elementary divisor exponents k_1 <= ... <= k_r over Z_(p); two-sided
/// unimodular transforms bring m to diag(p^(k_1), ..., p^(k_r)).
std::vector<std::int64_t> snf_local(const QMatrix& m, std::int64_t p);

struct SnfTransform {
    std::vector<std::int64_t> exponents;
    QMatrix row_t;  ///< unimodular over Z_(p)
    QMatrix col_t;  ///< unimodular over Z_(p); row_t * m * col_t is diagonal
};

SnfTransform snf_local_transform(const QMatrix& m, std::int64_t p);

/// A Z_(p)-lattice in Q^N, stored as a canonical p-local echelon basis whose
/// rows are linearly independent.  Rank may be anything from 0 to N; equality
/// of lattices is equality of the stored data.
struct ZpLattice {
    std::int64_t prime = 0;
    std::size_t ambient_dim = 0;
    QMatrix basis;  // rank x ambient_dim, canonical

    static ZpLattice from_rows(std::int64_t p, std::size_t ambient_dim, const QMatrix& rows);
    static ZpLattice zero(std::int64_t p, std::size_t ambient_dim);
    static ZpLattice standard(std::int64_t p, std::size_t ambient_dim);

    std::size_t rank() const { return basis.rows(); }
};

bool operator==(const ZpLattice& a, const ZpLattice& b);

ZpLattice lattice_sum(const ZpLattice& a, const ZpLattice& b);
ZpLattice lattice_intersection(const ZpLattice& a, const ZpLattice& b);

bool lattice_member(const QVector& v, const ZpLattice& l);

/// Coordinates of v in the stored basis when v is a Z_(p)-combination of it.
std::optional<QVector> lattice_coordinates(const QVector& v, const ZpLattice& l);

/// Sublattice containment (every basis row of sub lies in l).
bool lattice_contains(const ZpLattice& l, const ZpLattice& sub);

/// Exponent k with [l : sub] = p^k for a finite-index sublattice; throws
/// NotSublattice when sub is not contained in l or ranks differ.
std::int64_t lattice_index(const ZpLattice& l, const ZpLattice& sub);

/// Dual basis lattice { x in span(l) : B(x, l) in Z_(p) } with respect to the
/// ambient bilinear form; requires the Gram matrix of l to be invertible
/// (throws DegenerateForm otherwise).
ZpLattice dual_lattice(const ZpLattice& l, const QMatrix& form);

ZpLattice scale_lattice(const Rational& c, const ZpLattice& l);

/// Image lattice of l under the right action v -> v*a.
ZpLattice image_of_action(const ZpLattice& l, const QMatrix& a);

/// { x in l : x*a = 0 }.
ZpLattice kernel_of_action(const ZpLattice& l, const QMatrix& a);

}  // namespace grlat
