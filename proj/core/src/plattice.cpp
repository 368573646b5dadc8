#include "grlat/plattice.hpp"

#include <algorithm>

#include "grlat/cancellation.hpp"
#include "grlat/errors.hpp"

namespace grlat {

namespace {

std::int64_t entry_vp(const Rational& x, std::int64_t p) { return vp(x, p); }

void require_compatible(const ZpLattice& a, const ZpLattice& b) {
    if (a.prime != b.prime)
        throw PrimeMismatch("lattices over different primes");
    if (a.ambient_dim != b.ambient_dim)
        throw DimensionMismatch("lattices in different ambient spaces");
}

// Subtracts f * row src from row dst in every registered matrix.
struct RowOps {
    std::vector<QMatrix*> mats;

    void sub(std::size_t dst, const Rational& f, std::size_t src) {
        if (sgn(f) == 0) return;
        for (QMatrix* m : mats)
            for (std::size_t j = 0; j < m->cols(); ++j)
                (*m)(dst, j) -= f * (*m)(src, j);
    }
    void scale(std::size_t r, const Rational& f) {
        for (QMatrix* m : mats)
            for (std::size_t j = 0; j < m->cols(); ++j) (*m)(r, j) *= f;
    }
    void swap(std::size_t i, std::size_t j) {
        for (QMatrix* m : mats) m->swap_rows(i, j);
    }
};

}  // namespace

HnfTransform hnf_local_transform(const QMatrix& m, std::int64_t p) {
    require_prime(p);
    const std::size_t nrows = m.rows();
    const std::size_t ncols = m.cols();
    QMatrix a = m;
    QMatrix u = QMatrix::identity(nrows);
    RowOps ops{{&a, &u}};

    std::vector<std::size_t> pivot_cols;
    std::vector<std::int64_t> pivot_vals;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < ncols && rank < nrows; ++col) {
        check_cancelled();
        // pivot = entry of minimal valuation in this column at or below rank
        std::size_t best = nrows;
        std::int64_t best_v = 0;
        for (std::size_t i = rank; i < nrows; ++i) {
            if (sgn(a(i, col)) == 0) continue;
            const std::int64_t v = entry_vp(a(i, col), p);
            if (best == nrows || v < best_v) {
                best = i;
                best_v = v;
            }
        }
        if (best == nrows) continue;
        ops.swap(best, rank);
        // normalise the pivot to exactly p^k
        const Rational unit = a(rank, col) / pow_p(p, best_v);
        ops.scale(rank, 1 / unit);
        const Rational pivot = a(rank, col);
        for (std::size_t i = rank + 1; i < nrows; ++i) {
            if (sgn(a(i, col)) == 0) continue;
            ops.sub(i, a(i, col) / pivot, rank);
        }
        pivot_cols.push_back(col);
        pivot_vals.push_back(best_v);
        ++rank;
    }
    // reduce entries above each pivot to the canonical representative
    for (std::size_t r = 0; r < rank; ++r) {
        check_cancelled();
        const std::size_t col = pivot_cols[r];
        const std::int64_t k = pivot_vals[r];
        const Rational pivot = a(r, col);
        for (std::size_t i = 0; i < r; ++i) {
            const Rational rep = canonical_rep_mod(a(i, col), p, k);
            ops.sub(i, (a(i, col) - rep) / pivot, r);
        }
    }
    HnfTransform out;
    out.rank = rank;
    out.pivot_cols = std::move(pivot_cols);
    out.u = std::move(u);
    out.h = QMatrix(rank, ncols);
    for (std::size_t i = 0; i < rank; ++i)
        for (std::size_t j = 0; j < ncols; ++j) out.h(i, j) = a(i, j);
    return out;
}

QMatrix hnf_local(const QMatrix& m, std::int64_t p) {
    return hnf_local_transform(m, p).h;
}

SnfTransform snf_local_transform(const QMatrix& m, std::int64_t p) {
    require_prime(p);
    const std::size_t nrows = m.rows();
    const std::size_t ncols = m.cols();
    QMatrix a = m;
    QMatrix rt = QMatrix::identity(nrows);
    QMatrix ct = QMatrix::identity(ncols);
    // column ops act on a and ct through their transposes
    std::vector<std::int64_t> exps;
    std::size_t pos = 0;
    while (pos < nrows && pos < ncols) {
        check_cancelled();
        std::size_t bi = nrows, bj = ncols;
        std::int64_t best_v = 0;
        for (std::size_t i = pos; i < nrows; ++i)
            for (std::size_t j = pos; j < ncols; ++j) {
                if (sgn(a(i, j)) == 0) continue;
                const std::int64_t v = entry_vp(a(i, j), p);
                if (bi == nrows || v < best_v) {
                    bi = i;
                    bj = j;
                    best_v = v;
                }
            }
        if (bi == nrows) break;
        // move pivot to (pos, pos)
        a.swap_rows(bi, pos);
        rt.swap_rows(bi, pos);
        if (bj != pos) {
            for (std::size_t i = 0; i < nrows; ++i) std::swap(a(i, bj), a(i, pos));
            for (std::size_t i = 0; i < ncols; ++i) std::swap(ct(i, bj), ct(i, pos));
        }
        const Rational unit = a(pos, pos) / pow_p(p, best_v);
        const Rational uinv = 1 / unit;
        for (std::size_t j = 0; j < ncols; ++j) a(pos, j) *= uinv;
        for (std::size_t j = 0; j < nrows; ++j) rt(pos, j) *= uinv;
        const Rational pivot = a(pos, pos);
        for (std::size_t i = pos + 1; i < nrows; ++i) {
            if (sgn(a(i, pos)) == 0) continue;
            const Rational f = a(i, pos) / pivot;
            for (std::size_t j = 0; j < ncols; ++j) a(i, j) -= f * a(pos, j);
            for (std::size_t j = 0; j < nrows; ++j) rt(i, j) -= f * rt(pos, j);
        }
        for (std::size_t j = pos + 1; j < ncols; ++j) {
            if (sgn(a(pos, j)) == 0) continue;
            const Rational f = a(pos, j) / pivot;
            for (std::size_t i = 0; i < nrows; ++i) a(i, j) -= f * a(i, pos);
            for (std::size_t i = 0; i < ncols; ++i) ct(i, j) -= f * ct(i, pos);
        }
        exps.push_back(best_v);
        ++pos;
    }
    std::sort(exps.begin(), exps.end());  // already sorted by pivot choice
    SnfTransform out;
    out.exponents = std::move(exps);
    out.row_t = std::move(rt);
    out.col_t = std::move(ct);
    return out;
}

std::vector<std::int64_t> snf_local(const QMatrix& m, std::int64_t p) {
    return snf_local_transform(m, p).exponents;
}

ZpLattice ZpLattice::from_rows(std::int64_t p, std::size_t ambient_dim, const QMatrix& rows) {
    require_prime(p);
    if (rows.rows() > 0 && rows.cols() != ambient_dim)
        throw DimensionMismatch("lattice rows have wrong ambient dimension");
    ZpLattice l;
    l.prime = p;
    l.ambient_dim = ambient_dim;
    l.basis = rows.rows() == 0 ? QMatrix(0, ambient_dim) : hnf_local(rows, p);
    return l;
}

ZpLattice ZpLattice::zero(std::int64_t p, std::size_t ambient_dim) {
    return from_rows(p, ambient_dim, QMatrix(0, ambient_dim));
}

ZpLattice ZpLattice::standard(std::int64_t p, std::size_t ambient_dim) {
    return from_rows(p, ambient_dim, QMatrix::identity(ambient_dim));
}

bool operator==(const ZpLattice& a, const ZpLattice& b) {
    return a.prime == b.prime && a.ambient_dim == b.ambient_dim && a.basis == b.basis;
}

ZpLattice lattice_sum(const ZpLattice& a, const ZpLattice& b) {
    require_compatible(a, b);
    return ZpLattice::from_rows(a.prime, a.ambient_dim, vstack(a.basis, b.basis));
}

ZpLattice lattice_intersection(const ZpLattice& a, const ZpLattice& b) {
    require_compatible(a, b);
    const std::size_t ra = a.rank();
    const QMatrix stacked = vstack(a.basis, b.basis);
    if (stacked.rows() == 0) return ZpLattice::zero(a.prime, a.ambient_dim);
    const HnfTransform ht = hnf_local_transform(stacked, a.prime);
    QMatrix rows(0, a.ambient_dim);
    for (std::size_t i = ht.rank; i < ht.u.rows(); ++i) {
        QVector v(a.ambient_dim, Rational(0));
        for (std::size_t k = 0; k < ra; ++k) {
            if (sgn(ht.u(i, k)) == 0) continue;
            for (std::size_t j = 0; j < a.ambient_dim; ++j)
                v[j] += ht.u(i, k) * a.basis(k, j);
        }
        rows.append_row(v);
    }
    return ZpLattice::from_rows(a.prime, a.ambient_dim, rows);
}

std::optional<QVector> lattice_coordinates(const QVector& v, const ZpLattice& l) {
    if (v.size() != l.ambient_dim)
        throw DimensionMismatch("vector has wrong ambient dimension");
    QVector residual = v;
    QVector coords(l.rank(), Rational(0));
    for (std::size_t r = 0; r < l.rank(); ++r) {
        std::size_t piv = 0;
        while (piv < l.ambient_dim && sgn(l.basis(r, piv)) == 0) ++piv;
        const Rational& x = residual[piv];
        if (sgn(x) == 0) continue;
        const Rational f = x / l.basis(r, piv);
        if (!is_p_local(f, l.prime)) return std::nullopt;
        for (std::size_t j = piv; j < l.ambient_dim; ++j)
            residual[j] -= f * l.basis(r, j);
        coords[r] = f;
    }
    if (!is_zero(residual)) return std::nullopt;
    return coords;
}

bool lattice_member(const QVector& v, const ZpLattice& l) {
    return lattice_coordinates(v, l).has_value();
}

bool lattice_contains(const ZpLattice& l, const ZpLattice& sub) {
    require_compatible(l, sub);
    for (std::size_t i = 0; i < sub.rank(); ++i)
        if (!lattice_member(sub.basis.row(i), l)) return false;
    return true;
}

std::int64_t lattice_index(const ZpLattice& l, const ZpLattice& sub) {
    require_compatible(l, sub);
    if (l.rank() != sub.rank())
        throw NotSublattice("index undefined: ranks differ");
    QMatrix coords(sub.rank(), l.rank());
    for (std::size_t i = 0; i < sub.rank(); ++i) {
        const auto c = lattice_coordinates(sub.basis.row(i), l);
        if (!c) throw NotSublattice("index undefined: not a sublattice");
        coords.set_row(i, *c);
    }
    std::int64_t total = 0;
    for (const std::int64_t e : snf_local(coords, l.prime)) total += e;
    return total;
}

ZpLattice dual_lattice(const ZpLattice& l, const QMatrix& form) {
    if (form.rows() != l.ambient_dim || form.cols() != l.ambient_dim)
        throw DimensionMismatch("form has wrong shape");
    const QMatrix gram = l.basis * form * l.basis.transpose();
    QMatrix ginv;
    try {
        ginv = gram.inverse();
    } catch (const SingularMatrix&) {
        throw DegenerateForm("form is degenerate on the span of the lattice");
    }
    return ZpLattice::from_rows(l.prime, l.ambient_dim, ginv * l.basis);
}

ZpLattice scale_lattice(const Rational& c, const ZpLattice& l) {
    if (sgn(c) == 0) throw Error("scale_lattice: zero scale");
    return ZpLattice::from_rows(l.prime, l.ambient_dim, c * l.basis);
}

ZpLattice image_of_action(const ZpLattice& l, const QMatrix& a) {
    if (a.rows() != l.ambient_dim)
        throw DimensionMismatch("action matrix has wrong shape");
    return ZpLattice::from_rows(l.prime, a.cols(), l.basis * a);
}

ZpLattice kernel_of_action(const ZpLattice& l, const QMatrix& a) {
    if (a.rows() != l.ambient_dim)
        throw DimensionMismatch("action matrix has wrong shape");
    if (l.rank() == 0) return ZpLattice::zero(l.prime, l.ambient_dim);
    const QMatrix ba = l.basis * a;
    const HnfTransform ht = hnf_local_transform(ba, l.prime);
    QMatrix rows(0, l.ambient_dim);
    for (std::size_t i = ht.rank; i < ht.u.rows(); ++i) {
        QVector v(l.ambient_dim, Rational(0));
        for (std::size_t k = 0; k < l.rank(); ++k) {
            if (sgn(ht.u(i, k)) == 0) continue;
            for (std::size_t j = 0; j < l.ambient_dim; ++j)
                v[j] += ht.u(i, k) * l.basis(k, j);
        }
        rows.append_row(v);
    }
    return ZpLattice::from_rows(l.prime, l.ambient_dim, rows);
}

}  // namespace grlat
