#include "grlat/modulestruct.hpp"

#include <algorithm>
#include <string>

#include "grlat/cancellation.hpp"
#include "grlat/errors.hpp"

namespace grlat {

namespace {

QMatrix e1_matrix(const QMatrix& sigma, std::int64_t p) {
    return (Rational(1) / Rational(p)) * norm_matrix(sigma, p);
}

/// Nakayama-style greedy lift: starting from the seed sublattice, walks the
/// basis rows of l in index order and keeps those that are independent of the
/// running span.  Returns the picked rows.
std::vector<QVector> greedy_residue_basis(const ZpLattice& l, ZpLattice seed) {
    std::vector<QVector> picks;
    for (std::size_t i = 0; i < l.rank(); ++i) {
        const QVector v = l.basis.row(i);
        if (lattice_member(v, seed)) continue;
        picks.push_back(v);
        QMatrix row(0, l.ambient_dim);
        row.append_row(v);
        seed = lattice_sum(seed, ZpLattice::from_rows(l.prime, l.ambient_dim, row));
    }
    return picks;
}

/// r_basis_of_free without the public entry checks; certifies freeness via
/// the span-and-rank test and throws NotFree when it fails.
RBasis r_basis_certified(const SigmaLattice& l) {
    const std::int64_t p = l.prime();
    RBasis out;
    if (l.rank() == 0) return out;
    const ZpLattice radical = radical_lattice(l);
    out.vectors = greedy_residue_basis(l.lattice, radical);
    if (out.vectors.size() * static_cast<std::size_t>(p) != l.rank())
        throw NotFree("lattice is not a free module: generator count does not match rank");
    const ZpLattice span = r_span(p, l.sigma, out.vectors, l.ambient_dim());
    if (!(span == l.lattice))
        throw NotFree("lattice is not a free module: orbit span mismatch");
    return out;
}

}  // namespace

SigmaLattice::SigmaLattice(ZpLattice l, QMatrix s) : lattice(std::move(l)), sigma(std::move(s)) {
    const std::size_t n = lattice.ambient_dim;
    if (sigma.rows() != n || sigma.cols() != n)
        throw DimensionMismatch("sigma has wrong shape");
    if (!(sigma.pow(lattice.prime) == QMatrix::identity(n)))
        throw PreconditionViolated("sigma^p is not the identity");
    if (!(image_of_action(lattice, sigma) == lattice))
        throw PreconditionViolated("sigma does not stabilise the lattice");
}

SigmaLattice SigmaLattice::with_lattice(ZpLattice l) const { return SigmaLattice(std::move(l), sigma); }

QMatrix orbit_rows(const QVector& g, const QMatrix& sigma, std::int64_t p) {
    QMatrix rows(0, g.size());
    QVector v = g;
    for (std::int64_t k = 0; k < p; ++k) {
        rows.append_row(v);
        v = mul_row(v, sigma);
    }
    return rows;
}

QVector act_elt(const QVector& v, const QAlgebraElt& x, const QMatrix& sigma) {
    QVector acc(v.size(), Rational(0));
    QVector cur = v;
    for (std::size_t k = 0; k < x.coeffs.size(); ++k) {
        if (sgn(x.coeffs[k]) != 0) acc = acc + x.coeffs[k] * cur;
        if (k + 1 < x.coeffs.size()) cur = mul_row(cur, sigma);
    }
    return acc;
}

QVector act_elt(const QVector& v, const GroupRingElt& x, const QMatrix& sigma) {
    return act_elt(v, to_qalgebra(x), sigma);
}

ZpLattice r_span(std::int64_t p, const QMatrix& sigma, const std::vector<QVector>& gens,
                 std::size_t ambient_dim) {
    QMatrix rows(0, ambient_dim);
    for (const auto& g : gens) rows = vstack(rows, orbit_rows(g, sigma, p));
    return ZpLattice::from_rows(p, ambient_dim, rows);
}

QMatrix norm_matrix(const QMatrix& sigma, std::int64_t p) {
    QMatrix acc = QMatrix::identity(sigma.rows());
    QMatrix cur = sigma;
    for (std::int64_t k = 1; k < p; ++k) {
        acc = acc + cur;
        cur = cur * sigma;
    }
    return acc;
}

ZpLattice fixed_sublattice(const SigmaLattice& l) {
    const QMatrix shifted = l.sigma - QMatrix::identity(l.ambient_dim());
    return kernel_of_action(l.lattice, shifted);
}

ZpLattice norm_image(const SigmaLattice& l) {
    return image_of_action(l.lattice, norm_matrix(l.sigma, l.prime()));
}

DecompositionType decomposition_type(const SigmaLattice& l) {
    const std::int64_t p = l.prime();
    const ZpLattice fixed = fixed_sublattice(l);
    const ZpLattice nimg = norm_image(l);
    const ZpLattice kern = kernel_of_action(l.lattice, norm_matrix(l.sigma, p));
    const ZpLattice aug_img =
        image_of_action(l.lattice, l.sigma - QMatrix::identity(l.ambient_dim()));

    // Both Tate quotients are elementary abelian; check the containments that
    // make the index exponents dimensions over F_p.
    DecompositionType type;
    try {
        if (!lattice_contains(fixed, nimg) || !lattice_contains(nimg, scale_lattice(p, fixed)))
            throw InconsistentType("norm image is not p-elementary in the fixed sublattice");
        if (!lattice_contains(kern, aug_img) || !lattice_contains(aug_img, scale_lattice(p, kern)))
            throw InconsistentType("augmentation image is not p-elementary in the norm kernel");
        type.c = lattice_index(fixed, nimg);
        type.b = lattice_index(kern, aug_img);
    } catch (const NotSublattice& e) {
        throw InconsistentType(std::string("unexpected quotient shape: ") + e.what());
    }
    const std::int64_t remainder =
        static_cast<std::int64_t>(l.rank()) - (p - 1) * type.b - type.c;
    if (remainder < 0 || remainder % p != 0)
        throw InconsistentType("rank does not decompose as pa + (p-1)b + c");
    type.a = remainder / p;
    return type;
}

bool is_free(const SigmaLattice& l) {
    const DecompositionType t = decomposition_type(l);
    return t.b == 0 && t.c == 0;
}

ZpLattice radical_lattice(const SigmaLattice& m) {
    const ZpLattice scaled = scale_lattice(m.prime(), m.lattice);
    const ZpLattice aug_img =
        image_of_action(m.lattice, m.sigma - QMatrix::identity(m.ambient_dim()));
    return lattice_sum(scaled, aug_img);
}

RBasis r_basis_of_free(const SigmaLattice& l) { return r_basis_certified(l); }

std::pair<SigmaLattice, SigmaLattice> split_off_free_summand(const SigmaLattice& m,
                                                             const QVector& g) {
    const std::int64_t p = m.prime();
    if (!lattice_member(g, m.lattice))
        throw PreconditionViolated("generator does not lie in the module");
    const ZpLattice radical = radical_lattice(m);
    if (lattice_member(g, radical))
        throw InRadical("generator lies in the radical, it spans no free summand");
    QMatrix grow(0, m.ambient_dim());
    grow.append_row(g);
    const ZpLattice seed = lattice_sum(radical, ZpLattice::from_rows(p, m.ambient_dim(), grow));
    const std::vector<QVector> complement_gens = greedy_residue_basis(m.lattice, seed);
    const SigmaLattice rg = m.with_lattice(r_span(p, m.sigma, {g}, m.ambient_dim()));
    const SigmaLattice mprime =
        m.with_lattice(r_span(p, m.sigma, complement_gens, m.ambient_dim()));
    // direct-sum postcondition, checked on every call
    if (!(lattice_sum(rg.lattice, mprime.lattice) == m.lattice))
        throw InternalContradiction("free summand split does not recover the module");
    if (lattice_intersection(rg.lattice, mprime.lattice).rank() != 0)
        throw InternalContradiction("free summand split is not direct");
    return {rg, mprime};
}

CompatibleBasisResult compatible_basis(const SigmaLattice& m, const SigmaLattice& l) {
    const std::int64_t p = m.prime();
    if (l.prime() != p) throw PrimeMismatch("pair over different primes");
    if (!(m.sigma == l.sigma))
        throw PreconditionViolated("pair does not share the ambient action");
    try {
        r_basis_certified(m);
    } catch (const NotFree&) {
        throw PreconditionViolated("M is not a free module");
    }
    try {
        r_basis_certified(l);
    } catch (const NotFree&) {
        throw PreconditionViolated("L is not a free module");
    }
    if (!lattice_contains(m.lattice, l.lattice))
        throw PreconditionViolated("L is not contained in M");
    if (!lattice_contains(l.lattice, scale_lattice(p, m.lattice)))
        throw PreconditionViolated("pM is not contained in L");

    // Inductive descent: split off generators of L outside J(M) until the
    // remainder of L sinks into the radical, at which point it must be pM.
    std::vector<QVector> heads;
    std::vector<QVector> tails;
    SigmaLattice mc = m;
    SigmaLattice lc = l;
    while (mc.rank() > 0) {
        check_cancelled();
        RBasis lgens;
        try {
            lgens = r_basis_certified(lc);
        } catch (const NotFree&) {
            throw InternalContradiction("descent produced a non-free intermediate module");
        }
        const ZpLattice radical = radical_lattice(mc);
        const QVector* chosen = nullptr;
        for (const auto& g : lgens.vectors) {
            if (!lattice_member(g, radical)) {
                chosen = &g;
                break;
            }
        }
        if (chosen == nullptr) {
            // L <= J(M) forces L = pM; anything else falsifies the theorem.
            if (!(lc.lattice == scale_lattice(p, mc.lattice)))
                throw InternalContradiction(
                    "intermediate L lies in J(M) but differs from pM");
            RBasis mgens;
            try {
                mgens = r_basis_certified(mc);
            } catch (const NotFree&) {
                throw InternalContradiction("descent produced a non-free remainder");
            }
            tails = mgens.vectors;
            break;
        }
        heads.push_back(*chosen);
        auto [rg, mprime] = split_off_free_summand(mc, *chosen);
        const ZpLattice lprime = lattice_intersection(lc.lattice, mprime.lattice);
        mc = mprime;
        lc = mc.with_lattice(lprime);
    }
    CompatibleBasisResult result;
    result.t = static_cast<std::int64_t>(heads.size());
    result.basis.vectors = std::move(heads);
    result.basis.vectors.insert(result.basis.vectors.end(), tails.begin(), tails.end());
    if (result.basis.vectors.size() * static_cast<std::size_t>(p) != m.rank())
        throw InternalContradiction("descent lost rank");
    return result;
}

bool verify_compatible(const SigmaLattice& m, const SigmaLattice& l,
                       const CompatibleBasisResult& result) {
    const std::int64_t p = m.prime();
    const std::int64_t a = static_cast<std::int64_t>(result.basis.size());
    if (result.t < 0 || result.t > a) return false;
    if (static_cast<std::size_t>(a) * static_cast<std::size_t>(p) != m.rank()) return false;
    const ZpLattice mspan = r_span(p, m.sigma, result.basis.vectors, m.ambient_dim());
    if (!(mspan == m.lattice)) return false;
    std::vector<QVector> scaled;
    scaled.reserve(result.basis.size());
    for (std::size_t i = 0; i < result.basis.size(); ++i) {
        if (static_cast<std::int64_t>(i) < result.t)
            scaled.push_back(result.basis.vectors[i]);
        else
            scaled.push_back(Rational(p) * result.basis.vectors[i]);
    }
    const ZpLattice lspan = r_span(p, m.sigma, scaled, m.ambient_dim());
    if (!(lspan == l.lattice)) return false;
    try {
        if (lattice_index(m.lattice, l.lattice) != p * (a - result.t)) return false;
    } catch (const NotSublattice&) {
        return false;
    }
    return true;
}

// -- pseudo-bases for semisimple pairs ----------------------------------------

namespace {

/// Divides by pi exactly; nullopt when the quotient leaves T.
std::optional<CycloElt> cyclo_div_pi(const CycloElt& t) {
    const QVector q = cyclopoly_mul(t.coeffs, cyclopoly_pi_inverse(t.prime), t.prime);
    for (const auto& c : q)
        if (!is_p_local(c, t.prime)) return std::nullopt;
    return CycloElt(t.prime, q);
}

CycloElt cyclo_div_pi_pow(const CycloElt& t, std::int64_t k) {
    CycloElt cur = t;
    for (std::int64_t i = 0; i < k; ++i) {
        auto next = cyclo_div_pi(cur);
        if (!next) throw InternalContradiction("inexact division by pi");
        cur = std::move(*next);
    }
    return cur;
}

CycloElt cyclo_unit_inverse(const CycloElt& u) {
    return CycloElt(u.prime, cyclopoly_inv(u.coeffs, u.prime));
}

struct TMatrix {
    std::int64_t prime;
    std::size_t rows, cols;
    std::vector<CycloElt> e;

    TMatrix(std::int64_t p, std::size_t r, std::size_t c)
        : prime(p), rows(r), cols(c), e(r * c, cyclo_zero(p)) {}
    CycloElt& at(std::size_t i, std::size_t j) { return e[i * cols + j]; }
};

/// Elementary-divisor exponents over T and the column-adapted basis vectors:
/// after the call, the span of the input generators equals
/// sum_i pi^(n_i) T basis[i].
std::vector<std::int64_t> t_snf_adapt(TMatrix a, std::vector<QVector>& basis,
                                      const QMatrix& sigma) {
    const std::int64_t p = a.prime;
    auto t_scalar_action = [&](const CycloElt& g, const QVector& v) {
        QVector poly(static_cast<std::size_t>(p), Rational(0));
        for (std::size_t i = 0; i < g.coeffs.size(); ++i) poly[i] = g.coeffs[i];
        return act_elt(v, QAlgebraElt(p, poly), sigma);
    };
    std::vector<std::int64_t> exps;
    std::size_t pos = 0;
    while (pos < a.rows && pos < a.cols) {
        check_cancelled();
        std::size_t bi = a.rows, bj = a.cols;
        std::int64_t best_v = 0;
        for (std::size_t i = pos; i < a.rows; ++i)
            for (std::size_t j = pos; j < a.cols; ++j) {
                if (a.at(i, j).is_zero()) continue;
                const std::int64_t v = pi_valuation(a.at(i, j));
                if (bi == a.rows || v < best_v) {
                    bi = i;
                    bj = j;
                    best_v = v;
                }
            }
        if (bi == a.rows) break;
        for (std::size_t j = 0; j < a.cols; ++j) std::swap(a.at(bi, j), a.at(pos, j));
        if (bj != pos) {
            for (std::size_t i = 0; i < a.rows; ++i) std::swap(a.at(i, bj), a.at(i, pos));
            std::swap(basis[bj], basis[pos]);
        }
        // normalise the pivot to exactly pi^k
        const CycloElt unit = cyclo_div_pi_pow(a.at(pos, pos), best_v);
        const CycloElt uinv = cyclo_unit_inverse(unit);
        for (std::size_t j = 0; j < a.cols; ++j) a.at(pos, j) = cyclo_mul(a.at(pos, j), uinv);
        for (std::size_t i = pos + 1; i < a.rows; ++i) {
            if (a.at(i, pos).is_zero()) continue;
            const CycloElt f = cyclo_div_pi_pow(a.at(i, pos), best_v);
            for (std::size_t j = pos; j < a.cols; ++j)
                a.at(i, j) = cyclo_sub(a.at(i, j), cyclo_mul(f, a.at(pos, j)));
        }
        for (std::size_t j = pos + 1; j < a.cols; ++j) {
            if (a.at(pos, j).is_zero()) continue;
            const CycloElt g = cyclo_div_pi_pow(a.at(pos, j), best_v);
            for (std::size_t i = pos; i < a.rows; ++i)
                a.at(i, j) = cyclo_sub(a.at(i, j), cyclo_mul(g, a.at(i, pos)));
            basis[pos] = basis[pos] + t_scalar_action(g, basis[j]);
        }
        exps.push_back(best_v);
        ++pos;
    }
    return exps;
}

}  // namespace

PseudoBasisResult semisimple_pseudobasis(const SigmaLattice& m, const SigmaLattice& l) {
    const std::int64_t p = m.prime();
    if (l.prime() != p) throw PrimeMismatch("pair over different primes");
    if (!(m.sigma == l.sigma))
        throw PreconditionViolated("pair does not share the ambient action");
    const DecompositionType tm = decomposition_type(m);
    const DecompositionType tl = decomposition_type(l);
    if (tm.a != 0 || tl.a != 0)
        throw PreconditionViolated("pair has a free component");
    if (!(tm == tl)) throw PreconditionViolated("pair members have different types");
    if (!lattice_contains(m.lattice, l.lattice))
        throw PreconditionViolated("L is not contained in M");

    const std::size_t n = m.ambient_dim();
    const QMatrix e1 = e1_matrix(m.sigma, p);
    const QMatrix ez = QMatrix::identity(n) - e1;
    const ZpLattice me1 = image_of_action(m.lattice, e1);
    const ZpLattice mez = image_of_action(m.lattice, ez);
    const ZpLattice le1 = image_of_action(l.lattice, e1);
    const ZpLattice lez = image_of_action(l.lattice, ez);
    if (!lattice_contains(m.lattice, me1) || !lattice_contains(m.lattice, mez))
        throw PreconditionViolated("module does not split along the idempotents");

    PseudoBasisResult out;

    // e_1 part: elementary divisors over Z_(p), basis adapted via the column
    // transform of the Smith form.
    if (tm.c > 0) {
        QMatrix coords(le1.rank(), me1.rank());
        for (std::size_t i = 0; i < le1.rank(); ++i) {
            const auto c = lattice_coordinates(le1.basis.row(i), me1);
            if (!c) throw InternalContradiction("L e_1 escapes M e_1");
            coords.set_row(i, *c);
        }
        const SnfTransform snf = snf_local_transform(coords, p);
        if (snf.exponents.size() != static_cast<std::size_t>(tm.c))
            throw InternalContradiction("e_1 part has unexpected rank");
        const QMatrix adapted = snf.col_t.inverse() * me1.basis;
        for (std::size_t i = 0; i < adapted.rows(); ++i)
            out.y_vectors.push_back(adapted.row(i));
        out.m_exponents = snf.exponents;
    }

    // e_zeta part: a T-basis of M e_zeta by greedy lifting modulo pi, then
    // elementary divisors over T with the basis adapted in step.
    if (tm.b > 0) {
        const QMatrix pi_action = QMatrix::identity(n) - m.sigma;
        const ZpLattice pi_mez = image_of_action(mez, pi_action);
        std::vector<QVector> xs = greedy_residue_basis(mez, pi_mez);
        if (xs.size() != static_cast<std::size_t>(tm.b))
            throw InternalContradiction("T-basis lift found the wrong number of generators");
        // certify: T-orbits of xs span M e_zeta
        QMatrix xrows(0, n);
        for (const auto& x : xs) {
            QVector v = x;
            for (std::int64_t k = 0; k + 1 < p; ++k) {
                xrows.append_row(v);
                v = mul_row(v, m.sigma);
            }
        }
        if (!(ZpLattice::from_rows(p, n, xrows) == mez))
            throw InternalContradiction("T-basis does not span M e_zeta");

        TMatrix tmat(p, lez.rank(), xs.size());
        for (std::size_t r = 0; r < lez.rank(); ++r) {
            const auto c = solve_row_system(xrows, lez.basis.row(r));
            if (!c) throw InternalContradiction("L e_zeta escapes M e_zeta");
            for (std::size_t j = 0; j < xs.size(); ++j) {
                QVector coeffs(static_cast<std::size_t>(p - 1));
                for (std::int64_t i = 0; i + 1 < p; ++i)
                    coeffs[static_cast<std::size_t>(i)] =
                        (*c)[j * static_cast<std::size_t>(p - 1) + static_cast<std::size_t>(i)];
                tmat.at(r, j) = CycloElt(p, std::move(coeffs));
            }
        }
        out.n_exponents = t_snf_adapt(std::move(tmat), xs, m.sigma);
        if (out.n_exponents.size() != xs.size())
            throw InternalContradiction("e_zeta part has unexpected T-rank");
        out.x_vectors = std::move(xs);
    }

    // postcondition: the adapted pseudo-bases reassemble both lattices
    const QMatrix pi_action = QMatrix::identity(n) - m.sigma;
    QMatrix mrows(0, n), lrows(0, n);
    for (std::size_t i = 0; i < out.x_vectors.size(); ++i) {
        QVector scaled = out.x_vectors[i];
        for (std::int64_t k = 0; k < out.n_exponents[i]; ++k) scaled = mul_row(scaled, pi_action);
        QVector v = out.x_vectors[i];
        QVector w = scaled;
        for (std::int64_t k = 0; k + 1 < p; ++k) {
            mrows.append_row(v);
            lrows.append_row(w);
            v = mul_row(v, m.sigma);
            w = mul_row(w, m.sigma);
        }
    }
    for (std::size_t i = 0; i < out.y_vectors.size(); ++i) {
        mrows.append_row(out.y_vectors[i]);
        lrows.append_row(pow_p(p, out.m_exponents[i]) * out.y_vectors[i]);
    }
    if (!(ZpLattice::from_rows(p, n, mrows) == m.lattice) ||
        !(ZpLattice::from_rows(p, n, lrows) == l.lattice))
        throw InternalContradiction("pseudo-basis does not reassemble the pair");
    return out;
}

CounterexampleReport verify_counterexample(std::int64_t p) {
    require_prime(p);
    if (p == 2)
        throw UnsupportedPrime("the rank-(p+1) counterexample construction needs p > 2");
    const std::size_t n = static_cast<std::size_t>(p + 1);
    QMatrix sigma(n, n);
    for (std::int64_t i = 0; i < p; ++i)
        sigma(static_cast<std::size_t>(i), static_cast<std::size_t>((i + 1) % p)) = 1;
    sigma(n - 1, n - 1) = 1;
    const SigmaLattice m(ZpLattice::standard(p, n), sigma);

    QVector x(n, Rational(0)), y(n, Rational(0));
    x[0] = 1;
    y[n - 1] = 1;
    const QVector u = mul_row(x, norm_matrix(sigma, p));  // p x e_1
    const QVector w = mul_row(x, QMatrix::identity(n) - sigma) + y;
    const SigmaLattice l = m.with_lattice(r_span(p, sigma, {u, w}, n));

    CounterexampleReport rep;
    rep.m = m;
    rep.l = l;
    rep.type_m = decomposition_type(m);
    rep.type_l = decomposition_type(l);
    rep.type_l_matches = rep.type_l == DecompositionType{1, 0, 1};
    rep.inclusions_hold = lattice_contains(m.lattice, l.lattice) &&
                          lattice_contains(l.lattice, scale_lattice(p, m.lattice));
    try {
        rep.index_exponent = lattice_index(m.lattice, l.lattice);
    } catch (const NotSublattice&) {
        rep.index_exponent = -1;
    }
    rep.index_matches = rep.index_exponent == 2;
    return rep;
}

QMatrix regular_rep_sigma(std::int64_t p) {
    require_prime(p);
    const std::size_t n = static_cast<std::size_t>(p);
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, (i + 1) % n) = 1;
    return m;
}

QMatrix companion_phi_sigma(std::int64_t p) {
    require_prime(p);
    const std::size_t n = static_cast<std::size_t>(p - 1);
    QMatrix m(n, n);
    for (std::size_t i = 0; i + 1 < n; ++i) m(i, i + 1) = 1;
    for (std::size_t j = 0; j < n; ++j) m(n - 1, j) = -1;
    return m;
}

QMatrix block_sigma(std::int64_t p, std::int64_t a, std::int64_t b, std::int64_t c) {
    const std::size_t n = static_cast<std::size_t>(p * a + (p - 1) * b + c);
    QMatrix m(n, n);
    std::size_t off = 0;
    auto place = [&](const QMatrix& blk) {
        for (std::size_t i = 0; i < blk.rows(); ++i)
            for (std::size_t j = 0; j < blk.cols(); ++j) m(off + i, off + j) = blk(i, j);
        off += blk.rows();
    };
    for (std::int64_t i = 0; i < a; ++i) place(regular_rep_sigma(p));
    for (std::int64_t i = 0; i < b; ++i) place(companion_phi_sigma(p));
    for (std::int64_t i = 0; i < c; ++i) place(QMatrix::identity(1));
    return m;
}

SigmaLattice block_module(std::int64_t p, std::int64_t a, std::int64_t b, std::int64_t c) {
    const QMatrix sigma = block_sigma(p, a, b, c);
    return SigmaLattice(ZpLattice::standard(p, sigma.rows()), sigma);
}

SigmaLattice standard_free_module(std::int64_t p, std::int64_t a) {
    return block_module(p, a, 0, 0);
}

}  // namespace grlat
