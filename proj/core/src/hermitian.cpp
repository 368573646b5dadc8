#include "grlat/hermitian.hpp"

#include <string>

#include "grlat/errors.hpp"

namespace grlat {

FormedLattice::FormedLattice(SigmaLattice m, QMatrix f)
    : module(std::move(m)), form(std::move(f)) {
    const std::size_t n = module.ambient_dim();
    if (form.rows() != n || form.cols() != n)
        throw DimensionMismatch("form has wrong shape");
    if (!form.is_symmetric()) throw PreconditionViolated("form is not symmetric");
    if (!(module.sigma * form * module.sigma.transpose() == form))
        throw PreconditionViolated("form is not sigma-invariant");
    if (n > 0 && sgn(form.det()) == 0)
        throw DegenerateForm("ambient form is degenerate");
}

FormedLattice FormedLattice::with_lattice(ZpLattice l) const {
    return FormedLattice(module.with_lattice(std::move(l)), form);
}

QMatrix gram_matrix(const FormedLattice& l) {
    return l.module.lattice.basis * l.form * l.module.lattice.basis.transpose();
}

QAlgebraElt hermitian_pairing(const QVector& x, const QVector& y, const QMatrix& sigma,
                              const QMatrix& form, std::int64_t p) {
    QVector coeffs(static_cast<std::size_t>(p));
    QVector cur = y;
    for (std::int64_t k = 0; k < p; ++k) {
        coeffs[static_cast<std::size_t>(k)] = dot_form(x, form, cur);
        cur = mul_row(cur, sigma);
    }
    return QAlgebraElt(p, std::move(coeffs));
}

HermitianGram::HermitianGram(std::int64_t p, std::size_t rank_, std::vector<GroupRingElt> e)
    : prime(p), rank(rank_), entries(std::move(e)) {
    require_prime(p);
    if (entries.size() != rank * rank)
        throw DimensionMismatch("Hermitian Gram has wrong entry count");
    for (const auto& x : entries)
        if (x.prime != p) throw PrimeMismatch("Hermitian Gram entry over the wrong prime");
    for (std::size_t i = 0; i < rank; ++i)
        for (std::size_t j = 0; j < rank; ++j)
            if (!(at(j, i) == involution(at(i, j))))
                throw PreconditionViolated("Hermitian Gram is not conjugate-symmetric");
}

bool operator==(const HermitianGram& a, const HermitianGram& b) {
    return a.prime == b.prime && a.rank == b.rank && a.entries == b.entries;
}

HermitianGram bilinear_to_hermitian(const FormedLattice& l, const RBasis& basis) {
    const std::int64_t p = l.prime();
    const std::size_t a = basis.size();
    std::vector<GroupRingElt> entries;
    entries.reserve(a * a);
    for (std::size_t i = 0; i < a; ++i)
        for (std::size_t j = 0; j < a; ++j) {
            const QAlgebraElt h = hermitian_pairing(basis.vectors[i], basis.vectors[j],
                                                    l.module.sigma, l.form, p);
            entries.emplace_back(p, h.coeffs);  // NotPLocal when the pairing leaves R
        }
    return HermitianGram(p, a, std::move(entries));
}

FormedLattice hermitian_to_bilinear(const HermitianGram& g) {
    const std::int64_t p = g.prime;
    const std::size_t a = g.rank;
    const std::size_t n = a * static_cast<std::size_t>(p);
    // ambient basis ordered (i, k) -> i*p + k with sigma the shift k -> k+1
    QMatrix form(n, n);
    for (std::size_t i = 0; i < a; ++i)
        for (std::size_t j = 0; j < a; ++j)
            for (std::int64_t k = 0; k < p; ++k)
                for (std::int64_t lq = 0; lq < p; ++lq) {
                    const std::size_t r = i * p + static_cast<std::size_t>(k);
                    const std::size_t c = j * p + static_cast<std::size_t>(lq);
                    form(r, c) = g.at(i, j).coeffs[static_cast<std::size_t>(((lq - k) % p + p) % p)];
                }
    if (n > 0 && sgn(form.det()) == 0)
        throw DegenerateForm("Hermitian Gram induces a degenerate bilinear form");
    const SigmaLattice module = standard_free_module(p, static_cast<std::int64_t>(a));
    return FormedLattice(module, form);
}

FormedLattice dual_of(const FormedLattice& l) {
    return l.with_lattice(dual_lattice(l.module.lattice, l.form));
}

bool is_integral(const FormedLattice& l) {
    return lattice_contains(dual_of(l).module.lattice, l.module.lattice);
}

bool is_unimodular(const FormedLattice& l) {
    return dual_of(l).module.lattice == l.module.lattice;
}

bool is_modular(const FormedLattice& l, std::int64_t j) {
    const ZpLattice dual = dual_of(l).module.lattice;
    return scale_lattice(pow_p(l.prime(), j), dual) == l.module.lattice;
}

bool is_elementary(const FormedLattice& l) {
    const ZpLattice dual = dual_of(l).module.lattice;
    return lattice_contains(dual, l.module.lattice) &&
           lattice_contains(l.module.lattice, scale_lattice(l.prime(), dual));
}

std::optional<QVector> elementary_witness(const FormedLattice& l) {
    const ZpLattice dual = dual_of(l).module.lattice;
    const ZpLattice scaled = scale_lattice(l.prime(), dual);
    for (std::size_t i = 0; i < scaled.rank(); ++i) {
        const QVector v = scaled.basis.row(i);
        if (!lattice_member(v, l.module.lattice)) return v;
    }
    return std::nullopt;
}

std::optional<QVector> integrality_witness(const FormedLattice& l) {
    const ZpLattice dual = dual_of(l).module.lattice;
    for (std::size_t i = 0; i < l.rank(); ++i) {
        const QVector v = l.module.lattice.basis.row(i);
        if (!lattice_member(v, dual)) return v;
    }
    return std::nullopt;
}

FormedLattice projection_split(const FormedLattice& l, const FormedLattice& l0) {
    const std::int64_t p = l.prime();
    if (!(l0.form == l.form) || !(l0.module.sigma == l.module.sigma))
        throw PreconditionViolated("summand does not live in the same formed space");
    if (!lattice_contains(l.module.lattice, l0.module.lattice))
        throw NotUnimodularSummand("summand is not a sublattice");
    const QMatrix b0 = l0.module.lattice.basis;
    const std::size_t r0 = b0.rows();
    if (r0 == 0) return l;  // trivial summand: complement is everything

    const QMatrix gram0 = gram_matrix(l0);
    QMatrix ginv;
    try {
        ginv = gram0.inverse();
    } catch (const SingularMatrix&) {
        throw NotUnimodularSummand("summand Gram matrix is singular");
    }
    for (std::size_t i = 0; i < r0; ++i)
        for (std::size_t j = 0; j < r0; ++j)
            if (!is_p_local(ginv(i, j), p))
                throw NotUnimodularSummand("summand Gram matrix is not invertible over Z_(p)");

    QMatrix rows(0, l.module.ambient_dim());
    for (std::size_t i = 0; i < l.rank(); ++i) {
        const QVector x = l.module.lattice.basis.row(i);
        QVector pairings(r0);
        for (std::size_t j = 0; j < r0; ++j) {
            pairings[j] = dot_form(x, l.form, b0.row(j));
            if (!is_p_local(pairings[j], p))
                throw NotUnimodularSummand("lattice does not pair integrally with the summand");
        }
        const QVector coeffs = mul_row(pairings, ginv);
        QVector projected = x;
        for (std::size_t j = 0; j < r0; ++j) projected = projected - coeffs[j] * b0.row(j);
        rows.append_row(projected);
    }
    const FormedLattice l1 =
        l.with_lattice(ZpLattice::from_rows(p, l.module.ambient_dim(), rows));

    // postcondition: orthogonal direct sum
    for (std::size_t i = 0; i < l1.rank(); ++i)
        for (std::size_t j = 0; j < r0; ++j)
            if (sgn(dot_form(l1.module.lattice.basis.row(i), l.form, b0.row(j))) != 0)
                throw InternalContradiction("projection left a nonzero cross pairing");
    if (!(lattice_sum(l0.module.lattice, l1.module.lattice) == l.module.lattice))
        throw InternalContradiction("projection split does not reassemble the lattice");
    if (lattice_intersection(l0.module.lattice, l1.module.lattice).rank() != 0)
        throw InternalContradiction("projection split is not direct");
    return l1;
}

JordanSplit jordan_split(const FormedLattice& l) {
    const std::int64_t p = l.prime();
    try {
        r_basis_of_free(l.module);
    } catch (const NotFree&) {
        throw NotFree("lattice is not a free module");
    }
    if (!is_elementary(l)) {
        auto witness = elementary_witness(l);
        if (!witness) witness = integrality_witness(l);
        throw NotElementary("lattice is not elementary", std::move(witness));
    }

    const FormedLattice dual = dual_of(l);
    CompatibleBasisResult compat;
    try {
        compat = compatible_basis(dual.module, l.module);
    } catch (const PreconditionViolated& e) {
        // The dual of a free elementary lattice is free of the same rank;
        // reaching this point contradicts that.
        throw InternalContradiction(std::string("dual pair violates the splitting theorem: ") +
                                    e.what());
    }
    const std::int64_t t = compat.t;
    const std::int64_t a = static_cast<std::int64_t>(compat.basis.size());

    std::vector<QVector> head(compat.basis.vectors.begin(), compat.basis.vectors.begin() + t);
    const FormedLattice l0 =
        l.with_lattice(r_span(p, l.module.sigma, head, l.module.ambient_dim()));
    const FormedLattice l1 = projection_split(l, l0);

    JordanSplit split{l0, l1, t};
    if (split.l0.rank() != static_cast<std::size_t>(p * t))
        throw InternalContradiction("unimodular part has wrong rank");
    if (!is_unimodular(split.l0) && split.l0.rank() > 0)
        throw InternalContradiction("head span is not unimodular");
    if (split.l1.rank() > 0 && !is_modular(split.l1, 1))
        throw InternalContradiction("complement is not p-modular");
    if (lattice_index(dual.module.lattice, l.module.lattice) != p * (a - t))
        throw InternalContradiction("dual index disagrees with the split");
    return split;
}

std::vector<QVector> hermitian_dual_basis(const FormedLattice& l, const RBasis& basis) {
    const std::int64_t p = l.prime();
    const std::size_t a = basis.size();
    // Stack the Z_(p)-basis {g_i sigma^k} in (i, k) order; the Hermitian dual
    // basis consists of the B-dual vectors at the k = 0 slots.
    QMatrix rows(0, l.module.ambient_dim());
    for (std::size_t i = 0; i < a; ++i)
        rows = vstack(rows, orbit_rows(basis.vectors[i], l.module.sigma, p));
    const QMatrix gram = rows * l.form * rows.transpose();
    QMatrix ginv;
    try {
        ginv = gram.inverse();
    } catch (const SingularMatrix&) {
        throw DegenerateForm("form is degenerate on the lattice");
    }
    const QMatrix duals = ginv * rows;
    std::vector<QVector> out;
    out.reserve(a);
    for (std::size_t i = 0; i < a; ++i) out.push_back(duals.row(i * static_cast<std::size_t>(p)));
    return out;
}

}  // namespace grlat
