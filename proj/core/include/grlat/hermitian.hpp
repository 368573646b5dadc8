#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "grlat/errors.hpp"
#include "grlat/groupring.hpp"
#include "grlat/modulestruct.hpp"

namespace grlat {

/// Raised when an operation needs an elementary lattice; carries a witness
/// vector of p L^# outside L when one exists.
struct NotElementary : Error {
    std::optional<QVector> witness;
    explicit NotElementary(const std::string& msg, std::optional<QVector> w = std::nullopt)
        : Error(msg), witness(std::move(w)) {}
};

// Invariant bilinear forms, R-valued Hermitian forms on free lattices, dual
// lattices and the modularity predicates, and the orthogonal splitting of
// free elementary lattices into a unimodular and a p-modular part.

/// A sigma-lattice together with a symmetric, sigma-invariant, non-degenerate
/// bilinear form on the ambient space.  The form is ambient so sublattices
/// and duals never re-derive it; Gram matrices are computed on demand.
struct FormedLattice {
    SigmaLattice module;
    QMatrix form;

    FormedLattice() = default;
    FormedLattice(SigmaLattice m, QMatrix f);  // validates the invariants

    std::int64_t prime() const { return module.prime(); }
    std::size_t rank() const { return module.rank(); }

    FormedLattice with_lattice(ZpLattice l) const;
};

/// Gram matrix of the stored basis under the ambient form.
QMatrix gram_matrix(const FormedLattice& l);

/// h(x, y) = sum_k B(x, y sigma^k) sigma^k as an element of QC_p.  Linear in
/// the first argument, conjugate-linear in the second.
QAlgebraElt hermitian_pairing(const QVector& x, const QVector& y, const QMatrix& sigma,
                              const QMatrix& form, std::int64_t p);

/// Conjugate-symmetric matrix of R-valued Hermitian pairings on an R-basis.
struct HermitianGram {
    std::int64_t prime = 0;
    std::size_t rank = 0;
    std::vector<GroupRingElt> entries;  // row-major rank x rank

    HermitianGram() = default;
    HermitianGram(std::int64_t p, std::size_t rank, std::vector<GroupRingElt> e);

    const GroupRingElt& at(std::size_t i, std::size_t j) const { return entries[i * rank + j]; }
    GroupRingElt& at(std::size_t i, std::size_t j) { return entries[i * rank + j]; }
};

bool operator==(const HermitianGram& a, const HermitianGram& b);

/// Hermitian Gram of a free formed lattice on the given R-basis.  The entries
/// land in R whenever the lattice is integral; a non p-local pairing raises
/// NotPLocal.
HermitianGram bilinear_to_hermitian(const FormedLattice& l, const RBasis& basis);

/// The standard free lattice R^a carrying the bilinear form induced by an
/// R-valued Hermitian Gram through (1/p) Tr_reg; inverse of
/// bilinear_to_hermitian.  Throws DegenerateForm when the induced form is
/// singular.
FormedLattice hermitian_to_bilinear(const HermitianGram& g);

/// Dual lattice under the ambient form; carries the same sigma and form.
FormedLattice dual_of(const FormedLattice& l);

bool is_integral(const FormedLattice& l);    // L <= L^#
bool is_unimodular(const FormedLattice& l);  // L = L^#
bool is_modular(const FormedLattice& l, std::int64_t j);  // p^j L^# = L
bool is_elementary(const FormedLattice& l);  // p L^# <= L <= L^#

/// A vector of p L^# outside L, when the lattice fails to be elementary on
/// that side; nullopt when p L^# <= L holds.
std::optional<QVector> elementary_witness(const FormedLattice& l);
/// A basis vector of L pairing non-integrally, when L is not integral.
std::optional<QVector> integrality_witness(const FormedLattice& l);

struct JordanSplit {
    FormedLattice l0;  ///< unimodular part, rank p*t
    FormedLattice l1;  ///< p-modular part
    std::int64_t t = 0;
};

/// Orthogonal splitting L = L0 + L1 of a free elementary lattice into a
/// unimodular and a p-modular free part, through a compatible basis of the
/// dual.  Every invariant of the split is machine-checked before returning.
JordanSplit jordan_split(const FormedLattice& l);

/// Orthogonal complement of a unimodular sublattice L0 <= L via Gram
/// projection; guarantees L = L0 + L1 with zero cross Gram.  Throws
/// NotUnimodularSummand when L0 is not a unimodular sublattice with integral
/// pairing against L.
FormedLattice projection_split(const FormedLattice& l, const FormedLattice& l0);

/// The Hermitian dual basis of a free formed lattice: vectors g* with
/// h(g*_i, g_j) = delta_ij.  Their R-span is the dual lattice.
std::vector<QVector> hermitian_dual_basis(const FormedLattice& l, const RBasis& basis);

}  // namespace grlat
