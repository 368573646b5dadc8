#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "grlat/groupring.hpp"
#include "grlat/plattice.hpp"
#include "grlat/qmatrix.hpp"

namespace grlat {

// Module structure of lattices with an order-p automorphism: classification
// into R^a + T^b + S^c, free bases, radical lattices, compatible bases for
// free pairs, pseudo-bases for semisimple pairs.

/// A Z_(p)-lattice together with an order-p action matrix sigma stabilising
/// it (row convention: the action is v -> v * sigma).  The rank may be
/// smaller than the ambient dimension; sublattices keep the ambient sigma.
struct SigmaLattice {
    ZpLattice lattice;
    QMatrix sigma;

    SigmaLattice() = default;
    SigmaLattice(ZpLattice l, QMatrix s);  // validates sigma^p = 1 and sigma-stability

    std::int64_t prime() const { return lattice.prime; }
    std::size_t ambient_dim() const { return lattice.ambient_dim; }
    std::size_t rank() const { return lattice.rank(); }

    /// Same ambient action, different lattice (validated).
    SigmaLattice with_lattice(ZpLattice l) const;
};

/// The p rows g, g sigma, ..., g sigma^(p-1).
QMatrix orbit_rows(const QVector& g, const QMatrix& sigma, std::int64_t p);

/// v * x where x acts through powers of sigma.
QVector act_elt(const QVector& v, const QAlgebraElt& x, const QMatrix& sigma);
QVector act_elt(const QVector& v, const GroupRingElt& x, const QMatrix& sigma);

/// The R-module lattice generated by the given vectors (orbit spans, summed).
ZpLattice r_span(std::int64_t p, const QMatrix& sigma, const std::vector<QVector>& gens,
                 std::size_t ambient_dim);

/// Matrix of the norm element 1 + sigma + ... + sigma^(p-1).
QMatrix norm_matrix(const QMatrix& sigma, std::int64_t p);

/// { x in L : x sigma = x }.
ZpLattice fixed_sublattice(const SigmaLattice& l);

/// Image of L under the norm element.
ZpLattice norm_image(const SigmaLattice& l);

struct DecompositionType {
    std::int64_t a = 0, b = 0, c = 0;
    friend bool operator==(const DecompositionType&, const DecompositionType&) = default;
};

/// Multiplicities (a, b, c) with L isomorphic to R^a + T^b + S^c, computed
/// from the dimensions of L^sigma / N(L) and ker N / (sigma - 1)L.  Throws
/// InconsistentType if the counts cannot come from an order-p action.
DecompositionType decomposition_type(const SigmaLattice& l);

/// True iff the type is (a, 0, 0).
bool is_free(const SigmaLattice& l);

/// pM + (sigma - 1)M; for free M of rank a this has index p^a in M.
ZpLattice radical_lattice(const SigmaLattice& m);

/// Generators g_1..g_a whose sigma-orbits form a Z_(p)-basis of the lattice.
struct RBasis {
    std::vector<QVector> vectors;
    std::size_t size() const { return vectors.size(); }
};

/// An R-basis of a free lattice, found by lifting a residue basis modulo the
/// radical; throws NotFree when the lattice is not a free R-module.
RBasis r_basis_of_free(const SigmaLattice& l);

/// Splits M = Rg + M' for g in M outside J(M); returns (Rg, M').  Both
/// summands carry the ambient sigma.  The direct-sum property is checked on
/// every call.
std::pair<SigmaLattice, SigmaLattice> split_off_free_summand(const SigmaLattice& m,
                                                             const QVector& g);

struct CompatibleBasisResult {
    RBasis basis;     ///< R-basis g_1..g_a of M
    std::int64_t t;   ///< (g_1..g_t, p g_(t+1)..p g_a) is an R-basis of L
};

/// For free lattices pM <= L <= M, produces an R-basis of M a tail segment of
/// which scales by p to an R-basis of L.  Throws PreconditionViolated when
/// the input pair is not of the required shape and InternalContradiction if
/// the descent reaches a state the underlying theorem excludes.
CompatibleBasisResult compatible_basis(const SigmaLattice& m, const SigmaLattice& l);

/// Checks a claimed compatible basis: orbit span equals M, the p-scaled tail
/// spans L, and the index of L in M matches p(a - t).
bool verify_compatible(const SigmaLattice& m, const SigmaLattice& l,
                       const CompatibleBasisResult& result);

struct PseudoBasisResult {
    std::vector<QVector> x_vectors;       ///< T-basis of M e_zeta
    std::vector<std::int64_t> n_exponents;  ///< L e_zeta = sum pi^(n_i) T x_i
    std::vector<QVector> y_vectors;       ///< Z_(p)-basis of M e_1
    std::vector<std::int64_t> m_exponents;  ///< L e_1 = sum p^(m_i) Z_(p) y_i
};

/// Aligned pseudo-bases for a pair L <= M both of type (0, b, c): elementary
/// divisors over T on the e_zeta part and over Z_(p) on the e_1 part.
PseudoBasisResult semisimple_pseudobasis(const SigmaLattice& m, const SigmaLattice& l);

struct CounterexampleReport {
    DecompositionType type_m;
    DecompositionType type_l;
    bool type_l_matches = false;   ///< L has type (1, 0, 1)
    bool inclusions_hold = false;  ///< pM <= L <= M
    std::int64_t index_exponent = -1;
    bool index_matches = false;    ///< [M : L] = p^2
    SigmaLattice m, l;

    bool all_checks_pass() const {
        return type_l_matches && inclusions_hold && index_matches;
    }
};

/// Builds the rank-(p+1) pair M = R + S, L = <p x e_1, x(1-sigma) + y> and
/// machine-checks the facts that make a compatible pseudo-basis impossible.
/// Throws UnsupportedPrime for p = 2.
CounterexampleReport verify_counterexample(std::int64_t p);

// -- standard constructions ---------------------------------------------------

/// Cyclic shift permutation matrix: the regular representation of C_p.
QMatrix regular_rep_sigma(std::int64_t p);
/// Companion matrix of the p-th cyclotomic polynomial (multiplication by
/// zeta on the power basis).
QMatrix companion_phi_sigma(std::int64_t p);
/// Block-diagonal action with a regular blocks, b companion blocks and c
/// identity blocks.
QMatrix block_sigma(std::int64_t p, std::int64_t a, std::int64_t b, std::int64_t c);
/// Standard lattice with the block action of the given type.
SigmaLattice block_module(std::int64_t p, std::int64_t a, std::int64_t b, std::int64_t c);
/// Free module R^a with the regular block action on the standard lattice.
SigmaLattice standard_free_module(std::int64_t p, std::int64_t a);

}  // namespace grlat
