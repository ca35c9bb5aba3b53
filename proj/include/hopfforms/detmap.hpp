#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hopfforms/chartab.hpp"
#include "hopfforms/cyclotomic.hpp"
#include "hopfforms/ffield.hpp"
#include "hopfforms/group.hpp"
#include "hopfforms/hopforder.hpp"
#include "hopfforms/matrix.hpp"
#include "hopfforms/modrep.hpp"

namespace hopfforms {

// ---------------------------------------------------------------------------
// characteristic zero: determinants of group-algebra units over Q(zeta_e)

/*
 * One determinant value per irreducible character, in character-table row
 * order.  Values are nonzero cyclotomic numbers; the map z -> DetVector is
 * multiplicative and Galois-equivariant, both of which are checked by the
 * verification helpers below rather than assumed.
 */
struct DetVector {
    std::vector<Cyclo> value;

    bool operator==(const DetVector& o) const { return value == o.value; }
    bool operator!=(const DetVector& o) const { return !(*this == o); }
};

DetVector det_mul(const DetVector& a, const DetVector& b);
DetVector det_pow(const DetVector& a, long e);
bool det_is_ones(const DetVector& a);

// det of T_chi(z) for every irreducible matrix model; throws when some block
// determinant vanishes (z is not a unit of the group algebra).
DetVector det_map(const CharacterTable& T, const std::vector<MonomialRep>& reps,
                  const CVec& z);

// Same for an m x m matrix over the group algebra, blocks[r][s] row-major.
DetVector det_map_matrix(const CharacterTable& T, const std::vector<MonomialRep>& reps,
                         const std::vector<std::vector<CVec>>& blocks);

// Membership in the minus part: Det(z bar(z)) is the all-ones vector.
bool minus_det_check(const CharacterTable& T, const std::vector<MonomialRep>& reps,
                     const CVec& z);
bool minus_det_check_matrix(const CharacterTable& T,
                            const std::vector<MonomialRep>& reps,
                            const std::vector<std::vector<CVec>>& blocks);

// For every Galois automorphism zeta -> zeta^t of the exponent-th cyclotomic
// field that fixes the coefficients of z: the det value on the conjugated
// character row must be the conjugate of the det value.  Throws with the
// offending t and row on failure.
void verify_det_galois_equivariance(const CharacterTable& T,
                                    const std::vector<MonomialRep>& reps,
                                    const CVec& z);

/*
 * For abelian G: Det is plain character evaluation, and is injective on the
 * whole unit group because the character matrix is nonsingular.  Checks, in
 * order: Det(1) is all-ones, the 2|G| trivialized units +-g have pairwise
 * distinct det vectors, the character matrix has nonzero determinant, and
 * randomly sampled pairs of distinct units are separated.  Throws on any
 * violation.
 */
void abelian_det_injectivity_check(const CharacterTable& T,
                                   const std::vector<MonomialRep>& reps,
                                   std::uint64_t seed);

/*
 * sigma-orbits of the irreducible characters of an odd-order group: the
 * trivial character gives the distinguished base-field factor and everything
 * else falls into conjugate pairs (chi, bar chi) of split components of
 * M_m(K[G]).  A nontrivial self-paired (real-valued) character would be an
 * orthogonal or symplectic component, which cannot exist at odd order, so
 * finding one is a hard error.
 */
struct SigmaSplitChar0 {
    long m = 1;
    long trivial_row = -1;
    std::vector<std::pair<long, long>> split_pairs;  // (row, conjugate row)
};

SigmaSplitChar0 sigma_components_char0(const CharacterTable& T, long m);

// ---------------------------------------------------------------------------
// reduced case: determinants over the canonical simples of a finite algebra

enum class InvolutionKind { orthogonal, unitary, symplectic, swap };

const char* involution_kind_name(InvolutionKind k);

/*
 * Field presentation of one canonical simple: the endomorphism algebra is a
 * field k_i, the simple is n-dimensional over it, and rho[j] is the n x n
 * matrix over k_i of the j-th algebra basis element.  Construction verifies
 * that rho is unital and multiplicative on every basis pair, so determinants
 * taken through rho are determinants of an honest matrix model.
 */
struct DetComponent {
    FF k;
    long n = 0;
    long end_deg = 1;  // degree of k_i over the algebra's base field
    std::vector<Mat<FFElt>> rho;
};

/*
 * Link between a simple and its partner under the involution:
 *     rho_i(sigma(x)) = u . tau^frob(rho_pair(x))^T . u^{-1}
 * holds for every basis element x, where tau is the p-power Frobenius of
 * k_i and u is an invertible witness, unique up to scalars.  The witness
 * classifies the component: a swapped pair, a unitary component (frob != 0,
 * with a symmetric representative of u), or an orthogonal / symplectic
 * component (frob = 0, u^T = u or u^T = -u).
 */
struct SigmaLink {
    long pair = -1;
    long frob = 0;
    Mat<FFElt> u;
    InvolutionKind kind = InvolutionKind::orthogonal;
};

struct DetData {
    long p = 0;          // characteristic
    long dim = 0;        // algebra dimension over its base field
    bool packable = false;  // prime base field and every end_deg == 1
    std::vector<DetComponent> comp;
    std::vector<SigmaLink> link;  // empty when the algebra has no involution
};

// Builds the field presentations and sigma links for every canonical simple
// of the context.  Throws when an endomorphism field cannot be presented
// (non-prime base field with non-scalar endomorphisms) or when any of the
// stated verifications fail.
DetData make_det_data(const ModRepContext& ctx, std::uint64_t seed);

// Determinant tuple of an m x m block element over the base algebra
// (blocks row-major, each a coordinate vector).  Entry i is the determinant
// over k_i of the rho_i-image; the element is a unit iff no entry is zero.
std::vector<FFElt> det_blocks(const DetData& dd, long m,
                              const std::vector<std::vector<FFElt>>& blocks);
std::vector<FFElt> det_ff(const DetData& dd, const std::vector<FFElt>& z);

// ---------------------------------------------------------------------------
// Wedderburn decomposition with involution

struct WedderburnComponent {
    std::vector<FFElt> idempotent;  // central primitive idempotent
    long n = 0;                     // component is M_n over a field of
    long field_deg = 0;             //   p^field_deg elements
    long simple_index = -1;         // canonical simple the component acts on
};

struct WedderburnData {
    std::vector<WedderburnComponent> comp;
    std::vector<long> sigma_perm;
    std::vector<InvolutionKind> kind;
};

/*
 * Central primitive idempotents of a semisimple algebra, computed by
 * splitting the center along factored minimal polynomials; each idempotent
 * is matched to the canonical simple it acts on as the identity.  The
 * idempotents are verified orthogonal and complete, the involution is
 * verified to permute them compatibly with the duality of the simples, and
 * each sigma-orbit carries the InvolutionKind from the witness
 * classification.  With forbid_symplectic set, a symplectic component is a
 * hard error (odd group order, odd characteristic).
 */
WedderburnData wedderburn_with_involution(const ModRepContext& ctx, const DetData& dd,
                                          std::uint64_t seed, bool forbid_symplectic);

// ---------------------------------------------------------------------------
// exhaustive unitary groups and determinant images

/*
 * Full scan of M_m(A) for a finite algebra A with involution: every element
 * is tested for invertibility (all component determinants nonzero) and for
 * membership in U = {C : C sigma(C) = 1}.  Det images are collected as
 * sorted lists of FFElt-index tuples, one entry per component.  The scan
 * refuses deterministically when the element count exceeds `bound`; it never
 * samples.  Large scans run on a packed machine-word path, which requires a
 * prime base field and split components (DetData.packable).
 */
struct UnitaryEnumeration {
    unsigned long scanned = 0;
    unsigned long units = 0;  // |GL_m(A)|
    unsigned long order = 0;  // |U(M_m(A))|
    std::vector<std::vector<unsigned long>> u_det_image;
    std::vector<std::vector<unsigned long>> unit_det_image;
    std::vector<std::vector<unsigned long>> minus_det_image;
    std::vector<std::vector<FFElt>> u_elements;  // captured on small scans
    bool minus_check_all = false;  // every unitary element passed the
                                   // minus-det membership test
};

UnitaryEnumeration unitary_enumerate(const ModRepContext& ctx, const DetData& dd,
                                     long m, std::uint64_t bound = (1ull << 24));

// Throws unless the two determinant images are identical; `what` names the
// comparison in the error message.
void require_same_det_image(const std::vector<std::vector<unsigned long>>& a,
                            const std::vector<std::vector<unsigned long>>& b,
                            const std::string& what);

// Det(U(A)) = Det(A^x)_-  for one exhaustive scan; with require_trivial set
// (orthogonal involution in characteristic 2) both sides must be the
// all-ones singleton.
void require_minus_equality(const DetData& dd, const UnitaryEnumeration& e,
                            bool require_trivial);

/*
 * Certified two-sided squeeze for Det(U(M_m(A))) = Det(U(A)) when M_m(A) is
 * too large to scan: the base level is scanned exhaustively, every base
 * unitary element is re-embedded as diag(u, 1, ..., 1) and verified unitary
 * with the same determinant tuple (lower inclusion), and the component
 * relation det_i(v) . tau^s(det_pair(i)(v)) = 1 -- which every unitary
 * element of any matrix level satisfies because the sigma links hold on the
 * whole basis -- is enumerated into the outer bound set (upper inclusion).
 * Equality of the two ends certifies the middle.  Throws when the ends
 * differ.
 */
struct SqueezeReport {
    unsigned long base_order = 0;
    unsigned long image_size = 0;
};

SqueezeReport verify_det_reduction_squeeze(const ModRepContext& ctx, const DetData& dd,
                                           long m, std::uint64_t bound = (1ull << 24));

// ---------------------------------------------------------------------------
// plus part of 1 + radical

/*
 * Exhaustive double inclusion (1+J)_+ = {(1+j)(1+bar j) : j in J} for the
 * radical J of a finite algebra with involution in odd characteristic.
 * Throws if J is not sigma-stable or the two sets differ.
 */
struct PlusPartReport {
    unsigned long scanned = 0;    // |1 + J|
    unsigned long plus_size = 0;  // fixed points of sigma on 1 + J
};

PlusPartReport plus_part_square_check(const FDAlgebra& A,
                                      std::uint64_t bound = (1ull << 24));

// ---------------------------------------------------------------------------
// small constructors

// F_{p^d} as a d-dimensional algebra over F_p on the power basis; with
// `conjugation` set (d even) the involution is x -> x^{p^{d/2}}, otherwise
// the identity.
FDAlgebra field_fdalgebra(long p, long d, bool conjugation);

}  // namespace hopfforms
