#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hopfforms/ffield.hpp"
#include "hopfforms/group.hpp"
#include "hopfforms/hnf.hpp"
#include "hopfforms/hopforder.hpp"
#include "hopfforms/matrix.hpp"

namespace hopfforms {

/*
 * A finite-dimensional unital algebra over a finite field, presented by the
 * left-multiplication matrix of every basis element: mult[i].at(r, j) is the
 * e_r-coefficient of e_i * e_j.  verify_fd_algebra checks the unit law and
 * associativity on all basis triples, so downstream code can rely on the
 * presentation.  Optional extras carry whatever structure the source
 * provides: an involutive anti-automorphism (group inversion or an
 * antipode), a comultiplication and a counit.
 *
 * comul[i].at(a, b) is the (e_a tensor e_b)-coefficient of the
 * comultiplication of e_i.
 */
struct FDAlgebra {
    std::string id;
    FF k;
    long dim = 0;
    std::vector<Mat<FFElt>> mult;
    std::vector<FFElt> unit;
    // Basis indices that generate the algebra as a unital algebra; checking
    // module maps and invariance on these suffices for the whole algebra.
    std::vector<long> generators;
    std::optional<Mat<FFElt>> involution;
    std::optional<std::vector<Mat<FFElt>>> comul;
    std::optional<std::vector<FFElt>> counit;
};

std::vector<FFElt> fd_mul(const FDAlgebra& A, const std::vector<FFElt>& x,
                          const std::vector<FFElt>& y);
Mat<FFElt> fd_left_mult(const FDAlgebra& A, const std::vector<FFElt>& x);
std::vector<FFElt> fd_involve(const FDAlgebra& A, const std::vector<FFElt>& x);
void verify_fd_algebra(const FDAlgebra& A);

// k[G] on the group basis, with inversion, the diagonal comultiplication and
// the all-ones counit.
FDAlgebra group_fdalgebra(const FiniteGroup& G, const FF& k);

// Reduction of a validated order modulo the maximal ideal.  The residue
// field must be F_p (the only case the pipeline needs); the antipode and the
// comultiplication reduce along with the multiplication.
FDAlgebra order_fdalgebra(const HopfOrder& L);

/*
 * A left module, one action matrix per algebra basis element (column
 * convention: vectors are columns, action[i] * v).  verify_module checks the
 * unit and the full set of defining relations action[i] action[j] =
 * action of e_i e_j.
 */
struct AlgModule {
    long dim = 0;
    std::vector<Mat<FFElt>> action;
};

void verify_module(const FDAlgebra& A, const AlgModule& M);
AlgModule regular_module(const FDAlgebra& A);
AlgModule trivial_module(const FDAlgebra& A);  // through the counit
// Dual action through the involution: action_D(x) = action(invol x)^T.
// Applying it twice returns the original action matrices exactly.
AlgModule dual_module(const FDAlgebra& A, const AlgModule& M);
// Tensor product through the comultiplication.
AlgModule tensor_module(const FDAlgebra& A, const AlgModule& M, const AlgModule& N);

// Minimal polynomial of a square matrix, by Krylov chains with polynomial
// bookkeeping; monic, exact.
FFPoly matrix_min_poly(const FF& k, const Mat<FFElt>& w);

// Basis of the space of module maps M -> N (intertwiners with the
// distinguished generators, hence with the whole algebra), as N.dim x M.dim
// matrices; hom_space_dim is its size.
std::vector<Mat<FFElt>> hom_space_basis(const FDAlgebra& A, const AlgModule& M,
                                        const AlgModule& N);
long hom_space_dim(const FDAlgebra& A, const AlgModule& M, const AlgModule& N);
// For simple modules a nonzero map is invertible, so this decides isomorphy.
bool simples_isomorphic(const FDAlgebra& A, const AlgModule& S, const AlgModule& T);

/*
 * Jacobson radical, computed by the iterated-kernel method that stays
 * correct in characteristic p: the plain trace form is refined step by step
 * with the forms x, y -> (1/p^i) trace(lift(xy)^{p^i}) mod p, where the lift
 * takes the regular-representation matrix with integer entries in [0, p).
 * Needs a prime base field.  The result is post-verified: it is a two-sided
 * ideal and nilpotent (by powering); violations throw.
 */
std::vector<std::vector<FFElt>> radical_basis(const FDAlgebra& A);

struct Semisimplification {
    FDAlgebra quotient;
    Mat<FFElt> proj;            // coordinates of the quotient map
    std::vector<long> section;  // quotient basis t lifts to e_{section[t]}
};

// Quotient by the radical; verified semisimple by recomputing its radical
// (which must be zero) and rechecking the algebra axioms.
Semisimplification semisimplify(const FDAlgebra& A);

/*
 * Composition factors of a module, MeatAxe style: random algebra elements,
 * minimal polynomial factors, kernel-vector spinning, and the two-sided
 * spinning certificate for irreducibility when a factor's nullity equals its
 * degree.  Deterministically seeded; throws with the seed in the message if
 * the search budget is exhausted.  Total dimension is capped at 128.
 */
std::vector<AlgModule> chop_factors(const FDAlgebra& A, const AlgModule& M,
                                    std::uint64_t seed);

/*
 * An algebra together with its canonical list of simple modules, obtained by
 * chopping the regular module, deduplicating up to isomorphism, and sorting
 * by the canonical key (dimension, trace tuple over the basis, minimal
 * polynomials of the generator actions).  Two different chop seeds must
 * produce the same canonical data or construction throws.  When the algebra
 * has an involution, `duality` is the induced permutation of the simples;
 * it is verified to be an involution.
 */
struct SimpleData {
    AlgModule module;
    std::vector<long> key;
    long regular_multiplicity = 0;
};

struct ModRepContext {
    FDAlgebra A;
    std::vector<SimpleData> simples;
    std::vector<long> duality;  // empty when there is no involution
    long radical_dim = 0;
};

ModRepContext make_context(const FDAlgebra& A, std::uint64_t seed);

// An element of the Grothendieck group of finitely generated modules:
// integer multiplicities over the canonical simples of one algebra.
struct G0Class {
    std::string algebra_id;
    std::vector<long> mult;

    bool operator==(const G0Class& o) const {
        return algebra_id == o.algebra_id && mult == o.mult;
    }
    bool operator!=(const G0Class& o) const { return !(*this == o); }
};

std::string g0_str(const G0Class& c);
G0Class g0_add(const G0Class& a, const G0Class& b, long scale = 1);

// Multiset of composition factors as a G0Class.  Runs the chop twice with
// seeds derived from `seed` and requires identical answers; also checks that
// the factor dimensions add up to dim M.
G0Class composition_factors(const ModRepContext& ctx, const AlgModule& M,
                            std::uint64_t seed);

G0Class g0_dual(const ModRepContext& ctx, const G0Class& c);
bool is_self_dual(const ModRepContext& ctx, long simple_index);
// For a self-dual simple with scalar endomorphisms and odd characteristic:
// +1 when the invariant bilinear form is symmetric, -1 when alternating.
int selfdual_form_type(const ModRepContext& ctx, long simple_index);

/*
 * A representation of an order over the fraction field together with a
 * stable full-rank lattice.  `action` holds one matrix per order basis
 * element; `lattice` is an HNF row basis.  make_lattice_pair saturates the
 * given rows and verifies stability under every basis element.
 */
struct LatticePair {
    LocalRing ring;
    std::vector<Mat<Cyclo>> action;
    Mat<Cyclo> lattice;
};

// Order-basis action matrices from per-group-element matrices of a
// representation (verified multiplicative on all pairs).  Group side only.
std::vector<Mat<Cyclo>> krep_from_group_matrices(const HopfOrder& L,
                                                 const std::vector<Mat<Cyclo>>& rho);

LatticePair make_lattice_pair(const HopfOrder& L, std::vector<Mat<Cyclo>> action,
                              const Mat<Cyclo>& rows);

// The lattice modulo pi as a module over the reduced order.
AlgModule lattice_reduction(const FDAlgebra& Ltilde, const LatticePair& P);

/*
 * Composition factors of (lattice modulo pi) for the order lattice generated
 * by a spanning set of the representation space.  Every call builds a second
 * lattice from the spanning set scaled by a random unit and shifted by a
 * random order image, reduces both, and requires the two factor multisets to
 * agree -- the class does not depend on the chosen lattice.
 */
G0Class decomposition_map(const HopfOrder& L, const ModRepContext& ctx,
                          const std::vector<Mat<Cyclo>>& action,
                          const Mat<Cyclo>& spanning, std::uint64_t seed);

/*
 * Induction and restriction along the inclusion of a subgroup order.  The
 * ambient order is free over the suborder on the certified module basis; the
 * expansion of (basis element) * (module basis element) in that free basis
 * is computed over the fraction field, checked integral, and reduced.
 */
struct InductionData {
    long rank = 0;  // [G : H]
    long hdim = 0;
    Mat<FFElt> embed;  // suborder basis -> ambient coordinates, algebra map
    // exp_coeff[i].at(s * hdim + u, t): u-th suborder coefficient of the
    // element lambda_{s,t} in  e_i c_t = sum_s c_s lambda_{s,t}.
    std::vector<Mat<FFElt>> exp_coeff;
};

InductionData make_induction(const HopfOrder& LG, const SubgroupOrderData& sub,
                             const FDAlgebra& AG, const FDAlgebra& AH);

AlgModule induce_module(const InductionData& ind, const FDAlgebra& AH,
                        const FDAlgebra& AG, const AlgModule& M);
AlgModule restrict_module(const InductionData& ind, const FDAlgebra& AH,
                          const FDAlgebra& AG, const AlgModule& N);

G0Class induce_g0(const InductionData& ind, const ModRepContext& ctxH,
                  const ModRepContext& ctxG, const G0Class& y, std::uint64_t seed);

// [Ind(M) tensor N] = [Ind(M tensor Res N)] for simples M of the suborder
// and N of the ambient algebra; throws with a witness on mismatch.
void verify_frobenius(const InductionData& ind, const ModRepContext& ctxH,
                      const ModRepContext& ctxG, long simpleH, long simpleG,
                      std::uint64_t seed);

// Induction commutes with duality on classes: Ind(y^D) = Ind(y)^D.
void verify_ind_dual(const InductionData& ind, const ModRepContext& ctxH,
                     const ModRepContext& ctxG, const G0Class& y, std::uint64_t seed);

// pi E1 <= E2 <= E1 for full-rank HNF lattices; throws otherwise.
void check_lattice_sandwich(const LocalRing& R, const Mat<Cyclo>& E1,
                            const Mat<Cyclo>& E2);

// For a square of lattices as above: tensoring the two reductions with a
// fixed module F gives the same composition factors.  Returns the common
// class; throws with both factor vectors on mismatch.
G0Class verify_swan_square(const ModRepContext& ctx, const AlgModule& F,
                           const AlgModule& E1red, const AlgModule& E2red,
                           std::uint64_t seed);

struct SelfDualReport {
    std::vector<long> selfdual;  // indices of self-dual simples
    std::vector<int> types;      // +1 per entry (odd characteristic)
};

/*
 * For a split reduction (every simple has scalar endomorphisms) in odd
 * characteristic: no self-dual simple may have even dimension and every
 * invariant form on a self-dual simple must be symmetric.  With `elementary`
 * set, additionally no nontrivial simple may be self-dual (the trivial one
 * is identified as the factor of the counit module).  Throws on violation.
 */
SelfDualReport verify_selfdual_constraints(const ModRepContext& ctx, bool elementary);

// For a product situation: the simples of the big algebra must be, counted
// with dimensions, exactly the pairwise products of the simples of the two
// factors.  Throws with the dimension multisets on mismatch.
void check_simple_dims_product(const ModRepContext& ctxH, const ModRepContext& ctxC,
                               const ModRepContext& ctxL);

// Do the given classes jointly hit every simple with a positive coefficient?
bool g0_union_covers(const std::vector<G0Class>& images, long nsimples);

}  // namespace hopfforms
