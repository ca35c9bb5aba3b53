#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hopfforms/cyclotomic.hpp"
#include "hopfforms/group.hpp"
#include "hopfforms/hnf.hpp"
#include "hopfforms/localring.hpp"
#include "hopfforms/matrix.hpp"

namespace hopfforms {

using CVec = std::vector<Cyclo>;

// Which of the two dual algebras a lattice lives in.
enum class Side {
    Group,  // the group algebra K[G], basis {g}
    Map     // the function algebra Map(G, K), basis {l_g}
};

Side other_side(Side s);

// Algebra operations in the chosen side (coordinates over the standard basis).
CVec side_mul(Side s, const FiniteGroup& G, const CVec& x, const CVec& y);
CVec side_unit(Side s, const FiniteGroup& G);
Cyclo side_counit(Side s, const CVec& x);
CVec side_antipode(Side s, const FiniteGroup& G, const CVec& x);
// Comultiplication as an n x n coefficient matrix over basis pairs:
// D[a][b] = coefficient of b_a (x) b_b in the comultiplication of x.
Mat<Cyclo> side_comul(Side s, const FiniteGroup& G, const CVec& x);

// Checks the bialgebra/antipode axioms at the single element x:
// coassociativity, both counit laws, and the antipode law
// mul(S (x) id)(comul x) = counit(x) . 1.  Throws on violation.
void verify_hopf_axioms_on(Side s, const FiniteGroup& G, const CVec& x);

/*
 * An R-order in K[G] or in Map(G, K) whose lattice is stable under the
 * full Hopf structure: closed under multiplication, contains the unit,
 * comultiplication lands in the tensor square of the lattice, the antipode
 * fixes the lattice and the counit takes integral values.  The basis is
 * kept in canonical echelon form, so equal orders have equal bases.
 */
struct HopfOrder {
    Side side;
    FiniteGroup G;
    LocalRing ring;
    Mat<Cyclo> basis;      // canonical (echelon) row basis
    Mat<Cyclo> basis_inv;  // cached inverse for fast membership tests
    std::string name;
    // Explicitly registered sub-orders (bases in the same coordinates).
    std::vector<std::pair<std::string, Mat<Cyclo>>> suborders;

    bool contains(const CVec& x) const;
    // Coordinates of x in the stored basis (entries in K, not nec. in R).
    CVec coords(const CVec& x) const;
};

struct OrderFailure {
    std::string axiom;    // which requirement failed
    std::string witness;  // offending element or value, printed
};

// Validates every axiom; returns the failure description instead of throwing.
std::optional<OrderFailure> check_hopf_order(Side side, const FiniteGroup& G,
                                             const LocalRing& ring, const Mat<Cyclo>& rows);

// Validates and canonicalizes; throws std::runtime_error quoting the failed
// axiom and a witness if the lattice is not a Hopf order.
HopfOrder make_hopf_order(Side side, const FiniteGroup& G, const LocalRing& ring, Mat<Cyclo> rows,
                          std::string name);

HopfOrder group_ring_order(const FiniteGroup& G, const LocalRing& ring);  // R[G]
HopfOrder map_order(const FiniteGroup& G, const LocalRing& ring);         // Map(G, R)

// The dual lattice on the other side under <sum u_t t, f> = sum u_t f(t);
// an involution on validated orders.
HopfOrder dual_order(const HopfOrder& L);

void register_suborder(HopfOrder& L, const HopfOrder& C);

/*
 * The integrals I(L) = { x in L : a.x = counit(a).x for all a in L }.
 * The solution space is one-dimensional over K for both sides; the stored
 * generator is the canonical one (echelon-normalized), and the counit of
 * I(L) is the ideal pi^eps_exponent.
 */
struct IntegralData {
    CVec generator;
    long eps_exponent;
};

IntegralData integrals(const HopfOrder& L);

// For a Map-side order A: lambda = pi^k generating counit(I(A)), and
// theta = lambda . l, the canonical integral itself (l = indicator of 1).
Cyclo order_lambda(const HopfOrder& A);
CVec order_theta(const HopfOrder& A);

// Solves f = u . theta for u = lambda^{-1} sum_g f(g^{-1}) g, verifies the
// action roundtrip, and checks u lies in the dual order iff f lies in A.
CVec theta_expansion(const HopfOrder& A, const CVec& f);

/*
 * Verifies, for a Map-side order A with dual AD:
 *   - A equals AD . I(A) as lattices (the action span of theta);
 *   - counit(I(AD)) . counit(I(A)) = nR;
 *   - lambda . AD is contained in R[G];
 *   - counit(I(C)) A is contained in counit(I(A)) C for each registered
 *     sub-order C of A.
 * Throws std::runtime_error on any failure.
 */
void check_integral_identities(const HopfOrder& A);

struct IndexSquaredReport {
    long index_exp;   // [AD : R[G]] = pi^index_exp
    long lambda_exp;  // lambda = pi^lambda_exp
    long alpha_exp;   // alpha = pi^{lambda_exp/2}, lambda = alpha^2
};

// For a Group-side order AD containing R[G], |G| odd: checks
// lambda^n R = [AD : R[G]]^2 R and that v(lambda) is even.
IndexSquaredReport index_squared_check(const HopfOrder& AD);

// The R-algebra generated by (sigma - 1)/pi^i in K[C] for C cyclic of order
// p^power, validated as a Hopf order (throws for inadmissible i).
HopfOrder larson_order(long p, long power, long i, const LocalRing& ring);

/*
 * The intersection L cap K[H] for a Group-side order L and a subgroup H,
 * returned as a validated order in K[H] (H reindexed as its own group),
 * together with a certificate that L is free as a module over the
 * intersection: module generators whose span over the sub-order is all of L,
 * exactly [G:H] many of them.
 */
struct SubgroupOrderData {
    FiniteGroup H;                 // the subgroup as a group of its own
    std::vector<long> embedding;   // H element -> G element
    HopfOrder order;               // L cap K[H], basis in K[H] coordinates
    std::vector<CVec> module_basis;  // elements of L, free basis over the sub-order
};

SubgroupOrderData subgroup_order(const HopfOrder& L, const std::vector<long>& H_elements);

/*
 * For G = C x L with C the p-part and L of order coprime to p, verifies
 * that the intersection with K[L] is R[L], that the span of
 * (Lam cap K[C]) . R[L] equals Lam, and that its integrals ideal matches
 * that of Lam.  Throws on mismatch.
 */
void elementary_factorization_check(const HopfOrder& Lam, const std::vector<long>& C_elements,
                                    const std::vector<long>& L_elements);

// Tensor e of a Group-side order on C with the group ring of L inside
// K[C x L] (indexing (c, l) -> c*|L| + l as in build_product).
HopfOrder tensor_with_group_ring(const HopfOrder& LamC, const FiniteGroup& L,
                                 const FiniteGroup& G);

}  // namespace hopfforms
