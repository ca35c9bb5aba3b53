#pragma once

#include <vector>

#include "hopfforms/cyclotomic.hpp"
#include "hopfforms/group.hpp"
#include "hopfforms/matrix.hpp"

namespace hopfforms {

/*
 * Exact complex character table.  Values are computed modulo a split prime
 * ell = 1 (mod exponent) via the class-matrix eigenvalue method, lifted into
 * Q(zeta_e) through eigenvalue-multiplicity sums, and then re-verified
 * against the exact orthogonality relations before being returned.  Rows are
 * sorted by (degree, lexicographic value tuple); classes are ordered by their
 * least element, so the identity class is column 0.
 */
struct CharacterTable {
    FiniteGroup G;
    long exponent = 1;
    long ell = 0;  // split prime used by the modular stage
    std::vector<std::vector<long>> classes;
    std::vector<long> class_of;       // group element -> class index
    std::vector<long> inverse_class;  // class index -> class of inverses
    std::vector<long> degrees;
    std::vector<std::vector<Cyclo>> rows;  // rows[i][j] = chi_i on class j

    long num_classes() const { return (long)classes.size(); }
};

// bound guards the modular search: groups larger than this are rejected.
CharacterTable character_table(const FiniteGroup& G, long bound = 64);

// Throws with a witness if any orthogonality relation fails.
void verify_character_table(const CharacterTable& T);

// Primitive central idempotents of K[G], indexed like the table rows.
std::vector<std::vector<Cyclo>> central_idempotents(const CharacterTable& T);

// Index of the complex-conjugate character of row i.
long conjugate_row(const CharacterTable& T, long i);

/*
 * Explicit matrix model of one irreducible representation, realized as a
 * monomial representation: induced from a linear character of a subgroup.
 * Every group handled here admits such a model for each irreducible.
 */
struct MonomialRep {
    long degree = 0;
    long row = -1;                  // character-table row this realizes
    std::vector<long> subgroup;     // H, sorted element list
    std::vector<long> coset_reps;   // transversal used for the induction
    std::vector<Mat<Cyclo>> mats;   // one matrix per group element
};

std::vector<MonomialRep> monomial_irreps(const CharacterTable& T);

}  // namespace hopfforms
