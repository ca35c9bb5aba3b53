#pragma once

#include <string>
#include <vector>

namespace hopfforms {

/*
 * A finite group as a full multiplication table.  Element 0 is always the
 * identity; presets number elements canonically so that tables, conjugacy
 * classes and every downstream report are reproducible.
 */
struct FiniteGroup {
    long n = 0;
    std::vector<long> table;    // row-major, table[a*n + b] = a*b
    std::vector<long> inverse;  // inverse[a]
    std::string name;

    long mul(long a, long b) const { return table[(size_t)(a * n + b)]; }
    long inv(long a) const { return inverse[(size_t)a]; }
};

// Verifies the axioms (throws with a witness) and fills in inverses.
FiniteGroup group_from_table(std::string name, long n, std::vector<long> table);

FiniteGroup build_cyclic(long n);
FiniteGroup build_product(const FiniteGroup& A, const FiniteGroup& B);
// a^m = b^k = 1, b a b^{-1} = a^r; needs r^k = 1 (mod m).
FiniteGroup build_metacyclic(long m, long k, long r);
FiniteGroup build_heisenberg3();  // upper unitriangular 3x3 over F_3

// Preset labels: "C<n>", products like "C3xC3" / "C3xC7", "M7_3" (metacyclic
// order 21), "H27" (Heisenberg of order 27).
FiniteGroup build_group(const std::string& preset);

long element_order(const FiniteGroup& G, long g);
long group_exponent(const FiniteGroup& G);
bool group_is_abelian(const FiniteGroup& G);

// Conjugacy classes, each sorted ascending, classes ordered by least element
// (so the identity class comes first).
std::vector<std::vector<long>> conjugacy_classes(const FiniteGroup& G);
std::vector<long> class_index_map(const FiniteGroup& G,
                                  const std::vector<std::vector<long>>& classes);

std::vector<long> subgroup_closure(const FiniteGroup& G, std::vector<long> gens);

// Small generating set, built greedily in element order.  Checking a
// multiplicative property on these generators is enough to get it on all of G.
std::vector<long> generating_set(const FiniteGroup& G);

bool is_subgroup(const FiniteGroup& G, const std::vector<long>& H);
bool is_normal_subgroup(const FiniteGroup& G, const std::vector<long>& H);
std::vector<long> commutator_subgroup(const FiniteGroup& G);
std::vector<long> center_subgroup(const FiniteGroup& G);

struct QuotientData {
    FiniteGroup Q;
    std::vector<long> proj;  // element of G -> element of Q
    std::vector<long> reps;  // element of Q -> least representative in G
};
QuotientData quotient_group(const FiniteGroup& G, const std::vector<long>& N);

// Invariant factors d1 | d2 | ... of a finite abelian group.
std::vector<long> abelian_invariants(const FiniteGroup& A);

// Least representatives of the left cosets gH, identity's coset first.
std::vector<long> left_coset_reps(const FiniteGroup& G, const std::vector<long>& H);

// Reindex a subgroup (sorted element list) as a standalone FiniteGroup;
// element i of the result is H[i], so the identity lands at index 0.
FiniteGroup subgroup_as_group(const FiniteGroup& G, const std::vector<long>& H);

// All distinct subgroups generated by at most two elements, sorted by
// (size, elements).  For the groups here this includes every subgroup that
// the induction machinery needs.
std::vector<std::vector<long>> subgroups_upto2gen(const FiniteGroup& G);

}  // namespace hopfforms
