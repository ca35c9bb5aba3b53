#pragma once

#include <optional>

#include "hopfforms/localring.hpp"
#include "hopfforms/matrix.hpp"
#include "hopfforms/rational.hpp"

namespace hopfforms {

/*
 * Row-style Hermite normal form over Z: output rows are an upper-echelon
 * basis with positive pivots and the entries above each pivot reduced into
 * [0, pivot).  Zero rows are dropped, so the result has full row rank and is
 * the canonical basis of the row span.
 */
Mat<Int> hnf_integer(Mat<Int> m);

bool z_lattice_member(const Mat<Int>& hnf_basis, const std::vector<Int>& v);

// [L1 : L2] for full-rank integer lattices with L2 <= L1.
Int z_lattice_index(const Mat<Int>& L1, const Mat<Int>& L2);

/*
 * HNF over a discrete valuation ring: pivots are powers pi^a, entries above a
 * pivot are canonical digit representatives modulo pi^a.  Rows may have
 * entries of negative valuation (fractional lattices), in which case pivots
 * have the appropriate negative exponents; the normal form is canonical for
 * the R-span of the rows either way.
 */
Mat<Cyclo> hnf_local(const LocalRing& R, Mat<Cyclo> m);

bool local_lattice_member(const LocalRing& R, const Mat<Cyclo>& hnf_basis,
                          std::vector<Cyclo> v);

// Coordinates of v in the given row basis if v lies in the R-span.
std::optional<std::vector<Cyclo>> local_lattice_coords(const LocalRing& R,
                                                       const Mat<Cyclo>& hnf_basis,
                                                       std::vector<Cyclo> v);

// [L1 : L2] = pi^k for full-rank lattices with L2 <= L1 (containment checked).
long local_lattice_index_exp(const LocalRing& R, const Mat<Cyclo>& L1, const Mat<Cyclo>& L2);

Mat<Cyclo> local_lattice_sum(const LocalRing& R, const Mat<Cyclo>& B1, const Mat<Cyclo>& B2);

// Dual basis rows (B^{-1})^T of a full-rank square basis.
Mat<Cyclo> local_lattice_dual(const LocalRing& R, const Mat<Cyclo>& B);

// Intersection of two full-rank lattices, via duality.
Mat<Cyclo> local_lattice_intersect(const LocalRing& R, const Mat<Cyclo>& B1,
                                   const Mat<Cyclo>& B2);

// A lattice (full or partial rank) over Z or over a LocalRing, kept in HNF.
struct LatticeBasis {
    std::optional<LocalRing> ring;  // nullopt: lattice over Z
    Mat<Cyclo> basis;               // rows; over Z all entries are rational integers
};

LatticeBasis make_z_lattice(const Mat<Int>& rows);
LatticeBasis make_local_lattice(const LocalRing& R, Mat<Cyclo> rows);
bool lattice_member(const LatticeBasis& L, const std::vector<Cyclo>& v);

}  // namespace hopfforms
