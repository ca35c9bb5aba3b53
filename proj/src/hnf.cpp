#include "hopfforms/hnf.hpp"

#include <stdexcept>

namespace hopfforms {

Mat<Int> hnf_integer(Mat<Int> m) {
    long row = 0;
    std::vector<long> pivot_cols;
    for (long col = 0; col < m.cols && row < m.rows; ++col) {
        // Euclidean elimination in this column over the rows >= row.
        for (;;) {
            long best = -1;
            for (long i = row; i < m.rows; ++i) {
                if (m.at(i, col) == 0) continue;
                if (best < 0 || cmp(abs(m.at(i, col)), abs(m.at(best, col))) < 0) best = i;
            }
            if (best < 0) break;
            if (best != row)
                for (long j = 0; j < m.cols; ++j) std::swap(m.at(best, j), m.at(row, j));
            bool clean = true;
            for (long i = row + 1; i < m.rows; ++i) {
                if (m.at(i, col) == 0) continue;
                Int q = m.at(i, col) / m.at(row, col);  // truncated division is fine here
                if (q != 0)
                    for (long j = col; j < m.cols; ++j) m.at(i, j) -= q * m.at(row, j);
                if (m.at(i, col) != 0) clean = false;
            }
            if (clean) break;
        }
        if (m.at(row, col) == 0) continue;
        if (m.at(row, col) < 0)
            for (long j = col; j < m.cols; ++j) m.at(row, j) = -m.at(row, j);
        pivot_cols.push_back(col);
        ++row;
    }
    long rank = row;
    // Reduce entries above each pivot into [0, pivot).
    for (long r = 0; r < rank; ++r) {
        long c = pivot_cols[(size_t)r];
        const Int& piv = m.at(r, c);
        for (long i = 0; i < r; ++i) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), m.at(i, c).get_mpz_t(), piv.get_mpz_t());
            if (q != 0)
                for (long j = c; j < m.cols; ++j) m.at(i, j) -= q * m.at(r, j);
        }
    }
    Mat<Int> out(rank, m.cols, Int(0));
    for (long i = 0; i < rank; ++i)
        for (long j = 0; j < m.cols; ++j) out.at(i, j) = m.at(i, j);
    return out;
}

bool z_lattice_member(const Mat<Int>& hnf_basis, const std::vector<Int>& v) {
    std::vector<Int> w = v;
    long r = 0;
    for (long col = 0; col < hnf_basis.cols && r < hnf_basis.rows; ++col) {
        if (hnf_basis.at(r, col) == 0) continue;
        Int q, rem;
        mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), w[(size_t)col].get_mpz_t(),
                    hnf_basis.at(r, col).get_mpz_t());
        if (rem != 0) return false;
        if (q != 0)
            for (long j = col; j < hnf_basis.cols; ++j) w[(size_t)j] -= q * hnf_basis.at(r, j);
        ++r;
    }
    for (const Int& x : w)
        if (x != 0) return false;
    return true;
}

Int z_lattice_index(const Mat<Int>& L1, const Mat<Int>& L2) {
    Mat<Int> h1 = hnf_integer(L1), h2 = hnf_integer(L2);
    if (h1.rows != h1.cols || h2.rows != h2.cols || h1.cols != h2.cols)
        throw std::invalid_argument("z_lattice_index: full-rank lattices of equal dimension required");
    for (long i = 0; i < h2.rows; ++i) {
        std::vector<Int> row((size_t)h2.cols);
        for (long j = 0; j < h2.cols; ++j) row[(size_t)j] = h2.at(i, j);
        if (!z_lattice_member(h1, row))
            throw std::invalid_argument("z_lattice_index: second lattice not contained in first");
    }
    Int d1(1), d2(1);
    for (long i = 0; i < h1.rows; ++i) d1 *= h1.at(i, i);
    for (long i = 0; i < h2.rows; ++i) d2 *= h2.at(i, i);
    return d2 / d1;
}

Mat<Cyclo> hnf_local(const LocalRing& R, Mat<Cyclo> m) {
    long row = 0;
    std::vector<long> pivot_cols;
    for (long col = 0; col < m.cols && row < m.rows; ++col) {
        long best = -1, bestval = 0;
        for (long i = row; i < m.rows; ++i) {
            if (m.at(i, col).is_zero()) continue;
            long v = R.valuation(m.at(i, col));
            if (best < 0 || v < bestval) {
                best = i;
                bestval = v;
            }
        }
        if (best < 0) continue;
        if (best != row)
            for (long j = 0; j < m.cols; ++j) std::swap(m.at(best, j), m.at(row, j));
        // Normalize the pivot to exactly pi^a.
        Cyclo unit = R.pi_pow(bestval) / m.at(row, col);
        for (long j = col; j < m.cols; ++j) m.at(row, j) *= unit;
        for (long i = row + 1; i < m.rows; ++i) {
            if (m.at(i, col).is_zero()) continue;
            Cyclo f = m.at(i, col) * R.pi_pow(-bestval);
            for (long j = col; j < m.cols; ++j) m.at(i, j) -= f * m.at(row, j);
        }
        pivot_cols.push_back(col);
        ++row;
    }
    long rank = row;
    for (long r = 0; r < rank; ++r) {
        long c = pivot_cols[(size_t)r];
        long a = R.valuation(m.at(r, c));
        for (long i = 0; i < r; ++i) {
            const Cyclo& e = m.at(i, c);
            if (e.is_zero()) continue;
            Cyclo target = R.canonical_mod(e, a);
            Cyclo q = (e - target) * R.pi_pow(-a);
            if (q.is_zero()) continue;
            for (long j = c; j < m.cols; ++j) m.at(i, j) -= q * m.at(r, j);
        }
    }
    Mat<Cyclo> out(rank, m.cols, Cyclo(0));
    for (long i = 0; i < rank; ++i)
        for (long j = 0; j < m.cols; ++j) out.at(i, j) = m.at(i, j);
    return out;
}

std::optional<std::vector<Cyclo>> local_lattice_coords(const LocalRing& R,
                                                       const Mat<Cyclo>& hnf_basis,
                                                       std::vector<Cyclo> v) {
    std::vector<Cyclo> coords((size_t)hnf_basis.rows, Cyclo(0));
    long r = 0;
    for (long col = 0; col < hnf_basis.cols && r < hnf_basis.rows; ++col) {
        if (hnf_basis.at(r, col).is_zero()) continue;
        const Cyclo& w = v[(size_t)col];
        if (!w.is_zero()) {
            long a = R.valuation(hnf_basis.at(r, col));
            if (R.valuation(w) < a) return std::nullopt;
            Cyclo q = w / hnf_basis.at(r, col);
            coords[(size_t)r] = q;
            for (long j = col; j < hnf_basis.cols; ++j) v[(size_t)j] -= q * hnf_basis.at(r, j);
        }
        ++r;
    }
    for (const Cyclo& x : v)
        if (!x.is_zero()) return std::nullopt;
    return coords;
}

bool local_lattice_member(const LocalRing& R, const Mat<Cyclo>& hnf_basis,
                          std::vector<Cyclo> v) {
    return local_lattice_coords(R, hnf_basis, std::move(v)).has_value();
}

long local_lattice_index_exp(const LocalRing& R, const Mat<Cyclo>& L1, const Mat<Cyclo>& L2) {
    Mat<Cyclo> h1 = hnf_local(R, L1), h2 = hnf_local(R, L2);
    if (h1.rows != h1.cols || h2.rows != h2.cols || h1.cols != h2.cols)
        throw std::invalid_argument("local_lattice_index_exp: full-rank lattices required");
    for (long i = 0; i < h2.rows; ++i) {
        std::vector<Cyclo> row((size_t)h2.cols);
        for (long j = 0; j < h2.cols; ++j) row[(size_t)j] = h2.at(i, j);
        if (!local_lattice_member(R, h1, row))
            throw std::invalid_argument("local_lattice_index_exp: second lattice not contained in first");
    }
    long s = 0;
    for (long i = 0; i < h1.rows; ++i) s -= R.valuation(h1.at(i, i));
    for (long i = 0; i < h2.rows; ++i) s += R.valuation(h2.at(i, i));
    return s;
}

Mat<Cyclo> local_lattice_sum(const LocalRing& R, const Mat<Cyclo>& B1, const Mat<Cyclo>& B2) {
    if (B1.cols != B2.cols) throw std::invalid_argument("local_lattice_sum: dimension mismatch");
    Mat<Cyclo> stacked(B1.rows + B2.rows, B1.cols, Cyclo(0));
    for (long i = 0; i < B1.rows; ++i)
        for (long j = 0; j < B1.cols; ++j) stacked.at(i, j) = B1.at(i, j);
    for (long i = 0; i < B2.rows; ++i)
        for (long j = 0; j < B2.cols; ++j) stacked.at(B1.rows + i, j) = B2.at(i, j);
    return hnf_local(R, std::move(stacked));
}

Mat<Cyclo> local_lattice_dual(const LocalRing& R, const Mat<Cyclo>& B) {
    (void)R;
    if (B.rows != B.cols) throw std::invalid_argument("local_lattice_dual: full rank required");
    auto inv = mat_inverse(B);
    if (!inv) throw std::invalid_argument("local_lattice_dual: basis is singular");
    return mat_transpose(*inv);
}

Mat<Cyclo> local_lattice_intersect(const LocalRing& R, const Mat<Cyclo>& B1,
                                   const Mat<Cyclo>& B2) {
    Mat<Cyclo> D = local_lattice_sum(R, local_lattice_dual(R, B1), local_lattice_dual(R, B2));
    return hnf_local(R, local_lattice_dual(R, D));
}

LatticeBasis make_z_lattice(const Mat<Int>& rows) {
    Mat<Int> h = hnf_integer(rows);
    Mat<Cyclo> b(h.rows, h.cols, Cyclo(0));
    for (long i = 0; i < h.rows; ++i)
        for (long j = 0; j < h.cols; ++j) b.at(i, j) = Cyclo(Rat(h.at(i, j)));
    return LatticeBasis{std::nullopt, std::move(b)};
}

LatticeBasis make_local_lattice(const LocalRing& R, Mat<Cyclo> rows) {
    return LatticeBasis{R, hnf_local(R, std::move(rows))};
}

bool lattice_member(const LatticeBasis& L, const std::vector<Cyclo>& v) {
    if (L.ring) return local_lattice_member(*L.ring, L.basis, v);
    Mat<Int> h(L.basis.rows, L.basis.cols, Int(0));
    for (long i = 0; i < h.rows; ++i)
        for (long j = 0; j < h.cols; ++j) {
            Rat r = L.basis.at(i, j).rational_value();
            if (r.get_den() != 1)
                throw std::invalid_argument("lattice_member: non-integer entry in Z-lattice");
            h.at(i, j) = r.get_num();
        }
    std::vector<Int> w;
    w.reserve(v.size());
    for (const Cyclo& x : v) {
        Rat r = x.rational_value();
        if (r.get_den() != 1) return false;
        w.push_back(r.get_num());
    }
    return z_lattice_member(h, w);
}

}  // namespace hopfforms
