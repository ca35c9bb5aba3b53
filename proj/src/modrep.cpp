#include "hopfforms/modrep.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

namespace hopfforms {

namespace {

std::uint64_t mix_seed(std::uint64_t s, std::uint64_t salt) {
    std::uint64_t x = s + 0x9e3779b97f4a7c15ull * (salt + 1);
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ull;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebull;
    x ^= x >> 31;
    return x;
}

std::vector<FFElt> ffvec_zero(const FF& k, long n) {
    return std::vector<FFElt>((size_t)n, k.zero());
}

bool ffvec_is_zero(const std::vector<FFElt>& v) {
    for (const FFElt& x : v)
        if (!x.is_zero()) return false;
    return true;
}

std::vector<FFElt> mat_col(const Mat<FFElt>& m, long j) {
    std::vector<FFElt> c;
    c.reserve((size_t)m.rows);
    for (long i = 0; i < m.rows; ++i) c.push_back(m.at(i, j));
    return c;
}

CVec cyc_row(const Mat<Cyclo>& m, long i) {
    CVec r;
    r.reserve((size_t)m.cols);
    for (long j = 0; j < m.cols; ++j) r.push_back(m.at(i, j));
    return r;
}

std::vector<Cyclo> cyc_mat_col_apply(const Mat<Cyclo>& m, const CVec& v) {
    return mat_apply(m, v);
}

FFElt residue_ff(const FF& k, const LocalRing& R, const Cyclo& c) {
    return k.from_int(R.residue(c));
}

// Reduced row echelon basis with pivot bookkeeping; rows stay fully reduced
// so membership coordinates can be read off the pivot columns.
struct Ech {
    long n;
    std::vector<std::vector<FFElt>> rows;
    std::vector<long> piv;

    explicit Ech(long n_) : n(n_) {}

    long dim() const { return (long)rows.size(); }

    std::vector<FFElt> reduce(std::vector<FFElt> v,
                              std::vector<FFElt>* coords = nullptr) const {
        if (coords) coords->assign(rows.size(), v.empty() ? FFElt{} : scalar_zero(v[0]));
        for (size_t r = 0; r < rows.size(); ++r) {
            const FFElt c = v[(size_t)piv[r]];
            if (c.is_zero()) continue;
            if (coords) (*coords)[r] = c;
            for (long j = 0; j < n; ++j)
                if (!rows[r][(size_t)j].is_zero()) v[(size_t)j] -= c * rows[r][(size_t)j];
        }
        return v;
    }

    bool add(std::vector<FFElt> v) {
        v = reduce(std::move(v));
        long p = -1;
        for (long j = 0; j < n; ++j)
            if (!v[(size_t)j].is_zero()) {
                p = j;
                break;
            }
        if (p < 0) return false;
        FFElt inv = v[(size_t)p].inverse();
        for (long j = 0; j < n; ++j) v[(size_t)j] *= inv;
        for (size_t r = 0; r < rows.size(); ++r) {
            const FFElt c = rows[r][(size_t)p];
            if (c.is_zero()) continue;
            for (long j = 0; j < n; ++j)
                if (!v[(size_t)j].is_zero()) rows[r][(size_t)j] -= c * v[(size_t)j];
        }
        size_t pos = 0;
        while (pos < piv.size() && piv[pos] < p) ++pos;
        rows.insert(rows.begin() + (long)pos, std::move(v));
        piv.insert(piv.begin() + (long)pos, p);
        return true;
    }
};

std::vector<FFElt> poly_apply(const FFPoly& f, const Mat<FFElt>& w,
                              const std::vector<FFElt>& v) {
    std::vector<FFElt> r((size_t)w.rows, scalar_zero(v[0]));
    for (long i = ffpoly_deg(f); i >= 0; --i) {
        r = mat_apply(w, r);
        const FFElt& c = f[(size_t)i];
        if (!c.is_zero())
            for (long j = 0; j < w.rows; ++j) r[(size_t)j] += c * v[(size_t)j];
    }
    return r;
}

Mat<FFElt> poly_matrix(const FFPoly& f, const Mat<FFElt>& w) {
    Mat<FFElt> r(w.rows, w.rows, scalar_zero(w.a[0]));
    for (long i = ffpoly_deg(f); i >= 0; --i) {
        r = mat_mul(w, r);
        const FFElt& c = f[(size_t)i];
        if (!c.is_zero())
            for (long j = 0; j < w.rows; ++j) r.at(j, j) += c;
    }
    return r;
}

FFPoly poly_lcm(const FF& k, const FFPoly& f, const FFPoly& g) {
    if (ffpoly_deg(f) < 0) return g;
    if (ffpoly_deg(g) < 0) return f;
    FFPoly d = ffpoly_gcd(f, g);
    auto [q, r] = ffpoly_divmod(ffpoly_mul(f, g), d);
    if (ffpoly_deg(r) >= 0) throw std::logic_error("poly_lcm: gcd does not divide product");
    (void)k;
    return ffpoly_monic(q);
}

}  // namespace

// Minimal polynomial of a square matrix: least common multiple of the
// annihilators of the Krylov sequences of the standard basis vectors.
FFPoly matrix_min_poly(const FF& k, const Mat<FFElt>& w) {
    const long m = w.rows;
    FFPoly f = {k.one()};
    for (long j = 0; j < m; ++j) {
        if (ffpoly_deg(f) == m) break;
        std::vector<FFElt> v = ffvec_zero(k, m);
        v[(size_t)j] = k.one();
        v = poly_apply(f, w, v);
        if (ffvec_is_zero(v)) continue;
        // Annihilator of v: run the sequence v, wv, w^2 v, ... against an
        // echelon basis, tracking each stored row as a polynomial in w at v.
        Ech E(m);
        std::vector<FFPoly> exprs;
        std::vector<FFElt> raw = v;
        FFPoly g;
        for (long step = 0;; ++step) {
            FFPoly expr(ffvec_zero(k, step + 1));
            expr[(size_t)step] = k.one();
            std::vector<FFElt> rest = raw;
            // manual reduction with expression tracking
            for (size_t r = 0; r < E.rows.size(); ++r) {
                const FFElt c = rest[(size_t)E.piv[r]];
                if (c.is_zero()) continue;
                for (long t = 0; t < m; ++t)
                    if (!E.rows[r][(size_t)t].is_zero())
                        rest[(size_t)t] -= c * E.rows[r][(size_t)t];
                const FFPoly& er = exprs[r];
                for (size_t t = 0; t < er.size(); ++t) {
                    if (er[t].is_zero()) continue;
                    if (expr.size() <= t) expr.resize(t + 1, k.zero());
                    expr[t] -= c * er[t];
                }
            }
            long p = -1;
            for (long t = 0; t < m; ++t)
                if (!rest[(size_t)t].is_zero()) {
                    p = t;
                    break;
                }
            if (p < 0) {
                g = ffpoly_monic(ffpoly_trim(std::move(expr)));
                break;
            }
            FFElt inv = rest[(size_t)p].inverse();
            for (long t = 0; t < m; ++t) rest[(size_t)t] *= inv;
            for (auto& c : expr) c *= inv;
            // keep existing rows reduced against the new one
            for (size_t r = 0; r < E.rows.size(); ++r) {
                const FFElt c = E.rows[r][(size_t)p];
                if (c.is_zero()) continue;
                for (long t = 0; t < m; ++t)
                    if (!rest[(size_t)t].is_zero()) E.rows[r][(size_t)t] -= c * rest[(size_t)t];
                FFPoly& er = exprs[r];
                for (size_t t = 0; t < expr.size(); ++t) {
                    if (expr[t].is_zero()) continue;
                    if (er.size() <= t) er.resize(t + 1, k.zero());
                    er[t] -= c * expr[t];
                }
            }
            size_t pos = 0;
            while (pos < E.piv.size() && E.piv[pos] < p) ++pos;
            E.rows.insert(E.rows.begin() + (long)pos, rest);
            E.piv.insert(E.piv.begin() + (long)pos, p);
            exprs.insert(exprs.begin() + (long)pos, std::move(expr));
            raw = mat_apply(w, raw);
        }
        // g annihilates f(w)-image of e_j, so the annihilator of e_j divides g*f.
        f = poly_lcm(k, f, g);
    }
    return f;
}

std::vector<FFElt> fd_mul(const FDAlgebra& A, const std::vector<FFElt>& x,
                          const std::vector<FFElt>& y) {
    if ((long)x.size() != A.dim || (long)y.size() != A.dim)
        throw std::invalid_argument("fd_mul: dimension mismatch");
    std::vector<FFElt> r = ffvec_zero(A.k, A.dim);
    for (long i = 0; i < A.dim; ++i) {
        if (x[(size_t)i].is_zero()) continue;
        const Mat<FFElt>& Mi = A.mult[(size_t)i];
        for (long j = 0; j < A.dim; ++j) {
            if (y[(size_t)j].is_zero()) continue;
            const FFElt c = x[(size_t)i] * y[(size_t)j];
            for (long t = 0; t < A.dim; ++t)
                if (!Mi.at(t, j).is_zero()) r[(size_t)t] += c * Mi.at(t, j);
        }
    }
    return r;
}

Mat<FFElt> fd_left_mult(const FDAlgebra& A, const std::vector<FFElt>& x) {
    Mat<FFElt> r(A.dim, A.dim, A.k.zero());
    for (long i = 0; i < A.dim; ++i) {
        if (x[(size_t)i].is_zero()) continue;
        const Mat<FFElt>& Mi = A.mult[(size_t)i];
        for (long t = 0; t < A.dim; ++t)
            for (long j = 0; j < A.dim; ++j)
                if (!Mi.at(t, j).is_zero()) r.at(t, j) += x[(size_t)i] * Mi.at(t, j);
    }
    return r;
}

std::vector<FFElt> fd_involve(const FDAlgebra& A, const std::vector<FFElt>& x) {
    if (!A.involution) throw std::invalid_argument("fd_involve: no involution present");
    return mat_apply(*A.involution, x);
}

void verify_fd_algebra(const FDAlgebra& A) {
    if (A.dim <= 0 || (long)A.mult.size() != A.dim || (long)A.unit.size() != A.dim)
        throw std::invalid_argument("verify_fd_algebra: inconsistent sizes");
    for (const auto& m : A.mult)
        if (m.rows != A.dim || m.cols != A.dim)
            throw std::invalid_argument("verify_fd_algebra: bad multiplication matrix shape");
    if (A.generators.empty())
        throw std::invalid_argument("verify_fd_algebra: empty generator list");
    const Mat<FFElt> id = mat_identity(A.dim, A.k.zero());
    if (fd_left_mult(A, A.unit) != id)
        throw std::runtime_error("verify_fd_algebra: unit fails as left identity");
    for (long i = 0; i < A.dim; ++i) {
        std::vector<FFElt> ei = ffvec_zero(A.k, A.dim);
        ei[(size_t)i] = A.k.one();
        if (mat_apply(A.mult[(size_t)i], A.unit) != ei)
            throw std::runtime_error("verify_fd_algebra: unit fails as right identity");
    }
    for (long i = 0; i < A.dim; ++i)
        for (long j = 0; j < A.dim; ++j) {
            const std::vector<FFElt> prod = mat_col(A.mult[(size_t)i], j);
            Mat<FFElt> lhs = mat_mul(A.mult[(size_t)i], A.mult[(size_t)j]);
            Mat<FFElt> rhs(A.dim, A.dim, A.k.zero());
            for (long r = 0; r < A.dim; ++r)
                if (!prod[(size_t)r].is_zero())
                    for (long a = 0; a < A.dim; ++a)
                        for (long b = 0; b < A.dim; ++b)
                            if (!A.mult[(size_t)r].at(a, b).is_zero())
                                rhs.at(a, b) += prod[(size_t)r] * A.mult[(size_t)r].at(a, b);
            if (lhs != rhs)
                throw std::runtime_error("verify_fd_algebra: associativity fails at basis pair " +
                                         std::to_string(i) + "," + std::to_string(j));
        }
    if (A.involution) {
        const Mat<FFElt>& inv = *A.involution;
        if (inv.rows != A.dim || inv.cols != A.dim)
            throw std::invalid_argument("verify_fd_algebra: involution shape");
        if (mat_mul(inv, inv) != id)
            throw std::runtime_error("verify_fd_algebra: involution does not square to identity");
        if (mat_apply(inv, A.unit) != A.unit)
            throw std::runtime_error("verify_fd_algebra: involution moves the unit");
        for (long i = 0; i < A.dim; ++i)
            for (long j = 0; j < A.dim; ++j) {
                std::vector<FFElt> lhs = mat_apply(inv, mat_col(A.mult[(size_t)i], j));
                std::vector<FFElt> rhs = fd_mul(A, mat_col(inv, j), mat_col(inv, i));
                if (lhs != rhs)
                    throw std::runtime_error(
                        "verify_fd_algebra: involution is not an anti-homomorphism");
            }
    }
    if (A.counit) {
        if ((long)A.counit->size() != A.dim)
            throw std::invalid_argument("verify_fd_algebra: counit size");
        FFElt one_img = A.k.zero();
        for (long i = 0; i < A.dim; ++i) one_img += A.unit[(size_t)i] * (*A.counit)[(size_t)i];
        if (!one_img.is_one())
            throw std::runtime_error("verify_fd_algebra: counit of the unit is not 1");
        for (long i = 0; i < A.dim; ++i)
            for (long j = 0; j < A.dim; ++j) {
                FFElt lhs = A.k.zero();
                const std::vector<FFElt> prod = mat_col(A.mult[(size_t)i], j);
                for (long r = 0; r < A.dim; ++r) lhs += prod[(size_t)r] * (*A.counit)[(size_t)r];
                if (lhs != (*A.counit)[(size_t)i] * (*A.counit)[(size_t)j])
                    throw std::runtime_error("verify_fd_algebra: counit is not multiplicative");
            }
    }
    if (A.comul) {
        if ((long)A.comul->size() != A.dim)
            throw std::invalid_argument("verify_fd_algebra: comultiplication size");
        for (const auto& c : *A.comul)
            if (c.rows != A.dim || c.cols != A.dim)
                throw std::invalid_argument("verify_fd_algebra: comultiplication shape");
        // Delta(1) = 1 tensor 1.
        Mat<FFElt> done(A.dim, A.dim, A.k.zero());
        for (long i = 0; i < A.dim; ++i)
            if (!A.unit[(size_t)i].is_zero())
                done = mat_add(done, mat_scale(A.unit[(size_t)i], (*A.comul)[(size_t)i]));
        Mat<FFElt> expect(A.dim, A.dim, A.k.zero());
        for (long a = 0; a < A.dim; ++a)
            for (long b = 0; b < A.dim; ++b)
                expect.at(a, b) = A.unit[(size_t)a] * A.unit[(size_t)b];
        if (done != expect)
            throw std::runtime_error("verify_fd_algebra: comultiplication of the unit is wrong");
        // Multiplicativity on generator * basis pairs extends to the algebra.
        auto comul_of = [&](const std::vector<FFElt>& x) {
            Mat<FFElt> r(A.dim, A.dim, A.k.zero());
            for (long i = 0; i < A.dim; ++i)
                if (!x[(size_t)i].is_zero())
                    r = mat_add(r, mat_scale(x[(size_t)i], (*A.comul)[(size_t)i]));
            return r;
        };
        auto tensor_mul = [&](const Mat<FFElt>& X, const Mat<FFElt>& Y) {
            Mat<FFElt> r(A.dim, A.dim, A.k.zero());
            for (long a = 0; a < A.dim; ++a)
                for (long b = 0; b < A.dim; ++b) {
                    if (X.at(a, b).is_zero()) continue;
                    for (long c = 0; c < A.dim; ++c)
                        for (long d = 0; d < A.dim; ++d) {
                            if (Y.at(c, d).is_zero()) continue;
                            const FFElt coeff = X.at(a, b) * Y.at(c, d);
                            const std::vector<FFElt> pl = mat_col(A.mult[(size_t)a], c);
                            const std::vector<FFElt> pr = mat_col(A.mult[(size_t)b], d);
                            for (long s = 0; s < A.dim; ++s) {
                                if (pl[(size_t)s].is_zero()) continue;
                                for (long t = 0; t < A.dim; ++t)
                                    if (!pr[(size_t)t].is_zero())
                                        r.at(s, t) += coeff * pl[(size_t)s] * pr[(size_t)t];
                            }
                        }
                }
            return r;
        };
        for (long g : A.generators)
            for (long j = 0; j < A.dim; ++j) {
                Mat<FFElt> lhs = comul_of(mat_col(A.mult[(size_t)g], j));
                Mat<FFElt> rhs = tensor_mul((*A.comul)[(size_t)g], (*A.comul)[(size_t)j]);
                if (lhs != rhs)
                    throw std::runtime_error(
                        "verify_fd_algebra: comultiplication is not multiplicative");
            }
    }
}

FDAlgebra group_fdalgebra(const FiniteGroup& G, const FF& k) {
    if (!k.valid()) throw std::invalid_argument("group_fdalgebra: invalid field");
    FDAlgebra A;
    A.id = "F" + std::to_string(k.size()) + "[" + G.name + "]";
    A.k = k;
    A.dim = G.n;
    A.mult.reserve((size_t)G.n);
    for (long a = 0; a < G.n; ++a) {
        Mat<FFElt> m(G.n, G.n, k.zero());
        for (long j = 0; j < G.n; ++j) m.at(G.mul(a, j), j) = k.one();
        A.mult.push_back(std::move(m));
    }
    A.unit = ffvec_zero(k, G.n);
    A.unit[0] = k.one();
    A.generators = generating_set(G);
    if (A.generators.empty()) A.generators.push_back(0);
    Mat<FFElt> inv(G.n, G.n, k.zero());
    for (long j = 0; j < G.n; ++j) inv.at(G.inv(j), j) = k.one();
    A.involution = std::move(inv);
    std::vector<Mat<FFElt>> comul;
    comul.reserve((size_t)G.n);
    for (long g = 0; g < G.n; ++g) {
        Mat<FFElt> c(G.n, G.n, k.zero());
        c.at(g, g) = k.one();
        comul.push_back(std::move(c));
    }
    A.comul = std::move(comul);
    A.counit = std::vector<FFElt>((size_t)G.n, k.one());
    verify_fd_algebra(A);
    return A;
}

FDAlgebra order_fdalgebra(const HopfOrder& L) {
    const LocalRing& R = L.ring;
    const long n = L.basis.rows;
    FF k(R.prime(), 1);
    FDAlgebra A;
    A.id = L.name + "/pi";
    A.k = k;
    A.dim = n;
    std::vector<CVec> rows;
    rows.reserve((size_t)n);
    for (long i = 0; i < n; ++i) rows.push_back(cyc_row(L.basis, i));
    for (long i = 0; i < n; ++i) {
        Mat<FFElt> m(n, n, k.zero());
        for (long j = 0; j < n; ++j) {
            CVec coords = L.coords(side_mul(L.side, L.G, rows[(size_t)i], rows[(size_t)j]));
            for (long t = 0; t < n; ++t) m.at(t, j) = residue_ff(k, R, coords[(size_t)t]);
        }
        A.mult.push_back(std::move(m));
    }
    {
        CVec u = L.coords(side_unit(L.side, L.G));
        A.unit = ffvec_zero(k, n);
        for (long t = 0; t < n; ++t) A.unit[(size_t)t] = residue_ff(k, R, u[(size_t)t]);
    }
    A.generators.resize((size_t)n);
    for (long i = 0; i < n; ++i) A.generators[(size_t)i] = i;
    {
        Mat<FFElt> inv(n, n, k.zero());
        for (long j = 0; j < n; ++j) {
            CVec coords = L.coords(side_antipode(L.side, L.G, rows[(size_t)j]));
            for (long t = 0; t < n; ++t) inv.at(t, j) = residue_ff(k, R, coords[(size_t)t]);
        }
        A.involution = std::move(inv);
    }
    {
        std::vector<Mat<FFElt>> comul;
        comul.reserve((size_t)n);
        const Mat<Cyclo> BinvT = mat_transpose(L.basis_inv);
        for (long i = 0; i < n; ++i) {
            Mat<Cyclo> D = side_comul(L.side, L.G, rows[(size_t)i]);
            Mat<Cyclo> C = mat_mul(mat_mul(BinvT, D), L.basis_inv);
            Mat<FFElt> c(n, n, k.zero());
            for (long a = 0; a < n; ++a)
                for (long b = 0; b < n; ++b) c.at(a, b) = residue_ff(k, R, C.at(a, b));
            comul.push_back(std::move(c));
        }
        A.comul = std::move(comul);
        std::vector<FFElt> counit((size_t)n, k.zero());
        for (long i = 0; i < n; ++i)
            counit[(size_t)i] = residue_ff(k, R, side_counit(L.side, rows[(size_t)i]));
        A.counit = std::move(counit);
    }
    verify_fd_algebra(A);
    return A;
}

void verify_module(const FDAlgebra& A, const AlgModule& M) {
    if ((long)M.action.size() != A.dim)
        throw std::invalid_argument("verify_module: one action matrix per basis element required");
    for (const auto& m : M.action)
        if (m.rows != M.dim || m.cols != M.dim)
            throw std::invalid_argument("verify_module: action shape mismatch");
    if (M.dim == 0) return;
    Mat<FFElt> uact(M.dim, M.dim, A.k.zero());
    for (long i = 0; i < A.dim; ++i)
        if (!A.unit[(size_t)i].is_zero())
            uact = mat_add(uact, mat_scale(A.unit[(size_t)i], M.action[(size_t)i]));
    if (uact != mat_identity(M.dim, A.k.zero()))
        throw std::runtime_error("verify_module: unit does not act as identity");
    for (long i = 0; i < A.dim; ++i)
        for (long j = 0; j < A.dim; ++j) {
            Mat<FFElt> lhs = mat_mul(M.action[(size_t)i], M.action[(size_t)j]);
            Mat<FFElt> rhs(M.dim, M.dim, A.k.zero());
            const std::vector<FFElt> prod = mat_col(A.mult[(size_t)i], j);
            for (long r = 0; r < A.dim; ++r)
                if (!prod[(size_t)r].is_zero())
                    rhs = mat_add(rhs, mat_scale(prod[(size_t)r], M.action[(size_t)r]));
            if (lhs != rhs)
                throw std::runtime_error("verify_module: defining relation fails at pair " +
                                         std::to_string(i) + "," + std::to_string(j));
        }
}

AlgModule regular_module(const FDAlgebra& A) { return AlgModule{A.dim, A.mult}; }

AlgModule trivial_module(const FDAlgebra& A) {
    if (!A.counit) throw std::invalid_argument("trivial_module: no counit present");
    AlgModule M;
    M.dim = 1;
    for (long i = 0; i < A.dim; ++i)
        M.action.push_back(Mat<FFElt>(1, 1, (*A.counit)[(size_t)i]));
    return M;
}

AlgModule dual_module(const FDAlgebra& A, const AlgModule& M) {
    if (!A.involution) throw std::invalid_argument("dual_module: no involution present");
    AlgModule D;
    D.dim = M.dim;
    D.action.reserve((size_t)A.dim);
    for (long i = 0; i < A.dim; ++i) {
        Mat<FFElt> s(M.dim, M.dim, A.k.zero());
        for (long j = 0; j < A.dim; ++j) {
            const FFElt& c = A.involution->at(j, i);
            if (!c.is_zero()) s = mat_add(s, mat_scale(c, M.action[(size_t)j]));
        }
        D.action.push_back(mat_transpose(s));
    }
    return D;
}

AlgModule tensor_module(const FDAlgebra& A, const AlgModule& M, const AlgModule& N) {
    if (!A.comul) throw std::invalid_argument("tensor_module: no comultiplication present");
    AlgModule T;
    T.dim = M.dim * N.dim;
    T.action.reserve((size_t)A.dim);
    for (long i = 0; i < A.dim; ++i) {
        Mat<FFElt> t(T.dim, T.dim, A.k.zero());
        const Mat<FFElt>& C = (*A.comul)[(size_t)i];
        for (long a = 0; a < A.dim; ++a)
            for (long b = 0; b < A.dim; ++b) {
                if (C.at(a, b).is_zero()) continue;
                t = mat_add(t, mat_scale(C.at(a, b),
                                         mat_kron(M.action[(size_t)a], N.action[(size_t)b])));
            }
        T.action.push_back(std::move(t));
    }
    return T;
}

std::vector<Mat<FFElt>> hom_space_basis(const FDAlgebra& A, const AlgModule& M,
                                        const AlgModule& N) {
    if (M.dim == 0 || N.dim == 0) return {};
    const long rows = (long)A.generators.size() * N.dim * M.dim;
    const long cols = N.dim * M.dim;
    Mat<FFElt> sys(rows, cols, A.k.zero());
    long eq = 0;
    for (long g : A.generators) {
        const Mat<FFElt>& Mg = M.action[(size_t)g];
        const Mat<FFElt>& Ng = N.action[(size_t)g];
        for (long r = 0; r < N.dim; ++r)
            for (long c = 0; c < M.dim; ++c) {
                // row (r, c) of X action(g) - action(g) X, X = (x_{r s})
                for (long s = 0; s < M.dim; ++s) sys.at(eq, r * M.dim + s) += Mg.at(s, c);
                for (long s = 0; s < N.dim; ++s) sys.at(eq, s * M.dim + c) -= Ng.at(r, s);
                ++eq;
            }
    }
    std::vector<Mat<FFElt>> basis;
    for (auto& v : mat_kernel(std::move(sys))) {
        Mat<FFElt> X(N.dim, M.dim, A.k.zero());
        for (long r = 0; r < N.dim; ++r)
            for (long c = 0; c < M.dim; ++c) X.at(r, c) = v[(size_t)(r * M.dim + c)];
        basis.push_back(std::move(X));
    }
    return basis;
}

long hom_space_dim(const FDAlgebra& A, const AlgModule& M, const AlgModule& N) {
    return (long)hom_space_basis(A, M, N).size();
}

bool simples_isomorphic(const FDAlgebra& A, const AlgModule& S, const AlgModule& T) {
    if (S.dim != T.dim) return false;
    return hom_space_dim(A, S, T) > 0;
}

namespace {

// Plain long matrices modulo a small modulus, for the lifted power traces.
using LMat = std::vector<long>;

LMat lmat_mul_mod(const LMat& a, const LMat& b, long n, long mod) {
    LMat r((size_t)(n * n), 0);
    for (long i = 0; i < n; ++i)
        for (long t = 0; t < n; ++t) {
            const long x = a[(size_t)(i * n + t)];
            if (x == 0) continue;
            for (long j = 0; j < n; ++j)
                r[(size_t)(i * n + j)] =
                    (r[(size_t)(i * n + j)] + x * b[(size_t)(t * n + j)]) % mod;
        }
    return r;
}

LMat lmat_pow_mod(LMat base, long e, long n, long mod) {
    LMat r((size_t)(n * n), 0);
    for (long i = 0; i < n; ++i) r[(size_t)(i * n + i)] = 1 % mod;
    while (e > 0) {
        if (e & 1) r = lmat_mul_mod(r, base, n, mod);
        base = lmat_mul_mod(base, base, n, mod);
        e >>= 1;
    }
    return r;
}

long lift_coeff(const FFElt& x) {
    if (x.is_zero()) return 0;
    return x.coeffs().empty() ? 0 : x.coeffs()[0];
}

}  // namespace

std::vector<std::vector<FFElt>> radical_basis(const FDAlgebra& A) {
    if (A.k.degree() != 1) {
        // Over a non-prime base field only the semisimplicity certificate is
        // available: the radical always lies in the kernel of the trace form
        // of the regular representation (left multiplication by a radical
        // element composed with anything is nilpotent, and nilpotent maps
        // are traceless in every characteristic), so a nonsingular Gram
        // matrix proves the radical is zero.
        Mat<FFElt> gram(A.dim, A.dim, A.k.zero());
        for (long i = 0; i < A.dim; ++i)
            for (long j = 0; j < A.dim; ++j) {
                FFElt t = A.k.zero();
                for (long r = 0; r < A.dim; ++r)
                    for (long s = 0; s < A.dim; ++s)
                        t += A.mult[(size_t)i].at(r, s) * A.mult[(size_t)j].at(s, r);
                gram.at(i, j) = t;
            }
        if (mat_kernel(std::move(gram)).empty()) return {};
        throw std::invalid_argument("radical_basis: prime base field required");
    }
    const long p = A.k.p();
    const long n = A.dim;
    // current subspace basis
    std::vector<std::vector<FFElt>> cur;
    for (long i = 0; i < n; ++i) {
        auto v = ffvec_zero(A.k, n);
        v[(size_t)i] = A.k.one();
        cur.push_back(std::move(v));
    }
    long l = 0;
    long pw = 1;
    while (pw < n) {
        pw *= p;
        ++l;
    }
    long pi_pow = 1;
    for (long i = 0; i <= l && !cur.empty(); ++i, pi_pow *= p) {
        const long mod = pi_pow * p;
        const long t = (long)cur.size();
        Mat<FFElt> Gm(t, t, A.k.zero());
        for (long a = 0; a < t; ++a)
            for (long b = 0; b < t; ++b) {
                std::vector<FFElt> z = fd_mul(A, cur[(size_t)a], cur[(size_t)b]);
                Mat<FFElt> Mz = fd_left_mult(A, z);
                LMat lm((size_t)(n * n), 0);
                for (long r = 0; r < n; ++r)
                    for (long c = 0; c < n; ++c) lm[(size_t)(r * n + c)] = lift_coeff(Mz.at(r, c));
                LMat pwm = lmat_pow_mod(std::move(lm), pi_pow, n, mod);
                long tr = 0;
                for (long r = 0; r < n; ++r) tr = (tr + pwm[(size_t)(r * n + r)]) % mod;
                if (tr % pi_pow != 0)
                    throw std::logic_error("radical_basis: power trace fails divisibility");
                Gm.at(b, a) = A.k.from_int((tr / pi_pow) % p);
            }
        std::vector<std::vector<FFElt>> ker = mat_kernel(std::move(Gm));
        std::vector<std::vector<FFElt>> next;
        for (const auto& c : ker) {
            auto v = ffvec_zero(A.k, n);
            for (long a = 0; a < t; ++a)
                if (!c[(size_t)a].is_zero())
                    for (long j = 0; j < n; ++j) v[(size_t)j] += c[(size_t)a] * cur[(size_t)a][(size_t)j];
            next.push_back(std::move(v));
        }
        cur = std::move(next);
    }
    Ech J(n);
    for (auto& v : cur) J.add(std::move(v));
    // Post-verification: a two-sided ideal, and nilpotent by powering.
    for (long i = 0; i < n; ++i) {
        auto ei = ffvec_zero(A.k, n);
        ei[(size_t)i] = A.k.one();
        for (const auto& v : J.rows) {
            if (!ffvec_is_zero(J.reduce(fd_mul(A, ei, v))) ||
                !ffvec_is_zero(J.reduce(fd_mul(A, v, ei))))
                throw std::logic_error("radical_basis: result is not a two-sided ideal");
        }
    }
    std::vector<std::vector<FFElt>> power = J.rows;
    while (!power.empty()) {
        Ech next(n);
        for (const auto& a : power)
            for (const auto& b : J.rows) next.add(fd_mul(A, a, b));
        // Powers of an ideal can only shrink; a stall on a nonzero space
        // means the result is not nilpotent.
        if (next.rows.size() >= power.size())
            throw std::logic_error("radical_basis: result is not nilpotent");
        power = std::move(next.rows);
    }
    return J.rows;
}

Semisimplification semisimplify(const FDAlgebra& A) {
    std::vector<std::vector<FFElt>> jrows = radical_basis(A);
    Ech J(A.dim);
    for (auto& v : jrows) J.add(std::move(v));
    std::vector<long> section;
    {
        std::vector<bool> is_piv((size_t)A.dim, false);
        for (long p : J.piv) is_piv[(size_t)p] = true;
        for (long j = 0; j < A.dim; ++j)
            if (!is_piv[(size_t)j]) section.push_back(j);
    }
    const long q = (long)section.size();
    if (q == 0) throw std::runtime_error("semisimplify: algebra equals its radical");
    Mat<FFElt> proj(q, A.dim, A.k.zero());
    for (long j = 0; j < A.dim; ++j) {
        auto ej = ffvec_zero(A.k, A.dim);
        ej[(size_t)j] = A.k.one();
        auto r = J.reduce(std::move(ej));
        for (long t = 0; t < q; ++t) proj.at(t, j) = r[(size_t)section[(size_t)t]];
    }
    Semisimplification out{FDAlgebra{}, std::move(proj), section};
    FDAlgebra& Q = out.quotient;
    Q.id = A.id + "/rad";
    Q.k = A.k;
    Q.dim = q;
    for (long t = 0; t < q; ++t) {
        Mat<FFElt> m(q, q, A.k.zero());
        for (long s = 0; s < q; ++s) {
            auto et = ffvec_zero(A.k, A.dim);
            et[(size_t)section[(size_t)t]] = A.k.one();
            auto es = ffvec_zero(A.k, A.dim);
            es[(size_t)section[(size_t)s]] = A.k.one();
            auto w = mat_apply(out.proj, fd_mul(A, et, es));
            for (long r = 0; r < q; ++r) m.at(r, s) = w[(size_t)r];
        }
        Q.mult.push_back(std::move(m));
    }
    Q.unit = mat_apply(out.proj, A.unit);
    Q.generators.resize((size_t)q);
    for (long t = 0; t < q; ++t) Q.generators[(size_t)t] = t;
    if (A.involution) {
        bool stable = true;
        for (const auto& v : J.rows)
            if (!ffvec_is_zero(J.reduce(fd_involve(A, v)))) {
                stable = false;
                break;
            }
        if (!stable) throw std::logic_error("semisimplify: radical not stable under involution");
        Mat<FFElt> inv(q, q, A.k.zero());
        for (long t = 0; t < q; ++t) {
            auto et = ffvec_zero(A.k, A.dim);
            et[(size_t)section[(size_t)t]] = A.k.one();
            auto w = mat_apply(out.proj, fd_involve(A, et));
            for (long r = 0; r < q; ++r) inv.at(r, t) = w[(size_t)r];
        }
        Q.involution = std::move(inv);
    }
    verify_fd_algebra(Q);
    if (!radical_basis(Q).empty())
        throw std::logic_error("semisimplify: quotient still has a nonzero radical");
    return out;
}

namespace {

Ech spin_span(const FDAlgebra& A, const std::vector<Mat<FFElt>>& acts,
              const std::vector<std::vector<FFElt>>& seeds, long m) {
    Ech E(m);
    std::vector<std::vector<FFElt>> work;
    for (const auto& s : seeds)
        if (E.add(s)) work.push_back(s);
    while (!work.empty()) {
        std::vector<FFElt> v = std::move(work.back());
        work.pop_back();
        for (long g : A.generators) {
            std::vector<FFElt> u = mat_apply(acts[(size_t)g], v);
            if (E.add(u)) work.push_back(std::move(u));
        }
    }
    return E;
}

AlgModule restrict_rows(const FDAlgebra& A, const AlgModule& M, const Ech& E) {
    const long w = E.dim();
    AlgModule S;
    S.dim = w;
    S.action.reserve((size_t)A.dim);
    for (long i = 0; i < A.dim; ++i) {
        Mat<FFElt> m(w, w, A.k.zero());
        for (long s = 0; s < w; ++s) {
            std::vector<FFElt> coords;
            std::vector<FFElt> rest =
                E.reduce(mat_apply(M.action[(size_t)i], E.rows[(size_t)s]), &coords);
            if (!ffvec_is_zero(rest))
                throw std::logic_error("restrict_rows: subspace is not invariant");
            for (long t = 0; t < w; ++t) m.at(t, s) = coords[(size_t)t];
        }
        S.action.push_back(std::move(m));
    }
    return S;
}

AlgModule quotient_rows(const FDAlgebra& A, const AlgModule& M, const Ech& E) {
    std::vector<long> comp;
    {
        std::vector<bool> is_piv((size_t)M.dim, false);
        for (long p : E.piv) is_piv[(size_t)p] = true;
        for (long j = 0; j < M.dim; ++j)
            if (!is_piv[(size_t)j]) comp.push_back(j);
    }
    const long q = (long)comp.size();
    AlgModule Q;
    Q.dim = q;
    Q.action.reserve((size_t)A.dim);
    for (long i = 0; i < A.dim; ++i) {
        Mat<FFElt> m(q, q, A.k.zero());
        for (long s = 0; s < q; ++s) {
            auto es = ffvec_zero(A.k, M.dim);
            es[(size_t)comp[(size_t)s]] = A.k.one();
            auto r = E.reduce(mat_apply(M.action[(size_t)i], es));
            for (long t = 0; t < q; ++t) m.at(t, s) = r[(size_t)comp[(size_t)t]];
        }
        Q.action.push_back(std::move(m));
    }
    return Q;
}

void chop_rec(const FDAlgebra& A, const AlgModule& M, std::mt19937_64& rng,
              std::vector<AlgModule>& out, std::uint64_t seed_info) {
    if (M.dim == 0) return;
    if (M.dim == 1) {
        out.push_back(M);
        return;
    }
    const long m = M.dim;
    std::vector<Mat<FFElt>> tacts;
    auto transposed = [&]() -> const std::vector<Mat<FFElt>>& {
        if (tacts.empty()) {
            tacts.reserve((size_t)A.dim);
            for (const auto& a : M.action) tacts.push_back(mat_transpose(a));
        }
        return tacts;
    };
    auto split_at = [&](const Ech& E) {
        AlgModule sub = restrict_rows(A, M, E);
        AlgModule quo = quotient_rows(A, M, E);
        chop_rec(A, sub, rng, out, seed_info);
        chop_rec(A, quo, rng, out, seed_info);
    };
    const long attempts = 64 + 16 * m;
    for (long trial = 0; trial < attempts; ++trial) {
        Mat<FFElt> w(m, m, A.k.zero());
        for (long i = 0; i < A.dim; ++i) {
            FFElt c = A.k.from_index(draw_mod(rng, A.k.size()));
            if (!c.is_zero()) w = mat_add(w, mat_scale(c, M.action[(size_t)i]));
        }
        FFPoly mp = matrix_min_poly(A.k, w);
        if (ffpoly_deg(mp) <= 0) continue;
        auto factors = ffpoly_factor(A.k, mp, rng());
        struct Cand {
            FFPoly q;
            Mat<FFElt> theta;
            std::vector<std::vector<FFElt>> ker;
        };
        std::vector<Cand> sharp, blunt;
        for (const auto& [q, mult] : factors) {
            Mat<FFElt> theta = poly_matrix(q, w);
            auto ker = mat_kernel(theta);
            if (ker.empty())
                throw std::logic_error("chop: minimal polynomial factor with trivial kernel");
            if ((long)ker.size() == ffpoly_deg(q))
                sharp.push_back(Cand{q, std::move(theta), std::move(ker)});
            else
                blunt.push_back(Cand{q, std::move(theta), std::move(ker)});
        }
        for (const Cand& cand : sharp) {
            Ech E = spin_span(A, M.action, {cand.ker[0]}, m);
            if (E.dim() < m) {
                split_at(E);
                return;
            }
            // The kernel is one-dimensional over the field extension the
            // factor cuts out, so the whole kernel spins to the full space.
            // The two-sided certificate: a transposed kernel vector must
            // also spin to everything, else its span cuts out a submodule.
            auto kerT = mat_kernel(mat_transpose(cand.theta));
            if (kerT.empty()) throw std::logic_error("chop: transposed kernel empty");
            Ech ET = spin_span(A, transposed(), {kerT[0]}, m);
            if (ET.dim() == m) {
                out.push_back(M);
                return;
            }
            Mat<FFElt> rows((long)ET.rows.size(), m, A.k.zero());
            for (long r = 0; r < (long)ET.rows.size(); ++r)
                for (long c = 0; c < m; ++c) rows.at(r, c) = ET.rows[(size_t)r][(size_t)c];
            auto perp = mat_kernel(std::move(rows));
            Ech U(m);
            for (auto& v : perp) U.add(std::move(v));
            if (U.dim() == 0 || U.dim() == m)
                throw std::logic_error("chop: degenerate perpendicular space");
            split_at(U);
            return;
        }
        for (const Cand& cand : blunt) {
            std::vector<std::vector<FFElt>> probes = cand.ker;
            for (int extra = 0; extra < 2; ++extra) {
                auto v = ffvec_zero(A.k, m);
                for (const auto& kv : cand.ker) {
                    FFElt c = A.k.from_index(draw_mod(rng, A.k.size()));
                    if (c.is_zero()) continue;
                    for (long j = 0; j < m; ++j) v[(size_t)j] += c * kv[(size_t)j];
                }
                if (!ffvec_is_zero(v)) probes.push_back(std::move(v));
            }
            for (const auto& v : probes) {
                Ech E = spin_span(A, M.action, {v}, m);
                if (E.dim() > 0 && E.dim() < m) {
                    split_at(E);
                    return;
                }
            }
            auto kerT = mat_kernel(mat_transpose(cand.theta));
            for (const auto& u : kerT) {
                Ech ET = spin_span(A, transposed(), {u}, m);
                if (ET.dim() > 0 && ET.dim() < m) {
                    Mat<FFElt> rows((long)ET.rows.size(), m, A.k.zero());
                    for (long r = 0; r < (long)ET.rows.size(); ++r)
                        for (long c = 0; c < m; ++c) rows.at(r, c) = ET.rows[(size_t)r][(size_t)c];
                    auto perp = mat_kernel(std::move(rows));
                    Ech U(m);
                    for (auto& v : perp) U.add(std::move(v));
                    split_at(U);
                    return;
                }
            }
        }
    }
    throw std::runtime_error("chop_factors: no decision after " + std::to_string(attempts) +
                             " attempts (dim=" + std::to_string(m) +
                             ", seed=" + std::to_string(seed_info) + ")");
}

}  // namespace

std::vector<AlgModule> chop_factors(const FDAlgebra& A, const AlgModule& M,
                                    std::uint64_t seed) {
    if (M.dim > 128)
        throw std::invalid_argument("chop_factors: module dimension exceeds the 128 budget");
    if ((long)M.action.size() != A.dim)
        throw std::invalid_argument("chop_factors: module/algebra mismatch");
    std::mt19937_64 rng(mix_seed(seed, 0xc0ffee));
    std::vector<AlgModule> out;
    chop_rec(A, M, rng, out, seed);
    long total = 0;
    for (const auto& f : out) total += f.dim;
    if (total != M.dim) throw std::logic_error("chop_factors: factor dimensions do not add up");
    return out;
}

namespace {

std::vector<long> canonical_key(const FDAlgebra& A, const AlgModule& S) {
    std::vector<long> key;
    key.push_back(S.dim);
    for (long i = 0; i < A.dim; ++i)
        key.push_back((long)mat_trace(S.action[(size_t)i]).index());
    for (long g : A.generators) {
        FFPoly mp = matrix_min_poly(A.k, S.action[(size_t)g]);
        for (long d = 0; d <= S.dim; ++d)
            key.push_back(d < (long)mp.size() ? (long)mp[(size_t)d].index() : -1);
    }
    return key;
}

}  // namespace

ModRepContext make_context(const FDAlgebra& A, std::uint64_t seed) {
    verify_fd_algebra(A);
    if (A.dim > 128) throw std::invalid_argument("make_context: algebra dimension exceeds 128");
    ModRepContext ctx;
    ctx.A = A;
    ctx.radical_dim = (long)radical_basis(A).size();
    const AlgModule reg = regular_module(A);
    auto run = [&](std::uint64_t s) {
        std::map<std::vector<long>, std::pair<AlgModule, long>> found;
        for (auto& f : chop_factors(A, reg, s)) {
            auto key = canonical_key(A, f);
            auto it = found.find(key);
            if (it == found.end())
                found.emplace(std::move(key), std::make_pair(std::move(f), 1L));
            else {
                if (!simples_isomorphic(A, it->second.first, f))
                    throw std::runtime_error(
                        "make_context: non-isomorphic simples share a canonical key");
                it->second.second += 1;
            }
        }
        return found;
    };
    auto run1 = run(mix_seed(seed, 1));
    auto run2 = run(mix_seed(seed, 2));
    if (run1.size() != run2.size())
        throw std::runtime_error("make_context: chop is not seed-stable (different counts)");
    for (auto it1 = run1.begin(), it2 = run2.begin(); it1 != run1.end(); ++it1, ++it2)
        if (it1->first != it2->first || it1->second.second != it2->second.second)
            throw std::runtime_error("make_context: chop is not seed-stable");
    long total = 0;
    for (auto& [key, fm] : run1) {
        SimpleData sd;
        sd.module = std::move(fm.first);
        sd.key = key;
        sd.regular_multiplicity = fm.second;
        total += sd.module.dim * sd.regular_multiplicity;
        ctx.simples.push_back(std::move(sd));
    }
    if (total != A.dim)
        throw std::runtime_error("make_context: regular factors do not fill the algebra");
    // std::map already sorted by key; double-check pairwise non-isomorphy.
    for (size_t i = 0; i < ctx.simples.size(); ++i)
        for (size_t j = i + 1; j < ctx.simples.size(); ++j)
            if (simples_isomorphic(A, ctx.simples[i].module, ctx.simples[j].module))
                throw std::runtime_error("make_context: duplicate simple survived deduplication");
    if (A.involution) {
        const long ns = (long)ctx.simples.size();
        ctx.duality.assign((size_t)ns, -1);
        for (long i = 0; i < ns; ++i) {
            AlgModule D = dual_module(A, ctx.simples[(size_t)i].module);
            long match = -1;
            for (long j = 0; j < ns; ++j)
                if (simples_isomorphic(A, D, ctx.simples[(size_t)j].module)) {
                    if (match >= 0)
                        throw std::runtime_error("make_context: ambiguous dual match");
                    match = j;
                }
            if (match < 0) throw std::runtime_error("make_context: dual of a simple not found");
            ctx.duality[(size_t)i] = match;
        }
        for (long i = 0; i < ns; ++i)
            if (ctx.duality[(size_t)ctx.duality[(size_t)i]] != i)
                throw std::runtime_error("make_context: duality is not an involution");
    }
    return ctx;
}

std::string g0_str(const G0Class& c) {
    std::ostringstream os;
    os << c.algebra_id << ":[";
    for (size_t i = 0; i < c.mult.size(); ++i) {
        if (i) os << ",";
        os << c.mult[i];
    }
    os << "]";
    return os.str();
}

G0Class g0_add(const G0Class& a, const G0Class& b, long scale) {
    if (a.algebra_id != b.algebra_id || a.mult.size() != b.mult.size())
        throw std::invalid_argument("g0_add: classes over different algebras");
    G0Class r = a;
    for (size_t i = 0; i < r.mult.size(); ++i) r.mult[i] += scale * b.mult[i];
    return r;
}

G0Class composition_factors(const ModRepContext& ctx, const AlgModule& M,
                            std::uint64_t seed) {
    auto run = [&](std::uint64_t s) {
        std::vector<long> counts(ctx.simples.size(), 0);
        for (const auto& f : chop_factors(ctx.A, M, s)) {
            auto key = canonical_key(ctx.A, f);
            long match = -1;
            for (size_t j = 0; j < ctx.simples.size(); ++j)
                if (ctx.simples[j].key == key) {
                    match = (long)j;
                    break;
                }
            if (match < 0 || !simples_isomorphic(ctx.A, f, ctx.simples[(size_t)match].module))
                throw std::runtime_error(
                    "composition_factors: factor is not among the canonical simples");
            counts[(size_t)match] += 1;
        }
        return counts;
    };
    std::vector<long> c1 = run(mix_seed(seed, 11));
    std::vector<long> c2 = run(mix_seed(seed, 12));
    if (c1 != c2)
        throw std::runtime_error("composition_factors: chop is not seed-stable on this module");
    long total = 0;
    for (size_t j = 0; j < c1.size(); ++j) total += c1[j] * ctx.simples[j].module.dim;
    if (total != M.dim)
        throw std::runtime_error("composition_factors: dimensions do not add up");
    return G0Class{ctx.A.id, std::move(c1)};
}

G0Class g0_dual(const ModRepContext& ctx, const G0Class& c) {
    if (ctx.duality.empty()) throw std::invalid_argument("g0_dual: no duality available");
    if (c.algebra_id != ctx.A.id || c.mult.size() != ctx.duality.size())
        throw std::invalid_argument("g0_dual: class does not belong to this context");
    G0Class r{c.algebra_id, std::vector<long>(c.mult.size(), 0)};
    for (size_t i = 0; i < c.mult.size(); ++i) r.mult[(size_t)ctx.duality[i]] = c.mult[i];
    return r;
}

bool is_self_dual(const ModRepContext& ctx, long simple_index) {
    if (ctx.duality.empty()) throw std::invalid_argument("is_self_dual: no duality available");
    return ctx.duality[(size_t)simple_index] == simple_index;
}

int selfdual_form_type(const ModRepContext& ctx, long simple_index) {
    if (ctx.A.k.p() == 2)
        throw std::invalid_argument(
            "selfdual_form_type: no symmetric/alternating distinction in characteristic two");
    if (!is_self_dual(ctx, simple_index))
        throw std::invalid_argument("selfdual_form_type: simple is not self-dual");
    const AlgModule& S = ctx.simples[(size_t)simple_index].module;
    AlgModule D = dual_module(ctx.A, S);
    const long m = S.dim;
    // Solve X act_S(g) = act_D(g) X; one-dimensional solution space required.
    const long cols = m * m;
    Mat<FFElt> sys((long)ctx.A.generators.size() * cols, cols, ctx.A.k.zero());
    long eq = 0;
    for (long g : ctx.A.generators) {
        const Mat<FFElt>& Mg = S.action[(size_t)g];
        const Mat<FFElt>& Ng = D.action[(size_t)g];
        for (long r = 0; r < m; ++r)
            for (long c = 0; c < m; ++c) {
                for (long s = 0; s < m; ++s) sys.at(eq, r * m + s) += Mg.at(s, c);
                for (long s = 0; s < m; ++s) sys.at(eq, s * m + c) -= Ng.at(r, s);
                ++eq;
            }
    }
    auto ker = mat_kernel(std::move(sys));
    if (ker.size() != 1)
        throw std::runtime_error("selfdual_form_type: endomorphisms are not scalars");
    Mat<FFElt> X(m, m, ctx.A.k.zero());
    for (long r = 0; r < m; ++r)
        for (long c = 0; c < m; ++c) X.at(r, c) = ker[0][(size_t)(r * m + c)];
    FFElt ratio;
    bool have = false;
    for (long r = 0; r < m && !have; ++r)
        for (long c = 0; c < m && !have; ++c)
            if (!X.at(r, c).is_zero()) {
                ratio = X.at(c, r) / X.at(r, c);
                have = true;
            }
    if (!have) throw std::logic_error("selfdual_form_type: zero intertwiner");
    for (long r = 0; r < m; ++r)
        for (long c = 0; c < m; ++c)
            if (X.at(c, r) != ratio * X.at(r, c))
                throw std::runtime_error("selfdual_form_type: form is neither symmetric nor "
                                         "alternating");
    if (ratio.is_one()) return 1;
    if ((ratio + ctx.A.k.one()).is_zero()) return -1;
    throw std::runtime_error("selfdual_form_type: transpose ratio is not a sign");
}

std::vector<Mat<Cyclo>> krep_from_group_matrices(const HopfOrder& L,
                                                 const std::vector<Mat<Cyclo>>& rho) {
    if (L.side != Side::Group)
        throw std::invalid_argument("krep_from_group_matrices: group-side order required");
    const FiniteGroup& G = L.G;
    if ((long)rho.size() != G.n)
        throw std::invalid_argument("krep_from_group_matrices: one matrix per group element");
    const long m = rho[0].rows;
    for (const auto& r : rho)
        if (r.rows != m || r.cols != m)
            throw std::invalid_argument("krep_from_group_matrices: shape mismatch");
    if (rho[0] != mat_identity(m, Cyclo(0)))
        throw std::invalid_argument("krep_from_group_matrices: identity must act trivially");
    for (long g = 0; g < G.n; ++g)
        for (long h = 0; h < G.n; ++h)
            if (mat_mul(rho[(size_t)g], rho[(size_t)h]) != rho[(size_t)G.mul(g, h)])
                throw std::invalid_argument("krep_from_group_matrices: not multiplicative");
    std::vector<Mat<Cyclo>> action;
    action.reserve((size_t)L.basis.rows);
    for (long i = 0; i < L.basis.rows; ++i) {
        Mat<Cyclo> a(m, m, Cyclo(0));
        for (long g = 0; g < G.n; ++g) {
            const Cyclo& c = L.basis.at(i, g);
            if (!c.is_zero()) a = mat_add(a, mat_scale(c, rho[(size_t)g]));
        }
        action.push_back(std::move(a));
    }
    return action;
}

LatticePair make_lattice_pair(const HopfOrder& L, std::vector<Mat<Cyclo>> action,
                              const Mat<Cyclo>& rows) {
    const LocalRing& R = L.ring;
    if ((long)action.size() != L.basis.rows)
        throw std::invalid_argument("make_lattice_pair: one action matrix per basis element");
    const long m = action[0].rows;
    Mat<Cyclo> E = hnf_local(R, rows);
    if (E.rows != m)
        throw std::invalid_argument("make_lattice_pair: lattice is not full rank");
    for (const auto& a : action)
        for (long s = 0; s < m; ++s)
            if (!local_lattice_member(R, E, cyc_mat_col_apply(a, cyc_row(E, s))))
                throw std::runtime_error("make_lattice_pair: lattice is not stable");
    return LatticePair{R, std::move(action), std::move(E)};
}

AlgModule lattice_reduction(const FDAlgebra& Ltilde, const LatticePair& P) {
    const long m = P.lattice.rows;
    if ((long)P.action.size() != Ltilde.dim)
        throw std::invalid_argument("lattice_reduction: algebra/action mismatch");
    AlgModule M;
    M.dim = m;
    M.action.reserve((size_t)Ltilde.dim);
    for (const auto& a : P.action) {
        Mat<FFElt> red(m, m, Ltilde.k.zero());
        for (long s = 0; s < m; ++s) {
            auto coords = local_lattice_coords(P.ring, P.lattice,
                                               cyc_mat_col_apply(a, cyc_row(P.lattice, s)));
            if (!coords)
                throw std::runtime_error("lattice_reduction: action leaves the lattice");
            for (long t = 0; t < m; ++t)
                red.at(t, s) = residue_ff(Ltilde.k, P.ring, (*coords)[(size_t)t]);
        }
        M.action.push_back(std::move(red));
    }
    verify_module(Ltilde, M);
    return M;
}

G0Class decomposition_map(const HopfOrder& L, const ModRepContext& ctx,
                          const std::vector<Mat<Cyclo>>& action,
                          const Mat<Cyclo>& spanning, std::uint64_t seed) {
    const LocalRing& R = L.ring;
    const long m = action.empty() ? 0 : action[0].rows;
    if (spanning.cols != m)
        throw std::invalid_argument("decomposition_map: spanning vectors of wrong length");
    auto order_span = [&](const Mat<Cyclo>& S) {
        Mat<Cyclo> rows((long)action.size() * S.rows, m, Cyclo(0));
        long r = 0;
        for (const auto& a : action)
            for (long j = 0; j < S.rows; ++j, ++r) {
                CVec v = cyc_mat_col_apply(a, cyc_row(S, j));
                for (long c = 0; c < m; ++c) rows.at(r, c) = v[(size_t)c];
            }
        return rows;
    };
    LatticePair P1 = make_lattice_pair(L, action, order_span(spanning));
    G0Class c1 = composition_factors(ctx, lattice_reduction(ctx.A, P1), mix_seed(seed, 21));
    // Second lattice: the spanning set scaled by random units and shifted by
    // random order images of other spanning vectors.
    std::mt19937_64 rng(mix_seed(seed, 22));
    const long p = R.prime();
    for (int attempt = 0; attempt < 32; ++attempt) {
        Mat<Cyclo> S2(spanning.rows, m, Cyclo(0));
        for (long j = 0; j < spanning.rows; ++j) {
            Cyclo u = Cyclo(Rat((long)(1 + draw_mod(rng, (unsigned long)(p - 1))))) +
                      R.uniformizer() * Cyclo(Rat((long)draw_mod(rng, (unsigned long)p)));
            const long other = (long)draw_mod(rng, (unsigned long)spanning.rows);
            Mat<Cyclo> shift(m, m, Cyclo(0));
            for (const auto& a : action) {
                Cyclo c = Cyclo(Rat((long)draw_mod(rng, (unsigned long)p)));
                if (!c.is_zero()) shift = mat_add(shift, mat_scale(c, a));
            }
            CVec v = cyc_row(spanning, j);
            for (auto& x : v) x *= u;
            CVec w = cyc_mat_col_apply(shift, cyc_row(spanning, other));
            for (long c = 0; c < m; ++c) S2.at(j, c) = v[(size_t)c] + w[(size_t)c];
        }
        Mat<Cyclo> rows2 = order_span(S2);
        if (hnf_local(R, rows2).rows != m) continue;
        LatticePair P2 = make_lattice_pair(L, action, rows2);
        G0Class c2 = composition_factors(ctx, lattice_reduction(ctx.A, P2), mix_seed(seed, 23));
        if (c1 != c2)
            throw std::runtime_error("decomposition_map: lattice choice changed the class: " +
                                     g0_str(c1) + " vs " + g0_str(c2));
        return c1;
    }
    throw std::runtime_error("decomposition_map: could not build a second full-rank lattice");
}

InductionData make_induction(const HopfOrder& LG, const SubgroupOrderData& sub,
                             const FDAlgebra& AG, const FDAlgebra& AH) {
    const FiniteGroup& G = LG.G;
    const LocalRing& R = LG.ring;
    const long n = LG.basis.rows;
    const long h = sub.order.basis.rows;
    const long r = (long)sub.module_basis.size();
    if (r * h != n) throw std::invalid_argument("make_induction: rank mismatch");
    if (AG.dim != n || AH.dim != h)
        throw std::invalid_argument("make_induction: reduced algebra dimensions mismatch");
    auto embed_vec = [&](const CVec& x) {
        CVec w((size_t)G.n, Cyclo(0));
        for (long t = 0; t < (long)x.size(); ++t)
            w[(size_t)sub.embedding[(size_t)t]] = x[(size_t)t];
        return w;
    };
    Mat<Cyclo> F(n, n, Cyclo(0));
    for (long s = 0; s < r; ++s)
        for (long u = 0; u < h; ++u) {
            CVec col = side_mul(Side::Group, G, sub.module_basis[(size_t)s],
                                embed_vec(cyc_row(sub.order.basis, u)));
            for (long t = 0; t < n; ++t) F.at(t, s * h + u) = col[(size_t)t];
        }
    if (R.valuation(mat_det(F)) != 0)
        throw std::runtime_error("make_induction: free basis does not stay a basis mod pi");
    auto Finv = mat_inverse(F);
    if (!Finv) throw std::logic_error("make_induction: free basis matrix not invertible");
    InductionData ind;
    ind.rank = r;
    ind.hdim = h;
    ind.exp_coeff.reserve((size_t)n);
    for (long i = 0; i < n; ++i) {
        Mat<FFElt> X(n, r, AG.k.zero());
        for (long t = 0; t < r; ++t) {
            CVec w = side_mul(Side::Group, G, cyc_row(LG.basis, i), sub.module_basis[(size_t)t]);
            CVec y = mat_apply(*Finv, w);
            for (long su = 0; su < n; ++su) X.at(su, t) = residue_ff(AG.k, R, y[(size_t)su]);
        }
        ind.exp_coeff.push_back(std::move(X));
    }
    ind.embed = Mat<FFElt>(n, h, AG.k.zero());
    for (long u = 0; u < h; ++u) {
        CVec coords = LG.coords(embed_vec(cyc_row(sub.order.basis, u)));
        for (long t = 0; t < n; ++t) ind.embed.at(t, u) = residue_ff(AG.k, R, coords[(size_t)t]);
    }
    // The reduced embedding must be an algebra map sending unit to unit.
    {
        std::vector<FFElt> uimg = mat_apply(ind.embed, AH.unit);
        if (uimg != AG.unit)
            throw std::runtime_error("make_induction: embedding moves the unit");
        for (long u = 0; u < h; ++u)
            for (long v = 0; v < h; ++v) {
                std::vector<FFElt> lhs =
                    fd_mul(AG, mat_col(ind.embed, u), mat_col(ind.embed, v));
                std::vector<FFElt> prod = mat_col(AH.mult[(size_t)u], v);
                std::vector<FFElt> rhs = ffvec_zero(AG.k, n);
                for (long w2 = 0; w2 < h; ++w2)
                    if (!prod[(size_t)w2].is_zero())
                        for (long t = 0; t < n; ++t)
                            rhs[(size_t)t] += prod[(size_t)w2] * ind.embed.at(t, w2);
                if (lhs != rhs)
                    throw std::runtime_error("make_induction: embedding is not multiplicative");
            }
    }
    return ind;
}

AlgModule induce_module(const InductionData& ind, const FDAlgebra& AH,
                        const FDAlgebra& AG, const AlgModule& M) {
    if ((long)M.action.size() != AH.dim)
        throw std::invalid_argument("induce_module: module does not live over the suborder");
    const long m = M.dim;
    const long r = ind.rank;
    const long h = ind.hdim;
    AlgModule N;
    N.dim = r * m;
    N.action.reserve((size_t)AG.dim);
    for (long i = 0; i < AG.dim; ++i) {
        Mat<FFElt> a(N.dim, N.dim, AG.k.zero());
        const Mat<FFElt>& X = ind.exp_coeff[(size_t)i];
        for (long s = 0; s < r; ++s)
            for (long t = 0; t < r; ++t) {
                Mat<FFElt> block(m, m, AG.k.zero());
                bool nonzero = false;
                for (long u = 0; u < h; ++u) {
                    const FFElt& c = X.at(s * h + u, t);
                    if (c.is_zero()) continue;
                    block = mat_add(block, mat_scale(c, M.action[(size_t)u]));
                    nonzero = true;
                }
                if (!nonzero) continue;
                for (long x = 0; x < m; ++x)
                    for (long y = 0; y < m; ++y) a.at(s * m + x, t * m + y) = block.at(x, y);
            }
        N.action.push_back(std::move(a));
    }
    return N;
}

AlgModule restrict_module(const InductionData& ind, const FDAlgebra& AH,
                          const FDAlgebra& AG, const AlgModule& N) {
    if ((long)N.action.size() != AG.dim)
        throw std::invalid_argument("restrict_module: module does not live over the order");
    AlgModule M;
    M.dim = N.dim;
    M.action.reserve((size_t)AH.dim);
    for (long u = 0; u < AH.dim; ++u) {
        Mat<FFElt> a(N.dim, N.dim, AH.k.zero());
        for (long i = 0; i < AG.dim; ++i) {
            const FFElt& c = ind.embed.at(i, u);
            if (!c.is_zero()) a = mat_add(a, mat_scale(c, N.action[(size_t)i]));
        }
        M.action.push_back(std::move(a));
    }
    return M;
}

G0Class induce_g0(const InductionData& ind, const ModRepContext& ctxH,
                  const ModRepContext& ctxG, const G0Class& y, std::uint64_t seed) {
    if (y.algebra_id != ctxH.A.id || y.mult.size() != ctxH.simples.size())
        throw std::invalid_argument("induce_g0: class does not belong to the suborder");
    G0Class total{ctxG.A.id, std::vector<long>(ctxG.simples.size(), 0)};
    for (size_t j = 0; j < y.mult.size(); ++j) {
        if (y.mult[j] == 0) continue;
        AlgModule indmod = induce_module(ind, ctxH.A, ctxG.A, ctxH.simples[j].module);
        G0Class part = composition_factors(ctxG, indmod, mix_seed(seed, 31 + (std::uint64_t)j));
        total = g0_add(total, part, y.mult[j]);
    }
    return total;
}

void verify_frobenius(const InductionData& ind, const ModRepContext& ctxH,
                      const ModRepContext& ctxG, long simpleH, long simpleG,
                      std::uint64_t seed) {
    const AlgModule& M = ctxH.simples[(size_t)simpleH].module;
    const AlgModule& N = ctxG.simples[(size_t)simpleG].module;
    AlgModule indM = induce_module(ind, ctxH.A, ctxG.A, M);
    G0Class lhs =
        composition_factors(ctxG, tensor_module(ctxG.A, indM, N), mix_seed(seed, 41));
    AlgModule resN = restrict_module(ind, ctxH.A, ctxG.A, N);
    G0Class inner =
        composition_factors(ctxH, tensor_module(ctxH.A, M, resN), mix_seed(seed, 42));
    G0Class rhs = induce_g0(ind, ctxH, ctxG, inner, mix_seed(seed, 43));
    if (lhs != rhs)
        throw std::runtime_error("verify_frobenius: projection formula fails: " + g0_str(lhs) +
                                 " vs " + g0_str(rhs));
}

void verify_ind_dual(const InductionData& ind, const ModRepContext& ctxH,
                     const ModRepContext& ctxG, const G0Class& y, std::uint64_t seed) {
    G0Class lhs = induce_g0(ind, ctxH, ctxG, g0_dual(ctxH, y), mix_seed(seed, 51));
    G0Class rhs = g0_dual(ctxG, induce_g0(ind, ctxH, ctxG, y, mix_seed(seed, 52)));
    if (lhs != rhs)
        throw std::runtime_error("verify_ind_dual: induction does not commute with duality: " +
                                 g0_str(lhs) + " vs " + g0_str(rhs));
}

void check_lattice_sandwich(const LocalRing& R, const Mat<Cyclo>& E1, const Mat<Cyclo>& E2) {
    if (E1.rows != E1.cols || E2.rows != E2.cols || E1.rows != E2.rows)
        throw std::invalid_argument("check_lattice_sandwich: full-rank square bases required");
    for (long i = 0; i < E2.rows; ++i)
        if (!local_lattice_member(R, E1, cyc_row(E2, i)))
            throw std::runtime_error("check_lattice_sandwich: E2 is not contained in E1");
    for (long i = 0; i < E1.rows; ++i) {
        CVec v = cyc_row(E1, i);
        for (auto& x : v) x *= R.uniformizer();
        if (!local_lattice_member(R, E2, v))
            throw std::runtime_error("check_lattice_sandwich: pi E1 is not contained in E2");
    }
}

G0Class verify_swan_square(const ModRepContext& ctx, const AlgModule& F,
                           const AlgModule& E1red, const AlgModule& E2red,
                           std::uint64_t seed) {
    G0Class c1 = composition_factors(ctx, tensor_module(ctx.A, F, E1red), mix_seed(seed, 61));
    G0Class c2 = composition_factors(ctx, tensor_module(ctx.A, F, E2red), mix_seed(seed, 62));
    if (c1 != c2)
        throw std::runtime_error("verify_swan_square: tensor factors differ: " + g0_str(c1) +
                                 " vs " + g0_str(c2));
    return c1;
}

SelfDualReport verify_selfdual_constraints(const ModRepContext& ctx, bool elementary) {
    if (ctx.duality.empty())
        throw std::invalid_argument("verify_selfdual_constraints: no duality available");
    for (size_t i = 0; i < ctx.simples.size(); ++i)
        if (hom_space_dim(ctx.A, ctx.simples[i].module, ctx.simples[i].module) != 1)
            throw std::runtime_error(
                "verify_selfdual_constraints: reduction is not split (simple " +
                std::to_string(i) + ")");
    // Locate the trivial simple through the counit module.
    long trivial = -1;
    {
        G0Class t = composition_factors(ctx, trivial_module(ctx.A), 7);
        for (size_t i = 0; i < t.mult.size(); ++i)
            if (t.mult[i] != 0) {
                if (trivial >= 0)
                    throw std::logic_error("verify_selfdual_constraints: counit module mixed");
                trivial = (long)i;
            }
    }
    SelfDualReport rep;
    for (long i = 0; i < (long)ctx.simples.size(); ++i) {
        if (!is_self_dual(ctx, i)) continue;
        rep.selfdual.push_back(i);
        const long dim = ctx.simples[(size_t)i].module.dim;
        if (dim % 2 == 0)
            throw std::runtime_error(
                "verify_selfdual_constraints: even-dimensional self-dual simple found (dim=" +
                std::to_string(dim) + ")");
        int type = selfdual_form_type(ctx, i);
        rep.types.push_back(type);
        if (type != 1)
            throw std::runtime_error(
                "verify_selfdual_constraints: alternating invariant form found");
        if (elementary && i != trivial)
            throw std::runtime_error(
                "verify_selfdual_constraints: nontrivial self-dual simple in the elementary "
                "case");
    }
    return rep;
}

void check_simple_dims_product(const ModRepContext& ctxH, const ModRepContext& ctxC,
                               const ModRepContext& ctxL) {
    if (ctxH.simples.size() != ctxC.simples.size() * ctxL.simples.size())
        throw std::runtime_error("check_simple_dims_product: simple counts do not multiply (" +
                                 std::to_string(ctxH.simples.size()) + " vs " +
                                 std::to_string(ctxC.simples.size()) + "*" +
                                 std::to_string(ctxL.simples.size()) + ")");
    std::vector<long> dimsH, dimsP;
    for (const auto& s : ctxH.simples) dimsH.push_back(s.module.dim);
    for (const auto& c : ctxC.simples)
        for (const auto& l : ctxL.simples) dimsP.push_back(c.module.dim * l.module.dim);
    std::sort(dimsH.begin(), dimsH.end());
    std::sort(dimsP.begin(), dimsP.end());
    if (dimsH != dimsP) {
        std::ostringstream os;
        os << "check_simple_dims_product: dimension multisets differ:";
        for (long d : dimsH) os << " " << d;
        os << " vs";
        for (long d : dimsP) os << " " << d;
        throw std::runtime_error(os.str());
    }
}

bool g0_union_covers(const std::vector<G0Class>& images, long nsimples) {
    for (long j = 0; j < nsimples; ++j) {
        bool hit = false;
        for (const auto& c : images)
            if (j < (long)c.mult.size() && c.mult[(size_t)j] > 0) {
                hit = true;
                break;
            }
        if (!hit) return false;
    }
    return true;
}

}  // namespace hopfforms
