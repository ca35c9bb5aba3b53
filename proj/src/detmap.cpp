#include "hopfforms/detmap.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "hopfforms/grpalg.hpp"

namespace hopfforms {

namespace {

std::uint64_t mix_seed(std::uint64_t s, std::uint64_t salt) {
    std::uint64_t z = s + 0x9e3779b97f4a7c15ull * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::vector<FFElt> ffvec_zero(const FF& k, long n) {
    return std::vector<FFElt>((size_t)n, k.zero());
}

// ------------------------------------------------------------------
// characteristic zero helpers

const MonomialRep& rep_for_row(const std::vector<MonomialRep>& reps, long row) {
    for (const auto& r : reps)
        if (r.row == row) return r;
    throw std::invalid_argument("det_map: no matrix model for a character row");
}

Mat<Cyclo> rep_eval(const FiniteGroup& G, const MonomialRep& rep, const CVec& z) {
    Mat<Cyclo> s(rep.degree, rep.degree, Cyclo());
    for (long g = 0; g < G.n; ++g) {
        if (z[(size_t)g].is_zero()) continue;
        s = mat_add(s, mat_scale(z[(size_t)g], rep.mats[(size_t)g]));
    }
    return s;
}

std::vector<std::vector<CVec>> kg_block_sigma(const FiniteGroup& G, long m,
                                              const std::vector<std::vector<CVec>>& b) {
    std::vector<std::vector<CVec>> s((size_t)m, std::vector<CVec>());
    for (long r = 0; r < m; ++r) {
        s[(size_t)r].resize((size_t)m);
        for (long c = 0; c < m; ++c) s[(size_t)r][(size_t)c] = ga_bar(G, b[(size_t)c][(size_t)r]);
    }
    return s;
}

std::vector<std::vector<CVec>> kg_block_mul(const FiniteGroup& G, long m,
                                            const std::vector<std::vector<CVec>>& x,
                                            const std::vector<std::vector<CVec>>& y) {
    std::vector<std::vector<CVec>> out((size_t)m, std::vector<CVec>());
    for (long r = 0; r < m; ++r) {
        out[(size_t)r].resize((size_t)m, CVec((size_t)G.n, Cyclo()));
        for (long c = 0; c < m; ++c)
            for (long t = 0; t < m; ++t) {
                CVec term = ga_mul(G, x[(size_t)r][(size_t)t], y[(size_t)t][(size_t)c]);
                CVec& acc = out[(size_t)r][(size_t)c];
                for (long g = 0; g < G.n; ++g) acc[(size_t)g] += term[(size_t)g];
            }
    }
    return out;
}

// ------------------------------------------------------------------
// reduced-case helpers

// Embed a base-field scalar into the (possibly larger) component field.
FFElt emb_scalar(const FFElt& c, const FF& k) {
    if (c.field() == k) return c;
    return k.from_int(c.coeffs()[0]);
}

Mat<FFElt> rho_of(const DetComponent& cp, const std::vector<FFElt>& z) {
    Mat<FFElt> r(cp.n, cp.n, cp.k.zero());
    for (size_t j = 0; j < z.size(); ++j) {
        if (z[j].is_zero()) continue;
        const FFElt c = emb_scalar(z[j], cp.k);
        const Mat<FFElt>& rj = cp.rho[j];
        for (long a = 0; a < cp.n; ++a)
            for (long b = 0; b < cp.n; ++b)
                if (!rj.at(a, b).is_zero()) r.at(a, b) += c * rj.at(a, b);
    }
    return r;
}

Mat<FFElt> mat_pow_p_entrywise(const Mat<FFElt>& m, long s) {
    Mat<FFElt> r = m;
    if (s == 0) return r;
    for (auto& x : r.a) x = x.pow_p(s);
    return r;
}

bool mat_is_identity(const Mat<FFElt>& m) {
    if (m.rows != m.cols) return false;
    for (long i = 0; i < m.rows; ++i)
        for (long j = 0; j < m.cols; ++j) {
            if (i == j && !m.at(i, j).is_one()) return false;
            if (i != j && !m.at(i, j).is_zero()) return false;
        }
    return true;
}

std::vector<unsigned long> tuple_of(const std::vector<FFElt>& dets) {
    std::vector<unsigned long> t;
    t.reserve(dets.size());
    for (const auto& d : dets) t.push_back(d.index());
    return t;
}

// Extended Euclid over FFPoly: g = a f + b h with g monic.
struct PolyXgcd {
    FFPoly g, a, b;
};

PolyXgcd ffpoly_xgcd(const FF& k, FFPoly f, FFPoly h) {
    FFPoly r0 = ffpoly_trim(std::move(f)), r1 = ffpoly_trim(std::move(h));
    FFPoly a0 = {k.one()}, a1 = {};
    FFPoly b0 = {}, b1 = {k.one()};
    while (ffpoly_deg(r1) >= 0) {
        auto [q, r] = ffpoly_divmod(r0, r1);
        FFPoly a2 = ffpoly_sub(a0, ffpoly_mul(q, a1));
        FFPoly b2 = ffpoly_sub(b0, ffpoly_mul(q, b1));
        r0 = std::move(r1);
        r1 = ffpoly_trim(std::move(r));
        a0 = std::move(a1);
        a1 = std::move(a2);
        b0 = std::move(b1);
        b1 = std::move(b2);
    }
    if (ffpoly_deg(r0) < 0) throw std::logic_error("ffpoly_xgcd: zero inputs");
    FFElt lead = r0.back();
    FFElt inv = lead.inverse();
    for (auto& c : r0) c *= inv;
    for (auto& c : a0) c *= inv;
    for (auto& c : b0) c *= inv;
    return {std::move(r0), std::move(a0), std::move(b0)};
}

FFPoly ffpoly_derivative(const FF& k, const FFPoly& f) {
    FFPoly d;
    for (size_t t = 1; t < f.size(); ++t) {
        FFElt c = k.zero();
        for (long rep = 0; rep < (long)(t % (unsigned long)k.p()); ++rep) c += f[t];
        d.push_back(c);
    }
    return ffpoly_trim(std::move(d));
}

// Coordinates of v in the row space of `rows` (must be a basis); throws when
// v is outside the span.
std::vector<FFElt> coords_in_rows(const FF& k, const std::vector<std::vector<FFElt>>& rows,
                                  const std::vector<FFElt>& v) {
    const long n = (long)v.size(), r = (long)rows.size();
    Mat<FFElt> sys(n, r, k.zero());
    for (long i = 0; i < r; ++i)
        for (long t = 0; t < n; ++t) sys.at(t, i) = rows[(size_t)i][(size_t)t];
    auto sol = mat_solve(sys, v);
    if (!sol) throw std::logic_error("coords_in_rows: vector outside the span");
    return *sol;
}

// Nonzero rows of the reduced row echelon form: a basis of the row space.
std::vector<std::vector<FFElt>> row_space_basis(const FF& k,
                                                const std::vector<std::vector<FFElt>>& rows) {
    if (rows.empty()) return {};
    const long n = (long)rows[0].size();
    Mat<FFElt> m((long)rows.size(), n, k.zero());
    for (size_t i = 0; i < rows.size(); ++i)
        for (long t = 0; t < n; ++t) m.at((long)i, t) = rows[i][(size_t)t];
    const long rank = (long)mat_rref(m).size();
    std::vector<std::vector<FFElt>> out;
    for (long i = 0; i < rank; ++i) {
        std::vector<FFElt> row((size_t)n, k.zero());
        for (long t = 0; t < n; ++t) row[(size_t)t] = m.at(i, t);
        out.push_back(std::move(row));
    }
    return out;
}

}  // namespace

// ------------------------------------------------------------------
// characteristic zero

DetVector det_mul(const DetVector& a, const DetVector& b) {
    if (a.value.size() != b.value.size())
        throw std::invalid_argument("det_mul: size mismatch");
    DetVector r;
    r.value.reserve(a.value.size());
    for (size_t i = 0; i < a.value.size(); ++i) r.value.push_back(a.value[i] * b.value[i]);
    return r;
}

DetVector det_pow(const DetVector& a, long e) {
    if (e < 0) throw std::invalid_argument("det_pow: negative exponent");
    DetVector r;
    r.value.assign(a.value.size(), Cyclo(1));
    for (long t = 0; t < e; ++t) r = det_mul(r, a);
    return r;
}

bool det_is_ones(const DetVector& a) {
    const Cyclo one(1);
    for (const auto& v : a.value)
        if (!(v == one)) return false;
    return true;
}

DetVector det_map(const CharacterTable& T, const std::vector<MonomialRep>& reps,
                  const CVec& z) {
    if ((long)z.size() != T.G.n) throw std::invalid_argument("det_map: coefficient count");
    DetVector out;
    for (long i = 0; i < T.num_classes(); ++i) {
        Cyclo d = mat_det(rep_eval(T.G, rep_for_row(reps, i), z));
        if (d.is_zero())
            throw std::runtime_error("det_map: block determinant vanishes, not a unit");
        out.value.push_back(std::move(d));
    }
    return out;
}

DetVector det_map_matrix(const CharacterTable& T, const std::vector<MonomialRep>& reps,
                         const std::vector<std::vector<CVec>>& blocks) {
    const long m = (long)blocks.size();
    if (m == 0) throw std::invalid_argument("det_map_matrix: empty block matrix");
    for (const auto& row : blocks) {
        if ((long)row.size() != m)
            throw std::invalid_argument("det_map_matrix: ragged block matrix");
        for (const auto& b : row)
            if ((long)b.size() != T.G.n)
                throw std::invalid_argument("det_map_matrix: coefficient count");
    }
    DetVector out;
    for (long i = 0; i < T.num_classes(); ++i) {
        const MonomialRep& rep = rep_for_row(reps, i);
        const long d = rep.degree;
        Mat<Cyclo> big(m * d, m * d, Cyclo());
        for (long r = 0; r < m; ++r)
            for (long s = 0; s < m; ++s) {
                Mat<Cyclo> blk = rep_eval(T.G, rep, blocks[(size_t)r][(size_t)s]);
                for (long a = 0; a < d; ++a)
                    for (long b = 0; b < d; ++b) big.at(r * d + a, s * d + b) = blk.at(a, b);
            }
        Cyclo det = mat_det(big);
        if (det.is_zero())
            throw std::runtime_error("det_map_matrix: block determinant vanishes, not a unit");
        out.value.push_back(std::move(det));
    }
    return out;
}

bool minus_det_check(const CharacterTable& T, const std::vector<MonomialRep>& reps,
                     const CVec& z) {
    (void)det_map(T, reps, z);  // unit precondition
    return det_is_ones(det_map(T, reps, ga_mul(T.G, z, ga_bar(T.G, z))));
}

bool minus_det_check_matrix(const CharacterTable& T, const std::vector<MonomialRep>& reps,
                            const std::vector<std::vector<CVec>>& blocks) {
    (void)det_map_matrix(T, reps, blocks);  // unit precondition
    const long m = (long)blocks.size();
    auto prod = kg_block_mul(T.G, m, blocks, kg_block_sigma(T.G, m, blocks));
    return det_is_ones(det_map_matrix(T, reps, prod));
}

void verify_det_galois_equivariance(const CharacterTable& T,
                                    const std::vector<MonomialRep>& reps, const CVec& z) {
    // Work inside one cyclotomic field containing the table values and the
    // coefficients, so every automorphism below acts on everything involved.
    long N = T.exponent;
    for (const auto& c : z) N = std::lcm(N, c.conductor());
    DetVector v = det_map(T, reps, z);
    for (long t = 2; t < N; ++t) {
        if (std::gcd(t, N) != 1) continue;
        bool fixes = true;
        for (const auto& c : z)
            if (!(c.galois(t) == c)) {
                fixes = false;
                break;
            }
        if (!fixes) continue;
        for (long i = 0; i < T.num_classes(); ++i) {
            // locate the row of the conjugated character
            long target = -1;
            for (long j = 0; j < T.num_classes() && target < 0; ++j) {
                bool same = true;
                for (long c = 0; c < T.num_classes(); ++c)
                    if (!(T.rows[(size_t)i][(size_t)c].galois(t) == T.rows[(size_t)j][(size_t)c])) {
                        same = false;
                        break;
                    }
                if (same) target = j;
            }
            if (target < 0)
                throw std::logic_error(
                    "verify_det_galois_equivariance: character table is not Galois-stable");
            if (!(v.value[(size_t)i].galois(t) == v.value[(size_t)target])) {
                std::ostringstream os;
                os << "verify_det_galois_equivariance: failure at automorphism " << t
                   << ", row " << i;
                throw std::runtime_error(os.str());
            }
        }
    }
}

void abelian_det_injectivity_check(const CharacterTable& T,
                                   const std::vector<MonomialRep>& reps,
                                   std::uint64_t seed) {
    const FiniteGroup& G = T.G;
    if (!group_is_abelian(G))
        throw std::invalid_argument("abelian_det_injectivity_check: abelian group required");
    if (T.num_classes() != G.n)
        throw std::logic_error("abelian_det_injectivity_check: class count");
    // Det(1) is all-ones.
    if (!det_is_ones(det_map(T, reps, ga_unit(G, Cyclo(1)))))
        throw std::logic_error("abelian_det_injectivity_check: Det(1) is not all-ones");
    // The 2|G| trivialized units +-g are pairwise separated.
    std::vector<DetVector> triv;
    for (long g = 0; g < G.n; ++g)
        for (int sign = 0; sign < 2; ++sign) {
            CVec z((size_t)G.n, Cyclo());
            z[(size_t)g] = sign ? Cyclo(-1) : Cyclo(1);
            triv.push_back(det_map(T, reps, z));
        }
    for (size_t a = 0; a < triv.size(); ++a)
        for (size_t b = a + 1; b < triv.size(); ++b)
            if (triv[a] == triv[b])
                throw std::runtime_error(
                    "abelian_det_injectivity_check: trivialized units not separated");
    // The character matrix is nonsingular, so Det = character evaluation is
    // injective on the whole algebra, not only on the sample.
    Mat<Cyclo> cm(G.n, G.n, Cyclo());
    for (long i = 0; i < G.n; ++i)
        for (long g = 0; g < G.n; ++g)
            cm.at(i, g) = T.rows[(size_t)i][(size_t)T.class_of[(size_t)g]];
    if (mat_det(cm).is_zero())
        throw std::logic_error("abelian_det_injectivity_check: singular character matrix");
    // Randomized unit pairs stay separated.
    std::mt19937_64 rng(mix_seed(seed, 17));
    auto draw_unit = [&]() -> CVec {
        for (int attempt = 0; attempt < 64; ++attempt) {
            CVec z((size_t)G.n, Cyclo());
            for (long g = 0; g < G.n; ++g) z[(size_t)g] = Cyclo((long)draw_mod(rng, 7) - 3);
            bool unit = true;
            for (long i = 0; i < G.n && unit; ++i) {
                Cyclo val;
                for (long g = 0; g < G.n; ++g)
                    val += z[(size_t)g] * T.rows[(size_t)i][(size_t)T.class_of[(size_t)g]];
                if (val.is_zero()) unit = false;
            }
            if (unit) return z;
        }
        throw std::runtime_error("abelian_det_injectivity_check: no unit drawn");
    };
    for (int trial = 0; trial < 8; ++trial) {
        CVec z = draw_unit(), w = draw_unit();
        if (z == w) continue;
        if (det_map(T, reps, z) == det_map(T, reps, w))
            throw std::runtime_error("abelian_det_injectivity_check: sampled units collide");
    }
}

SigmaSplitChar0 sigma_components_char0(const CharacterTable& T, long m) {
    if (T.G.n % 2 == 0)
        throw std::invalid_argument("sigma_components_char0: odd group order required");
    if (m < 1) throw std::invalid_argument("sigma_components_char0: matrix level");
    SigmaSplitChar0 out;
    out.m = m;
    for (long i = 0; i < T.num_classes(); ++i) {
        long j = conjugate_row(T, i);
        bool trivial = T.degrees[(size_t)i] == 1;
        if (trivial)
            for (long c = 0; c < T.num_classes(); ++c)
                if (!(T.rows[(size_t)i][(size_t)c] == Cyclo(1))) {
                    trivial = false;
                    break;
                }
        if (trivial) {
            if (j != i) throw std::logic_error("sigma_components_char0: trivial row moved");
            if (out.trivial_row >= 0)
                throw std::logic_error("sigma_components_char0: two trivial rows");
            out.trivial_row = i;
            continue;
        }
        if (j == i)
            throw std::logic_error(
                "sigma_components_char0: self-paired nontrivial character at odd order");
        if (i < j) out.split_pairs.emplace_back(i, j);
    }
    if (out.trivial_row < 0)
        throw std::logic_error("sigma_components_char0: no trivial row");
    if (1 + 2 * (long)out.split_pairs.size() != T.num_classes())
        throw std::logic_error("sigma_components_char0: orbit sizes do not add up");
    return out;
}

// ------------------------------------------------------------------
// reduced case: field presentations of the canonical simples

const char* involution_kind_name(InvolutionKind k) {
    switch (k) {
        case InvolutionKind::orthogonal: return "orthogonal";
        case InvolutionKind::unitary: return "unitary";
        case InvolutionKind::symplectic: return "symplectic";
        case InvolutionKind::swap: return "swap";
    }
    return "?";
}

namespace {

// Presentation of one simple over its endomorphism field.
DetComponent present_simple(const FDAlgebra& A, const AlgModule& S, std::uint64_t seed) {
    DetComponent cp;
    std::vector<Mat<FFElt>> ends = hom_space_basis(A, S, S);
    const long d = (long)ends.size();
    if (d <= 0) throw std::logic_error("present_simple: empty endomorphism algebra");
    if (d == 1) {
        cp.k = A.k;
        cp.n = S.dim;
        cp.end_deg = 1;
        cp.rho = S.action;
        return cp;
    }
    if (A.k.degree() != 1)
        throw std::invalid_argument(
            "present_simple: non-prime base field with non-scalar endomorphisms");
    const long p = A.k.p();
    // generator of the endomorphism field: minimal polynomial of full degree
    Mat<FFElt> lambda(0, 0, A.k.zero());
    FFPoly mp;
    std::mt19937_64 rng(mix_seed(seed, 29));
    bool found = false;
    for (int attempt = 0; attempt < 64 + d && !found; ++attempt) {
        Mat<FFElt> cand(S.dim, S.dim, A.k.zero());
        if (attempt < d)
            cand = ends[(size_t)attempt];
        else
            for (long t = 0; t < d; ++t)
                cand = mat_add(cand, mat_scale(A.k.from_int((long)draw_mod(rng, (unsigned long)p)),
                                               ends[(size_t)t]));
        FFPoly f = matrix_min_poly(A.k, cand);
        if (ffpoly_deg(f) != d) continue;
        if (!ffpoly_is_irreducible(A.k, f))
            throw std::logic_error("present_simple: endomorphisms do not form a field");
        lambda = std::move(cand);
        mp = std::move(f);
        found = true;
    }
    if (!found) throw std::runtime_error("present_simple: no endomorphism field generator");
    if (S.dim % d != 0) throw std::logic_error("present_simple: dimension not divisible");
    const long n = S.dim / d;
    cp.k = FF(p, d);
    cp.n = n;
    cp.end_deg = d;
    // root of the generator's minimal polynomial in the canonical field copy
    FFPoly lifted;
    for (const auto& c : mp) lifted.push_back(cp.k.from_int(c.coeffs()[0]));
    std::vector<FFElt> roots = ffpoly_roots(cp.k, lifted, mix_seed(seed, 31));
    if (roots.empty()) throw std::logic_error("present_simple: minimal polynomial has no root");
    std::sort(roots.begin(), roots.end());
    const FFElt r = roots[0];
    // greedy field-basis of the module: v_s with {lambda^t v_s} independent
    std::vector<std::vector<FFElt>> base_vecs;
    std::vector<std::vector<FFElt>> cols;  // lambda^t v_s in order (s, t)
    for (long c = 0; c < S.dim && (long)base_vecs.size() < n; ++c) {
        std::vector<FFElt> v = ffvec_zero(A.k, S.dim);
        v[(size_t)c] = A.k.one();
        std::vector<std::vector<FFElt>> trial = cols;
        std::vector<FFElt> w = v;
        for (long t = 0; t < d; ++t) {
            trial.push_back(w);
            w = mat_apply(lambda, w);
        }
        Mat<FFElt> m((long)trial.size(), S.dim, A.k.zero());
        for (size_t i = 0; i < trial.size(); ++i)
            for (long j = 0; j < S.dim; ++j) m.at((long)i, j) = trial[i][(size_t)j];
        if (mat_rank(std::move(m)) == (long)trial.size()) {
            base_vecs.push_back(std::move(v));
            cols = std::move(trial);
        }
    }
    if ((long)base_vecs.size() != n)
        throw std::logic_error("present_simple: no field basis found");
    Mat<FFElt> B(S.dim, S.dim, A.k.zero());
    for (long s = 0; s < n; ++s)
        for (long t = 0; t < d; ++t)
            for (long j = 0; j < S.dim; ++j)
                B.at(j, s * d + t) = cols[(size_t)(s * d + t)][(size_t)j];
    auto Binv = mat_inverse(B);
    if (!Binv) throw std::logic_error("present_simple: field basis is singular");
    // powers of the chosen root
    std::vector<FFElt> rpow;
    FFElt acc = cp.k.one();
    for (long t = 0; t < d; ++t) {
        rpow.push_back(acc);
        acc *= r;
    }
    for (long j = 0; j < A.dim; ++j) {
        Mat<FFElt> rj(n, n, cp.k.zero());
        for (long s = 0; s < n; ++s) {
            std::vector<FFElt> w = mat_apply(S.action[(size_t)j], base_vecs[(size_t)s]);
            std::vector<FFElt> y = mat_apply(*Binv, w);
            for (long s2 = 0; s2 < n; ++s2) {
                FFElt val = cp.k.zero();
                for (long t = 0; t < d; ++t)
                    val += cp.k.from_int(y[(size_t)(s2 * d + t)].coeffs()[0]) * rpow[(size_t)t];
                rj.at(s2, s) = val;
            }
        }
        cp.rho.push_back(std::move(rj));
    }
    return cp;
}

void verify_presentation(const FDAlgebra& A, const DetComponent& cp) {
    // unital
    Mat<FFElt> u(cp.n, cp.n, cp.k.zero());
    for (long j = 0; j < A.dim; ++j) {
        if (A.unit[(size_t)j].is_zero()) continue;
        u = mat_add(u, mat_scale(emb_scalar(A.unit[(size_t)j], cp.k), cp.rho[(size_t)j]));
    }
    if (!mat_is_identity(u)) throw std::logic_error("det presentation: unit fails");
    // multiplicative on every basis pair
    for (long a = 0; a < A.dim; ++a)
        for (long b = 0; b < A.dim; ++b) {
            Mat<FFElt> lhs = mat_mul(cp.rho[(size_t)a], cp.rho[(size_t)b]);
            Mat<FFElt> rhs(cp.n, cp.n, cp.k.zero());
            for (long t = 0; t < A.dim; ++t) {
                const FFElt& c = A.mult[(size_t)a].at(t, b);
                if (c.is_zero()) continue;
                rhs = mat_add(rhs, mat_scale(emb_scalar(c, cp.k), cp.rho[(size_t)t]));
            }
            if (lhs != rhs)
                throw std::logic_error("det presentation: not multiplicative");
        }
}

SigmaLink link_simple(const FDAlgebra& A, const std::vector<DetComponent>& comps, long i,
                      long pair) {
    const DetComponent& ci = comps[(size_t)i];
    const DetComponent& cpair = comps[(size_t)pair];
    if (ci.n != cpair.n || ci.k.size() != cpair.k.size())
        throw std::logic_error("sigma link: paired components of different shapes");
    const long n = ci.n;
    const long deg = ci.k.degree();
    // images of the involution of every basis element under rho_i
    std::vector<Mat<FFElt>> rho_sig;
    for (long j = 0; j < A.dim; ++j) {
        std::vector<FFElt> sj(A.dim, A.k.zero());
        for (long t = 0; t < A.dim; ++t) sj[(size_t)t] = A.involution->at(t, j);
        rho_sig.push_back(rho_of(ci, sj));
    }
    SigmaLink link;
    link.pair = pair;
    bool found = false;
    // The involution is linear over the algebra's base field, so the twist on
    // the component field must fix the base field.
    const long base_deg = A.k.degree();
    for (long s = 0; s < deg; s += base_deg) {
        // solve  rho_i(sigma e_j) U = U tau^s(rho_pair(e_j))^T  for all j
        Mat<FFElt> sys(A.dim * n * n, n * n, ci.k.zero());
        long eq = 0;
        for (long j = 0; j < A.dim; ++j) {
            const Mat<FFElt>& L = rho_sig[(size_t)j];
            Mat<FFElt> R = mat_transpose(mat_pow_p_entrywise(cpair.rho[(size_t)j], s));
            for (long r = 0; r < n; ++r)
                for (long c = 0; c < n; ++c) {
                    for (long b = 0; b < n; ++b) {
                        sys.at(eq, b * n + c) += L.at(r, b);
                        sys.at(eq, r * n + b) -= R.at(b, c);
                    }
                    ++eq;
                }
        }
        auto kern = mat_kernel(std::move(sys));
        if (kern.empty()) continue;
        if (kern.size() > 1)
            throw std::logic_error("sigma link: intertwiner space is not a line");
        Mat<FFElt> u(n, n, ci.k.zero());
        for (long r = 0; r < n; ++r)
            for (long c = 0; c < n; ++c) u.at(r, c) = kern[0][(size_t)(r * n + c)];
        if (!mat_inverse(u)) throw std::logic_error("sigma link: witness is singular");
        if (found) throw std::logic_error("sigma link: ambiguous Frobenius twist");
        link.frob = s;
        link.u = std::move(u);
        found = true;
    }
    if (!found) throw std::logic_error("sigma link: no witness found");
    // classification
    if (pair != i) {
        link.kind = InvolutionKind::swap;
        return link;
    }
    const long p = ci.k.p();
    Mat<FFElt> ut = mat_transpose(link.u);
    if (link.frob != 0) {
        link.kind = InvolutionKind::unitary;
        // scale the witness symmetric
        if (ut != link.u) {
            if (ci.k.size() > 4096)
                throw std::runtime_error("sigma link: witness normalization out of reach");
            bool ok = false;
            for (unsigned long ci2 = 1; ci2 < ci.k.size() && !ok; ++ci2) {
                FFElt c = ci.k.from_index(ci2);
                Mat<FFElt> v = mat_scale(c, link.u);
                if (mat_transpose(v) == v) {
                    link.u = std::move(v);
                    ok = true;
                }
            }
            if (!ok) throw std::logic_error("sigma link: no symmetric unitary witness");
        }
        return link;
    }
    if (p == 2) {
        // symmetric equals antisymmetric; alternating means symplectic
        if (ut != link.u) throw std::logic_error("sigma link: witness not (anti)symmetric");
        bool alternating = true;
        for (long r = 0; r < n; ++r)
            if (!link.u.at(r, r).is_zero()) {
                alternating = false;
                break;
            }
        link.kind = alternating ? InvolutionKind::symplectic : InvolutionKind::orthogonal;
        return link;
    }
    if (ut == link.u) {
        link.kind = InvolutionKind::orthogonal;
    } else {
        Mat<FFElt> neg = mat_scale(-ci.k.one(), link.u);
        if (ut != neg) throw std::logic_error("sigma link: witness not (anti)symmetric");
        link.kind = InvolutionKind::symplectic;
    }
    return link;
}

}  // namespace

DetData make_det_data(const ModRepContext& ctx, std::uint64_t seed) {
    const FDAlgebra& A = ctx.A;
    DetData dd;
    dd.p = A.k.p();
    dd.dim = A.dim;
    for (size_t i = 0; i < ctx.simples.size(); ++i) {
        DetComponent cp = present_simple(A, ctx.simples[i].module, mix_seed(seed, 200 + i));
        verify_presentation(A, cp);
        dd.comp.push_back(std::move(cp));
    }
    dd.packable = A.k.degree() == 1;
    for (const auto& cp : dd.comp)
        if (cp.end_deg != 1) dd.packable = false;
    if (A.involution) {
        for (size_t i = 0; i < dd.comp.size(); ++i)
            dd.link.push_back(link_simple(A, dd.comp, (long)i, ctx.duality[(size_t)i]));
        // swapped pairs must point at each other
        for (size_t i = 0; i < dd.link.size(); ++i) {
            long pr = dd.link[i].pair;
            if (dd.link[(size_t)pr].pair != (long)i)
                throw std::logic_error("make_det_data: duality is not an involution");
            if (pr != (long)i && (dd.link[i].kind != InvolutionKind::swap ||
                                  dd.link[(size_t)pr].kind != InvolutionKind::swap))
                throw std::logic_error("make_det_data: swapped pair misclassified");
        }
    }
    return dd;
}

std::vector<FFElt> det_blocks(const DetData& dd, long m,
                              const std::vector<std::vector<FFElt>>& blocks) {
    if ((long)blocks.size() != m * m)
        throw std::invalid_argument("det_blocks: block count");
    for (const auto& b : blocks)
        if ((long)b.size() != dd.dim) throw std::invalid_argument("det_blocks: block size");
    std::vector<FFElt> out;
    for (const auto& cp : dd.comp) {
        const long n = cp.n;
        Mat<FFElt> big(m * n, m * n, cp.k.zero());
        for (long r = 0; r < m; ++r)
            for (long s = 0; s < m; ++s) {
                Mat<FFElt> blk = rho_of(cp, blocks[(size_t)(r * m + s)]);
                for (long a = 0; a < n; ++a)
                    for (long b = 0; b < n; ++b) big.at(r * n + a, s * n + b) = blk.at(a, b);
            }
        out.push_back(mat_det(big));
    }
    return out;
}

std::vector<FFElt> det_ff(const DetData& dd, const std::vector<FFElt>& z) {
    return det_blocks(dd, 1, {z});
}

// ------------------------------------------------------------------
// Wedderburn decomposition with involution

WedderburnData wedderburn_with_involution(const ModRepContext& ctx, const DetData& dd,
                                          std::uint64_t seed, bool forbid_symplectic) {
    const FDAlgebra& A = ctx.A;
    if (ctx.radical_dim != 0)
        throw std::invalid_argument("wedderburn_with_involution: semisimple input required");
    if (!A.involution)
        throw std::invalid_argument("wedderburn_with_involution: involution required");
    if (dd.comp.size() != ctx.simples.size())
        throw std::invalid_argument("wedderburn_with_involution: mismatched det data");
    // center: x with (x e_b)_a = (e_b x)_a for all a, b
    Mat<FFElt> sys(A.dim * A.dim, A.dim, A.k.zero());
    for (long a = 0; a < A.dim; ++a)
        for (long b = 0; b < A.dim; ++b)
            for (long i = 0; i < A.dim; ++i)
                sys.at(a * A.dim + b, i) =
                    A.mult[(size_t)i].at(a, b) - A.mult[(size_t)b].at(a, i);
    std::vector<std::vector<FFElt>> zbasis = mat_kernel(std::move(sys));
    long expected = 0;
    for (const auto& cp : dd.comp) expected += cp.end_deg;
    if ((long)zbasis.size() != expected)
        throw std::logic_error("wedderburn_with_involution: center dimension");
    // split the center into primitive idempotents
    std::mt19937_64 rng(mix_seed(seed, 57));
    std::vector<std::vector<FFElt>> work = {A.unit}, prim;
    while (!work.empty()) {
        std::vector<FFElt> e = std::move(work.back());
        work.pop_back();
        std::vector<std::vector<FFElt>> ez;
        for (const auto& z : zbasis) ez.push_back(fd_mul(A, e, z));
        std::vector<std::vector<FFElt>> ezb = row_space_basis(A.k, ez);
        const long dz = (long)ezb.size();
        if (dz == 1) {
            prim.push_back(std::move(e));
            continue;
        }
        // primitive element of the slice: minimal polynomial of full degree
        std::vector<FFElt> w;
        FFPoly f;
        bool found = false;
        for (int attempt = 0; attempt < 64 + dz && !found; ++attempt) {
            std::vector<FFElt> cand = ffvec_zero(A.k, A.dim);
            if (attempt < dz)
                cand = ezb[(size_t)attempt];
            else
                for (long t = 0; t < dz; ++t) {
                    FFElt c = A.k.from_index(draw_mod(rng, A.k.size()));
                    for (long j = 0; j < A.dim; ++j)
                        cand[(size_t)j] += c * ezb[(size_t)t][(size_t)j];
                }
            // multiplication by cand on the slice, in slice coordinates
            Mat<FFElt> W(dz, dz, A.k.zero());
            for (long ucol = 0; ucol < dz; ++ucol) {
                std::vector<FFElt> prod = fd_mul(A, ezb[(size_t)ucol], cand);
                std::vector<FFElt> co = coords_in_rows(A.k, ezb, prod);
                for (long t = 0; t < dz; ++t) W.at(t, ucol) = co[(size_t)t];
            }
            FFPoly g = matrix_min_poly(A.k, W);
            if (ffpoly_deg(g) != dz) continue;
            w = std::move(cand);
            f = std::move(g);
            found = true;
        }
        if (!found)
            throw std::runtime_error("wedderburn_with_involution: no primitive element");
        FFPoly fd = ffpoly_derivative(A.k, f);
        if (ffpoly_deg(ffpoly_gcd(f, fd)) != 0)
            throw std::logic_error("wedderburn_with_involution: center not separable");
        auto factors = ffpoly_factor(A.k, f, mix_seed(seed, 71));
        if (factors.size() == 1) {
            prim.push_back(std::move(e));
            continue;
        }
        // powers of w inside the slice, with e as the unit
        std::vector<std::vector<FFElt>> pows = {e};
        for (long t = 1; t <= ffpoly_deg(f); ++t)
            pows.push_back(fd_mul(A, pows.back(), w));
        for (const auto& [q, mult] : factors) {
            if (mult != 1)
                throw std::logic_error("wedderburn_with_involution: repeated center factor");
            auto [h, hr] = ffpoly_divmod(f, q);
            if (ffpoly_deg(hr) >= 0)
                throw std::logic_error("wedderburn_with_involution: factor division");
            auto [hq, hmod] = ffpoly_divmod(h, q);
            (void)hq;
            PolyXgcd x = ffpoly_xgcd(A.k, hmod, q);
            if (ffpoly_deg(x.g) != 0)
                throw std::logic_error("wedderburn_with_involution: factors not coprime");
            FFPoly g = ffpoly_mul(h, x.a);
            auto [gq, gmod] = ffpoly_divmod(g, f);
            (void)gq;
            std::vector<FFElt> idem = ffvec_zero(A.k, A.dim);
            for (size_t t = 0; t < gmod.size(); ++t) {
                if (gmod[t].is_zero()) continue;
                for (long j = 0; j < A.dim; ++j)
                    idem[(size_t)j] += gmod[t] * pows[t][(size_t)j];
            }
            if (fd_mul(A, idem, idem) != idem)
                throw std::logic_error("wedderburn_with_involution: split not idempotent");
            bool zero = true;
            for (const auto& c : idem)
                if (!c.is_zero()) {
                    zero = false;
                    break;
                }
            if (zero) throw std::logic_error("wedderburn_with_involution: zero idempotent");
            work.push_back(std::move(idem));
        }
    }
    // orthogonal and complete
    std::vector<FFElt> total = ffvec_zero(A.k, A.dim);
    for (const auto& e : prim)
        for (long j = 0; j < A.dim; ++j) total[(size_t)j] += e[(size_t)j];
    if (total != A.unit)
        throw std::logic_error("wedderburn_with_involution: idempotents not complete");
    for (size_t a = 0; a < prim.size(); ++a)
        for (size_t b = 0; b < prim.size(); ++b) {
            std::vector<FFElt> pr = fd_mul(A, prim[a], prim[b]);
            if (a == b ? pr != prim[a] : !std::all_of(pr.begin(), pr.end(), [](const FFElt& c) {
                    return c.is_zero();
                }))
                throw std::logic_error("wedderburn_with_involution: idempotents not orthogonal");
        }
    // match each idempotent to the simple it acts on as the identity
    if (prim.size() != ctx.simples.size())
        throw std::logic_error("wedderburn_with_involution: component count");
    std::vector<long> simple_of(prim.size(), -1);
    for (size_t c = 0; c < prim.size(); ++c) {
        for (size_t s = 0; s < ctx.simples.size(); ++s) {
            const AlgModule& S = ctx.simples[s].module;
            Mat<FFElt> act(S.dim, S.dim, A.k.zero());
            for (long j = 0; j < A.dim; ++j) {
                if (prim[c][(size_t)j].is_zero()) continue;
                act = mat_add(act, mat_scale(prim[c][(size_t)j], S.action[(size_t)j]));
            }
            bool zero = std::all_of(act.a.begin(), act.a.end(),
                                    [](const FFElt& x) { return x.is_zero(); });
            if (mat_is_identity(act)) {
                if (simple_of[c] >= 0)
                    throw std::logic_error(
                        "wedderburn_with_involution: idempotent acts on two simples");
                simple_of[c] = (long)s;
            } else if (!zero) {
                throw std::logic_error(
                    "wedderburn_with_involution: idempotent acts neither as 0 nor 1");
            }
        }
        if (simple_of[c] < 0)
            throw std::logic_error("wedderburn_with_involution: idempotent acts on no simple");
    }
    // order components like the canonical simples
    std::vector<size_t> order(prim.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return simple_of[a] < simple_of[b]; });
    WedderburnData wd;
    for (size_t t = 0; t < order.size(); ++t) {
        size_t c = order[t];
        if (t > 0 && simple_of[order[t - 1]] == simple_of[c])
            throw std::logic_error("wedderburn_with_involution: two components per simple");
        WedderburnComponent wc;
        wc.idempotent = prim[c];
        wc.simple_index = simple_of[c];
        wc.n = dd.comp[(size_t)simple_of[c]].n;
        wc.field_deg = dd.comp[(size_t)simple_of[c]].end_deg * A.k.degree();
        wd.comp.push_back(std::move(wc));
    }
    long dimsum = 0;
    for (const auto& wc : wd.comp) dimsum += wc.n * wc.n * wc.field_deg / A.k.degree();
    if (dimsum != A.dim)
        throw std::logic_error("wedderburn_with_involution: dimension accounting");
    // involution permutes the idempotents
    for (size_t t = 0; t < wd.comp.size(); ++t) {
        std::vector<FFElt> se = fd_involve(A, wd.comp[t].idempotent);
        long target = -1;
        for (size_t u = 0; u < wd.comp.size(); ++u)
            if (se == wd.comp[u].idempotent) {
                target = (long)u;
                break;
            }
        if (target < 0)
            throw std::logic_error(
                "wedderburn_with_involution: involution does not permute idempotents");
        wd.sigma_perm.push_back(target);
        if (ctx.duality[(size_t)wd.comp[t].simple_index] != wd.comp[(size_t)target].simple_index)
            throw std::logic_error(
                "wedderburn_with_involution: involution disagrees with duality");
        InvolutionKind kind = dd.link[(size_t)wd.comp[t].simple_index].kind;
        if (forbid_symplectic && kind == InvolutionKind::symplectic)
            throw std::runtime_error("wedderburn_with_involution: symplectic component found");
        wd.kind.push_back(kind);
    }
    return wd;
}

// ------------------------------------------------------------------
// exhaustive scans

namespace {

struct BlockScratch {
    long m = 0;
    std::vector<std::vector<FFElt>> sig, prod;
};

bool blocks_unitary(const FDAlgebra& A, long m, const std::vector<std::vector<FFElt>>& blocks,
                    BlockScratch& scratch, std::vector<std::vector<FFElt>>& prod_out) {
    (void)scratch;
    const long dim = A.dim;
    std::vector<std::vector<FFElt>> sig((size_t)(m * m));
    for (long r = 0; r < m; ++r)
        for (long s = 0; s < m; ++s)
            sig[(size_t)(r * m + s)] = fd_involve(A, blocks[(size_t)(s * m + r)]);
    prod_out.assign((size_t)(m * m), ffvec_zero(A.k, dim));
    for (long r = 0; r < m; ++r)
        for (long s = 0; s < m; ++s) {
            std::vector<FFElt>& acc = prod_out[(size_t)(r * m + s)];
            for (long t = 0; t < m; ++t) {
                std::vector<FFElt> term =
                    fd_mul(A, blocks[(size_t)(r * m + t)], sig[(size_t)(t * m + s)]);
                for (long j = 0; j < dim; ++j) acc[(size_t)j] += term[(size_t)j];
            }
        }
    for (long r = 0; r < m; ++r)
        for (long s = 0; s < m; ++s) {
            const std::vector<FFElt>& blk = prod_out[(size_t)(r * m + s)];
            if (r == s) {
                if (blk != A.unit) return false;
            } else {
                for (const auto& c : blk)
                    if (!c.is_zero()) return false;
            }
        }
    return true;
}

// machine-word tables for the packed scan (prime field, split components)
struct PackedTables {
    long p = 0, dim = 0;
    std::vector<long> mult;   // [(i*dim + j)*dim + t]: e_t coeff of e_i e_j
    std::vector<long> invol;  // [t*dim + j]: e_t coeff of sigma(e_j)
    std::vector<long> unit;
    struct Comp {
        long n = 0;
        std::vector<long> rho;  // [(a*n + b)*dim + j]
    };
    std::vector<Comp> comp;
};

PackedTables pack_tables(const FDAlgebra& A, const DetData& dd) {
    PackedTables t;
    t.p = A.k.p();
    t.dim = A.dim;
    t.mult.assign((size_t)(A.dim * A.dim * A.dim), 0);
    for (long i = 0; i < A.dim; ++i)
        for (long j = 0; j < A.dim; ++j)
            for (long tt = 0; tt < A.dim; ++tt)
                t.mult[(size_t)((i * A.dim + j) * A.dim + tt)] =
                    A.mult[(size_t)i].at(tt, j).coeffs()[0];
    t.invol.assign((size_t)(A.dim * A.dim), 0);
    for (long tt = 0; tt < A.dim; ++tt)
        for (long j = 0; j < A.dim; ++j)
            t.invol[(size_t)(tt * A.dim + j)] = A.involution->at(tt, j).coeffs()[0];
    for (long j = 0; j < A.dim; ++j) t.unit.push_back(A.unit[(size_t)j].coeffs()[0]);
    for (const auto& cp : dd.comp) {
        PackedTables::Comp c;
        c.n = cp.n;
        c.rho.assign((size_t)(cp.n * cp.n * A.dim), 0);
        for (long a = 0; a < cp.n; ++a)
            for (long b = 0; b < cp.n; ++b)
                for (long j = 0; j < A.dim; ++j)
                    c.rho[(size_t)((a * cp.n + b) * A.dim + j)] =
                        cp.rho[(size_t)j].at(a, b).coeffs()[0];
        t.comp.push_back(std::move(c));
    }
    return t;
}

// determinant of a small matrix modulo p; destroys its argument
long small_det_mod(std::vector<long>& m, long n, long p) {
    long det = 1;
    for (long c = 0; c < n; ++c) {
        long piv = -1;
        for (long r = c; r < n; ++r)
            if (m[(size_t)(r * n + c)] % p != 0) {
                piv = r;
                break;
            }
        if (piv < 0) return 0;
        if (piv != c) {
            for (long t = 0; t < n; ++t)
                std::swap(m[(size_t)(piv * n + t)], m[(size_t)(c * n + t)]);
            det = (p - det) % p;
        }
        const long d = m[(size_t)(c * n + c)] % p;
        det = det * d % p;
        // inverse of d mod p
        long inv = 1, base = d, e = p - 2;
        while (e) {
            if (e & 1) inv = inv * base % p;
            base = base * base % p;
            e >>= 1;
        }
        for (long r = c + 1; r < n; ++r) {
            const long f = m[(size_t)(r * n + c)] % p * inv % p;
            if (!f) continue;
            for (long t = c; t < n; ++t) {
                long& x = m[(size_t)(r * n + t)];
                x = (x - f * m[(size_t)(c * n + t)]) % p;
                if (x < 0) x += p;
            }
        }
    }
    return det % p;
}

}  // namespace

UnitaryEnumeration unitary_enumerate(const ModRepContext& ctx, const DetData& dd, long m,
                                     std::uint64_t bound) {
    const FDAlgebra& A = ctx.A;
    if (!A.involution)
        throw std::invalid_argument("unitary_enumerate: involution required");
    if (m < 1) throw std::invalid_argument("unitary_enumerate: matrix level");
    const unsigned long q = A.k.size();
    const long cells = m * m * A.dim;
    unsigned long total = 1;
    for (long c = 0; c < cells; ++c) {
        if (total > bound / q) {
            std::ostringstream os;
            os << "unitary_enumerate: " << q << "^" << cells << " candidates exceed bound "
               << bound;
            throw std::runtime_error(os.str());
        }
        total *= q;
    }
    std::vector<unsigned long> ones;
    for (const auto& cp : dd.comp) ones.push_back(cp.k.one().index());
    UnitaryEnumeration out;
    out.scanned = total;
    std::set<std::vector<unsigned long>> uset, unitset, minusset;
    out.minus_check_all = true;

    if (total <= (1ull << 14)) {
        std::vector<long> digits((size_t)cells, 0);
        std::vector<std::vector<FFElt>> blocks((size_t)(m * m), ffvec_zero(A.k, A.dim));
        BlockScratch scratch;
        std::vector<std::vector<FFElt>> prod;
        for (unsigned long idx = 0;; ++idx) {
            std::vector<FFElt> dets = det_blocks(dd, m, blocks);
            bool unit = true;
            for (const auto& d : dets)
                if (d.is_zero()) {
                    unit = false;
                    break;
                }
            if (unit) {
                ++out.units;
                std::vector<unsigned long> tup = tuple_of(dets);
                unitset.insert(tup);
                const bool unitary = blocks_unitary(A, m, blocks, scratch, prod);
                if (unitary) {
                    ++out.order;
                    uset.insert(tup);
                    if (m == 1) out.u_elements.push_back(blocks[0]);
                }
                const bool in_minus = tuple_of(det_blocks(dd, m, prod)) == ones;
                if (in_minus) minusset.insert(tup);
                if (unitary && !in_minus) out.minus_check_all = false;
            }
            if (idx + 1 == total) break;
            // odometer step
            long c = 0;
            while (true) {
                digits[(size_t)c] += 1;
                if (digits[(size_t)c] < (long)q) break;
                digits[(size_t)c] = 0;
                blocks[(size_t)(c / A.dim)][(size_t)(c % A.dim)] = A.k.zero();
                ++c;
            }
            blocks[(size_t)(c / A.dim)][(size_t)(c % A.dim)] =
                A.k.from_index((unsigned long)digits[(size_t)c]);
        }
    } else {
        if (!dd.packable)
            throw std::runtime_error(
                "unitary_enumerate: scan too large for the generic element type");
        const PackedTables pt = pack_tables(A, dd);
        const long p = pt.p, dim = pt.dim;
        std::vector<long> digits((size_t)cells, 0);
        const long nc = (long)pt.comp.size();
        std::vector<long> detbuf;
        std::vector<long> sig((size_t)(m * m * dim), 0), prod((size_t)(m * m * dim), 0);
        std::vector<unsigned long> tup((size_t)nc, 0), ptup((size_t)nc, 0);
        auto block = [&](const std::vector<long>& v, long r, long s) {
            return v.data() + (size_t)((r * m + s) * dim);
        };
        auto dets_of = [&](const std::vector<long>& v, std::vector<unsigned long>& res) {
            for (long ci = 0; ci < nc; ++ci) {
                const auto& cp = pt.comp[(size_t)ci];
                const long n = cp.n, mn = m * n;
                detbuf.assign((size_t)(mn * mn), 0);
                for (long r = 0; r < m; ++r)
                    for (long s = 0; s < m; ++s) {
                        const long* b = block(v, r, s);
                        for (long a = 0; a < n; ++a)
                            for (long bb = 0; bb < n; ++bb) {
                                long acc = 0;
                                const long* row = cp.rho.data() + (size_t)((a * n + bb) * dim);
                                for (long j = 0; j < dim; ++j) acc += row[j] * b[j];
                                detbuf[(size_t)((r * n + a) * mn + s * n + bb)] = acc % p;
                            }
                    }
                res[(size_t)ci] = (unsigned long)small_det_mod(detbuf, mn, p);
                if (res[(size_t)ci] == 0) return false;
            }
            return true;
        };
        for (unsigned long idx = 0;; ++idx) {
            if (dets_of(digits, tup)) {
                ++out.units;
                std::vector<unsigned long> tv(tup.begin(), tup.end());
                unitset.insert(tv);
                // sigma blocks
                for (long r = 0; r < m; ++r)
                    for (long s = 0; s < m; ++s) {
                        const long* src = block(digits, s, r);
                        long* dst = sig.data() + (size_t)((r * m + s) * dim);
                        for (long t = 0; t < dim; ++t) {
                            long acc = 0;
                            const long* row = pt.invol.data() + (size_t)(t * dim);
                            for (long j = 0; j < dim; ++j) acc += row[j] * src[j];
                            dst[t] = acc % p;
                        }
                    }
                // product blocks
                std::fill(prod.begin(), prod.end(), 0);
                for (long r = 0; r < m; ++r)
                    for (long s = 0; s < m; ++s) {
                        long* dst = prod.data() + (size_t)((r * m + s) * dim);
                        for (long t = 0; t < m; ++t) {
                            const long* x = block(digits, r, t);
                            const long* y = sig.data() + (size_t)((t * m + s) * dim);
                            for (long i = 0; i < dim; ++i) {
                                if (!x[i]) continue;
                                const long* mrow = pt.mult.data() + (size_t)(i * dim * dim);
                                for (long j = 0; j < dim; ++j) {
                                    if (!y[j]) continue;
                                    const long c = x[i] * y[j] % p;
                                    const long* mt = mrow + (size_t)(j * dim);
                                    for (long tt = 0; tt < dim; ++tt)
                                        dst[tt] = (dst[tt] + c * mt[tt]) % p;
                                }
                            }
                        }
                    }
                bool unitary = true;
                for (long r = 0; r < m && unitary; ++r)
                    for (long s = 0; s < m && unitary; ++s) {
                        const long* blk = prod.data() + (size_t)((r * m + s) * dim);
                        for (long t = 0; t < dim; ++t) {
                            const long want = r == s ? pt.unit[(size_t)t] : 0;
                            if (blk[t] % p != want) {
                                unitary = false;
                                break;
                            }
                        }
                    }
                if (unitary) {
                    ++out.order;
                    uset.insert(tv);
                }
                if (dets_of(prod, ptup)) {
                    bool is_ones = true;
                    for (long ci = 0; ci < nc; ++ci)
                        if (ptup[(size_t)ci] != ones[(size_t)ci]) {
                            is_ones = false;
                            break;
                        }
                    if (is_ones) minusset.insert(tv);
                    if (unitary && !is_ones) out.minus_check_all = false;
                } else if (unitary) {
                    out.minus_check_all = false;
                }
            }
            if (idx + 1 == total) break;
            long c = 0;
            while (true) {
                digits[(size_t)c] += 1;
                if (digits[(size_t)c] < p) break;
                digits[(size_t)c] = 0;
                ++c;
            }
        }
    }
    out.u_det_image.assign(uset.begin(), uset.end());
    out.unit_det_image.assign(unitset.begin(), unitset.end());
    out.minus_det_image.assign(minusset.begin(), minusset.end());
    if (out.order != 0 && out.u_det_image.empty())
        throw std::logic_error("unitary_enumerate: inconsistent image");
    return out;
}

void require_same_det_image(const std::vector<std::vector<unsigned long>>& a,
                            const std::vector<std::vector<unsigned long>>& b,
                            const std::string& what) {
    if (a == b) return;
    std::ostringstream os;
    os << what << ": determinant images differ (" << a.size() << " vs " << b.size()
       << " values)";
    throw std::runtime_error(os.str());
}

void require_minus_equality(const DetData& dd, const UnitaryEnumeration& e,
                            bool require_trivial) {
    if (!e.minus_check_all)
        throw std::logic_error("require_minus_equality: a unitary element failed the "
                               "minus membership test");
    require_same_det_image(e.u_det_image, e.minus_det_image,
                           "Det(U) against Det(units)_minus");
    if (require_trivial) {
        std::vector<unsigned long> ones;
        for (const auto& cp : dd.comp) ones.push_back(cp.k.one().index());
        if (e.u_det_image != std::vector<std::vector<unsigned long>>{ones})
            throw std::runtime_error("require_minus_equality: expected the trivial image");
    }
}

SqueezeReport verify_det_reduction_squeeze(const ModRepContext& ctx, const DetData& dd,
                                           long m, std::uint64_t bound) {
    const FDAlgebra& A = ctx.A;
    if (m < 2) throw std::invalid_argument("verify_det_reduction_squeeze: level must be > 1");
    UnitaryEnumeration base = unitary_enumerate(ctx, dd, 1, bound);
    if (base.u_elements.size() != base.order)
        throw std::runtime_error(
            "verify_det_reduction_squeeze: base level too large to certify");
    // lower end: diag(u, 1, ..., 1) is unitary at level m with the same dets
    std::set<std::vector<unsigned long>> lower;
    BlockScratch scratch;
    std::vector<std::vector<FFElt>> prod;
    for (const auto& u : base.u_elements) {
        std::vector<std::vector<FFElt>> blocks((size_t)(m * m), ffvec_zero(A.k, A.dim));
        blocks[0] = u;
        for (long r = 1; r < m; ++r) blocks[(size_t)(r * m + r)] = A.unit;
        if (!blocks_unitary(A, m, blocks, scratch, prod))
            throw std::logic_error(
                "verify_det_reduction_squeeze: diagonal embedding not unitary");
        std::vector<unsigned long> td = tuple_of(det_blocks(dd, m, blocks));
        if (td != tuple_of(det_ff(dd, u)))
            throw std::logic_error(
                "verify_det_reduction_squeeze: embedding changed the determinant");
        lower.insert(std::move(td));
    }
    std::vector<std::vector<unsigned long>> lower_v(lower.begin(), lower.end());
    require_same_det_image(lower_v, base.u_det_image,
                           "verify_det_reduction_squeeze: embedded image");
    // upper end: tuples satisfying det_i(v) tau^s(det_pair(v)) = 1, which every
    // unitary element of every matrix level obeys because the sigma links hold
    // on the whole basis
    if (dd.link.empty())
        throw std::invalid_argument("verify_det_reduction_squeeze: involution required");
    std::vector<std::vector<unsigned long>> partial = {{}};
    std::vector<long> comp_order;  // orbit representatives in index order
    std::vector<bool> seen(dd.comp.size(), false);
    for (size_t i = 0; i < dd.comp.size(); ++i) {
        if (seen[i]) continue;
        seen[i] = true;
        long pr = dd.link[i].pair;
        if (pr != (long)i) seen[(size_t)pr] = true;
        comp_order.push_back((long)i);
    }
    // positions of each component in the final tuple are just their indices;
    // build tuples component-orbit by component-orbit
    std::set<std::vector<unsigned long>> upper;
    std::vector<unsigned long> tup(dd.comp.size(), 0);
    std::function<void(size_t)> rec = [&](size_t oi) {
        if (oi == comp_order.size()) {
            upper.insert(tup);
            return;
        }
        long i = comp_order[oi];
        long pr = dd.link[(size_t)i].pair;
        const FF& k = dd.comp[(size_t)i].k;
        for (unsigned long vi = 1; vi < k.size(); ++vi) {
            FFElt v = k.from_index(vi);
            if (pr == i) {
                if (!(v * v.pow_p(dd.link[(size_t)i].frob)).is_one()) continue;
                tup[(size_t)i] = vi;
                rec(oi + 1);
            } else {
                // det at the partner is forced by the relation at i...
                FFElt w = v.inverse().pow_p(-dd.link[(size_t)i].frob);
                // ...and must satisfy the relation at the partner too
                if (!(w * v.pow_p(dd.link[(size_t)pr].frob)).is_one())
                    throw std::logic_error(
                        "verify_det_reduction_squeeze: sigma links inconsistent");
                tup[(size_t)i] = vi;
                tup[(size_t)pr] = w.index();
                rec(oi + 1);
            }
        }
    };
    rec(0);
    std::vector<std::vector<unsigned long>> upper_v(upper.begin(), upper.end());
    require_same_det_image(base.u_det_image, upper_v,
                           "verify_det_reduction_squeeze: squeeze ends");
    return {base.order, (unsigned long)upper_v.size()};
}

// ------------------------------------------------------------------
// plus part of 1 + radical

PlusPartReport plus_part_square_check(const FDAlgebra& A, std::uint64_t bound) {
    if (!A.involution)
        throw std::invalid_argument("plus_part_square_check: involution required");
    const long p = A.k.p();
    if (A.k.degree() != 1 || p == 2)
        throw std::invalid_argument("plus_part_square_check: odd prime field required");
    std::vector<std::vector<FFElt>> J = radical_basis(A);
    const long jd = (long)J.size();
    unsigned long total = 1;
    for (long t = 0; t < jd; ++t) {
        if (total > bound / (unsigned long)p)
            throw std::runtime_error("plus_part_square_check: scan exceeds bound");
        total *= (unsigned long)p;
    }
    // sigma stability of the radical
    for (const auto& j : J)
        (void)coords_in_rows(A.k, row_space_basis(A.k, J), fd_involve(A, j));
    auto key_of = [](const std::vector<FFElt>& v) {
        std::vector<unsigned long> k;
        k.reserve(v.size());
        for (const auto& c : v) k.push_back(c.index());
        return k;
    };
    std::set<std::vector<unsigned long>> plus, squares;
    std::vector<long> digits((size_t)jd, 0);
    for (unsigned long idx = 0;; ++idx) {
        std::vector<FFElt> x = A.unit;
        for (long t = 0; t < jd; ++t) {
            if (!digits[(size_t)t]) continue;
            FFElt c = A.k.from_int(digits[(size_t)t]);
            for (long j = 0; j < A.dim; ++j) x[(size_t)j] += c * J[(size_t)t][(size_t)j];
        }
        std::vector<FFElt> sx = fd_involve(A, x);
        if (sx == x) plus.insert(key_of(x));
        std::vector<FFElt> sq = fd_mul(A, x, sx);
        if (fd_involve(A, sq) != sq)
            throw std::logic_error("plus_part_square_check: square is not fixed");
        squares.insert(key_of(sq));
        if (idx + 1 == total) break;
        long c = 0;
        while (true) {
            digits[(size_t)c] += 1;
            if (digits[(size_t)c] < p) break;
            digits[(size_t)c] = 0;
            ++c;
        }
    }
    if (plus != squares)
        throw std::runtime_error("plus_part_square_check: the two sets differ");
    return {total, (unsigned long)plus.size()};
}

// ------------------------------------------------------------------
// small constructors

FDAlgebra field_fdalgebra(long p, long d, bool conjugation) {
    if (d < 1) throw std::invalid_argument("field_fdalgebra: degree");
    if (conjugation && d % 2 != 0)
        throw std::invalid_argument("field_fdalgebra: conjugation needs even degree");
    FF E(p, d);
    FDAlgebra A;
    A.k = FF(p, 1);
    A.dim = d;
    {
        std::ostringstream os;
        os << "F" << E.size() << (conjugation ? "bar" : "");
        A.id = os.str();
    }
    std::vector<FFElt> xpow;  // x^i in the big field, i < 2d-1
    FFElt acc = E.one();
    for (long i = 0; i <= 2 * (d - 1); ++i) {
        xpow.push_back(acc);
        acc *= E.gen();
    }
    for (long i = 0; i < d; ++i) {
        Mat<FFElt> mi(d, d, A.k.zero());
        for (long j = 0; j < d; ++j) {
            const std::vector<long>& co = xpow[(size_t)(i + j)].coeffs();
            for (long r = 0; r < d; ++r) mi.at(r, j) = A.k.from_int(co[(size_t)r]);
        }
        A.mult.push_back(std::move(mi));
    }
    A.unit = ffvec_zero(A.k, d);
    A.unit[0] = A.k.one();
    A.generators = {d > 1 ? 1 : 0};
    Mat<FFElt> inv(d, d, A.k.zero());
    for (long j = 0; j < d; ++j) {
        FFElt img = conjugation ? xpow[(size_t)j].pow_p(d / 2) : xpow[(size_t)j];
        const std::vector<long>& co = img.coeffs();
        for (long r = 0; r < d; ++r) inv.at(r, j) = A.k.from_int(co[(size_t)r]);
    }
    A.involution = std::move(inv);
    verify_fd_algebra(A);
    return A;
}

}  // namespace hopfforms
