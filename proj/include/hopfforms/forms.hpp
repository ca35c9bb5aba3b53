#pragma once
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "cyclotomic.hpp"
#include "ffield.hpp"
#include "group.hpp"
#include "grpalg.hpp"
#include "localring.hpp"
#include "matrix.hpp"

/*
 * G-equivariant bilinear structures on free rank-m modules over a group
 * algebra K[G], and the torsor algebras whose trace forms feed them.
 *
 * Module coordinates: unless stated otherwise a module point is a column
 * vector of dimension dim = |G|*m, the G-action is a matrix per group
 * element, and a designated K[G]-basis E_0..E_{m-1} is stored so that
 * {g.E_i} is a K-basis.  The "standard" module has coordinates indexed by
 * (g, i) -> g*m + i, translation action, and E_i the unit vector at (1, i).
 *
 * Scalars S are Cyclo (characteristic zero, local integrality questions
 * against a LocalRing) or FFElt (finite shadows).  Group-algebra values use
 * the grpalg coefficient-vector conventions; the involution is ga_bar.
 */

namespace hopfforms {

// ---------------------------------------------------------------------------
// form types

template <class S>
struct GQuadForm {
    FiniteGroup G;
    long rank = 1;                             // m, free rank over K[G]
    std::vector<Mat<S>> action;                // one matrix per group element
    std::vector<std::vector<S>> module_basis;  // m coordinate vectors E_i
    Mat<S> gram;                               // symmetric, G-invariant

    long dim() const { return gram.rows; }
};

// Hermitian companion: values[i][j] = h(E_i, E_j) as a K[G] coefficient
// vector, with values[j][i] its ga_bar image.
template <class S>
struct HermForm {
    FiniteGroup G;
    long rank = 1;
    std::vector<std::vector<std::vector<S>>> values;
};

template <class S>
std::vector<Mat<S>> translation_action(const FiniteGroup& G, long m, const S& one) {
    const long n = G.n;
    std::vector<Mat<S>> act(
        (size_t)n, Mat<S>(n * m, n * m, scalar_zero(one)));
    for (long h = 0; h < n; ++h)
        for (long g = 0; g < n; ++g)
            for (long i = 0; i < m; ++i)
                act[(size_t)h].at(G.mul(h, g) * m + i, g * m + i) = one;
    return act;
}

template <class S>
GQuadForm<S> standard_quad(const FiniteGroup& G, long m, Mat<S> gram) {
    if (gram.rows != G.n * m || gram.cols != G.n * m)
        throw std::invalid_argument("standard_quad: gram shape mismatch");
    const S one = scalar_one(gram.a[0]);
    GQuadForm<S> q{G, m, translation_action(G, m, one), {}, std::move(gram)};
    for (long i = 0; i < m; ++i) {
        std::vector<S> e((size_t)(G.n * m), scalar_zero(one));
        e[(size_t)i] = one;
        q.module_basis.push_back(std::move(e));
    }
    return q;
}

// Columns g.E_i in coordinate order (g, i) -> g*m + i; invertible exactly
// when {g.E_i} is a K-basis of the module.
template <class S>
Mat<S> module_change_matrix(const FiniteGroup& G, const std::vector<Mat<S>>& action,
                            const std::vector<std::vector<S>>& module_basis) {
    const long m = (long)module_basis.size();
    const long d = action.at(0).rows;
    if (G.n * m != d)
        throw std::invalid_argument("module_change_matrix: rank/dimension mismatch");
    Mat<S> T(d, d, scalar_zero(module_basis[0][0]));
    for (long g = 0; g < G.n; ++g)
        for (long i = 0; i < m; ++i) {
            std::vector<S> col = mat_apply(action[(size_t)g], module_basis[(size_t)i]);
            for (long r = 0; r < d; ++r) T.at(r, g * m + i) = col[(size_t)r];
        }
    return T;
}

// Symmetry, G-invariance (on a generating set, hence everywhere), action
// invertibility, and that the module basis generates.  Throws on failure.
template <class S>
void verify_quad_form(const GQuadForm<S>& q) {
    const long d = q.gram.rows;
    if (q.gram.cols != d || (long)q.action.size() != q.G.n ||
        (long)q.module_basis.size() != q.rank || q.G.n * q.rank != d)
        throw std::invalid_argument("verify_quad_form: shape mismatch");
    for (long i = 0; i < d; ++i)
        for (long j = 0; j < i; ++j)
            if (!(q.gram.at(i, j) == q.gram.at(j, i)))
                throw std::runtime_error("verify_quad_form: gram not symmetric");
    for (long g : generating_set(q.G)) {
        const Mat<S>& P = q.action[(size_t)g];
        if (mat_mul(mat_mul(mat_transpose(P), q.gram), P) != q.gram)
            throw std::runtime_error("verify_quad_form: not G-invariant");
    }
    if (!mat_inverse(module_change_matrix(q.G, q.action, q.module_basis)))
        throw std::runtime_error("verify_quad_form: module basis does not generate");
}

template <class S>
void verify_herm_form(const HermForm<S>& h) {
    const long m = h.rank;
    if ((long)h.values.size() != m)
        throw std::invalid_argument("verify_herm_form: shape mismatch");
    for (long i = 0; i < m; ++i) {
        if ((long)h.values[(size_t)i].size() != m)
            throw std::invalid_argument("verify_herm_form: shape mismatch");
        for (long j = 0; j < m; ++j) {
            const auto& v = h.values[(size_t)i][(size_t)j];
            if ((long)v.size() != h.G.n)
                throw std::invalid_argument("verify_herm_form: value length");
            if (ga_bar(h.G, h.values[(size_t)j][(size_t)i]) != v)
                throw std::runtime_error("verify_herm_form: conjugate symmetry fails");
        }
    }
}

template <class S>
S quad_det(const GQuadForm<S>& q) {
    return mat_det(q.gram);
}

// Nondegeneracy of h as the invertibility of x -> h(x, .): the matrix of
// that map over K in the {g.E_i} basis.  Column (g, i), row (t, j) holds the
// coefficient of t in g.h(E_i, E_j).
template <class S>
bool herm_nondegenerate(const HermForm<S>& h) {
    const long n = h.G.n, m = h.rank;
    Mat<S> M(n * m, n * m, scalar_zero(h.values[0][0][0]));
    for (long g = 0; g < n; ++g)
        for (long i = 0; i < m; ++i)
            for (long j = 0; j < m; ++j)
                for (long t = 0; t < n; ++t)
                    M.at(t * m + j, g * m + i) =
                        h.values[(size_t)i][(size_t)j][(size_t)h.G.mul(h.G.inv(g), t)];
    return !scalar_is_zero(mat_det(M));
}

// ---------------------------------------------------------------------------
// the correspondence between quadratic and hermitian G-forms

// h_q(E_i, E_j) = lambda^{-1} * sum_g q(E_i, g.E_j) g.
template <class S>
HermForm<S> quad_to_herm(const GQuadForm<S>& q, const S& lambda) {
    const long n = q.G.n, m = q.rank;
    const S linv = lambda.inverse();
    HermForm<S> h{q.G, m, {}};
    h.values.assign((size_t)m, std::vector<std::vector<S>>(
                                   (size_t)m, std::vector<S>((size_t)n, scalar_zero(lambda))));
    for (long j = 0; j < m; ++j) {
        std::vector<std::vector<S>> gEj((size_t)n);
        for (long g = 0; g < n; ++g)
            gEj[(size_t)g] = mat_apply(q.gram, mat_apply(q.action[(size_t)g],
                                                         q.module_basis[(size_t)j]));
        for (long i = 0; i < m; ++i)
            for (long g = 0; g < n; ++g) {
                S acc = scalar_zero(lambda);
                const auto& col = gEj[(size_t)g];
                for (long r = 0; r < q.dim(); ++r)
                    acc += q.module_basis[(size_t)i][(size_t)r] * col[(size_t)r];
                h.values[(size_t)i][(size_t)j][(size_t)g] = linv * acc;
            }
    }
    return h;
}

// q_h(g.E_i, h.E_j) = lambda * (coefficient of the identity in g h(E_i,E_j) h^{-1})
// = lambda * h(E_i,E_j)_{g^{-1}h}, transported to the given coordinates.
template <class S>
GQuadForm<S> herm_to_quad_on(const FiniteGroup& G, std::vector<Mat<S>> action,
                             std::vector<std::vector<S>> module_basis,
                             const HermForm<S>& h, const S& lambda) {
    const long n = G.n, m = h.rank;
    const long d = n * m;
    Mat<S> Qstd(d, d, scalar_zero(lambda));
    for (long g = 0; g < n; ++g)
        for (long i = 0; i < m; ++i)
            for (long t = 0; t < n; ++t)
                for (long j = 0; j < m; ++j)
                    Qstd.at(g * m + i, t * m + j) =
                        lambda * h.values[(size_t)i][(size_t)j][(size_t)G.mul(G.inv(g), t)];
    Mat<S> T = module_change_matrix(G, action, module_basis);
    if (T == mat_identity(d, scalar_one(lambda)))
        return GQuadForm<S>{G, m, std::move(action), std::move(module_basis),
                            std::move(Qstd)};
    auto Tin = mat_inverse(T);
    if (!Tin) throw std::runtime_error("herm_to_quad: module basis does not generate");
    Mat<S> gram = mat_mul(mat_transpose(*Tin), mat_mul(Qstd, *Tin));
    return GQuadForm<S>{G, m, std::move(action), std::move(module_basis), std::move(gram)};
}

template <class S>
GQuadForm<S> herm_to_quad(const HermForm<S>& h, const S& lambda) {
    const S one = scalar_one(lambda);
    std::vector<std::vector<S>> E;
    for (long i = 0; i < h.rank; ++i) {
        std::vector<S> e((size_t)(h.G.n * h.rank), scalar_zero(lambda));
        e[(size_t)(0 * h.rank + i)] = one;
        E.push_back(std::move(e));
    }
    return herm_to_quad_on(h.G, translation_action(h.G, h.rank, one), std::move(E),
                           h, lambda);
}

// Gram of the form restricted to the R-span of the given rows (rows are
// points in coordinate space): rows * gram * rows^T.
template <class S>
Mat<S> gram_on_rows(const Mat<S>& gram, const Mat<S>& rows) {
    return mat_mul(mat_mul(rows, gram), mat_transpose(rows));
}

// ---------------------------------------------------------------------------
// unit form

// kappa(g, h) = lambda * delta_{g,h} on the rank-one standard module.
template <class S>
GQuadForm<S> unit_form_quad(const FiniteGroup& G, const S& lambda) {
    Mat<S> gram(G.n, G.n, scalar_zero(lambda));
    for (long g = 0; g < G.n; ++g) gram.at(g, g) = lambda;
    return standard_quad(G, 1, std::move(gram));
}

// h_kappa(u, v) = u * bar(v); on the basis element 1 this is the unit of K[G].
template <class S>
HermForm<S> unit_form_herm(const FiniteGroup& G, const S& one) {
    HermForm<S> h{G, 1, {}};
    h.values.assign(1, std::vector<std::vector<S>>(1, ga_unit(G, one)));
    return h;
}

// ---------------------------------------------------------------------------
// randomized invariant forms (exact, seeded)

// Invariant symmetric Gram on the standard module, built directly from its
// orbit data: Q[(g,i)][(t,j)] = C[i][j][g^{-1}t] with C[j][i] = bar(C[i][j]).
// Entries are small integers drawn from rng.
inline GQuadForm<Cyclo> random_invariant_quad(const FiniteGroup& G, long m,
                                              std::mt19937_64& rng) {
    const long n = G.n;
    auto draw = [&rng]() { return Cyclo(Rat((long)draw_mod(rng, 7) - 3)); };
    std::vector<std::vector<std::vector<Cyclo>>> C(
        (size_t)m, std::vector<std::vector<Cyclo>>(
                       (size_t)m, std::vector<Cyclo>((size_t)n, Cyclo(0))));
    for (long i = 0; i < m; ++i) {
        for (long j = i; j < m; ++j)
            for (long t = 0; t < n; ++t) {
                if (i == j && G.inv(t) < t) continue;  // fixed by symmetry below
                C[(size_t)i][(size_t)j][(size_t)t] = draw();
            }
        for (long t = 0; t < n; ++t)
            if (G.inv(t) < t)
                C[(size_t)i][(size_t)i][(size_t)t] =
                    C[(size_t)i][(size_t)i][(size_t)G.inv(t)];
    }
    for (long i = 0; i < m; ++i)
        for (long j = 0; j < i; ++j)
            C[(size_t)i][(size_t)j] = ga_bar(G, C[(size_t)j][(size_t)i]);
    Mat<Cyclo> gram(n * m, n * m, Cyclo(0));
    for (long g = 0; g < n; ++g)
        for (long i = 0; i < m; ++i)
            for (long t = 0; t < n; ++t)
                for (long j = 0; j < m; ++j)
                    gram.at(g * m + i, t * m + j) =
                        C[(size_t)i][(size_t)j][(size_t)G.mul(G.inv(g), t)];
    return standard_quad(G, m, std::move(gram));
}

// Replace the module basis by E_i = u_i (a unit of the group algebra acting
// by right translation coefficients), keeping coordinates and Gram; this
// exercises the change-of-basis path of the correspondence.
inline void shift_module_basis(GQuadForm<Cyclo>& q, const LocalRing& R,
                               std::mt19937_64& rng) {
    const long n = q.G.n;
    for (long i = 0; i < q.rank; ++i) {
        for (int attempt = 0; attempt < 64; ++attempt) {
            std::vector<Cyclo> u((size_t)n);
            for (long g = 0; g < n; ++g)
                u[(size_t)g] = Cyclo(Rat((long)draw_mod(rng, 5) - 2));
            if (R.valuation(mat_det(ga_left_mult_matrix(q.G, u))) != 0) continue;
            std::vector<Cyclo> e((size_t)(n * q.rank), Cyclo(0));
            for (long g = 0; g < n; ++g) e[(size_t)(g * q.rank + i)] = u[(size_t)g];
            q.module_basis[(size_t)i] = std::move(e);
            break;
        }
    }
}

// Hermitian form with values drawn as small R-combinations of the given
// order basis (rows over K[G]); conjugate symmetry is imposed.
inline HermForm<Cyclo> random_herm_over(const FiniteGroup& G, long m,
                                        const Mat<Cyclo>& order_rows,
                                        std::mt19937_64& rng) {
    const long n = G.n;
    auto draw_value = [&]() {
        std::vector<Cyclo> v((size_t)n, Cyclo(0));
        for (long k = 0; k < order_rows.rows; ++k) {
            Cyclo c(Rat((long)draw_mod(rng, 5) - 2));
            for (long t = 0; t < n; ++t) v[(size_t)t] += c * order_rows.at(k, t);
        }
        return v;
    };
    HermForm<Cyclo> h{G, m, {}};
    h.values.assign((size_t)m, std::vector<std::vector<Cyclo>>(
                                   (size_t)m, std::vector<Cyclo>((size_t)n, Cyclo(0))));
    for (long i = 0; i < m; ++i) {
        auto diag = draw_value();
        auto sym = ga_bar(G, diag);
        for (long t = 0; t < n; ++t) diag[(size_t)t] += sym[(size_t)t];
        h.values[(size_t)i][(size_t)i] = diag;
        for (long j = i + 1; j < m; ++j) {
            h.values[(size_t)i][(size_t)j] = draw_value();
            h.values[(size_t)j][(size_t)i] = ga_bar(G, h.values[(size_t)i][(size_t)j]);
        }
    }
    return h;
}

// ---------------------------------------------------------------------------
// torsor algebras

// Finite free commutative algebra with a G-action by algebra automorphisms;
// mult[i] is the multiplication matrix of the i-th basis element.
template <class S>
struct GAlgebra {
    std::string name;
    FiniteGroup G;
    long dim = 0;
    std::vector<Mat<S>> mult;
    std::vector<Mat<S>> action;
    std::vector<S> unit;
};

template <class S>
Mat<S> alg_mult_matrix(const GAlgebra<S>& B, const std::vector<S>& x) {
    Mat<S> M(B.dim, B.dim, scalar_zero(x[0]));
    for (long i = 0; i < B.dim; ++i) {
        if (scalar_is_zero(x[(size_t)i])) continue;
        for (long r = 0; r < B.dim; ++r)
            for (long c = 0; c < B.dim; ++c)
                M.at(r, c) += x[(size_t)i] * B.mult[(size_t)i].at(r, c);
    }
    return M;
}

template <class S>
std::vector<S> alg_mul(const GAlgebra<S>& B, const std::vector<S>& x,
                       const std::vector<S>& y) {
    std::vector<S> out((size_t)B.dim, scalar_zero(x[0]));
    for (long i = 0; i < B.dim; ++i) {
        if (scalar_is_zero(x[(size_t)i])) continue;
        std::vector<S> t = mat_apply(B.mult[(size_t)i], y);
        for (long r = 0; r < B.dim; ++r) out[(size_t)r] += x[(size_t)i] * t[(size_t)r];
    }
    return out;
}

template <class S>
S alg_trace(const GAlgebra<S>& B, const std::vector<S>& x) {
    S tr = scalar_zero(x[0]);
    for (long i = 0; i < B.dim; ++i)
        for (long r = 0; r < B.dim; ++r)
            tr += x[(size_t)i] * B.mult[(size_t)i].at(r, r);
    return tr;
}

template <class S>
std::vector<S> basis_unit_vector(const GAlgebra<S>& B, long i) {
    std::vector<S> e((size_t)B.dim, scalar_zero(B.unit[0]));
    e[(size_t)i] = scalar_one(B.unit[0]);
    return e;
}

// Unit and associativity via the regular representation, plus the G-action
// being algebra automorphisms and a group homomorphism (on generators).
template <class S>
void verify_galgebra(const GAlgebra<S>& B) {
    if ((long)B.mult.size() != B.dim || (long)B.action.size() != B.G.n)
        throw std::invalid_argument("verify_galgebra: shape mismatch");
    const S one = scalar_one(B.unit[0]);
    Mat<S> id = mat_identity(B.dim, one);
    if (alg_mult_matrix(B, B.unit) != id)
        throw std::runtime_error("verify_galgebra: unit fails");
    for (long i = 0; i < B.dim; ++i) {
        for (long j = 0; j < B.dim; ++j) {
            // mult[i]*mult[j] must equal the multiplication matrix of e_i e_j.
            std::vector<S> eij((size_t)B.dim);
            for (long r = 0; r < B.dim; ++r) eij[(size_t)r] = B.mult[(size_t)i].at(r, j);
            if (mat_mul(B.mult[(size_t)i], B.mult[(size_t)j]) != alg_mult_matrix(B, eij))
                throw std::runtime_error("verify_galgebra: not associative");
        }
    }
    std::vector<long> gens = generating_set(B.G);
    for (long g : gens) {
        const Mat<S>& T = B.action[(size_t)g];
        if (!mat_inverse(T)) throw std::runtime_error("verify_galgebra: action singular");
        if (mat_apply(T, B.unit) != B.unit)
            throw std::runtime_error("verify_galgebra: action moves the unit");
        for (long i = 0; i < B.dim; ++i)
            for (long j = 0; j < B.dim; ++j) {
                std::vector<S> eij((size_t)B.dim);
                for (long r = 0; r < B.dim; ++r)
                    eij[(size_t)r] = B.mult[(size_t)i].at(r, j);
                std::vector<S> lhs = mat_apply(T, eij);
                std::vector<S> ecol((size_t)B.dim, scalar_zero(one));
                ecol[(size_t)j] = one;
                std::vector<S> rhs = alg_mul(B, mat_apply(T, basis_unit_vector(B, i)),
                                             mat_apply(T, ecol));
                if (lhs != rhs)
                    throw std::runtime_error("verify_galgebra: action not a ring map");
            }
    }
    for (long g : gens)
        for (long h = 0; h < B.G.n; ++h)
            if (mat_mul(B.action[(size_t)g], B.action[(size_t)h]) !=
                B.action[(size_t)B.G.mul(g, h)])
                throw std::runtime_error("verify_galgebra: action not a homomorphism");
}

// Trace form Tr'(x, y) = lambda^{-1} Tr(xy) on the algebra's own coordinates,
// with the given module basis (a normal-basis generator for rank one).
template <class S>
GQuadForm<S> trace_form(const GAlgebra<S>& B, const S& lambda,
                        const std::vector<std::vector<S>>& module_basis) {
    const S linv = lambda.inverse();
    Mat<S> gram(B.dim, B.dim, scalar_zero(lambda));
    for (long i = 0; i < B.dim; ++i)
        for (long j = 0; j < B.dim; ++j) {
            std::vector<S> eij((size_t)B.dim);
            for (long r = 0; r < B.dim; ++r) eij[(size_t)r] = B.mult[(size_t)i].at(r, j);
            gram.at(i, j) = linv * alg_trace(B, eij);
        }
    return GQuadForm<S>{B.G, (long)module_basis.size(), B.action, module_basis,
                        std::move(gram)};
}

// ---------------------------------------------------------------------------
// group-algebra elements with coefficients in B, and resolvents

// bg[t] = coefficient of group element t, itself a B coordinate vector.
template <class S>
using BG = std::vector<std::vector<S>>;

template <class S>
BG<S> bg_zero(const GAlgebra<S>& B) {
    return BG<S>((size_t)B.G.n, std::vector<S>((size_t)B.dim, scalar_zero(B.unit[0])));
}

template <class S>
BG<S> bg_unit(const GAlgebra<S>& B) {
    BG<S> x = bg_zero(B);
    x[0] = B.unit;
    return x;
}

// Embed a scalar group-algebra element: coefficients times the unit of B.
template <class S>
BG<S> bg_scalar(const GAlgebra<S>& B, const std::vector<S>& u) {
    BG<S> x = bg_zero(B);
    for (long t = 0; t < B.G.n; ++t)
        for (long r = 0; r < B.dim; ++r)
            x[(size_t)t][(size_t)r] = u[(size_t)t] * B.unit[(size_t)r];
    return x;
}

template <class S>
BG<S> bg_mul(const GAlgebra<S>& B, const BG<S>& x, const BG<S>& y) {
    BG<S> out = bg_zero(B);
    for (long u = 0; u < B.G.n; ++u)
        for (long v = 0; v < B.G.n; ++v) {
            std::vector<S> c = alg_mul(B, x[(size_t)u], y[(size_t)v]);
            auto& slot = out[(size_t)B.G.mul(u, v)];
            for (long r = 0; r < B.dim; ++r) slot[(size_t)r] += c[(size_t)r];
        }
    return out;
}

// Index inversion g -> g^{-1}, coefficients untouched.
template <class S>
BG<S> bg_bar(const FiniteGroup& G, const BG<S>& x) {
    BG<S> out(x.size());
    for (long t = 0; t < G.n; ++t) out[(size_t)G.inv(t)] = x[(size_t)t];
    return out;
}

// Left multiplication by the group element h.
template <class S>
BG<S> bg_translate(const FiniteGroup& G, long h, const BG<S>& x) {
    BG<S> out(x.size());
    for (long t = 0; t < G.n; ++t) out[(size_t)G.mul(h, t)] = x[(size_t)t];
    return out;
}

// r(x) = sum_g (g.x) g^{-1}.
template <class S>
BG<S> resolvent(const GAlgebra<S>& B, const std::vector<S>& x) {
    BG<S> r((size_t)B.G.n);
    for (long g = 0; g < B.G.n; ++g)
        r[(size_t)B.G.inv(g)] = mat_apply(B.action[(size_t)g], x);
    return r;
}

// r(h.x) = h r(x) for every h.
template <class S>
bool resolvent_translation_ok(const GAlgebra<S>& B, const std::vector<S>& x) {
    BG<S> r = resolvent(B, x);
    for (long h = 0; h < B.G.n; ++h) {
        BG<S> lhs = resolvent(B, mat_apply(B.action[(size_t)h], x));
        if (lhs != bg_translate(B.G, h, r)) return false;
    }
    return true;
}

// r(x) bar(r(x)) = sum_g Tr(x (g.x)) g.
template <class S>
bool resolvent_square_ok(const GAlgebra<S>& B, const std::vector<S>& x) {
    BG<S> r = resolvent(B, x);
    BG<S> sq = bg_mul(B, r, bg_bar(B.G, r));
    std::vector<S> tr((size_t)B.G.n);
    for (long g = 0; g < B.G.n; ++g)
        tr[(size_t)g] = alg_trace(B, alg_mul(B, x, mat_apply(B.action[(size_t)g], x)));
    return sq == bg_scalar(B, tr);
}

// ---------------------------------------------------------------------------
// torsor certificate (constant group scheme): the map B (x) B -> prod_g B,
// b (x) b' -> (b * g.b')_g, written on the R-basis given by rows, must have
// unit determinant.  Column (i,j), row (g,k).
template <class S>
Mat<S> torsor_matrix_on_rows(const GAlgebra<S>& B, const Mat<S>& rows) {
    const long d = B.dim, n = B.G.n;
    if (rows.rows != d || rows.cols != d)
        throw std::invalid_argument("torsor_matrix_on_rows: basis shape");
    if (n != d)
        throw std::invalid_argument("torsor_matrix_on_rows: needs dim B = |G|");
    auto Rin = mat_inverse(mat_transpose(rows));
    if (!Rin) throw std::invalid_argument("torsor_matrix_on_rows: basis singular");
    Mat<S> M(n * d, d * d, scalar_zero(B.unit[0]));
    std::vector<std::vector<S>> basis((size_t)d);
    for (long i = 0; i < d; ++i) {
        basis[(size_t)i].resize((size_t)d);
        for (long c = 0; c < d; ++c) basis[(size_t)i][(size_t)c] = rows.at(i, c);
    }
    for (long i = 0; i < d; ++i)
        for (long j = 0; j < d; ++j)
            for (long g = 0; g < n; ++g) {
                std::vector<S> val = alg_mul(
                    B, basis[(size_t)i],
                    mat_apply(B.action[(size_t)g], basis[(size_t)j]));
                std::vector<S> coords = mat_apply(*Rin, val);
                for (long k = 0; k < d; ++k)
                    M.at(g * d + k, i * d + j) = coords[(size_t)k];
            }
    return M;
}

template <class S>
S torsor_det(const GAlgebra<S>& B, const Mat<S>& rows) {
    return mat_det(torsor_matrix_on_rows(B, rows));
}

template <class S>
Mat<S> coordinate_rows(const GAlgebra<S>& B) {
    return mat_identity(B.dim, scalar_one(B.unit[0]));
}

// ---------------------------------------------------------------------------
// comparison unitary: scalar group-algebra element theta with
// r(b) = theta * r(b0), certified theta bar(theta) = 1 and normalized so the
// augmentation of theta is +1 (replacing b by -b if needed).

template <class S>
struct ComparisonUnitary {
    std::vector<S> theta;      // scalar coefficients in K[G]
    std::vector<S> generator;  // b after any sign normalization
    bool flipped = false;
};

template <class S>
ComparisonUnitary<S> comparison_unitary(const GAlgebra<S>& B, std::vector<S> b,
                                        const std::vector<S>& b0, const S& lambda) {
    const long n = B.G.n, d = B.dim;
    BG<S> rb = resolvent(B, b);
    BG<S> rb0 = resolvent(B, b0);
    // Precondition: r(lambda^{-1} b) invertible in B_K[G].
    {
        const S linv = lambda.inverse();
        Mat<S> L(n * d, n * d, scalar_zero(lambda));
        for (long u = 0; u < n; ++u) {
            Mat<S> Mu = alg_mult_matrix(B, rb[(size_t)u]);
            for (long v = 0; v < n; ++v) {
                long t = B.G.mul(u, v);
                for (long r = 0; r < d; ++r)
                    for (long c = 0; c < d; ++c)
                        L.at(t * d + r, v * d + c) += linv * Mu.at(r, c);
            }
        }
        if (scalar_is_zero(mat_det(L)))
            throw std::runtime_error(
                "comparison_unitary: generator resolvent is not a unit");
    }
    // Solve r(b) = theta r(b0) for scalar coefficients theta_g:
    // for all (t, c): sum_g theta_g rb0[g^{-1}t][c] = rb[t][c].
    Mat<S> M(n * d, n, scalar_zero(lambda));
    std::vector<S> rhs((size_t)(n * d), scalar_zero(lambda));
    for (long t = 0; t < n; ++t)
        for (long c = 0; c < d; ++c) {
            for (long g = 0; g < n; ++g)
                M.at(t * d + c, g) = rb0[(size_t)B.G.mul(B.G.inv(g), t)][(size_t)c];
            rhs[(size_t)(t * d + c)] = rb[(size_t)t][(size_t)c];
        }
    auto sol = mat_solve(M, rhs);
    if (!sol)
        throw std::runtime_error(
            "comparison_unitary: no scalar comparison between the generators");
    std::vector<S> theta = *sol;
    std::vector<S> uu = ga_mul(B.G, theta, ga_bar(B.G, theta));
    if (uu != ga_unit(B.G, scalar_one(lambda)))
        throw std::runtime_error(
            "comparison_unitary: comparison element is not unitary");
    S eps = ga_eps(theta);
    const S one = scalar_one(lambda);
    bool flipped = false;
    if (!(eps == one)) {
        if (!(eps == -one))
            throw std::runtime_error("comparison_unitary: augmentation not +-1");
        for (auto& c : theta) c = -c;
        for (auto& c : b) c = -c;
        flipped = true;
    }
    return ComparisonUnitary<S>{std::move(theta), std::move(b), flipped};
}

// ---------------------------------------------------------------------------
// concrete algebras and finite searches (forms.cpp)

// Map(G, K) with the translation action; coordinates are the indicator basis.
GAlgebra<Cyclo> map_galgebra(const FiniteGroup& G);

// F_{p^n} as an n-dimensional algebra over F_p, G = C_n acting by Frobenius.
GAlgebra<FFElt> frobenius_galgebra(long p, long n);

// F_4 x F_2 over F_2 with the only possible C_3-action (trivial): not a torsor.
GAlgebra<FFElt> split_plus_field_algebra();

// First x (in field enumeration order) whose G-orbit is a basis.
std::optional<std::vector<FFElt>> find_normal_generator(const GAlgebra<FFElt>& B);

struct SdnbResult {
    bool found = false;
    unsigned long witness_index = 0;
    std::vector<FFElt> witness;  // coordinates in the power basis
    unsigned long searched = 0;
};

// Exhaustive search for x with Tr(x * g.x) = delta_{g,1} in F_{p^n}/F_p.
// Odd n must produce a witness; even n is refused unless allow_even is set.
SdnbResult sdnb_search(long p, long n, bool allow_even, unsigned long bound);

// All witness indices (for orbit and counting checks in the tests).
std::vector<unsigned long> sdnb_all_indices(long p, long n);

struct FFIsometry {
    std::vector<FFElt> u;  // group-algebra coefficients
    bool unitary = false;  // u bar(u) = 1
};

// Exhaustive search for a G-equivariant isometry between two rank-one forms
// over the same finite field, as right multiplication by u in k[G] on the
// standard coordinates obtained from each module basis.
std::optional<FFIsometry> g_isometry_finite(const GQuadForm<FFElt>& q1,
                                            const GQuadForm<FFElt>& q2,
                                            unsigned long bound);

}  // namespace hopfforms
