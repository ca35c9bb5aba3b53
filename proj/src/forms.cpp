#include "hopfforms/forms.hpp"

namespace hopfforms {

GAlgebra<Cyclo> map_galgebra(const FiniteGroup& G) {
    const long n = G.n;
    GAlgebra<Cyclo> B;
    B.name = "Map(" + G.name + ")";
    B.G = G;
    B.dim = n;
    B.mult.assign((size_t)n, Mat<Cyclo>(n, n, Cyclo(0)));
    for (long t = 0; t < n; ++t) B.mult[(size_t)t].at(t, t) = Cyclo(1);
    B.action.assign((size_t)n, Mat<Cyclo>(n, n, Cyclo(0)));
    for (long g = 0; g < n; ++g)
        for (long t = 0; t < n; ++t)
            B.action[(size_t)g].at(G.mul(t, G.inv(g)), t) = Cyclo(1);
    B.unit.assign((size_t)n, Cyclo(1));
    return B;
}

GAlgebra<FFElt> frobenius_galgebra(long p, long n) {
    FF big(p, n);
    FF k(p, 1);
    GAlgebra<FFElt> B;
    B.name = "F" + std::to_string((long)big.size()) + "/F" + std::to_string(p);
    B.G = build_cyclic(n);
    B.dim = n;
    auto to_coords = [&](const FFElt& x) {
        std::vector<FFElt> v((size_t)n, k.zero());
        const auto& c = x.coeffs();
        for (size_t i = 0; i < c.size(); ++i) v[i] = k.from_int(c[i]);
        return v;
    };
    std::vector<FFElt> basis((size_t)n);
    for (long i = 0; i < n; ++i) {
        std::vector<long> c((size_t)n, 0);
        c[(size_t)i] = 1;
        basis[(size_t)i] = big.element(c);
    }
    B.mult.assign((size_t)n, Mat<FFElt>(n, n, k.zero()));
    B.action.assign((size_t)n, Mat<FFElt>(n, n, k.zero()));
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) {
            std::vector<FFElt> prod = to_coords(basis[(size_t)i] * basis[(size_t)j]);
            for (long r = 0; r < n; ++r) B.mult[(size_t)i].at(r, j) = prod[(size_t)r];
        }
    for (long g = 0; g < n; ++g)
        for (long j = 0; j < n; ++j) {
            std::vector<FFElt> img = to_coords(basis[(size_t)j].pow_p(g));
            for (long r = 0; r < n; ++r) B.action[(size_t)g].at(r, j) = img[(size_t)r];
        }
    B.unit = to_coords(big.one());
    return B;
}

GAlgebra<FFElt> split_plus_field_algebra() {
    FF k(2, 1);
    const FFElt z = k.zero(), o = k.one();
    GAlgebra<FFElt> B;
    B.name = "F4xF2/F2";
    B.G = build_cyclic(3);
    B.dim = 3;
    // Basis: e0 = (1, 0), e1 = (t, 0) with t^2 = t + 1 in F_4, e2 = (0, 1).
    B.mult.assign(3, Mat<FFElt>(3, 3, z));
    B.mult[0].at(0, 0) = o;
    B.mult[0].at(1, 1) = o;
    B.mult[1].at(1, 0) = o;
    B.mult[1].at(0, 1) = o;
    B.mult[1].at(1, 1) = o;
    B.mult[2].at(2, 2) = o;
    // The factors are non-isomorphic, so automorphisms preserve them and have
    // order dividing 2; the only C_3-action is trivial.
    B.action.assign(3, mat_identity(3, o));
    B.unit = {o, z, o};
    return B;
}

std::optional<std::vector<FFElt>> find_normal_generator(const GAlgebra<FFElt>& B) {
    const FF k = B.unit[0].field();
    const long n = B.G.n;
    if (B.dim != n) throw std::invalid_argument("find_normal_generator: dim != |G|");
    unsigned long total = 1;
    for (long i = 0; i < B.dim; ++i) total *= k.size();
    for (unsigned long idx = 1; idx < total; ++idx) {
        std::vector<FFElt> x((size_t)B.dim, k.zero());
        unsigned long rem = idx;
        for (long i = 0; i < B.dim; ++i) {
            x[(size_t)i] = k.from_index(rem % k.size());
            rem /= k.size();
        }
        Mat<FFElt> T(B.dim, n, k.zero());
        for (long g = 0; g < n; ++g) {
            std::vector<FFElt> gx = mat_apply(B.action[(size_t)g], x);
            for (long r = 0; r < B.dim; ++r) T.at(r, g) = gx[(size_t)r];
        }
        if (mat_inverse(T)) return x;
    }
    return std::nullopt;
}

SdnbResult sdnb_search(long p, long n, bool allow_even, unsigned long bound) {
    if (n % 2 == 0 && !allow_even)
        throw std::invalid_argument(
            "sdnb_search: even-order groups only with the negative-test flag");
    GAlgebra<FFElt> B = frobenius_galgebra(p, n);
    const FF k = B.unit[0].field();
    unsigned long total = 1;
    for (long i = 0; i < n; ++i) {
        total *= (unsigned long)p;
        if (total > bound)
            throw std::runtime_error("sdnb_search: search space exceeds bound");
    }
    SdnbResult res;
    for (unsigned long idx = 1; idx < total; ++idx) {
        std::vector<FFElt> x((size_t)n, k.zero());
        unsigned long rem = idx;
        for (long i = 0; i < n; ++i) {
            x[(size_t)i] = k.from_index(rem % (unsigned long)p);
            rem /= (unsigned long)p;
        }
        bool ok = true;
        for (long g = 0; g < n && ok; ++g) {
            FFElt tr = alg_trace(B, alg_mul(B, x, mat_apply(B.action[(size_t)g], x)));
            ok = (g == 0) ? tr.is_one() : tr.is_zero();
        }
        if (ok) {
            res.found = true;
            res.witness_index = idx;
            res.witness = x;
            res.searched = idx + 1;
            return res;
        }
    }
    if (n % 2 == 1)
        throw std::runtime_error(
            "sdnb_search: exhausted without a witness at odd order");
    res.searched = total;
    return res;
}

std::vector<unsigned long> sdnb_all_indices(long p, long n) {
    GAlgebra<FFElt> B = frobenius_galgebra(p, n);
    const FF k = B.unit[0].field();
    unsigned long total = 1;
    for (long i = 0; i < n; ++i) total *= (unsigned long)p;
    std::vector<unsigned long> out;
    for (unsigned long idx = 1; idx < total; ++idx) {
        std::vector<FFElt> x((size_t)n, k.zero());
        unsigned long rem = idx;
        for (long i = 0; i < n; ++i) {
            x[(size_t)i] = k.from_index(rem % (unsigned long)p);
            rem /= (unsigned long)p;
        }
        bool ok = true;
        for (long g = 0; g < n && ok; ++g) {
            FFElt tr = alg_trace(B, alg_mul(B, x, mat_apply(B.action[(size_t)g], x)));
            ok = (g == 0) ? tr.is_one() : tr.is_zero();
        }
        if (ok) out.push_back(idx);
    }
    return out;
}

std::optional<FFIsometry> g_isometry_finite(const GQuadForm<FFElt>& q1,
                                            const GQuadForm<FFElt>& q2,
                                            unsigned long bound) {
    if (q1.rank != 1 || q2.rank != 1)
        throw std::invalid_argument("g_isometry_finite: rank-one forms only");
    if (q1.G.table != q2.G.table)
        throw std::invalid_argument("g_isometry_finite: group mismatch");
    const FF k = q1.gram.a[0].field();
    if (k != q2.gram.a[0].field())
        throw std::invalid_argument("g_isometry_finite: scalar domain mismatch");
    const FiniteGroup& G = q1.G;
    const long n = G.n;
    auto to_standard = [&](const GQuadForm<FFElt>& q) {
        Mat<FFElt> T = module_change_matrix(G, q.action, q.module_basis);
        return mat_mul(mat_mul(mat_transpose(T), q.gram), T);
    };
    Mat<FFElt> G1 = to_standard(q1), G2 = to_standard(q2);
    unsigned long total = 1;
    for (long i = 0; i < n; ++i) {
        total *= k.size();
        if (total > bound)
            throw std::runtime_error("g_isometry_finite: search space exceeds bound");
    }
    for (unsigned long idx = 1; idx < total; ++idx) {
        std::vector<FFElt> u((size_t)n, k.zero());
        unsigned long rem = idx;
        for (long g = 0; g < n; ++g) {
            u[(size_t)g] = k.from_index(rem % k.size());
            rem /= k.size();
        }
        Mat<FFElt> Ru(n, n, k.zero());
        for (long g = 0; g < n; ++g)
            for (long t = 0; t < n; ++t) Ru.at(G.mul(g, t), g) = u[(size_t)t];
        if (mat_mul(mat_mul(mat_transpose(Ru), G2), Ru) == G1) {
            bool unitary =
                ga_mul(G, u, ga_bar(G, u)) == ga_unit(G, k.one());
            return FFIsometry{u, unitary};
        }
    }
    return std::nullopt;
}

}  // namespace hopfforms
