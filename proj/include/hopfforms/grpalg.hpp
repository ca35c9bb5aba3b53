#pragma once

#include <vector>

#include "hopfforms/group.hpp"
#include "hopfforms/matrix.hpp"

namespace hopfforms {

/*
 * Elements of the group algebra K[G] and of the algebra Map(G, K) of
 * K-valued functions are both plain coefficient vectors indexed by group
 * elements; these helpers fix the conventions used throughout:
 *   - K[G]: convolution product, involution sum c_g g  ->  sum c_g g^{-1},
 *     augmentation sum of coefficients;
 *   - Map(G, K): pointwise product, counit = evaluation at the identity,
 *     antipode f -> (g -> f(g^{-1}));
 *   - K[G] acts on Map(G, K) by translation, (u . f)(x) = sum_g u_g f(xg).
 */

template <class S>
std::vector<S> ga_mul(const FiniteGroup& G, const std::vector<S>& u, const std::vector<S>& v) {
    std::vector<S> r((size_t)G.n, scalar_zero(u[0]));
    for (long a = 0; a < G.n; ++a) {
        if (scalar_is_zero(u[(size_t)a])) continue;
        for (long b = 0; b < G.n; ++b) {
            if (scalar_is_zero(v[(size_t)b])) continue;
            r[(size_t)G.mul(a, b)] += u[(size_t)a] * v[(size_t)b];
        }
    }
    return r;
}

template <class S>
std::vector<S> ga_bar(const FiniteGroup& G, const std::vector<S>& u) {
    std::vector<S> r((size_t)G.n, scalar_zero(u[0]));
    for (long a = 0; a < G.n; ++a) r[(size_t)G.inv(a)] = u[(size_t)a];
    return r;
}

template <class S>
S ga_eps(const std::vector<S>& u) {
    S s = scalar_zero(u[0]);
    for (const S& x : u) s += x;
    return s;
}

template <class S>
std::vector<S> ga_unit(const FiniteGroup& G, const S& one) {
    std::vector<S> r((size_t)G.n, scalar_zero(one));
    r[0] = one;
    return r;
}

// Matrix of left multiplication by u on the standard basis of K[G].
template <class S>
Mat<S> ga_left_mult_matrix(const FiniteGroup& G, const std::vector<S>& u) {
    Mat<S> m(G.n, G.n, scalar_zero(u[0]));
    for (long a = 0; a < G.n; ++a)
        for (long b = 0; b < G.n; ++b) {
            if (scalar_is_zero(u[(size_t)a])) continue;
            m.at(G.mul(a, b), b) += u[(size_t)a];
        }
    return m;
}

template <class S>
std::vector<S> ma_mul(const std::vector<S>& f, const std::vector<S>& g) {
    std::vector<S> r = f;
    for (size_t i = 0; i < r.size(); ++i) r[i] *= g[i];
    return r;
}

template <class S>
S ma_eps(const std::vector<S>& f) {
    return f[0];
}

template <class S>
std::vector<S> ma_antipode(const FiniteGroup& G, const std::vector<S>& f) {
    std::vector<S> r((size_t)G.n, scalar_zero(f[0]));
    for (long g = 0; g < G.n; ++g) r[(size_t)g] = f[(size_t)G.inv(g)];
    return r;
}

template <class S>
std::vector<S> ma_one(const FiniteGroup& G, const S& one) {
    return std::vector<S>((size_t)G.n, one);
}

// Duality pairing <sum u_g g, f> = sum u_g f(g).
template <class S>
S ga_ma_pair(const std::vector<S>& u, const std::vector<S>& f) {
    S s = scalar_zero(u[0]);
    for (size_t i = 0; i < u.size(); ++i)
        if (!scalar_is_zero(u[i])) s += u[i] * f[i];
    return s;
}

// Translation action of K[G] on Map(G, K): (u . f)(x) = sum_g u_g f(xg).
template <class S>
std::vector<S> ga_act(const FiniteGroup& G, const std::vector<S>& u, const std::vector<S>& f) {
    std::vector<S> r((size_t)G.n, scalar_zero(u[0]));
    for (long x = 0; x < G.n; ++x)
        for (long g = 0; g < G.n; ++g)
            if (!scalar_is_zero(u[(size_t)g])) r[(size_t)x] += u[(size_t)g] * f[(size_t)G.mul(x, g)];
    return r;
}

}  // namespace hopfforms
