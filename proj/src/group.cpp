#include "hopfforms/group.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "hopfforms/numutil.hpp"

namespace hopfforms {

FiniteGroup group_from_table(std::string name, long n, std::vector<long> table) {
    if (n < 1 || (long)table.size() != n * n)
        throw std::invalid_argument("group_from_table: bad table size");
    FiniteGroup G;
    G.n = n;
    G.table = std::move(table);
    G.name = std::move(name);
    for (long v : G.table)
        if (v < 0 || v >= n)
            throw std::invalid_argument("group_from_table: entry out of range");
    for (long a = 0; a < n; ++a)
        if (G.mul(0, a) != a || G.mul(a, 0) != a)
            throw std::invalid_argument("group_from_table: element 0 is not the identity (at " +
                                        std::to_string(a) + ")");
    G.inverse.assign((size_t)n, -1);
    for (long a = 0; a < n; ++a) {
        for (long b = 0; b < n; ++b)
            if (G.mul(a, b) == 0 && G.mul(b, a) == 0) {
                G.inverse[(size_t)a] = b;
                break;
            }
        if (G.inverse[(size_t)a] < 0)
            throw std::invalid_argument("group_from_table: no inverse for element " +
                                        std::to_string(a));
    }
    for (long a = 0; a < n; ++a)
        for (long b = 0; b < n; ++b)
            for (long c = 0; c < n; ++c)
                if (G.mul(G.mul(a, b), c) != G.mul(a, G.mul(b, c)))
                    throw std::invalid_argument(
                        "group_from_table: associativity fails at (" + std::to_string(a) + "," +
                        std::to_string(b) + "," + std::to_string(c) + ")");
    return G;
}

FiniteGroup build_cyclic(long n) {
    std::vector<long> t((size_t)(n * n));
    for (long a = 0; a < n; ++a)
        for (long b = 0; b < n; ++b) t[(size_t)(a * n + b)] = (a + b) % n;
    return group_from_table("C" + std::to_string(n), n, std::move(t));
}

FiniteGroup build_product(const FiniteGroup& A, const FiniteGroup& B) {
    long n = A.n * B.n;
    std::vector<long> t((size_t)(n * n));
    auto idx = [&](long a, long b) { return a * B.n + b; };
    for (long a1 = 0; a1 < A.n; ++a1)
        for (long b1 = 0; b1 < B.n; ++b1)
            for (long a2 = 0; a2 < A.n; ++a2)
                for (long b2 = 0; b2 < B.n; ++b2)
                    t[(size_t)(idx(a1, b1) * n + idx(a2, b2))] =
                        idx(A.mul(a1, a2), B.mul(b1, b2));
    return group_from_table(A.name + "x" + B.name, n, std::move(t));
}

FiniteGroup build_metacyclic(long m, long k, long r) {
    if (mod_pow(r, k, m) != 1)
        throw std::invalid_argument("build_metacyclic: r^k != 1 mod m");
    long n = m * k;
    auto idx = [&](long i, long j) { return i * k + j; };
    std::vector<long> t((size_t)(n * n));
    for (long i1 = 0; i1 < m; ++i1)
        for (long j1 = 0; j1 < k; ++j1)
            for (long i2 = 0; i2 < m; ++i2)
                for (long j2 = 0; j2 < k; ++j2) {
                    // (a^i1 b^j1)(a^i2 b^j2) = a^{i1 + i2 r^{j1}} b^{j1+j2}
                    long i = (i1 + i2 * mod_pow(r, j1, m)) % m;
                    long j = (j1 + j2) % k;
                    t[(size_t)(idx(i1, j1) * n + idx(i2, j2))] = idx(i, j);
                }
    return group_from_table("M" + std::to_string(m) + "_" + std::to_string(k), n, std::move(t));
}

FiniteGroup build_heisenberg3() {
    const long p = 3, n = 27;
    auto idx = [&](long a, long b, long c) { return (a * p + b) * p + c; };
    std::vector<long> t((size_t)(n * n));
    for (long a1 = 0; a1 < p; ++a1)
        for (long b1 = 0; b1 < p; ++b1)
            for (long c1 = 0; c1 < p; ++c1)
                for (long a2 = 0; a2 < p; ++a2)
                    for (long b2 = 0; b2 < p; ++b2)
                        for (long c2 = 0; c2 < p; ++c2)
                            t[(size_t)(idx(a1, b1, c1) * n + idx(a2, b2, c2))] =
                                idx((a1 + a2) % p, (b1 + b2) % p,
                                    (c1 + c2 + a1 * b2) % p);
    return group_from_table("H27", n, std::move(t));
}

FiniteGroup build_group(const std::string& preset) {
    if (preset == "H27" || preset == "heisenberg3") return build_heisenberg3();
    if (preset == "M7_3" || preset == "metacyclic73") return build_metacyclic(7, 3, 2);
    auto x = preset.find('x');
    if (x != std::string::npos) {
        FiniteGroup A = build_group(preset.substr(0, x));
        FiniteGroup B = build_group(preset.substr(x + 1));
        return build_product(A, B);
    }
    if (preset.size() >= 2 && preset[0] == 'C') {
        long n = std::stol(preset.substr(1));
        if (n >= 1) return build_cyclic(n);
    }
    throw std::invalid_argument("build_group: unknown preset '" + preset + "'");
}

long element_order(const FiniteGroup& G, long g) {
    long o = 1, x = g;
    while (x != 0) {
        x = G.mul(x, g);
        ++o;
    }
    return o;
}

long group_exponent(const FiniteGroup& G) {
    long e = 1;
    for (long g = 0; g < G.n; ++g) e = lcm_long(e, element_order(G, g));
    return e;
}

bool group_is_abelian(const FiniteGroup& G) {
    for (long a = 0; a < G.n; ++a)
        for (long b = a + 1; b < G.n; ++b)
            if (G.mul(a, b) != G.mul(b, a)) return false;
    return true;
}

std::vector<std::vector<long>> conjugacy_classes(const FiniteGroup& G) {
    std::vector<bool> seen((size_t)G.n, false);
    std::vector<std::vector<long>> classes;
    for (long g = 0; g < G.n; ++g) {
        if (seen[(size_t)g]) continue;
        std::set<long> cls;
        for (long h = 0; h < G.n; ++h) cls.insert(G.mul(G.mul(h, g), G.inv(h)));
        std::vector<long> v(cls.begin(), cls.end());
        for (long x : v) seen[(size_t)x] = true;
        classes.push_back(std::move(v));
    }
    // Already ordered by least element because g scans upward.
    return classes;
}

std::vector<long> class_index_map(const FiniteGroup& G,
                                  const std::vector<std::vector<long>>& classes) {
    std::vector<long> m((size_t)G.n, -1);
    for (size_t i = 0; i < classes.size(); ++i)
        for (long g : classes[i]) m[(size_t)g] = (long)i;
    return m;
}

std::vector<long> subgroup_closure(const FiniteGroup& G, std::vector<long> gens) {
    std::set<long> H{0};
    for (long g : gens) H.insert(g);
    // Multiplicative closure of a finite set already contains inverses.
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<long> elems(H.begin(), H.end());
        for (long a : elems)
            for (long b : elems)
                if (H.insert(G.mul(a, b)).second) changed = true;
    }
    return std::vector<long>(H.begin(), H.end());
}

std::vector<long> generating_set(const FiniteGroup& G) {
    std::vector<long> gens;
    std::vector<long> closed{0};
    for (long g = 1; g < G.n && (long)closed.size() < G.n; ++g) {
        if (std::binary_search(closed.begin(), closed.end(), g)) continue;
        gens.push_back(g);
        closed = subgroup_closure(G, gens);
    }
    return gens;
}

bool is_subgroup(const FiniteGroup& G, const std::vector<long>& H) {
    std::set<long> s(H.begin(), H.end());
    if (!s.count(0)) return false;
    for (long a : H)
        for (long b : H)
            if (!s.count(G.mul(a, b))) return false;
    return true;
}

bool is_normal_subgroup(const FiniteGroup& G, const std::vector<long>& H) {
    if (!is_subgroup(G, H)) return false;
    std::set<long> s(H.begin(), H.end());
    for (long g = 0; g < G.n; ++g)
        for (long h : H)
            if (!s.count(G.mul(G.mul(g, h), G.inv(g)))) return false;
    return true;
}

std::vector<long> commutator_subgroup(const FiniteGroup& G) {
    std::vector<long> comms;
    for (long a = 0; a < G.n; ++a)
        for (long b = 0; b < G.n; ++b)
            comms.push_back(G.mul(G.mul(a, b), G.mul(G.inv(a), G.inv(b))));
    return subgroup_closure(G, comms);
}

std::vector<long> center_subgroup(const FiniteGroup& G) {
    std::vector<long> z;
    for (long a = 0; a < G.n; ++a) {
        bool central = true;
        for (long b = 0; b < G.n && central; ++b)
            if (G.mul(a, b) != G.mul(b, a)) central = false;
        if (central) z.push_back(a);
    }
    return z;
}

QuotientData quotient_group(const FiniteGroup& G, const std::vector<long>& N) {
    if (!is_normal_subgroup(G, N))
        throw std::invalid_argument("quotient_group: subgroup is not normal");
    std::vector<long> coset_min((size_t)G.n, -1);
    std::vector<long> reps;
    std::vector<long> proj((size_t)G.n, -1);
    std::vector<bool> seen((size_t)G.n, false);
    for (long g = 0; g < G.n; ++g) {
        if (seen[(size_t)g]) continue;
        std::vector<long> coset;
        for (long h : N) coset.push_back(G.mul(g, h));
        std::sort(coset.begin(), coset.end());
        for (long x : coset) seen[(size_t)x] = true;
        long id = (long)reps.size();
        reps.push_back(coset[0]);
        for (long x : coset) proj[(size_t)x] = id;
        (void)coset_min;
    }
    long q = (long)reps.size();
    std::vector<long> t((size_t)(q * q));
    for (long a = 0; a < q; ++a)
        for (long b = 0; b < q; ++b)
            t[(size_t)(a * q + b)] = proj[(size_t)G.mul(reps[(size_t)a], reps[(size_t)b])];
    FiniteGroup Q = group_from_table(G.name + "/N", q, std::move(t));
    return QuotientData{std::move(Q), std::move(proj), std::move(reps)};
}

std::vector<long> abelian_invariants(const FiniteGroup& A) {
    if (!group_is_abelian(A)) throw std::invalid_argument("abelian_invariants: group not abelian");
    if (A.n == 1) return {};
    long e = group_exponent(A);
    long g = -1;
    for (long x = 0; x < A.n; ++x)
        if (element_order(A, x) == e) {
            g = x;
            break;
        }
    QuotientData qd = quotient_group(A, subgroup_closure(A, {g}));
    std::vector<long> rest = abelian_invariants(qd.Q);
    rest.push_back(e);  // ascending divisibility: d1 | d2 | ... | e
    return rest;
}

std::vector<long> left_coset_reps(const FiniteGroup& G, const std::vector<long>& H) {
    std::vector<bool> seen((size_t)G.n, false);
    std::vector<long> reps;
    for (long g = 0; g < G.n; ++g) {
        if (seen[(size_t)g]) continue;
        reps.push_back(g);
        for (long h : H) seen[(size_t)G.mul(g, h)] = true;
    }
    return reps;
}

FiniteGroup subgroup_as_group(const FiniteGroup& G, const std::vector<long>& H) {
    std::map<long, long> pos;
    for (size_t i = 0; i < H.size(); ++i) pos[H[i]] = (long)i;
    long m = (long)H.size();
    std::vector<long> t((size_t)(m * m));
    for (long a = 0; a < m; ++a)
        for (long b = 0; b < m; ++b) {
            auto it = pos.find(G.mul(H[(size_t)a], H[(size_t)b]));
            if (it == pos.end())
                throw std::invalid_argument("subgroup_as_group: set is not closed");
            t[(size_t)(a * m + b)] = it->second;
        }
    return group_from_table(G.name + ">sub", m, std::move(t));
}

std::vector<std::vector<long>> subgroups_upto2gen(const FiniteGroup& G) {
    std::set<std::vector<long>> subs;
    subs.insert(std::vector<long>{0});
    for (long a = 0; a < G.n; ++a) {
        subs.insert(subgroup_closure(G, {a}));
        for (long b = a + 1; b < G.n; ++b) subs.insert(subgroup_closure(G, {a, b}));
    }
    std::vector<std::vector<long>> out(subs.begin(), subs.end());
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        if (x.size() != y.size()) return x.size() < y.size();
        return x < y;
    });
    return out;
}

}  // namespace hopfforms
