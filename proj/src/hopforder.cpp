#include "hopfforms/hopforder.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "hopfforms/grpalg.hpp"
#include "hopfforms/numutil.hpp"

namespace hopfforms {

namespace {

std::string cv_str(const CVec& x) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < x.size(); ++i) {
        if (i) os << ", ";
        os << x[i].str();
    }
    os << ")";
    return os.str();
}

// Row-vector times matrix: (x M)_j = sum_i x_i M[i][j].
CVec row_times(const CVec& x, const Mat<Cyclo>& m) {
    if ((long)x.size() != m.rows) throw std::invalid_argument("row_times: shape mismatch");
    CVec r((size_t)m.cols, Cyclo(0));
    for (long i = 0; i < m.rows; ++i) {
        if (x[(size_t)i].is_zero()) continue;
        for (long j = 0; j < m.cols; ++j) r[(size_t)j] += x[(size_t)i] * m.at(i, j);
    }
    return r;
}

bool all_integral(const LocalRing& R, const CVec& x) {
    for (const Cyclo& c : x)
        if (R.valuation(c) < 0) return false;
    return true;
}

CVec basis_vector(long n, long i) {
    CVec v((size_t)n, Cyclo(0));
    v[(size_t)i] = Cyclo(1);
    return v;
}

}  // namespace

Side other_side(Side s) { return s == Side::Group ? Side::Map : Side::Group; }

CVec side_mul(Side s, const FiniteGroup& G, const CVec& x, const CVec& y) {
    return s == Side::Group ? ga_mul(G, x, y) : ma_mul(x, y);
}

CVec side_unit(Side s, const FiniteGroup& G) {
    return s == Side::Group ? ga_unit(G, Cyclo(1)) : ma_one(G, Cyclo(1));
}

Cyclo side_counit(Side s, const CVec& x) { return s == Side::Group ? ga_eps(x) : ma_eps(x); }

CVec side_antipode(Side s, const FiniteGroup& G, const CVec& x) {
    // In K[G] the antipode permutes the basis by g -> g^{-1}, which is the
    // same index permutation the involution uses.
    return s == Side::Group ? ga_bar(G, x) : ma_antipode(G, x);
}

Mat<Cyclo> side_comul(Side s, const FiniteGroup& G, const CVec& x) {
    Mat<Cyclo> d(G.n, G.n, Cyclo(0));
    if (s == Side::Group) {
        // group-likes: the comultiplication of g is g (x) g
        for (long g = 0; g < G.n; ++g) d.at(g, g) = x[(size_t)g];
    } else {
        // the comultiplication of f evaluates as (g, h) -> f(gh)
        for (long g = 0; g < G.n; ++g)
            for (long h = 0; h < G.n; ++h) d.at(g, h) = x[(size_t)G.mul(g, h)];
    }
    return d;
}

void verify_hopf_axioms_on(Side s, const FiniteGroup& G, const CVec& x) {
    const long n = G.n;
    // Structure coefficients of the comultiplication on basis elements:
    // C[i](a, b) = coefficient of b_a (x) b_b in comul(b_i).
    std::vector<Mat<Cyclo>> C;
    C.reserve((size_t)n);
    for (long i = 0; i < n; ++i) C.push_back(side_comul(s, G, basis_vector(n, i)));

    Mat<Cyclo> D = side_comul(s, G, x);

    // Coassociativity: both iterated comultiplications agree as cubes.
    for (long a = 0; a < n; ++a)
        for (long b = 0; b < n; ++b)
            for (long c = 0; c < n; ++c) {
                Cyclo t1(0), t2(0);
                for (long j = 0; j < n; ++j) {
                    if (!D.at(j, c).is_zero()) t1 += C[(size_t)j].at(a, b) * D.at(j, c);
                    if (!D.at(a, j).is_zero()) t2 += C[(size_t)j].at(b, c) * D.at(a, j);
                }
                if (!(t1 == t2))
                    throw std::logic_error("hopf axioms: coassociativity fails at " + cv_str(x));
            }

    // Counit laws: (counit (x) id) comul = id = (id (x) counit) comul.
    for (long c = 0; c < n; ++c) {
        Cyclo left(0), right(0);
        for (long j = 0; j < n; ++j) {
            left += side_counit(s, basis_vector(n, j)) * D.at(j, c);
            right += D.at(c, j) * side_counit(s, basis_vector(n, j));
        }
        if (!(left == x[(size_t)c]) || !(right == x[(size_t)c]))
            throw std::logic_error("hopf axioms: counit law fails at " + cv_str(x));
    }

    // Antipode law: mul(S (x) id)(comul x) = counit(x) . 1.
    CVec acc((size_t)n, Cyclo(0));
    for (long a = 0; a < n; ++a)
        for (long b = 0; b < n; ++b) {
            if (D.at(a, b).is_zero()) continue;
            CVec prod = side_mul(s, G, side_antipode(s, G, basis_vector(n, a)), basis_vector(n, b));
            for (long t = 0; t < n; ++t) acc[(size_t)t] += D.at(a, b) * prod[(size_t)t];
        }
    CVec expect = side_unit(s, G);
    Cyclo e = side_counit(s, x);
    for (long t = 0; t < n; ++t)
        if (!(acc[(size_t)t] == e * expect[(size_t)t]))
            throw std::logic_error("hopf axioms: antipode law fails at " + cv_str(x));
}

bool HopfOrder::contains(const CVec& x) const { return all_integral(ring, row_times(x, basis_inv)); }

CVec HopfOrder::coords(const CVec& x) const { return row_times(x, basis_inv); }

std::optional<OrderFailure> check_hopf_order(Side side, const FiniteGroup& G,
                                             const LocalRing& ring, const Mat<Cyclo>& rows) {
    const long n = G.n;
    if (rows.cols != n) return OrderFailure{"shape", "basis column count differs from |G|"};
    Mat<Cyclo> B = hnf_local(ring, rows);
    if (B.rows != n) return OrderFailure{"rank", "lattice is not full rank"};
    auto inv = mat_inverse(B);
    if (!inv) return OrderFailure{"rank", "basis matrix is singular"};
    const Mat<Cyclo>& Binv = *inv;

    auto member = [&](const CVec& x) { return all_integral(ring, row_times(x, Binv)); };

    if (!member(side_unit(side, G)))
        return OrderFailure{"unit", "the identity element is not in the lattice"};

    std::vector<CVec> bas;
    for (long i = 0; i < n; ++i) {
        CVec r((size_t)n);
        for (long j = 0; j < n; ++j) r[(size_t)j] = B.at(i, j);
        bas.push_back(std::move(r));
    }

    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) {
            CVec p = side_mul(side, G, bas[(size_t)i], bas[(size_t)j]);
            if (!member(p))
                return OrderFailure{"multiplicative closure",
                                    cv_str(bas[(size_t)i]) + " * " + cv_str(bas[(size_t)j]) +
                                        " = " + cv_str(p)};
        }

    // Comultiplication stability: comul(b) must lie in L (x) L, i.e. the
    // coordinate matrix Binv^T . D . Binv must be integral entry-wise.
    Mat<Cyclo> BinvT = mat_transpose(Binv);
    for (long i = 0; i < n; ++i) {
        Mat<Cyclo> D = side_comul(side, G, bas[(size_t)i]);
        Mat<Cyclo> coords = mat_mul(mat_mul(BinvT, D), Binv);
        for (long a = 0; a < n; ++a)
            for (long b = 0; b < n; ++b)
                if (ring.valuation(coords.at(a, b)) < 0)
                    return OrderFailure{"comultiplication stability", cv_str(bas[(size_t)i])};
    }

    for (long i = 0; i < n; ++i) {
        if (!member(side_antipode(side, G, bas[(size_t)i])))
            return OrderFailure{"antipode stability", cv_str(bas[(size_t)i])};
        if (ring.valuation(side_counit(side, bas[(size_t)i])) < 0)
            return OrderFailure{"counit integrality", cv_str(bas[(size_t)i])};
    }

    if (side == Side::Group) {
        // every Hopf order in K[G] contains the group ring
        for (long g = 0; g < n; ++g)
            if (!member(basis_vector(n, g)))
                return OrderFailure{"group ring containment", "group element index " +
                                                                   std::to_string(g)};
    } else {
        // orders in Map(G, K) sit inside the maximal order Map(G, R)
        for (long i = 0; i < n; ++i)
            if (!all_integral(ring, bas[(size_t)i]))
                return OrderFailure{"maximal order containment", cv_str(bas[(size_t)i])};
    }

    return std::nullopt;
}

HopfOrder make_hopf_order(Side side, const FiniteGroup& G, const LocalRing& ring, Mat<Cyclo> rows,
                          std::string name) {
    if (auto fail = check_hopf_order(side, G, ring, rows))
        throw std::runtime_error("not a Hopf order (" + name + "): " + fail->axiom +
                                 " fails, witness " + fail->witness);
    Mat<Cyclo> B = hnf_local(ring, std::move(rows));
    Mat<Cyclo> Binv = *mat_inverse(B);
    return HopfOrder{side, G, ring, std::move(B), std::move(Binv), std::move(name), {}};
}

HopfOrder group_ring_order(const FiniteGroup& G, const LocalRing& ring) {
    return make_hopf_order(Side::Group, G, ring, mat_identity(G.n, Cyclo(1)),
                           "R[" + G.name + "]");
}

HopfOrder map_order(const FiniteGroup& G, const LocalRing& ring) {
    return make_hopf_order(Side::Map, G, ring, mat_identity(G.n, Cyclo(1)),
                           "Map(" + G.name + ",R)");
}

HopfOrder dual_order(const HopfOrder& L) {
    Mat<Cyclo> dual = local_lattice_dual(L.ring, L.basis);
    return make_hopf_order(other_side(L.side), L.G, L.ring, std::move(dual), L.name + "^D");
}

void register_suborder(HopfOrder& L, const HopfOrder& C) {
    if (C.side != L.side || C.G.n != L.G.n)
        throw std::invalid_argument("register_suborder: incompatible orders");
    for (long i = 0; i < C.basis.rows; ++i) {
        CVec r((size_t)C.basis.cols);
        for (long j = 0; j < C.basis.cols; ++j) r[(size_t)j] = C.basis.at(i, j);
        if (!L.contains(r))
            throw std::invalid_argument("register_suborder: not contained in " + L.name);
    }
    L.suborders.emplace_back(C.name, C.basis);
}

IntegralData integrals(const HopfOrder& L) {
    const long n = L.G.n;
    // Stack the conditions (a - counit(a)) x = 0 over all basis elements a.
    Mat<Cyclo> stacked(n * n, n, Cyclo(0));
    for (long i = 0; i < n; ++i) {
        CVec a((size_t)n);
        for (long j = 0; j < n; ++j) a[(size_t)j] = L.basis.at(i, j);
        Cyclo e = side_counit(L.side, a);
        if (L.side == Side::Group) {
            Mat<Cyclo> M = ga_left_mult_matrix(L.G, a);
            for (long r = 0; r < n; ++r)
                for (long c = 0; c < n; ++c)
                    stacked.at(i * n + r, c) = M.at(r, c) - (r == c ? e : Cyclo(0));
        } else {
            for (long r = 0; r < n; ++r) stacked.at(i * n + r, r) = a[(size_t)r] - e;
        }
    }
    auto ker = mat_kernel(stacked);
    if (ker.size() != 1)
        throw std::runtime_error("integrals: solution space of " + L.name + " has rank " +
                                 std::to_string(ker.size()) + ", not 1");
    // I(L) = L cap K.x0: scale the kernel line into the lattice as far as
    // possible, then echelon-normalize for a canonical generator.
    CVec y = row_times(ker[0], L.basis_inv);
    long m = 0;
    bool first = true;
    for (const Cyclo& c : y) {
        long v = L.ring.valuation(c);
        if (v == LocalRing::kInfinity) continue;
        m = first ? -v : std::max(m, -v);
        first = false;
    }
    Mat<Cyclo> one_row(1, n, Cyclo(0));
    for (long j = 0; j < n; ++j) one_row.at(0, j) = L.ring.pi_pow(m) * ker[0][(size_t)j];
    Mat<Cyclo> canon = hnf_local(L.ring, std::move(one_row));
    CVec gen((size_t)n);
    for (long j = 0; j < n; ++j) gen[(size_t)j] = canon.at(0, j);

    long k = L.ring.valuation(side_counit(L.side, gen));
    if (k == LocalRing::kInfinity) throw std::logic_error("integrals: counit of the generator vanishes");
    if (L.side == Side::Map) {
        for (long g = 1; g < n; ++g)
            if (!gen[(size_t)g].is_zero())
                throw std::logic_error("integrals: Map-side generator is not a multiple of l");
        if (L.G.n % 2 == 1 && k % 2 == 1)
            throw std::logic_error("integrals: odd-order group with odd valuation of lambda");
    }
    return IntegralData{std::move(gen), k};
}

Cyclo order_lambda(const HopfOrder& A) {
    if (A.side != Side::Map) throw std::invalid_argument("order_lambda: Map-side order required");
    return A.ring.pi_pow(integrals(A).eps_exponent);
}

CVec order_theta(const HopfOrder& A) {
    if (A.side != Side::Map) throw std::invalid_argument("order_theta: Map-side order required");
    return integrals(A).generator;  // = lambda . l by the normalization above
}

CVec theta_expansion(const HopfOrder& A, const CVec& f) {
    if (A.side != Side::Map) throw std::invalid_argument("theta_expansion: Map-side order");
    const FiniteGroup& G = A.G;
    if ((long)f.size() != G.n) throw std::invalid_argument("theta_expansion: wrong length");
    Cyclo lam = order_lambda(A);
    Cyclo lam_inv = lam.inverse();
    CVec u((size_t)G.n);
    for (long g = 0; g < G.n; ++g) u[(size_t)g] = lam_inv * f[(size_t)G.inv(g)];
    // the defining property: u acts on theta to give back f
    CVec back = ga_act(G, u, order_theta(A));
    for (long g = 0; g < G.n; ++g)
        if (!(back[(size_t)g] == f[(size_t)g]))
            throw std::logic_error("theta_expansion: action roundtrip failed");
    // membership transfer: u lies in the dual lattice iff f lies in A
    Mat<Cyclo> BT = mat_transpose(A.basis);  // inverse of the dual lattice basis
    bool u_in_dual = all_integral(A.ring, row_times(u, BT));
    if (A.contains(f) != u_in_dual)
        throw std::logic_error("theta_expansion: membership transfer failed");
    return u;
}

void check_integral_identities(const HopfOrder& A) {
    if (A.side != Side::Map)
        throw std::invalid_argument("check_integral_identities: Map-side order required");
    const FiniteGroup& G = A.G;
    const LocalRing& R = A.ring;
    HopfOrder AD = dual_order(A);
    IntegralData IA = integrals(A);
    IntegralData IAD = integrals(AD);

    // A = AD . theta as lattices (rank-one freeness of the integrals).
    CVec theta = IA.generator;
    Mat<Cyclo> span(G.n, G.n, Cyclo(0));
    for (long i = 0; i < G.n; ++i) {
        CVec u((size_t)G.n);
        for (long j = 0; j < G.n; ++j) u[(size_t)j] = AD.basis.at(i, j);
        CVec img = ga_act(G, u, theta);
        for (long j = 0; j < G.n; ++j) span.at(i, j) = img[(size_t)j];
    }
    Mat<Cyclo> span_h = hnf_local(R, std::move(span));
    if (!(span_h == A.basis))
        throw std::logic_error("integral identities: dual order acting on theta misses A");

    // counit(I(AD)) . counit(I(A)) = nR.
    if (IA.eps_exponent + IAD.eps_exponent != R.valuation(Cyclo(G.n)))
        throw std::logic_error("integral identities: product of integral ideals is not nR");

    // lambda . AD is contained in the group ring R[G].
    Cyclo lam = R.pi_pow(IA.eps_exponent);
    for (long i = 0; i < G.n; ++i)
        for (long j = 0; j < G.n; ++j)
            if (R.valuation(lam * AD.basis.at(i, j)) < 0)
                throw std::logic_error("integral identities: lambda . AD leaves R[G]");

    // counit(I(C)) A inside counit(I(A)) C for each registered sub-order.
    for (const auto& [cname, cbasis] : A.suborders) {
        HopfOrder C = make_hopf_order(A.side, G, R, cbasis, cname);
        long kc = integrals(C).eps_exponent;
        Cyclo scale = R.pi_pow(kc - IA.eps_exponent);
        for (long i = 0; i < G.n; ++i) {
            CVec r((size_t)G.n);
            for (long j = 0; j < G.n; ++j) r[(size_t)j] = scale * A.basis.at(i, j);
            if (!C.contains(r))
                throw std::logic_error("integral identities: scaled containment fails for " +
                                       cname);
        }
    }
}

IndexSquaredReport index_squared_check(const HopfOrder& AD) {
    if (AD.side != Side::Group)
        throw std::invalid_argument("index_squared_check: Group-side order required");
    if (AD.G.n % 2 == 0) throw std::invalid_argument("index_squared_check: odd order required");
    Mat<Cyclo> rg = mat_identity(AD.G.n, Cyclo(1));
    long idx = local_lattice_index_exp(AD.ring, AD.basis, rg);
    HopfOrder A = dual_order(AD);
    long k = integrals(A).eps_exponent;
    if (k * AD.G.n != 2 * idx)
        throw std::logic_error("index squared: lambda^n != [AD : R[G]]^2 (exponents " +
                               std::to_string(k * AD.G.n) + " vs " + std::to_string(2 * idx) +
                               ")");
    if (k % 2 != 0) throw std::logic_error("index squared: v(lambda) is odd");
    return IndexSquaredReport{idx, k, k / 2};
}

HopfOrder larson_order(long p, long power, long i, const LocalRing& ring) {
    long n = 1;
    for (long t = 0; t < power; ++t) n *= p;
    FiniteGroup C = build_group("C" + std::to_string(n));
    CVec x((size_t)n, Cyclo(0));
    Cyclo pii = ring.pi_pow(-i);
    x[0] = Cyclo(-1) * pii;
    x[1] = pii;  // (sigma - 1)/pi^i
    Mat<Cyclo> rows(n, n, Cyclo(0));
    CVec pw = ga_unit(C, Cyclo(1));
    for (long r = 0; r < n; ++r) {
        for (long j = 0; j < n; ++j) rows.at(r, j) = pw[(size_t)j];
        if (r + 1 < n) pw = ga_mul(C, pw, x);
    }
    return make_hopf_order(Side::Group, C, ring, std::move(rows),
                           "O(C" + std::to_string(n) + ",i=" + std::to_string(i) + ")");
}

SubgroupOrderData subgroup_order(const HopfOrder& L, const std::vector<long>& H_elements) {
    if (L.side != Side::Group)
        throw std::invalid_argument("subgroup_order: Group-side order required");
    const FiniteGroup& G = L.G;
    std::vector<long> H = H_elements;
    std::sort(H.begin(), H.end());
    if (!is_subgroup(G, H)) throw std::invalid_argument("subgroup_order: not a subgroup");
    const long n = G.n, m = (long)H.size();

    // Permute columns so the subgroup block comes last, echelonize, and read
    // off the rows supported entirely on the subgroup block: they span
    // L cap K[H].
    std::vector<bool> in_H((size_t)n, false);
    for (long h : H) in_H[(size_t)h] = true;
    std::vector<long> col_order;
    for (long g = 0; g < n; ++g)
        if (!in_H[(size_t)g]) col_order.push_back(g);
    long split = (long)col_order.size();
    for (long h : H) col_order.push_back(h);

    Mat<Cyclo> perm(n, n, Cyclo(0));
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) perm.at(i, j) = L.basis.at(i, col_order[(size_t)j]);
    Mat<Cyclo> ech = hnf_local(L.ring, std::move(perm));

    Mat<Cyclo> inter(0, m, Cyclo(0));
    for (long i = 0; i < ech.rows; ++i) {
        bool supported = true;
        for (long j = 0; j < split && supported; ++j)
            if (!ech.at(i, j).is_zero()) supported = false;
        if (!supported) continue;
        inter.rows += 1;
        for (long j = 0; j < m; ++j) inter.a.push_back(ech.at(i, split + j));
    }
    if (inter.rows != m)
        throw std::logic_error("subgroup_order: intersection has wrong rank");

    FiniteGroup Hg = subgroup_as_group(G, H);
    HopfOrder sub = make_hopf_order(Side::Group, Hg, L.ring, inter, L.name + " cap K[H]");

    // Freeness certificate: exhibit [G:H] elements of L whose span over the
    // sub-order is all of L.  A generating set of that size is automatically
    // a basis by rank count.  Coset representatives usually work; otherwise
    // sweep the basis rows greedily and shrink out redundant picks.
    const long rank = n / m;
    std::vector<CVec> sub_embedded;
    for (long i = 0; i < m; ++i) {
        CVec a((size_t)n, Cyclo(0));
        for (long j = 0; j < m; ++j) a[(size_t)H[(size_t)j]] = sub.basis.at(i, j);
        sub_embedded.push_back(std::move(a));
    }
    auto span_of = [&](const std::vector<CVec>& gens) {
        Mat<Cyclo> span(0, n, Cyclo(0));
        for (const CVec& g : gens)
            for (const CVec& a : sub_embedded) {
                CVec prod = ga_mul(G, a, g);
                span.rows += 1;
                for (long j = 0; j < n; ++j) span.a.push_back(prod[(size_t)j]);
            }
        return hnf_local(L.ring, std::move(span));
    };
    auto spans_all = [&](const std::vector<CVec>& gens) { return span_of(gens) == L.basis; };

    std::vector<CVec> module_basis;
    {
        std::vector<CVec> reps;
        for (long t : left_coset_reps(G, H)) reps.push_back(basis_vector(n, t));
        if (spans_all(reps)) module_basis = std::move(reps);
    }
    if (module_basis.empty()) {
        // greedy sweep, rows with the most divisible pivots first
        std::vector<long> order((size_t)L.basis.rows);
        for (long i = 0; i < L.basis.rows; ++i) order[(size_t)i] = i;
        auto pivot_val = [&](long i) {
            for (long j = 0; j < n; ++j)
                if (!L.basis.at(i, j).is_zero()) return L.ring.valuation(L.basis.at(i, j));
            return LocalRing::kInfinity;
        };
        std::stable_sort(order.begin(), order.end(),
                         [&](long a, long b) { return pivot_val(a) > pivot_val(b); });
        std::vector<CVec> picked;
        Mat<Cyclo> cur(0, n, Cyclo(0));
        for (long i : order) {
            CVec r((size_t)n);
            for (long j = 0; j < n; ++j) r[(size_t)j] = L.basis.at(i, j);
            if (cur.rows > 0 && local_lattice_member(L.ring, cur, r)) continue;
            picked.push_back(std::move(r));
            cur = span_of(picked);
        }
        for (bool changed = true; changed && (long)picked.size() > rank;) {
            changed = false;
            for (size_t i = 0; i < picked.size(); ++i) {
                std::vector<CVec> rest = picked;
                rest.erase(rest.begin() + (long)i);
                if (spans_all(rest)) {
                    picked = std::move(rest);
                    changed = true;
                    break;
                }
            }
        }
        if ((long)picked.size() == rank && spans_all(picked)) module_basis = std::move(picked);
    }
    if (module_basis.empty())
        throw std::logic_error("subgroup_order: free module basis search failed for " + L.name);

    return SubgroupOrderData{std::move(Hg), std::move(H), std::move(sub),
                             std::move(module_basis)};
}

HopfOrder tensor_with_group_ring(const HopfOrder& LamC, const FiniteGroup& L,
                                 const FiniteGroup& G) {
    const long nc = LamC.G.n, nl = L.n;
    if (G.n != nc * nl)
        throw std::invalid_argument("tensor_with_group_ring: size mismatch");
    Mat<Cyclo> rows(nc * nl, nc * nl, Cyclo(0));
    for (long i = 0; i < nc; ++i)
        for (long l = 0; l < nl; ++l)
            for (long c = 0; c < nc; ++c)
                rows.at(i * nl + l, c * nl + l) = LamC.basis.at(i, c);
    return make_hopf_order(Side::Group, G, LamC.ring, std::move(rows),
                           LamC.name + "[" + L.name + "]");
}

void elementary_factorization_check(const HopfOrder& Lam, const std::vector<long>& C_elements,
                                    const std::vector<long>& L_elements) {
    const FiniteGroup& G = Lam.G;
    long p = Lam.ring.prime();
    SubgroupOrderData subC = subgroup_order(Lam, C_elements);
    SubgroupOrderData subL = subgroup_order(Lam, L_elements);
    if (subC.H.n % p != 0 || subL.H.n % p == 0)
        throw std::invalid_argument("elementary factorization: C must carry the p-part");

    // the part coprime to p always collapses to the group ring
    if (!(subL.order.basis == mat_identity(subL.H.n, Cyclo(1))))
        throw std::logic_error("elementary factorization: order on the coprime part is not R[L]");

    // span of (Lam cap K[C]) . R[L] inside K[G]
    const long n = G.n, mc = subC.H.n;
    std::vector<CVec> c_embedded;
    for (long i = 0; i < mc; ++i) {
        CVec a((size_t)n, Cyclo(0));
        for (long j = 0; j < mc; ++j)
            a[(size_t)subC.embedding[(size_t)j]] = subC.order.basis.at(i, j);
        c_embedded.push_back(std::move(a));
    }
    Mat<Cyclo> span(0, n, Cyclo(0));
    for (const CVec& a : c_embedded)
        for (long l : L_elements) {
            CVec prod = ga_mul(G, a, basis_vector(n, l));
            span.rows += 1;
            for (long j = 0; j < n; ++j) span.a.push_back(prod[(size_t)j]);
        }
    Mat<Cyclo> span_h = hnf_local(Lam.ring, std::move(span));

    HopfOrder tens = make_hopf_order(Side::Group, G, Lam.ring, span_h, "LamC[L]");
    long k_tens = integrals(tens).eps_exponent;
    long k_lam = integrals(Lam).eps_exponent;
    if (k_tens != k_lam)
        throw std::logic_error("elementary factorization: integral ideals differ");
    if (!(span_h == Lam.basis))
        throw std::logic_error("elementary factorization: lattices differ");
}

}  // namespace hopfforms
