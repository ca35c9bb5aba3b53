#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "hopfforms/group.hpp"
#include "hopfforms/hopforder.hpp"
#include "hopfforms/modrep.hpp"

using namespace hopfforms;

namespace {

// Independent radical oracle: the common annihilator of the simple modules.
std::vector<std::vector<FFElt>> annihilator_of_simples(const FDAlgebra& A,
                                                       const ModRepContext& ctx) {
    long rows = 0;
    for (const auto& s : ctx.simples) rows += s.module.dim * s.module.dim;
    Mat<FFElt> sys(rows, A.dim, A.k.zero());
    long off = 0;
    for (const auto& s : ctx.simples) {
        const long m = s.module.dim;
        for (long r = 0; r < m; ++r)
            for (long c = 0; c < m; ++c) {
                for (long j = 0; j < A.dim; ++j)
                    sys.at(off, j) = s.module.action[(size_t)j].at(r, c);
                ++off;
            }
    }
    return mat_kernel(std::move(sys));
}

// Span equality through mutual membership in row-reduced bases.
bool same_span(const FDAlgebra& A, std::vector<std::vector<FFElt>> u,
               std::vector<std::vector<FFElt>> v) {
    auto rank_of = [&](const std::vector<std::vector<FFElt>>& rows,
                       const std::vector<std::vector<FFElt>>& extra) {
        if (rows.empty() && extra.empty()) return 0L;
        Mat<FFElt> m((long)(rows.size() + extra.size()), A.dim, A.k.zero());
        long r = 0;
        for (const auto& w : rows) {
            for (long j = 0; j < A.dim; ++j) m.at(r, j) = w[(size_t)j];
            ++r;
        }
        for (const auto& w : extra) {
            for (long j = 0; j < A.dim; ++j) m.at(r, j) = w[(size_t)j];
            ++r;
        }
        return (long)(m.rows - (long)mat_kernel(mat_transpose(std::move(m))).size());
    };
    const long ru = rank_of(u, {});
    const long rv = rank_of(v, {});
    return ru == rv && rank_of(u, v) == ru;
}

std::vector<long> simple_dims(const ModRepContext& ctx) {
    std::vector<long> d;
    for (const auto& s : ctx.simples) d.push_back(s.module.dim);
    return d;
}

std::vector<long> regular_mults(const ModRepContext& ctx) {
    std::vector<long> m;
    for (const auto& s : ctx.simples) m.push_back(s.regular_multiplicity);
    return m;
}

Mat<Cyclo> random_spanning(std::mt19937_64& rng, long m) {
    for (;;) {
        Mat<Cyclo> S(m, m, Cyclo(0));
        for (long i = 0; i < m; ++i)
            for (long j = 0; j < m; ++j)
                S.at(i, j) = Cyclo((long)draw_mod(rng, 9) - 4);
        if (!mat_det(S).is_zero()) return S;
    }
}

std::vector<Mat<Cyclo>> regular_group_matrices(const FiniteGroup& G) {
    std::vector<Mat<Cyclo>> rho;
    rho.reserve((size_t)G.n);
    for (long g = 0; g < G.n; ++g) {
        Mat<Cyclo> P(G.n, G.n, Cyclo(0));
        for (long h = 0; h < G.n; ++h) P.at(G.mul(g, h), h) = Cyclo(1);
        rho.push_back(std::move(P));
    }
    return rho;
}

long find_trivial_index(const ModRepContext& ctx) {
    G0Class t = composition_factors(ctx, trivial_module(ctx.A), 5);
    long idx = -1;
    for (size_t i = 0; i < t.mult.size(); ++i)
        if (t.mult[i] != 0) {
            REQUIRE(idx == -1);
            REQUIRE(t.mult[i] == 1);
            idx = (long)i;
        }
    REQUIRE(idx >= 0);
    return idx;
}

}  // namespace

TEST_CASE("group algebras: construction, modules, duals, tensors") {
    FiniteGroup C3 = build_group("C3");
    FiniteGroup C7 = build_group("C7");
    FDAlgebra A3 = group_fdalgebra(C3, FF(3, 1));
    FDAlgebra A7 = group_fdalgebra(C7, FF(2, 1));
    CHECK(A3.id == "F3[C3]");
    CHECK(A7.id == "F2[C7]");

    AlgModule r3 = regular_module(A3);
    AlgModule r7 = regular_module(A7);
    verify_module(A3, r3);
    verify_module(A7, r7);
    verify_module(A3, trivial_module(A3));

    // Endomorphisms of the regular module form the opposite algebra.
    CHECK(hom_space_dim(A3, r3, r3) == 3);
    CHECK(hom_space_dim(A7, r7, r7) == 7);

    // The dual applied twice returns the exact action matrices.
    AlgModule d7 = dual_module(A7, r7);
    verify_module(A7, d7);
    AlgModule dd7 = dual_module(A7, d7);
    for (long i = 0; i < A7.dim; ++i) CHECK(dd7.action[(size_t)i] == r7.action[(size_t)i]);

    // Tensoring with the trivial module changes nothing up to isomorphism.
    AlgModule t3 = tensor_module(A3, trivial_module(A3), r3);
    verify_module(A3, t3);
    CHECK(t3.dim == 3);
    CHECK(hom_space_dim(A3, t3, r3) == 3);

    // A module with a broken relation is rejected.
    AlgModule bad = r3;
    bad.action[1].at(0, 0) += A3.k.one();
    CHECK_THROWS(verify_module(A3, bad));
}

TEST_CASE("radical: modular group algebras and their semisimplifications") {
    FF f3(3, 1);
    FDAlgebra A = group_fdalgebra(build_group("C3"), f3);
    auto J = radical_basis(A);
    CHECK(J.size() == 2);

    // The radical squares to a line and cubes to zero.
    std::vector<std::vector<FFElt>> sq;
    for (const auto& a : J)
        for (const auto& b : J) sq.push_back(fd_mul(A, a, b));
    Mat<FFElt> sqm((long)sq.size(), A.dim, f3.zero());
    for (long r = 0; r < (long)sq.size(); ++r)
        for (long c = 0; c < A.dim; ++c) sqm.at(r, c) = sq[(size_t)r][(size_t)c];
    long sqrank = sqm.rows - (long)mat_kernel(mat_transpose(sqm)).size();
    CHECK(sqrank == 1);
    bool cube_zero = true;
    for (const auto& a : sq)
        for (const auto& b : J)
            if (!std::all_of(fd_mul(A, a, b).begin(), fd_mul(A, a, b).end(),
                             [](const FFElt& x) { return x.is_zero(); }))
                cube_zero = false;
    CHECK(cube_zero);

    Semisimplification ss = semisimplify(A);
    CHECK(ss.quotient.dim == 1);
    CHECK(ss.quotient.id == "F3[C3]/rad");
    CHECK(ss.quotient.involution.has_value());

    CHECK(radical_basis(group_fdalgebra(build_group("C7"), FF(2, 1))).empty());
    CHECK(radical_basis(group_fdalgebra(build_group("C9"), f3)).size() == 8);
    CHECK(radical_basis(group_fdalgebra(build_group("M7_3"), FF(7, 1))).size() == 18);
    CHECK(semisimplify(group_fdalgebra(build_group("M7_3"), FF(7, 1))).quotient.dim == 3);
}

TEST_CASE("radical agrees with the annihilator of the simple modules") {
    struct Case {
        const char* group;
        long p;
    };
    for (Case c : {Case{"C3", 3}, Case{"C7", 2}, Case{"C9", 3}, Case{"M7_3", 7},
                   Case{"C3xC7", 3}}) {
        FDAlgebra A = group_fdalgebra(build_group(c.group), FF(c.p, 1));
        ModRepContext ctx = make_context(A, 0);
        auto J = radical_basis(A);
        auto ann = annihilator_of_simples(A, ctx);
        CHECK(J.size() == ann.size());
        CHECK(same_span(A, J, ann));
        CHECK(ctx.radical_dim == (long)J.size());
    }
}

TEST_CASE("canonical simples of F2[C7]: dims, traces, duality, seed stability") {
    FDAlgebra A = group_fdalgebra(build_group("C7"), FF(2, 1));
    ModRepContext ctx = make_context(A, 0);
    CHECK(simple_dims(ctx) == std::vector<long>{1, 3, 3});
    CHECK(regular_mults(ctx) == std::vector<long>{1, 1, 1});
    CHECK(ctx.duality == std::vector<long>{0, 2, 1});
    CHECK(ctx.radical_dim == 0);

    // The two cubic simples are told apart by the trace of the generator:
    // 0 on the first, 1 on the second (canonical order sorts by traces).
    CHECK(mat_trace(ctx.simples[1].module.action[1]).is_zero());
    CHECK(mat_trace(ctx.simples[2].module.action[1]).is_one());

    CHECK(is_self_dual(ctx, 0));
    CHECK(!is_self_dual(ctx, 1));
    CHECK(!is_self_dual(ctx, 2));

    G0Class reg = composition_factors(ctx, regular_module(A), 3);
    CHECK(reg.mult == std::vector<long>{1, 1, 1});

    // Pairing a cubic against its dual produces the trivial factor.
    G0Class pair = composition_factors(
        ctx, tensor_module(A, ctx.simples[1].module, ctx.simples[2].module), 4);
    CHECK(pair.mult[0] >= 1);
    long pairdim = 0;
    for (size_t i = 0; i < pair.mult.size(); ++i)
        pairdim += pair.mult[i] * ctx.simples[i].module.dim;
    CHECK(pairdim == 9);

    // Different seeds give byte-identical canonical data.
    ModRepContext ctx2 = make_context(A, 999);
    REQUIRE(ctx2.simples.size() == ctx.simples.size());
    for (size_t i = 0; i < ctx.simples.size(); ++i) {
        CHECK(ctx2.simples[i].key == ctx.simples[i].key);
        CHECK(ctx2.simples[i].regular_multiplicity == ctx.simples[i].regular_multiplicity);
    }
    CHECK(ctx2.duality == ctx.duality);
}

TEST_CASE("reduction of the middle order at p = 3: three characters") {
    LocalRing R = parse_ring("z3pi");
    HopfOrder L = larson_order(3, 1, 1, R);
    FDAlgebra A = order_fdalgebra(L);
    ModRepContext ctx = make_context(A, 0);
    CHECK(ctx.radical_dim == 0);
    CHECK(simple_dims(ctx) == std::vector<long>{1, 1, 1});
    CHECK(regular_mults(ctx) == std::vector<long>{1, 1, 1});

    // Duality is an involution fixing exactly the counit character.
    REQUIRE(ctx.duality.size() == 3);
    long fixed = -1;
    for (long i = 0; i < 3; ++i) {
        CHECK(ctx.duality[(size_t)ctx.duality[(size_t)i]] == i);
        if (ctx.duality[(size_t)i] == i) {
            CHECK(fixed == -1);
            fixed = i;
        }
    }
    CHECK(fixed == find_trivial_index(ctx));

    SelfDualReport rep = verify_selfdual_constraints(ctx, true);
    CHECK(rep.selfdual == std::vector<long>{fixed});
    CHECK(rep.types == std::vector<int>{1});
}

TEST_CASE("F7[M7_3]: radical, characters of the quotient, duality") {
    FDAlgebra A = group_fdalgebra(build_group("M7_3"), FF(7, 1));
    ModRepContext ctx = make_context(A, 1);
    CHECK(ctx.radical_dim == 18);
    CHECK(simple_dims(ctx) == std::vector<long>{1, 1, 1});
    CHECK(regular_mults(ctx) == std::vector<long>{7, 7, 7});
    CHECK(ctx.duality == std::vector<long>{0, 2, 1});
    CHECK(find_trivial_index(ctx) == 0);
}

TEST_CASE("product group: simples multiply across the factors") {
    FF f3(3, 1);
    ModRepContext ctxP = make_context(group_fdalgebra(build_group("C3xC7"), f3), 0);
    ModRepContext ctxC = make_context(group_fdalgebra(build_group("C3"), f3), 0);
    ModRepContext ctxL = make_context(group_fdalgebra(build_group("C7"), f3), 0);

    CHECK(simple_dims(ctxP) == std::vector<long>{1, 6});
    CHECK(regular_mults(ctxP) == std::vector<long>{3, 3});
    CHECK(ctxP.radical_dim == 14);
    CHECK(simple_dims(ctxL) == std::vector<long>{1, 6});

    check_simple_dims_product(ctxP, ctxC, ctxL);

    G0Class reg = composition_factors(ctxP, regular_module(ctxP.A), 2);
    CHECK(g0_union_covers({reg}, (long)ctxP.simples.size()));
    G0Class triv = composition_factors(ctxP, trivial_module(ctxP.A), 2);
    CHECK(!g0_union_covers({triv}, (long)ctxP.simples.size()));
    CHECK(g0_union_covers({triv, reg}, (long)ctxP.simples.size()));
}

TEST_CASE("split odd reductions: self-dual simples are trivial and symmetric") {
    struct Case {
        const char* group;
        long p;
        bool elementary;
        std::vector<long> dims;
    };
    const std::vector<Case> cases = {
        {"C3", 7, true, {1, 1, 1}},
        {"C7", 29, true, {1, 1, 1, 1, 1, 1, 1}},
        {"C9", 19, false, {1, 1, 1, 1, 1, 1, 1, 1, 1}},
        {"M7_3", 43, false, {1, 1, 1, 3, 3}},
        {"H27", 13, false, {1, 1, 1, 1, 1, 1, 1, 1, 1, 3, 3}},
    };
    for (const Case& c : cases) {
        CAPTURE(c.group);
        ModRepContext ctx = make_context(group_fdalgebra(build_group(c.group), FF(c.p, 1)), 0);
        CHECK(ctx.radical_dim == 0);
        CHECK(simple_dims(ctx) == c.dims);
        SelfDualReport rep = verify_selfdual_constraints(ctx, c.elementary);
        CHECK(rep.selfdual == std::vector<long>{find_trivial_index(ctx)});
        CHECK(rep.types == std::vector<int>{1});
    }
}

TEST_CASE("lattices: reduction, stability, and lattice-independent factors") {
    std::mt19937_64 rng(12345);

    struct Entry {
        const char* group;
        const char* ring;
        bool larson;
        std::vector<long> expect;
    };
    const std::vector<Entry> corpus = {
        {"C3", "q3", false, {3}},
        {"C3", "z3pi", false, {3}},
        {"C3", "z3pi", true, {1, 1, 1}},
        {"C7", "q2", false, {1, 1, 1}},
        {"C9", "q3", false, {9}},
    };
    for (const Entry& e : corpus) {
        CAPTURE(e.group);
        CAPTURE(e.ring);
        LocalRing R = parse_ring(e.ring);
        FiniteGroup G = build_group(e.group);
        HopfOrder L = e.larson ? larson_order(3, 1, 1, R) : group_ring_order(G, R);
        FDAlgebra A = order_fdalgebra(L);
        ModRepContext ctx = make_context(A, 7);
        auto action = krep_from_group_matrices(L, regular_group_matrices(G));
        for (int rep = 0; rep < 2; ++rep) {
            Mat<Cyclo> S = random_spanning(rng, G.n);
            G0Class cls = decomposition_map(L, ctx, action, S, rng());
            CHECK(cls.mult == e.expect);
        }
        // A pi-scaled spanning vector changes the lattice, not the class.
        Mat<Cyclo> S = random_spanning(rng, G.n);
        for (long j = 0; j < S.cols; ++j) S.at(0, j) *= R.uniformizer();
        CHECK(decomposition_map(L, ctx, action, S, rng()).mult == e.expect);
    }

    // The identity-basis lattice of the group ring reduces to the regular module.
    LocalRing R3 = parse_ring("q3");
    FiniteGroup C3 = build_group("C3");
    HopfOrder L3 = group_ring_order(C3, R3);
    FDAlgebra A3 = order_fdalgebra(L3);
    auto act3 = krep_from_group_matrices(L3, regular_group_matrices(C3));
    LatticePair P = make_lattice_pair(L3, act3, L3.basis);
    AlgModule red = lattice_reduction(A3, P);
    AlgModule reg = regular_module(A3);
    for (long i = 0; i < A3.dim; ++i) CHECK(red.action[(size_t)i] == reg.action[(size_t)i]);

    // An unstable row span is rejected.
    Mat<Cyclo> bad(3, 3, Cyclo(0));
    bad.at(0, 0) = Cyclo(1);
    bad.at(1, 1) = R3.uniformizer();
    bad.at(2, 2) = R3.uniformizer() * R3.uniformizer();
    CHECK_THROWS(make_lattice_pair(L3, act3, bad));
}

namespace {

// The identity lattice and the augmentation-plus-pi sublattice of an order,
// in the regular representation.
struct SquareData {
    LatticePair E1;
    LatticePair E2;
};

SquareData order_square(const HopfOrder& L, const std::vector<Mat<Cyclo>>& action) {
    const long n = L.basis.rows;
    Mat<Cyclo> rows2(n + 1, n, Cyclo(0));
    for (long i = 0; i < n; ++i) {
        Cyclo eps = side_counit(L.side, [&] {
            CVec r;
            for (long j = 0; j < n; ++j) r.push_back(L.basis.at(i, j));
            return r;
        }());
        for (long j = 0; j < n; ++j) rows2.at(i, j) = L.basis.at(i, j);
        rows2.at(i, 0) -= eps;
    }
    rows2.at(n, 0) = L.ring.uniformizer();
    return SquareData{make_lattice_pair(L, action, L.basis),
                      make_lattice_pair(L, action, rows2)};
}

}  // namespace

TEST_CASE("nested lattices with the same factors after tensoring") {
    {
        LocalRing R = parse_ring("q3");
        FiniteGroup C3 = build_group("C3");
        HopfOrder L = group_ring_order(C3, R);
        FDAlgebra A = order_fdalgebra(L);
        ModRepContext ctx = make_context(A, 0);
        auto action = krep_from_group_matrices(L, regular_group_matrices(C3));
        SquareData sq = order_square(L, action);
        check_lattice_sandwich(R, sq.E1.lattice, sq.E2.lattice);
        G0Class cls = verify_swan_square(ctx, regular_module(A),
                                         lattice_reduction(A, sq.E1),
                                         lattice_reduction(A, sq.E2), 0);
        CHECK(cls.mult == std::vector<long>{9});

        // pi^2-scaled lattice fails the sandwich.
        Mat<Cyclo> far = sq.E1.lattice;
        for (long i = 0; i < far.rows; ++i)
            for (long j = 0; j < far.cols; ++j)
                far.at(i, j) *= R.uniformizer() * R.uniformizer();
        CHECK_THROWS(check_lattice_sandwich(R, sq.E1.lattice, hnf_local(R, far)));
    }
    {
        LocalRing R = parse_ring("z3pi");
        FiniteGroup C3 = build_group("C3");
        HopfOrder L = larson_order(3, 1, 1, R);
        FDAlgebra A = order_fdalgebra(L);
        ModRepContext ctx = make_context(A, 0);
        auto action = krep_from_group_matrices(L, regular_group_matrices(C3));
        SquareData sq = order_square(L, action);
        check_lattice_sandwich(R, sq.E1.lattice, sq.E2.lattice);
        G0Class cls = verify_swan_square(ctx, regular_module(A),
                                         lattice_reduction(A, sq.E1),
                                         lattice_reduction(A, sq.E2), 0);
        CHECK(cls.mult == std::vector<long>{3, 3, 3});
    }
}

TEST_CASE("induction and restriction along the order-7 subgroup, p = 2") {
    LocalRing R = parse_ring("q2");
    FiniteGroup G = build_group("M7_3");
    HopfOrder LG = group_ring_order(G, R);

    std::vector<long> H;
    for (long g = 0; g < G.n; ++g)
        if (element_order(G, g) == 1 || element_order(G, g) == 7) H.push_back(g);
    REQUIRE(H.size() == 7);
    SubgroupOrderData sub = subgroup_order(LG, H);

    FDAlgebra AG = order_fdalgebra(LG);
    FDAlgebra AH = order_fdalgebra(sub.order);
    ModRepContext ctxG = make_context(AG, 0);
    ModRepContext ctxH = make_context(AH, 0);
    CHECK(simple_dims(ctxG) == std::vector<long>{1, 2, 3, 3});
    CHECK(regular_mults(ctxG) == std::vector<long>{1, 1, 3, 3});
    CHECK(ctxG.duality == std::vector<long>{0, 1, 3, 2});
    CHECK(simple_dims(ctxH) == std::vector<long>{1, 3, 3});

    InductionData ind = make_induction(LG, sub, AG, AH);
    CHECK(ind.rank == 3);

    // Inducing the trivial character gives the regular module of the quotient.
    G0Class y0{ctxH.A.id, {1, 0, 0}};
    G0Class ind0 = induce_g0(ind, ctxH, ctxG, y0, 0);
    CHECK(ind0.mult == std::vector<long>{1, 1, 0, 0});

    // Each cubic induces to three copies of a single cubic upstairs, and the
    // two inductions are swapped by duality.
    G0Class ya{ctxH.A.id, {0, 1, 0}};
    G0Class yb{ctxH.A.id, {0, 0, 1}};
    G0Class inda = induce_g0(ind, ctxH, ctxG, ya, 0);
    G0Class indb = induce_g0(ind, ctxH, ctxG, yb, 0);
    CHECK(inda.mult[0] == 0);
    CHECK(inda.mult[1] == 0);
    std::vector<long> tail{inda.mult[2], inda.mult[3]};
    std::sort(tail.begin(), tail.end());
    CHECK(tail == std::vector<long>{0, 3});
    CHECK(g0_dual(ctxG, inda) == indb);

    verify_ind_dual(ind, ctxH, ctxG, ya, 0);
    verify_ind_dual(ind, ctxH, ctxG, G0Class{ctxH.A.id, {1, 2, 1}}, 1);

    // Restricting the regular module gives three copies of the subgroup's.
    AlgModule resreg = restrict_module(ind, AH, AG, regular_module(AG));
    G0Class res = composition_factors(ctxH, resreg, 0);
    CHECK(res.mult == std::vector<long>{3, 3, 3});

    verify_frobenius(ind, ctxH, ctxG, 0, 0, 0);
    verify_frobenius(ind, ctxH, ctxG, 1, 1, 0);
    verify_frobenius(ind, ctxH, ctxG, 1, 2, 0);
    verify_frobenius(ind, ctxH, ctxG, 2, 3, 0);
}

TEST_CASE("induction along the order-7 subgroup, p = 7") {
    LocalRing R = parse_ring("q7");
    FiniteGroup G = build_group("M7_3");
    HopfOrder LG = group_ring_order(G, R);

    std::vector<long> H;
    for (long g = 0; g < G.n; ++g)
        if (element_order(G, g) == 1 || element_order(G, g) == 7) H.push_back(g);
    SubgroupOrderData sub = subgroup_order(LG, H);

    FDAlgebra AG = order_fdalgebra(LG);
    FDAlgebra AH = order_fdalgebra(sub.order);
    ModRepContext ctxG = make_context(AG, 0);
    ModRepContext ctxH = make_context(AH, 0);
    CHECK(simple_dims(ctxG) == std::vector<long>{1, 1, 1});
    CHECK(simple_dims(ctxH) == std::vector<long>{1});

    InductionData ind = make_induction(LG, sub, AG, AH);
    G0Class y{ctxH.A.id, {1}};
    G0Class img = induce_g0(ind, ctxH, ctxG, y, 0);
    CHECK(img.mult == std::vector<long>{1, 1, 1});
    verify_ind_dual(ind, ctxH, ctxG, y, 0);
    verify_frobenius(ind, ctxH, ctxG, 0, 1, 0);
}

TEST_CASE("one-dimensional representations over the ramified cubic ring") {
    LocalRing R = parse_ring("z3pi");
    FiniteGroup C3 = build_group("C3");
    HopfOrder L = group_ring_order(C3, R);
    FDAlgebra A = order_fdalgebra(L);
    ModRepContext ctx = make_context(A, 0);
    REQUIRE(ctx.simples.size() == 1);

    // Trivial character and a cube-root character both land on the single
    // simple with multiplicity one.
    for (long k = 0; k < 3; ++k) {
        std::vector<Mat<Cyclo>> rho;
        for (long g = 0; g < 3; ++g)
            rho.push_back(Mat<Cyclo>(1, 1, Cyclo::zeta_pow(3, (g * k) % 3)));
        auto action = krep_from_group_matrices(L, rho);
        Mat<Cyclo> S(1, 1, Cyclo(1));
        G0Class cls = decomposition_map(L, ctx, action, S, 17 + (std::uint64_t)k);
        CHECK(cls.mult == std::vector<long>{1});
    }
}

TEST_CASE("grothendieck class arithmetic") {
    G0Class a{"A", {1, 2}};
    G0Class b{"A", {0, 3}};
    CHECK(g0_add(a, b).mult == std::vector<long>{1, 5});
    CHECK(g0_add(a, b, 2).mult == std::vector<long>{1, 8});
    CHECK(g0_str(a) == "A:[1,2]");
    CHECK(a != b);
    CHECK_THROWS(g0_add(a, G0Class{"B", {1, 2}}));
}
