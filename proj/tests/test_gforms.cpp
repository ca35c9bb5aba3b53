#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hopfforms/forms.hpp"
#include "hopfforms/hopforder.hpp"

using namespace hopfforms;

namespace {

Mat<Cyclo> identity_rows(long n) { return mat_identity(n, Cyclo(1)); }

// Lattice basis of Lam^m in standard module coordinates (g, i) -> g*m + i;
// row (k, i) places basis row k of Lam into component i.
Mat<Cyclo> module_lattice_rows(const Mat<Cyclo>& order_basis, long m) {
    const long n = order_basis.rows;
    Mat<Cyclo> L(n * m, n * m, Cyclo(0));
    for (long k = 0; k < n; ++k)
        for (long i = 0; i < m; ++i)
            for (long g = 0; g < n; ++g)
                L.at(k * m + i, g * m + i) = order_basis.at(k, g);
    return L;
}

bool all_in_ring(const LocalRing& R, const Mat<Cyclo>& M) {
    for (const auto& x : M.a)
        if (!R.in_ring(x)) return false;
    return true;
}

bool value_in_ring(const LocalRing& R, const std::vector<Cyclo>& v) {
    for (const auto& x : v)
        if (!R.in_ring(x)) return false;
    return true;
}

std::vector<FFElt> ff_ga_from_index(const FF& k, long n, unsigned long idx) {
    std::vector<FFElt> u((size_t)n, k.zero());
    for (long g = 0; g < n; ++g) {
        u[(size_t)g] = k.from_index(idx % k.size());
        idx /= k.size();
    }
    return u;
}

}  // namespace

TEST_CASE("unit form: kappa(g,h) = lambda delta and its hermitian companion") {
    FiniteGroup G = build_group("C3");
    LocalRing R = LocalRing::cyclotomic_pi(3, 3);

    GQuadForm<Cyclo> kappa1 = unit_form_quad(G, Cyclo(1));
    CHECK_NOTHROW(verify_quad_form(kappa1));
    CHECK(kappa1.gram == identity_rows(3));

    HermForm<Cyclo> hk = unit_form_herm(G, Cyclo(1));
    CHECK_NOTHROW(verify_herm_form(hk));
    CHECK(quad_to_herm(kappa1, Cyclo(1)).values == hk.values);
    CHECK(herm_to_quad(hk, Cyclo(1)).gram == kappa1.gram);

    // Scaled case: the discriminant determinant is lambda^n exactly.
    Cyclo lam = R.pi_pow(2);
    GQuadForm<Cyclo> kappa = unit_form_quad(G, lam);
    CHECK_NOTHROW(verify_quad_form(kappa));
    CHECK(quad_det(kappa) == R.pi_pow(6));
    CHECK(herm_to_quad(quad_to_herm(kappa, lam), lam).gram == kappa.gram);
}

TEST_CASE("trace form of Map(G,R) is the unit form, and transports by theta") {
    FiniteGroup G = build_group("C3");
    LocalRing R = LocalRing::cyclotomic_pi(3, 3);
    GAlgebra<Cyclo> B = map_galgebra(G);
    CHECK_NOTHROW(verify_galgebra(B));

    // Module basis: the indicator of the identity is a normal generator.
    std::vector<std::vector<Cyclo>> E{basis_unit_vector(B, 0)};
    GQuadForm<Cyclo> tr = trace_form(B, Cyclo(1), E);
    CHECK_NOTHROW(verify_quad_form(tr));
    CHECK(tr.gram == identity_rows(3));

    // For the dual of the Larson order: Tr' pulled back along u -> u.theta
    // has Gram kappa = lambda I on the group basis.
    HopfOrder lam1 = larson_order(3, 1, 1, R);
    HopfOrder A = dual_order(lam1);
    Cyclo lam = order_lambda(A);
    CHECK(lam == R.pi_pow(2));
    CVec theta = order_theta(A);
    GQuadForm<Cyclo> trp = trace_form(B, lam, {theta});
    CHECK_NOTHROW(verify_quad_form(trp));
    Mat<Cyclo> U(3, 3, Cyclo(0));
    for (long g = 0; g < 3; ++g) {
        CVec dg((size_t)3, Cyclo(0));
        dg[(size_t)g] = Cyclo(1);
        CVec gtheta = ga_act(G, dg, theta);
        for (long r = 0; r < 3; ++r) U.at(r, g) = gtheta[(size_t)r];
    }
    Mat<Cyclo> pulled = mat_mul(mat_mul(mat_transpose(U), trp.gram), U);
    CHECK(pulled == unit_form_quad(G, lam).gram);

    // Tr' is integral and perfect on the A-lattice.
    Mat<Cyclo> on_lattice = gram_on_rows(trp.gram, A.basis);
    CHECK(all_in_ring(R, on_lattice));
    CHECK(R.valuation(mat_det(on_lattice)) == 0);
}

TEST_CASE("correspondence roundtrips over the group ring") {
    LocalRing R = LocalRing::rational(3);
    for (const char* preset : {"C3", "C9", "C3xC3", "M7_3"}) {
        FiniteGroup G = build_group(preset);
        std::mt19937_64 rng(20260814);
        const Cyclo one(1);
        long checked = 0;
        for (int iter = 0; iter < 200; ++iter) {
            long m = (G.n <= 9) ? 1 + iter % 2 : 1;
            if (iter % 2 == 0) {
                GQuadForm<Cyclo> q = random_invariant_quad(G, m, rng);
                shift_module_basis(q, R, rng);
                if (iter % 20 == 0) verify_quad_form(q);
                HermForm<Cyclo> h = quad_to_herm(q, one);
                verify_herm_form(h);
                // Values of h_q are integral: they lie in R[G].
                for (const auto& row : h.values)
                    for (const auto& val : row) REQUIRE(value_in_ring(R, val));
                GQuadForm<Cyclo> back =
                    herm_to_quad_on(G, q.action, q.module_basis, h, one);
                REQUIRE(back.gram == q.gram);
            } else {
                HermForm<Cyclo> h = random_herm_over(G, m, identity_rows(G.n), rng);
                verify_herm_form(h);
                GQuadForm<Cyclo> q = herm_to_quad(h, one);
                // q_h is R-valued on the lattice.
                REQUIRE(all_in_ring(R, q.gram));
                HermForm<Cyclo> back = quad_to_herm(q, one);
                REQUIRE(back.values == h.values);
            }
            ++checked;
        }
        CHECK(checked == 200);
    }
}

TEST_CASE("correspondence roundtrips over the Larson dual") {
    LocalRing R = LocalRing::cyclotomic_pi(3, 3);
    FiniteGroup G = build_group("C3");
    HopfOrder lam1 = larson_order(3, 1, 1, R);
    HopfOrder A = dual_order(lam1);
    Cyclo lam = order_lambda(A);
    std::mt19937_64 rng(97);
    long checked = 0;
    for (int iter = 0; iter < 200; ++iter) {
        long m = 1 + iter % 2;
        HermForm<Cyclo> h = random_herm_over(G, m, lam1.basis, rng);
        verify_herm_form(h);
        for (const auto& row : h.values)
            for (const auto& val : row) REQUIRE(lam1.contains(val));
        GQuadForm<Cyclo> q = herm_to_quad(h, lam);
        // The quadratic form is R-valued on the Lam^m lattice.
        REQUIRE(all_in_ring(R, gram_on_rows(q.gram, module_lattice_rows(lam1.basis, m))));
        // Both composites are the identity.
        HermForm<Cyclo> h2 = quad_to_herm(q, lam);
        REQUIRE(h2.values == h.values);
        REQUIRE(herm_to_quad(h2, lam).gram == q.gram);
        ++checked;
    }
    CHECK(checked == 200);
}

TEST_CASE("nondegeneracy transfers between the two sides") {
    FiniteGroup G = build_group("C3");
    std::mt19937_64 rng(5);
    const Cyclo one(1);
    for (int iter = 0; iter < 40; ++iter) {
        long m = 1 + iter % 2;
        HermForm<Cyclo> h = random_herm_over(G, m, identity_rows(3), rng);
        if (iter % 4 == 0) {
            // Degenerate by construction: kill the first row and column.
            for (long j = 0; j < m; ++j) {
                h.values[0][(size_t)j].assign(3, Cyclo(0));
                h.values[(size_t)j][0].assign(3, Cyclo(0));
            }
        }
        GQuadForm<Cyclo> q = herm_to_quad(h, one);
        CHECK(herm_nondegenerate(h) == !scalar_is_zero(quad_det(q)));
        if (iter % 4 == 0) CHECK(!herm_nondegenerate(h));
    }
}

TEST_CASE("torsor algebras validate") {
    for (const char* preset : {"C3", "C9", "C3xC3"})
        CHECK_NOTHROW(verify_galgebra(map_galgebra(build_group(preset))));
    CHECK_NOTHROW(verify_galgebra(frobenius_galgebra(2, 3)));
    CHECK_NOTHROW(verify_galgebra(frobenius_galgebra(3, 3)));
    CHECK_NOTHROW(verify_galgebra(frobenius_galgebra(3, 2)));
    CHECK_NOTHROW(verify_galgebra(split_plus_field_algebra()));
}

TEST_CASE("resolvent translation and square identities") {
    std::mt19937_64 rng(11);
    // Characteristic-zero indicator algebras, including a nonabelian group.
    for (const char* preset : {"C3", "C9", "M7_3"}) {
        GAlgebra<Cyclo> B = map_galgebra(build_group(preset));
        std::vector<Cyclo> x((size_t)B.dim);
        for (long i = 0; i < B.dim; ++i)
            x[(size_t)i] = Cyclo(Rat((long)draw_mod(rng, 9) - 4, 1 + (long)draw_mod(rng, 2)));
        CHECK(resolvent_translation_ok(B, x));
        CHECK(resolvent_square_ok(B, x));
    }
    // Finite field torsors.
    for (auto [p, n] : {std::pair<long, long>{2, 3}, {3, 3}, {3, 2}}) {
        GAlgebra<FFElt> B = frobenius_galgebra(p, n);
        const FF k = B.unit[0].field();
        for (unsigned long idx : {1ul, 3ul, 5ul}) {
            std::vector<FFElt> x = ff_ga_from_index(k, n, idx);
            CHECK(resolvent_translation_ok(B, x));
            CHECK(resolvent_square_ok(B, x));
        }
    }
}

TEST_CASE("resolvent squares of isometric generators equal lambda^2") {
    // Trivial torsors: the indicator of the identity has r(b) bar(r(b)) = 1.
    for (const char* preset : {"C3", "C9", "C3xC3", "M7_3"}) {
        GAlgebra<Cyclo> B = map_galgebra(build_group(preset));
        std::vector<Cyclo> b = basis_unit_vector(B, 0);
        BG<Cyclo> sq = bg_mul(B, resolvent(B, b), bg_bar(B.G, resolvent(B, b)));
        CHECK(sq == bg_unit(B));
    }
    // Frobenius torsors: any self-dual normal generator.
    for (auto [p, n] : {std::pair<long, long>{2, 3}, {3, 3}}) {
        GAlgebra<FFElt> B = frobenius_galgebra(p, n);
        SdnbResult s = sdnb_search(p, n, false, 1 << 20);
        REQUIRE(s.found);
        BG<FFElt> sq =
            bg_mul(B, resolvent(B, s.witness), bg_bar(B.G, resolvent(B, s.witness)));
        CHECK(sq == bg_unit(B));
    }
    // Dual of the Larson order as a trivial torsor: b = theta, lambda = pi^2.
    LocalRing R = LocalRing::cyclotomic_pi(3, 3);
    HopfOrder A = dual_order(larson_order(3, 1, 1, R));
    Cyclo lam = order_lambda(A);
    GAlgebra<Cyclo> B = map_galgebra(A.G);
    CVec theta = order_theta(A);
    BG<Cyclo> sq = bg_mul(B, resolvent(B, theta), bg_bar(B.G, resolvent(B, theta)));
    BG<Cyclo> expect = bg_zero(B);
    for (long r = 0; r < B.dim; ++r) expect[0][(size_t)r] = lam * lam;
    CHECK(sq == expect);
    // Tr(theta (g theta)) = lambda^2 Tr(l (g l)) for every g.
    CVec l0 = basis_unit_vector(B, 0);
    for (long g = 0; g < B.G.n; ++g) {
        Cyclo lhs = alg_trace(B, alg_mul(B, theta, mat_apply(B.action[(size_t)g], theta)));
        Cyclo rhs = alg_trace(B, alg_mul(B, l0, mat_apply(B.action[(size_t)g], l0)));
        CHECK(lhs == lam * lam * rhs);
    }
}

TEST_CASE("torsor certificates: determinant of the splitting map") {
    LocalRing R3 = LocalRing::rational(3);
    for (const char* preset : {"C3", "C9", "M7_3"}) {
        GAlgebra<Cyclo> B = map_galgebra(build_group(preset));
        CHECK(R3.valuation(torsor_det(B, coordinate_rows(B))) == 0);
    }
    for (auto [p, n] : {std::pair<long, long>{2, 3}, {3, 3}, {3, 2}}) {
        GAlgebra<FFElt> B = frobenius_galgebra(p, n);
        CHECK(!torsor_det(B, coordinate_rows(B)).is_zero());
    }
    // F4 x F2 admits no C3-torsor structure.
    GAlgebra<FFElt> S = split_plus_field_algebra();
    CHECK(torsor_det(S, coordinate_rows(S)).is_zero());
    // The Larson-dual lattice is not a torsor for the constant group scheme.
    // Base change multiplies the determinant by det(C)^n (source C x C,
    // target one C per group element), so the valuation is 3 * v(det C) = 9.
    LocalRing R = LocalRing::cyclotomic_pi(3, 3);
    HopfOrder A = dual_order(larson_order(3, 1, 1, R));
    GAlgebra<Cyclo> B = map_galgebra(A.G);
    CHECK(R.valuation(torsor_det(B, A.basis)) == 9);
}

TEST_CASE("self-dual normal basis search") {
    // F8/F2: witness exists; verify it independently in the big field.
    SdnbResult s8 = sdnb_search(2, 3, false, 1 << 20);
    REQUIRE(s8.found);
    {
        FF big(2, 3);
        std::vector<long> digits;
        for (const auto& c : s8.witness) digits.push_back((long)c.index());
        FFElt x = big.element(digits);
        for (long g = 0; g < 3; ++g) {
            long tr = (x * x.pow_p(g)).trace_to_prime();
            CHECK(tr == (g == 0 ? 1 : 0));
        }
    }
    // All witnesses form one orbit under the translation unitaries: in
    // F2[C3] the unitary group is {1, g, g^2}, so there are exactly three.
    std::vector<unsigned long> all8 = sdnb_all_indices(2, 3);
    CHECK(all8.size() == 3);
    {
        GAlgebra<FFElt> B = frobenius_galgebra(2, 3);
        std::vector<FFElt> first = ff_ga_from_index(B.unit[0].field(), 3, all8[0]);
        std::vector<unsigned long> orbit;
        for (long g = 0; g < 3; ++g) {
            std::vector<FFElt> gx = mat_apply(B.action[(size_t)g], first);
            unsigned long idx = 0, mult = 1;
            for (const auto& c : gx) {
                idx += c.index() * mult;
                mult *= 2;
            }
            orbit.push_back(idx);
        }
        std::sort(orbit.begin(), orbit.end());
        CHECK(orbit == all8);
    }
    // F27/F3: witnesses match the unitary count of F3[C3] exactly.
    SdnbResult s27 = sdnb_search(3, 3, false, 1 << 20);
    REQUIRE(s27.found);
    std::vector<unsigned long> all27 = sdnb_all_indices(3, 3);
    {
        FiniteGroup G = build_group("C3");
        FF k(3, 1);
        long unitaries = 0;
        for (unsigned long idx = 0; idx < 27; ++idx) {
            std::vector<FFElt> u = ff_ga_from_index(k, 3, idx);
            if (ga_mul(G, u, ga_bar(G, u)) == ga_unit(G, k.one())) ++unitaries;
        }
        CHECK((long)all27.size() == unitaries);
        // F3[C3] is local (3 divides the order), units split as +-1 times the
        // 9 principal units; exactly 6 of the 18 units satisfy u bar(u) = 1.
        CHECK(unitaries == 6);
    }
    // F9/F3: even order, no witness; refused without the negative-test flag.
    SdnbResult s9 = sdnb_search(3, 2, true, 1 << 20);
    CHECK(!s9.found);
    CHECK(s9.searched == 9);
    CHECK_THROWS_AS(sdnb_search(3, 2, false, 1 << 20), std::invalid_argument);
    CHECK_THROWS_AS(sdnb_search(2, 25, false, 1 << 20), std::runtime_error);
}

TEST_CASE("finite isometry search") {
    FF k3(3, 1);
    FF k2(2, 1);
    FiniteGroup G = build_group("C3");

    // A form is isometric to itself via the identity.
    GQuadForm<FFElt> kappa3 = unit_form_quad(G, k3.one());
    auto self = g_isometry_finite(kappa3, kappa3, 1 << 20);
    REQUIRE(self.has_value());
    CHECK(self->u == ga_unit(G, k3.one()));
    CHECK(self->unitary);

    // (F8, Tr) is isometric to the unit form of F2[C3]; with a self-dual
    // normal generator as module basis the witness is unitary.
    {
        GAlgebra<FFElt> B = frobenius_galgebra(2, 3);
        GQuadForm<FFElt> kappa2 = unit_form_quad(G, k2.one());
        auto nu = find_normal_generator(B);
        REQUIRE(nu.has_value());
        GQuadForm<FFElt> trB = trace_form(B, k2.one(), {*nu});
        auto iso = g_isometry_finite(trB, kappa2, 1 << 20);
        REQUIRE(iso.has_value());

        SdnbResult s = sdnb_search(2, 3, false, 1 << 20);
        GQuadForm<FFElt> trB_sd = trace_form(B, k2.one(), {s.witness});
        auto iso_sd = g_isometry_finite(trB_sd, kappa2, 1 << 20);
        REQUIRE(iso_sd.has_value());
        CHECK(iso_sd->unitary);
    }
    // Same for F27 over F3 (odd order: trace form of a certified torsor is
    // isometric to the unit form).
    {
        GAlgebra<FFElt> B = frobenius_galgebra(3, 3);
        SdnbResult s = sdnb_search(3, 3, false, 1 << 20);
        GQuadForm<FFElt> trB = trace_form(B, k3.one(), {s.witness});
        auto iso = g_isometry_finite(trB, kappa3, 1 << 20);
        REQUIRE(iso.has_value());
        CHECK(iso->unitary);
    }

    // kappa vs 2 kappa over F3[C3]: not isometric (discriminant class).
    {
        GQuadForm<FFElt> twok = unit_form_quad(G, k3.from_int(2));
        auto iso = g_isometry_finite(kappa3, twok, 1 << 20);
        CHECK(!iso.has_value());
    }

    // Automorphisms of the unit form are exactly the unitary elements.
    for (const FF& k : {k2, k3}) {
        GQuadForm<FFElt> kap = unit_form_quad(G, k.one());
        Mat<FFElt> I3 = mat_identity(3, k.one());
        unsigned long total = k.size() * k.size() * k.size();
        for (unsigned long idx = 0; idx < total; ++idx) {
            std::vector<FFElt> u = ff_ga_from_index(k, 3, idx);
            Mat<FFElt> Ru(3, 3, k.zero());
            for (long g = 0; g < 3; ++g)
                for (long t = 0; t < 3; ++t) Ru.at(G.mul(g, t), g) = u[(size_t)t];
            bool isometry = mat_mul(mat_mul(mat_transpose(Ru), I3), Ru) == I3;
            bool unitary = ga_mul(G, u, ga_bar(G, u)) == ga_unit(G, k.one());
            CHECK(isometry == unitary);
        }
    }
}

TEST_CASE("comparison unitaries between generators") {
    // F8/F2: all pairs of self-dual generators give unitary comparisons.
    {
        GAlgebra<FFElt> B = frobenius_galgebra(2, 3);
        const FF k = B.unit[0].field();
        std::vector<unsigned long> all = sdnb_all_indices(2, 3);
        std::vector<std::vector<FFElt>> gens;
        for (unsigned long idx : all) gens.push_back(ff_ga_from_index(k, 3, idx));
        for (const auto& b : gens)
            for (const auto& b0 : gens) {
                auto cmp = comparison_unitary(B, b, b0, k.one());
                CHECK(ga_mul(B.G, cmp.theta, ga_bar(B.G, cmp.theta)) ==
                      ga_unit(B.G, k.one()));
                CHECK(ga_eps(cmp.theta) == k.one());
                if (b == b0) CHECK(cmp.theta == ga_unit(B.G, k.one()));
            }
        // A non-generator fails the unit precondition.
        CHECK_THROWS_WITH_AS(comparison_unitary(B, B.unit, gens[0], k.one()),
                             doctest::Contains("not a unit"), std::runtime_error);
    }
    // F27/F3: a normal generator that is not self-dual is rejected.
    {
        GAlgebra<FFElt> B = frobenius_galgebra(3, 3);
        const FF k = B.unit[0].field();
        std::vector<unsigned long> sd = sdnb_all_indices(3, 3);
        std::vector<FFElt> b0 = ff_ga_from_index(k, 3, sd[0]);
        std::vector<FFElt> bad;
        for (unsigned long idx = 1; idx < 27; ++idx) {
            if (std::find(sd.begin(), sd.end(), idx) != sd.end()) continue;
            std::vector<FFElt> cand = ff_ga_from_index(k, 3, idx);
            GAlgebra<FFElt> copy = B;
            Mat<FFElt> T(3, 3, k.zero());
            for (long g = 0; g < 3; ++g) {
                auto gx = mat_apply(B.action[(size_t)g], cand);
                for (long r = 0; r < 3; ++r) T.at(r, g) = gx[(size_t)r];
            }
            if (mat_inverse(T)) {
                bad = cand;
                break;
            }
        }
        REQUIRE(!bad.empty());
        CHECK_THROWS_WITH_AS(comparison_unitary(B, bad, b0, k.one()),
                             doctest::Contains("not unitary"), std::runtime_error);
    }
    // Trivial torsor over the Larson dual: translates of theta compare by
    // group elements; theta against itself gives 1.
    {
        LocalRing R = LocalRing::cyclotomic_pi(3, 3);
        HopfOrder A = dual_order(larson_order(3, 1, 1, R));
        Cyclo lam = order_lambda(A);
        GAlgebra<Cyclo> B = map_galgebra(A.G);
        CVec theta = order_theta(A);
        auto same = comparison_unitary(B, theta, theta, lam);
        CHECK(same.theta == ga_unit(B.G, Cyclo(1)));
        CHECK(!same.flipped);
        for (long g = 1; g < 3; ++g) {
            CVec gtheta = mat_apply(B.action[(size_t)g], theta);
            auto cmp = comparison_unitary(B, gtheta, theta, lam);
            CVec dg((size_t)3, Cyclo(0));
            dg[(size_t)g] = Cyclo(1);
            CHECK(cmp.theta == dg);
            CHECK(!cmp.flipped);
            CHECK(A.contains(cmp.theta) == false);  // lives in the dual side order
            HopfOrder AD = dual_order(A);
            CHECK(AD.contains(cmp.theta));
        }
        // Sign normalization: -theta compares to theta with epsilon fixed to +1.
        CVec neg = theta;
        for (auto& c : neg) c = -c;
        auto cmp = comparison_unitary(B, neg, theta, lam);
        CHECK(cmp.flipped);
        CHECK(ga_eps(cmp.theta) == Cyclo(1));
        CHECK(cmp.generator == theta);
    }
}

TEST_CASE("randomized form construction is deterministic in the seed") {
    FiniteGroup G = build_group("C9");
    std::mt19937_64 r1(42), r2(42);
    GQuadForm<Cyclo> a = random_invariant_quad(G, 2, r1);
    GQuadForm<Cyclo> b = random_invariant_quad(G, 2, r2);
    CHECK(a.gram == b.gram);
    std::mt19937_64 r3(43);
    CHECK(random_invariant_quad(G, 2, r3).gram != a.gram);
}
