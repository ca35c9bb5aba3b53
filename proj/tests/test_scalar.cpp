#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hopfforms/cyclotomic.hpp"
#include "hopfforms/ffield.hpp"
#include "hopfforms/hnf.hpp"
#include "hopfforms/localring.hpp"
#include "hopfforms/matrix.hpp"
#include "hopfforms/numutil.hpp"

using namespace hopfforms;

TEST_CASE("number theory helpers") {
    CHECK(euler_phi(1) == 1);
    CHECK(euler_phi(9) == 6);
    CHECK(euler_phi(21) == 12);
    CHECK(factorize(84) == std::vector<std::pair<long, long>>{{2, 2}, {3, 1}, {7, 1}});
    CHECK(primitive_root(7) == 3);
    CHECK(primitive_root(13) == 2);
    CHECK(mult_order(2, 7) == 3);
    CHECK(mult_order(3, 7) == 6);
    CHECK(mod_inv(3, 7) == 5);
    // smallest ell = 1 (mod 3) above 2*sqrt(3) ~ 3.46
    CHECK(split_prime_above(3, 3) == 7);
    CHECK(split_prime_above(6, 12) == 13);
    CHECK(int_valuation(Int(24), Int(2)) == 3);
    CHECK(rat_valuation(Rat(9, 2), Int(3)) == 2);
    CHECK(rat_valuation(Rat(1, 27), Int(3)) == -3);
}

TEST_CASE("cyclotomic polynomials") {
    // Phi_1 = x - 1, Phi_3 = x^2 + x + 1, Phi_9 = x^6 + x^3 + 1
    CHECK(cyclotomic_polynomial(1) == QPoly{Rat(-1), Rat(1)});
    CHECK(cyclotomic_polynomial(3) == QPoly{Rat(1), Rat(1), Rat(1)});
    QPoly phi9(7, Rat(0));
    phi9[0] = 1;
    phi9[3] = 1;
    phi9[6] = 1;
    CHECK(cyclotomic_polynomial(9) == phi9);
    CHECK(cyclotomic_polynomial(7).size() == 7);
}

TEST_CASE("cyclotomic field arithmetic") {
    Cyclo z3 = Cyclo::zeta(3);
    CHECK((z3 * z3 + z3 + Cyclo(1)).is_zero());
    CHECK(z3.conj() == z3 * z3);
    CHECK(z3 * z3 * z3 == Cyclo(1));
    CHECK((z3 * z3 * z3).conductor() == 1);  // rational values drop to conductor 1
    CHECK((Cyclo::zeta(3) - Cyclo(1)).norm() == Rat(3));
    CHECK((Cyclo::zeta(9) - Cyclo(1)).norm() == Rat(3));
    CHECK((Cyclo::zeta(7) - Cyclo(1)).norm() == Rat(7));

    Cyclo x = Cyclo(1) + z3;
    CHECK(x * x.inverse() == Cyclo(1));
    CHECK(x.inverse() == -z3);  // (1 + z3)(-z3) = -z3 - z3^2 = 1

    // mixed conductors: z9^3 = z3
    CHECK(Cyclo::zeta_pow(9, 3) == z3);
    CHECK((Cyclo::zeta(9) * Cyclo::zeta(3)).root_of_unity_order(100) == 9);
    CHECK(Cyclo(1).root_of_unity_order(10) == 1);
    CHECK(Cyclo(-1).root_of_unity_order(10) == 2);
    CHECK(Cyclo(Rat(2)).root_of_unity_order(10) == 0);

    // galois action permutes roots: sum over orbit is rational
    Cyclo z7 = Cyclo::zeta(7);
    Cyclo s = z7 + z7.galois(2) + z7.galois(4);
    Cyclo sbar = s.conj();
    CHECK((s + sbar) == Cyclo(-1));
    CHECK((s * sbar) == Cyclo(2));
}

TEST_CASE("localized rings: valuations") {
    LocalRing q3 = LocalRing::rational(3);
    CHECK(q3.ram_index() == 1);
    CHECK(q3.res_degree() == 1);
    CHECK(q3.valuation(Cyclo(Rat(9, 2))) == 2);
    CHECK(q3.valuation(Cyclo(Rat(1, 3))) == -1);
    CHECK(q3.in_ring(Cyclo(Rat(5, 7))));
    CHECK(q3.is_unit(Cyclo(Rat(5, 7))));
    CHECK_FALSE(q3.in_ring(Cyclo(Rat(5, 6))));

    LocalRing z3 = LocalRing::cyclotomic_pi(3, 3);
    CHECK(z3.ram_index() == 2);
    CHECK(z3.res_degree() == 1);
    CHECK(z3.valuation(z3.uniformizer()) == 1);
    CHECK(z3.valuation(Cyclo(3)) == 2);  // (zeta3 - 1)^2 = -3 zeta3
    CHECK(z3.valuation(Cyclo::zeta(3)) == 0);
    Cyclo pi = z3.uniformizer();
    CHECK(pi * pi == Cyclo(-3) * Cyclo::zeta(3));

    LocalRing z9 = LocalRing::cyclotomic_pi(9, 3);
    CHECK(z9.ram_index() == 6);
    CHECK(z9.valuation(Cyclo(3)) == 6);
    CHECK(z9.valuation(Cyclo::zeta(9) - Cyclo(1)) == 1);
    // zeta9^3 - 1 = zeta3 - 1 has valuation e/2 = 3
    CHECK(z9.valuation(Cyclo::zeta(3) - Cyclo(1)) == 3);

    LocalRing z7 = LocalRing::cyclotomic_pi(7, 7);
    CHECK(z7.ram_index() == 6);
    CHECK(z7.valuation(Cyclo(7)) == 6);

    // Q(zeta_7) at 2 has three primes above 2; the constructor must refuse.
    CHECK_THROWS(LocalRing(7, 2, Cyclo(2)));
}

TEST_CASE("localized rings: residues and canonical digits") {
    LocalRing q3 = LocalRing::rational(3);
    CHECK(q3.residue(Cyclo(Rat(5))) == 2);
    CHECK(q3.residue(Cyclo(Rat(1, 2))) == 2);  // 1/2 = 2 mod 3
    CHECK(q3.residue(Cyclo(Rat(6, 5))) == 0);
    CHECK(q3.canonical_mod(Cyclo(5), 1) == Cyclo(2));
    CHECK(q3.canonical_mod(Cyclo(5), 2) == Cyclo(5));
    CHECK(q3.canonical_mod(Cyclo(-1), 2) == Cyclo(8));
    CHECK(q3.canonical_mod(Cyclo(Rat(1, 2)), 2) == Cyclo(5));  // 1/2 = 5 mod 9

    LocalRing z3 = LocalRing::cyclotomic_pi(3, 3);
    CHECK(z3.residue(Cyclo::zeta(3)) == 1);
    CHECK(z3.residue(z3.uniformizer()) == 0);
    CHECK(z3.residue(Cyclo(2) + z3.uniformizer()) == 2);
    // canonical digits reconstruct the element modulo pi^a
    Cyclo x = Cyclo(Rat(4, 5)) + Cyclo::zeta(3) * Cyclo(Rat(7, 2));
    for (long a = 0; a <= 5; ++a) {
        Cyclo c = z3.canonical_mod(x, a);
        CHECK(z3.same_mod(c, x, a));
        // digit property: c is a Z-combination sum c_i pi^i with 0 <= c_i < 3
        Cyclo r = c;
        for (long i = 0; i < a && !r.is_zero(); ++i) {
            long d = z3.residue(r);
            CHECK(d >= 0);
            CHECK(d < 3);
            r = (r - Cyclo(d)) * z3.uniformizer().inverse();
        }
    }
    // negative valuation handling
    Cyclo y = Cyclo(1) * z3.uniformizer().inverse();
    Cyclo cy = z3.canonical_mod(y, 1);
    CHECK(z3.same_mod(cy, y, 1));
    CHECK(z3.valuation(cy) == -1);
}

TEST_CASE("finite fields") {
    FF f2(2, 1), f3(3, 1), f8(2, 3), f9(3, 2), f27(3, 3), f4(2, 2);
    CHECK(f8.modulus() == std::vector<long>{1, 1, 0, 1});    // x^3 + x + 1
    CHECK(f9.modulus() == std::vector<long>{1, 0, 1});       // x^2 + 1
    CHECK(f4.modulus() == std::vector<long>{1, 1, 1});       // x^2 + x + 1
    CHECK(f27.modulus() == std::vector<long>{1, 2, 0, 1});   // x^3 + 2x + 1
    CHECK(f8.size() == 8);
    CHECK(f9.size() == 9);

    FFElt t = f8.gen();
    CHECK(t.pow(7).is_one());
    CHECK(t.pow_p(1) == t * t);
    CHECK(t.trace_to_prime() == 0);
    CHECK((t + f8.one()).trace_to_prime() == 1);
    CHECK((t * t.inverse()).is_one());

    FFElt i = f9.gen();  // i^2 = -1
    CHECK((i * i) == -f9.one());
    CHECK(i.pow_p(1) == -i);  // Frobenius is conjugation

    // enumeration order round trip
    for (unsigned long k = 0; k < f9.size(); ++k) CHECK(f9.from_index(k).index() == k);
}

TEST_CASE("polynomial factorization over finite fields") {
    FF f2(2, 1);
    // x^7 - 1 over F_2: (x+1) * two irreducible cubics
    FFPoly f(8, f2.zero());
    f[0] = f2.one();
    f[7] = f2.one();
    auto fac = ffpoly_factor(f2, f, 42);
    REQUIRE(fac.size() == 3);
    CHECK(ffpoly_deg(fac[0].first) == 1);
    CHECK(ffpoly_deg(fac[1].first) == 3);
    CHECK(ffpoly_deg(fac[2].first) == 3);
    for (auto& [g, m] : fac) CHECK(m == 1);
    // determinism: same seed, same output
    auto fac2 = ffpoly_factor(f2, f, 42);
    CHECK(fac == fac2);

    FF f7(7, 1);
    FFPoly g = ffpoly_from_ints(f7, {-1, 0, 0, 1});  // x^3 - 1
    auto roots = ffpoly_roots(f7, g, 0);
    REQUIRE(roots.size() == 3);
    CHECK(roots[0] == f7.from_int(1));
    CHECK(roots[1] == f7.from_int(2));
    CHECK(roots[2] == f7.from_int(4));

    FF f3(3, 1);
    CHECK(ffpoly_is_irreducible(f3, ffpoly_from_ints(f3, {1, 0, 1})));
    CHECK_FALSE(ffpoly_is_irreducible(f3, ffpoly_from_ints(f3, {2, 0, 1})));  // x^2-1

    // multiplicity: (x+1)^2 (x^2+1) over F_3
    FFPoly h = ffpoly_mul(ffpoly_mul(ffpoly_from_ints(f3, {1, 1}), ffpoly_from_ints(f3, {1, 1})),
                          ffpoly_from_ints(f3, {1, 0, 1}));
    auto hf = ffpoly_factor(f3, h, 7);
    REQUIRE(hf.size() == 2);
    CHECK(ffpoly_deg(hf[0].first) == 1);
    CHECK(hf[0].second == 2);
    CHECK(ffpoly_deg(hf[1].first) == 2);
    CHECK(hf[1].second == 1);

    // p-th power: (x^3 - x - 1)^3 = x^9 - x^3 - 1 over F_3 (Frobenius)
    FFPoly w = ffpoly_from_ints(f3, {-1, -1, 0, 1});
    FFPoly w3 = ffpoly_mul(ffpoly_mul(w, w), w);
    auto wf = ffpoly_factor(f3, w3, 1);
    REQUIRE(wf.size() == 1);
    CHECK(wf[0].second == 3);
    CHECK(wf[0].first == ffpoly_monic(w));
}

TEST_CASE("exact matrices") {
    Mat<Rat> a(2, 2, Rat(0));
    a.at(0, 0) = 1;
    a.at(0, 1) = 1;
    a.at(1, 1) = 1;
    auto inv = mat_inverse(a);
    REQUIRE(inv.has_value());
    CHECK(mat_mul(a, *inv) == mat_identity(2, Rat(0)));
    CHECK(mat_det(a) == Rat(1));

    Mat<Rat> b(1, 3, Rat(1));
    auto ker = mat_kernel(b);
    CHECK(ker.size() == 2);
    for (auto& v : ker) {
        Rat s(0);
        for (auto& x : v) s += x;
        CHECK(s == 0);
    }

    Mat<Cyclo> c(2, 2, Cyclo(0));
    c.at(0, 0) = Cyclo::zeta(3);
    c.at(1, 1) = Cyclo(1) + Cyclo::zeta(3);
    CHECK(mat_det(c) == Cyclo::zeta(3) * (Cyclo(1) + Cyclo::zeta(3)));
    auto cinv = mat_inverse(c);
    REQUIRE(cinv.has_value());
    CHECK(mat_mul(c, *cinv) == mat_identity(2, Cyclo(0)));

    FF f5(5, 1);
    Mat<FFElt> d(2, 2, f5.zero());
    d.at(0, 0) = f5.from_int(2);
    d.at(0, 1) = f5.from_int(1);
    d.at(1, 0) = f5.from_int(3);
    d.at(1, 1) = f5.from_int(4);
    CHECK(mat_det(d) == f5.from_int(0));  // 8 - 3 = 5 = 0
    CHECK(mat_rank(d) == 1);
}

TEST_CASE("integer HNF") {
    Mat<Int> m(2, 2, Int(0));
    m.at(0, 0) = 2;
    m.at(1, 0) = 1;
    m.at(1, 1) = 1;
    Mat<Int> h = hnf_integer(m);
    REQUIRE(h.rows == 2);
    CHECK(h.at(0, 0) == 1);
    CHECK(h.at(0, 1) == 1);
    CHECK(h.at(1, 0) == 0);
    CHECK(h.at(1, 1) == 2);

    Mat<Int> id = mat_identity(2, Int(0));
    CHECK(z_lattice_index(id, m) == 2);
    CHECK(z_lattice_member(h, {Int(3), Int(1)}));
    CHECK_FALSE(z_lattice_member(h, {Int(0), Int(1)}));

    // dependent rows are dropped
    Mat<Int> dep(3, 2, Int(0));
    dep.at(0, 0) = 2;
    dep.at(1, 0) = 4;
    dep.at(2, 1) = 3;
    Mat<Int> hd = hnf_integer(dep);
    CHECK(hd.rows == 2);
    CHECK(hd.at(0, 0) == 2);
    CHECK(hd.at(1, 1) == 3);
}

TEST_CASE("local HNF over a DVR") {
    LocalRing z3 = LocalRing::cyclotomic_pi(3, 3);
    Cyclo pi = z3.uniformizer();
    Mat<Cyclo> m(2, 2, Cyclo(0));
    m.at(0, 0) = Cyclo::zeta(3);           // unit
    m.at(0, 1) = Cyclo(2);
    m.at(1, 0) = pi;
    m.at(1, 1) = pi * pi * Cyclo(5);
    Mat<Cyclo> h = hnf_local(z3, m);
    REQUIRE(h.rows == 2);
    CHECK(h.at(0, 0) == Cyclo(1));  // pivot normalized to pi^0
    CHECK(h.at(1, 0).is_zero());
    CHECK(z3.valuation(h.at(1, 1)) >= 1);
    // the row span is unchanged
    CHECK(local_lattice_member(z3, h, {Cyclo::zeta(3), Cyclo(2)}));
    CHECK(local_lattice_member(z3, h, {pi, pi * pi * Cyclo(5)}));

    // canonical: HNF of the HNF is itself
    CHECK(hnf_local(z3, h) == h);

    // index [R^2 : pi R^2] = pi^2
    Mat<Cyclo> id = mat_identity(2, Cyclo(0));
    Mat<Cyclo> pid = mat_scale(pi, id);
    CHECK(local_lattice_index_exp(z3, id, pid) == 2);

    // duality: dual of pi*I is pi^{-1} I; intersect(I, pi I) = pi I
    Mat<Cyclo> d = local_lattice_dual(z3, pid);
    CHECK(z3.valuation(d.at(0, 0)) == -1);
    CHECK(local_lattice_intersect(z3, id, pid) == hnf_local(z3, pid));
    CHECK(local_lattice_sum(z3, id, pid) == id);

    // fractional lattices: basis with negative-valuation pivot survives
    Mat<Cyclo> fr(1, 1, pi.inverse());
    Mat<Cyclo> hf = hnf_local(z3, fr);
    CHECK(z3.valuation(hf.at(0, 0)) == -1);
    CHECK(hf.at(0, 0) == pi.inverse());  // normalized to exactly pi^{-1}
}
