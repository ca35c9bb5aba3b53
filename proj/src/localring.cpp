#include "hopfforms/localring.hpp"

#include <stdexcept>

#include "hopfforms/numutil.hpp"

namespace hopfforms {

LocalRing::LocalRing(long m, long p, const Cyclo& pi) : m_(m), p_(p), pi_(pi) {
    if (!is_prime(p)) throw std::invalid_argument("LocalRing: p must be prime");
    if (m < 1) throw std::invalid_argument("LocalRing: conductor must be >= 1");
    long a = 0, mprime = m;
    while (mprime % p == 0) {
        mprime /= p;
        ++a;
    }
    e_ = euler_phi(m) / euler_phi(mprime);  // phi(p^a)
    f_ = (mprime == 1) ? 1 : mult_order(p % mprime, mprime);
    if (e_ * f_ != euler_phi(m))
        throw std::invalid_argument(
            "LocalRing: more than one prime above p in Q(zeta_m); unsupported");
    pi_inv_ = pi_.inverse();
    if (valuation(pi_) != 1)
        throw std::invalid_argument("LocalRing: given uniformizer does not have valuation 1");
    if (valuation(Cyclo(p)) != e_)
        throw std::logic_error("LocalRing: v(p) != e, ramification bookkeeping broken");
    if (m_ == 1) {
        label_ = "q" + std::to_string(p_);
    } else {
        label_ = "z" + std::to_string(m_) + "pi";
    }
}

LocalRing LocalRing::rational(long p) { return LocalRing(1, p, Cyclo(p)); }

LocalRing LocalRing::cyclotomic_pi(long m, long p) {
    return LocalRing(m, p, Cyclo::zeta(m) - Cyclo(1));
}

long LocalRing::valuation(const Cyclo& x) const {
    if (x.is_zero()) return kInfinity;
    long d = x.conductor();
    if (m_ % d != 0)
        throw std::invalid_argument("LocalRing::valuation: element lies outside Q(zeta_m)");
    Rat nrm = x.norm();
    long vp = rat_valuation(nrm, Int(p_));
    long num = e_ * vp;
    long den = euler_phi(d);
    if (num % den != 0)
        throw std::logic_error("LocalRing::valuation: non-integral valuation, single-prime assumption violated");
    return num / den;
}

Cyclo LocalRing::pi_pow(long k) const {
    Cyclo r(1);
    const Cyclo& b = (k >= 0) ? pi_ : pi_inv_;
    long n = (k >= 0) ? k : -k;
    for (long i = 0; i < n; ++i) r *= b;
    return r;
}

long LocalRing::residue(const Cyclo& x) const {
    if (f_ != 1)
        throw std::invalid_argument("LocalRing::residue: residue field is not F_p (f > 1)");
    if (x.is_zero()) return 0;
    if (valuation(x) < 0)
        throw std::invalid_argument("LocalRing::residue: element has a pole at the prime");
    // Conductor-1 (rational) shortcut.
    if (x.is_rational()) {
        Rat v = x.rational_value();
        if (int_valuation(v.get_num(), Int(p_)) > 0) return 0;
        Int num = v.get_num() % p_;
        Int den = v.get_den() % p_;
        long n = num.get_si(), d = den.get_si();
        if (n < 0) n += p_;
        if (d < 0) d += p_;
        return (n * mod_inv(d, p_)) % p_;
    }
    // Here m is a p-power (f = 1 forces m' = 1 when m > 1), the power basis is
    // an integral basis, and zeta == 1 modulo the maximal ideal.  Clear
    // denominators, peel off the p-part of the common denominator (exact on
    // coefficients because the power basis is integral), evaluate at zeta = 1,
    // and undo the remaining unit denominator mod p.
    Cyclo xe = x.embedded(m_);
    Int c(1);
    for (const Rat& coef : xe.coeffs()) {
        Int den = coef.get_den();
        Int g;
        mpz_gcd(g.get_mpz_t(), c.get_mpz_t(), den.get_mpz_t());
        c = c / g * den;
    }
    long t = int_valuation(c, Int(p_));
    Int pt(1);
    for (long i = 0; i < t; ++i) pt *= p_;
    Int sum(0);
    for (const Rat& coef : xe.coeffs()) {
        Rat scaled = coef * Rat(c);
        if (scaled.get_den() != 1)
            throw std::logic_error("LocalRing::residue: denominator clearing failed");
        Int num = scaled.get_num();
        Int q, r;
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), pt.get_mpz_t());
        if (r != 0)
            throw std::logic_error("LocalRing::residue: p-part of denominator not coefficient-wise divisible");
        sum += q;
    }
    Int unit = (c / pt) % p_;
    long u = unit.get_si();
    if (u < 0) u += p_;
    Int s = sum % p_;
    long sv = s.get_si();
    if (sv < 0) sv += p_;
    return (sv * mod_inv(u, p_)) % p_;
}

Cyclo LocalRing::canonical_mod(const Cyclo& x, long a) const {
    if (x.is_zero()) return Cyclo(0);
    long v = valuation(x);
    if (v >= a) return Cyclo(0);
    if (v < 0) {
        Cyclo shifted = x * pi_pow(-v);
        return canonical_mod(shifted, a - v) * pi_pow(v);
    }
    Cyclo r = x, out(0), pw(1);
    for (long i = 0; i < a; ++i) {
        long c = residue(r);
        if (c != 0) out += Cyclo(c) * pw;
        r = (r - Cyclo(c)) * pi_inv_;
        pw *= pi_;
        if (r.is_zero()) break;
    }
    return out;
}

bool LocalRing::same_mod(const Cyclo& x, const Cyclo& y, long a) const {
    Cyclo d = x - y;
    return d.is_zero() || valuation(d) >= a;
}

LocalRing parse_ring(const std::string& spec) {
    if (spec.size() >= 2 && spec[0] == 'q') {
        long p = std::stol(spec.substr(1));
        return LocalRing::rational(p);
    }
    if (spec.size() >= 4 && spec[0] == 'z' && spec.substr(spec.size() - 2) == "pi") {
        long m = std::stol(spec.substr(1, spec.size() - 3));
        auto fac = factorize(m);
        if (fac.size() != 1)
            throw std::invalid_argument("parse_ring: z<m>pi needs a prime-power m");
        return LocalRing::cyclotomic_pi(m, fac[0].first);
    }
    throw std::invalid_argument("parse_ring: unrecognized ring label '" + spec + "'");
}

}  // namespace hopfforms
