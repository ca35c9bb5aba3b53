#include "hopfforms/numutil.hpp"

#include <stdexcept>

#include "hopfforms/rational.hpp"

namespace hopfforms {

long int_valuation(const Int& n, const Int& p) {
    if (n == 0) throw std::invalid_argument("int_valuation: zero argument");
    Int a = n, q, r;
    long v = 0;
    for (;;) {
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
        if (r != 0) return v;
        a = q;
        ++v;
    }
}

long rat_valuation(const Rat& x, const Int& p) {
    if (x == 0) throw std::invalid_argument("rat_valuation: zero argument");
    return int_valuation(x.get_num(), p) - int_valuation(x.get_den(), p);
}

std::string rat_str(const Rat& x) { return x.get_str(); }

long gcd_long(long a, long b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

long lcm_long(long a, long b) {
    if (a == 0 || b == 0) return 0;
    return a / gcd_long(a, b) * b;
}

std::vector<std::pair<long, long>> factorize(long n) {
    if (n <= 0) throw std::invalid_argument("factorize: n must be positive");
    std::vector<std::pair<long, long>> out;
    for (long p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p != 0) continue;
        long e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

bool is_prime(long n) {
    if (n < 2) return false;
    for (long p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

long euler_phi(long n) {
    long r = n;
    for (auto [p, e] : factorize(n)) {
        (void)e;
        r -= r / p;
    }
    return r;
}

long mod_pow(long a, long e, long m) {
    if (m <= 1) throw std::invalid_argument("mod_pow: modulus must be > 1");
    long r = 1 % m;
    a %= m;
    if (a < 0) a += m;
    while (e > 0) {
        if (e & 1) r = (r * a) % m;
        a = (a * a) % m;
        e >>= 1;
    }
    return r;
}

long mod_inv(long a, long m) {
    a %= m;
    if (a < 0) a += m;
    long t = 0, newt = 1, r = m, newr = a;
    while (newr != 0) {
        long q = r / newr;
        long tmp = t - q * newt;
        t = newt;
        newt = tmp;
        tmp = r - q * newr;
        r = newr;
        newr = tmp;
    }
    if (r != 1) throw std::invalid_argument("mod_inv: argument not invertible");
    if (t < 0) t += m;
    return t;
}

long mult_order(long a, long m) {
    a %= m;
    if (a < 0) a += m;
    if (gcd_long(a, m) != 1)
        throw std::invalid_argument("mult_order: argument not a unit");
    long ord = 1;
    long x = a % m;
    while (x != 1 % m) {
        x = (x * a) % m;
        ++ord;
        if (ord > m) throw std::logic_error("mult_order: no order found");
    }
    return ord;
}

long primitive_root(long ell) {
    if (!is_prime(ell) || ell == 2)
        throw std::invalid_argument("primitive_root: need an odd prime");
    auto fac = factorize(ell - 1);
    for (long g = 2; g < ell; ++g) {
        bool ok = true;
        for (auto [p, e] : fac) {
            (void)e;
            if (mod_pow(g, (ell - 1) / p, ell) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
    throw std::logic_error("primitive_root: none found");
}

long split_prime_above(long e, long lower) {
    for (long ell = lower + 1;; ++ell) {
        if (ell % e == 1 && is_prime(ell)) return ell;
    }
}

}  // namespace hopfforms
