#include "hopfforms/cyclotomic.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

#include "hopfforms/numutil.hpp"

namespace hopfforms {

QPoly qpoly_trim(QPoly f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
    return f;
}

QPoly qpoly_add(const QPoly& f, const QPoly& g) {
    QPoly r(std::max(f.size(), g.size()), Rat(0));
    for (size_t i = 0; i < f.size(); ++i) r[i] += f[i];
    for (size_t i = 0; i < g.size(); ++i) r[i] += g[i];
    return qpoly_trim(std::move(r));
}

QPoly qpoly_sub(const QPoly& f, const QPoly& g) {
    QPoly r(std::max(f.size(), g.size()), Rat(0));
    for (size_t i = 0; i < f.size(); ++i) r[i] += f[i];
    for (size_t i = 0; i < g.size(); ++i) r[i] -= g[i];
    return qpoly_trim(std::move(r));
}

QPoly qpoly_mul(const QPoly& f, const QPoly& g) {
    if (f.empty() || g.empty()) return {};
    QPoly r(f.size() + g.size() - 1, Rat(0));
    for (size_t i = 0; i < f.size(); ++i) {
        if (f[i] == 0) continue;
        for (size_t j = 0; j < g.size(); ++j) r[i + j] += f[i] * g[j];
    }
    return qpoly_trim(std::move(r));
}

std::pair<QPoly, QPoly> qpoly_divmod(const QPoly& f, const QPoly& g) {
    QPoly gg = qpoly_trim(g);
    if (gg.empty()) throw std::invalid_argument("qpoly_divmod: division by zero");
    QPoly r = qpoly_trim(f);
    if (r.size() < gg.size()) return {{}, r};
    QPoly q(r.size() - gg.size() + 1, Rat(0));
    const Rat lead = gg.back();
    while (r.size() >= gg.size()) {
        size_t i = r.size() - gg.size();
        Rat coef = r.back() / lead;
        q[i] = coef;
        for (size_t j = 0; j < gg.size(); ++j) r[i + j] -= coef * gg[j];
        r = qpoly_trim(std::move(r));
    }
    return {qpoly_trim(std::move(q)), r};
}

const QPoly& cyclotomic_polynomial(long n) {
    static std::map<long, QPoly> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    if (n < 1) throw std::invalid_argument("cyclotomic_polynomial: n >= 1 required");
    // x^n - 1 divided by the cyclotomic polynomials of all proper divisors.
    QPoly f(n + 1, Rat(0));
    f[0] = -1;
    f[n] = 1;
    for (long d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        auto [q, r] = qpoly_divmod(f, cyclotomic_polynomial(d));
        if (!r.empty()) throw std::logic_error("cyclotomic_polynomial: inexact division");
        f = std::move(q);
    }
    return cache.emplace(n, std::move(f)).first->second;
}

Cyclo::Cyclo() : n_(1), c_{Rat(0)} {}
Cyclo::Cyclo(const Rat& r) : n_(1), c_{r} {
    // mpq_class(num, den) does not reduce; GMP arithmetic silently
    // misbehaves on non-canonical values, so normalize at the boundary.
    c_[0].canonicalize();
}
Cyclo::Cyclo(long v) : n_(1), c_{Rat(v)} {}

Cyclo Cyclo::zeta(long n) { return zeta_pow(n, 1); }

Cyclo Cyclo::zeta_pow(long n, long k) {
    QPoly f;
    k %= n;
    if (k < 0) k += n;
    f.assign(k + 1, Rat(0));
    f[k] = 1;
    return from_coeffs(n, std::move(f));
}

Cyclo Cyclo::from_coeffs(long n, QPoly coeffs) {
    if (n < 1) throw std::invalid_argument("Cyclo: conductor must be >= 1");
    for (auto& c : coeffs) c.canonicalize();  // see Cyclo(const Rat&)
    Cyclo x;
    x.n_ = n;
    QPoly r = qpoly_divmod(coeffs, cyclotomic_polynomial(n)).second;
    r.resize(euler_phi(n), Rat(0));
    x.c_ = std::move(r);
    x.reduce_conductor_if_rational();
    return x;
}

void Cyclo::reduce_conductor_if_rational() {
    if (n_ == 1) return;
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return;
    Rat v = c_[0];
    n_ = 1;
    c_ = {v};
}

bool Cyclo::is_zero() const {
    for (const Rat& x : c_)
        if (x != 0) return false;
    return true;
}

bool Cyclo::is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

Rat Cyclo::rational_value() const {
    if (!is_rational()) throw std::invalid_argument("Cyclo: value not rational: " + str());
    return c_[0];
}

Cyclo Cyclo::embedded(long m) const {
    if (m % n_ != 0) throw std::invalid_argument("Cyclo::embedded: conductor must divide target");
    if (m == n_) return *this;
    long s = m / n_;
    QPoly f(((long)c_.size() - 1) * s + 1, Rat(0));
    for (size_t i = 0; i < c_.size(); ++i) f[i * s] = c_[i];
    // Keep the promised conductor m even for rational values; callers index
    // coefficient vectors of matching length phi(m).
    Cyclo x;
    x.n_ = m;
    QPoly r = qpoly_divmod(f, cyclotomic_polynomial(m)).second;
    r.resize(euler_phi(m), Rat(0));
    x.c_ = std::move(r);
    return x;
}

Cyclo Cyclo::operator-() const {
    Cyclo r = *this;
    for (Rat& x : r.c_) x = -x;
    return r;
}

Cyclo& Cyclo::operator+=(const Cyclo& o) {
    if (n_ == o.n_) {  // same power basis: coefficientwise
        for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        reduce_conductor_if_rational();
        return *this;
    }
    long m = lcm_long(n_, o.n_);
    Cyclo a = embedded(m), b = o.embedded(m);
    for (size_t i = 0; i < a.c_.size(); ++i) a.c_[i] += b.c_[i];
    a.reduce_conductor_if_rational();
    return *this = std::move(a);
}

Cyclo& Cyclo::operator-=(const Cyclo& o) {
    if (n_ == o.n_) {
        for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
        reduce_conductor_if_rational();
        return *this;
    }
    return *this += -o;
}

Cyclo& Cyclo::operator*=(const Cyclo& o) {
    if (n_ == 1 && o.n_ == 1) {  // plain rationals
        c_[0] *= o.c_[0];
        return *this;
    }
    if (n_ == 1 || o.n_ == 1) {  // rational scalar: coefficientwise
        Rat s = (n_ == 1) ? c_[0] : o.c_[0];
        if (n_ == 1) *this = o;
        for (Rat& x : c_) x *= s;
        reduce_conductor_if_rational();
        return *this;
    }
    long m = lcm_long(n_, o.n_);
    Cyclo a = embedded(m), b = o.embedded(m);
    return *this = from_coeffs(m, qpoly_mul(a.c_, b.c_));
}

bool Cyclo::operator==(const Cyclo& o) const {
    // Equal conductors give a unique power-basis representation.
    if (n_ == o.n_) return c_ == o.c_;
    long m = lcm_long(n_, o.n_);
    return embedded(m).c_ == o.embedded(m).c_;
}

namespace {

// Extended gcd over Q[x]: returns (g, u) with u*f = g (mod h), g = gcd(f, h).
std::pair<QPoly, QPoly> qpoly_half_ext_gcd(QPoly f, QPoly h) {
    QPoly r0 = qpoly_trim(std::move(f)), r1 = qpoly_trim(std::move(h));
    QPoly u0 = {Rat(1)}, u1 = {};
    while (!r1.empty()) {
        auto [q, r] = qpoly_divmod(r0, r1);
        QPoly u2 = qpoly_sub(u0, qpoly_mul(q, u1));
        r0 = std::move(r1);
        r1 = std::move(r);
        u0 = std::move(u1);
        u1 = std::move(u2);
    }
    return {r0, u0};
}

}  // namespace

Cyclo Cyclo::inverse() const {
    if (is_zero()) throw std::invalid_argument("Cyclo::inverse: division by zero");
    if (is_rational()) return Cyclo(Rat(1) / c_[0]);
    auto [g, u] = qpoly_half_ext_gcd(c_, cyclotomic_polynomial(n_));
    if (g.size() != 1)
        throw std::logic_error("Cyclo::inverse: element and cyclotomic polynomial not coprime");
    QPoly inv = u;
    for (Rat& x : inv) x /= g[0];
    return from_coeffs(n_, std::move(inv));
}

Cyclo Cyclo::galois(long t) const {
    t %= n_;
    if (t < 0) t += n_;
    if (gcd_long(t, n_) != 1)
        throw std::invalid_argument("Cyclo::galois: exponent not coprime to conductor");
    QPoly f(n_, Rat(0));
    f.resize(std::max<size_t>(n_, 1), Rat(0));
    for (size_t i = 0; i < c_.size(); ++i) f[(i * t) % n_] += c_[i];
    return from_coeffs(n_, std::move(f));
}

Cyclo Cyclo::conj() const { return galois(n_ - 1); }

Rat Cyclo::norm() const {
    if (n_ == 1) return c_[0];
    Cyclo prod(Rat(1));
    for (long t = 1; t < n_; ++t) {
        if (gcd_long(t, n_) != 1) continue;
        prod *= galois(t);
    }
    return prod.rational_value();
}

long Cyclo::root_of_unity_order(long bound) const {
    Cyclo x = *this;
    const Cyclo one(Rat(1));
    for (long k = 1; k <= bound; ++k) {
        if (x == one) return k;
        x *= *this;
    }
    return 0;
}

std::string Cyclo::str() const {
    if (is_rational()) return c_[0].get_str();
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        if (!first) os << " + ";
        first = false;
        os << c_[i].get_str();
        if (i >= 1) os << "*z" << n_;
        if (i >= 2) os << "^" << i;
    }
    return os.str();
}

}  // namespace hopfforms
