#pragma once

#include <string>
#include <vector>

#include "hopfforms/rational.hpp"

namespace hopfforms {

// Dense polynomials over Q, little-endian coefficient vectors.
using QPoly = std::vector<Rat>;

QPoly qpoly_trim(QPoly f);
QPoly qpoly_add(const QPoly& f, const QPoly& g);
QPoly qpoly_sub(const QPoly& f, const QPoly& g);
QPoly qpoly_mul(const QPoly& f, const QPoly& g);
// f = q*g + r with deg r < deg g; g nonzero.
std::pair<QPoly, QPoly> qpoly_divmod(const QPoly& f, const QPoly& g);
// Monic n-th cyclotomic polynomial (cached).
const QPoly& cyclotomic_polynomial(long n);

/*
 * An element of the cyclotomic field Q(zeta_n), stored as a coefficient
 * vector on the power basis 1, zeta, ..., zeta^{phi(n)-1} and reduced modulo
 * the n-th cyclotomic polynomial after every operation.  The conductor n is
 * carried with the value; binary operations merge conductors through their
 * lcm.  Two elements compare equal when they agree inside the compositum.
 */
class Cyclo {
  public:
    Cyclo();                     // zero with conductor 1
    explicit Cyclo(const Rat& r);
    explicit Cyclo(long v);

    static Cyclo zeta(long n);               // primitive n-th root of unity
    static Cyclo zeta_pow(long n, long k);   // zeta_n^k
    static Cyclo from_coeffs(long n, QPoly coeffs);  // reduces mod Phi_n

    long conductor() const { return n_; }
    const std::vector<Rat>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_rational() const;
    Rat rational_value() const;  // throws unless is_rational()

    // Re-express in Q(zeta_m); n must divide m.
    Cyclo embedded(long m) const;

    Cyclo operator-() const;
    Cyclo& operator+=(const Cyclo& o);
    Cyclo& operator-=(const Cyclo& o);
    Cyclo& operator*=(const Cyclo& o);

    friend Cyclo operator+(Cyclo a, const Cyclo& b) { return a += b; }
    friend Cyclo operator-(Cyclo a, const Cyclo& b) { return a -= b; }
    friend Cyclo operator*(Cyclo a, const Cyclo& b) { return a *= b; }
    friend Cyclo operator/(const Cyclo& a, const Cyclo& b) { return a * b.inverse(); }

    bool operator==(const Cyclo& o) const;
    bool operator!=(const Cyclo& o) const { return !(*this == o); }

    Cyclo inverse() const;        // throws on zero
    Cyclo conj() const;           // zeta -> zeta^{-1}
    Cyclo galois(long t) const;   // zeta -> zeta^t, gcd(t, n) = 1
    Rat norm() const;             // product of all conjugates over Q

    // Multiplicative order if this is a root of unity of order <= bound,
    // otherwise 0.
    long root_of_unity_order(long bound) const;

    std::string str() const;

  private:
    long n_;
    std::vector<Rat> c_;  // size phi(n_)

    void reduce_conductor_if_rational();
};

inline Cyclo operator*(const Rat& r, Cyclo a) { return Cyclo(r) * a; }
inline Cyclo operator*(Cyclo a, const Rat& r) { return a * Cyclo(r); }

// Scalar plumbing used by the generic matrix code (found by ADL).
inline Cyclo scalar_zero(const Cyclo&) { return Cyclo(0); }
inline Cyclo scalar_one(const Cyclo&) { return Cyclo(1); }
inline bool scalar_is_zero(const Cyclo& x) { return x.is_zero(); }

}  // namespace hopfforms
