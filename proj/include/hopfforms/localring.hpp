#pragma once

#include <limits>
#include <string>

#include "hopfforms/cyclotomic.hpp"

namespace hopfforms {

/*
 * The localization of the ring of integers of K = Q(zeta_m) at a prime above
 * p, for the case where there is exactly ONE prime above p (e * f = phi(m)).
 * That covers every base ring used here: Q at any p, and Q(zeta_{p^a}) or
 * Q(zeta_7) at their totally ramified primes.  Valuations are computed
 * exactly through the field norm, which is what makes the single-prime
 * restriction necessary; the constructor verifies it and refuses otherwise.
 *
 * Elements are Cyclo values whose conductor divides m.  Residue maps to the
 * residue field are provided only when f = 1 (residue field F_p), which is
 * the only case the reduction pipeline needs.
 */
class LocalRing {
  public:
    static constexpr long kInfinity = std::numeric_limits<long>::max() / 4;

    LocalRing(long m, long p, const Cyclo& pi);

    static LocalRing rational(long p);          // K = Q, pi = p
    static LocalRing cyclotomic_pi(long m, long p);  // K = Q(zeta_m), pi = zeta_m - 1

    long conductor() const { return m_; }
    long prime() const { return p_; }
    long ram_index() const { return e_; }
    long res_degree() const { return f_; }
    const Cyclo& uniformizer() const { return pi_; }
    const std::string& label() const { return label_; }

    // Valuation normalized so that v(pi) = 1; v(0) = kInfinity.
    long valuation(const Cyclo& x) const;
    bool in_ring(const Cyclo& x) const { return valuation(x) >= 0; }
    bool is_unit(const Cyclo& x) const { return valuation(x) == 0; }

    Cyclo pi_pow(long k) const;

    // Image in the residue field F_p as an integer in [0, p); needs f = 1 and
    // v(x) >= 0.
    long residue(const Cyclo& x) const;

    // Canonical representative of x modulo pi^a: the truncation of the digit
    // expansion x = sum_i c_i pi^i with digits c_i in {0, ..., p-1}.  Negative
    // valuations are allowed; digits at positions >= a are dropped.
    Cyclo canonical_mod(const Cyclo& x, long a) const;

    bool same_mod(const Cyclo& x, const Cyclo& y, long a) const;

    bool operator==(const LocalRing& o) const {
        return m_ == o.m_ && p_ == o.p_ && pi_ == o.pi_;
    }

  private:
    long m_;
    long p_;
    Cyclo pi_;
    Cyclo pi_inv_;
    long e_;
    long f_;
    std::string label_;
};

// Parses ring labels used by the CLI: "q<p>" for Q at p ("q3"), and
// "z<m>pi" for Q(zeta_m) at (zeta_m - 1) ("z3pi", "z9pi", "z7pi").
LocalRing parse_ring(const std::string& spec);

}  // namespace hopfforms
