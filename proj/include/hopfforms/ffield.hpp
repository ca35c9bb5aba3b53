#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

namespace hopfforms {

struct FFCtx {
    long p;
    long d;
    std::vector<long> modulus;  // monic of degree d over F_p, little-endian
};

class FFElt;

/*
 * F_{p^d} presented as F_p[x]/(modulus).  Field contexts are shared_ptr-backed
 * so elements stay valid however the field object itself is copied around.
 * When no modulus is given the lexicographically least monic irreducible of
 * the right degree is selected, so every run agrees on the presentation.
 */
class FF {
  public:
    FF() = default;
    FF(long p, long d);
    FF(long p, std::vector<long> modulus);

    bool valid() const { return ctx_ != nullptr; }
    long p() const { return ctx_->p; }
    long degree() const { return ctx_->d; }
    unsigned long size() const;  // p^d
    const std::vector<long>& modulus() const { return ctx_->modulus; }

    FFElt zero() const;
    FFElt one() const;
    FFElt gen() const;  // class of x
    FFElt from_int(long v) const;
    FFElt element(std::vector<long> coeffs) const;
    FFElt from_index(unsigned long idx) const;  // base-p digit vector

    bool operator==(const FF& o) const;
    bool operator!=(const FF& o) const { return !(*this == o); }

    std::string str() const;

  private:
    std::shared_ptr<const FFCtx> ctx_;
    friend class FFElt;
};

class FFElt {
  public:
    FFElt() = default;  // detached null; all arithmetic throws

    bool valid() const { return ctx_ != nullptr; }
    FF field() const;
    long p() const { return ctx_->p; }
    const std::vector<long>& coeffs() const { return c_; }
    unsigned long index() const;  // sum c_i p^i; total enumeration order

    bool is_zero() const;
    bool is_one() const;

    FFElt operator-() const;
    FFElt& operator+=(const FFElt& o);
    FFElt& operator-=(const FFElt& o);
    FFElt& operator*=(const FFElt& o);
    friend FFElt operator+(FFElt a, const FFElt& b) { return a += b; }
    friend FFElt operator-(FFElt a, const FFElt& b) { return a -= b; }
    friend FFElt operator*(FFElt a, const FFElt& b) { return a *= b; }
    friend FFElt operator/(const FFElt& a, const FFElt& b) { return a * b.inverse(); }

    bool operator==(const FFElt& o) const;
    bool operator!=(const FFElt& o) const { return !(*this == o); }
    bool operator<(const FFElt& o) const { return index() < o.index(); }

    FFElt inverse() const;
    FFElt pow(unsigned long e) const;
    FFElt frobenius() const { return pow_p(1); }  // x -> x^p
    FFElt pow_p(long k) const;                    // x -> x^{p^k}, k may be negative
    long trace_to_prime() const;                  // in [0, p)

    std::string str() const;

  private:
    FFElt(std::shared_ptr<const FFCtx> ctx, std::vector<long> c);
    std::shared_ptr<const FFCtx> ctx_;
    std::vector<long> c_;
    void require_same(const FFElt& o) const;
    friend class FF;
};

// Dense polynomials over one FF, little-endian.  All entries must share the
// field of the defining context passed alongside.
using FFPoly = std::vector<FFElt>;

FFPoly ffpoly_trim(FFPoly f);
long ffpoly_deg(const FFPoly& f);  // -1 for zero
FFPoly ffpoly_add(const FFPoly& f, const FFPoly& g);
FFPoly ffpoly_sub(const FFPoly& f, const FFPoly& g);
FFPoly ffpoly_mul(const FFPoly& f, const FFPoly& g);
std::pair<FFPoly, FFPoly> ffpoly_divmod(const FFPoly& f, const FFPoly& g);
FFPoly ffpoly_gcd(FFPoly f, FFPoly g);  // monic
FFPoly ffpoly_monic(FFPoly f);
FFPoly ffpoly_pow_mod(const FFPoly& base, unsigned long e, const FFPoly& mod);
FFPoly ffpoly_from_ints(const FF& F, const std::vector<long>& coeffs);
FFElt ffpoly_eval(const FFPoly& f, const FFElt& x);
std::string ffpoly_str(const FFPoly& f);

bool ffpoly_is_irreducible(const FF& F, const FFPoly& f);

// Complete factorization into monic irreducibles with multiplicities,
// deterministically seeded.  Factors are sorted by (degree, coefficient
// indices), so equal seeds give identical output.
std::vector<std::pair<FFPoly, long>> ffpoly_factor(const FF& F, const FFPoly& f,
                                                   std::uint64_t seed);

std::vector<FFElt> ffpoly_roots(const FF& F, const FFPoly& f, std::uint64_t seed);

// Uniform draw in [0, n) from a seeded engine without std::distribution
// (portability of byte-identical output across platforms).
unsigned long draw_mod(std::mt19937_64& rng, unsigned long n);

// Scalar plumbing used by the generic matrix code (found by ADL).
inline FFElt scalar_zero(const FFElt& x) { return x.field().zero(); }
inline FFElt scalar_one(const FFElt& x) { return x.field().one(); }
inline bool scalar_is_zero(const FFElt& x) { return x.is_zero(); }

}  // namespace hopfforms
