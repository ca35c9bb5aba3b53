#include "hopfforms/ffield.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "hopfforms/numutil.hpp"

namespace hopfforms {

namespace {

long norm_mod(long v, long p) {
    v %= p;
    if (v < 0) v += p;
    return v;
}

// Arithmetic on little-endian coefficient vectors over F_p.
std::vector<long> pvec_trim(std::vector<long> f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
    return f;
}

std::vector<long> pvec_mul(const std::vector<long>& a, const std::vector<long>& b, long p) {
    if (a.empty() || b.empty()) return {};
    std::vector<long> r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    return pvec_trim(std::move(r));
}

// Remainder of f modulo a monic modulus.
std::vector<long> pvec_rem(std::vector<long> f, const std::vector<long>& m, long p) {
    f = pvec_trim(std::move(f));
    while (f.size() >= m.size()) {
        long c = f.back();
        size_t shift = f.size() - m.size();
        for (size_t j = 0; j < m.size(); ++j)
            f[shift + j] = norm_mod(f[shift + j] - c * m[j], p);
        f = pvec_trim(std::move(f));
    }
    return f;
}

bool pvec_irreducible(const std::vector<long>& f, long p);

std::vector<long> canonical_modulus(long p, long d) {
    if (d == 1) return {0, 1};
    unsigned long total = 1;
    for (long i = 0; i < d; ++i) total *= (unsigned long)p;
    for (unsigned long idx = 0; idx < total; ++idx) {
        std::vector<long> f(d + 1, 0);
        unsigned long t = idx;
        for (long i = 0; i < d; ++i) {
            f[i] = (long)(t % (unsigned long)p);
            t /= (unsigned long)p;
        }
        f[d] = 1;
        if (pvec_irreducible(f, p)) return f;
    }
    throw std::logic_error("canonical_modulus: no irreducible found");
}

std::vector<long> pvec_powmod(std::vector<long> base, unsigned long e,
                              const std::vector<long>& m, long p) {
    std::vector<long> r{1};
    base = pvec_rem(std::move(base), m, p);
    while (e > 0) {
        if (e & 1) r = pvec_rem(pvec_mul(r, base, p), m, p);
        base = pvec_rem(pvec_mul(base, base, p), m, p);
        e >>= 1;
    }
    return r;
}

std::vector<long> pvec_gcd(std::vector<long> a, std::vector<long> b, long p) {
    a = pvec_trim(std::move(a));
    b = pvec_trim(std::move(b));
    while (!b.empty()) {
        // reduce a mod b after making b usable as modulus (monicize copy)
        long inv = mod_inv(b.back(), p);
        std::vector<long> bm = b;
        for (long& c : bm) c = (c * inv) % p;
        std::vector<long> r = pvec_rem(a, bm, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

bool pvec_irreducible(const std::vector<long>& f, long p) {
    long n = (long)f.size() - 1;
    if (n < 1) return false;
    if (n == 1) return true;
    std::vector<long> x{0, 1};
    // x^{p^n} == x mod f
    std::vector<long> t = x;
    for (long i = 0; i < n; ++i) t = pvec_powmod(t, (unsigned long)p, f, p);
    std::vector<long> diff = t;
    diff.resize(std::max<size_t>(diff.size(), 2), 0);
    diff[1] = norm_mod(diff[1] - 1, p);
    if (!pvec_trim(diff).empty()) return false;
    for (auto [ell, e] : factorize(n)) {
        (void)e;
        std::vector<long> s = x;
        for (long i = 0; i < n / ell; ++i) s = pvec_powmod(s, (unsigned long)p, f, p);
        std::vector<long> d2 = s;
        d2.resize(std::max<size_t>(d2.size(), 2), 0);
        d2[1] = norm_mod(d2[1] - 1, p);
        std::vector<long> g = pvec_gcd(f, pvec_trim(d2), p);
        if (g.size() != 1) return false;
    }
    return true;
}

}  // namespace

FF::FF(long p, long d) {
    if (!is_prime(p) || d < 1) throw std::invalid_argument("FF: need prime p and d >= 1");
    ctx_ = std::make_shared<FFCtx>(FFCtx{p, d, canonical_modulus(p, d)});
}

FF::FF(long p, std::vector<long> modulus) {
    if (!is_prime(p)) throw std::invalid_argument("FF: need prime p");
    for (long& c : modulus) c = norm_mod(c, p);
    modulus = pvec_trim(std::move(modulus));
    long d = (long)modulus.size() - 1;
    if (d < 1 || modulus.back() != 1)
        throw std::invalid_argument("FF: modulus must be monic of degree >= 1");
    if (d > 1 && !pvec_irreducible(modulus, p))
        throw std::invalid_argument("FF: modulus is reducible");
    ctx_ = std::make_shared<FFCtx>(FFCtx{p, d, std::move(modulus)});
}

unsigned long FF::size() const {
    unsigned long s = 1;
    for (long i = 0; i < ctx_->d; ++i) s *= (unsigned long)ctx_->p;
    return s;
}

FFElt FF::zero() const { return FFElt(ctx_, std::vector<long>(ctx_->d, 0)); }
FFElt FF::one() const { return from_int(1); }

FFElt FF::gen() const {
    std::vector<long> c(ctx_->d, 0);
    if (ctx_->d == 1) {
        // class of x = root of a linear modulus x + a0, i.e. -a0
        c[0] = norm_mod(-ctx_->modulus[0], ctx_->p);
    } else {
        c[1] = 1;
    }
    return FFElt(ctx_, std::move(c));
}

FFElt FF::from_int(long v) const {
    std::vector<long> c(ctx_->d, 0);
    c[0] = norm_mod(v, ctx_->p);
    return FFElt(ctx_, std::move(c));
}

FFElt FF::element(std::vector<long> coeffs) const {
    for (long& c : coeffs) c = norm_mod(c, ctx_->p);
    coeffs = pvec_rem(std::move(coeffs), ctx_->modulus, ctx_->p);
    coeffs.resize(ctx_->d, 0);
    return FFElt(ctx_, std::move(coeffs));
}

FFElt FF::from_index(unsigned long idx) const {
    std::vector<long> c(ctx_->d, 0);
    for (long i = 0; i < ctx_->d; ++i) {
        c[i] = (long)(idx % (unsigned long)ctx_->p);
        idx /= (unsigned long)ctx_->p;
    }
    if (idx != 0) throw std::invalid_argument("FF::from_index: index out of range");
    return FFElt(ctx_, std::move(c));
}

bool FF::operator==(const FF& o) const {
    if (ctx_ == o.ctx_) return true;
    if (!ctx_ || !o.ctx_) return false;
    return ctx_->p == o.ctx_->p && ctx_->modulus == o.ctx_->modulus;
}

std::string FF::str() const {
    std::ostringstream os;
    os << "F" << size();
    return os.str();
}

FFElt::FFElt(std::shared_ptr<const FFCtx> ctx, std::vector<long> c)
    : ctx_(std::move(ctx)), c_(std::move(c)) {}

FF FFElt::field() const {
    FF f;
    f.ctx_ = ctx_;
    return f;
}

void FFElt::require_same(const FFElt& o) const {
    if (!ctx_ || !o.ctx_) throw std::logic_error("FFElt: arithmetic on detached element");
    if (ctx_ == o.ctx_) return;
    if (ctx_->p != o.ctx_->p || ctx_->modulus != o.ctx_->modulus)
        throw std::invalid_argument("FFElt: mixing elements of different fields");
}

unsigned long FFElt::index() const {
    unsigned long idx = 0;
    for (size_t i = c_.size(); i-- > 0;) idx = idx * (unsigned long)ctx_->p + (unsigned long)c_[i];
    return idx;
}

bool FFElt::is_zero() const {
    for (long v : c_)
        if (v != 0) return false;
    return true;
}

bool FFElt::is_one() const {
    if (c_.empty() || c_[0] != 1) return false;
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

FFElt FFElt::operator-() const {
    FFElt r = *this;
    for (long& v : r.c_) v = norm_mod(-v, ctx_->p);
    return r;
}

FFElt& FFElt::operator+=(const FFElt& o) {
    require_same(o);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] = norm_mod(c_[i] + o.c_[i], ctx_->p);
    return *this;
}

FFElt& FFElt::operator-=(const FFElt& o) {
    require_same(o);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] = norm_mod(c_[i] - o.c_[i], ctx_->p);
    return *this;
}

FFElt& FFElt::operator*=(const FFElt& o) {
    require_same(o);
    std::vector<long> prod = pvec_rem(pvec_mul(c_, o.c_, ctx_->p), ctx_->modulus, ctx_->p);
    prod.resize(ctx_->d, 0);
    c_ = std::move(prod);
    return *this;
}

bool FFElt::operator==(const FFElt& o) const {
    require_same(o);
    return c_ == o.c_;
}

FFElt FFElt::inverse() const {
    if (is_zero()) throw std::invalid_argument("FFElt::inverse: division by zero");
    unsigned long q = field().size();
    return pow(q - 2);
}

FFElt FFElt::pow(unsigned long e) const {
    FFElt r = field().one();
    FFElt b = *this;
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

FFElt FFElt::pow_p(long k) const {
    long d = ctx_->d;
    long kk = ((k % d) + d) % d;
    FFElt r = *this;
    for (long i = 0; i < kk; ++i) r = r.pow((unsigned long)ctx_->p);
    return r;
}

long FFElt::trace_to_prime() const {
    FFElt s = field().zero();
    FFElt t = *this;
    for (long i = 0; i < ctx_->d; ++i) {
        s += t;
        t = t.pow((unsigned long)ctx_->p);
    }
    for (size_t i = 1; i < s.c_.size(); ++i)
        if (s.c_[i] != 0) throw std::logic_error("FFElt::trace_to_prime: trace not in prime field");
    return s.c_.empty() ? 0 : s.c_[0];
}

std::string FFElt::str() const {
    if (!ctx_) return "<detached>";
    if (ctx_->d == 1) return std::to_string(c_[0]);
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < c_.size(); ++i) {
        if (i) os << ",";
        os << c_[i];
    }
    os << "]";
    return os.str();
}

// ---------------------------------------------------------------------------
// Polynomials over an FF.

FFPoly ffpoly_trim(FFPoly f) {
    while (!f.empty() && f.back().is_zero()) f.pop_back();
    return f;
}

long ffpoly_deg(const FFPoly& f) { return (long)f.size() - 1; }

FFPoly ffpoly_add(const FFPoly& f, const FFPoly& g) {
    FFPoly r = f.size() >= g.size() ? f : g;
    const FFPoly& s = f.size() >= g.size() ? g : f;
    for (size_t i = 0; i < s.size(); ++i) r[i] += s[i];
    return ffpoly_trim(std::move(r));
}

FFPoly ffpoly_sub(const FFPoly& f, const FFPoly& g) {
    FFPoly ng = g;
    for (FFElt& c : ng) c = -c;
    return ffpoly_add(f, ng);
}

FFPoly ffpoly_mul(const FFPoly& f, const FFPoly& g) {
    if (f.empty() || g.empty()) return {};
    FF F = f[0].field();
    FFPoly r(f.size() + g.size() - 1, F.zero());
    for (size_t i = 0; i < f.size(); ++i) {
        if (f[i].is_zero()) continue;
        for (size_t j = 0; j < g.size(); ++j) r[i + j] += f[i] * g[j];
    }
    return ffpoly_trim(std::move(r));
}

std::pair<FFPoly, FFPoly> ffpoly_divmod(const FFPoly& f, const FFPoly& g) {
    FFPoly gg = ffpoly_trim(g);
    if (gg.empty()) throw std::invalid_argument("ffpoly_divmod: division by zero");
    FFPoly r = ffpoly_trim(f);
    if (r.size() < gg.size()) return {{}, r};
    FF F = gg[0].field();
    FFPoly q(r.size() - gg.size() + 1, F.zero());
    FFElt leadinv = gg.back().inverse();
    while (r.size() >= gg.size()) {
        size_t i = r.size() - gg.size();
        FFElt coef = r.back() * leadinv;
        q[i] = coef;
        for (size_t j = 0; j < gg.size(); ++j) r[i + j] -= coef * gg[j];
        r = ffpoly_trim(std::move(r));
    }
    return {ffpoly_trim(std::move(q)), r};
}

FFPoly ffpoly_monic(FFPoly f) {
    f = ffpoly_trim(std::move(f));
    if (f.empty() || f.back().is_one()) return f;
    FFElt inv = f.back().inverse();
    for (FFElt& c : f) c *= inv;
    return f;
}

FFPoly ffpoly_gcd(FFPoly f, FFPoly g) {
    f = ffpoly_trim(std::move(f));
    g = ffpoly_trim(std::move(g));
    while (!g.empty()) {
        FFPoly r = ffpoly_divmod(f, g).second;
        f = std::move(g);
        g = std::move(r);
    }
    return ffpoly_monic(std::move(f));
}

FFPoly ffpoly_pow_mod(const FFPoly& base, unsigned long e, const FFPoly& mod) {
    FF F = mod[0].field();
    FFPoly r{F.one()};
    FFPoly b = ffpoly_divmod(base, mod).second;
    while (e > 0) {
        if (e & 1) r = ffpoly_divmod(ffpoly_mul(r, b), mod).second;
        b = ffpoly_divmod(ffpoly_mul(b, b), mod).second;
        e >>= 1;
    }
    return r;
}

FFPoly ffpoly_from_ints(const FF& F, const std::vector<long>& coeffs) {
    FFPoly f;
    f.reserve(coeffs.size());
    for (long c : coeffs) f.push_back(F.from_int(c));
    return ffpoly_trim(std::move(f));
}

FFElt ffpoly_eval(const FFPoly& f, const FFElt& x) {
    FFElt acc = x.field().zero();
    for (size_t i = f.size(); i-- > 0;) acc = acc * x + f[i];
    return acc;
}

std::string ffpoly_str(const FFPoly& f) {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < f.size(); ++i) {
        if (i) os << ",";
        os << f[i].str();
    }
    os << "]";
    return os.str();
}

unsigned long draw_mod(std::mt19937_64& rng, unsigned long n) {
    if (n == 0) throw std::invalid_argument("draw_mod: empty range");
    // Rejection sampling keeps the draw unbiased and platform-independent.
    unsigned long limit = ~0ul - (~0ul % n);
    for (;;) {
        unsigned long v = rng();
        if (v < limit) return v % n;
    }
}

namespace {

FFPoly ffpoly_derivative(const FFPoly& f, const FF& F) {
    if (f.size() <= 1) return {};
    FFPoly d(f.size() - 1, F.zero());
    for (size_t i = 1; i < f.size(); ++i) d[i - 1] = F.from_int((long)i) * f[i];
    return ffpoly_trim(std::move(d));
}

// f(x) = h(x^p) -> h, using coefficient-wise p-th roots.
FFPoly ffpoly_pth_root_decompose(const FFPoly& f, const FF& F) {
    long p = F.p();
    FFPoly h((f.size() - 1) / p + 1, F.zero());
    for (size_t i = 0; i < f.size(); ++i) {
        if (f[i].is_zero()) continue;
        if (i % (size_t)p != 0)
            throw std::logic_error("ffpoly factor: derivative zero but not a p-th power");
        h[i / (size_t)p] = f[i].pow_p(-1);
    }
    return ffpoly_trim(std::move(h));
}

// Squarefree decomposition: list of (monic squarefree, multiplicity).
void sqfree_decompose(const FFPoly& fin, const FF& F, long mult,
                      std::vector<std::pair<FFPoly, long>>& out) {
    FFPoly f = ffpoly_monic(fin);
    if (ffpoly_deg(f) < 1) return;
    FFPoly fp = ffpoly_derivative(f, F);
    if (fp.empty()) {
        sqfree_decompose(ffpoly_pth_root_decompose(f, F), F, mult * F.p(), out);
        return;
    }
    FFPoly c = ffpoly_gcd(f, fp);
    FFPoly w = ffpoly_divmod(f, c).first;
    long i = 1;
    while (ffpoly_deg(w) > 0) {
        FFPoly y = ffpoly_gcd(w, c);
        FFPoly z = ffpoly_divmod(w, y).first;
        if (ffpoly_deg(z) > 0) out.emplace_back(ffpoly_monic(z), mult * i);
        w = std::move(y);
        c = ffpoly_divmod(c, w).first;
        ++i;
    }
    if (ffpoly_deg(c) > 0)
        sqfree_decompose(ffpoly_pth_root_decompose(c, F), F, mult * F.p(), out);
}

// x^{q^k} mod f via k successive q-power maps.
FFPoly frob_iterate(const FFPoly& start, long k, const FFPoly& f, const FF& F) {
    FFPoly t = start;
    unsigned long q = F.size();
    for (long i = 0; i < k; ++i) t = ffpoly_pow_mod(t, q, f);
    return t;
}

// Distinct-degree factorization of a squarefree monic f: (product, degree).
std::vector<std::pair<FFPoly, long>> ddf(FFPoly f, const FF& F) {
    std::vector<std::pair<FFPoly, long>> out;
    FFPoly x{F.zero(), F.one()};
    FFPoly h = x;
    long k = 0;
    while (ffpoly_deg(f) > 0) {
        ++k;
        if (2 * k > ffpoly_deg(f)) {
            out.emplace_back(f, ffpoly_deg(f));
            break;
        }
        h = ffpoly_pow_mod(h, F.size(), f);
        FFPoly g = ffpoly_gcd(ffpoly_sub(h, x), f);
        if (ffpoly_deg(g) > 0) {
            out.emplace_back(g, k);
            f = ffpoly_divmod(f, g).first;
            h = ffpoly_divmod(h, f).second;
        }
    }
    return out;
}

// Equal-degree splitting (Cantor-Zassenhaus; trace method in char 2).
void edf(const FFPoly& f, long k, const FF& F, std::mt19937_64& rng, std::vector<FFPoly>& out) {
    long n = ffpoly_deg(f);
    if (n == k) {
        out.push_back(ffpoly_monic(f));
        return;
    }
    for (int attempt = 0; attempt < 256; ++attempt) {
        FFPoly a(n, F.zero());
        for (long i = 0; i < n; ++i) a[i] = F.from_index(draw_mod(rng, F.size()));
        a = ffpoly_trim(std::move(a));
        if (ffpoly_deg(a) < 1) continue;
        FFPoly g = ffpoly_gcd(a, f);
        if (ffpoly_deg(g) > 0 && ffpoly_deg(g) < n) {
            edf(g, k, F, rng, out);
            edf(ffpoly_divmod(f, g).first, k, F, rng, out);
            return;
        }
        FFPoly b;
        if (F.p() == 2) {
            // trace map over F_{2^(d*k)}
            FFPoly t = a, s = a;
            long steps = F.degree() * k;
            for (long i = 1; i < steps; ++i) {
                t = ffpoly_pow_mod(t, 2, f);
                s = ffpoly_add(s, t);
            }
            b = s;
        } else {
            // a^{(q^k-1)/2} = (prod_{i<k} a^{q^i})^{(q-1)/2}
            FFPoly prod{F.one()};
            FFPoly t = a;
            for (long i = 0; i < k; ++i) {
                prod = ffpoly_divmod(ffpoly_mul(prod, t), f).second;
                t = ffpoly_pow_mod(t, F.size(), f);
            }
            b = ffpoly_pow_mod(prod, (F.size() - 1) / 2, f);
            b = ffpoly_sub(b, {F.one()});
        }
        g = ffpoly_gcd(b, f);
        if (ffpoly_deg(g) > 0 && ffpoly_deg(g) < n) {
            edf(g, k, F, rng, out);
            edf(ffpoly_divmod(f, g).first, k, F, rng, out);
            return;
        }
    }
    throw std::runtime_error("ffpoly_factor: equal-degree split failed after 256 attempts");
}

bool ffpoly_less(const FFPoly& a, const FFPoly& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (size_t i = a.size(); i-- > 0;) {
        unsigned long ia = a[i].index(), ib = b[i].index();
        if (ia != ib) return ia < ib;
    }
    return false;
}

}  // namespace

bool ffpoly_is_irreducible(const FF& F, const FFPoly& fin) {
    FFPoly f = ffpoly_monic(fin);
    long n = ffpoly_deg(f);
    if (n < 1) return false;
    if (n == 1) return true;
    FFPoly x{F.zero(), F.one()};
    FFPoly t = frob_iterate(x, n, f, F);
    if (!ffpoly_trim(ffpoly_sub(t, x)).empty()) return false;
    for (auto [ell, e] : factorize(n)) {
        (void)e;
        FFPoly s = frob_iterate(x, n / ell, f, F);
        if (ffpoly_deg(ffpoly_gcd(ffpoly_sub(s, x), f)) != 0) return false;
    }
    return true;
}

std::vector<std::pair<FFPoly, long>> ffpoly_factor(const FF& F, const FFPoly& fin,
                                                   std::uint64_t seed) {
    FFPoly f = ffpoly_trim(fin);
    if (f.empty()) throw std::invalid_argument("ffpoly_factor: zero polynomial");
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    std::vector<std::pair<FFPoly, long>> sq;
    sqfree_decompose(f, F, 1, sq);
    std::vector<std::pair<FFPoly, long>> factors;
    for (auto& [part, mult] : sq) {
        for (auto& [prod, deg] : ddf(part, F)) {
            std::vector<FFPoly> irr;
            edf(prod, deg, F, rng, irr);
            for (FFPoly& g : irr) factors.emplace_back(std::move(g), mult);
        }
    }
    std::sort(factors.begin(), factors.end(),
              [](const auto& a, const auto& b) {
                  if (a.first.size() != b.first.size() || a.first != b.first)
                      return ffpoly_less(a.first, b.first);
                  return a.second < b.second;
              });
    return factors;
}

std::vector<FFElt> ffpoly_roots(const FF& F, const FFPoly& f, std::uint64_t seed) {
    std::vector<FFElt> roots;
    for (auto& [g, mult] : ffpoly_factor(F, f, seed)) {
        (void)mult;
        if (ffpoly_deg(g) == 1) roots.push_back(-g[0]);
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

}  // namespace hopfforms
