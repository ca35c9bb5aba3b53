#include "hopfforms/chartab.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "hopfforms/ffield.hpp"
#include "hopfforms/numutil.hpp"

namespace hopfforms {

namespace {

// Lexicographic order on cyclotomic values via coefficients in Q(zeta_e).
bool cyclo_lex_less(const Cyclo& a, const Cyclo& b, long e) {
    const std::vector<Rat> ca = a.embedded(e).coeffs();
    const std::vector<Rat> cb = b.embedded(e).coeffs();
    for (size_t i = 0; i < ca.size(); ++i) {
        int c = cmp(ca[i], cb[i]);
        if (c != 0) return c < 0;
    }
    return false;
}

bool row_less(const std::vector<Cyclo>& a, const std::vector<Cyclo>& b, long e) {
    for (size_t j = 0; j < a.size(); ++j) {
        if (a[j] != b[j]) return cyclo_lex_less(a[j], b[j], e);
    }
    return false;
}

long pick_split_prime(long e, long n) {
    long lower = 1;
    while (lower * lower <= 4 * n) ++lower;  // smallest integer > 2 sqrt(n)
    long ell = lower - 1;
    for (;;) {
        ell = split_prime_above(e, ell);
        if (n % ell != 0) return ell;
    }
}

}  // namespace

CharacterTable character_table(const FiniteGroup& G, long bound) {
    if (G.n > bound)
        throw std::invalid_argument("character_table: group order " + std::to_string(G.n) +
                                    " exceeds bound " + std::to_string(bound));
    CharacterTable T;
    T.G = G;
    T.classes = conjugacy_classes(G);
    T.class_of = class_index_map(G, T.classes);
    long r = (long)T.classes.size();
    T.inverse_class.resize((size_t)r);
    for (long j = 0; j < r; ++j)
        T.inverse_class[(size_t)j] = T.class_of[(size_t)G.inv(T.classes[(size_t)j][0])];
    T.exponent = group_exponent(G);
    const long e = T.exponent;
    const long ell = pick_split_prime(e, G.n);
    T.ell = ell;
    FF Fl(ell, 1);

    // Class-sum structure-constant matrices: (M_j)_{kl} = #{x in C_j : x^{-1} z_l in C_k}.
    std::vector<Mat<FFElt>> M((size_t)r, Mat<FFElt>(r, r, Fl.zero()));
    for (long j = 0; j < r; ++j)
        for (long l = 0; l < r; ++l) {
            long z = T.classes[(size_t)l][0];
            for (long x : T.classes[(size_t)j]) {
                long y = G.mul(G.inv(x), z);
                long k = T.class_of[(size_t)y];
                M[(size_t)j].at(k, l) += Fl.one();
            }
        }

    // Split the class-function space into common eigenlines.
    std::vector<Mat<FFElt>> spaces{mat_identity(r, Fl.zero())};
    for (long j = 1; j < r; ++j) {
        bool all_lines = true;
        for (auto& B : spaces)
            if (B.cols > 1) all_lines = false;
        if (all_lines) break;
        std::vector<Mat<FFElt>> next;
        for (auto& B : spaces) {
            if (B.cols == 1) {
                next.push_back(B);
                continue;
            }
            // Restriction A of M_j to the invariant subspace spanned by B.
            Mat<FFElt> MB = mat_mul(M[(size_t)j], B);
            Mat<FFElt> A(B.cols, B.cols, Fl.zero());
            for (long c = 0; c < B.cols; ++c) {
                std::vector<FFElt> rhs((size_t)r, Fl.zero());
                for (long i = 0; i < r; ++i) rhs[(size_t)i] = MB.at(i, c);
                auto sol = mat_solve(B, rhs);
                if (!sol)
                    throw std::logic_error("character_table: subspace not invariant under class matrix");
                for (long i = 0; i < B.cols; ++i) A.at(i, c) = (*sol)[(size_t)i];
            }
            for (long lam = 0; lam < ell; ++lam) {
                Mat<FFElt> Ashift = A;
                for (long i = 0; i < A.rows; ++i) Ashift.at(i, i) -= Fl.from_int(lam);
                auto ker = mat_kernel(Ashift);
                if (ker.empty()) continue;
                Mat<FFElt> K((long)ker[0].size(), (long)ker.size(), Fl.zero());
                for (size_t c = 0; c < ker.size(); ++c)
                    for (size_t i = 0; i < ker[c].size(); ++i) K.at((long)i, (long)c) = ker[c][i];
                next.push_back(mat_mul(B, K));
            }
        }
        spaces = std::move(next);
    }
    if ((long)spaces.size() != r)
        throw std::logic_error("character_table: eigenline split incomplete (" +
                               std::to_string(spaces.size()) + " of " + std::to_string(r) + ")");

    // Eigenvalues omega_{i,j}, degrees, and modular character values.
    long w = (ell == 2) ? 1 : primitive_root(ell);
    std::vector<std::vector<long>> mod_rows;
    std::vector<long> degrees;
    for (auto& B : spaces) {
        std::vector<FFElt> v((size_t)r, Fl.zero());
        for (long i = 0; i < r; ++i) v[(size_t)i] = B.at(i, 0);
        long pivot = -1;
        for (long i = 0; i < r; ++i)
            if (!v[(size_t)i].is_zero()) {
                pivot = i;
                break;
            }
        std::vector<long> omega((size_t)r);
        for (long j = 0; j < r; ++j) {
            std::vector<FFElt> mv = mat_apply(M[(size_t)j], v);
            FFElt om = mv[(size_t)pivot] / v[(size_t)pivot];
            for (long i = 0; i < r; ++i)
                if (mv[(size_t)i] != om * v[(size_t)i])
                    throw std::logic_error("character_table: vector is not a common eigenvector");
            omega[(size_t)j] = (long)om.index();
        }
        // 1/d^2 = (1/n) sum_j omega_j omega_{jbar} / |C_j|  (mod ell)
        long s = 0;
        for (long j = 0; j < r; ++j) {
            long term = (omega[(size_t)j] * omega[(size_t)T.inverse_class[(size_t)j]]) % ell;
            term = (term * mod_inv((long)T.classes[(size_t)j].size() % ell, ell)) % ell;
            s = (s + term) % ell;
        }
        long d2 = (G.n % ell) * mod_inv(s, ell) % ell;
        long d = -1;
        for (long t = 1; t * t <= G.n; ++t)
            if ((t * t) % ell == d2) {
                d = t;
                break;
            }
        if (d < 0) throw std::logic_error("character_table: no integer degree matches");
        degrees.push_back(d);
        std::vector<long> row((size_t)r);
        for (long j = 0; j < r; ++j)
            row[(size_t)j] =
                (d % ell) * omega[(size_t)j] % ell *
                mod_inv((long)T.classes[(size_t)j].size() % ell, ell) % ell;
        mod_rows.push_back(std::move(row));
    }

    // Lift to Q(zeta_e) through root-of-unity multiplicities.
    std::vector<std::vector<Cyclo>> rows;
    for (size_t i = 0; i < mod_rows.size(); ++i) {
        std::vector<Cyclo> row((size_t)r, Cyclo(0));
        for (long j = 0; j < r; ++j) {
            long g = T.classes[(size_t)j][0];
            long o = element_order(G, g);
            long z = mod_pow(w, (ell - 1) / o, ell);  // primitive o-th root mod ell
            Cyclo value(0);
            long msum = 0;
            const long zinv = mod_inv(z, ell);
            for (long k = 0; k < o; ++k) {
                // m_k = o^{-1} sum_t chi(g^t) z^{-tk}: the multiplicity of
                // zeta_o^k among the eigenvalues of the image of g.
                long acc = 0;
                long cur = 0;  // cur = g^t
                for (long t = 0; t < o; ++t) {
                    long chit = mod_rows[i][(size_t)T.class_of[(size_t)cur]];
                    acc = (acc + chit * mod_pow(zinv, (t * k) % o, ell)) % ell;
                    cur = G.mul(cur, g);
                }
                long mk = acc * mod_inv(o % ell, ell) % ell;
                if (mk > G.n)
                    throw std::logic_error("character_table: eigenvalue multiplicity out of range");
                msum += mk;
                if (mk != 0) value += Cyclo(mk) * Cyclo::zeta_pow(o, k);
            }
            if (msum != degrees[i])
                throw std::logic_error("character_table: multiplicities do not sum to the degree");
            row[(size_t)j] = value;
        }
        rows.push_back(std::move(row));
    }

    // Canonical row order: by degree, the all-ones row first among degree
    // one, then lexicographic on values.
    auto all_ones = [](const std::vector<Cyclo>& row) {
        for (const Cyclo& v : row)
            if (!(v == Cyclo(1))) return false;
        return true;
    };
    std::vector<size_t> order(rows.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        if (degrees[a] != degrees[b]) return degrees[a] < degrees[b];
        bool ta = all_ones(rows[a]), tb = all_ones(rows[b]);
        if (ta != tb) return ta;
        return row_less(rows[a], rows[b], e);
    });
    for (size_t i : order) {
        T.degrees.push_back(degrees[i]);
        T.rows.push_back(rows[i]);
    }

    verify_character_table(T);
    return T;
}

void verify_character_table(const CharacterTable& T) {
    long r = T.num_classes();
    if ((long)T.rows.size() != r)
        throw std::logic_error("character table: row count != class count");
    const Cyclo n(T.G.n);
    for (long i = 0; i < r; ++i) {
        if (!(T.rows[(size_t)i][0] == Cyclo(T.degrees[(size_t)i])))
            throw std::logic_error("character table: chi(1) != degree in row " + std::to_string(i));
        for (long k = 0; k < r; ++k) {
            Cyclo s(0);
            for (long j = 0; j < r; ++j) {
                Cyclo a = T.rows[(size_t)i][(size_t)j];
                Cyclo b = T.rows[(size_t)k][(size_t)T.inverse_class[(size_t)j]];
                s += Cyclo((long)T.classes[(size_t)j].size()) * a * b;
            }
            Cyclo expect = (i == k) ? n : Cyclo(0);
            if (!(s == expect)) {
                std::ostringstream os;
                os << "character table: row orthogonality fails at (" << i << "," << k
                   << "): got " << s.str();
                throw std::logic_error(os.str());
            }
        }
    }
    // Column orthogonality.
    for (long j = 0; j < r; ++j)
        for (long l = 0; l < r; ++l) {
            Cyclo s(0);
            for (long i = 0; i < r; ++i)
                s += T.rows[(size_t)i][(size_t)j] *
                     T.rows[(size_t)i][(size_t)T.inverse_class[(size_t)l]];
            Cyclo expect = (j == l) ? Cyclo(T.G.n / (long)T.classes[(size_t)j].size()) : Cyclo(0);
            if (!(s == expect))
                throw std::logic_error("character table: column orthogonality fails at (" +
                                       std::to_string(j) + "," + std::to_string(l) + ")");
        }
}

std::vector<std::vector<Cyclo>> central_idempotents(const CharacterTable& T) {
    std::vector<std::vector<Cyclo>> idems;
    const Rat inv_n(1, (unsigned long)T.G.n);
    for (long i = 0; i < (long)T.rows.size(); ++i) {
        std::vector<Cyclo> v((size_t)T.G.n, Cyclo(0));
        for (long g = 0; g < T.G.n; ++g) {
            long jinv = T.class_of[(size_t)T.G.inv(g)];
            v[(size_t)g] = Cyclo(Rat(T.degrees[(size_t)i]) * inv_n) * T.rows[(size_t)i][(size_t)jinv];
        }
        idems.push_back(std::move(v));
    }
    return idems;
}

long conjugate_row(const CharacterTable& T, long i) {
    long r = T.num_classes();
    for (long k = 0; k < r; ++k) {
        bool ok = true;
        for (long j = 0; j < r && ok; ++j)
            if (!(T.rows[(size_t)k][(size_t)j] == T.rows[(size_t)i][(size_t)j].conj())) ok = false;
        if (ok) return k;
    }
    throw std::logic_error("conjugate_row: no conjugate row found");
}

std::vector<MonomialRep> monomial_irreps(const CharacterTable& T) {
    const FiniteGroup& G = T.G;
    std::vector<MonomialRep> reps;
    std::vector<std::vector<long>> subs = subgroups_upto2gen(G);
    for (long i = 0; i < (long)T.rows.size(); ++i) {
        long d = T.degrees[(size_t)i];
        MonomialRep found;
        bool ok = false;
        for (const auto& H : subs) {
            if ((long)H.size() * d != G.n) continue;
            FiniteGroup Hg = subgroup_as_group(G, H);
            CharacterTable TH = character_table(Hg, G.n);
            std::vector<long> reps_t = left_coset_reps(G, H);
            std::map<long, long> pos;
            for (size_t s = 0; s < H.size(); ++s) pos[H[s]] = (long)s;
            for (long hi = 0; hi < (long)TH.rows.size() && !ok; ++hi) {
                if (TH.degrees[(size_t)hi] != 1) continue;
                // psi on H by element
                auto psi = [&](long h) {
                    return TH.rows[(size_t)hi][(size_t)TH.class_of[(size_t)pos.at(h)]];
                };
                // induced character must equal row i
                bool match = true;
                for (long j = 0; j < T.num_classes() && match; ++j) {
                    long g = T.classes[(size_t)j][0];
                    Cyclo s(0);
                    for (long tr : reps_t) {
                        long c = G.mul(G.mul(G.inv(tr), g), tr);
                        if (pos.count(c)) s += psi(c);
                    }
                    if (!(s == T.rows[(size_t)i][(size_t)j])) match = false;
                }
                if (!match) continue;
                // build matrices and verify the homomorphism property
                std::vector<Mat<Cyclo>> mats;
                mats.reserve((size_t)G.n);
                for (long g = 0; g < G.n; ++g) {
                    Mat<Cyclo> M(d, d, Cyclo(0));
                    for (long s = 0; s < d; ++s)
                        for (long t = 0; t < d; ++t) {
                            long c = G.mul(G.mul(G.inv(reps_t[(size_t)s]), g), reps_t[(size_t)t]);
                            if (pos.count(c)) M.at(s, t) = psi(c);
                        }
                    mats.push_back(std::move(M));
                }
                bool hom = true;
                for (long a = 0; a < G.n && hom; ++a)
                    for (long b = 0; b < G.n && hom; ++b)
                        if (mat_mul(mats[(size_t)a], mats[(size_t)b]) != mats[(size_t)G.mul(a, b)])
                            hom = false;
                for (long g = 0; g < G.n && hom; ++g)
                    if (!(mat_trace(mats[(size_t)g]) ==
                          T.rows[(size_t)i][(size_t)T.class_of[(size_t)g]]))
                        hom = false;
                if (!hom)
                    throw std::logic_error(
                        "monomial_irreps: induced character matched but matrices failed");
                found.degree = d;
                found.row = i;
                found.subgroup = H;
                found.coset_reps = reps_t;
                found.mats = std::move(mats);
                ok = true;
            }
            if (ok) break;
        }
        if (!ok)
            throw std::runtime_error("monomial_irreps: no monomial model found for row " +
                                     std::to_string(i));
        reps.push_back(std::move(found));
    }
    return reps;
}

}  // namespace hopfforms
