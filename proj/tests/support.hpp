#pragma once

/* Shared fixtures for the test binaries: small reference algebras, and an
 * independent matrix exponential/logarithm oracle for the BCH product. */

#include <string>
#include <vector>

#include "defalg/dgla.hpp"

namespace testsupport {

using namespace defalg;

/* sl2: basis e, f, h in degree 0; [e,f]=h, [h,e]=2e, [h,f]=-2f, d=0 */
inline Dgla sl2() {
    return DglaBuilder("sl2", {{0, {"e", "f", "h"}}})
        .bracket("e", "f", {{"h", Rat(1)}})
        .bracket("h", "e", {{"e", Rat(2)}})
        .bracket("h", "f", {{"f", Rat(-2)}})
        .build();
}

/* Heisenberg: e, f, z in degree 0; [e,f]=z, z central, d=0 */
inline Dgla heisenberg() {
    return DglaBuilder("heis", {{0, {"e", "f", "z"}}}).bracket("e", "f", {{"z", Rat(1)}}).build();
}

/* u in degree 1 with du=0, v in degree 2, [u,u]=v: the class of v obstructs
 * lifting u past first order */
inline Dgla obstructed_pair() {
    return DglaBuilder("uv", {{1, {"u"}}, {2, {"v"}}}).bracket("u", "u", {{"v", Rat(1)}}).build();
}

/* same but with w in degree 1, dw = v, so the obstruction is exact */
inline Dgla unobstructed_pair() {
    return DglaBuilder("uvw", {{1, {"u", "w"}}, {2, {"v"}}})
        .bracket("u", "u", {{"v", Rat(1)}})
        .d("w", {{"v", Rat(1)}})
        .build();
}

/* gl_n in degree 0: basis E<i><j> row-major, [E_ij, E_kl] = d_jk E_il - d_li E_kj */
inline Dgla gl(int n) {
    auto lab = [&](int i, int j) { return "E" + std::to_string(i) + std::to_string(j); };
    std::vector<std::string> basis;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) basis.push_back(lab(i, j));
    DglaBuilder B("gl" + std::to_string(n), {{0, basis}});
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    if (std::make_pair(i, j) >= std::make_pair(k, l)) continue;
                    std::vector<std::pair<std::string, Rat>> val;
                    if (j == k) val.push_back({lab(i, l), Rat(1)});
                    if (l == i) val.push_back({lab(k, j), Rat(-1)});
                    if (!val.empty()) B.bracket(lab(i, j), lab(k, l), val);
                }
    return B.build();
}

/* ---- matrices over an Artinian algebra, for the exp/log oracle ---- */
struct ArtinMat {
    const ArtinianAlgebra* A;
    int n;
    std::vector<ArtinElem> e; // row-major

    ArtinMat(const ArtinianAlgebra& alg, int dim)
        : A(&alg), n(dim), e((size_t)dim * dim, ArtinElem(alg)) {}
    ArtinElem& at(int i, int j) { return e[(size_t)i * n + j]; }
    const ArtinElem& at(int i, int j) const { return e[(size_t)i * n + j]; }
    bool is_zero() const {
        for (const auto& x : e)
            if (!x.is_zero()) return false;
        return true;
    }
};

inline ArtinMat am_mul(const ArtinMat& x, const ArtinMat& y) {
    ArtinMat r(*x.A, x.n);
    for (int i = 0; i < x.n; ++i)
        for (int k = 0; k < x.n; ++k)
            for (int j = 0; j < x.n; ++j)
                r.at(i, j) = artin_add(r.at(i, j), artin_mul(x.at(i, k), y.at(k, j)));
    return r;
}

inline ArtinMat am_add(const ArtinMat& x, const ArtinMat& y) {
    ArtinMat r = x;
    for (size_t i = 0; i < r.e.size(); ++i) r.e[i] = artin_add(r.e[i], y.e[i]);
    return r;
}

inline ArtinMat am_scale(const Rat& c, const ArtinMat& x) {
    ArtinMat r = x;
    for (auto& v : r.e) v = artin_scale(c, v);
    return r;
}

/* exp(N) - I for N with entries in m_A; the series ends at the nilpotency order */
inline ArtinMat am_exp_minus_one(const ArtinMat& N) {
    ArtinMat acc(*N.A, N.n), pw = N;
    Rat fact(1);
    for (int k = 1; k < N.A->nilpotency_order; ++k) {
        fact /= k;
        acc = am_add(acc, am_scale(fact, pw));
        pw = am_mul(pw, N);
    }
    return acc;
}

/* log(I + M) for M with entries in m_A */
inline ArtinMat am_log_one_plus(const ArtinMat& M) {
    ArtinMat acc(*M.A, M.n), pw = M;
    for (int k = 1; k < M.A->nilpotency_order; ++k) {
        acc = am_add(acc, am_scale(Rat(k % 2 ? 1 : -1) / k, pw));
        pw = am_mul(pw, M);
    }
    return acc;
}

/* log(exp(X) exp(Y)) computed entirely by matrix arithmetic */
inline ArtinMat am_bch_oracle(const ArtinMat& X, const ArtinMat& Y) {
    ArtinMat ex = am_exp_minus_one(X), ey = am_exp_minus_one(Y);
    // exp(X)exp(Y) = I + (ex + ey + ex*ey)
    return am_log_one_plus(am_add(am_add(ex, ey), am_mul(ex, ey)));
}

/* view a degree-0 element of gl(n) (x) m_A as a matrix over A */
inline ArtinMat ne_to_matrix(const NilpotentElement& x, int n) {
    ArtinMat m(*x.A, n);
    for (int rho = 0; rho < (int)x.comp.size(); ++rho)
        for (const auto& [idx, c] : x.comp[rho]) m.e[idx].cm[rho] += c;
    return m;
}

inline NilpotentElement matrix_to_ne(const Dgla& gl_alg, const ArtinianAlgebra& A,
                                     const ArtinMat& m) {
    NilpotentElement x(gl_alg, A, 0);
    for (int idx = 0; idx < m.n * m.n; ++idx)
        for (int rho = 0; rho < A.dim_m(); ++rho)
            if (m.e[idx].cm[rho] != 0) x.comp[rho] = sp_add(x.comp[rho], sp_unit(idx, m.e[idx].cm[rho]));
    return x;
}

/* deterministic small pseudo-random stream for reproducible property tests */
struct Lcg {
    unsigned long long s;
    explicit Lcg(unsigned long long seed) : s(seed) {}
    int range(int lo, int hi) { // inclusive
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        return lo + (int)((s >> 33) % (unsigned long long)(hi - lo + 1));
    }
};

/* random degree-deg element of L (x) m_A with small integer coordinates */
inline NilpotentElement random_ne(const Dgla& L, const ArtinianAlgebra& A, int deg, Lcg& rng) {
    NilpotentElement x(L, A, deg);
    int dim = L.cx.space->dim(deg);
    for (int rho = 0; rho < A.dim_m(); ++rho)
        for (int i = 0; i < dim; ++i) {
            int c = rng.range(-2, 2);
            if (c != 0) x.comp[rho] = sp_add(x.comp[rho], sp_unit(i, Rat(c)));
        }
    return x;
}

} // namespace testsupport
