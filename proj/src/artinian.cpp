#include "defalg/artinian.hpp"

#include <numeric>

namespace defalg {

static int total_deg(const std::vector<int>& e) {
    return std::accumulate(e.begin(), e.end(), 0);
}

/* graded lex: lower total degree first, then lexicographic on exponents */
static bool grlex_less(const std::vector<int>& a, const std::vector<int>& b) {
    int da = total_deg(a), db = total_deg(b);
    if (da != db) return da < db;
    return a < b;
}

ArtinianAlgebra ArtinianAlgebra::from_staircase(std::vector<std::string> gens,
                                                std::vector<std::vector<int>> staircase,
                                                std::string name) {
    ArtinianAlgebra A;
    A.gens = std::move(gens);
    A.name = std::move(name);
    size_t g = A.gens.size();
    for (auto& e : staircase) {
        require(e.size() == g, "artinian: exponent arity mismatch");
        int d = total_deg(e);
        require(d >= 1, "artinian: staircase must consist of nonconstant monomials");
        for (int x : e) require(x >= 0, "artinian: negative exponent");
    }
    std::sort(staircase.begin(), staircase.end(), grlex_less);
    staircase.erase(std::unique(staircase.begin(), staircase.end()), staircase.end());
    A.mono = std::move(staircase);
    for (int i = 0; i < (int)A.mono.size(); ++i) A.lookup[A.mono[i]] = i;

    /* downward closure: every monomial divisor (other than 1) of a basis monomial is a basis monomial */
    for (const auto& e : A.mono) {
        for (size_t k = 0; k < g; ++k) {
            if (e[k] == 0) continue;
            auto d = e;
            d[k] -= 1;
            if (total_deg(d) == 0) continue;
            require(A.lookup.count(d), "artinian: staircase not downward closed");
        }
    }

    int maxd = 0;
    for (const auto& e : A.mono) maxd = std::max(maxd, total_deg(e));
    A.nilpotency_order = maxd + 1;

    int n = A.dim_m();
    A.prod.assign(n, std::vector<int>(n, -1));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<int> s(g);
            for (size_t k = 0; k < g; ++k) s[k] = A.mono[i][k] + A.mono[j][k];
            A.prod[i][j] = A.mono_index(s);
        }
    return A;
}

ArtinianAlgebra make_dual_numbers() {
    return ArtinianAlgebra::from_staircase({"e"}, {{1}}, "Q[e]/(e^2)");
}

ArtinianAlgebra make_truncated_poly(int order) {
    require(order >= 2, "make_truncated_poly: order must be >= 2");
    std::vector<std::vector<int>> st;
    for (int k = 1; k < order; ++k) st.push_back({k});
    return ArtinianAlgebra::from_staircase({"t"}, st, "Q[t]/(t^" + std::to_string(order) + ")");
}

bool ArtinElem::is_zero() const {
    if (c0 != 0) return false;
    for (const auto& c : cm)
        if (c != 0) return false;
    return true;
}

static void check_same(const ArtinElem& a, const ArtinElem& b) {
    require(a.A == b.A, "artinian: mixed algebras");
}

ArtinElem artin_add(const ArtinElem& a, const ArtinElem& b) {
    check_same(a, b);
    ArtinElem r(*a.A);
    r.c0 = a.c0 + b.c0;
    for (int i = 0; i < a.A->dim_m(); ++i) r.cm[i] = a.cm[i] + b.cm[i];
    return r;
}

ArtinElem artin_sub(const ArtinElem& a, const ArtinElem& b) {
    check_same(a, b);
    ArtinElem r(*a.A);
    r.c0 = a.c0 - b.c0;
    for (int i = 0; i < a.A->dim_m(); ++i) r.cm[i] = a.cm[i] - b.cm[i];
    return r;
}

ArtinElem artin_scale(const Rat& c, const ArtinElem& a) {
    ArtinElem r(*a.A);
    r.c0 = c * a.c0;
    for (int i = 0; i < a.A->dim_m(); ++i) r.cm[i] = c * a.cm[i];
    return r;
}

ArtinElem artin_mul(const ArtinElem& a, const ArtinElem& b) {
    check_same(a, b);
    const ArtinianAlgebra& A = *a.A;
    ArtinElem r(A);
    r.c0 = a.c0 * b.c0;
    for (int i = 0; i < A.dim_m(); ++i) r.cm[i] = a.c0 * b.cm[i] + b.c0 * a.cm[i];
    for (int i = 0; i < A.dim_m(); ++i) {
        if (a.cm[i] == 0) continue;
        for (int j = 0; j < A.dim_m(); ++j) {
            if (b.cm[j] == 0) continue;
            int k = A.prod[i][j];
            if (k >= 0) r.cm[k] += a.cm[i] * b.cm[j];
        }
    }
    return r;
}

std::string artin_str(const ArtinElem& a) {
    const ArtinianAlgebra& A = *a.A;
    std::string s;
    auto term = [&](const Rat& c, const std::string& m) {
        if (c == 0) return;
        if (!s.empty()) s += " + ";
        s += rat_str(c);
        if (!m.empty()) s += "*" + m;
    };
    term(a.c0, "");
    for (int i = 0; i < A.dim_m(); ++i) {
        std::string m;
        for (size_t k = 0; k < A.gens.size(); ++k) {
            if (A.mono[i][k] == 0) continue;
            if (!m.empty()) m += "*";
            m += A.gens[k];
            if (A.mono[i][k] > 1) m += "^" + std::to_string(A.mono[i][k]);
        }
        term(a.cm[i], m);
    }
    return s.empty() ? "0" : s;
}

} // namespace defalg
