#pragma once

#include <cstdint>
#include <vector>

#include "defalg/matrix.hpp"

namespace defalg {

/* Polynomial differential forms on the n-simplex:
 * Q[t_0..t_n, dt_0..dt_n]/(1 - sum t_i, sum dt_i), stored in the canonical
 * presentation that eliminates t_0 and dt_0, i.e. as Q[t_1..t_n] (x) Lambda(dt_1..dt_n).
 * A monomial is (exponents of t_1..t_n, bitmask of dt factors in ascending order). */
struct AplMono {
    std::vector<int> t;  // size n, exponents of t_1..t_n
    uint32_t dt = 0;     // bit i-1 set = dt_i present

    int poly_degree() const {
        int s = 0;
        for (int e : t) s += e;
        return s;
    }
    int form_degree() const { return __builtin_popcount(dt); }
    /* degree as a polynomial in the t_i and dt_i together (each dt_i counts 1);
     * preserved by the de Rham differential, additive under products */
    int total_degree() const { return poly_degree() + form_degree(); }
    bool operator<(const AplMono& o) const {
        if (dt != o.dt) return dt < o.dt;
        return t < o.t;
    }
    bool operator==(const AplMono& o) const { return dt == o.dt && t == o.t; }
};

struct AplForm {
    int n = 0; // simplex dimension
    std::map<AplMono, Rat> terms;

    bool is_zero() const { return terms.empty(); }
    void add(const AplMono& m, const Rat& c);
};

AplForm apl_zero(int n);
AplForm apl_one(int n);
AplForm apl_t(int n, int i);   // t_i as canonical form, 0 <= i <= n
AplForm apl_dt(int n, int i);  // dt_i as canonical form

AplForm apl_add(const AplForm& a, const AplForm& b);
AplForm apl_scale(const Rat& c, const AplForm& a);
AplForm apl_mul(const AplForm& a, const AplForm& b);
AplForm apl_d(const AplForm& a);
bool apl_eq(const AplForm& a, const AplForm& b);

/* k-th face: restriction (A_PL)_n -> (A_PL)_{n-1}, t_i -> t_i (i<k), 0 (i=k), t_{i-1} (i>k) */
AplForm apl_face(const AplForm& a, int k);

/* all monomials with total_degree <= cap, ordered form-degree-major then (dt, t)
 * lex; form degree f contributes only if f <= n.  Capping by total degree keeps
 * the capped span a subcomplex on which restriction to any face is defined, and
 * a primitive of every exact capped form is again capped (the de Rham
 * differential preserves total degree); capping by t-degree alone would
 * permanently inflate the top cohomology of the totalizations built on top. */
std::vector<AplMono> apl_basis(int n, int cap);

std::string apl_str(const AplForm& a);

} // namespace defalg
