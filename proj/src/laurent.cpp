#include "defalg/laurent.hpp"

#include <algorithm>
#include <sstream>

#include "defalg/error.hpp"

namespace defalg {

void LaurentPoly::add(std::array<int, 2> e, const Rat& c) {
    if (c == 0) return;
    auto it = terms.find(e);
    if (it == terms.end()) {
        terms.emplace(e, c);
    } else {
        it->second += c;
        if (it->second == 0) terms.erase(it);
    }
}

LaurentPoly lp_zero(int nvars) {
    require(nvars == 1 || nvars == 2, "lp_zero: nvars must be 1 or 2");
    LaurentPoly p;
    p.nvars = nvars;
    return p;
}

LaurentPoly lp_const(int nvars, const Rat& c) {
    LaurentPoly p = lp_zero(nvars);
    p.add({0, 0}, c);
    return p;
}

LaurentPoly lp_mono(int nvars, std::array<int, 2> e, const Rat& c) {
    LaurentPoly p = lp_zero(nvars);
    require(nvars == 2 || e[1] == 0, "lp_mono: second exponent must be 0 in one variable");
    p.add(e, c);
    return p;
}

LaurentPoly lp_add(const LaurentPoly& a, const LaurentPoly& b) {
    require(a.nvars == b.nvars, "lp_add: variable count mismatch");
    LaurentPoly p = a;
    for (const auto& [e, c] : b.terms) p.add(e, c);
    return p;
}

LaurentPoly lp_sub(const LaurentPoly& a, const LaurentPoly& b) {
    require(a.nvars == b.nvars, "lp_sub: variable count mismatch");
    LaurentPoly p = a;
    for (const auto& [e, c] : b.terms) p.add(e, -c);
    return p;
}

LaurentPoly lp_scale(const Rat& c, const LaurentPoly& a) {
    LaurentPoly p = lp_zero(a.nvars);
    if (c == 0) return p;
    for (const auto& [e, cc] : a.terms) p.terms.emplace(e, c * cc);
    return p;
}

LaurentPoly lp_mul(const LaurentPoly& a, const LaurentPoly& b) {
    require(a.nvars == b.nvars, "lp_mul: variable count mismatch");
    LaurentPoly p = lp_zero(a.nvars);
    for (const auto& [ea, ca] : a.terms)
        for (const auto& [eb, cb] : b.terms)
            p.add({ea[0] + eb[0], ea[1] + eb[1]}, ca * cb);
    return p;
}

LaurentPoly lp_derivative(const LaurentPoly& a, int var) {
    require(0 <= var && var < a.nvars, "lp_derivative: variable index out of range");
    LaurentPoly p = lp_zero(a.nvars);
    for (const auto& [e, c] : a.terms) {
        if (e[var] == 0) continue;
        std::array<int, 2> ee = e;
        ee[var] -= 1;
        p.add(ee, c * e[var]);
    }
    return p;
}

bool lp_eq(const LaurentPoly& a, const LaurentPoly& b) {
    return a.nvars == b.nvars && a.terms == b.terms;
}

std::string lp_str(const LaurentPoly& a, const std::array<std::string, 2>& names) {
    if (a.terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : a.terms) {
        if (!first) os << " + ";
        first = false;
        os << "(" << rat_str(c) << ")";
        for (int i = 0; i < a.nvars; ++i)
            if (e[i] != 0) os << "*" << names[i] << "^" << e[i];
    }
    return os.str();
}

namespace {

/* shift exponents so all are >= 0; returns the shift applied */
LaurentPoly clear_denominators(const LaurentPoly& a, std::array<int, 2>& shift) {
    shift = {0, 0};
    for (const auto& [e, c] : a.terms) {
        (void)c;
        shift[0] = std::min(shift[0], e[0]);
        shift[1] = std::min(shift[1], e[1]);
    }
    LaurentPoly p = lp_zero(a.nvars);
    for (const auto& [e, c] : a.terms) p.terms.emplace(std::array<int, 2>{e[0] - shift[0], e[1] - shift[1]}, c);
    return p;
}

/* graded lex leading term of a plain polynomial */
std::pair<std::array<int, 2>, Rat> leading_term(const LaurentPoly& a) {
    bool have = false;
    std::array<int, 2> best{0, 0};
    Rat bc = 0;
    for (const auto& [e, c] : a.terms) {
        int tot = e[0] + e[1], btot = best[0] + best[1];
        if (!have || tot > btot || (tot == btot && e > best)) {
            have = true;
            best = e;
            bc = c;
        }
    }
    require(have, "leading_term of zero polynomial");
    return {best, bc};
}

} // namespace

bool lp_divisible(const LaurentPoly& g, const LaurentPoly& f) {
    require(!f.is_zero(), "lp_divisible: zero divisor");
    if (g.is_zero()) return true;
    require(g.nvars == f.nvars, "lp_divisible: variable count mismatch");
    std::array<int, 2> sf, sg;
    LaurentPoly F = clear_denominators(f, sf);
    LaurentPoly G = clear_denominators(g, sg);
    // divisibility in the Laurent ring is insensitive to monomial factors
    auto [lt, lc] = leading_term(F);
    LaurentPoly r = G;
    while (!r.is_zero()) {
        auto [rt, rc] = leading_term(r);
        if (rt[0] < lt[0] || rt[1] < lt[1]) return false;
        LaurentPoly q = lp_mono(F.nvars, {rt[0] - lt[0], rt[1] - lt[1]}, rc / lc);
        r = lp_sub(r, lp_mul(q, F));
    }
    return true;
}

LaurentPoly lp_divide_exact(const LaurentPoly& g, const LaurentPoly& f) {
    require(!f.is_zero(), "lp_divide_exact: zero divisor");
    if (g.is_zero()) return lp_zero(g.nvars);
    require(g.nvars == f.nvars, "lp_divide_exact: variable count mismatch");
    std::array<int, 2> sf, sg;
    LaurentPoly F = clear_denominators(f, sf);
    LaurentPoly G = clear_denominators(g, sg);
    auto [lt, lc] = leading_term(F);
    LaurentPoly r = G;
    LaurentPoly quo = lp_zero(g.nvars);
    while (!r.is_zero()) {
        auto [rt, rc] = leading_term(r);
        require(rt[0] >= lt[0] && rt[1] >= lt[1], "lp_divide_exact: not divisible");
        LaurentPoly q = lp_mono(F.nvars, {rt[0] - lt[0], rt[1] - lt[1]}, rc / lc);
        quo = lp_add(quo, q);
        r = lp_sub(r, lp_mul(q, F));
    }
    // undo the monomial normalisation: g/f = (G/F) * mono(sg - sf)
    return lp_mul(quo, lp_mono(g.nvars, {sg[0] - sf[0], sg[1] - sf[1]}, 1));
}

VField vf_zero(int nvars) {
    VField v;
    v.nvars = nvars;
    v.coef = {lp_zero(nvars), lp_zero(nvars)};
    if (nvars == 1) v.coef[1] = lp_zero(1);
    return v;
}

VField vf_add(const VField& a, const VField& b) {
    require(a.nvars == b.nvars, "vf_add: variable count mismatch");
    VField v = vf_zero(a.nvars);
    for (int i = 0; i < a.nvars; ++i) v.coef[i] = lp_add(a.coef[i], b.coef[i]);
    return v;
}

VField vf_scale(const Rat& c, const VField& a) {
    VField v = vf_zero(a.nvars);
    for (int i = 0; i < a.nvars; ++i) v.coef[i] = lp_scale(c, a.coef[i]);
    return v;
}

bool vf_eq(const VField& a, const VField& b) {
    if (a.nvars != b.nvars) return false;
    for (int i = 0; i < a.nvars; ++i)
        if (!lp_eq(a.coef[i], b.coef[i])) return false;
    return true;
}

bool vf_is_zero(const VField& a) {
    for (int i = 0; i < a.nvars; ++i)
        if (!a.coef[i].is_zero()) return false;
    return true;
}

VField vf_bracket(const VField& a, const VField& b) {
    require(a.nvars == b.nvars, "vf_bracket: variable count mismatch");
    VField v = vf_zero(a.nvars);
    for (int j = 0; j < a.nvars; ++j) {
        LaurentPoly s = lp_zero(a.nvars);
        for (int i = 0; i < a.nvars; ++i) {
            s = lp_add(s, lp_mul(a.coef[i], lp_derivative(b.coef[j], i)));
            s = lp_sub(s, lp_mul(b.coef[i], lp_derivative(a.coef[j], i)));
        }
        v.coef[j] = s;
    }
    return v;
}

LaurentPoly vf_apply(const VField& v, const LaurentPoly& f) {
    require(v.nvars == f.nvars, "vf_apply: variable count mismatch");
    LaurentPoly s = lp_zero(f.nvars);
    for (int i = 0; i < v.nvars; ++i) s = lp_add(s, lp_mul(v.coef[i], lp_derivative(f, i)));
    return s;
}

std::string vf_str(const VField& v, const std::array<std::string, 2>& names) {
    std::ostringstream os;
    bool any = false;
    for (int i = 0; i < v.nvars; ++i) {
        if (v.coef[i].is_zero()) continue;
        if (any) os << " + ";
        any = true;
        os << "[" << lp_str(v.coef[i], names) << "]*d/d" << names[i];
    }
    if (!any) return "0";
    return os.str();
}

MonomialMap mm_identity(int nvars) {
    MonomialMap m;
    m.nvars = nvars;
    return m;
}

MonomialMap mm_inverse(const MonomialMap& m) {
    MonomialMap r;
    r.nvars = m.nvars;
    if (m.nvars == 1) {
        require(m.expo[0][0] == 1 || m.expo[0][0] == -1, "mm_inverse: exponent matrix not invertible over Z");
        int e = m.expo[0][0];
        r.expo[0][0] = e;
        // x = c*y^e  =>  y = c^{-e} * x^{e}
        Rat ci = 1 / m.coef[0];
        r.coef[0] = (e == 1) ? ci : m.coef[0];
        return r;
    }
    long a = m.expo[0][0], b = m.expo[0][1], c = m.expo[1][0], d = m.expo[1][1];
    long det = a * d - b * c;
    require(det == 1 || det == -1, "mm_inverse: exponent matrix not invertible over Z");
    // F = E^{-1}
    std::array<std::array<long, 2>, 2> F{{{d / det, -b / det}, {-c / det, a / det}}};
    for (int j = 0; j < 2; ++j)
        for (int i = 0; i < 2; ++i) r.expo[j][i] = int(F[j][i]);
    // y_j = prod_i (x_i / c_i)^{F_ji}
    auto ipow = [](const Rat& q, long e) {
        Rat r1 = 1, base = q;
        long n = e < 0 ? -e : e;
        for (long k = 0; k < n; ++k) r1 *= base;
        if (e < 0) r1 = 1 / r1;
        return r1;
    };
    for (int j = 0; j < 2; ++j) {
        Rat cj = 1;
        for (int i = 0; i < 2; ++i) cj *= ipow(1 / m.coef[i], F[j][i]);
        r.coef[j] = cj;
    }
    return r;
}

LaurentPoly lp_subst(const LaurentPoly& f, const MonomialMap& m) {
    require(f.nvars == m.nvars, "lp_subst: variable count mismatch");
    LaurentPoly out = lp_zero(f.nvars);
    auto ipow = [](const Rat& q, long e) {
        Rat r1 = 1, base = q;
        long n = e < 0 ? -e : e;
        for (long k = 0; k < n; ++k) r1 *= base;
        if (e < 0) r1 = 1 / r1;
        return r1;
    };
    for (const auto& [e, c] : f.terms) {
        std::array<int, 2> ee{0, 0};
        Rat cc = c;
        for (int i = 0; i < f.nvars; ++i) {
            cc *= ipow(m.coef[i], e[i]);
            for (int j = 0; j < f.nvars; ++j) ee[j] += e[i] * m.expo[i][j];
        }
        out.add(ee, cc);
    }
    return out;
}

VField vf_transport(const VField& v, const MonomialMap& m) {
    require(v.nvars == m.nvars, "vf_transport: variable count mismatch");
    MonomialMap inv = mm_inverse(m);
    // d/dx_i = sum_j (dy_j/dx_i) d/dy_j, with y_j = d_j*prod x_i^{F_ji}:
    // dy_j/dx_i = F_ji * y_j / x_i, and x_i^{-1} expands as coef^-1 * y^{-E_i}.
    VField out = vf_zero(v.nvars);
    for (int j = 0; j < v.nvars; ++j) {
        LaurentPoly s = lp_zero(v.nvars);
        for (int i = 0; i < v.nvars; ++i) {
            if (inv.expo[j][i] == 0) continue;
            if (v.coef[i].is_zero()) continue;
            LaurentPoly a = lp_subst(v.coef[i], m); // old coefficient in new coordinates
            std::array<int, 2> ei{0, 0};
            for (int k = 0; k < v.nvars; ++k) ei[k] = -m.expo[i][k];
            std::array<int, 2> yj{0, 0};
            yj[j] = 1;
            LaurentPoly factor = lp_mono(v.nvars, {ei[0] + yj[0], ei[1] + yj[1]},
                                         Rat(inv.expo[j][i]) / m.coef[i]);
            s = lp_add(s, lp_mul(a, factor));
        }
        out.coef[j] = s;
    }
    return out;
}

} // namespace defalg
