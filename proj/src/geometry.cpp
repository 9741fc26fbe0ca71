#include "defalg/geometry.hpp"

#include <algorithm>
#include <cctype>
#include <climits>
#include <functional>
#include <set>
#include <sstream>

namespace defalg {

namespace {

using Key = std::array<int, 3>; // (direction, e0, e1)

std::string index_str(const std::vector<int>& I) {
    std::string s = "U";
    for (int i : I) s += std::to_string(i);
    return s;
}

VField mono_field(int nvars, const Key& k) {
    VField v = vf_zero(nvars);
    v.coef[k[0]] = lp_mono(nvars, {k[1], k[2]}, Rat(1));
    return v;
}

void collect_keys(const VField& v, std::set<Key>& out) {
    for (int d = 0; d < v.nvars; ++d)
        for (const auto& [e, c] : v.coef[d].terms) out.insert({d, e[0], e[1]});
}

/* negative exponents are admissible on U_I exactly on invertible variables */
bool pattern_ok(const Chart& c, const std::vector<int>& I, const Key& k) {
    std::array<bool, 2> inv = inverted_mask(c, I);
    for (int v = 0; v < c.nvars; ++v)
        if (k[1 + v] < 0 && !inv[v]) return false;
    return true;
}

VField transport_field(const std::vector<Chart>& charts, int from, int to, const VField& v) {
    if (from == to) return v;
    return vf_transport(v, charts[from].to.at(to));
}

/* all ascending multi-indices of the given size over {0..ncharts-1} */
std::vector<std::vector<int>> multi_indices(int ncharts, int size) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
        if ((int)cur.size() == size) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i < ncharts; ++i) {
            cur.push_back(i);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

/* ---- homogeneous polynomials in X0..Xn (coordinate changes only) ---- */
using HPoly = std::map<std::array<int, 3>, Rat>;

HPoly hp_mul(const HPoly& a, const HPoly& b) {
    HPoly r;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            std::array<int, 3> e{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]};
            Rat& v = r[e];
            v += ca * cb;
            if (v == 0) r.erase(e);
        }
    return r;
}

/* f with each X_a replaced by the linear form sub[a] */
HPoly hp_subst_linear(const HPoly& f, const std::array<HPoly, 3>& sub) {
    HPoly r;
    for (const auto& [e, c] : f) {
        HPoly term{{{0, 0, 0}, c}};
        for (int a = 0; a < 3; ++a)
            for (int k = 0; k < e[a]; ++k) term = hp_mul(term, sub[a]);
        for (const auto& [ee, cc] : term) {
            Rat& v = r[ee];
            v += cc;
            if (v == 0) r.erase(ee);
        }
    }
    return r;
}

std::vector<LaurentPoly> dehomogenize(const HPoly& F, int n) {
    std::vector<LaurentPoly> out;
    for (int i = 0; i <= n; ++i) {
        LaurentPoly f = lp_zero(n);
        for (const auto& [e, c] : F) {
            std::array<int, 2> ex{0, 0};
            int v = 0;
            for (int a = 0; a <= n; ++a)
                if (a != i) ex[v++] = e[a];
            f.add(ex, c);
        }
        out.push_back(f);
    }
    return out;
}

/* canonical remainder of division by a single divisor (term order: lex on
 * exponent keys); zero iff the dividend lies in the polynomial ideal (f) */
LaurentPoly principal_remainder(LaurentPoly r, const LaurentPoly& f) {
    require(!f.is_zero(), "principal_remainder: zero divisor");
    const auto& lt = *f.terms.rbegin();
    LaurentPoly rem = lp_zero(r.nvars);
    while (!r.is_zero()) {
        auto top = *r.terms.rbegin();
        if (top.first[0] >= lt.first[0] && top.first[1] >= lt.first[1]) {
            LaurentPoly q = lp_mono(
                r.nvars, {top.first[0] - lt.first[0], top.first[1] - lt.first[1]},
                top.second / lt.second);
            r = lp_sub(r, lp_mul(q, f));
        } else {
            rem.add(top.first, top.second);
            r.terms.erase(std::prev(r.terms.end()));
        }
    }
    return rem;
}

/* divisor with unit monomial factors removed: shift every invertible variable
 * so its minimal exponent becomes zero */
LaurentPoly strip_units(const LaurentPoly& f, const std::array<bool, 2>& inverted) {
    std::array<int, 2> mn{INT_MAX, INT_MAX};
    for (const auto& [e, c] : f.terms)
        for (int v = 0; v < 2; ++v) mn[v] = std::min(mn[v], e[v]);
    std::array<int, 2> sh{0, 0};
    for (int v = 0; v < 2; ++v)
        if (inverted[v]) sh[v] = -mn[v];
    if (sh[0] == 0 && sh[1] == 0) return f;
    return lp_mul(f, lp_mono(f.nvars, sh, Rat(1)));
}

} // namespace

/* ---- charts ---- */

int chart_var(const Chart& c, int a) {
    for (int v = 0; v < c.nvars; ++v)
        if (c.ratio[v] == a) return v;
    return -1;
}

std::array<bool, 2> inverted_mask(const Chart& c, const std::vector<int>& I) {
    std::array<bool, 2> m{false, false};
    for (int v = 0; v < c.nvars; ++v)
        m[v] = std::find(I.begin(), I.end(), c.ratio[v]) != I.end();
    return m;
}

std::vector<Chart> standard_cover(int n) {
    require(n == 1 || n == 2, "standard_cover: only P^1 and P^2 are supported");
    std::vector<Chart> cs(n + 1);
    for (int i = 0; i <= n; ++i) {
        Chart& c = cs[i];
        c.index = i;
        c.nvars = n;
        int v = 0;
        for (int a = 0; a <= n; ++a)
            if (a != i) {
                c.ratio[v] = a;
                c.names[v] = "t" + std::to_string(a);
                ++v;
            }
    }
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) {
            if (i == j) continue;
            MonomialMap m;
            m.nvars = n;
            for (int v = 0; v < n; ++v) {
                int a = cs[i].ratio[v];
                std::array<int, 2> e{0, 0};
                /* X_a/X_i = (X_a/X_j) / (X_i/X_j), and X_j/X_j = 1 */
                if (a != j) e[chart_var(cs[j], a)] += 1;
                e[chart_var(cs[j], i)] -= 1;
                m.coef[v] = 1;
                m.expo[v] = e;
            }
            cs[i].to[j] = m;
        }
    /* transition consistency on coordinate generators */
    for (int i = 0; i <= n; ++i)
        for (int v = 0; v < n; ++v) {
            LaurentPoly gen = lp_mono(n, {v == 0 ? 1 : 0, v == 1 ? 1 : 0}, Rat(1));
            for (int j = 0; j <= n; ++j) {
                if (j == i) continue;
                LaurentPoly back = lp_subst(lp_subst(gen, cs[i].to[j]), cs[j].to[i]);
                require(lp_eq(back, gen), "standard_cover: transitions are not pairwise inverse");
                for (int k = 0; k <= n; ++k) {
                    if (k == i || k == j) continue;
                    LaurentPoly via = lp_subst(lp_subst(gen, cs[i].to[j]), cs[j].to[k]);
                    LaurentPoly direct = lp_subst(gen, cs[i].to[k]);
                    require(lp_eq(via, direct),
                            "standard_cover: triple-overlap transition consistency fails");
                }
            }
        }
    return cs;
}

/* ---- subscheme ideals ---- */

namespace {

SubschemeIdeal make_subscheme(HPoly F, int proj_dim, std::string change) {
    require(!F.empty(), "parse_subscheme: zero polynomial");
    int deg = -1;
    for (const auto& [e, c] : F) {
        int s = e[0] + e[1] + e[2];
        require(deg == -1 || s == deg, "parse_subscheme: polynomial is not homogeneous");
        deg = s;
    }
    SubschemeIdeal Z;
    Z.proj_dim = proj_dim;
    Z.degree = deg;
    Z.F = std::move(F);
    Z.dehom = dehomogenize(Z.F, proj_dim);
    Z.coordinate_change = std::move(change);
    return Z;
}

} // namespace

SubschemeIdeal parse_subscheme(const std::string& text, int proj_dim) {
    require(proj_dim == 1 || proj_dim == 2, "parse_subscheme: only P^1 and P^2 are supported");
    size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && std::isspace((unsigned char)text[i])) ++i;
    };
    auto read_int = [&]() -> long {
        require(i < text.size() && std::isdigit((unsigned char)text[i]),
                "parse_subscheme: expected an integer");
        long v = 0;
        while (i < text.size() && std::isdigit((unsigned char)text[i])) {
            v = v * 10 + (text[i] - '0');
            require(v <= 1000000, "parse_subscheme: integer too large");
            ++i;
        }
        return v;
    };
    HPoly F;
    skip();
    require(i < text.size(), "parse_subscheme: empty polynomial");
    bool first = true;
    while (true) {
        skip();
        if (i >= text.size()) break;
        Rat coef(1);
        if (text[i] == '+') {
            ++i;
        } else if (text[i] == '-') {
            coef = -1;
            ++i;
        } else {
            require(first, "parse_subscheme: expected '+' or '-' between terms");
        }
        first = false;
        std::array<int, 3> e{0, 0, 0};
        bool any = false;
        while (true) {
            skip();
            if (i >= text.size()) break;
            char c = text[i];
            if (c == '+' || c == '-') break;
            if (c == '*') {
                ++i;
                continue;
            }
            if (std::isdigit((unsigned char)c)) {
                long num = read_int();
                long den = 1;
                if (i < text.size() && text[i] == '/') {
                    ++i;
                    den = read_int();
                }
                coef *= rat_frac(num, den);
                any = true;
            } else if (c == 'X') {
                ++i;
                require(i < text.size() && std::isdigit((unsigned char)text[i]),
                        "parse_subscheme: expected a digit after 'X'");
                int a = text[i] - '0';
                ++i;
                require(a <= proj_dim, "parse_subscheme: variable X" + std::to_string(a) +
                                           " exceeds the ambient dimension");
                int k = 1;
                if (i < text.size() && text[i] == '^') {
                    ++i;
                    k = (int)read_int();
                    require(k >= 1, "parse_subscheme: exponent must be positive");
                }
                e[a] += k;
                any = true;
            } else {
                require(false, std::string("parse_subscheme: unexpected character '") + c + "'");
            }
        }
        require(any, "parse_subscheme: empty term");
        Rat& v = F[e];
        v += coef;
        if (v == 0) F.erase(e);
    }
    return make_subscheme(std::move(F), proj_dim, "");
}

bool subscheme_meets_chart(const SubschemeIdeal& Z, int i) {
    const LaurentPoly& f = Z.dehom.at(i);
    for (const auto& [e, c] : f.terms)
        if (e[0] != 0 || e[1] != 0) return true;
    return false;
}

SubschemeIdeal ensure_meets_all_charts(const SubschemeIdeal& Z) {
    int n = Z.proj_dim;
    bool ok = true;
    for (int i = 0; i <= n; ++i) ok = ok && subscheme_meets_chart(Z, i);
    if (ok) return Z;
    for (int k = 1; k <= 16; ++k) {
        /* X_a -> X_a + k * X_{a+1 mod n+1} */
        std::array<HPoly, 3> sub;
        std::ostringstream desc;
        for (int a = 0; a <= n; ++a) {
            int b = (a + 1) % (n + 1);
            std::array<int, 3> ea{0, 0, 0}, eb{0, 0, 0};
            ea[a] = 1;
            eb[b] = 1;
            sub[a] = HPoly{{ea, Rat(1)}, {eb, Rat(k)}};
            if (a) desc << "; ";
            desc << "X" << a << " -> X" << a << " + " << k << "*X" << b;
        }
        for (int a = n + 1; a < 3; ++a) {
            std::array<int, 3> ea{0, 0, 0};
            ea[a] = 1;
            sub[a] = HPoly{{ea, Rat(1)}};
        }
        SubschemeIdeal cand = make_subscheme(hp_subst_linear(Z.F, sub), n, desc.str());
        bool good = true;
        for (int i = 0; i <= n; ++i) good = good && subscheme_meets_chart(cand, i);
        if (good) return cand;
    }
    require(false, "ensure_meets_all_charts: no substitution in the family works");
    return Z;
}

bool overlap_ideal_member(const LaurentPoly& g, const LaurentPoly& f,
                          const std::array<bool, 2>& inverted) {
    require(!f.is_zero(), "overlap_ideal_member: zero divisor");
    if (g.is_zero()) return true;
    std::array<int, 2> mn{0, 0};
    for (const auto& [e, c] : g.terms)
        for (int v = 0; v < 2; ++v) mn[v] = std::min(mn[v], e[v]);
    for (int v = 0; v < 2; ++v)
        require(inverted[v] || mn[v] >= 0,
                "overlap_ideal_member: dividend is not regular on the overlap");
    LaurentPoly G = lp_mul(g, lp_mono(g.nvars, {-mn[0], -mn[1]}, Rat(1)));
    return principal_remainder(G, strip_units(f, inverted)).is_zero();
}

/* ---- windowed section spaces ---- */

namespace {

/* admissible monomial keys in the box [-w,w]^n for U_I, chart of record I[0];
 * candidates passing the record pattern are additionally verified by
 * transporting into every other chart of I */
std::vector<Key> window_keys(const std::vector<Chart>& charts, const std::vector<int>& I,
                             int w) {
    const Chart& rec = charts[I[0]];
    int n = rec.nvars;
    std::vector<Key> keys;
    for (int d = 0; d < n; ++d)
        for (int e0 = -w; e0 <= w; ++e0)
            for (int e1 = (n == 2 ? -w : 0); e1 <= (n == 2 ? w : 0); ++e1) {
                Key k{d, e0, e1};
                if (!pattern_ok(rec, I, k)) continue;
                bool good = true;
                for (int i : I) {
                    if (i == rec.index) continue;
                    VField t = transport_field(charts, rec.index, i, mono_field(n, k));
                    std::set<Key> tk;
                    collect_keys(t, tk);
                    for (const Key& kk : tk) good = good && pattern_ok(charts[i], I, kk);
                }
                if (good) keys.push_back(k);
            }
    return keys;
}

} // namespace

WindowedSections theta_sections(const std::vector<Chart>& charts, const std::vector<int>& I,
                                int w) {
    require(!I.empty() && std::is_sorted(I.begin(), I.end()) &&
                std::adjacent_find(I.begin(), I.end()) == I.end(),
            "theta_sections: multi-index must be strictly increasing");
    for (int i : I)
        require(i >= 0 && i < (int)charts.size(), "theta_sections: chart index out of range");
    require(w >= 2, "theta_sections: window too small (transitions move exponents by 2)");
    WindowedSections S;
    S.index = I;
    S.record = I[0];
    S.window = w;
    for (const Key& k : window_keys(charts, I, w))
        S.basis.push_back(mono_field(charts[I[0]].nvars, k));
    return S;
}

/* ---- slot machinery ---- */

namespace {

CechSlot make_theta_slot(const std::vector<Chart>& charts, const std::vector<int>& I,
                         std::vector<Key> support) {
    CechSlot s;
    s.index = I;
    s.record = I[0];
    s.support = std::move(support);
    int dim = (int)s.support.size();
    for (int j = 0; j < dim; ++j) s.pos[s.support[j]] = j;
    s.basis_coords = SpMat(dim, dim);
    s.span = std::make_shared<Rref>(dim);
    for (int j = 0; j < dim; ++j) {
        s.basis.push_back(mono_field(charts[s.record].nvars, s.support[j]));
        s.basis_coords.col[j] = sp_unit(j);
        s.span->insert(sp_unit(j));
    }
    return s;
}

/* image of theta(f) under a monomial field, as a linear map into the canonical
 * remainder coordinates; the kernel is the ideal-preserving subspace */
CechSlot make_log_slot(const std::vector<Chart>& charts, const CechSlot& theta,
                       const SubschemeIdeal& Z) {
    const LaurentPoly& f = Z.dehom.at(theta.record);
    std::array<bool, 2> inv = inverted_mask(charts[theta.record], theta.index);
    LaurentPoly fs = strip_units(f, inv);
    int dim = (int)theta.support.size();
    std::vector<LaurentPoly> img(dim);
    std::array<int, 2> mn{0, 0};
    for (int j = 0; j < dim; ++j) {
        const Key& k = theta.support[j];
        img[j] = lp_mul(lp_mono(f.nvars, {k[1], k[2]}, Rat(1)), lp_derivative(f, k[0]));
        for (const auto& [e, c] : img[j].terms)
            for (int v = 0; v < 2; ++v) mn[v] = std::min(mn[v], e[v]);
    }
    for (int v = 0; v < 2; ++v)
        require(inv[v] || mn[v] >= 0, "log sections: derivation image leaves the chart ring");
    LaurentPoly shift = lp_mono(f.nvars, {-mn[0], -mn[1]}, Rat(1));
    std::map<std::array<int, 2>, int> rrow;
    SpMat R(0, dim);
    for (int j = 0; j < dim; ++j) {
        LaurentPoly rem = principal_remainder(lp_mul(img[j], shift), fs);
        for (const auto& [e, c] : rem.terms) {
            auto it = rrow.find(e);
            int r;
            if (it == rrow.end()) {
                r = (int)rrow.size();
                rrow.emplace(e, r);
            } else {
                r = it->second;
            }
            R.col[j].emplace_back(r, c);
        }
        std::sort(R.col[j].begin(), R.col[j].end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
    }
    R.rows = (int)rrow.size();

    CechSlot s;
    s.index = theta.index;
    s.record = theta.record;
    s.support = theta.support;
    s.pos = theta.pos;
    std::vector<SpVec> ker = sp_kernel(R);
    s.basis_coords = SpMat(dim, (int)ker.size());
    s.span = std::make_shared<Rref>(dim);
    for (int j = 0; j < (int)ker.size(); ++j) {
        s.basis_coords.col[j] = ker[j];
        s.span->insert(ker[j]);
        VField b = vf_zero(charts[s.record].nvars);
        for (const auto& [r, c] : ker[j]) {
            const Key& k = s.support[r];
            b.coef[k[0]].add({k[1], k[2]}, c);
        }
        s.basis.push_back(b);
    }
    require(s.span->rank() == (int)ker.size(), "log sections: kernel basis is not independent");
    return s;
}

std::optional<SpVec> support_coords(const CechSlot& s, const VField& v) {
    std::map<int, Rat> acc;
    for (int d = 0; d < v.nvars; ++d)
        for (const auto& [e, c] : v.coef[d].terms) {
            auto it = s.pos.find(Key{d, e[0], e[1]});
            if (it == s.pos.end()) return std::nullopt;
            acc[it->second] = c;
        }
    SpVec out;
    out.reserve(acc.size());
    for (const auto& [i, c] : acc) out.emplace_back(i, c);
    return out;
}

} // namespace

std::optional<SpVec> slot_coords(const CechSlot& s, const VField& v) {
    auto sc = support_coords(s, v);
    if (!sc) return std::nullopt;
    return s.span->coords(*sc);
}

VField slot_field(const CechSlot& s, const SpVec& coords) {
    int n = 1;
    if (!s.basis.empty())
        n = s.basis.front().nvars;
    else
        for (const Key& k : s.support) n = std::max(n, k[0] + 1);
    VField v = vf_zero(n);
    for (const auto& [j, c] : coords) v = vf_add(v, vf_scale(c, s.basis.at(j)));
    return v;
}

WindowedSections log_theta_sections(const std::vector<Chart>& charts, const std::vector<int>& I,
                                    const SubschemeIdeal& Z, int w) {
    require(w >= Z.degree + 2, "log_theta_sections: window must be at least degree + 2");
    WindowedSections th = theta_sections(charts, I, w);
    std::vector<Key> keys;
    for (const VField& b : th.basis) {
        std::set<Key> ks;
        collect_keys(b, ks);
        keys.push_back(*ks.begin());
    }
    CechSlot ts = make_theta_slot(charts, I, keys);
    CechSlot ls = make_log_slot(charts, ts, Z);
    WindowedSections S;
    S.index = I;
    S.record = I[0];
    S.window = w;
    S.basis = ls.basis;
    return S;
}

/* ---- supports of the Cech slots ---- */

namespace {

/* box of admissible keys with all exponents bounded by `box` */
std::set<Key> core_keys(const std::vector<Chart>& charts, const std::vector<int>& I, int box) {
    std::set<Key> out;
    if (box < 0) return out;
    const Chart& rec = charts[I[0]];
    int n = rec.nvars;
    for (int d = 0; d < n; ++d)
        for (int e0 = -box; e0 <= box; ++e0)
            for (int e1 = (n == 2 ? -box : 0); e1 <= (n == 2 ? box : 0); ++e1) {
                Key k{d, e0, e1};
                if (pattern_ok(rec, I, k)) out.insert(k);
            }
    return out;
}

/* keys of the restriction images of `src` (a slot support in chart `from`'s
 * coordinates) inside the chart-of-record of I */
std::set<Key> image_keys(const std::vector<Chart>& charts, const std::vector<int>& I, int from,
                         const std::vector<Key>& src) {
    std::set<Key> out;
    int rec = I[0];
    for (const Key& k : src) {
        VField t = transport_field(charts, from, rec, mono_field(charts[rec].nvars, k));
        std::set<Key> tk;
        collect_keys(t, tk);
        for (const Key& kk : tk) {
            require(pattern_ok(charts[rec], I, kk),
                    "cech sections: restriction image leaves the admissible pattern");
            out.insert(kk);
        }
    }
    return out;
}

/* supports for all multi-indices, level by level: singleton charts carry the
 * polynomial window box [0,w]^n; every deeper overlap carries exactly the
 * union of the restriction images of the level above, so the supports are the
 * smallest sets closed under all the restriction maps of the cover */
std::vector<std::vector<std::pair<std::vector<int>, std::vector<Key>>>> build_supports(
    const std::vector<Chart>& charts, int w) {
    int n = charts[0].nvars;
    std::vector<std::vector<std::pair<std::vector<int>, std::vector<Key>>>> lv(n + 1);
    for (int k = 0; k <= n; ++k) {
        for (const auto& I : multi_indices((int)charts.size(), k + 1)) {
            std::set<Key> S;
            if (k == 0) {
                S = core_keys(charts, I, w);
            } else {
                for (const auto& [J, sup] : lv[k - 1]) {
                    if (!std::includes(I.begin(), I.end(), J.begin(), J.end())) continue;
                    std::set<Key> img = image_keys(charts, I, J[0], sup);
                    S.insert(img.begin(), img.end());
                }
            }
            lv[k].emplace_back(I, std::vector<Key>(S.begin(), S.end()));
        }
    }
    return lv;
}

/* ---- level DGLAs and restriction cofaces ---- */

Dgla build_level_dgla(const std::string& name, std::vector<CechSlot>& slots, bool monomial) {
    std::vector<std::string> labels;
    int off = 0;
    for (CechSlot& s : slots) {
        s.offset = off;
        std::string pre = index_str(s.index) + ":";
        for (int j = 0; j < (int)s.basis.size(); ++j) {
            if (monomial) {
                const Key& k = s.support[j];
                labels.push_back(pre + "d" + std::to_string(k[0]) + "(" + std::to_string(k[1]) +
                                 "," + std::to_string(k[2]) + ")");
            } else {
                labels.push_back(pre + "g" + std::to_string(j));
            }
        }
        off += (int)s.basis.size();
    }
    std::map<int, std::vector<std::string>> basis;
    if (!labels.empty()) basis[0] = labels;
    SpacePtr space = make_space(name, std::move(basis));

    Dgla L;
    L.name = name;
    L.cx = make_complex(space, lm_zero(space, space, 1));
    int dim = space->dim(0);
    if (dim > 0) {
        std::vector<BracketEntry> table((size_t)dim * dim);
        for (const CechSlot& s : slots)
            for (int a = 0; a < (int)s.basis.size(); ++a)
                for (int b = 0; b < (int)s.basis.size(); ++b) {
                    VField br = vf_bracket(s.basis[a], s.basis[b]);
                    BracketEntry ent;
                    if (vf_is_zero(br)) {
                        table[(size_t)(s.offset + a) * dim + (s.offset + b)] = ent;
                        continue;
                    }
                    auto c = slot_coords(s, br);
                    if (!c) {
                        ent.overflow = true;
                    } else {
                        for (const auto& [j, v] : *c) ent.v.emplace_back(s.offset + j, v);
                    }
                    table[(size_t)(s.offset + a) * dim + (s.offset + b)] = std::move(ent);
                }
        L.table[{0, 0}] = std::move(table);
    }
    return L;
}

int level_dim(const std::vector<CechSlot>& slots) {
    int d = 0;
    for (const auto& s : slots) d += (int)s.basis.size();
    return d;
}

/* the coface dropping entry k of every target multi-index, by restriction */
LinearMap restriction_coface(const std::vector<Chart>& charts, const Dgla& src, const Dgla& dst,
                             const std::vector<CechSlot>& ssl, const std::vector<CechSlot>& dsl,
                             int k) {
    int sdim = src.space().dim(0), ddim = dst.space().dim(0);
    std::map<int, SpMat> blocks;
    if (sdim > 0 && ddim > 0) {
        SpMat M(ddim, sdim);
        for (const CechSlot& d : dsl) {
            std::vector<int> J = d.index;
            J.erase(J.begin() + k);
            const CechSlot* s = nullptr;
            for (const CechSlot& cand : ssl)
                if (cand.index == J) s = &cand;
            require(s != nullptr, "cech_lie: source slot missing");
            for (int j = 0; j < (int)s->basis.size(); ++j) {
                VField t = transport_field(charts, s->record, d.record, s->basis[j]);
                auto c = slot_coords(d, t);
                require(c.has_value(),
                        "cech_lie: restriction leaves the constructed window; increase it");
                for (const auto& [r, v] : *c) M.set(d.offset + r, s->offset + j, v);
            }
        }
        blocks.emplace(0, std::move(M));
    }
    return lm_make(src.cx.space, dst.cx.space, 0, std::move(blocks));
}

CechLie build_cech(SheafKind kind, const std::vector<Chart>& charts, const SubschemeIdeal* Z,
                   int w, const std::string& name) {
    int n = charts[0].nvars;
    require((int)charts.size() == n + 1, "cech_lie: expected the standard cover");
    require(w >= 2, "cech_lie: window too small");
    SubschemeIdeal ZC;
    if (kind == SheafKind::log_theta) {
        require(Z != nullptr, "cech_lie: the log sheaf needs a subscheme");
        require(w >= Z->degree + 2, "cech_lie: window must be at least degree + 2");
        ZC = ensure_meets_all_charts(*Z);
    }

    auto sup = build_supports(charts, w);
    CechLie C;
    C.kind = kind;
    C.w = w;
    C.slots.resize(3);
    C.sc.name = name;
    for (int lev = 0; lev < 3; ++lev) {
        std::vector<CechSlot>& sl = C.slots[lev];
        if (lev <= n)
            for (const auto& [I, keys] : sup[lev]) {
                CechSlot ts = make_theta_slot(charts, I, keys);
                sl.push_back(kind == SheafKind::theta ? std::move(ts)
                                                      : make_log_slot(charts, ts, ZC));
            }
        C.sc.level.push_back(
            build_level_dgla(name + ":L" + std::to_string(lev), sl, kind == SheafKind::theta));
    }
    for (int lev = 0; lev + 1 < 3; ++lev) {
        std::vector<LinearMap> maps;
        for (int k = 0; k <= lev + 1; ++k) {
            if (level_dim(C.slots[lev + 1]) == 0) {
                maps.push_back(lm_zero(C.sc.level[lev].cx.space, C.sc.level[lev + 1].cx.space, 0));
            } else {
                maps.push_back(restriction_coface(charts, C.sc.level[lev], C.sc.level[lev + 1],
                                                  C.slots[lev], C.slots[lev + 1], k));
            }
        }
        C.sc.coface.push_back(std::move(maps));
    }
    ScReport rep = check_semicosimplicial(C.sc.underlying());
    require(rep.ok(), name + ": invalid Cech object: " +
                          (rep.violations.empty() ? std::string() : rep.violations.front()));
    return C;
}

} // namespace

CechLie cech_lie_layout(SheafKind kind, const std::vector<Chart>& charts,
                        const SubschemeIdeal* Z, int w, const std::string& name) {
    return build_cech(kind, charts, Z, w, name);
}

SemicosimplicialDgla cech_lie(SheafKind kind, const std::vector<Chart>& charts,
                              const SubschemeIdeal* Z, int w, const std::string& name) {
    return build_cech(kind, charts, Z, w, name).sc;
}

/* ---- line bundles on P^1 ---- */

SemicosimplicialComplex line_bundle_cech(const std::vector<Chart>& charts, int d, int w,
                                         const std::string& name) {
    require(charts.size() == 2, "line_bundle_cech: only P^1 is supported");
    require(w >= std::abs(d) + 2, "line_bundle_cech: window too small for the twist");
    /* overlap support: box hull of the staggered core and both chart images
     * under the gluing p(x) = x^d q(1/x) */
    int lo = std::min(std::min(0, d - w), -(w - 2));
    int hi = std::max(std::max(w, d), w - 2);

    auto level_space = [&](int lev, std::map<int, std::vector<std::string>> basis) {
        SpacePtr sp = make_space(name + ":L" + std::to_string(lev), std::move(basis));
        return make_complex(sp, lm_zero(sp, sp, 1));
    };
    std::vector<std::string> l0;
    for (int i = 0; i <= 1; ++i)
        for (int k = 0; k <= w; ++k) l0.push_back("U" + std::to_string(i) + ":" + std::to_string(k));
    std::vector<std::string> l1;
    for (int k = lo; k <= hi; ++k) l1.push_back("U01:" + std::to_string(k));

    SemicosimplicialComplex S;
    S.name = name;
    S.level.push_back(level_space(0, {{0, l0}}));
    S.level.push_back(level_space(1, {{0, l1}}));
    S.level.push_back(level_space(2, {}));

    int n1 = hi - lo + 1;
    SpMat d0(n1, 2 * (w + 1)), d1(n1, 2 * (w + 1));
    for (int k = 0; k <= w; ++k) {
        d1.set(k - lo, k, Rat(1));              // chart-0 inclusion x^k
        d0.set(d - k - lo, (w + 1) + k, Rat(1)); // chart-1 datum y^k -> x^{d-k}
    }
    S.coface.push_back({lm_make(S.level[0].space, S.level[1].space, 0, {{0, d0}}),
                        lm_make(S.level[0].space, S.level[1].space, 0, {{0, d1}})});
    S.coface.push_back({lm_zero(S.level[1].space, S.level[2].space, 0),
                        lm_zero(S.level[1].space, S.level[2].space, 0),
                        lm_zero(S.level[1].space, S.level[2].space, 0)});
    ScReport rep = check_semicosimplicial(S);
    require(rep.ok(), name + ": invalid line bundle object");
    return S;
}

/* ---- the chi grid ---- */

ChiGrid chi_grid(const SubschemeIdeal& Z, const std::vector<Chart>& charts, int w,
                 const std::string& name) {
    ChiGrid G;
    G.log_col = build_cech(SheafKind::log_theta, charts, &Z, w, name + ":log");
    G.theta_col = build_cech(SheafKind::theta, charts, nullptr, w, name + ":theta");

    const int M = 2; // vertical levels 0..2
    BisemicosimplicialDgla& B = G.grid;
    B.name = name;
    B.level.resize(3);
    std::vector<CechSlot> no_slots;
    for (int m = 0; m <= M; ++m) {
        B.level[0].push_back(G.log_col.sc.level[m]);
        B.level[1].push_back(G.theta_col.sc.level[m]);
        B.level[2].push_back(
            build_level_dgla(name + ":zero" + std::to_string(m), no_slots, true));
    }
    B.hface.resize(2);
    for (int m = 0; m <= M; ++m) {
        /* inclusion: log slot bases are already coordinates over the theta
         * slot supports, which are the theta bases themselves */
        const Dgla& L = B.level[0][m];
        const Dgla& T = B.level[1][m];
        std::map<int, SpMat> blocks;
        if (L.space().dim(0) > 0 && T.space().dim(0) > 0) {
            SpMat M1(T.space().dim(0), L.space().dim(0));
            for (size_t si = 0; si < G.log_col.slots[m].size(); ++si) {
                const CechSlot& ls = G.log_col.slots[m][si];
                const CechSlot& ts = G.theta_col.slots[m][si];
                require(ls.support == ts.support, "chi_grid: column supports disagree");
                for (int j = 0; j < (int)ls.basis.size(); ++j)
                    for (const auto& [r, c] : ls.basis_coords.col[j])
                        M1.set(ts.offset + r, ls.offset + j, c);
            }
            blocks.emplace(0, std::move(M1));
        }
        B.hface[0].push_back({lm_make(L.cx.space, T.cx.space, 0, std::move(blocks)),
                              lm_zero(L.cx.space, T.cx.space, 0)});
        B.hface[1].push_back({lm_zero(T.cx.space, B.level[2][m].cx.space, 0),
                              lm_zero(T.cx.space, B.level[2][m].cx.space, 0),
                              lm_zero(T.cx.space, B.level[2][m].cx.space, 0)});
    }
    B.vface.resize(3);
    for (int m = 0; m < M; ++m) {
        B.vface[0].push_back(G.log_col.sc.coface[m]);
        B.vface[1].push_back(G.theta_col.sc.coface[m]);
        std::vector<LinearMap> z;
        for (int k = 0; k <= m + 1; ++k)
            z.push_back(lm_zero(B.level[2][m].cx.space, B.level[2][m + 1].cx.space, 0));
        B.vface[2].push_back(std::move(z));
    }
    ScReport rep = check_bisemicosimplicial(B.underlying());
    require(rep.ok(), name + ": invalid chi grid: " +
                          (rep.violations.empty() ? std::string() : rep.violations.front()));
    return G;
}

BisemicosimplicialDgla chi_bisemicosimplicial(const SubschemeIdeal& Z,
                                              const std::vector<Chart>& charts, int w,
                                              const std::string& name) {
    return chi_grid(Z, charts, w, name).grid;
}

/* ---- window stability ---- */

std::map<int, int> cech_cohomology_stable(SheafKind kind, const std::vector<Chart>& charts,
                                          const SubschemeIdeal* Z, int w) {
    auto dims_at = [&](int ww) {
        SemicosimplicialDgla G = cech_lie(kind, charts, Z, ww, "cech@w" + std::to_string(ww));
        return cohomology(tot(G.underlying(), "tot@w" + std::to_string(ww)).cx).dims;
    };
    std::map<int, int> a = dims_at(w), b = dims_at(w + 2);
    require(a == b, "cech_cohomology_stable: window not stable at w=" + std::to_string(w));
    return a;
}

} // namespace defalg
