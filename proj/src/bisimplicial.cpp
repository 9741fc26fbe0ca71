#include "defalg/bisimplicial.hpp"

#include <set>

#include "defalg/error.hpp"
#include "tw_internal.hpp"

namespace defalg {

using namespace twdetail;

namespace {

std::string pos_str(int n, int m) {
    return "(" + std::to_string(n) + ", " + std::to_string(m) + ")";
}

void add_violation(ScReport& rep, const std::string& msg) {
    if (rep.violations.size() < 16) rep.violations.push_back(msg);
}

} // namespace

BisemicosimplicialComplex BisemicosimplicialDgla::underlying() const {
    BisemicosimplicialComplex B;
    B.name = name;
    B.level.resize(level.size());
    for (size_t n = 0; n < level.size(); ++n)
        for (const Dgla& g : level[n]) B.level[n].push_back(g.cx);
    B.hface = hface;
    B.vface = vface;
    return B;
}

/* ================= validation ================= */

ScReport check_bisemicosimplicial(const BisemicosimplicialComplex& B) {
    ScReport rep;
    if (B.level.empty() || B.level[0].empty()) {
        rep.violations.push_back("no levels");
        return rep;
    }
    const int N = (int)B.level.size() - 1;
    const int M = (int)B.level[0].size() - 1;
    for (int n = 0; n <= N; ++n)
        if ((int)B.level[n].size() != M + 1) {
            rep.violations.push_back("ragged grid: horizontal index " + std::to_string(n) +
                                     " has " + std::to_string(B.level[n].size()) +
                                     " vertical levels, expected " + std::to_string(M + 1));
            return rep;
        }

    if ((int)B.hface.size() != N) {
        rep.violations.push_back("expected " + std::to_string(N) +
                                 " horizontal coface families, found " +
                                 std::to_string(B.hface.size()));
        return rep;
    }
    for (int n = 0; n < N; ++n) {
        if ((int)B.hface[n].size() != M + 1) {
            rep.violations.push_back("horizontal coface family " + std::to_string(n) +
                                     ": expected entries for " + std::to_string(M + 1) +
                                     " vertical levels, found " + std::to_string(B.hface[n].size()));
            return rep;
        }
        for (int m = 0; m <= M; ++m) {
            if ((int)B.hface[n][m].size() != n + 2) {
                rep.violations.push_back("at " + pos_str(n, m) + ": expected " +
                                         std::to_string(n + 2) + " horizontal cofaces, found " +
                                         std::to_string(B.hface[n][m].size()));
                return rep;
            }
            for (int s = 0; s <= n + 1; ++s) {
                const LinearMap& f = B.hface[n][m][s];
                if (f.src.get() != B.level[n][m].space.get() ||
                    f.dst.get() != B.level[n + 1][m].space.get() || f.degree != 0) {
                    rep.violations.push_back("horizontal coface " + std::to_string(s) + " at " +
                                             pos_str(n, m) + ": wrong shape");
                    return rep;
                }
            }
        }
    }

    const int want_v = (M == 0) ? 0 : N + 1;
    if ((int)B.vface.size() != want_v) {
        rep.violations.push_back("expected " + std::to_string(want_v) +
                                 " vertical coface families, found " +
                                 std::to_string(B.vface.size()));
        return rep;
    }
    for (int n = 0; n < want_v; ++n) {
        if ((int)B.vface[n].size() != M) {
            rep.violations.push_back("vertical coface family " + std::to_string(n) +
                                     ": expected entries for " + std::to_string(M) +
                                     " vertical levels, found " + std::to_string(B.vface[n].size()));
            return rep;
        }
        for (int m = 0; m < M; ++m) {
            if ((int)B.vface[n][m].size() != m + 2) {
                rep.violations.push_back("at " + pos_str(n, m) + ": expected " +
                                         std::to_string(m + 2) + " vertical cofaces, found " +
                                         std::to_string(B.vface[n][m].size()));
                return rep;
            }
            for (int k = 0; k <= m + 1; ++k) {
                const LinearMap& f = B.vface[n][m][k];
                if (f.src.get() != B.level[n][m].space.get() ||
                    f.dst.get() != B.level[n][m + 1].space.get() || f.degree != 0) {
                    rep.violations.push_back("vertical coface " + std::to_string(k) + " at " +
                                             pos_str(n, m) + ": wrong shape");
                    return rep;
                }
            }
        }
    }

    /* chain maps */
    for (int n = 0; n < N; ++n)
        for (int m = 0; m <= M; ++m)
            for (int s = 0; s <= n + 1; ++s) {
                ++rep.chain_maps_checked;
                if (!lm_eq(lm_compose(B.level[n + 1][m].d, B.hface[n][m][s]),
                           lm_compose(B.hface[n][m][s], B.level[n][m].d)))
                    add_violation(rep, "horizontal coface " + std::to_string(s) + " at " +
                                           pos_str(n, m) +
                                           " does not commute with the differentials");
            }
    for (int n = 0; n <= N; ++n)
        for (int m = 0; m < M; ++m)
            for (int k = 0; k <= m + 1; ++k) {
                ++rep.chain_maps_checked;
                if (!lm_eq(lm_compose(B.level[n][m + 1].d, B.vface[n][m][k]),
                           lm_compose(B.vface[n][m][k], B.level[n][m].d)))
                    add_violation(rep, "vertical coface " + std::to_string(k) + " at " +
                                           pos_str(n, m) +
                                           " does not commute with the differentials");
            }

    /* every row is semicosimplicial: d_l d_k = d_{k+1} d_l for l <= k */
    for (int m = 0; m <= M; ++m)
        for (int n = 0; n + 1 < N; ++n)
            for (int k = 0; k <= n + 1; ++k)
                for (int l = 0; l <= k; ++l) {
                    ++rep.identities_checked;
                    if (!lm_eq(lm_compose(B.hface[n + 1][m][l], B.hface[n][m][k]),
                               lm_compose(B.hface[n + 1][m][k + 1], B.hface[n][m][l])))
                        add_violation(rep, "horizontal identity d_" + std::to_string(l) + " d_" +
                                               std::to_string(k) + " = d_" + std::to_string(k + 1) +
                                               " d_" + std::to_string(l) + " fails from " +
                                               pos_str(n, m));
                }
    /* every column is semicosimplicial */
    for (int n = 0; n <= N; ++n)
        for (int m = 0; m + 1 < M; ++m)
            for (int k = 0; k <= m + 1; ++k)
                for (int l = 0; l <= k; ++l) {
                    ++rep.identities_checked;
                    if (!lm_eq(lm_compose(B.vface[n][m + 1][l], B.vface[n][m][k]),
                               lm_compose(B.vface[n][m + 1][k + 1], B.vface[n][m][l])))
                        add_violation(rep, "vertical identity d_" + std::to_string(l) + " d_" +
                                               std::to_string(k) + " = d_" + std::to_string(k + 1) +
                                               " d_" + std::to_string(l) + " fails from " +
                                               pos_str(n, m));
                }
    /* mixed squares commute */
    for (int n = 0; n < N; ++n)
        for (int m = 0; m < M; ++m)
            for (int s = 0; s <= n + 1; ++s)
                for (int k = 0; k <= m + 1; ++k) {
                    ++rep.identities_checked;
                    if (!lm_eq(lm_compose(B.vface[n + 1][m][k], B.hface[n][m][s]),
                               lm_compose(B.hface[n][m + 1][s], B.vface[n][m][k])))
                        add_violation(rep, "mixed square h_" + std::to_string(s) + " v_" +
                                               std::to_string(k) + " fails at " + pos_str(n, m));
                }
    return rep;
}

ScReport check_bisemicosimplicial_dgla(const BisemicosimplicialDgla& G) {
    ScReport rep = check_bisemicosimplicial(G.underlying());
    if (!rep.ok()) return rep;
    const int N = (int)G.level.size() - 1;
    const int M = (int)G.level[0].size() - 1;
    for (int n = 0; n < N; ++n)
        for (int m = 0; m <= M; ++m)
            for (int s = 0; s < (int)G.hface[n][m].size(); ++s)
                check_bracket_preservation(G.level[n][m], G.level[n + 1][m], G.hface[n][m][s],
                                           "horizontal coface " + std::to_string(s) + " at " +
                                               pos_str(n, m),
                                           rep);
    for (int n = 0; n <= N && M >= 1; ++n)
        for (int m = 0; m < M; ++m)
            for (int k = 0; k < (int)G.vface[n][m].size(); ++k)
                check_bracket_preservation(G.level[n][m], G.level[n][m + 1], G.vface[n][m][k],
                                           "vertical coface " + std::to_string(k) + " at " +
                                               pos_str(n, m),
                                           rep);
    return rep;
}

/* ================= rows and columns ================= */

SemicosimplicialComplex bisc_row(const BisemicosimplicialComplex& B, int m) {
    require(!B.level.empty() && m >= 0 && m < (int)B.level[0].size(),
            "bisc_row: vertical index out of range");
    SemicosimplicialComplex S;
    S.name = B.name + ":row" + std::to_string(m);
    for (const auto& per_n : B.level) S.level.push_back(per_n[m]);
    for (int n = 0; n + 1 < (int)B.level.size(); ++n) S.coface.push_back(B.hface[n][m]);
    return S;
}

SemicosimplicialComplex bisc_column(const BisemicosimplicialComplex& B, int n) {
    require(n >= 0 && n < (int)B.level.size(), "bisc_column: horizontal index out of range");
    SemicosimplicialComplex S;
    S.name = B.name + ":col" + std::to_string(n);
    S.level = B.level[n];
    for (int m = 0; m + 1 < (int)B.level[n].size(); ++m) S.coface.push_back(B.vface[n][m]);
    return S;
}

SemicosimplicialDgla bisc_row_dgla(const BisemicosimplicialDgla& G, int m) {
    require(!G.level.empty() && m >= 0 && m < (int)G.level[0].size(),
            "bisc_row: vertical index out of range");
    SemicosimplicialDgla S;
    S.name = G.name + ":row" + std::to_string(m);
    for (const auto& per_n : G.level) S.level.push_back(per_n[m]);
    for (int n = 0; n + 1 < (int)G.level.size(); ++n) S.coface.push_back(G.hface[n][m]);
    return S;
}

SemicosimplicialDgla bisc_column_dgla(const BisemicosimplicialDgla& G, int n) {
    require(n >= 0 && n < (int)G.level.size(), "bisc_column: horizontal index out of range");
    SemicosimplicialDgla S;
    S.name = G.name + ":col" + std::to_string(n);
    S.level = G.level[n];
    for (int m = 0; m + 1 < (int)G.level[n].size(); ++m) S.coface.push_back(G.vface[n][m]);
    return S;
}

/* ================= one-direction totalizations ================= */

namespace {

/* map between the totalizations of two parallel slices: comp[n] acts on the
 * V_n part of every total degree (no extra signs; comp has degree 0) */
LinearMap tot_componentwise(const TotResult& src, const TotResult& dst,
                            const std::vector<LinearMap>& comp) {
    std::map<int, SpMat> blocks;
    for (int p : src.cx.space->degrees()) {
        int rdim = dst.cx.space->dim(p);
        if (rdim == 0) continue;
        SpMat B(rdim, src.cx.space->dim(p));
        for (int n = 0; n < (int)comp.size(); ++n) {
            auto cit = src.offset.find({n, p});
            if (cit == src.offset.end()) continue;
            const SpMat* fb = comp[n].block(p - n);
            if (!fb) continue;
            auto rit = dst.offset.find({n, p});
            require(rit != dst.offset.end(), "tot_componentwise: target block missing");
            for (int j = 0; j < fb->cols; ++j)
                for (const auto& [r, c] : fb->col[j]) B.set(rit->second + r, cit->second + j, c);
        }
        blocks.emplace(p, std::move(B));
    }
    return lm_make(src.cx.space, dst.cx.space, 0, std::move(blocks));
}

} // namespace

SemicosimplicialComplex tot_h_delta(const BisemicosimplicialComplex& B, const std::string& name) {
    ScReport chk = check_bisemicosimplicial(B);
    require(chk.ok(), "tot_h_delta: invalid bisemicosimplicial object: " +
                          (chk.violations.empty() ? std::string() : chk.violations.front()));
    const int N = (int)B.level.size() - 1;
    const int M = (int)B.level[0].size() - 1;
    std::vector<TotResult> rows;
    for (int m = 0; m <= M; ++m)
        rows.push_back(tot(bisc_row(B, m), name + ":m" + std::to_string(m)));
    SemicosimplicialComplex S;
    S.name = name;
    for (const auto& t : rows) S.level.push_back(t.cx);
    for (int m = 0; m < M; ++m) {
        std::vector<LinearMap> fam;
        for (int k = 0; k <= m + 1; ++k) {
            std::vector<LinearMap> comp;
            for (int n = 0; n <= N; ++n) comp.push_back(B.vface[n][m][k]);
            fam.push_back(tot_componentwise(rows[m], rows[m + 1], comp));
        }
        S.coface.push_back(std::move(fam));
    }
    require(check_semicosimplicial(S).ok(), "tot_h_delta: induced object fails validation");
    return S;
}

SemicosimplicialComplex tot_v_delta(const BisemicosimplicialComplex& B, const std::string& name) {
    ScReport chk = check_bisemicosimplicial(B);
    require(chk.ok(), "tot_v_delta: invalid bisemicosimplicial object: " +
                          (chk.violations.empty() ? std::string() : chk.violations.front()));
    const int N = (int)B.level.size() - 1;
    const int M = (int)B.level[0].size() - 1;
    std::vector<TotResult> cols;
    for (int n = 0; n <= N; ++n)
        cols.push_back(tot(bisc_column(B, n), name + ":n" + std::to_string(n)));
    SemicosimplicialComplex S;
    S.name = name;
    for (const auto& t : cols) S.level.push_back(t.cx);
    for (int n = 0; n < N; ++n) {
        std::vector<LinearMap> fam;
        for (int s = 0; s <= n + 1; ++s) {
            std::vector<LinearMap> comp;
            for (int m = 0; m <= M; ++m) comp.push_back(B.hface[n][m][s]);
            fam.push_back(tot_componentwise(cols[n], cols[n + 1], comp));
        }
        S.coface.push_back(std::move(fam));
    }
    require(check_semicosimplicial(S).ok(), "tot_v_delta: induced object fails validation");
    return S;
}

/* ================= triple total complex =================
 * deg(v in V_{n,m}^i) = i + n + m;
 * D(v) = (-1)^{n+m} d(v) + sum_s (-1)^{s+m} hface_s(v) + sum_k (-1)^k vface_k(v) */

TriTotResult tot_triangle(const BisemicosimplicialComplex& B, const std::string& name) {
    ScReport chk = check_bisemicosimplicial(B);
    require(chk.ok(), "tot_triangle: invalid bisemicosimplicial object: " +
                          (chk.violations.empty() ? std::string() : chk.violations.front()));
    const int N = (int)B.level.size() - 1;
    const int M = (int)B.level[0].size() - 1;
    std::map<int, std::vector<std::tuple<int, int, int>>> slots; // total degree -> [(n, m, i)]
    for (int n = 0; n <= N; ++n)
        for (int m = 0; m <= M; ++m)
            for (int i : B.level[n][m].space->degrees()) slots[i + n + m].push_back({n, m, i});

    TriTotResult R;
    std::map<int, std::vector<std::string>> basis;
    for (const auto& [p, sl] : slots)
        for (const auto& [n, m, i] : sl) {
            R.offset[{n, m, p}] = (int)basis[p].size();
            for (const auto& lab : B.level[n][m].space->basis.at(i))
                basis[p].push_back("n" + std::to_string(n) + "m" + std::to_string(m) + ":" + lab);
        }
    SpacePtr sp = make_space(name, std::move(basis));

    std::map<int, SpMat> blocks;
    for (const auto& [p, sl] : slots) {
        if (sp->dim(p + 1) == 0) continue;
        SpMat mat(sp->dim(p + 1), sp->dim(p));
        for (const auto& [n, m, i] : sl) {
            int cbase = R.offset.at({n, m, p});
            int dimi = B.level[n][m].space->dim(i);
            const SpMat* db = B.level[n][m].d.block(i);
            if (db) {
                int rbase = R.offset.at({n, m, p + 1});
                Rat dsign(((n + m) % 2 == 0) ? 1 : -1);
                for (int j = 0; j < dimi; ++j)
                    for (const auto& [r, c] : db->col[j]) mat.set(rbase + r, cbase + j, dsign * c);
            }
            if (n < N) {
                auto it = R.offset.find({n + 1, m, p + 1});
                if (it != R.offset.end()) {
                    int rbase = it->second;
                    for (int s = 0; s <= n + 1; ++s) {
                        const SpMat* fb = B.hface[n][m][s].block(i);
                        if (!fb) continue;
                        Rat sg(((s + m) % 2 == 0) ? 1 : -1);
                        for (int j = 0; j < dimi; ++j)
                            for (const auto& [r, c] : fb->col[j])
                                mat.set(rbase + r, cbase + j, mat.get(rbase + r, cbase + j) + sg * c);
                    }
                }
            }
            if (m < M) {
                auto it = R.offset.find({n, m + 1, p + 1});
                if (it != R.offset.end()) {
                    int rbase = it->second;
                    for (int k = 0; k <= m + 1; ++k) {
                        const SpMat* fb = B.vface[n][m][k].block(i);
                        if (!fb) continue;
                        Rat sg((k % 2 == 0) ? 1 : -1);
                        for (int j = 0; j < dimi; ++j)
                            for (const auto& [r, c] : fb->col[j])
                                mat.set(rbase + r, cbase + j, mat.get(rbase + r, cbase + j) + sg * c);
                    }
                }
            }
        }
        blocks.emplace(p, std::move(mat));
    }
    R.cx = make_complex(sp, lm_make(sp, sp, 1, std::move(blocks)));
    return R;
}

/* ================= Thom-Whitney totalization of the grid ================= */

namespace {

struct TriTwCore {
    TriTwAmbientPtr amb;
    std::map<int, SpMat> embed;
    std::shared_ptr<std::map<int, Rref>> rref;
    SpacePtr space;
    LinearMap d;
    std::vector<std::vector<CochainComplex>> levels; // copies sharing the input space pointers
};

/* componentwise differential
 * dv (x) a (x) b + (-1)^{|v|} v (x) da (x) b + (-1)^{|v|+|a|} v (x) a (x) db */
SpVec tri_ambient_d(const TriTwAmbient& amb, const std::vector<std::vector<CochainComplex>>& levels,
                    int p, const SpVec& v) {
    std::map<int, Rat> acc;
    if (v.empty()) return {};
    const auto& ents = amb.basis.at(p);
    for (const auto& [col, c] : v) {
        auto [n, m, i, vi, ai, bi] = ents[col];
        const SpMat* db = levels[n][m].d.block(i);
        if (db)
            for (const auto& [r, cc] : db->col[vi])
                acc[amb.index.at(p + 1).at({n, m, i + 1, r, ai, bi})] += c * cc;
        AplForm fa{n, {}};
        fa.add(amb.hapl[n][ai], Rat(1));
        Rat sa((i % 2 == 0) ? 1 : -1);
        for (const auto& [mm, cc] : apl_d(fa).terms)
            acc[amb.index.at(p + 1).at({n, m, i, vi, amb.hapl_index[n].at(mm), bi})] += sa * c * cc;
        int fdeg = amb.hapl[n][ai].form_degree();
        AplForm fb{m, {}};
        fb.add(amb.vapl[m][bi], Rat(1));
        Rat sb(((i + fdeg) % 2 == 0) ? 1 : -1);
        for (const auto& [mm, cc] : apl_d(fb).terms)
            acc[amb.index.at(p + 1).at({n, m, i, vi, ai, amb.vapl_index[m].at(mm)})] += sb * c * cc;
    }
    return to_sp(acc);
}

/* componentwise bracket of two ambient vectors:
 * [v (x) a (x) b, w (x) a' (x) b'] =
 *   (-1)^{(|a|+|b|)|w| + |b||a'|} [v,w] (x) aa' (x) bb'.
 * Returns overflow when a level bracket overflows or a monomial product leaves
 * the cap on either tensor factor. */
std::pair<bool, SpVec> tri_ambient_bracket(const TriTwAmbient& amb,
                                           const std::vector<std::vector<Dgla>>& lv, int pa,
                                           const SpVec& va, int pb, const SpVec& vb) {
    if (va.empty() || vb.empty()) return {false, {}};
    struct Comp {
        int i, vi, ai, bi;
        Rat c;
    };
    /* brackets vanish across distinct grid positions: group by (n, m) */
    std::map<std::pair<int, int>, std::vector<Comp>> ga, gb;
    const auto& ea = amb.basis.at(pa);
    for (const auto& [col, c] : va) {
        auto [n, m, i, vi, ai, bi] = ea[col];
        ga[{n, m}].push_back({i, vi, ai, bi, c});
    }
    const auto& eb = amb.basis.at(pb);
    for (const auto& [col, c] : vb) {
        auto [n, m, i, vi, ai, bi] = eb[col];
        gb[{n, m}].push_back({i, vi, ai, bi, c});
    }

    std::map<int, Rat> acc;
    auto ita = ga.begin();
    auto itb = gb.begin();
    while (ita != ga.end() && itb != gb.end()) {
        if (ita->first < itb->first) {
            ++ita;
            continue;
        }
        if (itb->first < ita->first) {
            ++itb;
            continue;
        }
        auto [n, m] = ita->first;
        const Dgla& Lnm = lv[n][m];
        for (const Comp& xa : ita->second) {
            const AplMono& maa = amb.hapl[n][xa.ai];
            const AplMono& mab = amb.vapl[m][xa.bi];
            int faa = maa.form_degree();
            int fab = mab.form_degree();
            for (const Comp& xb : itb->second) {
                const AplMono& mba = amb.hapl[n][xb.ai];
                const AplMono& mbb = amb.vapl[m][xb.bi];
                if (maa.dt & mba.dt) continue; // repeated dt factor on the first tensor leg
                if (mab.dt & mbb.dt) continue; // ... or on the second
                BracketEntry lvz = Lnm.bracket_basis(xa.i, xa.vi, xb.i, xb.vi);
                if (!lvz.overflow && lvz.v.empty()) continue;
                if (lvz.overflow || maa.poly_degree() + faa + mba.total_degree() > amb.cap ||
                    mab.poly_degree() + fab + mbb.total_degree() > amb.cap)
                    return {true, {}};
                AplMono proda;
                proda.dt = maa.dt | mba.dt;
                proda.t.resize(n);
                for (int q = 0; q < n; ++q) proda.t[q] = maa.t[q] + mba.t[q];
                AplMono prodb;
                prodb.dt = mab.dt | mbb.dt;
                prodb.t.resize(m);
                for (int q = 0; q < m; ++q) prodb.t[q] = mab.t[q] + mbb.t[q];
                int sgn = dt_merge_sign(maa.dt, mba.dt) * dt_merge_sign(mab.dt, mbb.dt);
                if (((faa + fab) * xb.i) % 2 != 0) sgn = -sgn; // Koszul: a (x) b past w
                if ((fab * mba.form_degree()) % 2 != 0) sgn = -sgn; // Koszul: b past a'
                Rat coef = xa.c * xb.c;
                if (sgn < 0) coef = -coef;
                int pai = amb.hapl_index[n].at(proda);
                int pbi = amb.vapl_index[m].at(prodb);
                int tgt_i = xa.i + xb.i;
                const auto& idx = amb.index.at(pa + pb);
                for (const auto& [r, cc] : lvz.v)
                    acc[idx.at({n, m, tgt_i, r, pai, pbi})] += coef * cc;
            }
        }
        ++ita;
        ++itb;
    }
    return {false, to_sp(acc)};
}

TriTwCore build_tri_tw_core(const BisemicosimplicialComplex& B, int cap, const std::string& name) {
    require(cap >= 0, "tot_tw_triangle: cap must be >= 0");
    ScReport chk = check_bisemicosimplicial(B);
    require(chk.ok(), "tot_tw_triangle: invalid bisemicosimplicial object: " +
                          (chk.violations.empty() ? std::string() : chk.violations.front()));
    const int N = (int)B.level.size() - 1;
    const int M = (int)B.level[0].size() - 1;
    AplTables hT = build_apl_tables(N, cap);
    AplTables vT = build_apl_tables(M, cap);

    auto amb = std::make_shared<TriTwAmbient>();
    amb->cap = cap;
    amb->hapl = hT.mono;
    amb->hapl_index = hT.index;
    amb->vapl = vT.mono;
    amb->vapl_index = vT.index;
    for (int n = 0; n <= N; ++n)
        for (int m = 0; m <= M; ++m)
            for (const auto& [i, labs] : B.level[n][m].space->basis) {
                if (labs.empty()) continue;
                for (int fa = 0; fa <= n; ++fa) {
                    const auto& la = hT.by_form[n][fa];
                    if (la.empty()) continue;
                    for (int fb = 0; fb <= m; ++fb) {
                        const auto& lb = vT.by_form[m][fb];
                        if (lb.empty()) continue;
                        int p = i + fa + fb;
                        auto& vec = amb->basis[p];
                        for (int vi = 0; vi < (int)labs.size(); ++vi)
                            for (int ai : la)
                                for (int bi : lb) {
                                    amb->index[p][{n, m, i, vi, ai, bi}] = (int)vec.size();
                                    vec.push_back({n, m, i, vi, ai, bi});
                                }
                    }
                }
            }

    TriTwCore core;
    core.amb = amb;
    core.rref = std::make_shared<std::map<int, Rref>>();
    core.levels = B.level;

    /* matching subspace per total degree:
     *   (Id (x) face_s (x) Id) x_{n,m} = (hface_s (x) Id (x) Id) x_{n-1,m}
     *   (Id (x) Id (x) face_k) x_{n,m} = (vface_k (x) Id (x) Id) x_{n,m-1} */
    std::map<int, std::vector<std::string>> labels;
    for (const auto& [p, ents] : amb->basis) {
        int adim = (int)ents.size();
        if (adim == 0) continue;
        /* rows: {family (0 horizontal, 1 vertical), n, m, face index, i, |a|} */
        std::map<std::array<int, 6>, int> rbase;
        int nrows = 0;
        for (int n = 1; n <= N; ++n)
            for (int m = 0; m <= M; ++m)
                for (const auto& [i, labs] : B.level[n][m].space->basis) {
                    if (labs.empty()) continue;
                    for (int fa = 0; fa <= n - 1; ++fa) {
                        int fb = p - i - fa;
                        if (fb < 0 || fb > m) continue;
                        int sz = (int)labs.size() * (int)hT.by_form[n - 1][fa].size() *
                                 (int)vT.by_form[m][fb].size();
                        if (sz == 0) continue;
                        for (int s = 0; s <= n; ++s) {
                            rbase[{0, n, m, s, i, fa}] = nrows;
                            nrows += sz;
                        }
                    }
                }
        for (int n = 0; n <= N; ++n)
            for (int m = 1; m <= M; ++m)
                for (const auto& [i, labs] : B.level[n][m].space->basis) {
                    if (labs.empty()) continue;
                    for (int fa = 0; fa <= n; ++fa) {
                        int fb = p - i - fa;
                        if (fb < 0 || fb > m - 1) continue;
                        int sz = (int)labs.size() * (int)hT.by_form[n][fa].size() *
                                 (int)vT.by_form[m - 1][fb].size();
                        if (sz == 0) continue;
                        for (int k = 0; k <= m; ++k) {
                            rbase[{1, n, m, k, i, fa}] = nrows;
                            nrows += sz;
                        }
                    }
                }

        SpMat C(nrows, adim);
        for (int col = 0; col < adim; ++col) {
            auto [n, m, i, vi, ai, bi] = ents[col];
            int fa = amb->hapl[n][ai].form_degree();
            int fb = amb->vapl[m][bi].form_degree();
            std::map<int, Rat> acc;
            /* horizontal face side at (n, m) */
            if (n >= 1)
                for (int s = 0; s <= n; ++s) {
                    const auto& exp = hT.face[n][s][ai];
                    if (exp.empty()) continue;
                    auto it = rbase.find({0, n, m, s, i, fa});
                    if (it == rbase.end()) continue;
                    int nfa = (int)hT.by_form[n - 1][fa].size();
                    int nfb = (int)vT.by_form[m][fb].size();
                    int bpos = vT.form_pos[m][bi];
                    for (const auto& [aj, c] : exp)
                        acc[it->second + (vi * nfa + hT.form_pos[n - 1][aj]) * nfb + bpos] += c;
                }
            /* horizontal coface side at (n+1, m) */
            if (n + 1 <= N) {
                int apos = hT.form_pos[n][ai];
                int nfa = (int)hT.by_form[n][fa].size();
                int nfb = (int)vT.by_form[m][fb].size();
                int bpos = vT.form_pos[m][bi];
                for (int s = 0; s <= n + 1; ++s) {
                    auto it = rbase.find({0, n + 1, m, s, i, fa});
                    if (it == rbase.end()) continue;
                    const SpMat* Bk = B.hface[n][m][s].block(i);
                    if (!Bk) continue;
                    for (const auto& [r, c] : Bk->col[vi])
                        acc[it->second + (r * nfa + apos) * nfb + bpos] -= c;
                }
            }
            /* vertical face side at (n, m) */
            if (m >= 1)
                for (int k = 0; k <= m; ++k) {
                    const auto& exp = vT.face[m][k][bi];
                    if (exp.empty()) continue;
                    auto it = rbase.find({1, n, m, k, i, fa});
                    if (it == rbase.end()) continue;
                    int nfa = (int)hT.by_form[n][fa].size();
                    int nfb = (int)vT.by_form[m - 1][fb].size();
                    int apos = hT.form_pos[n][ai];
                    for (const auto& [bj, c] : exp)
                        acc[it->second + (vi * nfa + apos) * nfb + vT.form_pos[m - 1][bj]] += c;
                }
            /* vertical coface side at (n, m+1) */
            if (m + 1 <= M) {
                int apos = hT.form_pos[n][ai];
                int nfa = (int)hT.by_form[n][fa].size();
                int nfb = (int)vT.by_form[m][fb].size();
                int bpos = vT.form_pos[m][bi];
                for (int k = 0; k <= m + 1; ++k) {
                    auto it = rbase.find({1, n, m + 1, k, i, fa});
                    if (it == rbase.end()) continue;
                    const SpMat* Bk = B.vface[n][m][k].block(i);
                    if (!Bk) continue;
                    for (const auto& [r, c] : Bk->col[vi])
                        acc[it->second + (r * nfa + apos) * nfb + bpos] -= c;
                }
            }
            C.col[col] = to_sp(acc);
        }

        std::vector<SpVec> ker = sp_kernel(C);
        if (ker.empty()) continue;
        SpMat E(adim, (int)ker.size());
        Rref R(adim);
        for (int j = 0; j < (int)ker.size(); ++j) {
            E.col[j] = ker[j];
            R.insert(ker[j]);
        }
        require(R.rank() == (int)ker.size(), "tot_tw_triangle: internal kernel-rank error");
        core.embed.emplace(p, std::move(E));
        core.rref->emplace(p, std::move(R));
        auto& ls = labels[p];
        for (int j = 0; j < (int)ker.size(); ++j)
            ls.push_back("p" + std::to_string(p) + "_" + std::to_string(j));
    }

    core.space = make_space(name, std::move(labels));
    std::map<int, SpMat> dblocks;
    for (const auto& [p, E] : core.embed) {
        int dn = core.space->dim(p + 1);
        if (dn == 0) continue;
        SpMat D(dn, E.cols);
        for (int j = 0; j < E.cols; ++j) {
            SpVec img = tri_ambient_d(*amb, core.levels, p, E.col[j]);
            if (img.empty()) continue;
            auto c = core.rref->at(p + 1).coords(img);
            require(c.has_value(), "tot_tw_triangle: differential leaves the matching subspace");
            D.col[j] = *c;
        }
        dblocks.emplace(p, std::move(D));
    }
    core.d = lm_make(core.space, core.space, 1, std::move(dblocks));
    return core;
}

} // namespace

SpVec TriTwDgla::coords(int p, const SpVec& ambient_vec) const {
    return tw_coords(*basis_rref, p, ambient_vec);
}

TriTwDgla tot_tw_triangle(const BisemicosimplicialDgla& G, int cap, const std::string& name) {
    TriTwCore core = build_tri_tw_core(G.underlying(), cap, name);
    const TriTwAmbient& amb = *core.amb;

    std::map<std::pair<int, int>, std::vector<BracketEntry>> table;
    for (const auto& [pa, Ea] : core.embed)
        for (const auto& [pb, Eb] : core.embed) {
            std::vector<BracketEntry> tab((size_t)Ea.cols * Eb.cols);
            bool any = false;
            for (int ja = 0; ja < Ea.cols; ++ja)
                for (int jb = 0; jb < Eb.cols; ++jb) {
                    auto [ovf, v] =
                        tri_ambient_bracket(amb, G.level, pa, Ea.col[ja], pb, Eb.col[jb]);
                    BracketEntry& e = tab[(size_t)ja * Eb.cols + jb];
                    if (ovf) {
                        e.overflow = true;
                        any = true;
                    } else if (!v.empty()) {
                        e.v = tw_coords(*core.rref, pa + pb, v);
                        any = true;
                    }
                }
            if (any) table.emplace(std::pair<int, int>{pa, pb}, std::move(tab));
        }

    TriTwDgla R;
    R.dgla.name = core.space->name;
    R.dgla.cx = make_complex(core.space, core.d);
    R.dgla.table = std::move(table);
    R.amb = core.amb;
    R.embed = std::move(core.embed);
    R.basis_rref = core.rref;
    return R;
}

/* ================= coincidence of the three Thom-Whitney orders ================= */

bool tw_orders_coincide(const BisemicosimplicialDgla& G, int cap, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    ScReport chk = check_bisemicosimplicial_dgla(G);
    if (!chk.ok()) return fail("invalid bisemicosimplicial object: " + chk.violations.front());
    const int N = (int)G.level.size() - 1;
    const int M = (int)G.level[0].size() - 1;
    const auto glevels = G.underlying().level;

    TriTwDgla T = tot_tw_triangle(G, cap, G.name + ":tw");

    /* rows first: totalize every row, then the induced vertical direction */
    std::vector<TwDgla> W;
    for (int m = 0; m <= M; ++m)
        W.push_back(tot_tw_dgla(bisc_row_dgla(G, m), cap, G.name + ":twr" + std::to_string(m)));
    SemicosimplicialDgla RS;
    RS.name = G.name + ":rows";
    for (const auto& w : W) RS.level.push_back(w.dgla);
    for (int m = 0; m < M; ++m) {
        std::vector<LinearMap> fam;
        for (int k = 0; k <= m + 1; ++k) {
            std::vector<LinearMap> phi;
            for (int n = 0; n <= N; ++n) phi.push_back(G.vface[n][m][k]);
            fam.push_back(tw_push_morphism(phi, W[m].complex_view(), W[m + 1].complex_view()));
        }
        RS.coface.push_back(std::move(fam));
    }
    TwDgla R = tot_tw_dgla(RS, cap, G.name + ":rowsrows");

    /* columns first */
    std::vector<TwDgla> X;
    for (int n = 0; n <= N; ++n)
        X.push_back(tot_tw_dgla(bisc_column_dgla(G, n), cap, G.name + ":twc" + std::to_string(n)));
    SemicosimplicialDgla CS;
    CS.name = G.name + ":cols";
    for (const auto& x : X) CS.level.push_back(x.dgla);
    for (int n = 0; n < N; ++n) {
        std::vector<LinearMap> fam;
        for (int s = 0; s <= n + 1; ++s) {
            std::vector<LinearMap> phi;
            for (int m = 0; m <= M; ++m) phi.push_back(G.hface[n][m][s]);
            fam.push_back(tw_push_morphism(phi, X[n].complex_view(), X[n + 1].complex_view()));
        }
        CS.coface.push_back(std::move(fam));
    }
    TwDgla C = tot_tw_dgla(CS, cap, G.name + ":colscols");

    /* canonical identification into the grid ambient: a rows-first entry
     * (m, iw, wj, bi) expands the row totalization basis vector wj over
     * (n, i, vi, ai); a columns-first entry (n, ix, xj, ai) expands the column
     * one over (m, i, vi, bi) and picks up the braiding sign (-1)^{|a||b|} */
    auto push_rows = [&](int p, const SpVec& v) -> SpVec {
        if (v.empty()) return {};
        std::map<int, Rat> acc;
        const auto& ents = R.amb->basis.at(p);
        for (const auto& [col, c] : v) {
            auto [m, iw, wj, bi] = ents[col];
            const auto& rents = W[m].amb->basis.at(iw);
            for (const auto& [rc, cc] : W[m].embed.at(iw).col[wj]) {
                auto [n, i, vi, ai] = rents[rc];
                acc[T.amb->index.at(p).at({n, m, i, vi, ai, bi})] += c * cc;
            }
        }
        return to_sp(acc);
    };
    auto push_cols = [&](int p, const SpVec& v) -> SpVec {
        if (v.empty()) return {};
        std::map<int, Rat> acc;
        const auto& ents = C.amb->basis.at(p);
        for (const auto& [col, c] : v) {
            auto [n, ix, xj, ai] = ents[col];
            int fa = C.amb->apl[n][ai].form_degree();
            const auto& xents = X[n].amb->basis.at(ix);
            for (const auto& [rc, cc] : X[n].embed.at(ix).col[xj]) {
                auto [m, i, vi, bi] = xents[rc];
                int fb = X[n].amb->apl[m][bi].form_degree();
                Rat coef = c * cc;
                if ((fa * fb) % 2 != 0) coef = -coef;
                acc[T.amb->index.at(p).at({n, m, i, vi, ai, bi})] += coef;
            }
        }
        return to_sp(acc);
    };

    /* equal dimensions in every degree */
    std::set<int> degs;
    for (int p : T.dgla.cx.space->degrees()) degs.insert(p);
    for (int p : R.dgla.cx.space->degrees()) degs.insert(p);
    for (int p : C.dgla.cx.space->degrees()) degs.insert(p);
    for (int p : degs) {
        int dt = T.dgla.cx.space->dim(p);
        int dr = R.dgla.cx.space->dim(p);
        int dc = C.dgla.cx.space->dim(p);
        if (dt != dr || dt != dc)
            return fail("dimension mismatch in degree " + std::to_string(p) + ": grid " +
                        std::to_string(dt) + ", rows first " + std::to_string(dr) +
                        ", columns first " + std::to_string(dc));
    }

    /* equal subspaces: every pushed basis vector lies in the grid matching
     * subspace (equal dimensions then give equality of spans) */
    std::map<int, std::vector<SpVec>> pr, pc;
    for (const auto& [p, E] : R.embed) {
        auto& vecs = pr[p];
        for (int j = 0; j < E.cols; ++j) {
            SpVec w = push_rows(p, E.col[j]);
            auto it = T.basis_rref->find(p);
            if (!w.empty() && (it == T.basis_rref->end() || !it->second.coords(w).has_value()))
                return fail("rows-first basis vector " + std::to_string(j) +
                            " escapes the grid matching subspace in degree " + std::to_string(p));
            vecs.push_back(std::move(w));
        }
    }
    for (const auto& [p, E] : C.embed) {
        auto& vecs = pc[p];
        for (int j = 0; j < E.cols; ++j) {
            SpVec w = push_cols(p, E.col[j]);
            auto it = T.basis_rref->find(p);
            if (!w.empty() && (it == T.basis_rref->end() || !it->second.coords(w).has_value()))
                return fail("columns-first basis vector " + std::to_string(j) +
                            " escapes the grid matching subspace in degree " + std::to_string(p));
            vecs.push_back(std::move(w));
        }
    }

    /* equal differentials */
    for (int side = 0; side < 2; ++side) {
        const TwDgla& Z = side == 0 ? R : C;
        const auto& pushed = side == 0 ? pr : pc;
        const char* lbl = side == 0 ? "rows-first" : "columns-first";
        for (const auto& [p, vecs] : pushed) {
            const SpMat* db = Z.dgla.cx.d.block(p);
            for (int j = 0; j < (int)vecs.size(); ++j) {
                SpVec lhs;
                if (db && !db->col[j].empty()) {
                    SpVec zamb = sp_apply(Z.embed.at(p + 1), db->col[j]);
                    lhs = side == 0 ? push_rows(p + 1, zamb) : push_cols(p + 1, zamb);
                }
                if (!sp_eq(lhs, tri_ambient_d(*T.amb, glevels, p, vecs[j])))
                    return fail(std::string(lbl) +
                                " differential disagrees with the grid one in degree " +
                                std::to_string(p));
            }
        }
    }

    /* equal structure constants (pairs with an overflow on either side carry
     * no exact value and are skipped) */
    for (int side = 0; side < 2; ++side) {
        const TwDgla& Z = side == 0 ? R : C;
        const auto& pushed = side == 0 ? pr : pc;
        const char* lbl = side == 0 ? "rows-first" : "columns-first";
        for (const auto& [pa, va] : pushed)
            for (const auto& [pb, vb] : pushed)
                for (int ja = 0; ja < (int)va.size(); ++ja)
                    for (int jb = 0; jb < (int)vb.size(); ++jb) {
                        BracketEntry ze = Z.dgla.bracket_basis(pa, ja, pb, jb);
                        auto [ovf, tv] =
                            tri_ambient_bracket(*T.amb, G.level, pa, va[ja], pb, vb[jb]);
                        if (ze.overflow || ovf) continue;
                        SpVec lhs;
                        if (!ze.v.empty()) {
                            SpVec zamb = sp_apply(Z.embed.at(pa + pb), ze.v);
                            lhs = side == 0 ? push_rows(pa + pb, zamb) : push_cols(pa + pb, zamb);
                        }
                        if (!sp_eq(lhs, tv))
                            return fail(std::string(lbl) +
                                        " bracket disagrees with the grid one in degrees (" +
                                        std::to_string(pa) + ", " + std::to_string(pb) + ")");
                    }
    }
    return true;
}

} // namespace defalg
