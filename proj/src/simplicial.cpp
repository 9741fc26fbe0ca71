#include "defalg/simplicial.hpp"

#include <tuple>

#include "tw_internal.hpp"

namespace defalg {

using namespace twdetail;

/* ================= nilpotent-element helpers ================= */

NilpotentElement ne_zero(const Dgla& L, const ArtinianAlgebra& A, int degree) {
    return NilpotentElement(L, A, degree);
}

NilpotentElement ne_neg(const NilpotentElement& x) { return ne_scale(Rat(-1), x); }

NilpotentElement ne_apply(const LinearMap& f, const Dgla& target, const NilpotentElement& x) {
    require(f.src.get() == x.L->cx.space.get(), "ne_apply: source space mismatch");
    require(f.dst.get() == target.cx.space.get(), "ne_apply: target space mismatch");
    require(f.degree == 0, "ne_apply: map must have degree 0");
    NilpotentElement y(target, *x.A, x.degree);
    for (size_t k = 0; k < x.comp.size(); ++k) y.comp[k] = f.apply(x.degree, x.comp[k]);
    return y;
}

/* ================= semicosimplicial checks ================= */

SemicosimplicialComplex SemicosimplicialDgla::underlying() const {
    SemicosimplicialComplex S;
    S.name = name;
    for (const auto& g : level) S.level.push_back(g.cx);
    S.coface = coface;
    return S;
}

static void add_violation(ScReport& rep, const std::string& msg) {
    if (rep.violations.size() < 16) rep.violations.push_back(msg);
}

ScReport check_semicosimplicial(const SemicosimplicialComplex& S) {
    ScReport rep;
    const int N = (int)S.level.size() - 1;
    if (N < 0) {
        rep.violations.push_back("no levels");
        return rep;
    }
    if ((int)S.coface.size() != N) {
        rep.violations.push_back("expected " + std::to_string(N) + " coface families, found " +
                                 std::to_string(S.coface.size()));
        return rep;
    }
    for (int n = 0; n < N; ++n) {
        if ((int)S.coface[n].size() != n + 2) {
            rep.violations.push_back("level " + std::to_string(n) + ": expected " +
                                     std::to_string(n + 2) + " cofaces, found " +
                                     std::to_string(S.coface[n].size()));
            return rep;
        }
        for (int k = 0; k <= n + 1; ++k) {
            const LinearMap& f = S.coface[n][k];
            if (f.src.get() != S.level[n].space.get() || f.dst.get() != S.level[n + 1].space.get() ||
                f.degree != 0) {
                rep.violations.push_back("coface " + std::to_string(k) + " at level " +
                                         std::to_string(n) + ": wrong shape");
                return rep;
            }
        }
    }
    for (int n = 0; n < N; ++n)
        for (int k = 0; k <= n + 1; ++k) {
            ++rep.chain_maps_checked;
            if (!lm_eq(lm_compose(S.level[n + 1].d, S.coface[n][k]),
                       lm_compose(S.coface[n][k], S.level[n].d)))
                add_violation(rep, "coface " + std::to_string(k) + " at level " + std::to_string(n) +
                                       " does not commute with the differentials");
        }
    /* d_l d_k = d_{k+1} d_l for l <= k */
    for (int n = 0; n + 1 < N; ++n)
        for (int k = 0; k <= n + 1; ++k)
            for (int l = 0; l <= k; ++l) {
                ++rep.identities_checked;
                if (!lm_eq(lm_compose(S.coface[n + 1][l], S.coface[n][k]),
                           lm_compose(S.coface[n + 1][k + 1], S.coface[n][l])))
                    add_violation(rep, "identity d_" + std::to_string(l) + " d_" + std::to_string(k) +
                                           " = d_" + std::to_string(k + 1) + " d_" +
                                           std::to_string(l) + " fails from level " +
                                           std::to_string(n));
            }
    return rep;
}

/* phi([x,y]) == [phi x, phi y] on every basis pair of L; pairs with an overflow
 * on either side are skipped and counted */
void check_bracket_preservation(const Dgla& L, const Dgla& M, const LinearMap& phi,
                                const std::string& where, ScReport& rep) {
    for (const auto& [da, ba] : L.space().basis) {
        if (ba.empty()) continue;
        for (const auto& [db, bb] : L.space().basis) {
            if (bb.empty()) continue;
            for (int ia = 0; ia < (int)ba.size(); ++ia) {
                SpVec pa = phi.apply(da, sp_unit(ia));
                for (int ib = 0; ib < (int)bb.size(); ++ib) {
                    BracketEntry lv = L.bracket_basis(da, ia, db, ib);
                    if (lv.overflow) {
                        ++rep.bracket_pairs_skipped;
                        continue;
                    }
                    BracketEntry rv = M.bracket(da, pa, db, phi.apply(db, sp_unit(ib)));
                    if (rv.overflow) {
                        ++rep.bracket_pairs_skipped;
                        continue;
                    }
                    ++rep.bracket_pairs_checked;
                    if (!sp_eq(phi.apply(da + db, lv.v), rv.v))
                        add_violation(rep, where + ": bracket not preserved on (" + ba[ia] + ", " +
                                               bb[ib] + ")");
                }
            }
        }
    }
}

ScReport check_semicosimplicial_dgla(const SemicosimplicialDgla& G) {
    ScReport rep = check_semicosimplicial(G.underlying());
    if (!rep.ok()) return rep;
    for (int n = 0; n + 1 < (int)G.level.size(); ++n)
        for (int k = 0; k < (int)G.coface[n].size(); ++k)
            check_bracket_preservation(G.level[n], G.level[n + 1], G.coface[n][k],
                                       "coface " + std::to_string(k) + " at level " +
                                           std::to_string(n),
                                       rep);
    return rep;
}

bool is_dgla_morphism(const Dgla& L, const Dgla& M, const LinearMap& chi, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (chi.src.get() != L.cx.space.get() || chi.dst.get() != M.cx.space.get())
        return fail("morphism does not connect the given algebras");
    if (chi.degree != 0) return fail("morphism must have degree 0");
    if (!lm_eq(lm_compose(M.cx.d, chi), lm_compose(chi, L.cx.d)))
        return fail("morphism does not commute with the differentials");
    ScReport rep;
    check_bracket_preservation(L, M, chi, "morphism", rep);
    if (!rep.ok()) return fail(rep.violations.front());
    return true;
}

SemicosimplicialDgla from_morphism(const Dgla& L, const Dgla& M, const LinearMap& chi,
                                   const std::string& name) {
    std::string why;
    require(is_dgla_morphism(L, M, chi, &why), "from_morphism: " + why);
    SpacePtr zero = make_space(name + ":level2", {});
    Dgla z;
    z.name = name + ":level2";
    z.cx = make_complex(zero, lm_zero(zero, zero, 1));
    SemicosimplicialDgla G;
    G.name = name;
    G.level = {L, M, z};
    G.coface = {{chi, lm_zero(L.cx.space, M.cx.space, 0)},
                {lm_zero(M.cx.space, zero, 0), lm_zero(M.cx.space, zero, 0),
                 lm_zero(M.cx.space, zero, 0)}};
    return G;
}

/* ================= total complex =================
 * deg(v in V_n^i) = i + n;  D(v) = (-1)^n d(v) + sum_k (-1)^k coface_k(v) */

TotResult tot(const SemicosimplicialComplex& S, const std::string& name) {
    ScReport chk = check_semicosimplicial(S);
    require(chk.ok(), "tot: invalid semicosimplicial object: " +
                          (chk.violations.empty() ? std::string() : chk.violations.front()));
    const int N = (int)S.level.size() - 1;
    std::map<int, std::vector<std::pair<int, int>>> slots; // total degree -> [(n, i)]
    for (int n = 0; n <= N; ++n)
        for (int i : S.level[n].space->degrees()) slots[i + n].push_back({n, i});

    TotResult R;
    std::map<int, std::vector<std::string>> basis;
    for (const auto& [p, sl] : slots)
        for (const auto& [n, i] : sl) {
            R.offset[{n, p}] = (int)basis[p].size();
            for (const auto& lab : S.level[n].space->basis.at(i))
                basis[p].push_back("n" + std::to_string(n) + ":" + lab);
        }
    SpacePtr sp = make_space(name, std::move(basis));

    std::map<int, SpMat> blocks;
    for (const auto& [p, sl] : slots) {
        if (sp->dim(p + 1) == 0) continue;
        SpMat m(sp->dim(p + 1), sp->dim(p));
        for (const auto& [n, i] : sl) {
            int cbase = R.offset.at({n, p});
            int dimni = S.level[n].space->dim(i);
            const SpMat* db = S.level[n].d.block(i);
            if (db) {
                int rbase = R.offset.at({n, p + 1});
                Rat dsign((n % 2 == 0) ? 1 : -1);
                for (int j = 0; j < dimni; ++j)
                    for (const auto& [r, c] : db->col[j]) m.set(rbase + r, cbase + j, dsign * c);
            }
            if (n < N) {
                auto it = R.offset.find({n + 1, p + 1});
                if (it != R.offset.end()) {
                    int rbase = it->second;
                    for (int k = 0; k <= n + 1; ++k) {
                        const SpMat* fb = S.coface[n][k].block(i);
                        if (!fb) continue;
                        Rat s((k % 2 == 0) ? 1 : -1);
                        for (int j = 0; j < dimni; ++j)
                            for (const auto& [r, c] : fb->col[j])
                                m.set(rbase + r, cbase + j, m.get(rbase + r, cbase + j) + s * c);
                    }
                }
            }
        }
        blocks.emplace(p, std::move(m));
    }
    R.cx = make_complex(sp, lm_make(sp, sp, 1, std::move(blocks)));
    return R;
}

/* ================= Thom-Whitney totalization ================= */

namespace {

struct TwCore {
    TwAmbientPtr amb;
    std::map<int, SpMat> embed;
    std::shared_ptr<std::map<int, Rref>> rref;
    SpacePtr space;
    LinearMap d;
    std::vector<CochainComplex> levels; // copies sharing the input space pointers
};

/* componentwise differential dv (x) w + (-1)^{|v|} v (x) dw of an ambient vector */
SpVec tw_ambient_d(const TwAmbient& amb, const std::vector<CochainComplex>& levels, int p,
                   const SpVec& v) {
    std::map<int, Rat> acc;
    const auto& ents = amb.basis.at(p);
    for (const auto& [col, c] : v) {
        auto [n, i, vi, ai] = ents[col];
        const SpMat* db = levels[n].d.block(i);
        if (db)
            for (const auto& [r, cc] : db->col[vi])
                acc[amb.index.at(p + 1).at({n, i + 1, r, ai})] += c * cc;
        AplForm f{n, {}};
        f.add(amb.apl[n][ai], Rat(1));
        Rat s((i % 2 == 0) ? 1 : -1);
        for (const auto& [mm, cc] : apl_d(f).terms)
            acc[amb.index.at(p + 1).at({n, i, vi, amb.apl_index[n].at(mm)})] += s * c * cc;
    }
    return to_sp(acc);
}

TwCore build_tw_core(const SemicosimplicialComplex& S, int cap, const std::string& name) {
    require(cap >= 0, "tot_tw: cap must be >= 0");
    ScReport chk = check_semicosimplicial(S);
    require(chk.ok(), "tot_tw: invalid semicosimplicial object: " +
                          (chk.violations.empty() ? std::string() : chk.violations.front()));
    const int N = (int)S.level.size() - 1;
    AplTables T = build_apl_tables(N, cap);

    auto amb = std::make_shared<TwAmbient>();
    amb->cap = cap;
    amb->apl = T.mono;
    amb->apl_index = T.index;
    for (int n = 0; n <= N; ++n)
        for (const auto& [i, labs] : S.level[n].space->basis) {
            if (labs.empty()) continue;
            for (int f = 0; f <= n; ++f) {
                int p = i + f;
                auto& vec = amb->basis[p];
                for (int vi = 0; vi < (int)labs.size(); ++vi)
                    for (int ai : T.by_form[n][f]) {
                        amb->index[p][{n, i, vi, ai}] = (int)vec.size();
                        vec.push_back({n, i, vi, ai});
                    }
            }
        }

    TwCore core;
    core.amb = amb;
    core.rref = std::make_shared<std::map<int, Rref>>();
    core.levels = S.level;

    /* matching subspace per total degree: (Id (x) face_k) x_n = (coface_k (x) Id) x_{n-1} */
    std::map<int, std::vector<std::string>> labels;
    for (const auto& [p, ents] : amb->basis) {
        int adim = (int)ents.size();
        std::map<std::tuple<int, int, int>, int> rbase; // (n, k, i) -> first row
        int nrows = 0;
        for (int n = 1; n <= N; ++n)
            for (int k = 0; k <= n; ++k)
                for (const auto& [i, labs] : S.level[n].space->basis) {
                    if (labs.empty()) continue;
                    int f = p - i;
                    if (f < 0 || f > n - 1) continue;
                    rbase[{n, k, i}] = nrows;
                    nrows += (int)labs.size() * (int)T.by_form[n - 1][f].size();
                }
        SpMat C(nrows, adim);
        for (int col = 0; col < adim; ++col) {
            auto [ne, ie, vie, aie] = ents[col];
            std::map<int, Rat> acc;
            if (ne >= 1)
                for (int k = 0; k <= ne; ++k) {
                    auto it = rbase.find({ne, k, ie});
                    if (it == rbase.end()) continue;
                    int nf = (int)T.by_form[ne - 1][p - ie].size();
                    for (const auto& [aj, c] : T.face[ne][k][aie])
                        acc[it->second + vie * nf + T.form_pos[ne - 1][aj]] += c;
                }
            if (ne + 1 <= N) {
                int pos = T.form_pos[ne][aie];
                int nf = (int)T.by_form[ne][p - ie].size();
                for (int k = 0; k <= ne + 1; ++k) {
                    auto it = rbase.find({ne + 1, k, ie});
                    if (it == rbase.end()) continue;
                    const SpMat* B = S.coface[ne][k].block(ie);
                    if (!B) continue;
                    for (const auto& [r, c] : B->col[vie]) acc[it->second + r * nf + pos] -= c;
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
        require(R.rank() == (int)ker.size(), "tot_tw: internal kernel-rank error");
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
            SpVec img = tw_ambient_d(*amb, core.levels, p, E.col[j]);
            if (img.empty()) continue;
            auto c = core.rref->at(p + 1).coords(img);
            require(c.has_value(), "tot_tw: differential leaves the matching subspace");
            D.col[j] = *c;
        }
        dblocks.emplace(p, std::move(D));
    }
    core.d = lm_make(core.space, core.space, 1, std::move(dblocks));
    return core;
}

} // namespace

SpVec TwComplex::coords(int p, const SpVec& ambient_vec) const {
    return tw_coords(*basis_rref, p, ambient_vec);
}

SpVec TwDgla::coords(int p, const SpVec& ambient_vec) const {
    return tw_coords(*basis_rref, p, ambient_vec);
}

TwComplex tot_tw(const SemicosimplicialComplex& S, int cap, const std::string& name) {
    TwCore core = build_tw_core(S, cap, name);
    return TwComplex{make_complex(core.space, core.d), core.amb, std::move(core.embed), core.rref};
}

TwDgla tot_tw_dgla(const SemicosimplicialDgla& G, int cap, const std::string& name) {
    TwCore core = build_tw_core(G.underlying(), cap, name);
    const TwAmbient& amb = *core.amb;

    /* components of every basis vector, grouped by level (brackets vanish
     * across distinct levels, and matching-subspace vectors are sparse) */
    struct Comp {
        int i, vi, ai;
        Rat c;
    };
    std::map<int, std::vector<std::map<int, std::vector<Comp>>>> grouped; // degree -> per basis j
    for (const auto& [p, E] : core.embed) {
        auto& g = grouped[p];
        g.resize(E.cols);
        const auto& ents = amb.basis.at(p);
        for (int j = 0; j < E.cols; ++j)
            for (const auto& [col, c] : E.col[j]) {
                auto [n, i, vi, ai] = ents[col];
                g[j][n].push_back({i, vi, ai, c});
            }
    }

    std::map<std::pair<int, int>, std::vector<BracketEntry>> table;
    for (const auto& [pa, ga] : grouped)
        for (const auto& [pb, gb] : grouped) {
            int da = (int)ga.size(), db = (int)gb.size();
            std::vector<BracketEntry> tab((size_t)da * db);
            bool any = false;
            for (int ja = 0; ja < da; ++ja)
                for (int jb = 0; jb < db; ++jb) {
                    bool ovf = false;
                    std::map<int, Rat> acc;
                    auto ita = ga[ja].begin();
                    auto itb = gb[jb].begin();
                    while (ita != ga[ja].end() && itb != gb[jb].end() && !ovf) {
                        if (ita->first < itb->first) {
                            ++ita;
                            continue;
                        }
                        if (itb->first < ita->first) {
                            ++itb;
                            continue;
                        }
                        int n = ita->first;
                        const Dgla& Ln = G.level[n];
                        for (const Comp& xa : ita->second) {
                            const AplMono& ma = amb.apl[n][xa.ai];
                            int fa = ma.form_degree();
                            int qa = ma.poly_degree();
                            for (const Comp& xb : itb->second) {
                                const AplMono& mb = amb.apl[n][xb.ai];
                                if (ma.dt & mb.dt) continue; // repeated dt factor
                                BracketEntry lv = Ln.bracket_basis(xa.i, xa.vi, xb.i, xb.vi);
                                if (!lv.overflow && lv.v.empty()) continue;
                                if (lv.overflow || qa + fa + mb.total_degree() > amb.cap) {
                                    ovf = true;
                                    break;
                                }
                                AplMono prod;
                                prod.dt = ma.dt | mb.dt;
                                prod.t.resize(n);
                                for (int q = 0; q < n; ++q) prod.t[q] = ma.t[q] + mb.t[q];
                                int sgn = dt_merge_sign(ma.dt, mb.dt);
                                if ((fa * xb.i) % 2 != 0) sgn = -sgn; // Koszul: a past w
                                Rat coef = xa.c * xb.c;
                                if (sgn < 0) coef = -coef;
                                int pai = amb.apl_index[n].at(prod);
                                int tgt_i = xa.i + xb.i;
                                const auto& idx = amb.index.at(pa + pb);
                                for (const auto& [r, cc] : lv.v)
                                    acc[idx.at({n, tgt_i, r, pai})] += coef * cc;
                            }
                            if (ovf) break;
                        }
                        ++ita;
                        ++itb;
                    }
                    BracketEntry& e = tab[(size_t)ja * db + jb];
                    if (ovf) {
                        e.overflow = true;
                        any = true;
                    } else {
                        SpVec v = to_sp(acc);
                        if (!v.empty()) {
                            e.v = tw_coords(*core.rref, pa + pb, v);
                            any = true;
                        }
                    }
                }
            if (any) table.emplace(std::pair<int, int>{pa, pb}, std::move(tab));
        }

    TwDgla R;
    R.dgla.name = core.space->name;
    R.dgla.cx = make_complex(core.space, core.d);
    R.dgla.table = std::move(table);
    R.amb = core.amb;
    R.embed = std::move(core.embed);
    R.basis_rref = core.rref;
    return R;
}

LinearMap tw_push_morphism(const std::vector<LinearMap>& phi, const TwComplex& src,
                           const TwComplex& dst) {
    require(src.amb && dst.amb, "tw_push_morphism: missing ambient data");
    require(src.amb->cap == dst.amb->cap, "tw_push_morphism: caps differ");
    require(src.amb->apl.size() == dst.amb->apl.size(), "tw_push_morphism: level counts differ");
    for (const auto& f : phi) require(f.degree == 0, "tw_push_morphism: level maps must have degree 0");

    std::map<int, SpMat> blocks;
    for (const auto& [p, E] : src.embed) {
        std::vector<SpVec> cols((size_t)E.cols);
        bool all_zero = true;
        const auto& ents = src.amb->basis.at(p);
        for (int j = 0; j < E.cols; ++j) {
            std::map<int, Rat> acc;
            for (const auto& [col, c] : E.col[j]) {
                auto [n, i, vi, ai] = ents[col];
                require(n < (int)phi.size(), "tw_push_morphism: missing level map");
                const SpMat* B = phi[n].block(i);
                if (!B) continue;
                for (const auto& [r, cc] : B->col[vi])
                    acc[dst.amb->index.at(p).at({n, i, r, ai})] += c * cc;
            }
            cols[j] = to_sp(acc);
            if (!cols[j].empty()) all_zero = false;
        }
        int ddim = dst.cx.space->dim(p);
        if (ddim == 0) {
            require(all_zero, "tw_push_morphism: image misses the target matching subspace");
            continue;
        }
        SpMat B(ddim, E.cols);
        for (int j = 0; j < E.cols; ++j) B.col[j] = dst.coords(p, cols[j]);
        blocks.emplace(p, std::move(B));
    }
    return lm_make(src.cx.space, dst.cx.space, 0, std::move(blocks));
}

/* ================= nonabelian cocycles and their tangents ================= */

Z1Report z1_sc_member(const SemicosimplicialDgla& G, const NilpotentElement& l,
                      const NilpotentElement& m) {
    require(G.level.size() >= 2, "z1_sc_member: need at least two levels");
    require(l.L->cx.space.get() == G.level[0].cx.space.get(), "z1_sc_member: l must live in level 0");
    require(m.L->cx.space.get() == G.level[1].cx.space.get(), "z1_sc_member: m must live in level 1");
    require(l.degree == 1 && m.degree == 0, "z1_sc_member: degrees must be (1, 0)");
    require(l.A == m.A, "z1_sc_member: elements over different coefficient rings");

    if (!mc_residual(l).is_zero()) return {false, "Maurer-Cartan equation fails at level 0"};

    const Dgla& L1 = G.level[1];
    NilpotentElement d0l = ne_apply(G.coface[0][0], L1, l);
    NilpotentElement d1l = ne_apply(G.coface[0][1], L1, l);
    if (!ne_eq(d1l, gauge_action(m, d0l)))
        return {false, "coface_1(l) is not the gauge transform of coface_0(l) by m"};

    if (G.level.size() >= 3 && G.level[2].space().total_dim() > 0) {
        const Dgla& L2 = G.level[2];
        NilpotentElement m0 = ne_apply(G.coface[1][0], L2, m);
        NilpotentElement m1 = ne_apply(G.coface[1][1], L2, m);
        NilpotentElement m2 = ne_apply(G.coface[1][2], L2, m);
        NilpotentElement lhs = bch(m0, bch(ne_neg(m1), m2));
        NilpotentElement P = ne_apply(G.coface[1][2], L2, d0l);

        /* solvability of d n + [P, n] = lhs for n in level2^{-1} (x) m_A:
         * one exact linear system over all m_A components at once (the system is
         * block-triangular in the m_A filtration, but a stage-by-stage solve
         * with substituted particular solutions could wrongly report failure) */
        const ArtinianAlgebra& A = *l.A;
        const int q = L2.space().dim(-1);
        const int r = L2.space().dim(0);
        const int nm = A.dim_m();
        SpMat M(nm * r, nm * q);
        const SpMat* dblk = L2.cx.d.block(-1);
        for (int rho = 0; rho < nm; ++rho)
            for (int j = 0; j < q; ++j) {
                std::map<int, Rat> acc;
                if (dblk)
                    for (const auto& [row, c] : dblk->col[j]) acc[rho * r + row] += c;
                for (int nu = 0; nu < nm; ++nu) {
                    int mu = A.prod[nu][rho];
                    if (mu < 0 || P.comp[nu].empty()) continue;
                    BracketEntry br = L2.bracket(1, P.comp[nu], -1, sp_unit(j));
                    if (br.overflow)
                        throw WindowError(
                            "z1_sc_member: bracket overflow while assembling the "
                            "triple-overlap solvability system");
                    for (const auto& [row, c] : br.v) acc[mu * r + row] += c;
                }
                M.col[rho * q + j] = to_sp(acc);
            }
        SpVec b;
        for (int mu = 0; mu < nm; ++mu)
            for (const auto& [row, c] : lhs.comp[mu]) b.push_back({mu * r + row, c});
        if (!sp_solve(M, b))
            return {false, "triple-overlap condition has no solution for the correcting element"};
    }
    return {true, ""};
}

H1ScTangent h1_sc_tangent(const SemicosimplicialDgla& G) {
    require(!G.level.empty(), "h1_sc_tangent: no levels");
    for (const auto& g : G.level) {
        Cohomology H = cohomology(g.cx);
        for (const auto& [deg, dm] : H.dims)
            require(deg >= 0 || dm == 0, "h1_sc_tangent: level '" + g.name +
                                             "' has nonzero cohomology in negative degree " +
                                             std::to_string(deg));
    }
    const int nlev = (int)G.level.size();
    const GradedVectorSpace& V0 = G.level[0].space();
    const GradedVectorSpace* V1 = nlev >= 2 ? &G.level[1].space() : nullptr;
    const GradedVectorSpace* V2 = nlev >= 3 ? &G.level[2].space() : nullptr;
    int n0 = V0.dim(1);
    int n1 = V1 ? V1->dim(0) : 0;
    int rows_a = V0.dim(2);
    int rows_b = V1 ? V1->dim(1) : 0;
    int rows_c = V2 ? V2->dim(0) : 0;

    /* canonical reduction mod the image of d : level2^{-1} -> level2^0 */
    Rref R2(rows_c);
    if (V2) {
        const SpMat* din = G.level[2].cx.d.block(-1);
        if (din)
            for (const auto& col : din->col) R2.insert(col);
    }

    SpMat Z(rows_a + rows_b + rows_c, n0 + n1);
    const SpMat* d0 = G.level[0].cx.d.block(1);
    const SpMat* d1 = V1 ? G.level[1].cx.d.block(0) : nullptr;
    const SpMat* e0 = nlev >= 2 ? G.coface[0][0].block(1) : nullptr;
    const SpMat* e1 = nlev >= 2 ? G.coface[0][1].block(1) : nullptr;
    for (int j = 0; j < n0; ++j) {
        std::map<int, Rat> acc;
        if (d0)
            for (const auto& [r, c] : d0->col[j]) acc[r] += c;
        if (e0)
            for (const auto& [r, c] : e0->col[j]) acc[rows_a + r] -= c;
        if (e1)
            for (const auto& [r, c] : e1->col[j]) acc[rows_a + r] += c;
        Z.col[j] = to_sp(acc);
    }
    for (int j = 0; j < n1; ++j) {
        std::map<int, Rat> acc;
        if (d1)
            for (const auto& [r, c] : d1->col[j]) acc[rows_a + r] += c;
        if (V2) {
            std::map<int, Rat> w;
            for (int k = 0; k <= 2; ++k) {
                const SpMat* ek = G.coface[1][k].block(0);
                if (!ek) continue;
                Rat s((k % 2 == 0) ? 1 : -1);
                for (const auto& [r, c] : ek->col[j]) w[r] += s * c;
            }
            SpVec res = R2.reduce(to_sp(w)).residual;
            for (const auto& [r, c] : res) acc[rows_a + rows_b + r] += c;
        }
        Z.col[n0 + j] = to_sp(acc);
    }
    int z_dim = n0 + n1 - sp_rank(Z);

    int a0 = V0.dim(0);
    int a1 = V1 ? V1->dim(-1) : 0;
    SpMat B(n0 + n1, a0 + a1);
    const SpMat* db0 = G.level[0].cx.d.block(0);
    const SpMat* db1 = V1 ? G.level[1].cx.d.block(-1) : nullptr;
    const SpMat* f0 = nlev >= 2 ? G.coface[0][0].block(0) : nullptr;
    const SpMat* f1 = nlev >= 2 ? G.coface[0][1].block(0) : nullptr;
    for (int j = 0; j < a0; ++j) {
        std::map<int, Rat> acc;
        if (db0)
            for (const auto& [r, c] : db0->col[j]) acc[r] -= c;
        if (f1)
            for (const auto& [r, c] : f1->col[j]) acc[n0 + r] += c;
        if (f0)
            for (const auto& [r, c] : f0->col[j]) acc[n0 + r] -= c;
        B.col[j] = to_sp(acc);
    }
    for (int j = 0; j < a1; ++j) {
        std::map<int, Rat> acc;
        if (db1)
            for (const auto& [r, c] : db1->col[j]) acc[n0 + r] += c;
        B.col[a0 + j] = to_sp(acc);
    }
    require(sp_compose(Z, B).is_zero(),
            "h1_sc_tangent: boundary vectors violate the cocycle constraints");
    H1ScTangent out;
    out.z_dim = z_dim;
    out.b_dim = sp_rank(B);
    out.tangent = out.z_dim - out.b_dim;
    return out;
}

/* ================= deformations of an injective morphism ================= */

static void validate_chi(const Dgla& L, const Dgla& M, const LinearMap& chi, const char* fn) {
    require(chi.src.get() == L.cx.space.get() && chi.dst.get() == M.cx.space.get() &&
                chi.degree == 0,
            std::string(fn) + ": morphism does not connect the given algebras");
    require(lm_eq(lm_compose(M.cx.d, chi), lm_compose(chi, L.cx.d)),
            std::string(fn) + ": morphism does not commute with the differentials");
    for (const auto& [i, b] : L.space().basis) {
        if (b.empty()) continue;
        const SpMat* blk = chi.block(i);
        int r = blk ? sp_rank(*blk) : 0;
        require(r == (int)b.size(),
                std::string(fn) + ": morphism is not injective in degree " + std::to_string(i));
    }
}

bool mc_chi_membership(const Dgla& L, const Dgla& M, const LinearMap& chi,
                       const NilpotentElement& a) {
    validate_chi(L, M, chi, "mc_chi_membership");
    require(a.L->cx.space.get() == M.cx.space.get() && a.degree == 0,
            "mc_chi_membership: need a degree-0 element of the target algebra");
    NilpotentElement x = gauge_action(ne_neg(a), ne_zero(M, *a.A, 1));
    Rref R(M.space().dim(1));
    const SpMat* c1 = chi.block(1);
    if (c1)
        for (const auto& col : c1->col) R.insert(col);
    for (const auto& c : x.comp)
        if (!R.contains(c)) return false;
    return true;
}

bool def_chi_equivalence(const Dgla& L, const Dgla& M, const LinearMap& chi,
                         const NilpotentElement& a, const NilpotentElement& a2) {
    validate_chi(L, M, chi, "def_chi_equivalence");
    require(a.A == a2.A && a.A->dim_m() == 1 && a.A->nilpotency_order == 2,
            "def_chi_equivalence: defined over the dual numbers only");
    require(a.L->cx.space.get() == M.cx.space.get() &&
                a2.L->cx.space.get() == M.cx.space.get() && a.degree == 0 && a2.degree == 0,
            "def_chi_equivalence: need degree-0 elements of the target algebra");
    Rref R(M.space().dim(0));
    const SpMat* c0 = chi.block(0);
    if (c0)
        for (const auto& col : c0->col) R.insert(col);
    return R.contains(sp_sub(a.comp[0], a2.comp[0]));
}

int def_chi_tangent(const Dgla& L, const Dgla& M, const LinearMap& chi) {
    validate_chi(L, M, chi, "def_chi_tangent");
    int m0 = M.space().dim(0);
    Rref R1(M.space().dim(1));
    const SpMat* c1 = chi.block(1);
    if (c1)
        for (const auto& col : c1->col) R1.insert(col);
    SpMat rows(M.space().dim(1), m0);
    const SpMat* d0 = M.cx.d.block(0);
    for (int j = 0; j < m0; ++j) {
        SpVec dv = d0 ? d0->col[j] : SpVec{};
        rows.col[j] = R1.reduce(dv).residual;
    }
    int zdim = m0 - sp_rank(rows);
    const SpMat* c0 = chi.block(0);
    return zdim - (c0 ? sp_rank(*c0) : 0);
}

} // namespace defalg
