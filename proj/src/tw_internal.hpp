#pragma once

/* Internals shared by the Thom-Whitney totalizations of semicosimplicial and
 * bisemicosimplicial objects: per-level monomial tables for the polynomial
 * forms on the simplices, dt-product sign bookkeeping, and small helpers. */

#include <map>

#include "defalg/simplicial.hpp"

namespace defalg::twdetail {

/* per-level monomial tables for the polynomial forms on the simplices */
struct AplTables {
    std::vector<std::vector<AplMono>> mono;
    std::vector<std::map<AplMono, int>> index;
    std::vector<std::vector<std::vector<int>>> by_form; // [n][f] = monomial ids, ascending
    std::vector<std::vector<int>> form_pos;             // [n][ai] = position inside its form list
    /* face[n][k][ai] = face_k of monomial ai at level n, expanded over level n-1 ids */
    std::vector<std::vector<std::vector<std::vector<std::pair<int, Rat>>>>> face;
};

inline AplTables build_apl_tables(int N, int cap) {
    AplTables T;
    T.mono.resize(N + 1);
    T.index.resize(N + 1);
    T.by_form.resize(N + 1);
    T.form_pos.resize(N + 1);
    T.face.resize(N + 1);
    for (int n = 0; n <= N; ++n) {
        T.mono[n] = apl_basis(n, cap);
        T.by_form[n].assign(n + 1, {});
        T.form_pos[n].resize(T.mono[n].size());
        for (int ai = 0; ai < (int)T.mono[n].size(); ++ai) {
            T.index[n][T.mono[n][ai]] = ai;
            int f = T.mono[n][ai].form_degree();
            T.form_pos[n][ai] = (int)T.by_form[n][f].size();
            T.by_form[n][f].push_back(ai);
        }
        if (n >= 1) {
            T.face[n].assign(n + 1, {});
            for (int k = 0; k <= n; ++k) {
                T.face[n][k].resize(T.mono[n].size());
                for (int ai = 0; ai < (int)T.mono[n].size(); ++ai) {
                    AplForm f{n, {}};
                    f.add(T.mono[n][ai], Rat(1));
                    for (const auto& [mm, c] : apl_face(f, k).terms)
                        T.face[n][k][ai].push_back({T.index[n - 1].at(mm), c});
                }
            }
        }
    }
    return T;
}

/* sign of sorting the concatenation of two ascending dt-mask factors */
inline int dt_merge_sign(uint32_t a, uint32_t b) {
    int inv = 0;
    for (uint32_t m = b; m;) {
        int bit = __builtin_ctz(m);
        m &= m - 1;
        inv += __builtin_popcount(a >> (bit + 1));
    }
    return (inv % 2 == 0) ? 1 : -1;
}

inline SpVec to_sp(std::map<int, Rat>& acc) {
    SpVec out;
    for (auto& [r, c] : acc)
        if (c != 0) out.push_back({r, c});
    return out;
}

inline SpVec tw_coords(const std::map<int, Rref>& rref, int p, const SpVec& v) {
    if (v.empty()) return {};
    auto it = rref.find(p);
    require(it != rref.end(),
            "coords: no matching-subspace basis in degree " + std::to_string(p));
    auto c = it->second.coords(v);
    require(c.has_value(),
            "coords: vector lies outside the matching subspace in degree " + std::to_string(p));
    return *c;
}

} // namespace defalg::twdetail

namespace defalg {
/* phi([x,y]) == [phi x, phi y] on every basis pair of L; pairs with an overflow
 * on either side are skipped and counted (defined in simplicial.cpp) */
void check_bracket_preservation(const Dgla& L, const Dgla& M, const LinearMap& phi,
                                const std::string& where, ScReport& rep);
} // namespace defalg
