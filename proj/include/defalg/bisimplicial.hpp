#pragma once

#include "defalg/simplicial.hpp"

namespace defalg {

/* ---- bisemicosimplicial objects ----
 * level[n][m] for 0 <= n <= N (horizontal index) and 0 <= m <= M (vertical);
 * hface[n][m][s] : level[n][m] -> level[n+1][m] for s = 0..n+1 (n = 0..N-1),
 * vface[n][m][k] : level[n][m] -> level[n][m+1] for k = 0..m+1 (m = 0..M-1).
 * Every row and every column is semicosimplicial (d_l d_k = d_{k+1} d_l for
 * l <= k), and every mixed square commutes: vface_k hface_s = hface_s vface_k.
 * hface is empty when N = 0, vface is empty when M = 0. */
struct BisemicosimplicialComplex {
    std::string name;
    std::vector<std::vector<CochainComplex>> level;
    std::vector<std::vector<std::vector<LinearMap>>> hface;
    std::vector<std::vector<std::vector<LinearMap>>> vface;
};

struct BisemicosimplicialDgla {
    std::string name;
    std::vector<std::vector<Dgla>> level;
    std::vector<std::vector<std::vector<LinearMap>>> hface;
    std::vector<std::vector<std::vector<LinearMap>>> vface;

    BisemicosimplicialComplex underlying() const;
};

ScReport check_bisemicosimplicial(const BisemicosimplicialComplex& B);
ScReport check_bisemicosimplicial_dgla(const BisemicosimplicialDgla& G);

/* the row at vertical index m (levels level[.][m], horizontal cofaces) and
 * the column at horizontal index n (levels level[n][.], vertical cofaces) */
SemicosimplicialComplex bisc_row(const BisemicosimplicialComplex& B, int m);
SemicosimplicialComplex bisc_column(const BisemicosimplicialComplex& B, int n);
SemicosimplicialDgla bisc_row_dgla(const BisemicosimplicialDgla& G, int m);
SemicosimplicialDgla bisc_column_dgla(const BisemicosimplicialDgla& G, int n);

/* totalize every row; the vertical cofaces act componentwise on the row
 * totalizations, giving a semicosimplicial object indexed by m */
SemicosimplicialComplex tot_h_delta(const BisemicosimplicialComplex& B, const std::string& name);
/* mirror image: totalize every column, indexed by n */
SemicosimplicialComplex tot_v_delta(const BisemicosimplicialComplex& B, const std::string& name);

/* ---- triple total complex: deg(v in V_{n,m}^i) = i + n + m,
 * D(v) = (-1)^{n+m} d(v) + sum_s (-1)^{s+m} hface_s(v) + sum_k (-1)^k vface_k(v) */
struct TriTotResult {
    CochainComplex cx;
    /* (n, m, total degree p) -> offset of the V_{n,m}^{p-n-m} block inside the
     * basis of cx at degree p; absent when that block is empty */
    std::map<std::tuple<int, int, int>, int> offset;
};

TriTotResult tot_triangle(const BisemicosimplicialComplex& B, const std::string& name);

/* ---- Thom-Whitney totalization of the whole grid ----
 * ambient graded space (+)_{n,m} V_{n,m} (x) Apl(n, cap) (x) Apl(m, cap);
 * basis entries are (n, m, i, vi, ai, bi): grid position, V-degree i, basis
 * index vi in level[n][m] at degree i, and indices ai / bi into the
 * horizontal / vertical Apl monomial bases (the cohomological degree is
 * i + form degree of ai + form degree of bi) */
struct TriTwAmbient {
    int cap = 0;
    std::vector<std::vector<AplMono>> hapl, vapl;
    std::vector<std::map<AplMono, int>> hapl_index, vapl_index;
    std::map<int, std::vector<std::array<int, 6>>> basis; // total degree -> entries
    std::map<int, std::map<std::array<int, 6>, int>> index;

    int dim(int p) const {
        auto it = basis.find(p);
        return it == basis.end() ? 0 : (int)it->second.size();
    }
};
using TriTwAmbientPtr = std::shared_ptr<const TriTwAmbient>;

/* the subspace cut out by the horizontal matching family
 *   (Id (x) face_s (x) Id) x_{n,m} = (hface_s (x) Id (x) Id) x_{n-1,m}
 * together with the vertical one
 *   (Id (x) Id (x) face_k) x_{n,m} = (vface_k (x) Id (x) Id) x_{n,m-1},
 * carrying the componentwise differential and bracket
 *   D(v (x) a (x) b)  = dv (x) a (x) b + (-1)^{|v|} v (x) da (x) b
 *                       + (-1)^{|v|+|a|} v (x) a (x) db,
 *   [v (x) a (x) b, w (x) a' (x) b']
 *     = (-1)^{(|a|+|b|)|w| + |b||a'|} [v,w] (x) aa' (x) bb' */
struct TriTwDgla {
    Dgla dgla;
    TriTwAmbientPtr amb;
    std::map<int, SpMat> embed;                      // degree -> ambient_dim x dim
    std::shared_ptr<std::map<int, Rref>> basis_rref; // span of the embedded basis

    /* coordinates of an ambient vector over the embedded basis; throws Error
     * if the vector is outside the subspace */
    SpVec coords(int p, const SpVec& ambient_vec) const;
};

TriTwDgla tot_tw_triangle(const BisemicosimplicialDgla& G, int cap, const std::string& name);

/* exact coincidence of the three Thom-Whitney orders -- whole grid at once,
 * rows first, columns first -- under the canonical identification of the
 * ambient tensor bases (columns-first entries pick up the braiding sign
 * (-1)^{|a||b|}): equal subspaces, equal differentials, and equal structure
 * constants.  Bracket pairs that overflow the cap on either side carry no
 * exact value and are skipped. */
bool tw_orders_coincide(const BisemicosimplicialDgla& G, int cap, std::string* why = nullptr);

} // namespace defalg
