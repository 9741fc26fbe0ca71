#pragma once

#include <array>
#include <memory>

#include "defalg/apl.hpp"
#include "defalg/dgla.hpp"

namespace defalg {

/* ---- semicosimplicial objects ----
 * level[n] for n = 0..N; coface[n][k] : level[n] -> level[n+1] for k = 0..n+1,
 * subject to the identities  d_l d_k = d_{k+1} d_l  (l <= k). */
struct SemicosimplicialComplex {
    std::string name;
    std::vector<CochainComplex> level;
    std::vector<std::vector<LinearMap>> coface;
};

struct SemicosimplicialDgla {
    std::string name;
    std::vector<Dgla> level;
    std::vector<std::vector<LinearMap>> coface;

    SemicosimplicialComplex underlying() const;
};

struct ScReport {
    long identities_checked = 0;
    long chain_maps_checked = 0;
    long bracket_pairs_checked = 0;
    long bracket_pairs_skipped = 0; // overflow on either side: counted, never guessed
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

ScReport check_semicosimplicial(const SemicosimplicialComplex& S);
ScReport check_semicosimplicial_dgla(const SemicosimplicialDgla& G);

/* chain map + bracket preservation (pairs with overflow on either side are skipped) */
bool is_dgla_morphism(const Dgla& L, const Dgla& M, const LinearMap& chi,
                      std::string* why = nullptr);

/* the two-level object (L, M, 0, ...) with coface_0 = chi and coface_1 = 0 */
SemicosimplicialDgla from_morphism(const Dgla& L, const Dgla& M, const LinearMap& chi,
                                   const std::string& name);

/* ---- total complex: degree of v in V_n^i is i+n,
 * D(v) = (-1)^n d(v) + sum_k (-1)^k coface_k(v) ---- */
struct TotResult {
    CochainComplex cx;
    /* (level n, total degree p) -> offset of the V_n^{p-n} block inside the
     * basis of cx at degree p; absent when that block is empty */
    std::map<std::pair<int, int>, int> offset;
};

TotResult tot(const SemicosimplicialComplex& S, const std::string& name);

/* ---- Thom-Whitney totalization ---- */

/* ambient graded space (+)_n V_n (x) Apl(n, cap); basis entries are
 * (n, i, vi, ai): level n, V-degree i, basis index vi in level[n] at degree i,
 * index ai into the Apl(n) monomial basis (form degree = total degree - i) */
struct TwAmbient {
    int cap = 0;
    std::vector<std::vector<AplMono>> apl;              // per level n
    std::vector<std::map<AplMono, int>> apl_index;      // monomial -> index, per level
    std::map<int, std::vector<std::array<int, 4>>> basis; // total degree -> entries
    std::map<int, std::map<std::array<int, 4>, int>> index;

    int dim(int p) const {
        auto it = basis.find(p);
        return it == basis.end() ? 0 : (int)it->second.size();
    }
};
using TwAmbientPtr = std::shared_ptr<const TwAmbient>;

/* the matching subspace { (x_n) : (Id (x) face_k) x_n = (coface_k (x) Id) x_{n-1} }
 * of the ambient, with the componentwise differential
 * D(v (x) w) = dv (x) w + (-1)^{|v|} v (x) dw */
struct TwComplex {
    CochainComplex cx; // abstract basis "p<p>_<j>"
    TwAmbientPtr amb;
    std::map<int, SpMat> embed;                       // degree -> ambient_dim x dim
    std::shared_ptr<std::map<int, Rref>> basis_rref;  // span of the embedded basis

    /* coordinates of an ambient vector over the embedded basis; throws Error
     * if the vector is outside the subspace */
    SpVec coords(int p, const SpVec& ambient_vec) const;
};

TwComplex tot_tw(const SemicosimplicialComplex& S, int cap, const std::string& name);

/* DGLA version: componentwise bracket
 * [v (x) a, w (x) b] = (-1)^{|a||w|} [v,w] (x) ab; entries whose Apl part
 * leaves the cap, or whose level bracket overflows, are overflow entries */
struct TwDgla {
    Dgla dgla;
    TwAmbientPtr amb;
    std::map<int, SpMat> embed;
    std::shared_ptr<std::map<int, Rref>> basis_rref;

    SpVec coords(int p, const SpVec& ambient_vec) const;
    TwComplex complex_view() const { return TwComplex{dgla.cx, amb, embed, basis_rref}; }
};

TwDgla tot_tw_dgla(const SemicosimplicialDgla& G, int cap, const std::string& name);

/* push a levelwise degree-0 chain map phi[n] : src level n -> dst level n
 * (commuting with cofaces) to a map between the Thom-Whitney totalizations */
LinearMap tw_push_morphism(const std::vector<LinearMap>& phi, const TwComplex& src,
                           const TwComplex& dst);

/* ---- nonabelian cocycle functor of a semicosimplicial DGLA ----
 * pairs (l, m), l in level0^1 (x) m_A, m in level1^0 (x) m_A, subject to
 *  (1) dl + (1/2)[l,l] = 0
 *  (2) coface_1 l = e^m * (coface_0 l)
 *  (3) bch(coface_0 m, -coface_1 m, coface_2 m) = dn + [coface_2 coface_0 l, n]
 *      solvable for n in level2^{-1} (x) m_A, order by order in m_A */
struct Z1Report {
    bool member = false;
    std::string reason; // failed condition and witness, empty when member
};

Z1Report z1_sc_member(const SemicosimplicialDgla& G, const NilpotentElement& l,
                      const NilpotentElement& m);

/* linearisation over the dual numbers:
 * Z = { (l,m) : dl = 0, dm = (coface_0 - coface_1) l,
 *               (coface_0 - coface_1 + coface_2) m in im(d) },
 * B = image of (a,b) -> (-da, (coface_1 - coface_0) a + db),
 * tangent = dim Z - dim B.  Requires H^k(level) = 0 for k < 0 at every level. */
struct H1ScTangent {
    int z_dim = 0;
    int b_dim = 0;
    int tangent = 0;
};

H1ScTangent h1_sc_tangent(const SemicosimplicialDgla& G);

/* ---- deformations of an injective DGLA morphism chi : L -> M ----
 * membership: e^{-a} * 0 lands in chi(L^1) componentwise */
bool mc_chi_membership(const Dgla& L, const Dgla& M, const LinearMap& chi,
                       const NilpotentElement& a);
/* first order (dual numbers): a ~ a' iff a - a' lies in chi(L^0) */
bool def_chi_equivalence(const Dgla& L, const Dgla& M, const LinearMap& chi,
                         const NilpotentElement& a, const NilpotentElement& a2);
/* dim { v in M^0 : dv in chi(L^1) } - dim chi(L^0) */
int def_chi_tangent(const Dgla& L, const Dgla& M, const LinearMap& chi);

/* ---- nilpotent-element helpers shared by the functors ---- */
NilpotentElement ne_zero(const Dgla& L, const ArtinianAlgebra& A, int degree);
NilpotentElement ne_neg(const NilpotentElement& x);
/* apply a degree-0 chain map to every m_A component */
NilpotentElement ne_apply(const LinearMap& f, const Dgla& target, const NilpotentElement& x);

} // namespace defalg
