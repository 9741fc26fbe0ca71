#pragma once

#include <optional>

#include "defalg/bisimplicial.hpp"
#include "defalg/laurent.hpp"

namespace defalg {

/* ---- affine charts of the standard cover of P^n (n = 1 or 2) ----
 * Chart i carries the coordinates X_a/X_i for a != i, in ascending order of a.
 * to[j] expresses this chart's coordinates as rational monomials in chart j's,
 * so lp_subst(f, to[j]) rewrites a function from chart i to chart j and
 * vf_transport(v, to[j]) rewrites a vector field. */
struct Chart {
    int index = 0;
    int nvars = 1;
    std::array<int, 2> ratio{};       // variable v of this chart is X_{ratio[v]} / X_index
    std::array<std::string, 2> names; // "t<a>" with a = ratio[v]
    std::map<int, MonomialMap> to;
};

/* the n+1 charts of P^n; transitions verified to be pairwise inverse and
 * consistent around every triple overlap (on coordinate generators) */
std::vector<Chart> standard_cover(int n);

/* position of the variable X_a/X_index inside chart c, or -1 */
int chart_var(const Chart& c, int a);

/* variables of chart c that are invertible on the overlap of the charts in I
 * (the ratio X_a/X_index is a unit exactly when a lies in I) */
std::array<bool, 2> inverted_mask(const Chart& c, const std::vector<int>& I);

/* ---- hypersurface Z = V(F) with F homogeneous of degree d in X0..Xn ---- */
struct SubschemeIdeal {
    int proj_dim = 1;
    int degree = 0;
    std::map<std::array<int, 3>, Rat> F; // exponents of (X0, X1, X2) -> coefficient
    std::vector<LaurentPoly> dehom;      // f_i = F|_{X_i = 1} in chart i coordinates
    std::string coordinate_change;       // recorded substitution; empty when none applied
};

/* parse text like "X0^2 - 3/2*X1*X2" (the '*' may be omitted); rejects zero,
 * inhomogeneous input, and variables beyond X{proj_dim} */
SubschemeIdeal parse_subscheme(const std::string& text, int proj_dim);

/* true iff f_i is nonconstant, i.e. Z meets chart i */
bool subscheme_meets_chart(const SubschemeIdeal& Z, int i);

/* when some f_i is constant, applies the first member of a deterministic
 * family of rational linear substitutions that makes every f_i nonconstant
 * and records it in coordinate_change; otherwise returns Z unchanged */
SubschemeIdeal ensure_meets_all_charts(const SubschemeIdeal& Z);

/* membership of g in the ideal generated by f inside the coordinate ring of
 * an overlap, where the variables flagged in `inverted` are units; decided by
 * exact division after stripping unit monomial factors */
bool overlap_ideal_member(const LaurentPoly& g, const LaurentPoly& f,
                          const std::array<bool, 2>& inverted);

/* ---- windowed section spaces ----
 * Vector fields on the overlap U_I, I = (i_0 < ... < i_k), expressed in
 * the coordinates of the chart of record i_0; a Laurent monomial coefficient
 * is admissible when its negative exponents sit only on variables that are
 * invertible on U_I (checked redundantly in every chart of I by transport). */
struct WindowedSections {
    std::vector<int> index;
    int record = 0;
    int window = 0;
    std::vector<VField> basis;
};

/* all admissible monomial fields with exponents in [-w, w]^n */
WindowedSections theta_sections(const std::vector<Chart>& charts, const std::vector<int>& I,
                                int w);
/* the subspace of theta_sections with theta(f) in (f), solved exactly as one
 * linear system over the monomial coefficients */
WindowedSections log_theta_sections(const std::vector<Chart>& charts, const std::vector<int>& I,
                                    const SubschemeIdeal& Z, int w);

enum class SheafKind { theta, log_theta };

/* ---- Cech slot: the section space attached to one multi-index ----
 * support lists the admissible monomial fields (direction, e0, e1) spanning
 * the slot; the slot basis is the support itself for the full tangent sheaf
 * and the solved ideal-preserving subspace for the log sheaf. Supports are
 * closed under the restriction maps of the cover: singleton charts carry the
 * polynomial box [0,w]^n and every deeper overlap carries exactly the union
 * of the restriction images of the level above. */
struct CechSlot {
    std::vector<int> index;
    int record = 0;
    int offset = 0;                          // first coordinate inside the level space
    std::vector<std::array<int, 3>> support; // (direction, e0, e1), sorted
    std::map<std::array<int, 3>, int> pos;
    std::vector<VField> basis;
    SpMat basis_coords;          // support-dim x basis-dim
    std::shared_ptr<Rref> span;  // of the basis columns, in support coordinates
};

/* coordinates of v over the slot basis; nullopt when v leaves the support or
 * the spanned subspace */
std::optional<SpVec> slot_coords(const CechSlot& s, const VField& v);
/* the field with the given slot coordinates */
VField slot_field(const CechSlot& s, const SpVec& coords);

struct CechLie {
    SheafKind kind = SheafKind::theta;
    int w = 0;
    SemicosimplicialDgla sc;
    std::vector<std::vector<CechSlot>> slots; // [level][slot]; always 3 levels
};

/* the Cech semicosimplicial Lie algebra of Theta (or Theta(-log Z)) on the
 * standard cover: level k is the product over (k+1)-fold overlaps of the
 * windowed section Lie algebras (degree 0), coface k drops index k and
 * restricts; Z may be null for SheafKind::theta */
CechLie cech_lie_layout(SheafKind kind, const std::vector<Chart>& charts,
                        const SubschemeIdeal* Z, int w, const std::string& name);
SemicosimplicialDgla cech_lie(SheafKind kind, const std::vector<Chart>& charts,
                              const SubschemeIdeal* Z, int w, const std::string& name);

/* abelian Cech object of the line bundle O(d) on P^1: chart data are
 * polynomials of degree <= w, glued over the overlap by p(x) = x^d q(1/x) */
SemicosimplicialComplex line_bundle_cech(const std::vector<Chart>& charts, int d, int w,
                                         const std::string& name);

/* ---- the two-column grid of the inclusion Theta(-log Z) -> Theta ----
 * horizontal levels: (log sheaf, full sheaf, 0); hface_0 = inclusion,
 * hface_1 = 0; vertical levels: the Cech levels of the cover */
struct ChiGrid {
    BisemicosimplicialDgla grid;
    CechLie log_col;
    CechLie theta_col;
};

ChiGrid chi_grid(const SubschemeIdeal& Z, const std::vector<Chart>& charts, int w,
                 const std::string& name);
BisemicosimplicialDgla chi_bisemicosimplicial(const SubschemeIdeal& Z,
                                              const std::vector<Chart>& charts, int w,
                                              const std::string& name);

/* cohomology dimensions of tot(Cech complex), recomputed at window w+2;
 * throws when the two windows disagree (unstable window) */
std::map<int, int> cech_cohomology_stable(SheafKind kind, const std::vector<Chart>& charts,
                                          const SubschemeIdeal* Z, int w);

} // namespace defalg
