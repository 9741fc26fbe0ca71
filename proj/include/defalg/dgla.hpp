#pragma once

#include <optional>
#include <tuple>

#include "defalg/artinian.hpp"
#include "defalg/graded.hpp"

namespace defalg {

/* Bracket of two basis vectors: either an exact sparse result or an overflow
 * marker (result not representable in the constructed basis; never projected). */
struct BracketEntry {
    bool overflow = false;
    SpVec v;
};

/* Differential graded Lie algebra with explicit structure constants.
 * Both orientations of every nonzero pair are stored, so graded skewsymmetry is
 * a checkable property of the data rather than an artifact of storage. */
struct Dgla {
    std::string name;
    CochainComplex cx;
    /* (deg_a, deg_b) -> row-major (dim_a x dim_b) entries */
    std::map<std::pair<int, int>, std::vector<BracketEntry>> table;

    const GradedVectorSpace& space() const { return *cx.space; }

    BracketEntry bracket_basis(int da, int ia, int db, int ib) const {
        auto it = table.find({da, db});
        if (it == table.end()) return {};
        return it->second[(size_t)ia * space().dim(db) + ib];
    }

    /* bracket of degree-homogeneous coordinate vectors; overflow flag propagates */
    BracketEntry bracket(int da, const SpVec& a, int db, const SpVec& b) const;
};

/* convenience builder for hand examples */
class DglaBuilder {
  public:
    DglaBuilder(std::string name, std::map<int, std::vector<std::string>> basis);
    /* d(label) = sum coeff * target_label */
    DglaBuilder& d(const std::string& from, const std::vector<std::pair<std::string, Rat>>& to);
    /* sets [a,b] and the skew-derived [b,a]; result labels must share one degree */
    DglaBuilder& bracket(const std::string& a, const std::string& b,
                         const std::vector<std::pair<std::string, Rat>>& val);
    /* sets only [a,b] (for corruption tests) */
    DglaBuilder& bracket_oneside(const std::string& a, const std::string& b,
                                 const std::vector<std::pair<std::string, Rat>>& val);
    Dgla build();

  private:
    std::string name_;
    SpacePtr space_;
    std::map<std::string, std::pair<int, int>> where_; // label -> (degree, index)
    std::map<int, SpMat> dblocks_;
    std::map<std::pair<int, int>, std::vector<BracketEntry>> table_;
    std::pair<int, int> loc(const std::string& l) const;
    void set_entry(int da, int ia, int db, int ib, SpVec v);
};

struct AxiomReport {
    long pairs_checked = 0, pairs_skipped = 0;
    long triples_checked = 0, triples_skipped = 0;
    std::vector<std::string> violations; // human-readable witnesses (capped)
    bool ok() const { return violations.empty(); }
};

/* exhaustive basis-level graded skewsymmetry, Leibniz and Jacobi checks;
 * pairs/triples touching overflow entries are counted as skipped, never guessed */
AxiomReport check_dgla_axioms(const Dgla& L);

/* L (x) B for a finite-dimensional commutative algebra B = Q.1 (+) m_B
 * (an ArtinianAlgebra); labels are "l*1", "l*mono". */
Dgla tensor_with_algebra(const Dgla& L, const ArtinianAlgebra& B, const std::string& name);

/* Element of L^degree (x) m_A: one coordinate vector per m_A basis monomial. */
struct NilpotentElement {
    const Dgla* L = nullptr;
    const ArtinianAlgebra* A = nullptr;
    int degree = 0;
    std::vector<SpVec> comp; // index: m_A monomial

    NilpotentElement(const Dgla& l, const ArtinianAlgebra& a, int deg)
        : L(&l), A(&a), degree(deg), comp(a.dim_m()) {}
    bool is_zero() const {
        for (const auto& c : comp)
            if (!c.empty()) return false;
        return true;
    }
};

NilpotentElement ne_add(const NilpotentElement& x, const NilpotentElement& y);
NilpotentElement ne_sub(const NilpotentElement& x, const NilpotentElement& y);
NilpotentElement ne_scale(const Rat& c, const NilpotentElement& x);
/* multiply by an m_A element (degree unchanged) */
NilpotentElement ne_mul_artin(const ArtinElem& s, const NilpotentElement& x);
bool ne_eq(const NilpotentElement& x, const NilpotentElement& y);
NilpotentElement ne_d(const NilpotentElement& x);
NilpotentElement ne_bracket(const NilpotentElement& x, const NilpotentElement& y);

/* dx + (1/2)[x,x] for degree-1 x */
NilpotentElement mc_residual(const NilpotentElement& x);
/* Baker-Campbell-Hausdorff product of degree-0 elements (Dynkin expansion,
 * exact, terminates by nilpotency) */
NilpotentElement bch(const NilpotentElement& a, const NilpotentElement& b);
/* e^a * x = x + sum_{n>=0} ad_a^n/(n+1)! ([a,x] - da) */
NilpotentElement gauge_action(const NilpotentElement& a, const NilpotentElement& x);

/* dim H^1 */
int tangent_def(const Dgla& L);

/* both x,y degree-1 Maurer-Cartan over K[eps]; true iff x - y = da */
bool is_first_order_gauge_equivalent(const Dgla& L, const NilpotentElement& x, const NilpotentElement& y);

struct LiftResult {
    bool lifted = false;
    std::shared_ptr<ArtinianAlgebra> base; // K[t]/(t^n), owns the ring x lives over
    std::optional<NilpotentElement> x;     // full solution when lifted
    int obstruction_order = 0;             // first order with unsolvable step
    SpVec obstruction_class;               // coordinates over the H^2 representative classes
    std::string note;
};

/* extend a first-order Maurer-Cartan solution x1 (coords in L^1) from K[eps] to
 * K[t]/(t^n) order by order */
LiftResult lift_order_by_order(const Dgla& L, const SpVec& x1, int n);

} // namespace defalg
