#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "defalg/rational.hpp"

namespace defalg {

/* Local Artinian Q-algebra presented as a monomial staircase quotient
 * A = Q[t_1..t_g]/I with I a monomial ideal; the stored basis is the set of
 * nonconstant standard monomials (a basis of the maximal ideal m_A).
 * Products of basis monomials are again basis monomials or zero. */
struct ArtinianAlgebra {
    std::vector<std::string> gens;              // generator names, size g
    std::vector<std::vector<int>> mono;         // m_A basis exponent vectors, graded-lex order
    std::string name;                           // printable description
    int nilpotency_order = 1;                   // smallest N with m_A^N = 0
    std::vector<std::vector<int>> prod;         // prod[i][j] = index of mono_i*mono_j, or -1 (zero)

    int dim_m() const { return (int)mono.size(); }

    int mono_index(const std::vector<int>& e) const {
        auto it = lookup.find(e);
        return it == lookup.end() ? -1 : it->second;
    }

    static ArtinianAlgebra from_staircase(std::vector<std::string> gens,
                                          std::vector<std::vector<int>> staircase,
                                          std::string name);

    std::map<std::vector<int>, int> lookup;     // exponent vector -> index
};

ArtinianAlgebra make_dual_numbers();
/* Q[t]/(t^order), order >= 2. */
ArtinianAlgebra make_truncated_poly(int order);

/* Element of an ArtinianAlgebra: c0*1 + sum coeffs[k]*mono_k. */
struct ArtinElem {
    const ArtinianAlgebra* A = nullptr;
    Rat c0;
    std::vector<Rat> cm;

    explicit ArtinElem(const ArtinianAlgebra& alg) : A(&alg), c0(0), cm(alg.dim_m(), Rat(0)) {}
    bool is_zero() const;
    bool in_max_ideal() const { return c0 == 0; }
};

ArtinElem artin_add(const ArtinElem& a, const ArtinElem& b);
ArtinElem artin_sub(const ArtinElem& a, const ArtinElem& b);
ArtinElem artin_scale(const Rat& c, const ArtinElem& a);
ArtinElem artin_mul(const ArtinElem& a, const ArtinElem& b);
std::string artin_str(const ArtinElem& a);

} // namespace defalg
