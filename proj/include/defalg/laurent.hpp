#pragma once

#include <array>
#include <map>
#include <string>

#include "defalg/rational.hpp"

namespace defalg {

/* Sparse Laurent polynomial in 1 or 2 variables over Q.
 * Exponent keys are std::array<int,2>; with nvars == 1 the second entry is 0. */
struct LaurentPoly {
    int nvars = 1;
    std::map<std::array<int, 2>, Rat> terms;

    bool is_zero() const { return terms.empty(); }
    void add(std::array<int, 2> e, const Rat& c);
};

LaurentPoly lp_zero(int nvars);
LaurentPoly lp_const(int nvars, const Rat& c);
LaurentPoly lp_mono(int nvars, std::array<int, 2> e, const Rat& c);
LaurentPoly lp_add(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly lp_sub(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly lp_scale(const Rat& c, const LaurentPoly& a);
LaurentPoly lp_mul(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly lp_derivative(const LaurentPoly& a, int var);
bool lp_eq(const LaurentPoly& a, const LaurentPoly& b);
std::string lp_str(const LaurentPoly& a, const std::array<std::string, 2>& names);

/* true iff g lies in the principal ideal (f); exact, clears Laurent
 * denominators then runs multivariate division by the single divisor f */
bool lp_divisible(const LaurentPoly& g, const LaurentPoly& f);
/* quotient g/f when lp_divisible; throws otherwise */
LaurentPoly lp_divide_exact(const LaurentPoly& g, const LaurentPoly& f);

/* Polynomial vector field v = sum_i coef[i] * d/dx_i with Laurent coefficients. */
struct VField {
    int nvars = 1;
    std::array<LaurentPoly, 2> coef;
};

VField vf_zero(int nvars);
VField vf_add(const VField& a, const VField& b);
VField vf_scale(const Rat& c, const VField& a);
bool vf_eq(const VField& a, const VField& b);
bool vf_is_zero(const VField& a);
/* Lie bracket of vector fields: [v,w](x_j) = v(w_j) - w(v_j) */
VField vf_bracket(const VField& a, const VField& b);
/* apply as derivation: v(f) = sum_i coef_i * df/dx_i */
LaurentPoly vf_apply(const VField& v, const LaurentPoly& f);
std::string vf_str(const VField& v, const std::array<std::string, 2>& names);

/* Invertible monomial change of coordinates: old coordinate i equals
 * coef[i] * prod_j newvar_j^{expo[i][j]}.  The exponent matrix must lie in
 * GL(n,Z) so the inverse map is again monomial. */
struct MonomialMap {
    int nvars = 1;
    std::array<Rat, 2> coef{1, 1};
    std::array<std::array<int, 2>, 2> expo{{{1, 0}, {0, 1}}};
};

MonomialMap mm_identity(int nvars);
MonomialMap mm_inverse(const MonomialMap& m);
/* substitute: result(y) = f(x(y)) */
LaurentPoly lp_subst(const LaurentPoly& f, const MonomialMap& m);
/* push a vector field through the coordinate change (chain rule) */
VField vf_transport(const VField& v, const MonomialMap& m);

} // namespace defalg
