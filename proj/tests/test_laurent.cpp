#include "doctest.h"

#include "defalg/laurent.hpp"

using namespace defalg;

namespace {

LaurentPoly lp(int nvars, std::initializer_list<std::pair<std::array<int, 2>, Rat>> terms) {
    LaurentPoly f = lp_zero(nvars);
    for (const auto& [e, c] : terms) f.add(e, c);
    return f;
}

VField mono_vf(int nvars, int dir, std::array<int, 2> e, const Rat& c) {
    VField v = vf_zero(nvars);
    v.coef[dir] = lp_mono(nvars, e, c);
    return v;
}

/* the P^1 transition x -> 1/y */
MonomialMap p1_flip() {
    MonomialMap m;
    m.nvars = 1;
    m.expo[0] = {-1, 0};
    return m;
}

} // namespace

TEST_CASE("laurent arithmetic and derivative") {
    LaurentPoly f = lp(2, {{{2, 0}, Rat(1)}, {{0, 2}, Rat(-1)}}); // x^2 - y^2
    LaurentPoly g = lp(2, {{{1, 0}, Rat(1)}, {{0, 1}, Rat(-1)}}); // x - y
    LaurentPoly h = lp(2, {{{1, 0}, Rat(1)}, {{0, 1}, Rat(1)}});  // x + y
    CHECK(lp_eq(lp_mul(g, h), f));
    CHECK(lp_eq(lp_add(f, lp_scale(Rat(-1), f)), lp_zero(2)));
    CHECK(lp_eq(lp_derivative(f, 0), lp(2, {{{1, 0}, Rat(2)}})));
    CHECK(lp_eq(lp_derivative(f, 1), lp(2, {{{0, 1}, Rat(-2)}})));
    /* derivative hits negative exponents too: d/dx x^{-1} = -x^{-2} */
    CHECK(lp_eq(lp_derivative(lp_mono(2, {-1, 0}, Rat(1)), 0), lp_mono(2, {-2, 0}, Rat(-1))));
}

TEST_CASE("principal ideal membership in the Laurent ring") {
    LaurentPoly f = lp(2, {{{2, 0}, Rat(1)}, {{0, 2}, Rat(-1)}}); // x^2 - y^2
    LaurentPoly g = lp(2, {{{1, 0}, Rat(1)}, {{0, 1}, Rat(-1)}}); // x - y
    CHECK(lp_divisible(f, g));
    CHECK(lp_eq(lp_divide_exact(f, g), lp(2, {{{1, 0}, Rat(1)}, {{0, 1}, Rat(1)}})));
    CHECK_FALSE(lp_divisible(g, f));
    /* divisibility in the Laurent ring ignores monomial factors on either side */
    LaurentPoly gshift = lp_mul(g, lp_mono(2, {-3, 1}, Rat(5)));
    CHECK(lp_divisible(f, gshift));
    CHECK(lp_divisible(lp_mul(f, lp_mono(2, {0, -2}, Rat(1))), g));
    /* in particular every monomial is a unit, so (x) contains everything */
    CHECK(lp_divisible(lp_const(2, Rat(1)), lp_mono(2, {1, 0}, Rat(1))));
}

TEST_CASE("monomial substitution and its inverse") {
    MonomialMap m = p1_flip();
    LaurentPoly p = lp(1, {{{3, 0}, Rat(2)}, {{0, 0}, Rat(1)}}); // 2x^3 + 1
    LaurentPoly q = lp_subst(p, m);                              // 2y^{-3} + 1
    CHECK(lp_eq(q, lp(1, {{{-3, 0}, Rat(2)}, {{0, 0}, Rat(1)}})));
    CHECK(lp_eq(lp_subst(q, mm_inverse(m)), p));
}

TEST_CASE("vector field transport across the P^1 flip") {
    MonomialMap m = p1_flip();
    /* x^k d/dx = -y^{2-k} d/dy after x -> 1/y */
    for (int k = 0; k <= 3; ++k) {
        VField v = mono_vf(1, 0, {k, 0}, Rat(1));
        CHECK(vf_eq(vf_transport(v, m), mono_vf(1, 0, {2 - k, 0}, Rat(-1))));
    }
    /* transport is a Lie algebra map: check on [x d/dx, x^3 d/dx] = 2 x^3 d/dx */
    VField a = mono_vf(1, 0, {1, 0}, Rat(1));
    VField b = mono_vf(1, 0, {3, 0}, Rat(1));
    CHECK(vf_eq(vf_bracket(a, b), mono_vf(1, 0, {3, 0}, Rat(2))));
    CHECK(vf_eq(vf_transport(vf_bracket(a, b), m),
                vf_bracket(vf_transport(a, m), vf_transport(b, m))));
}

TEST_CASE("vector fields act as derivations") {
    /* theta(f) for theta = x d/dx + y d/dy is the degree-weighted sum */
    VField euler = vf_add(mono_vf(2, 0, {1, 0}, Rat(1)), mono_vf(2, 1, {0, 1}, Rat(1)));
    LaurentPoly f = lp(2, {{{2, 1}, Rat(1)}, {{0, 0}, Rat(7)}});
    CHECK(lp_eq(vf_apply(euler, f), lp(2, {{{2, 1}, Rat(3)}})));

    /* two-variable transport: u = 1/x, v = y/x sends d/du to -x^2 d/dx - xy d/dy */
    MonomialMap m;
    m.nvars = 2;
    m.expo = {{{-1, 0}, {-1, 1}}};
    VField du = mono_vf(2, 0, {0, 0}, Rat(1));
    VField expect =
        vf_add(mono_vf(2, 0, {2, 0}, Rat(-1)), mono_vf(2, 1, {1, 1}, Rat(-1)));
    CHECK(vf_eq(vf_transport(du, m), expect));
    /* and d/dv to x d/dy */
    CHECK(vf_eq(vf_transport(mono_vf(2, 1, {0, 0}, Rat(1)), m), mono_vf(2, 1, {1, 0}, Rat(1))));
}
