#include "doctest.h"

#include "defalg/dgla.hpp"
#include "support.hpp"

using namespace defalg;
using namespace testsupport;

namespace {

NilpotentElement unit_ne(const Dgla& L, const ArtinianAlgebra& A, int deg, int mono, int idx,
                         Rat c = Rat(1)) {
    NilpotentElement x(L, A, deg);
    x.comp[mono] = sp_unit(idx, c);
    return x;
}

} // namespace

TEST_CASE("axiom checker accepts valid algebras") {
    SpacePtr v = make_space("ab", {{1, {"a", "b"}}});
    Dgla abelian = DglaBuilder("abelian", {{1, {"a", "b"}}}).build();
    CHECK(check_dgla_axioms(abelian).ok());
    CHECK(check_dgla_axioms(sl2()).ok());
    CHECK(check_dgla_axioms(heisenberg()).ok());
    CHECK(check_dgla_axioms(gl(3)).ok());
    CHECK(check_dgla_axioms(obstructed_pair()).ok());
    CHECK(check_dgla_axioms(unobstructed_pair()).ok());
}

TEST_CASE("axiom checker reports violations with witnesses") {
    // corrupt the sign of one orientation: skewsymmetry breaks
    Dgla bad = DglaBuilder("bad", {{0, {"e", "f", "h"}}})
                   .bracket("e", "f", {{"h", Rat(1)}})
                   .bracket_oneside("f", "e", {{"h", Rat(1)}})
                   .build();
    AxiomReport r = check_dgla_axioms(bad);
    CHECK_FALSE(r.ok());
    CHECK(r.violations.front().find("skew") != std::string::npos);

    // satisfy skewness but break Jacobi: [h,e]=2f is not an sl2 relation
    Dgla badj = DglaBuilder("badj", {{0, {"e", "f", "h"}}})
                    .bracket("e", "f", {{"h", Rat(1)}})
                    .bracket("h", "e", {{"f", Rat(2)}})
                    .bracket("h", "f", {{"f", Rat(-2)}})
                    .build();
    AxiomReport rj = check_dgla_axioms(badj);
    CHECK_FALSE(rj.ok());

    // break Leibniz: d kills u but not [u,u]
    Dgla badl = DglaBuilder("badl", {{1, {"u"}}, {2, {"v", "p"}}, {3, {"q"}}})
                    .bracket("u", "u", {{"v", Rat(1)}})
                    .d("v", {{"q", Rat(1)}})
                    .build();
    AxiomReport rl = check_dgla_axioms(badl);
    CHECK_FALSE(rl.ok());
    CHECK(rl.violations.front().find("leibniz") != std::string::npos);
}

TEST_CASE("tensoring with the ground field gives an isomorphic copy") {
    ArtinianAlgebra Q = ArtinianAlgebra::from_staircase({}, {}, "Q");
    Dgla L = sl2();
    Dgla LQ = tensor_with_algebra(L, Q, "sl2xQ");
    CHECK(LQ.cx.space->dim(0) == 3);
    CHECK(check_dgla_axioms(LQ).ok());
    // structure constants carry over on the *1 labels
    BracketEntry ef = LQ.bracket_basis(0, 0, 0, 1);
    REQUIRE_FALSE(ef.overflow);
    CHECK(sp_eq(ef.v, sp_unit(2)));
}

TEST_CASE("tensoring an abelian algebra stays abelian") {
    Dgla ab = DglaBuilder("ab", {{0, {"x", "y"}}}).build();
    Dgla abt = tensor_with_algebra(ab, make_truncated_poly(3), "abt");
    CHECK(check_dgla_axioms(abt).ok());
    for (int i = 0; i < abt.cx.space->dim(0); ++i)
        for (int j = 0; j < abt.cx.space->dim(0); ++j) {
            BracketEntry e = abt.bracket_basis(0, i, 0, j);
            CHECK_FALSE(e.overflow);
            CHECK(e.v.empty());
        }
}

TEST_CASE("tensor with K[t]/(t^3): bracket multiplies the polynomial parts") {
    Dgla L = sl2();
    ArtinianAlgebra A = make_truncated_poly(3);
    Dgla LA = tensor_with_algebra(L, A, "sl2xA");
    CHECK(check_dgla_axioms(LA).ok());
    const auto& labels = LA.cx.space->basis.at(0);
    auto find = [&](const std::string& s) {
        for (int i = 0; i < (int)labels.size(); ++i)
            if (labels[i] == s) return i;
        FAIL("missing label ", s);
        return -1;
    };
    int et = find("e*t"), ft = find("f*t"), ht2 = find("h*t^2"), ht = find("h*t");
    BracketEntry r = LA.bracket_basis(0, et, 0, ft);
    REQUIRE_FALSE(r.overflow);
    CHECK(sp_eq(r.v, sp_unit(ht2))); // [e(x)t, f(x)t] = h(x)t^2
    BracketEntry z = LA.bracket_basis(0, et, 0, ht2); // [e(x)t, h(x)t^2]: t^3 = 0
    REQUIRE_FALSE(z.overflow);
    CHECK(z.v.empty());
    BracketEntry r2 = LA.bracket_basis(0, ht, 0, et);
    REQUIRE_FALSE(r2.overflow);
    CHECK(sp_get(r2.v, find("e*t^2")) == 2);
}

TEST_CASE("maurer-cartan residual") {
    ArtinianAlgebra A = make_truncated_poly(3);
    Dgla uv = obstructed_pair();
    // zero input -> zero residual
    CHECK(mc_residual(NilpotentElement(uv, A, 1)).is_zero());
    // abelian: residual is dx
    Dgla ab = DglaBuilder("ab2", {{1, {"x"}}, {2, {"y"}}}).d("x", {{"y", Rat(1)}}).build();
    NilpotentElement x = unit_ne(ab, A, 1, 0, 0);
    NilpotentElement r = mc_residual(x);
    CHECK(ne_eq(r, unit_ne(ab, A, 2, 0, 0)));
    // [u,u]=v, x = u(x)t: residual = (1/2) v (x) t^2
    NilpotentElement u_t = unit_ne(uv, A, 1, 0, 0);
    NilpotentElement res = mc_residual(u_t);
    CHECK(ne_eq(res, unit_ne(uv, A, 2, 1, 0, rat_frac(1, 2))));
    CHECK_THROWS_AS(mc_residual(NilpotentElement(uv, A, 0)), Error);
}

TEST_CASE("bch: unit, inverse, abelian additivity") {
    ArtinianAlgebra A = make_truncated_poly(4);
    Dgla L = sl2();
    Lcg rng(7);
    for (int k = 0; k < 10; ++k) {
        NilpotentElement a = random_ne(L, A, 0, rng);
        CHECK(ne_eq(bch(a, NilpotentElement(L, A, 0)), a));
        CHECK(bch(a, ne_scale(Rat(-1), a)).is_zero());
    }
    Dgla ab = DglaBuilder("ab3", {{0, {"x", "y"}}}).build();
    NilpotentElement p = random_ne(ab, A, 0, rng), q = random_ne(ab, A, 0, rng);
    CHECK(ne_eq(bch(p, q), ne_add(p, q)));
}

TEST_CASE("bch on the heisenberg algebra") {
    ArtinianAlgebra A = make_truncated_poly(3);
    Dgla H = heisenberg();
    NilpotentElement e_t = unit_ne(H, A, 0, 0, 0);
    NilpotentElement f_t = unit_ne(H, A, 0, 0, 1);
    NilpotentElement r = bch(e_t, f_t);
    NilpotentElement expect = ne_add(e_t, f_t);
    expect.comp[1] = sp_add(expect.comp[1], sp_unit(2, rat_frac(1, 2)));
    CHECK(ne_eq(r, expect)); // e(x)t + f(x)t + (1/2) z(x)t^2
}

TEST_CASE("bch agrees with the matrix exponential-logarithm oracle") {
    for (int n : {2, 3, 4}) {
        Dgla G = gl(n);
        ArtinianAlgebra A = make_truncated_poly(n + 1); // deep enough to see all brackets
        Lcg rng(100 + n);
        for (int trial = 0; trial < 6; ++trial) {
            NilpotentElement a = random_ne(G, A, 0, rng);
            NilpotentElement b = random_ne(G, A, 0, rng);
            NilpotentElement viaDgla = bch(a, b);
            ArtinMat oracle = am_bch_oracle(ne_to_matrix(a, n), ne_to_matrix(b, n));
            CHECK(ne_eq(viaDgla, matrix_to_ne(G, A, oracle)));
        }
    }
}

TEST_CASE("bch is associative") {
    Dgla L = sl2();
    ArtinianAlgebra A = make_truncated_poly(4);
    Lcg rng(41);
    for (int k = 0; k < 15; ++k) {
        NilpotentElement a = random_ne(L, A, 0, rng);
        NilpotentElement b = random_ne(L, A, 0, rng);
        NilpotentElement c = random_ne(L, A, 0, rng);
        CHECK(ne_eq(bch(a, bch(b, c)), bch(bch(a, b), c)));
    }
}

TEST_CASE("gauge action: unit, abelian case, group law, MC preservation") {
    ArtinianAlgebra A = make_truncated_poly(3);
    // gauge by zero fixes everything
    Dgla uv = obstructed_pair();
    NilpotentElement x0 = unit_ne(uv, A, 1, 0, 0);
    CHECK(ne_eq(gauge_action(NilpotentElement(uv, A, 0), x0), x0));

    // abelian with d: e^a * x = x - da
    Dgla ab = DglaBuilder("ab4", {{0, {"a"}}, {1, {"x"}}}).d("a", {{"x", Rat(1)}}).build();
    NilpotentElement a = unit_ne(ab, A, 0, 0, 0);
    NilpotentElement x = unit_ne(ab, A, 1, 1, 0);
    CHECK(ne_eq(gauge_action(a, x), ne_sub(x, ne_d(a))));

    // group law e^a * (e^b * x) = e^{bch(a,b)} * x, exercised on a two-degree
    // algebra: sl2 in degree 0 acting on its own adjoint copy in degree 1
    DglaBuilder B("adj", {{0, {"e", "f", "h"}}, {1, {"E", "F", "H"}}});
    auto cap = [](const std::string& s) {
        std::string t = s;
        t[0] = (char)toupper(t[0]);
        return t;
    };
    const std::vector<std::string> base = {"e", "f", "h"};
    // sl2 structure constants as a lookup
    auto sc = [](const std::string& a,
                 const std::string& b) -> std::vector<std::pair<std::string, Rat>> {
        if (a == "e" && b == "f") return {{"h", Rat(1)}};
        if (a == "f" && b == "e") return {{"h", Rat(-1)}};
        if (a == "h" && b == "e") return {{"e", Rat(2)}};
        if (a == "e" && b == "h") return {{"e", Rat(-2)}};
        if (a == "h" && b == "f") return {{"f", Rat(-2)}};
        if (a == "f" && b == "h") return {{"f", Rat(2)}};
        return {};
    };
    for (size_t i = 0; i < base.size(); ++i)
        for (size_t j = i + 1; j < base.size(); ++j) B.bracket(base[i], base[j], sc(base[i], base[j]));
    for (const auto& a : base)
        for (const auto& b : base) {
            auto v = sc(a, b);
            for (auto& [l, c] : v) l = cap(l);
            if (!v.empty()) B.bracket(a, cap(b), v);
        }
    Dgla adj = B.build();
    REQUIRE(check_dgla_axioms(adj).ok());
    Lcg rng(99);
    for (int k = 0; k < 40; ++k) {
        NilpotentElement ga = random_ne(adj, A, 0, rng);
        NilpotentElement gb = random_ne(adj, A, 0, rng);
        NilpotentElement y = random_ne(adj, A, 1, rng);
        CHECK(ne_eq(gauge_action(ga, gauge_action(gb, y)), gauge_action(bch(ga, gb), y)));
    }
    // gauge preserves the MC set (d = 0 here, so MC means [y,y] = 0; adjoint
    // vectors y = E (x) t are MC)
    NilpotentElement y = unit_ne(adj, A, 1, 0, 0);
    REQUIRE(mc_residual(y).is_zero());
    for (int k = 0; k < 10; ++k) {
        NilpotentElement g = random_ne(adj, A, 0, rng);
        CHECK(mc_residual(gauge_action(g, y)).is_zero());
    }
}

TEST_CASE("first-order tangent dimension is dim H^1") {
    Dgla ab = DglaBuilder("ab5", {{1, {"a", "b", "c", "d"}}}).build();
    CHECK(tangent_def(ab) == 4);
    Dgla ex = DglaBuilder("ex", {{0, {"a"}}, {1, {"x"}}}).d("a", {{"x", Rat(1)}}).build();
    CHECK(tangent_def(ex) == 0);
    CHECK(tangent_def(unobstructed_pair()) == 1); // only u is closed in degree 1
}

TEST_CASE("first-order gauge equivalence is translation by exact elements") {
    ArtinianAlgebra E = make_dual_numbers();
    Dgla ab = DglaBuilder("ab6", {{1, {"x", "y"}}}).build(); // d = 0
    NilpotentElement x = unit_ne(ab, E, 1, 0, 0);
    NilpotentElement y = unit_ne(ab, E, 1, 0, 1);
    CHECK(is_first_order_gauge_equivalent(ab, x, x));
    CHECK_FALSE(is_first_order_gauge_equivalent(ab, x, y)); // image of d is zero

    Dgla mix = DglaBuilder("mix", {{0, {"a"}}, {1, {"x", "y"}}}).d("a", {{"x", Rat(1)}}).build();
    NilpotentElement p = unit_ne(mix, E, 1, 0, 1);       // y-direction, closed
    NilpotentElement q = p;
    q.comp[0] = sp_add(q.comp[0], sp_unit(0, Rat(3)));   // plus d(3a) = 3x
    CHECK(is_first_order_gauge_equivalent(mix, p, q));

    ArtinianAlgebra A3 = make_truncated_poly(3);
    NilpotentElement bad(mix, A3, 1);
    CHECK_THROWS_AS(is_first_order_gauge_equivalent(mix, bad, bad), Error);
}

TEST_CASE("order-by-order lifting: abelian inputs lift unchanged") {
    Dgla ab = DglaBuilder("ab7", {{1, {"x", "y"}}, {2, {"z"}}}).d("x", {{"z", Rat(1)}}).build();
    // y is closed; lift to K[t]/(t^4)
    LiftResult r = lift_order_by_order(ab, sp_unit(1), 4);
    REQUIRE(r.lifted);
    REQUIRE(r.x.has_value());
    CHECK(mc_residual(*r.x).is_zero());
    CHECK(sp_eq(r.x->comp[0], sp_unit(1)));
    CHECK(r.x->comp[1].empty()); // constant in t
    CHECK(r.x->comp[2].empty());
}

TEST_CASE("order-by-order lifting: obstruction certificate in H^2") {
    Dgla uv = obstructed_pair();
    LiftResult r = lift_order_by_order(uv, sp_unit(0), 3);
    CHECK_FALSE(r.lifted);
    CHECK(r.obstruction_order == 2);
    // the defect -(1/2)[u,u] = -(1/2) v against the representative basis {v}
    CHECK(sp_eq(r.obstruction_class, sp_unit(0, rat_frac(-1, 2))));
}

TEST_CASE("order-by-order lifting: exact obstructions are absorbed") {
    Dgla uvw = unobstructed_pair();
    LiftResult r = lift_order_by_order(uvw, sp_unit(0), 4);
    REQUIRE(r.lifted);
    CHECK(mc_residual(*r.x).is_zero());
    // restriction to first order is the input
    CHECK(sp_eq(r.x->comp[0], sp_unit(0)));
}
