#include "doctest.h"

#include <random>

#include "defalg/matrix.hpp"

using namespace defalg;

TEST_CASE("sparse vector primitives") {
    SpVec x = {{0, Rat(2)}, {3, Rat(-1)}};
    SpVec y = {{1, Rat(5)}, {3, Rat(1)}};
    SpVec s = sp_add(x, y);
    CHECK(sp_get(s, 0) == 2);
    CHECK(sp_get(s, 1) == 5);
    CHECK(sp_get(s, 3) == 0); // cancelled entries disappear
    CHECK(s.size() == 2);
    CHECK(sp_eq(sp_sub(s, y), x));
    CHECK(sp_scale(Rat(0), x).empty());
    CHECK(sp_eq(sp_unit(4, Rat(3)), SpVec{{4, Rat(3)}}));
}

TEST_CASE("sparse matrix application and composition") {
    SpMat m(2, 3);
    m.set(0, 0, Rat(1));
    m.set(1, 0, Rat(2));
    m.set(0, 2, Rat(-1));
    SpVec v = {{0, Rat(1)}, {2, Rat(3)}};
    CHECK(sp_eq(sp_apply(m, v), SpVec{{0, Rat(-2)}, {1, Rat(2)}}));
    SpMat id3 = sp_identity(3);
    CHECK(sp_mat_eq(sp_compose(m, id3), m));
    SpMat z = sp_madd(Rat(-1), m, m);
    CHECK(z.is_zero());
}

TEST_CASE("rank, kernel, solve on a known matrix") {
    // [1 2 3; 2 4 6; 1 0 1] has rank 2, kernel spanned by (-1, -1, 1)
    SpMat m(3, 3);
    m.set(0, 0, 1); m.set(0, 1, 2); m.set(0, 2, 3);
    m.set(1, 0, 2); m.set(1, 1, 4); m.set(1, 2, 6);
    m.set(2, 0, 1); m.set(2, 2, 1);
    CHECK(sp_rank(m) == 2);
    auto ker = sp_kernel(m);
    REQUIRE(ker.size() == 1);
    SpVec img;
    for (auto& [j, c] : ker[0]) img = sp_axpy(c, m.col[j], img);
    CHECK(img.empty());
    // b = first column + second column is solvable; (1,1,1,...) applied gives b
    SpVec b = sp_add(m.col[0], m.col[1]);
    auto sol = sp_solve(m, b);
    REQUIRE(sol.has_value());
    SpVec chk;
    for (auto& [j, c] : *sol) chk = sp_axpy(c, m.col[j], chk);
    CHECK(sp_eq(chk, b));
    // e_2 - e_... something outside the column span
    CHECK_FALSE(sp_solve(m, SpVec{{1, Rat(1)}}).has_value());
}

TEST_CASE("kernel of a matrix with zero rows is the full space") {
    SpMat m(0, 4);
    auto ker = sp_kernel(m);
    CHECK(ker.size() == 4);
    for (int j = 0; j < 4; ++j) CHECK(sp_eq(ker[j], sp_unit(j)));
}

TEST_CASE("rref reduction invariant under back-substitution") {
    // Insertion order chosen so a later pivot appears in earlier stored rows,
    // forcing the back-substitution path to update both rows and combos.
    Rref r(3);
    SpVec v0 = {{0, Rat(1)}, {1, Rat(1)}, {2, Rat(1)}};
    SpVec v1 = {{1, Rat(1)}, {2, Rat(2)}};
    SpVec v2 = {{2, Rat(3)}};
    std::vector<SpVec> ins = {v0, v1, v2};
    for (const auto& v : ins) r.insert(v);
    CHECK(r.rank() == 3);
    // reduce: residual + sum combo_k * inserted_k reconstructs the input
    for (const SpVec& probe :
         {SpVec{{0, Rat(5)}}, SpVec{{1, Rat(-2)}, {2, Rat(7)}}, SpVec{{0, Rat(1)}, {2, Rat(1)}}}) {
        auto red = r.reduce(probe);
        SpVec recon = red.residual;
        for (auto& [k, c] : red.combo) recon = sp_axpy(c, ins[k], recon);
        CHECK(sp_eq(recon, probe));
    }
    auto c = r.coords(SpVec{{0, Rat(1)}});
    REQUIRE(c.has_value());
    SpVec recon;
    for (auto& [k, cc] : *c) recon = sp_axpy(cc, ins[k], recon);
    CHECK(sp_eq(recon, SpVec{{0, Rat(1)}}));
}

TEST_CASE("rref properties on random matrices") {
    std::mt19937 rng(20240601);
    auto rnd = [&](int lo, int hi) { return (int)(rng() % (unsigned)(hi - lo + 1)) + lo; };
    for (int trial = 0; trial < 120; ++trial) {
        int rows = rnd(1, 6), cols = rnd(1, 6);
        SpMat M(rows, cols);
        for (int j = 0; j < cols; ++j)
            for (int i = 0; i < rows; ++i)
                if (rnd(0, 2) == 0) M.set(i, j, Rat(rnd(-3, 3)));
        Rref R(rows);
        std::vector<SpVec> ins;
        int rank = 0;
        for (int j = 0; j < cols; ++j) {
            rank += R.insert(M.col[j]) ? 1 : 0;
            ins.push_back(M.col[j]);
        }
        CHECK(rank == R.rank());
        CHECK(rank == sp_rank(M));
        // reduce invariant
        for (int t = 0; t < 4; ++t) {
            SpVec v;
            for (int i = 0; i < rows; ++i) {
                Rat c(rnd(-3, 3));
                if (c != 0) v.push_back({i, c});
            }
            auto red = R.reduce(v);
            SpVec recon = red.residual;
            for (auto& [k, c] : red.combo) recon = sp_axpy(c, ins[k], recon);
            CHECK(sp_eq(recon, v));
        }
        // kernel: size and membership
        auto ker = sp_kernel(M);
        CHECK((int)ker.size() == cols - rank);
        Rref kr(cols);
        for (const auto& k : ker) {
            SpVec img;
            for (auto& [j, c] : k) img = sp_axpy(c, M.col[j], img);
            CHECK(img.empty());
            CHECK(kr.insert(k)); // independent
        }
        // solve: right-hand sides built from known solutions are solved exactly
        for (int t = 0; t < 3; ++t) {
            SpVec x, b;
            for (int j = 0; j < cols; ++j) {
                Rat c(rnd(-2, 2));
                if (c != 0) x.push_back({j, c});
            }
            for (auto& [j, c] : x) b = sp_axpy(c, M.col[j], b);
            auto sol = sp_solve(M, b);
            REQUIRE(sol.has_value());
            SpVec chk;
            for (auto& [j, c] : *sol) chk = sp_axpy(c, M.col[j], chk);
            CHECK(sp_eq(chk, b));
        }
        // rank + nullity = number of columns
        CHECK(rank + (int)ker.size() == cols);
    }
}

TEST_CASE("rref quotient residues are canonical") {
    Rref r(3);
    r.insert(SpVec{{0, Rat(1)}, {1, Rat(1)}});
    // representatives of the same class reduce to the same residual
    SpVec a = {{0, Rat(2)}, {1, Rat(3)}};
    SpVec b = sp_add(a, sp_scale(Rat(5), SpVec{{0, Rat(1)}, {1, Rat(1)}}));
    CHECK(sp_eq(r.reduce(a).residual, r.reduce(b).residual));
    CHECK(r.contains(SpVec{{0, Rat(7)}, {1, Rat(7)}}));
    CHECK_FALSE(r.contains(SpVec{{0, Rat(1)}}));
    CHECK(r.free_indices() == std::vector<int>{1, 2});
    CHECK(r.pivot_indices() == std::vector<int>{0});
}

TEST_CASE("dense matrix helpers") {
    QMat a(2, 2);
    a.at(0, 0) = 1; a.at(0, 1) = 2; a.at(1, 1) = 1;
    QMat b = qm_mul(a, a);
    CHECK(b.at(0, 1) == 4);
    CHECK(qm_eq(qm_mul(a, qm_identity(2)), a));
    CHECK(qm_is_zero(qm_add(a, qm_scale(Rat(-1), a))));
    SpMat s = qm_to_sparse(a);
    CHECK(s.get(0, 1) == 2);
    CHECK(s.get(1, 0) == 0);
}
