#include "defalg/graded.hpp"

#include <set>

namespace defalg {

SpacePtr make_space(std::string name, std::map<int, std::vector<std::string>> basis) {
    for (auto it = basis.begin(); it != basis.end();) {
        std::set<std::string> seen(it->second.begin(), it->second.end());
        require(seen.size() == it->second.size(),
                "space '" + name + "': duplicate basis labels in degree " + std::to_string(it->first));
        if (it->second.empty())
            it = basis.erase(it);
        else
            ++it;
    }
    auto v = std::make_shared<GradedVectorSpace>();
    v->name = std::move(name);
    v->basis = std::move(basis);
    return v;
}

static void check_block_shape(const LinearMap& f) {
    require(f.src && f.dst, "LinearMap: null spaces");
    for (const auto& [i, m] : f.blocks) {
        require(m.cols == f.src->dim(i) && m.rows == f.dst->dim(i + f.degree),
                "LinearMap: block shape mismatch in degree " + std::to_string(i));
        require(m.cols > 0 && m.rows > 0, "LinearMap: empty block present");
    }
    for (const auto& [i, b] : f.src->basis) {
        if (!b.empty() && f.dst->dim(i + f.degree) > 0)
            require(f.blocks.count(i), "LinearMap: missing block in degree " + std::to_string(i));
    }
}

LinearMap lm_make(SpacePtr src, SpacePtr dst, int degree, std::map<int, SpMat> blocks) {
    LinearMap f{std::move(src), std::move(dst), degree, std::move(blocks)};
    check_block_shape(f);
    return f;
}

LinearMap lm_zero(SpacePtr src, SpacePtr dst, int degree) {
    std::map<int, SpMat> blocks;
    for (const auto& [i, b] : src->basis)
        if (dst->dim(i + degree) > 0) blocks.emplace(i, SpMat(dst->dim(i + degree), (int)b.size()));
    return LinearMap{std::move(src), std::move(dst), degree, std::move(blocks)};
}

LinearMap lm_identity(SpacePtr v) {
    std::map<int, SpMat> blocks;
    for (const auto& [i, b] : v->basis) blocks.emplace(i, sp_identity((int)b.size()));
    return LinearMap{v, v, 0, std::move(blocks)};
}

LinearMap lm_compose(const LinearMap& f, const LinearMap& g) {
    require(f.src.get() == g.dst.get(), "lm_compose: middle spaces differ");
    LinearMap r = lm_zero(g.src, f.dst, f.degree + g.degree);
    for (auto& [i, m] : r.blocks) {
        const SpMat* a = f.block(i + g.degree);
        const SpMat* b = g.block(i);
        if (a && b) m = sp_compose(*a, *b);
    }
    return r;
}

LinearMap lm_add(const LinearMap& f, const LinearMap& g) {
    require(f.src.get() == g.src.get() && f.dst.get() == g.dst.get() && f.degree == g.degree,
            "lm_add: incompatible maps");
    LinearMap r = f;
    for (auto& [i, m] : r.blocks) {
        const SpMat* b = g.block(i);
        if (b) m = sp_madd(Rat(1), *b, m);
    }
    return r;
}

LinearMap lm_scale(const Rat& c, const LinearMap& f) {
    LinearMap r = f;
    for (auto& [i, m] : r.blocks) m = sp_madd(c - 1, f.blocks.at(i), m); // c*m = (c-1)*m + m
    return r;
}

bool lm_eq(const LinearMap& f, const LinearMap& g) {
    if (f.src.get() != g.src.get() || f.dst.get() != g.dst.get() || f.degree != g.degree) return false;
    if (f.blocks.size() != g.blocks.size()) return false;
    for (const auto& [i, m] : f.blocks) {
        const SpMat* b = g.block(i);
        if (!b || !sp_mat_eq(m, *b)) return false;
    }
    return true;
}

bool lm_is_zero(const LinearMap& f) {
    for (const auto& [i, m] : f.blocks)
        if (!m.is_zero()) return false;
    return true;
}

CochainComplex make_complex(SpacePtr space, LinearMap d) {
    require(d.src.get() == space.get() && d.dst.get() == space.get(), "make_complex: d not an endomorphism");
    require(d.degree == 1, "make_complex: differential must have degree +1");
    check_block_shape(d);
    LinearMap dd = lm_compose(d, d);
    require(lm_is_zero(dd), "make_complex: d∘d != 0 on space '" + space->name + "'");
    return CochainComplex{std::move(space), std::move(d)};
}

CochainComplex shift(const CochainComplex& c, int n) {
    std::map<int, std::vector<std::string>> basis;
    for (const auto& [i, b] : c.space->basis) basis[i - n] = b;
    SpacePtr sp = make_space(c.space->name + "[" + std::to_string(n) + "]", std::move(basis));
    std::map<int, SpMat> blocks;
    Rat sign = (n % 2 == 0) ? Rat(1) : Rat(-1);
    for (const auto& [i, m] : c.d.blocks) {
        SpMat s = m;
        if (sign != 1)
            for (auto& col : s.col) col = sp_scale(sign, col);
        blocks.emplace(i - n, std::move(s));
    }
    return CochainComplex{sp, LinearMap{sp, sp, 1, std::move(blocks)}};
}

Cohomology cohomology(const CochainComplex& c) {
    Cohomology h;
    for (const auto& [deg, b] : c.space->basis) {
        int n = (int)b.size();
        if (n == 0) continue;
        const SpMat* dout = c.d.block(deg);
        const SpMat* din = c.d.block(deg - 1);

        std::vector<SpVec> ker;
        if (dout)
            ker = sp_kernel(*dout);
        else
            for (int j = 0; j < n; ++j) ker.push_back(sp_unit(j));

        Rref image(n);
        if (din)
            for (const auto& col : din->col) image.insert(col);

        std::vector<SpVec> reps;
        Rref chosen(n);
        for (const auto& k : ker) {
            auto red = image.reduce(k);
            if (red.residual.empty()) continue;
            if (chosen.insert(red.residual)) reps.push_back(k);
        }
        if (!reps.empty()) {
            h.dims[deg] = (int)reps.size();
            h.reps[deg] = std::move(reps);
        }
    }
    return h;
}

bool compare_cohomology(const CochainComplex& a, const CochainComplex& b) {
    Cohomology ha = cohomology(a), hb = cohomology(b);
    std::set<int> degs;
    for (const auto& [d, n] : ha.dims) degs.insert(d);
    for (const auto& [d, n] : hb.dims) degs.insert(d);
    for (int d : degs)
        if (ha.dim(d) != hb.dim(d)) return false;
    return true;
}

} // namespace defalg
