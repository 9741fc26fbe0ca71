#pragma once

#include <memory>
#include <string>

#include "defalg/matrix.hpp"

namespace defalg {

/* Finite-dimensional graded Q-vector space with labelled ordered bases. */
struct GradedVectorSpace {
    std::string name;
    std::map<int, std::vector<std::string>> basis; // degree -> labels (construction order)

    int dim(int deg) const {
        auto it = basis.find(deg);
        return it == basis.end() ? 0 : (int)it->second.size();
    }
    int total_dim() const {
        int s = 0;
        for (const auto& [d, b] : basis) s += (int)b.size();
        return s;
    }
    std::vector<int> degrees() const {
        std::vector<int> ds;
        for (const auto& [d, b] : basis)
            if (!b.empty()) ds.push_back(d);
        return ds;
    }
};

using SpacePtr = std::shared_ptr<const GradedVectorSpace>;

SpacePtr make_space(std::string name, std::map<int, std::vector<std::string>> basis);

/* Degree-homogeneous linear map between graded spaces.
 * blocks[i] : src^i -> dst^{i+degree}; a block is present exactly when both sides
 * are nonzero (entries may still be zero). */
struct LinearMap {
    SpacePtr src, dst;
    int degree = 0;
    std::map<int, SpMat> blocks;

    const SpMat* block(int i) const {
        auto it = blocks.find(i);
        return it == blocks.end() ? nullptr : &it->second;
    }
    /* apply to a degree-homogeneous coordinate vector */
    SpVec apply(int deg, const SpVec& v) const {
        const SpMat* b = block(deg);
        if (!b) {
            require(v.empty() || src->dim(deg) == 0 || dst->dim(deg + degree) == 0,
                    "LinearMap::apply: missing block");
            return {};
        }
        return sp_apply(*b, v);
    }
};

LinearMap lm_make(SpacePtr src, SpacePtr dst, int degree, std::map<int, SpMat> blocks);
LinearMap lm_zero(SpacePtr src, SpacePtr dst, int degree);
LinearMap lm_identity(SpacePtr v);
LinearMap lm_compose(const LinearMap& f, const LinearMap& g); // f after g
LinearMap lm_add(const LinearMap& f, const LinearMap& g);
LinearMap lm_scale(const Rat& c, const LinearMap& f);
bool lm_eq(const LinearMap& f, const LinearMap& g);
bool lm_is_zero(const LinearMap& f);

/* Cochain complex: square-zero degree +1 endomorphism. */
struct CochainComplex {
    SpacePtr space;
    LinearMap d;
};

/* validates shape and d*d = 0 */
CochainComplex make_complex(SpacePtr space, LinearMap d);

/* V[n]^i = V^{n+i}, differential scaled by (-1)^n */
CochainComplex shift(const CochainComplex& c, int n);

struct Cohomology {
    std::map<int, int> dims;                      // degree -> dim H^deg (zeros omitted)
    std::map<int, std::vector<SpVec>> reps;       // cocycle representatives, coords in C^deg
    int dim(int deg) const {
        auto it = dims.find(deg);
        return it == dims.end() ? 0 : it->second;
    }
};

Cohomology cohomology(const CochainComplex& c);

/* dimension-level agreement in every degree */
bool compare_cohomology(const CochainComplex& a, const CochainComplex& b);

} // namespace defalg
