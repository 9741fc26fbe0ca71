#pragma once

#include <map>
#include <optional>
#include <vector>

#include "defalg/rational.hpp"

namespace defalg {

/* ---- sparse vectors: sorted (index, nonzero coeff) pairs ---- */
using SpVec = std::vector<std::pair<int, Rat>>;

SpVec sp_axpy(const Rat& a, const SpVec& x, const SpVec& y); // a*x + y
SpVec sp_scale(const Rat& a, const SpVec& x);
inline SpVec sp_add(const SpVec& x, const SpVec& y) { return sp_axpy(Rat(1), x, y); }
inline SpVec sp_sub(const SpVec& y, const SpVec& x) { return sp_axpy(Rat(-1), x, y); }
Rat sp_get(const SpVec& x, int i);
SpVec sp_unit(int i, const Rat& c = Rat(1));
bool sp_eq(const SpVec& x, const SpVec& y);

/* ---- sparse matrix, column-major ---- */
struct SpMat {
    int rows = 0, cols = 0;
    std::vector<SpVec> col;

    SpMat() = default;
    SpMat(int r, int c) : rows(r), cols(c), col(c) {}
    void set(int i, int j, const Rat& v);
    Rat get(int i, int j) const;
    bool is_zero() const;
};

SpVec sp_apply(const SpMat& m, const SpVec& x);           // m * x
SpMat sp_compose(const SpMat& a, const SpMat& b);          // a * b
SpMat sp_madd(const Rat& c, const SpMat& a, const SpMat& b); // c*a + b
bool sp_mat_eq(const SpMat& a, const SpMat& b);
SpMat sp_identity(int n);

/* ---- exact reduced row echelon machine over ambient coordinates 0..n-1.
 * Maintains a fully inter-reduced row set; tracks how each row combines the
 * inserted vectors, so it simultaneously answers rank, kernel, membership,
 * coordinates-in-span and canonical quotient residues. ---- */
class Rref {
  public:
    explicit Rref(int ambient_dim) : n(ambient_dim) {}

    /* residual = v - (combination of stored rows); combo expresses the subtracted
     * part in terms of the original inserted vectors. residual is the canonical
     * representative of v modulo the span (supported off the pivot set). */
    struct Reduction {
        SpVec residual;
        SpVec combo;
    };
    Reduction reduce(const SpVec& v) const;

    /* Insert vector #k (k = number of prior insertions). Returns true if the rank grew. */
    bool insert(const SpVec& v);

    bool contains(const SpVec& v) const { return reduce(v).residual.empty(); }
    /* coordinates of v over the inserted vectors, if v lies in their span */
    std::optional<SpVec> coords(const SpVec& v) const;

    int rank() const { return (int)rows_.size(); }
    int ambient() const { return n; }
    int inserted_count() const { return inserted_; }
    std::vector<int> pivot_indices() const;
    /* ambient indices not used as pivots (canonical quotient coordinates) */
    std::vector<int> free_indices() const;
    const std::map<int, Reduction>& rows() const { return rows_; }

  private:
    int n;
    int inserted_ = 0;
    std::map<int, Reduction> rows_; // pivot index -> (row, combo); row leading coeff 1
};

/* rank of a sparse matrix */
int sp_rank(const SpMat& m);
/* kernel basis (as vectors in the column-index space), deterministic order */
std::vector<SpVec> sp_kernel(const SpMat& m);
/* one solution of m x = b, if any */
std::optional<SpVec> sp_solve(const SpMat& m, const SpVec& b);

/* ---- small dense matrices (hand examples, oracles) ---- */
struct QMat {
    int rows = 0, cols = 0;
    std::vector<Rat> a;

    QMat() = default;
    QMat(int r, int c) : rows(r), cols(c), a((size_t)r * c, Rat(0)) {}
    Rat& at(int i, int j) { return a[(size_t)i * cols + j]; }
    const Rat& at(int i, int j) const { return a[(size_t)i * cols + j]; }
};

QMat qm_mul(const QMat& x, const QMat& y);
QMat qm_add(const QMat& x, const QMat& y);
QMat qm_scale(const Rat& c, const QMat& x);
QMat qm_identity(int n);
bool qm_eq(const QMat& x, const QMat& y);
bool qm_is_zero(const QMat& x);
SpMat qm_to_sparse(const QMat& x);

} // namespace defalg
