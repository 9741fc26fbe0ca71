#include "defalg/matrix.hpp"

#include <algorithm>

namespace defalg {

SpVec sp_axpy(const Rat& a, const SpVec& x, const SpVec& y) {
    if (a == 0) return y;
    SpVec r;
    r.reserve(x.size() + y.size());
    size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
            r.emplace_back(x[i].first, a * x[i].second);
            ++i;
        } else if (i == x.size() || y[j].first < x[i].first) {
            r.push_back(y[j]);
            ++j;
        } else {
            Rat v = a * x[i].second + y[j].second;
            if (v != 0) r.emplace_back(x[i].first, v);
            ++i;
            ++j;
        }
    }
    return r;
}

SpVec sp_scale(const Rat& a, const SpVec& x) {
    if (a == 0) return {};
    SpVec r;
    r.reserve(x.size());
    for (const auto& [i, v] : x) r.emplace_back(i, a * v);
    return r;
}

Rat sp_get(const SpVec& x, int i) {
    auto it = std::lower_bound(x.begin(), x.end(), i,
                               [](const std::pair<int, Rat>& p, int k) { return p.first < k; });
    if (it != x.end() && it->first == i) return it->second;
    return Rat(0);
}

SpVec sp_unit(int i, const Rat& c) {
    if (c == 0) return {};
    return {{i, c}};
}

bool sp_eq(const SpVec& x, const SpVec& y) { return x == y; }

void SpMat::set(int i, int j, const Rat& v) {
    SpVec& c = col[j];
    auto it = std::lower_bound(c.begin(), c.end(), i,
                               [](const std::pair<int, Rat>& p, int k) { return p.first < k; });
    if (it != c.end() && it->first == i) {
        if (v == 0)
            c.erase(it);
        else
            it->second = v;
    } else if (v != 0) {
        c.insert(it, {i, v});
    }
}

Rat SpMat::get(int i, int j) const { return sp_get(col[j], i); }

bool SpMat::is_zero() const {
    for (const auto& c : col)
        if (!c.empty()) return false;
    return true;
}

SpVec sp_apply(const SpMat& m, const SpVec& x) {
    SpVec r;
    for (const auto& [j, v] : x) r = sp_axpy(v, m.col[j], r);
    return r;
}

SpMat sp_compose(const SpMat& a, const SpMat& b) {
    require(a.cols == b.rows, "sp_compose: shape mismatch");
    SpMat r(a.rows, b.cols);
    for (int j = 0; j < b.cols; ++j) r.col[j] = sp_apply(a, b.col[j]);
    return r;
}

SpMat sp_madd(const Rat& c, const SpMat& a, const SpMat& b) {
    require(a.rows == b.rows && a.cols == b.cols, "sp_madd: shape mismatch");
    SpMat r(a.rows, a.cols);
    for (int j = 0; j < a.cols; ++j) r.col[j] = sp_axpy(c, a.col[j], b.col[j]);
    return r;
}

bool sp_mat_eq(const SpMat& a, const SpMat& b) {
    return a.rows == b.rows && a.cols == b.cols && a.col == b.col;
}

SpMat sp_identity(int n) {
    SpMat r(n, n);
    for (int i = 0; i < n; ++i) r.col[i] = sp_unit(i);
    return r;
}

Rref::Reduction Rref::reduce(const SpVec& v) const {
    Reduction res{v, {}};
    while (true) {
        const SpVec& cur = res.residual;
        std::map<int, Reduction>::const_iterator hit = rows_.end();
        size_t pos = 0;
        for (size_t k = 0; k < cur.size(); ++k) {
            auto it = rows_.find(cur[k].first);
            if (it != rows_.end()) {
                hit = it;
                pos = k;
                break;
            }
        }
        if (hit == rows_.end()) break;
        Rat c = cur[pos].second; // row has leading coeff 1 at the pivot
        res.residual = sp_axpy(-c, hit->second.residual, res.residual);
        res.combo = sp_axpy(c, hit->second.combo, res.combo);
    }
    return res;
}

bool Rref::insert(const SpVec& v) {
    int my_index = inserted_++;
    Reduction red = reduce(v);
    /* record: v = (combination of prior inserts given by red.combo) + residual */
    if (red.residual.empty()) return false;
    Rat lead = red.residual.front().second;
    int piv = red.residual.front().first;
    SpVec row = sp_scale(Rat(1) / lead, red.residual);
    /* combo so far describes the eliminated part; the stored row equals
     * (v - eliminated)/lead, i.e. combo' = (e_my - red.combo)/lead */
    SpVec combo = sp_scale(Rat(1) / lead, sp_axpy(Rat(-1), red.combo, sp_unit(my_index)));
    /* back-substitute into existing rows to keep full reduction; each row
     * keeps the invariant row.residual = sum row.combo_j * inserted_j */
    for (auto& [p, r] : rows_) {
        Rat c = sp_get(r.residual, piv);
        if (c != 0) {
            r.residual = sp_axpy(-c, row, r.residual);
            r.combo = sp_axpy(-c, combo, r.combo);
        }
    }
    rows_.emplace(piv, Reduction{std::move(row), std::move(combo)});
    return true;
}

std::optional<SpVec> Rref::coords(const SpVec& v) const {
    Reduction red = reduce(v);
    if (!red.residual.empty()) return std::nullopt;
    return red.combo;
}

std::vector<int> Rref::pivot_indices() const {
    std::vector<int> p;
    p.reserve(rows_.size());
    for (const auto& [k, r] : rows_) p.push_back(k);
    return p;
}

std::vector<int> Rref::free_indices() const {
    std::vector<int> f;
    auto it = rows_.begin();
    for (int i = 0; i < n; ++i) {
        while (it != rows_.end() && it->first < i) ++it;
        if (it == rows_.end() || it->first != i) f.push_back(i);
    }
    return f;
}

int sp_rank(const SpMat& m) {
    Rref r(m.rows);
    for (int j = 0; j < m.cols; ++j) r.insert(m.col[j]);
    return r.rank();
}

std::vector<SpVec> sp_kernel(const SpMat& m) {
    Rref r(m.rows);
    std::vector<int> ins2col; // insertion index inside r -> original column
    std::vector<SpVec> ker;
    for (int j = 0; j < m.cols; ++j) {
        auto red = r.reduce(m.col[j]);
        if (red.residual.empty()) {
            /* col_j = sum combo_k col_{ins2col[k]}  =>  kernel vector e_j - combo */
            SpVec v = sp_unit(j);
            for (const auto& [k, c] : red.combo) v = sp_axpy(-c, sp_unit(ins2col[k]), v);
            ker.push_back(std::move(v));
        } else {
            r.insert(m.col[j]);
            ins2col.push_back(j);
        }
    }
    return ker;
}

std::optional<SpVec> sp_solve(const SpMat& m, const SpVec& b) {
    Rref r(m.rows);
    for (int j = 0; j < m.cols; ++j) r.insert(m.col[j]);
    return r.coords(b);
}

QMat qm_mul(const QMat& x, const QMat& y) {
    require(x.cols == y.rows, "qm_mul: shape mismatch");
    QMat r(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            if (x.at(i, k) == 0) continue;
            for (int j = 0; j < y.cols; ++j) r.at(i, j) += x.at(i, k) * y.at(k, j);
        }
    return r;
}

QMat qm_add(const QMat& x, const QMat& y) {
    require(x.rows == y.rows && x.cols == y.cols, "qm_add: shape mismatch");
    QMat r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
    return r;
}

QMat qm_scale(const Rat& c, const QMat& x) {
    QMat r = x;
    for (auto& v : r.a) v *= c;
    return r;
}

QMat qm_identity(int n) {
    QMat r(n, n);
    for (int i = 0; i < n; ++i) r.at(i, i) = 1;
    return r;
}

bool qm_eq(const QMat& x, const QMat& y) {
    return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
}

bool qm_is_zero(const QMat& x) {
    for (const auto& v : x.a)
        if (v != 0) return false;
    return true;
}

SpMat qm_to_sparse(const QMat& x) {
    SpMat r(x.rows, x.cols);
    for (int j = 0; j < x.cols; ++j)
        for (int i = 0; i < x.rows; ++i)
            if (x.at(i, j) != 0) r.col[j].emplace_back(i, x.at(i, j));
    return r;
}

} // namespace defalg
