#include "defalg/dgla.hpp"

#include <algorithm>
#include <functional>

namespace defalg {

BracketEntry Dgla::bracket(int da, const SpVec& a, int db, const SpVec& b) const {
    BracketEntry r;
    for (const auto& [ia, ca] : a)
        for (const auto& [ib, cb] : b) {
            BracketEntry e = bracket_basis(da, ia, db, ib);
            if (e.overflow) {
                r.overflow = true;
                return r;
            }
            r.v = sp_axpy(ca * cb, e.v, r.v);
        }
    return r;
}

DglaBuilder::DglaBuilder(std::string name, std::map<int, std::vector<std::string>> basis)
    : name_(std::move(name)) {
    space_ = make_space(name_, std::move(basis));
    for (const auto& [deg, labels] : space_->basis)
        for (int i = 0; i < (int)labels.size(); ++i) where_[labels[i]] = {deg, i};
}

std::pair<int, int> DglaBuilder::loc(const std::string& l) const {
    auto it = where_.find(l);
    require(it != where_.end(), "DglaBuilder: unknown label '" + l + "'");
    return it->second;
}

DglaBuilder& DglaBuilder::d(const std::string& from, const std::vector<std::pair<std::string, Rat>>& to) {
    auto [deg, i] = loc(from);
    auto it = dblocks_.find(deg);
    if (it == dblocks_.end())
        it = dblocks_.emplace(deg, SpMat(space_->dim(deg + 1), space_->dim(deg))).first;
    for (const auto& [lab, c] : to) {
        auto [dt, j] = loc(lab);
        require(dt == deg + 1, "DglaBuilder: differential must raise degree by 1");
        it->second.set(j, i, c);
    }
    return *this;
}

void DglaBuilder::set_entry(int da, int ia, int db, int ib, SpVec v) {
    auto key = std::make_pair(da, db);
    auto it = table_.find(key);
    if (it == table_.end())
        it = table_.emplace(key, std::vector<BracketEntry>((size_t)space_->dim(da) * space_->dim(db))).first;
    it->second[(size_t)ia * space_->dim(db) + ib] = BracketEntry{false, std::move(v)};
}

DglaBuilder& DglaBuilder::bracket_oneside(const std::string& a, const std::string& b,
                                          const std::vector<std::pair<std::string, Rat>>& val) {
    auto [da, ia] = loc(a);
    auto [db, ib] = loc(b);
    SpVec v;
    for (const auto& [lab, c] : val) {
        auto [dv, iv] = loc(lab);
        require(dv == da + db, "DglaBuilder: bracket value degree mismatch");
        v = sp_axpy(c, sp_unit(iv), v);
    }
    set_entry(da, ia, db, ib, v);
    return *this;
}

DglaBuilder& DglaBuilder::bracket(const std::string& a, const std::string& b,
                                  const std::vector<std::pair<std::string, Rat>>& val) {
    bracket_oneside(a, b, val);
    auto [da, ia] = loc(a);
    auto [db, ib] = loc(b);
    if (!(da == db && ia == ib)) {
        SpVec v;
        for (const auto& [lab, c] : val) {
            auto [dv, iv] = loc(lab);
            v = sp_axpy(c, sp_unit(iv), v);
        }
        Rat sign = (da * db) % 2 == 0 ? Rat(-1) : Rat(1); // [b,a] = -(-1)^{|a||b|}[a,b]
        set_entry(db, ib, da, ia, sp_scale(sign, v));
    }
    return *this;
}

Dgla DglaBuilder::build() {
    LinearMap d = lm_zero(space_, space_, 1);
    for (auto& [i, m] : dblocks_) {
        auto it = d.blocks.find(i);
        require(it != d.blocks.end(), "DglaBuilder: stray differential block");
        it->second = std::move(m);
    }
    Dgla L;
    L.name = name_;
    L.cx = make_complex(space_, std::move(d));
    L.table = std::move(table_);
    return L;
}

/* ---------- axioms ---------- */

static std::string witness(const Dgla& L, int d1, int i1, int d2 = 0, int i2 = -1, int d3 = 0, int i3 = -1) {
    auto lab = [&](int d, int i) { return L.space().basis.at(d)[i] + "(deg " + std::to_string(d) + ")"; };
    std::string s = lab(d1, i1);
    if (i2 >= 0) s += ", " + lab(d2, i2);
    if (i3 >= 0) s += ", " + lab(d3, i3);
    return s;
}

AxiomReport check_dgla_axioms(const Dgla& L) {
    AxiomReport rep;
    const auto& V = L.space();
    std::vector<std::pair<int, int>> all; // (degree, index)
    for (const auto& [d, b] : V.basis)
        for (int i = 0; i < (int)b.size(); ++i) all.emplace_back(d, i);
    auto add_violation = [&](const std::string& kind, const std::string& w) {
        if (rep.violations.size() < 16) rep.violations.push_back(kind + ": " + w);
    };

    /* skew + Leibniz on all unordered pairs (skew relates the two orientations;
     * Leibniz for one orientation follows from the other given skew) */
    for (size_t p = 0; p < all.size(); ++p)
        for (size_t q = p; q < all.size(); ++q) {
            auto [da, ia] = all[p];
            auto [db, ib] = all[q];
            BracketEntry ab = L.bracket_basis(da, ia, db, ib);
            BracketEntry ba = L.bracket_basis(db, ib, da, ia);
            if (ab.overflow || ba.overflow) {
                rep.pairs_skipped++;
            } else {
                rep.pairs_checked++;
                Rat sign = (da * db) % 2 == 0 ? Rat(-1) : Rat(1);
                if (!sp_eq(ba.v, sp_scale(sign, ab.v)))
                    add_violation("skew", witness(L, da, ia, db, ib));
            }
            /* graded Leibniz: d[a,b] = [da,b] + (-1)^{|a|}[a,db] */
            bool skipped = false;
            SpVec lhs, rhs;
            if (ab.overflow) {
                skipped = true;
            } else {
                lhs = L.cx.d.apply(da + db, ab.v);
                SpVec dav = L.cx.d.apply(da, sp_unit(ia));
                BracketEntry t1 = L.bracket(da + 1, dav, db, sp_unit(ib));
                SpVec dbv = L.cx.d.apply(db, sp_unit(ib));
                BracketEntry t2 = L.bracket(da, sp_unit(ia), db + 1, dbv);
                if (t1.overflow || t2.overflow)
                    skipped = true;
                else
                    rhs = sp_axpy(da % 2 == 0 ? Rat(1) : Rat(-1), t2.v, t1.v);
            }
            if (skipped) {
                rep.pairs_skipped++;
            } else {
                rep.pairs_checked++;
                if (!sp_eq(lhs, rhs)) add_violation("leibniz", witness(L, da, ia, db, ib));
            }
        }

    /* graded Jacobi on all ordered triples:
     * [a,[b,c]] = [[a,b],c] + (-1)^{|a||b|}[b,[a,c]] */
    for (const auto& [da, ia] : all)
        for (const auto& [db, ib] : all)
            for (const auto& [dc, ic] : all) {
                BracketEntry bc = L.bracket_basis(db, ib, dc, ic);
                BracketEntry ab = L.bracket_basis(da, ia, db, ib);
                BracketEntry ac = L.bracket_basis(da, ia, dc, ic);
                if (bc.overflow || ab.overflow || ac.overflow) {
                    rep.triples_skipped++;
                    continue;
                }
                BracketEntry t1 = L.bracket(da, sp_unit(ia), db + dc, bc.v);
                BracketEntry t2 = L.bracket(da + db, ab.v, dc, sp_unit(ic));
                BracketEntry t3 = L.bracket(db, sp_unit(ib), da + dc, ac.v);
                if (t1.overflow || t2.overflow || t3.overflow) {
                    rep.triples_skipped++;
                    continue;
                }
                rep.triples_checked++;
                SpVec rhs = sp_axpy((da * db) % 2 == 0 ? Rat(1) : Rat(-1), t3.v, t2.v);
                if (!sp_eq(t1.v, rhs)) add_violation("jacobi", witness(L, da, ia, db, ib, dc, ic));
            }
    return rep;
}

/* ---------- tensor with a commutative algebra ---------- */

Dgla tensor_with_algebra(const Dgla& L, const ArtinianAlgebra& B, const std::string& name) {
    const auto& V = L.space();
    int nb = B.dim_m() + 1; // unit + maximal ideal monomials
    auto bname = [&](int k) {
        if (k == 0) return std::string("1");
        std::string m;
        for (size_t g = 0; g < B.gens.size(); ++g) {
            if (B.mono[k - 1][g] == 0) continue;
            if (!m.empty()) m += "*";
            m += B.gens[g];
            if (B.mono[k - 1][g] > 1) m += "^" + std::to_string(B.mono[k - 1][g]);
        }
        return m;
    };
    /* product of B basis elements: -1 means zero */
    auto bprod = [&](int k, int l) -> int {
        if (k == 0) return l;
        if (l == 0) return k;
        return B.prod[k - 1][l - 1] < 0 ? -1 : B.prod[k - 1][l - 1] + 1;
    };

    std::map<int, std::vector<std::string>> basis;
    for (const auto& [deg, labels] : V.basis)
        for (const auto& lab : labels)
            for (int k = 0; k < nb; ++k) basis[deg].push_back(lab + "*" + bname(k));
    SpacePtr sp = make_space(name, std::move(basis));

    LinearMap d = lm_zero(sp, sp, 1);
    for (auto& [deg, m] : d.blocks) {
        const SpMat* dl = L.cx.d.block(deg);
        if (!dl) continue;
        for (int j = 0; j < V.dim(deg); ++j)
            for (const auto& [i, c] : dl->col[j])
                for (int k = 0; k < nb; ++k) m.set(i * nb + k, j * nb + k, c);
    }

    Dgla R;
    R.name = name;
    R.cx = make_complex(sp, std::move(d));
    for (const auto& [dd, tab] : L.table) {
        auto [da, db] = dd;
        int na = V.dim(da), nbdim = V.dim(db);
        std::vector<BracketEntry> big((size_t)na * nb * nbdim * nb);
        for (int ia = 0; ia < na; ++ia)
            for (int ib = 0; ib < nbdim; ++ib) {
                const BracketEntry& e = tab[(size_t)ia * nbdim + ib];
                for (int k = 0; k < nb; ++k)
                    for (int l = 0; l < nb; ++l) {
                        BracketEntry& t = big[((size_t)ia * nb + k) * nbdim * nb + (size_t)ib * nb + l];
                        if (e.overflow) {
                            t.overflow = true;
                            continue;
                        }
                        int kl = bprod(k, l);
                        if (kl < 0) continue;
                        for (const auto& [iv, c] : e.v) t.v = sp_axpy(c, sp_unit(iv * nb + kl), t.v);
                    }
            }
        R.table.emplace(dd, std::move(big));
    }
    return R;
}

/* ---------- nilpotent elements over L (x) m_A ---------- */

static void ne_check(const NilpotentElement& x, const NilpotentElement& y) {
    require(x.L == y.L && x.A == y.A, "NilpotentElement: mixed contexts");
}

NilpotentElement ne_add(const NilpotentElement& x, const NilpotentElement& y) {
    ne_check(x, y);
    require(x.degree == y.degree, "ne_add: degree mismatch");
    NilpotentElement r = x;
    for (size_t k = 0; k < r.comp.size(); ++k) r.comp[k] = sp_add(x.comp[k], y.comp[k]);
    return r;
}

NilpotentElement ne_sub(const NilpotentElement& x, const NilpotentElement& y) {
    return ne_add(x, ne_scale(Rat(-1), y));
}

NilpotentElement ne_scale(const Rat& c, const NilpotentElement& x) {
    NilpotentElement r = x;
    for (auto& v : r.comp) v = sp_scale(c, v);
    return r;
}

NilpotentElement ne_mul_artin(const ArtinElem& s, const NilpotentElement& x) {
    require(s.A == x.A, "ne_mul_artin: mixed algebras");
    NilpotentElement r(*x.L, *x.A, x.degree);
    const ArtinianAlgebra& A = *x.A;
    for (int k = 0; k < A.dim_m(); ++k) {
        if (x.comp[k].empty()) continue;
        r.comp[k] = sp_axpy(s.c0, x.comp[k], r.comp[k]);
        for (int j = 0; j < A.dim_m(); ++j) {
            if (s.cm[j] == 0) continue;
            int kj = A.prod[j][k];
            if (kj >= 0) r.comp[kj] = sp_axpy(s.cm[j], x.comp[k], r.comp[kj]);
        }
    }
    return r;
}

bool ne_eq(const NilpotentElement& x, const NilpotentElement& y) {
    ne_check(x, y);
    if (x.degree != y.degree) return false;
    return x.comp == y.comp;
}

NilpotentElement ne_d(const NilpotentElement& x) {
    NilpotentElement r(*x.L, *x.A, x.degree + 1);
    for (size_t k = 0; k < x.comp.size(); ++k) r.comp[k] = x.L->cx.d.apply(x.degree, x.comp[k]);
    return r;
}

NilpotentElement ne_bracket(const NilpotentElement& x, const NilpotentElement& y) {
    ne_check(x, y);
    const ArtinianAlgebra& A = *x.A;
    NilpotentElement r(*x.L, *x.A, x.degree + y.degree);
    for (int i = 0; i < A.dim_m(); ++i) {
        if (x.comp[i].empty()) continue;
        for (int j = 0; j < A.dim_m(); ++j) {
            if (y.comp[j].empty()) continue;
            int k = A.prod[i][j];
            if (k < 0) continue;
            BracketEntry e = x.L->bracket(x.degree, x.comp[i], y.degree, y.comp[j]);
            if (e.overflow)
                throw WindowError("ne_bracket: structure constants overflow the constructed window (algebra '" +
                                  x.L->name + "')");
            r.comp[k] = sp_add(r.comp[k], e.v);
        }
    }
    return r;
}

NilpotentElement mc_residual(const NilpotentElement& x) {
    require(x.degree == 1, "mc_residual: element must have degree 1");
    return ne_add(ne_d(x), ne_scale(rat_frac(1, 2), ne_bracket(x, x)));
}

/* Dynkin expansion.  Words are evaluated right-nested; letters with vanishing
 * tails drop out automatically through the exact arithmetic. */
NilpotentElement bch(const NilpotentElement& a, const NilpotentElement& b) {
    ne_check(a, b);
    require(a.degree == 0 && b.degree == 0, "bch: arguments must have degree 0");
    const int N = a.A->nilpotency_order;
    NilpotentElement result(*a.L, *a.A, 0);

    Rat fact[13];
    fact[0] = 1;
    for (int i = 1; i < 13; ++i) fact[i] = fact[i - 1] * i;
    require(N <= 12, "bch: nilpotency order out of supported range");

    /* enumerate (p_1,q_1),...,(p_k,q_k), p_i+q_i>=1, total n, for n = 1..N-1 */
    struct Item {
        int p, q;
    };
    std::vector<Item> word;
    std::function<void(int, int)> rec = [&](int remaining, int k) {
        if (remaining == 0) {
            if (word.empty()) return;
            /* assemble letter list */
            std::vector<const NilpotentElement*> letters;
            for (const auto& it : word) {
                for (int i = 0; i < it.p; ++i) letters.push_back(&a);
                for (int i = 0; i < it.q; ++i) letters.push_back(&b);
            }
            int n = (int)letters.size();
            NilpotentElement v = *letters.back();
            for (int i = n - 2; i >= 0; --i) {
                v = ne_bracket(*letters[i], v);
                if (v.is_zero()) break;
            }
            if (v.is_zero()) return;
            Rat denom = Rat(n) * Rat((int)word.size());
            for (const auto& it : word) denom *= fact[it.p] * fact[it.q];
            Rat coeff = ((int)word.size() % 2 == 1 ? Rat(1) : Rat(-1)) / denom;
            result = ne_add(result, ne_scale(coeff, v));
            return;
        }
        (void)k;
        for (int p = 0; p <= remaining; ++p)
            for (int q = (p == 0 ? 1 : 0); p + q <= remaining; ++q) {
                word.push_back({p, q});
                rec(remaining - p - q, k + 1);
                word.pop_back();
            }
    };
    for (int n = 1; n < N; ++n) rec(n, 0);
    return result;
}

NilpotentElement gauge_action(const NilpotentElement& a, const NilpotentElement& x) {
    ne_check(a, x);
    require(a.degree == 0 && x.degree == 1, "gauge_action: need deg a = 0, deg x = 1");
    NilpotentElement term = ne_sub(ne_bracket(a, x), ne_d(a)); // [a,x] - da
    NilpotentElement r = x;
    Rat fct(1);
    for (int n = 0;; ++n) {
        fct *= n + 1; // (n+1)!
        r = ne_add(r, ne_scale(Rat(1) / fct, term));
        term = ne_bracket(a, term);
        if (term.is_zero()) break;
        require(n < a.A->nilpotency_order + 2, "gauge_action: series failed to terminate");
    }
    return r;
}

int tangent_def(const Dgla& L) { return cohomology(L.cx).dim(1); }

bool is_first_order_gauge_equivalent(const Dgla& L, const NilpotentElement& x, const NilpotentElement& y) {
    require(x.L == &L && y.L == &L, "is_first_order_gauge_equivalent: wrong algebra");
    require(x.A->dim_m() == 1 && x.A->nilpotency_order == 2,
            "is_first_order_gauge_equivalent: base must be the dual numbers");
    require(x.degree == 1 && y.degree == 1, "is_first_order_gauge_equivalent: need degree 1");
    require(mc_residual(x).is_zero() && mc_residual(y).is_zero(),
            "is_first_order_gauge_equivalent: inputs must satisfy Maurer-Cartan");
    SpVec diff = sp_sub(x.comp[0], y.comp[0]);
    if (diff.empty()) return true;
    const SpMat* d0 = L.cx.d.block(0);
    if (!d0) return false;
    return sp_solve(*d0, diff).has_value();
}

LiftResult lift_order_by_order(const Dgla& L, const SpVec& x1, int n) {
    require(n >= 2, "lift_order_by_order: order must be >= 2");
    LiftResult res;
    res.base = std::make_shared<ArtinianAlgebra>(make_truncated_poly(n));
    const ArtinianAlgebra& Ahold = *res.base;

    NilpotentElement x(L, Ahold, 1);
    x.comp[0] = x1;
    {
        NilpotentElement first(L, Ahold, 1);
        first.comp[0] = x1;
        NilpotentElement r1 = mc_residual(first);
        require(r1.comp[0].empty(), "lift_order_by_order: x1 is not closed");
    }

    const SpMat* d1 = L.cx.d.block(1);
    for (int k = 2; k <= n - 1; ++k) {
        /* defect at order k: coefficient of t^k in dx + 1/2 [x,x] with x_k still 0 */
        NilpotentElement r = mc_residual(x);
        SpVec defect = r.comp[k - 1];
        if (defect.empty()) continue;
        /* solve d x_k = -defect */
        std::optional<SpVec> sol;
        if (d1) sol = sp_solve(*d1, sp_scale(Rat(-1), defect));
        if (!sol) {
            res.lifted = false;
            res.obstruction_order = k;
            /* the certificate is the class of -defect, the element d x_k would
             * have to equal; express it over H^2 representatives */
            Cohomology h = cohomology(L.cx);
            int dim2 = L.space().dim(2);
            Rref r2(dim2);
            std::vector<int> repins; // insertion ids of representatives
            if (d1)
                for (const auto& col : d1->col) r2.insert(col);
            int imcount = r2.inserted_count();
            auto it = h.reps.find(2);
            if (it != h.reps.end())
                for (const auto& rv : it->second) r2.insert(rv);
            auto coords = r2.coords(sp_scale(Rat(-1), defect));
            require(coords.has_value(), "lift_order_by_order: defect is not d-closed");
            SpVec cls;
            for (const auto& [idx, c] : *coords)
                if (idx >= imcount) cls.emplace_back(idx - imcount, c);
            res.obstruction_class = std::move(cls);
            res.note = "obstruction at order " + std::to_string(k);
            return res;
        }
        x.comp[k - 1] = *sol;
    }
    require(mc_residual(x).is_zero(), "lift_order_by_order: internal: completed lift fails MC");
    res.lifted = true;
    res.x = x;
    res.note = "lifted to order " + std::to_string(n);
    return res;
}

} // namespace defalg
