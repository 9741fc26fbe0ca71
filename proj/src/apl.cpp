#include "defalg/apl.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "defalg/error.hpp"

namespace defalg {

void AplForm::add(const AplMono& m, const Rat& c) {
    if (c == 0) return;
    auto it = terms.find(m);
    if (it == terms.end()) {
        terms.emplace(m, c);
    } else {
        it->second += c;
        if (it->second == 0) terms.erase(it);
    }
}

AplForm apl_zero(int n) {
    AplForm f;
    f.n = n;
    return f;
}

AplForm apl_one(int n) {
    AplForm f;
    f.n = n;
    f.add(AplMono{std::vector<int>(n, 0), 0}, 1);
    return f;
}

AplForm apl_t(int n, int i) {
    require(0 <= i && i <= n, "apl_t: index out of range");
    AplForm f;
    f.n = n;
    if (i == 0) {
        // t_0 = 1 - t_1 - ... - t_n
        f.add(AplMono{std::vector<int>(n, 0), 0}, 1);
        for (int j = 1; j <= n; ++j) {
            std::vector<int> e(n, 0);
            e[j - 1] = 1;
            f.add(AplMono{e, 0}, -1);
        }
    } else {
        std::vector<int> e(n, 0);
        e[i - 1] = 1;
        f.add(AplMono{e, 0}, 1);
    }
    return f;
}

AplForm apl_dt(int n, int i) {
    require(0 <= i && i <= n, "apl_dt: index out of range");
    AplForm f;
    f.n = n;
    if (i == 0) {
        for (int j = 1; j <= n; ++j)
            f.add(AplMono{std::vector<int>(n, 0), uint32_t(1) << (j - 1)}, -1);
    } else {
        f.add(AplMono{std::vector<int>(n, 0), uint32_t(1) << (i - 1)}, 1);
    }
    return f;
}

AplForm apl_add(const AplForm& a, const AplForm& b) {
    require(a.n == b.n, "apl_add: simplex dimension mismatch");
    AplForm f = a;
    for (const auto& [m, c] : b.terms) f.add(m, c);
    return f;
}

AplForm apl_scale(const Rat& c, const AplForm& a) {
    AplForm f;
    f.n = a.n;
    if (c == 0) return f;
    for (const auto& [m, cc] : a.terms) f.terms.emplace(m, c * cc);
    return f;
}

namespace {

/* merge two ascending dt masks; returns false if they overlap, else sets the
 * sign (-1)^inversions of sorting the concatenation and the merged mask */
bool merge_dt(uint32_t s, uint32_t t, uint32_t& out, int& sign) {
    if (s & t) return false;
    out = s | t;
    // inversions: pairs (i in s, j in t) with i > j
    int inv = 0;
    for (uint32_t jb = t; jb; jb &= jb - 1) {
        int j = __builtin_ctz(jb);
        uint32_t higher = s & ~((uint32_t(1) << (j + 1)) - 1);
        inv += __builtin_popcount(higher);
    }
    sign = (inv % 2 == 0) ? 1 : -1;
    return true;
}

} // namespace

AplForm apl_mul(const AplForm& a, const AplForm& b) {
    require(a.n == b.n, "apl_mul: simplex dimension mismatch");
    AplForm f;
    f.n = a.n;
    for (const auto& [ma, ca] : a.terms) {
        for (const auto& [mb, cb] : b.terms) {
            uint32_t dt;
            int sign;
            if (!merge_dt(ma.dt, mb.dt, dt, sign)) continue;
            AplMono m;
            m.t.resize(a.n);
            for (int i = 0; i < a.n; ++i) m.t[i] = ma.t[i] + mb.t[i];
            m.dt = dt;
            f.add(m, ca * cb * sign);
        }
    }
    return f;
}

AplForm apl_d(const AplForm& a) {
    AplForm f;
    f.n = a.n;
    for (const auto& [m, c] : a.terms) {
        for (int j = 1; j <= a.n; ++j) {
            int e = m.t[j - 1];
            if (e == 0) continue;
            uint32_t jb = uint32_t(1) << (j - 1);
            if (m.dt & jb) continue;
            // sign: dt_j moved past the dt factors with smaller index
            int below = __builtin_popcount(m.dt & (jb - 1));
            AplMono mm = m;
            mm.t[j - 1] = e - 1;
            mm.dt = m.dt | jb;
            f.add(mm, c * e * ((below % 2 == 0) ? 1 : -1));
        }
    }
    return f;
}

bool apl_eq(const AplForm& a, const AplForm& b) {
    return a.n == b.n && a.terms == b.terms;
}

AplForm apl_face(const AplForm& a, int k) {
    require(a.n >= 1, "apl_face: cannot take face of 0-simplex forms");
    require(0 <= k && k <= a.n, "apl_face: face index out of range");
    int n = a.n, m = n - 1;
    AplForm f = apl_zero(m);
    if (k >= 1) {
        // t_k -> 0, dt_k -> 0; t_i -> t_{i-1} for i > k
        for (const auto& [mo, c] : a.terms) {
            if (mo.t[k - 1] != 0) continue;
            if (mo.dt & (uint32_t(1) << (k - 1))) continue;
            AplMono mm;
            mm.t.resize(m);
            mm.dt = 0;
            bool parity = false; // reindexing i -> i-1 preserves relative order
            (void)parity;
            for (int i = 1; i <= n; ++i) {
                if (i == k) continue;
                int tgt = (i < k) ? i : i - 1;
                mm.t[tgt - 1] = mo.t[i - 1];
                if (mo.dt & (uint32_t(1) << (i - 1))) mm.dt |= uint32_t(1) << (tgt - 1);
            }
            f.add(mm, c);
        }
        return f;
    }
    // k == 0: t_1 -> t_0 of the target = 1 - sum t_j, dt_1 -> -sum dt_j,
    //         t_i -> t_{i-1} for i >= 2.
    AplForm t1img = apl_t(m, 0);
    AplForm dt1img = apl_dt(m, 0);
    for (const auto& [mo, c] : a.terms) {
        // variables i >= 2 reindex to i-1 without reordering dt factors
        AplMono base;
        base.t.assign(m, 0);
        base.dt = 0;
        for (int i = 2; i <= n; ++i) {
            base.t[i - 2] = mo.t[i - 1];
            if (mo.dt & (uint32_t(1) << (i - 1))) base.dt |= uint32_t(1) << (i - 2);
        }
        AplForm rest = apl_zero(m);
        rest.add(base, 1);
        // multiply by (image of t_1)^{e_1} and, if dt_1 present, by its image on the left
        AplForm acc = rest;
        for (int r = 0; r < mo.t[0]; ++r) acc = apl_mul(t1img, acc);
        if (mo.dt & 1u) acc = apl_mul(dt1img, acc);
        f = apl_add(f, apl_scale(c, acc));
    }
    return f;
}

std::vector<AplMono> apl_basis(int n, int cap) {
    require(cap >= 0, "apl_basis: negative degree cap");
    std::vector<std::vector<int>> polys; // all exponent vectors with total <= cap
    std::vector<int> cur(n, 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == n) {
            polys.push_back(cur);
            return;
        }
        for (int e = 0; e <= left; ++e) {
            cur[pos] = e;
            rec(pos + 1, left - e);
        }
        cur[pos] = 0;
    };
    rec(0, cap);
    std::sort(polys.begin(), polys.end());
    std::vector<AplMono> out;
    for (int fdeg = 0; fdeg <= n && fdeg <= cap; ++fdeg) {
        std::vector<uint32_t> masks;
        for (uint32_t s = 0; s < (uint32_t(1) << n); ++s)
            if (__builtin_popcount(s) == fdeg) masks.push_back(s);
        std::sort(masks.begin(), masks.end());
        for (uint32_t s : masks)
            for (const auto& p : polys) {
                int tdeg = 0;
                for (int e : p) tdeg += e;
                if (tdeg + fdeg <= cap) out.push_back(AplMono{p, s});
            }
    }
    return out;
}

std::string apl_str(const AplForm& a) {
    if (a.terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : a.terms) {
        if (!first) os << " + ";
        first = false;
        os << "(" << rat_str(c) << ")";
        for (int i = 0; i < a.n; ++i)
            if (m.t[i] > 0) {
                os << "*t" << (i + 1);
                if (m.t[i] > 1) os << "^" << m.t[i];
            }
        for (int i = 0; i < a.n; ++i)
            if (m.dt & (uint32_t(1) << i)) os << "*dt" << (i + 1);
    }
    return os.str();
}

} // namespace defalg
