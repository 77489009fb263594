#ifndef QWITT_SPARSE_HPP
#define QWITT_SPARSE_HPP

#include <algorithm>
#include <utility>
#include <vector>

#include "qwitt/qcontext.hpp"

namespace qwitt {

/*
 * Exact sparse linear algebra over either field context.  A row is a sorted
 * (column, value) list with nonzero values.  Elimination is fraction free:
 * updates are cross multiplications (pivot*row - entry*pivot_row) followed by
 * content removal, so symbolic rows stay polynomial; pivots are chosen by the
 * Markowitz score (row_nnz - 1)(col_nnz - 1) with deterministic tie breaks
 * (smaller column, then earlier row).  One factorization supports rank,
 * kernel basis extraction, and consistent solves.
 */

template <class K>
using SpRow = std::vector<std::pair<int, K>>;

template <class K>
const K* row_get(const SpRow<K>& r, int col) {
    auto it = std::lower_bound(r.begin(), r.end(), col,
                               [](const auto& e, int c) { return e.first < c; });
    return (it != r.end() && it->first == col) ? &it->second : nullptr;
}

// c1*a + c2*b with exact zero drops; either scale may be zero.
template <class Ctx, class K = typename Ctx::K>
SpRow<K> row_combine(const Ctx&, const SpRow<K>& a, const K& c1, const SpRow<K>& b,
                     const K& c2) {
    SpRow<K> r;
    r.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    const bool z1 = Ctx::is_zero(c1), z2 = Ctx::is_zero(c2);
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            if (!z1) r.emplace_back(a[i].first, K(a[i].second * c1));
            ++i;
        } else if (i == a.size() || b[j].first < a[i].first) {
            if (!z2) r.emplace_back(b[j].first, K(b[j].second * c2));
            ++j;
        } else {
            K v(0);
            if (!z1) v = a[i].second * c1;
            if (!z2) v = v + b[j].second * c2;
            if (!Ctx::is_zero(v)) r.emplace_back(a[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    return r;
}

// -- content normalization ---------------------------------------------------

// gcd over Q: gcd of numerators over lcm of denominators, always positive.
inline Rat rat_gcd(const Rat& a, const Rat& b) {
    Rat r;
    mpz_gcd(r.get_num_mpz_t(), a.get_num_mpz_t(), b.get_num_mpz_t());
    mpz_lcm(r.get_den_mpz_t(), a.get_den_mpz_t(), b.get_den_mpz_t());
    r.canonicalize();
    return r;
}

// Divide out the row's content and fix the sign of the first entry.
inline void normalize_row(const SampledCtx&, SpRow<Rat>& r) {
    if (r.empty()) return;
    Rat g(0);
    for (const auto& [c, v] : r) {
        (void)c;
        g = rat_gcd(g, v < 0 ? Rat(-v) : v);
    }
    if (r.front().second < 0) g = -g;
    for (auto& [c, v] : r) {
        (void)c;
        v /= g;
    }
}

inline void normalize_row(const SymbolicCtx&, SpRow<QRat>& r) {
    if (r.empty()) return;
    // clear polynomial denominators (rare: elimination keeps them trivial)
    Laurent den = Laurent::one();
    for (const auto& [c, v] : r) {
        (void)c;
        if (v.has_poly_den()) {
            auto a = den.split_primitive();
            auto b = v.den().split_primitive();
            den = den * v.den().divexact(
                            Laurent::from_split(Rat(1), 0, Laurent::gcd_primitive(a.poly, b.poly)));
        }
    }
    if (!den.is_one()) {
        QRat m{den};
        for (auto& [c, v] : r) {
            (void)c;
            v = v * m;
        }
    }
    // strip the common scale, q-power, and primitive polynomial factor
    Rat scale(0);
    int shift = 0;
    std::vector<Int> prim;
    bool first = true;
    for (const auto& [c, v] : r) {
        (void)c;
        auto sp = v.num().split_primitive();
        Rat s = sp.scale < 0 ? Rat(-sp.scale) : sp.scale;
        if (first) {
            scale = s;
            shift = sp.shift;
            prim = std::move(sp.poly);
            first = false;
        } else {
            scale = rat_gcd(scale, s);
            shift = std::min(shift, sp.shift);
            if (!(prim.size() == 1 && prim[0] == 1))
                prim = Laurent::gcd_primitive(prim, sp.poly);
        }
    }
    if (r.front().second.num().leading() < 0) scale = -scale;
    QRat g{Laurent::from_split(scale, shift, prim)};
    for (auto& [c, v] : r) {
        (void)c;
        v = v / g;
    }
}

// -- elimination --------------------------------------------------------------

template <class K>
struct Factorization {
    int cols = 0;
    std::vector<SpRow<K>> pivot_rows;  // elimination order; row i is zero on
    std::vector<int> pivot_cols;       // every pivot column chosen before i
    std::vector<char> is_pivot_col;
    int leftover = 0;  // nonzero rows with no admissible pivot column

    int rank() const { return static_cast<int>(pivot_rows.size()); }
    std::vector<int> free_cols(int limit = -1) const {
        std::vector<int> f;
        const int m = limit < 0 ? cols : limit;
        for (int j = 0; j < m; ++j)
            if (!is_pivot_col[j]) f.push_back(j);
        return f;
    }
};

/*
 * Run the full elimination.  Pivots are restricted to columns < pivot_limit
 * (default: all); rows that end up supported only on columns >= pivot_limit
 * are counted in `leftover`, which is how solves detect inconsistency.
 */
template <class Ctx, class K = typename Ctx::K>
Factorization<K> eliminate(const Ctx& F, int cols, std::vector<SpRow<K>> rows,
                           int pivot_limit = -1) {
    if (pivot_limit < 0) pivot_limit = cols;
    Factorization<K> fact;
    fact.cols = cols;
    fact.is_pivot_col.assign(static_cast<size_t>(cols), 0);

    for (auto& r : rows) normalize_row(F, r);
    std::vector<int> colcnt(static_cast<size_t>(cols), 0);
    for (const auto& r : rows)
        for (const auto& [c, v] : r) {
            (void)v;
            ++colcnt[static_cast<size_t>(c)];
        }
    std::vector<char> active(rows.size(), 1);

    for (;;) {
        // Markowitz pivot search over all admissible nonzero entries
        long best = -1;
        int bi = -1, bj = -1;
        for (size_t i = 0; i < rows.size(); ++i) {
            if (!active[i] || rows[i].empty()) continue;
            const long rn = static_cast<long>(rows[i].size()) - 1;
            for (const auto& [j, v] : rows[i]) {
                (void)v;
                if (j >= pivot_limit) continue;
                const long score = rn * (colcnt[static_cast<size_t>(j)] - 1);
                if (best < 0 || score < best ||
                    (score == best && (j < bj || (j == bj && static_cast<int>(i) < bi)))) {
                    best = score;
                    bi = static_cast<int>(i);
                    bj = j;
                }
            }
        }
        if (bi < 0) break;

        SpRow<K> piv = std::move(rows[static_cast<size_t>(bi)]);
        active[static_cast<size_t>(bi)] = 0;
        for (const auto& [c, v] : piv) {
            (void)v;
            --colcnt[static_cast<size_t>(c)];
        }
        const K& pv = *row_get(piv, bj);
        for (size_t k = 0; k < rows.size(); ++k) {
            if (!active[k]) continue;
            const K* kv = row_get(rows[k], bj);
            if (!kv) continue;
            for (const auto& [c, v] : rows[k]) {
                (void)v;
                --colcnt[static_cast<size_t>(c)];
            }
            const K negkv = K(0) - *kv;
            SpRow<K> nr = row_combine(F, rows[k], pv, piv, negkv);
            normalize_row(F, nr);
            rows[k] = std::move(nr);
            for (const auto& [c, v] : rows[k]) {
                (void)v;
                ++colcnt[static_cast<size_t>(c)];
            }
        }
        fact.pivot_rows.push_back(std::move(piv));
        fact.pivot_cols.push_back(bj);
        fact.is_pivot_col[static_cast<size_t>(bj)] = 1;
    }

    for (size_t i = 0; i < rows.size(); ++i)
        if (active[i] && !rows[i].empty()) ++fact.leftover;
    return fact;
}

template <class Ctx, class K = typename Ctx::K>
int rank_of(const Ctx& F, int cols, std::vector<SpRow<K>> rows) {
    return eliminate(F, cols, std::move(rows)).rank();
}

/*
 * Kernel basis, one vector per free column.  The vector for free column fc
 * has x[fc] = 1 and every other free coordinate 0; pivot coordinates are
 * back-substituted in reverse elimination order, which only ever consults
 * coordinates fixed later in that order.  Vectors are content normalized.
 */
template <class Ctx, class K = typename Ctx::K>
void back_substitute(const Ctx&, const Factorization<K>& fact, std::vector<K>& x) {
    for (int i = fact.rank() - 1; i >= 0; --i) {
        const SpRow<K>& row = fact.pivot_rows[static_cast<size_t>(i)];
        const int pc = fact.pivot_cols[static_cast<size_t>(i)];
        K acc(0);
        const K* pv = nullptr;
        for (const auto& [c, v] : row) {
            if (c == pc) {
                pv = &v;
                continue;
            }
            if (!Ctx::is_zero(x[static_cast<size_t>(c)])) acc = acc + v * x[static_cast<size_t>(c)];
        }
        if (!Ctx::is_zero(acc)) x[static_cast<size_t>(pc)] = (K(0) - acc) / *pv;
    }
}

template <class Ctx, class K = typename Ctx::K>
std::vector<SpRow<K>> nullspace(const Ctx& F, const Factorization<K>& fact) {
    std::vector<SpRow<K>> basis;
    for (int fc : fact.free_cols()) {
        std::vector<K> x(static_cast<size_t>(fact.cols), K(0));
        x[static_cast<size_t>(fc)] = K(1);
        back_substitute(F, fact, x);
        SpRow<K> v;
        for (int c = 0; c < fact.cols; ++c)
            if (!Ctx::is_zero(x[static_cast<size_t>(c)]))
                v.emplace_back(c, std::move(x[static_cast<size_t>(c)]));
        normalize_row(F, v);
        basis.push_back(std::move(v));
    }
    return basis;
}

template <class K>
struct SolveResult {
    bool consistent = false;
    SpRow<K> x;  // one solution with every free coordinate zero
};

/*
 * Solve A x = b exactly.  Rows of A are paired with rhs entries through the
 * augmented column `cols`; pivots never enter that column, so a leftover
 * nonzero row certifies inconsistency.
 */
template <class Ctx, class K = typename Ctx::K>
SolveResult<K> solve_consistent(const Ctx& F, int cols, const std::vector<SpRow<K>>& rows,
                                const std::vector<K>& rhs) {
    std::vector<SpRow<K>> aug = rows;
    for (size_t i = 0; i < aug.size(); ++i)
        if (!Ctx::is_zero(rhs[i])) aug[i].emplace_back(cols, K(0) - rhs[i]);
    Factorization<K> fact = eliminate(F, cols + 1, std::move(aug), cols);
    SolveResult<K> res;
    if (fact.leftover > 0) return res;
    res.consistent = true;
    std::vector<K> x(static_cast<size_t>(cols) + 1, K(0));
    x[static_cast<size_t>(cols)] = K(1);  // the augmented coordinate is pinned to 1
    back_substitute(F, fact, x);
    for (int c = 0; c < cols; ++c)
        if (!Ctx::is_zero(x[static_cast<size_t>(c)]))
            res.x.emplace_back(c, std::move(x[static_cast<size_t>(c)]));
    return res;
}

// Keep only columns with remap[col] >= 0, renumbering accordingly.
template <class K>
SpRow<K> restrict_row(const SpRow<K>& r, const std::vector<int>& remap) {
    SpRow<K> out;
    for (const auto& [c, v] : r) {
        int nc = remap[static_cast<size_t>(c)];
        if (nc >= 0) out.emplace_back(nc, v);
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

}  // namespace qwitt

#endif
