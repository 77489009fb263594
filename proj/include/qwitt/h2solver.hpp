#ifndef QWITT_H2SOLVER_HPP
#define QWITT_H2SOLVER_HPP

#include <array>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "qwitt/reduce.hpp"
#include "qwitt/system.hpp"

namespace qwitt {

/*
 * Per-sector cohomology analysis on a window.  One elimination of the cocycle
 * system yields the kernel; the reported dimensions are
 *
 *   dim_Z_core   rank of the kernel basis restricted to the core columns,
 *   dim_B_core   rank, on the core columns, of the span of coboundaries that
 *                satisfy the cocycle system,
 *   dim_H2_core  their difference.
 *
 * The coboundary image is intersected with the kernel before projecting: an
 * image vector need not satisfy the cocycle rows here (the composite of the
 * two coboundary maps vanishes only on alpha compatible arguments), and the
 * quotient is only meaningful inside the cocycle space.  This also makes the
 * projections nest, so dim_H2_core is never negative.  Restricting to the
 * core discards rim slots whose defining equations were truncated away.
 */

struct SectorOptions {
    // Row generation is chunked over this many workers; every value produces
    // the same rows in the same order.
    int threads = 1;
    // Run the constructive reducer over each kernel basis element and count
    // the core-exact certificates (independent confirmation of dim_B_core).
    bool certificates = true;
    // Off by default so repeated runs emit byte-identical reports.
    bool timings = false;
};

struct SectorReport {
    int parity = 0;
    int s = 0;
    int N = 0;
    int N_core = 0;
    std::string mode;
    int dim_Z_window = 0;
    int dim_Z_core = 0;
    int dim_B_core = 0;
    int dim_H2_core = 0;
    int kernel_reduced = 0;  // kernel basis elements with a core-exact certificate
    long long wall_time_ms = 0;
};

inline void check_admissible(const SymbolicCtx&, const Window&) {}
inline void check_admissible(const SampledCtx& F, const Window& w) {
    if (!is_admissible(F.sample(), w))
        throw InadmissibleSample("sample q=" + rat_str(F.sample().q) +
                                 " hits a q-number or 1+q^n zero inside the window radius");
}

inline std::vector<std::array<Bas, 3>> canonical_triples(const Window& w) {
    std::vector<std::array<Bas, 3>> ts;
    for_canonical_triples(w, [&](const Bas& x, const Bas& y, const Bas& z) {
        ts.push_back({x, y, z});
    });
    return ts;
}

/*
 * Generate the system rows, optionally in parallel.  Each worker owns a copy
 * of the context (the q-power caches mutate on read) and writes disjoint
 * slots of a preallocated table, so the output is independent of scheduling.
 */
template <class Ctx, class K = typename Ctx::K>
std::vector<SpRow<K>> build_system_rows(const Ctx& F, int parity, int s, const ColumnMap& cm,
                                        int threads) {
    const std::vector<std::array<Bas, 3>> ts = canonical_triples(cm.window());
    std::vector<SpRow<K>> table(ts.size());
    if (threads <= 1 || ts.size() < 128) {
        for (size_t i = 0; i < ts.size(); ++i)
            table[i] = system_row(F, parity, s, cm, ts[i][0], ts[i][1], ts[i][2]);
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        std::exception_ptr err;
        std::mutex err_mu;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&]() {
                Ctx local(F);
                constexpr size_t chunk = 64;
                try {
                    for (;;) {
                        const size_t b = next.fetch_add(chunk);
                        if (b >= ts.size()) break;
                        const size_t e = std::min(ts.size(), b + chunk);
                        for (size_t i = b; i < e; ++i)
                            table[i] = system_row(local, parity, s, cm, ts[i][0], ts[i][1], ts[i][2]);
                    }
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mu);
                    if (!err) err = std::current_exception();
                }
            });
        for (auto& th : pool) th.join();
        if (err) std::rethrow_exception(err);
    }
    std::vector<SpRow<K>> rows;
    rows.reserve(table.size());
    for (auto& r : table)
        if (!r.empty()) rows.push_back(std::move(r));
    return rows;
}

/*
 * Basis of span(gens) intersected with ker(sys).  Solved in generator
 * coordinates: the small matrix T with T[r][i] = sys_row_r . gens_i has
 * kernel exactly the coefficient vectors whose combination satisfies every
 * row.  Combinations that cancel to zero (generator dependencies) are
 * dropped.
 */
template <class Ctx, class K = typename Ctx::K>
std::vector<SpRow<K>> cocycle_combinations(const Ctx& F, const std::vector<SpRow<K>>& sys,
                                           const std::vector<SpRow<K>>& gens, int cols) {
    std::vector<std::vector<std::pair<int, K>>> colhits(static_cast<size_t>(cols));
    for (size_t i = 0; i < gens.size(); ++i)
        for (const auto& [c, v] : gens[i])
            colhits[static_cast<size_t>(c)].emplace_back(static_cast<int>(i), v);

    std::vector<SpRow<K>> trows;
    for (const auto& r : sys) {
        std::map<int, K> acc;
        for (const auto& [c, v] : r)
            for (const auto& [i, gv] : colhits[static_cast<size_t>(c)]) {
                auto it = acc.emplace(i, K(0)).first;
                it->second = it->second + v * gv;
            }
        SpRow<K> tr;
        for (auto& [i, v] : acc)
            if (!Ctx::is_zero(v)) tr.emplace_back(i, std::move(v));
        if (!tr.empty()) trows.push_back(std::move(tr));
    }

    std::vector<SpRow<K>> out;
    for (const auto& x : nullspace(F, eliminate(F, static_cast<int>(gens.size()), std::move(trows)))) {
        SpRow<K> v;
        for (const auto& [i, xi] : x) v = row_combine(F, v, K(1), gens[static_cast<size_t>(i)], xi);
        normalize_row(F, v);
        if (!v.empty()) out.push_back(std::move(v));
    }
    return out;
}

template <class Ctx, class K = typename Ctx::K>
SectorReport analyze_sector(const Ctx& F, int parity, int s, const Window& w,
                            const SectorOptions& opt = {}) {
    check_admissible(F, w);
    const auto t0 = std::chrono::steady_clock::now();

    ColumnMap cm(w);
    const std::vector<SpRow<K>> rows = build_system_rows(F, parity, s, cm, opt.threads);
    const Factorization<K> fact = eliminate(F, cm.cols(), rows);
    const std::vector<SpRow<K>> kernel = nullspace(F, fact);
    const std::vector<int> remap = cm.core_remap();

    SectorReport rep;
    rep.parity = parity;
    rep.s = s;
    rep.N = w.N;
    rep.N_core = w.N_core;
    rep.mode = F.describe();
    rep.dim_Z_window = static_cast<int>(kernel.size());

    std::vector<SpRow<K>> zcore;
    zcore.reserve(kernel.size());
    for (const auto& v : kernel) zcore.push_back(restrict_row(v, remap));
    rep.dim_Z_core = rank_of(F, cm.core_cols(), std::move(zcore));

    std::vector<SpRow<K>> gens;
    for (const auto& f : coboundary_image_basis(F, parity, s, w)) {
        SpRow<K> r = cochain_to_row(F, f, cm);
        if (!r.empty()) gens.push_back(std::move(r));
    }
    std::vector<SpRow<K>> bcore;
    for (const auto& v : cocycle_combinations(F, rows, gens, cm.cols()))
        bcore.push_back(restrict_row(v, remap));
    rep.dim_B_core = rank_of(F, cm.core_cols(), std::move(bcore));
    rep.dim_H2_core = rep.dim_Z_core - rep.dim_B_core;

    if (opt.certificates) {
        for (const auto& v : kernel) {
            const Cochain2<K> f = row_to_cochain(F, parity, s, v, cm);
            try {
                if (reduce_cocycle(F, f, w, /*check_cocycle=*/false).core_exact)
                    ++rep.kernel_reduced;
            } catch (const ReduceError&) {
                // counted as unreduced; dim_B_core above is the authoritative check
            }
        }
    }

    if (opt.timings)
        rep.wall_time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                               std::chrono::steady_clock::now() - t0)
                               .count();
    return rep;
}

// Canonical sector order: even block then odd block, s ascending.
inline std::vector<std::pair<int, int>> sector_list(bool even, bool odd, int s_min, int s_max) {
    std::vector<std::pair<int, int>> v;
    if (even)
        for (int s = s_min; s <= s_max; ++s) v.emplace_back(0, s);
    if (odd)
        for (int s = s_min; s <= s_max; ++s) v.emplace_back(1, s);
    return v;
}

/*
 * Sweep a sector list.  Sectors are distributed over a worker pool; results
 * land in list order, so reports do not depend on scheduling.  Leftover
 * threads are handed down to row generation when the pool is wider than the
 * sector list.
 */
template <class Ctx>
std::vector<SectorReport> sweep(const Ctx& F, const std::vector<std::pair<int, int>>& sectors,
                                const Window& w, const SectorOptions& opt = {}) {
    check_admissible(F, w);
    std::vector<SectorReport> out(sectors.size());
    if (sectors.empty()) return out;

    const int pool_width = std::min<int>(std::max(1, opt.threads), static_cast<int>(sectors.size()));
    SectorOptions per = opt;
    per.threads = std::max(1, opt.threads / pool_width);

    if (pool_width == 1) {
        for (size_t i = 0; i < sectors.size(); ++i)
            out[i] = analyze_sector(F, sectors[i].first, sectors[i].second, w, per);
        return out;
    }

    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr err;
    std::mutex err_mu;
    for (int t = 0; t < pool_width; ++t)
        pool.emplace_back([&]() {
            Ctx local(F);
            try {
                for (;;) {
                    const size_t i = next.fetch_add(1);
                    if (i >= sectors.size()) break;
                    out[i] = analyze_sector(local, sectors[i].first, sectors[i].second, w, per);
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mu);
                if (!err) err = std::current_exception();
            }
        });
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
    return out;
}

}  // namespace qwitt

#endif
