#ifndef QWITT_SYSTEM_HPP
#define QWITT_SYSTEM_HPP

#include <array>

#include "qwitt/coboundary.hpp"
#include "qwitt/sparse.hpp"

namespace qwitt {

/*
 * Assembly of the degree-s cocycle system on a window.  Unknowns are the
 * canonical 2-cochain slots of the pair domain, ordered A block (n < p), then
 * B (all pairs), then C (n <= p), lex within each block; equations are one
 * d2 row per canonical argument triple.
 */
class ColumnMap {
public:
    explicit ColumnMap(const Window& w) : w_(w) {
        w.for_pairs([&](int n, int p) {
            if (n < p) push({Block::A, n, p});
        });
        w.for_pairs([&](int n, int p) { push({Block::B, n, p}); });
        w.for_pairs([&](int n, int p) {
            if (n <= p) push({Block::C, n, p});
        });
    }

    const Window& window() const { return w_; }
    int cols() const { return static_cast<int>(slots_.size()); }
    const Slot& slot(int c) const { return slots_[static_cast<size_t>(c)]; }
    int col(const Slot& s) const {
        auto it = index_.find(s);
        return it == index_.end() ? -1 : it->second;
    }

    // Projection onto the slots of the core subwindow: remap[col] is the
    // renumbered core column, or -1 for rim slots.
    std::vector<int> core_remap() const {
        std::vector<int> remap(slots_.size(), -1);
        int next = 0;
        for (size_t i = 0; i < slots_.size(); ++i)
            if (w_.pair_in_core(slots_[i].n, slots_[i].p)) remap[i] = next++;
        return remap;
    }
    int core_cols() const {
        int k = 0;
        for (const auto& s : slots_)
            if (w_.pair_in_core(s.n, s.p)) ++k;
        return k;
    }

private:
    void push(const Slot& s) {
        index_.emplace(s, static_cast<int>(slots_.size()));
        slots_.push_back(s);
    }
    Window w_;
    std::vector<Slot> slots_;
    std::map<Slot, int> index_;
};

// One representative triple per super-antisymmetry orbit, every argument and
// partial sum inside the band.
template <class Fn>
void for_canonical_triples(const Window& w, Fn&& fn) {
    for (int n = -w.N; n <= w.N; ++n)
        for (int m = -w.N; m <= w.N; ++m)
            for (int p = -w.N; p <= w.N; ++p) {
                if (!w.triple_in(n, m, p)) continue;
                if (n < m && m < p) fn(L(n), L(m), L(p));
                if (n < m) fn(L(n), L(m), G(p));
                if (m <= p) fn(L(n), G(m), G(p));
                if (n <= m && m <= p) fn(G(n), G(m), G(p));
            }
}

template <class Ctx, class K = typename Ctx::K>
SpRow<K> system_row(const Ctx& F, int parity, int s, const ColumnMap& cm, const Bas& x,
                    const Bas& y, const Bas& z) {
    Row<K> row = d2_row(F, parity, s, cm.window(), x, y, z);
    SpRow<K> r;
    r.reserve(row.size());
    for (const auto& [sl, v] : row) {
        int c = cm.col(sl);
        if (c < 0) throw SlotError("system row hit a slot outside the pair domain");
        r.emplace_back(c, v);
    }
    std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return r;
}

template <class Ctx, class K = typename Ctx::K>
std::vector<SpRow<K>> build_system(const Ctx& F, int parity, int s, const ColumnMap& cm) {
    std::vector<SpRow<K>> rows;
    for_canonical_triples(cm.window(), [&](const Bas& x, const Bas& y, const Bas& z) {
        SpRow<K> r = system_row(F, parity, s, cm, x, y, z);
        if (!r.empty()) rows.push_back(std::move(r));
    });
    return rows;
}

template <class Ctx, class K = typename Ctx::K>
SpRow<K> cochain_to_row(const Ctx&, const Cochain2<K>& f, const ColumnMap& cm) {
    SpRow<K> r;
    auto emit = [&](Block blk, const std::map<std::pair<int, int>, K>& m) {
        for (const auto& [np, v] : m) {
            int c = cm.col({blk, np.first, np.second});
            if (c < 0) throw SlotError("cochain slot outside the pair domain");
            r.emplace_back(c, v);
        }
    };
    emit(Block::A, f.a);
    emit(Block::B, f.b);
    emit(Block::C, f.c);
    std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return r;
}

template <class Ctx, class K = typename Ctx::K>
Cochain2<K> row_to_cochain(const Ctx& F, int parity, int s, const SpRow<K>& r,
                           const ColumnMap& cm) {
    Cochain2<K> f(parity, s);
    for (const auto& [c, v] : r) {
        const Slot& sl = cm.slot(c);
        if (sl.blk == Block::A)
            f.add_a(F, sl.n, sl.p, v);
        else if (sl.blk == Block::B)
            f.add_b(F, sl.n, sl.p, v);
        else
            f.add_c(F, sl.n, sl.p, v);
    }
    return f;
}

// d2(f) = 0 on every canonical triple of the window.
template <class Ctx, class K = typename Ctx::K>
bool is_window_cocycle(const Ctx& F, const Cochain2<K>& f, const Window& w) {
    bool ok = true;
    for_canonical_triples(w, [&](const Bas& x, const Bas& y, const Bas& z) {
        if (ok && !d2_triple(F, f, w, x, y, z).is_zero()) ok = false;
    });
    return ok;
}

// Basis of the window-truncated cocycle space, as cochains; deterministic
// (one vector per free column of the canonical elimination).
template <class Ctx, class K = typename Ctx::K>
std::vector<Cochain2<K>> kernel_cochains(const Ctx& F, int parity, int s, const ColumnMap& cm) {
    auto fact = eliminate(F, cm.cols(), build_system<Ctx, K>(F, parity, s, cm));
    std::vector<Cochain2<K>> out;
    for (auto& v : nullspace(F, fact)) out.push_back(row_to_cochain(F, parity, s, v, cm));
    return out;
}

// d1 images of the unit 1-cochains (a[n] = 1, then b[n] = 1, n ascending).
// These span the window-truncated coboundary space.
template <class Ctx, class K = typename Ctx::K>
std::vector<Cochain2<K>> coboundary_image_basis(const Ctx& F, int parity, int s,
                                                const Window& w) {
    std::vector<Cochain2<K>> images;
    for (int which = 0; which < 2; ++which)
        for (int n = -w.N; n <= w.N; ++n) {
            Cochain1<K> g(parity, s, w);
            (which == 0 ? g.aref(n) : g.bref(n)) = K(1);
            Cochain2<K> im = d1(F, g);
            if (!im.is_zero()) images.push_back(std::move(im));
        }
    return images;
}

}  // namespace qwitt

#endif
