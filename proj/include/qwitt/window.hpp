#ifndef QWITT_WINDOW_HPP
#define QWITT_WINDOW_HPP

#include <stdexcept>
#include <vector>

namespace qwitt {

/*
 * Finite truncation used by all window-scale computations.  Degree indices
 * live in [-N, N]; pair slots (n, p) are kept only when n, p and n + p all
 * lie in that band, so no formula ever has to read a coefficient the window
 * cannot represent.  The core sub-band [-N_core, N_core] is the region whose
 * conclusions are insulated from truncation; production entry points insist
 * on a margin of at least 6 (enough for every index shift the sector
 * reductions perform), while the library constructor only checks ordering so
 * that experiments at other margins stay possible.
 */
struct Window {
    int N = 0;
    int N_core = 0;

    Window(int n, int core) : N(n), N_core(core) {
        if (n < 1 || core < 1 || core > n)
            throw std::invalid_argument("Window: need 1 <= N_core <= N");
    }

    static constexpr int kStandardMargin = 6;
    bool has_standard_margin() const { return N_core <= N - kStandardMargin; }

    bool in_band(int n) const { return n >= -N && n <= N; }
    bool pair_in(int n, int p) const { return in_band(n) && in_band(p) && in_band(n + p); }
    bool pair_in_core(int n, int p) const {
        return n >= -N_core && n <= N_core && p >= -N_core && p <= N_core &&
               n + p >= -N_core && n + p <= N_core;
    }
    // Every coefficient slot referenced by the cocycle equation at (n, m, p)
    // exists exactly when all single, pair and triple sums stay in band.
    bool triple_in(int n, int m, int p) const {
        return in_band(n) && in_band(m) && in_band(p) && in_band(n + m) &&
               in_band(n + p) && in_band(m + p) && in_band(n + m + p);
    }

    // Canonical pair enumeration: lexicographic by (n, p).
    template <class F>
    void for_pairs(F&& f) const {
        for (int n = -N; n <= N; ++n)
            for (int p = std::max(-N, -N - n); p <= std::min(N, N - n); ++p) f(n, p);
    }

    // Same enumeration restricted to the core subwindow.
    template <class F>
    void for_core_pairs(F&& f) const {
        for (int n = -N_core; n <= N_core; ++n)
            for (int p = std::max(-N_core, -N_core - n); p <= std::min(N_core, N_core - n); ++p)
                f(n, p);
    }
};

}  // namespace qwitt

#endif
