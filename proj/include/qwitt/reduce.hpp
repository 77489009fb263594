#ifndef QWITT_REDUCE_HPP
#define QWITT_REDUCE_HPP

#include "qwitt/system.hpp"

namespace qwitt {

/*
 * Constructive reduction of window cocycles to 1-cochain preimages: given a
 * degree-s cocycle f, build g with d1(g) = f on the core subwindow.  Each
 * (parity, degree) sector has its own recursion; all of them read f only at
 * pairs inside the window and fill the whole band [-N, N], which is why the
 * window needs margin around the core (reduce itself insists on N >= 3, the
 * sweep driver enforces the full margin).  The returned certificate carries
 * the exact residual d1(g) - f; `core_exact` says it vanishes on every core
 * slot, and that flag is the entire claim (the rim residual is expected to
 * be nonzero, window truncation cuts the defining equations off there).
 */

struct ReduceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotACocycle : ReduceError {
    using ReduceError::ReduceError;
};
struct ResidualNonzero : ReduceError {
    using ReduceError::ReduceError;
};
struct RecursionOutOfWindow : ReduceError {
    using ReduceError::ReduceError;
};
struct InadmissibleSample : ReduceError {
    using ReduceError::ReduceError;
};

template <class K>
struct Certificate {
    Cochain1<K> g;
    Cochain2<K> residual;  // d1(g) - f on the whole window
    bool core_exact = false;
};

namespace detail {

template <class Ctx, class K = typename Ctx::K>
K checked_div(const Ctx&, const K& num, const K& den) {
    if (Ctx::is_zero(den))
        throw InadmissibleSample("reduction divides by a vanished denominator");
    return num / den;
}

/*
 * Generic degrees use the L0 row: f(L0, Lp) = q^p {t} a_p - ({t} - {p}) a_0
 * (t = s for even cochains, s + 1 for odd ones) and likewise for b.  The
 * p = 0 instance is vacuous, so the row determines g only up to the one
 * parameter a_0; the image of that direction is fitted afterwards.  Any
 * preimage of f necessarily lies in this family, so matching one nonzero
 * slot of the direction image pins the parameter.
 */
template <class Ctx, class K = typename Ctx::K>
Cochain1<K> zero_row_direction(const Ctx& F, int parity, int s, const Window& w) {
    const int t = parity == 0 ? s : s + 1;
    Cochain1<K> g(parity, s, w);
    for (int p = -w.N; p <= w.N; ++p) {
        g.aref(p) = checked_div(F, K(F.qnum(t) - F.qnum(p)), K(F.qpow(p) * F.qnum(t)));
        if (parity == 0)
            g.bref(p) = checked_div(F, K(K(0) - (F.qnum(p + 1) - F.qnum(s))),
                                    K(F.qpow(p + 1) * F.qnum(s)));
    }
    return g;
}

template <class Ctx, class K = typename Ctx::K>
Cochain1<K> reduce_generic(const Ctx& F, const Cochain2<K>& f, const Window& w, int sa,
                           int sb) {
    Cochain1<K> g(f.parity, f.s, w);
    for (int p = -w.N; p <= w.N; ++p) {
        g.aref(p) = checked_div(F, f.aval(0, p), K(F.qpow(p) * F.qnum(sa)));
        g.bref(p) = checked_div(F, f.bval(0, p), K(F.qpow(p + 1) * F.qnum(sb)));
    }

    Cochain2<K> r0 = d1(F, g);
    r0.add_scaled(F, f, K(-1));
    if (r0.is_zero()) return g;

    Cochain1<K> dir = zero_row_direction(F, f.parity, f.s, w);
    Cochain2<K> r1 = d1(F, dir);
    const K* pivot = nullptr;
    K at(0);
    if (!r1.a.empty()) {
        pivot = &r1.a.begin()->second;
        at = r0.aval(r1.a.begin()->first.first, r1.a.begin()->first.second);
    } else if (!r1.b.empty()) {
        pivot = &r1.b.begin()->second;
        at = r0.bval(r1.b.begin()->first.first, r1.b.begin()->first.second);
    } else if (!r1.c.empty()) {
        pivot = &r1.c.begin()->second;
        at = r0.cval(r1.c.begin()->first.first, r1.c.begin()->first.second);
    }
    if (pivot) g.add_scaled(F, dir, checked_div(F, K(K(0) - at), *pivot));
    return g;
}

// Even degree 0.  Gauge: a[1] = 0, b[0] = 0 (the two directions d1 kills).
template <class Ctx, class K = typename Ctx::K>
Cochain1<K> reduce_even_zero(const Ctx& F, const Cochain2<K>& f, const Window& w) {
    const int N = w.N;
    Cochain1<K> g(0, 0, w);
    g.aref(1) = K(0);
    g.aref(0) = f.aval(0, 1);  // {1} = 1
    for (int n = -1; n >= -N; --n)
        g.aref(n) = g.aval(n + 1) + checked_div(F, f.aval(n, 1), K(F.qnum(1) - F.qnum(n)));
    g.aref(2) = checked_div(F, f.aval(-1, 2), K(F.qnum(2) - F.qnum(-1))) - g.aval(-1);
    for (int n = 2; n < N; ++n)
        g.aref(n + 1) = g.aval(n) + checked_div(F, f.aval(n, 1), K(F.qnum(n) - F.qnum(1)));
    g.bref(0) = K(0);
    for (int m = -1; m >= -N; --m)
        g.bref(m) =
            g.bval(m + 1) - checked_div(F, f.bval(1, m), K(F.qnum(1) - F.qnum(m + 1)));
    g.bref(1) = K(0) - g.aval(-1) -
                checked_div(F, f.bval(-1, 1), K(F.qnum(-1) - F.qnum(2)));
    for (int m = 1; m < N; ++m)
        g.bref(m + 1) =
            g.bval(m) + checked_div(F, f.bval(1, m), K(F.qnum(1) - F.qnum(m + 1)));
    return g;
}

// Odd degree 1.  The b part recurses off the L1 pairings (gauge b[0] = 0);
// the a part seeds (a[-1] = 0) and recurses off f(.,L1), and a second pass
// absorbs what is left of the L0 row, whose scale factor {2} is invertible.
template <class Ctx, class K = typename Ctx::K>
Cochain1<K> reduce_odd_one(const Ctx& F, const Cochain2<K>& f, const Window& w) {
    const int N = w.N;
    const K q = F.qpow(1);
    Cochain1<K> g1(1, 1, w);

    g1.bref(0) = K(0);
    g1.bref(1) = checked_div(F, f.bval(-1, 1), K(F.qnum(2) - F.qnum(-1)));
    for (int m = -1; m >= -N; --m)
        g1.bref(m) =
            g1.bval(m + 1) + checked_div(F, f.bval(1, m), K(F.qnum(m + 1) - F.qnum(1)));
    for (int m = 1; m < N; ++m)
        g1.bref(m + 1) =
            g1.bval(m) + checked_div(F, f.bval(1, m), K(F.qnum(1) - F.qnum(m + 1)));

    g1.aref(-1) = K(0);
    const K a1 = checked_div(F, f.aval(-1, 1), K(q * q - K(1))) +
                 checked_div(F, f.aval(0, 1), K(q * q - q * q * q));
    g1.aref(1) = a1;
    g1.aref(0) = checked_div(F, K((F.qnum(3) - F.qnum(-1)) * a1 - f.aval(-1, 1)),
                             K(F.qnum(1) - F.qnum(-1)));
    for (int n = -2; n >= -N; --n)
        g1.aref(n) = checked_div(
            F,
            K(K(0) - f.aval(n, 1) + (F.qnum(3) - F.qnum(n)) * a1 +
              (F.qnum(n) - F.qnum(1)) * g1.aval(n + 1)),
            K(F.qnum(n + 2) - F.qnum(1)));
    g1.aref(2) = checked_div(F, K((F.qnum(2) - F.qnum(-1)) * a1 - f.aval(2, -1)),
                             K(F.qnum(4) - F.qnum(-1)));
    for (int n = 2; n < N; ++n)
        g1.aref(n + 1) = checked_div(
            F,
            K(f.aval(n, 1) - (F.qnum(3) - F.qnum(n)) * a1 +
              (F.qnum(n + 2) - F.qnum(1)) * g1.aval(n)),
            K(F.qnum(n) - F.qnum(1)));

    Cochain2<K> h = d1(F, g1);
    h.add_scaled(F, f, K(-1));  // h = d1(g1) - f; the L0 row of -h remains
    Cochain1<K> g(1, 1, w);
    g.add_scaled(F, g1, K(1));
    for (int p = -N; p <= N; ++p)
        g.aref(p) = g.aval(p) +
                    checked_div(F, K(K(0) - h.aval(0, p)), K(F.qpow(p) * F.qnum(2)));
    return g;
}

// Odd degree -1, mirror image of degree 1: the a part recurses off f(L1, .)
// (gauge a[1] = 0), the b part off the L1 pairings with rational seeds, and
// the second pass absorbs the L0 row against {-2}.
template <class Ctx, class K = typename Ctx::K>
Cochain1<K> reduce_odd_minus_one(const Ctx& F, const Cochain2<K>& f, const Window& w) {
    const int N = w.N;
    const K q = F.qpow(1);
    Cochain1<K> g1(1, -1, w);

    g1.aref(1) = K(0);
    for (int n = 0; n >= -N; --n)
        g1.aref(n) =
            g1.aval(n + 1) - checked_div(F, f.aval(1, n), K(F.qnum(1) - F.qnum(n)));
    g1.aref(2) = K(0) - checked_div(F, f.aval(2, -1), K(F.qnum(2) - F.qnum(-1))) -
                 g1.aval(-1);
    for (int n = 2; n < N; ++n)
        g1.aref(n + 1) =
            checked_div(F, f.aval(1, n), K(F.qnum(1) - F.qnum(n))) + g1.aval(n);

    g1.bref(0) = checked_div(F, K(K(0) - q * f.bval(1, 0)), K(K(1) + q));
    for (int m = -1; m >= -N; --m)
        g1.bref(m) = checked_div(
            F,
            K((F.qnum(m + 1) - F.qnum(1)) * g1.bval(m + 1) + f.bval(1, m)),
            K(F.qnum(m - 1) - F.qnum(1)));
    g1.bref(1) = q * f.bval(-1, 1) -
                 q * checked_div(F, F.qnum(3), F.qnum(2)) * f.bval(1, 0);
    for (int m = 1; m < N; ++m)
        g1.bref(m + 1) = checked_div(
            F,
            K((F.qnum(1) - F.qnum(m - 1)) * g1.bval(m) + f.bval(1, m)),
            K(F.qnum(1) - F.qnum(m + 1)));

    Cochain2<K> h = d1(F, g1);
    h.add_scaled(F, f, K(-1));
    Cochain1<K> g(1, -1, w);
    g.add_scaled(F, g1, K(1));
    for (int p = -N; p <= N; ++p)
        g.bref(p) = g.bval(p) + checked_div(F, K(K(0) - h.bval(0, p)),
                                            K(F.qpow(p + 1) * F.qnum(-2)));
    return g;
}

}  // namespace detail

template <class Ctx, class K = typename Ctx::K>
Certificate<K> reduce_cocycle(const Ctx& F, const Cochain2<K>& f, const Window& w,
                              bool check_cocycle = true) {
    if (w.N < 3)
        throw RecursionOutOfWindow("reduction needs a window of at least N = 3");
    if (check_cocycle && !is_window_cocycle(F, f, w))
        throw NotACocycle("input fails the window cocycle equations");

    Cochain1<K> g(f.parity, f.s, w);
    if (f.parity == 0) {
        if (f.s == 0)
            g = detail::reduce_even_zero(F, f, w);
        else
            g = detail::reduce_generic(F, f, w, f.s, f.s);
    } else {
        if (f.s == 1)
            g = detail::reduce_odd_one(F, f, w);
        else if (f.s == -1)
            g = detail::reduce_odd_minus_one(F, f, w);
        else
            g = detail::reduce_generic(F, f, w, f.s + 1, f.s - 1);
    }

    Certificate<K> cert{std::move(g), Cochain2<K>(f.parity, f.s), false};
    cert.residual = d1(F, cert.g);
    cert.residual.add_scaled(F, f, K(-1));
    cert.core_exact = cert.residual.is_zero_on_core(F, w);
    return cert;
}

// Throwing form: a certificate whose residual survives on the core is an
// error for callers that promised one exists.
template <class Ctx, class K = typename Ctx::K>
Certificate<K> reduce_strict(const Ctx& F, const Cochain2<K>& f, const Window& w) {
    Certificate<K> cert = reduce_cocycle(F, f, w);
    if (!cert.core_exact)
        throw ResidualNonzero("constructed preimage misses the cocycle on the core");
    return cert;
}

}  // namespace qwitt

#endif
