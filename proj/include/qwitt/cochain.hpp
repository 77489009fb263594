#ifndef QWITT_COCHAIN_HPP
#define QWITT_COCHAIN_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "qwitt/superalgebra.hpp"
#include "qwitt/window.hpp"

namespace qwitt {

using Json = nlohmann::ordered_json;

/*
 * Homogeneous cochains of fixed parity and integer degree s, restricted to a
 * window of basis indices.  A 1-cochain g stores one coefficient per
 * generator index in [-N, N]:
 *   even g: g(L[n]) = a[n] L[n+s],  g(G[n]) = b[n] G[n+s]
 *   odd  g: g(L[n]) = a[n] G[n+s],  g(G[n]) = b[n] L[n+s]
 * A 2-cochain f stores one coefficient per canonical pair slot over
 * D_N = {(n,p) : |n|, |p|, |n+p| <= N}:
 *   (L[n], L[p]) -> a[n,p] (n < p, extended antisymmetrically, diagonal 0)
 *   (L[n], G[p]) -> b[n,p] (all slots; (G,L) values follow by super skewness)
 *   (G[n], G[p]) -> c[n,p] (n <= p, extended symmetrically)
 * with targets L/G[n+p+s] as dictated by parity bookkeeping.
 */

struct SlotError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Canonical enumeration of D_N with O(log) slot lookup.
class PairTable {
public:
    explicit PairTable(const Window& w) : w_(w) {
        w.for_pairs([&](int n, int p) {
            index_.emplace(std::make_pair(n, p), static_cast<int>(pairs_.size()));
            pairs_.emplace_back(n, p);
        });
    }
    const Window& window() const { return w_; }
    int size() const { return static_cast<int>(pairs_.size()); }
    const std::pair<int, int>& at(int i) const { return pairs_[i]; }
    int find(int n, int p) const {
        auto it = index_.find({n, p});
        return it == index_.end() ? -1 : it->second;
    }

private:
    Window w_;
    std::vector<std::pair<int, int>> pairs_;
    std::map<std::pair<int, int>, int> index_;
};

template <class K>
struct Cochain1 {
    int parity = 0;
    int s = 0;
    Window w;
    std::vector<K> a, b;  // indexed by n + N

    Cochain1(int parity_, int s_, const Window& w_)
        : parity(parity_), s(s_), w(w_),
          a(2 * w_.N + 1, K(0)), b(2 * w_.N + 1, K(0)) {}

    K& aref(int n) { return a[static_cast<size_t>(n + w.N)]; }
    K& bref(int n) { return b[static_cast<size_t>(n + w.N)]; }
    const K& aval(int n) const { return a[static_cast<size_t>(n + w.N)]; }
    const K& bval(int n) const { return b[static_cast<size_t>(n + w.N)]; }

    // g applied to a basis vector; the input index must lie in the band.
    template <class Ctx>
    Element<K> apply(const Ctx& F, const Bas& x) const {
        if (!w.in_band(x.n)) throw SlotError("cochain1: index outside band");
        Element<K> r;
        if (x.kind == Kind::L)
            r.add(F, Bas{parity ? Kind::G : Kind::L, x.n + s}, aval(x.n));
        else
            r.add(F, Bas{parity ? Kind::L : Kind::G, x.n + s}, bval(x.n));
        return r;
    }

    template <class Ctx>
    Cochain1& add_scaled(const Ctx&, const Cochain1& o, const K& c) {
        for (size_t i = 0; i < a.size(); ++i) a[i] = a[i] + o.a[i] * c;
        for (size_t i = 0; i < b.size(); ++i) b[i] = b[i] + o.b[i] * c;
        return *this;
    }

    template <class Ctx>
    bool is_zero(const Ctx&) const {
        for (const auto& v : a)
            if (!Ctx::is_zero(v)) return false;
        for (const auto& v : b)
            if (!Ctx::is_zero(v)) return false;
        return true;
    }
};

template <class K>
struct Cochain2 {
    int parity = 0;
    int s = 0;
    std::map<std::pair<int, int>, K> a;  // n < p
    std::map<std::pair<int, int>, K> b;  // all of D_N
    std::map<std::pair<int, int>, K> c;  // n <= p

    Cochain2(int parity_, int s_) : parity(parity_), s(s_) {}

    template <class Ctx>
    void add_a(const Ctx& F, int n, int p, const K& v) { accum(F, a, n, p, v); }
    template <class Ctx>
    void add_b(const Ctx& F, int n, int p, const K& v) { accum(F, b, n, p, v); }
    template <class Ctx>
    void add_c(const Ctx& F, int n, int p, const K& v) { accum(F, c, n, p, v); }

    static K get(const std::map<std::pair<int, int>, K>& m, int n, int p) {
        auto it = m.find({n, p});
        return it == m.end() ? K(0) : it->second;
    }
    K aval(int n, int p) const {
        if (n == p) return K(0);
        return n < p ? get(a, n, p) : K(0) - get(a, p, n);
    }
    K bval(int n, int p) const { return get(b, n, p); }
    K cval(int n, int p) const { return n <= p ? get(c, n, p) : get(c, p, n); }

    // f applied to a basis pair (any order); both indices and their sum must
    // lie in the band of the table the cochain was built against.
    template <class Ctx>
    Element<K> apply(const Ctx& F, const Window& w, const Bas& x, const Bas& y) const {
        if (!w.pair_in(x.n, y.n)) throw SlotError("cochain2: pair outside window");
        const int d = x.n + y.n + s;
        Element<K> r;
        if (x.kind == Kind::L && y.kind == Kind::L)
            r.add(F, Bas{parity ? Kind::G : Kind::L, d}, aval(x.n, y.n));
        else if (x.kind == Kind::L && y.kind == Kind::G)
            r.add(F, Bas{parity ? Kind::L : Kind::G, d}, bval(x.n, y.n));
        else if (x.kind == Kind::G && y.kind == Kind::L)
            r.add(F, Bas{parity ? Kind::L : Kind::G, d}, K(0) - bval(y.n, x.n));
        else
            r.add(F, Bas{parity ? Kind::G : Kind::L, d}, cval(x.n, y.n));
        return r;
    }

    template <class Ctx>
    Cochain2& add_scaled(const Ctx& F, const Cochain2& o, const K& v) {
        for (const auto& [np, x] : o.a) accum(F, a, np.first, np.second, x * v);
        for (const auto& [np, x] : o.b) accum(F, b, np.first, np.second, x * v);
        for (const auto& [np, x] : o.c) accum(F, c, np.first, np.second, x * v);
        return *this;
    }

    bool is_zero() const { return a.empty() && b.empty() && c.empty(); }

    // Zero outside the core subwindow, i.e. on every canonical slot of
    // D_{N_core}.  Used to test membership of the projected kernel.
    template <class Ctx>
    bool is_zero_on_core(const Ctx&, const Window& w) const {
        bool ok = true;
        w.for_core_pairs([&](int n, int p) {
            if (n < p && !Ctx::is_zero(get(a, n, p))) ok = false;
            if (!Ctx::is_zero(get(b, n, p))) ok = false;
            if (n <= p && !Ctx::is_zero(get(c, n, p))) ok = false;
        });
        return ok;
    }

private:
    template <class Ctx>
    static void accum(const Ctx&, std::map<std::pair<int, int>, K>& m, int n, int p,
                      const K& v) {
        if (Ctx::is_zero(v)) return;
        auto [it, fresh] = m.emplace(std::make_pair(n, p), v);
        if (!fresh) {
            it->second = it->second + v;
            if (Ctx::is_zero(it->second)) m.erase(it);
        }
    }
};

/*
 * Deterministic pseudo-random cochains from a splitmix64 stream keyed by
 * (seed, labels...).  Default coefficients are integers in [-9, 9]; the
 * polynomial option draws degree <= 2 polynomials in q instead.  The same key
 * sequence yields the same structural value in every field context, so
 * symbolic and sampled runs of one seed describe the same cochain.
 */
inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline uint64_t mix_key(uint64_t h, uint64_t v) { return splitmix64(h ^ (v * 0x9ddfea08eb382d69ULL)); }

enum class CoeffStyle : uint8_t { integer, poly2 };

template <class Ctx, class K = typename Ctx::K>
K random_coeff(const Ctx& F, uint64_t seed, uint64_t tag, int n, int p,
               CoeffStyle style = CoeffStyle::integer) {
    uint64_t h = mix_key(mix_key(mix_key(seed, tag), static_cast<uint64_t>(int64_t(n) + (1 << 20))),
                         static_cast<uint64_t>(int64_t(p) + (1 << 20)));
    if (style == CoeffStyle::integer)
        return Ctx::from_long(static_cast<long>(h % 19) - 9);
    K v(0);
    for (int e = 0; e <= 2; ++e) {
        long c = static_cast<long>((h >> (8 * e)) % 9) - 4;
        if (c != 0) v = v + Ctx::from_long(c) * F.qpow(e);
    }
    return v;
}

template <class Ctx, class K = typename Ctx::K>
Cochain1<K> random_cochain1(const Ctx& F, int parity, int s, const Window& w, uint64_t seed,
                            CoeffStyle style = CoeffStyle::integer) {
    Cochain1<K> g(parity, s, w);
    for (int n = -w.N; n <= w.N; ++n) {
        g.aref(n) = random_coeff(F, seed, 0xA1, n, 0, style);
        g.bref(n) = random_coeff(F, seed, 0xB1, n, 0, style);
    }
    return g;
}

template <class Ctx, class K = typename Ctx::K>
Cochain2<K> random_cochain2(const Ctx& F, int parity, int s, const Window& w, uint64_t seed,
                            CoeffStyle style = CoeffStyle::integer) {
    Cochain2<K> f(parity, s);
    w.for_pairs([&](int n, int p) {
        if (n < p) f.add_a(F, n, p, random_coeff(F, seed, 0xA2, n, p, style));
        f.add_b(F, n, p, random_coeff(F, seed, 0xB2, n, p, style));
        if (n <= p) f.add_c(F, n, p, random_coeff(F, seed, 0xC2, n, p, style));
    });
    return f;
}

// Compatibility defect with the twist: f(alpha(x), ...) - alpha(f(x, ...)).
// Homogeneous degree-s cochains generally do not commute with alpha; this is
// diagnostic output, nothing downstream requires it to vanish.
template <class Ctx, class K = typename Ctx::K>
Element<K> hom_compat_defect(const Ctx& F, const Cochain1<K>& g, const Bas& x) {
    Element<K> v = g.apply(F, x);
    Element<K> lhs;
    lhs.add_scaled(F, v, alpha_factor(F, x));
    lhs.add_scaled(F, alpha(F, v), K(-1));
    return lhs;
}

template <class Ctx, class K = typename Ctx::K>
Element<K> hom_compat_defect(const Ctx& F, const Cochain2<K>& f, const Window& w, const Bas& x,
                             const Bas& y) {
    Element<K> v = f.apply(F, w, x, y);
    Element<K> lhs;
    lhs.add_scaled(F, v, alpha_factor(F, x) * alpha_factor(F, y));
    lhs.add_scaled(F, alpha(F, v), K(-1));
    return lhs;
}

// JSON forms.  Keys are "n" / "n,p" in canonical order; zero slots are
// omitted; coefficients use the context's canonical text rendering, so a
// round trip is bit-exact.
template <class Ctx, class K = typename Ctx::K>
Json cochain1_json(const Ctx& F, const Cochain1<K>& g) {
    Json j;
    j["kind"] = "cochain1";
    j["parity"] = g.parity;
    j["s"] = g.s;
    j["N"] = g.w.N;
    j["mode"] = F.describe();
    Json ja = Json::object(), jb = Json::object();
    for (int n = -g.w.N; n <= g.w.N; ++n) {
        if (!Ctx::is_zero(g.aval(n))) ja[std::to_string(n)] = Ctx::render(g.aval(n));
        if (!Ctx::is_zero(g.bval(n))) jb[std::to_string(n)] = Ctx::render(g.bval(n));
    }
    j["a"] = std::move(ja);
    j["b"] = std::move(jb);
    return j;
}

template <class Ctx, class K = typename Ctx::K>
Json cochain2_json(const Ctx& F, const Cochain2<K>& f, const Window& w) {
    Json j;
    j["kind"] = "cochain2";
    j["parity"] = f.parity;
    j["s"] = f.s;
    j["N"] = w.N;
    j["mode"] = F.describe();
    Json ja = Json::object(), jb = Json::object(), jc = Json::object();
    auto key = [](int n, int p) { return std::to_string(n) + "," + std::to_string(p); };
    w.for_pairs([&](int n, int p) {
        if (n < p) {
            K v = f.aval(n, p);
            if (!Ctx::is_zero(v)) ja[key(n, p)] = Ctx::render(v);
        }
        K v = f.bval(n, p);
        if (!Ctx::is_zero(v)) jb[key(n, p)] = Ctx::render(v);
        if (n <= p) {
            K u = f.cval(n, p);
            if (!Ctx::is_zero(u)) jc[key(n, p)] = Ctx::render(u);
        }
    });
    j["a"] = std::move(ja);
    j["b"] = std::move(jb);
    j["c"] = std::move(jc);
    return j;
}

inline std::pair<int, int> parse_pair_key(const std::string& k) {
    size_t comma = k.find(',');
    if (comma == std::string::npos) throw ParseError("expected 'n,p' key");
    return {std::stoi(k.substr(0, comma)), std::stoi(k.substr(comma + 1))};
}

template <class Ctx, class K = typename Ctx::K>
Cochain1<K> cochain1_from_json(const Ctx&, const Json& j, const Window& w) {
    if (j.at("kind") != "cochain1") throw ParseError("not a cochain1 document");
    if (j.at("N").get<int>() != w.N) throw ParseError("cochain1: window mismatch");
    Cochain1<K> g(j.at("parity").get<int>(), j.at("s").get<int>(), w);
    for (const auto& [k, v] : j.at("a").items())
        g.aref(std::stoi(k)) = Ctx::parse(v.template get<std::string>());
    for (const auto& [k, v] : j.at("b").items())
        g.bref(std::stoi(k)) = Ctx::parse(v.template get<std::string>());
    return g;
}

template <class Ctx, class K = typename Ctx::K>
Cochain2<K> cochain2_from_json(const Ctx& F, const Json& j, const Window& w) {
    if (j.at("kind") != "cochain2") throw ParseError("not a cochain2 document");
    if (j.at("N").get<int>() != w.N) throw ParseError("cochain2: window mismatch");
    Cochain2<K> f(j.at("parity").get<int>(), j.at("s").get<int>());
    auto load = [&](const Json& src, auto&& sink) {
        for (const auto& [k, v] : src.items()) {
            auto [n, p] = parse_pair_key(k);
            if (!w.pair_in(n, p)) throw ParseError("cochain2: slot outside window");
            sink(n, p, Ctx::parse(v.template get<std::string>()));
        }
    };
    load(j.at("a"), [&](int n, int p, K v) { f.add_a(F, n, p, v); });
    load(j.at("b"), [&](int n, int p, K v) { f.add_b(F, n, p, v); });
    load(j.at("c"), [&](int n, int p, K v) { f.add_c(F, n, p, v); });
    return f;
}

}  // namespace qwitt

#endif
