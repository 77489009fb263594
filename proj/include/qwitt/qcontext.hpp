#ifndef QWITT_QCONTEXT_HPP
#define QWITT_QCONTEXT_HPP

#include <map>
#include <string>
#include <string_view>

#include "qwitt/qrat.hpp"
#include "qwitt/window.hpp"

namespace qwitt {

enum class Mode { symbolic, sampled };

/*
 * A rational sample point for q.  Valid samples avoid 0 and +-1; those are
 * the only rationals on the unit circle, so every other rational is
 * automatically free of the q-number and 1 + q^n zeros the formulas divide
 * by.  is_admissible() still checks the literal conditions up to a radius.
 */
struct QSample {
    Rat q;

    explicit QSample(const Rat& v) : q(v) {
        if (q == 0 || q == 1 || q == -1)
            throw std::invalid_argument("QSample: q must avoid 0, 1, -1");
    }
    static QSample parse(std::string_view text) { return QSample(rat_parse(text)); }
};

// Largest q-number index any window-scale formula can request: three band
// indices plus the degree shift, with slack for the +-1 twists in the
// structure constants.
inline int admissibility_radius(const Window& w, int max_degree_shift) {
    return 3 * w.N + (max_degree_shift < 0 ? -max_degree_shift : max_degree_shift) + 2;
}

inline bool is_admissible(const QSample& s, const Window& w, int max_degree_shift = 4) {
    const int radius = admissibility_radius(w, max_degree_shift);
    Rat p(1);
    for (int n = 1; n <= radius; ++n) {
        p *= s.q;                      // p = q^n
        if (p == 1 || p == -1) return false;  // {n} = 0 or 1 + q^n = 0
    }
    // Negative exponents: q^-n in {0, 1, -1} iff q^n is, covered above.
    return true;
}

/*
 * Field contexts.  All structure-constant arithmetic is written against this
 * little interface so the same code runs symbolically over Q(q) and at a
 * rational sample over Q.  Contexts cache q-numbers and powers and are not
 * thread-safe; give each worker its own instance.
 */
class SymbolicCtx {
public:
    using K = QRat;
    static constexpr Mode mode = Mode::symbolic;

    const K& qnum(int n) const {
        auto it = qnums_.find(n);
        if (it == qnums_.end()) it = qnums_.emplace(n, QRat::qnum(n)).first;
        return it->second;
    }
    const K& qpow(int n) const {
        auto it = qpows_.find(n);
        if (it == qpows_.end()) it = qpows_.emplace(n, QRat::qpow(n)).first;
        return it->second;
    }
    const K& one_plus_qpow(int n) const {
        auto it = opq_.find(n);
        if (it == opq_.end()) it = opq_.emplace(n, K(1) + QRat::qpow(n)).first;
        return it->second;
    }

    static K from_long(long v) { return K(v); }
    static K from_rational(long num, long den) {
        Rat r(num, den);
        r.canonicalize();
        return K(r);
    }
    static bool is_zero(const K& k) { return k.is_zero(); }
    static std::string render(const K& k) { return k.str(); }
    static K parse(std::string_view t) { return QRat::parse(t); }

    std::string describe() const { return "symbolic"; }

private:
    mutable std::map<int, K> qnums_, qpows_, opq_;
};

class SampledCtx {
public:
    using K = Rat;
    static constexpr Mode mode = Mode::sampled;

    explicit SampledCtx(QSample s) : sample_(s) {}

    const K& qnum(int n) const {
        auto it = qnums_.find(n);
        if (it == qnums_.end()) {
            Rat v = n == 0 ? Rat(0) : (Rat(1) - qpow(n)) / (Rat(1) - sample_.q);
            it = qnums_.emplace(n, v).first;
        }
        return it->second;
    }
    const K& qpow(int n) const {
        auto it = qpows_.find(n);
        if (it == qpows_.end()) {
            Rat v(1);
            Rat base = n >= 0 ? sample_.q : Rat(1) / sample_.q;
            for (int k = n >= 0 ? n : -n; k > 0; --k) v *= base;
            it = qpows_.emplace(n, v).first;
        }
        return it->second;
    }
    const K& one_plus_qpow(int n) const {
        auto it = opq_.find(n);
        if (it == opq_.end()) it = opq_.emplace(n, Rat(1) + qpow(n)).first;
        return it->second;
    }

    static K from_long(long v) { return Rat(v); }
    static K from_rational(long num, long den) {
        Rat r(num, den);
        r.canonicalize();
        return r;
    }
    static bool is_zero(const K& k) { return k == 0; }
    static std::string render(const K& k) { return rat_str(k); }
    static K parse(std::string_view t) { return rat_parse(t); }

    const QSample& sample() const { return sample_; }
    std::string describe() const { return "sampled q=" + rat_str(sample_.q); }

private:
    QSample sample_;
    mutable std::map<int, K> qnums_, qpows_, opq_;
};

}  // namespace qwitt

#endif
