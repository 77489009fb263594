#include "qwitt/laurent.hpp"

#include <cassert>
#include <cstdlib>
#include <sstream>

namespace qwitt {

void Laurent::normalize() {
    size_t b = 0, e = c_.size();
    while (b < e && c_[b] == 0) ++b;
    while (e > b && c_[e - 1] == 0) --e;
    if (b == e) {
        c_.clear();
        lo_ = 0;
        return;
    }
    if (b > 0) c_.erase(c_.begin(), c_.begin() + b);
    c_.resize(e - b);
    lo_ += int(b);
}

Laurent Laurent::constant(const Rat& c) {
    Laurent r;
    if (c != 0) {
        r.lo_ = 0;
        r.c_.push_back(c);
    }
    return r;
}

Laurent Laurent::monomial(const Rat& c, int e) {
    Laurent r;
    if (c != 0) {
        r.lo_ = e;
        r.c_.push_back(c);
    }
    return r;
}

Laurent Laurent::qnum(int n) {
    Laurent r;
    if (n > 0) {
        r.lo_ = 0;
        r.c_.assign(size_t(n), Rat(1));
    } else if (n < 0) {
        r.lo_ = n;
        r.c_.assign(size_t(-n), Rat(-1));
    }
    return r;
}

Rat Laurent::coeff(int e) const {
    if (is_zero() || e < lo_ || e > hi()) return Rat(0);
    return c_[size_t(e - lo_)];
}

int Laurent::term_count() const {
    int k = 0;
    for (const auto& c : c_)
        if (c != 0) ++k;
    return k;
}

Laurent Laurent::operator-() const {
    Laurent r(*this);
    for (auto& c : r.c_) c = -c;
    return r;
}

Laurent& Laurent::operator+=(const Laurent& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    int nlo = std::min(lo_, o.lo_);
    int nhi = std::max(hi(), o.hi());
    std::vector<Rat> nc(size_t(nhi - nlo + 1), Rat(0));
    for (size_t i = 0; i < c_.size(); ++i) nc[size_t(lo_ - nlo) + i] = c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) nc[size_t(o.lo_ - nlo) + i] += o.c_[i];
    lo_ = nlo;
    c_ = std::move(nc);
    normalize();
    return *this;
}

Laurent& Laurent::operator-=(const Laurent& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = -o;
    int nlo = std::min(lo_, o.lo_);
    int nhi = std::max(hi(), o.hi());
    std::vector<Rat> nc(size_t(nhi - nlo + 1), Rat(0));
    for (size_t i = 0; i < c_.size(); ++i) nc[size_t(lo_ - nlo) + i] = c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) nc[size_t(o.lo_ - nlo) + i] -= o.c_[i];
    lo_ = nlo;
    c_ = std::move(nc);
    normalize();
    return *this;
}

Laurent operator*(const Laurent& a, const Laurent& b) {
    Laurent r;
    if (a.is_zero() || b.is_zero()) return r;
    r.lo_ = a.lo_ + b.lo_;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, Rat(0));
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (size_t j = 0; j < b.c_.size(); ++j) {
            if (b.c_[j] == 0) continue;
            r.c_[i + j] += a.c_[i] * b.c_[j];
        }
    }
    r.normalize();
    return r;
}

Laurent Laurent::mul_scalar(const Rat& c) const {
    if (c == 0) return Laurent();
    Laurent r = *this;
    for (auto& x : r.c_) x *= c;
    return r;
}

Laurent Laurent::divexact(const Laurent& b) const {
    const Laurent& a = *this;
    assert(!b.is_zero());
    if (a.is_zero()) return Laurent();
    assert(a.c_.size() >= b.c_.size());
    Laurent q;
    q.lo_ = a.lo_ - b.lo_;
    std::vector<Rat> rem = a.c_;
    size_t qn = a.c_.size() - b.c_.size() + 1;
    q.c_.assign(qn, Rat(0));
    for (size_t k = qn; k-- > 0;) {
        Rat f = rem[k + b.c_.size() - 1] / b.c_.back();
        q.c_[k] = f;
        if (f != 0)
            for (size_t j = 0; j < b.c_.size(); ++j) rem[k + j] -= f * b.c_[j];
    }
    for (const auto& r : rem) {
        (void)r;
        assert(r == 0 && "divexact: nonzero remainder");
    }
    q.normalize();
    return q;
}

Rat Laurent::eval(const Rat& q) const {
    if (is_zero()) return Rat(0);
    assert(q != 0 || lo_ >= 0);
    // Horner over the dense range, then the valuation power.
    Rat acc(0);
    for (size_t i = c_.size(); i-- > 0;) acc = acc * q + c_[i];
    int e = lo_;
    Rat p(1), base = e >= 0 ? q : Rat(1) / q;
    for (int k = std::abs(e); k > 0; --k) p *= base;
    return acc * p;
}

namespace {

Int vec_content(const std::vector<Int>& v) {
    Int g(0);
    for (const auto& x : v) {
        if (x == 0) continue;
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

void vec_trim(std::vector<Int>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
}

// Pseudo-remainder of a by b (deg a >= deg b > -inf), in place on a copy.
std::vector<Int> pseudo_rem(std::vector<Int> a, const std::vector<Int>& b) {
    vec_trim(a);
    size_t db = b.size() - 1;
    const Int& lc = b.back();
    while (a.size() >= b.size() && !a.empty()) {
        size_t k = a.size() - b.size();
        Int top = a.back();
        for (auto& x : a) x *= lc;
        for (size_t j = 0; j <= db; ++j) a[k + j] -= top * b[j];
        vec_trim(a);
    }
    return a;
}

std::vector<Int> primitive(std::vector<Int> v) {
    vec_trim(v);
    if (v.empty()) return v;
    Int g = vec_content(v);
    if (v.back() < 0) g = -g;
    if (g != 1)
        for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    return v;
}

}  // namespace

std::vector<Int> Laurent::gcd_primitive(const std::vector<Int>& a0, const std::vector<Int>& b0) {
    std::vector<Int> a = primitive(a0), b = primitive(b0);
    if (a.empty()) return b;
    if (b.empty()) return a;
    if (a.size() < b.size()) a.swap(b);
    // Primitive polynomial remainder sequence.
    while (!b.empty()) {
        std::vector<Int> r = primitive(pseudo_rem(a, b));
        a.swap(b);
        b.swap(r);
    }
    return a;
}

std::vector<Int> Laurent::divexact_int(const std::vector<Int>& a0, const std::vector<Int>& b) {
    std::vector<Int> a = a0;
    vec_trim(a);
    if (a.empty()) return a;
    assert(!b.empty() && a.size() >= b.size());
    std::vector<Int> q(a.size() - b.size() + 1);
    for (size_t k = q.size(); k-- > 0;) {
        Int f;
        mpz_divexact(f.get_mpz_t(), a[k + b.size() - 1].get_mpz_t(), b.back().get_mpz_t());
        q[k] = f;
        if (f != 0)
            for (size_t j = 0; j < b.size(); ++j) a[k + j] -= f * b[j];
    }
    for (const auto& r : a) {
        (void)r;
        assert(r == 0 && "divexact_int: nonzero remainder");
    }
    return q;
}

Laurent::Split Laurent::split_primitive() const {
    assert(!is_zero());
    Split s;
    s.shift = lo_;
    // Clear denominators: scale by lcm of coefficient denominators.
    Int l(1);
    for (const auto& c : c_)
        if (c != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
    std::vector<Int> p(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) {
        Rat scaled = c_[i] * Rat(l);
        assert(scaled.get_den() == 1);
        p[i] = scaled.get_num();
    }
    Int g = vec_content(p);
    if (p.back() < 0) g = -g;
    for (auto& x : p) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    s.scale = Rat(g) / Rat(l);
    s.poly = std::move(p);
    return s;
}

Laurent Laurent::from_split(const Rat& scale, int shift, const std::vector<Int>& poly) {
    Laurent r;
    if (scale == 0 || poly.empty()) return r;
    r.lo_ = shift;
    r.c_.reserve(poly.size());
    for (const auto& x : poly) r.c_.push_back(Rat(x) * scale);
    r.normalize();
    return r;
}

std::string Laurent::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for_terms([&](int e, const Rat& c) {
        Rat a = c;
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
            first = false;
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        if (e == 0) {
            os << a.get_str();
        } else {
            if (a != 1) os << a.get_str() << "*";
            os << "q";
            if (e != 1) os << "^" << e;
        }
    });
    return os.str();
}

}  // namespace qwitt
