#include "qwitt/qrat.hpp"

#include <cassert>
#include <cctype>

namespace qwitt {

QRat::QRat(Laurent num, Laurent den) {
    if (den.is_zero()) throw std::invalid_argument("QRat: zero denominator");
    if (num.is_zero()) {
        num_ = Laurent::zero();
        den_ = Laurent::one();
        return;
    }
    Laurent::Split n = num.split_primitive();
    Laurent::Split d = den.split_primitive();
    std::vector<Int> g = Laurent::gcd_primitive(n.poly, d.poly);
    if (g.size() > 1 || g[0] != 1) {
        n.poly = Laurent::divexact_int(n.poly, g);
        d.poly = Laurent::divexact_int(d.poly, g);
    }
    // split_primitive leaves positive leading coefficients; keep den that way
    // and fold the whole rational scale into the numerator.
    Rat scale = n.scale / d.scale;
    num_ = Laurent::from_split(scale, n.shift - d.shift, n.poly);
    den_ = Laurent::from_split(Rat(1), 0, d.poly);
}

QRat QRat::operator-() const {
    QRat r(*this);
    r.num_ = -r.num_;
    return r;
}

QRat operator+(const QRat& a, const QRat& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_.is_one() && b.den_.is_one()) {
        QRat r;
        r.num_ = a.num_ + b.num_;
        return r;
    }
    if (a.den_ == b.den_) return QRat(a.num_ + b.num_, a.den_);
    return QRat(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

QRat operator-(const QRat& a, const QRat& b) { return a + (-b); }

QRat operator*(const QRat& a, const QRat& b) {
    if (a.is_zero() || b.is_zero()) return QRat();
    if (a.den_.is_one() && b.den_.is_one()) {
        QRat r;
        r.num_ = a.num_ * b.num_;
        return r;
    }
    return QRat(a.num_ * b.num_, a.den_ * b.den_);
}

QRat operator/(const QRat& a, const QRat& b) {
    if (b.is_zero()) throw std::domain_error("QRat: division by zero");
    if (a.is_zero()) return QRat();
    return QRat(a.num_ * b.den_, a.den_ * b.num_);
}

std::optional<Rat> QRat::eval(const Rat& q) const {
    if (is_zero()) return Rat(0);
    if (q == 0 && num_.lo() < 0) return std::nullopt;
    Rat d = den_.eval(q);
    if (d == 0) return std::nullopt;
    return num_.eval(q) / d;
}

std::string QRat::str() const {
    if (den_.is_one()) return num_.str();
    std::string out = "(";
    out += num_.str();
    out += ")/";
    if (den_.term_count() == 1) {
        out += den_.str();
    } else {
        out += "(";
        out += den_.str();
        out += ")";
    }
    return out;
}

namespace {

struct Cursor {
    std::string_view s;
    size_t i = 0;

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eof() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
    bool eat(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) {
        throw ParseError("parse error at offset " + std::to_string(i) + ": " + what);
    }

    Int integer() {
        skip_ws();
        size_t b = i;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
        size_t digits = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == digits) fail("expected integer");
        return Int(std::string(s.substr(b, i - b)), 10);
    }

    // coefficient := integer [ '/' integer ]  (the '/' is consumed only when
    // a digit follows, so the outer numerator/denominator split stays intact)
    Rat coefficient() {
        Int n = integer();
        skip_ws();
        if (i + 1 < s.size() && s[i] == '/' &&
            std::isdigit(static_cast<unsigned char>(s[i + 1]))) {
            ++i;
            Int d = integer();
            if (d == 0) fail("zero coefficient denominator");
            Rat r(n, d);
            r.canonicalize();
            return r;
        }
        return Rat(n);
    }

    // term := coefficient [ '*' qpow ] | qpow ;  qpow := 'q' [ '^' integer ]
    Laurent term() {
        skip_ws();
        Rat c(1);
        bool have_coeff = false;
        if (peek() != 'q') {
            c = coefficient();
            have_coeff = true;
        }
        int e = 0;
        skip_ws();
        if (have_coeff && peek() == '*') {
            eat('*');
            if (peek() != 'q') fail("expected q after '*'");
        }
        if (peek() == 'q') {
            eat('q');
            e = 1;
            if (eat('^')) {
                Int ee = integer();
                if (!ee.fits_sint_p()) fail("exponent out of range");
                e = int(ee.get_si());
            }
        }
        return Laurent::monomial(c, e);
    }

    Laurent poly() {
        Laurent acc;
        bool neg = false;
        if (eat('-'))
            neg = true;
        else
            eat('+');
        for (;;) {
            Laurent t = term();
            if (neg) t = -t;
            acc += t;
            skip_ws();
            if (eat('+')) {
                neg = false;
            } else if (eat('-')) {
                neg = true;
            } else {
                break;
            }
        }
        return acc;
    }

    Laurent poly_or_paren() {
        if (eat('(')) {
            Laurent p = poly();
            if (!eat(')')) fail("expected ')'");
            return p;
        }
        return poly();
    }
};

}  // namespace

QRat QRat::parse(std::string_view text) {
    Cursor c{text};
    Laurent num = c.poly_or_paren();
    Laurent den = Laurent::one();
    if (c.eat('/')) den = c.poly_or_paren();
    if (!c.eof()) c.fail("trailing characters");
    if (den.is_zero()) c.fail("zero denominator");
    return QRat(num, den);
}

std::string rat_str(const Rat& v) { return v.get_str(); }

Rat rat_parse(std::string_view text) {
    Cursor c{text};
    c.skip_ws();
    Int n = c.integer();
    Rat r(n);
    if (c.eat('/')) {
        Int d = c.integer();
        if (d == 0) c.fail("zero denominator");
        r = Rat(n, d);
        r.canonicalize();
    }
    if (!c.eof()) c.fail("trailing characters");
    return r;
}

}  // namespace qwitt
