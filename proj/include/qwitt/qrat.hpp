#ifndef QWITT_QRAT_HPP
#define QWITT_QRAT_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "qwitt/laurent.hpp"

namespace qwitt {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/*
 * Element of Q(q), the field of rational functions in q, kept in canonical
 * form at all times:
 *   - denominator is a primitive integer polynomial with nonzero constant
 *     term and positive leading coefficient (powers of q live in the
 *     numerator, which is a Laurent polynomial with rational coefficients);
 *   - gcd(primitive part of numerator, denominator) = 1 over Z[q].
 * Equality of canonical forms is therefore componentwise.
 */
class QRat {
public:
    QRat() : den_(Laurent::one()) {}
    QRat(long v) : num_(Laurent::constant(Rat(v))), den_(Laurent::one()) {}
    explicit QRat(const Rat& v) : num_(Laurent::constant(v)), den_(Laurent::one()) {}
    explicit QRat(Laurent num) : num_(std::move(num)), den_(Laurent::one()) {}
    QRat(Laurent num, Laurent den);  // reduces to canonical form

    static QRat qnum(int n) { return QRat(Laurent::qnum(n)); }
    static QRat qpow(int e) { return QRat(Laurent::qpow(e)); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool has_poly_den() const { return !den_.is_one(); }

    const Laurent& num() const { return num_; }
    const Laurent& den() const { return den_; }

    QRat operator-() const;
    friend QRat operator+(const QRat& a, const QRat& b);
    friend QRat operator-(const QRat& a, const QRat& b);
    friend QRat operator*(const QRat& a, const QRat& b);
    friend QRat operator/(const QRat& a, const QRat& b);  // b nonzero
    QRat& operator+=(const QRat& o) { return *this = *this + o; }
    QRat& operator-=(const QRat& o) { return *this = *this - o; }
    QRat& operator*=(const QRat& o) { return *this = *this * o; }
    QRat& operator/=(const QRat& o) { return *this = *this / o; }

    bool operator==(const QRat& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const QRat& o) const { return !(*this == o); }

    // Substitution q -> value; nullopt when the denominator vanishes there.
    std::optional<Rat> eval(const Rat& q) const;

    // Canonical rendering "(num)/den"; round-trips exactly through parse().
    std::string str() const;
    static QRat parse(std::string_view text);

private:
    Laurent num_;
    Laurent den_;
};

// Rational-number text helpers shared by the sampled-coefficient mode.
std::string rat_str(const Rat& v);
Rat rat_parse(std::string_view text);

}  // namespace qwitt

#endif
