#ifndef QWITT_LAURENT_HPP
#define QWITT_LAURENT_HPP

#include <gmpxx.h>

#include <string>
#include <vector>

namespace qwitt {

using Rat = mpq_class;
using Int = mpz_class;

/*
 * Laurent polynomial in one variable q with exact rational coefficients.
 * Stored densely over the exponent range [lo, lo + size - 1]; the zero
 * polynomial has an empty coefficient vector.  Invariants: the first and
 * last stored coefficients are nonzero (no padding survives normalize()).
 */
class Laurent {
public:
    Laurent() = default;
    explicit Laurent(long c) { *this = constant(Rat(c)); }
    explicit Laurent(const Rat& c) { *this = constant(c); }

    static Laurent zero() { return Laurent(); }
    static Laurent one() { return constant(Rat(1)); }
    static Laurent constant(const Rat& c);
    static Laurent monomial(const Rat& c, int e);
    // q^e
    static Laurent qpow(int e) { return monomial(Rat(1), e); }
    // {n} = (1 - q^n)/(1 - q): 1 + q + ... + q^{n-1} for n >= 0,
    // -(q^{-1} + ... + q^{n}) for n < 0, {0} = 0.
    static Laurent qnum(int n);

    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return lo_ == 0 && c_.size() == 1 && c_[0] == 1; }
    bool is_constant() const { return c_.empty() || (lo_ == 0 && c_.size() == 1); }

    int lo() const { return lo_; }                          // valuation; requires nonzero
    int hi() const { return lo_ + int(c_.size()) - 1; }     // top exponent; requires nonzero
    const Rat& leading() const { return c_.back(); }
    Rat coeff(int e) const;
    int term_count() const;

    Laurent operator-() const;
    Laurent& operator+=(const Laurent& o);
    Laurent& operator-=(const Laurent& o);
    friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
    friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
    friend Laurent operator*(const Laurent& a, const Laurent& b);
    Laurent& operator*=(const Laurent& o) { return *this = *this * o; }

    Laurent mul_scalar(const Rat& c) const;
    Laurent mul_qpow(int e) const {
        Laurent r = *this;
        if (!r.is_zero()) r.lo_ += e;
        return r;
    }

    bool operator==(const Laurent& o) const { return lo_ == o.lo_ && c_ == o.c_; }
    bool operator!=(const Laurent& o) const { return !(*this == o); }

    // Exact division; aborts if the division leaves a remainder.
    Laurent divexact(const Laurent& b) const;

    // Substitute a rational value for q (q must be nonzero when lo < 0).
    Rat eval(const Rat& q) const;

    // Splits into scale * q^shift * P with P a primitive integer polynomial,
    // P(0) != 0 and positive leading coefficient.  Requires nonzero input.
    struct Split {
        Rat scale;
        int shift = 0;
        std::vector<Int> poly;  // index = exponent, poly[0] != 0
    };
    Split split_primitive() const;
    static Laurent from_split(const Rat& scale, int shift, const std::vector<Int>& poly);

    // Content/primitive-part gcd over Z[q] of the primitive parts. Result is
    // primitive with positive leading coefficient (constant 1 for coprime).
    static std::vector<Int> gcd_primitive(const std::vector<Int>& a, const std::vector<Int>& b);
    static std::vector<Int> divexact_int(const std::vector<Int>& a, const std::vector<Int>& b);

    std::string str() const;

    // Iteration helper: f(exponent, coefficient) over nonzero terms.
    template <class F>
    void for_terms(F&& f) const {
        for (size_t i = 0; i < c_.size(); ++i)
            if (c_[i] != 0) f(lo_ + int(i), c_[i]);
    }

private:
    void normalize();
    int lo_ = 0;
    std::vector<Rat> c_;
};

}  // namespace qwitt

#endif
