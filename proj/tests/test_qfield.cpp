#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qwitt/laurent.hpp"
#include "qwitt/qcontext.hpp"
#include "qwitt/qrat.hpp"
#include "qwitt/window.hpp"

using namespace qwitt;

TEST_CASE("laurent: q-integers") {
    CHECK(Laurent::qnum(0).is_zero());
    CHECK(Laurent::qnum(1).is_one());
    CHECK(Laurent::qnum(2).str() == "1 + q");
    CHECK(Laurent::qnum(4).str() == "1 + q + q^2 + q^3");
    CHECK(Laurent::qnum(7).str() == "1 + q + q^2 + q^3 + q^4 + q^5 + q^6");
    CHECK(Laurent::qnum(-1).str() == "-q^-1");
    CHECK(Laurent::qnum(-3).str() == "-q^-3 - q^-2 - q^-1");
    CHECK(Laurent::qnum(-5).str() == "-q^-5 - q^-4 - q^-3 - q^-2 - q^-1");
}

TEST_CASE("laurent: ring operations") {
    // (3q^-2 - q + 2q^3)(q^-1 + 7q^2) = 3q^-3 + 20 + 2q^2 - 7q^3 + 14q^5
    Laurent p1 = Laurent::monomial(Rat(3), -2) + Laurent::monomial(Rat(-1), 1) +
                 Laurent::monomial(Rat(2), 3);
    Laurent p2 = Laurent::monomial(Rat(1), -1) + Laurent::monomial(Rat(7), 2);
    Laurent prod = p1 * p2;
    CHECK(prod.coeff(-3) == Rat(3));
    CHECK(prod.coeff(0) == Rat(20));
    CHECK(prod.coeff(2) == Rat(2));
    CHECK(prod.coeff(3) == Rat(-7));
    CHECK(prod.coeff(5) == Rat(14));
    CHECK(prod.term_count() == 5);

    CHECK((p1 - p1).is_zero());
    CHECK(p1 + p2 == p2 + p1);
    CHECK(p1 * p2 == p2 * p1);
    CHECK((p1 * p2) * p1 == p1 * (p2 * p1));

    // {-2} * q^2 = -(1+q)
    Laurent m = Laurent::qnum(-2).mul_qpow(2);
    CHECK(m == -Laurent::qnum(2));
}

TEST_CASE("laurent: exact division") {
    // (q^2 - 1) / (q - 1) = q + 1
    Laurent num = Laurent::monomial(Rat(1), 2) - Laurent::one();
    Laurent den = Laurent::monomial(Rat(1), 1) - Laurent::one();
    CHECK(num.divexact(den).str() == "1 + q");
    // ({5}-{2})/{3} = q^2
    Laurent d = Laurent::qnum(5) - Laurent::qnum(2);
    CHECK(d.divexact(Laurent::qnum(3)) == Laurent::qpow(2));
}

TEST_CASE("laurent: key shift identity {u}-{v} = q^v {u-v}") {
    for (int u = -6; u <= 6; ++u)
        for (int v = -6; v <= 6; ++v) {
            Laurent lhs = Laurent::qnum(u) - Laurent::qnum(v);
            Laurent rhs = Laurent::qnum(u - v).mul_qpow(v);
            CHECK(lhs == rhs);
        }
}

TEST_CASE("laurent: evaluation") {
    CHECK(Laurent::qnum(-4).eval(Rat(3, 2)) == Rat(-130, 81));
    CHECK(Laurent::qnum(-1).eval(Rat(3, 2)) == Rat(-2, 3));
    CHECK(Laurent::qnum(2).eval(Rat(3, 2)) == Rat(5, 2));
    CHECK(Laurent::qnum(5).eval(Rat(3, 2)) == Rat(211, 16));
    // evaluation is a ring homomorphism
    Laurent p1 = Laurent::qnum(3) * Laurent::qnum(-2) + Laurent::qpow(-4);
    Rat at = p1.eval(Rat(7, 3));
    Rat expect = Laurent::qnum(3).eval(Rat(7, 3)) * Laurent::qnum(-2).eval(Rat(7, 3)) +
                 Laurent::qpow(-4).eval(Rat(7, 3));
    CHECK(at == expect);
}

TEST_CASE("qrat: canonical reduction") {
    // (q^2-1)/(q-1) -> q + 1, denominator becomes trivial
    QRat r(Laurent::monomial(Rat(1), 2) - Laurent::one(),
           Laurent::monomial(Rat(1), 1) - Laurent::one());
    CHECK(!r.has_poly_den());
    CHECK(r.str() == "1 + q");

    // {3}/{6} -> 1/(1+q^3)
    QRat s = QRat::qnum(3) / QRat::qnum(6);
    CHECK(s.has_poly_den());
    CHECK(s.str() == "(1)/(1 + q^3)");

    // ({4}-{2})/(1+q^3) -> q^2/(1 - q + q^2)
    QRat f = (QRat::qnum(4) - QRat::qnum(2)) / (QRat(1) + QRat::qpow(3));
    CHECK(f.str() == "(q^2)/(1 - q + q^2)");
    CHECK(f.eval(Rat(2)) == Rat(4, 3));
    CHECK(f.eval(Rat(-2)) == Rat(4, 7));
    CHECK(f.eval(Rat(3, 2)) == Rat(9, 7));

    // content and scale end up in the numerator; denominator stays primitive
    // (q^3-1)(q^2+q+1)(2q-3) / (4 (q^2+q+1)(q+5)) = (2q^4-3q^3-2q+3)/(4q+20)
    Laurent a = (Laurent::monomial(Rat(1), 3) - Laurent::one()) *
                Laurent::qnum(3) * (Laurent::monomial(Rat(2), 1) - Laurent::constant(Rat(3)));
    Laurent b = Laurent::qnum(3) *
                (Laurent::monomial(Rat(1), 1) + Laurent::constant(Rat(5))).mul_scalar(Rat(4));
    QRat g(a, b);
    CHECK(g.eval(Rat(1)) == Rat(0));
    CHECK(g.eval(Rat(2)) == Rat(1, 4));  // = 7/28
    QRat g2(Laurent::monomial(Rat(1), 4).mul_scalar(Rat(2)) -
                Laurent::monomial(Rat(3), 3) - Laurent::monomial(Rat(2), 1) +
                Laurent::constant(Rat(3)),
            Laurent::monomial(Rat(4), 1) + Laurent::constant(Rat(20)));
    CHECK(g == g2);
}

TEST_CASE("qrat: field laws on a fraction mix") {
    QRat x = QRat::qnum(5) / (QRat::qnum(2) * QRat::qpow(-3));
    QRat y = (QRat(1) - QRat::qpow(2)) / QRat::qnum(7);
    QRat z = QRat::qnum(-4);
    CHECK(x + y == y + x);
    CHECK(x * y == y * x);
    CHECK((x + y) + z == x + (y + z));
    CHECK(x * (y + z) == x * y + x * z);
    CHECK((x / y) * y == x);
    CHECK((x - x).is_zero());
    CHECK((x / x).is_one());
}

TEST_CASE("qrat: text round trip") {
    std::vector<QRat> cases = {
        QRat(0),
        QRat(1),
        QRat(-7),
        QRat(Rat(3, 4)),
        QRat::qnum(6),
        QRat::qnum(-4),
        QRat::qpow(-9),
        QRat::qnum(5) / QRat::qnum(3),
        (QRat(1) + QRat::qpow(4)) / (QRat::qnum(2) * QRat::qpow(-2)),
        QRat(Rat(-2, 3)) * QRat::qpow(11) / (QRat(1) - QRat::qpow(3)),
    };
    for (const auto& c : cases) {
        CAPTURE(c.str());
        CHECK(QRat::parse(c.str()) == c);
    }
    // relaxed inputs
    CHECK(QRat::parse("q") == QRat::qpow(1));
    CHECK(QRat::parse("-q^-2") == QRat(0) - QRat::qpow(-2));
    CHECK(QRat::parse("3/2*q^2") == QRat(Rat(3, 2)) * QRat::qpow(2));
    CHECK(QRat::parse("1+q+q^2") == QRat::qnum(3));
    CHECK(QRat::parse("(1+q)/(1-q)") == QRat::qnum(2) / (QRat(1) - QRat::qpow(1)));
    CHECK(QRat::parse(" ( 2*q - 1 ) / ( q ^ 2 ) ") ==
          (QRat(2) * QRat::qpow(1) - QRat(1)) / QRat::qpow(2));
    CHECK_THROWS_AS(QRat::parse("q +"), ParseError);
    CHECK_THROWS_AS(QRat::parse("(1+q"), ParseError);
    CHECK_THROWS_AS(QRat::parse("x"), ParseError);
}

TEST_CASE("qrat: evaluation guards") {
    QRat inv = QRat(1) / (QRat(1) - QRat::qpow(1));  // undefined at q=1
    CHECK(!inv.eval(Rat(1)).has_value());
    CHECK(inv.eval(Rat(2)) == Rat(-1));
    QRat neg = QRat::qpow(-3);  // undefined at q=0
    CHECK(!neg.eval(Rat(0)).has_value());
    CHECK(neg.eval(Rat(1, 2)) == Rat(8));
}

TEST_CASE("window geometry") {
    Window w(4, 2);
    CHECK(w.in_band(4));
    CHECK(!w.in_band(5));
    CHECK(w.pair_in(2, 2));
    CHECK(!w.pair_in(3, 2));  // sum leaves the band
    CHECK(w.pair_in_core(-1, 2));
    CHECK(!w.pair_in_core(-1, 3));
    CHECK(w.triple_in(1, 1, 1));
    CHECK(!w.triple_in(2, 2, 1));

    int count = 0;
    w.for_pairs([&](int, int) { ++count; });
    CHECK(count == 3 * 4 * 4 + 3 * 4 + 1);  // 61 slots at N=4

    CHECK_THROWS(Window(3, 5));
    CHECK_THROWS(Window(3, 0));
    CHECK(Window(12, 6).has_standard_margin());
    CHECK(!Window(8, 4).has_standard_margin());
}

TEST_CASE("sample admissibility") {
    CHECK_THROWS(QSample(Rat(0)));
    CHECK_THROWS(QSample(Rat(1)));
    CHECK_THROWS(QSample(Rat(-1)));
    QSample q2(Rat(2)), q32(Rat(3, 2)), qm2(Rat(-2));
    Window w(12, 6);
    CHECK(admissibility_radius(w, 4) == 3 * 12 + 4 + 2);
    CHECK(is_admissible(q2, w));
    CHECK(is_admissible(q32, w));
    CHECK(is_admissible(qm2, w));
    CHECK(QSample::parse("3/2").q == Rat(3, 2));
    CHECK(QSample::parse("-2").q == Rat(-2));
}

TEST_CASE("field contexts agree under evaluation") {
    SymbolicCtx S;
    SampledCtx E{QSample(Rat(5, 3))};
    for (int n = -9; n <= 9; ++n) {
        CHECK(S.qnum(n).eval(Rat(5, 3)) == E.qnum(n));
        CHECK(S.qpow(n).eval(Rat(5, 3)) == E.qpow(n));
        CHECK(S.one_plus_qpow(n).eval(Rat(5, 3)) == E.one_plus_qpow(n));
    }
    CHECK(SymbolicCtx::parse("1+q") == QRat::qnum(2));
    CHECK(SampledCtx::parse("-7/3") == Rat(-7, 3));
    CHECK(SymbolicCtx::render(QRat::qnum(2)) == "1 + q");
    CHECK(SampledCtx::render(Rat(-7, 3)) == "-7/3");
}
