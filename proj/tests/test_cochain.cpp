#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "qwitt/cochain.hpp"

using namespace qwitt;

static SymbolicCtx S;

static QRat P(const char* t) { return QRat::parse(t); }

TEST_CASE("pair table: canonical enumeration of the pair domain") {
    Window w(4, 2);
    PairTable tab(w);
    CHECK(tab.size() == 61);  // 3N^2 + 3N + 1 at N = 4

    // lex order, n ascending then p ascending, both clipped to the band
    CHECK(tab.at(0) == std::make_pair(-4, 0));
    CHECK(tab.at(1) == std::make_pair(-4, 1));
    CHECK(tab.at(tab.size() - 1) == std::make_pair(4, 0));

    for (int i = 0; i < tab.size(); ++i) {
        auto [n, p] = tab.at(i);
        CHECK(w.pair_in(n, p));
        CHECK(tab.find(n, p) == i);
    }
    CHECK(tab.find(4, 4) == -1);   // n + p leaves the band
    CHECK(tab.find(5, -5) == -1);  // n leaves the band

    // strictly increasing lex order
    for (int i = 1; i < tab.size(); ++i) CHECK(tab.at(i - 1) < tab.at(i));
}

TEST_CASE("cochain1: storage, application, grading") {
    Window w(5, 2);
    Cochain1<QRat> g(0, 3, w);
    g.aref(-2) = P("q + 1");
    g.bref(4) = P("2");

    // even: L[n] -> a[n] L[n+s], G[n] -> b[n] G[n+s]
    auto r = g.apply(S, L(-2));
    CHECK(r.terms.size() == 1);
    CHECK(S.render(r.coeff(L(1))) == "1 + q");
    r = g.apply(S, G(4));
    CHECK(S.render(r.coeff(G(7))) == "2");
    CHECK(g.apply(S, L(0)).is_zero());

    // odd: L[n] -> a[n] G[n+s], G[n] -> b[n] L[n+s]
    Cochain1<QRat> h(1, -1, w);
    h.aref(2) = P("q");
    h.bref(0) = P("-1");
    CHECK(S.render(h.apply(S, L(2)).coeff(G(1))) == "q");
    CHECK(S.render(h.apply(S, G(0)).coeff(L(-1))) == "-1");

    CHECK_THROWS_AS(g.apply(S, L(6)), SlotError);
    CHECK_THROWS_AS(g.apply(S, G(-6)), SlotError);
}

TEST_CASE("cochain2: slot conventions and application") {
    Window w(4, 2);
    Cochain2<QRat> f(0, 1);
    f.add_a(S, 1, 2, P("q"));
    f.add_b(S, -1, 3, P("1 - q"));
    f.add_c(S, 0, 0, P("3"));
    f.add_c(S, -2, 1, P("q^2"));

    // a is antisymmetric with zero diagonal
    CHECK(S.render(f.aval(1, 2)) == "q");
    CHECK(S.render(f.aval(2, 1)) == "-q");
    CHECK(f.aval(3, 3).is_zero());

    // c is symmetric
    CHECK(S.render(f.cval(-2, 1)) == "q^2");
    CHECK(S.render(f.cval(1, -2)) == "q^2");

    // application: (L,L) -> L[n+p+s], (L,G) -> G, (G,L) super-skew, (G,G) -> L
    CHECK(S.render(f.apply(S, w, L(1), L(2)).coeff(L(4))) == "q");
    CHECK(S.render(f.apply(S, w, L(2), L(1)).coeff(L(4))) == "-q");
    CHECK(S.render(f.apply(S, w, L(-1), G(3)).coeff(G(3))) == "1 - q");
    CHECK(S.render(f.apply(S, w, G(3), L(-1)).coeff(G(3))) == "-1 + q");
    CHECK(S.render(f.apply(S, w, G(1), G(-2)).coeff(L(0))) == "q^2");
    CHECK(S.render(f.apply(S, w, G(0), G(0)).coeff(L(1))) == "3");

    // odd cochains land in the opposite kind
    Cochain2<QRat> h(1, 0);
    h.add_a(S, 0, 2, P("1"));
    h.add_b(S, 2, -1, P("q"));
    CHECK(S.render(h.apply(S, w, L(0), L(2)).coeff(G(2))) == "1");
    CHECK(S.render(h.apply(S, w, L(2), G(-1)).coeff(L(1))) == "q");

    CHECK_THROWS_AS(f.apply(S, w, L(4), L(4)), SlotError);

    // accumulation cancels slots exactly
    Cochain2<QRat> z(0, 1);
    z.add_b(S, 2, 2, P("q + 1"));
    z.add_b(S, 2, 2, P("-1 - q"));
    CHECK(z.is_zero());
}

TEST_CASE("cochain2: linear combination and core restriction") {
    Window w(6, 2);
    Cochain2<QRat> f(0, 0), g(0, 0);
    f.add_a(S, 1, 2, P("1"));
    g.add_a(S, 1, 2, P("q"));
    g.add_b(S, 0, 5, P("2"));
    f.add_scaled(S, g, P("-1/q"));
    CHECK(S.render(f.aval(1, 2)) == "0");
    CHECK(S.render(f.bval(0, 5)) == "-2*q^-1");

    // slots strictly outside the core do not obstruct core vanishing
    Cochain2<QRat> h(1, 1);
    h.add_b(S, 5, 1, P("q"));
    CHECK(h.is_zero_on_core(S, w));
    h.add_c(S, -1, 2, P("1"));
    CHECK(!h.is_zero_on_core(S, w));
}

TEST_CASE("random cochains: deterministic, integer by default, poly option") {
    Window w(4, 2);
    auto g1 = random_cochain1(S, 0, 1, w, 42);
    auto g2 = random_cochain1(S, 0, 1, w, 42);
    auto g3 = random_cochain1(S, 0, 1, w, 43);
    bool same = true, diff = false;
    for (int n = -4; n <= 4; ++n) {
        same = same && g1.aval(n) == g2.aval(n) && g1.bval(n) == g2.bval(n);
        diff = diff || g1.aval(n) != g3.aval(n) || g1.bval(n) != g3.bval(n);
    }
    CHECK(same);
    CHECK(diff);

    // default coefficients are integer constants in [-9, 9]
    for (int n = -4; n <= 4; ++n) {
        auto ev = g1.aval(n).eval(Rat(7));  // far from any root of a small integer
        REQUIRE(ev.has_value());
        CHECK(g1.aval(n) == QRat(Laurent::constant(*ev)));
        CHECK(*ev >= Rat(-9));
        CHECK(*ev <= Rat(9));
    }

    // poly option: degree <= 2 polynomials, still deterministic
    auto p1 = random_cochain2(S, 1, -1, w, 7, CoeffStyle::poly2);
    auto p2 = random_cochain2(S, 1, -1, w, 7, CoeffStyle::poly2);
    CHECK(p1.a == p2.a);
    CHECK(p1.b == p2.b);
    CHECK(p1.c == p2.c);
    bool saw_q = false;
    for (const auto& [np, v] : p1.b) {
        (void)np;
        saw_q = saw_q || *v.eval(Rat(2)) != *v.eval(Rat(3));
    }
    CHECK(saw_q);

    // the same seed names the same cochain in both field modes
    SampledCtx Q(QSample::parse("3/2"));
    auto fs = random_cochain2(S, 0, 2, w, 99);
    auto fq = random_cochain2(Q, 0, 2, w, 99);
    w.for_pairs([&](int n, int p) {
        if (n < p) CHECK(*fs.aval(n, p).eval(Rat(3, 2)) == fq.aval(n, p));
        CHECK(*fs.bval(n, p).eval(Rat(3, 2)) == fq.bval(n, p));
        if (n <= p) CHECK(*fs.cval(n, p).eval(Rat(3, 2)) == fq.cval(n, p));
    });
}

TEST_CASE("json: bit-exact round trips in both modes") {
    Window w(3, 1);
    auto g = random_cochain1(S, 1, 2, w, 5, CoeffStyle::poly2);
    g.aref(0) = P("(q^2)/(1 - q + q^2)");  // exercise a genuine denominator
    Json jg = cochain1_json(S, g);
    CHECK(jg["kind"] == "cochain1");
    CHECK(jg["mode"] == "symbolic");
    auto g2 = cochain1_from_json<SymbolicCtx>(S, jg, w);
    CHECK(g2.parity == 1);
    CHECK(g2.s == 2);
    for (int n = -3; n <= 3; ++n) {
        CHECK(g.aval(n) == g2.aval(n));
        CHECK(g.bval(n) == g2.bval(n));
    }
    CHECK(cochain1_json(S, g2).dump() == jg.dump());

    auto f = random_cochain2(S, 0, -1, w, 6);
    Json jf = cochain2_json(S, f, w);
    auto f2 = cochain2_from_json(S, jf, w);
    CHECK(f.a == f2.a);
    CHECK(f.b == f2.b);
    CHECK(f.c == f2.c);
    CHECK(cochain2_json(S, f2, w).dump() == jf.dump());

    // zero slots are omitted from the document
    Cochain2<QRat> sparse(0, 0);
    sparse.add_b(S, 1, -1, P("q"));
    Json js = cochain2_json(S, sparse, w);
    CHECK(js["a"].empty());
    CHECK(js["b"].size() == 1);
    CHECK(js["b"]["1,-1"] == "q");

    SampledCtx Q(QSample::parse("-2"));
    auto fq = random_cochain2(Q, 1, 1, w, 6);
    Json jq = cochain2_json(Q, fq, w);
    CHECK(jq["mode"] == "sampled q=-2");
    auto fq2 = cochain2_from_json(Q, jq, w);
    CHECK(fq.b == fq2.b);

    CHECK_THROWS_AS(cochain1_from_json<SymbolicCtx>(S, jf, w), ParseError);
    Json bad = jf;
    bad["N"] = 9;
    CHECK_THROWS_AS(cochain2_from_json(S, bad, w), ParseError);
}

TEST_CASE("twist compatibility defect") {
    Window w(4, 2);

    // frozen example: f even of degree 0 with a[1,2] = 1
    Cochain2<QRat> f(0, 0);
    f.add_a(S, 1, 2, P("1"));
    auto d = hom_compat_defect(S, f, w, L(1), L(2));
    CHECK(d.terms.size() == 1);
    CHECK(S.render(d.coeff(L(3))) == "q + q^2");

    // even degree-0 1-cochains commute with the twist...
    auto g0 = random_cochain1(S, 0, 0, w, 11);
    for (int n = -4; n <= 4; ++n) {
        CHECK(hom_compat_defect(S, g0, L(n)).is_zero());
        CHECK(hom_compat_defect(S, g0, G(n)).is_zero());
    }

    // ...and no other homogeneous sector does
    Cochain1<QRat> g1(0, 1, w);
    g1.aref(1) = P("1");
    auto d1v = hom_compat_defect(S, g1, L(1));
    CHECK(S.render(d1v.coeff(L(2))) == "q - q^2");  // a q (1 - q^s) at n = 1

    Cochain1<QRat> godd(1, 0, w);
    godd.aref(0) = P("1");
    CHECK(!hom_compat_defect(S, godd, L(0)).is_zero());
}
