// Acceptance gate for the assembled engine.  Eight independent criteria, one
// verdict line each; exit status is the number of failures.  Criterion 2
// asserts that the composite d2 . d1 vanishes on every homogeneous sector;
// for the implemented operators that is mathematically false outside the
// twist-compatible parts (see coboundary.hpp), so that line is expected to
// FAIL and prints the first concrete witness.  All other criteria pass.
#include <chrono>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qwitt/deform.hpp"
#include "qwitt/h2solver.hpp"
#include "qwitt/report.hpp"

using namespace qwitt;

namespace {

int g_failures = 0;

double now_s() {
    using clock = std::chrono::steady_clock;
    static const clock::time_point t0 = clock::now();
    return std::chrono::duration<double>(clock::now() - t0).count();
}

void verdict(int k, bool pass, const std::string& detail, double secs) {
    if (!pass) ++g_failures;
    std::printf("criterion %d %s  %s  (%.1fs)\n", k, pass ? "PASS" : "FAIL", detail.c_str(),
                secs);
    std::fflush(stdout);
}

std::string bas_str(const Bas& b) {
    return std::string(1, kind_char(b.kind)) + "[" + std::to_string(b.n) + "]";
}

std::string triple_str(const Bas& x, const Bas& y, const Bas& z) {
    return "(" + bas_str(x) + "," + bas_str(y) + "," + bas_str(z) + ")";
}

// ---------------------------------------------------------------- criterion 1

void criterion1() {
    const double t = now_s();
    long triples = 0, jbad = 0;
    std::string witness;
    SymbolicCtx S;
    const Kind kinds[2] = {Kind::L, Kind::G};
    for (int n1 = -12; n1 <= 12; ++n1)
        for (int n2 = -12; n2 <= 12; ++n2)
            for (int n3 = -12; n3 <= 12; ++n3)
                for (Kind k1 : kinds)
                    for (Kind k2 : kinds)
                        for (Kind k3 : kinds) {
                            const Bas x{k1, n1}, y{k2, n2}, z{k3, n3};
                            ++triples;
                            if (jacobi_defect(S, x, y, z).is_zero()) continue;
                            ++jbad;
                            if (witness.empty()) witness = triple_str(x, y, z);
                        }

    long pairs = 0, dbad = 0;
    auto delta_op = [](const SymbolicCtx& F, const AElement<QRat>& a) { return Delta(F, a); };
    for (int n = -8; n <= 8; ++n)
        for (int m = -8; m <= 8; ++m)
            for (int ta = 0; ta <= 1; ++ta)
                for (int tb = 0; tb <= 1; ++tb) {
                    ++pairs;
                    if (!sigma_derivation_defect(S, delta_op, 0, amonomial(S, ta != 0, n),
                                                 amonomial(S, tb != 0, m))
                             .is_zero())
                        ++dbad;
                }

    std::ostringstream d;
    d << "twisted super Jacobi zero on " << (triples - jbad) << "/" << triples
      << " symbolic triples (degrees -12..12, all parity patterns); sigma-derivation defect "
         "zero on "
      << (pairs - dbad) << "/" << pairs << " monomial pairs (exponents -8..8)";
    if (jbad) d << "; first bad triple " << witness;
    verdict(1, jbad == 0 && dbad == 0, d.str(), now_s() - t);
}

// ---------------------------------------------------------------- criterion 2

template <class Ctx, class K = typename Ctx::K>
int composite_sector_fails(const Ctx& F, const Window& w, int seeds, std::string& witness) {
    int failed_sectors = 0;
    for (int parity = 0; parity <= 1; ++parity)
        for (int s = -3; s <= 3; ++s) {
            bool bad = false;
            for (int k = 0; k < seeds && !bad; ++k) {
                const Cochain1<K> g =
                    random_cochain1(F, parity, s, w, 0xC2u + static_cast<uint64_t>(k));
                const Cochain2<K> f = d1(F, g);
                for_canonical_triples(w, [&](const Bas& x, const Bas& y, const Bas& z) {
                    if (bad) return;
                    const Element<K> e = d2_triple(F, f, w, x, y, z);
                    if (e.is_zero()) return;
                    bad = true;
                    if (witness.empty()) {
                        witness = (parity ? "odd" : "even") + std::string(" s=") +
                                  std::to_string(s) + " " + F.describe() + " " +
                                  triple_str(x, y, z) + " -> " + element_str(F, e);
                    }
                });
            }
            if (bad) ++failed_sectors;
        }
    return failed_sectors;
}

void criterion2() {
    const double t = now_s();
    std::string witness;
    int fails = 0, runs = 0;
    for (const char* qs : {"2", "3/2", "5/3"}) {
        SampledCtx F(QSample::parse(qs));
        fails += composite_sector_fails(F, Window(8, 1), 50, witness);
        runs += 14;
    }
    {
        SymbolicCtx S;
        fails += composite_sector_fails(S, Window(4, 1), 50, witness);
        runs += 14;
    }
    std::ostringstream d;
    d << "composite d2.d1 = 0 for 50 random 1-cochains per sector (s in [-3,3], N=8 sampled "
         "at q=2,3/2,5/3; N=4 symbolic): "
      << fails << "/" << runs << " sector runs have nonzero composite";
    if (fails) d << "; first witness " << witness;
    verdict(2, fails == 0, d.str(), now_s() - t);
}

// ---------------------------------------------------------------- criterion 3

// Printed per-block coefficient equations of the degree-s cocycle systems,
// written exactly as published; the generic operator must reproduce them.
template <class Ctx, class K = typename Ctx::K>
K family_value(const Ctx& F, const Cochain2<K>& f, const Bas& x, const Bas& y, const Bas& z) {
    const int n = x.n, m = y.n, p = z.n, s = f.s;
    auto qn = [&](int k) { return F.qnum(k); };
    auto op = [&](int k) { return F.one_plus_qpow(k); };
    K acc(0);
    if (y.kind == Kind::L && z.kind == Kind::L) {
        const int sh = f.parity == 0 ? 0 : 1;  // adjoint target is G for odd f
        acc = acc - K(op(p) * (qn(m) - qn(n)) * f.aval(n + m, p));
        acc = acc + K(op(m) * (qn(p) - qn(n)) * f.aval(n + p, m));
        acc = acc + K(op(n) * (qn(p) - qn(m)) * f.aval(n, m + p));
        acc = acc + K(op(n) * (qn(m + p + s + sh) - qn(n)) * f.aval(m, p));
        acc = acc - K(op(m) * (qn(n + p + s + sh) - qn(m)) * f.aval(n, p));
        acc = acc + K(op(p) * (qn(n + m + s + sh) - qn(p)) * f.aval(n, m));
    } else if (y.kind == Kind::L && z.kind == Kind::G) {
        const int sh = f.parity == 0 ? 1 : 0;
        acc = acc - K(op(p + 1) * (qn(m) - qn(n)) * f.bval(n + m, p));
        acc = acc - K(op(m) * (qn(p + 1) - qn(n)) * f.bval(m, n + p));
        acc = acc + K(op(n) * (qn(p + 1) - qn(m)) * f.bval(n, m + p));
        acc = acc + K(op(n) * (qn(m + p + s + sh) - qn(n)) * f.bval(m, p));
        acc = acc - K(op(m) * (qn(n + p + s + sh) - qn(m)) * f.bval(n, p));
        if (f.parity == 0)
            acc = acc - K(op(p + 1) * (qn(p + 1) - qn(n + m + s)) * f.aval(n, m));
    } else {
        const int sh = f.parity == 0 ? 0 : 1;
        acc = acc - K(op(p + 1) * (qn(m + 1) - qn(n)) * f.cval(n + m, p));
        acc = acc - K(op(m + 1) * (qn(p + 1) - qn(n)) * f.cval(n + p, m));
        acc = acc + K(op(n) * (qn(m + p + s + sh) - qn(n)) * f.cval(m, p));
        if (f.parity == 1) {
            acc = acc - K(op(m + 1) * (qn(m + 1) - qn(n + p + s)) * f.bval(n, p));
            acc = acc - K(op(p + 1) * (qn(p + 1) - qn(n + m + s)) * f.bval(n, m));
        }
    }
    return acc;
}

template <class K>
std::optional<std::string> first_cochain_mismatch(const SymbolicCtx&, const Cochain2<K>& lhs,
                                                  const Cochain2<K>& rhs) {
    auto scan = [&](const char* blk, const std::map<std::pair<int, int>, K>& a,
                    const std::map<std::pair<int, int>, K>& b) -> std::optional<std::string> {
        std::map<std::pair<int, int>, int> keys;
        for (const auto& [np, v] : a) (void)v, keys[np] = 1;
        for (const auto& [np, v] : b) (void)v, keys[np] = 1;
        for (const auto& [np, one] : keys) {
            (void)one;
            const K va = Cochain2<K>::get(a, np.first, np.second);
            const K vb = Cochain2<K>::get(b, np.first, np.second);
            if (!SymbolicCtx::is_zero(va - vb))
                return std::string(blk) + "(" + std::to_string(np.first) + "," +
                       std::to_string(np.second) + "): generic=" + SymbolicCtx::render(va) +
                       " printed=" + SymbolicCtx::render(vb);
        }
        return std::nullopt;
    };
    if (auto r = scan("a", lhs.a, rhs.a)) return r;
    if (auto r = scan("b", lhs.b, rhs.b)) return r;
    if (auto r = scan("c", lhs.c, rhs.c)) return r;
    return std::nullopt;
}

void criterion3() {
    const double t = now_s();
    SymbolicCtx S;
    const Window w(6, 1);
    long checks = 0, bad = 0;
    std::string report;

    for (int parity = 0; parity <= 1; ++parity)
        for (int s = -3; s <= 3; ++s)
            for (int k = 0; k < 20; ++k) {
                const CoeffStyle style = (k % 2) ? CoeffStyle::poly2 : CoeffStyle::integer;
                // path 1: generic d1 against the printed specialization
                const Cochain1<QRat> g =
                    random_cochain1(S, parity, s, w, 0xC3u + static_cast<uint64_t>(k), style);
                ++checks;
                if (auto m = first_cochain_mismatch(S, d1(S, g), d1_closed_form(S, g))) {
                    ++bad;
                    if (report.empty())
                        report = "d1 " + std::string(parity ? "odd" : "even") +
                                 " s=" + std::to_string(s) + " slot " + *m;
                }
                // path 2: generic d2 against the printed equation families
                const Cochain2<QRat> f =
                    random_cochain2(S, parity, s, w, 0xD3u + static_cast<uint64_t>(k), style);
                for_canonical_triples(w, [&](const Bas& x, const Bas& y, const Bas& z) {
                    if (x.kind != Kind::L) return;  // families cover L-led triples
                    ++checks;
                    const Element<QRat> e = d2_triple(S, f, w, x, y, z);
                    const QRat rhs = family_value(S, f, x, y, z);
                    const QRat lhs = e.terms.empty() ? QRat(0) : e.terms.begin()->second;
                    if (e.terms.size() <= 1 && SymbolicCtx::is_zero(lhs - rhs)) return;
                    ++bad;
                    if (report.empty())
                        report = "d2 " + std::string(parity ? "odd" : "even") +
                                 " s=" + std::to_string(s) + " " + triple_str(x, y, z) +
                                 ": generic=" + SymbolicCtx::render(lhs) +
                                 " printed=" + SymbolicCtx::render(rhs);
                });
            }

    std::ostringstream d;
    d << "two-path agreement (generic d1/d2 vs printed coefficient equations), 20 random "
         "cochains per sector, N=6 symbolic: "
      << (checks - bad) << "/" << checks << " comparisons equal";
    if (bad) d << "; first discrepancy " << report;
    verdict(3, bad == 0, d.str(), now_s() - t);
}

// ---------------------------------------------------------------- criterion 4

struct SweepOutcome {
    std::vector<SectorReport> reports;
    int nonzero = 0;
    int reduced_short = 0;  // kernel vectors without a core-exact certificate
};

template <class Ctx>
SweepOutcome run_sweep(const Ctx& F, const Window& w, int threads) {
    SectorOptions opt;
    opt.threads = threads;
    SweepOutcome out;
    out.reports = sweep(F, sector_list(true, true, -4, 4), w, opt);
    for (const auto& r : out.reports) {
        if (r.dim_H2_core != 0) ++out.nonzero;
        out.reduced_short += r.dim_Z_window - r.kernel_reduced;
    }
    return out;
}

std::string g_sweep_q2_json, g_sweep_q2_csv;  // kept for criterion 8

void criterion4() {
    const double t = now_s();
    const Window w12(12, 6);
    SampledCtx F2(QSample::parse("2"));
    const SweepOutcome a = run_sweep(F2, w12, 8);
    g_sweep_q2_json = report_json(a.reports).dump();
    g_sweep_q2_csv = report_csv(a.reports);

    SampledCtx F32(QSample::parse("3/2"));
    const SweepOutcome b = run_sweep(F32, w12, 8);

    SymbolicCtx S;
    const SweepOutcome c = run_sweep(S, Window(6, 1), 8);

    const int bad = a.nonzero + b.nonzero + c.nonzero;
    const int unred = a.reduced_short + b.reduced_short + c.reduced_short;
    std::ostringstream d;
    if (bad == 0)
        d << "dim_H2_core = 0 in 18/18 sectors (s in [-4,4], both parities) at N=12 N_core=6 "
             "for q=2 and q=3/2, and at N=6 N_core=1 symbolic (smallest core admitting the "
             "reductions: N_core=1)";
    else
        d << "nonzero quotient in " << bad << " of 54 sector runs";
    if (unred) d << "; " << unred << " kernel vectors lack certificates";
    verdict(4, bad == 0 && unred == 0, d.str(), now_s() - t);
}

// ---------------------------------------------------------------- criterion 5

Json certificate_suite(const SampledCtx& F, const Window& w, int threads, int* failures) {
    const std::pair<int, int> sectors[] = {{0, 0}, {0, 2}, {1, 1},  {1, -1},
                                           {0, -3}, {0, 3}, {1, -3}, {1, 3}};
    Json rep = Json::array();
    for (const auto& [parity, s] : sectors) {
        SectorOptions opt;
        opt.threads = threads;
        const SectorReport sr = analyze_sector(F, parity, s, w, opt);
        Json js;
        js["sector"] = report_json(sr);
        Json certs = Json::array();
        for (int k = 0; k < 25; ++k) {
            const Cochain1<Rat> g =
                random_cochain1(F, parity, s, w, 0xC5u + static_cast<uint64_t>(k));
            const Cochain2<Rat> f = d1(F, g);
            const Certificate<Rat> cert = reduce_cocycle(F, f, w, /*check_cocycle=*/false);
            // recheck through the generic d1 path, not the certificate's own residual
            Cochain2<Rat> diff = d1(F, cert.g);
            diff.add_scaled(F, f, Rat(-1));
            const bool ok = cert.core_exact && diff.is_zero_on_core(F, w);
            if (!ok && failures) ++*failures;
            certs.push_back(certificate_json(F, cert, w));
        }
        js["certificates"] = std::move(certs);
        rep.push_back(std::move(js));
    }
    return rep;
}

std::string g_suite_t1_json;  // kept for criterion 8

void criterion5() {
    const double t = now_s();
    SampledCtx F(QSample::parse("2"));
    const Window w(9, 3);
    int failures = 0;
    g_suite_t1_json = certificate_suite(F, w, 1, &failures).dump();
    std::ostringstream d;
    d << "25 random coboundaries per sector (even s in {0,2}, odd s in {1,-1}, generic s in "
         "{-3,3} both parities; N=9 N_core=3 q=2): "
      << (200 - failures) << "/200 reduced with residual exactly zero on the core, "
         "rechecked via generic d1";
    verdict(5, failures == 0, d.str(), now_s() - t);
}

// ---------------------------------------------------------------- criterion 6

void criterion6() {
    const double t = now_s();
    SampledCtx F(QSample::parse("2"));
    const Window w(12, 6);
    const ColumnMap cm(w);
    int bad_c = 0, bad_b = 0, bad_c11 = 0;
    int nk0 = 0, nk0n = 0, nk1 = 0;

    {
        // (even, 0): GG part vanishes on the core for every raw kernel vector
        const std::vector<Cochain2<Rat>> ker = kernel_cochains(F, 0, 0, cm);
        nk0 = static_cast<int>(ker.size());
        for (const auto& f : ker)
            w.for_core_pairs([&](int n, int p) {
                if (n <= p && !SampledCtx::is_zero(f.cval(n, p))) ++bad_c;
            });

        // b part vanishes on the core after the published normalizations.
        // For each kernel vector, subtract an explicit coboundary making
        // f(L_n, L_1) = 0 for all n, f(L_-1, L_2) = 0, f(L_1, G_m) = 0 for
        // m != 0 and f(L_-1, G_1) = 0; the normalized vector must then have
        // zero LG part on the core.
        std::vector<int> pins;
        auto pin = [&](Block blk, int n, int p) {
            const int c = cm.col({blk, n, p});
            if (c >= 0) pins.push_back(c);
        };
        for (int n = -w.N; n <= w.N; ++n)
            if (n != 1 && w.pair_in(n, 1)) pin(Block::A, std::min(n, 1), std::max(n, 1));
        pin(Block::A, -1, 2);
        for (int m = -w.N; m <= w.N; ++m)
            if (m != 0 && w.pair_in(1, m)) pin(Block::B, 1, m);
        pin(Block::B, -1, 1);

        const std::vector<Cochain2<Rat>> gens = coboundary_image_basis(F, 0, 0, w);
        std::vector<SpRow<Rat>> grows;
        grows.reserve(gens.size());
        for (const auto& gf : gens) grows.push_back(cochain_to_row(F, gf, cm));
        std::vector<SpRow<Rat>> A(pins.size());
        for (size_t r = 0; r < pins.size(); ++r)
            for (size_t i = 0; i < grows.size(); ++i)
                if (const Rat* v = row_get(grows[i], pins[r]))
                    A[r].emplace_back(static_cast<int>(i), *v);
        for (const auto& f : ker) {
            ++nk0n;
            const SpRow<Rat> frow = cochain_to_row(F, f, cm);
            std::vector<Rat> rhs;
            rhs.reserve(pins.size());
            for (int pc : pins) {
                const Rat* fv = row_get(frow, pc);
                rhs.push_back(fv ? *fv : Rat(0));
            }
            const SolveResult<Rat> sol =
                solve_consistent(F, static_cast<int>(gens.size()), A, rhs);
            if (!sol.consistent) {
                ++bad_b;  // the gauge cannot reach the normalization: itself a failure
                continue;
            }
            Cochain2<Rat> h = f;
            for (const auto& [i, xi] : sol.x)
                h.add_scaled(F, gens[static_cast<size_t>(i)], Rat(0) - xi);
            const SpRow<Rat> hrow = cochain_to_row(F, h, cm);
            for (int pc : pins)
                if (const Rat* hv = row_get(hrow, pc); hv && !SampledCtx::is_zero(*hv))
                    ++bad_b;
            w.for_core_pairs([&](int n, int p) {
                if (!SampledCtx::is_zero(h.bval(n, p))) ++bad_b;
            });
        }
    }
    {
        // (odd, 1): the GG coefficient at (1,1) vanishes for every kernel vector
        const std::vector<Cochain2<Rat>> ker = kernel_cochains(F, 1, 1, cm);
        nk1 = static_cast<int>(ker.size());
        for (const auto& f : ker)
            if (!SampledCtx::is_zero(f.cval(1, 1))) ++bad_c11;
    }

    std::ostringstream d;
    d << "forced zeros at N=12 q=2: (even,0) GG part zero on core for all " << nk0
      << " kernel vectors (" << bad_c << " bad), LG part zero on core for all " << nk0n
      << " gauge-fixed kernel vectors (" << bad_b << " bad); (odd,1) c(1,1)=0 for all " << nk1
      << " kernel vectors (" << bad_c11 << " bad)";
    verdict(6, bad_c == 0 && bad_b == 0 && bad_c11 == 0, d.str(), now_s() - t);
}

// ---------------------------------------------------------------- criterion 7

void criterion7() {
    const double t = now_s();
    SampledCtx F(QSample::parse("2"));
    const Window w(8, 2);
    int triv_fail = 0, detect_fail = 0;
    std::string note;

    for (int k = 0; k < 10; ++k) {
        const int s = (k % 5) - 2;
        const Cochain1<Rat> g =
            random_cochain1(F, 0, s, w, 0xC7u + static_cast<uint64_t>(k));
        const TruncatedDeformation<Rat> D = first_order_deformation(F, w, d1(F, g));
        try {
            const TrivializeResult<Rat> res = trivialize_first_order(F, D);
            for (const auto& f1 : res.transformed.terms[0])
                if (!f1.is_zero_on_core(F, w)) ++triv_fail;
        } catch (const ReduceError& e) {
            ++triv_fail;
            if (note.empty()) note = e.what();
        }
    }

    for (int k = 0; k < 10; ++k) {
        const int s = (k % 5) - 2;
        Cochain2<Rat> f = random_cochain2(F, 0, s, w, 0xE7u + static_cast<uint64_t>(k));
        const TruncatedDeformation<Rat> D = first_order_deformation(F, w, f);
        const FirstOrderCheck<Rat> chk = first_order_cocycle_check(F, D);
        if (chk.ok) {
            ++detect_fail;  // a random 2-cochain passing as a cocycle
            continue;
        }
        // verify the witness independently: sum d2 of the order-1 pieces there
        Element<Rat> indep;
        for (const auto& piece : D.terms[0])
            indep.add_scaled(F, d2_triple(F, piece, w, chk.x, chk.y, chk.z), Rat(1));
        if (indep.is_zero() || !(indep == chk.defect)) ++detect_fail;
    }

    std::ostringstream d;
    d << "10 coboundary deformations trivialized with transformed order-1 term exactly zero "
         "on the core ("
      << triv_fail << " failures); 10 random non-cocycle brackets rejected with "
         "independently verified witness ("
      << detect_fail << " failures)";
    if (!note.empty()) d << "; " << note;
    verdict(7, triv_fail == 0 && detect_fail == 0, d.str(), now_s() - t);
}

// ---------------------------------------------------------------- criterion 8

void criterion8() {
    const double t = now_s();
    SampledCtx F(QSample::parse("2"));

    const SweepOutcome t1 = run_sweep(F, Window(12, 6), 1);
    const bool sweep_same = report_json(t1.reports).dump() == g_sweep_q2_json &&
                            report_csv(t1.reports) == g_sweep_q2_csv;

    const std::string suite_t8 = certificate_suite(F, Window(9, 3), 8, nullptr).dump();
    const bool suite_same = suite_t8 == g_suite_t1_json;

    std::ostringstream d;
    d << "reports byte-identical across thread counts 1 and 8: q=2 N=12 sweep json+csv "
      << (sweep_same ? "identical" : "DIFFER") << "; certificate suite json "
      << (suite_same ? "identical" : "DIFFER");
    verdict(8, sweep_same && suite_same, d.str(), now_s() - t);
}

}  // namespace

int main() {
    std::printf("acceptance gate (exact q-Witt Hom-Lie superalgebra engine)\n");
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    std::printf("%d/8 criteria pass\n", 8 - g_failures);
    return g_failures;
}
