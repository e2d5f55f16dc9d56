#include "doctest.h"
#include "lsieve/kengine.hpp"

#include <cmath>

using namespace lsieve;

namespace {

bool irreducible_trial(const PolyRing& R, const Poly& f) {
    for (int d = 1; 2 * d <= f.deg(); ++d) {
        bool divides = false;
        R.for_each_monic_of_degree(d, [&](const Poly& g) {
            if (!divides && R.mod(f, g).is_zero()) divides = true;
        });
        if (divides) return false;
    }
    return f.deg() >= 1;
}

// independent metric check straight from coefficients
bool metric_ok(const LaurentSeries& alpha, const Poly& pi, int M) {
    const GaloisField& F = alpha.field();
    for (long long t = -1; t >= -(M - 1); --t) {
        GfElem acc = 0;
        for (int s = 0; s <= pi.deg(); ++s)
            acc = F.add(acc, F.mul(pi.coeff(s), alpha.coeff(t - s)));
        if (acc != 0) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("q-condition: exact integer check against float evaluation") {
    CHECK(verify_q_condition(7));
    CHECK(!verify_q_condition(5));
    CHECK(verify_q_condition(9));
    bool seen_true = false;
    for (std::uint64_t q = 3; q <= 101; ++q) {
        bool exact = verify_q_condition(q);
        double lhs = std::pow(2.0, 2.0 / 3.0) * (double)q / std::pow((double)q - 1.0, 2.0 / 3.0);
        double rhs = std::pow((double)q, 2.0 / 3.0);
        CHECK(exact == (lhs < rhs));
        if (seen_true) CHECK(exact);  // monotone in q
        if (exact) seen_true = true;
    }
}

TEST_CASE("parameter selection formulas") {
    GaloisField F(7, 1);
    PolyRing R(F);
    KEngine eng(R, LaurentSeries::parse_alpha(R, "golden"));

    KParams p4 = eng.choose_params(R.parse("T^4+3*T^2+1"), R.one(), Rat::parse("0.05"));
    CHECK(p4.N == 6);
    CHECK(p4.M == 2);

    KParams p1 = eng.choose_params(R.parse("T"), R.one(), Rat::parse("0.05"));
    CHECK(p1.N == 1);
    CHECK(p1.M == 1);

    CHECK_THROWS_AS(eng.choose_params(R.parse("T^2+T"), R.parse("T"), Rat::parse("0.1")),
                    NotCoprime);
    CHECK_THROWS_AS(eng.choose_params(R.parse("T^2"), R.one(), Rat::parse("0.4")), ParseError);
}

TEST_CASE("metric count against a trial-division double-loop oracle") {
    GaloisField F(7, 1);
    PolyRing R(F);
    LaurentSeries alpha = LaurentSeries::parse_alpha(R, "golden");
    KEngine eng(R, alpha);
    auto cf = continued_fraction(alpha, 3);
    KParams p{cf[3].f, cf[3].a, Rat::parse("0.1"), 4, 2};  // manual M = 2
    long long brute = 0;
    R.for_each_monic_of_degree(p.N, [&](const Poly& pi) {
        if (!irreducible_trial(R, pi)) return;
        if (metric_ok(alpha, pi, p.M)) ++brute;
    });
    CHECK(eng.s_count_metric(p) == brute);
    CHECK(brute > 0);
}

TEST_CASE("congruence count against a direct polynomial oracle") {
    GaloisField F(7, 1);
    PolyRing R(F);
    LaurentSeries alpha = LaurentSeries::parse_alpha(R, "golden");
    KEngine eng(R, alpha);
    auto cf = continued_fraction(alpha, 3);
    for (int M = 0; M <= 2; ++M) {
        KParams p{cf[3].f, cf[3].a, Rat::parse("0.1"), 4, M};
        long long brute = 0;
        R.for_each_monic_of_degree(p.N, [&](const Poly& pi) {
            if (!irreducible_trial(R, pi)) return;
            Poly b = R.mod(R.mul(pi, p.a), p.f);
            if (b.is_zero()) return;
            if (b.deg() <= p.f.deg() - p.M) {
                REQUIRE(R.coprime(b, p.f));  // automatic coprimality, flagged if violated
                ++brute;
            }
        });
        CHECK(eng.s_count_congruence(p) == brute);
    }
}

TEST_CASE("congruence is monotone in M and bounded by the metric count") {
    GaloisField F(7, 1);
    PolyRing R(F);
    LaurentSeries alpha = LaurentSeries::parse_alpha(R, "golden");
    KEngine eng(R, alpha);
    auto cf = continued_fraction(alpha, 4);
    Poly f = cf[4].f, a = cf[4].a;
    long long prev = -1;
    for (int M = 0; M <= 3; ++M) {
        KParams p{f, a, Rat::parse("0.1"), 6, M};
        long long c = eng.s_count_congruence(p);
        long long m = eng.s_count_metric(p);
        CHECK(c <= m);
        if (prev >= 0) CHECK(c <= prev);
        prev = c;
        long long mm = eng.s_count_metric(KParams{f, a, Rat::parse("0.1"), 6, M + 1});
        CHECK(mm <= m);
    }
    // M = 0: every residue lands in the box; count = primes not dividing f
    KParams p0{f, a, Rat::parse("0.1"), 6, 0};
    const PrimeHistogram& H = eng.prime_hist(f, 6);
    CHECK(eng.s_count_congruence(p0) == H.total - H.dividing_modulus);
}

TEST_CASE("rational alpha: metric equals congruence; divisor prime edge") {
    GaloisField F(7, 1);
    PolyRing R(F);
    Poly f = R.parse("T^2+1");  // irreducible
    Poly a = R.parse("T+3");
    LaurentSeries alpha = LaurentSeries::rational(R, a, f);
    KEngine eng(R, alpha);
    // N = 3 > deg f: no prime divides f
    KParams p{f, a, Rat::parse("0.1"), 3, 1};
    CHECK(eng.s_count_metric(p) == eng.s_count_congruence(p));
    // N = deg f: pi = f itself is counted by the metric but not the congruence
    KParams p2{f, a, Rat::parse("0.1"), 2, 1};
    CHECK(eng.s_count_metric(p2) == eng.s_count_congruence(p2) + 1);
}

TEST_CASE("hand count for f = T at N = 1") {
    GaloisField F(7, 1);
    PolyRing R(F);
    LaurentSeries alpha = LaurentSeries::rational(R, R.one(), R.T());
    KEngine eng(R, alpha);
    KParams p{R.T(), R.one(), Rat::parse("0.1"), 1, 1};
    // 7 monic linear pi; pi = T gives b = 0; the other 6 give nonzero consts
    CHECK(eng.s_count_congruence(p) == 6);
}

TEST_CASE("three-way agreement for golden convergents") {
    GaloisField F(7, 1);
    PolyRing R(F);
    LaurentSeries alpha = LaurentSeries::parse_alpha(R, "golden");
    KEngine eng(R, alpha);
    auto cf = continued_fraction(alpha, 3);
    for (int j : {2, 3}) {
        KParams p =
            eng.choose_params(cf[(std::size_t)j].f, cf[(std::size_t)j].a, Rat::parse("0.1"));
        long long sm = eng.s_count_metric(p);
        long long sc = eng.s_count_congruence(p);
        long long sx = eng.s_count_chars(p);
        CHECK(sx == sc);
        CHECK(sc <= sm);
        CHECK(sc > 0);
        // congruence => metric on every counted prime (spot check)
        R.for_each_monic_of_degree(p.N, [&](const Poly& pi) {
            if (!irreducible_trial(R, pi)) return;
            Poly b = R.mod(R.mul(pi, p.a), p.f);
            if (b.is_zero() || b.deg() > p.f.deg() - p.M) return;
            CHECK(metric_ok(alpha, pi, p.M));
        });
    }
}

TEST_CASE("character route is conjugation invariant") {
    GaloisField F(7, 1);
    PolyRing R(F);
    LaurentSeries alpha = LaurentSeries::parse_alpha(R, "golden");
    KEngine eng(R, alpha);
    auto cf = continued_fraction(alpha, 2);
    KParams p = eng.choose_params(cf[2].f, cf[2].a, Rat::parse("0.1"));

    // recompute S with every character replaced by its conjugate; the sum is
    // a real integer so the relabeled sum must agree
    const UnitGroup& G = eng.unit_group(p.f);
    const PrimeHistogram& HP = eng.prime_hist(p.f, p.N);
    BoxHistogram HB = box_histogram(G, p.box_deg());
    RootTable rt(G.exponent());
    std::complex<long double> total = 0;
    std::int32_t a_idx = G.index_of(p.a);
    for (auto& chi : characters(G)) {
        DirichletChar cbar = chi.conjugate();
        std::complex<long double> box = 0, prime = 0;
        for (std::int32_t idx = 0; idx < (std::int32_t)G.phi(); ++idx) {
            long long cb = HB.by_index[(std::size_t)idx];
            long long cp = HP.by_index[(std::size_t)idx];
            if (!cb && !cp) continue;
            long long m = cbar.eval_index(idx).m;
            if (cb) box += (long double)cb * rt[-m];
            if (cp) prime += (long double)cp * rt[m];
        }
        total += rt[cbar.eval_index(a_idx).m] * box * prime;
    }
    total /= (long double)G.phi();
    long long relabeled = round_to_integer(total, 1e-6L, "relabeled sum");
    CHECK(relabeled == eng.s_count_chars(p));
}

TEST_CASE("asymptotic report fields and determinism") {
    GaloisField F(7, 1);
    PolyRing R(F);
    LaurentSeries alpha = LaurentSeries::parse_alpha(R, "golden");
    KEngine eng(R, alpha);
    auto cf = continued_fraction(alpha, 4);
    KParams p = eng.choose_params(cf[4].f, cf[4].a, Rat::parse("0.1"));
    SReport r1 = eng.asymptotic_report(p);
    SReport r2 = eng.asymptotic_report(p);
    CHECK(r1.three_way_pass);
    CHECK(r1.positive);
    CHECK(r1.q_condition);
    CHECK(r1.s_metric == r2.s_metric);
    CHECK(r1.s_chars == r2.s_chars);
    CHECK(r1.main_exact == r2.main_exact);
    // the paper's box count is loose by at most a factor q
    CHECK(r1.ratio_main_to_paper >= 1.0 - 1e-9);
    CHECK(r1.ratio_main_to_paper <= 7.0 * (1.0 + 1e-9));
    CHECK(r1.ratio_congruence_to_main >= std::pow(7.0, -2.0));
    CHECK(r1.ratio_congruence_to_main <= std::pow(7.0, 2.0));
}

TEST_CASE("witness tables") {
    GaloisField F(7, 1);
    PolyRing R(F);
    LaurentSeries alpha = LaurentSeries::parse_alpha(R, "golden");
    KEngine eng(R, alpha);

    auto ws = eng.witness_primes(4, 6, Rat::parse("0.1"));
    for (int N = 4; N <= 6; ++N) {
        long long count = 0;
        for (auto& w : ws)
            if (w.N == N) ++count;
        CHECK(count > 0);
    }
    for (auto& w : ws) {
        if (!w.norm.is_exact()) continue;
        CHECK(w.norm.value <= QPower::of(w.required));
    }

    // an irreducible convergent denominator appears with exponent ratio >= 1
    auto cf = continued_fraction(alpha, 2);
    Poly f2 = cf[2].f;  // T^2+1, irreducible over GF(7)
    REQUIRE(irreducible_trial(R, f2));
    auto ws2 = eng.witness_primes(2, 2, Rat::parse("0.1"));
    bool found = false;
    for (auto& w : ws2) {
        if (w.pi == f2) {
            found = true;
            CHECK(w.exponent_ratio >= 1.0);
            REQUIRE(w.norm.is_exact());
            CHECK(w.norm.value.e == -3);  // ||f_2 alpha|| = |f_2| q^{-(2+3)}
        }
    }
    CHECK(found);
}

TEST_CASE("witnesses for a rational target match the congruence filter") {
    GaloisField F(7, 1);
    PolyRing R(F);
    Poly f = R.parse("T^3+3*T+1");
    Poly a = R.parse("T^2+2");
    LaurentSeries alpha = LaurentSeries::rational(R, a, f);
    KEngine eng(R, alpha);
    Rat eps = Rat::parse("0.1");
    auto ws = eng.witness_primes(4, 5, eps);
    for (int N = 4; N <= 5; ++N) {
        long long M = ((Rat(1, 3) - eps) * Rat(N)).ceil();
        std::vector<Poly> expected;
        R.for_each_monic_of_degree(N, [&](const Poly& pi) {
            if (!irreducible_trial(R, pi)) return;
            Poly b = R.mod(R.mul(pi, a), f);
            // ||alpha pi|| = |b| / |f|
            bool pass = b.is_zero() || b.deg() - f.deg() <= -M;
            if (pass) expected.push_back(pi);
        });
        long long count = 0;
        for (auto& w : ws)
            if (w.N == N) {
                ++count;
                bool in_expected = false;
                for (auto& e : expected)
                    if (e == w.pi) in_expected = true;
                CHECK(in_expected);
            }
        CHECK(count == (long long)expected.size());
    }
}
