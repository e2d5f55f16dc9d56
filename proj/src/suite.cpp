#include "lsieve/suite.hpp"

#include <chrono>
#include <cmath>
#include <set>

#include "lsieve/kengine.hpp"
#include "lsieve/kquadengine.hpp"

namespace lsieve {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

long long pow_ll(long long b, int e) {
    long long r = 1;
    while (e--) r *= b;
    return r;
}

std::uint64_t xorshift(std::uint64_t& s) {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return s;
}

Poly random_poly(const PolyRing& R, std::uint64_t& rng, int max_deg) {
    int d = (int)(xorshift(rng) % (std::uint64_t)(max_deg + 1));
    std::vector<GfElem> c((std::size_t)d + 1);
    for (auto& x : c) x = R.field().from_int(xorshift(rng));
    return R.from_coeffs(std::move(c));
}

// 1. CF quality: every convergent satisfies |alpha - a/f| <= |f|^{-2} exactly
CheckResult c01_cf_quality() {
    CheckResult r{"cf-quality"};
    GaloisField F(7, 1);
    PolyRing R(F);
    long long checked = 0, violations = 0;
    auto sweep = [&](const std::string& spec) {
        LaurentSeries alpha = LaurentSeries::parse_alpha(R, spec);
        for (auto& cv : continued_fraction(alpha, 40)) {
            ++checked;
            if (!(cv.quality <= QPower::of(-2 * cv.f.deg()))) ++violations;
            if (!R.coprime(cv.a, cv.f)) ++violations;
        }
    };
    sweep("golden");
    sweep("lacunary");
    for (int s = 1; s <= 100; ++s) sweep("seed:" + std::to_string(s));
    r.lhs = (double)violations;
    r.rhs = 0.0;
    // 102 alphas, each contributing a couple dozen convergents up to deg 40
    r.pass = violations == 0 && checked >= 102 * 15;
    r.detail = std::to_string(checked) + " convergents";
    return r;
}

// 2. character orthogonality for all monic f of degree <= 3
CheckResult c02_orthogonality() {
    CheckResult r{"char-orthogonality"};
    GaloisField F(7, 1);
    PolyRing R(F);
    double max_dev = 0.0;
    bool pass = true;
    long long tables = 0;
    for (int d = 1; d <= 3; ++d) {
        R.for_each_monic_of_degree(d, [&](const Poly& f) {
            OrthReport rep = orthogonality_report(R, f);
            max_dev = std::max(max_dev, rep.max_deviation);
            pass = pass && rep.pass;
            ++tables;
        });
    }
    r.lhs = max_dev;
    r.rhs = 1e-9;
    r.pass = pass && max_dev <= 1e-9;
    r.detail = std::to_string(tables) + " moduli";
    return r;
}

// 3. RH: L-degree bound and inverse-root moduli in {1, sqrt 7}
CheckResult c03_rh() {
    CheckResult r{"rh-inverse-roots"};
    GaloisField F(7, 1);
    PolyRing R(F);
    double max_dev = 0.0;
    bool pass = true;
    long long chars_checked = 0;
    for (int d = 1; d <= 3; ++d) {
        R.for_each_monic_of_degree(d, [&](const Poly& f) {
            UnitGroup G(R, f);
            for (auto& chi : characters(G)) {
                if (chi.is_principal()) continue;
                LPolynomial L = l_polynomial(chi);  // throws if c_{deg f} fails to vanish
                if (L.D > f.deg() - 1) pass = false;
                RhReport rep = inverse_roots(L);
                max_dev = std::max(max_dev, rep.max_deviation);
                pass = pass && rep.pass;
                ++chars_checked;
            }
        });
    }
    r.lhs = max_dev;
    r.rhs = 1e-6;
    r.pass = pass && max_dev <= 1e-6;
    r.detail = std::to_string(chars_checked) + " nonprincipal characters";
    return r;
}

// 4. Newton identity: power sums of inverse roots match enumerated prime sums
CheckResult c04_newton() {
    CheckResult r{"newton-prime-sums"};
    GaloisField F(7, 1);
    PolyRing R(F);
    IrreducibleTables tabs(R);
    double worst_ratio = 0.0;
    bool pass = true;
    for (int d = 1; d <= 2; ++d) {
        R.for_each_monic_of_degree(d, [&](const Poly& f) {
            UnitGroup G(R, f);
            std::vector<PrimeHistogram> hist;
            for (int n = 1; n <= 8; ++n) hist.push_back(prime_histogram(tabs, G, n));
            RootTable rt(G.exponent());
            for (auto& chi : characters(G)) {
                if (chi.is_principal()) continue;
                LPolynomial L = l_polynomial(chi);
                RhReport roots = inverse_roots(L);
                for (int N = 1; N <= 8; ++N) {
                    std::complex<long double> lhs = 0;
                    for (auto a : roots.inverse_roots) {
                        std::complex<long double> al(a.real(), a.imag()), p = 1;
                        for (int i = 0; i < N; ++i) p *= al;
                        lhs -= p;
                    }
                    std::complex<long double> rhs = 0;
                    for (int dd = 1; dd <= N; ++dd) {
                        if (N % dd) continue;
                        rhs += (long double)dd *
                               prime_char_sum(chi, hist[(std::size_t)dd - 1], N / dd).value(rt);
                    }
                    double residual = (double)std::abs(lhs - rhs);
                    double bound = 1e-5 * std::pow(7.0, N / 2.0);
                    worst_ratio = std::max(worst_ratio, residual / bound);
                    if (residual > bound) pass = false;
                }
            }
        });
    }
    r.lhs = worst_ratio;
    r.rhs = 1.0;
    r.pass = pass;
    r.detail = "residual bound 1e-5 q^{N/2}, deg f <= 2, N <= 8";
    return r;
}

// 5. Weil-type bound with the derived constant deg f + 3
CheckResult c05_weil() {
    CheckResult r{"weil-bound"};
    GaloisField F(7, 1);
    PolyRing R(F);
    IrreducibleTables tabs(R);
    double worst_ratio = 0.0;
    bool pass = true;
    for (int d = 1; d <= 3; ++d) {
        R.for_each_monic_of_degree(d, [&](const Poly& f) {
            UnitGroup G(R, f);
            RootTable rt(G.exponent());
            auto chars_list = characters(G);
            for (int N = 1; N <= 8; ++N) {
                PrimeHistogram H = prime_histogram(tabs, G, N);
                double bound = (double)(f.deg() + 3) * std::pow(7.0, N / 2.0);
                for (auto& chi : chars_list) {
                    if (chi.is_principal()) continue;
                    double val = (double)std::abs(prime_char_sum(chi, H, 1).value(rt));
                    double lhs = (double)N * val;
                    worst_ratio = std::max(worst_ratio, lhs / bound);
                    if (lhs > bound) pass = false;
                }
            }
        });
    }
    r.lhs = worst_ratio;
    r.rhs = 1.0;
    r.pass = pass;
    r.detail = "N |sum chi(pi)| <= (deg f + 3) q^{N/2}";
    return r;
}

// 6. three-way S agreement over k for golden convergents, deg f in {3,4,5}
CheckResult c06_thre_way_k(KEngine& eng) {
    CheckResult r{"s-three-way-k"};
    const PolyRing& R = eng.ring();
    auto cf = continued_fraction(eng.alpha(), 5);
    bool pass = true;
    std::string detail;
    for (int j : {3, 4, 5}) {
        KParams p = eng.choose_params(cf[(std::size_t)j].f, cf[(std::size_t)j].a, Rat(1, 10));
        SReport rep = eng.asymptotic_report(p);
        bool ok = rep.three_way_pass && rep.positive &&
                  rep.ratio_congruence_to_main >= std::pow(7.0, -2.0) &&
                  rep.ratio_congruence_to_main <= std::pow(7.0, 2.0);
        pass = pass && ok;
        detail += "degf=" + std::to_string(j) + ":S=" + std::to_string(rep.s_congruence) + " ";
        r.lhs = std::max(r.lhs, std::abs((double)(rep.s_chars - rep.s_congruence)));
    }
    (void)R;
    r.rhs = 0.0;
    r.pass = pass;
    r.detail = detail;
    return r;
}

// 7. witness production for golden alpha, N in 4..8
CheckResult c07_witnesses(KEngine& eng) {
    CheckResult r{"prime-witnesses-k"};
    auto ws = eng.witness_primes(4, 8, Rat(1, 10));
    bool pass = true;
    std::string detail;
    for (int N = 4; N <= 8; ++N) {
        long long count = 0;
        for (auto& w : ws)
            if (w.N == N) ++count;
        if (count < 1) pass = false;
        detail += "N" + std::to_string(N) + ":" + std::to_string(count) + " ";
    }
    for (auto& w : ws) {
        if (w.norm.is_exact() && !(w.norm.value <= QPower::of(w.required))) pass = false;
    }
    r.lhs = (double)ws.size();
    r.rhs = 5.0;
    r.pass = pass && (double)ws.size() >= 5.0;
    r.detail = detail;
    return r;
}

// 8. quadratic arithmetic: units, norm multiplicativity, ideal norms, I conj(I)
CheckResult c08_quad_arith() {
    CheckResult r{"quad-arithmetic"};
    GaloisField F(7, 1);
    PolyRing R(F);
    bool pass = true;
    long long ideals_checked = 0;
    for (const char* d : {"T", "T^3+T+1"}) {
        QuadField K(R, R.parse(d));
        // units are exactly the nonzero constants
        std::set<std::string> got, want;
        for (auto& u : K.units()) got.insert(K.format(u));
        for (std::uint64_t c = 1; c < 7; ++c)
            want.insert(K.format(K.from_base(R.constant((GfElem)c))));
        if (got != want) pass = false;

        std::uint64_t rng = 0xD1CE5EEDull;
        for (int i = 0; i < 1000; ++i) {
            QuadInt a{random_poly(R, rng, 4), random_poly(R, rng, 4)};
            QuadInt b{random_poly(R, rng, 4), random_poly(R, rng, 4)};
            if (!(K.norm(K.mul(a, b)) == R.mul(K.norm(a), K.norm(b)))) pass = false;
        }

        std::vector<QuadIdeal> pool;
        for (int n = 0; n <= 2; ++n)
            for_each_ideal_of_norm(K, n, [&](const QuadIdeal& I) { pool.push_back(I); });
        for (int i = 0; i < 500; ++i) {
            const QuadIdeal& I = pool[xorshift(rng) % pool.size()];
            const QuadIdeal& J = pool[xorshift(rng) % pool.size()];
            if (ideal_mul(K, I, J).norm_exp() != I.norm_exp() + J.norm_exp()) pass = false;
        }

        for (int n = 0; n <= 4; ++n) {
            for_each_ideal_of_norm(K, n, [&](const QuadIdeal& I) {
                Poly ngen = R.mul(R.mul(I.s, I.s), I.a);
                if (!(ideal_mul(K, I, ideal_conj(K, I)) ==
                      ideal_principal(K, K.from_base(ngen))))
                    pass = false;
                ++ideals_checked;
            });
        }
    }
    r.lhs = (double)ideals_checked;
    r.rhs = 0.0;
    r.pass = pass;
    r.detail = std::to_string(ideals_checked) + " ideals through I conj(I)";
    return r;
}

// 9. Kummer-Dedekind completeness against a brute-force residue oracle
CheckResult c09_kummer() {
    CheckResult r{"kummer-dedekind"};
    GaloisField F(7, 1);
    PolyRing R(F);
    bool pass = true;
    long long primes_checked = 0;
    for (const char* d : {"T", "T^3+T+1"}) {
        QuadField K(R, R.parse(d));
        for (int dp = 1; dp <= 3; ++dp) {
            R.for_each_monic_of_degree(dp, [&](const Poly& p) {
                if (!R.is_irreducible(p)) return;
                ++primes_checked;
                PrimeIdealFact fact = ideal_factor(K, p);
                // reconstruct (p)
                QuadIdeal prod = ideal_unit(K);
                for (auto& P : fact.primes)
                    for (int e = 0; e < (fact.type == PrimeIdealFact::Type::Ramified ? 2 : 1);
                         ++e)
                        prod = ideal_mul(K, prod, P);
                if (!(prod == ideal_principal(K, K.from_base(p)))) pass = false;
                // classification oracle: enumerate squares in A/(p)
                Poly rres = R.mod(K.D(), p);
                bool is_sq = false;
                if (!rres.is_zero()) {
                    R.for_each_nonzero_deg_le(dp - 1, [&](const Poly& x) {
                        if (R.mod(R.sub(R.mul(x, x), rres), p).is_zero()) is_sq = true;
                    });
                }
                PrimeIdealFact::Type expect =
                    rres.is_zero() ? PrimeIdealFact::Type::Ramified
                                   : (is_sq ? PrimeIdealFact::Type::Split
                                            : PrimeIdealFact::Type::Inert);
                if (fact.type != expect) pass = false;
            });
        }
    }
    r.lhs = (double)primes_checked;
    r.rhs = 0.0;
    r.pass = pass;
    r.detail = std::to_string(primes_checked) + " base primes per field";
    return r;
}

// 10. zeta and counting; the frozen additive band for the box counts is 2
CheckResult c10_zeta_counting() {
    CheckResult r{"zeta-ideal-counts"};
    GaloisField F(7, 1);
    PolyRing R(F);
    bool pass = true;
    double max_dev = 0.0;

    QuadField K(R, R.parse("T"));
    ZetaData Z = zeta_numerator(K);
    ClassGroup C = class_group(K);
    if (!(Z.L == std::vector<long long>{1})) pass = false;
    if (C.h != 1) pass = false;
    if (!(Z.c_paper(7, C.h) == Rat(4, 3))) pass = false;  // the paper formula value
    QuadIdeal ram = ideal_factor(K, R.T()).primes[0];
    for (int U = 1; U <= 6; ++U) {
        for (const QuadIdeal& Dl : {ideal_unit(K), ram}) {
            IdealCountBox box = ideal_count_box(K, Z, C, Dl, U);
            max_dev = std::max(max_dev, box.deviation);
            if (box.deviation > 2.0) pass = false;  // frozen additive band
        }
    }

    QuadField K3(R, R.parse("T^3+T+1"));
    ZetaData Z3 = zeta_numerator(K3);
    if (!Z3.functional_equation) pass = false;
    if (Z3.rh_deviation > 1e-6) pass = false;

    r.lhs = max_dev;
    r.rhs = 2.0;
    r.pass = pass;
    r.detail = "C_K(paper formula) = " + Z.c_paper(7, C.h).str() +
               ", corrected = " + Z.c_ideal(7, C.h).str();
    return r;
}

// 11. ray class structure and orthogonality over coprime ideals of norm <= q^4
CheckResult c11_ray_class() {
    CheckResult r{"ray-class-structure"};
    GaloisField F(7, 1);
    PolyRing R(F);
    QuadField K(R, R.parse("T"));
    ClassGroup C = class_group(K);
    bool pass = true;
    double max_dev = 0.0;
    QuadIdeal ram = ideal_factor(K, R.T()).primes[0];
    QuadIdeal ram2 = ideal_mul(K, ram, ram);
    QuadIdeal inert = ideal_factor(K, R.parse("T-3")).primes[0];
    for (const QuadIdeal& f : {ram, ram2, inert}) {
        RayClassGroup H(K, C, f);
        if (H.phi_f() % (std::uint64_t)H.unit_image() != 0) pass = false;
        if (H.h_f() != C.h * (long long)(H.phi_f() / (std::uint64_t)H.unit_image()))
            pass = false;
        RootTable rt(H.order_R());
        for (int n = 0; n <= 4; ++n) {
            for_each_ideal_of_norm(K, n, [&](const QuadIdeal& I) {
                long long idx = H.ray_index(I);
                if (idx < 0) return;
                std::complex<long double> s = 0;
                for (std::size_t chi = 0; chi < H.num_chars(); ++chi)
                    s += rt[H.chi_exponent(chi, idx)];
                s /= (long double)H.h_f();
                long double expect = H.ray_trivial_oracle(I) ? 1.0L : 0.0L;
                double dev = (double)std::abs(s - std::complex<long double>(expect));
                max_dev = std::max(max_dev, dev);
                if (dev > 1e-9) pass = false;
            });
        }
    }
    r.lhs = max_dev;
    r.rhs = 1e-9;
    r.pass = pass;
    r.detail = "moduli: ramified, ramified^2, inert";
    return r;
}

// 12. the section-4.9 claim, exhaustively over two box fixtures
CheckResult c12_claim(KQEngine& eng) {
    CheckResult r{"claim-equivalence"};
    const PolyRing& R = eng.field().ring();
    bool pass = true;
    long long pairs = 0;
    {
        QuadInt f{R.parse("T^2+1"), R.zero()};
        ClaimReport rep = eng.claim_equivalence_check(f, 1, ideal_unit(eng.field()));
        pass = pass && rep.equivalence_ok && rep.valuation_route_ok && rep.box_forces_equality;
        pairs += rep.pairs;
    }
    {
        QuadInt f{R.T(), R.one()};
        ClaimReport rep = eng.claim_equivalence_check(f, 1, ideal_unit(eng.field()));
        pass = pass && rep.equivalence_ok && rep.valuation_route_ok && rep.box_forces_equality;
        pairs += rep.pairs;
    }
    r.lhs = (double)pairs;
    r.rhs = 0.0;
    r.pass = pass && pairs > 0;
    r.detail = std::to_string(pairs) + " pairs";
    return r;
}

// 13. quadratic witnesses: three-way agreement and positivity at the smallest
// admissible N along the Dirichlet frontier
CheckResult c13_quad_witnesses(KQEngine& eng) {
    CheckResult r{"s-three-way-K"};
    const QuadField& K = eng.field();
    DirichletSearch search = dirichlet_search_K(K, eng.alpha(), HalfQPower::of_half(7), -80);
    bool pass = true;
    bool found = false;
    std::string detail;
    for (auto& e : search.frontier) {
        KQParams p;
        try {
            p = eng.choose_params(e.f, e.a, Rat(1, 10), e.local_c);
        } catch (const Cond2Violated&) {
            continue;
        }
        if (p.N > 4) continue;  // box sweeps stay desk-scale
        KQReport rep = eng.asymptotic_report(p);
        if (!found) {
            // the smallest admissible N
            found = true;
            pass = pass && rep.positive;
        }
        pass = pass && rep.three_way_pass;
        detail += "N=" + std::to_string(p.N) + ":S=" + std::to_string(rep.s_congruence) + " ";
        r.lhs = std::max(r.lhs, std::abs((double)(rep.s_chars - rep.s_congruence)));
    }
    r.rhs = 0.0;
    r.pass = pass && found;
    r.detail = detail;
    return r;
}

// 14. the box solver over k: 100 seeded targets, several shapes
CheckResult c14_adelic() {
    CheckResult r{"adelic-box-solver"};
    GaloisField F(7, 1);
    PolyRing R(F);
    bool pass = true;
    long long solved = 0;
    for (int s = 1; s <= 100; ++s) {
        LaurentSeries alpha = LaurentSeries::parse_alpha(R, "seed:" + std::to_string(s));
        try {
            switch (s % 4) {
                case 0: {  // M=N=1, d=3, e=-4, against the CF ladder
                    auto sol = adelic_box_solve_k({{alpha}}, -4, 3);
                    if (sol.x[0].is_zero() || sol.x[0].deg() > 3) pass = false;
                    if (!norm_le_scaled(alpha, sol.x[0], -4)) pass = false;
                    NormResult got = norm_dist_scaled(alpha, sol.x[0], -64);
                    auto cf = continued_fraction(alpha, 3);
                    bool matches_ladder = false;
                    QPower best = QPower::of(0);
                    for (auto& cv : cf) {
                        NormResult nv = norm_dist_scaled(alpha, cv.f, -64);
                        if (nv.is_exact() && got.is_exact() && nv.value == got.value)
                            matches_ladder = true;
                        if (nv.is_exact()) best = nv.value;
                    }
                    if (!matches_ladder) pass = false;
                    if (got.is_exact() && got.value < best) pass = false;  // sandwich
                    break;
                }
                case 1: {  // M=N=1, d=1, e=-2
                    auto sol = adelic_box_solve_k({{alpha}}, -2, 1);
                    if (sol.x[0].is_zero() || sol.x[0].deg() > 1) pass = false;
                    if (!norm_le_scaled(alpha, sol.x[0], -2)) pass = false;
                    break;
                }
                case 2: {  // M=2, N=1: d + 2e = -2
                    LaurentSeries beta =
                        LaurentSeries::parse_alpha(R, "seed:" + std::to_string(s + 1000));
                    auto sol = adelic_box_solve_k({{alpha}, {beta}}, -2, 2);
                    bool nz = !sol.x[0].is_zero();
                    if (!nz) pass = false;
                    if (!norm_le_scaled(alpha, sol.x[0], -2)) pass = false;
                    if (!norm_le_scaled(beta, sol.x[0], -2)) pass = false;
                    break;
                }
                case 3: {  // M=1, N=2: 2d + e = -2
                    LaurentSeries beta =
                        LaurentSeries::parse_alpha(R, "seed:" + std::to_string(s + 2000));
                    auto sol = adelic_box_solve_k({{alpha, beta}}, -4, 1);
                    if (sol.x[0].is_zero() && sol.x[1].is_zero()) pass = false;
                    const GaloisField& FF = R.field();
                    for (long long k = -1; k > -4; --k) {
                        GfElem acc = 0;
                        for (int i = 0; i <= sol.x[0].deg(); ++i)
                            acc = FF.add(acc, FF.mul(sol.x[0].coeff(i), alpha.coeff(k - i)));
                        for (int i = 0; i <= sol.x[1].deg(); ++i)
                            acc = FF.add(acc, FF.mul(sol.x[1].coeff(i), beta.coeff(k - i)));
                        if (acc != 0) pass = false;
                    }
                    break;
                }
            }
            ++solved;
        } catch (const InternalInfeasible&) {
            pass = false;
        }
    }
    r.lhs = (double)solved;
    r.rhs = 100.0;
    r.pass = pass && solved == 100;
    r.detail = "shapes 1x1, 2x1, 1x2";
    return r;
}

}  // namespace

std::vector<CheckResult> run_acceptance_suite(
    const std::function<void(const CheckResult&)>& on_done) {
    std::vector<CheckResult> out;
    auto run = [&](CheckResult (*fn)()) {
        auto t0 = Clock::now();
        CheckResult r = fn();
        r.runtime_sec = seconds_since(t0);
        if (on_done) on_done(r);
        out.push_back(std::move(r));
    };
    run(c01_cf_quality);
    run(c02_orthogonality);
    run(c03_rh);
    run(c04_newton);
    run(c05_weil);
    {
        GaloisField F(7, 1);
        PolyRing R(F);
        KEngine eng(R, LaurentSeries::parse_alpha(R, "golden"));
        for (auto* fn : {+[](KEngine& e) { return c06_thre_way_k(e); },
                         +[](KEngine& e) { return c07_witnesses(e); }}) {
            auto t0 = Clock::now();
            CheckResult r = fn(eng);
            r.runtime_sec = seconds_since(t0);
            if (on_done) on_done(r);
            out.push_back(std::move(r));
        }
    }
    run(c08_quad_arith);
    run(c09_kummer);
    run(c10_zeta_counting);
    run(c11_ray_class);
    {
        GaloisField F(7, 1);
        PolyRing R(F);
        QuadField K(R, R.parse("T"));
        KQEngine eng(K, K.parse_quad_alpha("lacunary;lacunary"));
        for (auto* fn : {+[](KQEngine& e) { return c12_claim(e); },
                         +[](KQEngine& e) { return c13_quad_witnesses(e); }}) {
            auto t0 = Clock::now();
            CheckResult r = fn(eng);
            r.runtime_sec = seconds_since(t0);
            if (on_done) on_done(r);
            out.push_back(std::move(r));
        }
    }
    run(c14_adelic);
    return out;
}

}  // namespace lsieve
