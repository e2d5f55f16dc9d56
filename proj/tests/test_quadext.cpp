#include "doctest.h"
#include "lsieve/quadext.hpp"

#include <random>
#include <set>

using namespace lsieve;

namespace {

Poly random_poly(const PolyRing& R, std::mt19937_64& rng, int max_deg) {
    int d = (int)(rng() % (std::uint64_t)(max_deg + 1));
    std::vector<GfElem> c((std::size_t)d + 1);
    for (auto& x : c) x = R.field().from_int(rng());
    return R.from_coeffs(std::move(c));
}

// all ideals with norm exponent <= max_exp by normal-form sweep
std::vector<QuadIdeal> ideals_norm_le(const QuadField& K, int max_exp) {
    const PolyRing& R = K.ring();
    std::vector<QuadIdeal> out;
    for (int ds = 0; 2 * ds <= max_exp; ++ds) {
        R.for_each_monic_of_degree(ds, [&](const Poly& s) {
            for (int da = 0; 2 * ds + da <= max_exp; ++da) {
                R.for_each_monic_of_degree(da, [&](const Poly& a) {
                    if (da == 0) {
                        out.push_back(QuadIdeal{false, s, a, R.zero()});
                        return;
                    }
                    for (int db = -1; db < da; ++db) {
                        auto emit = [&](const Poly& b) {
                            Poly c = R.sub(R.mul(b, b), K.D());
                            if (R.mod(c, a).is_zero()) out.push_back(QuadIdeal{false, s, a, b});
                        };
                        if (db < 0) {
                            emit(R.zero());
                        } else {
                            R.for_each_poly_of_degree(db, emit);
                        }
                    }
                });
            }
        });
    }
    return out;
}

// brute-force principality: search gamma in I with |Norm gamma| = N(I)
std::optional<QuadInt> principal_brute(const QuadField& K, const QuadIdeal& I) {
    const PolyRing& R = K.ring();
    long long ne = I.norm_exp();
    std::optional<QuadInt> best;
    auto consider = [&](const QuadInt& g) {
        if (g.is_zero()) return;
        if (K.norm_deg(g) != ne) return;
        if (!ideal_contains(K, I, g)) return;
        if (!best || K.lex_less(g, *best)) best = g;
    };
    int dx = (int)(ne / 2), dy = (int)((ne - K.D().deg()) / 2);
    std::vector<Poly> xs, ys;
    xs.push_back(R.zero());
    if (dx >= 0) R.for_each_nonzero_deg_le(dx, [&](const Poly& p) { xs.push_back(p); });
    ys.push_back(R.zero());
    if (dy >= 0) R.for_each_nonzero_deg_le(dy, [&](const Poly& p) { ys.push_back(p); });
    for (auto& x : xs)
        for (auto& y : ys) consider(QuadInt{x, y});
    return best;
}

}  // namespace

TEST_CASE("field construction and units") {
    GaloisField F(7, 1);
    PolyRing R(F);

    QuadField K1(R, R.parse("T"));
    CHECK(K1.genus() == 0);
    CHECK(K1.infinity_degree() == 1);
    CHECK(K1.units().size() == 6);  // GF(7)^*
    for (auto& u : K1.units()) CHECK(u.y.is_zero());

    QuadField K3(R, R.parse("T^3+T+1"));
    CHECK(K3.genus() == 1);
    CHECK(K3.infinity_degree() == 1);

    CHECK_THROWS_AS(QuadField(R, R.parse("4*T^2+1")), NotImaginary);  // 4 is a square
    CHECK_THROWS_AS(QuadField(R, R.parse("T^2")), NotSquarefree);
    CHECK_THROWS_AS(QuadField(R, R.parse("3")), NotImaginary);

    GaloisField F8 = GaloisField::parse("2^3");
    PolyRing R8(F8);
    CHECK_THROWS_AS(QuadField(R8, R8.parse("T")), EvenCharacteristic);

    // 3*T^2 + 1: even degree with nonsquare leading coefficient
    QuadField K2(R, R.parse("3*T^2+1"));
    CHECK(K2.genus() == 0);
    CHECK(K2.infinity_degree() == 2);

    // unit group closure and inverses
    for (auto& u : K1.units()) {
        bool has_inv = false;
        for (auto& v : K1.units()) {
            QuadInt p = K1.mul(u, v);
            bool found = false;
            for (auto& w : K1.units())
                if (w == p) found = true;
            CHECK(found);
            if (p == K1.one()) has_inv = true;
        }
        CHECK(has_inv);
    }
}

TEST_CASE("norm, trace, absolute value") {
    GaloisField F(7, 1);
    PolyRing R(F);
    QuadField K(R, R.parse("T^3+1"));

    QuadInt x{R.T(), R.one()};  // T + sqrtD
    CHECK(K.norm(x) == R.sub(R.parse("T^2"), R.parse("T^3+1")));
    CHECK(K.abs(x) == HalfQPower::of_half(3));
    CHECK(K.trace(K.sqrtD()).is_zero());

    std::mt19937_64 rng(3);
    for (int i = 0; i < 1000; ++i) {
        QuadInt a{random_poly(R, rng, 4), random_poly(R, rng, 4)};
        QuadInt b{random_poly(R, rng, 4), random_poly(R, rng, 4)};
        CHECK(K.norm(K.mul(a, b)) == R.mul(K.norm(a), K.norm(b)));
        CHECK(K.abs(K.mul(a, b)) == K.abs(a) * K.abs(b));
    }
}

TEST_CASE("metric on K_infty") {
    GaloisField F(7, 1);
    PolyRing R(F);
    QuadField K(R, R.parse("T"));

    QuadLaurent xp{LaurentSeries::rational(R, R.parse("T^2"), R.one()),
                   LaurentSeries::rational(R, R.parse("T+1"), R.one())};
    CHECK(kinf_norm_dist(K, xp, -10).is_zero());

    QuadLaurent x1{LaurentSeries::rational(R, R.parse("3"), R.parse("T^2")),
                   LaurentSeries::rational(R, R.zero(), R.one())};
    QuadNormResult n1 = kinf_norm_dist(K, x1, -10);
    REQUIRE(n1.is_exact());
    CHECK(n1.value == HalfQPower::of_half(-4));

    QuadLaurent x2{LaurentSeries::rational(R, R.zero(), R.one()),
                   LaurentSeries::rational(R, R.one(), R.T())};
    QuadNormResult n2 = kinf_norm_dist(K, x2, -10);
    REQUIRE(n2.is_exact());
    CHECK(n2.value == HalfQPower::of_half(-1));

    // ultrametric on random sparse pairs
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        auto mk = [&]() {
            auto cu = std::make_shared<std::vector<GfElem>>(9, 0);
            auto cv = std::make_shared<std::vector<GfElem>>(9, 0);
            for (int i = 0; i < 3; ++i) {
                (*cu)[1 + rng() % 8] = F.from_int(rng());
                (*cv)[1 + rng() % 8] = F.from_int(rng());
            }
            return QuadLaurent{
                LaurentSeries::from_coeff_fn(F, -1,
                                             [cu](long long k) {
                                                 return (k <= -1 && k >= -8)
                                                            ? (*cu)[(std::size_t)-k]
                                                            : (GfElem)0;
                                             }),
                LaurentSeries::from_coeff_fn(F, -1, [cv](long long k) {
                    return (k <= -1 && k >= -8) ? (*cv)[(std::size_t)-k] : (GfElem)0;
                })};
        };
        QuadLaurent a = mk(), b = mk();
        QuadLaurent s{
            LaurentSeries::from_coeff_fn(
                F, -1, [a, b, &F](long long k) { return F.add(a.u.coeff(k), b.u.coeff(k)); }),
            LaurentSeries::from_coeff_fn(
                F, -1, [a, b, &F](long long k) { return F.add(a.v.coeff(k), b.v.coeff(k)); })};
        QuadNormResult na = kinf_norm_dist(K, a, -12);
        QuadNormResult nb = kinf_norm_dist(K, b, -12);
        QuadNormResult ns = kinf_norm_dist(K, s, -12);
        auto val = [](const QuadNormResult& n) {
            return n.is_exact() ? n.value : HalfQPower::of_half(n.below_he);
        };
        CHECK(val(ns) <= std::max(val(na), val(nb)));
    }
}

TEST_CASE("ideal normal forms") {
    GaloisField F(7, 1);
    PolyRing R(F);
    QuadField K(R, R.parse("T^3+T+1"));

    QuadIdeal I = ideal_principal(K, K.sqrtD());
    CHECK(I.s == R.one());
    CHECK(I.a == K.D());
    CHECK(I.b == R.zero());
    CHECK(I.norm_exp() == K.D().deg());

    QuadIdeal U = ideal_principal(K, K.from_base(R.parse("5")));
    CHECK(U == ideal_unit(K));
    CHECK(U.norm_exp() == 0);

    QuadInt f{R.parse("T^2+3"), R.parse("T")};
    QuadInt a{R.parse("T+1"), R.one()};
    CHECK(ideal_from_gens(K, {f, a}) ==
          ideal_gcd(K, ideal_principal(K, f), ideal_principal(K, a)));

    std::mt19937_64 rng(9);
    for (int i = 0; i < 100; ++i) {
        QuadInt g1{random_poly(R, rng, 3), random_poly(R, rng, 2)};
        QuadInt g2{random_poly(R, rng, 3), random_poly(R, rng, 2)};
        if (g1.is_zero() || g2.is_zero()) continue;
        QuadIdeal i1 = ideal_from_gens(K, {g1, g2});
        QuadIdeal i2 = ideal_from_gens(K, {g2, g1});
        QuadIdeal i3 = ideal_from_gens(K, {K.mul_scalar(g1, 3), K.mul_scalar(g2, 5)});
        CHECK(i1 == i2);
        CHECK(i1 == i3);
        QuadIdeal p1 = ideal_principal(K, g1);
        CHECK(p1.norm_exp() == K.norm_deg(g1));
        CHECK(ideal_contains(K, p1, g1));
        CHECK(ideal_contains(K, p1, K.mul(g1, K.sqrtD())));
    }

    CHECK(ideal_from_gens(K, {K.zero()}).zero);
}

TEST_CASE("ideal multiplication, conjugation, norms, division") {
    GaloisField F(7, 1);
    PolyRing R(F);
    for (const char* d : {"T", "T^3+T+1"}) {
        QuadField K(R, R.parse(d));
        auto ideals = ideals_norm_le(K, 3);
        REQUIRE(ideals.size() > 10);

        for (auto& I : ideals) {
            QuadIdeal prod = ideal_mul(K, I, ideal_conj(K, I));
            Poly ngen = R.mul(R.mul(I.s, I.s), I.a);
            CHECK(prod == ideal_principal(K, K.from_base(ngen)));
        }

        std::mt19937_64 rng(21);
        for (int i = 0; i < 500; ++i) {
            const QuadIdeal& I = ideals[rng() % ideals.size()];
            const QuadIdeal& J = ideals[rng() % ideals.size()];
            QuadIdeal P = ideal_mul(K, I, J);
            CHECK(P.norm_exp() == I.norm_exp() + J.norm_exp());
        }

        CHECK(ideal_gcd(K, ideals[3], ideal_unit(K)) == ideal_unit(K));

        for (int i = 0; i < 200; ++i) {
            const QuadIdeal& I = ideals[rng() % ideals.size()];
            const QuadIdeal& J = ideals[rng() % ideals.size()];
            QuadIdeal P = ideal_mul(K, I, J);
            CHECK(ideal_divide(K, P, J) == I);
        }
        CHECK_THROWS_AS(
            ideal_divide(K, ideal_principal(K, K.sqrtD()), ideal_principal(K, K.from_base(R.T()))),
            NotDivisible);
    }
}

TEST_CASE("Kummer-Dedekind factorization against a quadratic-residue oracle") {
    GaloisField F(7, 1);
    PolyRing R(F);
    for (const char* d : {"T", "T^3+T+1"}) {
        QuadField K(R, R.parse(d));
        for (int dp = 1; dp <= 2; ++dp) {
            R.for_each_monic_of_degree(dp, [&](const Poly& p) {
                if (!R.is_irreducible(p)) return;
                PrimeIdealFact fact = ideal_factor(K, p);

                Poly r = R.mod(K.D(), p);
                bool is_sq = false;
                if (!r.is_zero()) {
                    R.for_each_nonzero_deg_le(dp - 1, [&](const Poly& x) {
                        if (R.mod(R.sub(R.mul(x, x), r), p).is_zero()) is_sq = true;
                    });
                }
                if (r.is_zero()) {
                    CHECK(fact.type == PrimeIdealFact::Type::Ramified);
                    QuadIdeal sq = ideal_mul(K, fact.primes[0], fact.primes[0]);
                    CHECK(sq == ideal_principal(K, K.from_base(p)));
                    CHECK(fact.primes[0].norm_exp() == dp);
                } else if (is_sq) {
                    CHECK(fact.type == PrimeIdealFact::Type::Split);
                    REQUIRE(fact.primes.size() == 2);
                    CHECK(ideal_mul(K, fact.primes[0], fact.primes[1]) ==
                          ideal_principal(K, K.from_base(p)));
                    CHECK(fact.primes[0].norm_exp() == dp);
                    CHECK(ideal_conj(K, fact.primes[0]) == fact.primes[1]);
                } else {
                    CHECK(fact.type == PrimeIdealFact::Type::Inert);
                    CHECK(fact.primes[0].norm_exp() == 2 * dp);
                    CHECK(fact.primes[0] == ideal_principal(K, K.from_base(p)));
                }
            });
        }
        if (std::string(d) == "T") {
            PrimeIdealFact fact = ideal_factor(K, R.parse("T-1"));
            CHECK(fact.type == PrimeIdealFact::Type::Split);
        }
    }
    QuadField K(R, R.parse("T"));
    CHECK_THROWS_AS(ideal_factor(K, R.parse("T^2-1")), NotIrreducible);
}

TEST_CASE("factorization of principal ideals reconstructs them") {
    GaloisField F(7, 1);
    PolyRing R(F);
    QuadField K(R, R.parse("T^3+T+1"));
    std::mt19937_64 rng(31);
    int done = 0;
    while (done < 100) {
        QuadInt g{random_poly(R, rng, 2), random_poly(R, rng, 1)};
        if (g.is_zero()) continue;
        Poly n = K.norm(g);
        if (n.deg() > 6) continue;
        ++done;
        QuadIdeal I = ideal_principal(K, g);
        QuadIdeal prod = ideal_unit(K);
        for (auto& pf : R.factor(n)) {
            PrimeIdealFact fact = ideal_factor(K, pf.p);
            for (auto& P : fact.primes) {
                int v = ideal_val(K, I, P);
                for (int i = 0; i < v; ++i) prod = ideal_mul(K, prod, P);
            }
        }
        CHECK(prod == I);
    }
}

TEST_CASE("principality via reduction matches brute-force search") {
    GaloisField F(7, 1);
    PolyRing R(F);

    QuadField K1(R, R.parse("T"));
    for (auto& I : ideals_norm_le(K1, 4)) {
        auto g = is_principal(K1, I);
        REQUIRE(g.has_value());  // h = 1
        CHECK(ideal_principal(K1, *g) == I);
        auto gb = principal_brute(K1, I);
        REQUIRE(gb.has_value());
        CHECK(*g == *gb);
    }

    QuadField K3(R, R.parse("T^3+T+1"));
    int principal_count = 0, nonprincipal_count = 0;
    for (auto& I : ideals_norm_le(K3, 3)) {
        auto g = is_principal(K3, I);
        auto gb = principal_brute(K3, I);
        CHECK(g.has_value() == gb.has_value());
        if (g) {
            CHECK(*g == *gb);
            ++principal_count;
        } else {
            ++nonprincipal_count;
        }
    }
    CHECK(principal_count > 0);
    CHECK(nonprincipal_count > 0);
}

TEST_CASE("prime element enumeration for D = T counts F_q[S] primes") {
    GaloisField F(7, 1);
    PolyRing R(F);
    QuadField K(R, R.parse("T"));
    IrreducibleTables tabs(R);

    // A = F_q[sqrt T] is a polynomial ring in S = sqrt T, so prime ideals of
    // norm q^N match monic irreducibles of degree N in S
    for (int N = 1; N <= 4; ++N) {
        auto prims = enumerate_prime_elements(K, tabs, N);
        auto all = prime_ideals_of_norm(K, tabs, N);
        CHECK(prims.size() == all.size());  // h = 1
        CHECK(prims.size() == R.count_monic_irreducibles(N));
        std::set<std::string> seen;
        for (auto& pe : prims) {
            CHECK(K.norm_deg(pe.pi) == N);  // |pi|^2 = q^N
            CHECK(pe.P.norm_exp() == N);
            CHECK(ideal_principal(K, pe.pi) == pe.P);
            seen.insert(K.format(pe.pi));
        }
        CHECK(seen.size() == prims.size());
    }
}

TEST_CASE("Dirichlet search: zero sqrtD component reduces to the CF frontier") {
    GaloisField F(7, 1);
    PolyRing R(F);
    QuadField K(R, R.parse("T"));
    LaurentSeries golden = LaurentSeries::parse_alpha(R, "golden");
    QuadLaurent x{golden, LaurentSeries::rational(R, R.zero(), R.one())};

    DirichletSearch res = dirichlet_search_K(K, x, HalfQPower::of_half(6), -40);
    auto cf = continued_fraction(golden, 3);
    REQUIRE(res.frontier.size() == cf.size());
    for (std::size_t j = 0; j < cf.size(); ++j) {
        const FrontierEntry& e = res.frontier[j];
        CHECK(e.abs_f.he == 2 * cf[j].f.deg());
        REQUIRE(e.quality.is_exact());
        // |f x - a| = |f| |x - a/f|
        CHECK(e.quality.value.he == 2 * (cf[j].quality.e + cf[j].f.deg()));
        CHECK(e.f.y.is_zero());
    }
}

TEST_CASE("Dirichlet search: polynomial pair hits exactly at f = 1") {
    GaloisField F(7, 1);
    PolyRing R(F);
    QuadField K(R, R.parse("T"));
    QuadLaurent x{LaurentSeries::rational(R, R.parse("T^2+1"), R.one()),
                  LaurentSeries::rational(R, R.parse("T"), R.one())};
    DirichletSearch res = dirichlet_search_K(K, x, HalfQPower::of_half(4), -20);
    CHECK(res.exact_hit);
    REQUIRE(res.frontier.size() == 1);
    CHECK(res.frontier[0].f == K.one());
    CHECK(res.frontier[0].quality.is_zero());
}

TEST_CASE("Dirichlet search on the lacunary pair: frontier and Remark-1 chain") {
    GaloisField F(7, 1);
    PolyRing R(F);
    QuadField K(R, R.parse("T"));
    QuadLaurent x = K.parse_quad_alpha("lacunary;lacunary");

    DirichletSearch res = dirichlet_search_K(K, x, HalfQPower::of_half(6), -60);
    REQUIRE(res.frontier.size() >= 3);
    for (auto& e : res.frontier) {
        REQUIRE(e.quality.is_exact());
        // empirical Dirichlet constant on this fixture: local c <= q
        CHECK(e.local_c <= HalfQPower::of_half(2));
    }
    for (std::size_t j = 1; j < res.frontier.size(); ++j) {
        CHECK(res.frontier[j].quality.value < res.frontier[j - 1].quality.value);
        CHECK(res.frontier[j - 1].abs_f <= res.frontier[j].abs_f);
    }
    // Remark-1 divergence with c the frontier maximum
    long long c_he = res.c_max.is_zero() ? 0 : res.c_max.he;
    for (std::size_t j = 0; j + 1 < res.frontier.size(); ++j) {
        long long lhs = res.frontier[j + 1].effective_modulus.norm_exp();
        long long rhs = ideal_principal(K, res.frontier[j].f).norm_exp();
        CHECK(lhs + c_he >= rhs);
    }
}

TEST_CASE("QuadInt literals round trip") {
    GaloisField F(7, 1);
    PolyRing R(F);
    QuadField K(R, R.parse("T"));
    QuadInt g{R.parse("T^2+3"), R.parse("2*T")};
    CHECK(K.parse(K.format(g)) == g);
    CHECK_THROWS_AS(K.parse("garbage"), ParseError);
}
