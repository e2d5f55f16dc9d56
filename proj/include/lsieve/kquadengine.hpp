#pragma once

#include <map>
#include <memory>
#include <string>

#include "lsieve/classray.hpp"
#include "lsieve/kengine.hpp"
#include "lsieve/rational.hpp"

namespace lsieve {

struct KQParams {
    QuadInt f, a;
    QuadIdeal gcd_af;   // gcd((a), (f))
    QuadIdeal modulus;  // the effective modulus gcd^{-1}(f)
    Rat epsilon;
    int N = 0;
    int M = 0;
    HalfQPower c;  // empirical Dirichlet constant of the pair
    // box: 0 < |b| <= |f| q^{-M/2}, as a half-exponent bound on |b|
    long long box_he(const QuadField& K) const { return K.norm_deg(f) - M; }
};

struct KQReport {
    KQParams params;
    long long s_metric = 0;
    long long s_congruence = 0;
    long long s_chars = 0;
    long long box_count = 0;     // b in the box with gcd((b),(f)) = gcd((a),(f))
    long long primes_total = 0;  // prime ideals of norm q^N
    long long primes_dividing = 0;
    long long h_f = 0;
    double main_exact = 0.0;      // box_count * primes_counted / h(f)
    double paper_main = 0.0;      // C_K (#U(f)/h) q^{N-M}/N with the corrected constant
    double paper_main_paper_c = 0.0;  // same with the paper-formula constant
    double ratio_congruence_to_main = 0.0;
    double ratio_main_to_paper = 0.0;
    // Cauchy-Schwarz data for the character sum over the box
    double charsum_lhs = 0.0;     // sum over chi of |box sum|
    double charsum_middle = 0.0;  // sqrt(h_f) sqrt(h_f sum cnt^2), the exact middle step
    double charsum_paper_rhs = 0.0;  // phi(f) N(f)^{1/2} delta
    bool box_classes_distinct = true;  // every ray class holds at most one box element
    bool three_way_pass = false;
    bool positive = false;
    bool q_condition = false;
};

struct ClaimReport {
    long long pairs = 0;
    long long congruent_pairs = 0;
    bool equivalence_ok = true;      // b2 = b1 mod f <=> b2 b1^{-1} =* 1 mod f-frak
    bool valuation_route_ok = true;  // valuation chain matches direct divisibility
    bool box_forces_equality = true;
};

class KQEngine {
public:
    KQEngine(const QuadField& K, QuadLaurent alpha);

    const QuadField& field() const { return K_; }
    const QuadLaurent& alpha() const { return alpha_; }
    const ClassGroup& classes() const { return C_; }
    const ZetaData& zeta() const { return Z_; }
    IrreducibleTables& tables() { return tabs_; }

    // N = floor(2 log_q N(f-frak) / (4/3 - eps)), M = ceil((1/3 - eps) N),
    // gated by (cond2) c q^{N/2} N(f-frak)^{-1} <= q^{-M/2}
    KQParams choose_params(const QuadInt& f, const QuadInt& a, Rat epsilon, HalfQPower c) const;

    long long s_count_metric(const KQParams& p);
    long long s_count_congruence(const KQParams& p);
    long long s_count_chars(const KQParams& p);
    KQReport asymptotic_report(const KQParams& p);

    ClaimReport claim_equivalence_check(const QuadInt& f, int M, const QuadIdeal& gcd_af);

    const RayClassGroup& ray_group(const QuadIdeal& modulus);
    const std::vector<PrimeElement>& prime_elements(int N);
    const RayPrimeHistogram& ray_prime_hist(const QuadIdeal& modulus, int N);
    // counts of box elements (E = D filter applied) per ray class of (b) gcd^{-1}
    std::vector<long long> box_ray_histogram(const KQParams& p, const RayClassGroup& H);

private:
    void gate_N(int N) const;
    std::string ideal_key(const QuadIdeal& I) const;

    const QuadField& K_;
    QuadLaurent alpha_;
    IrreducibleTables tabs_;
    ClassGroup C_;
    ZetaData Z_;
    std::map<std::string, std::unique_ptr<RayClassGroup>> rays_;
    std::map<int, std::vector<PrimeElement>> prime_cache_;
    std::map<std::pair<std::string, int>, RayPrimeHistogram> hist_cache_;
};

}  // namespace lsieve
