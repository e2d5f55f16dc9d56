#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "lsieve/laurent.hpp"
#include "lsieve/lfunc.hpp"
#include "lsieve/rational.hpp"

namespace lsieve {

// exact integer form of 2^(2/3) q / (q-1)^(2/3) < q^(2/3), cubed: 4q < (q-1)^2
bool verify_q_condition(std::uint64_t q);

struct KParams {
    Poly f;  // monic, deg >= 1
    Poly a;  // coprime to f
    Rat epsilon;
    int N = 0;
    int M = 0;
    QPower delta() const { return QPower::of(-M); }
    int box_deg() const { return f.deg() - M; }  // box: 0 < |b| <= |f| delta
};

struct SReport {
    KParams params;
    long long s_metric = 0;
    long long s_congruence = 0;
    long long s_chars = 0;
    // exact main term pieces: main_exact = box_coprime * primes_counted / phi
    long long box_coprime = 0;
    std::uint64_t phi = 0;
    long long primes_total = 0;
    long long primes_dividing_f = 0;
    double main_exact = 0.0;
    double paper_main = 0.0;   // q^{N-M} / N
    double error_bound = 0.0;  // O-term shape of the final estimate
    double ratio_congruence_to_main = 0.0;
    double ratio_main_to_paper = 0.0;
    // density report: box_coprime/phi vs q^{-M} scaled (order-of-magnitude only)
    double box_density = 0.0;
    double paper_density = 0.0;
    bool three_way_pass = false;
    bool positive = false;
    bool q_condition = false;
};

struct Witness {
    int N = 0;
    Poly pi;
    NormResult norm;        // ||alpha * pi||
    long long required = 0;  // passing threshold exponent -ceil((1/3-eps)N)
    // exponent ratio k/N with ||alpha pi|| = q^{-k}; for a below-marker the
    // certified lower bound is used
    double exponent_ratio = 0.0;
};

class KEngine {
public:
    KEngine(const PolyRing& R, LaurentSeries alpha);

    const PolyRing& ring() const { return R_; }
    const LaurentSeries& alpha() const { return alpha_; }
    IrreducibleTables& tables() { return tabs_; }

    // N = floor(2 deg f / (4/3 - eps)), M = ceil((1/3 - eps) N), checked
    // against q^N |f|^{-2} <= q^{-M}
    KParams choose_params(const Poly& f, const Poly& a, Rat epsilon) const;

    long long s_count_metric(const KParams& p);       // over all pi of degree N
    long long s_count_congruence(const KParams& p);   // box + coprime residue route
    long long s_count_chars(const KParams& p);        // character-sum route
    SReport asymptotic_report(const KParams& p);

    std::vector<Witness> witness_primes(int N_lo, int N_hi, Rat epsilon);

    const UnitGroup& unit_group(const Poly& f);
    const PrimeHistogram& prime_hist(const Poly& f, int N);

private:
    void gate_N(int N) const;
    PolyRing R_;
    LaurentSeries alpha_;
    IrreducibleTables tabs_;
    std::map<std::uint64_t, std::unique_ptr<UnitGroup>> groups_;
    std::map<std::pair<std::uint64_t, int>, PrimeHistogram> hists_;
};

}  // namespace lsieve
