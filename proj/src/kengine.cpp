#include "lsieve/kengine.hpp"

#include <algorithm>
#include <cmath>

namespace lsieve {

bool verify_q_condition(std::uint64_t q) {
    if (q < 2) return false;
    // 2^(2/3) q / (q-1)^(2/3) < q^(2/3)  <=>  4 q^3 < q^2 (q-1)^2  <=>  4q < (q-1)^2
    return 4 * q < (q - 1) * (q - 1);
}

KEngine::KEngine(const PolyRing& R, LaurentSeries alpha)
    : R_(R), alpha_(std::move(alpha)), tabs_(R) {}

KParams KEngine::choose_params(const Poly& f, const Poly& a, Rat epsilon) const {
    if (f.is_zero() || f.deg() < 1 || f.lead() != 1)
        throw ParseError("f must be monic of degree >= 1");
    if (!(Rat(0) < epsilon && epsilon < Rat(1, 3)))
        throw ParseError("epsilon must lie in (0, 1/3)");
    if (!R_.coprime(a, f)) throw NotCoprime("gcd(a, f) != 1");

    const long long d = f.deg();
    // N = floor(2d / (4/3 - eps)) with eps = eb/ed exactly
    Rat N_rat = Rat(2 * d) / (Rat(4, 3) - epsilon);
    long long N = N_rat.floor();
    Rat M_rat = (Rat(1, 3) - epsilon) * Rat(N);
    long long M = M_rat.ceil();
    if (N < 1 || M < 1) throw Cond1Violated("degenerate parameters; take a larger convergent");
    // (cond1): q^N |f|^{-2} <= q^{-M}  <=>  N + M <= 2 deg f
    if (N + M > 2 * d) throw Cond1Violated("q^N |f|^-2 > q^-M; take a larger convergent");
    return KParams{f, a, epsilon, (int)N, (int)M};
}

void KEngine::gate_N(int N) const {
    long double size = std::pow((long double)R_.q(), (long double)N);
    if (size > 1.0e8L) throw RangeTooLarge("q^N > 1e8");
}

const UnitGroup& KEngine::unit_group(const Poly& f) {
    std::uint64_t key = R_.key(f);
    auto it = groups_.find(key);
    if (it == groups_.end())
        it = groups_.emplace(key, std::make_unique<UnitGroup>(R_, f)).first;
    return *it->second;
}

const PrimeHistogram& KEngine::prime_hist(const Poly& f, int N) {
    auto key = std::make_pair(R_.key(f), N);
    auto it = hists_.find(key);
    if (it == hists_.end())
        it = hists_.emplace(key, prime_histogram(tabs_, unit_group(f), N)).first;
    return it->second;
}

long long KEngine::s_count_metric(const KParams& p) {
    gate_N(p.N);
    const GaloisField& F = R_.field();
    const int N = p.N, M = p.M;
    // ||alpha pi|| <= q^{-M}: fractional coefficients at degrees -1 .. -(M-1)
    // of alpha*pi must vanish; they involve alpha coefficients down to -(M-1)-N
    long long count = 0;
    if (M <= 1) {
        // ||.|| <= q^{-1} holds always
        return (long long)tabs_.count(N);
    }
    std::vector<GfElem> win = alpha_.window(-1, -(M - 1) - N);
    auto alpha_at = [&](long long k) -> GfElem {
        // k in [-(M-1)-N, -1]
        return win[(std::size_t)(-1 - k)];
    };
    std::vector<GfElem> pc((std::size_t)N + 1, 0);
    const std::uint64_t q = R_.q();
    for (std::uint64_t key : tabs_.prime_keys(N)) {
        std::uint64_t k = key;
        for (int i = 0; i < N; ++i) {
            pc[(std::size_t)i] = (GfElem)(k % q);
            k /= q;
        }
        pc[(std::size_t)N] = 1;
        bool ok = true;
        for (long long t = -1; t >= -(M - 1) && ok; --t) {
            GfElem acc = 0;
            for (int s = 0; s <= N; ++s) {
                GfElem ps = pc[(std::size_t)s];
                if (ps) acc = F.add(acc, F.mul(ps, alpha_at(t - s)));
            }
            if (acc != 0) ok = false;
        }
        if (ok) ++count;
    }
    return count;
}

long long KEngine::s_count_congruence(const KParams& p) {
    gate_N(p.N);
    const UnitGroup& G = unit_group(p.f);
    const PrimeHistogram& H = prime_hist(p.f, p.N);
    const int L = p.box_deg();
    if (L < 0) return 0;

    // the box condition depends only on the residue class of pi*a: class of
    // pi maps to class of pi*a, whose canonical representative must have
    // degree <= L; coprimality of that representative is automatic and
    // asserted
    std::int32_t a_idx = G.index_of(p.a);
    if (a_idx < 0) throw NotCoprime("gcd(a, f) != 1");
    long long count = 0;
    for (std::int32_t idx = 0; idx < (std::int32_t)G.phi(); ++idx) {
        long long cnt = H.by_index[(std::size_t)idx];
        if (!cnt) continue;
        std::int32_t bidx = G.mul_index(idx, a_idx);
        if (bidx < 0) throw InternalCheckFailed("unit product left the unit group");
        Poly b = G.residue_of_index(bidx);
        if (b.is_zero()) throw InternalCheckFailed("zero representative for a unit class");
        if (b.deg() <= L) count += cnt;
    }
    return count;
}

long long KEngine::s_count_chars(const KParams& p) {
    gate_N(p.N);
    const UnitGroup& G = unit_group(p.f);
    const PrimeHistogram& HP = prime_hist(p.f, p.N);
    const int L = p.box_deg();
    if (L < 0) return 0;
    BoxHistogram HB = box_histogram(G, L);

    std::int32_t a_idx = G.index_of(p.a);
    if (a_idx < 0) throw NotCoprime("gcd(a, f) != 1");

    RootTable rt(G.exponent());
    auto chars_list = characters(G);
    std::complex<long double> total = 0;
    for (auto& chi : chars_list) {
        std::complex<long double> box = 0, prime = 0;
        for (std::int32_t idx = 0; idx < (std::int32_t)G.phi(); ++idx) {
            long long cb = HB.by_index[(std::size_t)idx];
            long long cp = HP.by_index[(std::size_t)idx];
            if (!cb && !cp) continue;
            long long m = chi.eval_index(idx).m;
            if (cb) box += (long double)cb * rt[-m];
            if (cp) prime += (long double)cp * rt[m];
        }
        long long ma = chi.eval_index(a_idx).m;
        total += rt[ma] * box * prime;
    }
    total /= (long double)G.phi();
    return round_to_integer(total, 1e-6L, "s_count_chars");
}

SReport KEngine::asymptotic_report(const KParams& p) {
    SReport rep;
    rep.params = p;
    rep.q_condition = verify_q_condition(R_.q());
    rep.s_metric = s_count_metric(p);
    rep.s_congruence = s_count_congruence(p);
    rep.s_chars = s_count_chars(p);

    const UnitGroup& G = unit_group(p.f);
    const PrimeHistogram& H = prime_hist(p.f, p.N);
    rep.phi = G.phi();
    rep.primes_total = H.total;
    rep.primes_dividing_f = H.dividing_modulus;

    const int L = p.box_deg();
    if (L >= 0) {
        BoxHistogram HB = box_histogram(G, L);
        rep.box_coprime = HB.total - HB.non_coprime;
    }
    long long primes_counted = rep.primes_total - rep.primes_dividing_f;
    rep.main_exact = (double)rep.box_coprime * (double)primes_counted / (double)rep.phi;

    const double q = (double)R_.q();
    rep.paper_main = std::pow(q, (double)(p.N - p.M)) / (double)p.N;
    rep.box_density = (double)rep.box_coprime / (double)rep.phi;
    rep.paper_density = std::pow(q, (double)-p.M);
    const double d = (double)p.f.deg();
    rep.error_bound = std::pow(2.0, d) * std::pow(q, (double)p.N) /
                          (std::pow(q - 1.0, d) * (double)p.N) +
                      d * std::pow(q, (double)(p.f.deg() - p.M) / 2.0) *
                          std::pow(q, (double)p.N / 2.0) / (double)p.N;

    rep.three_way_pass = rep.s_chars == rep.s_congruence && rep.s_congruence <= rep.s_metric;
    rep.positive = rep.s_congruence > 0;
    rep.ratio_congruence_to_main =
        rep.main_exact > 0 ? (double)rep.s_congruence / rep.main_exact : 0.0;
    rep.ratio_main_to_paper = rep.paper_main > 0 ? rep.main_exact / rep.paper_main : 0.0;
    return rep;
}

std::vector<Witness> KEngine::witness_primes(int N_lo, int N_hi, Rat epsilon) {
    if (!(Rat(0) < epsilon && epsilon < Rat(1, 3)))
        throw ParseError("epsilon must lie in (0, 1/3)");
    gate_N(N_hi);
    std::vector<Witness> out;
    const GaloisField& F = R_.field();
    const std::uint64_t q = R_.q();
    for (int N = N_lo; N <= N_hi; ++N) {
        long long M = ((Rat(1, 3) - epsilon) * Rat(N)).ceil();
        long long floor_exp = -(2LL * N + M + 8);
        std::vector<GfElem> win = alpha_.window(-1, floor_exp - N);
        auto alpha_at = [&](long long k) { return win[(std::size_t)(-1 - k)]; };
        std::vector<Witness> level;
        std::vector<GfElem> pc((std::size_t)N + 1, 0);
        for (std::uint64_t key : tabs_.prime_keys(N)) {
            std::uint64_t kk = key;
            for (int i = 0; i < N; ++i) {
                pc[(std::size_t)i] = (GfElem)(kk % q);
                kk /= q;
            }
            pc[(std::size_t)N] = 1;
            // first nonzero fractional coefficient of alpha * pi
            NormResult norm = NormResult::below(floor_exp - 1);
            for (long long t = -1; t >= floor_exp; --t) {
                GfElem acc = 0;
                for (int s = 0; s <= N; ++s) {
                    GfElem ps = pc[(std::size_t)s];
                    if (ps) acc = F.add(acc, F.mul(ps, alpha_at(t - s)));
                }
                if (acc != 0) {
                    norm = NormResult::exact(QPower::of(t));
                    break;
                }
            }
            bool pass = norm.is_exact() ? norm.value <= QPower::of(-M) : true;
            if (!pass) continue;
            Witness w;
            w.N = N;
            w.pi = Poly{pc};
            w.norm = norm;
            w.required = -M;
            long long k_exp = norm.is_exact() && !norm.value.is_zero() ? -norm.value.e
                                                                       : -(floor_exp - 1);
            w.exponent_ratio = (double)k_exp / (double)N;
            level.push_back(std::move(w));
        }
        std::sort(level.begin(), level.end(), [this](const Witness& x, const Witness& y) {
            QPower nx = x.norm.is_exact() ? x.norm.value : QPower::of(x.norm.below_e);
            QPower ny = y.norm.is_exact() ? y.norm.value : QPower::of(y.norm.below_e);
            if (!(nx == ny)) return nx < ny;
            return R_.lex_less(x.pi, y.pi);
        });
        for (auto& w : level) out.push_back(std::move(w));
    }
    return out;
}

}  // namespace lsieve
