#include "lsieve/laurent.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace lsieve {

namespace {

class RationalSource final : public LaurentSource {
public:
    RationalSource(const GaloisField& F, Poly a, Poly f)
        : F_(F), a_(std::move(a)), f_(std::move(f)) {
        if (f_.is_zero()) throw DivideByZero("rational Laurent series with zero denominator");
        parts_ = {a_, f_};
        K_ = a_.is_zero() ? 0 : a_.deg() - f_.deg();
        top_ = a_.is_zero() ? -1 : K_;
        li_ = F_.inv(f_.lead());
    }
    long long top() const override { return top_; }
    const std::pair<Poly, Poly>* rational_parts() const override { return &parts_; }

    GfElem coeff(long long k) override {
        if (a_.is_zero()) return 0;
        if (k > K_) return 0;
        std::lock_guard<std::mutex> lock(mu_);
        // cache_[j] holds the coefficient at degree K_ - j
        while ((long long)cache_.size() <= K_ - k) {
            long long i = K_ - (long long)cache_.size();  // next degree to compute
            int m = f_.deg();
            GfElem acc = a_.coeff((int)(i + m));
            for (int j = 0; j < m; ++j) {
                long long cidx = K_ - (i + m - j);
                if (cidx < 0 || cidx >= (long long)cache_.size()) continue;
                acc = F_.sub(acc, F_.mul(f_.c[(std::size_t)j], cache_[(std::size_t)cidx]));
            }
            cache_.push_back(F_.mul(acc, li_));
        }
        return cache_[(std::size_t)(K_ - k)];
    }

private:
    const GaloisField& F_;
    Poly a_, f_;
    std::pair<Poly, Poly> parts_;
    long long K_ = 0, top_ = -1;
    GfElem li_ = 0;
    std::mutex mu_;
    std::vector<GfElem> cache_;
};

class CoeffFnSource final : public LaurentSource {
public:
    CoeffFnSource(long long top, std::function<GfElem(long long)> fn)
        : top_(top), fn_(std::move(fn)) {}
    long long top() const override { return top_; }
    GfElem coeff(long long k) override {
        if (k > top_) return 0;
        std::lock_guard<std::mutex> lock(mu_);
        auto it = cache_.find(k);
        if (it != cache_.end()) return it->second;
        GfElem v = fn_(k);
        cache_.emplace(k, v);
        return v;
    }

private:
    long long top_;
    std::function<GfElem(long long)> fn_;
    std::mutex mu_;
    std::map<long long, GfElem> cache_;
};

class CfSource final : public LaurentSource {
public:
    CfSource(const GaloisField& F, Poly a0, std::function<Poly(int)> rule)
        : F_(F), R_(F), rule_(std::move(rule)) {
        quotients_.push_back(std::move(a0));
        p_.push_back(quotients_[0]);  // p_0 = a_0
        f_.push_back(R_.one());       // f_0 = 1
        top_ = quotients_[0].is_zero() ? -1 : quotients_[0].deg();
    }
    long long top() const override { return top_; }
    bool has_cf_rule() const override { return true; }

    Poly cf_quotient(int i) override {
        std::lock_guard<std::mutex> lock(mu_);
        ensure_quotients(i);
        return quotients_[(std::size_t)i];
    }

    GfElem coeff(long long k) override {
        if (k > top_) return 0;
        std::lock_guard<std::mutex> lock(mu_);
        // advance until |alpha - p_j/f_j| = q^{-(deg f_j + deg f_{j+1})} lies
        // strictly below degree k; then the expansions agree at k
        while (true) {
            std::size_t j = f_.size() - 1;
            ensure_quotients((int)j + 1);
            long long fj1 = f_[j].deg() + quotients_[j + 1].deg();
            if (-(f_[j].deg() + fj1) < k) break;
            advance();
        }
        std::size_t j = f_.size() - 1;
        if (!expander_ || expander_j_ != j) {
            expander_ = std::make_unique<RationalSource>(F_, p_[j], f_[j]);
            expander_j_ = j;
        }
        return expander_->coeff(k);
    }

private:
    void ensure_quotients(int i) {
        while ((int)quotients_.size() <= i) {
            Poly a = rule_((int)quotients_.size());
            if (a.deg() < 1)
                throw InternalCheckFailed("partial quotient of degree < 1 from CF rule");
            quotients_.push_back(std::move(a));
        }
    }
    void advance() {
        std::size_t j = f_.size();  // index being built
        ensure_quotients((int)j);
        const Poly& aj = quotients_[j];
        Poly pj, fj;
        if (j == 1) {
            pj = R_.add(R_.mul(aj, p_[0]), R_.one());
            fj = aj;
        } else {
            pj = R_.add(R_.mul(aj, p_[j - 1]), p_[j - 2]);
            fj = R_.add(R_.mul(aj, f_[j - 1]), f_[j - 2]);
        }
        p_.push_back(std::move(pj));
        f_.push_back(std::move(fj));
    }

    const GaloisField& F_;
    PolyRing R_;
    std::function<Poly(int)> rule_;
    std::mutex mu_;
    std::vector<Poly> quotients_, p_, f_;
    long long top_;
    std::unique_ptr<RationalSource> expander_;
    std::size_t expander_j_ = (std::size_t)-1;
};

std::uint64_t xorshift(std::uint64_t& s) {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return s;
}

}  // namespace

LaurentSeries LaurentSeries::rational(const PolyRing& R, Poly a, Poly f) {
    return LaurentSeries(R.field(),
                         std::make_shared<RationalSource>(R.field(), std::move(a), std::move(f)));
}

LaurentSeries LaurentSeries::from_coeff_fn(const GaloisField& F, long long top,
                                           std::function<GfElem(long long)> fn) {
    return LaurentSeries(F, std::make_shared<CoeffFnSource>(top, std::move(fn)));
}

LaurentSeries LaurentSeries::from_cf_rule(const PolyRing& R, Poly a0,
                                          std::function<Poly(int)> quotient) {
    return LaurentSeries(R.field(),
                         std::make_shared<CfSource>(R.field(), std::move(a0), std::move(quotient)));
}

LaurentSeries LaurentSeries::parse_alpha(const PolyRing& R, const std::string& spec) {
    if (spec == "golden") {
        Poly t = R.T();
        return from_cf_rule(R, R.zero(), [t](int) { return t; });
    }
    if (spec == "lacunary") {
        return from_coeff_fn(R.field(), -1, [](long long k) -> GfElem {
            if (k >= 0) return 0;
            long long m = -k;
            for (long long i = 1; i * i <= m; ++i)
                if (i * i == m) return 1;
            return 0;
        });
    }
    if (spec.rfind("rational:", 0) == 0) {
        std::string body = spec.substr(9);
        auto slash = body.find('/');
        if (slash == std::string::npos) throw ParseError("rational alpha needs <a>/<f>: " + spec);
        Poly a = R.parse(body.substr(0, slash));
        Poly f = R.parse(body.substr(slash + 1));
        if (f.is_zero()) throw ParseError("rational alpha with zero denominator");
        return rational(R, std::move(a), std::move(f));
    }
    if (spec.rfind("seed:", 0) == 0) {
        std::uint64_t seed = std::strtoull(spec.c_str() + 5, nullptr, 10);
        auto state = std::make_shared<std::pair<std::uint64_t, std::vector<Poly>>>();
        state->first = seed ? seed : 0x9E3779B97F4A7C15ull;
        const GaloisField* F = &R.field();
        return from_cf_rule(R, R.zero(), [state, F](int i) -> Poly {
            auto& [s, cache] = *state;
            while ((int)cache.size() < i) {
                std::uint64_t r = xorshift(s);
                int d = 1 + (int)(r & 1);
                std::vector<GfElem> c((std::size_t)d + 1);
                for (auto& x : c) x = F->from_int(xorshift(s));
                if (c.back() == 0) c.back() = 1;
                cache.push_back(Poly{std::move(c)});
            }
            return cache[(std::size_t)i - 1];
        });
    }
    throw ParseError("unknown alpha spec: " + spec);
}

std::vector<GfElem> LaurentSeries::window(long long hi, long long lo) const {
    std::vector<GfElem> out;
    out.reserve((std::size_t)(hi - lo + 1));
    for (long long k = hi; k >= lo; --k) out.push_back(coeff(k));
    return out;
}

bool NormResult::le(QPower bound) const {
    if (is_exact()) return value <= bound;
    if (QPower::of(below_e) <= bound) return true;
    throw InsufficientPrecision("norm certificate cannot decide comparison");
}

std::string NormResult::str() const {
    if (is_exact()) return value.str();
    return "<=q^" + std::to_string(below_e);
}

NormResult norm_dist(const LaurentSeries& x, long long floor_exp) {
    if (const auto* rp = x.rational_parts()) {
        PolyRing R(x.field());
        Poly r = R.mod(rp->first, rp->second);
        if (r.is_zero()) return NormResult::exact(QPower::zero_value());
        return NormResult::exact(QPower::of(r.deg() - rp->second.deg()));
    }
    for (long long k = -1; k >= floor_exp; --k)
        if (x.coeff(k) != 0) return NormResult::exact(QPower::of(k));
    return NormResult::below(floor_exp - 1);
}

NormResult norm_dist_scaled(const LaurentSeries& x, const Poly& f, long long floor_exp) {
    const GaloisField& F = x.field();
    if (f.is_zero()) return NormResult::exact(QPower::zero_value());
    if (const auto* rp = x.rational_parts()) {
        PolyRing R(F);
        Poly r = R.mod(R.mul(f, rp->first), rp->second);
        if (r.is_zero()) return NormResult::exact(QPower::zero_value());
        return NormResult::exact(QPower::of(r.deg() - rp->second.deg()));
    }
    for (long long k = -1; k >= floor_exp; --k) {
        GfElem acc = 0;
        for (int s = 0; s <= f.deg(); ++s)
            acc = F.add(acc, F.mul(f.c[(std::size_t)s], x.coeff(k - s)));
        if (acc != 0) return NormResult::exact(QPower::of(k));
    }
    return NormResult::below(floor_exp - 1);
}

bool norm_le_scaled(const LaurentSeries& x, const Poly& f, long long e) {
    if (e >= -1) return true;
    return norm_dist_scaled(x, f, e + 1).le(QPower::of(e));
}

namespace {

struct CfState {
    std::vector<Poly> quots, p, f;
};

// exact Euclid continued fraction of a/b, with convergents
CfState euclid_cf(const PolyRing& R, const Poly& a, const Poly& b) {
    CfState st;
    Poly r0 = a, r1 = b;
    while (!r1.is_zero()) {
        auto [q, r] = R.divmod(r0, r1);
        st.quots.push_back(q);
        r0 = std::move(r1);
        r1 = std::move(r);
    }
    st.p.resize(st.quots.size());
    st.f.resize(st.quots.size());
    for (std::size_t j = 0; j < st.quots.size(); ++j) {
        const Poly& aj = st.quots[j];
        if (j == 0) {
            st.p[0] = aj;
            st.f[0] = R.one();
        } else if (j == 1) {
            st.p[1] = R.add(R.mul(aj, st.p[0]), R.one());
            st.f[1] = aj;
        } else {
            st.p[j] = R.add(R.mul(aj, st.p[j - 1]), st.p[j - 2]);
            st.f[j] = R.add(R.mul(aj, st.f[j - 1]), st.f[j - 2]);
        }
    }
    return st;
}

Convergent make_convergent(const PolyRing& R, const Poly& p, const Poly& f, int index,
                           QPower quality) {
    GfElem s = R.field().inv(f.lead());
    return Convergent{R.mul_scalar(p, s), R.mul_scalar(f, s), index, quality};
}

}  // namespace

std::vector<Convergent> continued_fraction(const LaurentSeries& alpha, int max_deg_f) {
    PolyRing R(alpha.field());
    std::vector<Convergent> out;

    if (const auto* rp = alpha.rational_parts()) {
        CfState st = euclid_cf(R, rp->first, rp->second);
        for (std::size_t j = 0; j < st.quots.size(); ++j) {
            if (st.f[j].deg() > max_deg_f) break;
            QPower quality = j + 1 < st.quots.size()
                                 ? QPower::of(-(st.f[j].deg() + st.f[j + 1].deg()))
                                 : QPower::zero_value();
            out.push_back(make_convergent(R, st.p[j], st.f[j], (int)j, quality));
        }
        return out;
    }

    if (alpha.has_cf_rule()) {
        std::vector<Poly> p, f;
        for (int j = 0;; ++j) {
            Poly aj = alpha.cf_quotient(j);
            Poly pj, fj;
            if (j == 0) {
                pj = aj;
                fj = R.one();
            } else if (j == 1) {
                pj = R.add(R.mul(aj, p[0]), R.one());
                fj = aj;
            } else {
                pj = R.add(R.mul(aj, p[(std::size_t)j - 1]), p[(std::size_t)j - 2]);
                fj = R.add(R.mul(aj, f[(std::size_t)j - 1]), f[(std::size_t)j - 2]);
            }
            p.push_back(std::move(pj));
            f.push_back(std::move(fj));
            if (f.back().deg() > max_deg_f) break;
        }
        for (std::size_t j = 0; j + 1 < f.size(); ++j) {
            QPower quality = QPower::of(-(f[j].deg() + f[j + 1].deg()));
            out.push_back(make_convergent(R, p[j], f[j], (int)j, quality));
        }
        return out;
    }

    // generic source: adaptive truncation window
    long long W = 2LL * max_deg_f + 2;
    const long long W_cap = 8LL * (max_deg_f + 2) + 64;
    while (true) {
        long long top = std::max(alpha.top(), -1LL);
        std::vector<GfElem> num((std::size_t)(top + W + 1), 0);
        for (long long k = top; k >= -W; --k) num[(std::size_t)(k + W)] = alpha.coeff(k);
        Poly numerator = R.from_coeffs(std::move(num));
        Poly denom = R.shift(R.one(), (int)W);
        CfState st = euclid_cf(R, numerator, denom);

        out.clear();
        bool retry = false;
        for (std::size_t j = 0; j < st.quots.size(); ++j) {
            if (st.f[j].deg() > max_deg_f) break;
            if (j + 1 >= st.quots.size()) {
                retry = true;  // truncation looks rational at this window
                break;
            }
            long long pair_deg = st.f[j].deg() + st.f[j + 1].deg();
            if (pair_deg + 1 > W) {
                W = std::max(W + 8, pair_deg + 2);
                retry = true;
                break;
            }
            out.push_back(make_convergent(R, st.p[j], st.f[j], (int)j, QPower::of(-pair_deg)));
        }
        if (!retry) return out;
        if (W > W_cap)
            throw InsufficientPrecision(
                "continued-fraction window exhausted; source looks rational or too shallow");
        W += 8;
    }
}

AdelicSolution adelic_box_solve_k(const std::vector<std::vector<LaurentSeries>>& A,
                                  long long eps_exp, long long delta_deg) {
    if (A.empty() || A[0].empty()) throw ParseError("empty matrix");
    const long long M = (long long)A.size();
    const long long N = (long long)A[0].size();
    for (auto& row : A)
        if ((long long)row.size() != N) throw ParseError("ragged matrix");
    if (delta_deg < 0) throw ProductConditionViolated("delta must satisfy |delta| >= 1");
    if (N * delta_deg + M * eps_exp != -(M + N) + 1)
        throw ProductConditionViolated("N*d + M*e must equal -(M+N)+1");

    const GaloisField& F = A[0][0].field();
    PolyRing R(F);
    const std::uint64_t q = F.q();

    double space = std::pow((double)q, (double)(N * (delta_deg + 1)));
    if (space > 1.0e8) throw SearchSpaceTooLarge("q^(N(d+1)) > 1e8");

    // candidate coordinate values: zero, then degree-graded lex order
    std::vector<Poly> cand;
    cand.push_back(R.zero());
    R.for_each_nonzero_deg_le((int)delta_deg, [&](const Poly& f) { cand.push_back(f); });

    // exact coefficient windows for each entry
    const long long lo = eps_exp + 1 - delta_deg;
    struct Win {
        long long top = 0;
        std::vector<GfElem> c;  // c[i] is the coefficient at degree top - i
        GfElem at(long long k) const {
            if (k > top) return 0;
            long long i = top - k;
            return i < (long long)c.size() ? c[(std::size_t)i] : 0;
        }
    };
    std::vector<std::vector<Win>> win((std::size_t)M, std::vector<Win>((std::size_t)N));
    for (long long i = 0; i < M; ++i)
        for (long long j = 0; j < N; ++j) {
            const LaurentSeries& a = A[(std::size_t)i][(std::size_t)j];
            long long t = std::max(a.top(), 0LL);
            win[(std::size_t)i][(std::size_t)j] = Win{t, a.window(t, lo)};
        }

    std::vector<std::size_t> idx((std::size_t)N, 0);
    auto advance = [&]() -> bool {
        for (long long j = N - 1; j >= 0; --j) {
            if (++idx[(std::size_t)j] < cand.size()) return true;
            idx[(std::size_t)j] = 0;
        }
        return false;
    };

    while (advance()) {  // the all-zero tuple is skipped by the first advance
        bool ok = true;
        for (long long i = 0; i < M && ok; ++i) {
            for (long long k = -1; k > eps_exp && ok; --k) {
                GfElem acc = 0;
                for (long long j = 0; j < N; ++j) {
                    const Poly& xj = cand[idx[(std::size_t)j]];
                    for (int s = 0; s <= xj.deg(); ++s)
                        acc = F.add(acc, F.mul(xj.c[(std::size_t)s],
                                               win[(std::size_t)i][(std::size_t)j].at(k - s)));
                }
                if (acc != 0) ok = false;
            }
        }
        if (!ok) continue;
        AdelicSolution sol;
        for (long long j = 0; j < N; ++j) sol.x.push_back(cand[idx[(std::size_t)j]]);
        for (long long i = 0; i < M; ++i) {
            long long hi = 0;
            for (long long j = 0; j < N; ++j)
                hi = std::max(hi, win[(std::size_t)i][(std::size_t)j].top + delta_deg);
            std::vector<GfElem> yc((std::size_t)hi + 1, 0);
            for (long long k = 0; k <= hi; ++k) {
                GfElem acc = 0;
                for (long long j = 0; j < N; ++j) {
                    const Poly& xj = cand[idx[(std::size_t)j]];
                    for (int s = 0; s <= xj.deg(); ++s)
                        acc = F.add(acc, F.mul(xj.c[(std::size_t)s],
                                               win[(std::size_t)i][(std::size_t)j].at(k - s)));
                }
                yc[(std::size_t)k] = F.neg(acc);
            }
            sol.y.push_back(R.from_coeffs(std::move(yc)));
        }
        return sol;
    }
    throw InternalInfeasible("no solution found although one is guaranteed to exist");
}

}  // namespace lsieve
