#pragma once

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "lsieve/poly.hpp"

namespace lsieve {

// Exact coefficient source for an element of F_q((1/T)). coeff(k) must be
// exact for every degree k; degrees above top() are zero. Implementations
// cache internally and must behave as if the window extends atomically.
class LaurentSource {
public:
    virtual ~LaurentSource() = default;
    virtual long long top() const = 0;
    virtual GfElem coeff(long long k) = 0;
    // set when the series is exactly a/f; enables exact norm decisions
    virtual const std::pair<Poly, Poly>* rational_parts() const { return nullptr; }
    // set when the series carries an explicit partial-quotient rule
    virtual bool has_cf_rule() const { return false; }
    virtual Poly cf_quotient(int /*i*/) { return {}; }
};

class LaurentSeries {
public:
    LaurentSeries(const GaloisField& F, std::shared_ptr<LaurentSource> src)
        : F_(&F), src_(std::move(src)) {}

    static LaurentSeries rational(const PolyRing& R, Poly a, Poly f);
    static LaurentSeries from_coeff_fn(const GaloisField& F, long long top,
                                       std::function<GfElem(long long)> fn);
    // a0 is the polynomial part; quotient(i) for i >= 1 must be exact with
    // degree >= 1 and is queried in increasing order
    static LaurentSeries from_cf_rule(const PolyRing& R, Poly a0,
                                      std::function<Poly(int)> quotient);
    // AlphaSpec: "golden" | "lacunary" | "rational:<a>/<f>" | "seed:<u64>"
    static LaurentSeries parse_alpha(const PolyRing& R, const std::string& spec);

    const GaloisField& field() const { return *F_; }
    long long top() const { return src_->top(); }
    GfElem coeff(long long k) const { return src_->coeff(k); }
    // coefficients hi, hi-1, ..., lo (inclusive)
    std::vector<GfElem> window(long long hi, long long lo) const;
    const std::pair<Poly, Poly>* rational_parts() const { return src_->rational_parts(); }
    bool has_cf_rule() const { return src_->has_cf_rule(); }
    Poly cf_quotient(int i) const { return src_->cf_quotient(i); }

private:
    const GaloisField* F_;
    std::shared_ptr<LaurentSource> src_;
};

// Result of a distance-to-A computation: an exact q-power (possibly exact
// zero), or a certificate that the norm is <= q^below_e.
struct NormResult {
    enum class Kind { Exact, Below } kind = Kind::Exact;
    QPower value = QPower::zero_value();
    long long below_e = 0;

    static NormResult exact(QPower v) { return {Kind::Exact, v, 0}; }
    static NormResult below(long long e) { return {Kind::Below, QPower::zero_value(), e}; }

    bool is_exact() const { return kind == Kind::Exact; }
    bool is_zero() const { return is_exact() && value.is_zero(); }
    // certified <=; throws InsufficientPrecision when the certificate cannot
    // decide
    bool le(QPower bound) const;
    std::string str() const;
};

// ||x + A||, scanning down to floor_exp (ignored for exactly-rational x)
NormResult norm_dist(const LaurentSeries& x, long long floor_exp);
// ||f * x + A||
NormResult norm_dist_scaled(const LaurentSeries& x, const Poly& f, long long floor_exp);
// exact decision ||f * x|| <= q^e (no floor needed: only finitely many
// coefficients are involved)
bool norm_le_scaled(const LaurentSeries& x, const Poly& f, long long e);

struct Convergent {
    Poly a;
    Poly f;  // monic
    int index = 0;
    QPower quality;  // |alpha - a/f|, exact; zero for an exact final convergent
};

// All continued-fraction convergents with deg f <= max_deg_f, in order.
std::vector<Convergent> continued_fraction(const LaurentSeries& alpha, int max_deg_f);

struct AdelicSolution {
    std::vector<Poly> x;  // length N, not all zero, deg <= delta_deg
    std::vector<Poly> y;  // length M
};

// Box solver at the infinite place of k = F_q(T): finds x != 0 with
// deg x_i <= delta_deg and ||A x + y|| <= q^eps_exp componentwise.
// Requires N*delta_deg + M*eps_exp == -(M+N)+1.
AdelicSolution adelic_box_solve_k(const std::vector<std::vector<LaurentSeries>>& A,
                                  long long eps_exp, long long delta_deg);

}  // namespace lsieve
