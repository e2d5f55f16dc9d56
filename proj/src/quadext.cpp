#include "lsieve/quadext.hpp"

#include <algorithm>
#include <climits>
#include <cmath>

namespace lsieve {

namespace {
std::uint64_t pow_u64(std::uint64_t b, int e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}
}  // namespace

QuadField::QuadField(const PolyRing& R, Poly D) : R_(R), D_(std::move(D)) {
    if (R_.field().p() == 2) throw EvenCharacteristic("imaginary quadratic extensions need odd q");
    if (D_.deg() < 1) throw NotImaginary("the radicand must have degree >= 1");
    if (!R_.is_squarefree(D_)) throw NotSquarefree();
    bool imaginary = D_.deg() % 2 == 1 || !R_.field().is_square(D_.lead());
    if (!imaginary) throw NotImaginary("deg D even with square leading coefficient");
    g_ = (D_.deg() - 1) / 2;

    // brute force over GF(q) + GF(q) sqrt(D): a unit must have constant norm
    const GaloisField& F = R_.field();
    for (std::uint64_t a = 0; a < F.q(); ++a)
        for (std::uint64_t b = 0; b < F.q(); ++b) {
            if (a == 0 && b == 0) continue;
            QuadInt u{R_.constant((GfElem)a), R_.constant((GfElem)b)};
            Poly n = norm(u);
            if (!n.is_zero() && n.deg() == 0) units_.push_back(u);
        }
}

QuadInt QuadField::add(const QuadInt& a, const QuadInt& b) const {
    return {R_.add(a.x, b.x), R_.add(a.y, b.y)};
}
QuadInt QuadField::sub(const QuadInt& a, const QuadInt& b) const {
    return {R_.sub(a.x, b.x), R_.sub(a.y, b.y)};
}
QuadInt QuadField::neg(const QuadInt& a) const { return {R_.neg(a.x), R_.neg(a.y)}; }

QuadInt QuadField::mul(const QuadInt& a, const QuadInt& b) const {
    // (x1 + y1 s)(x2 + y2 s) = x1x2 + y1y2 D + (x1y2 + y1x2) s
    Poly x = R_.add(R_.mul(a.x, b.x), R_.mul(R_.mul(a.y, b.y), D_));
    Poly y = R_.add(R_.mul(a.x, b.y), R_.mul(a.y, b.x));
    return {std::move(x), std::move(y)};
}

QuadInt QuadField::mul_scalar(const QuadInt& a, GfElem c) const {
    return {R_.mul_scalar(a.x, c), R_.mul_scalar(a.y, c)};
}

Poly QuadField::norm(const QuadInt& a) const {
    return R_.sub(R_.mul(a.x, a.x), R_.mul(R_.mul(a.y, a.y), D_));
}

Poly QuadField::trace(const QuadInt& a) const { return R_.add(a.x, a.x); }

long long QuadField::norm_deg(const QuadInt& a) const {
    if (a.is_zero()) return -1;
    // imaginary: no cancellation, deg = max(2 deg x, 2 deg y + deg D)
    long long dx = a.x.is_zero() ? -1 : 2LL * a.x.deg();
    long long dy = a.y.is_zero() ? -1 : 2LL * a.y.deg() + D_.deg();
    return std::max(dx, dy);
}

HalfQPower QuadField::abs(const QuadInt& a) const {
    if (a.is_zero()) return HalfQPower::zero_value();
    return HalfQPower::of_half(norm_deg(a));
}

bool QuadField::lex_less(const QuadInt& a, const QuadInt& b) const {
    if (!(a.x == b.x)) return R_.lex_less(a.x, b.x);
    return R_.lex_less(a.y, b.y);
}

QuadInt QuadField::canonical_associate(const QuadInt& a) const {
    if (a.is_zero()) return a;
    QuadInt best = a;
    for (auto& u : units_) {
        QuadInt cand = mul(u, a);
        if (lex_less(cand, best)) best = cand;
    }
    return best;
}

std::string QuadField::format(const QuadInt& a) const {
    return "(" + R_.format(a.x) + ")+(" + R_.format(a.y) + ")*sqrtD";
}

QuadInt QuadField::parse(const std::string& s) const {
    auto mid = s.find(")+(");
    if (s.size() < 2 || s.front() != '(' || mid == std::string::npos)
        throw ParseError("bad QuadInt literal: " + s);
    auto tail = s.find(")*sqrtD", mid + 3);
    if (tail == std::string::npos) throw ParseError("bad QuadInt literal: " + s);
    Poly x = R_.parse(s.substr(1, mid - 1));
    Poly y = R_.parse(s.substr(mid + 3, tail - mid - 3));
    return {std::move(x), std::move(y)};
}

QuadLaurent QuadField::parse_quad_alpha(const std::string& spec) const {
    auto semi = spec.find(';');
    if (semi == std::string::npos)
        return {LaurentSeries::parse_alpha(R_, spec),
                LaurentSeries::rational(R_, R_.zero(), R_.one())};
    return {LaurentSeries::parse_alpha(R_, spec.substr(0, semi)),
            LaurentSeries::parse_alpha(R_, spec.substr(semi + 1))};
}

// --- ideals ------------------------------------------------------------------

QuadIdeal ideal_unit(const QuadField& K) {
    const PolyRing& R = K.ring();
    return QuadIdeal{false, R.one(), R.one(), R.zero()};
}

QuadIdeal ideal_from_gens(const QuadField& K, const std::vector<QuadInt>& gens) {
    const PolyRing& R = K.ring();
    // rows (u, v) for u + v sqrtD spanning the module: every generator g
    // contributes g and g * sqrtD
    std::vector<std::pair<Poly, Poly>> rows;
    for (auto& g : gens) {
        if (g.is_zero()) continue;
        rows.push_back({g.x, g.y});
        rows.push_back({R.mul(g.y, K.D()), g.x});  // g * sqrtD
    }
    if (rows.empty()) return QuadIdeal{};  // zero ideal sentinel

    // column reduction: collapse the sqrtD column to a single row (w, g)
    Poly w = R.zero(), g = R.zero();
    std::vector<Poly> pure;
    for (auto& [u, v] : rows) {
        if (v.is_zero()) {
            pure.push_back(u);
            continue;
        }
        if (g.is_zero()) {
            w = u;
            g = v;
            continue;
        }
        auto xg = R.xgcd(g, v);
        Poly w2 = R.add(R.mul(xg.u, w), R.mul(xg.v, u));
        pure.push_back(R.sub(w, R.mul(R.div(g, xg.g), w2)));
        pure.push_back(R.sub(u, R.mul(R.div(v, xg.g), w2)));
        w = std::move(w2);
        g = xg.g;
    }
    if (g.is_zero()) throw InternalCheckFailed("nonzero ideal without sqrtD component");
    // normalize g monic (xgcd already returns monic; first row may not be)
    if (g.lead() != 1) {
        GfElem inv = R.field().inv(g.lead());
        w = R.mul_scalar(w, inv);
        g = R.mul_scalar(g, inv);
    }

    Poly d1 = R.zero();
    for (auto& u : pure) d1 = R.gcd_monic(d1, u);
    if (d1.is_zero()) throw InternalCheckFailed("ideal with no pure polynomial elements");

    if (!R.mod(d1, g).is_zero() || !R.mod(w, g).is_zero())
        throw InternalCheckFailed("sqrtD content does not divide the pure part");
    Poly a = R.div(d1, g);
    Poly b = R.mod(R.div(w, g), a);
    // closure invariant a | b^2 - D
    Poly check = R.sub(R.mul(b, b), K.D());
    if (!R.mod(check, a).is_zero()) throw InternalCheckFailed("normal form violates a | b^2 - D");
    return QuadIdeal{false, g, a, b};
}

QuadIdeal ideal_principal(const QuadField& K, const QuadInt& g) {
    return ideal_from_gens(K, {g});
}

bool ideal_contains(const QuadField& K, const QuadIdeal& I, const QuadInt& g) {
    const PolyRing& R = K.ring();
    if (I.zero) return g.is_zero();
    if (g.is_zero()) return true;
    if (!R.mod(g.y, I.s).is_zero()) return false;
    Poly y1 = R.div(g.y, I.s);
    Poly rem = R.sub(g.x, R.mul(R.mul(I.s, I.b), y1));
    return R.mod(rem, R.mul(I.s, I.a)).is_zero();
}

QuadIdeal ideal_mul(const QuadField& K, const QuadIdeal& I, const QuadIdeal& J) {
    if (I.zero || J.zero) return QuadIdeal{};
    const PolyRing& R = K.ring();
    QuadInt i1{R.mul(I.s, I.a), R.zero()};
    QuadInt i2{R.mul(I.s, I.b), I.s};
    QuadInt j1{R.mul(J.s, J.a), R.zero()};
    QuadInt j2{R.mul(J.s, J.b), J.s};
    return ideal_from_gens(K, {K.mul(i1, j1), K.mul(i1, j2), K.mul(i2, j1), K.mul(i2, j2)});
}

QuadIdeal ideal_gcd(const QuadField& K, const QuadIdeal& I, const QuadIdeal& J) {
    if (I.zero) return J;
    if (J.zero) return I;
    const PolyRing& R = K.ring();
    QuadInt i1{R.mul(I.s, I.a), R.zero()};
    QuadInt i2{R.mul(I.s, I.b), I.s};
    QuadInt j1{R.mul(J.s, J.a), R.zero()};
    QuadInt j2{R.mul(J.s, J.b), J.s};
    return ideal_from_gens(K, {i1, i2, j1, j2});
}

QuadIdeal ideal_conj(const QuadField& K, const QuadIdeal& I) {
    if (I.zero) return I;
    const PolyRing& R = K.ring();
    return QuadIdeal{false, I.s, I.a, R.mod(R.neg(I.b), I.a)};
}

bool ideal_divides(const QuadField& K, const QuadIdeal& J, const QuadIdeal& I) {
    if (J.zero) return I.zero;
    if (I.zero) return true;
    const PolyRing& R = K.ring();
    QuadInt g1{R.mul(I.s, I.a), R.zero()};
    QuadInt g2{R.mul(I.s, I.b), I.s};
    return ideal_contains(K, J, g1) && ideal_contains(K, J, g2);
}

QuadIdeal ideal_divide(const QuadField& K, const QuadIdeal& I, const QuadIdeal& J) {
    const PolyRing& R = K.ring();
    if (J.zero) throw NotDivisible("division by the zero ideal");
    if (I.zero) return I;
    if (!ideal_divides(K, J, I)) throw NotDivisible();
    // I / J = I * conj(J) / (norm generator of J)
    QuadIdeal P = ideal_mul(K, I, ideal_conj(K, J));
    Poly nJ = R.mul(R.mul(J.s, J.s), J.a);  // monic generator of J conj(J)
    if (!R.mod(P.s, nJ).is_zero()) throw NotDivisible("norm generator does not divide");
    QuadIdeal Q{false, R.div(P.s, nJ), P.a, P.b};
    if (!(ideal_mul(K, Q, J) == I)) throw InternalCheckFailed("ideal division check failed");
    return Q;
}

int ideal_val(const QuadField& K, const QuadIdeal& I, const QuadIdeal& P) {
    int v = 0;
    QuadIdeal cur = I;
    while (ideal_divides(K, P, cur)) {
        cur = ideal_divide(K, cur, P);
        ++v;
        if (v > 64) throw InternalCheckFailed("runaway valuation");
    }
    return v;
}

// square root in the residue field A/(p), p monic irreducible, q odd
Poly sqrt_mod_irreducible(const PolyRing& R, const Poly& r, const Poly& p) {
    std::uint64_t Q = pow_u64(R.q(), p.deg());
    std::uint64_t Qm1 = Q - 1;
    Poly one = R.mod(R.one(), p);
    if (Qm1 % 4 == 2) {
        return R.pow_mod(r, (Q + 1) / 4, p);
    }
    // Tonelli-Shanks
    int s2 = 0;
    std::uint64_t t = Qm1;
    while (t % 2 == 0) {
        t /= 2;
        ++s2;
    }
    // least nonresidue in key order
    Poly z;
    for (std::uint64_t key = 1; key < Q; ++key) {
        Poly cand = R.poly_from_key(key, p.deg(), false);
        if (!(R.pow_mod(cand, Qm1 / 2, p) == one)) {
            z = cand;
            break;
        }
    }
    if (z.is_zero()) throw InternalCheckFailed("no quadratic nonresidue found");
    int M = s2;
    Poly c = R.pow_mod(z, t, p);
    Poly tt = R.pow_mod(r, t, p);
    Poly b = R.pow_mod(r, (t + 1) / 2, p);
    while (!(tt == one)) {
        int i = 0;
        Poly probe = tt;
        while (!(probe == one)) {
            probe = R.mulmod(probe, probe, p);
            ++i;
            if (i >= M) throw InternalCheckFailed("sqrt_mod called on a nonresidue");
        }
        Poly tmp = c;
        for (int k = 0; k < M - i - 1; ++k) tmp = R.mulmod(tmp, tmp, p);
        b = R.mulmod(b, tmp, p);
        c = R.mulmod(tmp, tmp, p);
        tt = R.mulmod(tt, c, p);
        M = i;
    }
    return b;
}

PrimeIdealFact ideal_factor(const QuadField& K, const Poly& p) {
    const PolyRing& R = K.ring();
    if (p.deg() < 1 || !R.is_irreducible(p)) throw NotIrreducible();
    Poly pm = R.monic(p);
    Poly r = R.mod(K.D(), pm);
    PrimeIdealFact out;
    if (r.is_zero()) {
        out.type = PrimeIdealFact::Type::Ramified;
        out.ramification = 2;
        out.residue_deg = 1;
        out.primes.push_back(QuadIdeal{false, R.one(), pm, R.zero()});
        return out;
    }
    std::uint64_t Q = pow_u64(R.q(), pm.deg());
    Poly one = R.mod(R.one(), pm);
    bool residue = R.pow_mod(r, (Q - 1) / 2, pm) == one;
    if (!residue) {
        out.type = PrimeIdealFact::Type::Inert;
        out.ramification = 1;
        out.residue_deg = 2;
        out.primes.push_back(QuadIdeal{false, pm, R.one(), R.zero()});
        return out;
    }
    out.type = PrimeIdealFact::Type::Split;
    out.ramification = 1;
    out.residue_deg = 1;
    Poly b0 = sqrt_mod_irreducible(R, r, pm);
    if (!(R.mod(R.sub(R.mul(b0, b0), K.D()), pm).is_zero()))
        throw InternalCheckFailed("square root mod p is wrong");
    Poly b1 = R.mod(R.neg(b0), pm);
    QuadIdeal P1{false, R.one(), pm, b0};
    QuadIdeal P2{false, R.one(), pm, b1};
    if (R.lex_less(b1, b0)) std::swap(P1, P2);
    out.primes.push_back(P1);
    out.primes.push_back(P2);
    return out;
}

std::pair<QuadInt, QuadInt> reduced_basis(const QuadField& K, const QuadIdeal& I) {
    const PolyRing& R = K.ring();
    if (I.zero) throw ZeroModulus("reduced basis of the zero ideal");
    QuadInt v1{R.mul(I.s, I.a), R.zero()};
    QuadInt v2{R.mul(I.s, I.b), I.s};

    auto nd = [&](const QuadInt& v) { return K.norm_deg(v); };
    // Gauss reduction under the ultrametric norm degree
    while (true) {
        if (nd(v2) < nd(v1)) std::swap(v1, v2);
        // t = nearest polynomial to Tr(v2 conj v1) / (2 Norm v1)
        Poly num = R.sub(R.mul(v2.x, v1.x), R.mul(R.mul(v2.y, v1.y), K.D()));
        Poly den = K.norm(v1);
        Poly t = R.div(num, den);
        if (t.is_zero()) break;
        QuadInt cand = K.sub(v2, QuadInt{R.mul(t, v1.x), R.mul(t, v1.y)});
        if (nd(cand) < nd(v2))
            v2 = cand;
        else
            break;
    }
    if (nd(v2) < nd(v1)) std::swap(v1, v2);
    return {v1, v2};
}

std::optional<QuadInt> is_principal(const QuadField& K, const QuadIdeal& I) {
    if (I.zero) return std::nullopt;
    auto [v1, v2] = reduced_basis(K, I);
    (void)v2;

    if (K.norm_deg(v1) != I.norm_exp()) return std::nullopt;
    QuadInt gen = K.canonical_associate(v1);
    if (!(ideal_principal(K, gen) == I))
        throw InternalCheckFailed("reduced generator does not regenerate the ideal");
    return gen;
}

void for_each_prime_ideal_of_norm(const QuadField& K, IrreducibleTables& tabs, int N,
                                  const std::function<void(const QuadIdeal&)>& fn) {
    long double size = std::pow((long double)K.ring().q(), (long double)N);
    if (size > 1.0e7L) throw RangeTooLarge("q^N > 1e7 in prime ideal enumeration");
    tabs.for_each(N, [&](const Poly& p) {
        PrimeIdealFact f = ideal_factor(K, p);
        if (f.type == PrimeIdealFact::Type::Inert) return;  // norm q^{2N}
        for (auto& P : f.primes) fn(P);
    });
    if (N % 2 == 0) {
        tabs.for_each(N / 2, [&](const Poly& p) {
            PrimeIdealFact f = ideal_factor(K, p);
            if (f.type == PrimeIdealFact::Type::Inert) fn(f.primes[0]);
        });
    }
}

std::vector<QuadIdeal> prime_ideals_of_norm(const QuadField& K, IrreducibleTables& tabs, int N) {
    std::vector<QuadIdeal> out;
    for_each_prime_ideal_of_norm(K, tabs, N, [&](const QuadIdeal& P) { out.push_back(P); });
    return out;
}

std::vector<PrimeElement> enumerate_prime_elements(const QuadField& K, IrreducibleTables& tabs,
                                                   int N) {
    std::vector<PrimeElement> out;
    for (auto& P : prime_ideals_of_norm(K, tabs, N)) {
        auto gen = is_principal(K, P);
        if (!gen) continue;
        out.push_back({*gen, P});
    }
    return out;
}

// --- metric ------------------------------------------------------------------

bool QuadNormResult::le(HalfQPower bound) const {
    if (is_exact()) return value <= bound;
    if (HalfQPower::of_half(below_he) <= bound) return true;
    throw InsufficientPrecision("quad norm certificate cannot decide comparison");
}

std::string QuadNormResult::str() const {
    if (is_exact()) return value.str();
    return "<=" + HalfQPower::of_half(below_he).str();
}

namespace {

QuadNormResult combine_components(const NormResult& nu, const NormResult& nv, int degD) {
    // contribution of the u-part is q^{k_u}; of the v-part q^{k_v + degD/2}
    auto half_u = [&](const NormResult& n) -> long long { return 2 * n.value.e; };
    auto half_v = [&](const NormResult& n) -> long long { return 2 * n.value.e + degD; };

    bool u_exact = nu.is_exact(), v_exact = nv.is_exact();
    bool u_zero = u_exact && nu.value.is_zero(), v_zero = v_exact && nv.value.is_zero();

    if (u_exact && v_exact) {
        if (u_zero && v_zero) return {QuadNormResult::Kind::Exact, HalfQPower::zero_value(), 0};
        long long he;
        if (u_zero) he = half_v(nv);
        else if (v_zero) he = half_u(nu);
        else he = std::max(half_u(nu), half_v(nv));
        return {QuadNormResult::Kind::Exact, HalfQPower::of_half(he), 0};
    }
    long long ub = u_exact ? (u_zero ? LLONG_MIN : half_u(nu)) : 2 * nu.below_e;
    long long vb = v_exact ? (v_zero ? LLONG_MIN : half_v(nv)) : 2 * nv.below_e + degD;
    // an exact component dominating every possible value of the other gives
    // an exact result
    if (u_exact && !u_zero && (!v_exact && half_u(nu) > vb))
        return {QuadNormResult::Kind::Exact, HalfQPower::of_half(half_u(nu)), 0};
    if (v_exact && !v_zero && (!u_exact && half_v(nv) > ub))
        return {QuadNormResult::Kind::Exact, HalfQPower::of_half(half_v(nv)), 0};
    long long bound = std::max(ub, vb);
    if (bound == LLONG_MIN) return {QuadNormResult::Kind::Exact, HalfQPower::zero_value(), 0};
    return {QuadNormResult::Kind::Below, HalfQPower::zero_value(), bound};
}

}  // namespace

QuadNormResult kinf_norm_dist(const QuadField& K, const QuadLaurent& x, long long floor_exp) {
    NormResult nu = norm_dist(x.u, floor_exp);
    NormResult nv = norm_dist(x.v, floor_exp);
    return combine_components(nu, nv, K.D().deg());
}

namespace {

// fractional norm of one component of f * x: fx*xu + fyD*xv (u component) or
// fx*xv + fy*xu (v component)
NormResult component_norm(const GaloisField& F, const LaurentSeries& s1, const Poly& p1,
                          const LaurentSeries& s2, const Poly& p2, long long floor_exp) {
    const auto* r1 = s1.rational_parts();
    const auto* r2 = s2.rational_parts();
    if (r1 && r2) {
        // p1 a1/f1 + p2 a2/f2 handled exactly over the common denominator
        PolyRing R(F);
        Poly den = R.mul(r1->second, r2->second);
        Poly num = R.add(R.mul(R.mul(p1, r1->first), r2->second),
                         R.mul(R.mul(p2, r2->first), r1->second));
        Poly rem = R.mod(num, den);
        if (rem.is_zero()) return NormResult::exact(QPower::zero_value());
        return NormResult::exact(QPower::of(rem.deg() - den.deg()));
    }
    for (long long k = -1; k >= floor_exp; --k) {
        GfElem acc = 0;
        for (int i = 0; i <= p1.deg(); ++i)
            if (p1.c.size() && p1.c[(std::size_t)i])
                acc = F.add(acc, F.mul(p1.c[(std::size_t)i], s1.coeff(k - i)));
        for (int i = 0; i <= p2.deg(); ++i)
            if (p2.c.size() && p2.c[(std::size_t)i])
                acc = F.add(acc, F.mul(p2.c[(std::size_t)i], s2.coeff(k - i)));
        if (acc != 0) return NormResult::exact(QPower::of(k));
    }
    return NormResult::below(floor_exp - 1);
}

}  // namespace

QuadNormResult kinf_norm_dist_scaled(const QuadField& K, const QuadLaurent& x, const QuadInt& f,
                                     long long floor_exp) {
    const PolyRing& R = K.ring();
    const GaloisField& F = K.field();
    Poly fyD = R.mul(f.y, K.D());
    NormResult nu = component_norm(F, x.u, f.x, x.v, fyD, floor_exp);
    NormResult nv = component_norm(F, x.v, f.x, x.u, f.y, floor_exp);
    return combine_components(nu, nv, K.D().deg());
}

QuadInt poly_part_scaled(const QuadField& K, const QuadLaurent& x, const QuadInt& f) {
    const PolyRing& R = K.ring();
    const GaloisField& F = K.field();
    Poly fyD = R.mul(f.y, K.D());
    auto comp = [&](const LaurentSeries& s1, const Poly& p1, const LaurentSeries& s2,
                    const Poly& p2) -> Poly {
        long long top = std::max(s1.top() + std::max(p1.deg(), 0),
                                 s2.top() + std::max(p2.deg(), 0));
        if (top < 0) return R.zero();
        std::vector<GfElem> c((std::size_t)top + 1, 0);
        for (long long k = 0; k <= top; ++k) {
            GfElem acc = 0;
            for (int i = 0; i <= p1.deg(); ++i)
                if (!p1.c.empty() && p1.c[(std::size_t)i])
                    acc = F.add(acc, F.mul(p1.c[(std::size_t)i], s1.coeff(k - i)));
            for (int i = 0; i <= p2.deg(); ++i)
                if (!p2.c.empty() && p2.c[(std::size_t)i])
                    acc = F.add(acc, F.mul(p2.c[(std::size_t)i], s2.coeff(k - i)));
            c[(std::size_t)k] = acc;
        }
        return R.from_coeffs(std::move(c));
    };
    Poly u = comp(x.u, f.x, x.v, fyD);
    Poly v = comp(x.v, f.x, x.u, f.y);
    return {std::move(u), std::move(v)};
}

DirichletSearch dirichlet_search_K(const QuadField& K, const QuadLaurent& x, HalfQPower bound,
                                   long long floor_exp) {
    const PolyRing& R = K.ring();
    if (bound.is_zero()) throw SearchTooLarge("empty search bound");
    const long long he = bound.he;
    const int degD = K.D().deg();

    // collect candidates f = (fx, fy) with max(2 deg fx, 2 deg fy + degD) <= he
    const long long dx_max = he / 2;
    const long long dy_max = (he - degD) / 2;  // may be negative: fy = 0 only
    long double count = std::pow((long double)R.q(), (long double)(dx_max + 1)) *
                        std::pow((long double)R.q(), (long double)(std::max(dy_max + 1, 0LL)));
    if (count > 1.0e7L) throw SearchTooLarge("more than 1e7 candidates f with |f| <= Q");

    struct Cand {
        long long he;
        std::uint64_t kx, ky;
        QuadInt f;
    };
    std::vector<Cand> cands;
    std::vector<Poly> xs, ys;
    xs.push_back(R.zero());
    if (dx_max >= 0) R.for_each_nonzero_deg_le((int)dx_max, [&](const Poly& p) { xs.push_back(p); });
    ys.push_back(R.zero());
    if (dy_max >= 0) R.for_each_nonzero_deg_le((int)dy_max, [&](const Poly& p) { ys.push_back(p); });
    for (auto& fx : xs)
        for (auto& fy : ys) {
            QuadInt f{fx, fy};
            if (f.is_zero()) continue;
            long long h = K.norm_deg(f);
            if (h > he) continue;
            cands.push_back({h, R.key(fx), R.key(fy), f});
        }
    std::stable_sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
        if (a.he != b.he) return a.he < b.he;
        if (a.kx != b.kx) return a.kx < b.kx;
        return a.ky < b.ky;
    });

    DirichletSearch out;
    out.c_min = HalfQPower::zero_value();
    out.c_max = HalfQPower::zero_value();
    bool have_best = false;
    HalfQPower best;
    for (auto& cand : cands) {
        ++out.searched;
        QuadNormResult quality = kinf_norm_dist_scaled(K, x, cand.f, floor_exp);
        HalfQPower qval = quality.is_exact() ? quality.value : HalfQPower::of_half(quality.below_he);
        if (have_best && !(qval < best)) continue;
        best = qval;
        have_best = true;
        FrontierEntry e;
        e.f = cand.f;
        e.a = poly_part_scaled(K, x, cand.f);
        e.abs_f = K.abs(cand.f);
        e.quality = quality;
        e.local_c = qval * e.abs_f;
        QuadIdeal fI = ideal_principal(K, cand.f);
        QuadIdeal aI = e.a.is_zero() ? QuadIdeal{} : ideal_principal(K, e.a);
        e.gcd_af = ideal_gcd(K, aI, fI);
        e.effective_modulus = ideal_divide(K, fI, e.gcd_af);
        out.frontier.push_back(std::move(e));
        if (quality.is_zero()) {
            out.exact_hit = true;
            break;
        }
    }
    // c statistics over the frontier
    bool first = true;
    for (auto& e : out.frontier) {
        if (first) {
            out.c_min = e.local_c;
            out.c_max = e.local_c;
            first = false;
        } else {
            if (e.local_c < out.c_min) out.c_min = e.local_c;
            if (out.c_max < e.local_c) out.c_max = e.local_c;
        }
    }
    return out;
}

}  // namespace lsieve
