#include "lsieve/poly.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace lsieve {

namespace {
void trim(std::vector<GfElem>& c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
}
std::uint64_t fnv_seed(const Poly& f) {
    std::uint64_t s = 1469598103934665603ull;
    for (GfElem c : f.c) s = (s ^ c) * 1099511628211ull;
    return s ? s : 0x9E3779B97F4A7C15ull;
}
std::uint64_t xorshift(std::uint64_t& s) {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return s;
}
}  // namespace

Poly PolyRing::from_coeffs(std::vector<GfElem> c) const {
    trim(c);
    return Poly{std::move(c)};
}

Poly PolyRing::add(const Poly& a, const Poly& b) const {
    std::vector<GfElem> out(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = F_.add(a.coeff((int)i), b.coeff((int)i));
    trim(out);
    return Poly{std::move(out)};
}

Poly PolyRing::neg(const Poly& a) const {
    std::vector<GfElem> out(a.c.size());
    for (std::size_t i = 0; i < a.c.size(); ++i) out[i] = F_.neg(a.c[i]);
    return Poly{std::move(out)};
}

Poly PolyRing::sub(const Poly& a, const Poly& b) const { return add(a, neg(b)); }

Poly PolyRing::mul(const Poly& a, const Poly& b) const {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<GfElem> out(a.c.size() + b.c.size() - 1, 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        GfElem ai = a.c[i];
        if (!ai) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j) {
            if (!b.c[j]) continue;
            out[i + j] = F_.add(out[i + j], F_.mul(ai, b.c[j]));
        }
    }
    return Poly{std::move(out)};
}

Poly PolyRing::mul_scalar(const Poly& a, GfElem s) const {
    if (!s) return {};
    std::vector<GfElem> out(a.c.size());
    for (std::size_t i = 0; i < a.c.size(); ++i) out[i] = F_.mul(a.c[i], s);
    return Poly{std::move(out)};
}

Poly PolyRing::shift(const Poly& a, int k) const {
    if (a.is_zero()) return {};
    std::vector<GfElem> out((std::size_t)(a.c.size() + k), 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) out[i + k] = a.c[i];
    return Poly{std::move(out)};
}

std::pair<Poly, Poly> PolyRing::divmod(const Poly& a, const Poly& b) const {
    if (b.is_zero()) throw DivideByZero("polynomial division by zero");
    if (a.deg() < b.deg()) return {Poly{}, a};
    GfElem lead_inv = F_.inv(b.lead());
    std::vector<GfElem> rem = a.c;
    std::vector<GfElem> quo((std::size_t)(a.deg() - b.deg() + 1), 0);
    for (int k = a.deg(); k >= b.deg(); --k) {
        GfElem top = rem[(std::size_t)k];
        if (!top) continue;
        GfElem c = F_.mul(top, lead_inv);
        quo[(std::size_t)(k - b.deg())] = c;
        for (int i = 0; i <= b.deg(); ++i) {
            std::size_t pos = (std::size_t)(k - b.deg() + i);
            rem[pos] = F_.sub(rem[pos], F_.mul(c, b.c[(std::size_t)i]));
        }
    }
    trim(rem);
    trim(quo);
    return {Poly{std::move(quo)}, Poly{std::move(rem)}};
}

Poly PolyRing::monic(const Poly& a) const {
    if (a.is_zero()) return {};
    if (a.lead() == 1) return a;
    return mul_scalar(a, F_.inv(a.lead()));
}

Poly PolyRing::gcd_monic(Poly a, Poly b) const {
    while (!b.is_zero()) {
        Poly r = mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

PolyRing::Xgcd PolyRing::xgcd(const Poly& a, const Poly& b) const {
    Poly r0 = a, r1 = b;
    Poly u0 = one(), u1 = zero(), v0 = zero(), v1 = one();
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        Poly u2 = sub(u0, mul(q, u1));
        Poly v2 = sub(v0, mul(q, v1));
        r0 = std::move(r1); r1 = std::move(r);
        u0 = std::move(u1); u1 = std::move(u2);
        v0 = std::move(v1); v1 = std::move(v2);
    }
    if (r0.is_zero()) return {r0, u0, v0};
    GfElem s = F_.inv(r0.lead());
    return {mul_scalar(r0, s), mul_scalar(u0, s), mul_scalar(v0, s)};
}

bool PolyRing::coprime(const Poly& a, const Poly& b) const {
    Poly g = gcd_monic(a, b);
    return g.deg() == 0;
}

GfElem PolyRing::eval(const Poly& f, GfElem x) const {
    GfElem acc = 0;
    for (std::size_t i = f.c.size(); i-- > 0;) acc = F_.add(F_.mul(acc, x), f.c[i]);
    return acc;
}

Poly PolyRing::derivative(const Poly& f) const {
    if (f.deg() < 1) return {};
    std::vector<GfElem> out((std::size_t)f.deg(), 0);
    for (int i = 1; i <= f.deg(); ++i) {
        // the integer i acts through its image in the prime subfield
        GfElem si = F_.from_int((std::uint64_t)i % F_.p());
        out[(std::size_t)(i - 1)] = F_.mul(f.c[(std::size_t)i], si);
    }
    trim(out);
    return Poly{std::move(out)};
}

Poly PolyRing::mulmod(const Poly& a, const Poly& b, const Poly& m) const {
    return mod(mul(a, b), m);
}

Poly PolyRing::pow_mod(const Poly& base, unsigned __int128 e, const Poly& m) const {
    Poly r = mod(one(), m);
    Poly b = mod(base, m);
    while (e) {
        if (e & 1) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

bool PolyRing::is_irreducible(const Poly& f) const {
    if (f.deg() < 1) throw ConstantInput("irreducibility needs deg >= 1");
    int n = f.deg();
    if (n == 1) return true;
    Poly fm = monic(f);
    const Poly x = T();
    // distinct prime divisors of n
    std::vector<int> rs;
    int m = n;
    for (int d = 2; d * d <= m; ++d)
        if (m % d == 0) {
            rs.push_back(d);
            while (m % d == 0) m /= d;
        }
    if (m > 1) rs.push_back(m);

    std::vector<Poly> frob((std::size_t)n + 1);
    frob[0] = mod(x, fm);
    for (int k = 1; k <= n; ++k) frob[(std::size_t)k] = pow_mod(frob[(std::size_t)k - 1], q(), fm);
    if (!sub(frob[(std::size_t)n], mod(x, fm)).is_zero()) return false;
    for (int r : rs) {
        Poly g = gcd_monic(sub(frob[(std::size_t)(n / r)], x), fm);
        if (g.deg() != 0) return false;
    }
    return true;
}

bool PolyRing::is_squarefree(const Poly& f) const {
    if (f.is_zero()) throw ZeroInput("squarefree test on zero");
    if (f.deg() == 0) return true;
    Poly d = derivative(f);
    if (d.is_zero()) return false;  // p-th power times unit
    return gcd_monic(f, d).deg() == 0;
}

void PolyRing::edf(const Poly& f, int d, std::vector<Poly>& out, std::uint64_t& rng) const {
    if (f.deg() == d) {
        out.push_back(monic(f));
        return;
    }
    const std::uint64_t qq = q();
    while (true) {
        // deterministic pseudo-random polynomial of degree < deg f
        std::vector<GfElem> rc((std::size_t)f.deg(), 0);
        for (auto& c : rc) c = (GfElem)(xorshift(rng) % qq);
        Poly r = from_coeffs(std::move(rc));
        if (r.is_zero()) continue;
        Poly t;
        if (F_.p() == 2) {
            // trace map over F_2
            Poly acc = mod(r, f), sum = acc;
            int steps = (int)(F_.n() * (unsigned)d) - 1;
            for (int i = 0; i < steps; ++i) {
                acc = mulmod(acc, acc, f);
                sum = add(sum, acc);
            }
            t = gcd_monic(sum, f);
        } else {
            if ((long double)d * std::log2l((long double)qq) > 120)
                throw RangeTooLarge("equal-degree split exponent too large");
            unsigned __int128 e = 1;
            for (int i = 0; i < d; ++i) e *= qq;
            e = (e - 1) / 2;
            Poly s = pow_mod(r, e, f);
            t = gcd_monic(sub(s, one()), f);
        }
        if (t.deg() > 0 && t.deg() < f.deg()) {
            edf(t, d, out, rng);
            edf(div(f, t), d, out, rng);
            return;
        }
    }
}

std::vector<PolyFactor> PolyRing::factor_squarefree(const Poly& w) const {
    std::vector<Poly> primes;
    std::uint64_t rng = fnv_seed(w);
    Poly v = monic(w);
    Poly h = mod(T(), v);
    int d = 0;
    while (v.deg() > 0 && 2 * (d + 1) <= v.deg()) {
        ++d;
        h = pow_mod(h, q(), v);
        Poly g = gcd_monic(sub(h, T()), v);
        if (g.deg() > 0) {
            edf(g, d, primes, rng);
            v = div(v, g);
            h = mod(h, v.deg() > 0 ? v : one());
        }
    }
    if (v.deg() > 0) primes.push_back(v);
    std::vector<PolyFactor> out;
    out.reserve(primes.size());
    for (auto& p : primes) out.push_back({std::move(p), 1});
    return out;
}

std::vector<PolyFactor> PolyRing::factor(const Poly& f) const {
    if (f.is_zero()) throw ZeroInput("factorization of zero");
    Poly work = monic(f);
    std::vector<PolyFactor> out;
    if (work.deg() == 0) return out;

    Poly fp = derivative(work);
    if (fp.is_zero()) {
        // work = r^p with r from p-th roots of the coefficients
        std::uint64_t p = F_.p();
        std::uint64_t root_exp = 1;
        for (unsigned i = 0; i + 1 < F_.n(); ++i) root_exp *= p;  // p^(n-1)
        std::vector<GfElem> rc((std::size_t)(work.deg() / (int)p) + 1, 0);
        for (std::size_t i = 0; i < rc.size(); ++i)
            rc[i] = F_.pow(work.c[i * (std::size_t)p], root_exp);
        out = factor(from_coeffs(std::move(rc)));
        for (auto& pf : out) pf.e *= (int)p;
    } else {
        Poly g = gcd_monic(work, fp);
        if (g.deg() == 0) {
            out = factor_squarefree(work);
        } else {
            Poly w = div(work, g);  // squarefree part over primes with e not divisible by p
            std::vector<PolyFactor> sq = factor_squarefree(w);
            Poly rem = work;
            for (auto& pf : sq) {
                int e = 0;
                while (true) {
                    auto [qt, r] = divmod(rem, pf.p);
                    if (!r.is_zero()) break;
                    rem = qt;
                    ++e;
                }
                out.push_back({pf.p, e});
            }
            if (rem.deg() > 0) {
                for (auto& pf : factor(rem)) out.push_back(pf);
            }
        }
    }
    std::sort(out.begin(), out.end(), [this](const PolyFactor& a, const PolyFactor& b) {
        return lex_less(a.p, b.p);
    });
    return out;
}

int PolyRing::mu(const Poly& f) const {
    if (f.is_zero()) throw ZeroInput("mu(0)");
    auto fs = factor(f);
    for (auto& pf : fs)
        if (pf.e >= 2) return 0;
    return fs.size() % 2 == 0 ? 1 : -1;
}

std::uint64_t PolyRing::phi(const Poly& f) const {
    if (f.is_zero()) throw ZeroInput("phi(0)");
    auto fs = factor(f);
    std::uint64_t out = 1;
    for (auto& pf : fs) {
        std::uint64_t qd = 1;
        for (int i = 0; i < pf.p.deg(); ++i) qd *= q();
        std::uint64_t term = qd - 1;
        for (int e = 1; e < pf.e; ++e) term *= qd;
        out *= term;
    }
    return out;
}

int PolyRing::omega(const Poly& f) const {
    if (f.is_zero()) throw ZeroInput("omega(0)");
    return (int)factor(f).size();
}

void PolyRing::for_each_monic_divisor(const Poly& f,
                                      const std::function<void(const Poly&)>& fn) const {
    if (f.is_zero()) throw ZeroInput("divisors of zero");
    auto fs = factor(f);
    // exponent sweep, first factor outermost
    std::function<void(std::size_t, const Poly&)> rec = [&](std::size_t idx, const Poly& acc) {
        if (idx == fs.size()) {
            fn(acc);
            return;
        }
        Poly cur = acc;
        rec(idx + 1, cur);
        for (int e = 1; e <= fs[idx].e; ++e) {
            cur = mul(cur, fs[idx].p);
            rec(idx + 1, cur);
        }
    };
    rec(0, one());
}

std::vector<Poly> PolyRing::monic_divisors(const Poly& f) const {
    std::vector<Poly> out;
    for_each_monic_divisor(f, [&](const Poly& d) { out.push_back(d); });
    return out;
}

bool PolyRing::lex_less(const Poly& a, const Poly& b) const {
    if (a.deg() != b.deg()) return a.deg() < b.deg();
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] != b.c[i]) return a.c[i] < b.c[i];
    }
    return false;
}

std::uint64_t PolyRing::key(const Poly& f) const {
    std::uint64_t k = 0, mult = 1;
    for (std::size_t i = 0; i < f.c.size(); ++i) {
        if (i > 0) {
            if (mult > UINT64_MAX / q()) throw RangeTooLarge("polynomial key overflow");
            mult *= q();
        }
        k += f.c[i] * mult;
    }
    return k;
}

std::uint64_t PolyRing::key_low(const Poly& f, int digits) const {
    std::uint64_t k = 0, mult = 1;
    for (int i = 0; i < digits; ++i) {
        k += f.coeff(i) * mult;
        if (i + 1 < digits) mult *= q();
    }
    return k;
}

Poly PolyRing::poly_from_key(std::uint64_t key, int digits, bool monic_top) const {
    std::vector<GfElem> c((std::size_t)digits + (monic_top ? 1 : 0), 0);
    for (int i = 0; i < digits; ++i) {
        c[(std::size_t)i] = (GfElem)(key % q());
        key /= q();
    }
    if (monic_top) c[(std::size_t)digits] = 1;
    trim(c);
    return Poly{std::move(c)};
}

void PolyRing::for_each_monic_of_degree(int d, const std::function<void(const Poly&)>& fn) const {
    if (d < 0) return;
    Poly buf;
    buf.c.assign((std::size_t)d + 1, 0);
    buf.c[(std::size_t)d] = 1;
    if (d == 0) {
        fn(buf);
        return;
    }
    const GfElem top = (GfElem)(q() - 1);
    while (true) {
        fn(buf);
        int i = d - 1;  // last free coefficient varies fastest
        while (i >= 0 && buf.c[(std::size_t)i] == top) buf.c[(std::size_t)i--] = 0;
        if (i < 0) return;
        ++buf.c[(std::size_t)i];
    }
}

void PolyRing::for_each_poly_of_degree(int d, const std::function<void(const Poly&)>& fn) const {
    if (d < 0) return;
    Poly buf;
    buf.c.assign((std::size_t)d + 1, 0);
    buf.c[(std::size_t)d] = 1;
    const GfElem top = (GfElem)(q() - 1);
    while (true) {
        fn(buf);
        if (buf.c[(std::size_t)d] < top) {
            ++buf.c[(std::size_t)d];  // leading coefficient varies fastest
            continue;
        }
        buf.c[(std::size_t)d] = 1;
        int i = d - 1;
        while (i >= 0 && buf.c[(std::size_t)i] == top) buf.c[(std::size_t)i--] = 0;
        if (i < 0) return;
        ++buf.c[(std::size_t)i];
    }
}

void PolyRing::for_each_nonzero_deg_le(int L, const std::function<void(const Poly&)>& fn) const {
    for (int d = 0; d <= L; ++d) for_each_poly_of_degree(d, fn);
}

std::uint64_t PolyRing::count_monic_irreducibles(int N) const {
    if (N < 1) throw DegreeZero();
    auto int_mu = [](int n) {
        int m = 1;
        for (int d = 2; d * d <= n; ++d) {
            if (n % d == 0) {
                n /= d;
                if (n % d == 0) return 0;
                m = -m;
            }
        }
        if (n > 1) m = -m;
        return m;
    };
    long long total = 0;
    for (int d = 1; d <= N; ++d) {
        if (N % d) continue;
        int m = int_mu(d);
        if (!m) continue;
        std::uint64_t qp = 1;
        for (int i = 0; i < N / d; ++i) qp *= q();
        total += m * (long long)qp;
    }
    return (std::uint64_t)(total / N);
}

Poly PolyRing::parse(const std::string& s) const {
    std::string t;
    for (char ch : s)
        if (!std::isspace((unsigned char)ch)) t += ch;
    if (t.empty()) throw ParseError("empty polynomial literal");

    if (t.front() == '[') {
        if (t.back() != ']') throw ParseError("bad list literal: " + s);
        std::vector<GfElem> c;
        std::string body = t.substr(1, t.size() - 2);
        if (!body.empty()) {
            std::size_t pos = 0;
            while (pos <= body.size()) {
                std::size_t comma = body.find(',', pos);
                std::string tok =
                    body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
                if (tok.empty()) throw ParseError("bad list literal: " + s);
                bool neg = tok[0] == '-';
                std::size_t off = (tok[0] == '-' || tok[0] == '+') ? 1 : 0;
                char* end = nullptr;
                std::uint64_t v = std::strtoull(tok.c_str() + off, &end, 10);
                if (!end || *end) throw ParseError("bad coefficient: " + tok);
                GfElem e = F_.from_int(v);
                c.push_back(neg ? F_.neg(e) : e);
                if (comma == std::string::npos) break;
                pos = comma + 1;
            }
        }
        return from_coeffs(std::move(c));
    }

    // human form: terms joined by + / -
    std::vector<GfElem> c;
    auto set_term = [&](std::uint64_t coef, bool neg, int exp) {
        if ((std::size_t)exp + 1 > c.size()) c.resize((std::size_t)exp + 1, 0);
        GfElem e = F_.from_int(coef);
        if (neg) e = F_.neg(e);
        c[(std::size_t)exp] = F_.add(c[(std::size_t)exp], e);
    };
    std::size_t i = 0;
    bool neg = false;
    if (t[0] == '+' || t[0] == '-') {
        neg = t[0] == '-';
        i = 1;
    }
    while (i < t.size()) {
        std::uint64_t coef = 1;
        bool have_coef = false;
        if (std::isdigit((unsigned char)t[i])) {
            coef = 0;
            while (i < t.size() && std::isdigit((unsigned char)t[i]))
                coef = coef * 10 + (std::uint64_t)(t[i++] - '0');
            have_coef = true;
        }
        if (i < t.size() && t[i] == '*') ++i;
        int exp = 0;
        if (i < t.size() && (t[i] == 'T' || t[i] == 't')) {
            ++i;
            exp = 1;
            if (i < t.size() && t[i] == '^') {
                ++i;
                if (i >= t.size() || !std::isdigit((unsigned char)t[i]))
                    throw ParseError("bad exponent in: " + s);
                exp = 0;
                while (i < t.size() && std::isdigit((unsigned char)t[i]))
                    exp = exp * 10 + (t[i++] - '0');
            }
        } else if (!have_coef) {
            throw ParseError("bad term in: " + s);
        }
        set_term(coef, neg, exp);
        if (i == t.size()) break;
        if (t[i] == '+') neg = false;
        else if (t[i] == '-') neg = true;
        else throw ParseError("bad separator in: " + s);
        ++i;
        if (i == t.size()) throw ParseError("trailing sign in: " + s);
    }
    trim(c);
    return Poly{std::move(c)};
}

std::string PolyRing::format(const Poly& f) const {
    if (f.is_zero()) return "0";
    std::string out;
    for (int i = f.deg(); i >= 0; --i) {
        GfElem ci = f.coeff(i);
        if (!ci) continue;
        if (!out.empty()) out += "+";
        if (i == 0) {
            out += std::to_string(ci);
        } else {
            if (ci != 1) out += std::to_string(ci) + "*";
            out += "T";
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

// --- IrreducibleTables -------------------------------------------------------

const std::vector<bool>& IrreducibleTables::sieve(int N) {
    auto it = sieves_.find(N);
    if (it != sieves_.end()) return it->second;
    if (N < 1) throw DegreeZero();
    long double size = std::pow((long double)R_.q(), (long double)N);
    if (size > 2.0e8L) throw RangeTooLarge("q^N too large for the irreducible sieve");
    std::uint64_t qn = 1;
    for (int i = 0; i < N; ++i) qn *= R_.q();
    std::vector<bool> comp(qn, false);
    for (int d = 1; 2 * d <= N; ++d) {
        for_each(d, [&](const Poly& pi) {
            R_.for_each_monic_of_degree(N - d, [&](const Poly& g) {
                Poly prod = R_.mul(pi, g);
                comp[R_.key_low(prod, N)] = true;
            });
        });
    }
    return sieves_.emplace(N, std::move(comp)).first->second;
}

const std::vector<std::uint64_t>& IrreducibleTables::prime_keys(int N) {
    auto it = keys_.find(N);
    if (it != keys_.end()) return it->second;
    const std::vector<bool>& comp = sieve(N);
    std::vector<std::uint64_t> keys;
    keys.reserve((std::size_t)(comp.size() / (std::size_t)std::max(1, N)));
    R_.for_each_monic_of_degree(N, [&](const Poly& f) {
        std::uint64_t k = R_.key_low(f, N);
        if (!comp[k]) keys.push_back(k);
    });
    return keys_.emplace(N, std::move(keys)).first->second;
}

const std::vector<GfElem>& IrreducibleTables::prime_coeffs(int N) {
    auto it = coeffs_.find(N);
    if (it != coeffs_.end()) return it->second;
    const auto& keys = prime_keys(N);
    std::vector<GfElem> flat;
    flat.reserve(keys.size() * (std::size_t)(N + 1));
    const std::uint64_t q = R_.q();
    for (std::uint64_t k : keys) {
        for (int i = 0; i < N; ++i) {
            flat.push_back((GfElem)(k % q));
            k /= q;
        }
        flat.push_back(1);
    }
    return coeffs_.emplace(N, std::move(flat)).first->second;
}

void IrreducibleTables::for_each(int N, const std::function<void(const Poly&)>& fn) {
    for (std::uint64_t k : prime_keys(N)) fn(R_.poly_from_key(k, N, true));
}

bool IrreducibleTables::contains(int N, const Poly& f) {
    if (f.deg() != N || f.lead() != 1) return false;
    return !sieve(N)[R_.key_low(f, N)];
}

std::uint64_t IrreducibleTables::count(int N) { return prime_keys(N).size(); }

}  // namespace lsieve
