#include "lsieve/gf.hpp"

#include <algorithm>
#include <cstdlib>

namespace lsieve {

bool is_prime_u64(std::uint64_t v) {
    if (v < 2) return false;
    for (std::uint64_t d = 2; d * d <= v; ++d)
        if (v % d == 0) return false;
    return true;
}

namespace {

// --- minimal GF(p)[x] helpers for the canonical modulus search -------------
// Polynomials over the prime field as little-endian digit vectors, trimmed.

using Zx = std::vector<std::uint32_t>;

void trim(Zx& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

Zx zx_mul(const Zx& a, const Zx& b, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    Zx out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] = (std::uint32_t)(((std::uint64_t)out[i + j] + (std::uint64_t)a[i] * b[j]) % p);
    }
    trim(out);
    return out;
}

std::uint64_t zp_inv(std::uint64_t a, std::uint64_t p) {
    // Fermat; p prime
    std::uint64_t r = 1, base = a % p, e = p - 2;
    while (e) {
        if (e & 1) r = r * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return r;
}

Zx zx_mod(Zx a, const Zx& m, std::uint64_t p) {
    std::uint64_t lead_inv = zp_inv(m.back(), p);
    while (a.size() >= m.size()) {
        std::uint64_t c = (std::uint64_t)a.back() * lead_inv % p;
        std::size_t shift = a.size() - m.size();
        if (c) {
            for (std::size_t i = 0; i < m.size(); ++i) {
                std::uint64_t sub = c * m[i] % p;
                std::uint64_t cur = a[shift + i];
                a[shift + i] = (std::uint32_t)((cur + p - sub) % p);
            }
        }
        a.pop_back();
        trim(a);
        if (a.size() < m.size()) break;
    }
    trim(a);
    return a;
}

Zx zx_mulmod(const Zx& a, const Zx& b, const Zx& m, std::uint64_t p) {
    return zx_mod(zx_mul(a, b, p), m, p);
}

// h^p mod m
Zx zx_pow_p(const Zx& h, const Zx& m, std::uint64_t p) {
    Zx r = {1}, base = h;
    std::uint64_t e = p;
    while (e) {
        if (e & 1) r = zx_mulmod(r, base, m, p);
        base = zx_mulmod(base, base, m, p);
        e >>= 1;
    }
    return r;
}

Zx zx_gcd(Zx a, Zx b, std::uint64_t p) {
    while (!b.empty()) {
        Zx r = zx_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

Zx zx_sub(Zx a, const Zx& b, std::uint64_t p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i)
        a[i] = (std::uint32_t)(((std::uint64_t)a[i] + p - b[i]) % p);
    trim(a);
    return a;
}

// Rabin irreducibility over GF(p) for monic f of degree n >= 1.
bool zx_irreducible(const Zx& f, std::uint64_t p) {
    std::size_t n = f.size() - 1;
    if (n == 0) return false;
    if (n == 1) return true;
    const Zx x = {0, 1};
    // distinct prime divisors of n
    std::vector<std::size_t> rs;
    std::size_t m = n;
    for (std::size_t d = 2; d * d <= m; ++d)
        if (m % d == 0) {
            rs.push_back(d);
            while (m % d == 0) m /= d;
        }
    if (m > 1) rs.push_back(m);

    // frob[k] = x^(p^k) mod f, computed by iterating h -> h^p
    Zx h = x;
    std::vector<Zx> frob(n + 1);
    frob[0] = x;
    for (std::size_t k = 1; k <= n; ++k) {
        h = zx_pow_p(h, f, p);
        frob[k] = h;
    }
    if (zx_sub(frob[n], x, p) != Zx{}) return false;
    for (std::size_t r : rs) {
        Zx g = zx_gcd(f, zx_sub(frob[n / r], x, p), p);
        if (g.size() != 1) return false;
    }
    return true;
}

// Lexicographically smallest (coefficients compared low-to-high) monic
// irreducible of degree n over GF(p).
Zx canonical_modulus(std::uint64_t p, unsigned n) {
    Zx f(n + 1, 0);
    f[n] = 1;
    // odometer: digit 0 is the most significant comparison position
    std::vector<std::uint32_t> digits(n, 0);
    while (true) {
        for (unsigned i = 0; i < n; ++i) f[i] = digits[i];
        Zx g = f;
        trim(g);
        if (zx_irreducible(g, p)) return f;
        // increment, last digit fastest
        int i = (int)n - 1;
        while (i >= 0 && digits[i] == p - 1) digits[i--] = 0;
        if (i < 0) throw InternalCheckFailed("no irreducible modulus found");
        ++digits[i];
    }
}

}  // namespace

GaloisField::GaloisField(std::uint64_t p, unsigned n) : p_(p), n_(n) {
    if (!is_prime_u64(p)) throw NonPrime("p = " + std::to_string(p) + " is not prime");
    if (n == 0) throw DegreeZero();
    if (n > 1) {
        Zx m = canonical_modulus(p, n);
        modulus_.assign(m.begin(), m.end());
    }
    init();
}

GaloisField::GaloisField(std::uint64_t p, unsigned n, std::vector<std::uint32_t> modulus)
    : p_(p), n_(n), modulus_(std::move(modulus)) {
    if (!is_prime_u64(p)) throw NonPrime("p = " + std::to_string(p) + " is not prime");
    if (n == 0) throw DegreeZero();
    if (n == 1) {
        modulus_.clear();
    } else {
        if (modulus_.size() != n + 1 || modulus_.back() != 1)
            throw ParseError("modulus must be monic of degree n");
        for (auto& c : modulus_) c %= (std::uint32_t)p;
        modulus_.back() = 1;
        Zx m(modulus_.begin(), modulus_.end());
        if (!zx_irreducible(m, p)) throw ParseError("modulus is not irreducible over GF(p)");
    }
    init();
}

void GaloisField::init() {
    q_ = 1;
    for (unsigned i = 0; i < n_; ++i) {
        if (q_ > UINT64_MAX / p_ / 2) throw RangeTooLarge("q = p^n does not fit in 64 bits");
        q_ *= p_;
    }
    if (q_ <= kTableLimit) {
        tables_ = true;
        std::size_t q = q_;
        add_t_.resize(q * q);
        mul_t_.resize(q * q);
        neg_t_.resize(q);
        inv_t_.assign(q, 0);
        for (std::size_t a = 0; a < q; ++a) {
            for (std::size_t b = 0; b < q; ++b) {
                add_t_[a * q + b] = (std::uint16_t)add_slow((GfElem)a, (GfElem)b);
                mul_t_[a * q + b] = (std::uint16_t)mul_slow((GfElem)a, (GfElem)b);
            }
        }
        for (std::size_t a = 0; a < q; ++a) {
            for (std::size_t b = 0; b < q; ++b) {
                if (add_t_[a * q + b] == 0) neg_t_[a] = (std::uint16_t)b;
                if (a && mul_t_[a * q + b] == 1) inv_t_[a] = (std::uint16_t)b;
            }
        }
    }
}

GfElem GaloisField::from_int(std::uint64_t v) const {
    if (n_ == 1) return (GfElem)(v % p_);
    return (GfElem)(v % q_);
}

std::vector<std::uint32_t> GaloisField::coeffs(GfElem a) const {
    std::vector<std::uint32_t> out(n_);
    std::uint64_t v = a;
    for (unsigned i = 0; i < n_; ++i) {
        out[i] = (std::uint32_t)(v % p_);
        v /= p_;
    }
    return out;
}

GfElem GaloisField::add_slow(GfElem a, GfElem b) const {
    if (n_ == 1) return (GfElem)(((std::uint64_t)a + b) % p_);
    std::uint64_t out = 0, mult = 1, va = a, vb = b;
    for (unsigned i = 0; i < n_; ++i) {
        std::uint64_t da = va % p_, db = vb % p_;
        out += (da + db) % p_ * mult;
        mult *= p_;
        va /= p_;
        vb /= p_;
    }
    return (GfElem)out;
}

GfElem GaloisField::mul_slow(GfElem a, GfElem b) const {
    if (n_ == 1) return (GfElem)((std::uint64_t)a * b % p_);
    // convolution of digits, then reduction by the modulus
    std::uint32_t da[64], db[64];
    std::uint64_t conv[128] = {0};
    std::uint64_t va = a, vb = b;
    for (unsigned i = 0; i < n_; ++i) {
        da[i] = (std::uint32_t)(va % p_);
        db[i] = (std::uint32_t)(vb % p_);
        va /= p_;
        vb /= p_;
    }
    for (unsigned i = 0; i < n_; ++i) {
        if (!da[i]) continue;
        for (unsigned j = 0; j < n_; ++j)
            conv[i + j] = (conv[i + j] + (std::uint64_t)da[i] * db[j]) % p_;
    }
    // reduce degrees 2n-2 .. n by x^n = -(m_0 + ... + m_{n-1} x^{n-1})
    for (int k = 2 * (int)n_ - 2; k >= (int)n_; --k) {
        std::uint64_t c = conv[k];
        if (!c) continue;
        conv[k] = 0;
        for (unsigned i = 0; i < n_; ++i) {
            std::uint64_t sub = c * modulus_[i] % p_;
            conv[k - n_ + i] = (conv[k - n_ + i] + p_ - sub) % p_;
        }
    }
    std::uint64_t out = 0, mult = 1;
    for (unsigned i = 0; i < n_; ++i) {
        out += conv[i] * mult;
        mult *= p_;
    }
    return (GfElem)out;
}

GfElem GaloisField::add(GfElem a, GfElem b) const {
    if (tables_) return add_t_[(std::size_t)a * q_ + b];
    return add_slow(a, b);
}

GfElem GaloisField::neg(GfElem a) const {
    if (tables_) return neg_t_[a];
    std::uint64_t out = 0, mult = 1, v = a;
    for (unsigned i = 0; i < n_; ++i) {
        std::uint64_t d = v % p_;
        out += (d ? p_ - d : 0) * mult;
        mult *= p_;
        v /= p_;
    }
    return (GfElem)out;
}

GfElem GaloisField::sub(GfElem a, GfElem b) const { return add(a, neg(b)); }

GfElem GaloisField::mul(GfElem a, GfElem b) const {
    if (tables_) return mul_t_[(std::size_t)a * q_ + b];
    return mul_slow(a, b);
}

GfElem GaloisField::pow(GfElem a, std::uint64_t e) const {
    GfElem r = 1, base = a;
    while (e) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

GfElem GaloisField::inv(GfElem a) const {
    if (a == 0) throw ZeroInverse();
    if (tables_) return inv_t_[a];
    return pow(a, q_ - 2);
}

bool GaloisField::is_square(GfElem a) const {
    if (a == 0) return true;
    if (p_ == 2) return true;  // Frobenius is surjective on squares
    return pow(a, (q_ - 1) / 2) == 1;
}

std::string GaloisField::format(GfElem a) const { return std::to_string(a); }

GaloisField GaloisField::parse(const std::string& spec) {
    auto caret = spec.find('^');
    if (caret == std::string::npos) {
        char* end = nullptr;
        std::uint64_t p = std::strtoull(spec.c_str(), &end, 10);
        if (!end || *end != '\0' || spec.empty()) throw ParseError("bad field spec: " + spec);
        return GaloisField(p, 1);
    }
    std::uint64_t p = std::strtoull(spec.substr(0, caret).c_str(), nullptr, 10);
    std::string rest = spec.substr(caret + 1);
    auto slash = rest.find('/');
    if (slash == std::string::npos) {
        unsigned n = (unsigned)std::strtoul(rest.c_str(), nullptr, 10);
        return GaloisField(p, n);
    }
    unsigned n = (unsigned)std::strtoul(rest.substr(0, slash).c_str(), nullptr, 10);
    std::string lit = rest.substr(slash + 1);
    if (lit.size() < 2 || lit.front() != '[' || lit.back() != ']')
        throw ParseError("bad modulus literal: " + lit);
    std::vector<std::uint32_t> mod;
    std::string body = lit.substr(1, lit.size() - 2);
    std::size_t pos = 0;
    while (pos < body.size()) {
        std::size_t comma = body.find(',', pos);
        std::string tok = body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        mod.push_back((std::uint32_t)std::strtoul(tok.c_str(), nullptr, 10));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return GaloisField(p, n, std::move(mod));
}

std::string GaloisField::spec_string() const {
    if (n_ == 1) return std::to_string(p_);
    std::string s = std::to_string(p_) + "^" + std::to_string(n_) + "/[";
    for (std::size_t i = 0; i < modulus_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(modulus_[i]);
    }
    return s + "]";
}

}  // namespace lsieve
