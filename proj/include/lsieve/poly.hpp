#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lsieve/gf.hpp"
#include "lsieve/qpower.hpp"

namespace lsieve {

// Element of A = F_q[T]: little-endian coefficients, no trailing zeros.
// The zero polynomial is the empty vector; deg(0) = -1 as a sentinel below
// every attained degree.
struct Poly {
    std::vector<GfElem> c;

    bool is_zero() const { return c.empty(); }
    int deg() const { return (int)c.size() - 1; }
    GfElem lead() const { return c.back(); }
    GfElem coeff(int i) const {
        return (i < 0 || i >= (int)c.size()) ? 0 : c[(std::size_t)i];
    }
    bool operator==(const Poly&) const = default;
};

struct PolyFactor {
    Poly p;  // monic irreducible
    int e;
};

// Arithmetic in F_q[T]. Pure functions over immutable values; holds only a
// reference to the field.
class PolyRing {
public:
    explicit PolyRing(const GaloisField& F) : F_(F) {}
    const GaloisField& field() const { return F_; }
    std::uint64_t q() const { return F_.q(); }

    Poly zero() const { return {}; }
    Poly one() const { return constant(1); }
    Poly T() const { return Poly{{0, 1}}; }
    Poly constant(GfElem a) const { return a ? Poly{{a}} : Poly{}; }
    Poly from_coeffs(std::vector<GfElem> c) const;

    Poly add(const Poly& a, const Poly& b) const;
    Poly sub(const Poly& a, const Poly& b) const;
    Poly neg(const Poly& a) const;
    Poly mul(const Poly& a, const Poly& b) const;
    Poly mul_scalar(const Poly& a, GfElem s) const;
    Poly shift(const Poly& a, int k) const;  // * T^k, k >= 0
    std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) const;
    Poly div(const Poly& a, const Poly& b) const { return divmod(a, b).first; }
    Poly mod(const Poly& a, const Poly& b) const { return divmod(a, b).second; }
    Poly monic(const Poly& a) const;
    Poly gcd_monic(Poly a, Poly b) const;  // gcd(f, 0) = monic(f); gcd(0,0) = 0
    struct Xgcd {
        Poly g, u, v;  // g = u*a + v*b, g monic (or zero)
    };
    Xgcd xgcd(const Poly& a, const Poly& b) const;
    bool coprime(const Poly& a, const Poly& b) const;
    GfElem eval(const Poly& f, GfElem x) const;
    Poly derivative(const Poly& f) const;
    Poly pow_mod(const Poly& base, unsigned __int128 e, const Poly& m) const;
    Poly mulmod(const Poly& a, const Poly& b, const Poly& m) const;

    QPower abs(const Poly& f) const {
        return f.is_zero() ? QPower::zero_value() : QPower::of(f.deg());
    }

    // pre: deg f >= 1 (ConstantInput otherwise)
    bool is_irreducible(const Poly& f) const;
    bool is_squarefree(const Poly& f) const;

    // monic irreducible factorization, sorted by (degree, lex); unit dropped
    std::vector<PolyFactor> factor(const Poly& f) const;

    int mu(const Poly& f) const;                 // Moebius; ZeroInput on 0
    std::uint64_t phi(const Poly& f) const;      // #(A/(f))^*
    int omega(const Poly& f) const;              // distinct irreducible factors
    // all monic divisors, each exactly once; lex-ordered exponent sweep over
    // the sorted factor base
    void for_each_monic_divisor(const Poly& f, const std::function<void(const Poly&)>& fn) const;
    std::vector<Poly> monic_divisors(const Poly& f) const;

    // --- ordering, keys, enumeration ---------------------------------------
    // project order: degree first, then coefficients compared low-to-high
    bool lex_less(const Poly& a, const Poly& b) const;
    // sum of coefficient codes * q^i; needs q^(deg+1) to fit in 64 bits
    std::uint64_t key(const Poly& f) const;
    // key over the deg-many low coefficients of a monic polynomial
    std::uint64_t key_low(const Poly& f, int digits) const;
    Poly poly_from_key(std::uint64_t key, int digits, bool monic_top) const;

    // enumeration in project lex order within fixed degree
    void for_each_monic_of_degree(int d, const std::function<void(const Poly&)>& fn) const;
    void for_each_poly_of_degree(int d, const std::function<void(const Poly&)>& fn) const;
    // all nonzero f with deg f <= L, degree ascending then lex
    void for_each_nonzero_deg_le(int L, const std::function<void(const Poly&)>& fn) const;

    std::uint64_t count_monic_irreducibles(int N) const;  // necklace formula

    // --- literals -----------------------------------------------------------
    // accepts "2*T^3+T+5" and "[5,1,0,2]" (little-endian FFElem codes)
    Poly parse(const std::string& s) const;
    std::string format(const Poly& f) const;

private:
    const GaloisField& F_;
    std::vector<PolyFactor> factor_squarefree(const Poly& f) const;  // DDF+EDF
    void edf(const Poly& f, int d, std::vector<Poly>& out, std::uint64_t& rng_state) const;
};

// Cached composite sieves and prime streams per degree. Owned explicitly by
// engines; not thread-safe for concurrent construction.
class IrreducibleTables {
public:
    explicit IrreducibleTables(const PolyRing& R) : R_(R) {}

    // stream of monic irreducibles of degree N in project lex order
    void for_each(int N, const std::function<void(const Poly&)>& fn);
    // keys (low-coefficient encodings) in emission order
    const std::vector<std::uint64_t>& prime_keys(int N);
    // flat coefficient array, stride N+1 (monic top included), emission order
    const std::vector<GfElem>& prime_coeffs(int N);
    bool contains(int N, const Poly& f);
    std::uint64_t count(int N);

    const PolyRing& ring() const { return R_; }

private:
    const std::vector<bool>& sieve(int N);  // composite bitmap for monic degree N
    PolyRing R_;
    std::map<int, std::vector<bool>> sieves_;
    std::map<int, std::vector<std::uint64_t>> keys_;
    std::map<int, std::vector<GfElem>> coeffs_;
};

}  // namespace lsieve
