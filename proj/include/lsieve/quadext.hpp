#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lsieve/laurent.hpp"
#include "lsieve/poly.hpp"

namespace lsieve {

// element x + y sqrt(D) of the integral closure A + A sqrt(D)
struct QuadInt {
    Poly x, y;
    bool is_zero() const { return x.is_zero() && y.is_zero(); }
    bool operator==(const QuadInt&) const = default;
};

// ideal in normal form s (a A + (b + sqrt D) A); s, a monic, deg b < deg a,
// a | b^2 - D; the zero ideal is a sentinel
struct QuadIdeal {
    bool zero = true;
    Poly s, a, b;
    bool operator==(const QuadIdeal&) const = default;
    bool is_unit() const { return !zero && s.deg() == 0 && a.deg() == 0; }
    // log_q of the ideal norm |s|^2 |a|
    long long norm_exp() const { return 2LL * s.deg() + a.deg(); }
    QPower norm() const { return zero ? QPower::zero_value() : QPower::of(norm_exp()); }
};

// element of K_infty = k_infty + k_infty sqrt(D)
struct QuadLaurent {
    LaurentSeries u, v;
};

// imaginary quadratic extension K = k(sqrt D): D squarefree of degree >= 1,
// odd degree or non-square leading coefficient; q odd
class QuadField {
public:
    QuadField(const PolyRing& R, Poly D);

    const PolyRing& ring() const { return R_; }
    const GaloisField& field() const { return R_.field(); }
    const Poly& D() const { return D_; }
    int genus() const { return g_; }
    // the infinite place: ramified for odd deg D (degree 1), inert otherwise
    // (degree 2)
    int infinity_degree() const { return D_.deg() % 2 == 1 ? 1 : 2; }
    const std::vector<QuadInt>& units() const { return units_; }

    QuadInt zero() const { return {}; }
    QuadInt one() const { return {R_.one(), {}}; }
    QuadInt from_base(Poly p) const { return {std::move(p), {}}; }
    QuadInt sqrtD() const { return {{}, R_.one()}; }

    QuadInt add(const QuadInt& a, const QuadInt& b) const;
    QuadInt sub(const QuadInt& a, const QuadInt& b) const;
    QuadInt neg(const QuadInt& a) const;
    QuadInt mul(const QuadInt& a, const QuadInt& b) const;
    QuadInt mul_scalar(const QuadInt& a, GfElem c) const;
    QuadInt conj(const QuadInt& a) const { return {a.x, R_.neg(a.y)}; }
    Poly norm(const QuadInt& a) const;   // x^2 - y^2 D
    Poly trace(const QuadInt& a) const;  // 2x
    // |a| = sqrt(|Norm a|); exact half-exponent deg Norm
    HalfQPower abs(const QuadInt& a) const;
    long long norm_deg(const QuadInt& a) const;  // deg Norm, -1 sentinel for 0

    bool lex_less(const QuadInt& a, const QuadInt& b) const;
    QuadInt canonical_associate(const QuadInt& a) const;  // min over unit multiples

    std::string format(const QuadInt& a) const;  // "(x)+(y)*sqrtD"
    QuadInt parse(const std::string& s) const;

    // "<alphaspec>;<alphaspec>" for the two components
    QuadLaurent parse_quad_alpha(const std::string& spec) const;

private:
    PolyRing R_;
    Poly D_;
    int g_ = 0;
    std::vector<QuadInt> units_;
};

// --- ideal arithmetic --------------------------------------------------------

QuadIdeal ideal_unit(const QuadField& K);
QuadIdeal ideal_from_gens(const QuadField& K, const std::vector<QuadInt>& gens);
QuadIdeal ideal_principal(const QuadField& K, const QuadInt& g);
bool ideal_contains(const QuadField& K, const QuadIdeal& I, const QuadInt& g);
QuadIdeal ideal_mul(const QuadField& K, const QuadIdeal& I, const QuadIdeal& J);
QuadIdeal ideal_gcd(const QuadField& K, const QuadIdeal& I, const QuadIdeal& J);
QuadIdeal ideal_conj(const QuadField& K, const QuadIdeal& I);
bool ideal_divides(const QuadField& K, const QuadIdeal& J, const QuadIdeal& I);  // J | I
QuadIdeal ideal_divide(const QuadField& K, const QuadIdeal& I, const QuadIdeal& J);
int ideal_val(const QuadField& K, const QuadIdeal& I, const QuadIdeal& P);

struct PrimeIdealFact {
    enum class Type { Split, Inert, Ramified } type;
    std::vector<QuadIdeal> primes;  // split: P, Pbar; otherwise one ideal
    int ramification = 1;           // e
    int residue_deg = 1;            // f with N(P) = q^{f deg p}
};
// Kummer-Dedekind factorization of (p) for p monic irreducible in A
PrimeIdealFact ideal_factor(const QuadField& K, const Poly& p);

// square root in the residue field A/(p), p monic irreducible, q odd;
// r must be a nonzero quadratic residue mod p
Poly sqrt_mod_irreducible(const PolyRing& R, const Poly& r, const Poly& p);

// Gauss-reduced lattice basis of an ideal in (x, y) coordinates; the first
// vector is a shortest nonzero element
std::pair<QuadInt, QuadInt> reduced_basis(const QuadField& K, const QuadIdeal& I);

// lattice-reduction principality test; returns the lexicographically smallest
// generator when I is principal
std::optional<QuadInt> is_principal(const QuadField& K, const QuadIdeal& I);

// all prime ideals of norm q^N, ordered by base prime then conjugate pair
void for_each_prime_ideal_of_norm(const QuadField& K, IrreducibleTables& tabs, int N,
                                  const std::function<void(const QuadIdeal&)>& fn);
std::vector<QuadIdeal> prime_ideals_of_norm(const QuadField& K, IrreducibleTables& tabs, int N);

struct PrimeElement {
    QuadInt pi;  // canonical generator
    QuadIdeal P;
};
// the principal prime ideals of norm q^N with canonical generators
std::vector<PrimeElement> enumerate_prime_elements(const QuadField& K, IrreducibleTables& tabs,
                                                   int N);

// --- metric on K_infty -------------------------------------------------------

struct QuadNormResult {
    enum class Kind { Exact, Below } kind = Kind::Exact;
    HalfQPower value;      // Exact (possibly exact zero)
    long long below_he = 0;  // Below: ||x|| <= q^{below_he/2}
    bool is_exact() const { return kind == Kind::Exact; }
    bool is_zero() const { return is_exact() && value.is_zero(); }
    bool le(HalfQPower bound) const;
    std::string str() const;
};

// ||x + A|| via componentwise fractional parts
QuadNormResult kinf_norm_dist(const QuadField& K, const QuadLaurent& x, long long floor_exp);
// ||f * x + A||
QuadNormResult kinf_norm_dist_scaled(const QuadField& K, const QuadLaurent& x, const QuadInt& f,
                                     long long floor_exp);
// componentwise polynomial part of f * x
QuadInt poly_part_scaled(const QuadField& K, const QuadLaurent& x, const QuadInt& f);

// --- Dirichlet search --------------------------------------------------------

struct FrontierEntry {
    QuadInt f, a;
    HalfQPower abs_f;
    QuadNormResult quality;  // |f x - a|
    HalfQPower local_c;      // certified quality * |f| (bound value when Below)
    QuadIdeal gcd_af;        // gcd((a), (f))
    QuadIdeal effective_modulus;  // gcd^{-1} (f)
};

struct DirichletSearch {
    std::vector<FrontierEntry> frontier;  // strictly improving quality, |f| ascending
    HalfQPower c_min;                     // empirical c(Q): min of local_c over the frontier
    HalfQPower c_max;                     // max of local_c over the frontier
    bool exact_hit = false;
    long long searched = 0;
};

// sweeps all f with 0 < |f| <= bound in (|f|, lex) order
DirichletSearch dirichlet_search_K(const QuadField& K, const QuadLaurent& x, HalfQPower bound,
                                   long long floor_exp);

}  // namespace lsieve
