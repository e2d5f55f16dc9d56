#pragma once

#include <complex>
#include <functional>
#include <map>
#include <vector>

#include "lsieve/cyc.hpp"
#include "lsieve/abgroup.hpp"
#include "lsieve/quadext.hpp"
#include "lsieve/rational.hpp"

namespace lsieve {

// all b mod a with b^2 = D mod a (D squarefree); Hensel-lifted and
// CRT-combined over the factorization of a
std::vector<Poly> sqrt_roots_mod(const PolyRing& R, const Poly& D, const Poly& a);

// all ideals of norm exactly q^n, via (s, a, roots) normal-form sweep
void for_each_ideal_of_norm(const QuadField& K, int n,
                            const std::function<void(const QuadIdeal&)>& fn);

// zeta numerator by point counting over GF(q^i), i <= 2g
struct ZetaData {
    std::vector<long long> L;        // c_0 .. c_{2g}
    int d_infinity = 1;              // degree of the infinite place of K
    std::vector<long long> G;        // ideal-count numerator L(u)(1-u^{dinf})/(1-u)
    std::vector<long long> G_paper;  // the paper's convention L(u)(1+u)
    long long h_K = 1;               // L_K(1)
    std::vector<long long> point_counts;  // N_1 .. N_{2g}
    std::vector<std::complex<double>> inverse_roots;
    double rh_deviation = 0.0;  // max | |alpha| - sqrt q |
    bool functional_equation = true;

    // ideal-count constant (1/h) G(1/q) q/(q-1), exact
    Rat c_ideal(std::uint64_t q, long long h) const;
    // the same with the paper's G
    Rat c_paper(std::uint64_t q, long long h) const;
    // element-count constant: #units * c_ideal
    Rat c_elements(std::uint64_t q, long long h, long long units) const;
};
ZetaData zeta_numerator(const QuadField& K);

// ideal class group by enumeration up to norm q^{genus + 1 + extra}
struct ClassGroup {
    std::vector<QuadIdeal> reps;  // reps[0] is the unit ideal
    long long h = 1;
    std::vector<int> gen_classes;
    std::vector<long long> orders;
    std::vector<std::vector<long long>> dlogs;  // per class index
    long long exponent = 1;
};
ClassGroup class_group(const QuadField& K, int extra_norm = 0);
int class_of(const QuadField& K, const ClassGroup& C, const QuadIdeal& I);

// ray class group H(f): ideals coprime to f modulo principal ideals with a
// generator multiplicatively congruent to a unit; characters are exact
class RayClassGroup {
public:
    RayClassGroup(const QuadField& K, const ClassGroup& C, QuadIdeal modulus);

    const QuadField& field() const { return K_; }
    const ClassGroup& classes() const { return C_; }
    const QuadIdeal& modulus() const { return f_; }

    long long h_f() const { return h_f_; }
    std::uint64_t phi_f() const { return phi_; }
    long long unit_image() const { return unit_image_; }
    long long order_R() const { return basis_.exponent; }

    // ray class index of a coprime ideal (-1 when not coprime to f)
    long long ray_index(const QuadIdeal& J) const;
    long long ray_index_element(const QuadInt& b) const;  // class of (b)
    long long identity_index() const { return identity_; }
    QuadIdeal representative(long long idx) const { return reps_[(std::size_t)idx]; }

    std::size_t num_chars() const { return (std::size_t)h_f_; }
    // character chi (0 = principal) at a ray class: exponent m of zeta_R^m
    long long chi_exponent(std::size_t chi, long long ray_idx) const;

    // independent "multiplicatively congruent to a unit" test
    bool ray_trivial_oracle(const QuadIdeal& J) const;

private:
    struct Residue;  // canonical residue pair and key helpers
    long long coset_of_key(std::uint64_t key) const;
    std::uint64_t reduce_key(const QuadInt& g) const;
    QuadInt reduce(const QuadInt& g) const;
    QuadInt residue_mul(const QuadInt& a, const QuadInt& b) const;

    const QuadField& K_;
    ClassGroup C_;
    QuadIdeal f_;
    Poly sa_;  // s * a of the modulus normal form
    std::uint64_t keys_x_ = 1, keys_y_ = 1;

    std::vector<QuadIdeal> f_primes_;  // prime divisors of f with exponents
    std::vector<int> f_prime_vals_;

    std::uint64_t phi_ = 1;
    long long unit_image_ = 1;
    long long n_cosets_ = 1;
    long long h_f_ = 1;
    long long identity_ = 0;

    std::vector<std::int64_t> coset_of_;   // residue key -> coset id (-1 non-unit)
    std::vector<std::uint64_t> coset_rep_key_;  // coset id -> lex-min residue key

    // class-part data: coprime representatives of the class-group basis
    std::vector<QuadIdeal> basis_reps_;        // per class-group generator
    std::vector<QuadIdeal> class_prod_;        // P(d) for each class index
    std::vector<Poly> class_prod_norm_;        // monic norm generator of P(d)
    std::vector<QuadInt> class_prod_norm_inv_; // inverse residue of it mod f

    std::vector<QuadIdeal> reps_;  // representative ideal per ray index
    AbelianBasis basis_;           // structure of the ray class group
    std::vector<std::vector<std::uint64_t>> chars_;  // exponent vectors, chi0 first
};

// sum of chi over all prime ideals of norm q^N (zero on divisors of f)
CycSum hecke_prime_sum(const RayClassGroup& H, std::size_t chi, IrreducibleTables& tabs, int N);
struct RayPrimeHistogram {
    std::vector<long long> by_ray;
    long long dividing_modulus = 0;
    long long total = 0;
};
RayPrimeHistogram hecke_prime_histogram(const RayClassGroup& H, IrreducibleTables& tabs, int N);

// exact count of nonzero b with N((b)) <= q^U and Dideal | (b), against the
// element-count constant
struct IdealCountBox {
    long long element_count = 0;
    long long ideal_count = 0;  // element_count / #units
    Rat constant;               // element-count constant
    double prediction = 0.0;    // constant * q^U / N(D)
    double deviation = 0.0;
};
IdealCountBox ideal_count_box(const QuadField& K, const ZetaData& Z, const ClassGroup& C,
                              const QuadIdeal& Dideal, int U);

}  // namespace lsieve
