#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "lsieve/cyc.hpp"
#include "lsieve/poly.hpp"

namespace lsieve {

// Verified direct-product decomposition of (A/(f))^* with a full discrete-log
// table. Squarefree moduli take the cyclic CRT path per irreducible factor;
// prime powers get a generic abelian basis discovered from element orders.
class UnitGroup {
public:
    struct Gen {
        Poly residue;         // CRT-lifted generator mod f
        std::uint64_t order;  // exact order, verified at construction
    };

    UnitGroup(const PolyRing& R, const Poly& f);  // ZeroModulus, GroupTooLarge

    const PolyRing& ring() const { return R_; }
    const Poly& modulus() const { return f_; }
    int deg() const { return f_.deg(); }
    std::uint64_t phi() const { return phi_; }
    long long exponent() const { return R_exp_; }  // lcm of generator orders
    const std::vector<Gen>& generators() const { return gens_; }
    const std::vector<PolyFactor>& factorization() const { return fact_; }

    // full-key residue classification; key ranges over [0, q^deg f)
    std::int32_t index_of_key(std::uint64_t key) const { return dlog_index_[key]; }
    std::int32_t index_of(const Poly& b) const;  // reduces b mod f, -1 if not coprime
    Poly residue_of_index(std::int32_t idx) const;
    std::uint64_t key_of_index(std::int32_t idx) const { return index_keys_[(std::size_t)idx]; }
    std::int32_t identity_index() const { return identity_; }
    std::int32_t inverse_index(std::int32_t idx) const;
    std::int32_t mul_index(std::int32_t a, std::int32_t b) const;

    // per-index character data: w_t = dlog_t * (R / o_t) mod R; a character
    // with exponent vector e evaluates to zeta_R ^ (sum_t e_t w_t)
    const std::uint32_t* wexp_row(std::int32_t idx) const {
        return wexp_.data() + (std::size_t)idx * gens_.size();
    }
    const std::uint64_t* dlog_row(std::int32_t idx) const {
        return dlogs_.data() + (std::size_t)idx * gens_.size();
    }

private:
    PolyRing R_;
    Poly f_;
    std::vector<PolyFactor> fact_;
    std::uint64_t phi_ = 1;
    long long R_exp_ = 1;
    std::vector<Gen> gens_;
    std::vector<std::int32_t> dlog_index_;   // size q^deg f
    std::vector<std::uint64_t> index_keys_;  // index -> full residue key
    std::vector<std::uint64_t> dlogs_;       // phi x gens flattened exponents
    std::vector<std::uint32_t> wexp_;        // phi x gens flattened
    std::int32_t identity_ = 0;
};

// Dirichlet character mod f, as an exponent vector over the unit-group basis.
// Values are exact roots of unity zeta_R^m; rendering happens at sum time.
class DirichletChar {
public:
    DirichletChar(const UnitGroup& G, std::vector<std::uint64_t> exps);

    const UnitGroup& group() const { return *G_; }
    const std::vector<std::uint64_t>& exponents() const { return e_; }
    bool is_principal() const;
    long long R() const { return G_->exponent(); }
    std::uint64_t order() const;  // order in the dual group

    struct Val {
        bool zero = true;
        long long m = 0;  // value is zeta_R^m when not zero
    };
    Val eval_index(std::int32_t idx) const;
    Val operator()(const Poly& b) const { return eval_index(G_->index_of(b)); }
    std::complex<double> value(const Poly& b) const;

    DirichletChar conjugate() const;

private:
    const UnitGroup* G_;
    std::vector<std::uint64_t> e_;
};

// all phi(f) characters, the principal character first
std::vector<DirichletChar> characters(const UnitGroup& G);

// character mod G.modulus() induced by chi_prime mod f' with f' | modulus
DirichletChar induce(const UnitGroup& G, const DirichletChar& chi_prime);

// sum of conj(chi)(b) over all nonzero b with deg b <= L, exact bookkeeping
CycSum box_char_sum(const DirichletChar& chi, int L);

// counts of nonzero b, deg b <= L, per unit-group index; non-coprime b are
// tallied separately
struct BoxHistogram {
    std::vector<long long> by_index;
    long long non_coprime = 0;
    long long total = 0;
};
BoxHistogram box_histogram(const UnitGroup& G, int L);

struct OrthReport {
    std::uint64_t phi = 0;
    std::uint64_t checks = 0;
    bool sampled = false;
    double max_deviation = 0.0;
    bool pass = false;
};

// verifies sum_chi chi(b1) conj(chi)(b2) = phi * [b1 = b2, coprime]; full
// table via the ratio reduction, plus a literal pair sweep on small moduli
// or a seeded sample when phi^2 is too large
OrthReport orthogonality_report(const PolyRing& R, const Poly& f,
                                std::uint64_t sample_seed = 1);

}  // namespace lsieve
