#pragma once

#include <complex>
#include <vector>

#include "lsieve/chars.hpp"

namespace lsieve {

// Dirichlet L-polynomial in u = q^{-s}: coefficient j is the exact sum of
// chi(m) over monic m of degree j. For nonprincipal chi this is a polynomial
// of degree <= deg f - 1 (the vanishing at deg f is verified, not assumed);
// for the principal character it is a truncated power series.
struct LPolynomial {
    DirichletChar chi;
    bool principal = false;
    std::vector<CycSum> exact;                 // c_0 .. c_top as computed
    std::vector<std::complex<double>> coeff;   // rendered and trimmed, c_0 .. c_D
    int D = 0;
};

// counts of monic polynomials of degree d per unit-group index
BoxHistogram monic_degree_histogram(const UnitGroup& G, int d);

// series_terms only applies to the principal character (default 6)
LPolynomial l_polynomial(const DirichletChar& chi, int series_terms = 6);

struct RhReport {
    std::vector<std::complex<double>> inverse_roots;
    double max_deviation = 0.0;  // distance of |alpha| from {1, sqrt q}
    double vieta_deviation = 0.0;
    bool pass = true;
};

// all inverse roots of a nonprincipal L-polynomial via companion-matrix
// eigenvalues, with the function-field RH check |alpha| in {1, sqrt q}
RhReport inverse_roots(const LPolynomial& L);

// counts of monic irreducibles of degree N per residue class mod G.modulus()
struct PrimeHistogram {
    int N = 0;
    std::vector<long long> by_index;
    long long dividing_modulus = 0;
    long long total = 0;
};
PrimeHistogram prime_histogram(IrreducibleTables& tabs, const UnitGroup& G, int N);

// sum of chi(pi^power) over monic irreducibles pi of the histogram's degree
CycSum prime_char_sum(const DirichletChar& chi, const PrimeHistogram& H, long long power = 1);
CycSum prime_char_sum(IrreducibleTables& tabs, const DirichletChar& chi, int N);

struct NewtonCheck {
    double lhs_abs = 0.0;  // |C_N| from the inverse roots
    double residual = 0.0;
    double bound = 0.0;  // 1e-5 * q^{N/2}
    bool pass = false;
};

// compares -sum alpha_i^N against the enumerated prime-power sums
NewtonCheck newton_identity_check(IrreducibleTables& tabs, const LPolynomial& L,
                                  const RhReport& roots, int N);
NewtonCheck newton_identity_check(IrreducibleTables& tabs, const DirichletChar& chi, int N);

}  // namespace lsieve
