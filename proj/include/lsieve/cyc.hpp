#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "lsieve/errors.hpp"

namespace lsieve {

inline constexpr long double LS_PI = 3.14159265358979323846264338327950288L;

// Table of the R-th roots of unity in long double precision.
struct RootTable {
    long long R = 1;
    std::vector<std::complex<long double>> w;

    explicit RootTable(long long order) : R(order), w(order) {
        for (long long m = 0; m < order; ++m) {
            long double t = 2.0L * LS_PI * (long double)m / (long double)order;
            w[m] = {std::cos(t), std::sin(t)};
        }
    }
    const std::complex<long double>& operator[](long long m) const {
        long long r = m % R;
        if (r < 0) r += R;
        return w[r];
    }
};

// Sum of roots of unity kept as exact integer counts per exponent in Z_R.
// Rendering to complex happens only at the end of a computation.
struct CycSum {
    long long R = 1;
    std::vector<long long> counts;  // counts[m] multiplies zeta_R^m

    CycSum() : counts(1, 0) {}
    explicit CycSum(long long order) : R(order), counts(order, 0) {}

    void add(long long m, long long k = 1) {
        long long r = m % R;
        if (r < 0) r += R;
        counts[r] += k;
    }
    // multiply the whole sum by zeta_R^m
    CycSum rotated(long long m) const {
        CycSum out(R);
        for (long long i = 0; i < R; ++i) {
            if (counts[i]) out.add(i + m, counts[i]);
        }
        return out;
    }
    CycSum conjugated() const {
        CycSum out(R);
        for (long long i = 0; i < R; ++i) {
            if (counts[i]) out.add(-i, counts[i]);
        }
        return out;
    }
    friend CycSum operator+(const CycSum& a, const CycSum& b) {
        if (a.R != b.R) throw InternalCheckFailed("CycSum order mismatch");
        CycSum out(a.R);
        for (long long i = 0; i < a.R; ++i) out.counts[i] = a.counts[i] + b.counts[i];
        return out;
    }

    long long total_terms() const {
        long long t = 0;
        for (long long c : counts) t += (c < 0 ? -c : c);
        return t;
    }

    std::complex<long double> value(const RootTable& rt) const {
        std::complex<long double> s = 0;
        for (long long m = 0; m < R; ++m) {
            if (counts[m]) s += (long double)counts[m] * rt[m];
        }
        return s;
    }
    std::complex<long double> value() const { return value(RootTable(R)); }
    std::complex<double> value_d() const {
        auto v = value();
        return {double(v.real()), double(v.imag())};
    }
};

// Asserts z is within tol of a (real) integer and returns it rounded.
inline long long round_to_integer(std::complex<long double> z, long double tol,
                                  const char* what) {
    long double re = z.real();
    long long n = (long long)llroundl(re);
    if (fabsl(re - (long double)n) > tol || fabsl(z.imag()) > tol)
        throw NonIntegerResult(std::string(what) + ": value not within tolerance of an integer");
    return n;
}

}  // namespace lsieve
