#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <string>

namespace lsieve {

// floor division by 2 (C++ / truncates toward zero)
inline long long floor_half(long long v) { return v >= 0 ? v / 2 : -((-v + 1) / 2); }

// Exact absolute value q^e, with a distinguished zero (|0|).
// Exponent arithmetic only; never converted to floating point except for reports.
struct QPower {
    bool zero = true;
    long long e = 0;

    static QPower of(long long exp) { return QPower{false, exp}; }
    static QPower zero_value() { return QPower{true, 0}; }

    bool is_zero() const { return zero; }

    friend QPower operator*(QPower a, QPower b) {
        if (a.zero || b.zero) return zero_value();
        return of(a.e + b.e);
    }
    friend QPower operator/(QPower a, QPower b) { return of(a.e - b.e); }

    friend bool operator==(QPower a, QPower b) {
        return a.zero == b.zero && (a.zero || a.e == b.e);
    }
    friend bool operator<(QPower a, QPower b) {
        if (a.zero) return !b.zero;
        if (b.zero) return false;
        return a.e < b.e;
    }
    friend bool operator<=(QPower a, QPower b) { return a < b || a == b; }
    friend bool operator>(QPower a, QPower b) { return b < a; }
    friend bool operator>=(QPower a, QPower b) { return b <= a; }

    double to_double(std::uint64_t q) const {
        return zero ? 0.0 : std::pow(double(q), double(e));
    }
    std::string str() const {
        return zero ? "0" : "q^" + std::to_string(e);
    }
};

// Exact absolute value q^(he/2) on a quadratic extension; half-exponents are
// stored doubled so all comparisons stay integral.
struct HalfQPower {
    bool zero = true;
    long long he = 0;  // value is q^(he/2)

    static HalfQPower of_half(long long half_exp) { return HalfQPower{false, half_exp}; }
    static HalfQPower from_qpower(QPower p) {
        return p.zero ? zero_value() : of_half(2 * p.e);
    }
    static HalfQPower zero_value() { return HalfQPower{true, 0}; }

    bool is_zero() const { return zero; }
    // true when the exponent is integral, i.e. the value lies in q^Z
    bool integral() const { return zero || he % 2 == 0; }

    friend HalfQPower operator*(HalfQPower a, HalfQPower b) {
        if (a.zero || b.zero) return zero_value();
        return of_half(a.he + b.he);
    }
    friend HalfQPower operator/(HalfQPower a, HalfQPower b) { return of_half(a.he - b.he); }

    friend bool operator==(HalfQPower a, HalfQPower b) {
        return a.zero == b.zero && (a.zero || a.he == b.he);
    }
    friend bool operator<(HalfQPower a, HalfQPower b) {
        if (a.zero) return !b.zero;
        if (b.zero) return false;
        return a.he < b.he;
    }
    friend bool operator<=(HalfQPower a, HalfQPower b) { return a < b || a == b; }
    friend bool operator>(HalfQPower a, HalfQPower b) { return b < a; }
    friend bool operator>=(HalfQPower a, HalfQPower b) { return b <= a; }

    double to_double(std::uint64_t q) const {
        return zero ? 0.0 : std::pow(double(q), double(he) / 2.0);
    }
    std::string str() const {
        if (zero) return "0";
        if (he % 2 == 0) return "q^" + std::to_string(he / 2);
        return "q^(" + std::to_string(he) + "/2)";
    }
};

}  // namespace lsieve
