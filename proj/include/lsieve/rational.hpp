#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "lsieve/errors.hpp"

namespace lsieve {

// Small exact rational for parameter formulas and report ratios.
// Parameter inputs like epsilon are decimal strings; parsing them exactly keeps
// every floor/ceil in the engines deterministic.
struct Rat {
    long long num = 0;
    long long den = 1;

    Rat() = default;
    Rat(long long n, long long d = 1) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw DivideByZero("rational with zero denominator");
        if (den < 0) { num = -num; den = -den; }
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
        if (num == 0) den = 1;
    }

    static Rat parse(const std::string& s);

    friend Rat operator+(Rat a, Rat b) { return Rat(a.num * b.den + b.num * a.den, a.den * b.den); }
    friend Rat operator-(Rat a, Rat b) { return Rat(a.num * b.den - b.num * a.den, a.den * b.den); }
    friend Rat operator*(Rat a, Rat b) { return Rat(a.num * b.num, a.den * b.den); }
    friend Rat operator/(Rat a, Rat b) { return Rat(a.num * b.den, a.den * b.num); }

    friend bool operator==(Rat a, Rat b) { return a.num == b.num && a.den == b.den; }
    friend bool operator<(Rat a, Rat b) { return a.num * b.den < b.num * a.den; }
    friend bool operator<=(Rat a, Rat b) { return a.num * b.den <= b.num * a.den; }
    friend bool operator>(Rat a, Rat b) { return b < a; }
    friend bool operator>=(Rat a, Rat b) { return b <= a; }

    long long floor() const {
        long long q = num / den;
        if (num % den != 0 && num < 0) --q;
        return q;
    }
    long long ceil() const {
        long long q = num / den;
        if (num % den != 0 && num > 0) ++q;
        return q;
    }

    double to_double() const { return double(num) / double(den); }
    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }
};

inline Rat Rat::parse(const std::string& s) {
    if (s.empty()) throw ParseError("empty rational literal");
    std::size_t i = 0;
    bool neg = false;
    if (s[i] == '+' || s[i] == '-') { neg = s[i] == '-'; ++i; }
    long long num = 0, den = 1;
    bool digits = false, frac = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (c >= '0' && c <= '9') {
            num = num * 10 + (c - '0');
            if (frac) den *= 10;
            digits = true;
        } else if (c == '.' && !frac) {
            frac = true;
        } else if (c == '/' && !frac && digits) {
            // "a/b" form
            Rat d = Rat::parse(s.substr(i + 1));
            Rat n(neg ? -num : num, 1);
            return n / d;
        } else {
            throw ParseError("bad rational literal: " + s);
        }
    }
    if (!digits) throw ParseError("bad rational literal: " + s);
    return Rat(neg ? -num : num, den);
}

}  // namespace lsieve
