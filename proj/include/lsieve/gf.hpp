#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lsieve/errors.hpp"

namespace lsieve {

// Element of GF(p^n), encoded as the integer sum c_i * p^i of its coordinate
// digits c_i in [0, p). Code 0 is the zero element, code 1 the one element.
using GfElem = std::uint32_t;

// GF(p^n) with q = p^n in 64 bits. For n > 1 the field is F_p[x]/(modulus);
// the canonical modulus is the lexicographically smallest monic irreducible of
// degree n over GF(p), coefficients compared low-to-high.
class GaloisField {
public:
    GaloisField(std::uint64_t p, unsigned n);
    GaloisField(std::uint64_t p, unsigned n, std::vector<std::uint32_t> modulus);

    // "7", "3^2", or "3^2/[1,0,1]" (explicit little-endian modulus)
    static GaloisField parse(const std::string& spec);
    std::string spec_string() const;

    std::uint64_t p() const { return p_; }
    unsigned n() const { return n_; }
    std::uint64_t q() const { return q_; }
    // little-endian, length n+1, top coefficient 1; empty when n == 1
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }

    GfElem zero() const { return 0; }
    GfElem one() const { return 1; }
    GfElem from_int(std::uint64_t v) const;  // v mod q, read as digit code
    std::vector<std::uint32_t> coeffs(GfElem a) const;  // length n, base-p digits

    GfElem add(GfElem a, GfElem b) const;
    GfElem sub(GfElem a, GfElem b) const;
    GfElem neg(GfElem a) const;
    GfElem mul(GfElem a, GfElem b) const;
    GfElem inv(GfElem a) const;  // ZeroInverse on 0
    GfElem pow(GfElem a, std::uint64_t e) const;
    bool is_square(GfElem a) const;  // true for 0 and quadratic residues

    std::string format(GfElem a) const;  // decimal code

    bool operator==(const GaloisField& o) const {
        return p_ == o.p_ && n_ == o.n_ && modulus_ == o.modulus_;
    }

private:
    void init();
    GfElem add_slow(GfElem a, GfElem b) const;
    GfElem mul_slow(GfElem a, GfElem b) const;

    std::uint64_t p_ = 0;
    unsigned n_ = 0;
    std::uint64_t q_ = 0;
    std::vector<std::uint32_t> modulus_;

    // dense tables, built when q <= kTableLimit
    static constexpr std::uint64_t kTableLimit = 1024;
    bool tables_ = false;
    std::vector<std::uint16_t> add_t_, mul_t_, inv_t_, neg_t_;
};

bool is_prime_u64(std::uint64_t v);

}  // namespace lsieve
