#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

#include "lsieve/errors.hpp"

namespace lsieve {

// Direct-product basis of a finite abelian group given by element indices,
// a multiplication oracle, and the identity. Discovered per Sylow subgroup by
// decreasing-order insertion; every step is verified, so an inconsistent
// oracle fails loudly instead of producing a wrong table.
struct AbelianBasis {
    std::vector<int> gens;
    std::vector<long long> orders;
    std::vector<std::vector<long long>> dlogs;  // per element index
    long long exponent = 1;
};

inline AbelianBasis abelian_basis(int n, const std::function<int(int, int)>& mul, int identity) {
    AbelianBasis out;
    out.dlogs.assign((std::size_t)n, {});
    if (n <= 0) throw InternalCheckFailed("empty group");

    auto pow = [&](int x, long long e) {
        int r = identity, b = x;
        while (e) {
            if (e & 1) r = mul(r, b);
            b = mul(b, b);
            e >>= 1;
        }
        return r;
    };

    std::vector<long long> primes;
    {
        long long m = n;
        for (long long d = 2; d * d <= m; ++d)
            if (m % d == 0) {
                primes.push_back(d);
                while (m % d == 0) m /= d;
            }
        if (m > 1) primes.push_back(m);
    }

    struct Basis {
        int g;
        long long order;
    };
    std::vector<Basis> basis;
    // H: element -> exponent vector over the current basis; -1 marks absence
    std::vector<std::vector<long long>> H((std::size_t)n);
    std::vector<char> inH((std::size_t)n, 0);
    inH[(std::size_t)identity] = 1;

    for (long long ell : primes) {
        long long la = 1, rest = n;
        while (rest % ell == 0) {
            rest /= ell;
            la *= ell;
        }
        long long co = n / la;

        // Sylow projections with orders
        std::vector<std::pair<int, long long>> elems;
        std::vector<char> seen((std::size_t)n, 0);
        for (int x = 0; x < n; ++x) {
            int s = pow(x, co);
            if (seen[(std::size_t)s]) continue;
            seen[(std::size_t)s] = 1;
            long long ord = 1;
            int t = s;
            while (t != identity) {
                t = pow(t, ell);
                ord *= ell;
                if (ord > la) throw InternalCheckFailed("order exceeds Sylow size");
            }
            elems.push_back({s, ord});
        }
        std::sort(elems.begin(), elems.end(), [](const auto& a, const auto& b) {
            if (a.second != b.second) return a.second > b.second;
            return a.first < b.first;
        });

        std::size_t first_new = basis.size();
        for (auto& [s, ord] : elems) {
            if (inH[(std::size_t)s]) continue;
            long long t = 1;
            int power = s;
            while (!inH[(std::size_t)power]) {
                power = pow(power, ell);
                t *= ell;
                if (t > la) throw InternalCheckFailed("power walk left the Sylow subgroup");
            }
            std::vector<long long> cvec = H[(std::size_t)power];
            cvec.resize(basis.size(), 0);
            int u = s;
            for (std::size_t i = 0; i < basis.size(); ++i) {
                if (cvec[i] == 0) continue;
                if (cvec[i] % t != 0)
                    throw InternalCheckFailed("impure subgroup during basis discovery");
                long long x = (cvec[i] / t) % basis[i].order;
                if (x == 0) continue;
                u = mul(u, pow(basis[i].g, basis[i].order - x));
            }
            if (pow(u, t) != identity)
                throw InternalCheckFailed("adjusted element order mismatch");

            // extend H by the direct factor <u>
            std::vector<int> members;
            for (int x = 0; x < n; ++x)
                if (inH[(std::size_t)x]) members.push_back(x);
            for (int x : members) H[(std::size_t)x].resize(basis.size() + 1, 0);
            int up = identity;
            for (long long k2 = 1; k2 < t; ++k2) {
                up = mul(up, u);
                for (int x : members) {
                    int prod = mul(x, up);
                    if (inH[(std::size_t)prod])
                        throw InternalCheckFailed("duplicate element extending basis");
                    inH[(std::size_t)prod] = 1;
                    std::vector<long long> v = H[(std::size_t)x];
                    v.back() = k2;
                    H[(std::size_t)prod] = std::move(v);
                }
            }
            basis.push_back({u, t});
        }
        long long sylow_size = 1;
        for (std::size_t i = first_new; i < basis.size(); ++i) sylow_size *= basis[i].order;
        if (sylow_size != la) throw InternalCheckFailed("Sylow basis does not span");
    }

    long long covered = 1;
    for (auto& b : basis) {
        out.gens.push_back(b.g);
        out.orders.push_back(b.order);
        covered *= b.order;
        out.exponent = std::lcm(out.exponent, b.order);
    }
    if (covered != n) throw InternalCheckFailed("basis does not span the group");

    // final dlog table by a direct product sweep
    std::vector<char> mark((std::size_t)n, 0);
    std::vector<long long> expv(out.gens.size(), 0);
    std::function<void(std::size_t, int)> sweep = [&](std::size_t i, int acc) {
        if (i == out.gens.size()) {
            if (mark[(std::size_t)acc])
                throw InternalCheckFailed("duplicate element in product sweep");
            mark[(std::size_t)acc] = 1;
            out.dlogs[(std::size_t)acc] = expv;
            return;
        }
        int a = acc;
        for (long long e = 0; e < out.orders[i]; ++e) {
            expv[i] = e;
            sweep(i + 1, a);
            if (e + 1 < out.orders[i]) a = mul(a, out.gens[(std::size_t)i]);
        }
        expv[i] = 0;
    };
    sweep(0, identity);
    for (int x = 0; x < n; ++x)
        if (!mark[(std::size_t)x]) throw InternalCheckFailed("element missed by product sweep");
    return out;
}

}  // namespace lsieve
