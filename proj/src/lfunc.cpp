#include "lsieve/lfunc.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

#include "lsieve/parallel.hpp"

namespace lsieve {

BoxHistogram monic_degree_histogram(const UnitGroup& G, int d) {
    const PolyRing& R = G.ring();
    BoxHistogram H;
    H.by_index.assign(G.phi(), 0);
    R.for_each_monic_of_degree(d, [&](const Poly& m) {
        std::int32_t idx = G.index_of(m);
        ++H.total;
        if (idx < 0)
            ++H.non_coprime;
        else
            ++H.by_index[(std::size_t)idx];
    });
    return H;
}

LPolynomial l_polynomial(const DirichletChar& chi, int series_terms) {
    const UnitGroup& G = chi.group();
    const Poly& f = G.modulus();
    if (f.deg() > 6) throw ModulusTooLarge("l_polynomial needs deg f <= 6");
    LPolynomial L{chi, chi.is_principal(), {}, {}, 0};

    int top = L.principal ? series_terms : f.deg();
    for (int j = 0; j <= top; ++j) {
        BoxHistogram H = monic_degree_histogram(G, j);
        CycSum c(G.exponent());
        for (std::int32_t idx = 0; idx < (std::int32_t)G.phi(); ++idx) {
            long long cnt = H.by_index[(std::size_t)idx];
            if (!cnt) continue;
            c.add(chi.eval_index(idx).m, cnt);
        }
        L.exact.push_back(std::move(c));
    }

    std::vector<std::complex<double>> rendered;
    for (auto& c : L.exact) rendered.push_back(c.value_d());

    if (!L.principal) {
        // vanishing at j = deg f is verified, then the polynomial is trimmed
        if (std::abs(rendered.back()) > 1e-9)
            throw InternalCheckFailed("nonprincipal L coefficient at deg f does not vanish");
        int D = f.deg() - 1;
        while (D > 0 && std::abs(rendered[(std::size_t)D]) <= 1e-9) --D;
        L.D = D;
        rendered.resize((std::size_t)D + 1);
    } else {
        L.D = top;
    }
    L.coeff = std::move(rendered);
    return L;
}

RhReport inverse_roots(const LPolynomial& L) {
    if (L.principal) throw InternalCheckFailed("inverse_roots requires a nonprincipal character");
    RhReport rep;
    int D = L.D;
    if (D == 0) return rep;  // L == 1, no roots

    // inverse roots are the eigenvalues of the companion matrix of
    // z^D + c_1 z^{D-1} + ... + c_D
    Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(D, D);
    for (int i = 1; i < D; ++i) C(i, i - 1) = 1.0;
    for (int i = 0; i < D; ++i) {
        // coefficient of z^i is c_{D-i}
        C(i, D - 1) = -std::complex<double>(L.coeff[(std::size_t)(D - i)]);
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(C, false);
    if (solver.info() != Eigen::Success) throw RootFindingFailure();

    double q = (double)L.chi.group().ring().q();
    double sq = std::sqrt(q);
    double prod = 1.0;
    for (int i = 0; i < D; ++i) {
        std::complex<double> a = solver.eigenvalues()(i);
        rep.inverse_roots.push_back(a);
        double mag = std::abs(a);
        prod *= mag;
        rep.max_deviation =
            std::max(rep.max_deviation, std::min(std::abs(mag - 1.0), std::abs(mag - sq)));
    }
    rep.vieta_deviation = std::abs(prod - std::abs(L.coeff.back()));
    rep.pass = rep.max_deviation <= 1e-6 && rep.vieta_deviation <= 1e-6;
    return rep;
}

PrimeHistogram prime_histogram(IrreducibleTables& tabs, const UnitGroup& G, int N) {
    const PolyRing& R = G.ring();
    const GaloisField& F = R.field();
    const Poly& f = G.modulus();
    const int m = f.deg();
    PrimeHistogram H;
    H.N = N;
    H.by_index.assign(G.phi(), 0);

    const auto& flat = tabs.prime_coeffs(N);
    const std::size_t stride = (std::size_t)N + 1;
    const std::uint64_t q = R.q();
    const std::uint64_t nprimes = flat.size() / stride;

    int workers = worker_count();
    std::vector<PrimeHistogram> parts((std::size_t)std::max(1, workers));
    for (auto& part : parts) part.by_index.assign(G.phi(), 0);
    parallel_chunks(nprimes, [&](int w, std::uint64_t begin, std::uint64_t end) {
        PrimeHistogram& part = parts[(std::size_t)w];
        std::vector<GfElem> buf((std::size_t)std::max(N, m) + 1, 0);
        for (std::uint64_t pi = begin; pi < end; ++pi) {
            std::size_t off = (std::size_t)pi * stride;
            for (std::size_t i = 0; i < stride; ++i) buf[i] = flat[off + i];
            for (std::size_t i = stride; i < buf.size(); ++i) buf[i] = 0;
            if (m >= 1 && N >= m) {
                for (int d = N; d >= m; --d) {
                    GfElem c = buf[(std::size_t)d];
                    if (!c) continue;
                    buf[(std::size_t)d] = 0;
                    for (int i = 0; i < m; ++i) {
                        std::size_t pos = (std::size_t)(d - m + i);
                        buf[pos] = F.sub(buf[pos], F.mul(c, f.c[(std::size_t)i]));
                    }
                }
            }
            std::int32_t idx;
            if (m == 0) {
                idx = 0;
            } else {
                std::uint64_t rkey = 0, mult = 1;
                for (int i = 0; i < m; ++i) {
                    rkey += buf[(std::size_t)i] * mult;
                    mult *= q;
                }
                idx = G.index_of_key(rkey);
            }
            ++part.total;
            if (idx < 0)
                ++part.dividing_modulus;
            else
                ++part.by_index[(std::size_t)idx];
        }
    });
    for (auto& part : parts) {
        H.total += part.total;
        H.dividing_modulus += part.dividing_modulus;
        for (std::size_t i = 0; i < part.by_index.size(); ++i)
            H.by_index[i] += part.by_index[i];
    }
    return H;
}

CycSum prime_char_sum(const DirichletChar& chi, const PrimeHistogram& H, long long power) {
    const UnitGroup& G = chi.group();
    CycSum s(G.exponent());
    for (std::int32_t idx = 0; idx < (std::int32_t)G.phi(); ++idx) {
        long long cnt = H.by_index[(std::size_t)idx];
        if (!cnt) continue;
        long long mexp = chi.eval_index(idx).m;
        s.add((long long)((unsigned __int128)mexp * (unsigned long long)power %
                          (unsigned long long)G.exponent()),
              cnt);
    }
    return s;
}

CycSum prime_char_sum(IrreducibleTables& tabs, const DirichletChar& chi, int N) {
    long double size = std::pow((long double)chi.group().ring().q(), (long double)N);
    if (size > 1.0e8L) throw RangeTooLarge("q^N > 1e8 in prime_char_sum");
    PrimeHistogram H = prime_histogram(tabs, chi.group(), N);
    return prime_char_sum(chi, H, 1);
}

NewtonCheck newton_identity_check(IrreducibleTables& tabs, const LPolynomial& L,
                                  const RhReport& roots, int N) {
    const UnitGroup& G = L.chi.group();
    std::uint64_t q = G.ring().q();
    long double size = std::pow((long double)q, (long double)N);
    if (size > 1.0e8L) throw RangeTooLarge("q^N > 1e8 in newton_identity_check");

    std::complex<long double> lhs = 0;
    for (auto a : roots.inverse_roots) {
        std::complex<long double> al(a.real(), a.imag());
        std::complex<long double> p = 1;
        for (int i = 0; i < N; ++i) p *= al;
        lhs -= p;
    }

    RootTable rt(G.exponent());
    std::complex<long double> rhs = 0;
    for (int d = 1; d <= N; ++d) {
        if (N % d) continue;
        PrimeHistogram H = prime_histogram(tabs, G, d);
        CycSum s = prime_char_sum(L.chi, H, N / d);
        rhs += (long double)d * s.value(rt);
    }

    NewtonCheck out;
    out.lhs_abs = (double)std::abs(lhs);
    out.residual = (double)std::abs(lhs - rhs);
    out.bound = 1e-5 * std::pow((double)q, (double)N / 2.0);
    out.pass = out.residual <= out.bound;
    return out;
}

NewtonCheck newton_identity_check(IrreducibleTables& tabs, const DirichletChar& chi, int N) {
    LPolynomial L = l_polynomial(chi);
    RhReport roots = inverse_roots(L);
    return newton_identity_check(tabs, L, roots, N);
}

}  // namespace lsieve
