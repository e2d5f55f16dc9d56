#include "lsieve/chars.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

namespace lsieve {

namespace {

std::vector<std::uint64_t> prime_divisors_u64(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

std::uint64_t pow_u64(std::uint64_t b, int e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

struct Component {
    Poly m;  // pi^e
    std::uint64_t phi = 1;
    std::vector<Poly> gens;  // residues mod m
    std::vector<std::uint64_t> orders;
    // flattened dlog table over residue keys mod m; width max(1, gens.size());
    // first slot kNoLog marks a non-coprime residue
    std::vector<std::uint64_t> table;
    std::size_t width() const { return std::max<std::size_t>(1, gens.size()); }
    const std::uint64_t* row(std::uint64_t key) const { return table.data() + key * width(); }
};

constexpr std::uint64_t kNoLog = (std::uint64_t)-1;

// cyclic component (A/pi)^*, order q^deg(pi) - 1, lex-smallest generator
Component cyclic_component(const PolyRing& R, const Poly& pi) {
    Component C;
    C.m = pi;
    std::uint64_t Q = pow_u64(R.q(), pi.deg());
    C.phi = Q - 1;
    Poly one = R.mod(R.one(), pi);
    if (C.phi > 1) {
        auto rs = prime_divisors_u64(C.phi);
        Poly gen;
        for (std::uint64_t key = 1; key < Q; ++key) {
            Poly b = R.poly_from_key(key, pi.deg(), false);
            bool primitive = true;
            for (std::uint64_t r : rs) {
                if (R.pow_mod(b, C.phi / r, pi) == one) {
                    primitive = false;
                    break;
                }
            }
            if (primitive) {
                gen = b;
                break;
            }
        }
        if (gen.is_zero()) throw InternalCheckFailed("no cyclic generator found");
        C.gens.push_back(gen);
        C.orders.push_back(C.phi);
        C.table.assign(Q, kNoLog);
        Poly h = one;
        for (std::uint64_t t = 0; t < C.phi; ++t) {
            C.table[R.key_low(h, pi.deg())] = t;
            h = R.mod(R.mul(h, gen), pi);
        }
    } else {
        // residue field F_2: trivial unit group
        C.table.assign(Q, kNoLog);
        C.table[R.key_low(one, pi.deg())] = 0;
    }
    return C;
}

// generic abelian basis for (A/pi^e)^*, e >= 2: Sylow decomposition plus
// decreasing-order insertion; the construction is verified element by element
Component generic_component(const PolyRing& R, const Poly& pi, int e) {
    Component C;
    Poly m = R.one();
    for (int i = 0; i < e; ++i) m = R.mul(m, pi);
    C.m = m;
    std::uint64_t Q = pow_u64(R.q(), pi.deg());
    std::uint64_t keys = pow_u64(R.q(), m.deg());
    C.phi = (Q - 1) * pow_u64(Q, e - 1);
    if (C.phi > 2000000) throw GroupTooLarge("phi(component) > 2e6");

    std::vector<Poly> unit_poly;
    unit_poly.reserve(C.phi);
    for (std::uint64_t key = 0; key < keys; ++key) {
        Poly b = R.poly_from_key(key, m.deg(), false);
        if (!R.mod(b, pi).is_zero()) unit_poly.push_back(std::move(b));
    }
    if (unit_poly.size() != C.phi) throw InternalCheckFailed("unit count mismatch");

    Poly one = R.mod(R.one(), m);
    auto key_of = [&](const Poly& x) { return R.key_low(x, m.deg()); };

    struct Basis {
        Poly g;
        std::uint64_t order;
    };
    std::vector<Basis> basis;
    // H: residue key -> exponent vector over current basis (global width)
    std::unordered_map<std::uint64_t, std::vector<std::uint64_t>> H;
    H.emplace(key_of(one), std::vector<std::uint64_t>{});

    for (std::uint64_t ell : prime_divisors_u64(C.phi)) {
        std::uint64_t la = 1, rest = C.phi;
        while (rest % ell == 0) {
            rest /= ell;
            la *= ell;
        }
        std::uint64_t co = C.phi / la;

        // Sylow elements with orders
        std::unordered_map<std::uint64_t, std::pair<Poly, std::uint64_t>> syl;
        for (auto& x : unit_poly) {
            Poly s = R.pow_mod(x, co, m);
            std::uint64_t k = key_of(s);
            if (syl.count(k)) continue;
            std::uint64_t ord = 1;
            Poly t = s;
            while (!(t == one)) {
                t = R.pow_mod(t, ell, m);
                ord *= ell;
                if (ord > la) throw InternalCheckFailed("order exceeds Sylow size");
            }
            syl.emplace(k, std::make_pair(std::move(s), ord));
        }
        std::vector<std::pair<std::uint64_t, std::pair<Poly, std::uint64_t>>> elems(syl.begin(),
                                                                                    syl.end());
        std::sort(elems.begin(), elems.end(), [](const auto& a, const auto& b) {
            if (a.second.second != b.second.second) return a.second.second > b.second.second;
            return a.first < b.first;
        });

        std::size_t first_new = basis.size();
        for (auto& [skey, sp] : elems) {
            if (H.count(skey)) continue;
            const Poly& s = sp.first;
            // minimal t = ell^j with s^t in H
            std::uint64_t t = 1;
            Poly power = s;
            while (!H.count(key_of(power))) {
                power = R.pow_mod(power, ell, m);
                t *= ell;
                if (t > la) throw InternalCheckFailed("power walk left the Sylow subgroup");
            }
            std::vector<std::uint64_t> cvec = H.at(key_of(power));
            cvec.resize(basis.size(), 0);
            // adjust u = s * prod g_i^{-c_i/t}; purity guarantees t | c_i
            Poly u = s;
            for (std::size_t i = 0; i < basis.size(); ++i) {
                if (cvec[i] == 0) continue;
                if (cvec[i] % t != 0)
                    throw InternalCheckFailed("impure subgroup during basis discovery");
                std::uint64_t x = (cvec[i] / t) % basis[i].order;
                if (x == 0) continue;
                Poly ginv = R.pow_mod(basis[i].g, basis[i].order - x, m);
                u = R.mod(R.mul(u, ginv), m);
            }
            if (!(R.pow_mod(u, t, m) == one))
                throw InternalCheckFailed("adjusted element order mismatch");

            // extend H by the direct factor <u>
            std::vector<std::pair<std::uint64_t, std::vector<std::uint64_t>>> snapshot(H.begin(),
                                                                                       H.end());
            for (auto& kv : H) kv.second.resize(basis.size() + 1, 0);
            Poly up = one;
            for (std::uint64_t k2 = 1; k2 < t; ++k2) {
                up = R.mod(R.mul(up, u), m);
                for (auto& [hk, hv] : snapshot) {
                    Poly prod = R.mod(R.mul(R.poly_from_key(hk, m.deg(), false), up), m);
                    std::vector<std::uint64_t> v = hv;
                    v.resize(basis.size() + 1, 0);
                    v.back() = k2;
                    if (!H.emplace(key_of(prod), std::move(v)).second)
                        throw InternalCheckFailed("duplicate element extending basis");
                }
            }
            basis.push_back({u, t});
        }
        std::uint64_t sylow_size = 1;
        for (std::size_t i = first_new; i < basis.size(); ++i) sylow_size *= basis[i].order;
        if (sylow_size != la) throw InternalCheckFailed("Sylow basis does not span");
    }

    for (auto& b : basis) {
        C.gens.push_back(b.g);
        C.orders.push_back(b.order);
    }
    C.table.assign(keys * C.width(), kNoLog);

    // fill the dlog table by sweeping the direct product once
    std::vector<std::uint64_t> expv(C.gens.size(), 0);
    std::uint64_t count = 0;
    std::function<void(std::size_t, const Poly&)> sweep = [&](std::size_t i, const Poly& acc) {
        if (i == C.gens.size()) {
            std::uint64_t k = key_of(acc);
            std::uint64_t* row = C.table.data() + k * C.width();
            if (row[0] != kNoLog) throw InternalCheckFailed("duplicate element in product sweep");
            for (std::size_t t = 0; t < C.gens.size(); ++t) row[t] = expv[t];
            if (C.gens.empty()) row[0] = 0;
            ++count;
            return;
        }
        Poly a = acc;
        for (std::uint64_t ei = 0; ei < C.orders[i]; ++ei) {
            expv[i] = ei;
            sweep(i + 1, a);
            if (ei + 1 < C.orders[i]) a = R.mod(R.mul(a, C.gens[i]), C.m);
        }
        expv[i] = 0;
    };
    sweep(0, one);
    if (count != C.phi) throw InternalCheckFailed("basis does not enumerate the unit group");
    return C;
}

}  // namespace

UnitGroup::UnitGroup(const PolyRing& R, const Poly& f) : R_(R) {
    if (f.is_zero()) throw ZeroModulus();
    f_ = R_.monic(f);

    long double keyspace = std::pow((long double)R_.q(), (long double)f_.deg());
    if (keyspace > 8.0e6L) throw GroupTooLarge("q^deg f too large for dense tables");
    std::uint64_t keys = pow_u64(R_.q(), f_.deg());

    if (f_.deg() == 0) {
        phi_ = 1;
        R_exp_ = 1;
        dlog_index_.assign(1, 0);
        index_keys_.assign(1, 0);
        identity_ = 0;
        return;
    }

    fact_ = R_.factor(f_);
    std::uint64_t phi_formula = R_.phi(f_);
    if (phi_formula > 1000000) throw GroupTooLarge("phi(f) > 1e6");

    std::vector<Component> comps;
    for (auto& pf : fact_)
        comps.push_back(pf.e == 1 ? cyclic_component(R_, pf.p) : generic_component(R_, pf.p, pf.e));

    // CRT-lift component generators to mod f
    for (auto& C : comps) {
        Poly M = R_.div(f_, C.m);
        auto xg = R_.xgcd(M, C.m);
        if (xg.g.deg() != 0) throw InternalCheckFailed("components not coprime");
        Poly Mu = R_.mul(M, xg.u);  // = 1 mod C.m, = 0 mod the others
        for (std::size_t t = 0; t < C.gens.size(); ++t) {
            Poly lifted = R_.mod(R_.add(R_.one(), R_.mul(Mu, R_.sub(C.gens[t], R_.one()))), f_);
            gens_.push_back({lifted, C.orders[t]});
        }
    }

    phi_ = 1;
    R_exp_ = 1;
    for (auto& g : gens_) {
        phi_ *= g.order;
        R_exp_ = std::lcm(R_exp_, (long long)g.order);
    }
    if (phi_ != phi_formula) throw InternalCheckFailed("product of orders != phi(f)");

    Poly one_res = R_.mod(R_.one(), f_);
    for (auto& g : gens_) {
        if (!(R_.pow_mod(g.residue, g.order, f_) == one_res))
            throw InternalCheckFailed("generator order too small");
        for (std::uint64_t r : prime_divisors_u64(g.order)) {
            if (R_.pow_mod(g.residue, g.order / r, f_) == one_res)
                throw InternalCheckFailed("generator order not exact");
        }
    }

    dlog_index_.assign(keys, -1);
    index_keys_.reserve(phi_);
    std::int32_t next = 0;
    for (std::uint64_t key = 0; key < keys; ++key) {
        Poly b = R_.poly_from_key(key, f_.deg(), false);
        bool coprime = true;
        std::vector<std::uint64_t> row;
        row.reserve(gens_.size());
        for (auto& C : comps) {
            Poly r = R_.mod(b, C.m);
            std::uint64_t rk = R_.key_low(r, C.m.deg());
            const std::uint64_t* crow = C.row(rk);
            if (crow[0] == kNoLog) {
                coprime = false;
                break;
            }
            for (std::size_t t = 0; t < C.gens.size(); ++t) row.push_back(crow[t]);
        }
        if (!coprime) continue;
        dlog_index_[key] = next;
        index_keys_.push_back(key);
        if (row.size() != gens_.size()) throw InternalCheckFailed("dlog row width mismatch");
        for (std::size_t t = 0; t < row.size(); ++t) {
            std::uint64_t o = gens_[t].order;
            dlogs_.push_back(row[t]);
            wexp_.push_back((std::uint32_t)((unsigned __int128)row[t] *
                                            ((std::uint64_t)R_exp_ / o) % (std::uint64_t)R_exp_));
        }
        ++next;
    }
    if ((std::uint64_t)next != phi_) throw InternalCheckFailed("coprime residue count != phi");
    identity_ = dlog_index_[R_.key_low(one_res, f_.deg())];
}

std::int32_t UnitGroup::index_of(const Poly& b) const {
    if (f_.deg() == 0) return 0;
    Poly r = R_.mod(b, f_);
    return dlog_index_[R_.key_low(r, f_.deg())];
}

Poly UnitGroup::residue_of_index(std::int32_t idx) const {
    if (f_.deg() == 0) return Poly{};
    return R_.poly_from_key(index_keys_[(std::size_t)idx], f_.deg(), false);
}

std::int32_t UnitGroup::inverse_index(std::int32_t idx) const {
    if (f_.deg() == 0) return 0;
    Poly b = residue_of_index(idx);
    auto xg = R_.xgcd(b, f_);
    if (xg.g.deg() != 0) throw InternalCheckFailed("inverse of non-coprime residue");
    return index_of(xg.u);
}

std::int32_t UnitGroup::mul_index(std::int32_t a, std::int32_t b) const {
    if (f_.deg() == 0) return 0;
    Poly p = R_.mod(R_.mul(residue_of_index(a), residue_of_index(b)), f_);
    return index_of(p);
}

DirichletChar::DirichletChar(const UnitGroup& G, std::vector<std::uint64_t> exps)
    : G_(&G), e_(std::move(exps)) {
    if (e_.size() != G.generators().size())
        throw InternalCheckFailed("character exponent width mismatch");
    for (std::size_t t = 0; t < e_.size(); ++t) e_[t] %= G.generators()[t].order;
}

bool DirichletChar::is_principal() const {
    for (auto v : e_)
        if (v) return false;
    return true;
}

std::uint64_t DirichletChar::order() const {
    std::uint64_t o = 1;
    for (std::size_t t = 0; t < e_.size(); ++t) {
        std::uint64_t ot = G_->generators()[t].order;
        std::uint64_t g = std::gcd(e_[t], ot);
        o = std::lcm(o, ot / g);
    }
    return o;
}

DirichletChar::Val DirichletChar::eval_index(std::int32_t idx) const {
    if (idx < 0) return {true, 0};
    const std::uint32_t* w = G_->wexp_row(idx);
    unsigned __int128 acc = 0;
    for (std::size_t t = 0; t < e_.size(); ++t) acc += (unsigned __int128)e_[t] * w[t];
    return {false, (long long)(acc % (std::uint64_t)G_->exponent())};
}

std::complex<double> DirichletChar::value(const Poly& b) const {
    Val v = (*this)(b);
    if (v.zero) return {0.0, 0.0};
    double t = 2.0 * 3.14159265358979323846 * (double)v.m / (double)R();
    return {std::cos(t), std::sin(t)};
}

DirichletChar DirichletChar::conjugate() const {
    std::vector<std::uint64_t> e2(e_.size());
    for (std::size_t t = 0; t < e_.size(); ++t) {
        std::uint64_t o = G_->generators()[t].order;
        e2[t] = e_[t] == 0 ? 0 : o - e_[t];
    }
    return DirichletChar(*G_, std::move(e2));
}

std::vector<DirichletChar> characters(const UnitGroup& G) {
    std::vector<DirichletChar> out;
    out.reserve(G.phi());
    std::vector<std::uint64_t> e(G.generators().size(), 0);
    while (true) {
        out.emplace_back(G, e);
        int i = (int)e.size() - 1;
        while (i >= 0 && e[(std::size_t)i] + 1 == G.generators()[(std::size_t)i].order)
            e[(std::size_t)i--] = 0;
        if (i < 0) break;
        ++e[(std::size_t)i];
    }
    if (out.size() != G.phi()) throw InternalCheckFailed("character count != phi");
    return out;
}

DirichletChar induce(const UnitGroup& G, const DirichletChar& chi_prime) {
    const UnitGroup& Gp = chi_prime.group();
    const PolyRing& R = G.ring();
    if (!R.mod(G.modulus(), Gp.modulus()).is_zero())
        throw InternalCheckFailed("induction requires f' | f");
    long long Rp = Gp.exponent();
    std::vector<std::uint64_t> e;
    for (auto& g : G.generators()) {
        auto v = chi_prime(g.residue);
        if (v.zero) throw InternalCheckFailed("generator not coprime to f'");
        unsigned __int128 num = (unsigned __int128)v.m * g.order;
        if (num % (std::uint64_t)Rp != 0)
            throw InternalCheckFailed("induced value is not an o-th root of unity");
        e.push_back((std::uint64_t)(num / (std::uint64_t)Rp) % g.order);
    }
    return DirichletChar(G, std::move(e));
}

CycSum box_char_sum(const DirichletChar& chi, int L) {
    const UnitGroup& G = chi.group();
    const PolyRing& R = G.ring();
    CycSum sum(G.exponent());
    DirichletChar cbar = chi.conjugate();
    R.for_each_nonzero_deg_le(L, [&](const Poly& b) {
        auto v = cbar(b);
        if (!v.zero) sum.add(v.m);
    });
    return sum;
}

BoxHistogram box_histogram(const UnitGroup& G, int L) {
    const PolyRing& R = G.ring();
    BoxHistogram H;
    H.by_index.assign(G.phi(), 0);
    R.for_each_nonzero_deg_le(L, [&](const Poly& b) {
        std::int32_t idx = G.index_of(b);
        ++H.total;
        if (idx < 0)
            ++H.non_coprime;
        else
            ++H.by_index[(std::size_t)idx];
    });
    return H;
}

OrthReport orthogonality_report(const PolyRing& R, const Poly& f, std::uint64_t sample_seed) {
    UnitGroup G(R, f);
    auto chars_list = characters(G);
    RootTable rt(G.exponent());
    OrthReport rep;
    rep.phi = G.phi();

    auto pair_sum = [&](std::int32_t i1, std::int32_t i2) -> std::complex<long double> {
        std::complex<long double> s = 0;
        for (auto& chi : chars_list) {
            auto v1 = chi.eval_index(i1);
            auto v2 = chi.eval_index(i2);
            s += rt[v1.m - v2.m];
        }
        return s;
    };

    long double max_dev = 0;

    // ratio route: the full pair table reduces to sums over single residues
    for (std::int32_t r = 0; r < (std::int32_t)G.phi(); ++r) {
        CycSum s(G.exponent());
        const std::uint32_t* w = G.wexp_row(r);
        for (auto& chi : chars_list) {
            unsigned __int128 acc = 0;
            const auto& e = chi.exponents();
            for (std::size_t t = 0; t < e.size(); ++t) acc += (unsigned __int128)e[t] * w[t];
            s.add((long long)(acc % (std::uint64_t)G.exponent()));
        }
        std::complex<long double> v = s.value(rt);
        long double expect = r == G.identity_index() ? (long double)G.phi() : 0.0L;
        max_dev = std::max(max_dev, std::abs(v - std::complex<long double>(expect)));
        ++rep.checks;
    }

    // literal pair sweep: full on small moduli, seeded sample otherwise (the
    // ratio route above already covers every pair through multiplicativity)
    std::uint64_t phi2 = G.phi() * G.phi();
    if (phi2 <= 40000) {
        for (std::int32_t i1 = 0; i1 < (std::int32_t)G.phi(); ++i1)
            for (std::int32_t i2 = 0; i2 < (std::int32_t)G.phi(); ++i2) {
                std::complex<long double> v = pair_sum(i1, i2);
                long double expect = i1 == i2 ? (long double)G.phi() : 0.0L;
                max_dev = std::max(max_dev, std::abs(v - std::complex<long double>(expect)));
                ++rep.checks;
            }
    } else {
        rep.sampled = true;
        std::uint64_t s = sample_seed ? sample_seed : 1;
        auto next = [&s]() {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            return s;
        };
        std::uint64_t pairs = std::min<std::uint64_t>(2000, phi2);
        for (std::uint64_t i = 0; i < pairs; ++i) {
            std::int32_t i1 = (std::int32_t)(next() % G.phi());
            std::int32_t i2 = (std::int32_t)(next() % G.phi());
            std::complex<long double> v = pair_sum(i1, i2);
            long double expect = i1 == i2 ? (long double)G.phi() : 0.0L;
            max_dev = std::max(max_dev, std::abs(v - std::complex<long double>(expect)));
            ++rep.checks;
        }
    }

    rep.max_deviation = (double)max_dev;
    rep.pass = max_dev <= 1e-9L;
    return rep;
}

}  // namespace lsieve
