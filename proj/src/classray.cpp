#include "lsieve/classray.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

#include "lsieve/abgroup.hpp"

namespace lsieve {

namespace {
std::uint64_t pow_u64(std::uint64_t b, int e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}
}  // namespace

std::vector<Poly> sqrt_roots_mod(const PolyRing& R, const Poly& D, const Poly& a) {
    if (a.deg() == 0) return {R.zero()};
    std::vector<std::pair<Poly, std::vector<Poly>>> components;  // (pi^e, roots mod pi^e)
    for (auto& pf : R.factor(a)) {
        const Poly& pi = pf.p;
        Poly pie = R.one();
        for (int i = 0; i < pf.e; ++i) pie = R.mul(pie, pi);
        Poly r = R.mod(D, pi);
        std::vector<Poly> roots;
        if (r.is_zero()) {
            // v_pi(D) = 1 for squarefree D: solvable only at exponent 1
            if (pf.e == 1) roots.push_back(R.zero());
        } else {
            std::uint64_t Q = pow_u64(R.q(), pi.deg());
            Poly one = R.mod(R.one(), pi);
            if (R.pow_mod(r, (Q - 1) / 2, pi) == one) {
                Poly b = sqrt_mod_irreducible(R, r, pi);
                Poly mod_j = pi;
                for (int j = 1; j < pf.e; ++j) {
                    // Hensel: b <- b + t pi^j with 2 b t = -(b^2 - D)/pi^j mod pi
                    Poly mod_j1 = R.mul(mod_j, pi);
                    Poly err = R.mod(R.sub(R.mul(b, b), D), mod_j1);
                    Poly c = R.div(err, mod_j);
                    auto xg = R.xgcd(R.add(b, b), pi);
                    if (xg.g.deg() != 0) throw InternalCheckFailed("2b not invertible mod pi");
                    Poly t = R.mod(R.mul(R.neg(c), xg.u), pi);
                    b = R.mod(R.add(b, R.mul(t, mod_j)), mod_j1);
                    mod_j = mod_j1;
                }
                roots.push_back(b);
                Poly nb = R.mod(R.neg(b), pie);
                if (!(nb == b)) roots.push_back(nb);
            }
        }
        if (roots.empty()) return {};
        components.push_back({pie, std::move(roots)});
    }
    std::vector<Poly> acc = {R.zero()};
    Poly acc_mod = R.one();
    for (auto& [pie, roots] : components) {
        auto xg = R.xgcd(acc_mod, pie);
        if (xg.g.deg() != 0) throw InternalCheckFailed("CRT components not coprime");
        std::vector<Poly> next;
        Poly full = R.mul(acc_mod, pie);
        for (auto& b_old : acc)
            for (auto& b_new : roots) {
                // b = b_old + acc_mod u (b_new - b_old), acc_mod u = 1 mod pie
                Poly t = R.mul(R.mul(acc_mod, xg.u), R.sub(b_new, b_old));
                next.push_back(R.mod(R.add(b_old, t), full));
            }
        acc = std::move(next);
        acc_mod = full;
    }
    std::sort(acc.begin(), acc.end(),
              [&R](const Poly& x, const Poly& y) { return R.lex_less(x, y); });
    return acc;
}

void for_each_ideal_of_norm(const QuadField& K, int n,
                            const std::function<void(const QuadIdeal&)>& fn) {
    const PolyRing& R = K.ring();
    for (int ds = 0; 2 * ds <= n; ++ds) {
        int da = n - 2 * ds;
        R.for_each_monic_of_degree(ds, [&](const Poly& s) {
            R.for_each_monic_of_degree(da, [&](const Poly& a) {
                if (da == 0) {
                    fn(QuadIdeal{false, s, a, R.zero()});
                    return;
                }
                for (auto& b : sqrt_roots_mod(R, K.D(), a)) fn(QuadIdeal{false, s, a, b});
            });
        });
    }
}

// --- zeta ---------------------------------------------------------------------

namespace {
std::vector<std::complex<double>> roots_of_int_poly(const std::vector<long long>& c) {
    int deg = (int)c.size() - 1;
    while (deg > 0 && c[(std::size_t)deg] == 0) --deg;
    if (deg <= 0) return {};
    Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(deg, deg);
    for (int i = 1; i < deg; ++i) C(i, i - 1) = 1.0;
    for (int i = 0; i < deg; ++i)
        C(i, deg - 1) =
            -std::complex<double>((double)c[(std::size_t)(deg - i)], 0.0) / (double)c[0];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(C, false);
    if (solver.info() != Eigen::Success) throw RootFindingFailure();
    std::vector<std::complex<double>> out;
    for (int i = 0; i < deg; ++i) out.push_back(solver.eigenvalues()(i));
    return out;
}
}  // namespace

ZetaData zeta_numerator(const QuadField& K) {
    const PolyRing& R = K.ring();
    const int g = K.genus();
    if (g > 3) throw GenusTooLarge("point counting supports genus <= 3");
    ZetaData Z;
    Z.d_infinity = K.infinity_degree();
    Z.L.assign((std::size_t)(2 * g) + 1, 0);
    Z.L[0] = 1;

    if (g > 0) {
        if (R.field().n() != 1)
            throw GenusTooLarge("point counting over extension base fields is not supported");
        std::uint64_t p = R.field().p();
        for (int i = 1; i <= 2 * g; ++i) {
            GaloisField E(p, (unsigned)i);
            long long count = 0;
            for (std::uint64_t t = 0; t < E.q(); ++t) {
                GfElem val = 0;
                for (std::size_t j = K.D().c.size(); j-- > 0;)
                    val = E.add(E.mul(val, (GfElem)t), K.D().c[j]);
                if (val == 0)
                    count += 1;
                else if (E.is_square(val))
                    count += 2;
            }
            if (K.D().deg() % 2 == 1) {
                count += 1;  // the ramified point at infinity
            } else {
                count += E.is_square(K.D().lead()) ? 2 : 0;
            }
            Z.point_counts.push_back(count);
        }
        // Newton: S_i = q^i + 1 - N_i are power sums of the inverse roots
        std::vector<long long> S;
        for (int i = 1; i <= 2 * g; ++i)
            S.push_back((long long)pow_u64(R.q(), i) + 1 - Z.point_counts[(std::size_t)i - 1]);
        for (int k = 1; k <= 2 * g; ++k) {
            long long acc = S[(std::size_t)k - 1];
            for (int i = 1; i < k; ++i) acc += S[(std::size_t)i - 1] * Z.L[(std::size_t)(k - i)];
            if (acc % k != 0) throw InternalCheckFailed("non-integer zeta coefficient");
            Z.L[(std::size_t)k] = -acc / k;
        }
    }

    Z.functional_equation = true;
    for (int i = 0; i <= g; ++i) {
        long long lhs = Z.L[(std::size_t)(2 * g - i)];
        long long rhs = (long long)pow_u64(R.q(), g - i) * Z.L[(std::size_t)i];
        if (lhs != rhs) Z.functional_equation = false;
    }

    Z.h_K = 0;
    for (long long c : Z.L) Z.h_K += c;

    Z.inverse_roots = roots_of_int_poly(Z.L);
    double sq = std::sqrt((double)R.q());
    for (auto a : Z.inverse_roots)
        Z.rh_deviation = std::max(Z.rh_deviation, std::abs(std::abs(a) - sq));

    // ideal-count numerator L(u)(1 - u^{dinf})/(1 - u)
    if (Z.d_infinity == 1) {
        Z.G = Z.L;
    } else {
        Z.G.assign(Z.L.size() + 1, 0);
        for (std::size_t i = 0; i < Z.L.size(); ++i) {
            Z.G[i] += Z.L[i];
            Z.G[i + 1] += Z.L[i];
        }
    }
    Z.G_paper.assign(Z.L.size() + 1, 0);
    for (std::size_t i = 0; i < Z.L.size(); ++i) {
        Z.G_paper[i] += Z.L[i];
        Z.G_paper[i + 1] += Z.L[i];
    }
    return Z;
}

namespace {
Rat eval_scaled(const std::vector<long long>& G, std::uint64_t q, long long h) {
    // G(1/q) q/(q-1) / h exactly
    int deg = (int)G.size() - 1;
    long long num = 0;
    for (int i = 0; i <= deg; ++i) num += G[(std::size_t)i] * (long long)pow_u64(q, deg - i);
    long long den = (deg >= 1 ? (long long)pow_u64(q, deg - 1) : 1) * (long long)(q - 1) * h;
    if (deg == 0) return Rat(num * (long long)q, (long long)(q - 1) * h);
    return Rat(num, den);
}
}  // namespace

Rat ZetaData::c_ideal(std::uint64_t q, long long h) const { return eval_scaled(G, q, h); }
Rat ZetaData::c_paper(std::uint64_t q, long long h) const { return eval_scaled(G_paper, q, h); }
Rat ZetaData::c_elements(std::uint64_t q, long long h, long long units) const {
    return c_ideal(q, h) * Rat(units);
}

// --- class group ----------------------------------------------------------------

ClassGroup class_group(const QuadField& K, int extra_norm) {
    if (K.genus() > 2) throw SearchTooLarge("class enumeration supports genus <= 2");
    ClassGroup C;
    C.reps.push_back(ideal_unit(K));
    int bound = K.genus() + 1 + extra_norm;
    for (int n = 1; n <= bound; ++n) {
        for_each_ideal_of_norm(K, n, [&](const QuadIdeal& I) {
            for (auto& rep : C.reps) {
                if (is_principal(K, ideal_mul(K, I, ideal_conj(K, rep)))) return;
            }
            C.reps.push_back(I);
        });
    }
    C.h = (long long)C.reps.size();

    auto mul_class = [&](int i, int j) {
        QuadIdeal P = ideal_mul(K, C.reps[(std::size_t)i], C.reps[(std::size_t)j]);
        return class_of(K, C, P);
    };
    AbelianBasis B = abelian_basis((int)C.h, mul_class, 0);
    C.gen_classes = B.gens;
    C.orders = B.orders;
    C.dlogs = B.dlogs;
    C.exponent = B.exponent;
    return C;
}

int class_of(const QuadField& K, const ClassGroup& C, const QuadIdeal& I) {
    for (std::size_t j = 0; j < C.reps.size(); ++j) {
        if (is_principal(K, ideal_mul(K, I, ideal_conj(K, C.reps[j])))) return (int)j;
    }
    throw InternalCheckFailed("ideal class missing from the enumerated class group");
}

// --- ray class group --------------------------------------------------------------

QuadInt RayClassGroup::reduce(const QuadInt& g) const {
    const PolyRing& R = K_.ring();
    if (sa_.deg() == 0) return K_.zero();
    Poly t = g.y.is_zero() ? R.zero() : R.div(g.y, f_.s);
    Poly y = R.sub(g.y, R.mul(t, f_.s));
    Poly x = R.sub(g.x, R.mul(t, R.mul(f_.s, f_.b)));
    x = R.mod(x, sa_);
    return {std::move(x), std::move(y)};
}

std::uint64_t RayClassGroup::reduce_key(const QuadInt& g) const {
    const PolyRing& R = K_.ring();
    QuadInt r = reduce(g);
    return R.key_low(r.x, sa_.deg()) + keys_x_ * R.key_low(r.y, f_.s.deg());
}

QuadInt RayClassGroup::residue_mul(const QuadInt& a, const QuadInt& b) const {
    return reduce(K_.mul(a, b));
}

long long RayClassGroup::coset_of_key(std::uint64_t key) const {
    return coset_of_[(std::size_t)key];
}

RayClassGroup::RayClassGroup(const QuadField& K, const ClassGroup& C, QuadIdeal modulus)
    : K_(K), C_(C), f_(std::move(modulus)) {
    const PolyRing& R = K_.ring();
    if (f_.zero) throw ZeroModulus("ray class modulus is the zero ideal");
    sa_ = R.mul(f_.s, f_.a);
    keys_x_ = pow_u64(R.q(), sa_.deg());
    keys_y_ = pow_u64(R.q(), f_.s.deg());
    const std::uint64_t keys = keys_x_ * keys_y_;
    if (keys > 2000000) throw GroupTooLarge("residue ring larger than 2e6");
    const bool trivial_ring = sa_.deg() == 0;

    // prime divisors of f and the phi formula
    std::uint64_t phi_formula = 1;
    if (sa_.deg() > 0) {
        for (auto& pf : R.factor(sa_)) {
            for (auto& P : ideal_factor(K_, pf.p).primes) {
                int v = ideal_val(K_, f_, P);
                if (v <= 0) continue;
                bool dup = false;
                for (auto& Q : f_primes_)
                    if (Q == P) dup = true;
                if (dup) continue;
                f_primes_.push_back(P);
                f_prime_vals_.push_back(v);
                std::uint64_t NP = pow_u64(R.q(), (int)P.norm_exp());
                std::uint64_t term = NP - 1;
                for (int e = 1; e < v; ++e) term *= NP;
                phi_formula *= term;
            }
        }
    }

    // coprime residues
    auto residue_of_key = [&](std::uint64_t key) {
        return QuadInt{R.poly_from_key(key % keys_x_, sa_.deg(), false),
                       R.poly_from_key(key / keys_x_, f_.s.deg(), false)};
    };
    std::vector<std::uint64_t> unit_keys;
    std::vector<QuadInt> unit_res;
    std::vector<std::int64_t> unit_index(keys, -1);
    for (std::uint64_t key = 0; key < keys; ++key) {
        QuadInt r = residue_of_key(key);
        bool coprime = true;
        for (auto& P : f_primes_) {
            if (ideal_contains(K_, P, r)) {
                coprime = false;
                break;
            }
        }
        if (!coprime) continue;
        unit_index[key] = (std::int64_t)unit_keys.size();
        unit_keys.push_back(key);
        unit_res.push_back(r);
    }
    phi_ = unit_keys.size();
    if (phi_ != phi_formula) throw InternalCheckFailed("phi(f) disagrees with the formula");
    if (phi_ > 500000) throw GroupTooLarge("phi(f) > 5e5");

    // structure of (A/f)^* (only needed to invert residues; verified)
    const std::uint64_t one_key = trivial_ring ? 0 : reduce_key(K_.one());
    int idn = (int)unit_index[one_key];
    auto mulfn = [&](int i, int j) {
        std::uint64_t k = reduce_key(K_.mul(unit_res[(std::size_t)i], unit_res[(std::size_t)j]));
        std::int64_t idx = unit_index[k];
        if (idx < 0) throw InternalCheckFailed("product of units is not a unit");
        return (int)idx;
    };
    AbelianBasis UB = abelian_basis((int)phi_, mulfn, idn);
    const long long unit_exponent = UB.exponent;

    // image of the unit group of A
    std::vector<std::uint64_t> image_keys;
    for (auto& u : K_.units()) {
        std::uint64_t k = trivial_ring ? 0 : reduce_key(u);
        if (std::find(image_keys.begin(), image_keys.end(), k) == image_keys.end())
            image_keys.push_back(k);
    }
    unit_image_ = (long long)image_keys.size();
    if (phi_ % (std::uint64_t)unit_image_ != 0)
        throw InternalCheckFailed("#U(f) does not divide phi(f)");

    // cosets of the unit image, labelled by ascending lex-min representative
    coset_of_.assign(keys, -1);
    n_cosets_ = 0;
    for (std::uint64_t key : unit_keys) {
        if (coset_of_[key] >= 0) continue;
        coset_rep_key_.push_back(key);
        for (std::uint64_t ik : image_keys) {
            std::uint64_t pk =
                trivial_ring ? 0
                             : reduce_key(K_.mul(residue_of_key(key), residue_of_key(ik)));
            if (coset_of_[pk] >= 0 && coset_of_[pk] != n_cosets_)
                throw InternalCheckFailed("unit image orbits are inconsistent");
            coset_of_[pk] = n_cosets_;
        }
        ++n_cosets_;
    }
    if (n_cosets_ != (long long)(phi_ / (std::uint64_t)unit_image_))
        throw InternalCheckFailed("coset count != phi / #U");

    h_f_ = C_.h * n_cosets_;
    if (h_f_ > 100000) throw GroupTooLarge("h(f) > 1e5");

    // coprime representatives of the class-group basis
    for (int t = 0; t < (int)C_.gen_classes.size(); ++t) {
        int target = C_.gen_classes[(std::size_t)t];
        QuadIdeal found;
        bool ok = false;
        for (int n = 0; n <= 2 * K_.genus() + 6 && !ok; ++n) {
            for_each_ideal_of_norm(K_, n, [&](const QuadIdeal& I) {
                if (ok) return;
                for (auto& P : f_primes_)
                    if (ideal_divides(K_, P, I)) return;
                if (class_of(K_, C_, I) == target) {
                    found = I;
                    ok = true;
                }
            });
        }
        if (!ok) throw InternalCheckFailed("no coprime representative for a basis class");
        basis_reps_.push_back(found);
    }

    // P(d) per class with norm generators and their residue inverses
    auto residue_pow = [&](QuadInt r, std::uint64_t e) {
        QuadInt acc = reduce(K_.one());
        while (e) {
            if (e & 1) acc = residue_mul(acc, r);
            r = residue_mul(r, r);
            e >>= 1;
        }
        return acc;
    };
    for (long long c = 0; c < C_.h; ++c) {
        QuadIdeal P = ideal_unit(K_);
        const auto& d = C_.dlogs[(std::size_t)c];
        for (std::size_t t = 0; t < basis_reps_.size(); ++t)
            for (long long e = 0; e < d[t]; ++e) P = ideal_mul(K_, P, basis_reps_[t]);
        class_prod_.push_back(P);
        Poly ngen = R.mul(R.mul(P.s, P.s), P.a);
        class_prod_norm_.push_back(ngen);
        if (trivial_ring) {
            class_prod_norm_inv_.push_back(K_.zero());
        } else {
            QuadInt nres = reduce(K_.from_base(ngen));
            QuadInt inv = residue_pow(nres, (std::uint64_t)unit_exponent - 1);
            if (!(residue_mul(nres, inv) == reduce(K_.one())))
                throw InternalCheckFailed("norm generator inverse failed");
            class_prod_norm_inv_.push_back(inv);
        }
    }

    // representative ideal per ray index
    reps_.resize((std::size_t)h_f_);
    for (long long c = 0; c < C_.h; ++c) {
        for (long long cs = 0; cs < n_cosets_; ++cs) {
            QuadInt lift =
                trivial_ring ? K_.one() : residue_of_key(coset_rep_key_[(std::size_t)cs]);
            reps_[(std::size_t)(c * n_cosets_ + cs)] =
                ideal_mul(K_, class_prod_[(std::size_t)c], ideal_principal(K_, lift));
        }
    }
    identity_ = ray_index(ideal_unit(K_));
    if (identity_ < 0) throw InternalCheckFailed("unit ideal has no ray class");

    basis_ = abelian_basis(
        (int)h_f_,
        [&](int i, int j) {
            long long idx = ray_index(ideal_mul(K_, reps_[(std::size_t)i], reps_[(std::size_t)j]));
            if (idx < 0) throw InternalCheckFailed("ray product left the coprime ideals");
            return (int)idx;
        },
        (int)identity_);

    // character exponent vectors over the basis, principal character first
    std::vector<std::uint64_t> e(basis_.orders.size(), 0);
    while (true) {
        chars_.push_back(e);
        int i = (int)e.size() - 1;
        while (i >= 0 && e[(std::size_t)i] + 1 == (std::uint64_t)basis_.orders[(std::size_t)i])
            e[(std::size_t)i--] = 0;
        if (i < 0) break;
        ++e[(std::size_t)i];
    }
    if ((long long)chars_.size() != h_f_) throw InternalCheckFailed("character count != h(f)");
}

long long RayClassGroup::ray_index(const QuadIdeal& J) const {
    if (J.zero) return -1;
    for (auto& P : f_primes_)
        if (ideal_divides(K_, P, J)) return -1;
    int c;
    std::optional<QuadInt> gen;
    if (C_.h == 1) {
        c = 0;
        gen = is_principal(K_, J);
    } else {
        c = class_of(K_, C_, J);
        gen = is_principal(K_, ideal_mul(K_, J, ideal_conj(K_, class_prod_[(std::size_t)c])));
    }
    if (!gen) throw InternalCheckFailed("class discrete log is inconsistent");
    if (sa_.deg() == 0) return (long long)c * n_cosets_;  // trivial residue ring
    QuadInt r = residue_mul(reduce(*gen), class_prod_norm_inv_[(std::size_t)c]);
    long long coset = coset_of_key(reduce_key(r));
    if (coset < 0) throw InternalCheckFailed("ray residue is not a unit");
    return (long long)c * n_cosets_ + coset;
}

long long RayClassGroup::ray_index_element(const QuadInt& b) const {
    if (b.is_zero()) return -1;
    if (sa_.deg() == 0) return 0 * n_cosets_ + 0;
    std::uint64_t key = reduce_key(b);
    long long coset = coset_of_[key];
    if (coset < 0) return -1;
    return coset;  // class part of a principal ideal is 0
}

long long RayClassGroup::chi_exponent(std::size_t chi, long long ray_idx) const {
    const auto& e = chars_[chi];
    const auto& d = basis_.dlogs[(std::size_t)ray_idx];
    unsigned __int128 acc = 0;
    for (std::size_t t = 0; t < e.size(); ++t) {
        std::uint64_t w = (std::uint64_t)((unsigned __int128)d[t] *
                                          ((std::uint64_t)basis_.exponent /
                                           (std::uint64_t)basis_.orders[t]) %
                                          (std::uint64_t)basis_.exponent);
        acc += (unsigned __int128)e[t] * w;
    }
    return (long long)(acc % (std::uint64_t)basis_.exponent);
}

bool RayClassGroup::ray_trivial_oracle(const QuadIdeal& J) const {
    auto gen = is_principal(K_, J);
    if (!gen) return false;
    for (auto& u : K_.units()) {
        if (ideal_contains(K_, f_, K_.sub(*gen, u))) return true;
    }
    return false;
}

CycSum hecke_prime_sum(const RayClassGroup& H, std::size_t chi, IrreducibleTables& tabs, int N) {
    RayPrimeHistogram hist = hecke_prime_histogram(H, tabs, N);
    CycSum s(H.order_R());
    for (long long idx = 0; idx < (long long)hist.by_ray.size(); ++idx) {
        long long cnt = hist.by_ray[(std::size_t)idx];
        if (!cnt) continue;
        s.add(H.chi_exponent(chi, idx), cnt);
    }
    return s;
}

RayPrimeHistogram hecke_prime_histogram(const RayClassGroup& H, IrreducibleTables& tabs, int N) {
    RayPrimeHistogram out;
    out.by_ray.assign((std::size_t)H.h_f(), 0);
    for_each_prime_ideal_of_norm(H.field(), tabs, N, [&](const QuadIdeal& P) {
        ++out.total;
        long long idx = H.ray_index(P);
        if (idx < 0)
            ++out.dividing_modulus;
        else
            ++out.by_ray[(std::size_t)idx];
    });
    return out;
}

IdealCountBox ideal_count_box(const QuadField& K, const ZetaData& Z, const ClassGroup& C,
                              const QuadIdeal& Dideal, int U) {
    const PolyRing& R = K.ring();
    if (Dideal.zero) throw ZeroModulus("box count with zero ideal");
    long double size = std::pow((long double)R.q(), (long double)U);
    if (size > 1.0e7L) throw RangeTooLarge("q^U > 1e7 in ideal_count_box");

    const int ds = Dideal.s.deg(), da = Dideal.a.deg(), dD = K.D().deg();
    const std::uint64_t q = R.q();
    long long count = 0;
    bool zero_counted = false;

    // elements of Dideal are s(X + v sqrtD) with X = b0 v + a w; for each v
    // the X of degree <= Xmax form an explicit box
    long long Xmax2 = (long long)U - 2 * ds;  // 2 deg X <= Xmax2
    if (Xmax2 >= -1) {
        long long Xmax = Xmax2 >= 0 ? Xmax2 / 2 : -1;
        auto count_for_v = [&](const Poly& v) {
            if (!v.is_zero() && 2 * v.deg() + dD > Xmax2) return;  // norm too large
            Poly rv = R.mod(R.mul(Dideal.b, v), Dideal.a);
            long long c = 0;
            if (rv.deg() <= Xmax) {
                c = 1;  // w = 0
                if (Xmax >= da) {
                    std::uint64_t ws = 1;
                    for (long long i = 0; i < Xmax - da + 1; ++i) ws *= q;
                    c = (long long)ws;
                }
                if (v.is_zero()) zero_counted = true;
            }
            count += c;
        };
        count_for_v(R.zero());
        long long vmax = (Xmax2 - dD) / 2;
        if (vmax >= 0)
            R.for_each_nonzero_deg_le((int)vmax, [&](const Poly& v) { count_for_v(v); });
    }
    if (zero_counted) --count;

    IdealCountBox out;
    out.element_count = count;
    long long units = (long long)K.units().size();
    if (count % units != 0)
        throw InternalCheckFailed("element count is not a multiple of the unit count");
    out.ideal_count = count / units;
    out.constant = Z.c_elements(R.q(), C.h, units);
    out.prediction =
        out.constant.to_double() * std::pow((double)q, (double)U) /
        std::pow((double)q, (double)Dideal.norm_exp());
    out.deviation = std::abs((double)count - out.prediction);
    return out;
}

}  // namespace lsieve
