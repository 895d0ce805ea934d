#pragma once

// Dirichlet characters built from generators of (Z/qZ)^* prime-power factor by
// prime-power factor: a primitive root for odd p^e, and -1, 5 for 2^e.
// A character is a tuple of exponents on those generators; its values are
// exact phases n -> r(n) / D, where D is the exponent of the group.

#include <algorithm>
#include <complex>
#include <cstdint>
#include <memory>
#include <numbers>
#include <numeric>
#include <optional>
#include <span>
#include <thread>
#include <vector>

#include "lbound/error.hpp"
#include "lbound/specialfn.hpp"
#include "lbound/trigpoly.hpp"

namespace lbound {

struct PrimePower {
    long p;
    int e;
    long pe;
};

inline std::vector<PrimePower> factorize(long n) {
    std::vector<PrimePower> out;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        PrimePower f{p, 0, 1};
        while (n % p == 0) {
            n /= p;
            ++f.e;
            f.pe *= p;
        }
        out.push_back(f);
    }
    if (n > 1) out.push_back({n, 1, n});
    return out;
}

namespace detail {

inline long mulmod(long a, long b, long m) { return static_cast<long>((static_cast<__int128>(a) * b) % m); }

inline long powmod(long base, long exp, long m) {
    long r = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

/// A primitive root modulo p that is also one modulo p^2 (hence modulo every p^e).
inline long primitive_root_odd(long p) {
    const auto factors = factorize(p - 1);
    for (long g = 2; g < p; ++g) {
        bool ok = true;
        for (const auto& f : factors) {
            if (powmod(g, (p - 1) / f.p, p) == 1) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        if (powmod(g, p - 1, p * p) == 1) return g + p;
        return g;
    }
    return 2;  // p = 3 handled above; unreachable for odd primes
}

inline int valuation(long n, long p) {
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

}  // namespace detail

/// Generators and discrete-log tables for (Z/qZ)^*.
class DirichletGroup {
public:
    struct Generator {
        std::size_t factor;  ///< index into factors()
        long order;
    };

    explicit DirichletGroup(long q) : q_(q), factors_(factorize(q)) {
        if (q < 1) throw DomainError("DirichletGroup: modulus must be >= 1");
        // Per-factor local logs: local[g][x mod p^e].
        std::vector<std::vector<int>> local;
        for (std::size_t f = 0; f < factors_.size(); ++f) {
            const auto& pp = factors_[f];
            if (pp.p == 2) {
                if (pp.e == 1) continue;
                std::vector<int> minus_one(static_cast<std::size_t>(pp.pe), -1);
                if (pp.e == 2) {
                    minus_one[1] = 0;
                    minus_one[3] = 1;
                    generators_.push_back({f, 2});
                    local.push_back(std::move(minus_one));
                    continue;
                }
                std::vector<int> five(static_cast<std::size_t>(pp.pe), -1);
                const long half_order = pp.pe / 4;
                for (int a = 0; a < 2; ++a) {
                    long x = a == 0 ? 1 : pp.pe - 1;
                    for (long b = 0; b < half_order; ++b) {
                        minus_one[static_cast<std::size_t>(x)] = a;
                        five[static_cast<std::size_t>(x)] = static_cast<int>(b);
                        x = x * 5 % pp.pe;
                    }
                }
                generators_.push_back({f, 2});
                local.push_back(std::move(minus_one));
                generators_.push_back({f, half_order});
                local.push_back(std::move(five));
            } else {
                const long g = detail::primitive_root_odd(pp.p) % pp.pe;
                const long phi = pp.pe / pp.p * (pp.p - 1);
                std::vector<int> logs(static_cast<std::size_t>(pp.pe), -1);
                long x = 1;
                for (long t = 0; t < phi; ++t) {
                    logs[static_cast<std::size_t>(x)] = static_cast<int>(t);
                    x = x * g % pp.pe;
                }
                generators_.push_back({f, phi});
                local.push_back(std::move(logs));
            }
        }
        exponent_ = 1;
        for (const auto& g : generators_) exponent_ = std::lcm(exponent_, g.order);

        const std::size_t ng = generators_.size();
        logs_.assign(static_cast<std::size_t>(q) * ng, -1);
        coprime_.assign(static_cast<std::size_t>(q), false);
        for (long n = 0; n < q; ++n) {
            coprime_[static_cast<std::size_t>(n)] = std::gcd(n, q) == 1;
            for (std::size_t i = 0; i < ng; ++i) {
                const long pe = factors_[generators_[i].factor].pe;
                logs_[static_cast<std::size_t>(n) * ng + i] = local[i][static_cast<std::size_t>(n % pe)];
            }
        }
        roots_.resize(static_cast<std::size_t>(exponent_));
        for (long r = 0; r < exponent_; ++r) {
            const double t = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(exponent_);
            roots_[static_cast<std::size_t>(r)] = {std::cos(t), std::sin(t)};
        }
    }

    [[nodiscard]] long modulus() const noexcept { return q_; }
    [[nodiscard]] long exponent() const noexcept { return exponent_; }
    [[nodiscard]] std::span<const PrimePower> factors() const noexcept { return factors_; }
    [[nodiscard]] std::span<const Generator> generators() const noexcept { return generators_; }
    [[nodiscard]] long size() const noexcept {
        long s = 1;
        for (const auto& g : generators_) s *= g.order;
        return s;
    }
    [[nodiscard]] bool coprime(long n) const noexcept { return coprime_[static_cast<std::size_t>(reduce(n))]; }
    /// Discrete log of n on generator i; -1 when gcd(n, p) > 1 for that factor.
    [[nodiscard]] int log(long n, std::size_t i) const noexcept {
        return logs_[static_cast<std::size_t>(reduce(n)) * generators_.size() + i];
    }
    /// e^{2 pi i r / D}.
    [[nodiscard]] std::complex<double> root(long r) const noexcept { return roots_[static_cast<std::size_t>(r)]; }
    [[nodiscard]] long reduce(long n) const noexcept {
        const long r = n % q_;
        return r < 0 ? r + q_ : r;
    }

private:
    long q_;
    std::vector<PrimePower> factors_;
    std::vector<Generator> generators_;
    long exponent_ = 1;
    std::vector<int> logs_;
    std::vector<bool> coprime_;
    std::vector<std::complex<double>> roots_;
};

class DirichletCharacter {
public:
    DirichletCharacter(std::shared_ptr<const DirichletGroup> group, std::vector<long> exponents, long index = -1)
        : group_(std::move(group)), exps_(std::move(exponents)), index_(index) {
        const auto gens = group_->generators();
        if (exps_.size() != gens.size()) throw DomainError("DirichletCharacter: exponent count mismatch");
        for (std::size_t i = 0; i < gens.size(); ++i) {
            exps_[i] %= gens[i].order;
            if (exps_[i] < 0) exps_[i] += gens[i].order;
        }
        if (index_ < 0) {
            index_ = 0;
            for (std::size_t i = 0; i < gens.size(); ++i) index_ = index_ * gens[i].order + exps_[i];
        }
        order_ = 1;
        for (std::size_t i = 0; i < gens.size(); ++i)
            order_ = std::lcm(order_, gens[i].order / std::gcd(exps_[i], gens[i].order));
        conductor_ = 1;
        for (std::size_t f = 0; f < group_->factors().size(); ++f) conductor_ *= factor_conductor(f);
        const auto minus_one = phase(-1);
        odd_ = minus_one && *minus_one != 0;
    }

    [[nodiscard]] long modulus() const noexcept { return group_->modulus(); }
    [[nodiscard]] long conductor() const noexcept { return conductor_; }
    [[nodiscard]] long order() const noexcept { return order_; }
    [[nodiscard]] Parity parity() const noexcept { return odd_ ? Parity::odd : Parity::even; }
    [[nodiscard]] int epsilon() const noexcept { return odd_ ? 1 : 0; }
    [[nodiscard]] bool is_primitive() const noexcept { return conductor_ == modulus(); }
    [[nodiscard]] bool is_principal() const noexcept { return order_ == 1; }
    [[nodiscard]] bool is_quadratic() const noexcept { return order_ <= 2; }
    [[nodiscard]] long index() const noexcept { return index_; }
    [[nodiscard]] std::span<const long> exponents() const noexcept { return exps_; }
    [[nodiscard]] const DirichletGroup& group() const noexcept { return *group_; }
    [[nodiscard]] const std::shared_ptr<const DirichletGroup>& group_ptr() const noexcept { return group_; }

    /// chi(n) = e^{2 pi i r / D}: returns r, or nullopt when gcd(n, q) > 1.
    [[nodiscard]] std::optional<long> phase(long n) const noexcept {
        if (!group_->coprime(n)) return std::nullopt;
        const long D = group_->exponent();
        const auto gens = group_->generators();
        long r = 0;
        for (std::size_t i = 0; i < gens.size(); ++i) {
            const long l = group_->log(n, i);
            r = (r + exps_[i] * l % gens[i].order * (D / gens[i].order)) % D;
        }
        return r;
    }

    [[nodiscard]] std::complex<double> operator()(long n) const noexcept {
        const auto r = phase(n);
        return r ? group_->root(*r) : std::complex<double>(0.0, 0.0);
    }

    [[nodiscard]] DirichletCharacter conj() const {
        std::vector<long> e(exps_);
        for (auto& x : e) x = -x;
        return DirichletCharacter(group_, std::move(e));
    }

    /// The p-part order d_p for the factor of q divisible by p (1 if p does not divide q).
    [[nodiscard]] long component_order(long p) const noexcept {
        const auto gens = group_->generators();
        long d = 1;
        for (std::size_t i = 0; i < gens.size(); ++i) {
            if (group_->factors()[gens[i].factor].p != p) continue;
            d = std::lcm(d, gens[i].order / std::gcd(exps_[i], gens[i].order));
        }
        return d;
    }

    /// Conductor exponent data for factor f: returns p^c.
    [[nodiscard]] long factor_conductor(std::size_t f) const noexcept {
        const auto& pp = group_->factors()[f];
        const auto gens = group_->generators();
        if (pp.p == 2) {
            long a = 0, b_order = 1;
            int seen = 0;
            for (std::size_t i = 0; i < gens.size(); ++i) {
                if (gens[i].factor != f) continue;
                if (seen++ == 0) a = exps_[i];
                else b_order = gens[i].order / std::gcd(exps_[i], gens[i].order);
            }
            if (b_order > 1) return 1L << (detail::valuation(b_order, 2) + 2);
            return a != 0 ? 4 : 1;
        }
        const long d = component_order(pp.p);
        if (d == 1) return 1;
        long c = pp.p;
        for (int v = detail::valuation(d, pp.p); v > 0; --v) c *= pp.p;
        return c;
    }

    friend bool operator==(const DirichletCharacter& x, const DirichletCharacter& y) noexcept {
        return x.modulus() == y.modulus() && x.exps_ == y.exps_;
    }

private:
    std::shared_ptr<const DirichletGroup> group_;
    std::vector<long> exps_;
    long index_;
    long order_ = 1;
    long conductor_ = 1;
    bool odd_ = false;
};

/// Smallest f | q such that chi(n) = 1 for all n = 1 mod f coprime to q.
inline long conductor_brute_force(const DirichletCharacter& chi) {
    const long q = chi.modulus();
    for (long f = 1; f <= q; ++f) {
        if (q % f != 0) continue;
        bool trivial = true;
        for (long n = 1; n < q && trivial; n += f) {
            const auto r = chi.phase(n);
            if (r && *r != 0) trivial = false;
        }
        if (trivial) return f;
    }
    return q;
}

/// Every character mod q, in index order.
inline std::vector<DirichletCharacter> enumerate_all(long q) {
    auto group = std::make_shared<const DirichletGroup>(q);
    const auto gens = group->generators();
    std::vector<DirichletCharacter> out;
    const long total = group->size();
    out.reserve(static_cast<std::size_t>(total));
    std::vector<long> exps(gens.size(), 0);
    for (long idx = 0; idx < total; ++idx) {
        long rest = idx;
        for (std::size_t i = gens.size(); i-- > 0;) {
            exps[i] = rest % gens[i].order;
            rest /= gens[i].order;
        }
        out.emplace_back(group, exps, idx);
    }
    return out;
}

/// All primitive characters mod q (q >= 3), carrying conductor, order and parity.
inline std::vector<DirichletCharacter> enumerate_primitive(long q) {
    if (q < 3) throw DomainError("enumerate_primitive: q must be >= 3");
    std::vector<DirichletCharacter> out;
    for (auto& chi : enumerate_all(q)) {
        if (chi.is_primitive()) out.push_back(std::move(chi));
    }
    return out;
}

/// The primitive character inducing chi^k.
inline DirichletCharacter power_primitivized(const DirichletCharacter& chi, long k) {
    const auto& g = chi.group();
    const auto gens = g.generators();
    std::vector<long> powered(gens.size());
    for (std::size_t i = 0; i < gens.size(); ++i) {
        powered[i] = static_cast<long>(static_cast<__int128>(chi.exponents()[i]) * k % gens[i].order);
        if (powered[i] < 0) powered[i] += gens[i].order;
    }
    const DirichletCharacter imprimitive(chi.group_ptr(), powered);

    const long f = imprimitive.conductor();
    auto target = std::make_shared<const DirichletGroup>(f);
    std::vector<long> exps;
    auto find_factor = [&](long p) -> const PrimePower* {
        for (const auto& pp : g.factors())
            if (pp.p == p) return &pp;
        return nullptr;
    };
    std::size_t src = 0;
    for (const auto& tg : target->generators()) {
        const auto& target_pp = target->factors()[tg.factor];
        const auto* source_pp = find_factor(target_pp.p);
        const long drop = source_pp->pe / target_pp.pe;  // p^{e - c}
        // Locate the matching generator in the source group: same prime, same role (-1 vs 5 for p = 2).
        std::size_t role = 0;
        for (const auto& other : target->generators()) {
            if (&other == &tg) break;
            if (other.factor == tg.factor) ++role;
        }
        std::size_t seen = 0;
        for (src = 0; src < gens.size(); ++src) {
            if (g.factors()[gens[src].factor].p != target_pp.p) continue;
            if (seen++ == role) break;
        }
        const bool is_minus_one = target_pp.p == 2 && role == 0;
        exps.push_back(is_minus_one ? powered[src] : powered[src] / drop);
    }
    return DirichletCharacter(std::move(target), std::move(exps));
}

/// chi^k(n) != 0 (with chi^k primitivized) iff d_p | k for each prime p | gcd(q, n).
inline bool nonvanishing_pow(const DirichletCharacter& chi, long n, long k) {
    const long g = std::gcd(chi.modulus(), n < 0 ? -n : n);
    for (const auto& pp : factorize(g)) {
        if (k % chi.component_order(pp.p) != 0) return false;
    }
    return true;
}

/// a_0 + 2 sum_k a_k Re(chi^k(n)) with each power primitivized.
inline double S_chi(const CoefficientVector& v, const DirichletCharacter& chi, long n) {
    const auto a = v.coeffs();
    double s = 0.0;
    for (std::size_t k = 1; k < a.size(); ++k) {
        if (a[k] == 0.0) continue;
        s += a[k] * power_primitivized(chi, static_cast<long>(k))(n).real();
    }
    return a[0] + 2.0 * s;
}

/// psi(a / q) for a = 0..q-1 (entry 0 unused).
inline std::vector<double> digamma_table(long q) {
    std::vector<double> t(static_cast<std::size_t>(q), 0.0);
    for (long a = 1; a < q; ++a) t[static_cast<std::size_t>(a)] = digamma(static_cast<double>(a) / static_cast<double>(q));
    return t;
}

/// L(1, chi) = -(1/q) sum_{a=1}^{q-1} chi(a) psi(a/q) for non-principal chi mod q.
inline std::complex<double> L1(const DirichletCharacter& chi, std::span<const double> psi_table) {
    if (chi.is_principal()) throw DomainError("L1: principal character (pole at s = 1)");
    const long q = chi.modulus();
    if (q < 3) throw DomainError("L1: modulus must be >= 3");
    if (psi_table.size() != static_cast<std::size_t>(q)) throw DomainError("L1: digamma table size mismatch");
    std::complex<double> sum = 0.0;
    for (long a = 1; a < q; ++a) {
        const auto r = chi.phase(a);
        if (!r) continue;
        sum += chi.group().root(*r) * psi_table[static_cast<std::size_t>(a)];
    }
    return -sum / static_cast<double>(q);
}

inline std::complex<double> L1(const DirichletCharacter& chi) {
    if (chi.is_principal()) throw DomainError("L1: principal character (pole at s = 1)");
    if (chi.modulus() < 3) throw DomainError("L1: modulus must be >= 3");
    return L1(chi, digamma_table(chi.modulus()));
}

struct ScanRecord {
    long q = 0;
    long char_index = 0;
    long order = 0;
    int parity = 0;
    double L1_abs = 0.0;
    double product = 0.0;  ///< |L(1,chi)| log(q/pi)
    double ratio = 0.0;    ///< |L(1,chi)| / log(q/pi)

    friend bool operator==(const ScanRecord&, const ScanRecord&) = default;
};

struct ScanResult {
    ScanRecord min_product;
    ScanRecord max_ratio;
    std::vector<ScanRecord> table;
};

/// Records for every primitive non-quadratic character of conductor q.
inline std::vector<ScanRecord> scan_conductor(long q) {
    std::vector<ScanRecord> out;
    const auto psi = digamma_table(q);
    const double log_term = std::log(static_cast<double>(q) / std::numbers::pi);
    for (const auto& chi : enumerate_primitive(q)) {
        if (chi.is_quadratic()) continue;
        const double l = std::abs(L1(chi, psi));
        out.push_back({q, chi.index(), chi.order(), chi.epsilon(), l, l * log_term, l / log_term});
    }
    return out;
}

/// All primitive non-quadratic characters with 3 <= conductor <= q_max.
/// Extremal ties go to the smaller conductor, then the smaller character index.
inline ScanResult scan(long q_max, int threads = 1) {
    if (q_max < 5 || q_max > 10000) throw DomainError("scan: q_max must lie in [5, 10000]");
    const auto count = static_cast<std::size_t>(q_max - 2);
    std::vector<std::vector<ScanRecord>> per_q(count);
    const int workers = std::max(1, threads);
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) per_q[i] = scan_conductor(static_cast<long>(i) + 3);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < workers; ++t) {
            pool.emplace_back([&, t] {
                for (std::size_t i = static_cast<std::size_t>(t); i < count; i += static_cast<std::size_t>(workers))
                    per_q[i] = scan_conductor(static_cast<long>(i) + 3);
            });
        }
        for (auto& th : pool) th.join();
    }
    ScanResult result;
    bool first = true;
    for (auto& rows : per_q) {
        for (auto& row : rows) {
            if (first || row.product < result.min_product.product) result.min_product = row;
            if (first || row.ratio > result.max_ratio.ratio) result.max_ratio = row;
            first = false;
            result.table.push_back(row);
        }
    }
    return result;
}

}  // namespace lbound
