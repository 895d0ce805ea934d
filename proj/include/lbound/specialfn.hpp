#pragma once

// Real special functions on s > 1: log-gamma, digamma, Riemann zeta and its
// derivative, and the auxiliary functions F, tau, G_0, G_1 that constrain the
// admissible range of s.

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>

#include "lbound/error.hpp"

namespace lbound {

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

/// Largest s for which F(s) is known to be decreasing and the bound applies.
inline constexpr double kMaxS = 1.92326;

/// Upper end of the verified range for odd characters in the G-function lemma.
inline constexpr double kOddSRange = 2.28266;
/// Upper end of the verified range for even characters.
inline constexpr double kEvenSRange = 2.97675;

enum class Parity { even = 0, odd = 1 };

namespace detail {

/// B_2, B_4, ..., B_30.
inline constexpr std::array<double, 15> kBernoulliEven = {
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
};

inline constexpr double kAsymptoticShift = 15.0;
inline constexpr int kStirlingTerms = 8;

/// Value and remainder bound of a truncated Euler-Maclaurin expansion.
struct SeriesValue {
    double value;
    double remainder;
};

inline constexpr std::size_t kZetaCutoff = 10;
inline constexpr std::size_t kZetaMaxTerms = kBernoulliEven.size();

/// Euler-Maclaurin tail  sum_k B_2k/(2k)! (s)_{2k-1} N^{-s-2k+1}  and its derivative in s.
/// Terms are added until they fall below machine precision relative to `scale`.
struct EmTail {
    double value = 0.0;
    double derivative = 0.0;
    double remainder = 0.0;
};

inline EmTail euler_maclaurin_tail(double s, double scale) {
    const double n = static_cast<double>(kZetaCutoff);
    const double log_n = std::log(n);
    EmTail tail;
    // rising = s (s+1) ... (s+2k-2); d_rising = d/ds rising.
    double rising = s;
    double d_rising = 1.0;
    double factorial = 2.0;                 // (2k)!
    double power = std::pow(n, -s - 1.0);   // N^{-s-2k+1}
    for (std::size_t k = 1; k <= kZetaMaxTerms; ++k) {
        const double coef = kBernoulliEven[k - 1] / factorial;
        const double term = coef * rising * power;
        const double d_term = coef * (d_rising - rising * log_n) * power;
        tail.value += term;
        tail.derivative += d_term;
        tail.remainder = std::abs(term);
        if (std::abs(term) < 0.25 * std::numeric_limits<double>::epsilon() * std::abs(scale) &&
            std::abs(d_term) < 0.25 * std::numeric_limits<double>::epsilon() * std::abs(scale)) {
            break;
        }
        // Advance (s)_{2k-1} -> (s)_{2k+1}.
        const double a = s + static_cast<double>(2 * k - 1);
        const double b = s + static_cast<double>(2 * k);
        d_rising = d_rising * a * b + rising * (a + b);
        rising *= a * b;
        factorial *= static_cast<double>((2 * k + 1) * (2 * k + 2));
        power /= n * n;
    }
    return tail;
}

struct ZetaParts {
    double head;        // sum_{n<N} n^{-s}
    double d_head;      // -sum_{n<N} log(n) n^{-s}
    double n_pow;       // N^{-s}
};

inline ZetaParts zeta_parts(double s) {
    ZetaParts p{0.0, 0.0, 0.0};
    for (std::size_t k = kZetaCutoff - 1; k >= 1; --k) {
        const double kk = static_cast<double>(k);
        const double t = std::pow(kk, -s);
        p.head += t;
        p.d_head -= std::log(kk) * t;
    }
    p.n_pow = std::pow(static_cast<double>(kZetaCutoff), -s);
    return p;
}

}  // namespace detail

/// log Gamma(x) for x > 0: upward recurrence to x >= 15, then Stirling's series.
inline double ln_gamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("ln_gamma: x must be > 0");
    double shift = 0.0;
    while (x < detail::kAsymptoticShift) {
        shift += std::log(x);
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    double series = 0.0;
    double p = inv;
    for (int k = 1; k <= detail::kStirlingTerms; ++k) {
        series += detail::kBernoulliEven[static_cast<std::size_t>(k - 1)] / (2.0 * k * (2.0 * k - 1.0)) * p;
        p *= inv2;
    }
    return (x - 0.5) * std::log(x) - x + 0.5 * std::log(2.0 * std::numbers::pi) + series - shift;
}

/// psi(x) = Gamma'(x)/Gamma(x) for x > 0.
inline double digamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("digamma: x must be > 0");
    double shift = 0.0;
    while (x < detail::kAsymptoticShift) {
        shift += 1.0 / x;
        x += 1.0;
    }
    const double inv2 = 1.0 / (x * x);
    double series = 0.0;
    double p = inv2;
    for (int k = 1; k <= detail::kStirlingTerms; ++k) {
        series += detail::kBernoulliEven[static_cast<std::size_t>(k - 1)] / (2.0 * k) * p;
        p *= inv2;
    }
    return std::log(x) - 0.5 / x - series - shift;
}

/// zeta(s) for real s > 1 with its Euler-Maclaurin remainder bound.
inline detail::SeriesValue zeta_with_bound(double s) {
    if (!(s > 1.0) || !std::isfinite(s)) throw DomainError("zeta: s must be > 1");
    const auto p = detail::zeta_parts(s);
    const double n = static_cast<double>(detail::kZetaCutoff);
    const double pole = p.n_pow * n / (s - 1.0);
    const double base = p.head + pole + 0.5 * p.n_pow;
    const auto tail = detail::euler_maclaurin_tail(s, base);
    return {base + tail.value, tail.remainder};
}

/// Riemann zeta on s > 1.
inline double zeta(double s) { return zeta_with_bound(s).value; }

/// (s - 1) zeta(s), finite at s = 1. Below s - 1 = 1e-6 the Laurent expansion 1 + gamma (s-1) is used.
inline double zeta_times_pole(double s) {
    if (!(s > 1.0) || !std::isfinite(s)) throw DomainError("zeta_times_pole: s must be > 1");
    const double eps = s - 1.0;
    if (eps < 1e-6) return 1.0 + kEulerGamma * eps;
    const auto p = detail::zeta_parts(s);
    const double n = static_cast<double>(detail::kZetaCutoff);
    const double base = p.head + 0.5 * p.n_pow;
    const auto tail = detail::euler_maclaurin_tail(s, base);
    return p.n_pow * n + eps * (base + tail.value);
}

/// zeta'(s) for s > 1, by termwise differentiation of the Euler-Maclaurin formula.
inline double zeta_prime(double s) {
    if (!(s > 1.0) || !std::isfinite(s)) throw DomainError("zeta_prime: s must be > 1");
    const auto p = detail::zeta_parts(s);
    const double n = static_cast<double>(detail::kZetaCutoff);
    const double log_n = std::log(n);
    const double eps = s - 1.0;
    const double n_pow1 = p.n_pow * n;  // N^{1-s}
    const double d_pole = -n_pow1 * log_n / eps - n_pow1 / (eps * eps);
    const double d_half = -0.5 * log_n * p.n_pow;
    const double base = p.d_head + d_pole + d_half;
    const auto tail = detail::euler_maclaurin_tail(s, base);
    return base + tail.derivative;
}

/// tau(s) = (1 + sqrt(1 + 4 s^2)) / 2.
inline double tau(double s) noexcept { return 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * s * s)); }

/// F(s) = Gamma(s/2) zeta(2s) / (Gamma(1/2) zeta(2) zeta(s) (s-1)) on (1, 3].
inline double F_of_s(double s) {
    if (!(s > 1.0 && s <= 3.0)) throw DomainError("F_of_s: s must lie in (1, 3]");
    constexpr double zeta2 = std::numbers::pi * std::numbers::pi / 6.0;
    const double gamma_ratio = std::exp(ln_gamma(0.5 * s) - 0.5 * std::log(std::numbers::pi));
    return gamma_ratio * zeta(2.0 * s) / (zeta2 * zeta_times_pole(s));
}

namespace detail {

inline double g_component(double s, double shift) {
    constexpr double inv_sqrt5 = 0.44721359549995793928183473374626;
    const double t = tau(s);
    return digamma(0.5 * (s + shift)) - inv_sqrt5 * digamma(0.5 * (t + shift)) -
           2.0 * inv_sqrt5 * zeta_prime(t) / zeta(t);
}

}  // namespace detail

/// G_0(s): the per-coefficient G-term for epsilon(chi^k) = 0.
inline double G0(double s) {
    if (!(s > 1.0)) throw DomainError("G0: s must be > 1");
    return detail::g_component(s, 0.0);
}

/// G_1(s): the per-coefficient G-term for epsilon(chi^k) = 1.
inline double G1(double s) {
    if (!(s > 1.0)) throw DomainError("G1: s must be > 1");
    return detail::g_component(s, 1.0);
}

/// G(a, chi, s) = sum_{k>=2} a_k (G_0 or G_1 by the parity of chi^k).
/// For even chi every power is even; for odd chi, chi^k has parity k mod 2.
inline double G_value(std::span<const double> a, Parity parity, double s) {
    if (!(s > 1.0)) throw DomainError("G_value: s must be > 1");
    double even_sum = 0.0;
    double odd_sum = 0.0;
    for (std::size_t k = 2; k < a.size(); ++k) {
        if (parity == Parity::odd && k % 2 == 1) odd_sum += a[k];
        else even_sum += a[k];
    }
    double g = 0.0;
    if (even_sum != 0.0) g += even_sum * G0(s);
    if (odd_sum != 0.0) g += odd_sum * G1(s);
    return g;
}

struct GridCheckReport {
    double s_lo = 0.0;    ///< first grid point checked
    double s_hi = 0.0;    ///< last grid point checked (= s_max)
    double step = 0.0;
    double margin = std::numeric_limits<double>::infinity();  ///< least slack over all checked inequalities
    double worst_s = 0.0;  ///< where the least slack occurred
    std::size_t points = 0;
    bool pass = false;
};

/// Checks the G-function sign conditions on the grid 1 + step, 1 + 2 step, ..., s_max.
/// Odd parity: G_0 <= 0, G_1 >= 0 and G_1 <= -G_0. Even parity: G_0 <= 0.
inline GridCheckReport verify_G_inequalities(Parity parity, double s_max, double step) {
    if (!(step > 0.0)) throw DomainError("verify_G_inequalities: step must be > 0");
    if (!(s_max > 1.0)) throw DomainError("verify_G_inequalities: s_max must be > 1");
    GridCheckReport report;
    report.step = step;
    report.s_hi = s_max;
    const auto n = static_cast<std::size_t>(std::floor((s_max - 1.0) / step + 1e-9));
    auto check = [&](double s) {
        const double g0 = G0(s);
        double slack = -g0;
        if (parity == Parity::odd) {
            const double g1 = G1(s);
            slack = std::min({slack, g1, -g0 - g1});
        }
        if (slack < report.margin) {
            report.margin = slack;
            report.worst_s = s;
        }
        ++report.points;
    };
    for (std::size_t i = 1; i <= n; ++i) {
        const double s = 1.0 + static_cast<double>(i) * step;
        if (i == 1) report.s_lo = s;
        check(s);
    }
    const double last = 1.0 + static_cast<double>(n) * step;
    if (n == 0 || s_max - last > 1e-12) {
        if (n == 0) report.s_lo = s_max;
        check(s_max);
    }
    report.pass = report.margin >= 0.0;
    return report;
}

}  // namespace lbound
