#pragma once

// The constants A, c, lambda derived from an admissible coefficient vector and
// the resulting lower bound |L(1, chi)| >= F(s(q)) / (lambda log(q / pi)).

#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <string>

#include "lbound/error.hpp"
#include "lbound/specialfn.hpp"
#include "lbound/trigpoly.hpp"

namespace lbound {

struct LouboutinConstants {
    double A = 0.0;
    double c = 0.0;
    double lambda = 0.0;
    double q_min = 0.0;  ///< smallest conductor with s(q) <= 1.92326

    friend bool operator==(const LouboutinConstants&, const LouboutinConstants&) = default;
};

struct BoundReport {
    double q = 0.0;
    double s_q = 0.0;
    double F_value = 0.0;
    double bound = 0.0;  ///< F(s(q)) / (lambda log(q / pi))
    bool valid = false;
    std::string reason;

    friend bool operator==(const BoundReport&, const BoundReport&) = default;
};

namespace detail {

inline constexpr double kInvSqrt5 = 0.44721359549995793928183473374626;

struct RawConstants {
    double A;
    double c;
    double denominator;  ///< (2 a_1 - a_0) c - (a_1 + A)
    double lambda;
};

/// The constant formulas without precondition checks; used on the search hot path.
inline RawConstants raw_constants(std::span<const double> a) noexcept {
    double tail = 0.0;
    for (std::size_t k = 2; k < a.size(); ++k) tail += a[k];
    const double A = (1.0 - kInvSqrt5) * tail;
    const double gap = 2.0 * a[1] - a[0];
    const double a1A = a[1] + A;
    const double c = (a[0] + 2.0 * a[1] + 4.0 * A + std::sqrt(gap * gap + 16.0 * a1A * a1A)) / (4.0 * gap);
    const double denominator = gap * c - a1A;
    constexpr double pi2 = std::numbers::pi * std::numbers::pi;
    const double lambda = 12.0 * a[1] * c * c / (pi2 * std::exp(1.0 / (2.0 * c)) * denominator);
    return {A, c, denominator, lambda};
}

}  // namespace detail

/// lambda for an admissible vector, or nullopt when inadmissible or degenerate.
inline std::optional<double> try_lambda(std::span<const double> a) noexcept {
    if (!is_admissible(a)) return std::nullopt;
    const auto raw = detail::raw_constants(a);
    if (!(raw.denominator > 0.0) || !std::isfinite(raw.lambda)) return std::nullopt;
    return raw.lambda;
}

/// s(q) = 1 + 1 / (c log(q / pi)).
inline double s_of_q(double c, double q) {
    if (!(c > 0.0)) throw DomainError("s_of_q: c must be > 0");
    if (!(q > std::numbers::pi)) throw DomainError("s_of_q: q must exceed pi");
    return 1.0 + 1.0 / (c * std::log(q / std::numbers::pi));
}

/// Conductor at which s(q) = 1.92326.
inline double q_threshold(double c) { return std::numbers::pi * std::exp(1.0 / ((kMaxS - 1.0) * c)); }

/// A, c, lambda and q_min for an admissible vector. The exponent e^{1/2c} reads as e^{1/(2c)}.
inline LouboutinConstants derive_constants(const CoefficientVector& v) {
    if (!is_admissible(v)) throw PreconditionError("derive_constants: vector is not admissible");
    const auto raw = detail::raw_constants(v.coeffs());
    if (!(raw.denominator > 0.0)) throw DegenerateError("derive_constants: (2a1 - a0) c - (a1 + A) <= 0");
    return {raw.A, raw.c, raw.lambda, q_threshold(raw.c)};
}

/// Lower bound at conductor q. `nonnegative` is the caller's assertion that
/// S(a, chi, n) >= 0 for all n (the bound's positivity hypothesis).
inline BoundReport bound_at(const CoefficientVector& v, double q, bool nonnegative = true) {
    const auto k = derive_constants(v);
    BoundReport r;
    r.q = q;
    r.s_q = s_of_q(k.c, q);
    const double log_term = std::log(q / std::numbers::pi);
    if (r.s_q <= 3.0) {
        r.F_value = F_of_s(r.s_q);
        r.bound = r.F_value / (k.lambda * log_term);
    }
    if (!nonnegative) {
        r.reason = "nonnegativity hypothesis not asserted";
    } else if (r.s_q > kMaxS) {
        r.reason = "s(q) exceeds 1.92326; q below q_min";
    } else {
        r.valid = true;
        r.reason = "ok";
    }
    return r;
}

/// lambda / F(s(q0)): the constant valid for every q >= q0.
inline double all_q_constant(const CoefficientVector& v, double q0) {
    const auto k = derive_constants(v);
    const double s = s_of_q(k.c, q0);
    if (s > 3.0) throw DomainError("all_q_constant: s(q0) outside the domain of F");
    return k.lambda / F_of_s(s);
}

}  // namespace lbound
