#pragma once

// Even real trigonometric polynomials in the normalization
//
//     S(a, theta) = a_0 + 2 * sum_{k=1}^{m} a_k cos(k theta)
//
// together with the autocorrelation parameterization a = b (*) b that makes
// S = |sum b_k e^{ik theta}|^2 nonnegative by construction.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lbound/error.hpp"

namespace lbound {

/// The coefficient vector (a_0, ..., a_m) of an even trigonometric polynomial.
/// Degree 0 (a single constant) is representable so that products and
/// autocorrelations of trivial inputs stay closed; admissibility needs m >= 1.
class CoefficientVector {
public:
    explicit CoefficientVector(std::vector<double> a, std::string label = {})
        : a_(std::move(a)), label_(std::move(label)) {
        if (a_.empty()) throw DomainError("coefficient vector must have at least one entry");
        for (double x : a_) {
            if (!std::isfinite(x)) throw DomainError("coefficient vector entries must be finite");
        }
    }
    CoefficientVector(std::initializer_list<double> a) : CoefficientVector(std::vector<double>(a)) {}

    [[nodiscard]] std::size_t degree() const noexcept { return a_.size() - 1; }
    [[nodiscard]] std::size_t size() const noexcept { return a_.size(); }
    [[nodiscard]] std::span<const double> coeffs() const noexcept { return a_; }
    [[nodiscard]] double operator[](std::size_t i) const noexcept { return a_[i]; }
    [[nodiscard]] const std::string& label() const noexcept { return label_; }

    [[nodiscard]] CoefficientVector scaled(double t) const {
        std::vector<double> out(a_);
        for (double& x : out) x *= t;
        return CoefficientVector(std::move(out), label_);
    }

    [[nodiscard]] CoefficientVector with_label(std::string label) const {
        return CoefficientVector(a_, std::move(label));
    }

    /// Exact coefficient equality; the label is metadata and is ignored.
    friend bool operator==(const CoefficientVector& x, const CoefficientVector& y) noexcept {
        return x.a_ == y.a_;
    }

private:
    std::vector<double> a_;
    std::string label_;
};

/// Generator b = (1, b_1, ..., b_m) whose aperiodic autocorrelation is a.
/// `bound` records the B used at random initialization (0 if not random).
class GeneratorSequence {
public:
    explicit GeneratorSequence(std::vector<double> b, double bound = 0.0)
        : b_(std::move(b)), bound_(bound) {
        if (b_.empty() || b_[0] != 1.0) throw DomainError("generator sequence must start with b_0 = 1");
        for (double x : b_) {
            if (!std::isfinite(x)) throw DomainError("generator entries must be finite");
        }
    }
    GeneratorSequence(std::initializer_list<double> b) : GeneratorSequence(std::vector<double>(b)) {}

    [[nodiscard]] std::size_t degree() const noexcept { return b_.size() - 1; }
    [[nodiscard]] std::span<const double> coeffs() const noexcept { return b_; }
    [[nodiscard]] double operator[](std::size_t i) const noexcept { return b_[i]; }
    [[nodiscard]] double bound() const noexcept { return bound_; }

    friend bool operator==(const GeneratorSequence& x, const GeneratorSequence& y) noexcept {
        return x.b_ == y.b_;
    }

    /// Copy with b_k += delta.
    [[nodiscard]] GeneratorSequence stepped(std::size_t k, double delta) const {
        GeneratorSequence out = *this;
        out.b_.at(k) += delta;
        return out;
    }

private:
    std::vector<double> b_;
    double bound_;
};

/// Result of a certified global-minimum search on [0, 2pi).
struct MinReport {
    double theta_star = 0.0;   ///< argmin in [0, 2pi)
    double min_value = 0.0;    ///< least value actually attained (an upper bound on the true min)
    double error_bound = 0.0;  ///< true_min lies in [min_value - error_bound, min_value]

    /// Guaranteed lower bound on min_theta S(theta).
    [[nodiscard]] double certified_lower() const noexcept { return min_value - error_bound; }
};

inline constexpr double kDefaultMinResolution = 1e-4;

namespace detail {

inline double sum_abs_weighted(std::span<const double> a, int power) noexcept {
    double s = 0.0;
    for (std::size_t k = 1; k < a.size(); ++k) s += std::pow(static_cast<double>(k), power) * std::abs(a[k]);
    return s;
}

inline double eval_unchecked(std::span<const double> a, double theta) noexcept {
    double s = 0.0;
    for (std::size_t k = a.size() - 1; k >= 1; --k) s += a[k] * std::cos(static_cast<double>(k) * theta);
    return a[0] + 2.0 * s;
}

inline double derivative_unchecked(std::span<const double> a, double theta) noexcept {
    double s = 0.0;
    for (std::size_t k = a.size() - 1; k >= 1; --k) {
        const double kk = static_cast<double>(k);
        s += kk * a[k] * std::sin(kk * theta);
    }
    return -2.0 * s;
}

/// cos(2 pi j / d) with j reduced mod d first.
inline double root_cos(std::size_t j, std::size_t d) noexcept {
    return std::cos(2.0 * std::numbers::pi * static_cast<double>(j % d) / static_cast<double>(d));
}

}  // namespace detail

/// S(a, theta) = a_0 + 2 sum a_k cos(k theta).
inline double eval_S(const CoefficientVector& v, double theta) {
    if (!std::isfinite(theta)) throw DomainError("eval_S: theta must be finite");
    return detail::eval_unchecked(v.coeffs(), theta);
}

/// d-section a_0 + 2 sum_{d | k} a_k cos(k theta). The factor 2 is kept so that S_1 = S.
inline double eval_S_d(const CoefficientVector& v, int d, double theta) {
    if (d < 1) throw DomainError("eval_S_d: d must be >= 1");
    if (!std::isfinite(theta)) throw DomainError("eval_S_d: theta must be finite");
    const auto a = v.coeffs();
    double s = 0.0;
    for (std::size_t k = static_cast<std::size_t>(d); k < a.size(); k += static_cast<std::size_t>(d)) {
        s += a[k] * std::cos(static_cast<double>(k) * theta);
    }
    return a[0] + 2.0 * s;
}

/// Values S(a, 2 pi k / d) for k = 0..d-1.
inline std::vector<double> eval_at_roots(const CoefficientVector& v, int d) {
    if (d < 2) throw DomainError("eval_at_roots: d must be >= 2");
    const auto a = v.coeffs();
    const auto dd = static_cast<std::size_t>(d);
    std::vector<double> out(dd);
    for (std::size_t k = 0; k < dd; ++k) {
        double s = 0.0;
        for (std::size_t j = 1; j < a.size(); ++j) s += a[j] * detail::root_cos(j * k, dd);
        out[k] = a[0] + 2.0 * s;
    }
    return out;
}

/// Magnitude below which a root value is indistinguishable from zero in double
/// arithmetic: a few ulps of |a_0| + 2 sum |a_k|.
inline double root_rounding_tolerance(const CoefficientVector& v) noexcept {
    const auto a = v.coeffs();
    double scale = std::abs(a[0]);
    for (std::size_t k = 1; k < a.size(); ++k) scale += 2.0 * std::abs(a[k]);
    return 16.0 * std::numeric_limits<double>::epsilon() * scale;
}

/// -sum_k min{0, S(a, 2 pi k / d)}; root values within rounding of zero count as zero.
inline double feasibility_deficit(const CoefficientVector& v, int d) {
    const double tol = root_rounding_tolerance(v);
    double deficit = 0.0;
    for (double s : eval_at_roots(v, d)) {
        if (s < -tol) deficit -= s;
    }
    return deficit;
}

/// Aperiodic autocorrelation a_k = sum_j b_j b_{j+k}.
inline CoefficientVector autocorrelate(const GeneratorSequence& g) {
    const auto b = g.coeffs();
    const std::size_t n = b.size();
    std::vector<double> a(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        double s = 0.0;
        for (std::size_t j = 0; j + k < n; ++j) s += b[j] * b[j + k];
        a[k] = s;
    }
    return CoefficientVector(std::move(a));
}

/// Applies b_k += delta and updates the autocorrelation in O(m).
/// Caller guarantees v == autocorrelate(g).
inline std::pair<CoefficientVector, GeneratorSequence> update_autocorrelation(const CoefficientVector& v,
                                                                              const GeneratorSequence& g,
                                                                              std::size_t k, double delta) {
    const std::size_t m = g.degree();
    if (k < 1 || k > m) throw DomainError("update_autocorrelation: index must be in [1, m]");
    if (v.degree() != m) throw DomainError("update_autocorrelation: degree mismatch");
    const auto b = g.coeffs();
    std::vector<double> a(v.coeffs().begin(), v.coeffs().end());
    a[0] += delta * (2.0 * b[k] + delta);
    for (std::size_t j = 1; j <= m; ++j) {
        double neighbours = 0.0;
        if (k + j <= m) neighbours += b[k + j];
        if (j <= k) neighbours += b[k - j];
        a[j] += delta * neighbours;
    }
    return {CoefficientVector(std::move(a), v.label()), g.stepped(k, delta)};
}

/// All a_i >= 0 and a_0 < 2 a_1 (strict); requires degree >= 1.
inline bool is_admissible(std::span<const double> a) noexcept {
    if (a.size() < 2) return false;
    for (double x : a) {
        if (!(x >= 0.0)) return false;
    }
    return a[0] < 2.0 * a[1];
}

inline bool is_admissible(const CoefficientVector& v) noexcept { return is_admissible(v.coeffs()); }

/// Product of two even polynomials: S(r) = S(p) * S(q).
inline CoefficientVector multiply(const CoefficientVector& p, const CoefficientVector& q) {
    const auto pa = p.coeffs();
    const auto qa = q.coeffs();
    const auto m = static_cast<long>(p.degree());
    const auto n = static_cast<long>(q.degree());
    std::vector<double> r(static_cast<std::size_t>(m + n + 1), 0.0);
    // Two-sided exponential coefficients are c_{+-k} = a_k.
    for (long i = -m; i <= m; ++i) {
        for (long j = -n; j <= n; ++j) {
            const long k = i + j;
            if (k < 0) continue;
            r[static_cast<std::size_t>(k)] += pa[static_cast<std::size_t>(std::abs(i))] *
                                              qa[static_cast<std::size_t>(std::abs(j))];
        }
    }
    return CoefficientVector(std::move(r));
}

/// Certified global minimum of S over the reals.
///
/// S is even and 2pi-periodic, so [0, pi] is sampled with step h <= resolution.
/// With L = 2 sum k|a_k| and K = 2 sum k^2|a_k| bounding |S'| and |S''|, the true
/// minimum on a cell is at least min(endpoints) - min(L h / 2, K h^2 / 8).
/// Sampled local minima are refined by bisection on the sign of S'.
inline MinReport global_min(const CoefficientVector& v, double resolution = kDefaultMinResolution) {
    if (!(resolution > 0.0) || !std::isfinite(resolution)) throw DomainError("global_min: resolution must be > 0");
    const auto a = v.coeffs();
    constexpr double pi = std::numbers::pi;

    MinReport report;
    if (v.degree() == 0) {
        report.min_value = a[0];
        return report;
    }

    const auto cells = static_cast<std::size_t>(std::ceil(pi / resolution));
    const double h = pi / static_cast<double>(cells);
    std::vector<double> values(cells + 1);
    for (std::size_t i = 0; i <= cells; ++i) values[i] = detail::eval_unchecked(a, h * static_cast<double>(i));

    double min_sample = values[0];
    std::size_t argmin = 0;
    for (std::size_t i = 1; i <= cells; ++i) {
        if (values[i] < min_sample) {
            min_sample = values[i];
            argmin = i;
        }
    }
    report.min_value = min_sample;
    report.theta_star = h * static_cast<double>(argmin);

    auto refine = [&](double lo, double hi) {
        // Invariant: S'(lo) <= 0 <= S'(hi).
        for (int it = 0; it < 80 && hi - lo > 1e-15; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (detail::derivative_unchecked(a, mid) < 0.0) lo = mid;
            else hi = mid;
        }
        const double theta = 0.5 * (lo + hi);
        const double value = detail::eval_unchecked(a, theta);
        if (value < report.min_value) {
            report.min_value = value;
            report.theta_star = theta;
        }
    };

    for (std::size_t i = 0; i <= cells; ++i) {
        const bool left_ok = i == 0 || values[i] <= values[i - 1];
        const bool right_ok = i == cells || values[i] <= values[i + 1];
        if (!(left_ok && right_ok)) continue;
        const double lo = h * static_cast<double>(i == 0 ? 0 : i - 1);
        const double hi = h * static_cast<double>(i == cells ? cells : i + 1);
        // Endpoints 0 and pi are critical points by symmetry; refine only interior brackets.
        if (detail::derivative_unchecked(a, lo) <= 0.0 && detail::derivative_unchecked(a, hi) >= 0.0) refine(lo, hi);
    }

    const double slope = 2.0 * detail::sum_abs_weighted(a, 1);
    const double curvature = 2.0 * detail::sum_abs_weighted(a, 2);
    const double grid_bound = std::min(slope * h / 2.0, curvature * h * h / 8.0);
    report.error_bound = std::max(0.0, grid_bound - (min_sample - report.min_value));
    return report;
}

}  // namespace lbound
