#pragma once

// Simulated annealing searches for coefficient vectors with small lambda.
//
//  * general_search: nonnegative-everywhere polynomials via the autocorrelation
//    of a generator b, mutating one b_k per proposal.
//  * order_search: polynomials only required to be nonnegative at the d-th
//    roots of unity, mutating a_k directly after a feasibility phase.
//  * integer_search: exhaustive search over bounded integer vectors followed by
//    a scaled neighbourhood refinement.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <functional>
#include <future>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "lbound/error.hpp"
#include "lbound/louboutin.hpp"
#include "lbound/rng.hpp"
#include "lbound/trigpoly.hpp"

namespace lbound {

/// 1/T_{i+1} = 1/T_i + delta, starting at T_1, for `count` temperatures.
inline std::vector<double> harmonic_schedule(double t1, double delta, int count) {
    std::vector<double> temps;
    double inv = 1.0 / t1;
    for (int i = 0; i < count; ++i) {
        temps.push_back(1.0 / inv);
        inv += delta;
    }
    return temps;
}

enum class SearchMode { general, order };

struct AnnealConfig {
    int m = 8;
    int d = 0;                  ///< target order (order mode only)
    double B = 200.0;           ///< init bound for b_k (general mode) or unused
    double S1 = 3.5;            ///< largest maximum step size
    double S2 = 1e-6;           ///< smallest maximum step size
    double rho = 0.02;          ///< step ladder contraction: S <- S / (1 + rho)
    std::vector<double> temps = harmonic_schedule(0.1, 1.6, 10);
    std::uint64_t M = 4000;     ///< proposals per (temperature, step size)
    std::uint64_t seed = 1;
    int restarts = 1;
    int threads = 1;
    std::uint64_t phase1_budget = 1'000'000;  ///< order mode feasibility cap
    bool trace = false;

    /// Paper-range midpoints for the b-parameterized search.
    static AnnealConfig general_defaults(int m) {
        AnnealConfig c;
        c.m = m;
        return c;
    }

    /// Direct a-coordinate search with a_0 = 1; step sizes are on the a scale.
    static AnnealConfig order_defaults(int d) {
        AnnealConfig c;
        c.d = d;
        c.m = d - 1;
        c.S1 = 0.05;
        c.S2 = 1e-7;
        c.rho = 0.05;
        c.temps = harmonic_schedule(0.01, 16.0, 10);
        c.M = 2000;
        return c;
    }

    void validate(SearchMode mode) const {
        if (m < 1) throw DomainError("AnnealConfig: m must be >= 1");
        if (!(S1 > S2 && S2 > 0.0)) throw DomainError("AnnealConfig: need S1 > S2 > 0");
        if (!(rho > 0.0)) throw DomainError("AnnealConfig: rho must be > 0");
        if (M < 1) throw DomainError("AnnealConfig: M must be >= 1");
        if (restarts < 1) throw DomainError("AnnealConfig: restarts must be >= 1");
        for (std::size_t i = 0; i < temps.size(); ++i) {
            if (!(temps[i] > 0.0)) throw DomainError("AnnealConfig: temperatures must be positive");
            if (i > 0 && !(temps[i] < temps[i - 1]))
                throw DomainError("AnnealConfig: temperatures must be strictly decreasing");
        }
        if (mode == SearchMode::general && !(B > 0.0)) throw DomainError("AnnealConfig: B must be > 0");
        // a_0 - 2 a_1 = (b_1 - 1)^2 >= 0 when m = 1, so no degree-1 square is admissible.
        if (mode == SearchMode::general && m < 2) throw DomainError("AnnealConfig: general search needs m >= 2");
        if (mode == SearchMode::order) {
            if (d < 3 || d > 64) throw DomainError("AnnealConfig: order d must lie in [3, 64]");
            if (m >= d) throw DomainError("AnnealConfig: order search needs m < d");
        }
    }
};

struct TraceEntry {
    std::uint64_t iteration;
    double value;
    friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

enum class SearchStatus { ok, infeasible };

struct AnnealResult {
    SearchMode mode = SearchMode::general;
    SearchStatus status = SearchStatus::ok;
    CoefficientVector best_vector{1.0, 1.0};
    double best_lambda = std::numeric_limits<double>::infinity();
    std::optional<GeneratorSequence> generator;  ///< general mode only
    AnnealConfig config;
    std::uint64_t seed = 0;
    int best_restart = 0;
    std::uint64_t iterations = 0;
    std::vector<TraceEntry> trace;  ///< records of the winning restart
};

/// A state the engine can mutate in place. `propose` applies a random move of
/// maximum size `step` and returns the candidate objective, or nullopt if the
/// move was invalid (in which case the state is already restored).
template <class P>
concept AnnealProblem = requires(P p, const P cp, Rng& rng, double step) {
    { p.propose(rng, step) } -> std::same_as<std::optional<double>>;
    p.commit();
    p.revert();
    { cp.objective() } -> std::convertible_to<double>;
    p.save_best();
};

struct EngineSchedule {
    double S1;
    double S2;
    double rho;
    std::vector<double> temps;
    std::uint64_t M;
    std::uint64_t budget = 0;  ///< proposal cap, 0 = unlimited
    bool trace = false;

    static EngineSchedule from(const AnnealConfig& c) { return {c.S1, c.S2, c.rho, c.temps, c.M, 0, c.trace}; }
};

struct EngineStats {
    std::uint64_t iterations = 0;
    std::uint64_t accepted_worse = 0;
    std::uint64_t proposed_worse = 0;
    double best = std::numeric_limits<double>::infinity();
    bool stopped = false;
    std::vector<TraceEntry> trace;
};

/// Metropolis acceptance: improvements and ties always, a worsening delta with
/// probability exp(-delta / T), never at T = 0.
inline bool metropolis_accept(double delta, double temperature, Rng& rng) {
    if (delta <= 0.0) return true;
    if (temperature <= 0.0) return false;
    return rng.uniform01() < std::exp(-delta / temperature);
}

/// Runs the step-size ladder S1, S1/(1+rho), ... (while S >= S2); for each S the
/// temperatures T_1 > ... > T_l followed by T = 0, with M proposals each.
/// `stop(value)` ends the run early once it returns true for the current objective.
template <AnnealProblem P, class Stop = bool (*)(double)>
EngineStats anneal_engine(P& problem, const EngineSchedule& schedule, Rng& rng,
                          Stop stop = [](double) { return false; }) {
    EngineStats stats;
    stats.best = problem.objective();
    problem.save_best();
    if (schedule.trace) stats.trace.push_back({0, stats.best});
    if (stop(stats.best)) {
        stats.stopped = true;
        return stats;
    }

    std::vector<double> temps = schedule.temps;
    temps.push_back(0.0);
    for (double step = schedule.S1; step >= schedule.S2; step /= 1.0 + schedule.rho) {
        for (double t : temps) {
            for (std::uint64_t trial = 0; trial < schedule.M; ++trial) {
                if (schedule.budget != 0 && stats.iterations >= schedule.budget) return stats;
                ++stats.iterations;
                const auto candidate = problem.propose(rng, step);
                if (!candidate) continue;
                const double delta = *candidate - problem.objective();
                if (delta > 0.0 && t > 0.0) ++stats.proposed_worse;
                if (!metropolis_accept(delta, t, rng)) {
                    problem.revert();
                    continue;
                }
                if (delta > 0.0) ++stats.accepted_worse;
                problem.commit();
                if (*candidate < stats.best) {
                    stats.best = *candidate;
                    problem.save_best();
                    if (schedule.trace) stats.trace.push_back({stats.iterations, stats.best});
                }
                if (stop(*candidate)) {
                    stats.stopped = true;
                    return stats;
                }
            }
        }
        if constexpr (requires { problem.resync(); }) problem.resync();
    }
    return stats;
}

namespace detail {

/// b-parameterized state: a is maintained as the autocorrelation of b.
class GeneralProblem {
public:
    GeneralProblem(std::vector<double> b, std::vector<double> a, double lambda)
        : b_(std::move(b)), a_(std::move(a)), saved_a_(a_.size()), lambda_(lambda), best_b_(b_) {}

    std::optional<double> propose(Rng& rng, double step) {
        const std::size_t m = b_.size() - 1;
        k_ = 1 + static_cast<std::size_t>(rng.index(m));
        delta_ = rng.uniform(-step, step);
        std::copy(a_.begin(), a_.end(), saved_a_.begin());
        a_[0] += delta_ * (2.0 * b_[k_] + delta_);
        for (std::size_t j = 1; j <= m; ++j) {
            double nb = 0.0;
            if (k_ + j <= m) nb += b_[k_ + j];
            if (j <= k_) nb += b_[k_ - j];
            a_[j] += delta_ * nb;
        }
        b_[k_] += delta_;
        const auto lam = try_lambda(a_);
        if (!lam) {
            revert();
            return std::nullopt;
        }
        candidate_ = *lam;
        return candidate_;
    }

    void commit() { lambda_ = candidate_; }
    void revert() {
        std::copy(saved_a_.begin(), saved_a_.end(), a_.begin());
        b_[k_] -= delta_;
    }
    double objective() const { return lambda_; }
    void save_best() { best_b_ = b_; }

    /// Recomputes a from b exactly, removing accumulated rounding drift.
    void resync() {
        const auto v = autocorrelate(GeneratorSequence(b_));
        std::vector<double> exact(v.coeffs().begin(), v.coeffs().end());
        if (const auto lam = try_lambda(exact)) {
            a_ = std::move(exact);
            lambda_ = *lam;
        }
    }

    const std::vector<double>& best_b() const { return best_b_; }

private:
    std::vector<double> b_;
    std::vector<double> a_;
    std::vector<double> saved_a_;
    double lambda_;
    double candidate_ = 0.0;
    std::size_t k_ = 1;
    double delta_ = 0.0;
    std::vector<double> best_b_;
};

/// Root-of-unity tables for S(a, 2 pi k / d), evaluated in the same order as eval_at_roots.
class RootTable {
public:
    RootTable(std::size_t m, std::size_t d) : m_(m), d_(d), cos_(d * (m + 1)) {
        for (std::size_t k = 0; k < d; ++k)
            for (std::size_t j = 0; j <= m; ++j) cos_[k * (m + 1) + j] = root_cos(j * k, d);
    }

    /// Deficit -sum min{0, S(2 pi k/d)} with the rounding tolerance of feasibility_deficit.
    double deficit(std::span<const double> a) const {
        double scale = std::abs(a[0]);
        for (std::size_t j = 1; j <= m_; ++j) scale += 2.0 * std::abs(a[j]);
        const double tol = 16.0 * std::numeric_limits<double>::epsilon() * scale;
        double deficit = 0.0;
        for (std::size_t k = 0; k < d_; ++k) {
            const double* row = &cos_[k * (m_ + 1)];
            double s = 0.0;
            for (std::size_t j = 1; j <= m_; ++j) s += a[j] * row[j];
            const double value = a[0] + 2.0 * s;
            if (value < -tol) deficit -= value;
        }
        return deficit;
    }

private:
    std::size_t m_;
    std::size_t d_;
    std::vector<double> cos_;
};

/// Direct a-coordinate state with a_0 = 1 fixed; objective is either the
/// root deficit (phase 1) or lambda subject to zero deficit (phase 2).
class OrderProblem {
public:
    enum class Phase { feasibility, lambda };

    OrderProblem(std::vector<double> a, const RootTable& roots, Phase phase)
        : a_(std::move(a)), roots_(&roots), phase_(phase), best_a_(a_) {
        value_ = evaluate().value_or(std::numeric_limits<double>::infinity());
    }

    std::optional<double> propose(Rng& rng, double step) {
        const std::size_t m = a_.size() - 1;
        k_ = 1 + static_cast<std::size_t>(rng.index(m));
        old_ = a_[k_];
        a_[k_] += rng.uniform(-step, step);
        const auto value = evaluate();
        if (!value) {
            revert();
            return std::nullopt;
        }
        candidate_ = *value;
        return candidate_;
    }

    void commit() { value_ = candidate_; }
    void revert() { a_[k_] = old_; }
    double objective() const { return value_; }
    void save_best() { best_a_ = a_; }
    const std::vector<double>& best_a() const { return best_a_; }
    const std::vector<double>& current() const { return a_; }

private:
    std::optional<double> evaluate() const {
        if (!is_admissible(a_)) return std::nullopt;
        const double deficit = roots_->deficit(a_);
        if (phase_ == Phase::feasibility) return deficit;
        if (deficit > 0.0) return std::nullopt;
        return try_lambda(a_);
    }

    std::vector<double> a_;
    const RootTable* roots_;
    Phase phase_;
    double value_ = 0.0;
    double candidate_ = 0.0;
    std::size_t k_ = 1;
    double old_ = 0.0;
    std::vector<double> best_a_;
};

/// Runs `restarts` independent chains (possibly in parallel) and keeps the
/// lowest lambda; ties go to the lower restart index.
template <class Run>
AnnealResult best_of_restarts(const AnnealConfig& config, Run run) {
    const int threads = std::max(1, config.threads);
    std::vector<AnnealResult> results(static_cast<std::size_t>(config.restarts));
    if (threads == 1) {
        for (int r = 0; r < config.restarts; ++r) results[static_cast<std::size_t>(r)] = run(r);
    } else {
        std::vector<std::thread> pool;
        std::atomic<int> next{0};
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                for (int r = next++; r < config.restarts; r = next++) results[static_cast<std::size_t>(r)] = run(r);
            });
        }
        for (auto& th : pool) th.join();
    }
    std::uint64_t total = 0;
    std::size_t best = 0;
    bool any_ok = false;
    for (std::size_t r = 0; r < results.size(); ++r) {
        total += results[r].iterations;
        if (results[r].status != SearchStatus::ok) continue;
        if (!any_ok || results[r].best_lambda < results[best].best_lambda) best = r;
        any_ok = true;
    }
    AnnealResult out = std::move(results[best]);
    out.iterations = total;
    out.best_restart = static_cast<int>(best);
    out.config = config;
    out.seed = config.seed;
    if (!any_ok) out.status = SearchStatus::infeasible;
    return out;
}

}  // namespace detail

inline constexpr int kMaxInitAttempts = 1'000'000;

/// One chain of the b-parameterized search; `restart` selects the RNG stream.
inline AnnealResult general_search_single(const AnnealConfig& config, int restart) {
    Rng rng(config.seed, static_cast<std::uint64_t>(restart));
    const auto m = static_cast<std::size_t>(config.m);
    std::vector<double> b(m + 1);
    std::optional<double> lambda;
    std::vector<double> a;
    for (int attempt = 0; !lambda; ++attempt) {
        if (attempt == kMaxInitAttempts)
            throw InfeasibleError("general_search: no admissible random initialization found");
        b[0] = 1.0;
        for (std::size_t k = 1; k <= m; ++k) b[k] = rng.uniform(0.0, config.B);
        const auto v = autocorrelate(GeneratorSequence(b));
        a.assign(v.coeffs().begin(), v.coeffs().end());
        lambda = try_lambda(a);
    }

    detail::GeneralProblem problem(b, a, *lambda);
    const auto stats = anneal_engine(problem, EngineSchedule::from(config), rng);

    GeneratorSequence generator(problem.best_b(), config.B);
    CoefficientVector best = autocorrelate(generator);
    AnnealResult result;
    result.mode = SearchMode::general;
    result.best_lambda = derive_constants(best).lambda;
    result.best_vector = std::move(best);
    result.generator = std::move(generator);
    result.iterations = stats.iterations;
    result.trace = stats.trace;
    return result;
}

/// Best of `config.restarts` b-parameterized annealing chains.
inline AnnealResult general_search(const AnnealConfig& config) {
    config.validate(SearchMode::general);
    return detail::best_of_restarts(config, [&](int r) { return general_search_single(config, r); });
}

/// One two-phase chain of the order search.
inline AnnealResult order_search_single(const AnnealConfig& config, int restart) {
    Rng rng(config.seed, static_cast<std::uint64_t>(restart));
    const auto m = static_cast<std::size_t>(config.m);
    const auto d = static_cast<std::size_t>(config.d);
    const detail::RootTable roots(m, d);

    std::vector<double> a(m + 1);
    a[0] = 1.0;
    a[1] = 1.0 - 0.5 * rng.uniform01();
    for (std::size_t k = 2; k <= m; ++k) a[k] = rng.uniform01();

    AnnealResult result;
    result.mode = SearchMode::order;

    detail::OrderProblem phase1(a, roots, detail::OrderProblem::Phase::feasibility);
    auto schedule = EngineSchedule::from(config);
    schedule.trace = false;
    schedule.budget = config.phase1_budget;
    const auto s1 = anneal_engine(phase1, schedule, rng, [](double deficit) { return deficit == 0.0; });
    result.iterations = s1.iterations;
    if (!s1.stopped) {
        result.status = SearchStatus::infeasible;
        return result;
    }

    detail::OrderProblem phase2(phase1.current(), roots, detail::OrderProblem::Phase::lambda);
    const auto s2 = anneal_engine(phase2, EngineSchedule::from(config), rng);
    for (auto entry : s2.trace) result.trace.push_back({entry.iteration + s1.iterations, entry.value});
    result.iterations += s2.iterations;

    CoefficientVector best(phase2.best_a());
    result.best_lambda = derive_constants(best).lambda;
    result.best_vector = std::move(best);
    return result;
}

/// Best of `config.restarts` two-phase order searches for characters of order d.
/// Throws InfeasibleError if no restart reaches zero deficit within phase1_budget.
inline AnnealResult order_search(const AnnealConfig& config) {
    config.validate(SearchMode::order);
    auto result = detail::best_of_restarts(config, [&](int r) { return order_search_single(config, r); });
    if (result.status != SearchStatus::ok)
        throw InfeasibleError("order_search: feasibility phase exhausted its budget in every restart");
    return result;
}

struct IntegerSearchResult {
    std::optional<CoefficientVector> vector;
    double lambda = std::numeric_limits<double>::infinity();
    std::uint64_t visited = 0;
    bool refined = false;  ///< true when the scaled neighbourhood improved on the exhaustive winner
};

namespace detail {

inline double integer_space_size(std::size_t m, std::uint64_t per_coordinate) {
    return std::pow(static_cast<double>(per_coordinate), static_cast<double>(m + 1));
}

/// Calls visit(a) for every integer vector with lo[i] <= a[i] <= hi[i].
/// a[0] varies fastest, so vectors with trailing zeros come before longer ones.
template <class Visit>
void for_each_box(const std::vector<long>& lo, const std::vector<long>& hi, Visit visit) {
    std::vector<long> cur = lo;
    std::vector<double> as_double(cur.size());
    while (true) {
        for (std::size_t i = 0; i < cur.size(); ++i) as_double[i] = static_cast<double>(cur[i]);
        visit(as_double);
        std::size_t i = 0;
        for (; i < cur.size(); ++i) {
            if (cur[i] < hi[i]) {
                ++cur[i];
                break;
            }
            cur[i] = lo[i];
        }
        if (i == cur.size()) return;
    }
}

inline std::vector<double> reduce_by_gcd(std::vector<double> a) {
    long g = 0;
    for (double x : a) g = std::gcd(g, static_cast<long>(x));
    if (g > 1)
        for (double& x : a) x /= static_cast<double>(g);
    return a;
}

}  // namespace detail

/// Exhaustive search over integer vectors 0 <= a_i <= coeff_bound (a_0 >= 1) of
/// degree m that are admissible and nonnegative at the d-th roots of unity,
/// minimizing lambda; then, when refine_factor > 1, the winner is scaled by
/// refine_factor and the cube of radius refine_factor around it is searched.
/// m defaults to d - 1; trailing zero coefficients are dropped from the result.
inline IntegerSearchResult integer_search(int d, int coeff_bound, int refine_factor = 1, int m = 0) {
    if (d < 3) throw DomainError("integer_search: d must be >= 3");
    if (m == 0) m = d - 1;
    if (coeff_bound < 1) throw DomainError("integer_search: coeff_bound must be >= 1");
    if (m < 1 || m >= d) throw DomainError("integer_search: need 1 <= m < d");
    const auto mm = static_cast<std::size_t>(m);
    if (detail::integer_space_size(mm, static_cast<std::uint64_t>(coeff_bound) + 1) > 1e8)
        throw DomainError("integer_search: exhaustive space exceeds 1e8 states");

    const detail::RootTable roots(mm, static_cast<std::size_t>(d));
    IntegerSearchResult result;
    std::vector<double> best;
    auto visit = [&](const std::vector<double>& a) {
        ++result.visited;
        if (!(a[0] >= 1.0) || !(a[0] < 2.0 * a[1])) return;
        const auto lam = try_lambda(a);
        if (!lam || !(*lam < result.lambda * (1.0 - 1e-12))) return;
        if (roots.deficit(a) > 0.0) return;
        result.lambda = *lam;
        best = a;
    };

    detail::for_each_box(std::vector<long>(mm + 1, 0), std::vector<long>(mm + 1, coeff_bound), visit);
    if (best.empty()) return result;

    if (refine_factor > 1) {
        const long r = refine_factor;
        if (detail::integer_space_size(mm, static_cast<std::uint64_t>(2 * r + 1)) > 1e8)
            throw DomainError("integer_search: refinement space exceeds 1e8 states");
        std::vector<long> lo(mm + 1), hi(mm + 1);
        for (std::size_t i = 0; i <= mm; ++i) {
            const long centre = static_cast<long>(best[i]) * r;
            lo[i] = std::max(0L, centre - r);
            hi[i] = centre + r;
        }
        const double before = result.lambda;
        detail::for_each_box(lo, hi, visit);
        result.refined = result.lambda < before;
    }
    while (best.size() > 2 && best.back() == 0.0) best.pop_back();
    result.vector = CoefficientVector(detail::reduce_by_gcd(best));
    return result;
}

}  // namespace lbound
