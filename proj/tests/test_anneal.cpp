#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "lbound/anneal.hpp"
#include "lbound/verify.hpp"

using namespace lbound;

namespace {

// Short general-mode schedule for unit tests.
AnnealConfig quick_general(int m) {
    auto c = AnnealConfig::general_defaults(m);
    c.S1 = 1.0;
    c.S2 = 1e-3;
    c.rho = 0.2;
    c.M = 300;
    c.trace = true;
    return c;
}

AnnealConfig quick_order(int d) {
    auto c = AnnealConfig::order_defaults(d);
    c.M = 300;
    c.trace = true;
    return c;
}

// One-dimensional x^2 with logged objective after every commit.
class Parabola {
public:
    std::optional<double> propose(Rng& rng, double step) {
        next_ = x_ + rng.uniform(-step, step);
        return next_ * next_;
    }
    void commit() {
        x_ = next_;
        history.push_back(x_ * x_);
    }
    void revert() {}
    double objective() const { return x_ * x_; }
    void save_best() {}

    std::vector<double> history;

private:
    double x_ = 3.0;
    double next_ = 0.0;
};

// Every proposal worsens the objective by a uniform amount in [0, width].
class AlwaysWorse {
public:
    explicit AlwaysWorse(double width) : width_(width) {}
    std::optional<double> propose(Rng& rng, double) { return value_ + width_ * rng.uniform01(); }
    void commit() {}
    void revert() {}
    double objective() const { return value_; }
    void save_best() {}

private:
    double width_;
    double value_ = 0.0;
};

bool strictly_decreasing(const std::vector<TraceEntry>& trace) {
    for (std::size_t i = 1; i < trace.size(); ++i) {
        if (!(trace[i].value < trace[i - 1].value)) return false;
        if (!(trace[i].iteration > trace[i - 1].iteration)) return false;
    }
    return true;
}

}  // namespace

TEST(Rng, DeterministicAndStreamed) {
    Rng a(7, 0), b(7, 0), c(7, 1);
    bool differs = false;
    for (int i = 0; i < 100; ++i) {
        const auto x = a.next();
        EXPECT_EQ(x, b.next());
        differs = differs || x != c.next();
    }
    EXPECT_TRUE(differs);
}

TEST(Rng, Ranges) {
    Rng r(1, 2);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 100000; ++i) {
        const double u = r.uniform01();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        const double v = r.uniform(-2.0, 3.0);
        ASSERT_GE(v, -2.0);
        ASSERT_LE(v, 3.0);
        const auto k = r.index(7);
        ASSERT_LT(k, 7u);
        seen.insert(k);
    }
    EXPECT_EQ(seen.size(), 7u);
}

TEST(Schedule, Harmonic) {
    const auto t = harmonic_schedule(0.1, 1.6, 10);
    ASSERT_EQ(t.size(), 10u);
    EXPECT_DOUBLE_EQ(t[0], 0.1);
    for (std::size_t i = 1; i < t.size(); ++i) EXPECT_NEAR(1.0 / t[i], 1.0 / t[i - 1] + 1.6, 1e-12);
}

TEST(Config, GeneralDefaults) {
    const auto c = AnnealConfig::general_defaults(8);
    EXPECT_EQ(c.m, 8);
    EXPECT_EQ(c.B, 200.0);
    EXPECT_EQ(c.S1, 3.5);
    EXPECT_EQ(c.S2, 1e-6);
    EXPECT_EQ(c.rho, 0.02);
    EXPECT_EQ(c.M, 4000u);
    EXPECT_EQ(c.temps, harmonic_schedule(0.1, 1.6, 10));
}

TEST(Config, Validation) {
    auto c = AnnealConfig::general_defaults(8);
    EXPECT_NO_THROW(c.validate(SearchMode::general));
    c.S2 = c.S1;
    EXPECT_THROW(c.validate(SearchMode::general), DomainError);
    c = AnnealConfig::general_defaults(8);
    c.rho = 0.0;
    EXPECT_THROW(c.validate(SearchMode::general), DomainError);
    c = AnnealConfig::general_defaults(8);
    c.temps = {0.1, 0.2};
    EXPECT_THROW(c.validate(SearchMode::general), DomainError);
    c = AnnealConfig::general_defaults(8);
    c.M = 0;
    EXPECT_THROW(c.validate(SearchMode::general), DomainError);
    EXPECT_THROW(AnnealConfig::general_defaults(1).validate(SearchMode::general), DomainError);
    auto o = AnnealConfig::order_defaults(11);
    EXPECT_NO_THROW(o.validate(SearchMode::order));
    o.m = 11;
    EXPECT_THROW(o.validate(SearchMode::order), DomainError);
}

TEST(Metropolis, Rule) {
    Rng rng(3);
    for (double t : {0.0, 1e-9, 0.1, 10.0}) {
        EXPECT_TRUE(metropolis_accept(0.0, t, rng));
        EXPECT_TRUE(metropolis_accept(-1.0, t, rng));
    }
    for (int i = 0; i < 1000; ++i) EXPECT_FALSE(metropolis_accept(1e-12, 0.0, rng));
}

TEST(Metropolis, AcceptanceRateMatchesPrediction) {
    Rng rng(2024);
    const double t = 0.1;
    const int n = 100000;
    int small = 0;
    for (int i = 0; i < n; ++i) small += metropolis_accept(1e-3, t, rng) ? 1 : 0;
    EXPECT_NEAR(static_cast<double>(small) / n, std::exp(-1e-3 / t), 0.05);

    // Through the engine: worsening by U[0, 0.3] at T = 0.1, then T = 0.
    AlwaysWorse problem(0.3);
    const EngineSchedule schedule{1.0, 0.99, 1.0, {t}, static_cast<std::uint64_t>(n)};
    const auto stats = anneal_engine(problem, schedule, rng);
    EXPECT_EQ(stats.iterations, 2u * n);
    EXPECT_EQ(stats.proposed_worse, static_cast<std::uint64_t>(n));
    const double predicted = t / 0.3 * (1.0 - std::exp(-3.0));
    EXPECT_NEAR(static_cast<double>(stats.accepted_worse) / n, predicted, 0.05);
}

TEST(Engine, GreedyWithoutTemperaturesIsMonotone) {
    Parabola p;
    Rng rng(1);
    const EngineSchedule schedule{1.0, 1e-3, 0.1, {}, 200};
    anneal_engine(p, schedule, rng);
    ASSERT_FALSE(p.history.empty());
    for (std::size_t i = 1; i < p.history.size(); ++i) EXPECT_LE(p.history[i], p.history[i - 1]);
    EXPECT_LT(p.history.back(), 1e-4);
}

TEST(Engine, BudgetAndStop) {
    Parabola p;
    Rng rng(1);
    EngineSchedule schedule{1.0, 1e-3, 0.1, {0.5}, 200};
    schedule.budget = 123;
    EXPECT_EQ(anneal_engine(p, schedule, rng).iterations, 123u);

    Parabola q;
    schedule.budget = 0;
    const auto stats = anneal_engine(q, schedule, rng, [](double v) { return v < 1.0; });
    EXPECT_TRUE(stats.stopped);
    EXPECT_LT(q.objective(), 1.0);
}

TEST(GeneralSearch, ContractHolds) {
    const auto r = general_search(quick_general(6));
    EXPECT_EQ(r.status, SearchStatus::ok);
    EXPECT_TRUE(is_admissible(r.best_vector));
    ASSERT_TRUE(r.generator.has_value());
    const auto exact = autocorrelate(*r.generator);
    for (std::size_t i = 0; i < exact.size(); ++i) EXPECT_NEAR(r.best_vector[i], exact[i], 1e-10 * exact[0]);
    EXPECT_GE(global_min(r.best_vector).certified_lower(), -1e-9 * r.best_vector[0]);
    EXPECT_NEAR(r.best_lambda, derive_constants(r.best_vector).lambda, 1e-12);
    EXPECT_TRUE(strictly_decreasing(r.trace));
    ASSERT_FALSE(r.trace.empty());
    EXPECT_NEAR(r.trace.back().value, r.best_lambda, 1e-9);
}

TEST(GeneralSearch, Deterministic) {
    auto c = quick_general(5);
    c.restarts = 3;
    const auto a = general_search(c);
    const auto b = general_search(c);
    EXPECT_EQ(a.best_vector, b.best_vector);
    EXPECT_EQ(a.best_lambda, b.best_lambda);
    EXPECT_EQ(a.trace, b.trace);
    EXPECT_EQ(a.iterations, b.iterations);
    c.threads = 3;
    const auto t = general_search(c);
    EXPECT_EQ(t.best_vector, a.best_vector);
    EXPECT_EQ(t.best_restart, a.best_restart);
}

TEST(GeneralSearch, RestartsPickTheBest) {
    auto c = quick_general(4);
    c.restarts = 4;
    const auto best = general_search(c);
    for (int r = 0; r < c.restarts; ++r) EXPECT_LE(best.best_lambda, general_search_single(c, r).best_lambda);
    EXPECT_EQ(best.best_lambda, general_search_single(c, best.best_restart).best_lambda);
}

TEST(OrderSearch, FeasibleAndAboveTheOptimumForThree) {
    const auto r = order_search(quick_order(3));
    EXPECT_EQ(r.status, SearchStatus::ok);
    EXPECT_EQ(feasibility_deficit(r.best_vector, 3), 0.0);
    EXPECT_GE(r.best_lambda, 3.72935 - 1e-5);
    EXPECT_LT(r.best_lambda, 3.7294);
}

TEST(OrderSearch, OutputIsFeasible) {
    for (int d : {5, 8, 11}) {
        const auto r = order_search(quick_order(d));
        EXPECT_TRUE(is_admissible(r.best_vector));
        EXPECT_EQ(feasibility_deficit(r.best_vector, d), 0.0);
        const double tol = root_rounding_tolerance(r.best_vector);
        for (double x : eval_at_roots(r.best_vector, d)) EXPECT_GE(x, -tol);
        EXPECT_TRUE(strictly_decreasing(r.trace));
    }
}

TEST(OrderSearch, Deterministic) {
    const auto a = order_search(quick_order(7));
    const auto b = order_search(quick_order(7));
    EXPECT_EQ(a.best_vector, b.best_vector);
    EXPECT_EQ(a.trace, b.trace);
}

TEST(OrderSearch, ExhaustedFeasibilityBudget) {
    auto c = quick_order(11);
    c.phase1_budget = 1;
    EXPECT_THROW(order_search(c), InfeasibleError);
    const auto single = order_search_single(c, 0);
    EXPECT_EQ(single.status, SearchStatus::infeasible);
}

TEST(IntegerSearch, Examples) {
    const auto five = integer_search(5, 3, 1, 2);
    ASSERT_TRUE(five.vector.has_value());
    EXPECT_EQ(*five.vector, (CoefficientVector{1.0, 1.0, 1.0}));
    EXPECT_TRUE(truncates_to(five.lambda, "6.38742", 5));

    const auto four = integer_search(4, 2, 1, 2);
    ASSERT_TRUE(four.vector.has_value());
    EXPECT_EQ(*four.vector, (CoefficientVector{2.0, 2.0, 1.0}));
    EXPECT_NEAR(four.lambda, 5.05495937863, 1e-10);

    const auto three = integer_search(3, 1, 1, 1);
    ASSERT_TRUE(three.vector.has_value());
    EXPECT_EQ(*three.vector, (CoefficientVector{1.0, 1.0}));
}

TEST(IntegerSearch, DefaultDegreeAndTies) {
    const auto r = integer_search(5, 3);
    ASSERT_TRUE(r.vector.has_value());
    EXPECT_EQ(*r.vector, (CoefficientVector{1.0, 1.0, 1.0}));
    EXPECT_EQ(r.visited, 1024u);
    const auto seven = integer_search(7, 2);
    ASSERT_TRUE(seven.vector.has_value());
    EXPECT_EQ(*seven.vector, (CoefficientVector{1.0, 1.0, 1.0, 1.0}));
}

TEST(IntegerSearch, RefinementNeverWorsens) {
    const auto plain = integer_search(9, 3, 1, 3);
    const auto refined = integer_search(9, 3, 4, 3);
    ASSERT_TRUE(plain.vector && refined.vector);
    EXPECT_LE(refined.lambda, plain.lambda);
    EXPECT_EQ(refined.refined, refined.lambda < plain.lambda);
    EXPECT_TRUE(refined.refined);
    EXPECT_EQ(feasibility_deficit(*refined.vector, 9), 0.0);
    EXPECT_NEAR(derive_constants(*refined.vector).lambda, refined.lambda, 1e-12);
}

TEST(IntegerSearch, Errors) {
    EXPECT_THROW(integer_search(2, 3), DomainError);
    EXPECT_THROW(integer_search(5, 0), DomainError);
    EXPECT_THROW(integer_search(5, 3, 1, 5), DomainError);
    EXPECT_THROW(integer_search(40, 9), DomainError);
}
