#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "lbound/specialfn.hpp"

using namespace lbound;

namespace {

constexpr double kPi = std::numbers::pi;

// Values below come from 30-digit mpmath evaluations.
struct Ref {
    double x;
    double value;
};

}  // namespace

TEST(LnGamma, Examples) {
    EXPECT_NEAR(ln_gamma(1.0), 0.0, 1e-15);
    EXPECT_NEAR(ln_gamma(0.5), 0.57236494292470008707, 1e-14);
    EXPECT_NEAR(ln_gamma(5.0), std::log(24.0), 1e-14);
    for (const Ref r : {Ref{0.1, 2.252712651734205902}, Ref{3.7, 1.4280723266653881292},
                        Ref{12.5, 18.734347511936445702}, Ref{30.0, 71.25703896716800901}})
        EXPECT_NEAR(ln_gamma(r.x), r.value, 1e-13 * std::max(1.0, std::abs(r.value))) << r.x;
    EXPECT_THROW(ln_gamma(0.0), DomainError);
    EXPECT_THROW(ln_gamma(-1.5), DomainError);
}

TEST(Digamma, Examples) {
    EXPECT_NEAR(digamma(1.0), -kEulerGamma, 1e-12);
    EXPECT_NEAR(digamma(0.5), -kEulerGamma - 2.0 * std::log(2.0), 1e-12);
    EXPECT_NEAR(digamma(2.0), 1.0 - kEulerGamma, 1e-12);
    for (const Ref r : {Ref{0.1, -10.423754940411076232}, Ref{3.7, 1.1671535393615114409},
                        Ref{12.5, 2.4851956512749120482}, Ref{30.0, 3.3844381326855248766}})
        EXPECT_NEAR(digamma(r.x), r.value, 1e-13 * std::max(1.0, std::abs(r.value))) << r.x;
    EXPECT_THROW(digamma(0.0), DomainError);
}

TEST(Digamma, MatchesLnGammaDifferences) {
    const double h = 1e-5;
    for (double x = 0.5; x <= 20.0; x += 0.25)
        EXPECT_NEAR(digamma(x), (ln_gamma(x + h) - ln_gamma(x - h)) / (2.0 * h), 1e-7) << x;
}

TEST(Digamma, Reflection) {
    for (double x : {0.2, 0.4}) EXPECT_NEAR(digamma(1.0 - x) - digamma(x), kPi / std::tan(kPi * x), 1e-10);
}

TEST(Zeta, ClosedForms) {
    EXPECT_NEAR(zeta(2.0), kPi * kPi / 6.0, 1e-12);
    EXPECT_NEAR(zeta(4.0), std::pow(kPi, 4) / 90.0, 1e-12);
    EXPECT_NEAR(zeta(3.0), 1.2020569031595942854, 1e-12);
    EXPECT_NEAR(zeta(1.5), 2.6123753486854883433, 1e-12);
    EXPECT_NEAR(zeta(1.1), 10.584448464950800951, 1e-11);
    EXPECT_NEAR(zeta(20.0), 1.0000009539620338728, 1e-15);
}

TEST(Zeta, DirectSumWithTailBound) {
    for (double s : {1.5, 2.0, 3.0}) {
        double sum = 0.0;
        for (int n = 1000000; n >= 1; --n) sum += std::pow(static_cast<double>(n), -s);
        const double tail = std::pow(1e6, 1.0 - s) / (s - 1.0);
        EXPECT_LE(std::abs(zeta(s) - sum), tail) << s;
    }
}

TEST(Zeta, NearThePole) {
    // The value is ~1e6 here, so the check is relative.
    const double s = 1.0 + 1e-6;
    EXPECT_NEAR(zeta(s) * (s - 1.0), 1.0 + kEulerGamma * (s - 1.0), 1e-9);
    EXPECT_NEAR(zeta_times_pole(1.0 + 1e-7), 1.0 + kEulerGamma * 1e-7, 1e-14);
    EXPECT_NEAR(zeta_times_pole(2.0), kPi * kPi / 6.0, 1e-12);
    EXPECT_THROW(zeta(1.0), DomainError);
    EXPECT_THROW(zeta(0.5), DomainError);
}

TEST(Zeta, ReportsRemainderBound) {
    const auto r = zeta_with_bound(2.0);
    EXPECT_GE(r.remainder, 0.0);
    EXPECT_LE(std::abs(r.value - kPi * kPi / 6.0), std::max(r.remainder, 1e-15));
}

TEST(ZetaPrime, Examples) {
    EXPECT_NEAR(zeta_prime(2.0), -0.93754825431584375370, 1e-10);
    EXPECT_NEAR(zeta_prime(1.5), -3.9322397374311015107, 1e-10);
    EXPECT_NEAR(zeta_prime(3.0), -0.19812624288563685333, 1e-12);
    EXPECT_NEAR(zeta_prime(5.0), -0.02857378050946295008, 1e-13);
    EXPECT_NEAR(zeta_prime(1.1), -99.928163075770544793, 1e-8);
    double direct = 0.0;
    for (int n = 2; n <= 10; ++n) direct -= std::log(n) / std::pow(n, 20.0);
    EXPECT_NEAR(zeta_prime(20.0), direct, 1e-14);
}

TEST(ZetaPrime, NegativeOnDomain) {
    for (double s = 1.01; s < 40.0; s *= 1.1) EXPECT_LT(zeta_prime(s), 0.0) << s;
}

TEST(ZetaPrime, MatchesCentralDifferences) {
    const double h = 1e-5;
    for (double s : {1.5, 2.0, 3.0, 5.0})
        EXPECT_NEAR(zeta_prime(s), (zeta(s + h) - zeta(s - h)) / (2.0 * h), 1e-6) << s;
}

TEST(Tau, Examples) {
    EXPECT_NEAR(tau(1.0), (1.0 + std::sqrt(5.0)) / 2.0, 1e-15);
    EXPECT_DOUBLE_EQ(tau(0.0), 1.0);
    EXPECT_NEAR(tau(2.28266), 2.8367791242648502, 1e-13);
}

TEST(F, Examples) {
    EXPECT_NEAR(F_of_s(1.0 + 1e-6), 1.0, 1e-4);
    EXPECT_NEAR(F_of_s(2.0), 0.4 / std::sqrt(kPi), 1e-12);
    EXPECT_NEAR(F_of_s(1.0001), 0.99973017193663459492, 1e-11);
    EXPECT_NEAR(F_of_s(1.5), 0.38679407220371716688, 1e-12);
    EXPECT_NEAR(F_of_s(3.0), 0.12862752537709828077, 1e-12);
    EXPECT_GT(F_of_s(1.5), F_of_s(1.9));
    EXPECT_THROW(F_of_s(1.0), DomainError);
    EXPECT_THROW(F_of_s(3.5), DomainError);
}

TEST(F, DecreasingUpToMaxS) {
    double previous = F_of_s(1.0 + 1e-4);
    for (double s = 1.001; s <= kMaxS + 1e-12; s += 1e-3) {
        const double f = F_of_s(s);
        EXPECT_LT(f, previous) << s;
        previous = f;
    }
}

TEST(G, Examples) {
    EXPECT_LE(G0(2.0), 0.0);
    EXPECT_GE(G1(1.5), 0.0);
    EXPECT_LE(G1(2.0), -G0(2.0));
    EXPECT_NEAR(G0(1.5), -0.4058113847861649, 1e-11);
    EXPECT_NEAR(G1(1.5), 0.19046702312243218, 1e-11);
    EXPECT_NEAR(G0(2.5), -0.11398002117718987, 1e-11);
    EXPECT_NEAR(G1(2.5), 0.19134174788599823, 1e-11);
    EXPECT_THROW(G0(1.0), DomainError);
}

TEST(GValue, Examples) {
    const std::vector<double> pair{1.0, 1.0};
    EXPECT_DOUBLE_EQ(G_value(pair, Parity::even, 1.7), 0.0);
    EXPECT_DOUBLE_EQ(G_value(pair, Parity::odd, 2.2), 0.0);

    const std::vector<double> v{3.0, 2.0, 0.5, 0.25, 0.125};
    EXPECT_NEAR(G_value(v, Parity::even, 1.6), G0(1.6) * 0.875, 1e-14);

    const std::vector<double> ones{1.0, 1.0, 1.0, 1.0};
    const double odd = G_value(ones, Parity::odd, 1.5);
    EXPECT_NEAR(odd, G0(1.5) + G1(1.5), 1e-14);
    EXPECT_LE(odd, 0.0);
}

TEST(GridCheck, Ranges) {
    const auto odd = verify_G_inequalities(Parity::odd, kOddSRange, 1e-3);
    EXPECT_TRUE(odd.pass);
    EXPECT_GT(odd.margin, 0.0);
    EXPECT_DOUBLE_EQ(odd.s_hi, kOddSRange);

    const auto even = verify_G_inequalities(Parity::even, kEvenSRange, 1e-3);
    EXPECT_TRUE(even.pass);
    EXPECT_GT(even.margin, 0.0);

    const auto short_odd = verify_G_inequalities(Parity::odd, 1.5, 1e-2);
    EXPECT_TRUE(short_odd.pass);
    EXPECT_GE(short_odd.margin, odd.margin);
}

TEST(GridCheck, FailsPastTheRange) {
    EXPECT_FALSE(verify_G_inequalities(Parity::odd, 2.29, 1e-3).pass);
    EXPECT_FALSE(verify_G_inequalities(Parity::even, 2.99, 1e-3).pass);
}

TEST(GridCheck, RejectsBadArguments) {
    EXPECT_THROW(verify_G_inequalities(Parity::odd, 2.0, 0.0), DomainError);
    EXPECT_THROW(verify_G_inequalities(Parity::odd, 1.0, 1e-3), DomainError);
}
