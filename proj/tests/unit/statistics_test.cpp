#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include <gtest/gtest.h>

#include "hwalk/statistics.hpp"

using namespace hwalk;

namespace {
const double kSigma3Origin = 2.0 * std::sqrt(46.0) / 45.0;  // 0.30143688...
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

WalkConfig cfg(std::size_t n, double alpha = 1.0) { return WalkConfig{n, alpha, std::nullopt}; }

double max_deviation_from_uniform(const SiteDistribution& d) {
    double worst = 0.0;
    for (double p : d.probs) worst = std::max(worst, std::abs(p - 1.0 / static_cast<double>(d.sites())));
    return worst;
}

// Composite Simpson rule over one period [0, 2 pi), used as an oracle for the
// closed-form averages; the integrands are 2 pi periodic so the 4 pi average is the same.
double period_average(const std::function<double(double)>& f, int intervals = 20000) {
    const double h = 2.0 * std::numbers::pi / intervals;
    double s = f(0.0) + f(2.0 * std::numbers::pi);
    for (int i = 1; i < intervals; ++i) s += (i % 2 ? 4.0 : 2.0) * f(i * h);
    return s * h / 3.0 / (2.0 * std::numbers::pi);
}
}  // namespace

TEST(TimeAverage, SingleSampleIsInitialDistribution) {
    const auto d = time_averaged_distribution(cfg(5), 1);
    EXPECT_EQ(d.probs, (std::vector<double>{1.0, 0.0, 0.0, 0.0, 0.0}));
}

TEST(TimeAverage, OddNIsUniform) {
    const auto d = time_averaged_distribution(cfg(5), 100000);
    EXPECT_LT(max_deviation_from_uniform(d), 1e-2);
    EXPECT_NEAR(d.total(), 1.0, 1e-10);
}

TEST(TimeAverage, EvenNCanBeNonUniform) {
    // Observed by simulation: 0.0667 for N = 6 and 0.0209 for N = 8.
    EXPECT_GT(max_deviation_from_uniform(time_averaged_distribution(cfg(6), 10000)), 0.05);
    EXPECT_GT(max_deviation_from_uniform(time_averaged_distribution(cfg(8), 10000)), 0.01);
    // N = 4 happens to average to exactly 1/4 at every site, for every alpha.
    for (double a : {0.0, kInvSqrt2, 1.0})
        EXPECT_LT(max_deviation_from_uniform(time_averaged_distribution(cfg(4, a), 10000)), 1e-10);
}

TEST(TimeAverage, RejectsZeroWindow) { EXPECT_THROW(time_averaged_distribution(cfg(3), 0), DomainError); }

TEST(EmpiricalSigma, MatchesExactN3Values) {
    const auto prof = empirical_sigma_profile(cfg(3), 1000000);
    EXPECT_NEAR(prof.values[0], kSigma3Origin, 5e-3);
    EXPECT_NEAR(prof.values[2], 2.0 / 9.0, 5e-3);
    EXPECT_EQ(prof.method, SigmaMethod::empirical);
    EXPECT_EQ(prof.steps, 1000000u);
    EXPECT_NEAR(empirical_sigma(cfg(3), 1000000, 2, MeanMode::exact_uniform), 2.0 / 9.0, 5e-3);
}

TEST(EmpiricalSigma, ExactMeanModeNeedsOddN) {
    EXPECT_THROW(empirical_sigma(cfg(4), 100, 0, MeanMode::exact_uniform), ParityError);
    EXPECT_THROW(empirical_sigma(cfg(4), 100, 4), DomainError);
}

TEST(EmpiricalSigma, DistanceToExactShrinksWithT) {
    const std::size_t n = 5;
    double prev = 1.0;
    for (std::uint64_t t : {100u, 10000u, 1000000u}) {
        const auto prof = empirical_sigma_profile(cfg(n), t, MeanMode::exact_uniform);
        double err = 0.0;
        for (std::size_t site = 0; site < n; ++site)
            err = std::max(err, std::abs(prof.values[site] - closed_form_sigma(n, site)));
        EXPECT_LT(err, prev) << "T=" << t;
        prev = err;
    }
}

TEST(TrigSums, HandValuesN3) {
    // theta_j = 0, 4pi/3, 8pi/3: cos = 1, -1/2, -1/2; 3 + cos = 4, 5/2, 5/2.
    const auto s = trig_sums(3, 0);
    EXPECT_NEAR(s.s0, 21.0 / 20.0, 1e-15);
    EXPECT_NEAR(s.s1, -3.0 / 20.0, 1e-15);
    EXPECT_NEAR(s.s_plus, 0.9, 1e-15);
    EXPECT_NEAR(s.s_minus, -1.2, 1e-15);
    EXPECT_NEAR(s.s2, 1.76, 1e-14);
    EXPECT_NEAR(closed_form_variance(3, 0), 184.0 / 2025.0, 1e-15);
    ASSERT_EQ(s.theta.size(), 3u);
    EXPECT_NEAR(s.theta[1], 4.0 * std::numbers::pi / 3.0, 1e-15);
}

TEST(TrigSums, ZeroModeDoesNotContributeToDifferenceSum) {
    // S_-(n) restricted to j = 0 vanishes, so S_-(1) for any N is a sum over j >= 1 only:
    // cos(0) - cos(theta_j) over (3 + cos theta_j).
    for (std::size_t n : {3u, 7u, 15u}) {
        double manual = 0.0;
        for (std::size_t j = 1; j < n; ++j) {
            const double th = 4.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
            manual += (1.0 - std::cos(th)) / (3.0 + std::cos(th));
        }
        EXPECT_NEAR(trig_sums(n, 1).s_minus, manual, 1e-12);
        EXPECT_GT(trig_sums(n, 1).s0, 0.0);
    }
}

TEST(TrigSums, Errors) {
    EXPECT_THROW(trig_sums(4, 0), ParityError);
    EXPECT_THROW(trig_sums(5, 5), DomainError);
}

TEST(ClosedForm, N3Values) {
    EXPECT_NEAR(closed_form_sigma(3, 0), kSigma3Origin, 1e-12);
    EXPECT_NEAR(closed_form_sigma(3, 1), kSigma3Origin, 1e-12);
    EXPECT_NEAR(closed_form_sigma(3, 2), 2.0 / 9.0, 1e-12);
}

TEST(ClosedForm, Errors) {
    EXPECT_THROW(closed_form_sigma(8, 0), ParityError);
    EXPECT_THROW(closed_form_sigma(9, 9), DomainError);
    EXPECT_THROW(closed_form_sigma(1, 0), DomainError);
}

TEST(ClosedForm, ReflectionSymmetry) {
    for (std::size_t n = 3; n <= 51; n += 2)
        for (std::size_t site = 0; site < n; ++site)
            EXPECT_NEAR(closed_form_sigma(n, site), closed_form_sigma(n, (n + 1 - site) % n), 1e-12)
                << "N=" << n << " n=" << site;
}

TEST(ClosedForm, MaximumAtOriginPair) {
    for (std::size_t n = 3; n <= 51; n += 2) {
        const auto p = closed_form_profile(n).values;
        const auto top = std::max_element(p.begin(), p.end());
        EXPECT_EQ(top - p.begin(), 0) << "N=" << n;
        EXPECT_NEAR(p[0], p[1], 1e-12);
        for (std::size_t site = 2; site < n; ++site) EXPECT_LT(p[site], p[0] - 1e-6);
    }
}

TEST(ClosedForm, DistinctExceptMirrorPairs) {
    // Smallest gap between non-mirror sites is ~3e-9 (N = 21); rounding error is ~1e-16.
    for (std::size_t n = 3; n <= 21; n += 2) {
        const auto p = closed_form_profile(n).values;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b) {
                if (b == (n + 1 - a) % n) continue;
                EXPECT_GT(std::abs(p[a] - p[b]), 1e-11) << "N=" << n << " sites " << a << "," << b;
            }
    }
}

TEST(ClosedForm, AgreesWithLongSimulation) {
    for (std::size_t n = 5; n <= 41; n += 2) {
        const auto sim = empirical_sigma_profile(cfg(n), 1000000);
        for (std::size_t site = 0; site < n; ++site)
            EXPECT_NEAR(sim.values[site], closed_form_sigma(n, site), 5e-3) << "N=" << n << " n=" << site;
    }
}

TEST(SigmaOrigin, MatchesGeneralFormula) {
    EXPECT_NEAR(sigma_origin(3), kSigma3Origin, 1e-12);
    for (std::size_t n = 3; n <= 51; n += 2) EXPECT_NEAR(sigma_origin(n), closed_form_sigma(n, 0), 1e-12);
    EXPECT_THROW(sigma_origin(10), ParityError);
}

TEST(Asymptotic, Constants) {
    EXPECT_NEAR(13.0 - 8.0 * std::sqrt(2.0), 1.6862915, 1e-7);
    EXPECT_NEAR(asymptotic_sigma_origin(10001) * 10001.0, std::sqrt(13.0 - 8.0 * std::sqrt(2.0)), 1e-3);
    EXPECT_THROW(asymptotic_sigma_origin(6), ParityError);
}

TEST(Asymptotic, RegimeOfValidity) {
    const auto rel = [](std::size_t n) {
        return std::abs(asymptotic_sigma_origin(n) - sigma_origin(n)) / sigma_origin(n);
    };
    EXPECT_GT(rel(3), 0.05);
    EXPECT_LT(rel(21), 0.05);
    for (std::size_t n = 5; n < 21; n += 2) EXPECT_GT(rel(n), rel(n + 2));
    EXPECT_LT(std::abs(sigma_origin(201) - asymptotic_sigma_origin(201)), 1e-6);
}

TEST(Sigma3Alpha, OriginIsAlphaIndependent) {
    for (int i = 0; i <= 100; ++i) EXPECT_NEAR(sigma3_alpha(0, i / 100.0), kSigma3Origin, 1e-15);
}

TEST(Sigma3Alpha, KnownPoints) {
    const double sym = 2.0 / 45.0 * std::sqrt(23.0 / 2.0);
    EXPECT_NEAR(sigma3_alpha(1, kInvSqrt2), sym, 1e-12);
    EXPECT_NEAR(sigma3_alpha(2, kInvSqrt2), sym, 1e-12);
    EXPECT_NEAR(sym, 0.1507184, 1e-7);
    EXPECT_NEAR(sigma3_alpha(1, 0.0), 2.0 / 9.0, 1e-15);
    for (std::size_t site = 0; site < 3; ++site)
        EXPECT_NEAR(sigma3_alpha(site, 1.0), closed_form_sigma(3, site), 1e-12);
}

TEST(Sigma3Alpha, MinimaNearSymmetricStart) {
    for (std::size_t site : {1u, 2u}) {
        double best_alpha = 0.0, best = 1.0;
        for (int i = 0; i <= 10000; ++i) {
            const double a = i / 10000.0;
            if (sigma3_alpha(site, a) < best) best = sigma3_alpha(site, a), best_alpha = a;
        }
        EXPECT_NEAR(best_alpha, kInvSqrt2, 0.1) << "site " << site;
    }
}

TEST(Sigma3Alpha, AgreesWithSimulation) {
    for (double a : {0.0, 0.3, 0.5, kInvSqrt2, 0.9}) {
        const auto sim = empirical_sigma_profile(cfg(3, a), 1000000, MeanMode::exact_uniform);
        for (std::size_t site = 0; site < 3; ++site)
            EXPECT_NEAR(sim.values[site], sigma3_alpha(site, a), 5e-3) << "alpha=" << a << " n=" << site;
    }
}

TEST(Sigma3Alpha, Errors) {
    EXPECT_THROW(sigma3_alpha(3, 0.5), DomainError);
    EXPECT_THROW(sigma3_alpha(0, -0.5), DomainError);
    EXPECT_THROW(sigma3_alpha(1, 1.5), DomainError);
}

TEST(TrigAverages, LimitConstantsMatchQuadrature) {
    const auto lim = trig_average_limits();
    const auto d = [](double x) { return 3.0 + std::cos(x); };
    EXPECT_NEAR(lim.inv, period_average([&](double x) { return 1.0 / d(x); }), 1e-12);
    EXPECT_NEAR(lim.cos_over, period_average([&](double x) { return std::cos(x) / d(x); }), 1e-12);
    EXPECT_NEAR(lim.inv_sq, period_average([&](double x) { return 1.0 / (d(x) * d(x)); }), 1e-12);
    EXPECT_NEAR(lim.cos_over_sq, period_average([&](double x) { return std::cos(x) / (d(x) * d(x)); }), 1e-12);
    EXPECT_NEAR(lim.cos2_over_sq, period_average([&](double x) { return std::cos(2 * x) / (d(x) * d(x)); }), 1e-12);
}

TEST(TrigAverages, RiemannSumsConvergeAtN101) {
    const auto got = trig_averages(101);
    const auto lim = trig_average_limits();
    EXPECT_NEAR(got.inv, lim.inv, 1e-10);
    EXPECT_NEAR(got.cos_over, lim.cos_over, 1e-10);
    EXPECT_NEAR(got.inv_sq, lim.inv_sq, 1e-10);
    EXPECT_NEAR(got.cos_over_sq, lim.cos_over_sq, 1e-10);
    EXPECT_NEAR(got.cos2_over_sq, lim.cos2_over_sq, 1e-10);
}

TEST(SigmaMethod, Names) {
    EXPECT_EQ(to_string(SigmaMethod::exact), "exact");
    EXPECT_EQ(to_string(SigmaMethod::resonance_oracle), "resonance");
    EXPECT_EQ(to_string(SigmaMethod::sigma3_alpha), "sigma3-alpha");
}
