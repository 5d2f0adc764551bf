#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "ebr/error.hpp"
#include "ebr/hermitian.hpp"
#include "ebr/metrics.hpp"
#include "ebr/protocol.hpp"
#include "ebr/tomography.hpp"
#include "random_states.hpp"

using namespace ebr;
using namespace ebr::tomography;

namespace {

double trace_distance(const DensityOperator &a, const DensityOperator &b) {
    ComplexMatrix d = a.matrix();
    d -= b.matrix();
    double s = 0.0;
    for (double v : eigh(d).values) s += std::abs(v);
    return 0.5 * s;
}

std::vector<double> exact_rates(const DensityOperator &rho, const std::vector<TomographySetting> &settings) {
    std::vector<double> out;
    for (const auto &s : settings) out.push_back(real_trace_product(rho.matrix(), s.projector()));
    return out;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v.size() % 2 ? v[v.size() / 2] : 0.5 * (v[v.size() / 2 - 1] + v[v.size() / 2]);
}

DensityOperator stage2_state(double T) {
    ChannelConfig c;
    c.T = T;
    return stage2(c).state;
}

}  // namespace

TEST(Settings, Standard) {
    const auto s = standard_settings();
    ASSERT_EQ(s.size(), 36u);
    EXPECT_NE(std::find(s.begin(), s.end(), TomographySetting{Analyzer::H, Analyzer::H}), s.end());
    EXPECT_NE(std::find(s.begin(), s.end(), TomographySetting{Analyzer::L, Analyzer::D}), s.end());
    for (const auto &x : s) {
        const auto p = x.projector();
        EXPECT_NEAR(p.trace().real(), 1.0, 1e-15);
        EXPECT_LE(hermiticity_residual(p), 1e-12);
        EXPECT_LT(max_abs_diff(p * p, p), 1e-12);  // rank-1 projector
    }
    EXPECT_EQ(minimal_settings().size(), 16u);
}

TEST(Settings, AnalyzerNames) {
    for (auto a : {Analyzer::H, Analyzer::V, Analyzer::D, Analyzer::A, Analyzer::R, Analyzer::L}) {
        EXPECT_EQ(analyzer_from_name(analyzer_name(a)), a);
    }
    EXPECT_THROW((void)analyzer_from_name("X"), Error);
}

TEST(SimulateCounts, Examples) {
    const auto mixed = simulate_counts(maximally_mixed(4), standard_settings(), 500, 1);
    for (const auto &r : mixed) EXPECT_NEAR(r.expected_rate, 0.25, 1e-15);
    const auto s = simulate_counts(singlet(), standard_settings(), 500, 1);
    EXPECT_EQ(s.front().setting, (TomographySetting{Analyzer::H, Analyzer::H}));
    EXPECT_EQ(s.front().expected_rate, 0.0);
    EXPECT_EQ(s.front().observed, 0u);
}

TEST(SimulateCounts, Deterministic) {
    const auto a = simulate_counts(singlet(), standard_settings(), 500, 17);
    const auto b = simulate_counts(singlet(), standard_settings(), 500, 17);
    const auto c = simulate_counts(singlet(), standard_settings(), 500, 18);
    bool differs = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].observed, b[i].observed);
        differs |= a[i].observed != c[i].observed;
    }
    EXPECT_TRUE(differs);
    EXPECT_EQ(counts_to_csv(a), counts_to_csv(b));
}

TEST(SimulateCounts, BudgetIsMeanTotal) {
    double total = 0.0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        for (const auto &r : simulate_counts(singlet(), standard_settings(), 500, seed)) total += r.observed;
    }
    EXPECT_NEAR(total / 200.0, 500.0, 5.0);
}

TEST(Reconstruct, NoiselessInversionIsExact) {
    std::mt19937_64 rng(31);
    for (const auto &settings : {standard_settings(), minimal_settings()}) {
        for (int k = 0; k < 20; ++k) {
            const auto rho = fixtures::random_density(rng, 4, 1 + k % 4);
            const auto est = linear_inversion(settings, exact_rates(rho, settings));
            EXPECT_LT(max_abs_diff(est, rho.matrix()), 1e-10);
            EXPECT_LT(max_abs_diff(project_physical(est).matrix(), rho.matrix()), 1e-10);
        }
    }
}

TEST(Reconstruct, RankDeficient) {
    std::vector<TomographySetting> few;
    for (auto a : {Analyzer::H, Analyzer::V})
        for (auto b : {Analyzer::H, Analyzer::V, Analyzer::D, Analyzer::A}) few.push_back({a, b});
    const auto recs = simulate_counts(singlet(), few, 500, 3);
    try {
        (void)reconstruct(recs);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::RankDeficient);
    }
}

TEST(Reconstruct, AlwaysPhysical) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto rho = reconstruct(simulate_counts(stage2_state(0.4), standard_settings(), 50, seed));
        EXPECT_TRUE(validate(rho).ok());
        EXPECT_NEAR(rho.trace_weight(), 1.0, 1e-12);
    }
}

TEST(Reconstruct, BackgroundSubtraction) {
    const auto truth = stage2_state(0.6);
    std::vector<double> med;
    for (double bg : {0.0, 20.0}) {
        std::vector<double> f;
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            const auto recs = simulate_counts(truth, standard_settings(), 1e5, seed, bg);
            f.push_back(fidelity(reconstruct(recs, {bg}), truth));
        }
        med.push_back(median(f));
    }
    EXPECT_GT(med[0], 0.995);
    EXPECT_GT(med[1], 0.995);
}

TEST(Reconstruct, ConsistencyOverBudgets) {
    const auto truth = stage2_state(0.4);
    double previous = 1.0;
    for (double budget : {1e3, 1e4, 1e5, 1e6}) {
        std::vector<double> d;
        for (std::uint64_t seed = 0; seed < 200; ++seed) {
            d.push_back(trace_distance(reconstruct(simulate_counts(truth, standard_settings(), budget, seed)), truth));
        }
        const double m = median(d);
        EXPECT_LT(m, previous) << budget;
        previous = m;
    }
    EXPECT_LT(previous, 0.01);
}

// Clipping after linear inversion biases concurrence low at small budgets;
// the bias fades as the budget grows.
TEST(Reconstruct, StageTwoCalibration) {
    const auto truth = stage2_state(0.4);
    const double c_true = concurrence(truth).value;
    std::vector<double> fids;
    double previous_bias = -1.0;
    int close = 0;
    for (double budget : {500.0, 5e3, 2e4}) {
        double mean = 0.0;
        close = 0;
        for (std::uint64_t seed = 0; seed < 200; ++seed) {
            const auto rho = reconstruct(simulate_counts(truth, standard_settings(), budget, seed));
            const double c = concurrence(rho).value;
            mean += c / 200.0;
            close += std::abs(c - c_true) <= 0.1;
            if (budget == 500.0) fids.push_back(fidelity(rho, truth));
        }
        const double bias = mean - c_true;
        EXPECT_LT(bias, 0.0) << budget;
        EXPECT_GT(bias, previous_bias) << budget;
        previous_bias = bias;
    }
    EXPECT_GE(close, 180);
    EXPECT_GE(median(fids), 0.9);
}

TEST(ErrorBars, RequiresTrials) {
    const auto recs = simulate_counts(singlet(), standard_settings(), 500, 1);
    EXPECT_THROW((void)error_bars(singlet(), recs, 50, 1), Error);
}

TEST(ErrorBars, DeterministicAndSinglet) {
    const auto recs = simulate_counts(singlet(), standard_settings(), 500, 7);
    const auto est = reconstruct(recs);
    const auto a = error_bars(est, recs, 200, 7);
    const auto b = error_bars(est, recs, 200, 7);
    EXPECT_EQ(a.concurrence_std, b.concurrence_std);
    EXPECT_EQ(a.fidelity_mean, b.fidelity_mean);
    EXPECT_EQ(a.probability_std, b.probability_std);
    EXPECT_GE(a.concurrence_std, 0.02);
    EXPECT_LE(a.concurrence_std, 0.1);
}

TEST(ErrorBars, VanishWithHugeBudget) {
    std::mt19937_64 rng(2);
    const auto rho = fixtures::random_density(rng, 4, 4);
    const auto settings = standard_settings();
    const auto recs = simulate_counts(rho, settings, 1e14, 1);
    const auto rep = error_bars(rho, recs, 100, 1);
    EXPECT_LT(rep.fidelity_std, 1e-6);
    EXPECT_LT(rep.concurrence_std, 1e-6);
    EXPECT_LT(rep.probability_std, 1e-6);
}

TEST(ErrorBars, PoissonScaling) {
    // std of the full-rank stage-I state's estimates falls by sqrt(2) per doubling
    ChannelConfig c;
    c.T = 0.7;
    const auto truth = stage1(c).state;
    std::vector<double> xs, ys;
    for (double budget : {2e3, 4e3, 8e3, 16e3}) {
        const auto recs = simulate_counts(truth, standard_settings(), budget, 5);
        const auto rep = error_bars(truth, recs, 400, 5);
        xs.push_back(std::log(budget));
        ys.push_back(std::log(rep.concurrence_std));
    }
    const double mx = (xs[0] + xs[1] + xs[2] + xs[3]) / 4, my = (ys[0] + ys[1] + ys[2] + ys[3]) / 4;
    double sxy = 0, sxx = 0;
    for (int i = 0; i < 4; ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    EXPECT_NEAR(sxy / sxx, -0.5, 0.1);
}
