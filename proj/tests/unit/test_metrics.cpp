#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ebr/error.hpp"
#include "ebr/metrics.hpp"
#include "ebr/protocol.hpp"
#include "random_states.hpp"

using namespace ebr;

namespace {

DensityOperator basis_projector(std::size_t k) {
    std::array<cplx, 4> v{};
    v[k] = 1.0;
    return pure_state(v);
}

ChannelConfig config(double T, ChannelScenario s) {
    ChannelConfig c;
    c.T = T;
    c.scenario = s;
    return c;
}

}  // namespace

TEST(Concurrence, Examples) {
    EXPECT_NEAR(concurrence(singlet()).value, 1.0, 1e-12);
    EXPECT_NEAR(concurrence(maximally_mixed(4)).value, 0.0, 1e-12);
    const auto s1 = stage1(config(0.5, ChannelScenario::distinguishable()));
    EXPECT_NEAR(concurrence(s1.state).value, 0.25, 1e-12);
}

TEST(Concurrence, SqrtEigenvaluesDescending) {
    std::mt19937_64 rng(1);
    const auto r = concurrence(fixtures::random_density(rng, 4, 3));
    ASSERT_EQ(r.sqrt_eigenvalues.size(), 4u);
    for (std::size_t i = 1; i < 4; ++i) EXPECT_GE(r.sqrt_eigenvalues[i - 1], r.sqrt_eigenvalues[i]);
    const auto &l = r.sqrt_eigenvalues;
    EXPECT_NEAR(r.value, std::max(0.0, l[0] - l[1] - l[2] - l[3]), 1e-12);
}

TEST(Concurrence, NotTwoQubit) {
    try {
        (void)concurrence(maximally_mixed(2));
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::NotTwoQubit);
    }
}

TEST(ConcurrenceX, Examples) {
    const auto p1 = XStateParams::from_entries(0.25, 0.75, 0.75, 0.25, -0.5);
    EXPECT_NEAR(p1.P, 0.5, 1e-15);
    EXPECT_NEAR(concurrence_x(p1), 0.25, 1e-12);

    const auto s2 = stage2(config(0.4, ChannelScenario::distinguishable()));
    EXPECT_NEAR(concurrence_x(s2.params), 0.16 / 0.52, 1e-12);
    EXPECT_NEAR(concurrence_x(XStateParams::from_entries(0.2, 0.3, 0.4, 0.1, 0.0)), 0.0, 0.0);
}

TEST(ConcurrenceX, InvalidParamsThrow) {
    auto p = XStateParams::from_entries(0.1, 0.1, 0.1, 0.1, 0.5);  // |xi| > sqrt(beta gamma)
    EXPECT_THROW((void)concurrence_x(p), Error);
    p = XStateParams::from_entries(0.1, 0.1, 0.1, 0.1, 0.0);
    p.P = 0.3;  // trace mismatch
    EXPECT_THROW((void)concurrence_x(p), Error);
}

TEST(ConcurrenceX, AgreesWithWoottersOnRandomParams) {
    std::mt19937_64 rng(2024);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const auto p = fixtures::random_x_params(rng);
        const double a = concurrence_x(p);
        const double b = concurrence(x_state(p)).value;
        worst = std::max(worst, std::abs(a - b));
    }
    EXPECT_LE(worst, 1e-12);
}

TEST(Concurrence, LocalUnitaryInvariance) {
    std::mt19937_64 rng(77);
    for (int i = 0; i < 200; ++i) {
        const auto rho = fixtures::random_density(rng, 4, 1 + i % 4);
        const auto moved = apply_local(rho, fixtures::random_unitary(rng, 2), fixtures::random_unitary(rng, 2));
        EXPECT_NEAR(concurrence(rho).value, concurrence(moved).value, 1e-10);
    }
}

TEST(ExtractXParams, RoundTripAndRejectsNonX) {
    std::mt19937_64 rng(6);
    for (int i = 0; i < 100; ++i) {
        const auto p = fixtures::random_x_params(rng);
        const auto q = extract_x_params(assemble(p) * cplx{0.25, 0.0});
        EXPECT_NEAR(q.alpha, p.alpha, 1e-15);
        EXPECT_NEAR(q.xi, p.xi, 1e-15);
        EXPECT_NEAR(q.P, p.P, 1e-15);
    }
    EXPECT_THROW((void)extract_x_params(fixtures::random_density(rng, 4, 2).matrix()), Error);
}

TEST(Fidelity, Examples) {
    std::mt19937_64 rng(3);
    const auto rho = fixtures::random_density(rng, 4, 2);
    EXPECT_NEAR(fidelity(rho, rho), 1.0, 1e-10);
    EXPECT_NEAR(fidelity(singlet(), maximally_mixed(4)), 0.25, 1e-12);
    EXPECT_NEAR(fidelity(basis_projector(BasisOrder::HH), basis_projector(BasisOrder::VV)), 0.0, 1e-12);
    EXPECT_THROW((void)fidelity(singlet(), maximally_mixed(2)), Error);
}

TEST(Fidelity, SymmetryAndRange) {
    std::mt19937_64 rng(4);
    for (int i = 0; i < 200; ++i) {
        const auto a = fixtures::random_density(rng, 4, 1 + i % 4);
        const auto b = fixtures::random_density(rng, 4, 1 + (i / 4) % 4);
        const double f = fidelity(a, b);
        EXPECT_NEAR(f, fidelity(b, a), 1e-10);
        EXPECT_GE(f, 0.0);
        EXPECT_LE(f, 1.0);
        EXPECT_LT(f, 1.0 - 1e-10);
    }
}

TEST(Werner, Examples) {
    EXPECT_NEAR(werner_decompose(maximally_mixed(4)).value(), 0.0, 1e-15);
    EXPECT_NEAR(werner_decompose(singlet()).value(), 1.0, 1e-15);
    const auto s = stage1(config(0.7, ChannelScenario::indistinguishable()));
    const auto q = werner_decompose(s.state);
    ASSERT_TRUE(q.has_value());
    EXPECT_GT(*q, 0.0);
    EXPECT_LT(*q, 1.0);
    EXPECT_FALSE(werner_decompose(basis_projector(BasisOrder::HH)).has_value());
}

// Signed form of the Werner structure: beta - alpha = -xi holds on the whole
// grid; the unsigned |xi| form only for T >= 1/2 (see README).
TEST(Werner, IndistinguishableStageOneSignedIdentity) {
    for (int k = 1; k <= 99; ++k) {
        const double T = k / 100.0;
        const auto s = stage1(config(T, ChannelScenario::indistinguishable()));
        EXPECT_NEAR(s.params.beta - s.params.alpha, -s.params.xi, 1e-12) << "T=" << T;
        const auto q = werner_decompose(s.state);
        ASSERT_TRUE(q.has_value()) << "T=" << T;
        EXPECT_GE(*q, -1.0 / 3.0 - 1e-12);
        EXPECT_LE(*q, 1.0 + 1e-12);
        EXPECT_EQ(*q > 1.0 / 3.0 + 1e-9, concurrence(s.state).value > 1e-9) << "T=" << T;
    }
}

TEST(Threshold, StageOne) {
    EXPECT_NEAR(breaking_threshold(ChannelScenario::distinguishable(), StageId::I), std::sqrt(2.0) - 1.0, 1e-9);
    EXPECT_NEAR(breaking_threshold(ChannelScenario::indistinguishable(), StageId::I), 1.0 / std::sqrt(3.0), 1e-9);
    const double mid = breaking_threshold(ChannelScenario::partial(0.5), StageId::I);
    EXPECT_GT(mid, std::sqrt(2.0) - 1.0);
    EXPECT_LT(mid, 1.0 / std::sqrt(3.0));
}

TEST(Threshold, NoCrossingThrows) {
    // stage II distinguishable is entangled for every T in (0,1)
    try {
        (void)breaking_threshold(ChannelScenario::distinguishable(), StageId::II);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::NoThreshold);
    }
    EXPECT_THROW((void)breaking_threshold(ChannelScenario::distinguishable(), StageId::III), Error);
}
