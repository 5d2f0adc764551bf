#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "ebr/complex_matrix.hpp"
#include "ebr/density_operator.hpp"
#include "ebr/error.hpp"
#include "ebr/hermitian.hpp"
#include "ebr/kernels.hpp"
#include "ebr/serialization.hpp"
#include "random_states.hpp"

using namespace ebr;

namespace {

DensityOperator projector(std::initializer_list<cplx> amps) {
    std::vector<cplx> v(amps);
    return pure_state(v);
}

const cplx I{0.0, 1.0};

}  // namespace

TEST(Kernels, Avx2MatmulIsBitIdenticalToScalar) {
    if (!kernels::avx2_available()) GTEST_SKIP() << "no AVX2 on this host";
    const auto scalar = kernels::table_for(kernels::Isa::Scalar);
    const auto avx = kernels::table_for(kernels::Isa::Avx2);
    std::mt19937_64 rng(11);
    for (std::size_t n : {1u, 2u, 3u, 4u, 5u, 8u, 17u}) {
        for (std::size_t k : {1u, 4u, 7u}) {
            const auto a = fixtures::random_matrix(rng, n, k);
            const auto b = fixtures::random_matrix(rng, k, n + 1);
            std::vector<cplx> c1(n * (n + 1)), c2(n * (n + 1));
            scalar.matmul(a.entries().data(), b.entries().data(), c1.data(), n, k, n + 1);
            avx.matmul(a.entries().data(), b.entries().data(), c2.data(), n, k, n + 1);
            for (std::size_t i = 0; i < c1.size(); ++i) {
                EXPECT_EQ(c1[i], c2[i]) << "n=" << n << " k=" << k << " i=" << i;
            }
        }
    }
}

TEST(Kernels, Avx2DotMatchesScalar) {
    if (!kernels::avx2_available()) GTEST_SKIP() << "no AVX2 on this host";
    const auto scalar = kernels::table_for(kernels::Isa::Scalar);
    const auto avx = kernels::table_for(kernels::Isa::Avx2);
    std::mt19937_64 rng(12);
    for (std::size_t len : {0u, 1u, 2u, 3u, 16u, 33u, 400u}) {
        const auto a = fixtures::random_matrix(rng, 1, len == 0 ? 1 : len);
        const auto b = fixtures::random_matrix(rng, 1, len == 0 ? 1 : len);
        const double s = scalar.dot_conj_real(a.entries().data(), b.entries().data(), len);
        const double v = avx.dot_conj_real(a.entries().data(), b.entries().data(), len);
        EXPECT_NEAR(s, v, 1e-13 * (1.0 + std::abs(s)));
    }
}

TEST(ComplexMatrixTest, ProductMatchesEigen) {
    std::mt19937_64 rng(3);
    const auto a = fixtures::random_matrix(rng, 4, 6);
    const auto b = fixtures::random_matrix(rng, 6, 3);
    const ComplexMatrix c = a * b;
    Eigen::MatrixXcd ea(4, 6), eb(6, 3);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 6; ++j) ea(i, j) = a(i, j);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 3; ++j) eb(i, j) = b(i, j);
    const Eigen::MatrixXcd ec = ea * eb;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 3; ++j) EXPECT_LT(std::abs(ec(i, j) - c(i, j)), 1e-12);
}

TEST(ComplexMatrixTest, DimensionMismatchThrows) {
    const ComplexMatrix a(2, 3), b(2, 3);
    try {
        (void)(a * b);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
    }
}

TEST(Eigh, MatchesEigenOnRandomHermitian) {
    std::mt19937_64 rng(5);
    for (std::size_t n : {1u, 2u, 4u, 8u, 16u}) {
        for (int rep = 0; rep < 20; ++rep) {
            auto g = fixtures::random_matrix(rng, n, n);
            ComplexMatrix h = g.adjoint();
            h += g;
            const auto ours = eigh(h);
            Eigen::MatrixXcd eh(n, n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) eh(i, j) = h(i, j);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(eh);
            for (std::size_t i = 0; i < n; ++i) {
                EXPECT_NEAR(ours.values[i], es.eigenvalues()(i), 1e-11);
            }
            // reconstruction V diag V^dagger
            const ComplexMatrix back = spectral_apply(ours, [](double x) { return x; });
            EXPECT_LT(max_abs_diff(back, h), 1e-11);
        }
    }
}

TEST(Eigh, DegenerateSpectrum) {
    const auto e = eigh(ComplexMatrix::identity(4));
    for (double v : e.values) EXPECT_DOUBLE_EQ(v, 1.0);
    const auto s = sqrt_psd(maximally_mixed(4).matrix());
    EXPECT_LT(max_abs_diff(s, ComplexMatrix::identity(4) * cplx{0.5, 0.0}), 1e-15);
}

TEST(Tensor, Examples) {
    const auto half = maximally_mixed(2);
    EXPECT_LT(max_abs_diff(tensor(half, half).matrix(), maximally_mixed(4).matrix()), 1e-15);

    const auto hv = tensor(projector({1, 0}), projector({0, 1}));
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            EXPECT_EQ(hv(i, j), (i == BasisOrder::HV && j == BasisOrder::HV) ? cplx{1.0} : cplx{0.0});

    const auto rho = singlet();
    const DensityOperator unit(ComplexMatrix{{{1.0}}});
    EXPECT_EQ(tensor(rho, unit).matrix(), rho.matrix());
}

TEST(Tensor, OverflowGuard) {
    const auto big = maximally_mixed(64);
    try {
        (void)tensor(big, big);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::DimensionOverflow);
    }
}

TEST(PartialTrace, Examples) {
    EXPECT_LT(max_abs_diff(partial_trace(singlet(), Subsystem::A, 2, 2).matrix(), maximally_mixed(2).matrix()), 1e-15);
    EXPECT_LT(max_abs_diff(partial_trace(maximally_mixed(4), Subsystem::A, 2, 2).matrix(), maximally_mixed(2).matrix()),
              1e-15);
    std::mt19937_64 rng(8);
    const auto a = fixtures::random_density(rng, 2, 2);
    const auto b = fixtures::random_density(rng, 2, 1);
    EXPECT_LT(max_abs_diff(partial_trace(tensor(a, b), Subsystem::B, 2, 2).matrix(), b.matrix()), 1e-12);
    EXPECT_THROW((void)partial_trace(singlet(), Subsystem::A, 2, 3), Error);
}

TEST(PartialTrace, RoundTripScalesWithTrace) {
    std::mt19937_64 rng(9);
    for (int rep = 0; rep < 50; ++rep) {
        const auto a = fixtures::random_density(rng, 2, 2);
        ComplexMatrix bm = fixtures::random_density(rng, 4, 3).matrix();
        bm *= cplx{0.3, 0.0};
        const DensityOperator b(bm);
        ComplexMatrix expected = a.matrix();
        expected *= cplx{b.trace_weight(), 0.0};
        EXPECT_LT(max_abs_diff(partial_trace(tensor(a, b), Subsystem::A, 2, 4).matrix(), expected), 1e-12);
    }
}

TEST(ApplyLocal, Examples) {
    const auto rho_b = maximally_mixed(2);
    const auto in = tensor(projector({1, 0}), rho_b);
    const auto flipped = apply_local(in, pauli::x(), pauli::identity());
    EXPECT_LT(max_abs_diff(flipped.matrix(), tensor(projector({0, 1}), rho_b).matrix()), 1e-15);

    EXPECT_LT(max_abs_diff(apply_local(singlet(), pauli::identity(), pauli::identity()).matrix(), singlet().matrix()),
              1e-15);

    const std::array<cplx, 2> d{1.0, std::sqrt(0.5)};
    const auto filtered = apply_local(maximally_mixed(4), ComplexMatrix::diagonal(d), pauli::identity());
    EXPECT_NEAR(filtered.trace_weight(), (1.0 + 0.5) * 2.0 / 4.0, 1e-15);
}

TEST(ApplyLocal, UnitariesPreserveSpectrum) {
    std::mt19937_64 rng(10);
    for (int rep = 0; rep < 50; ++rep) {
        const auto rho = fixtures::random_density(rng, 4, 1 + rep % 4);
        const auto out = apply_local(rho, fixtures::random_unitary(rng, 2), fixtures::random_unitary(rng, 2));
        const auto e0 = eigh(rho.matrix()).values;
        const auto e1 = eigh(out.matrix()).values;
        for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(e0[i], e1[i], 1e-12);
        const auto report = validate(out);
        EXPECT_TRUE(report.ok());
        EXPECT_LE(report.hermiticity_residual, kTolHermitian);
        EXPECT_GE(report.min_eigenvalue, -kTolPsd);
    }
}

TEST(Normalize, Examples) {
    ComplexMatrix m = singlet().matrix();
    m *= cplx{2.0, 0.0};
    const auto [state, prob] = normalize(DensityOperator(m));
    EXPECT_DOUBLE_EQ(prob, 2.0);
    EXPECT_LT(max_abs_diff(state.matrix(), singlet().matrix()), 1e-15);
    try {
        (void)normalize(DensityOperator(ComplexMatrix(4, 4)));
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::ZeroTrace);
    }
}

TEST(Validate, Examples) {
    EXPECT_TRUE(validate(singlet()).ok());

    ComplexMatrix nonherm(4, 4);
    nonherm(1, 2) = 1.0;
    const auto r1 = validate(DensityOperator(nonherm));
    EXPECT_FALSE(r1.hermitian);

    const std::array<cplx, 4> d{1.5, -0.5, 0.0, 0.0};
    const auto r2 = validate(DensityOperator(ComplexMatrix::diagonal(d)));
    EXPECT_TRUE(r2.hermitian);
    EXPECT_FALSE(r2.positive);
}

TEST(DensityOperatorTest, RejectsNonFinite) {
    ComplexMatrix m = ComplexMatrix::identity(2);
    m(0, 1) = std::numeric_limits<double>::quiet_NaN();
    try {
        DensityOperator d(m);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::NonFinite);
    }
}

TEST(Singlet, Convention) {
    const auto s = singlet();
    EXPECT_NEAR(s(BasisOrder::HV, BasisOrder::HV).real(), 0.5, 1e-15);
    // (|HV> - i|VH>)/sqrt2: <HV|rho|VH> = (1/2)(1)(conj(-i)) = i/2
    EXPECT_LT(std::abs(s(BasisOrder::HV, BasisOrder::VH) - 0.5 * I), 1e-15);
}

TEST(Serialization, BitExactRoundTrip) {
    std::mt19937_64 rng(21);
    for (int rep = 0; rep < 20; ++rep) {
        const auto rho = fixtures::random_density(rng, 4, 2);
        const auto j = to_json(rho);
        const auto back = density_from_json(nlohmann::json::parse(j.dump()));
        EXPECT_EQ(back.matrix(), rho.matrix());
        EXPECT_EQ(back.trace_weight(), rho.trace_weight());
    }
    const auto j = to_json(singlet());
    EXPECT_EQ(j["basis"], nlohmann::json({"HH", "HV", "VH", "VV"}));
}

TEST(Serialization, RejectsWrongBasis) {
    auto j = to_json(singlet());
    j["basis"] = {"HH", "VH", "HV", "VV"};
    EXPECT_THROW((void)density_from_json(j), Error);
}

TEST(Serialization, FormatDoubleRoundTrips) {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-1e3, 1e3);
    for (int i = 0; i < 1000; ++i) {
        const double x = u(rng);
        EXPECT_EQ(std::stod(format_double(x)), x);
    }
    EXPECT_EQ(format_shortest(0.41), "0.41");
    EXPECT_EQ(format_double(std::numeric_limits<double>::quiet_NaN()), "nan");
}
