#pragma once

#include <cmath>
#include <random>

#include "ebr/complex_matrix.hpp"
#include "ebr/density_operator.hpp"
#include "ebr/metrics.hpp"

namespace ebr::fixtures {

inline ComplexMatrix random_matrix(std::mt19937_64 &rng, std::size_t rows, std::size_t cols) {
    std::normal_distribution<double> g;
    ComplexMatrix m(rows, cols);
    for (auto &e : m.entries()) {
        e = {g(rng), g(rng)};
    }
    return m;
}

// Gram-Schmidt on a Gaussian matrix; good enough for test unitaries.
inline ComplexMatrix random_unitary(std::mt19937_64 &rng, std::size_t n) {
    ComplexMatrix m = random_matrix(rng, n, n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < j; ++k) {
            cplx proj{};
            for (std::size_t i = 0; i < n; ++i) proj += std::conj(m(i, k)) * m(i, j);
            for (std::size_t i = 0; i < n; ++i) m(i, j) -= proj * m(i, k);
        }
        double norm = 0.0;
        for (std::size_t i = 0; i < n; ++i) norm += std::norm(m(i, j));
        norm = std::sqrt(norm);
        for (std::size_t i = 0; i < n; ++i) m(i, j) /= norm;
    }
    return m;
}

inline DensityOperator random_density(std::mt19937_64 &rng, std::size_t dim, std::size_t rank) {
    const ComplexMatrix g = random_matrix(rng, dim, rank);
    ComplexMatrix rho = g * g.adjoint();
    rho *= cplx{1.0 / rho.trace().real(), 0.0};
    // symmetrize away rounding
    ComplexMatrix h = rho.adjoint();
    h += rho;
    h *= cplx{0.5, 0.0};
    return DensityOperator(h);
}

inline XStateParams random_x_params(std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
    if (u(rng) < 0.2) a = 0.0;
    if (u(rng) < 0.1) d = 0.0;
    const double scale = 4.0 * (0.05 + 0.95 * u(rng)) / (a + b + c + d);
    a *= scale;
    b *= scale;
    c *= scale;
    d *= scale;
    const double xi = (2.0 * u(rng) - 1.0) * std::sqrt(b * c);
    return XStateParams::from_entries(a, b, c, d, xi);
}

}  // namespace ebr::fixtures
