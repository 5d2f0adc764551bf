#pragma once

#include <functional>
#include <vector>

#include "ebr/complex_matrix.hpp"

namespace ebr {

/// Spectral decomposition m = V diag(values) V†, values ascending,
/// eigenvectors in the columns of `vectors`.
struct HermitianEigen {
    std::vector<double> values;
    ComplexMatrix vectors;
};

/// Cyclic complex Jacobi. Only the Hermitian part of `m` is used.
HermitianEigen eigh(const ComplexMatrix &m);

/// V diag(f(values)) V†
ComplexMatrix spectral_apply(const HermitianEigen &eig, const std::function<double(double)> &f);

/// Principal square root of a PSD matrix. Eigenvalues below
/// kSpectralFloor times the largest one are rounding noise from a rank
/// deficiency and are set to zero; their square roots would otherwise leak
/// ~1e-8 errors into everything downstream.
inline constexpr double kSpectralFloor = 64.0 * 2.220446049250313e-16;
ComplexMatrix sqrt_psd(const ComplexMatrix &m);

/// Singular values, descending (one-sided Jacobi SVD).
std::vector<double> singular_values(const ComplexMatrix &m);

}  // namespace ebr
