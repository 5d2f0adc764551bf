#include "ebr/density_operator.hpp"

#include <cassert>
#include <cmath>
#include <string>

#include "ebr/error.hpp"
#include "ebr/hermitian.hpp"

namespace ebr {

namespace {

#ifndef NDEBUG
void debug_check(const DensityOperator &rho) {
    const DiagnosticsReport report = validate(rho);
    assert(report.hermitian && report.positive);
    (void)report;
}
#else
void debug_check(const DensityOperator &) {}
#endif

}  // namespace

DensityOperator::DensityOperator(ComplexMatrix matrix) : matrix_(std::move(matrix)) {
    if (!matrix_.is_square() || matrix_.rows() == 0) {
        throw Error(ErrorCode::DimensionMismatch, "DensityOperator: matrix must be square and non-empty");
    }
    if (matrix_.rows() > kMaxDim) {
        throw Error(ErrorCode::DimensionOverflow,
                    "DensityOperator: dimension " + std::to_string(matrix_.rows()) + " exceeds limit");
    }
    if (!matrix_.all_finite()) {
        throw Error(ErrorCode::NonFinite, "DensityOperator: non-finite entries");
    }
    trace_weight_ = matrix_.trace().real();
}

DensityOperator pure_state(std::span<const cplx> amplitudes) {
    return DensityOperator(ComplexMatrix::outer(amplitudes));
}

DensityOperator maximally_mixed(std::size_t dim) {
    return DensityOperator(ComplexMatrix::identity(dim) * cplx{1.0 / static_cast<double>(dim), 0.0});
}

DensityOperator singlet() {
    const double h = 1.0 / std::sqrt(2.0);
    const std::array<cplx, 4> psi{0.0, h, cplx{0.0, -h}, 0.0};
    return pure_state(psi);
}

DensityOperator tensor(const DensityOperator &a, const DensityOperator &b) {
    if (a.dim() * b.dim() > kMaxDim) {
        throw Error(ErrorCode::DimensionOverflow, "tensor: product dimension " + std::to_string(a.dim() * b.dim()) +
                                                      " exceeds limit " + std::to_string(kMaxDim));
    }
    DensityOperator out(kron(a.matrix(), b.matrix()));
    debug_check(out);
    return out;
}

DensityOperator partial_trace(const DensityOperator &rho, Subsystem keep, std::size_t dim_a, std::size_t dim_b) {
    if (dim_a == 0 || dim_b == 0 || dim_a * dim_b != rho.dim()) {
        throw Error(ErrorCode::DimensionMismatch, "partial_trace: " + std::to_string(dim_a) + "x" +
                                                      std::to_string(dim_b) + " does not factor dimension " +
                                                      std::to_string(rho.dim()));
    }
    const ComplexMatrix &m = rho.matrix();
    if (keep == Subsystem::A) {
        ComplexMatrix out(dim_a, dim_a);
        for (std::size_t i = 0; i < dim_a; ++i) {
            for (std::size_t j = 0; j < dim_a; ++j) {
                cplx s{0.0, 0.0};
                for (std::size_t k = 0; k < dim_b; ++k) {
                    s += m(i * dim_b + k, j * dim_b + k);
                }
                out(i, j) = s;
            }
        }
        return DensityOperator(std::move(out));
    }
    ComplexMatrix out(dim_b, dim_b);
    for (std::size_t i = 0; i < dim_b; ++i) {
        for (std::size_t j = 0; j < dim_b; ++j) {
            cplx s{0.0, 0.0};
            for (std::size_t k = 0; k < dim_a; ++k) {
                s += m(k * dim_b + i, k * dim_b + j);
            }
            out(i, j) = s;
        }
    }
    return DensityOperator(std::move(out));
}

DensityOperator apply_local(const DensityOperator &rho, const ComplexMatrix &k_a, const ComplexMatrix &k_b) {
    if (k_a.rows() != 2 || k_a.cols() != 2 || k_b.rows() != 2 || k_b.cols() != 2) {
        throw Error(ErrorCode::DimensionMismatch, "apply_local: local operators must be 2x2");
    }
    if (rho.dim() != 4) {
        throw Error(ErrorCode::NotTwoQubit, "apply_local: state is not two-qubit");
    }
    DensityOperator out(conjugate_by(kron(k_a, k_b), rho.matrix()));
    debug_check(out);
    return out;
}

std::pair<DensityOperator, double> normalize(const DensityOperator &rho) {
    const double w = rho.trace_weight();
    if (!(w > kZeroTrace)) {
        throw Error(ErrorCode::ZeroTrace, "normalize: trace weight " + std::to_string(w) + " is zero");
    }
    return {DensityOperator(rho.matrix() * cplx{1.0 / w, 0.0}), w};
}

DiagnosticsReport validate(const DensityOperator &rho) {
    DiagnosticsReport r;
    r.hermiticity_residual = hermiticity_residual(rho.matrix());
    r.min_eigenvalue = eigh(rho.matrix()).values.front();
    r.trace_deviation = std::abs(rho.matrix().trace().real() - rho.trace_weight()) +
                        std::abs(rho.matrix().trace().imag());
    r.hermitian = r.hermiticity_residual <= kTolHermitian;
    r.positive = r.min_eigenvalue >= -kTolPsd;
    r.trace_consistent = r.trace_deviation <= kTolTrace;
    return r;
}

}  // namespace ebr
