#pragma once

#include <array>
#include <cstddef>
#include <string_view>
#include <utility>

#include "ebr/complex_matrix.hpp"

namespace ebr {

inline constexpr double kTolHermitian = 1e-12;
inline constexpr double kTolPsd = 1e-10;
inline constexpr double kTolTrace = 1e-12;
/// Below this trace a state is treated as the zero operator (a P = 0 branch).
inline constexpr double kZeroTrace = 1e-300;
/// Guard against accidental growth of tensor products.
inline constexpr std::size_t kMaxDim = 1024;

/// Two-qubit computational basis, Alice first: HH, HV, VH, VV.
struct BasisOrder {
    static constexpr std::array<std::string_view, 4> labels{"HH", "HV", "VH", "VV"};
    static constexpr std::size_t HH = 0;
    static constexpr std::size_t HV = 1;
    static constexpr std::size_t VH = 2;
    static constexpr std::size_t VV = 3;
};

/// A (possibly unnormalized) density operator. `trace_weight` is the real
/// trace of the matrix, kept alongside so branch probabilities travel with
/// the state.
class DensityOperator {
public:
    DensityOperator() = default;
    explicit DensityOperator(ComplexMatrix matrix);

    std::size_t dim() const noexcept { return matrix_.rows(); }
    const ComplexMatrix &matrix() const noexcept { return matrix_; }
    double trace_weight() const noexcept { return trace_weight_; }

    const cplx &operator()(std::size_t r, std::size_t c) const { return matrix_(r, c); }

private:
    ComplexMatrix matrix_;
    double trace_weight_ = 0.0;
};

DensityOperator pure_state(std::span<const cplx> amplitudes);
DensityOperator maximally_mixed(std::size_t dim);
/// (|HV> - i|VH>)/sqrt(2)
DensityOperator singlet();

enum class Subsystem { A, B };

DensityOperator tensor(const DensityOperator &a, const DensityOperator &b);
DensityOperator partial_trace(const DensityOperator &rho, Subsystem keep, std::size_t dim_a, std::size_t dim_b);
/// (K_A ⊗ K_B) ρ (K_A ⊗ K_B)†, left unnormalized.
DensityOperator apply_local(const DensityOperator &rho, const ComplexMatrix &k_a, const ComplexMatrix &k_b);
/// Returns the unit-trace state and the trace it was divided by.
std::pair<DensityOperator, double> normalize(const DensityOperator &rho);

struct DiagnosticsReport {
    double hermiticity_residual = 0.0;
    double min_eigenvalue = 0.0;
    double trace_deviation = 0.0;
    bool hermitian = false;
    bool positive = false;
    bool trace_consistent = false;

    bool ok() const noexcept { return hermitian && positive && trace_consistent; }
};

DiagnosticsReport validate(const DensityOperator &rho);

}  // namespace ebr
