#pragma once

#include <array>
#include <optional>

#include "ebr/density_operator.hpp"
#include "ebr/scenario.hpp"

namespace ebr {

/// Unnormalized X-state entries. The matrix they describe, in the basis
/// HH, HV, VH, VV, is
///
///     [ alpha  0       0      0     ]
///     [ 0      beta   -i xi   0     ]
///     [ 0      i xi    gamma  0     ]
///     [ 0      0       0      delta ]
///
/// with trace 4P; the normalized state is that matrix divided by 4P.
/// Placing -i xi above the diagonal makes the tabulated (negative) xi of the
/// undamaged channel reproduce the singlet (|HV> - i|VH>)/sqrt(2).
struct XStateParams {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double delta = 0.0;
    double xi = 0.0;
    double P = 0.0;

    /// Builds a record with P = (alpha + beta + gamma + delta) / 4.
    static XStateParams from_entries(double alpha, double beta, double gamma, double delta, double xi);

    double trace() const noexcept { return alpha + beta + gamma + delta; }
};

/// Throws InvalidParams when the record violates positivity or P bookkeeping.
void check_params(const XStateParams &params);

/// The unnormalized matrix (trace 4P).
ComplexMatrix assemble(const XStateParams &params);
/// assemble(params) / 4P
DensityOperator x_state(const XStateParams &params);
/// Reads the X entries back from an operator whose trace is the branch
/// probability P (so the 4P matrix is 4 * op). Throws InvalidParams when the
/// operator has weight outside the X pattern beyond `tol`.
XStateParams extract_x_params(const ComplexMatrix &op, double tol = 1e-12);

struct ConcurrenceResult {
    double value = 0.0;
    /// Square roots of the eigenvalues of rho * rho_tilde, descending.
    std::array<double, 4> sqrt_eigenvalues{};
};

/// Wootters concurrence of a two-qubit state.
ConcurrenceResult concurrence(const DensityOperator &rho);

/// Closed form for the X family: max(0, (|xi| - sqrt(alpha delta)) / (2P)).
double concurrence_x(const XStateParams &params);

/// Uhlmann fidelity (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double fidelity(const DensityOperator &rho, const DensityOperator &sigma);

/// q with rho = q |singlet><singlet| + (1 - q) I/4 entrywise within tol.
/// q may be negative (down to -1/3) for states on the other side of I/4.
std::optional<double> werner_decompose(const DensityOperator &rho, double tol = 1e-12);

/// Largest T at which the stage concurrence vanishes, located by a 0.01 grid
/// scan followed by bisection to 1e-10. Throws NoThreshold if the grid never
/// crosses from C = 0 to C > 0.
double breaking_threshold(const ChannelScenario &scenario, StageId stage);

}  // namespace ebr
