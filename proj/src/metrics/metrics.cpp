#include "ebr/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <functional>
#include <string>

#include "ebr/error.hpp"
#include "ebr/hermitian.hpp"
#include "ebr/protocol.hpp"

namespace ebr {

namespace {

constexpr double kParamTol = 1e-12;

const ComplexMatrix &yy() {
    static const ComplexMatrix m = kron(pauli::y(), pauli::y());
    return m;
}

DensityOperator require_two_qubit_normalized(const DensityOperator &rho, const char *op) {
    if (rho.dim() != 4) {
        throw Error(ErrorCode::NotTwoQubit, std::string(op) + ": dimension " + std::to_string(rho.dim()) + " != 4");
    }
    return normalize(rho).first;
}

}  // namespace

XStateParams XStateParams::from_entries(double alpha, double beta, double gamma, double delta, double xi) {
    XStateParams p{alpha, beta, gamma, delta, xi, 0.0};
    p.P = p.trace() / 4.0;
    return p;
}

void check_params(const XStateParams &p) {
    const auto fail = [](const std::string &why) { throw Error(ErrorCode::InvalidParams, "XStateParams: " + why); };
    for (double v : {p.alpha, p.beta, p.gamma, p.delta, p.xi, p.P}) {
        if (!std::isfinite(v)) {
            fail("non-finite entry");
        }
    }
    if (p.alpha < -kParamTol || p.beta < -kParamTol || p.gamma < -kParamTol || p.delta < -kParamTol) {
        fail("negative population");
    }
    if (!(p.P > 0.0)) {
        fail("P must be positive");
    }
    if (std::abs(p.trace() - 4.0 * p.P) > kParamTol) {
        fail("alpha + beta + gamma + delta != 4P");
    }
    if (std::abs(p.xi) > std::sqrt(std::max(0.0, p.beta) * std::max(0.0, p.gamma)) + kParamTol) {
        fail("|xi| exceeds sqrt(beta gamma)");
    }
}

ComplexMatrix assemble(const XStateParams &p) {
    ComplexMatrix m(4, 4);
    m(BasisOrder::HH, BasisOrder::HH) = p.alpha;
    m(BasisOrder::HV, BasisOrder::HV) = p.beta;
    m(BasisOrder::VH, BasisOrder::VH) = p.gamma;
    m(BasisOrder::VV, BasisOrder::VV) = p.delta;
    m(BasisOrder::HV, BasisOrder::VH) = cplx{0.0, -p.xi};
    m(BasisOrder::VH, BasisOrder::HV) = cplx{0.0, p.xi};
    return m;
}

DensityOperator x_state(const XStateParams &params) {
    check_params(params);
    return DensityOperator(assemble(params) * cplx{1.0 / (4.0 * params.P), 0.0});
}

XStateParams extract_x_params(const ComplexMatrix &op, double tol) {
    if (op.rows() != 4 || op.cols() != 4) {
        throw Error(ErrorCode::NotTwoQubit, "extract_x_params: operator is not 4x4");
    }
    const ComplexMatrix m = op * cplx{4.0, 0.0};
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            const bool diag = r == c;
            const bool coherence = (r == BasisOrder::HV && c == BasisOrder::VH) ||
                                   (r == BasisOrder::VH && c == BasisOrder::HV);
            if (!diag && !coherence && std::abs(m(r, c)) > tol) {
                throw Error(ErrorCode::InvalidParams, "extract_x_params: weight outside the X pattern");
            }
        }
    }
    const cplx upper = m(BasisOrder::HV, BasisOrder::VH);
    const cplx lower = m(BasisOrder::VH, BasisOrder::HV);
    // upper = -i xi, lower = +i xi; average both for symmetry.
    const double xi = 0.5 * (-upper.imag() + lower.imag());
    if (std::abs(upper.real()) > tol || std::abs(lower.real()) > tol) {
        throw Error(ErrorCode::InvalidParams, "extract_x_params: coherence has a real part");
    }
    return XStateParams::from_entries(m(0, 0).real(), m(1, 1).real(), m(2, 2).real(), m(3, 3).real(), xi);
}

ConcurrenceResult concurrence(const DensityOperator &state) {
    const DensityOperator rho = require_two_qubit_normalized(state, "concurrence");
    const ComplexMatrix root = sqrt_psd(rho.matrix());
    // sqrt(rho~) = YY sqrt(rho)* YY, and the square roots of the eigenvalues
    // of rho rho~ are the singular values of sqrt(rho) sqrt(rho~). Taking
    // them directly avoids a square root of near-zero eigenvalues.
    const ComplexMatrix flipped_root = yy() * root.conjugate() * yy();
    const std::vector<double> sv = singular_values(root * flipped_root);

    ConcurrenceResult out;
    std::copy(sv.begin(), sv.end(), out.sqrt_eigenvalues.begin());
    std::sort(out.sqrt_eigenvalues.begin(), out.sqrt_eigenvalues.end(), std::greater<>());
    const auto &l = out.sqrt_eigenvalues;
    out.value = std::clamp(l[0] - l[1] - l[2] - l[3], 0.0, 1.0);
    return out;
}

double concurrence_x(const XStateParams &params) {
    check_params(params);
    const double c = (std::abs(params.xi) - std::sqrt(std::max(0.0, params.alpha * params.delta))) / (2.0 * params.P);
    return std::clamp(c, 0.0, 1.0);
}

double fidelity(const DensityOperator &rho_in, const DensityOperator &sigma_in) {
    if (rho_in.dim() != sigma_in.dim()) {
        throw Error(ErrorCode::DimensionMismatch, "fidelity: dimensions differ");
    }
    const DensityOperator rho = normalize(rho_in).first;
    const DensityOperator sigma = normalize(sigma_in).first;
    // tr sqrt(sqrt(rho) sigma sqrt(rho)) is the trace norm of sqrt(rho) sqrt(sigma)
    const std::vector<double> sv = singular_values(sqrt_psd(rho.matrix()) * sqrt_psd(sigma.matrix()));
    const double tr = std::accumulate(sv.begin(), sv.end(), 0.0);
    return std::clamp(tr * tr, 0.0, 1.0);
}

std::optional<double> werner_decompose(const DensityOperator &state, double tol) {
    if (state.dim() != 4) {
        return std::nullopt;
    }
    const DensityOperator rho = normalize(state).first;
    // (HV,HV) entry of q S + (1 - q) I/4 is (1 + q)/4.
    const double q = 4.0 * rho(BasisOrder::HV, BasisOrder::HV).real() - 1.0;
    const ComplexMatrix model = singlet().matrix() * cplx{q, 0.0} + ComplexMatrix::identity(4) * cplx{(1.0 - q) / 4.0, 0.0};
    if (max_abs_diff(model, rho.matrix()) > tol) {
        return std::nullopt;
    }
    return q;
}

double breaking_threshold(const ChannelScenario &scenario, StageId stage) {
    if (stage == StageId::III) {
        throw Error(ErrorCode::InvalidParams, "breaking_threshold: stage III depends on a filter choice");
    }
    const auto c_at = [&](double t) {
        ChannelConfig config;
        config.T = t;
        config.scenario = scenario;
        return concurrence_x(run_stage(config, stage).params);
    };

    int last_zero = -1;
    for (int k = 99; k >= 1; --k) {
        if (c_at(0.01 * k) == 0.0) {
            last_zero = k;
            break;
        }
    }
    if (last_zero < 0) {
        throw Error(ErrorCode::NoThreshold, "breaking_threshold: concurrence is positive on the whole grid");
    }
    if (last_zero == 99) {
        throw Error(ErrorCode::NoThreshold, "breaking_threshold: concurrence does not become positive on the grid");
    }
    double lo = 0.01 * last_zero;
    double hi = 0.01 * (last_zero + 1);
    while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        if (c_at(mid) == 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace ebr
