#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ebr/density_operator.hpp"

namespace ebr::tomography {

/// Single-qubit analyzer states: H, V, D = (H+V)/√2, A = (H−V)/√2,
/// R = (H+iV)/√2, L = (H−iV)/√2.
enum class Analyzer : std::uint8_t { H, V, D, A, R, L };

std::string_view analyzer_name(Analyzer a);
Analyzer analyzer_from_name(std::string_view name);
ComplexMatrix analyzer_projector(Analyzer a);

struct TomographySetting {
    Analyzer alice;
    Analyzer bob;

    ComplexMatrix projector() const;
    bool operator==(const TomographySetting &) const = default;
};

struct CountRecord {
    TomographySetting setting;
    /// tr(ρ Π_A ⊗ Π_B) for the generating state.
    double expected_rate = 0.0;
    std::uint64_t observed = 0;
    /// Total triple-coincidence budget the run was simulated with.
    double duration_scale = 0.0;
};

/// All 36 products of the six analyzer states, Alice-major in H,V,D,A,R,L order.
std::vector<TomographySetting> standard_settings();
/// The 16-setting minimal scheme (HH, HV, VV, VH, RH, RV, DV, DH, DR, DD, RD,
/// HD, VD, VL, HL, RL).
std::vector<TomographySetting> minimal_settings();

/// Observed ~ Poisson(total_triples * 4 / n_settings * rate + accidental_mean).
/// With the 36-setting scheme the means add up to total_triples exactly.
/// Deterministic in `seed`.
std::vector<CountRecord> simulate_counts(const DensityOperator &rho, const std::vector<TomographySetting> &settings,
                                         double total_triples, std::uint64_t seed, double accidental_mean = 0.0);

struct ReconstructionOptions {
    /// Constant accidental-coincidence level subtracted from every setting.
    double background = 0.0;
};

/// Least-squares Pauli coefficients, trace-normalized; may be unphysical.
ComplexMatrix linear_inversion(const std::vector<CountRecord> &records, const ReconstructionOptions &options = {});
/// Same on arbitrary non-negative values per setting (rates or counts).
ComplexMatrix linear_inversion(const std::vector<TomographySetting> &settings, std::span<const double> values);

/// Nearest unit-trace PSD matrix by eigenvalue clipping and renormalization.
DensityOperator project_physical(const ComplexMatrix &estimate);

/// linear_inversion followed by eigenvalue clipping at zero and
/// renormalization to unit trace.
DensityOperator reconstruct(const std::vector<CountRecord> &records, const ReconstructionOptions &options = {});

struct UncertaintyReport {
    std::size_t trials = 0;
    double fidelity_mean = 0.0;
    double fidelity_std = 0.0;
    double concurrence_mean = 0.0;
    double concurrence_std = 0.0;
    double probability_mean = 0.0;
    double probability_std = 0.0;
};

struct ErrorBarOptions {
    ReconstructionOptions reconstruction;
    /// Success probability the counting budget corresponds to; the
    /// probability estimate of a trial is this times observed / budget.
    double success_probability = 1.0;
};

/// Parametric bootstrap: Poisson counts are redrawn around the rates of
/// `estimate`, re-reconstructed, and the spread of fidelity (to `estimate`),
/// concurrence and success probability is reported. Each trial draws from
/// its own stream derived from (seed, trial index).
UncertaintyReport error_bars(const DensityOperator &estimate, const std::vector<CountRecord> &records,
                             std::size_t trials, std::uint64_t seed, const ErrorBarOptions &options = {});

/// CSV with header setting_A,setting_B,expected_rate,observed.
std::string counts_to_csv(const std::vector<CountRecord> &records);

}  // namespace ebr::tomography
