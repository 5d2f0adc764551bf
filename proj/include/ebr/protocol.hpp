#pragma once

#include <optional>
#include <vector>

#include "ebr/density_operator.hpp"
#include "ebr/metrics.hpp"
#include "ebr/scenario.hpp"

namespace ebr {

/// Intensity attenuation of V on Alice's and Bob's arms: |V> -> sqrt(A)|V>.
struct FilterPair {
    double A_A = 1.0;
    double A_B = 1.0;
    /// Set when the pair came from a tabulated prescription.
    std::optional<double> epsilon;
};

/// Throws InvalidParams unless 0 < A <= 1 on both arms.
void check_filters(const FilterPair &filters);

struct ChannelConfig {
    double T = 0.5;
    ChannelScenario scenario = ChannelScenario::distinguishable();
    Branch branch = Branch::H;
    bool feed_forward = false;
    /// Explicit attenuations; take precedence over `epsilon`.
    std::optional<FilterPair> filters;
    /// Strength for the tabulated prescription; 1 when neither is given.
    std::optional<double> epsilon;

    double R() const noexcept { return 1.0 - T; }
};

struct StageOutput {
    StageId stage = StageId::I;
    double T = 0.0;
    /// Normalized conditional state.
    DensityOperator state;
    /// Success probability of this stage: absolute for I and II (per
    /// measurement branch), relative to stage II for III.
    double probability = 0.0;
    /// Product of stage probabilities so far, doubled once a feed-forward
    /// correction lets both measurement branches be used.
    double cumulative_probability = 0.0;
    /// Unnormalized entries; params.P is the single-branch absolute weight.
    XStateParams params;
    bool feed_forward = false;
    std::optional<FilterPair> filters;
};

struct ProtocolTrace {
    std::vector<StageOutput> stages;
};

StageOutput stage1(const ChannelConfig &config);
StageOutput stage2(const ChannelConfig &config);
StageOutput apply_filters(const StageOutput &stage2_out, const FilterPair &filters);
FilterPair table_filters(const ChannelScenario &scenario, double T, double epsilon);
/// Mixes at the unnormalized level: M = p M_indist + (1 - p) M_dist.
StageOutput mix_partial(double p, const StageOutput &dist, const StageOutput &indist);
/// Explicit filters, else the tabulated prescription for config.epsilon (or 1).
FilterPair resolve_filters(const ChannelConfig &config);
ProtocolTrace run_protocol(const ChannelConfig &config);

/// Stage-by-id convenience used by sweeps and cross-checks.
StageOutput run_stage(const ChannelConfig &config, StageId stage);

/// Local bit flip relating the two measurement branches: sigma_X on Alice,
/// sigma_Y on Bob. It leaves the singlet invariant, so conjugating the
/// V-branch state by it yields the H-branch state exactly.
ComplexMatrix branch_flip_alice();
ComplexMatrix branch_flip_bob();

}  // namespace ebr
