#include "ebr/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ebr/error.hpp"

namespace ebr {

namespace {

constexpr double kSingularGap = 1e-9;

// Table I entries, distinguishable and indistinguishable environment photon.
XStateParams dist_stage1(double t) {
    const double r = 1.0 - t;
    return XStateParams::from_entries(r * r, r * r + 2 * t * t, r * r + 2 * t * t, r * r, -2 * t * t);
}

XStateParams indist_stage1(double t) {
    const double r = 1.0 - t;
    return XStateParams::from_entries(r * r, 1 - 4 * t + 5 * t * t, r * r + 2 * t * t - 2 * r * t, r * r,
                                      -2 * t * t + 2 * r * t);
}

XStateParams dist_stage2(double t) {
    const double r = 1.0 - t;
    return XStateParams::from_entries(0.0, t * t, r * r + t * t, r * r, -t * t);
}

XStateParams indist_stage2(double t) {
    const double r = 1.0 - t;
    return XStateParams::from_entries(0.0, t * t, (2 * t - 1) * (2 * t - 1), r * r, -t * t + r * t);
}

XStateParams blend(double p, const XStateParams &indist, const XStateParams &dist) {
    if (p == 1.0) {
        return indist;
    }
    if (p == 0.0) {
        return dist;
    }
    const double q = 1.0 - p;
    XStateParams m;
    m.alpha = p * indist.alpha + q * dist.alpha;
    m.beta = p * indist.beta + q * dist.beta;
    m.gamma = p * indist.gamma + q * dist.gamma;
    m.delta = p * indist.delta + q * dist.delta;
    m.xi = p * indist.xi + q * dist.xi;
    m.P = p * indist.P + q * dist.P;
    return m;
}

XStateParams scenario_params(const ChannelScenario &scenario, double t, StageId stage) {
    const bool first = stage == StageId::I;
    switch (scenario.kind()) {
        case ScenarioKind::Distinguishable:
            return first ? dist_stage1(t) : dist_stage2(t);
        case ScenarioKind::Indistinguishable:
            return first ? indist_stage1(t) : indist_stage2(t);
        case ScenarioKind::Partial:
            break;
    }
    const double p = scenario.indistinguishable_weight();
    return first ? blend(p, indist_stage1(t), dist_stage1(t)) : blend(p, indist_stage2(t), dist_stage2(t));
}

// Conjugation by sigma_X (Alice) x sigma_Y (Bob): swaps HH<->VV and HV<->VH,
// keeps the coherence.
XStateParams flip_branch(const XStateParams &p) {
    XStateParams f = p;
    f.alpha = p.delta;
    f.delta = p.alpha;
    f.beta = p.gamma;
    f.gamma = p.beta;
    return f;
}

void check_T(double t) {
    if (!(t >= 0.0 && t <= 1.0)) {
        throw Error(ErrorCode::InvalidParams, "transmittivity T must lie in [0, 1]");
    }
}

StageOutput make_output(StageId stage, double t, const XStateParams &params, double probability,
                        double cumulative, bool feed_forward) {
    StageOutput out;
    out.stage = stage;
    out.T = t;
    out.params = params;
    out.state = x_state(params);
    out.probability = probability;
    out.cumulative_probability = cumulative;
    out.feed_forward = feed_forward;
    return out;
}

double branch_multiplicity(bool feed_forward) { return feed_forward ? 2.0 : 1.0; }

}  // namespace

void check_filters(const FilterPair &f) {
    if (!(f.A_A > 0.0 && f.A_A <= 1.0) || !(f.A_B > 0.0 && f.A_B <= 1.0)) {
        throw Error(ErrorCode::InvalidParams, "filter attenuations must lie in (0, 1]");
    }
}

ComplexMatrix branch_flip_alice() { return pauli::x(); }
ComplexMatrix branch_flip_bob() { return pauli::y(); }

StageOutput stage1(const ChannelConfig &config) {
    check_T(config.T);
    const XStateParams params = scenario_params(config.scenario, config.T, StageId::I);
    return make_output(StageId::I, config.T, params, params.P, params.P, false);
}

StageOutput stage2(const ChannelConfig &config) {
    check_T(config.T);
    XStateParams params = scenario_params(config.scenario, config.T, StageId::II);
    if (config.branch == Branch::V && !config.feed_forward) {
        params = flip_branch(params);
    }
    return make_output(StageId::II, config.T, params, params.P, params.P * branch_multiplicity(config.feed_forward),
                       config.feed_forward);
}

StageOutput apply_filters(const StageOutput &in, const FilterPair &filters) {
    if (in.stage != StageId::II) {
        throw Error(ErrorCode::StageMismatch, "apply_filters: expects a stage II output");
    }
    check_filters(filters);
    const XStateParams &p = in.params;
    XStateParams f;
    f.alpha = p.alpha;
    f.beta = filters.A_B * p.beta;
    f.gamma = filters.A_A * p.gamma;
    f.delta = filters.A_A * filters.A_B * p.delta;
    f.xi = std::sqrt(filters.A_A * filters.A_B) * p.xi;
    f.P = f.trace() / 4.0;
    if (!(f.trace() > kZeroTrace)) {
        throw Error(ErrorCode::ZeroTrace, "apply_filters: filtered state vanishes");
    }
    const double ratio = f.trace() / p.trace();
    StageOutput out = make_output(StageId::III, in.T, f, ratio, in.cumulative_probability * ratio, in.feed_forward);
    out.filters = filters;
    return out;
}

FilterPair table_filters(const ChannelScenario &scenario, double t, double epsilon) {
    check_T(t);
    if (!(epsilon > 0.0 && epsilon <= 1.0)) {
        throw Error(ErrorCode::InvalidParams, "epsilon must lie in (0, 1]");
    }
    const double r = 1.0 - t;
    FilterPair f;
    f.epsilon = epsilon;
    const double weight = scenario.indistinguishable_weight();
    if (weight == 0.0) {
        f.A_A = epsilon * t * t / (t * t + r * r);
        f.A_B = epsilon;
    } else if (weight == 1.0) {
        const double gap = 2 * t - 1;
        if (std::abs(gap) < kSingularGap) {
            throw Error(ErrorCode::SingularPrescription, "table_filters: indistinguishable prescription is singular at T = 1/2");
        }
        if (t > std::abs(gap)) {
            f.A_A = epsilon;
            f.A_B = epsilon * (gap / t) * (gap / t);
        } else {
            f.A_A = epsilon * (t / gap) * (t / gap);
            f.A_B = epsilon;
        }
    } else {
        // Both printed prescriptions attenuate the larger of beta, gamma so
        // that the filtered populations match; apply that rule to the mixture.
        const XStateParams m = scenario_params(scenario, t, StageId::II);
        if (!(m.beta > 0.0 && m.gamma > 0.0)) {
            throw Error(ErrorCode::SingularPrescription, "table_filters: stage II population vanishes");
        }
        f.A_A = epsilon * std::min(1.0, m.beta / m.gamma);
        f.A_B = epsilon * std::min(1.0, m.gamma / m.beta);
    }
    if (!(f.A_A > 0.0) || !(f.A_B > 0.0)) {
        throw Error(ErrorCode::SingularPrescription, "table_filters: prescription gives zero transmission at T = " + std::to_string(t));
    }
    f.A_A = std::min(f.A_A, 1.0);
    f.A_B = std::min(f.A_B, 1.0);
    return f;
}

StageOutput mix_partial(double p, const StageOutput &dist, const StageOutput &indist) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw Error(ErrorCode::InvalidParams, "mix_partial: p must lie in [0, 1]");
    }
    if (dist.stage != indist.stage || dist.T != indist.T || dist.feed_forward != indist.feed_forward) {
        throw Error(ErrorCode::StageMismatch, "mix_partial: outputs come from different stages or channels");
    }
    if (p == 1.0) {
        return indist;
    }
    if (p == 0.0) {
        return dist;
    }
    const XStateParams params = blend(p, indist.params, dist.params);
    double probability = params.P;
    if (dist.stage == StageId::III) {
        // Relative to the mixed stage II weight each input was filtered from.
        const double dist_ii = dist.params.P / dist.probability;
        const double indist_ii = indist.params.P / indist.probability;
        probability = params.P / (p * indist_ii + (1.0 - p) * dist_ii);
    }
    const double multiplicity = dist.stage == StageId::I ? 1.0 : branch_multiplicity(dist.feed_forward);
    StageOutput out = make_output(dist.stage, dist.T, params, probability, params.P * multiplicity, dist.feed_forward);
    out.filters = dist.filters;
    return out;
}

FilterPair resolve_filters(const ChannelConfig &config) {
    if (config.filters) {
        check_filters(*config.filters);
        return *config.filters;
    }
    return table_filters(config.scenario, config.T, config.epsilon.value_or(1.0));
}

StageOutput run_stage(const ChannelConfig &config, StageId stage) {
    switch (stage) {
        case StageId::I:
            return stage1(config);
        case StageId::II:
            return stage2(config);
        case StageId::III:
            return apply_filters(stage2(config), resolve_filters(config));
    }
    throw Error(ErrorCode::InvalidParams, "run_stage: unknown stage");
}

ProtocolTrace run_protocol(const ChannelConfig &config) {
    ProtocolTrace trace;
    trace.stages.push_back(stage1(config));
    trace.stages.push_back(stage2(config));
    trace.stages.push_back(apply_filters(trace.stages.back(), resolve_filters(config)));
    return trace;
}

}  // namespace ebr
