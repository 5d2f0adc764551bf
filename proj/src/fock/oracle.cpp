#include <cmath>

#include "ebr/density_operator.hpp"
#include "ebr/error.hpp"
#include "ebr/fock.hpp"

namespace ebr::fock {

namespace {

ComplexMatrix filter_operator(double attenuation) {
    return ComplexMatrix{{1.0, 0.0}, {0.0, std::sqrt(attenuation)}};
}

/// Unnormalized Alice x B' operator after coupling and (optionally) the
/// environment measurement, averaged over environment polarization and
/// time-bin preparations. Trace = absolute branch probability.
ComplexMatrix channel_output(const ChannelConfig &config, std::optional<Polarization> measurement,
                             const BeamSplitterConvention &bs) {
    const double p = config.scenario.indistinguishable_weight();
    const std::pair<TimeBins, double> preparations[] = {{TimeBins::Same, p}, {TimeBins::Distinct, 1.0 - p}};
    ComplexMatrix op(4, 4);
    for (const auto &[bins, weight] : preparations) {
        if (weight == 0.0) {
            continue;
        }
        for (Polarization env : {Polarization::H, Polarization::V}) {
            const FockState evolved = evolve_bs(prepare_input(bins, env), bs);
            try {
                const auto [selected, probability] = postselect_one_per_arm(evolved);
                op += conditional_state(selected, measurement) * cplx{0.5 * weight * probability, 0.0};
            } catch (const Error &e) {
                if (e.code() != ErrorCode::ZeroProbability) {
                    throw;
                }
            }
        }
    }
    return op;
}

}  // namespace

StageOutput oracle_protocol(const ChannelConfig &config, StageId stage, const OracleOptions &options) {
    if (!(config.T >= 0.0 && config.T <= 1.0)) {
        throw Error(ErrorCode::InvalidParams, "oracle_protocol: T must lie in [0, 1]");
    }
    const BeamSplitterConvention bs = options.convention.value_or(BeamSplitterConvention::real(config.T));

    StageOutput out;
    out.stage = stage;
    out.T = config.T;
    if (stage == StageId::I) {
        const ComplexMatrix op = channel_output(config, std::nullopt, bs);
        out.params = extract_x_params(op);
        out.state = normalize(DensityOperator(op)).first;
        out.probability = out.params.P;
        out.cumulative_probability = out.params.P;
        return out;
    }

    const Polarization outcome = config.branch == Branch::H ? Polarization::H : Polarization::V;
    DensityOperator measured(channel_output(config, outcome, bs));
    if (config.branch == Branch::V && config.feed_forward) {
        measured = apply_local(measured, branch_flip_alice(), branch_flip_bob());
    }
    const double multiplicity = config.feed_forward ? 2.0 : 1.0;
    out.feed_forward = config.feed_forward;

    if (stage == StageId::II) {
        out.params = extract_x_params(measured.matrix());
        out.state = normalize(measured).first;
        out.probability = measured.trace_weight();
        out.cumulative_probability = measured.trace_weight() * multiplicity;
        return out;
    }

    const FilterPair filters = resolve_filters(config);
    const DensityOperator filtered = apply_local(measured, filter_operator(filters.A_A), filter_operator(filters.A_B));
    out.params = extract_x_params(filtered.matrix());
    const auto [state, weight] = normalize(filtered);
    out.state = state;
    out.probability = weight / measured.trace_weight();
    out.cumulative_probability = weight * multiplicity;
    out.filters = filters;
    return out;
}

double hom_coincidence(double T, double p) {
    if (!(T >= 0.0 && T <= 1.0) || !(p >= 0.0 && p <= 1.0)) {
        throw Error(ErrorCode::InvalidParams, "hom_coincidence: T and p must lie in [0, 1]");
    }
    const auto coincidences = [T](TimeBins bins) {
        FockState in;
        Occupation occ{};
        occ[ModeLabel{Path::B, Polarization::H, 0}.index()] = 1;
        occ[ModeLabel{Path::E, Polarization::H, bins == TimeBins::Same ? std::uint8_t{0} : std::uint8_t{1}}.index()] = 1;
        in.add(occ, 1.0);
        return arm_distribution(evolve_bs(in, T)).one_per_arm;
    };
    return p * coincidences(TimeBins::Same) + (1.0 - p) * coincidences(TimeBins::Distinct);
}

}  // namespace ebr::fock
