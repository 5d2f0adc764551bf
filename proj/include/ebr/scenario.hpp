#pragma once

#include <string>
#include <string_view>

namespace ebr {

enum class ScenarioKind { Distinguishable, Indistinguishable, Partial };

/// How the environment photon relates to the signal photon at the beam
/// splitter. Partial(p): fully indistinguishable with probability p,
/// otherwise in an orthogonal temporal mode.
class ChannelScenario {
public:
    static ChannelScenario distinguishable() { return ChannelScenario(ScenarioKind::Distinguishable, 0.0); }
    static ChannelScenario indistinguishable() { return ChannelScenario(ScenarioKind::Indistinguishable, 1.0); }
    /// Throws InvalidParams unless p is in [0, 1].
    static ChannelScenario partial(double p);

    ScenarioKind kind() const noexcept { return kind_; }
    /// Weight of the indistinguishable preparation: 0, 1, or p.
    double indistinguishable_weight() const noexcept { return p_; }

    std::string name() const;

    bool operator==(const ChannelScenario &) const = default;

private:
    ChannelScenario(ScenarioKind kind, double p) : kind_(kind), p_(p) {}

    ScenarioKind kind_;
    double p_;
};

enum class StageId { I = 1, II = 2, III = 3 };

std::string_view stage_name(StageId stage);

/// Outcome of the environment polarization analysis.
enum class Branch { H, V };

}  // namespace ebr
