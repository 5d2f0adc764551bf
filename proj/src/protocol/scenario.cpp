#include "ebr/scenario.hpp"

#include "ebr/error.hpp"
#include "ebr/serialization.hpp"

namespace ebr {

ChannelScenario ChannelScenario::partial(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw Error(ErrorCode::InvalidParams, "partial scenario: p must lie in [0, 1]");
    }
    return ChannelScenario(ScenarioKind::Partial, p);
}

std::string ChannelScenario::name() const {
    switch (kind_) {
        case ScenarioKind::Distinguishable:
            return "distinguishable";
        case ScenarioKind::Indistinguishable:
            return "indistinguishable";
        case ScenarioKind::Partial:
            return "partial(" + format_shortest(p_) + ")";
    }
    return "unknown";
}

std::string_view stage_name(StageId stage) {
    switch (stage) {
        case StageId::I:
            return "I";
        case StageId::II:
            return "II";
        case StageId::III:
            return "III";
    }
    return "?";
}

}  // namespace ebr
