#pragma once

// Brute-force multimode bosonic simulation of the restoration circuit. Shares
// no formulas with the closed-form protocol module; it evolves photon
// creation operators through the beam splitter and conditions on detector
// patterns, so it serves as an independent check of every tabulated state.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>

#include "ebr/complex_matrix.hpp"
#include "ebr/protocol.hpp"
#include "ebr/scenario.hpp"

namespace ebr::fock {

enum class Path : std::uint8_t { A, B, E, BOut, EOut };
enum class Polarization : std::uint8_t { H, V };

inline constexpr std::size_t kModeCount = 20;

struct ModeLabel {
    Path path;
    Polarization pol;
    std::uint8_t time_bin;  // 0 or 1

    std::size_t index() const noexcept {
        return static_cast<std::size_t>(path) * 4 + static_cast<std::size_t>(pol) * 2 + time_bin;
    }
    static ModeLabel from_index(std::size_t i);
};

using Occupation = std::array<std::uint8_t, kModeCount>;

class FockState {
public:
    using Terms = std::map<Occupation, cplx>;

    void add(const Occupation &occ, cplx amplitude);
    const Terms &terms() const noexcept { return terms_; }

    double norm2() const;
    /// Photon number shared by every term; throws if terms disagree.
    int photon_number() const;
    FockState scaled(cplx s) const;

private:
    Terms terms_;
};

/// Input-to-output map of the beam splitter on creation operators:
///   b† -> b_to_b B'† + b_to_e E'†,   e† -> e_to_b B'† + e_to_e E'†
/// applied independently on every (polarization, time-bin) pair.
struct BeamSplitterConvention {
    cplx b_to_b;
    cplx b_to_e;
    cplx e_to_b;
    cplx e_to_e;

    /// Mode operators b' = sqrt(T) b + sqrt(R) e, e' = sqrt(T) e - sqrt(R) b.
    static BeamSplitterConvention real(double T);
    /// Symmetric convention with i sqrt(R) reflections.
    static BeamSplitterConvention symmetric(double T);
    /// Real convention dressed with arbitrary input/output phases.
    static BeamSplitterConvention phased(double T, double phi_in, double phi_out, double phi_global);

    /// max deviation of the 2x2 matrix from unitarity
    double unitarity_defect() const;
};

enum class TimeBins { Same, Distinct };

/// Alice and Bob share the singlet over paths A, B (time bin 0); the
/// environment photon enters path E with the given polarization, in bin 0
/// (Same) or bin 1 (Distinct). The unpolarized environment is the caller's
/// 1/2-1/2 average over `env`.
FockState prepare_input(TimeBins bins, Polarization env);

FockState evolve_bs(const FockState &state, const BeamSplitterConvention &bs);
inline FockState evolve_bs(const FockState &state, double T) { return evolve_bs(state, BeamSplitterConvention::real(T)); }

struct ArmDistribution {
    double both_signal = 0.0;
    double both_environment = 0.0;
    double one_per_arm = 0.0;
};

/// Probability weight of each photon-count pattern on the B', E' outputs.
ArmDistribution arm_distribution(const FockState &state);

/// Projects on exactly one photon in B' and one in E' and renormalizes.
/// Throws ZeroProbability when nothing survives.
std::pair<FockState, double> postselect_one_per_arm(const FockState &state);

/// Two-qubit operator on Alice x B' polarization. Time bins (time-blind
/// detectors) and the E' photon are traced out; with a measurement outcome
/// E' is first projected on that polarization. Its trace is the probability
/// of the outcome given `state`.
ComplexMatrix conditional_state(const FockState &state, std::optional<Polarization> env_measurement);

struct OracleOptions {
    std::optional<BeamSplitterConvention> convention;  // real(T) when unset
};

/// Full circuit for one stage: averages the environment polarization and the
/// time-bin preparations, then applies feed-forward and filters as local
/// 2x2 operators.
StageOutput oracle_protocol(const ChannelConfig &config, StageId stage, const OracleOptions &options = {});

/// Coincidence probability (one photon per output) of two equally polarized
/// photons, one per input, indistinguishable with probability p.
double hom_coincidence(double T, double p);

}  // namespace ebr::fock
