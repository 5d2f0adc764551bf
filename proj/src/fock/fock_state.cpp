#include <cmath>
#include <string>
#include <vector>

#include "ebr/error.hpp"
#include "ebr/fock.hpp"

namespace ebr::fock {

namespace {

constexpr double kVanishing = 1e-28;

double sqrt_factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) {
        f *= k;
    }
    return std::sqrt(f);
}

bool is_input_path(Path p) { return p == Path::B || p == Path::E; }

int count_on(const Occupation &occ, Path path) {
    int n = 0;
    for (std::size_t i = 0; i < kModeCount; ++i) {
        if (ModeLabel::from_index(i).path == path) {
            n += occ[i];
        }
    }
    return n;
}

}  // namespace

ModeLabel ModeLabel::from_index(std::size_t i) {
    return ModeLabel{static_cast<Path>(i / 4), static_cast<Polarization>((i / 2) % 2), static_cast<std::uint8_t>(i % 2)};
}

void FockState::add(const Occupation &occ, cplx amplitude) {
    if (amplitude == cplx{}) {
        return;
    }
    const auto [it, inserted] = terms_.try_emplace(occ, amplitude);
    if (!inserted) {
        it->second += amplitude;
        // exact cancellation, e.g. the HOM dip
        if (it->second == cplx{}) {
            terms_.erase(it);
        }
    }
}

double FockState::norm2() const {
    double s = 0.0;
    for (const auto &[occ, amp] : terms_) {
        s += std::norm(amp);
    }
    return s;
}

int FockState::photon_number() const {
    int n = -1;
    for (const auto &[occ, amp] : terms_) {
        int total = 0;
        for (auto k : occ) {
            total += k;
        }
        if (n >= 0 && total != n) {
            throw Error(ErrorCode::InvalidParams, "FockState: terms with different photon numbers");
        }
        n = total;
    }
    return n < 0 ? 0 : n;
}

FockState FockState::scaled(cplx s) const {
    FockState out;
    for (const auto &[occ, amp] : terms_) {
        out.terms_[occ] = amp * s;
    }
    return out;
}

BeamSplitterConvention BeamSplitterConvention::real(double T) {
    const double t = std::sqrt(T);
    const double r = std::sqrt(1.0 - T);
    // Inverting the mode transformation gives b† = t B'† - r E'†, e† = r B'† + t E'†.
    return {t, -r, r, t};
}

BeamSplitterConvention BeamSplitterConvention::symmetric(double T) {
    const double t = std::sqrt(T);
    const double r = std::sqrt(1.0 - T);
    return {t, cplx{0.0, r}, cplx{0.0, r}, t};
}

BeamSplitterConvention BeamSplitterConvention::phased(double T, double phi_in, double phi_out, double phi_global) {
    const BeamSplitterConvention base = real(T);
    const cplx in = std::polar(1.0, phi_in);
    const cplx out = std::polar(1.0, phi_out);
    const cplx g = std::polar(1.0, phi_global);
    return {g * in * base.b_to_b * out, g * in * base.b_to_e, g * base.e_to_b * out, g * base.e_to_e};
}

double BeamSplitterConvention::unitarity_defect() const {
    const ComplexMatrix u{{b_to_b, b_to_e}, {e_to_b, e_to_e}};
    return max_abs_diff(u * u.adjoint(), ComplexMatrix::identity(2));
}

FockState prepare_input(TimeBins bins, Polarization env) {
    const double h = 1.0 / std::sqrt(2.0);
    // singlet amplitudes psi[alice][bob], (|HV> - i|VH>)/sqrt(2)
    const cplx psi[2][2] = {{0.0, h}, {cplx{0.0, -h}, 0.0}};
    const std::uint8_t env_bin = bins == TimeBins::Same ? 0 : 1;
    FockState state;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            if (psi[a][b] == cplx{0.0, 0.0}) {
                continue;
            }
            Occupation occ{};
            occ[ModeLabel{Path::A, static_cast<Polarization>(a), 0}.index()] += 1;
            occ[ModeLabel{Path::B, static_cast<Polarization>(b), 0}.index()] += 1;
            occ[ModeLabel{Path::E, env, env_bin}.index()] += 1;
            state.add(occ, psi[a][b]);
        }
    }
    return state;
}

FockState evolve_bs(const FockState &state, const BeamSplitterConvention &bs) {
    FockState out;
    for (const auto &[occ, amp] : state.terms()) {
        // Expand the term as a product of creation operators; each input-path
        // operator becomes a two-term sum over the output paths.
        struct Factor {
            std::size_t mode[2];
            cplx coef[2];
            int options;
        };
        std::vector<Factor> factors;
        double norm = 1.0;
        for (std::size_t i = 0; i < kModeCount; ++i) {
            if (occ[i] == 0) {
                continue;
            }
            norm /= sqrt_factorial(occ[i]);
            const ModeLabel label = ModeLabel::from_index(i);
            for (int k = 0; k < occ[i]; ++k) {
                if (!is_input_path(label.path)) {
                    factors.push_back({{i, i}, {1.0, 0.0}, 1});
                    continue;
                }
                const std::size_t to_b = ModeLabel{Path::BOut, label.pol, label.time_bin}.index();
                const std::size_t to_e = ModeLabel{Path::EOut, label.pol, label.time_bin}.index();
                if (label.path == Path::B) {
                    factors.push_back({{to_b, to_e}, {bs.b_to_b, bs.b_to_e}, 2});
                } else {
                    factors.push_back({{to_b, to_e}, {bs.e_to_b, bs.e_to_e}, 2});
                }
            }
        }
        std::size_t combos = 1;
        for (const auto &f : factors) {
            combos *= static_cast<std::size_t>(f.options);
        }
        for (std::size_t choice = 0; choice < combos; ++choice) {
            Occupation next{};
            cplx coef = amp * norm;
            std::size_t rest = choice;
            for (const auto &f : factors) {
                const std::size_t pick = rest % static_cast<std::size_t>(f.options);
                rest /= static_cast<std::size_t>(f.options);
                next[f.mode[pick]] += 1;
                coef *= f.coef[pick];
            }
            // (a†)^m |0> = sqrt(m!) |m>
            for (auto m : next) {
                coef *= sqrt_factorial(m);
            }
            out.add(next, coef);
        }
    }
    return out;
}

ArmDistribution arm_distribution(const FockState &state) {
    ArmDistribution d;
    for (const auto &[occ, amp] : state.terms()) {
        const int signal = count_on(occ, Path::BOut);
        const int env = count_on(occ, Path::EOut);
        const double w = std::norm(amp);
        if (signal == 1 && env == 1) {
            d.one_per_arm += w;
        } else if (signal == 2 && env == 0) {
            d.both_signal += w;
        } else if (signal == 0 && env == 2) {
            d.both_environment += w;
        }
    }
    return d;
}

std::pair<FockState, double> postselect_one_per_arm(const FockState &state) {
    FockState kept;
    for (const auto &[occ, amp] : state.terms()) {
        if (count_on(occ, Path::BOut) == 1 && count_on(occ, Path::EOut) == 1) {
            kept.add(occ, amp);
        }
    }
    const double probability = kept.norm2();
    if (!(probability > kVanishing)) {
        throw Error(ErrorCode::ZeroProbability, "postselect_one_per_arm: no one-photon-per-arm component");
    }
    return {kept.scaled(1.0 / std::sqrt(probability)), probability};
}

ComplexMatrix conditional_state(const FockState &state, std::optional<Polarization> env_measurement) {
    // Group amplitudes by everything that is traced out:
    // (alice bin, signal bin, environment polarization, environment bin).
    std::map<std::array<int, 4>, std::array<cplx, 4>> groups;
    for (const auto &[occ, amp] : state.terms()) {
        int a_pol = -1, b_pol = -1, e_pol = -1, a_bin = 0, b_bin = 0, e_bin = 0;
        int a_n = 0, b_n = 0, e_n = 0;
        for (std::size_t i = 0; i < kModeCount; ++i) {
            if (occ[i] == 0) {
                continue;
            }
            const ModeLabel l = ModeLabel::from_index(i);
            const int pol = static_cast<int>(l.pol);
            switch (l.path) {
                case Path::A:
                    a_n += occ[i];
                    a_pol = pol;
                    a_bin = l.time_bin;
                    break;
                case Path::BOut:
                    b_n += occ[i];
                    b_pol = pol;
                    b_bin = l.time_bin;
                    break;
                case Path::EOut:
                    e_n += occ[i];
                    e_pol = pol;
                    e_bin = l.time_bin;
                    break;
                default:
                    throw Error(ErrorCode::InvalidParams, "conditional_state: photons left in input modes");
            }
        }
        if (a_n != 1 || b_n != 1 || e_n != 1) {
            throw Error(ErrorCode::InvalidParams, "conditional_state: state is not post-selected one per arm");
        }
        if (env_measurement && e_pol != static_cast<int>(*env_measurement)) {
            continue;
        }
        groups[{a_bin, b_bin, e_pol, e_bin}][static_cast<std::size_t>(a_pol * 2 + b_pol)] += amp;
    }
    ComplexMatrix op(4, 4);
    for (const auto &[key, v] : groups) {
        op += ComplexMatrix::outer(v);
    }
    return op;
}

}  // namespace ebr::fock
