#include "ebr/tomography.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "ebr/error.hpp"
#include "ebr/hermitian.hpp"
#include "ebr/metrics.hpp"
#include "ebr/parallel.hpp"
#include "ebr/serialization.hpp"

namespace ebr::tomography {

namespace {

constexpr std::size_t kPauliCount = 16;

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    return std::mt19937_64(seq);
}

const std::vector<ComplexMatrix> &two_qubit_paulis() {
    static const std::vector<ComplexMatrix> basis = [] {
        const ComplexMatrix single[4] = {pauli::identity(), pauli::x(), pauli::y(), pauli::z()};
        std::vector<ComplexMatrix> out;
        for (const auto &a : single) {
            for (const auto &b : single) {
                out.push_back(kron(a, b));
            }
        }
        return out;
    }();
    return basis;
}

std::uint64_t draw_poisson(std::mt19937_64 &rng, double mean) {
    if (!(mean > 0.0)) {
        return 0;
    }
    std::poisson_distribution<std::uint64_t> dist(mean);
    return dist(rng);
}

double sample_std(const std::vector<double> &xs, double mean) {
    if (xs.size() < 2) {
        return 0.0;
    }
    double ss = 0.0;
    for (double x : xs) {
        ss += (x - mean) * (x - mean);
    }
    return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

double mean_of(const std::vector<double> &xs) {
    return xs.empty() ? 0.0 : std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

}  // namespace

std::string_view analyzer_name(Analyzer a) {
    static constexpr std::string_view names[] = {"H", "V", "D", "A", "R", "L"};
    return names[static_cast<std::size_t>(a)];
}

Analyzer analyzer_from_name(std::string_view name) {
    for (std::uint8_t i = 0; i < 6; ++i) {
        if (analyzer_name(static_cast<Analyzer>(i)) == name) {
            return static_cast<Analyzer>(i);
        }
    }
    throw Error(ErrorCode::Config, "unknown analyzer setting '" + std::string(name) + "'");
}

ComplexMatrix analyzer_projector(Analyzer a) {
    const double h = 1.0 / std::sqrt(2.0);
    std::array<cplx, 2> v{};
    switch (a) {
        case Analyzer::H:
            v = {1.0, 0.0};
            break;
        case Analyzer::V:
            v = {0.0, 1.0};
            break;
        case Analyzer::D:
            v = {h, h};
            break;
        case Analyzer::A:
            v = {h, -h};
            break;
        case Analyzer::R:
            v = {h, cplx{0.0, h}};
            break;
        case Analyzer::L:
            v = {h, cplx{0.0, -h}};
            break;
    }
    return ComplexMatrix::outer(v);
}

ComplexMatrix TomographySetting::projector() const {
    return kron(analyzer_projector(alice), analyzer_projector(bob));
}

std::vector<TomographySetting> standard_settings() {
    std::vector<TomographySetting> out;
    for (std::uint8_t a = 0; a < 6; ++a) {
        for (std::uint8_t b = 0; b < 6; ++b) {
            out.push_back({static_cast<Analyzer>(a), static_cast<Analyzer>(b)});
        }
    }
    return out;
}

std::vector<TomographySetting> minimal_settings() {
    using enum Analyzer;
    return {{H, H}, {H, V}, {V, V}, {V, H}, {R, H}, {R, V}, {D, V}, {D, H},
            {D, R}, {D, D}, {R, D}, {H, D}, {V, D}, {V, L}, {H, L}, {R, L}};
}

std::vector<CountRecord> simulate_counts(const DensityOperator &rho, const std::vector<TomographySetting> &settings,
                                         double total_triples, std::uint64_t seed, double accidental_mean) {
    if (rho.dim() != 4) {
        throw Error(ErrorCode::NotTwoQubit, "simulate_counts: state is not two-qubit");
    }
    if (settings.empty() || !(total_triples >= 0.0)) {
        throw Error(ErrorCode::InvalidParams, "simulate_counts: need settings and a non-negative budget");
    }
    const DensityOperator state = normalize(rho).first;
    const double per_setting = total_triples * 4.0 / static_cast<double>(settings.size());
    std::mt19937_64 rng = make_rng(seed, 0);
    std::vector<CountRecord> records;
    records.reserve(settings.size());
    for (const auto &s : settings) {
        CountRecord r;
        r.setting = s;
        r.expected_rate = std::max(0.0, real_trace_product(state.matrix(), s.projector()));
        r.observed = draw_poisson(rng, per_setting * r.expected_rate + accidental_mean);
        r.duration_scale = total_triples;
        records.push_back(r);
    }
    return records;
}

ComplexMatrix linear_inversion(const std::vector<TomographySetting> &settings, std::span<const double> values) {
    if (settings.size() != values.size()) {
        throw Error(ErrorCode::DimensionMismatch, "linear_inversion: one value per setting required");
    }
    const auto &paulis = two_qubit_paulis();
    Eigen::MatrixXd design(settings.size(), kPauliCount);
    Eigen::VectorXd counts(settings.size());
    for (std::size_t k = 0; k < settings.size(); ++k) {
        const ComplexMatrix proj = settings[k].projector();
        for (std::size_t mu = 0; mu < kPauliCount; ++mu) {
            design(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(mu)) =
                real_trace_product(paulis[mu], proj) / 4.0;
        }
        counts(static_cast<Eigen::Index>(k)) = values[k];
    }
    const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    if (qr.rank() < static_cast<Eigen::Index>(kPauliCount)) {
        throw Error(ErrorCode::RankDeficient, "linear_inversion: settings span only " + std::to_string(qr.rank()) +
                                                  " of 16 operator dimensions");
    }
    const Eigen::VectorXd coef = qr.solve(counts);
    if (!(coef(0) > 0.0)) {
        throw Error(ErrorCode::ZeroTrace, "linear_inversion: no counts above background");
    }
    ComplexMatrix rho(4, 4);
    for (std::size_t mu = 0; mu < kPauliCount; ++mu) {
        rho += paulis[mu] * cplx{coef(static_cast<Eigen::Index>(mu)) / (4.0 * coef(0)), 0.0};
    }
    return rho;
}

ComplexMatrix linear_inversion(const std::vector<CountRecord> &records, const ReconstructionOptions &options) {
    std::vector<TomographySetting> settings;
    std::vector<double> values;
    for (const auto &r : records) {
        settings.push_back(r.setting);
        values.push_back(static_cast<double>(r.observed) - options.background);
    }
    return linear_inversion(settings, values);
}

DensityOperator project_physical(const ComplexMatrix &estimate) {
    const HermitianEigen eig = eigh(estimate);
    double kept = 0.0;
    for (double v : eig.values) {
        kept += std::max(0.0, v);
    }
    if (!(kept > 0.0)) {
        throw Error(ErrorCode::ZeroTrace, "reconstruct: no positive spectral weight");
    }
    return DensityOperator(spectral_apply(eig, [kept](double v) { return std::max(0.0, v) / kept; }));
}

DensityOperator reconstruct(const std::vector<CountRecord> &records, const ReconstructionOptions &options) {
    return project_physical(linear_inversion(records, options));
}

UncertaintyReport error_bars(const DensityOperator &estimate, const std::vector<CountRecord> &records,
                             std::size_t trials, std::uint64_t seed, const ErrorBarOptions &options) {
    if (trials < 100) {
        throw Error(ErrorCode::InvalidParams, "error_bars: at least 100 trials required");
    }
    if (records.empty()) {
        throw Error(ErrorCode::InvalidParams, "error_bars: no count records");
    }
    std::vector<TomographySetting> settings;
    settings.reserve(records.size());
    for (const auto &r : records) {
        settings.push_back(r.setting);
    }
    const double budget = records.front().duration_scale;

    std::vector<double> fid(trials), conc(trials), prob(trials);
    parallel_for(trials, [&](std::size_t t) {
        // Stream 0 is taken by simulate_counts for the same seed.
        const std::uint64_t stream_seed = make_rng(seed, t + 1)();
        const auto resampled = simulate_counts(estimate, settings, budget, stream_seed);
        std::uint64_t total = 0;
        for (const auto &r : resampled) {
            total += r.observed;
        }
        const DensityOperator rho = reconstruct(resampled, options.reconstruction);
        fid[t] = fidelity(rho, estimate);
        conc[t] = concurrence(rho).value;
        prob[t] = budget > 0.0 ? options.success_probability * static_cast<double>(total) / budget : 0.0;
    });

    UncertaintyReport rep;
    rep.trials = trials;
    rep.fidelity_mean = mean_of(fid);
    rep.fidelity_std = sample_std(fid, rep.fidelity_mean);
    rep.concurrence_mean = mean_of(conc);
    rep.concurrence_std = sample_std(conc, rep.concurrence_mean);
    rep.probability_mean = mean_of(prob);
    rep.probability_std = sample_std(prob, rep.probability_mean);
    return rep;
}

std::string counts_to_csv(const std::vector<CountRecord> &records) {
    std::ostringstream os;
    os << "setting_A,setting_B,expected_rate,observed\n";
    for (const auto &r : records) {
        os << analyzer_name(r.setting.alice) << ',' << analyzer_name(r.setting.bob) << ','
           << format_double(r.expected_rate) << ',' << r.observed << '\n';
    }
    return os.str();
}

}  // namespace ebr::tomography
