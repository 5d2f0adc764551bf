#include "ebr/cli/commands.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <mutex>
#include <ostream>
#include <sstream>

#include "ebr/error.hpp"
#include "ebr/fock.hpp"
#include "ebr/metrics.hpp"
#include "ebr/parallel.hpp"
#include "ebr/serialization.hpp"
#include "ebr/tomography.hpp"
#include "json.hpp"

namespace ebr::cli {

namespace {

using nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fixed4(double x) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(4);
    os << x;
    return os.str();
}

void write_file(const std::string &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorCode::Io, "cannot write output file '" + path + "'");
    }
    out << content;
    if (!out) {
        throw Error(ErrorCode::Io, "failed while writing '" + path + "'");
    }
}

KeyValues load_required(const CommandOptions &opts) {
    if (!opts.config_path) {
        throw Error(ErrorCode::Config, "--config PATH is required");
    }
    return KeyValues::load(*opts.config_path);
}

std::string scenario_label(const ChannelScenario &s) {
    switch (s.kind()) {
        case ScenarioKind::Distinguishable:
            return "distinguishable";
        case ScenarioKind::Indistinguishable:
            return "indistinguishable";
        case ScenarioKind::Partial:
            return "partial";
    }
    return "unknown";
}

json params_json(const XStateParams &p) {
    return {{"alpha", p.alpha}, {"beta", p.beta}, {"gamma", p.gamma}, {"delta", p.delta}, {"xi", p.xi}, {"P", p.P}};
}

json config_json(const ChannelConfig &c, const FilterPair &f) {
    json j;
    j["scenario"] = scenario_label(c.scenario);
    j["p"] = c.scenario.indistinguishable_weight();
    j["T"] = c.T;
    j["branch"] = c.branch == Branch::H ? "H" : "V";
    j["feed_forward"] = c.feed_forward;
    j["A_A"] = f.A_A;
    j["A_B"] = f.A_B;
    if (f.epsilon) {
        j["epsilon"] = *f.epsilon;
    } else {
        j["epsilon"] = nullptr;
    }
    return j;
}

RunRecord record_for(const ChannelConfig &c, const StageOutput &s) {
    RunRecord r;
    r.scenario = scenario_label(c.scenario);
    r.stage = s.stage;
    r.T = c.T;
    r.p = c.scenario.indistinguishable_weight();
    r.epsilon = kNaN;
    r.A_A = 1.0;
    r.A_B = 1.0;
    if (s.filters) {
        r.A_A = s.filters->A_A;
        r.A_B = s.filters->A_B;
        r.epsilon = s.filters->epsilon.value_or(kNaN);
    }
    r.concurrence = concurrence_x(s.params);
    r.probability = s.probability;
    r.cumulative_probability = s.cumulative_probability;
    return r;
}

json record_json(const RunRecord &r) {
    const auto num = [](double x) { return std::isnan(x) ? json(nullptr) : json(x); };
    return {{"scenario", r.scenario},
            {"stage", std::string(stage_name(r.stage))},
            {"T", num(r.T)},
            {"epsilon", num(r.epsilon)},
            {"p", num(r.p)},
            {"A_A", num(r.A_A)},
            {"A_B", num(r.A_B)},
            {"concurrence", num(r.concurrence)},
            {"probability", num(r.probability)},
            {"cumulative_probability", num(r.cumulative_probability)}};
}

template <typename Body>
int guarded(std::ostream &err, Body &&body) {
    try {
        return body();
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e);
    }
}

}  // namespace

int exit_code_for(const std::exception &e) {
    if (const auto *ebr_error = dynamic_cast<const Error *>(&e)) {
        switch (ebr_error->code()) {
            case ErrorCode::Config:
            case ErrorCode::Io:
                return kUsage;
            default:
                return kDomain;
        }
    }
    return kDomain;
}

std::string run_records_to_csv(const std::vector<RunRecord> &rows) {
    std::ostringstream os;
    os << kRunRecordHeader << '\n';
    for (const auto &r : rows) {
        os << r.scenario << ',' << stage_name(r.stage) << ',' << format_double(r.T) << ',' << format_double(r.epsilon)
           << ',' << format_double(r.p) << ',' << format_double(r.A_A) << ',' << format_double(r.A_B) << ','
           << format_double(r.concurrence) << ',' << format_double(r.probability) << ','
           << format_double(r.cumulative_probability) << '\n';
    }
    return os.str();
}

int cmd_run(const CommandOptions &opts, std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        const KeyValues kv = load_required(opts);
        kv.reject_unknown(kChannelKeys);
        const ChannelConfig config = channel_config_from(kv);
        const ProtocolTrace trace = run_protocol(config);
        const FilterPair filters = *trace.stages.back().filters;

        out << "scenario " << config.scenario.name() << "  T=" << format_shortest(config.T)
            << "  branch=" << (config.branch == Branch::H ? "H" : "V")
            << "  feed_forward=" << (config.feed_forward ? "true" : "false") << '\n';
        out << "filters  A_A=" << format_shortest(filters.A_A) << "  A_B=" << format_shortest(filters.A_B);
        if (filters.epsilon) {
            out << "  epsilon=" << format_shortest(*filters.epsilon);
        }
        out << '\n';
        std::vector<RunRecord> rows;
        json stages = json::array();
        for (const StageOutput &s : trace.stages) {
            const RunRecord r = record_for(config, s);
            rows.push_back(r);
            out << "stage " << stage_name(s.stage) << (s.stage == StageId::III ? " " : (s.stage == StageId::II ? "  " : "   "))
                << "C=" << fixed4(r.concurrence) << "  P=" << fixed4(r.probability)
                << "  cumulative=" << fixed4(r.cumulative_probability) << '\n';
            json js = record_json(r);
            js["params"] = params_json(s.params);
            js["state"] = to_json(s.state);
            stages.push_back(std::move(js));
        }
        if (opts.out_path) {
            if (opts.format.value_or(OutputFormat::Json) == OutputFormat::Csv) {
                write_file(*opts.out_path, run_records_to_csv(rows));
            } else {
                const json doc{{"config", config_json(config, filters)}, {"stages", stages}};
                write_file(*opts.out_path, doc.dump(2) + "\n");
            }
        }
        return static_cast<int>(kSuccess);
    });
}

int cmd_sweep(const CommandOptions &opts, std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        const KeyValues kv = load_required(opts);
        std::set<std::string> allowed = kChannelKeys;
        allowed.insert({"variable", "start", "stop", "steps"});
        kv.reject_unknown(allowed);

        const std::string variable = kv.require("variable");
        const double start = kv.require_double("start");
        const double stop = kv.require_double("stop");
        const long long steps = kv.get_int("steps").value_or(0);
        if (steps < 2) {
            throw Error(ErrorCode::Config, "config key 'steps' must be at least 2");
        }
        const auto in_range = [&](double lo, double hi, bool open_lo) {
            for (double v : {start, stop}) {
                if (open_lo ? !(v > lo && v <= hi) : !(v >= lo && v <= hi)) {
                    return false;
                }
            }
            return true;
        };
        ChannelConfig base;
        if (variable == "T") {
            if (!in_range(0.0, 1.0, false)) {
                throw Error(ErrorCode::Config, "sweep range for T must lie in [0, 1]");
            }
            base = channel_config_from(kv, false);
        } else if (variable == "epsilon") {
            if (!in_range(0.0, 1.0, true)) {
                throw Error(ErrorCode::Config, "sweep range for epsilon must lie in (0, 1]");
            }
            if (kv.has("A_A")) {
                throw Error(ErrorCode::Config, "an epsilon sweep cannot use explicit A_A/A_B");
            }
            base = channel_config_from(kv);
        } else if (variable == "p") {
            if (!in_range(0.0, 1.0, false)) {
                throw Error(ErrorCode::Config, "sweep range for p must lie in [0, 1]");
            }
            KeyValues patched = kv;
            patched.set("scenario", "partial");
            if (!patched.has("p")) {
                patched.set("p", "0");
            }
            base = channel_config_from(patched);
        } else {
            throw Error(ErrorCode::Config, "config key 'variable': expected T, epsilon or p, got '" + variable + "'");
        }

        const std::size_t n = static_cast<std::size_t>(steps);
        std::vector<std::vector<RunRecord>> rows(n);
        std::vector<std::string> warnings(n);
        parallel_for(n, [&](std::size_t i) {
            const double v = i + 1 == n ? stop : start + (stop - start) * static_cast<double>(i) / static_cast<double>(n - 1);
            ChannelConfig c = base;
            if (variable == "T") {
                c.T = v;
            } else if (variable == "epsilon") {
                c.epsilon = v;
            } else {
                c.scenario = ChannelScenario::partial(v);
            }
            const StageOutput s1 = stage1(c);
            const StageOutput s2 = stage2(c);
            rows[i].push_back(record_for(c, s1));
            rows[i].push_back(record_for(c, s2));
            try {
                rows[i].push_back(record_for(c, apply_filters(s2, resolve_filters(c))));
            } catch (const Error &e) {
                if (e.code() != ErrorCode::SingularPrescription && e.code() != ErrorCode::ZeroTrace) {
                    throw;
                }
                RunRecord r = record_for(c, s2);
                r.stage = StageId::III;
                r.epsilon = c.epsilon.value_or(c.filters ? kNaN : 1.0);
                r.A_A = r.A_B = r.concurrence = r.probability = r.cumulative_probability = kNaN;
                rows[i].push_back(r);
                warnings[i] = "warning: stage III skipped at " + variable + "=" + format_shortest(v) + ": " + e.what();
            }
        });

        std::vector<RunRecord> flat;
        for (std::size_t i = 0; i < n; ++i) {
            if (!warnings[i].empty()) {
                err << warnings[i] << '\n';
            }
            flat.insert(flat.end(), rows[i].begin(), rows[i].end());
        }
        std::string text;
        if (opts.format.value_or(OutputFormat::Csv) == OutputFormat::Json) {
            json arr = json::array();
            for (const auto &r : flat) {
                arr.push_back(record_json(r));
            }
            text = arr.dump(2) + "\n";
        } else {
            text = run_records_to_csv(flat);
        }
        if (opts.out_path) {
            write_file(*opts.out_path, text);
        } else {
            out << text;
        }
        return static_cast<int>(kSuccess);
    });
}

OracleReport run_oracle_check(const OracleGrid &grid, const ProtocolModel &model, std::ostream &log) {
    if (!(grid.grid_step > 0.0 && grid.grid_step < 1.0)) {
        throw Error(ErrorCode::Config, "grid step must lie in (0, 1)");
    }
    struct Case {
        ChannelConfig config;
        StageId stage;
        std::string label;
    };
    std::vector<ChannelScenario> scenarios{ChannelScenario::distinguishable(), ChannelScenario::indistinguishable()};
    for (double p : grid.partial_p) {
        scenarios.push_back(ChannelScenario::partial(p));
    }
    std::vector<Case> cases;
    for (int k = 1; k * grid.grid_step < 1.0 - 1e-12; ++k) {
        const double t = std::round(k * grid.grid_step * 1e12) / 1e12;
        for (const auto &scenario : scenarios) {
            ChannelConfig base;
            base.T = t;
            base.scenario = scenario;
            const std::string where = "scenario=" + scenario.name() + " T=" + format_shortest(t);
            cases.push_back({base, StageId::I, where + " stage=I"});
            for (const auto &[branch, ff] : {std::pair{Branch::H, false}, {Branch::V, false}, {Branch::V, true}}) {
                ChannelConfig c = base;
                c.branch = branch;
                c.feed_forward = ff;
                const std::string tag = std::string(" branch=") + (branch == Branch::H ? "H" : "V") +
                                        " feed_forward=" + (ff ? "true" : "false");
                cases.push_back({c, StageId::II, where + " stage=II" + tag});
                for (double eps : grid.epsilons) {
                    c.epsilon = eps;
                    cases.push_back({c, StageId::III, where + " stage=III epsilon=" + format_shortest(eps) + tag});
                }
            }
        }
    }

    struct Outcome {
        bool skipped = false;
        std::string note;
        double state_dev = 0.0;
        double prob_dev = 0.0;
    };
    std::vector<Outcome> outcomes(cases.size());
    parallel_for(cases.size(), [&](std::size_t i) {
        const Case &c = cases[i];
        try {
            const StageOutput closed = model(c.config, c.stage);
            const StageOutput oracle = fock::oracle_protocol(c.config, c.stage);
            outcomes[i].state_dev = max_abs_diff(closed.state.matrix(), oracle.state.matrix());
            outcomes[i].prob_dev = std::max(std::abs(closed.probability - oracle.probability),
                                            std::abs(closed.cumulative_probability - oracle.cumulative_probability));
        } catch (const Error &e) {
            if (e.code() != ErrorCode::SingularPrescription) {
                throw;
            }
            outcomes[i].skipped = true;
            outcomes[i].note = e.what();
        }
    });

    OracleReport report;
    std::size_t breaches = 0;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const Outcome &o = outcomes[i];
        if (o.skipped) {
            ++report.skipped;
            log << "SKIPPED-singular " << cases[i].label << '\n';
            continue;
        }
        ++report.compared;
        const bool bad = !(o.state_dev <= grid.tolerance) || !(o.prob_dev <= grid.tolerance);
        if (bad) {
            report.passed = false;
            if (++breaches <= 20) {
                log << "BREACH " << cases[i].label << " state_dev=" << format_double(o.state_dev)
                    << " prob_dev=" << format_double(o.prob_dev) << '\n';
            }
        }
        const double worst_before = std::max(report.max_state_deviation, report.max_probability_deviation);
        report.max_state_deviation = std::max(report.max_state_deviation, o.state_dev);
        report.max_probability_deviation = std::max(report.max_probability_deviation, o.prob_dev);
        if (std::max(o.state_dev, o.prob_dev) > worst_before || report.worst_case.empty()) {
            report.worst_case = cases[i].label;
        }
    }
    return report;
}

int cmd_oracle_check(const CommandOptions &opts, std::ostream &out, std::ostream &err, const ProtocolModel &model) {
    return guarded(err, [&] {
        OracleGrid grid;
        if (opts.config_path) {
            const KeyValues kv = KeyValues::load(*opts.config_path);
            kv.reject_unknown({"grid_step", "epsilons", "partial_p", "tolerance"});
            grid.grid_step = kv.get_double("grid_step").value_or(grid.grid_step);
            grid.epsilons = kv.get_double_list("epsilons").value_or(grid.epsilons);
            grid.partial_p = kv.get_double_list("partial_p").value_or(grid.partial_p);
            grid.tolerance = kv.get_double("tolerance").value_or(grid.tolerance);
        }
        if (opts.grid_step) {
            grid.grid_step = *opts.grid_step;
        }
        const OracleReport report = run_oracle_check(grid, model, out);
        out << "compared " << report.compared << " cases, skipped " << report.skipped << '\n';
        out << "max state deviation " << format_shortest(report.max_state_deviation) << '\n';
        out << "max probability deviation " << format_shortest(report.max_probability_deviation) << '\n';
        if (report.passed) {
            out << "PASS (tolerance " << format_shortest(grid.tolerance) << ")\n";
            return static_cast<int>(kSuccess);
        }
        out << "FAIL worst case: " << report.worst_case << '\n';
        return static_cast<int>(kCheckFailed);
    });
}

int cmd_tomography(const CommandOptions &opts, std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        const KeyValues kv = load_required(opts);
        std::set<std::string> allowed = kChannelKeys;
        allowed.insert({"state", "stage", "total_triples", "trials", "settings", "background"});
        kv.reject_unknown(allowed);

        const std::string state_kind = kv.get("state").value_or("protocol");
        DensityOperator truth;
        double success_probability = 1.0;
        if (state_kind == "singlet") {
            truth = singlet();
        } else if (state_kind == "maximally_mixed") {
            truth = maximally_mixed(4);
        } else if (state_kind == "protocol") {
            const ChannelConfig config = channel_config_from(kv);
            const std::string stage_text = kv.get("stage").value_or("II");
            StageId stage;
            if (stage_text == "I") {
                stage = StageId::I;
            } else if (stage_text == "II") {
                stage = StageId::II;
            } else if (stage_text == "III") {
                stage = StageId::III;
            } else {
                throw Error(ErrorCode::Config, "config key 'stage': expected I, II or III");
            }
            const StageOutput s = run_stage(config, stage);
            truth = s.state;
            success_probability = s.probability;
        } else {
            throw Error(ErrorCode::Config, "config key 'state': expected singlet, maximally_mixed or protocol");
        }

        const double total = kv.get_double("total_triples").value_or(500.0);
        const long long trials = kv.get_int("trials").value_or(1000);
        const long long seed_cfg = kv.get_int("seed").value_or(1);
        const std::uint64_t seed = opts.seed.value_or(static_cast<std::uint64_t>(seed_cfg));
        const long long scheme = kv.get_int("settings").value_or(36);
        const double background = kv.get_double("background").value_or(0.0);
        if (!(total > 0.0)) {
            throw Error(ErrorCode::Config, "config key 'total_triples' must be positive");
        }
        if (trials < 100) {
            throw Error(ErrorCode::Config, "config key 'trials' must be at least 100");
        }
        if (scheme != 36 && scheme != 16) {
            throw Error(ErrorCode::Config, "config key 'settings' must be 36 or 16");
        }
        if (!(background >= 0.0)) {
            throw Error(ErrorCode::Config, "config key 'background' must be non-negative");
        }

        const auto settings = scheme == 36 ? tomography::standard_settings() : tomography::minimal_settings();
        const auto records = tomography::simulate_counts(truth, settings, total, seed, background);
        tomography::ReconstructionOptions recon{background};
        const DensityOperator estimate = tomography::reconstruct(records, recon);
        tomography::ErrorBarOptions eb{recon, success_probability};
        const auto report = tomography::error_bars(estimate, records, static_cast<std::size_t>(trials), seed, eb);

        const double fid = fidelity(estimate, truth);
        const double c_est = concurrence(estimate).value;
        const double c_true = concurrence(truth).value;
        out << "fidelity(reconstruction, truth) = " << fixed4(fid) << '\n';
        out << "concurrence estimate = " << fixed4(c_est) << " +- " << fixed4(report.concurrence_std)
            << " (true " << fixed4(c_true) << ")\n";
        out << "fidelity spread (bootstrap) = " << fixed4(report.fidelity_std) << '\n';
        out << "probability estimate spread = " << fixed4(report.probability_std) << '\n';

        if (opts.out_path) {
            write_file(*opts.out_path + ".counts.csv", tomography::counts_to_csv(records));
            const json doc{{"reconstruction", to_json(estimate)},
                           {"truth", to_json(truth)},
                           {"fidelity", fid},
                           {"concurrence_estimate", c_est},
                           {"concurrence_true", c_true},
                           {"total_triples", total},
                           {"trials", trials},
                           {"seed", seed},
                           {"settings", scheme},
                           {"background", background},
                           {"uncertainty",
                            {{"trials", report.trials},
                             {"fidelity_mean", report.fidelity_mean},
                             {"fidelity_std", report.fidelity_std},
                             {"concurrence_mean", report.concurrence_mean},
                             {"concurrence_std", report.concurrence_std},
                             {"probability_mean", report.probability_mean},
                             {"probability_std", report.probability_std}}}};
            write_file(*opts.out_path + ".json", doc.dump(2) + "\n");
        }
        return static_cast<int>(kSuccess);
    });
}

}  // namespace ebr::cli
