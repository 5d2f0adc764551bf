#include "ebr/cli/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "ebr/error.hpp"

namespace ebr::cli {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

[[noreturn]] void config_error(const std::string &what) { throw Error(ErrorCode::Config, what); }

double parse_double(const std::string &key, const std::string &text) {
    double v = 0.0;
    const auto *end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, v);
    if (res.ec != std::errc{} || res.ptr != end) {
        config_error("config key '" + key + "': cannot parse '" + text + "' as a number");
    }
    return v;
}

}  // namespace

KeyValues KeyValues::parse(std::string_view text) {
    KeyValues kv;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        const std::string body = trim(line);
        if (body.empty()) {
            continue;
        }
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            config_error("config line " + std::to_string(lineno) + ": expected 'key = value'");
        }
        const std::string key = trim(std::string_view(body).substr(0, eq));
        const std::string value = trim(std::string_view(body).substr(eq + 1));
        if (key.empty()) {
            config_error("config line " + std::to_string(lineno) + ": empty key");
        }
        if (kv.values_.count(key) != 0) {
            config_error("config key '" + key + "' given twice");
        }
        kv.values_[key] = value;
    }
    return kv;
}

KeyValues KeyValues::load(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        config_error("cannot read config file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

const std::string &KeyValues::require(const std::string &key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) {
        config_error("missing required config key '" + key + "'");
    }
    return it->second;
}

std::optional<std::string> KeyValues::get(const std::string &key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) {
        return std::nullopt;
    }
    return it->second;
}

double KeyValues::require_double(const std::string &key) const { return parse_double(key, require(key)); }

std::optional<double> KeyValues::get_double(const std::string &key) const {
    if (const auto v = get(key)) {
        return parse_double(key, *v);
    }
    return std::nullopt;
}

std::optional<bool> KeyValues::get_bool(const std::string &key) const {
    const auto v = get(key);
    if (!v) {
        return std::nullopt;
    }
    std::string s = *v;
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    if (s == "true" || s == "1" || s == "yes" || s == "on") {
        return true;
    }
    if (s == "false" || s == "0" || s == "no" || s == "off") {
        return false;
    }
    config_error("config key '" + key + "': expected a boolean, got '" + *v + "'");
}

std::optional<long long> KeyValues::get_int(const std::string &key) const {
    const auto v = get(key);
    if (!v) {
        return std::nullopt;
    }
    long long out = 0;
    const auto *end = v->data() + v->size();
    const auto res = std::from_chars(v->data(), end, out);
    if (res.ec != std::errc{} || res.ptr != end) {
        config_error("config key '" + key + "': expected an integer, got '" + *v + "'");
    }
    return out;
}

std::optional<std::vector<double>> KeyValues::get_double_list(const std::string &key) const {
    const auto v = get(key);
    if (!v) {
        return std::nullopt;
    }
    std::vector<double> out;
    std::istringstream in(*v);
    std::string item;
    while (std::getline(in, item, ',')) {
        out.push_back(parse_double(key, trim(item)));
    }
    return out;
}

void KeyValues::reject_unknown(const std::set<std::string> &allowed) const {
    for (const auto &[key, value] : values_) {
        if (allowed.count(key) == 0) {
            config_error("unknown config key '" + key + "'");
        }
    }
}

ChannelConfig channel_config_from(const KeyValues &kv, bool require_T) {
    ChannelConfig c;
    const std::string scenario = kv.get("scenario").value_or("distinguishable");
    if (scenario == "distinguishable") {
        c.scenario = ChannelScenario::distinguishable();
    } else if (scenario == "indistinguishable") {
        c.scenario = ChannelScenario::indistinguishable();
    } else if (scenario == "partial") {
        const double p = kv.require_double("p");
        if (!(p >= 0.0 && p <= 1.0)) {
            config_error("config key 'p' must lie in [0, 1]");
        }
        c.scenario = ChannelScenario::partial(p);
    } else {
        config_error("config key 'scenario': expected distinguishable, indistinguishable or partial, got '" +
                     scenario + "'");
    }
    if (require_T) {
        c.T = kv.require_double("T");
    } else if (const auto t = kv.get_double("T")) {
        c.T = *t;
    }
    if (!(c.T >= 0.0 && c.T <= 1.0)) {
        config_error("config key 'T' must lie in [0, 1]");
    }
    const bool has_a = kv.has("A_A");
    const bool has_b = kv.has("A_B");
    if (has_a != has_b) {
        config_error(std::string("config key '") + (has_a ? "A_B" : "A_A") + "' is required when the other attenuation is given");
    }
    if (has_a && kv.has("epsilon")) {
        config_error("config keys 'epsilon' and 'A_A'/'A_B' are mutually exclusive");
    }
    if (has_a) {
        FilterPair f;
        f.A_A = kv.require_double("A_A");
        f.A_B = kv.require_double("A_B");
        if (!(f.A_A > 0.0 && f.A_A <= 1.0 && f.A_B > 0.0 && f.A_B <= 1.0)) {
            config_error("config keys 'A_A', 'A_B' must lie in (0, 1]");
        }
        c.filters = f;
    }
    if (const auto eps = kv.get_double("epsilon")) {
        if (!(*eps > 0.0 && *eps <= 1.0)) {
            config_error("config key 'epsilon' must lie in (0, 1]");
        }
        c.epsilon = eps;
    }
    const std::string branch = kv.get("branch").value_or("H");
    if (branch == "H") {
        c.branch = Branch::H;
    } else if (branch == "V") {
        c.branch = Branch::V;
    } else {
        config_error("config key 'branch': expected H or V, got '" + branch + "'");
    }
    c.feed_forward = kv.get_bool("feed_forward").value_or(false);
    return c;
}

}  // namespace ebr::cli
