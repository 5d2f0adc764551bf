#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ebr/protocol.hpp"

namespace ebr::cli {

/// Flat `key = value` configuration, one pair per line, `#` starts a comment.
class KeyValues {
public:
    static KeyValues parse(std::string_view text);
    static KeyValues load(const std::string &path);

    bool has(const std::string &key) const { return values_.count(key) != 0; }
    const std::string &require(const std::string &key) const;
    std::optional<std::string> get(const std::string &key) const;

    double require_double(const std::string &key) const;
    std::optional<double> get_double(const std::string &key) const;
    std::optional<bool> get_bool(const std::string &key) const;
    std::optional<long long> get_int(const std::string &key) const;
    std::optional<std::vector<double>> get_double_list(const std::string &key) const;

    void set(const std::string &key, const std::string &value) { values_[key] = value; }
    /// Throws a Config error naming the first key not in `allowed`.
    void reject_unknown(const std::set<std::string> &allowed) const;

private:
    std::map<std::string, std::string> values_;
};

/// Keys: scenario, p, T, epsilon | A_A + A_B, branch, feed_forward.
/// `require_T` is false for sweeps over T.
ChannelConfig channel_config_from(const KeyValues &kv, bool require_T = true);

inline const std::set<std::string> kChannelKeys{"scenario", "p", "T", "epsilon", "A_A", "A_B", "branch", "feed_forward", "seed"};

}  // namespace ebr::cli
