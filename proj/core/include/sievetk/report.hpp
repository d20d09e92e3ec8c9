#pragma once

#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

namespace sievetk {

using json = nlohmann::ordered_json;

enum class CheckStatus { pass, fail, out_of_hypothesis, informational };

std::string to_string(CheckStatus s);
CheckStatus status_from_string(const std::string& s);

// One machine-readable verification record.  `anchor` is a stable identifier
// of the inequality or identity the check exercises, so a failing line can be
// traced back to the statement it verifies.
struct CheckReport {
    std::string id;
    std::string anchor;
    json inputs = json::object();
    json values = json::object();
    json bounds = json::object();
    double margin = 0.0;
    CheckStatus status = CheckStatus::informational;
    std::uint64_t seed = 0;
    double wall_time_ms = 0.0;

    // status==pass requires margin >= 0; use this instead of setting the
    // fields directly when the check is a hard assertion.
    static CheckReport asserted(std::string id, std::string anchor, json inputs,
                                json values, json bounds, double margin,
                                std::uint64_t seed = 0);
    static CheckReport informational(std::string id, std::string anchor, json inputs,
                                     json values, json bounds, double margin,
                                     std::uint64_t seed = 0);
    static CheckReport out_of_hypothesis(std::string id, std::string anchor, json inputs,
                                         json values, std::uint64_t seed = 0);

    bool passed() const { return status == CheckStatus::pass; }
    bool failed() const { return status == CheckStatus::fail; }

    std::string inputs_digest() const;

    // include_volatile=false drops fields that vary between identical runs
    // (wall time); the CLI stream uses that mode for reproducible output.
    json to_json(bool include_volatile = true) const;
    static CheckReport from_json(const json& j);
};

}  // namespace sievetk
