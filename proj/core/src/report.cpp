#include "sievetk/report.hpp"

#include <stdexcept>

#include "sievetk/math_util.hpp"

namespace sievetk {

std::string to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        case CheckStatus::out_of_hypothesis: return "out-of-hypothesis";
        case CheckStatus::informational: return "informational";
    }
    return "informational";
}

CheckStatus status_from_string(const std::string& s) {
    if (s == "pass") return CheckStatus::pass;
    if (s == "fail") return CheckStatus::fail;
    if (s == "out-of-hypothesis") return CheckStatus::out_of_hypothesis;
    if (s == "informational") return CheckStatus::informational;
    throw std::invalid_argument("unknown check status: " + s);
}

CheckReport CheckReport::asserted(std::string id, std::string anchor, json inputs,
                                  json values, json bounds, double margin,
                                  std::uint64_t seed) {
    CheckReport r;
    r.id = std::move(id);
    r.anchor = std::move(anchor);
    r.inputs = std::move(inputs);
    r.values = std::move(values);
    r.bounds = std::move(bounds);
    r.margin = margin;
    r.status = margin >= 0.0 ? CheckStatus::pass : CheckStatus::fail;
    r.seed = seed;
    return r;
}

CheckReport CheckReport::informational(std::string id, std::string anchor, json inputs,
                                       json values, json bounds, double margin,
                                       std::uint64_t seed) {
    CheckReport r = asserted(std::move(id), std::move(anchor), std::move(inputs),
                             std::move(values), std::move(bounds), margin, seed);
    r.status = CheckStatus::informational;
    return r;
}

CheckReport CheckReport::out_of_hypothesis(std::string id, std::string anchor, json inputs,
                                           json values, std::uint64_t seed) {
    CheckReport r;
    r.id = std::move(id);
    r.anchor = std::move(anchor);
    r.inputs = std::move(inputs);
    r.values = std::move(values);
    r.status = CheckStatus::out_of_hypothesis;
    r.seed = seed;
    return r;
}

std::string CheckReport::inputs_digest() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a(inputs.dump())));
    return std::string(buf);
}

json CheckReport::to_json(bool include_volatile) const {
    json j;
    j["check"] = id;
    j["anchor"] = anchor;
    j["inputs"] = inputs;
    j["inputs_digest"] = inputs_digest();
    j["values"] = values;
    j["bounds"] = bounds;
    j["margin"] = margin;
    j["status"] = to_string(status);
    j["seed"] = seed;
    if (include_volatile) j["wall_time_ms"] = wall_time_ms;
    return j;
}

CheckReport CheckReport::from_json(const json& j) {
    CheckReport r;
    r.id = j.at("check").get<std::string>();
    r.anchor = j.at("anchor").get<std::string>();
    r.inputs = j.at("inputs");
    r.values = j.at("values");
    r.bounds = j.at("bounds");
    r.margin = j.at("margin").get<double>();
    r.status = status_from_string(j.at("status").get<std::string>());
    r.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("wall_time_ms")) r.wall_time_ms = j.at("wall_time_ms").get<double>();
    return r;
}

}  // namespace sievetk
