#include "vilenkin/report.hpp"

#include <nlohmann/json.hpp>

namespace vilenkin {

namespace {

using ordered_json = nlohmann::ordered_json;

bool is_measure_key(const std::string& key) {
    return key == "measure" || key == "covered" || key == "deficit" || key == "tail_bound" ||
           key == "required" || key == "total_measure" || key == "projected_cover" ||
           key == "target" || key == "enumerated";
}

void add_condition(const std::string& name, const Verdict& v, ordered_json& conditions) {
    ordered_json c;
    c["name"] = name;
    c["verdict"] = status_str(v.status);
    if (v.status == Status::pass_certified) c["uncovered"] = rational_str(v.uncovered);
    if (v.status == Status::undecided && v.depth >= 0) c["depth"] = v.depth;
    for (const auto& [key, value] : v.notes) c[key] = value;
    conditions.push_back(std::move(c));
}

void collect(const Verdict& v, const std::string& prefix, ordered_json& conditions,
             ordered_json& witnesses, ordered_json& measures) {
    if (v.witness) {
        ordered_json w;
        w["condition"] = prefix.empty() ? "overall" : prefix;
        w["description"] = v.witness->description;
        w["evidence"] = v.witness->evidence;
        witnesses.push_back(std::move(w));
    }
    for (const auto& [key, value] : v.notes)
        if (is_measure_key(key)) measures[prefix.empty() ? key : prefix + ": " + key] = value;
    for (const auto& [name, part] : v.parts) {
        std::string full = prefix.empty() ? name : prefix + " / " + name;
        add_condition(full, part, conditions);
        collect(part, full, conditions, witnesses, measures);
    }
}

} // namespace

std::string render_json(const std::string& command, int prime, const Verdict& v, int depth,
                        const std::vector<std::string>& decisions) {
    ordered_json j;
    j["command"] = command;
    j["prime"] = prime;
    j["verdict"] = status_str(v.status);
    if (v.status == Status::pass_certified) j["uncovered"] = rational_str(v.uncovered);
    ordered_json conditions = ordered_json::array();
    ordered_json witnesses = ordered_json::array();
    ordered_json measures = ordered_json::object();
    if (!v.notes.empty()) add_condition("overall", v, conditions);
    collect(v, "", conditions, witnesses, measures);
    j["conditions"] = std::move(conditions);
    j["witnesses"] = std::move(witnesses);
    j["measures"] = std::move(measures);
    j["depth"] = depth;
    j["decisions"] = decisions;
    return j.dump(2) + "\n";
}

} // namespace vilenkin
