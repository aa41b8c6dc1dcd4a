#include "affect_engine/config_json.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

#include "affect_engine/errors.hpp"

namespace affect_engine {

namespace {

using ordered_json = nlohmann::ordered_json;

[[noreturn]] void fail_parse(const std::string& message) { throw ParseError(message); }

void check_keys(const ordered_json& object, const std::set<std::string>& allowed,
                const char* where) {
    for (const auto& [key, value] : object.items()) {
        (void)value;
        if (allowed.find(key) == allowed.end()) {
            fail_parse(std::string("unknown key \"") + key + "\" in " + where);
        }
    }
}

int require_int(const ordered_json& value, const char* field) {
    if (!value.is_number_integer()) {
        fail_parse(std::string("field \"") + field + "\" must be an integer");
    }
    return value.get<int>();
}

double require_number(const ordered_json& value, const char* field) {
    if (!value.is_number()) {
        fail_parse(std::string("field \"") + field + "\" must be a number");
    }
    return value.get<double>();
}

bool require_bool(const ordered_json& value, const char* field) {
    if (!value.is_boolean()) {
        fail_parse(std::string("field \"") + field + "\" must be a boolean");
    }
    return value.get<bool>();
}

std::string require_string(const ordered_json& value, const char* field) {
    if (!value.is_string()) {
        fail_parse(std::string("field \"") + field + "\" must be a string");
    }
    return value.get<std::string>();
}

GraphSpec parse_graph(const ordered_json& value) {
    if (!value.is_object()) {
        fail_parse("field \"graph\" must be an object");
    }
    check_keys(value, {"num_locations", "edges", "start"}, "graph");
    GraphSpec spec = default_graph();
    if (value.contains("num_locations")) {
        spec.num_locations = require_int(value["num_locations"], "graph.num_locations");
        spec.edges.clear(); // the default edge set only fits the default size
    }
    if (value.contains("edges")) {
        if (!value["edges"].is_array()) {
            fail_parse("field \"graph.edges\" must be an array of [a, b] pairs");
        }
        spec.edges.clear();
        for (const auto& edge : value["edges"]) {
            if (!edge.is_array() || edge.size() != 2) {
                fail_parse("each graph edge must be a two-element array");
            }
            spec.edges.emplace_back(require_int(edge[0], "graph.edges[][0]"),
                                    require_int(edge[1], "graph.edges[][1]"));
        }
    }
    if (value.contains("start")) {
        spec.start = require_int(value["start"], "graph.start");
    }
    return spec;
}

ScenarioConfig parse_one(const ordered_json& object) {
    if (!object.is_object()) {
        fail_parse("each scenario configuration must be a JSON object");
    }
    static const std::set<std::string> kKeys = {
        "scenario_id",      "graph",   "object_present", "object_true_location",
        "prior_kind",       "prior_concentration",       "p",
        "horizon",          "policy_precision",          "max_steps",
        "seed",             "stop_on_found"};
    check_keys(object, kKeys, "scenario configuration");

    int scenario_id = 0;
    if (object.contains("scenario_id")) {
        scenario_id = require_int(object["scenario_id"], "scenario_id");
    }
    if (scenario_id < 0 || scenario_id > 5) {
        throw ConfigError("scenario_id must be 0 (custom) or 1..5");
    }

    // Built-in ids start from their full Table-1 configuration; explicit keys
    // then override it.
    ScenarioConfig config;
    if (scenario_id >= 1) {
        config = builtin_scenarios()[static_cast<std::size_t>(scenario_id - 1)];
    }
    config.scenario_id = scenario_id;

    if (object.contains("graph")) {
        config.graph = parse_graph(object["graph"]);
    }
    if (object.contains("object_present")) {
        config.object_present = require_bool(object["object_present"], "object_present");
        if (!config.object_present) {
            config.object_true_location.reset();
        }
    }
    if (object.contains("object_true_location")) {
        const auto& value = object["object_true_location"];
        if (value.is_null()) {
            config.object_true_location.reset();
        } else {
            config.object_true_location = require_int(value, "object_true_location");
        }
    }
    if (object.contains("prior_kind")) {
        config.prior_kind = prior_kind_from_string(
            require_string(object["prior_kind"], "prior_kind"));
    }
    if (object.contains("prior_concentration")) {
        config.prior_concentration =
            require_number(object["prior_concentration"], "prior_concentration");
    }
    if (object.contains("p")) {
        config.p = require_number(object["p"], "p");
    }
    if (object.contains("horizon")) {
        config.horizon = require_int(object["horizon"], "horizon");
    }
    if (object.contains("policy_precision")) {
        config.policy_precision = require_number(object["policy_precision"], "policy_precision");
    }
    if (object.contains("max_steps")) {
        config.max_steps = require_int(object["max_steps"], "max_steps");
    }
    if (object.contains("seed")) {
        const auto& value = object["seed"];
        const bool negative = value.is_number_integer() && !value.is_number_unsigned() &&
                              value.get<long long>() < 0;
        if (!value.is_number_integer() || negative) {
            fail_parse("field \"seed\" must be a non-negative integer");
        }
        config.seed = value.get<std::uint64_t>();
    }
    if (object.contains("stop_on_found")) {
        config.stop_on_found = require_bool(object["stop_on_found"], "stop_on_found");
    }

    // Default the true location when the object is present but no location
    // was given (node 2 on the default graph).
    if (config.object_present && !config.object_true_location) {
        config.object_true_location = std::min(2, config.graph.num_locations - 1);
    }

    validate_config(config);
    return config;
}

} // namespace

std::vector<ScenarioConfig> parse_config_text(const std::string& text) {
    ordered_json document;
    try {
        document = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        fail_parse(std::string("configuration is not valid JSON: ") + e.what());
    }
    std::vector<ScenarioConfig> configs;
    if (document.is_array()) {
        if (document.empty()) {
            throw ConfigError("configuration array must not be empty");
        }
        for (const auto& entry : document) {
            configs.push_back(parse_one(entry));
        }
    } else {
        configs.push_back(parse_one(document));
    }
    return configs;
}

std::vector<ScenarioConfig> parse_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("could not read config file: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

std::string resolved_config_json(const std::vector<ScenarioConfig>& configs) {
    ordered_json list = ordered_json::array();
    for (const ScenarioConfig& config : configs) {
        ordered_json graph;
        graph["num_locations"] = config.graph.num_locations;
        ordered_json edges = ordered_json::array();
        for (const auto& [a, b] : config.graph.edges) {
            edges.push_back(ordered_json::array({a, b}));
        }
        graph["edges"] = std::move(edges);
        graph["start"] = config.graph.start;

        ordered_json entry;
        entry["scenario_id"] = config.scenario_id;
        entry["graph"] = std::move(graph);
        entry["object_present"] = config.object_present;
        if (config.object_true_location) {
            entry["object_true_location"] = *config.object_true_location;
        } else {
            entry["object_true_location"] = nullptr;
        }
        entry["prior_kind"] = to_string(config.prior_kind);
        entry["prior_concentration"] = config.prior_concentration;
        entry["p"] = config.p;
        entry["horizon"] = config.horizon;
        entry["policy_precision"] = config.policy_precision;
        entry["max_steps"] = config.max_steps;
        entry["seed"] = config.seed;
        entry["stop_on_found"] = config.stop_on_found;
        list.push_back(std::move(entry));
    }
    return list.dump(2) + "\n";
}

} // namespace affect_engine
