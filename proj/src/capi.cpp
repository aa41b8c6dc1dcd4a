#include "affect_engine.h"

#include <cstdlib>
#include <cstring>
#include <optional>
#include <string>
#include <vector>

#include "affect_engine/config_json.hpp"
#include "affect_engine/emit.hpp"
#include "affect_engine/errors.hpp"
#include "affect_engine/scenario.hpp"

namespace ae = affect_engine;

struct ae_suite {
    std::vector<ae::ScenarioConfig> configs;
    ae::RunOptions options;
};

struct ae_result {
    struct Episode {
        ae_status status = AE_OK;
        std::string error;
        std::optional<ae::TrajectoryLog> log;
    };
    std::vector<Episode> episodes;
};

namespace {

thread_local std::string t_last_error;

ae_status set_error(ae_status status, const std::string& message) {
    t_last_error = message;
    return status;
}

ae_status map_exception() {
    try {
        throw;
    } catch (const ae::ParseError& e) {
        return set_error(AE_ERR_PARSE, e.what());
    } catch (const ae::ConfigError& e) {
        return set_error(AE_ERR_VALIDATION, e.what());
    } catch (const ae::ImpossibleObservationError& e) {
        return set_error(AE_ERR_IMPOSSIBLE_OBSERVATION, e.what());
    } catch (const ae::IoError& e) {
        return set_error(AE_ERR_IO, e.what());
    } catch (const ae::DegenerateDistributionError& e) {
        return set_error(AE_ERR_INVALID_ARGUMENT, e.what());
    } catch (const ae::InvalidInputError& e) {
        return set_error(AE_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::exception& e) {
        return set_error(AE_ERR_RUNTIME, e.what());
    } catch (...) {
        return set_error(AE_ERR_RUNTIME, "unknown failure");
    }
}

char* dup_string(const std::string& text, ae_status* status) {
    char* out = static_cast<char*>(std::malloc(text.size() + 1));
    if (!out) {
        *status = set_error(AE_ERR_RUNTIME, "out of memory");
        return nullptr;
    }
    std::memcpy(out, text.c_str(), text.size() + 1);
    *status = AE_OK;
    return out;
}

ae_status check_episode(const ae_result* result, size_t i) {
    if (!result) {
        return set_error(AE_ERR_NULL_ARGUMENT, "result handle is NULL");
    }
    if (i >= result->episodes.size()) {
        return set_error(AE_ERR_INDEX, "episode index out of range");
    }
    return AE_OK;
}

ae_status require_log(const ae_result* result, size_t i) {
    const ae_status rc = check_episode(result, i);
    if (rc != AE_OK) return rc;
    if (!result->episodes[i].log) {
        // Echo the episode's own failure so callers see why there is no
        // trajectory to render.
        return set_error(result->episodes[i].status,
                         "episode failed and produced no trajectory: " +
                             result->episodes[i].error);
    }
    return AE_OK;
}

} // namespace

extern "C" {

ae_status ae_suite_load_file(const char* path, ae_suite** out) {
    if (!path || !out) {
        return set_error(AE_ERR_NULL_ARGUMENT, "path and out must be non-NULL");
    }
    try {
        auto suite = new ae_suite;
        suite->configs = ae::parse_config_file(path);
        *out = suite;
        return AE_OK;
    } catch (...) {
        return map_exception();
    }
}

ae_status ae_suite_load_json(const char* text, ae_suite** out) {
    if (!text || !out) {
        return set_error(AE_ERR_NULL_ARGUMENT, "text and out must be non-NULL");
    }
    try {
        auto suite = new ae_suite;
        suite->configs = ae::parse_config_text(text);
        *out = suite;
        return AE_OK;
    } catch (...) {
        return map_exception();
    }
}

ae_status ae_suite_builtin(ae_suite** out) {
    if (!out) {
        return set_error(AE_ERR_NULL_ARGUMENT, "out must be non-NULL");
    }
    try {
        auto suite = new ae_suite;
        suite->configs = ae::builtin_scenarios();
        *out = suite;
        return AE_OK;
    } catch (...) {
        return map_exception();
    }
}

ae_status ae_suite_select_scenario(ae_suite* suite, int scenario_id) {
    if (!suite) {
        return set_error(AE_ERR_NULL_ARGUMENT, "suite handle is NULL");
    }
    if (scenario_id < 1 || scenario_id > 5) {
        return set_error(AE_ERR_INVALID_ARGUMENT, "scenario_id must be 1..5");
    }
    std::vector<ae::ScenarioConfig> kept;
    for (const auto& config : suite->configs) {
        if (config.scenario_id == scenario_id) {
            kept.push_back(config);
        }
    }
    if (kept.empty()) {
        return set_error(AE_ERR_INVALID_ARGUMENT,
                         "suite holds no configuration with the requested scenario_id");
    }
    suite->configs = std::move(kept);
    return AE_OK;
}

ae_status ae_suite_set_seed(ae_suite* suite, uint64_t seed) {
    if (!suite) {
        return set_error(AE_ERR_NULL_ARGUMENT, "suite handle is NULL");
    }
    for (auto& config : suite->configs) {
        config.seed = seed;
    }
    return AE_OK;
}

ae_status ae_suite_set_horizon(ae_suite* suite, int horizon) {
    if (!suite) {
        return set_error(AE_ERR_NULL_ARGUMENT, "suite handle is NULL");
    }
    if (horizon < 1) {
        return set_error(AE_ERR_INVALID_ARGUMENT, "horizon must be at least 1");
    }
    for (auto& config : suite->configs) {
        config.horizon = horizon;
    }
    return AE_OK;
}

ae_status ae_suite_set_policy_precision(ae_suite* suite, double gamma) {
    if (!suite) {
        return set_error(AE_ERR_NULL_ARGUMENT, "suite handle is NULL");
    }
    if (!(gamma > 0.0)) {
        return set_error(AE_ERR_INVALID_ARGUMENT, "policy precision must be positive");
    }
    for (auto& config : suite->configs) {
        config.policy_precision = gamma;
    }
    return AE_OK;
}

ae_status ae_suite_set_max_steps(ae_suite* suite, int max_steps) {
    if (!suite) {
        return set_error(AE_ERR_NULL_ARGUMENT, "suite handle is NULL");
    }
    if (max_steps < 1) {
        return set_error(AE_ERR_INVALID_ARGUMENT, "max_steps must be at least 1");
    }
    for (auto& config : suite->configs) {
        config.max_steps = max_steps;
    }
    return AE_OK;
}

ae_status ae_suite_force_argmax(ae_suite* suite, int enabled) {
    if (!suite) {
        return set_error(AE_ERR_NULL_ARGUMENT, "suite handle is NULL");
    }
    suite->options.selection =
        enabled ? ae::SelectionMode::Argmax : ae::SelectionMode::Sample;
    return AE_OK;
}

size_t ae_suite_count(const ae_suite* suite) { return suite ? suite->configs.size() : 0; }

ae_status ae_suite_resolved_json(const ae_suite* suite, char** out) {
    if (!suite || !out) {
        return set_error(AE_ERR_NULL_ARGUMENT, "suite and out must be non-NULL");
    }
    try {
        ae_status status = AE_OK;
        char* text = dup_string(ae::resolved_config_json(suite->configs), &status);
        if (status == AE_OK) *out = text;
        return status;
    } catch (...) {
        return map_exception();
    }
}

ae_status ae_suite_run(const ae_suite* suite, ae_result** out) {
    if (!suite || !out) {
        return set_error(AE_ERR_NULL_ARGUMENT, "suite and out must be non-NULL");
    }
    if (suite->configs.empty()) {
        return set_error(AE_ERR_INVALID_ARGUMENT, "suite holds no configurations");
    }
    auto result = new ae_result;
    result->episodes.resize(suite->configs.size());
    for (size_t i = 0; i < suite->configs.size(); ++i) {
        auto& episode = result->episodes[i];
        try {
            episode.log = ae::run_scenario(suite->configs[i], suite->options);
            episode.status = AE_OK;
        } catch (...) {
            episode.status = map_exception();
            episode.error = t_last_error;
        }
    }
    *out = result;
    return AE_OK;
}

size_t ae_result_count(const ae_result* result) {
    return result ? result->episodes.size() : 0;
}

ae_status ae_result_status(const ae_result* result, size_t i) {
    const ae_status rc = check_episode(result, i);
    if (rc != AE_OK) return rc;
    return result->episodes[i].status;
}

ae_status ae_result_error(const ae_result* result, size_t i, char** out) {
    ae_status rc = check_episode(result, i);
    if (rc != AE_OK) return rc;
    if (!out) {
        return set_error(AE_ERR_NULL_ARGUMENT, "out must be non-NULL");
    }
    char* text = dup_string(result->episodes[i].error, &rc);
    if (rc == AE_OK) *out = text;
    return rc;
}

ae_status ae_result_scenario_id(const ae_result* result, size_t i, int* out) {
    const ae_status rc = require_log(result, i);
    if (rc != AE_OK) return rc;
    if (!out) {
        return set_error(AE_ERR_NULL_ARGUMENT, "out must be non-NULL");
    }
    *out = result->episodes[i].log->config.scenario_id;
    return AE_OK;
}

ae_status ae_result_step_count(const ae_result* result, size_t i, size_t* out) {
    const ae_status rc = require_log(result, i);
    if (rc != AE_OK) return rc;
    if (!out) {
        return set_error(AE_ERR_NULL_ARGUMENT, "out must be non-NULL");
    }
    *out = result->episodes[i].log->steps.size();
    return AE_OK;
}

ae_status ae_result_found(const ae_result* result, size_t i, int* out) {
    const ae_status rc = require_log(result, i);
    if (rc != AE_OK) return rc;
    if (!out) {
        return set_error(AE_ERR_NULL_ARGUMENT, "out must be non-NULL");
    }
    *out = result->episodes[i].log->outcome == ae::Outcome::Found ? 1 : 0;
    return AE_OK;
}

ae_status ae_result_csv(const ae_result* result, size_t i, char** out) {
    ae_status rc = require_log(result, i);
    if (rc != AE_OK) return rc;
    if (!out) {
        return set_error(AE_ERR_NULL_ARGUMENT, "out must be non-NULL");
    }
    try {
        char* text = dup_string(ae::csv_string(*result->episodes[i].log), &rc);
        if (rc == AE_OK) *out = text;
        return rc;
    } catch (...) {
        return map_exception();
    }
}

ae_status ae_result_json(const ae_result* result, size_t i, char** out) {
    ae_status rc = require_log(result, i);
    if (rc != AE_OK) return rc;
    if (!out) {
        return set_error(AE_ERR_NULL_ARGUMENT, "out must be non-NULL");
    }
    try {
        char* text = dup_string(ae::json_string(*result->episodes[i].log), &rc);
        if (rc == AE_OK) *out = text;
        return rc;
    } catch (...) {
        return map_exception();
    }
}

ae_status ae_result_svg(const ae_result* result, size_t i, char** out) {
    ae_status rc = require_log(result, i);
    if (rc != AE_OK) return rc;
    if (!out) {
        return set_error(AE_ERR_NULL_ARGUMENT, "out must be non-NULL");
    }
    try {
        char* text = dup_string(ae::svg_string(*result->episodes[i].log), &rc);
        if (rc == AE_OK) *out = text;
        return rc;
    } catch (...) {
        return map_exception();
    }
}

ae_status ae_result_write_csv(const ae_result* result, size_t i, const char* path) {
    const ae_status rc = require_log(result, i);
    if (rc != AE_OK) return rc;
    if (!path) {
        return set_error(AE_ERR_NULL_ARGUMENT, "path must be non-NULL");
    }
    try {
        ae::write_csv(*result->episodes[i].log, path);
        return AE_OK;
    } catch (...) {
        return map_exception();
    }
}

ae_status ae_result_write_json(const ae_result* result, size_t i, const char* path) {
    const ae_status rc = require_log(result, i);
    if (rc != AE_OK) return rc;
    if (!path) {
        return set_error(AE_ERR_NULL_ARGUMENT, "path must be non-NULL");
    }
    try {
        ae::write_json(*result->episodes[i].log, path);
        return AE_OK;
    } catch (...) {
        return map_exception();
    }
}

ae_status ae_result_write_svg(const ae_result* result, size_t i, const char* path) {
    const ae_status rc = require_log(result, i);
    if (rc != AE_OK) return rc;
    if (!path) {
        return set_error(AE_ERR_NULL_ARGUMENT, "path must be non-NULL");
    }
    try {
        ae::write_svg(*result->episodes[i].log, path);
        return AE_OK;
    } catch (...) {
        return map_exception();
    }
}

void ae_string_free(char* s) { std::free(s); }

void ae_suite_free(ae_suite* suite) { delete suite; }

void ae_result_free(ae_result* result) { delete result; }

const char* ae_status_name(ae_status status) {
    switch (status) {
    case AE_OK: return "AE_OK";
    case AE_ERR_NULL_ARGUMENT: return "AE_ERR_NULL_ARGUMENT";
    case AE_ERR_INVALID_ARGUMENT: return "AE_ERR_INVALID_ARGUMENT";
    case AE_ERR_PARSE: return "AE_ERR_PARSE";
    case AE_ERR_VALIDATION: return "AE_ERR_VALIDATION";
    case AE_ERR_IMPOSSIBLE_OBSERVATION: return "AE_ERR_IMPOSSIBLE_OBSERVATION";
    case AE_ERR_IO: return "AE_ERR_IO";
    case AE_ERR_INDEX: return "AE_ERR_INDEX";
    case AE_ERR_RUNTIME: return "AE_ERR_RUNTIME";
    }
    return "AE_UNKNOWN";
}

const char* ae_last_error(void) { return t_last_error.c_str(); }

} // extern "C"
