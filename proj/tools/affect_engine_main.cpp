// Command-line front end for the affect-engine shared library. Talks to the
// engine exclusively through the C interface in affect_engine.h.

#include <cerrno>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "affect_engine.h"

namespace {

struct RunFlags {
    std::string config_path;
    int scenario_id = 0; // 0 = all
    bool seed_given = false;
    std::uint64_t seed = 0;
    std::string out_dir = ".";
    std::string formats = "csv,json,svg";
    int horizon = 0;          // 0 = keep config value
    double precision = 0.0;   // 0 = keep config value
    int max_steps = 0;        // 0 = keep config value
    bool deterministic = false;
};

[[noreturn]] void die(const std::string& message) {
    std::cerr << "error: " << message << "\n";
    std::exit(1);
}

void die_status(const std::string& what, ae_status status) {
    std::ostringstream msg;
    msg << what << " (" << ae_status_name(status) << "): " << ae_last_error();
    die(msg.str());
}

std::vector<std::string> split_formats(const std::string& formats) {
    std::vector<std::string> out;
    std::stringstream stream(formats);
    std::string item;
    while (std::getline(stream, item, ',')) {
        if (item.empty()) continue;
        if (item != "csv" && item != "json" && item != "svg") {
            die("unknown format \"" + item + "\" (expected csv, json, svg)");
        }
        out.push_back(item);
    }
    if (out.empty()) {
        die("--format selected no outputs");
    }
    return out;
}

bool parse_seed(const char* text, std::uint64_t* out) {
    if (!text || !*text) return false;
    errno = 0;
    char* end = nullptr;
    const unsigned long long value = std::strtoull(text, &end, 10);
    if (errno != 0 || end == text || *end != '\0' || std::strchr(text, '-')) {
        return false;
    }
    *out = static_cast<std::uint64_t>(value);
    return true;
}

ae_suite* load_suite(const std::string& config_path) {
    ae_suite* suite = nullptr;
    ae_status status = AE_OK;
    if (config_path.empty()) {
        status = ae_suite_builtin(&suite);
    } else {
        status = ae_suite_load_file(config_path.c_str(), &suite);
    }
    if (status != AE_OK) {
        die_status("could not load configurations", status);
    }
    return suite;
}

int command_run(const RunFlags& flags) {
    ae_suite* suite = load_suite(flags.config_path);

    if (flags.scenario_id != 0) {
        const ae_status status = ae_suite_select_scenario(suite, flags.scenario_id);
        if (status != AE_OK) die_status("--scenario", status);
    }
    // Seed precedence: --seed flag, then AFFECT_ENGINE_SEED, then the config.
    if (flags.seed_given) {
        ae_suite_set_seed(suite, flags.seed);
    } else if (const char* env = std::getenv("AFFECT_ENGINE_SEED")) {
        std::uint64_t env_seed = 0;
        if (!parse_seed(env, &env_seed)) {
            die("AFFECT_ENGINE_SEED is not a non-negative integer");
        }
        ae_suite_set_seed(suite, env_seed);
    }
    if (flags.horizon != 0) {
        const ae_status status = ae_suite_set_horizon(suite, flags.horizon);
        if (status != AE_OK) die_status("--horizon", status);
    }
    if (flags.precision != 0.0) {
        const ae_status status = ae_suite_set_policy_precision(suite, flags.precision);
        if (status != AE_OK) die_status("--precision", status);
    }
    if (flags.max_steps != 0) {
        const ae_status status = ae_suite_set_max_steps(suite, flags.max_steps);
        if (status != AE_OK) die_status("--max-steps", status);
    }
    if (flags.deterministic) {
        ae_suite_force_argmax(suite, 1);
    }

    const std::vector<std::string> formats = split_formats(flags.formats);
    std::error_code ec;
    std::filesystem::create_directories(flags.out_dir, ec);
    if (ec) {
        die("could not create output directory " + flags.out_dir + ": " + ec.message());
    }

    // Resolved configuration is always written next to the outputs.
    {
        char* resolved = nullptr;
        ae_status status = ae_suite_resolved_json(suite, &resolved);
        if (status != AE_OK) die_status("resolving configuration", status);
        const auto path = std::filesystem::path(flags.out_dir) / "resolved_config.json";
        std::FILE* f = std::fopen(path.string().c_str(), "wb");
        if (!f || std::fwrite(resolved, 1, std::strlen(resolved), f) != std::strlen(resolved)) {
            if (f) std::fclose(f);
            ae_string_free(resolved);
            die("could not write " + path.string());
        }
        std::fclose(f);
        ae_string_free(resolved);
    }

    ae_result* result = nullptr;
    ae_status status = ae_suite_run(suite, &result);
    if (status != AE_OK) die_status("running the suite", status);

    bool all_ok = true;
    for (size_t i = 0; i < ae_result_count(result); ++i) {
        const ae_status episode_status = ae_result_status(result, i);
        if (episode_status != AE_OK) {
            char* error = nullptr;
            ae_result_error(result, i, &error);
            std::cerr << "episode " << (i + 1) << " failed ("
                      << ae_status_name(episode_status) << "): " << (error ? error : "")
                      << "\n";
            ae_string_free(error);
            all_ok = false;
            continue;
        }

        int scenario_id = 0;
        size_t steps = 0;
        int found = 0;
        ae_result_scenario_id(result, i, &scenario_id);
        ae_result_step_count(result, i, &steps);
        ae_result_found(result, i, &found);

        std::ostringstream base;
        base << "episode" << (i + 1) << "_scenario" << scenario_id;
        std::cout << "episode " << (i + 1) << " (scenario " << scenario_id << "): "
                  << (found ? "found" : "exhausted") << " after " << steps << " step"
                  << (steps == 1 ? "" : "s") << "\n";

        for (const std::string& format : formats) {
            const auto path =
                std::filesystem::path(flags.out_dir) / (base.str() + "." + format);
            ae_status write_status = AE_OK;
            if (format == "csv") {
                write_status = ae_result_write_csv(result, i, path.string().c_str());
            } else if (format == "json") {
                write_status = ae_result_write_json(result, i, path.string().c_str());
            } else {
                write_status = ae_result_write_svg(result, i, path.string().c_str());
            }
            if (write_status != AE_OK) {
                std::cerr << "episode " << (i + 1) << ": writing " << path.string()
                          << " failed (" << ae_status_name(write_status)
                          << "): " << ae_last_error() << "\n";
                all_ok = false;
            } else {
                std::cout << "  wrote " << path.string() << "\n";
            }
        }
    }

    ae_result_free(result);
    ae_suite_free(suite);
    return all_ok ? 0 : 1;
}

int command_scenarios() {
    ae_suite* suite = nullptr;
    ae_status status = ae_suite_builtin(&suite);
    if (status != AE_OK) die_status("building the scenario list", status);
    char* resolved = nullptr;
    status = ae_suite_resolved_json(suite, &resolved);
    if (status != AE_OK) {
        ae_suite_free(suite);
        die_status("serializing the scenario list", status);
    }
    std::cout << resolved;
    ae_string_free(resolved);
    ae_suite_free(suite);
    return 0;
}

int command_validate(const std::string& config_path) {
    ae_suite* suite = nullptr;
    const ae_status status = ae_suite_load_file(config_path.c_str(), &suite);
    if (status != AE_OK) {
        std::cerr << "invalid (" << ae_status_name(status) << "): " << ae_last_error()
                  << "\n";
        return 1;
    }
    std::cout << "ok: " << ae_suite_count(suite) << " configuration"
              << (ae_suite_count(suite) == 1 ? "" : "s") << " valid\n";
    ae_suite_free(suite);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Active-inference search agent with circumplex emotion tracking"};
    app.require_subcommand(1);

    RunFlags flags;
    CLI::App* run = app.add_subcommand("run", "Run scenarios and write trajectory outputs");
    run->add_option("--config", flags.config_path,
                    "Scenario configuration JSON (default: the five built-in scenarios)");
    run->add_option("--scenario", flags.scenario_id, "Keep only this scenario id (1..5)")
        ->check(CLI::Range(1, 5));
    auto* seed_opt = run->add_option("--seed", flags.seed, "Override every episode seed");
    run->add_option("--out-dir", flags.out_dir, "Output directory (default: .)");
    run->add_option("--format", flags.formats,
                    "Comma-separated outputs: csv,json,svg (default: all)");
    run->add_option("--horizon", flags.horizon, "Override the planning horizon")
        ->check(CLI::PositiveNumber);
    run->add_option("--precision", flags.precision, "Override the policy precision")
        ->check(CLI::PositiveNumber);
    run->add_option("--max-steps", flags.max_steps, "Override the step budget")
        ->check(CLI::PositiveNumber);
    run->add_flag("--deterministic", flags.deterministic,
                  "Force argmax action selection (the default selection mode)");

    CLI::App* scenarios =
        app.add_subcommand("scenarios", "Print the five built-in scenario configs as JSON");

    std::string validate_path;
    CLI::App* validate =
        app.add_subcommand("validate", "Check a configuration file without running it");
    validate->add_option("--config", validate_path, "Scenario configuration JSON")
        ->required();

    CLI11_PARSE(app, argc, argv);

    flags.seed_given = seed_opt->count() > 0;
    if (run->parsed()) {
        return command_run(flags);
    }
    if (scenarios->parsed()) {
        return command_scenarios();
    }
    if (validate->parsed()) {
        return command_validate(validate_path);
    }
    return 1;
}
