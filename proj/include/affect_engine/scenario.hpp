#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "affect_engine/affect.hpp"
#include "affect_engine/inference.hpp"
#include "affect_engine/model.hpp"
#include "affect_engine/world.hpp"

namespace affect_engine {

/// How the initial object-state prior is shaped.
enum class PriorKind {
    Uniform,        ///< Equal mass on every location.
    Correct,        ///< Concentrated on the true object location.
    Incorrect,      ///< Concentrated on a wrong location.
    MaybeHere,      ///< Uniform over locations plus a "not here" state.
    DefinitelyHere, ///< Uniform over locations only (object may be absent).
};

const char* to_string(PriorKind kind);
PriorKind prior_kind_from_string(const std::string& name);

/// Location graph as configured (edge list form).
struct GraphSpec {
    int num_locations = 8;
    std::vector<std::pair<int, int>> edges;
    int start = 0;
};

/// The built-in eight-location graph used by the numbered scenarios.
GraphSpec default_graph();

/// Full description of one episode.
struct ScenarioConfig {
    int scenario_id = 0; ///< 1..5 built-in, 0 custom.
    GraphSpec graph = default_graph();
    bool object_present = true;
    std::optional<int> object_true_location;
    PriorKind prior_kind = PriorKind::Uniform;
    double prior_concentration = 0.9;
    double p = 0.95; ///< Visibility probability at the object's location.
    int horizon = 3;
    double policy_precision = 1.0;
    int max_steps = 40;
    std::uint64_t seed = 1;
    bool stop_on_found = true;
};

/// Episode-level knobs that are not part of the persisted configuration.
struct RunOptions {
    SelectionMode selection = SelectionMode::Argmax;
};

enum class Outcome { Found, Exhausted };

const char* to_string(Outcome outcome);

/// One record of the per-step loop.
struct TrajectoryStep {
    int t = 0;
    int agent_location = 0; ///< Location after the move (where the observation happened).
    int action = 0;
    Observation observation;
    std::vector<double> object_belief; ///< Posterior object-state marginal.
    FreeEnergyReport free_energy;
    double selected_policy_g = 0.0;
    AffectSample affect;
};

/// A full episode: the resolved configuration, the per-step records and how
/// the episode ended.
struct TrajectoryLog {
    ScenarioConfig config;
    Outcome outcome = Outcome::Exhausted;
    std::vector<TrajectoryStep> steps;
};

/// One entry of a suite run: either a log or the error that prevented it.
struct EpisodeResult {
    std::optional<TrajectoryLog> log;
    std::string error; ///< Empty on success.
};

/// Checks every documented invariant of a configuration; throws ConfigError
/// naming the violated one.
void validate_config(const ScenarioConfig& config);

/// The five built-in scenario configurations.
std::vector<ScenarioConfig> builtin_scenarios();

/// The wrong location favored by an Incorrect prior: the nearest node at
/// least two hops from the start (excluding the true location), so the walk
/// toward it stays calm while the prior stays sharp on arrival; falls back to
/// the farthest node when no such node exists. Ties break to the lowest
/// index.
int incorrect_prior_location(const Graph& graph, int start, int true_location);

/// Everything needed to run one episode.
struct BuiltScenario {
    GenerativeModel model;
    GraphWorld world;
    AffectConfig affect;
};

/// Instantiates the generative model and world for a validated
/// configuration.
BuiltScenario build_scenario(const ScenarioConfig& config);

/// Runs one episode: plan (expected free energy over all policies), act,
/// observe, update, and score affect each step, stopping early on a visible
/// observation when configured to.
TrajectoryLog run_episode(const GenerativeModel& model, GraphWorld& world,
                          const ScenarioConfig& config, const RunOptions& options = {});

/// Convenience wrapper: build then run.
TrajectoryLog run_scenario(const ScenarioConfig& config, const RunOptions& options = {});

/// Runs every configuration, collecting per-episode failures instead of
/// aborting the remainder. Results keep the input order. Throws
/// InvalidInputError on an empty list.
std::vector<EpisodeResult> run_suite(const std::vector<ScenarioConfig>& configs,
                                     const RunOptions& options = {});

/// Normalization constants implied by a model (preference spread and state
/// count).
AffectConfig affect_config_for(const GenerativeModel& model);

} // namespace affect_engine
