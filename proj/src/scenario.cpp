#include "affect_engine/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "affect_engine/errors.hpp"

namespace affect_engine {

namespace {

/// Preference over {visible, invisible}; fixed rather than configurable so
/// the valence scale of every scenario is comparable.
constexpr double kPreferVisible = 0.9;

constexpr std::uint64_t kSelectionSeedSalt = 0x9e3779b97f4a7c15ULL;

void require(bool condition, const std::string& message) {
    if (!condition) {
        throw ConfigError(message);
    }
}

Graph graph_from_spec(const GraphSpec& spec) {
    try {
        return Graph::from_edges(spec.num_locations, spec.edges);
    } catch (const InvalidInputError& e) {
        throw ConfigError(e.what());
    }
}

} // namespace

const char* to_string(PriorKind kind) {
    switch (kind) {
    case PriorKind::Uniform: return "uniform";
    case PriorKind::Correct: return "correct";
    case PriorKind::Incorrect: return "incorrect";
    case PriorKind::MaybeHere: return "maybe_here";
    case PriorKind::DefinitelyHere: return "definitely_here";
    }
    return "uniform";
}

PriorKind prior_kind_from_string(const std::string& name) {
    if (name == "uniform") return PriorKind::Uniform;
    if (name == "correct") return PriorKind::Correct;
    if (name == "incorrect") return PriorKind::Incorrect;
    if (name == "maybe_here") return PriorKind::MaybeHere;
    if (name == "definitely_here") return PriorKind::DefinitelyHere;
    throw ParseError("unknown prior_kind \"" + name + "\"");
}

const char* to_string(Outcome outcome) {
    return outcome == Outcome::Found ? "found" : "exhausted";
}

GraphSpec default_graph() {
    GraphSpec spec;
    spec.num_locations = 8;
    spec.edges = {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {3, 4}, {4, 5}, {4, 6}, {5, 7}, {6, 7}};
    spec.start = 0;
    return spec;
}

void validate_config(const ScenarioConfig& config) {
    require(config.scenario_id >= 0 && config.scenario_id <= 5,
            "scenario_id must be 0 (custom) or 1..5");
    const Graph graph = graph_from_spec(config.graph);
    require(graph.connected(), "graph must be connected");
    require(config.graph.start == 0, "start location must be 0");

    const int n = config.graph.num_locations;
    if (config.scenario_id >= 1 && config.scenario_id <= 3) {
        require(config.object_present, "scenarios 1..3 require the object to be present");
    }
    if (config.scenario_id == 4 || config.scenario_id == 5) {
        require(!config.object_present, "scenarios 4..5 require the object to be absent");
    }
    switch (config.scenario_id) {
    case 1: require(config.prior_kind == PriorKind::Uniform,
                    "scenario 1 requires prior_kind uniform"); break;
    case 2: require(config.prior_kind == PriorKind::Correct,
                    "scenario 2 requires prior_kind correct"); break;
    case 3: require(config.prior_kind == PriorKind::Incorrect,
                    "scenario 3 requires prior_kind incorrect"); break;
    case 4: require(config.prior_kind == PriorKind::MaybeHere,
                    "scenario 4 requires prior_kind maybe_here"); break;
    case 5: require(config.prior_kind == PriorKind::DefinitelyHere,
                    "scenario 5 requires prior_kind definitely_here"); break;
    default: break;
    }

    if (config.object_present) {
        require(config.object_true_location.has_value(),
                "object_true_location is required when the object is present");
        require(*config.object_true_location >= 0 && *config.object_true_location < n,
                "object_true_location must index a graph location");
    } else {
        require(!config.object_true_location.has_value(),
                "object_true_location must be omitted when the object is absent");
    }

    if (config.prior_kind == PriorKind::Correct || config.prior_kind == PriorKind::Incorrect) {
        require(config.object_present,
                "correct/incorrect priors require the object to be present");
        require(n >= 2, "correct/incorrect priors need at least two locations");
    }
    if (config.prior_kind == PriorKind::DefinitelyHere) {
        require(!config.object_present,
                "definitely_here pairs a location-only prior with an absent object");
    }

    require(config.prior_concentration > 0.0 && config.prior_concentration < 1.0,
            "prior_concentration must lie in (0, 1)");
    require(config.p > 0.0 && config.p <= 1.0, "p must lie in (0, 1]");
    require(config.horizon >= 1, "horizon must be at least 1");
    require(std::pow(static_cast<double>(n), config.horizon) <= static_cast<double>(1 << 18),
            "locations^horizon must not exceed 2^18 policies");
    require(std::isfinite(config.policy_precision) && config.policy_precision > 0.0,
            "policy_precision must be positive and finite");
    require(config.max_steps >= 1, "max_steps must be at least 1");
}

std::vector<ScenarioConfig> builtin_scenarios() {
    std::vector<ScenarioConfig> configs(5);
    for (int i = 0; i < 5; ++i) {
        ScenarioConfig& config = configs[static_cast<std::size_t>(i)];
        config.scenario_id = i + 1;
        config.graph = default_graph();
    }
    configs[0].prior_kind = PriorKind::Uniform;
    configs[0].object_true_location = 2;
    configs[1].prior_kind = PriorKind::Correct;
    configs[1].object_true_location = 2;
    configs[2].prior_kind = PriorKind::Incorrect;
    configs[2].object_true_location = 2;
    configs[3].prior_kind = PriorKind::MaybeHere;
    configs[3].object_present = false;
    configs[4].prior_kind = PriorKind::DefinitelyHere;
    configs[4].object_present = false;
    return configs;
}

int incorrect_prior_location(const Graph& graph, int start, int true_location) {
    if (start < 0 || start >= graph.num_locations || true_location < 0 ||
        true_location >= graph.num_locations) {
        throw InvalidInputError("incorrect-prior endpoints out of range");
    }
    const std::vector<int> dist = graph.distances_from(start);
    // Prefer the nearest node at least two hops out: far enough that the walk
    // toward it keeps the prior intact, near enough that the prior stays
    // relevant when the agent arrives.
    int best = -1;
    for (int w = 0; w < graph.num_locations; ++w) {
        if (w == true_location || dist[static_cast<std::size_t>(w)] < 2) continue;
        if (best < 0 || dist[static_cast<std::size_t>(w)] < dist[static_cast<std::size_t>(best)]) {
            best = w;
        }
    }
    if (best >= 0) return best;
    // Fallback for graphs with no such node: the farthest wrong location.
    for (int w = 0; w < graph.num_locations; ++w) {
        if (w == true_location) continue;
        if (best < 0 || dist[static_cast<std::size_t>(w)] > dist[static_cast<std::size_t>(best)]) {
            best = w;
        }
    }
    if (best < 0) {
        throw InvalidInputError("no location available for an incorrect prior");
    }
    return best;
}

AffectConfig affect_config_for(const GenerativeModel& model) {
    AffectConfig config;
    double lo = model.preference_visibility[0];
    double hi = lo;
    for (std::size_t o = 1; o < model.preference_visibility.size(); ++o) {
        lo = std::min(lo, model.preference_visibility[o]);
        hi = std::max(hi, model.preference_visibility[o]);
    }
    const double scale = std::abs(safe_log(lo) - safe_log(hi));
    // A flat preference makes every valence zero; any positive scale keeps
    // the normalization well defined.
    config.valence_scale = scale > 0.0 ? scale : 1.0;
    config.max_entropy = std::log(static_cast<double>(model.object_states));
    config.neutral_radius = 0.1;
    return config;
}

BuiltScenario build_scenario(const ScenarioConfig& config) {
    validate_config(config);
    Graph graph = graph_from_spec(config.graph);
    const int n = config.graph.num_locations;
    const bool extra_state = config.prior_kind == PriorKind::MaybeHere;
    const int m = extra_state ? n + 1 : n;

    GenerativeModel model;
    model.num_locations = n;
    model.object_states = m;
    model.likelihood_location = Matrix::identity(static_cast<std::size_t>(n));
    model.likelihood_visibility =
        Tensor3(2, static_cast<std::size_t>(n), static_cast<std::size_t>(m));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j) {
            const double visible = (i == j) ? config.p : 0.0;
            model.likelihood_visibility.at(0, static_cast<std::size_t>(i),
                                           static_cast<std::size_t>(j)) = visible;
            model.likelihood_visibility.at(1, static_cast<std::size_t>(i),
                                           static_cast<std::size_t>(j)) = 1.0 - visible;
        }
    }
    model.transition_agent =
        Tensor3(static_cast<std::size_t>(n), static_cast<std::size_t>(n),
                static_cast<std::size_t>(n));
    for (int cur = 0; cur < n; ++cur) {
        for (int a = 0; a < n; ++a) {
            const int next = graph.move(cur, a);
            model.transition_agent.at(static_cast<std::size_t>(next),
                                      static_cast<std::size_t>(cur),
                                      static_cast<std::size_t>(a)) = 1.0;
        }
    }
    model.transition_object = Matrix::identity(static_cast<std::size_t>(m));
    model.preference_visibility = Categorical({kPreferVisible, 1.0 - kPreferVisible});
    model.prior_agent = Categorical::delta(static_cast<std::size_t>(n),
                                           static_cast<std::size_t>(config.graph.start));

    switch (config.prior_kind) {
    case PriorKind::Uniform:
    case PriorKind::DefinitelyHere:
    case PriorKind::MaybeHere: // m already includes the "not here" state here
        model.prior_object = Categorical::uniform(static_cast<std::size_t>(m));
        break;
    case PriorKind::Correct:
    case PriorKind::Incorrect: {
        const int peak = config.prior_kind == PriorKind::Correct
                             ? *config.object_true_location
                             : incorrect_prior_location(graph, config.graph.start,
                                                        *config.object_true_location);
        std::vector<double> probs(static_cast<std::size_t>(m),
                                  (1.0 - config.prior_concentration) / (n - 1));
        probs[static_cast<std::size_t>(peak)] = config.prior_concentration;
        model.prior_object = Categorical(std::move(probs));
        break;
    }
    }

    model.horizon = config.horizon;
    model.policy_precision = config.policy_precision;
    validate_model(model);

    GraphWorld world(std::move(graph),
                     config.object_present ? config.object_true_location : std::nullopt,
                     config.p, config.graph.start);
    AffectConfig affect = affect_config_for(model);
    return BuiltScenario{std::move(model), std::move(world), affect};
}

TrajectoryLog run_episode(const GenerativeModel& model, GraphWorld& world,
                          const ScenarioConfig& config, const RunOptions& options) {
    if (model.num_locations != world.graph().num_locations) {
        throw InvalidInputError("model and world location counts differ");
    }
    const std::vector<Policy> policies = enumerate_policies(model);
    const AffectConfig affect_cfg = affect_config_for(model);

    Rng observation_rng(config.seed);
    Rng selection_rng(config.seed ^ kSelectionSeedSalt);

    TrajectoryLog log;
    log.config = config;
    log.outcome = Outcome::Exhausted;

    BeliefState belief{model.prior_agent, model.prior_object};
    for (int t = 0; t < config.max_steps; ++t) {
        std::vector<PolicyEvaluation> evaluations;
        evaluations.reserve(policies.size());
        for (const Policy& policy : policies) {
            evaluations.push_back(expected_free_energy(model, belief, policy));
        }
        const Categorical posterior_over_policies =
            policy_posterior(evaluations, model.policy_precision);
        const std::size_t chosen =
            select_policy_index(posterior_over_policies, options.selection, selection_rng);
        const int action = policies[chosen].actions.front();

        // The expected utility is fixed before the observation arrives: the
        // previous belief rolled through the executed action.
        const BeliefState predicted = predict(model, belief, action);
        const double eu = expected_utility(predictive_observation(model, predicted),
                                           model.preference_visibility);

        world.step(action);
        const Observation obs = world.observe(observation_rng);
        const double u = utility(obs.visibility, model.preference_visibility);
        const bool floored =
            model.preference_visibility[static_cast<std::size_t>(obs.visibility)] <= kLogFloor;

        const BeliefState posterior = update_beliefs(model, predicted, obs);

        TrajectoryStep step;
        step.t = t;
        step.agent_location = world.agent_location();
        step.action = action;
        step.observation = obs;
        step.object_belief = posterior.object.probs();
        step.free_energy = variational_free_energy(model, predicted, posterior, obs);
        step.selected_policy_g = evaluations[chosen].efe;
        step.affect = make_affect_sample(u, eu, arousal(posterior), affect_cfg, floored);
        log.steps.push_back(std::move(step));

        belief = posterior;
        if (config.stop_on_found && obs.visibility == Visibility::Visible) {
            log.outcome = Outcome::Found;
            break;
        }
    }
    return log;
}

TrajectoryLog run_scenario(const ScenarioConfig& config, const RunOptions& options) {
    BuiltScenario built = build_scenario(config);
    return run_episode(built.model, built.world, config, options);
}

std::vector<EpisodeResult> run_suite(const std::vector<ScenarioConfig>& configs,
                                     const RunOptions& options) {
    if (configs.empty()) {
        throw InvalidInputError("run_suite needs at least one configuration");
    }
    std::vector<EpisodeResult> results(configs.size());
    for (std::size_t i = 0; i < configs.size(); ++i) {
        try {
            results[i].log = run_scenario(configs[i], options);
        } catch (const Error& e) {
            results[i].error = e.what();
        }
    }
    return results;
}

} // namespace affect_engine
