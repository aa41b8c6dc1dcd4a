#include "affect_engine/inference.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "affect_engine/errors.hpp"

namespace affect_engine {

namespace {

void check_action(const GenerativeModel& model, int action) {
    if (action < 0 || action >= model.num_locations) {
        std::ostringstream msg;
        msg << "action " << action << " out of range [0, " << model.num_locations << ")";
        throw InvalidInputError(msg.str());
    }
}

void check_belief(const GenerativeModel& model, const BeliefState& belief) {
    if (belief.agent.size() != static_cast<std::size_t>(model.num_locations) ||
        belief.object.size() != static_cast<std::size_t>(model.object_states)) {
        throw InvalidInputError("belief dimensions do not match the model");
    }
}

/// Unnormalized exact joint posterior weights w(i, j) for an observation,
/// i.e. P(o | s1=i, s2=j) * q(i) * q(j). Also returns the total mass (the
/// observation's predictive probability).
double joint_posterior_weights(const GenerativeModel& model, const BeliefState& belief,
                               const Observation& obs, Matrix* weights) {
    const std::size_t n = static_cast<std::size_t>(model.num_locations);
    const std::size_t m = static_cast<std::size_t>(model.object_states);
    const std::size_t k = static_cast<std::size_t>(obs.location);
    const std::size_t o = static_cast<std::size_t>(obs.visibility);
    *weights = Matrix(n, m, 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double loc_lik = model.likelihood_location.at(k, i) * belief.agent[i];
        if (loc_lik <= 0.0) continue;
        for (std::size_t j = 0; j < m; ++j) {
            const double w = loc_lik * model.likelihood_visibility.at(o, i, j) * belief.object[j];
            weights->at(i, j) = w;
            total += w;
        }
    }
    return total;
}

[[noreturn]] void throw_impossible(const Observation& obs) {
    std::ostringstream msg;
    msg << "observation (location " << obs.location << ", "
        << (obs.visibility == Visibility::Visible ? "visible" : "invisible")
        << ") has zero probability under the current belief";
    throw ImpossibleObservationError(msg.str());
}

} // namespace

Categorical softmax(const std::vector<double>& values, double precision) {
    if (values.empty()) {
        throw InvalidInputError("softmax requires at least one value");
    }
    if (!std::isfinite(precision) || precision < 0.0) {
        throw InvalidInputError("softmax precision must be finite and non-negative");
    }
    double max_value = values.front();
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw InvalidInputError("softmax values must be finite");
        }
        max_value = std::max(max_value, v);
    }
    std::vector<double> weights(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        weights[i] = std::exp(precision * (values[i] - max_value));
    }
    return Categorical::normalized(std::move(weights));
}

BeliefState predict(const GenerativeModel& model, const BeliefState& belief, int action) {
    check_action(model, action);
    check_belief(model, belief);
    const std::size_t n = static_cast<std::size_t>(model.num_locations);
    const std::size_t m = static_cast<std::size_t>(model.object_states);
    const std::size_t a = static_cast<std::size_t>(action);

    std::vector<double> agent_next(n, 0.0);
    for (std::size_t next = 0; next < n; ++next) {
        double mass = 0.0;
        for (std::size_t cur = 0; cur < n; ++cur) {
            mass += model.transition_agent.at(next, cur, a) * belief.agent[cur];
        }
        agent_next[next] = mass;
    }
    std::vector<double> object_next(m, 0.0);
    for (std::size_t next = 0; next < m; ++next) {
        double mass = 0.0;
        for (std::size_t cur = 0; cur < m; ++cur) {
            mass += model.transition_object.at(next, cur) * belief.object[cur];
        }
        object_next[next] = mass;
    }
    return BeliefState{Categorical::normalized(std::move(agent_next)),
                       Categorical::normalized(std::move(object_next))};
}

Categorical predictive_observation(const GenerativeModel& model, const BeliefState& belief) {
    check_belief(model, belief);
    const std::size_t n = static_cast<std::size_t>(model.num_locations);
    const std::size_t m = static_cast<std::size_t>(model.object_states);
    std::vector<double> outcome(2, 0.0);
    for (std::size_t o = 0; o < 2; ++o) {
        double mass = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (belief.agent[i] <= 0.0) continue;
            double inner = 0.0;
            for (std::size_t j = 0; j < m; ++j) {
                inner += model.likelihood_visibility.at(o, i, j) * belief.object[j];
            }
            mass += belief.agent[i] * inner;
        }
        outcome[o] = mass;
    }
    return Categorical::normalized(std::move(outcome));
}

BeliefState update_beliefs(const GenerativeModel& model, const BeliefState& predicted,
                           const Observation& obs) {
    check_belief(model, predicted);
    if (obs.location < 0 || obs.location >= model.num_locations) {
        throw InvalidInputError("observed location out of range");
    }
    Matrix weights;
    const double total = joint_posterior_weights(model, predicted, obs, &weights);
    if (total <= 0.0) {
        throw_impossible(obs);
    }
    const std::size_t n = weights.rows;
    const std::size_t m = weights.cols;
    std::vector<double> agent(n, 0.0);
    std::vector<double> object(m, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const double w = weights.at(i, j);
            agent[i] += w;
            object[j] += w;
        }
    }
    return BeliefState{Categorical::normalized(std::move(agent)),
                       Categorical::normalized(std::move(object))};
}

FreeEnergyReport variational_free_energy(const GenerativeModel& model, const BeliefState& prior,
                                         const BeliefState& posterior, const Observation& obs) {
    check_belief(model, prior);
    check_belief(model, posterior);
    Matrix weights;
    const double evidence = joint_posterior_weights(model, prior, obs, &weights);
    if (evidence <= 0.0) {
        throw_impossible(obs);
    }

    const std::size_t n = static_cast<std::size_t>(model.num_locations);
    const std::size_t m = static_cast<std::size_t>(model.object_states);
    const std::size_t k = static_cast<std::size_t>(obs.location);
    const std::size_t o = static_cast<std::size_t>(obs.visibility);

    FreeEnergyReport report;
    report.entropy = posterior.agent.entropy() + posterior.object.entropy();
    report.complexity = kl_divergence(posterior.agent, prior.agent) +
                        kl_divergence(posterior.object, prior.object);

    double accuracy = 0.0;
    double kl_exact = 0.0;
    double expected_log_prior = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (posterior.agent[i] <= 0.0) continue;
        for (std::size_t j = 0; j < m; ++j) {
            const double q = posterior.agent[i] * posterior.object[j];
            if (q <= 0.0) continue;
            const double log_lik = safe_log(model.likelihood_location.at(k, i)) +
                                   safe_log(model.likelihood_visibility.at(o, i, j));
            accuracy += q * log_lik;
            expected_log_prior += q * (safe_log(prior.agent[i]) + safe_log(prior.object[j]));
            kl_exact += q * (std::log(q) - safe_log(weights.at(i, j) / evidence));
        }
    }
    report.accuracy = accuracy;
    report.kl_posterior_form = kl_exact;
    report.energy = -accuracy - expected_log_prior;
    report.total = report.complexity - report.accuracy;
    return report;
}

std::vector<Policy> enumerate_policies(const GenerativeModel& model) {
    if (model.horizon < 1) {
        throw InvalidInputError("policy horizon must be at least 1");
    }
    const int n = model.num_locations;
    double count_estimate = std::pow(static_cast<double>(n), model.horizon);
    if (count_estimate > static_cast<double>(1 << 18)) {
        std::ostringstream msg;
        msg << "policy space " << n << "^" << model.horizon << " exceeds the supported size";
        throw InvalidInputError(msg.str());
    }
    const std::size_t count = static_cast<std::size_t>(count_estimate + 0.5);
    std::vector<Policy> policies(count);
    for (std::size_t p = 0; p < count; ++p) {
        std::vector<int> actions(static_cast<std::size_t>(model.horizon));
        std::size_t rem = p;
        for (int step = model.horizon - 1; step >= 0; --step) {
            actions[static_cast<std::size_t>(step)] = static_cast<int>(rem % n);
            rem /= static_cast<std::size_t>(n);
        }
        policies[p].actions = std::move(actions);
    }
    return policies;
}

PolicyEvaluation expected_free_energy(const GenerativeModel& model, const BeliefState& belief,
                                      const Policy& policy) {
    check_belief(model, belief);
    if (policy.actions.empty()) {
        throw InvalidInputError("policy must contain at least one action");
    }

    // One weighted belief branch per distinct observation history.
    struct PlanBranch {
        double weight;
        BeliefState belief;
    };

    const std::size_t n = static_cast<std::size_t>(model.num_locations);
    const std::size_t m = static_cast<std::size_t>(model.object_states);

    PolicyEvaluation eval;
    eval.policy = policy;
    std::vector<PlanBranch> branches;
    branches.push_back({1.0, belief});

    for (int action : policy.actions) {
        check_action(model, action);
        double step_info_gain = 0.0;
        double step_utility = 0.0;
        std::vector<PlanBranch> next_branches;

        for (const PlanBranch& branch : branches) {
            const BeliefState pred = predict(model, branch.belief, action);

            // Expected utility of the visibility outcome under this branch.
            const Categorical pvis = predictive_observation(model, pred);
            for (std::size_t o = 0; o < pvis.size(); ++o) {
                step_utility +=
                    branch.weight * pvis[o] * safe_log(model.preference_visibility[o]);
            }

            // Split on the joint (location, visibility) outcome; each outcome
            // contributes its Bayes-updated branch and the object-factor KL.
            for (std::size_t k = 0; k < n; ++k) {
                for (std::size_t o = 0; o < 2; ++o) {
                    Observation obs{static_cast<int>(k), static_cast<Visibility>(o)};
                    Matrix weights;
                    const double mass = joint_posterior_weights(model, pred, obs, &weights);
                    if (mass <= 0.0) continue; // zero-probability outcome

                    std::vector<double> agent(n, 0.0);
                    std::vector<double> object(m, 0.0);
                    for (std::size_t i = 0; i < n; ++i) {
                        for (std::size_t j = 0; j < m; ++j) {
                            agent[i] += weights.at(i, j);
                            object[j] += weights.at(i, j);
                        }
                    }
                    BeliefState post{Categorical::normalized(std::move(agent)),
                                     Categorical::normalized(std::move(object))};
                    step_info_gain +=
                        branch.weight * mass * kl_divergence(post.object, pred.object);
                    next_branches.push_back({branch.weight * mass, std::move(post)});
                }
            }
        }

        step_info_gain = std::max(step_info_gain, 0.0);
        eval.per_step.push_back({step_info_gain, step_utility});
        eval.info_gain += step_info_gain;
        eval.expected_utility += step_utility;
        branches = std::move(next_branches);
    }

    eval.efe = -eval.info_gain - eval.expected_utility;
    return eval;
}

Categorical policy_posterior(const std::vector<PolicyEvaluation>& evaluations, double precision) {
    if (evaluations.empty()) {
        throw InvalidInputError("policy posterior requires at least one evaluation");
    }
    std::vector<double> values(evaluations.size());
    for (std::size_t i = 0; i < evaluations.size(); ++i) {
        values[i] = -evaluations[i].efe;
    }
    return softmax(values, precision);
}

std::size_t select_policy_index(const Categorical& posterior, SelectionMode mode, Rng& rng) {
    if (mode == SelectionMode::Argmax) {
        return posterior.argmax();
    }
    const double u = rng.uniform01();
    double cumulative = 0.0;
    for (std::size_t i = 0; i < posterior.size(); ++i) {
        cumulative += posterior[i];
        if (u < cumulative) {
            return i;
        }
    }
    return posterior.size() - 1;
}

int select_action(const Categorical& posterior, const std::vector<Policy>& policies,
                  SelectionMode mode, Rng& rng) {
    if (policies.size() != posterior.size() || policies.empty()) {
        throw InvalidInputError("policy posterior and policy list sizes differ");
    }
    const std::size_t index = select_policy_index(posterior, mode, rng);
    return policies[index].actions.front();
}

} // namespace affect_engine
