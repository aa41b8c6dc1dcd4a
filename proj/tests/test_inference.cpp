#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <utility>
#include <vector>

#include "affect_engine/errors.hpp"
#include "affect_engine/inference.hpp"
#include "affect_engine/world.hpp"
#include "oracles.hpp"

using namespace affect_engine;

namespace {

/// Hand-rolled search model over a small graph: identity location likelihood,
/// p on the visibility diagonal, deterministic graph moves.
GenerativeModel search_model(int n, const std::vector<std::pair<int, int>>& edges, double p,
                             bool extra_state, double prefer_visible = 0.9, int horizon = 1) {
    const Graph graph = Graph::from_edges(n, edges);
    const int m = extra_state ? n + 1 : n;
    GenerativeModel model;
    model.num_locations = n;
    model.object_states = m;
    model.likelihood_location = Matrix::identity(static_cast<std::size_t>(n));
    model.likelihood_visibility =
        Tensor3(2, static_cast<std::size_t>(n), static_cast<std::size_t>(m));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j) {
            const double visible = (i == j) ? p : 0.0;
            model.likelihood_visibility.at(0, i, j) = visible;
            model.likelihood_visibility.at(1, i, j) = 1.0 - visible;
        }
    }
    model.transition_agent =
        Tensor3(static_cast<std::size_t>(n), static_cast<std::size_t>(n),
                static_cast<std::size_t>(n));
    for (int cur = 0; cur < n; ++cur) {
        for (int a = 0; a < n; ++a) {
            model.transition_agent.at(static_cast<std::size_t>(graph.move(cur, a)), cur, a) = 1.0;
        }
    }
    model.transition_object = Matrix::identity(static_cast<std::size_t>(m));
    model.preference_visibility = Categorical({prefer_visible, 1.0 - prefer_visible});
    model.prior_agent = Categorical::delta(static_cast<std::size_t>(n), 0);
    model.prior_object = Categorical::uniform(static_cast<std::size_t>(m));
    model.horizon = horizon;
    model.policy_precision = 1.0;
    return model;
}

} // namespace

TEST_CASE("softmax matches analytic values") {
    const Categorical uniform = softmax({0.0, 0.0, 0.0}, 1.0);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(uniform[i] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    }

    const Categorical two_thirds = softmax({std::log(2.0), 0.0}, 1.0);
    CHECK(two_thirds[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(two_thirds[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

    // Doubling the precision squares the odds: 4:1.
    const Categorical sharpened = softmax({std::log(2.0), 0.0}, 2.0);
    CHECK(sharpened[0] == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(sharpened[1] == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("softmax matches direct evaluation and is shift invariant") {
    const std::vector<double> values = {-1.2, -0.4, -3.0};
    const Categorical result = softmax(values, 1.0);
    const std::vector<double> direct = oracle::softmax_direct(values, 1.0);
    for (std::size_t i = 0; i < values.size(); ++i) {
        CHECK(result[i] == doctest::Approx(direct[i]).epsilon(1e-12));
    }

    std::vector<double> shifted = values;
    for (double& v : shifted) v += 123.456;
    const Categorical shifted_result = softmax(shifted, 1.0);
    for (std::size_t i = 0; i < values.size(); ++i) {
        CHECK(shifted_result[i] == doctest::Approx(result[i]).epsilon(1e-12));
    }
}

TEST_CASE("softmax rejects bad input") {
    CHECK_THROWS_AS(softmax({}, 1.0), InvalidInputError);
    CHECK_THROWS_AS(softmax({std::nan("")}, 1.0), InvalidInputError);
    CHECK_THROWS_AS(softmax({0.0}, -1.0), InvalidInputError);
}

TEST_CASE("predict moves the agent factor along edges and keeps the object factor") {
    const GenerativeModel model = search_model(3, {{0, 1}, {1, 2}}, 0.95, false);
    BeliefState belief{Categorical::delta(3, 0), Categorical({0.3, 0.7, 0.0})};

    const BeliefState adjacent = predict(model, belief, 1);
    CHECK(adjacent.agent[1] == doctest::Approx(1.0).epsilon(1e-12));

    const BeliefState blocked = predict(model, belief, 2); // 0 and 2 are not adjacent
    CHECK(blocked.agent[0] == doctest::Approx(1.0).epsilon(1e-12));

    for (std::size_t j = 0; j < 3; ++j) {
        CHECK(adjacent.object[j] == doctest::Approx(belief.object[j]).epsilon(1e-12));
    }
    CHECK_THROWS_AS(predict(model, belief, 3), InvalidInputError);
}

TEST_CASE("predictive_observation mixes the visibility likelihood") {
    const GenerativeModel model = search_model(4, {{0, 1}, {1, 2}, {2, 3}}, 0.95, false);

    BeliefState at_object{Categorical::delta(4, 1), Categorical::delta(4, 1)};
    const Categorical hit = predictive_observation(model, at_object);
    CHECK(hit[0] == doctest::Approx(0.95).epsilon(1e-12));
    CHECK(hit[1] == doctest::Approx(0.05).epsilon(1e-12));

    BeliefState elsewhere{Categorical::delta(4, 1), Categorical::delta(4, 2)};
    const Categorical miss = predictive_observation(model, elsewhere);
    CHECK(miss[0] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(miss[1] == doctest::Approx(1.0).epsilon(1e-12));

    BeliefState unsure{Categorical::delta(4, 1), Categorical::uniform(4)};
    const Categorical mixed = predictive_observation(model, unsure);
    CHECK(mixed[0] == doctest::Approx(0.2375).epsilon(1e-12));
    CHECK(mixed[1] == doctest::Approx(0.7625).epsilon(1e-12));
}

TEST_CASE("update_beliefs performs exact Bayes per factor") {
    const GenerativeModel model = search_model(2, {{0, 1}}, 0.95, false);

    BeliefState predicted{Categorical::delta(2, 0), Categorical::uniform(2)};
    const Observation invisible_here{0, Visibility::Invisible};
    const BeliefState posterior = update_beliefs(model, predicted, invisible_here);
    CHECK(posterior.agent[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(posterior.object[0] == doctest::Approx(0.05 / 1.05).epsilon(1e-9)); // ~0.0476
    CHECK(posterior.object[1] == doctest::Approx(1.0 / 1.05).epsilon(1e-9));  // ~0.9524

    // A delta elsewhere is untouched by an invisible observation here.
    BeliefState delta_elsewhere{Categorical::delta(2, 0), Categorical::delta(2, 1)};
    const BeliefState unchanged = update_beliefs(model, delta_elsewhere, invisible_here);
    CHECK(unchanged.object[1] == doctest::Approx(1.0).epsilon(1e-12));

    // The agent marginal always collapses onto the observed location.
    BeliefState spread{Categorical::uniform(2), Categorical::uniform(2)};
    const BeliefState collapsed =
        update_beliefs(model, spread, Observation{1, Visibility::Invisible});
    CHECK(collapsed.agent[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("update_beliefs rejects impossible observations") {
    const GenerativeModel model = search_model(2, {{0, 1}}, 1.0, false);
    // Certain visibility (p = 1) at the object's location: invisible there is
    // impossible.
    BeliefState certain{Categorical::delta(2, 0), Categorical::delta(2, 0)};
    CHECK_THROWS_AS(update_beliefs(model, certain, Observation{0, Visibility::Invisible}),
                    ImpossibleObservationError);
    // Observing a location the agent cannot be at.
    CHECK_THROWS_AS(update_beliefs(model, certain, Observation{1, Visibility::Invisible}),
                    ImpossibleObservationError);
}

TEST_CASE("factored update equals joint-space Bayes on random instances") {
    oracle::TestRng rng(2024);
    for (int trial = 0; trial < 100; ++trial) {
        const oracle::RandomInstance instance = oracle::random_instance(rng, 6, 1);
        const Observation obs =
            oracle::random_possible_observation(instance.model, instance.belief, rng);
        const BeliefState updated = update_beliefs(instance.model, instance.belief, obs);
        const oracle::JointBayes reference =
            oracle::joint_bayes(instance.model, instance.belief, obs);
        for (std::size_t i = 0; i < updated.agent.size(); ++i) {
            CHECK(updated.agent[i] == doctest::Approx(reference.agent[i]).epsilon(1e-9));
        }
        for (std::size_t j = 0; j < updated.object.size(); ++j) {
            CHECK(updated.object[j] == doctest::Approx(reference.object[j]).epsilon(1e-9));
        }
    }
}

TEST_CASE("free energy vanishes when nothing is learned or surprising") {
    const GenerativeModel model = search_model(2, {{0, 1}}, 1.0, false);
    // Agent known at 0, object known at 1: invisible at 0 is certain, and the
    // posterior equals the prior.
    BeliefState belief{Categorical::delta(2, 0), Categorical::delta(2, 1)};
    const Observation obs{0, Visibility::Invisible};
    const BeliefState posterior = update_beliefs(model, belief, obs);
    const FreeEnergyReport report = variational_free_energy(model, belief, posterior, obs);
    CHECK(report.total == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(report.complexity == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(report.accuracy == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("free energy equals negative log evidence for exact posteriors") {
    // Three-state instance worked by hand: agent at 0, object uniform over 3,
    // p = 0.9, observe invisible at 0 -> P(o) = (0.1 + 1 + 1)/3 = 0.7.
    const GenerativeModel model = search_model(3, {{0, 1}, {1, 2}, {0, 2}}, 0.9, false);
    BeliefState belief{Categorical::delta(3, 0), Categorical::uniform(3)};
    const Observation obs{0, Visibility::Invisible};
    const BeliefState posterior = update_beliefs(model, belief, obs);
    const FreeEnergyReport report = variational_free_energy(model, belief, posterior, obs);
    CHECK(report.total == doctest::Approx(-std::log(0.7)).epsilon(1e-9));
    CHECK(report.kl_posterior_form == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("free energy decompositions agree on random instances") {
    oracle::TestRng rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        const oracle::RandomInstance instance = oracle::random_instance(rng, 6, 1);
        const Observation obs =
            oracle::random_possible_observation(instance.model, instance.belief, rng);
        const BeliefState posterior = update_beliefs(instance.model, instance.belief, obs);
        const FreeEnergyReport report =
            variational_free_energy(instance.model, instance.belief, posterior, obs);

        CHECK(report.total ==
              doctest::Approx(report.energy - report.entropy).epsilon(1e-9));
        CHECK(report.total ==
              doctest::Approx(report.complexity - report.accuracy).epsilon(1e-9));
        CHECK(report.complexity >= -1e-12);

        const double nle = oracle::neg_log_evidence(instance.model, instance.belief, obs);
        CHECK(report.total ==
              doctest::Approx(report.kl_posterior_form + nle).epsilon(1e-9));
        // Exact per-factor Bayes: the posterior-form KL vanishes.
        CHECK(report.kl_posterior_form == doctest::Approx(0.0).epsilon(1e-9));
        CHECK(report.total == doctest::Approx(nle).epsilon(1e-9));
    }
}

TEST_CASE("policy enumeration is exhaustive, ordered, and guarded") {
    GenerativeModel model = search_model(3, {{0, 1}, {1, 2}}, 0.95, false);
    model.horizon = 2;
    const std::vector<Policy> policies = enumerate_policies(model);
    REQUIRE(policies.size() == 9);
    // Row-major: the first action is the most significant digit.
    CHECK(policies[0].actions == std::vector<int>{0, 0});
    CHECK(policies[1].actions == std::vector<int>{0, 1});
    CHECK(policies[2].actions == std::vector<int>{0, 2});
    CHECK(policies[3].actions == std::vector<int>{1, 0});
    CHECK(policies[8].actions == std::vector<int>{2, 2});

    model.horizon = 12; // 3^12 > 2^18
    CHECK_THROWS_AS(enumerate_policies(model), InvalidInputError);
}

TEST_CASE("expected free energy of the trivial stay policy") {
    // Single location: nothing to learn, outcome odds fixed at p against 1-p.
    const GenerativeModel model =
        search_model(1, {}, 0.95, false, /*prefer_visible=*/0.99);
    BeliefState belief{Categorical::delta(1, 0), Categorical::delta(1, 0)};
    const PolicyEvaluation eval = expected_free_energy(model, belief, Policy{{0}});
    CHECK(eval.info_gain == doctest::Approx(0.0).epsilon(1e-12));
    const double expected_utility = 0.95 * std::log(0.99) + 0.05 * std::log(0.01);
    CHECK(eval.expected_utility == doctest::Approx(expected_utility).epsilon(1e-12));
    CHECK(eval.efe == doctest::Approx(-expected_utility).epsilon(1e-12));
}

TEST_CASE("uniform preferences make expected utility constant across policies") {
    GenerativeModel model = search_model(3, {{0, 1}, {1, 2}}, 0.95, false,
                                         /*prefer_visible=*/0.5, /*horizon=*/2);
    BeliefState belief{model.prior_agent, model.prior_object};
    const std::vector<Policy> policies = enumerate_policies(model);
    double first_eu = 0.0;
    for (std::size_t i = 0; i < policies.size(); ++i) {
        const PolicyEvaluation eval = expected_free_energy(model, belief, policies[i]);
        if (i == 0) {
            first_eu = eval.expected_utility;
        } else {
            CHECK(eval.expected_utility == doctest::Approx(first_eu).epsilon(1e-12));
        }
        // With the utility term constant, the ranking is by information gain.
        CHECK(eval.efe == doctest::Approx(-eval.info_gain - eval.expected_utility)
                              .epsilon(1e-12));
    }
}

TEST_CASE("expected free energy matches the exhaustive tree oracle") {
    oracle::TestRng rng(99);
    for (int trial = 0; trial < 60; ++trial) {
        const oracle::RandomInstance instance = oracle::random_instance(rng, 4, 2);
        std::vector<int> actions;
        for (int step = 0; step < instance.model.horizon; ++step) {
            actions.push_back(rng.uniform_int(0, instance.model.num_locations - 1));
        }
        const Policy policy{actions};
        const PolicyEvaluation eval =
            expected_free_energy(instance.model, instance.belief, policy);
        const double reference = oracle::efe_tree(instance.model, instance.belief, policy);
        CHECK(eval.efe == doctest::Approx(reference).epsilon(1e-9));

        double total = 0.0;
        for (const auto& step : eval.per_step) {
            CHECK(step.info_gain >= -1e-12);
            total += -step.info_gain - step.expected_utility;
        }
        CHECK(eval.efe == doctest::Approx(total).epsilon(1e-9));
    }
}

TEST_CASE("policy posterior is the softmax of negated costs") {
    PolicyEvaluation a;
    a.efe = 1.0;
    PolicyEvaluation b;
    b.efe = 1.0;
    const Categorical uniform = policy_posterior({a, b}, 1.0);
    CHECK(uniform[0] == doctest::Approx(0.5).epsilon(1e-12));

    b.efe = 1.0 + std::log(3.0);
    const Categorical skewed = policy_posterior({a, b}, 1.0);
    CHECK(skewed[0] == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(skewed[1] == doctest::Approx(0.25).epsilon(1e-12));

    CHECK_THROWS_AS(policy_posterior({}, 1.0), InvalidInputError);
}

TEST_CASE("action selection: argmax with low-index ties, seeded sampling") {
    const std::vector<Policy> policies = {Policy{{2}}, Policy{{1}}, Policy{{0}}};
    Rng rng(1);
    CHECK(select_action(Categorical({0.6, 0.4, 0.0}), policies, SelectionMode::Argmax, rng) ==
          2);
    CHECK(select_action(Categorical({0.5, 0.5, 0.0}), policies, SelectionMode::Argmax, rng) ==
          2); // tie -> policy 0

    // Sampling from [0.5, 0.5] lands near half.
    Rng sampler(11);
    int zeros = 0;
    const Categorical coin({0.5, 0.5});
    for (int i = 0; i < 10000; ++i) {
        if (select_policy_index(coin, SelectionMode::Sample, sampler) == 0) ++zeros;
    }
    CHECK(zeros > 4800);
    CHECK(zeros < 5200);

    // Identical seeds give identical choices.
    Rng s1(42);
    Rng s2(42);
    for (int i = 0; i < 100; ++i) {
        CHECK(select_policy_index(coin, SelectionMode::Sample, s1) ==
              select_policy_index(coin, SelectionMode::Sample, s2));
    }

    CHECK_THROWS_AS(select_action(Categorical({1.0}), policies, SelectionMode::Argmax, rng),
                    InvalidInputError);
}
