#pragma once

#include <cstddef>
#include <vector>

#include "affect_engine/categorical.hpp"
#include "affect_engine/tensors.hpp"

namespace affect_engine {

/// Observation outcome of the visibility modality. Index 0 is visible so the
/// same value indexes likelihood tensors and preference vectors.
enum class Visibility : int { Visible = 0, Invisible = 1 };

/// One observation: the agent's (exactly observed) location plus whether the
/// object is visible there.
struct Observation {
    int location = 0;
    Visibility visibility = Visibility::Invisible;
};

/// Factorized belief over the two hidden-state factors.
struct BeliefState {
    Categorical agent;
    Categorical object;
};

/// A candidate action sequence; actions are target locations.
struct Policy {
    std::vector<int> actions;
};

/// Two-factor generative model of the object-search task.
///
/// Hidden state: (agent location, object state); the object state is either a
/// location or, when `object_states == num_locations + 1`, the trailing
/// "not here" state. Observations: the agent location (identity likelihood)
/// and the binary visibility outcome.
struct GenerativeModel {
    int num_locations = 0;
    int object_states = 0;

    Matrix likelihood_location;   ///< P(o_loc | s_agent); identity.
    Tensor3 likelihood_visibility;///< P(o_vis | s_agent, s_object), outcome first.
    Tensor3 transition_agent;     ///< P(s_agent' | s_agent, action), next first.
    Matrix transition_object;     ///< P(s_object' | s_object); identity.

    Categorical preference_visibility; ///< P(o_vis | C) over {visible, invisible}.
    Categorical prior_agent;           ///< Initial agent-location belief.
    Categorical prior_object;          ///< Initial object-state belief.

    int horizon = 3;
    double policy_precision = 1.0;
};

/// Checks dimensional consistency and the structural invariants (identity
/// location likelihood, identity object transition, stochastic tensor
/// slices); throws InvalidInputError on violation.
void validate_model(const GenerativeModel& model);

/// Variational free energy of one belief update, reported through each of its
/// algebraic decompositions (all in nats).
struct FreeEnergyReport {
    double total = 0.0;             ///< complexity - accuracy.
    double kl_posterior_form = 0.0; ///< KL[posterior || exact posterior].
    double energy = 0.0;            ///< -E_posterior[log P(o, s)].
    double entropy = 0.0;           ///< H[posterior].
    double complexity = 0.0;        ///< KL[posterior || prior], per-factor sum.
    double accuracy = 0.0;          ///< E_posterior[log P(o | s)].
};

/// Expected free energy of one policy with its per-step components.
struct PolicyEvaluation {
    struct StepTerms {
        double info_gain = 0.0;       ///< Expected KL, object factor; >= 0.
        double expected_utility = 0.0;///< Expected log-preference of outcomes.
    };

    Policy policy;
    double efe = 0.0;             ///< Sum over steps of -info_gain - expected_utility.
    double info_gain = 0.0;       ///< Total information gain.
    double expected_utility = 0.0;///< Total expected utility.
    std::vector<StepTerms> per_step;
};

} // namespace affect_engine
