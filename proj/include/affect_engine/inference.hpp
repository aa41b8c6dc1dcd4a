#pragma once

#include <vector>

#include "affect_engine/model.hpp"
#include "affect_engine/tensors.hpp"

namespace affect_engine {

/// How select_action resolves the policy posterior into a choice.
enum class SelectionMode { Argmax, Sample };

/// Numerically stable softmax: exp(precision * (v - max v)) normalized.
/// Throws InvalidInputError on empty or non-finite input.
Categorical softmax(const std::vector<double>& values, double precision);

/// Rolls the belief one step forward through the transition model for the
/// given action (a target location). The object factor is unchanged because
/// its transition is the identity.
BeliefState predict(const GenerativeModel& model, const BeliefState& belief, int action);

/// Predictive distribution over the visibility outcome under a belief.
Categorical predictive_observation(const GenerativeModel& model, const BeliefState& belief);

/// Exact per-factor Bayesian update of a predictive belief given an
/// observation. Throws ImpossibleObservationError when the observation has
/// zero probability under the predictive belief.
BeliefState update_beliefs(const GenerativeModel& model, const BeliefState& predicted,
                           const Observation& obs);

/// Variational free energy of the update from `prior` (the pre-update
/// predictive belief) to `posterior` given `obs`, with every decomposition
/// populated.
FreeEnergyReport variational_free_energy(const GenerativeModel& model, const BeliefState& prior,
                                         const BeliefState& posterior, const Observation& obs);

/// All action sequences of length `model.horizon` over the location set, in
/// row-major order (first action most significant). Policy indices used for
/// tie-breaking refer to this order.
std::vector<Policy> enumerate_policies(const GenerativeModel& model);

/// Expected free energy of a policy from the given belief. Future
/// observations are handled by branching: each step's outcomes spawn
/// Bayes-updated belief branches weighted by their predictive probability.
/// Information gain is measured on the object factor.
PolicyEvaluation expected_free_energy(const GenerativeModel& model, const BeliefState& belief,
                                      const Policy& policy);

/// Softmax of the negated policy costs at the given precision.
Categorical policy_posterior(const std::vector<PolicyEvaluation>& evaluations, double precision);

/// Picks a policy from the posterior (argmax with lowest-index tie-break, or
/// a seeded sample) and returns its index into `policies`.
std::size_t select_policy_index(const Categorical& posterior, SelectionMode mode, Rng& rng);

/// First action of the selected policy.
int select_action(const Categorical& posterior, const std::vector<Policy>& policies,
                  SelectionMode mode, Rng& rng);

} // namespace affect_engine
