#pragma once

#include <string>

#include "affect_engine/model.hpp"

namespace affect_engine {

/// Circumplex sector labels (eight 45-degree sectors centered on the axes)
/// plus the low-radius neutral disk.
enum class EmotionLabel {
    Happy,
    Excited,
    Alert,
    Angry,
    Sad,
    Depressed,
    Calm,
    Relaxed,
    Neutral,
};

const char* to_string(EmotionLabel label);

/// Normalization constants mapping raw affect onto the unit square.
struct AffectConfig {
    double valence_scale = 1.0;  ///< Largest attainable |utility - expected utility|.
    double max_entropy = 1.0;    ///< log(number of object states).
    double neutral_radius = 0.1; ///< Radius below which the state is neutral.
};

/// One step's affective state, raw and normalized.
struct AffectSample {
    double utility = 0.0;          ///< log preference of the received outcome.
    double expected_utility = 0.0; ///< pre-observation expectation of the same.
    double valence_raw = 0.0;      ///< utility - expected_utility.
    double arousal_raw = 0.0;      ///< posterior entropy (nats).
    double valence_norm = 0.0;     ///< valence_raw / valence_scale, clamped to [-1, 1].
    double arousal_norm = 0.0;     ///< 2 * arousal_raw / max_entropy - 1, clamped.
    double radius = 0.0;           ///< sqrt(valence_norm^2 + arousal_norm^2).
    double angle_deg = 0.0;        ///< atan2(arousal_norm, valence_norm) in [0, 360).
    EmotionLabel label = EmotionLabel::Neutral;
    bool utility_floored = false;  ///< True when a zero preference was floored.
};

/// Log preference probability (nats) of the observed visibility outcome.
/// A zero preference is floored at log(kLogFloor).
double utility(Visibility outcome, const Categorical& preferences);

/// Expectation of the log preference under a predictive visibility
/// distribution.
double expected_utility(const Categorical& predictive, const Categorical& preferences);

/// Valence: utility minus expected utility.
double valence(double utility_value, double expected_utility_value);

/// Arousal: entropy of the posterior belief, summed over factors.
double arousal(const BeliefState& posterior);

/// Raw-to-normalized affect mapping; both outputs clamp to [-1, 1].
void normalize_affect(double valence_raw, double arousal_raw, const AffectConfig& config,
                      double* valence_norm, double* arousal_norm);

/// Polar form of a normalized affect point; the origin maps to (0, 0 deg).
void to_polar(double valence_norm, double arousal_norm, double* radius, double* angle_deg);

/// Sector label for a polar affect point; radius below the neutral threshold
/// yields Neutral.
EmotionLabel label_emotion(double radius, double angle_deg, const AffectConfig& config);

/// Assembles a full sample from the raw ingredients of one step.
AffectSample make_affect_sample(double utility_value, double expected_utility_value,
                                double arousal_raw, const AffectConfig& config,
                                bool utility_floored);

} // namespace affect_engine
