#include "affect_engine/affect.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "affect_engine/errors.hpp"

namespace affect_engine {

const char* to_string(EmotionLabel label) {
    switch (label) {
    case EmotionLabel::Happy: return "happy";
    case EmotionLabel::Excited: return "excited";
    case EmotionLabel::Alert: return "alert";
    case EmotionLabel::Angry: return "angry";
    case EmotionLabel::Sad: return "sad";
    case EmotionLabel::Depressed: return "depressed";
    case EmotionLabel::Calm: return "calm";
    case EmotionLabel::Relaxed: return "relaxed";
    case EmotionLabel::Neutral: return "neutral";
    }
    return "neutral";
}

double utility(Visibility outcome, const Categorical& preferences) {
    if (preferences.size() != 2) {
        throw InvalidInputError("visibility preferences must have two outcomes");
    }
    return safe_log(preferences[static_cast<std::size_t>(outcome)]);
}

double expected_utility(const Categorical& predictive, const Categorical& preferences) {
    if (predictive.size() != preferences.size()) {
        throw InvalidInputError("predictive and preference distributions must match");
    }
    double eu = 0.0;
    for (std::size_t o = 0; o < predictive.size(); ++o) {
        eu += predictive[o] * safe_log(preferences[o]);
    }
    return eu;
}

double valence(double utility_value, double expected_utility_value) {
    return utility_value - expected_utility_value;
}

double arousal(const BeliefState& posterior) {
    return posterior.agent.entropy() + posterior.object.entropy();
}

void normalize_affect(double valence_raw, double arousal_raw, const AffectConfig& config,
                      double* valence_norm, double* arousal_norm) {
    if (config.valence_scale <= 0.0 || config.max_entropy <= 0.0) {
        throw InvalidInputError("affect normalization scales must be positive");
    }
    *valence_norm = std::clamp(valence_raw / config.valence_scale, -1.0, 1.0);
    *arousal_norm = std::clamp(2.0 * arousal_raw / config.max_entropy - 1.0, -1.0, 1.0);
}

void to_polar(double valence_norm, double arousal_norm, double* radius, double* angle_deg) {
    *radius = std::hypot(valence_norm, arousal_norm);
    if (*radius == 0.0) {
        *angle_deg = 0.0;
        return;
    }
    double deg = std::atan2(arousal_norm, valence_norm) * 180.0 / std::numbers::pi;
    if (deg < 0.0) deg += 360.0;
    if (deg >= 360.0) deg -= 360.0;
    *angle_deg = deg;
}

EmotionLabel label_emotion(double radius, double angle_deg, const AffectConfig& config) {
    if (radius < config.neutral_radius) {
        return EmotionLabel::Neutral;
    }
    // Eight 45-degree sectors centered on 0, 45, ..., 315 degrees.
    const double shifted = std::fmod(angle_deg + 22.5, 360.0);
    const int sector = static_cast<int>(shifted / 45.0) % 8;
    static constexpr EmotionLabel kSectors[8] = {
        EmotionLabel::Happy,   EmotionLabel::Excited,   EmotionLabel::Alert,
        EmotionLabel::Angry,   EmotionLabel::Sad,       EmotionLabel::Depressed,
        EmotionLabel::Calm,    EmotionLabel::Relaxed,
    };
    return kSectors[sector];
}

AffectSample make_affect_sample(double utility_value, double expected_utility_value,
                                double arousal_raw, const AffectConfig& config,
                                bool utility_floored) {
    AffectSample sample;
    sample.utility = utility_value;
    sample.expected_utility = expected_utility_value;
    sample.valence_raw = valence(utility_value, expected_utility_value);
    sample.arousal_raw = arousal_raw;
    normalize_affect(sample.valence_raw, sample.arousal_raw, config, &sample.valence_norm,
                     &sample.arousal_norm);
    to_polar(sample.valence_norm, sample.arousal_norm, &sample.radius, &sample.angle_deg);
    sample.label = label_emotion(sample.radius, sample.angle_deg, config);
    sample.utility_floored = utility_floored;
    return sample;
}

} // namespace affect_engine
