#pragma once

#include <cstddef>
#include <vector>

namespace affect_engine {

/// Probabilities below this floor are clamped inside logarithms (and only
/// there); stored distributions are never altered.
inline constexpr double kLogFloor = 1e-16;

/// Natural logarithm with the probability argument floored at kLogFloor.
double safe_log(double p);

/// A discrete probability distribution: non-negative entries summing to one
/// (within 1e-9), at least one entry.
class Categorical {
public:
    /// Single-outcome distribution; the placeholder before a real one is
    /// assigned.
    Categorical() : probs_{1.0} {}

    /// Validates and adopts an already-normalized probability vector.
    explicit Categorical(std::vector<double> probs);

    /// Normalizes non-negative weights into a distribution.
    static Categorical normalized(std::vector<double> weights);

    /// Uniform distribution over n outcomes.
    static Categorical uniform(std::size_t n);

    /// Point mass on outcome k of n.
    static Categorical delta(std::size_t n, std::size_t k);

    std::size_t size() const { return probs_.size(); }
    double operator[](std::size_t i) const { return probs_[i]; }
    const std::vector<double>& probs() const { return probs_; }

    /// Shannon entropy in nats.
    double entropy() const;

    /// Index of the largest probability; ties break to the lowest index.
    std::size_t argmax() const;

private:
    std::vector<double> probs_;
};

/// KL divergence KL[q || p] in nats; zero-mass terms of q contribute nothing
/// and p is floored inside the logarithm.
double kl_divergence(const Categorical& q, const Categorical& p);

} // namespace affect_engine
