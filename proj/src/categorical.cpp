#include "affect_engine/categorical.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "affect_engine/errors.hpp"

namespace affect_engine {

double safe_log(double p) { return std::log(std::max(p, kLogFloor)); }

namespace {

void check_distribution(const std::vector<double>& probs) {
    if (probs.empty()) {
        throw InvalidInputError("categorical distribution must have at least one outcome");
    }
    double total = 0.0;
    for (double p : probs) {
        if (!std::isfinite(p) || p < 0.0) {
            throw InvalidInputError("categorical probabilities must be finite and non-negative");
        }
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        std::ostringstream msg;
        msg << "categorical probabilities must sum to 1 (got " << total << ")";
        throw InvalidInputError(msg.str());
    }
}

} // namespace

Categorical::Categorical(std::vector<double> probs) : probs_(std::move(probs)) {
    check_distribution(probs_);
}

Categorical Categorical::normalized(std::vector<double> weights) {
    if (weights.empty()) {
        throw InvalidInputError("cannot normalize an empty weight vector");
    }
    double total = 0.0;
    for (double w : weights) {
        if (!std::isfinite(w) || w < 0.0) {
            throw InvalidInputError("weights must be finite and non-negative");
        }
        total += w;
    }
    if (total <= 0.0) {
        throw DegenerateDistributionError("all weights are zero; distribution is undefined");
    }
    for (double& w : weights) {
        w /= total;
    }
    return Categorical(std::move(weights));
}

Categorical Categorical::uniform(std::size_t n) {
    if (n == 0) {
        throw InvalidInputError("uniform distribution needs at least one outcome");
    }
    return Categorical(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

Categorical Categorical::delta(std::size_t n, std::size_t k) {
    if (n == 0) {
        throw InvalidInputError("delta distribution needs at least one outcome");
    }
    if (k >= n) {
        throw InvalidInputError("delta index out of range");
    }
    std::vector<double> probs(n, 0.0);
    probs[k] = 1.0;
    return Categorical(std::move(probs));
}

double Categorical::entropy() const {
    double h = 0.0;
    for (double p : probs_) {
        if (p > 0.0) {
            h -= p * std::log(p);
        }
    }
    return h;
}

std::size_t Categorical::argmax() const {
    return static_cast<std::size_t>(
        std::distance(probs_.begin(), std::max_element(probs_.begin(), probs_.end())));
}

double kl_divergence(const Categorical& q, const Categorical& p) {
    if (q.size() != p.size()) {
        throw InvalidInputError("KL divergence requires equal-length distributions");
    }
    double kl = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (q[i] > 0.0) {
            kl += q[i] * (std::log(q[i]) - safe_log(p[i]));
        }
    }
    return kl;
}

} // namespace affect_engine
