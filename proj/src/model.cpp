#include "affect_engine/model.hpp"

#include <cmath>
#include <sstream>

#include "affect_engine/errors.hpp"

namespace affect_engine {

namespace {

void require(bool condition, const char* message) {
    if (!condition) {
        throw InvalidInputError(message);
    }
}

bool is_identity(const Matrix& m, std::size_t n) {
    if (m.rows != n || m.cols != n) return false;
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            if (m.at(r, c) != (r == c ? 1.0 : 0.0)) return false;
        }
    }
    return true;
}

} // namespace

void validate_model(const GenerativeModel& model) {
    require(model.num_locations >= 1, "model needs at least one location");
    const std::size_t n = static_cast<std::size_t>(model.num_locations);
    const std::size_t m = static_cast<std::size_t>(model.object_states);
    require(m == n || m == n + 1,
            "object_states must equal num_locations, plus one for the \"not here\" state");

    require(is_identity(model.likelihood_location, n),
            "location likelihood must be the identity");
    require(is_identity(model.transition_object, m),
            "object transition must be the identity");

    const Tensor3& vis = model.likelihood_visibility;
    require(vis.d0 == 2 && vis.d1 == n && vis.d2 == m,
            "visibility likelihood must be 2 x locations x object states");
    double diag = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const double visible = vis.at(0, i, j);
            const double invisible = vis.at(1, i, j);
            require(visible >= 0.0 && invisible >= 0.0 &&
                        std::abs(visible + invisible - 1.0) <= 1e-9,
                    "visibility likelihood columns must be distributions");
            if (j == i) {
                if (diag < 0.0) diag = visible;
                require(std::abs(visible - diag) <= 1e-12,
                        "visibility probability must be the same at every location");
            } else {
                require(visible == 0.0,
                        "object invisible away from its location (no false positives)");
            }
        }
    }
    require(diag > 0.0 && diag <= 1.0, "visibility probability must lie in (0, 1]");

    const Tensor3& move = model.transition_agent;
    require(move.d0 == n && move.d1 == n && move.d2 == n,
            "agent transition must be locations^3 (next x current x action)");
    for (std::size_t cur = 0; cur < n; ++cur) {
        for (std::size_t a = 0; a < n; ++a) {
            double total = 0.0;
            for (std::size_t next = 0; next < n; ++next) {
                const double p = move.at(next, cur, a);
                require(p >= 0.0, "agent transition entries must be non-negative");
                total += p;
            }
            require(std::abs(total - 1.0) <= 1e-9,
                    "agent transition columns must be distributions");
        }
    }

    require(model.preference_visibility.size() == 2,
            "visibility preference must cover {visible, invisible}");
    require(model.prior_agent.size() == n, "agent prior size must match locations");
    require(model.prior_object.size() == m, "object prior size must match object states");
    require(model.horizon >= 1, "planning horizon must be at least 1");
    require(std::isfinite(model.policy_precision) && model.policy_precision > 0.0,
            "policy precision must be positive and finite");
}

} // namespace affect_engine
