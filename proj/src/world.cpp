#include "affect_engine/world.hpp"

#include <deque>
#include <sstream>

#include "affect_engine/errors.hpp"

namespace affect_engine {

Graph Graph::from_edges(int num_locations, const std::vector<std::pair<int, int>>& edges) {
    if (num_locations < 1) {
        throw InvalidInputError("graph needs at least one location");
    }
    Graph graph;
    graph.num_locations = num_locations;
    graph.adjacency.assign(static_cast<std::size_t>(num_locations) * num_locations, 0);
    for (const auto& [a, b] : edges) {
        if (a < 0 || a >= num_locations || b < 0 || b >= num_locations) {
            std::ostringstream msg;
            msg << "edge (" << a << ", " << b << ") references a location outside [0, "
                << num_locations << ")";
            throw InvalidInputError(msg.str());
        }
        graph.adjacency[static_cast<std::size_t>(a) * num_locations + b] = 1;
        graph.adjacency[static_cast<std::size_t>(b) * num_locations + a] = 1;
    }
    return graph;
}

int Graph::move(int from, int target) const {
    if (from < 0 || from >= num_locations || target < 0 || target >= num_locations) {
        throw InvalidInputError("move endpoints out of range");
    }
    if (target == from || adjacent(from, target)) {
        return target;
    }
    return from;
}

std::vector<int> Graph::distances_from(int from) const {
    if (from < 0 || from >= num_locations) {
        throw InvalidInputError("distance source out of range");
    }
    std::vector<int> dist(static_cast<std::size_t>(num_locations), -1);
    std::deque<int> queue;
    dist[static_cast<std::size_t>(from)] = 0;
    queue.push_back(from);
    while (!queue.empty()) {
        const int cur = queue.front();
        queue.pop_front();
        for (int next = 0; next < num_locations; ++next) {
            if (adjacent(cur, next) && dist[static_cast<std::size_t>(next)] < 0) {
                dist[static_cast<std::size_t>(next)] = dist[static_cast<std::size_t>(cur)] + 1;
                queue.push_back(next);
            }
        }
    }
    return dist;
}

bool Graph::connected() const {
    const std::vector<int> dist = distances_from(0);
    for (int d : dist) {
        if (d < 0) return false;
    }
    return true;
}

GraphWorld::GraphWorld(Graph graph, std::optional<int> object_location, double visibility_prob,
                       int start_location)
    : graph_(std::move(graph)),
      object_location_(object_location),
      visibility_prob_(visibility_prob),
      agent_location_(start_location) {
    if (!graph_.connected()) {
        throw InvalidInputError("world graph must be connected");
    }
    if (start_location < 0 || start_location >= graph_.num_locations) {
        throw InvalidInputError("start location out of range");
    }
    if (object_location_ &&
        (*object_location_ < 0 || *object_location_ >= graph_.num_locations)) {
        throw InvalidInputError("object location out of range");
    }
    if (!(visibility_prob_ > 0.0) || visibility_prob_ > 1.0) {
        throw InvalidInputError("visibility probability must lie in (0, 1]");
    }
}

int GraphWorld::step(int target) {
    agent_location_ = graph_.move(agent_location_, target);
    return agent_location_;
}

Observation GraphWorld::observe(Rng& rng) const {
    const double draw = rng.uniform01();
    Observation obs;
    obs.location = agent_location_;
    const bool at_object = object_location_ && *object_location_ == agent_location_;
    obs.visibility =
        (at_object && draw < visibility_prob_) ? Visibility::Visible : Visibility::Invisible;
    return obs;
}

} // namespace affect_engine
