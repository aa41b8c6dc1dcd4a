#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "affect_engine/model.hpp"
#include "affect_engine/tensors.hpp"

namespace affect_engine {

/// Undirected location graph. Self-loops are permitted; staying put is always
/// a legal move regardless of them.
struct Graph {
    int num_locations = 0;
    std::vector<std::uint8_t> adjacency; ///< row-major num_locations^2 matrix.

    static Graph from_edges(int num_locations, const std::vector<std::pair<int, int>>& edges);

    bool adjacent(int a, int b) const {
        return adjacency[static_cast<std::size_t>(a) * num_locations + b] != 0;
    }

    /// Where a move toward `target` actually lands from `from`: the target if
    /// it is the current location or adjacent to it, otherwise `from`.
    int move(int from, int target) const;

    /// BFS hop distances from `from` (-1 for unreachable nodes).
    std::vector<int> distances_from(int from) const;

    /// True when every node is reachable from node 0.
    bool connected() const;
};

/// Ground-truth environment: the agent's actual location and, when present,
/// the object's. Observations are generated from it, never from beliefs.
class GraphWorld {
public:
    /// Throws InvalidInputError for an unconnected graph, out-of-range
    /// locations, or a visibility probability outside (0, 1].
    GraphWorld(Graph graph, std::optional<int> object_location, double visibility_prob,
               int start_location);

    /// Executes a move toward `target` and returns the resulting location.
    /// Non-adjacent targets waste the step (self-transition).
    int step(int target);

    /// Emits the observation at the current location. Exactly one uniform
    /// draw is consumed per call, so the random stream is step-indexed
    /// regardless of the path taken.
    Observation observe(Rng& rng) const;

    int agent_location() const { return agent_location_; }
    const Graph& graph() const { return graph_; }
    std::optional<int> object_location() const { return object_location_; }
    double visibility_prob() const { return visibility_prob_; }

private:
    Graph graph_;
    std::optional<int> object_location_;
    double visibility_prob_ = 0.95;
    int agent_location_ = 0;
};

} // namespace affect_engine
