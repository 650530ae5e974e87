#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "socialucb/types.hpp"

namespace socialucb {

/// Constants of the tie update rule.
struct EdgeParams {
    double theta = 0.5;       // interaction threshold
    double eta_plus = 0.2;    // reinforcement rate
    double eta_minus = 0.2;   // weakening rate
    double w_init_new = 0.1;  // base weight of a freshly created tie
    double w_min = 0.01;      // ties below this weight are pruned
};

struct EdgeState {
    double weight = 0.0;
    Step last_interaction_step = 0;

    friend bool operator==(const EdgeState&, const EdgeState&) = default;
};

struct Neighbor {
    NodeId node;
    double weight;

    friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

struct WeightedEdge {
    NodeId i;
    NodeId j;
    double weight;

    friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
};

/// Dynamic undirected weighted graph over a fixed agent population.
///
/// Each tie is stored once, under its canonical (min id, max id) key, so the
/// (i,j) and (j,i) views can never disagree. Weights produced by the update
/// rules lie in [w_min, 1]; anything that would fall below w_min is removed
/// instead. Initial random weights are uniform on (0,1].
class SocialGraph {
public:
    explicit SocialGraph(NodeId node_count, EdgeParams params = {});

    /// Erdos-Renyi graph: each pair is a tie with probability `density`,
    /// weight uniform on (0,1]. Created ties start at step 0.
    static SocialGraph random_sparse(NodeId node_count, double density, Rng& rng,
                                     EdgeParams params = {});

    NodeId node_count() const { return static_cast<NodeId>(adjacent_.size()); }
    std::size_t edge_count() const { return edge_count_; }
    const EdgeParams& params() const { return params_; }

    bool has_edge(NodeId i, NodeId j) const;
    std::optional<EdgeState> edge(NodeId i, NodeId j) const;
    /// Weight of (i,j), or 0 when there is no tie.
    double weight(NodeId i, NodeId j) const;

    std::size_t degree(NodeId i) const;
    /// Neighbor ids of `i`, ascending.
    std::span<const NodeId> adjacent(NodeId i) const;
    /// Neighbors of `i` with current weights, ascending by id.
    std::vector<Neighbor> neighbors(NodeId i) const;

    /// Applies the outcome of an interaction between i and j at `step`.
    /// Returns the resulting tie, or nullopt if no tie exists afterwards.
    std::optional<EdgeState> reinforce_or_create(NodeId i, NodeId j, double reward, Step step);

    /// Passive fragility: every tie not touched at `step` decays to
    /// lambda * weight with probability p_frag. Returns the number pruned.
    std::size_t decay_step(double p_frag, double lambda, Step step, Rng& rng);

    /// Inserts or overwrites a tie directly (fixtures, snapshots).
    void set_edge(NodeId i, NodeId j, double weight, Step step = 0);
    bool remove_edge(NodeId i, NodeId j);

    /// All ties as (i < j, weight), sorted lexicographically.
    std::vector<WeightedEdge> edges() const;

    /// Mean weight over the ties of `i`; 0 for an isolated node.
    double mean_tie_strength(NodeId i) const;

private:
    using Slot = std::pair<NodeId, EdgeState>;

    void check_node(NodeId i) const;
    void check_pair(NodeId i, NodeId j) const;
    EdgeState* find(NodeId i, NodeId j);
    const EdgeState* find(NodeId i, NodeId j) const;
    void insert(NodeId i, NodeId j, EdgeState state);
    void erase(NodeId i, NodeId j);

    EdgeParams params_;
    // upper_[i] holds ties (i, j) with j > i, sorted by j.
    std::vector<std::vector<Slot>> upper_;
    // adjacent_[i] holds every neighbor of i, sorted.
    std::vector<std::vector<NodeId>> adjacent_;
    std::size_t edge_count_ = 0;
};

}  // namespace socialucb
