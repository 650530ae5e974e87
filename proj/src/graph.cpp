#include "socialucb/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace socialucb {

namespace {

std::pair<NodeId, NodeId> canonical(NodeId i, NodeId j) {
    return i < j ? std::pair{i, j} : std::pair{j, i};
}

}  // namespace

SocialGraph::SocialGraph(NodeId node_count, EdgeParams params) : params_(params) {
    if (node_count < 2) {
        throw std::invalid_argument("invalid population: need at least 2 agents, got " +
                                    std::to_string(node_count));
    }
    upper_.resize(static_cast<std::size_t>(node_count));
    adjacent_.resize(static_cast<std::size_t>(node_count));
}

SocialGraph SocialGraph::random_sparse(NodeId node_count, double density, Rng& rng,
                                       EdgeParams params) {
    if (!(density >= 0.0 && density <= 1.0)) {
        throw std::invalid_argument("density must lie in [0,1]");
    }
    SocialGraph g(node_count, params);
    for (NodeId i = 0; i < node_count; ++i) {
        for (NodeId j = i + 1; j < node_count; ++j) {
            if (uniform01(rng) >= density) continue;
            // Weight on (0,1]: 1 - U with U in [0,1) never hits 0.
            const double w = 1.0 - uniform01(rng);
            g.upper_[i].push_back({j, EdgeState{w, 0}});
            g.adjacent_[i].push_back(j);
            g.adjacent_[j].push_back(i);
            ++g.edge_count_;
        }
    }
    return g;
}

void SocialGraph::check_node(NodeId i) const {
    if (i < 0 || i >= node_count()) {
        throw std::out_of_range("node id " + std::to_string(i) + " outside [0," +
                                std::to_string(node_count()) + ")");
    }
}

void SocialGraph::check_pair(NodeId i, NodeId j) const {
    check_node(i);
    check_node(j);
    if (i == j) throw std::invalid_argument("self-loop on node " + std::to_string(i));
}

EdgeState* SocialGraph::find(NodeId i, NodeId j) {
    return const_cast<EdgeState*>(std::as_const(*this).find(i, j));
}

const EdgeState* SocialGraph::find(NodeId i, NodeId j) const {
    auto [lo, hi] = canonical(i, j);
    const auto& row = upper_[lo];
    auto it = std::lower_bound(row.begin(), row.end(), hi,
                               [](const Slot& s, NodeId v) { return s.first < v; });
    if (it == row.end() || it->first != hi) return nullptr;
    return &it->second;
}

void SocialGraph::insert(NodeId i, NodeId j, EdgeState state) {
    auto [lo, hi] = canonical(i, j);
    auto& row = upper_[lo];
    auto it = std::lower_bound(row.begin(), row.end(), hi,
                               [](const Slot& s, NodeId v) { return s.first < v; });
    row.insert(it, {hi, state});
    auto& a = adjacent_[lo];
    a.insert(std::lower_bound(a.begin(), a.end(), hi), hi);
    auto& b = adjacent_[hi];
    b.insert(std::lower_bound(b.begin(), b.end(), lo), lo);
    ++edge_count_;
}

void SocialGraph::erase(NodeId i, NodeId j) {
    auto [lo, hi] = canonical(i, j);
    auto& row = upper_[lo];
    row.erase(std::lower_bound(row.begin(), row.end(), hi,
                               [](const Slot& s, NodeId v) { return s.first < v; }));
    auto& a = adjacent_[lo];
    a.erase(std::lower_bound(a.begin(), a.end(), hi));
    auto& b = adjacent_[hi];
    b.erase(std::lower_bound(b.begin(), b.end(), lo));
    --edge_count_;
}

bool SocialGraph::has_edge(NodeId i, NodeId j) const {
    check_node(i);
    check_node(j);
    return i != j && find(i, j) != nullptr;
}

std::optional<EdgeState> SocialGraph::edge(NodeId i, NodeId j) const {
    check_node(i);
    check_node(j);
    if (i == j) return std::nullopt;
    if (const auto* e = find(i, j)) return *e;
    return std::nullopt;
}

double SocialGraph::weight(NodeId i, NodeId j) const {
    auto e = edge(i, j);
    return e ? e->weight : 0.0;
}

std::size_t SocialGraph::degree(NodeId i) const {
    check_node(i);
    return adjacent_[i].size();
}

std::span<const NodeId> SocialGraph::adjacent(NodeId i) const {
    check_node(i);
    return adjacent_[i];
}

std::vector<Neighbor> SocialGraph::neighbors(NodeId i) const {
    check_node(i);
    std::vector<Neighbor> out;
    out.reserve(adjacent_[i].size());
    for (NodeId j : adjacent_[i]) out.push_back({j, find(i, j)->weight});
    return out;
}

double SocialGraph::mean_tie_strength(NodeId i) const {
    check_node(i);
    if (adjacent_[i].empty()) return 0.0;
    double sum = 0.0;
    for (NodeId j : adjacent_[i]) sum += find(i, j)->weight;
    return sum / static_cast<double>(adjacent_[i].size());
}

std::optional<EdgeState> SocialGraph::reinforce_or_create(NodeId i, NodeId j, double reward,
                                                          Step step) {
    check_pair(i, j);
    if (!(reward >= 0.0 && reward <= 1.0)) {
        throw std::invalid_argument("reward must lie in [0,1]");
    }
    EdgeState* e = find(i, j);
    if (reward >= params_.theta) {
        const double gain = params_.eta_plus * (reward - params_.theta);
        if (e) {
            e->weight = std::clamp(e->weight + gain, params_.w_min, 1.0);
            e->last_interaction_step = step;
            return *e;
        }
        EdgeState fresh{std::clamp(params_.w_init_new + gain, params_.w_min, 1.0), step};
        insert(i, j, fresh);
        return fresh;
    }
    // Failed interaction: a non-tie stays absent.
    if (!e) return std::nullopt;
    const double w = std::clamp(e->weight - params_.eta_minus * (params_.theta - reward), 0.0, 1.0);
    if (w < params_.w_min) {
        erase(i, j);
        return std::nullopt;
    }
    e->weight = w;
    e->last_interaction_step = step;
    return *e;
}

std::size_t SocialGraph::decay_step(double p_frag, double lambda, Step step, Rng& rng) {
    if (!(p_frag >= 0.0 && p_frag <= 1.0)) throw std::invalid_argument("p_frag must lie in [0,1]");
    if (!(lambda > 0.0 && lambda < 1.0)) throw std::invalid_argument("lambda must lie in (0,1)");
    std::vector<std::pair<NodeId, NodeId>> doomed;
    for (NodeId i = 0; i < node_count(); ++i) {
        for (auto& [j, e] : upper_[i]) {
            if (e.last_interaction_step >= step) continue;
            if (uniform01(rng) >= p_frag) continue;
            e.weight *= lambda;
            if (e.weight < params_.w_min) doomed.emplace_back(i, j);
        }
    }
    for (auto [i, j] : doomed) erase(i, j);
    return doomed.size();
}

void SocialGraph::set_edge(NodeId i, NodeId j, double weight, Step step) {
    check_pair(i, j);
    if (!(weight >= params_.w_min && weight <= 1.0)) {
        throw std::invalid_argument("edge weight must lie in [w_min, 1]");
    }
    if (EdgeState* e = find(i, j)) {
        *e = EdgeState{weight, step};
    } else {
        insert(i, j, EdgeState{weight, step});
    }
}

bool SocialGraph::remove_edge(NodeId i, NodeId j) {
    check_pair(i, j);
    if (!find(i, j)) return false;
    erase(i, j);
    return true;
}

std::vector<WeightedEdge> SocialGraph::edges() const {
    std::vector<WeightedEdge> out;
    out.reserve(edge_count_);
    for (NodeId i = 0; i < node_count(); ++i) {
        for (const auto& [j, e] : upper_[i]) out.push_back({i, j, e.weight});
    }
    return out;
}

}  // namespace socialucb
