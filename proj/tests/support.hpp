#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "socialucb/fitness_metrics.hpp"
#include "socialucb/graph.hpp"
#include "socialucb/types.hpp"

namespace testsupport {

using namespace socialucb;

/// Scratch directory removed on scope exit.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static std::atomic<int> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("socialucb_" + tag + "_" + std::to_string(::getpid()) + "_" +
                 std::to_string(counter++));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

constexpr int kMaxOracleNodes = 12;
using AdjMatrix = std::array<std::array<bool, kMaxOracleNodes>, kMaxOracleNodes>;

/// Reference statistics computed from an adjacency matrix by exhaustive
/// enumeration: every vertex triple for triangles, transitive closure for
/// connectivity.
struct BruteStats {
    double avg_degree;
    double avg_clustering;
    std::size_t largest_component;
    std::size_t edge_count;
};

inline BruteStats brute_force_stats(int n, const AdjMatrix& adj) {
    std::size_t edges = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges += adj[i][j] ? 1 : 0;

    double clustering_sum = 0.0;
    for (int v = 0; v < n; ++v) {
        int deg = 0;
        for (int u = 0; u < n; ++u) deg += adj[v][u] ? 1 : 0;
        if (deg < 2) continue;
        int triangles = 0;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                if (adj[v][a] && adj[v][b] && adj[a][b]) ++triangles;
        const double pairs = static_cast<double>(deg) * static_cast<double>(deg - 1) / 2.0;
        clustering_sum += static_cast<double>(triangles) / pairs;
    }

    // Warshall closure; component size = number of nodes reachable from v.
    AdjMatrix reach = adj;
    for (int v = 0; v < n; ++v) reach[v][v] = true;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (reach[i][k] && reach[k][j]) reach[i][j] = true;
    std::size_t lcc = 0;
    for (int v = 0; v < n; ++v) {
        std::size_t size = 0;
        for (int u = 0; u < n; ++u) size += reach[v][u] ? 1 : 0;
        lcc = std::max(lcc, size);
    }

    return {2.0 * static_cast<double>(edges) / static_cast<double>(n),
            clustering_sum / static_cast<double>(n), lcc, edges};
}

/// Random graph on 2..12 nodes with a random density, as a SocialGraph and
/// as the matching adjacency matrix.
inline std::pair<SocialGraph, AdjMatrix> random_small_graph(Rng& rng) {
    std::uniform_int_distribution<int> size(2, kMaxOracleNodes);
    const int n = size(rng);
    const double density = uniform01(rng);
    SocialGraph g(n);
    AdjMatrix adj{};
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (uniform01(rng) < density) {
                g.set_edge(i, j, 0.5);
                adj[i][j] = adj[j][i] = true;
            }
        }
    }
    return {std::move(g), adj};
}

/// Deterministic 2-state, 2-action MDP: next_state[s][a], reward[s][a].
struct TinyMdp {
    int next_state[2][2];
    double reward[2][2];
};

/// Q* by value iteration to machine precision.
inline std::array<std::array<double, 2>, 2> value_iteration(const TinyMdp& m, double gamma) {
    std::array<std::array<double, 2>, 2> q{};
    for (int sweep = 0; sweep < 5000; ++sweep) {
        auto next = q;
        for (int s = 0; s < 2; ++s) {
            for (int a = 0; a < 2; ++a) {
                const int s2 = m.next_state[s][a];
                next[s][a] = m.reward[s][a] + gamma * std::max(q[s2][0], q[s2][1]);
            }
        }
        q = next;
    }
    return q;
}

}  // namespace testsupport
