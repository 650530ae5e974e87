#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "socialucb/types.hpp"

namespace socialucb {

enum class ActionKind : std::uint8_t { Explore, Exploit, Idle };

constexpr std::string_view to_string(ActionKind k) {
    switch (k) {
        case ActionKind::Explore: return "explore";
        case ActionKind::Exploit: return "exploit";
        case ActionKind::Idle: return "idle";
    }
    return "?";
}

/// Interact with `target`: Exploit for a current neighbor, Explore for a
/// non-neighbor. Idle is never carried by a SocialAction; an idle step is
/// an empty optional.
struct SocialAction {
    ActionKind kind;
    NodeId target;

    static constexpr SocialAction exploit(NodeId j) { return {ActionKind::Exploit, j}; }
    static constexpr SocialAction explore(NodeId j) { return {ActionKind::Explore, j}; }

    friend bool operator==(const SocialAction&, const SocialAction&) = default;
};

/// Actions available to one agent at one step.
struct ActionSet {
    std::vector<SocialAction> exploit;  // current neighbors, ascending id
    std::vector<SocialAction> explore;  // non-neighbor candidates

    bool empty() const { return exploit.empty() && explore.empty(); }
    std::size_t size() const { return exploit.size() + explore.size(); }

    /// Exploit actions followed by explore actions.
    std::vector<SocialAction> all() const {
        std::vector<SocialAction> out(exploit);
        out.insert(out.end(), explore.begin(), explore.end());
        return out;
    }
};

}  // namespace socialucb
