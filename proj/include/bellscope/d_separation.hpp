#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "bellscope/causal_model.hpp"

namespace bellscope {

// Standard path-blocking criterion, via the reachable-set formulation: walk
// active trails out of X, where travel "down" (arriving from a parent) may
// bounce back up at a node that is conditioned on or has a conditioned
// descendant (collider opening), and travel "up" (arriving from a child, or
// starting) continues anywhere unless the node is conditioned.
inline bool d_separated(const CausalModel& m, const std::vector<std::size_t>& X,
                        const std::vector<std::size_t>& Y,
                        const std::vector<std::size_t>& Z) {
    std::size_t n = m.size();
    std::vector<bool> in_z(n, false), in_x(n, false);
    for (std::size_t z : Z) in_z[z] = true;
    for (std::size_t x : X) {
        if (in_z[x]) throw DomainError("d_separated: sets must be disjoint");
        in_x[x] = true;
    }
    for (std::size_t y : Y)
        if (in_z[y] || in_x[y]) throw DomainError("d_separated: sets must be disjoint");

    // Nodes that are in Z or have a descendant in Z.
    std::vector<bool> anc_z(n, false);
    {
        std::vector<std::size_t> stack(Z.begin(), Z.end());
        for (std::size_t z : Z) anc_z[z] = true;
        while (!stack.empty()) {
            std::size_t v = stack.back();
            stack.pop_back();
            for (std::size_t p : m.parents(v))
                if (!anc_z[p]) {
                    anc_z[p] = true;
                    stack.push_back(p);
                }
        }
    }

    std::vector<bool> in_y(n, false);
    for (std::size_t y : Y) in_y[y] = true;

    enum Dir { up, down }; // up: arrived from a child (or start); down: from a parent
    std::vector<std::vector<bool>> visited(n, std::vector<bool>(2, false));
    std::vector<std::pair<std::size_t, Dir>> stack;
    for (std::size_t x : X) stack.emplace_back(x, up);

    while (!stack.empty()) {
        auto [v, dir] = stack.back();
        stack.pop_back();
        if (visited[v][dir]) continue;
        visited[v][dir] = true;
        if (!in_z[v] && in_y[v]) return false;

        if (dir == up && !in_z[v]) {
            for (std::size_t p : m.parents(v)) stack.emplace_back(p, up);
            for (std::size_t c : m.children(v)) stack.emplace_back(c, down);
        } else if (dir == down) {
            if (!in_z[v])
                for (std::size_t c : m.children(v)) stack.emplace_back(c, down);
            if (anc_z[v])
                for (std::size_t p : m.parents(v)) stack.emplace_back(p, up);
        }
    }
    return true;
}

inline bool d_separated(const CausalModel& m, std::size_t x, std::size_t y,
                        const std::vector<std::size_t>& Z) {
    return d_separated(m, std::vector<std::size_t>{x}, std::vector<std::size_t>{y}, Z);
}

} // namespace bellscope
