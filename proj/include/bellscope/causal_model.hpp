#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "bellscope/errors.hpp"
#include "bellscope/spacetime.hpp"

namespace bellscope {

// Finite causal model: a DAG over spacetime events with conditional
// probability tables. Nodes normally carry their own CPT; a joint block lets
// several parentally-entangled nodes share one table. Blocks are how purely
// operational theories enter the library: the graph states the claimed causal
// structure while the block carries correlations the graph does not explain,
// so such models deliberately break the causal Markov condition. All the
// principle checks consume the joint distribution and the graph separately
// and remain meaningful either way.
class CausalModel {
public:
    std::size_t add_event(const std::string& label, EventKind kind, double t, double x,
                          std::size_t arity) {
        if (arity < 1) throw DomainError("causal model: arity must be >= 1");
        if (index_.count(label)) throw DomainError("causal model: duplicate label " + label);
        index_[label] = events_.size();
        events_.push_back(SpacetimeEvent{label, t, x, kind});
        arity_.push_back(arity);
        return events_.size() - 1;
    }

    void add_edge(const std::string& cause, const std::string& effect) {
        std::size_t u = at(cause), v = at(effect);
        if (u == v) throw DomainError("causal model: self-loop on " + cause);
        for (auto [a, b] : edges_)
            if (a == u && b == v) return;
        if (has_directed_path(v, u))
            throw DomainError("causal model: edge " + cause + " -> " + effect +
                              " creates a cycle");
        edges_.emplace_back(u, v);
    }

    // CPT rows for one node (or one joint block of nodes). Rows are indexed by
    // the parent assignment in mixed radix, first parent slowest; each row is
    // a distribution over the member assignment, first member slowest.
    void set_cpt(const std::vector<std::string>& members, std::vector<double> table,
                 double tol = 1e-9) {
        std::vector<std::size_t> mem;
        for (const auto& l : members) mem.push_back(at(l));
        std::sort(mem.begin(), mem.end());
        for (std::size_t i = 0; i + 1 < mem.size(); ++i)
            if (mem[i] == mem[i + 1]) throw DomainError("cpt: duplicate member");
        for (std::size_t u : mem)
            for (std::size_t v : mem)
                if (u != v && has_edge(u, v))
                    throw DomainError("cpt: block members must not be linked by an edge");
        std::vector<std::size_t> par = block_parents(mem);
        std::size_t rows = count_assignments(par);
        std::size_t width = count_assignments(mem);
        if (table.size() != rows * width)
            throw DomainError("cpt for " + join(members) + ": expected " +
                              std::to_string(rows * width) + " entries, got " +
                              std::to_string(table.size()));
        for (std::size_t r = 0; r < rows; ++r) {
            double sum = 0;
            for (std::size_t k = 0; k < width; ++k) {
                double p = table[r * width + k];
                if (!std::isfinite(p) || p < -tol || p > 1 + tol)
                    throw NonNormalized("cpt for " + join(members) + ": entry outside [0,1]");
                sum += p;
            }
            if (std::fabs(sum - 1.0) > tol)
                throw NonNormalized("cpt for " + join(members) + ": row " + std::to_string(r) +
                                    " sums to " + std::to_string(sum));
        }
        // Replace any previous assignment covering these members.
        for (std::size_t m : mem) {
            auto it = block_of_.find(m);
            if (it == block_of_.end()) continue;
            Block& old = blocks_[it->second];
            old.active = false;
            for (std::size_t other : old.members) block_of_.erase(other);
        }
        Block blk;
        blk.members = mem;
        blk.parents = par;
        blk.table = std::move(table);
        blk.active = true;
        for (std::size_t m : mem) block_of_[m] = blocks_.size();
        blocks_.push_back(std::move(blk));
    }

    std::size_t size() const { return events_.size(); }
    const std::vector<SpacetimeEvent>& events() const { return events_; }
    const SpacetimeEvent& event(std::size_t i) const { return events_[i]; }
    std::size_t arity(std::size_t i) const { return arity_[i]; }
    const std::vector<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }

    std::size_t at(const std::string& label) const {
        auto it = index_.find(label);
        if (it == index_.end()) throw DomainError("causal model: unknown label " + label);
        return it->second;
    }
    bool has_label(const std::string& label) const { return index_.count(label) > 0; }

    bool has_edge(std::size_t u, std::size_t v) const {
        for (auto [a, b] : edges_)
            if (a == u && b == v) return true;
        return false;
    }

    std::vector<std::size_t> parents(std::size_t v) const {
        std::vector<std::size_t> out;
        for (auto [a, b] : edges_)
            if (b == v) out.push_back(a);
        std::sort(out.begin(), out.end());
        return out;
    }

    std::vector<std::size_t> children(std::size_t v) const {
        std::vector<std::size_t> out;
        for (auto [a, b] : edges_)
            if (a == v) out.push_back(b);
        std::sort(out.begin(), out.end());
        return out;
    }

    // Proper ancestors/descendants (excluding the node itself).
    std::vector<bool> ancestors(std::size_t v) const { return reach(v, false); }
    std::vector<bool> descendants(std::size_t v) const { return reach(v, true); }

    bool has_directed_path(std::size_t u, std::size_t v) const {
        if (u == v) return true;
        return reach(u, true)[v];
    }

    std::vector<std::size_t> common_ancestors(std::size_t i, std::size_t j) const {
        std::vector<bool> ai = ancestors(i), aj = ancestors(j);
        std::vector<std::size_t> out;
        for (std::size_t k = 0; k < size(); ++k)
            if (ai[k] && aj[k]) out.push_back(k);
        return out;
    }

    std::vector<std::size_t> free_choices() const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < size(); ++i)
            if (events_[i].kind == EventKind::free_choice) out.push_back(i);
        return out;
    }

    // A free choice with parents is legal but flags the model.
    bool superdeterministic_candidate() const {
        for (std::size_t c : free_choices())
            if (!parents(c).empty()) return true;
        return false;
    }

    struct Block {
        std::vector<std::size_t> members;
        std::vector<std::size_t> parents;
        std::vector<double> table;
        bool active = false;
    };

    // Active blocks covering every node, singletons for nodes given plain
    // CPTs. Throws MissingCpt when a node has no table.
    std::vector<const Block*> factorization() const {
        std::vector<const Block*> out;
        std::vector<bool> seen(size(), false);
        for (const Block& b : blocks_) {
            if (!b.active) continue;
            out.push_back(&b);
            for (std::size_t m : b.members) seen[m] = true;
        }
        for (std::size_t i = 0; i < size(); ++i)
            if (!seen[i]) throw MissingCpt("causal model: no cpt for " + events_[i].label);
        return out;
    }

    std::size_t count_assignments(const std::vector<std::size_t>& nodes) const {
        std::size_t n = 1;
        for (std::size_t v : nodes) n *= arity_[v];
        return n;
    }

private:
    static std::string join(const std::vector<std::string>& v) {
        std::string s;
        for (const auto& x : v) s += (s.empty() ? "" : ",") + x;
        return s;
    }

    std::vector<bool> reach(std::size_t v, bool forward) const {
        std::vector<bool> mark(size(), false);
        std::vector<std::size_t> stack{v};
        while (!stack.empty()) {
            std::size_t u = stack.back();
            stack.pop_back();
            for (auto [a, b] : edges_) {
                std::size_t from = forward ? a : b, to = forward ? b : a;
                if (from == u && !mark[to]) {
                    mark[to] = true;
                    stack.push_back(to);
                }
            }
        }
        mark[v] = false;
        return mark;
    }

    std::vector<std::size_t> block_parents(const std::vector<std::size_t>& mem) const {
        std::vector<std::size_t> par;
        for (std::size_t m : mem)
            for (std::size_t p : parents(m))
                if (std::find(mem.begin(), mem.end(), p) == mem.end() &&
                    std::find(par.begin(), par.end(), p) == par.end())
                    par.push_back(p);
        std::sort(par.begin(), par.end());
        return par;
    }

    std::vector<SpacetimeEvent> events_;
    std::vector<std::size_t> arity_;
    std::vector<std::pair<std::size_t, std::size_t>> edges_;
    std::vector<Block> blocks_;
    std::map<std::string, std::size_t> index_;
    std::map<std::size_t, std::size_t> block_of_; // node -> active block index
};

// Full joint table over all nodes, mixed radix with node 0 slowest. Product
// of block CPT entries per assignment.
struct JointDistribution {
    std::vector<std::size_t> arity;
    std::vector<double> p;

    std::size_t states() const { return p.size(); }

    std::size_t value_of(std::size_t flat, std::size_t node) const {
        std::size_t radix = 1;
        for (std::size_t k = node + 1; k < arity.size(); ++k) radix *= arity[k];
        return (flat / radix) % arity[node];
    }
};

inline JointDistribution joint_distribution(const CausalModel& m, std::size_t cap = 10000000) {
    std::size_t states = 1;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (states > cap / std::max<std::size_t>(m.arity(i), 1))
            throw CapExceeded("joint_distribution: state space exceeds cap");
        states *= m.arity(i);
    }
    auto blocks = m.factorization();
    JointDistribution jd;
    jd.arity.resize(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) jd.arity[i] = m.arity(i);
    jd.p.assign(states, 1.0);

    std::vector<std::size_t> value(m.size(), 0);
    for (std::size_t flat = 0; flat < states; ++flat) {
        std::size_t rem = flat;
        for (std::size_t i = m.size(); i > 0; --i) {
            value[i - 1] = rem % m.arity(i - 1);
            rem /= m.arity(i - 1);
        }
        double prob = 1.0;
        for (const CausalModel::Block* b : blocks) {
            std::size_t row = 0;
            for (std::size_t pnode : b->parents) row = row * m.arity(pnode) + value[pnode];
            std::size_t col = 0;
            for (std::size_t mnode : b->members) col = col * m.arity(mnode) + value[mnode];
            std::size_t width = 1;
            for (std::size_t mnode : b->members) width *= m.arity(mnode);
            prob *= b->table[row * width + col];
        }
        jd.p[flat] = prob;
    }
    return jd;
}

} // namespace bellscope
