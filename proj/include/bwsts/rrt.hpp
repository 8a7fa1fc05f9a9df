// SPDX-License-Identifier: Apache-2.0

#ifndef BWSTS_RRT_HPP
#define BWSTS_RRT_HPP

#include <algorithm>
#include <cstddef>
#include <deque>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "bwsts/error.hpp"
#include "bwsts/fifo.hpp"
#include "bwsts/olts.hpp"

namespace bwsts {

enum class Mark { Live, Dead };

template <class State>
struct RrtNode {
    std::size_t id = 0;
    State state;
    std::optional<std::size_t> parent;
    std::optional<Label> label;  // incoming label
    Mark mark = Mark::Live;
    bool expanded = false;  // false only for frontier nodes of an exhausted tree
    std::optional<std::size_t> subsumed_by;
    bool iterable = false;
    std::optional<State> iterate_target;  // state reached by replaying the loop once more
    std::vector<std::size_t> children;
    std::size_t depth = 0;
};

/// Reduced reachability tree. Node ids are BFS order; node 0 is the root.
template <class State>
struct Rrt {
    std::vector<RrtNode<State>> nodes;
    bool budget_exhausted = false;
    std::size_t budget = 0;

    const RrtNode<State>& root() const { return nodes.front(); }
    std::size_t size() const noexcept { return nodes.size(); }

    /// Labels on the tree path from `ancestor` (exclusive) down to `node`.
    std::vector<Label> segment(std::size_t ancestor, std::size_t node) const {
        std::vector<Label> out;
        std::size_t cur = node;
        while (cur != ancestor) {
            const auto& n = nodes.at(cur);
            if (!n.parent) throw InputError("segment: not an ancestor");
            out.push_back(*n.label);
            cur = *n.parent;
        }
        std::reverse(out.begin(), out.end());
        return out;
    }

    std::vector<Label> path_labels(std::size_t node) const { return segment(0, node); }

    /// Strict ancestors of `node`, root first.
    std::vector<std::size_t> ancestors(std::size_t node) const {
        std::vector<std::size_t> chain;
        for (auto p = nodes.at(node).parent; p; p = nodes[*p].parent) chain.push_back(*p);
        std::reverse(chain.begin(), chain.end());
        return chain;
    }
};

/// Breadth-first construction. A new node whose state dominates the state
/// of a strict ancestor is dead and records the closest-to-root such ancestor;
/// a node without successors is dead and unsubsumed. Construction stops
/// (budget_exhausted) as soon as expanding a node would exceed `budget` nodes.
template <class State>
Rrt<State> build_rrt(const Olts<State>& system, std::size_t budget) {
    if (budget < 1) throw InputError("build_rrt: budget must be at least 1");
    Rrt<State> tree;
    tree.budget = budget;
    RrtNode<State> root;
    root.state = system.initial;
    tree.nodes.push_back(std::move(root));

    std::deque<std::size_t> frontier{0};
    while (!frontier.empty()) {
        const std::size_t id = frontier.front();
        auto succ = system.post(tree.nodes[id].state);
        if (succ.empty()) {
            tree.nodes[id].mark = Mark::Dead;
            tree.nodes[id].expanded = true;
            frontier.pop_front();
            continue;
        }
        if (tree.nodes.size() + succ.size() > budget) {
            tree.budget_exhausted = true;
            break;
        }
        frontier.pop_front();
        tree.nodes[id].expanded = true;
        auto chain = tree.ancestors(id);
        chain.push_back(id);
        for (auto& s : succ) {
            RrtNode<State> child;
            child.id = tree.nodes.size();
            child.parent = id;
            child.label = s.label;
            child.depth = tree.nodes[id].depth + 1;
            for (auto a : chain) {
                if (system.order.leq(tree.nodes[a].state, s.state)) {
                    child.subsumed_by = a;
                    child.mark = Mark::Dead;
                    child.expanded = true;
                    break;
                }
            }
            child.state = std::move(s.state);
            tree.nodes[id].children.push_back(child.id);
            if (!child.subsumed_by) frontier.push_back(child.id);
            tree.nodes.push_back(std::move(child));
        }
    }
    return tree;
}

/// build_rrt plus iterable marks: a subsumed node is iterable when the label
/// segment from its subsumer replays from the node's own state and ends in a
/// state at least as large.
template <class State>
Rrt<State> build_lrrt(const Olts<State>& system, std::size_t budget) {
    auto tree = build_rrt(system, budget);
    for (auto& n : tree.nodes) {
        if (!n.subsumed_by) continue;
        auto sigma = tree.segment(*n.subsumed_by, n.id);
        try {
            auto r = replay(system, n.state, sigma);
            if (r.completed() && system.order.leq(n.state, r.last())) {
                n.iterable = true;
                n.iterate_target = r.last();
            }
        } catch (const InputError&) {
            // replay failures only mean "not iterable"
        }
    }
    return tree;
}

enum class Outcome { Positive, Negative, Inconclusive };

struct Verdict {
    Outcome outcome = Outcome::Inconclusive;
    /// (ancestor, descendant) node ids.
    std::optional<std::pair<std::size_t, std::size_t>> witness;
    std::size_t budget_used = 0;
    std::size_t budget = 0;
    /// Set when the verdict relies on a property the caller did not assert.
    bool caveat = false;
};

/// Positive means unbounded: some node strictly dominates one of its
/// ancestors. Requires a partial order; every subsumption pair is spot-checked
/// for antisymmetry.
template <class State>
Verdict decide_boundedness(const Rrt<State>& tree, const OrderRel<State>& order,
                           bool strict_monotone_asserted = false) {
    if (!order.is_partial())
        throw ContractError("decide_boundedness: the order must be declared partial");
    for (const auto& n : tree.nodes) {
        if (!n.subsumed_by) continue;
        const auto& a = tree.nodes[*n.subsumed_by];
        if (order.leq(n.state, a.state) && !order.equal(n.state, a.state))
            throw ContractError("decide_boundedness: order is not antisymmetric on nodes " +
                                std::to_string(a.id) + " and " + std::to_string(n.id));
    }
    Verdict v;
    v.budget = tree.budget;
    v.budget_used = tree.size();
    v.caveat = !strict_monotone_asserted;
    for (const auto& n : tree.nodes) {
        for (auto a : tree.ancestors(n.id)) {
            if (order.strictly_less(tree.nodes[a].state, n.state)) {
                v.outcome = Outcome::Positive;
                v.witness = {a, n.id};
                return v;
            }
        }
    }
    v.outcome = tree.budget_exhausted ? Outcome::Inconclusive : Outcome::Negative;
    return v;
}

/// Positive means non-terminating: the tree has a subsumed node.
template <class State>
Verdict decide_nontermination(const Rrt<State>& tree) {
    Verdict v;
    v.budget = tree.budget;
    v.budget_used = tree.size();
    for (const auto& n : tree.nodes) {
        if (n.subsumed_by) {
            v.outcome = Outcome::Positive;
            v.witness = {*n.subsumed_by, n.id};
            return v;
        }
    }
    v.outcome = tree.budget_exhausted ? Outcome::Inconclusive : Outcome::Negative;
    return v;
}

/// Sufficient condition only: never answers Negative.
template <class State>
Verdict decide_nonterm_by_iterable(const Rrt<State>& tree) {
    Verdict v;
    v.budget = tree.budget;
    v.budget_used = tree.size();
    for (const auto& n : tree.nodes) {
        if (n.iterable) {
            v.outcome = Outcome::Positive;
            v.witness = {*n.subsumed_by, n.id};
            return v;
        }
    }
    v.outcome = Outcome::Inconclusive;
    return v;
}

/// Infinite iterability of the loop `sigma` from `x` on a FIFO machine: for
/// every channel either nothing is received, or the loop does not shrink the
/// channel and x_c . send^ω equals recv^ω. False when `sigma` is not a
/// fireable loop on x's control state.
bool check_fifo_infinite_iterability(const FifoMachine& machine, const FifoConfig& x,
                                     std::span<const Label> sigma);

/// u . s^ω == r^ω, decided on a prefix long enough for both eventually
/// periodic words (|u| + |s||r| + |s| + |r|). Requires non-empty s and r.
bool omega_words_equal(std::span<const Letter> u, std::span<const Letter> s, std::span<const Letter> r);

/// Deterministic DOT rendering: nodes n0, n1, ... in BFS order, dead nodes
/// filled grey, subsumption as dashed back-edges, iterable nodes
/// double-bordered.
template <class State>
std::string export_dot(const Rrt<State>& tree, const Olts<State>& system) {
    auto escape = [](const std::string& s) {
        std::string out;
        for (char c : s) {
            if (c == '"' || c == '\\') out += '\\';
            out += c;
        }
        return out;
    };
    std::ostringstream os;
    os << "digraph rrt {\n";
    os << "  node [shape=box, fontname=\"monospace\"];\n";
    for (const auto& n : tree.nodes) {
        os << "  n" << n.id << " [label=\"" << escape(system.describe_state(n.state)) << "\"";
        if (n.mark == Mark::Dead) os << ", style=filled, fillcolor=lightgrey";
        if (n.iterable) os << ", peripheries=2";
        if (!n.expanded) os << ", style=dotted";
        os << "];\n";
    }
    for (const auto& n : tree.nodes)
        if (n.parent)
            os << "  n" << *n.parent << " -> n" << n.id << " [label=\""
               << escape(system.describe_label(*n.label)) << "\"];\n";
    for (const auto& n : tree.nodes)
        if (n.subsumed_by)
            os << "  n" << n.id << " -> n" << *n.subsumed_by
               << " [style=dashed, constraint=false, label=\"subsumed\"];\n";
    os << "}\n";
    return os.str();
}

}  // namespace bwsts

#endif  // BWSTS_RRT_HPP
