// SPDX-License-Identifier: Apache-2.0

#ifndef BWSTS_OLTS_HPP
#define BWSTS_OLTS_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bwsts/error.hpp"
#include "bwsts/ordering.hpp"

namespace bwsts {

/// Labels are stable transition indices of the underlying machine.
using Label = std::size_t;

template <class State>
struct Successor {
    Label label;
    State state;
};

/// Quasi-ordered labelled transition system over an arbitrary state type.
///
/// `post` must return a finite list in a deterministic order; `step` replays
/// one label from an arbitrary state and returns nullopt when the label is
/// disabled there.
template <class State>
struct Olts {
    State initial;
    std::function<std::vector<Successor<State>>(const State&)> post;
    std::function<std::optional<State>(const State&, Label)> step;
    OrderRel<State> order;
    std::function<std::string(const State&)> describe_state;
    std::function<std::string(Label)> describe_label;
};

template <class State>
struct Replay {
    std::vector<State> visited;        // starting state included
    std::optional<std::size_t> stuck_at;  // index into the label sequence

    bool completed() const noexcept { return !stuck_at.has_value(); }
    const State& last() const { return visited.back(); }
};

template <class State>
Replay<State> replay(const Olts<State>& system, const State& from, std::span<const Label> labels) {
    Replay<State> r;
    r.visited.push_back(from);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        auto next = system.step(r.visited.back(), labels[i]);
        if (!next) {
            r.stuck_at = i;
            return r;
        }
        r.visited.push_back(std::move(*next));
    }
    return r;
}

/// Greedy left-to-right selection of pairwise incomparable states visited by
/// `run` from the initial state. A state is kept when it is incomparable with
/// every state kept so far. Fewer than two kept states is not a witness, so an
/// empty list is returned in that case.
template <class State>
std::vector<State> find_antichain_on_run(const Olts<State>& system, std::span<const Label> run,
                                         std::size_t limit) {
    auto r = replay(system, system.initial, run);
    if (!r.completed())
        throw InputError("find_antichain_on_run: run is not executable (stuck at label " +
                         std::to_string(*r.stuck_at) + ")");
    std::vector<State> kept;
    for (const auto& x : r.visited) {
        if (kept.size() >= limit) break;
        bool incomparable = true;
        for (const auto& k : kept) {
            if (system.order.comparable(k, x)) {
                incomparable = false;
                break;
            }
        }
        if (incomparable) kept.push_back(x);
    }
    if (kept.size() < 2) kept.clear();
    return kept;
}

}  // namespace bwsts

#endif  // BWSTS_OLTS_HPP
