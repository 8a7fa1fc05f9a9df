// SPDX-License-Identifier: Apache-2.0

#ifndef BWSTS_COUNTER_HPP
#define BWSTS_COUNTER_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bwsts/olts.hpp"
#include "bwsts/ordering.hpp"

namespace bwsts {

enum class CounterOp { Inc, Dec, Noop };

struct CounterTransition {
    StateId source = 0;
    CounterOp op = CounterOp::Noop;
    std::size_t counter = 0;              // ignored for Noop
    std::vector<std::size_t> zero_tests;  // sorted, duplicate free
    StateId target = 0;

    bool operator==(const CounterTransition&) const = default;
};

/// Minsky machine with zero tests attached to arbitrary transitions.
struct CounterMachine {
    std::string name;
    SymbolTable states;
    SymbolTable counters;
    std::vector<CounterTransition> transitions;
    StateId initial = 0;

    std::size_t dimension() const noexcept { return counters.size(); }
    bool has_zero_tests() const;

    /// Throws InputError when a transition references an unknown state or
    /// counter, or when the initial state is out of range.
    void validate() const;

    /// Action text of a transition, e.g. `inc(c)`, `zero(c)`, `dec(c)[zero:d]`.
    std::string label(Label t) const;
    std::string describe(const CounterConfig& x) const;
    CounterConfig initial_config() const;

    bool operator==(const CounterMachine&) const = default;
};

/// One step along transition `t`. Zero tests read the pre-state; a failing
/// zero test, a decrement of a zero counter, or a control mismatch all yield
/// nullopt ("disabled").
std::optional<CounterConfig> cm_step(const CounterMachine& machine, const CounterConfig& x, Label t);

/// Enabled successors in transition declaration order.
std::vector<Successor<CounterConfig>> cm_post(const CounterMachine& machine, const CounterConfig& x);

struct CmrzCheck {
    bool cmrz = true;
    /// Shortest violating transition sequence: a zero test on some counter
    /// followed (possibly immediately, possibly in the same transition) by an
    /// increment or decrement of that counter.
    std::vector<Label> witness;
};

/// Syntactic restricted-zero-test check over the control graph.
CmrzCheck is_cmrz(const CounterMachine& machine);

struct CounterRun {
    CounterConfig last;                   // final state, or the state where the run got stuck
    std::optional<std::size_t> stuck_at;  // index of the first disabled label
};

/// Folds cm_step over `labels`. Unknown labels raise InputError.
CounterRun cm_run(const CounterMachine& machine, const CounterConfig& x0, std::span<const Label> labels);

/// Ordered transition system with the component-wise order per control state.
Olts<CounterConfig> counter_olts(const CounterMachine& machine, const CounterConfig& x0);

}  // namespace bwsts

#endif  // BWSTS_COUNTER_HPP
