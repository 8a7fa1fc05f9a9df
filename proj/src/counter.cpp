// SPDX-License-Identifier: Apache-2.0

#include "bwsts/counter.hpp"

#include <algorithm>
#include <deque>
#include <memory>
#include <sstream>

#include "bwsts/error.hpp"

namespace bwsts {

bool CounterMachine::has_zero_tests() const {
    return std::any_of(transitions.begin(), transitions.end(),
                       [](const CounterTransition& t) { return !t.zero_tests.empty(); });
}

void CounterMachine::validate() const {
    if (states.size() == 0) throw InputError("counter machine has no control states");
    if (initial >= states.size()) throw InputError("initial control state out of range");
    for (std::size_t i = 0; i < transitions.size(); ++i) {
        const auto& t = transitions[i];
        if (t.source >= states.size() || t.target >= states.size())
            throw InputError("transition " + std::to_string(i) + " references an unknown state");
        if (t.op != CounterOp::Noop && t.counter >= dimension())
            throw InputError("transition " + std::to_string(i) + " references an unknown counter");
        for (auto c : t.zero_tests)
            if (c >= dimension())
                throw InputError("transition " + std::to_string(i) +
                                 " zero-tests an unknown counter");
    }
}

std::string CounterMachine::label(Label t) const {
    const auto& tr = transitions.at(t);
    std::string zero;
    for (std::size_t i = 0; i < tr.zero_tests.size(); ++i) {
        if (i) zero += ",";
        zero += counters.name(static_cast<std::uint32_t>(tr.zero_tests[i]));
    }
    switch (tr.op) {
        case CounterOp::Inc:
        case CounterOp::Dec: {
            std::string s = (tr.op == CounterOp::Inc ? "inc(" : "dec(") +
                            counters.name(static_cast<std::uint32_t>(tr.counter)) + ")";
            if (!zero.empty()) s += "[zero:" + zero + "]";
            return s;
        }
        case CounterOp::Noop:
            return zero.empty() ? "noop" : "zero(" + zero + ")";
    }
    return {};
}

std::string CounterMachine::describe(const CounterConfig& x) const {
    std::ostringstream os;
    os << "(" << states.name(static_cast<std::uint32_t>(x.control)) << ", (";
    for (std::size_t i = 0; i < x.values.size(); ++i) os << (i ? "," : "") << x.values[i];
    os << "))";
    return os.str();
}

CounterConfig CounterMachine::initial_config() const {
    return CounterConfig{initial, NatVec(dimension(), 0)};
}

std::optional<CounterConfig> cm_step(const CounterMachine& machine, const CounterConfig& x, Label t) {
    if (t >= machine.transitions.size())
        throw InputError("cm_step: unknown transition " + std::to_string(t));
    if (x.values.size() != machine.dimension())
        throw InputError("cm_step: valuation dimension does not match the machine");
    const auto& tr = machine.transitions[t];
    if (x.control != tr.source) return std::nullopt;
    for (auto c : tr.zero_tests)
        if (x.values[c] != 0) return std::nullopt;
    CounterConfig y{tr.target, x.values};
    switch (tr.op) {
        case CounterOp::Inc:
            ++y.values[tr.counter];
            break;
        case CounterOp::Dec:
            if (y.values[tr.counter] == 0) return std::nullopt;
            --y.values[tr.counter];
            break;
        case CounterOp::Noop:
            break;
    }
    return y;
}

std::vector<Successor<CounterConfig>> cm_post(const CounterMachine& machine, const CounterConfig& x) {
    std::vector<Successor<CounterConfig>> out;
    for (Label t = 0; t < machine.transitions.size(); ++t) {
        if (machine.transitions[t].source != x.control) continue;
        if (auto y = cm_step(machine, x, t)) out.push_back({t, std::move(*y)});
    }
    return out;
}

namespace {

bool touches(const CounterTransition& t, std::size_t c) {
    return t.op != CounterOp::Noop && t.counter == c;
}

// Shortest control-graph path from `from` ending with a transition that
// increments or decrements `c`.
std::optional<std::vector<Label>> shortest_touch(const CounterMachine& m, StateId from, std::size_t c) {
    std::vector<std::optional<Label>> via(m.states.size());
    std::vector<bool> seen(m.states.size(), false);
    std::deque<StateId> queue{from};
    seen[from] = true;
    while (!queue.empty()) {
        StateId s = queue.front();
        queue.pop_front();
        for (Label u = 0; u < m.transitions.size(); ++u) {
            const auto& tr = m.transitions[u];
            if (tr.source != s) continue;
            if (touches(tr, c)) {
                std::vector<Label> path{u};
                for (StateId cur = s; via[cur]; cur = m.transitions[*via[cur]].source)
                    path.push_back(*via[cur]);
                std::reverse(path.begin(), path.end());
                return path;
            }
            if (!seen[tr.target]) {
                seen[tr.target] = true;
                via[tr.target] = u;
                queue.push_back(tr.target);
            }
        }
    }
    return std::nullopt;
}

}  // namespace

CmrzCheck is_cmrz(const CounterMachine& machine) {
    CmrzCheck best;
    for (Label t = 0; t < machine.transitions.size(); ++t) {
        const auto& tr = machine.transitions[t];
        for (auto c : tr.zero_tests) {
            std::vector<Label> witness;
            if (touches(tr, c)) {
                witness = {t};
            } else if (auto tail = shortest_touch(machine, tr.target, c)) {
                witness.push_back(t);
                witness.insert(witness.end(), tail->begin(), tail->end());
            } else {
                continue;
            }
            if (best.cmrz || witness.size() < best.witness.size()) {
                best.cmrz = false;
                best.witness = std::move(witness);
            }
        }
    }
    return best;
}

CounterRun cm_run(const CounterMachine& machine, const CounterConfig& x0, std::span<const Label> labels) {
    CounterRun run{x0, std::nullopt};
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] >= machine.transitions.size())
            throw InputError("cm_run: unknown label at index " + std::to_string(i));
        auto y = cm_step(machine, run.last, labels[i]);
        if (!y) {
            run.stuck_at = i;
            return run;
        }
        run.last = std::move(*y);
    }
    return run;
}

Olts<CounterConfig> counter_olts(const CounterMachine& machine, const CounterConfig& x0) {
    auto m = std::make_shared<const CounterMachine>(machine);
    return Olts<CounterConfig>{
        x0,
        [m](const CounterConfig& x) { return cm_post(*m, x); },
        [m](const CounterConfig& x, Label t) { return cm_step(*m, x, t); },
        counter_order(),
        [m](const CounterConfig& x) { return m->describe(x); },
        [m](Label t) { return m->label(t); },
    };
}

}  // namespace bwsts
