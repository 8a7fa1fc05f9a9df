// SPDX-License-Identifier: Apache-2.0

// Independent reference implementations used by the tests: explicit-state
// exploration, brute-force set denotations and random machine generators.
// Nothing here calls the algorithms under test.

#ifndef BWSTS_TEST_ORACLES_HPP
#define BWSTS_TEST_ORACLES_HPP

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "bwsts/counter.hpp"
#include "bwsts/cover.hpp"
#include "bwsts/fifo.hpp"

namespace oracle {

using bwsts::CounterConfig;
using bwsts::CounterMachine;
using bwsts::CounterOp;
using bwsts::CounterTransition;

inline std::string models_dir() { return BWSTS_MODELS_DIR; }

// Direct semantics, written independently of cm_step.
inline std::vector<std::pair<std::size_t, CounterConfig>> successors(const CounterMachine& m, const CounterConfig& x) {
    std::vector<std::pair<std::size_t, CounterConfig>> out;
    for (std::size_t i = 0; i < m.transitions.size(); ++i) {
        const auto& t = m.transitions[i];
        if (t.source != x.control) continue;
        bool ok = true;
        for (auto z : t.zero_tests) ok = ok && x.values[z] == 0;
        if (!ok) continue;
        auto v = x.values;
        if (t.op == CounterOp::Inc) v[t.counter] += 1;
        if (t.op == CounterOp::Dec) {
            if (v[t.counter] == 0) continue;
            v[t.counter] -= 1;
        }
        out.push_back({i, CounterConfig{t.target, v}});
    }
    return out;
}

inline bool geq(const CounterConfig& x, const CounterConfig& y) {
    if (x.control != y.control) return false;
    for (std::size_t i = 0; i < x.values.size(); ++i)
        if (x.values[i] < y.values[i]) return false;
    return true;
}

struct Exploration {
    std::set<CounterConfig> states;
    std::map<CounterConfig, std::vector<CounterConfig>> edges;
    bool truncated = false;  // some state was not expanded because of a cap
};

// BFS; states with an entry above value_cap are recorded but not expanded.
inline Exploration explore(const CounterMachine& m, const CounterConfig& x0, std::uint64_t value_cap,
                           std::size_t state_cap = 200000) {
    Exploration e;
    std::deque<CounterConfig> q{x0};
    e.states.insert(x0);
    while (!q.empty()) {
        auto x = q.front();
        q.pop_front();
        if (std::any_of(x.values.begin(), x.values.end(), [&](auto v) { return v > value_cap; })) {
            e.truncated = true;
            continue;
        }
        auto& out = e.edges[x];
        for (auto& [t, y] : successors(m, x)) {
            out.push_back(y);
            if (e.states.count(y)) continue;
            if (e.states.size() >= state_cap) {
                e.truncated = true;
                continue;
            }
            e.states.insert(y);
            q.push_back(y);
        }
    }
    return e;
}

enum class Answer { Yes, No, Unknown };

// Coverability by capped BFS: Yes when a covering state is found, No when the
// exploration was complete.
inline Answer cover_oracle(const CounterMachine& m, const CounterConfig& x0, const CounterConfig& y,
                           std::uint64_t value_cap) {
    auto e = explore(m, x0, value_cap);
    for (const auto& x : e.states)
        if (geq(x, y)) return Answer::Yes;
    return e.truncated ? Answer::Unknown : Answer::No;
}

// Shortest label run from x0 to a state covering y (BFS, no cap).
inline std::optional<std::vector<std::size_t>> shortest_cover_run(const CounterMachine& m, const CounterConfig& x0,
                                                                  const CounterConfig& y, std::size_t max_states) {
    std::map<CounterConfig, std::pair<CounterConfig, std::size_t>> parent;
    std::set<CounterConfig> seen{x0};
    std::deque<CounterConfig> q{x0};
    while (!q.empty() && seen.size() < max_states) {
        auto x = q.front();
        q.pop_front();
        if (geq(x, y)) {
            std::vector<std::size_t> run;
            while (x != x0) {
                auto [p, t] = parent.at(x);
                run.push_back(t);
                x = p;
            }
            std::reverse(run.begin(), run.end());
            return run;
        }
        for (auto& [t, z] : successors(m, x))
            if (seen.insert(z).second) {
                parent.emplace(z, std::pair{x, t});
                q.push_back(z);
            }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Random machines

inline CounterMachine random_counter_machine(std::mt19937_64& rng, bool allow_zero_tests, std::size_t max_states = 4,
                                             std::size_t max_counters = 2, std::size_t max_transitions = 7) {
    auto pick = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };
    CounterMachine m;
    m.name = "random";
    const auto nq = pick(1, max_states);
    const auto nc = pick(1, max_counters);
    for (std::size_t i = 0; i < nq; ++i) m.states.intern("q" + std::to_string(i));
    for (std::size_t i = 0; i < nc; ++i) m.counters.intern("c" + std::to_string(i));
    const auto nt = pick(1, max_transitions);
    for (std::size_t i = 0; i < nt; ++i) {
        CounterTransition t;
        t.source = pick(0, nq - 1);
        t.target = pick(0, nq - 1);
        t.op = static_cast<CounterOp>(pick(0, 2));
        t.counter = t.op == CounterOp::Noop ? 0 : pick(0, nc - 1);
        if (allow_zero_tests && pick(0, 3) == 0) t.zero_tests.push_back(pick(0, nc - 1));
        m.transitions.push_back(std::move(t));
    }
    return m;
}

inline CounterConfig random_config(std::mt19937_64& rng, const CounterMachine& m, std::uint64_t max_value) {
    CounterConfig x{std::uniform_int_distribution<std::size_t>(0, m.states.size() - 1)(rng), {}};
    for (std::size_t i = 0; i < m.dimension(); ++i)
        x.values.push_back(std::uniform_int_distribution<std::uint64_t>(0, max_value)(rng));
    return x;
}

// Control-graph check written directly from the definition: no path
// (including a single transition) that zero-tests c and later modifies c.
inline bool cmrz_by_paths(const CounterMachine& m) {
    for (std::size_t i = 0; i < m.transitions.size(); ++i) {
        for (auto c : m.transitions[i].zero_tests) {
            const auto& t0 = m.transitions[i];
            if (t0.op != CounterOp::Noop && t0.counter == c) return false;
            std::set<std::size_t> reach{t0.target};
            std::deque<std::size_t> q{t0.target};
            while (!q.empty()) {
                auto s = q.front();
                q.pop_front();
                for (const auto& t : m.transitions) {
                    if (t.source != s) continue;
                    if (t.op != CounterOp::Noop && t.counter == c) return false;
                    if (reach.insert(t.target).second) q.push_back(t.target);
                }
            }
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Ideals by brute force

inline bool in_ideal_brute(const bwsts::Ideal& i, const CounterConfig& x) {
    if (i.control != x.control) return false;
    for (std::size_t k = 0; k < x.values.size(); ++k)
        if (i.bound[k] != bwsts::kOmega && x.values[k] > i.bound[k]) return false;
    return true;
}

// All configs over `states` x [0, cap]^dim.
inline std::vector<CounterConfig> grid(std::size_t states, std::size_t dim, std::uint64_t cap) {
    std::vector<CounterConfig> out;
    for (std::size_t q = 0; q < states; ++q) {
        std::vector<std::uint64_t> v(dim, 0);
        while (true) {
            out.push_back(CounterConfig{q, v});
            std::size_t i = 0;
            for (; i < dim; ++i) {
                if (v[i] < cap) {
                    ++v[i];
                    break;
                }
                v[i] = 0;
            }
            if (i == dim) break;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// FIFO helpers

inline bwsts::FifoMachine random_fifo_machine(std::mt19937_64& rng, std::size_t max_states = 3,
                                              std::size_t max_transitions = 5) {
    auto pick = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };
    bwsts::FifoMachine m;
    m.name = "random";
    const auto nq = pick(1, max_states);
    for (std::size_t i = 0; i < nq; ++i) m.states.intern("q" + std::to_string(i));
    m.channels.intern("c");
    m.alphabet.intern("a");
    m.alphabet.intern("b");
    const auto nt = pick(1, max_transitions);
    for (std::size_t i = 0; i < nt; ++i) {
        bwsts::FifoTransition t;
        t.source = pick(0, nq - 1);
        t.target = pick(0, nq - 1);
        t.action = {0, pick(0, 1) ? bwsts::Direction::Send : bwsts::Direction::Recv,
                    static_cast<bwsts::Letter>(pick(0, 1))};
        m.transitions.push_back(t);
    }
    return m;
}

// Is `w` a prefix of some word in w_1^* ... w_n^*? Exhaustive search over
// concatenations, independent of the position trackers.
inline bool in_prefix_closure(const std::vector<std::vector<bwsts::Letter>>& blocks, const std::vector<bwsts::Letter>& w) {
    std::function<bool(std::size_t, std::size_t)> go = [&](std::size_t block, std::size_t pos) -> bool {
        if (pos == w.size()) return true;
        for (std::size_t b = block; b < blocks.size(); ++b) {
            const auto& word = blocks[b];
            std::size_t k = 0;
            while (k < word.size() && pos + k < w.size() && word[k] == w[pos + k]) ++k;
            if (pos + k == w.size()) return true;
            if (k == word.size() && go(b, pos + k)) return true;
        }
        return false;
    };
    return go(0, 0);
}

inline bool in_language(const std::vector<std::vector<bwsts::Letter>>& blocks, const std::vector<bwsts::Letter>& w) {
    std::function<bool(std::size_t, std::size_t)> go = [&](std::size_t block, std::size_t pos) -> bool {
        if (pos == w.size()) return true;
        for (std::size_t b = block; b < blocks.size(); ++b) {
            const auto& word = blocks[b];
            if (pos + word.size() > w.size()) continue;
            if (std::equal(word.begin(), word.end(), w.begin() + static_cast<std::ptrdiff_t>(pos)) && go(b, pos + word.size()))
                return true;
        }
        return false;
    };
    return go(0, 0);
}

}  // namespace oracle

#endif  // BWSTS_TEST_ORACLES_HPP
