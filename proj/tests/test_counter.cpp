// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>

#include "bwsts/counter.hpp"
#include "bwsts/error.hpp"
#include "support/machines.hpp"
#include "support/oracles.hpp"

using namespace bwsts;
using machines::cc;

TEST_CASE("counter steps: inc, dec, underflow, zero tests read the pre-state") {
    auto m = machines::counter_machine("t", {"p", "q"}, {"x", "y"});
    m.transitions = {machines::ct(0, CounterOp::Inc, 0, 1), machines::ct(0, CounterOp::Dec, 1, 1),
                     machines::ct(0, CounterOp::Inc, 0, 1, {0}), machines::ct(0, CounterOp::Dec, 0, 0, {0})};
    CHECK(cm_step(m, cc(0, {0, 0}), 0) == cc(1, {1, 0}));
    CHECK_FALSE(cm_step(m, cc(0, {0, 0}), 1).has_value());  // underflow is disabled
    CHECK(cm_step(m, cc(0, {0, 2}), 1) == cc(1, {0, 1}));
    CHECK(cm_step(m, cc(0, {0, 5}), 2) == cc(1, {1, 5}));  // test on x before incrementing x
    CHECK_FALSE(cm_step(m, cc(0, {1, 0}), 2).has_value());
    CHECK_FALSE(cm_step(m, cc(0, {0, 0}), 3).has_value());  // test passes, then dec underflows
    CHECK_FALSE(cm_step(m, cc(1, {0, 0}), 0).has_value());  // control mismatch
    CHECK_THROWS_AS(cm_step(m, cc(0, {0, 0}), 9), InputError);
    CHECK_THROWS_AS(cm_step(m, cc(0, {0}), 0), InputError);
}

TEST_CASE("cm_post lists enabled successors in declaration order") {
    auto m = machines::m8();
    auto post = cm_post(m, cc(0, {0}));
    REQUIRE(post.size() == 1);
    CHECK(post[0].label == 0);
    CHECK(post[0].state == cc(2, {1}));
    post = cm_post(m, cc(0, {1}));
    REQUIRE(post.size() == 2);
    CHECK(post[0].state == cc(2, {2}));
    CHECK(post[1].state == cc(1, {0}));
}

TEST_CASE("cm_post agrees with direct semantics on random machines") {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 200; ++i) {
        auto m = oracle::random_counter_machine(rng, true);
        auto x = oracle::random_config(rng, m, 3);
        auto got = cm_post(m, x);
        auto want = oracle::successors(m, x);
        REQUIRE(got.size() == want.size());
        for (std::size_t k = 0; k < got.size(); ++k) {
            CHECK(got[k].label == want[k].first);
            CHECK(got[k].state == want[k].second);
            CHECK(cm_step(m, x, got[k].label) == got[k].state);
        }
    }
}

TEST_CASE("cm_run stops at the first disabled label") {
    auto m = machines::m8();
    auto r = cm_run(m, cc(0, {1}), std::vector<Label>{1, 2, 3, 2});
    REQUIRE(r.stuck_at.has_value());
    CHECK(*r.stuck_at == 3);
    CHECK(r.last == cc(1, {1}));
    CHECK_THROWS_AS(cm_run(m, cc(0, {1}), std::vector<Label>{7}), InputError);
}

TEST_CASE("labels and state rendering") {
    auto m = machines::m8();
    CHECK(m.label(0) == "inc(c)");
    CHECK(m.label(1) == "dec(c)");
    CHECK(m.label(2) == "zero(c)");
    CHECK(m.describe(cc(2, {3})) == "(q2, (3))");
    auto n = machines::counter_machine("t", {"p"}, {"x", "y"});
    n.transitions = {machines::ct(0, CounterOp::Inc, 0, 0, {1}), machines::ct(0, CounterOp::Noop, 0, 0)};
    CHECK(n.label(0) == "inc(x)[zero:y]");
    CHECK(n.label(1) == "noop");
}

TEST_CASE("validation rejects dangling references") {
    auto m = machines::m8();
    m.transitions.push_back(machines::ct(0, CounterOp::Inc, 4, 1));
    CHECK_THROWS_AS(m.validate(), InputError);
    auto n = machines::m8();
    n.transitions.push_back(machines::ct(0, CounterOp::Inc, 0, 9));
    CHECK_THROWS_AS(n.validate(), InputError);
}

TEST_CASE("CMRZ: reference machines M6, M7, M8") {
    CHECK(is_cmrz(machines::m6()).cmrz);
    CHECK(is_cmrz(machines::m7()).cmrz);
    auto r = is_cmrz(machines::m8());
    CHECK_FALSE(r.cmrz);
    // zero test at q1 followed by the increment at q3
    CHECK(r.witness == std::vector<Label>{2, 3});
}

TEST_CASE("CMRZ: a transition that tests and modifies the same counter violates") {
    auto m = machines::counter_machine("t", {"p"}, {"x"});
    m.transitions = {machines::ct(0, CounterOp::Inc, 0, 0, {0})};
    auto r = is_cmrz(m);
    CHECK_FALSE(r.cmrz);
    CHECK(r.witness == std::vector<Label>{0});
}

TEST_CASE("CMRZ agrees with a path-search oracle on random machines") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 500; ++i) {
        auto m = oracle::random_counter_machine(rng, true);
        auto r = is_cmrz(m);
        CHECK(r.cmrz == oracle::cmrz_by_paths(m));
        if (!r.cmrz) {
            // the witness is a control path: zero test first, modification last
            REQUIRE_FALSE(r.witness.empty());
            const auto& first = m.transitions[r.witness.front()];
            const auto& last = m.transitions[r.witness.back()];
            CHECK_FALSE(first.zero_tests.empty());
            CHECK(last.op != CounterOp::Noop);
            CHECK(std::find(first.zero_tests.begin(), first.zero_tests.end(), last.counter) != first.zero_tests.end());
            for (std::size_t k = 1; k < r.witness.size(); ++k)
                CHECK(m.transitions[r.witness[k - 1]].target == m.transitions[r.witness[k]].source);
        }
    }
}

namespace {

// All runs of length <= depth from x0 as (label sequence, visited states).
void enumerate_runs(const CounterMachine& m, const CounterConfig& x, std::size_t depth, std::vector<Label>& labels,
                    std::vector<CounterConfig>& states,
                    const std::function<void(const std::vector<Label>&, const std::vector<CounterConfig>&)>& visit) {
    visit(labels, states);
    if (depth == 0) return;
    for (auto& s : cm_post(m, x)) {
        labels.push_back(s.label);
        states.push_back(s.state);
        enumerate_runs(m, s.state, depth - 1, labels, states, visit);
        labels.pop_back();
        states.pop_back();
    }
}

}  // namespace

TEST_CASE("CMRZ machines: sigma-iteration along increasing run segments") {
    // For x ->sigma x' with x <= x' on a run from x0, sigma replays n times
    // and every iterate dominates x (strictly when x < x').
    std::mt19937_64 rng(99);
    int machines_checked = 0, pairs = 0;
    for (int trial = 0; trial < 400 && machines_checked < 40; ++trial) {
        auto m = oracle::random_counter_machine(rng, true, 3, 2, 6);
        if (!is_cmrz(m).cmrz) continue;
        ++machines_checked;
        std::vector<Label> labels;
        std::vector<CounterConfig> states{m.initial_config()};
        enumerate_runs(m, m.initial_config(), 5, labels, states, [&](const auto& ls, const auto& xs) {
            const auto j = xs.size() - 1;
            for (std::size_t i = 0; i < j; ++i) {
                if (!counter_state_leq(xs[i], xs[j])) continue;
                ++pairs;
                std::vector<Label> sigma(ls.begin() + static_cast<std::ptrdiff_t>(i), ls.end());
                const bool strict = xs[i] != xs[j];
                auto y = xs[j];
                for (int n = 2; n <= 5; ++n) {
                    auto r = cm_run(m, y, sigma);
                    REQUIRE_FALSE(r.stuck_at.has_value());
                    CHECK(counter_state_leq(y, r.last));
                    CHECK(counter_state_leq(xs[i], r.last));
                    if (strict) CHECK(r.last != y);
                    y = r.last;
                }
            }
        });
    }
    CHECK(machines_checked >= 20);
    CHECK(pairs > 0);
}
