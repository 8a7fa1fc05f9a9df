// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>
#include <set>

#include "bwsts/counter.hpp"
#include "bwsts/error.hpp"
#include "bwsts/fifo.hpp"
#include "bwsts/rrt.hpp"
#include "support/machines.hpp"
#include "support/oracles.hpp"

using namespace bwsts;
using machines::cc;
using machines::fc;

namespace {

constexpr Letter A = 0, B = 1, C = 2;

// Replays sigma up to n times; returns the number of complete iterations.
std::size_t iterate(const FifoMachine& m, FifoConfig x, const std::vector<Label>& sigma, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        auto r = fifo_run(m, x, sigma);
        if (r.stuck_at) return i;
        x = r.last;
    }
    return n;
}

}  // namespace

TEST_CASE("M1 reduced tree: three nodes, (q0,a) subsumed by the root, (q1,b) dead") {
    auto m = machines::m1();
    auto sys = fifo_olts(m, m.initial_config());
    auto t = build_rrt(sys, 100);
    REQUIRE(t.size() == 3);
    CHECK_FALSE(t.budget_exhausted);
    CHECK(t.nodes[0].state == fc(0, {}));
    CHECK(t.nodes[1].state == fc(0, {A}));
    CHECK(t.nodes[1].subsumed_by == 0u);
    CHECK(t.nodes[1].mark == Mark::Dead);
    CHECK(t.nodes[2].state == fc(1, {B}));
    CHECK(t.nodes[2].mark == Mark::Dead);
    CHECK_FALSE(t.nodes[2].subsumed_by.has_value());
    CHECK(t.nodes[0].children == std::vector<std::size_t>{1, 2});

    auto b = decide_boundedness(t, sys.order);
    CHECK(b.outcome == Outcome::Positive);
    CHECK(b.witness == std::pair<std::size_t, std::size_t>{0, 1});
    CHECK(b.caveat);
    CHECK_FALSE(decide_boundedness(t, sys.order, true).caveat);
    auto n = decide_nontermination(t);
    CHECK(n.outcome == Outcome::Positive);
    CHECK(n.witness == std::pair<std::size_t, std::size_t>{0, 1});
}

TEST_CASE("M2 from q0 behaves as M1") {
    auto m = machines::m2(0);
    auto t = build_rrt(fifo_olts(m, m.initial_config()), 200);
    CHECK_FALSE(t.budget_exhausted);
    REQUIRE(t.size() == 3);
    CHECK(t.nodes[1].state == fc(0, {A}));
    CHECK(t.nodes[1].subsumed_by == 0u);
    CHECK(t.nodes[2].state == fc(1, {B}));
    CHECK(t.nodes[2].mark == Mark::Dead);
}

TEST_CASE("M2 from q2: (q2,c) is subsumed by the root, so the reduced tree is finite") {
    auto m = machines::m2(2);
    auto t = build_rrt(fifo_olts(m, m.initial_config()), 200);
    CHECK_FALSE(t.budget_exhausted);
    REQUIRE(t.size() == 3);
    CHECK(t.nodes[1].state == fc(2, {C}));
    CHECK(t.nodes[1].subsumed_by == 0u);
    CHECK(t.nodes[2].state == fc(1, {B}));
    CHECK(fifo_post(m, fc(1, {B})).empty());
}

TEST_CASE("M2 from q2: greedy antichain along a run") {
    auto m = machines::m2(2);
    auto sys = fifo_olts(m, m.initial_config());
    // !c !b ?c ?b !c !c !b
    std::vector<Label> run{4, 5, 2, 6, 4, 4, 5};
    auto r = replay(sys, sys.initial, run);
    REQUIRE(r.completed());
    auto chain = find_antichain_on_run(sys, run, 10);
    REQUIRE(chain.size() == 3);
    CHECK(chain[0] == fc(2, {}));
    CHECK(chain[1] == fc(1, {C, B}));
    CHECK(chain[2] == fc(1, {C, C, B}));
    for (std::size_t i = 0; i < chain.size(); ++i)
        for (std::size_t j = i + 1; j < chain.size(); ++j) CHECK_FALSE(sys.order.comparable(chain[i], chain[j]));
    CHECK(find_antichain_on_run(sys, run, 2).size() == 2);
    CHECK_THROWS_AS(find_antichain_on_run(sys, std::vector<Label>{2}, 5), InputError);
    // a run on which everything is comparable yields no witness
    CHECK(find_antichain_on_run(sys, std::vector<Label>{4, 4}, 5).empty());
}

TEST_CASE("M3: the increasing segment does not replay from the larger state") {
    auto m = machines::m3();
    auto sys = fifo_olts(m, m.initial_config());
    auto t = build_rrt(sys, 100);
    // (q0,ε) -!a!b?a-> (q0,b), subsumed by the root
    REQUIRE(t.size() == 4);
    CHECK(t.nodes[3].state == fc(0, {B}));
    CHECK(t.nodes[3].subsumed_by == 0u);
    auto sigma = t.segment(0, 3);
    auto r = replay(sys, t.nodes[3].state, sigma);
    REQUIRE(r.stuck_at.has_value());
    CHECK(*r.stuck_at == 2);
    CHECK(r.last() == fc(2, {B, A, B}));
    auto l = build_lrrt(sys, 100);
    CHECK_FALSE(l.nodes[3].iterable);
    CHECK(decide_nonterm_by_iterable(l).outcome == Outcome::Inconclusive);
}

TEST_CASE("budget handling") {
    auto m = machines::m1();
    auto sys = fifo_olts(m, m.initial_config());
    CHECK_THROWS_AS(build_rrt(sys, 0), InputError);
    auto t = build_rrt(sys, 2);
    CHECK(t.budget_exhausted);
    CHECK(t.size() == 1);
    CHECK_FALSE(t.nodes[0].expanded);
    CHECK(decide_nontermination(t).outcome == Outcome::Inconclusive);
    CHECK(decide_boundedness(t, sys.order).outcome == Outcome::Inconclusive);
    CHECK(decide_boundedness(t, sys.order).budget == 2);
}

TEST_CASE("boundedness requires a partial order") {
    auto m = machines::m1();
    auto sys = fifo_olts(m, m.initial_config());
    OrderRel<FifoConfig> pre([](const FifoConfig& x, const FifoConfig& y) { return x.control == y.control; },
                             [](const FifoConfig& x, const FifoConfig& y) { return x == y; }, false);
    auto t = build_rrt(sys, 10);
    CHECK_THROWS_AS(decide_boundedness(t, pre), ContractError);
    OrderRel<FifoConfig> lying([](const FifoConfig& x, const FifoConfig& y) { return x.control == y.control; },
                               [](const FifoConfig& x, const FifoConfig& y) { return x == y; }, true);
    sys.order = lying;
    auto t2 = build_rrt(sys, 10);
    CHECK_THROWS_AS(decide_boundedness(t2, lying), ContractError);
}

TEST_CASE("bounded and terminating counter machine") {
    auto m = machines::counter_machine("drain", {"p", "q"}, {"x"});
    m.transitions = {machines::ct(0, CounterOp::Dec, 0, 0), machines::ct(0, CounterOp::Noop, 0, 1, {0})};
    auto sys = counter_olts(m, cc(0, {3}));
    auto t = build_rrt(sys, 100);
    CHECK_FALSE(t.budget_exhausted);
    CHECK(decide_boundedness(t, sys.order).outcome == Outcome::Negative);
    CHECK(decide_nontermination(t).outcome == Outcome::Negative);
    auto e = oracle::explore(m, cc(0, {3}), 100);
    CHECK(e.states.size() <= t.size());
    CHECK(e.states.size() == 5);
}

TEST_CASE("iterable nodes and the labelled tree") {
    auto m = machines::m1();
    auto sys = fifo_olts(m, m.initial_config());
    auto t = build_lrrt(sys, 100);
    CHECK(t.nodes[1].iterable);
    CHECK(t.nodes[1].iterate_target == fc(0, {A, A}));
    CHECK_FALSE(t.nodes[2].iterable);
    auto v = decide_nonterm_by_iterable(t);
    CHECK(v.outcome == Outcome::Positive);
    auto [anc, node] = *v.witness;
    auto sigma = t.segment(anc, node);
    CHECK(iterate(m, t.nodes[node].state, sigma, 100) == 100);
}

TEST_CASE("omega-word equality matches a long explicit comparison") {
    std::mt19937_64 rng(8);
    auto word = [&](std::size_t lo, std::size_t hi) {
        std::vector<Letter> w(std::uniform_int_distribution<std::size_t>(lo, hi)(rng));
        for (auto& a : w) a = static_cast<Letter>(rng() % 2);
        return w;
    };
    std::size_t equal = 0;
    for (int i = 0; i < 3000; ++i) {
        auto u = word(0, 4), s = word(1, 3), r = word(1, 3);
        if (i % 4 == 0) {
            // build an equal instance: r^ω with u a prefix of it and s a rotation-compatible period
            r = word(1, 3);
            u.clear();
            for (std::size_t k = 0, n = rng() % 5; k < n; ++k) u.push_back(r[k % r.size()]);
            s.clear();
            const auto reps = 1 + rng() % 2;
            for (std::size_t k = 0; k < r.size() * reps; ++k) s.push_back(r[(u.size() + k) % r.size()]);
        }
        bool brute = true;
        for (std::size_t k = 0; k < 400 && brute; ++k) {
            Letter left = k < u.size() ? u[k] : s[(k - u.size()) % s.size()];
            brute = left == r[k % r.size()];
        }
        CHECK(omega_words_equal(u, s, r) == brute);
        equal += brute;
    }
    CHECK(equal > 500);
    CHECK_THROWS_AS(omega_words_equal(std::vector<Letter>{}, std::vector<Letter>{}, std::vector<Letter>{0}), InputError);
}

TEST_CASE("DOT export is deterministic") {
    auto m = machines::m1();
    auto sys = fifo_olts(m, m.initial_config());
    auto dot = export_dot(build_lrrt(sys, 100), sys);
    const std::string expected =
        "digraph rrt {\n"
        "  node [shape=box, fontname=\"monospace\"];\n"
        "  n0 [label=\"(q0, ε)\"];\n"
        "  n1 [label=\"(q0, a)\", style=filled, fillcolor=lightgrey, peripheries=2];\n"
        "  n2 [label=\"(q1, b)\", style=filled, fillcolor=lightgrey];\n"
        "  n0 -> n1 [label=\"!a\"];\n"
        "  n0 -> n2 [label=\"!b\"];\n"
        "  n1 -> n0 [style=dashed, constraint=false, label=\"subsumed\"];\n"
        "}\n";
    CHECK(dot == expected);
    CHECK(export_dot(build_lrrt(sys, 100), sys) == dot);
}

TEST_CASE("unboundedness verdicts are backed by large explicit state spaces") {
    std::mt19937_64 rng(77);
    int positives = 0;
    for (int i = 0; i < 300 && positives < 25; ++i) {
        auto m = oracle::random_counter_machine(rng, true, 3, 2, 5);
        if (!is_cmrz(m).cmrz) continue;
        auto sys = counter_olts(m, m.initial_config());
        auto t = build_rrt(sys, 5000);
        auto v = decide_boundedness(t, sys.order, true);
        if (v.outcome == Outcome::Positive) {
            ++positives;
            auto e = oracle::explore(m, m.initial_config(), 1000, 2000);
            CHECK(e.states.size() >= 1000);
        } else if (v.outcome == Outcome::Negative) {
            auto e = oracle::explore(m, m.initial_config(), 1000000);
            CHECK_FALSE(e.truncated);
            CHECK(e.states.size() <= t.size());
        }
    }
    CHECK(positives > 0);
}

TEST_CASE("FIFO subsumption pairs satisfy the word equations") {
    // (q,u) -σ-> (q,uv) -σ-> (q,uvw): per channel v = w and v.send = send.v
    std::mt19937_64 rng(123);
    std::size_t checked = 0;
    auto check_tree = [&](const FifoMachine& m, const FifoConfig& x0) {
        auto sys = fifo_olts(m, x0);
        auto t = build_rrt(sys, 400);
        for (const auto& n : t.nodes) {
            if (!n.subsumed_by) continue;
            const auto& x = t.nodes[*n.subsumed_by].state;
            auto sigma = t.segment(*n.subsumed_by, n.id);
            auto again = fifo_run(m, n.state, sigma);
            if (again.stuck_at) continue;
            ++checked;
            auto acts = actions_of(m, sigma);
            for (std::size_t c = 0; c < m.channels.size(); ++c) {
                auto u = x.contents[c].to_vector();
                auto uv = n.state.contents[c].to_vector();
                auto uvw = again.last.contents[c].to_vector();
                REQUIRE(uv.size() >= u.size());
                REQUIRE(std::equal(u.begin(), u.end(), uv.begin()));
                REQUIRE(uvw.size() >= uv.size());
                REQUIRE(std::equal(uv.begin(), uv.end(), uvw.begin()));
                std::vector<Letter> v(uv.begin() + static_cast<std::ptrdiff_t>(u.size()), uv.end());
                std::vector<Letter> w(uvw.begin() + static_cast<std::ptrdiff_t>(uv.size()), uvw.end());
                CHECK(v == w);
                auto s = send_proj(acts, c);
                auto vs = v, sv = s;
                vs.insert(vs.end(), s.begin(), s.end());
                sv.insert(sv.end(), v.begin(), v.end());
                CHECK(vs == sv);
            }
        }
    };
    check_tree(machines::m1(), machines::m1().initial_config());
    check_tree(machines::m2(2), machines::m2(2).initial_config());
    for (int i = 0; i < 300; ++i) {
        auto m = oracle::random_fifo_machine(rng);
        FifoConfig x0{0, {Word{}}};
        std::vector<Letter> w(rng() % 3);
        for (auto& a : w) a = static_cast<Letter>(rng() % 2);
        x0.contents[0] = Word(w);
        check_tree(m, x0);
    }
    CHECK(checked > 50);
}
