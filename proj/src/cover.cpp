// SPDX-License-Identifier: Apache-2.0

#include "bwsts/cover.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "bwsts/error.hpp"

namespace bwsts {

namespace {

void require_dim(std::size_t got, std::size_t want, const char* what) {
    if (got != want)
        throw InputError(std::string(what) + ": dimension " + std::to_string(got) + " does not match " +
                         std::to_string(want));
}

std::uint64_t omega_inc(std::uint64_t v) { return v == kOmega ? kOmega : v + 1; }

bool covers(const CounterConfig& x, const CounterConfig& y) {
    return x.control == y.control && x.values.size() == y.values.size() && nat_vec_leq(y.values, x.values);
}

std::string entry_text(std::uint64_t v) { return v == kOmega ? "ω" : std::to_string(v); }

}  // namespace

bool ideal_contains(const Ideal& ideal, const CounterConfig& x) {
    require_dim(x.values.size(), ideal.bound.size(), "ideal_contains");
    if (ideal.control != x.control) return false;
    for (std::size_t i = 0; i < x.values.size(); ++i)
        if (x.values[i] > ideal.bound[i]) return false;
    return true;
}

bool ideal_subset(const Ideal& lhs, const Ideal& rhs) {
    require_dim(lhs.bound.size(), rhs.bound.size(), "ideal_subset");
    if (lhs.control != rhs.control) return false;
    // kOmega is the largest uint64, so plain <= already treats ω as maximal.
    for (std::size_t i = 0; i < lhs.bound.size(); ++i)
        if (lhs.bound[i] > rhs.bound[i]) return false;
    return true;
}

DownSet downset_normalize(std::vector<Ideal> ideals) { return DownSet(std::move(ideals)); }

DownSet::DownSet(std::vector<Ideal> ideals) {
    std::sort(ideals.begin(), ideals.end());
    ideals.erase(std::unique(ideals.begin(), ideals.end()), ideals.end());
    for (std::size_t i = 0; i < ideals.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < ideals.size() && !dominated; ++j)
            dominated = i != j && ideal_subset(ideals[i], ideals[j]);
        if (!dominated) ideals_.push_back(ideals[i]);
    }
}

DownSet DownSet::closure_of(const CounterConfig& x) { return DownSet({Ideal{x.control, x.values}}); }

bool DownSet::contains(const CounterConfig& x) const {
    return std::any_of(ideals_.begin(), ideals_.end(), [&](const Ideal& i) { return ideal_contains(i, x); });
}

bool DownSet::includes(const DownSet& other) const {
    // Ideals are directed: an ideal sits inside a finite union iff it sits
    // inside one member.
    for (const auto& i : other.ideals_)
        if (std::none_of(ideals_.begin(), ideals_.end(), [&](const Ideal& j) { return ideal_subset(i, j); }))
            return false;
    return true;
}

DownSet DownSet::unite(const DownSet& other) const {
    auto all = ideals_;
    all.insert(all.end(), other.ideals_.begin(), other.ideals_.end());
    return DownSet(std::move(all));
}

std::string DownSet::to_string(const CounterMachine& machine) const {
    if (ideals_.empty()) return "∅";
    std::ostringstream os;
    for (std::size_t k = 0; k < ideals_.size(); ++k) {
        if (k) os << ", ";
        os << machine.states.name(static_cast<std::uint32_t>(ideals_[k].control)) << ":(";
        for (std::size_t i = 0; i < ideals_[k].bound.size(); ++i) os << (i ? "," : "") << entry_text(ideals_[k].bound[i]);
        os << ")";
    }
    return os.str();
}

UpSet::UpSet(std::vector<CounterConfig> basis) {
    std::sort(basis.begin(), basis.end());
    basis.erase(std::unique(basis.begin(), basis.end()), basis.end());
    for (std::size_t i = 0; i < basis.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < basis.size() && !dominated; ++j)
            dominated = i != j && counter_state_leq(basis[j], basis[i]);
        if (!dominated) basis_.push_back(basis[i]);
    }
}

bool UpSet::contains(const CounterConfig& x) const {
    return std::any_of(basis_.begin(), basis_.end(), [&](const CounterConfig& b) { return covers(x, b); });
}

UpSet UpSet::unite(const UpSet& other) const {
    auto all = basis_;
    all.insert(all.end(), other.basis_.begin(), other.basis_.end());
    return UpSet(std::move(all));
}

MonotoneMachine::MonotoneMachine(CounterMachine machine) : machine_(std::move(machine)) {
    machine_.validate();
    if (machine_.has_zero_tests())
        throw ContractError("machine '" + machine_.name + "' has zero tests; monotone operations do not apply");
}

DownSet downset_post(const CounterMachine& machine, const DownSet& d) {
    const std::size_t k = machine.dimension();
    std::vector<Ideal> out;
    for (const auto& ideal : d.ideals()) {
        require_dim(ideal.bound.size(), k, "downset_post");
        for (const auto& t : machine.transitions) {
            if (t.source != ideal.control) continue;
            OmegaVec v = ideal.bound;
            for (auto z : t.zero_tests) v[z] = 0;
            if (t.op == CounterOp::Inc) {
                v[t.counter] = omega_inc(v[t.counter]);
            } else if (t.op == CounterOp::Dec) {
                if (v[t.counter] == 0) continue;
                if (v[t.counter] != kOmega) --v[t.counter];
            }
            out.push_back(Ideal{t.target, std::move(v)});
        }
    }
    return DownSet(std::move(out));
}

DownSet downset_post(const MonotoneMachine& machine, const DownSet& d) { return downset_post(machine.machine(), d); }

UpSet pre_basis(const MonotoneMachine& mm, const UpSet& u) {
    const auto& machine = mm.machine();
    std::vector<CounterConfig> out;
    for (const auto& b : u.basis()) {
        require_dim(b.values.size(), machine.dimension(), "pre_basis");
        for (const auto& t : machine.transitions) {
            if (t.target != b.control) continue;
            CounterConfig p{t.source, b.values};
            if (t.op == CounterOp::Inc) {
                if (p.values[t.counter] > 0) --p.values[t.counter];
            } else if (t.op == CounterOp::Dec) {
                ++p.values[t.counter];
            }
            out.push_back(std::move(p));
        }
    }
    return UpSet(std::move(out));
}

BackwardResult backward_coverability(const MonotoneMachine& mm, const CounterConfig& x0, const CounterConfig& y) {
    const std::size_t k = mm.machine().dimension();
    require_dim(x0.values.size(), k, "backward_coverability");
    require_dim(y.values.size(), k, "backward_coverability");
    BackwardResult r;
    r.basis = UpSet({y});
    while (true) {
        auto next = r.basis.unite(pre_basis(mm, r.basis));
        ++r.iterations;
        if (next == r.basis) break;
        r.basis = std::move(next);
    }
    r.coverable = r.basis.contains(x0);
    return r;
}

DownSet upset_complement(const UpSet& u, std::size_t num_states, std::size_t dim) {
    std::vector<Ideal> all;
    for (StateId q = 0; q < num_states; ++q) {
        DownSet part({Ideal{q, OmegaVec(dim, kOmega)}});
        for (const auto& b : u.basis()) {
            if (b.control != q) continue;
            require_dim(b.values.size(), dim, "upset_complement");
            // not(x >= b) == OR_i x_i <= b_i - 1
            std::vector<Ideal> pieces;
            for (const auto& s : part.ideals())
                for (std::size_t i = 0; i < dim; ++i) {
                    if (b.values[i] == 0) continue;
                    Ideal cut = s;
                    cut.bound[i] = std::min(cut.bound[i], b.values[i] - 1);
                    pieces.push_back(std::move(cut));
                }
            part = DownSet(std::move(pieces));
        }
        all.insert(all.end(), part.ideals().begin(), part.ideals().end());
    }
    return DownSet(std::move(all));
}

ForwardCoverResult forward_cover_semiproc(const MonotoneMachine& mm, const CounterConfig& x0, const CounterConfig& y,
                                          std::size_t step_budget) {
    const std::size_t k = mm.machine().dimension();
    require_dim(x0.values.size(), k, "forward_cover_semiproc");
    require_dim(y.values.size(), k, "forward_cover_semiproc");
    ForwardCoverResult r;
    DownSet d = DownSet::closure_of(x0);
    r.sequence.push_back(d);
    while (true) {
        if (d.contains(y)) {
            r.outcome = Outcome::Positive;
            return r;
        }
        if (r.steps >= step_budget) return r;
        auto next = d.unite(downset_post(mm, d));
        ++r.steps;
        if (next == d) {
            r.fixpoint = true;
            return r;
        }
        d = std::move(next);
        r.sequence.push_back(d);
    }
}

// ---------------------------------------------------------------------------
// Enumeration of down-sets

DownSetEnumerator::DownSetEnumerator(std::size_t num_states, std::size_t dim) : num_states_(num_states), dim_(dim) {
    if (num_states == 0) throw InputError("DownSetEnumerator: no control states");
}

void DownSetEnumerator::enter_bound(std::size_t b) {
    bound_ = b;
    std::vector<std::uint64_t> values;
    for (std::uint64_t v = 0; v <= b; ++v) values.push_back(v);
    values.push_back(kOmega);

    std::vector<OmegaVec> vectors{OmegaVec{}};
    for (std::size_t i = 0; i < dim_; ++i) {
        std::vector<OmegaVec> grown;
        for (const auto& prefix : vectors)
            for (auto v : values) {
                auto w = prefix;
                w.push_back(v);
                grown.push_back(std::move(w));
            }
        vectors = std::move(grown);
    }

    auto comparable = [](const OmegaVec& a, const OmegaVec& c) { return nat_vec_leq(a, c) || nat_vec_leq(c, a); };
    options_.clear();
    option_old_.clear();
    std::vector<std::size_t> pick;
    bool any = false;
    std::function<void(std::size_t, std::size_t)> extend = [&](std::size_t from, std::size_t size) {
        if (pick.size() == size) {
            any = true;
            std::vector<OmegaVec> chain;
            bool old = size + 1 <= b;
            for (auto i : pick) {
                chain.push_back(vectors[i]);
                for (auto v : vectors[i])
                    if (v != kOmega && v + 1 > b) old = false;
            }
            options_.push_back(std::move(chain));
            option_old_.push_back(old);
            return;
        }
        for (std::size_t i = from; i < vectors.size(); ++i) {
            bool ok = std::none_of(pick.begin(), pick.end(), [&](std::size_t j) { return comparable(vectors[j], vectors[i]); });
            if (!ok) continue;
            pick.push_back(i);
            extend(i + 1, size);
            pick.pop_back();
        }
    };
    // no antichain of size s means none of size s + 1
    for (std::size_t size = 0; size <= b; ++size) {
        any = false;
        extend(0, size);
        if (!any) break;
    }
}

bool DownSetEnumerator::seen_before(const std::vector<std::size_t>& digits) const {
    return std::all_of(digits.begin(), digits.end(), [&](std::size_t d) { return option_old_[d]; });
}

DownSet DownSetEnumerator::next() {
    if (!started_) {
        started_ = true;
        exhausted_bound_ = true;
        return DownSet{};
    }
    while (true) {
        if (exhausted_bound_) {
            enter_bound(bound_ + 1);
            digits_.assign(num_states_, 0);
            exhausted_bound_ = false;
        } else {
            std::size_t pos = num_states_;
            while (pos > 0) {
                --pos;
                if (++digits_[pos] < options_.size()) break;
                digits_[pos] = 0;
                if (pos == 0) {
                    exhausted_bound_ = true;
                    break;
                }
            }
            if (exhausted_bound_) continue;
        }
        if (seen_before(digits_)) continue;
        std::vector<Ideal> ideals;
        for (StateId q = 0; q < num_states_; ++q)
            for (const auto& v : options_[digits_[q]]) ideals.push_back(Ideal{q, v});
        return DownSet(std::move(ideals));
    }
}

bool is_separating_invariant(const CounterMachine& machine, const DownSet& d, const CounterConfig& x0,
                             const CounterConfig& y) {
    return d.contains(x0) && !d.contains(y) && d.includes(downset_post(machine, d));
}

NoncoverResult noncover_semiproc(const CounterMachine& machine, const CounterConfig& x0, const CounterConfig& y,
                                 std::size_t enumeration_budget) {
    machine.validate();
    require_dim(x0.values.size(), machine.dimension(), "noncover_semiproc");
    require_dim(y.values.size(), machine.dimension(), "noncover_semiproc");
    NoncoverResult r;
    DownSetEnumerator en(machine.states.size(), machine.dimension());
    while (r.examined < enumeration_budget) {
        auto d = en.next();
        ++r.examined;
        r.bound = en.bound();
        if (is_separating_invariant(machine, d, x0, y)) {
            r.outcome = Outcome::Negative;
            r.invariant = std::move(d);
            return r;
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// x0-coverability

CoverVerdict x0_coverability(const CounterMachine& machine, const CounterConfig& x0, const CounterConfig& y,
                             std::size_t budget) {
    machine.validate();
    require_dim(x0.values.size(), machine.dimension(), "x0_coverability");
    require_dim(y.values.size(), machine.dimension(), "x0_coverability");
    constexpr std::size_t kChunk = 64;

    CoverVerdict v;
    v.budget = budget;

    std::vector<CounterConfig> nodes{x0};
    std::vector<std::optional<std::pair<std::size_t, Label>>> parent{std::nullopt};
    std::unordered_map<CounterConfig, std::size_t, CounterConfigHash> index{{x0, 0}};
    std::deque<std::size_t> queue{0};

    auto found = [&](std::size_t id) {
        v.outcome = Outcome::Positive;
        v.covering_state = nodes[id];
        for (auto cur = id; parent[cur]; cur = parent[cur]->first) v.witness_run.push_back(parent[cur]->second);
        std::reverse(v.witness_run.begin(), v.witness_run.end());
        return v;
    };
    if (covers(x0, y)) return found(0);

    DownSetEnumerator en(machine.states.size(), machine.dimension());
    while (v.budget_used < budget) {
        // (a) forward exploration
        for (std::size_t n = 0; n < kChunk && !queue.empty() && v.budget_used < budget; ++n) {
            auto id = queue.front();
            queue.pop_front();
            ++v.budget_used;
            for (auto& s : cm_post(machine, nodes[id])) {
                if (index.count(s.state)) continue;
                const auto nid = nodes.size();
                index.emplace(s.state, nid);
                nodes.push_back(std::move(s.state));
                parent.push_back(std::pair{id, s.label});
                if (covers(nodes[nid], y)) return found(nid);
                queue.push_back(nid);
            }
        }
        if (queue.empty()) {
            v.outcome = Outcome::Negative;
            v.reachability_exhausted = true;
            v.reachable = nodes;
            std::sort(v.reachable.begin(), v.reachable.end());
            return v;
        }
        // (b) invariant enumeration
        for (std::size_t n = 0; n < kChunk && v.budget_used < budget; ++n) {
            auto d = en.next();
            ++v.budget_used;
            if (is_separating_invariant(machine, d, x0, y)) {
                v.outcome = Outcome::Negative;
                v.invariant = std::move(d);
                return v;
            }
        }
    }
    return v;
}

// ---------------------------------------------------------------------------
// Bounded cover-monotony check

namespace {

std::vector<CounterConfig> reach_within(const CounterMachine& machine, const CounterConfig& from, std::size_t steps) {
    std::set<CounterConfig> seen{from};
    std::vector<CounterConfig> layer{from};
    for (std::size_t i = 0; i < steps && !layer.empty(); ++i) {
        std::vector<CounterConfig> next;
        for (const auto& x : layer)
            for (auto& s : cm_post(machine, x))
                if (seen.insert(s.state).second) next.push_back(std::move(s.state));
        layer = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

// Every config with the same control and values <= min(bound, cap).
void below(const CounterConfig& bound, std::uint64_t cap, const std::function<void(const CounterConfig&)>& emit) {
    CounterConfig x{bound.control, std::vector<std::uint64_t>(bound.values.size(), 0)};
    while (true) {
        emit(x);
        std::size_t i = 0;
        for (; i < x.values.size(); ++i) {
            if (x.values[i] < std::min(bound.values[i], cap)) {
                ++x.values[i];
                break;
            }
            x.values[i] = 0;
        }
        if (i == x.values.size()) return;
    }
}

}  // namespace

CoverMonotonyCheck check_cover_monotone_bounded(const CounterMachine& machine, const CounterConfig& x0,
                                                std::uint64_t value_cap, std::size_t length_cap) {
    if (value_cap < 1 || length_cap < 1) throw InputError("check_cover_monotone_bounded: caps must be at least 1");
    machine.validate();
    require_dim(x0.values.size(), machine.dimension(), "check_cover_monotone_bounded");

    std::set<CounterConfig> cover;
    for (const auto& r : reach_within(machine, x0, length_cap))
        below(r, value_cap, [&](const CounterConfig& y) { cover.insert(y); });

    CoverMonotonyCheck out;
    for (const auto& y1 : cover) {
        if (std::any_of(y1.values.begin(), y1.values.end(), [&](auto v) { return v > value_cap; })) continue;
        const auto from_y1 = reach_within(machine, y1, length_cap);
        std::optional<CoverMonotonyViolation> bad;
        below(y1, value_cap, [&](const CounterConfig& x1) {
            if (bad) return;
            for (const auto& s : cm_post(machine, x1)) {
                bool ok = std::any_of(from_y1.begin(), from_y1.end(), [&](const CounterConfig& y2) { return covers(y2, s.state); });
                if (!ok) {
                    bad = CoverMonotonyViolation{y1, x1, s.state};
                    return;
                }
            }
        });
        if (bad) {
            out.ok = false;
            out.counterexample = std::move(bad);
            return out;
        }
    }
    return out;
}

}  // namespace bwsts
