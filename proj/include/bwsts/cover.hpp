// SPDX-License-Identifier: Apache-2.0

#ifndef BWSTS_COVER_HPP
#define BWSTS_COVER_HPP

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "bwsts/counter.hpp"
#include "bwsts/rrt.hpp"

namespace bwsts {

inline constexpr std::uint64_t kOmega = std::numeric_limits<std::uint64_t>::max();

/// Entries over N ∪ {ω}; kOmega stands for ω.
using OmegaVec = std::vector<std::uint64_t>;

/// {(control, v) : v <= bound} for one control state.
struct Ideal {
    StateId control = 0;
    OmegaVec bound;

    bool operator==(const Ideal&) const = default;
    auto operator<=>(const Ideal&) const = default;
};

bool ideal_contains(const Ideal& ideal, const CounterConfig& x);
bool ideal_subset(const Ideal& lhs, const Ideal& rhs);

/// Finite union of ideals kept in canonical form: inclusion-minimal and
/// sorted, so structural equality is equality of denotations.
class DownSet {
public:
    DownSet() = default;
    explicit DownSet(std::vector<Ideal> ideals);

    static DownSet closure_of(const CounterConfig& x);

    const std::vector<Ideal>& ideals() const noexcept { return ideals_; }
    bool empty() const noexcept { return ideals_.empty(); }
    bool contains(const CounterConfig& x) const;
    /// other ⊆ *this
    bool includes(const DownSet& other) const;
    DownSet unite(const DownSet& other) const;

    /// `q0:(0), q2:(ω)`; `∅` when empty.
    std::string to_string(const CounterMachine& machine) const;

    bool operator==(const DownSet&) const = default;

private:
    std::vector<Ideal> ideals_;
};

DownSet downset_normalize(std::vector<Ideal> ideals);

/// Upward-closed set given by a minimal basis.
class UpSet {
public:
    UpSet() = default;
    explicit UpSet(std::vector<CounterConfig> basis);

    const std::vector<CounterConfig>& basis() const noexcept { return basis_; }
    bool empty() const noexcept { return basis_.empty(); }
    bool contains(const CounterConfig& x) const;
    UpSet unite(const UpSet& other) const;

    bool operator==(const UpSet&) const = default;

private:
    std::vector<CounterConfig> basis_;
};

/// Counter machine without zero tests. Construction rejects zero tests, so
/// the operations that are only sound under monotony take this type.
class MonotoneMachine {
public:
    explicit MonotoneMachine(CounterMachine machine);
    const CounterMachine& machine() const noexcept { return machine_; }

private:
    CounterMachine machine_;
};

/// ↓Post(d) under the exact semantics (zero tests respected).
DownSet downset_post(const CounterMachine& machine, const DownSet& d);
DownSet downset_post(const MonotoneMachine& machine, const DownSet& d);

/// Minimal basis of ↑Pre(↑u).
UpSet pre_basis(const MonotoneMachine& machine, const UpSet& u);

struct BackwardResult {
    bool coverable = false;
    UpSet basis;  // finite basis of Pre*(↑y)
    std::size_t iterations = 0;
};

BackwardResult backward_coverability(const MonotoneMachine& machine, const CounterConfig& x0,
                                     const CounterConfig& y);

/// Complement of an upward-closed set, as a down-set over `num_states`
/// control states of dimension `dim`.
DownSet upset_complement(const UpSet& u, std::size_t num_states, std::size_t dim);

struct ForwardCoverResult {
    Outcome outcome = Outcome::Inconclusive;  // Positive or Inconclusive
    std::size_t steps = 0;
    bool fixpoint = false;  // D stopped growing before the budget ran out
    std::vector<DownSet> sequence;  // D_0, D_1, ...
};

/// D := ↓x0; D := ↓(D ∪ Post(D)) until y ∈ D or the step budget is spent.
ForwardCoverResult forward_cover_semiproc(const MonotoneMachine& machine, const CounterConfig& x0,
                                          const CounterConfig& y, std::size_t step_budget);

/// Fair enumeration of down-sets: by increasing bound B, all down-sets whose
/// ideals have finite entries <= B and at most B ideals per control state,
/// lexicographic within a bound (first control state most significant). Sets
/// already produced under a smaller bound are skipped.
class DownSetEnumerator {
public:
    DownSetEnumerator(std::size_t num_states, std::size_t dim);

    DownSet next();
    std::size_t bound() const noexcept { return bound_; }

private:
    void enter_bound(std::size_t b);
    bool seen_before(const std::vector<std::size_t>& digits) const;

    std::size_t num_states_;
    std::size_t dim_;
    std::size_t bound_ = 0;
    bool started_ = false;
    std::vector<std::vector<OmegaVec>> options_;  // antichains per state, shared by all states
    std::vector<bool> option_old_;                // option valid under bound_ - 1
    std::vector<std::size_t> digits_;
    bool exhausted_bound_ = true;
};

struct NoncoverResult {
    Outcome outcome = Outcome::Inconclusive;  // Negative or Inconclusive
    std::optional<DownSet> invariant;
    std::size_t examined = 0;
    std::size_t bound = 0;
};

/// True iff ↓Post(d) ⊆ d, x0 ∈ d and y ∉ d.
bool is_separating_invariant(const CounterMachine& machine, const DownSet& d, const CounterConfig& x0,
                             const CounterConfig& y);

NoncoverResult noncover_semiproc(const CounterMachine& machine, const CounterConfig& x0,
                                 const CounterConfig& y, std::size_t enumeration_budget);

struct CoverVerdict {
    Outcome outcome = Outcome::Inconclusive;  // Positive = coverable
    std::vector<Label> witness_run;           // from x0 to covering_state
    std::optional<CounterConfig> covering_state;
    std::optional<DownSet> invariant;  // separating inductive invariant
    /// Negative because the explicit reachability set was exhausted. The
    /// certificate is then the finite set Post*(x0) itself (y is below none
    /// of its elements); its downward closure need not be inductive.
    bool reachability_exhausted = false;
    std::vector<CounterConfig> reachable;
    std::size_t budget_used = 0;
    std::size_t budget = 0;
};

/// Alternates an exact forward exploration of Post^k(x0) with the
/// enumeration of separating inductive invariants. Both kinds of
/// certificate are sound for any counter machine; termination is only
/// guaranteed for cover-monotone (machine, x0).
CoverVerdict x0_coverability(const CounterMachine& machine, const CounterConfig& x0,
                             const CounterConfig& y, std::size_t budget);

struct CoverMonotonyViolation {
    CounterConfig y1;  // in Cover(x0)
    CounterConfig x1;  // x1 <= y1
    CounterConfig x2;  // x1 -> x2, not covered from y1
};

struct CoverMonotonyCheck {
    bool ok = true;
    std::optional<CoverMonotonyViolation> counterexample;
};

/// Bounded refutation of cover-monotony: checks every y1 in Cover(x0) with
/// entries <= value_cap (reachable within length_cap steps), every x1 <= y1
/// and every step x1 -> x2, searching y1 ->* y2 >= x2 within length_cap
/// steps. `ok` means no violation within the caps.
CoverMonotonyCheck check_cover_monotone_bounded(const CounterMachine& machine, const CounterConfig& x0,
                                                std::uint64_t value_cap, std::size_t length_cap);

}  // namespace bwsts

#endif  // BWSTS_COVER_HPP
