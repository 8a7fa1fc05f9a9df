// SPDX-License-Identifier: Apache-2.0

#ifndef BWSTS_FIFO_HPP
#define BWSTS_FIFO_HPP

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bwsts/olts.hpp"
#include "bwsts/ordering.hpp"

namespace bwsts {

enum class Direction { Send, Recv };

struct Action {
    std::size_t channel = 0;
    Direction dir = Direction::Send;
    Letter letter = 0;

    bool operator==(const Action&) const = default;
    auto operator<=>(const Action&) const = default;
};

struct FifoTransition {
    StateId source = 0;
    Action action;
    StateId target = 0;

    bool operator==(const FifoTransition&) const = default;
};

struct FifoMachine {
    std::string name;
    SymbolTable states;
    SymbolTable channels;
    SymbolTable alphabet;
    std::vector<FifoTransition> transitions;
    StateId initial = 0;

    void validate() const;

    /// `!a` / `?a` on single-channel machines, `c!a` / `c?a` otherwise.
    std::string label(Label t) const;
    std::string action_text(const Action& a) const;
    /// Letters concatenated when every letter name is one character, space
    /// separated otherwise; the empty word renders as `ε`.
    std::string word_text(std::span<const Letter> w) const;
    std::string describe(const FifoConfig& x) const;
    FifoConfig initial_config() const;

    bool operator==(const FifoMachine&) const = default;
};

/// Send appends to the tail; receive consumes a matching head letter.
/// Control mismatch or head mismatch yields nullopt.
std::optional<FifoConfig> fifo_step(const FifoMachine& machine, const FifoConfig& x, Label t);
std::vector<Successor<FifoConfig>> fifo_post(const FifoMachine& machine, const FifoConfig& x);

struct FifoRun {
    FifoConfig last;
    std::optional<std::size_t> stuck_at;
};
FifoRun fifo_run(const FifoMachine& machine, const FifoConfig& x0, std::span<const Label> labels);

std::vector<Action> actions_of(const FifoMachine& machine, std::span<const Label> labels);

std::vector<Letter> send_proj(std::span<const Action> sigma, std::size_t channel);
std::vector<Letter> recv_proj(std::span<const Action> sigma, std::size_t channel);

/// w_1^* ... w_n^* for one channel.
struct BoundedLang {
    std::vector<std::vector<Letter>> words;

    /// Every letter occurs exactly once across all words.
    bool distinct_letter() const;
    /// Throws InputError on an empty block.
    void validate() const;
    /// Membership of `w` in the prefix closure, decided by direct search.
    bool prefix_member(std::span<const Letter> w) const;

    bool operator==(const BoundedLang&) const = default;
};

struct NormalizedMachine {
    FifoMachine machine;
    std::vector<BoundedLang> langs;  // one per channel, distinct-letter
    std::vector<Letter> letter_map;  // new letter id -> original letter id
};

/// Renames each occurrence of a letter in the bounded languages to a fresh
/// letter `a_k` (k-th occurrence of `a`) and splits every send/receive on `a`
/// into one transition per occurrence. Transitions on letters that never occur
/// in the channel's language are dropped: they cannot fire in an
/// input-bounded execution. Already distinct-letter languages are returned
/// unchanged.
NormalizedMachine normalize_distinct_letter(const FifoMachine& machine,
                                            const std::vector<BoundedLang>& langs);

/// Explicit deterministic automaton over actions; missing entries reject.
struct Dfa {
    std::vector<std::string> state_names;
    std::size_t initial = 0;
    std::vector<bool> accepting;
    std::map<std::pair<std::size_t, Action>, std::size_t> delta;

    std::size_t size() const noexcept { return state_names.size(); }
    std::optional<std::size_t> next(std::size_t s, const Action& a) const;
    bool accepts(std::span<const Action> word) const;
};

/// Accepts action sequences whose send projection on every channel lies in
/// that channel's language. Receives are unconstrained.
Dfa build_send_dfa(const std::vector<BoundedLang>& langs, std::size_t alphabet_size);

/// Accepts action sequences whose receive projection on every channel lies in
/// the prefix closure of that channel's language. Sends are unconstrained.
Dfa build_recv_dfa(const std::vector<BoundedLang>& langs, std::size_t alphabet_size);

struct ProductMachine {
    FifoMachine machine;
    /// For each product control state: (machine state, send state, recv state).
    std::vector<std::array<std::size_t, 3>> origin;
};

/// Synchronous product restricted to accessible control states. With
/// `prune`, control states that cannot reach an accepting send state are
/// removed as well.
ProductMachine product_machine(const FifoMachine& machine, const Dfa& send_dfa, const Dfa& recv_dfa,
                               bool prune = true);

Olts<FifoConfig> fifo_olts(const FifoMachine& machine, const FifoConfig& x0);

}  // namespace bwsts

#endif  // BWSTS_FIFO_HPP
