// SPDX-License-Identifier: Apache-2.0

#ifndef BWSTS_ORDERING_HPP
#define BWSTS_ORDERING_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace bwsts {

using StateId = std::size_t;
using Letter = std::uint32_t;

/// Counter valuation, one entry per counter of the owning machine.
using NatVec = std::vector<std::uint64_t>;

/// Interned names. Ids are dense and assigned in insertion order.
class SymbolTable {
public:
    SymbolTable() = default;
    SymbolTable(std::initializer_list<std::string_view> names);

    std::uint32_t intern(std::string_view name);
    std::optional<std::uint32_t> find(std::string_view name) const;
    const std::string& name(std::uint32_t id) const { return names_.at(id); }
    std::size_t size() const noexcept { return names_.size(); }
    const std::vector<std::string>& names() const noexcept { return names_; }

    bool operator==(const SymbolTable& other) const { return names_ == other.names_; }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, std::uint32_t> index_;
};

/// Immutable channel word. Consuming the head shares the backing storage, so
/// a run that only receives never copies letters.
class Word {
public:
    Word() = default;
    explicit Word(std::vector<Letter> letters);
    Word(std::initializer_list<Letter> letters) : Word(std::vector<Letter>(letters)) {}

    std::size_t size() const noexcept { return end_ - begin_; }
    bool empty() const noexcept { return begin_ == end_; }
    Letter operator[](std::size_t i) const { return (*buf_)[begin_ + i]; }
    Letter front() const { return (*buf_)[begin_]; }
    std::span<const Letter> letters() const noexcept;
    std::vector<Letter> to_vector() const;

    Word pushed_back(Letter a) const;
    Word popped_front() const;
    Word concat(const Word& other) const;

    bool operator==(const Word& other) const;
    std::strong_ordering operator<=>(const Word& other) const;
    std::size_t hash() const noexcept;

private:
    std::shared_ptr<const std::vector<Letter>> buf_;
    std::size_t begin_ = 0;
    std::size_t end_ = 0;
};

struct CounterConfig {
    StateId control = 0;
    NatVec values;

    bool operator==(const CounterConfig&) const = default;
    auto operator<=>(const CounterConfig&) const = default;
};

struct FifoConfig {
    StateId control = 0;
    std::vector<Word> contents;  // indexed by channel id

    bool operator==(const FifoConfig&) const = default;
    std::strong_ordering operator<=>(const FifoConfig& other) const;
};

struct CounterConfigHash {
    std::size_t operator()(const CounterConfig& x) const noexcept;
};
struct FifoConfigHash {
    std::size_t operator()(const FifoConfig& x) const noexcept;
};

/// Component-wise order on vectors of equal dimension.
bool nat_vec_leq(std::span<const std::uint64_t> u, std::span<const std::uint64_t> v);

/// u is a prefix of w.
bool prefix_leq(const Word& u, const Word& w);

/// Same control state and channel-wise prefix.
bool ext_prefix_leq(const FifoConfig& x, const FifoConfig& y);

/// Same control state and component-wise order on valuations.
bool counter_state_leq(const CounterConfig& x, const CounterConfig& y);

/// A decidable quasi-order bundled with state equality. The strict part is
/// always derived from leq so the two can never disagree.
template <class State>
class OrderRel {
public:
    using Relation = std::function<bool(const State&, const State&)>;

    OrderRel(Relation leq, Relation equal, bool partial)
        : leq_(std::move(leq)), equal_(std::move(equal)), partial_(partial) {}

    bool leq(const State& x, const State& y) const { return leq_(x, y); }
    bool strictly_less(const State& x, const State& y) const {
        return leq_(x, y) && !leq_(y, x);
    }
    bool equal(const State& x, const State& y) const { return equal_(x, y); }
    bool comparable(const State& x, const State& y) const {
        return leq_(x, y) || leq_(y, x);
    }
    /// Caller-declared antisymmetry.
    bool is_partial() const noexcept { return partial_; }

private:
    Relation leq_;
    Relation equal_;
    bool partial_;
};

OrderRel<CounterConfig> counter_order();
OrderRel<FifoConfig> fifo_order();

}  // namespace bwsts

template <>
struct std::hash<bwsts::Word> {
    std::size_t operator()(const bwsts::Word& w) const noexcept { return w.hash(); }
};

#endif  // BWSTS_ORDERING_HPP
