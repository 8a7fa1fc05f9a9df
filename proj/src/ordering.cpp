// SPDX-License-Identifier: Apache-2.0

#include "bwsts/ordering.hpp"

#include <algorithm>

#include "bwsts/error.hpp"

namespace bwsts {

namespace {

void hash_mix(std::size_t& seed, std::size_t v) {
    seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

}  // namespace

SymbolTable::SymbolTable(std::initializer_list<std::string_view> names) {
    for (auto n : names) intern(n);
}

std::uint32_t SymbolTable::intern(std::string_view name) {
    std::string key(name);
    if (auto it = index_.find(key); it != index_.end()) return it->second;
    auto id = static_cast<std::uint32_t>(names_.size());
    names_.push_back(key);
    index_.emplace(std::move(key), id);
    return id;
}

std::optional<std::uint32_t> SymbolTable::find(std::string_view name) const {
    if (auto it = index_.find(std::string(name)); it != index_.end()) return it->second;
    return std::nullopt;
}

Word::Word(std::vector<Letter> letters) {
    end_ = letters.size();
    if (end_ != 0) buf_ = std::make_shared<const std::vector<Letter>>(std::move(letters));
}

std::span<const Letter> Word::letters() const noexcept {
    if (empty()) return {};
    return std::span<const Letter>(buf_->data() + begin_, size());
}

std::vector<Letter> Word::to_vector() const {
    auto s = letters();
    return {s.begin(), s.end()};
}

Word Word::pushed_back(Letter a) const {
    std::vector<Letter> v;
    v.reserve(size() + 1);
    auto s = letters();
    v.assign(s.begin(), s.end());
    v.push_back(a);
    return Word(std::move(v));
}

Word Word::popped_front() const {
    if (empty()) throw InputError("popped_front on empty word");
    Word w = *this;
    ++w.begin_;
    if (w.empty()) return Word();
    return w;
}

Word Word::concat(const Word& other) const {
    if (other.empty()) return *this;
    if (empty()) return other;
    std::vector<Letter> v = to_vector();
    auto s = other.letters();
    v.insert(v.end(), s.begin(), s.end());
    return Word(std::move(v));
}

bool Word::operator==(const Word& other) const {
    auto a = letters();
    auto b = other.letters();
    return std::equal(a.begin(), a.end(), b.begin(), b.end());
}

std::strong_ordering Word::operator<=>(const Word& other) const {
    auto a = letters();
    auto b = other.letters();
    return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
}

std::size_t Word::hash() const noexcept {
    std::size_t seed = size();
    for (Letter a : letters()) hash_mix(seed, a);
    return seed;
}

std::strong_ordering FifoConfig::operator<=>(const FifoConfig& other) const {
    if (auto c = control <=> other.control; c != 0) return c;
    return std::lexicographical_compare_three_way(contents.begin(), contents.end(),
                                                  other.contents.begin(), other.contents.end());
}

std::size_t CounterConfigHash::operator()(const CounterConfig& x) const noexcept {
    std::size_t seed = x.control;
    for (auto v : x.values) hash_mix(seed, static_cast<std::size_t>(v));
    return seed;
}

std::size_t FifoConfigHash::operator()(const FifoConfig& x) const noexcept {
    std::size_t seed = x.control;
    for (const auto& w : x.contents) hash_mix(seed, w.hash());
    return seed;
}

bool nat_vec_leq(std::span<const std::uint64_t> u, std::span<const std::uint64_t> v) {
    if (u.size() != v.size())
        throw InputError("nat_vec_leq: dimension mismatch (" + std::to_string(u.size()) +
                         " vs " + std::to_string(v.size()) + ")");
    for (std::size_t i = 0; i < u.size(); ++i)
        if (u[i] > v[i]) return false;
    return true;
}

bool prefix_leq(const Word& u, const Word& w) {
    if (u.size() > w.size()) return false;
    auto a = u.letters();
    auto b = w.letters();
    return std::equal(a.begin(), a.end(), b.begin());
}

bool ext_prefix_leq(const FifoConfig& x, const FifoConfig& y) {
    if (x.contents.size() != y.contents.size())
        throw InputError("ext_prefix_leq: channel count mismatch");
    if (x.control != y.control) return false;
    for (std::size_t c = 0; c < x.contents.size(); ++c)
        if (!prefix_leq(x.contents[c], y.contents[c])) return false;
    return true;
}

bool counter_state_leq(const CounterConfig& x, const CounterConfig& y) {
    if (x.values.size() != y.values.size())
        throw InputError("counter_state_leq: counter count mismatch");
    return x.control == y.control && nat_vec_leq(x.values, y.values);
}

OrderRel<CounterConfig> counter_order() {
    return OrderRel<CounterConfig>(
        [](const CounterConfig& x, const CounterConfig& y) { return counter_state_leq(x, y); },
        [](const CounterConfig& x, const CounterConfig& y) { return x == y; }, true);
}

OrderRel<FifoConfig> fifo_order() {
    return OrderRel<FifoConfig>(
        [](const FifoConfig& x, const FifoConfig& y) { return ext_prefix_leq(x, y); },
        [](const FifoConfig& x, const FifoConfig& y) { return x == y; }, true);
}

}  // namespace bwsts
