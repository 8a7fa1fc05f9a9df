// SPDX-License-Identifier: Apache-2.0

#ifndef BWSTS_MODEL_HPP
#define BWSTS_MODEL_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bwsts/counter.hpp"
#include "bwsts/fifo.hpp"

namespace bwsts {

enum class ModelKind { Counter, Fifo };

/// A parsed model file. Exactly one of the two machine halves is meaningful,
/// selected by `kind`.
struct ModelFile {
    ModelKind kind = ModelKind::Counter;

    CounterMachine counter;
    CounterConfig counter_init;

    FifoMachine fifo;
    FifoConfig fifo_init;
    /// One entry per channel; nullopt when the channel has no bound clause.
    std::vector<std::optional<BoundedLang>> bounds;

    const std::string& name() const { return kind == ModelKind::Counter ? counter.name : fifo.name; }
    bool fully_bounded() const;

    bool operator==(const ModelFile&) const = default;
};

/// Line-oriented model syntax:
///
///   counter NAME | fifo NAME
///   states q0 q1 ...
///   counters c d ...                 (counter models)
///   channels c ...                   (fifo models)
///   alphabet a b ...                 (fifo models)
///   q -- inc(c) [zero: c1,c2] --> q' (also dec(c), noop, zero(c1,c2))
///   q -- ch!a --> q' / q -- ch?a --> q'  (channel optional with one channel)
///   bound ch: (w1)(w2)...            (also `input_bounded ch: (w1)* (w2)*`)
///   init q [values (v1,...)] / init q [ch="w" ...]
///
/// `#` starts a comment. Errors carry 1-based line and column.
ModelFile parse_model(std::string_view text);

/// Reads and parses a file; unreadable files raise InputError.
ModelFile load_model(const std::string& path);

/// Canonical text; `comments` are emitted as `# ` lines after the kind line.
std::string print_model(const ModelFile& model, const std::vector<std::string>& comments = {});

/// `q:(v1,...,vk)`; `q` alone means all-zero values.
CounterConfig parse_counter_target(const CounterMachine& machine, std::string_view text);

/// `q:"w"@ch`, or `q:"w"` on single-channel machines; other channels empty.
FifoConfig parse_fifo_target(const FifoMachine& machine, std::string_view text);

/// Splits a word literal into letters: space-separated names, with
/// unseparated runs split into characters when every letter name is a
/// single character. nullopt on an unknown letter.
std::optional<std::vector<Letter>> split_word(const SymbolTable& alphabet, std::string_view text);

}  // namespace bwsts

#endif  // BWSTS_MODEL_HPP
