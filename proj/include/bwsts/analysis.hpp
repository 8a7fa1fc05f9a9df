// SPDX-License-Identifier: Apache-2.0

#ifndef BWSTS_ANALYSIS_HPP
#define BWSTS_ANALYSIS_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bwsts/model.hpp"
#include "bwsts/rrt.hpp"

namespace bwsts {

enum class Analysis { Boundedness, Termination, NontermIterable, Cmrz, X0Cover };

std::optional<Analysis> parse_analysis(std::string_view name);
std::string analysis_name(Analysis a);

inline constexpr std::size_t kDefaultBudget = 10000;

struct CheckOptions {
    std::size_t budget = kDefaultBudget;
    std::optional<std::string> target;
    bool assert_strict_monotone = false;
    bool assert_cover_monotone = false;
    bool want_dot = false;
};

/// Certificate in structured form; the text and JSON renderings are both
/// produced from this data.
struct Witness {
    std::string kind;  // empty when there is no witness
    std::vector<std::string> run;
    std::vector<std::pair<std::string, std::string>> fields;
};

struct Report {
    std::string command;
    std::string machine;
    std::string verdict;
    Outcome outcome = Outcome::Inconclusive;
    int exit_code = 2;
    Witness witness;
    std::size_t budget = 0;
    std::size_t budget_used = 0;
    double elapsed_ms = 0.0;
    std::vector<std::string> notes;
    std::string dot;  // empty unless requested and available

    std::string to_json() const;
    std::string to_text() const;
};

/// Runs one analysis. Throws UsageError when the analysis does not fit the
/// machine kind or a required option is missing.
Report cmd_check(const ModelFile& model, Analysis analysis, const CheckOptions& options);

struct ProductResult {
    ModelFile model;
    std::vector<std::string> letter_map;  // "a_1 -> a"
    std::string text;                     // printed model including the letter_map comment block
};

/// Distinct-letter normalisation followed by the product with the send and
/// receive automata. Requires a FIFO model with a bound clause on every
/// channel and empty initial channels.
ProductResult build_product(const ModelFile& model, bool prune = true);

}  // namespace bwsts

#endif  // BWSTS_ANALYSIS_HPP
