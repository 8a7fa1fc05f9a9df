// SPDX-License-Identifier: Apache-2.0

#include "bwsts/analysis.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <sstream>

#include <json.hpp>

#include "bwsts/counter.hpp"
#include "bwsts/cover.hpp"
#include "bwsts/error.hpp"

namespace bwsts {

namespace {

constexpr std::pair<Analysis, std::string_view> kAnalyses[] = {
    {Analysis::Boundedness, "boundedness"}, {Analysis::Termination, "termination"},
    {Analysis::NontermIterable, "nonterm-iterable"}, {Analysis::Cmrz, "cmrz"},
    {Analysis::X0Cover, "x0-cover"},
};

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? sep : "") + parts[i];
    return s;
}

template <class State>
std::vector<std::string> label_texts(const Olts<State>& sys, const std::vector<Label>& labels) {
    std::vector<std::string> out;
    for (auto l : labels) out.push_back(sys.describe_label(l));
    return out;
}

int exit_for(Outcome o) { return o == Outcome::Inconclusive ? 2 : 0; }

std::string exhausted_note(std::size_t budget) {
    return "budget of " + std::to_string(budget) + " nodes exhausted before a verdict was reached";
}

template <class State>
void rrt_analysis(Report& r, const Olts<State>& sys, Analysis a, const CheckOptions& opt, bool strict_monotone,
                  const std::function<bool(const State&, const std::vector<Label>&)>& iterable_ok) {
    const bool labelled = a == Analysis::NontermIterable;
    auto tree = labelled ? build_lrrt(sys, opt.budget) : build_rrt(sys, opt.budget);
    Verdict v;
    std::string pos, neg;
    switch (a) {
        case Analysis::Boundedness:
            v = decide_boundedness(tree, sys.order, strict_monotone);
            pos = "UNBOUNDED";
            neg = "BOUNDED";
            if (v.caveat)
                r.notes.push_back("strict branch-monotony was not asserted; the verdict assumes it");
            break;
        case Analysis::Termination:
            v = decide_nontermination(tree);
            pos = "NON-TERMINATING";
            neg = "TERMINATING";
            break;
        default: {
            v.budget = tree.budget;
            v.budget_used = tree.size();
            for (const auto& n : tree.nodes) {
                if (!n.iterable) continue;
                if (!iterable_ok(n.state, tree.segment(*n.subsumed_by, n.id))) continue;
                v.outcome = Outcome::Positive;
                v.witness = {*n.subsumed_by, n.id};
                break;
            }
            pos = "NON-TERMINATING";
            neg = "TERMINATING";
            if (v.outcome != Outcome::Positive)
                r.notes.push_back("no iterable node found; the criterion is only sufficient");
            break;
        }
    }
    r.outcome = v.outcome;
    r.budget = v.budget;
    r.budget_used = v.budget_used;
    r.verdict = v.outcome == Outcome::Positive ? pos : v.outcome == Outcome::Negative ? neg : "INCONCLUSIVE";
    if (v.outcome == Outcome::Inconclusive && tree.budget_exhausted) r.notes.push_back(exhausted_note(opt.budget));

    if (v.witness) {
        auto [anc, node] = *v.witness;
        const auto& n = tree.nodes[node];
        r.witness.kind = a == Analysis::Boundedness    ? "increasing-pair"
                         : a == Analysis::Termination ? "subsumed-node"
                                                       : "iterable-node";
        r.witness.run = label_texts(sys, tree.path_labels(node));
        r.witness.fields.emplace_back("ancestor", sys.describe_state(tree.nodes[anc].state));
        r.witness.fields.emplace_back("node", sys.describe_state(n.state));
        r.witness.fields.emplace_back("loop", join(label_texts(sys, tree.segment(anc, node)), " "));
        if (n.iterate_target) r.witness.fields.emplace_back("iterate", sys.describe_state(*n.iterate_target));
    } else if (v.outcome == Outcome::Negative) {
        r.witness.kind = "finite-tree";
        r.witness.fields.emplace_back("nodes", std::to_string(tree.size()));
    }
    if (opt.want_dot) r.dot = export_dot(tree, sys);
}

void check_counter(Report& r, const ModelFile& model, Analysis a, const CheckOptions& opt) {
    const auto& m = model.counter;
    if (a == Analysis::Cmrz) {
        auto c = is_cmrz(m);
        r.outcome = c.cmrz ? Outcome::Positive : Outcome::Negative;
        r.verdict = c.cmrz ? "CMRZ" : "NOT CMRZ";
        if (!c.cmrz) {
            r.witness.kind = "zero-test-path";
            std::vector<std::string> edges;
            for (auto t : c.witness) {
                r.witness.run.push_back(m.label(t));
                const auto& tr = m.transitions[t];
                edges.push_back(m.states.name(static_cast<std::uint32_t>(tr.source)) + " -- " + m.label(t) + " --> " +
                                m.states.name(static_cast<std::uint32_t>(tr.target)));
            }
            r.witness.fields.emplace_back("path", join(edges, "; "));
        }
        if (opt.want_dot) r.notes.push_back("no DOT output for this analysis");
        return;
    }
    if (a == Analysis::X0Cover) {
        if (!opt.target) throw UsageError("x0-cover needs --target q:(v1,...)");
        CounterConfig y;
        try {
            y = parse_counter_target(m, *opt.target);
        } catch (const InputError& e) {
            throw UsageError(e.what());
        }
        auto v = x0_coverability(m, model.counter_init, y, opt.budget);
        r.outcome = v.outcome;
        r.budget = v.budget;
        r.budget_used = v.budget_used;
        r.verdict = v.outcome == Outcome::Positive   ? "COVERABLE"
                    : v.outcome == Outcome::Negative ? "NOT COVERABLE"
                                                     : "INCONCLUSIVE";
        r.witness.fields.emplace_back("target", m.describe(y));
        if (v.outcome == Outcome::Positive) {
            r.witness.kind = "run";
            for (auto t : v.witness_run) r.witness.run.push_back(m.label(t));
            r.witness.fields.emplace_back("reaches", m.describe(*v.covering_state));
        } else if (v.invariant) {
            r.witness.kind = "inductive-invariant";
            r.witness.fields.emplace_back("invariant", v.invariant->to_string(m));
        } else if (v.reachability_exhausted) {
            r.witness.kind = "reachability-set";
            std::vector<std::string> states;
            for (const auto& x : v.reachable) states.push_back(m.describe(x));
            r.witness.fields.emplace_back("reachable", join(states, ", "));
        } else {
            r.witness = {};
            r.notes.push_back(exhausted_note(opt.budget));
        }
        if (!opt.assert_cover_monotone)
            r.notes.push_back("cover-monotony not asserted: certificates are exact, but the search may not terminate");
        if (opt.want_dot) r.notes.push_back("no DOT output for this analysis");
        return;
    }

    const bool cmrz = is_cmrz(m).cmrz;
    if (!cmrz && a != Analysis::Boundedness)
        r.notes.push_back("machine is not CMRZ: the tree need not be finite and the verdict assumes branch-monotony");
    auto sys = counter_olts(m, model.counter_init);
    rrt_analysis<CounterConfig>(r, sys, a, opt, opt.assert_strict_monotone || cmrz,
                                [](const CounterConfig&, const std::vector<Label>&) { return true; });
}

void check_fifo(Report& r, const ModelFile& model, Analysis a, const CheckOptions& opt) {
    if (a == Analysis::Cmrz || a == Analysis::X0Cover)
        throw UsageError("analysis '" + analysis_name(a) + "' applies to counter models only");
    if (std::any_of(model.bounds.begin(), model.bounds.end(), [](const auto& b) { return b.has_value(); }))
        r.notes.push_back("bound clauses are not applied here; analyse the output of `product` for the "
                          "input-bounded machine");
    const auto& m = model.fifo;
    auto sys = fifo_olts(m, model.fifo_init);
    rrt_analysis<FifoConfig>(r, sys, a, opt, opt.assert_strict_monotone,
                             [&m](const FifoConfig& x, const std::vector<Label>& sigma) {
                                 return check_fifo_infinite_iterability(m, x, sigma);
                             });
}

}  // namespace

std::optional<Analysis> parse_analysis(std::string_view name) {
    for (const auto& [a, n] : kAnalyses)
        if (n == name) return a;
    return std::nullopt;
}

std::string analysis_name(Analysis a) {
    for (const auto& [b, n] : kAnalyses)
        if (a == b) return std::string(n);
    return "?";
}

Report cmd_check(const ModelFile& model, Analysis analysis, const CheckOptions& options) {
    if (options.budget < 1) throw UsageError("--budget must be at least 1");
    const auto start = std::chrono::steady_clock::now();
    Report r;
    r.command = "check " + analysis_name(analysis);
    r.machine = model.name();
    if (model.kind == ModelKind::Counter)
        check_counter(r, model, analysis, options);
    else
        check_fifo(r, model, analysis, options);
    r.exit_code = exit_for(r.outcome);
    r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return r;
}

std::string Report::to_json() const {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["machine"] = machine;
    j["verdict"] = verdict;
    if (witness.kind.empty()) {
        j["witness"] = nullptr;
    } else {
        nlohmann::ordered_json w;
        w["kind"] = witness.kind;
        w["run"] = witness.run;
        for (const auto& [k, v] : witness.fields) w[k] = v;
        j["witness"] = std::move(w);
    }
    j["budget"] = budget;
    j["budget_used"] = budget_used;
    j["elapsed_ms"] = elapsed_ms;
    j["notes"] = notes;
    return j.dump(2);
}

std::string Report::to_text() const {
    std::ostringstream os;
    os << command << " " << machine << ": " << verdict << '\n';
    if (!witness.kind.empty()) {
        os << "witness (" << witness.kind << "):\n";
        if (!witness.run.empty()) os << "  run: " << join(witness.run, " ") << '\n';
        for (const auto& [k, v] : witness.fields) os << "  " << k << ": " << v << '\n';
    }
    if (budget) os << "budget: " << budget_used << " of " << budget << " used\n";
    for (const auto& n : notes) os << "note: " << n << '\n';
    return os.str();
}

ProductResult build_product(const ModelFile& model, bool prune) {
    if (model.kind != ModelKind::Fifo) throw UsageError("product needs a fifo model");
    for (std::size_t c = 0; c < model.bounds.size(); ++c)
        if (!model.bounds[c])
            throw UsageError("product needs a bound clause for channel '" +
                             model.fifo.channels.name(static_cast<std::uint32_t>(c)) + "'");
    for (const auto& w : model.fifo_init.contents)
        if (!w.empty()) throw UsageError("product needs empty initial channels");
    if (model.fifo_init.control != model.fifo.initial) throw UsageError("initial state mismatch");

    std::vector<BoundedLang> langs;
    for (const auto& b : model.bounds) langs.push_back(*b);
    auto norm = normalize_distinct_letter(model.fifo, langs);
    auto send = build_send_dfa(norm.langs, norm.machine.alphabet.size());
    auto recv = build_recv_dfa(norm.langs, norm.machine.alphabet.size());
    auto pm = product_machine(norm.machine, send, recv, prune);

    ProductResult out;
    out.model.kind = ModelKind::Fifo;
    out.model.fifo = pm.machine;
    out.model.fifo_init = pm.machine.initial_config();
    for (auto& l : norm.langs) out.model.bounds.emplace_back(std::move(l));
    for (Letter b = 0; b < norm.letter_map.size(); ++b)
        out.letter_map.push_back(norm.machine.alphabet.name(b) + " -> " + model.fifo.alphabet.name(norm.letter_map[b]));

    std::vector<std::string> comments{"product of " + model.fifo.name +
                                          " with its send and receive automata; states are q.s.r",
                                      "letter_map:"};
    for (const auto& e : out.letter_map) comments.push_back("  " + e);
    out.text = print_model(out.model, comments);
    return out;
}

}  // namespace bwsts
