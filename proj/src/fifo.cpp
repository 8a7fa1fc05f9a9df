// SPDX-License-Identifier: Apache-2.0

#include "bwsts/fifo.hpp"

#include <algorithm>
#include <deque>
#include <memory>
#include <set>
#include <sstream>

#include "bwsts/error.hpp"

namespace bwsts {

void FifoMachine::validate() const {
    if (states.size() == 0) throw InputError("FIFO machine has no control states");
    if (initial >= states.size()) throw InputError("initial control state out of range");
    for (std::size_t i = 0; i < transitions.size(); ++i) {
        const auto& t = transitions[i];
        if (t.source >= states.size() || t.target >= states.size())
            throw InputError("transition " + std::to_string(i) + " references an unknown state");
        if (t.action.channel >= channels.size())
            throw InputError("transition " + std::to_string(i) + " references an unknown channel");
        if (t.action.letter >= alphabet.size())
            throw InputError("transition " + std::to_string(i) + " references an unknown letter");
    }
}

std::string FifoMachine::action_text(const Action& a) const {
    std::string s;
    if (channels.size() != 1) s = channels.name(static_cast<std::uint32_t>(a.channel));
    s += a.dir == Direction::Send ? "!" : "?";
    s += alphabet.name(a.letter);
    return s;
}

std::string FifoMachine::label(Label t) const { return action_text(transitions.at(t).action); }

std::string FifoMachine::word_text(std::span<const Letter> w) const {
    if (w.empty()) return "ε";
    bool single = std::all_of(alphabet.names().begin(), alphabet.names().end(),
                              [](const std::string& n) { return n.size() == 1; });
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i && !single) s += ' ';
        s += alphabet.name(w[i]);
    }
    return s;
}

std::string FifoMachine::describe(const FifoConfig& x) const {
    std::ostringstream os;
    os << "(" << states.name(static_cast<std::uint32_t>(x.control));
    for (std::size_t c = 0; c < x.contents.size(); ++c) {
        os << ", ";
        if (channels.size() != 1) os << channels.name(static_cast<std::uint32_t>(c)) << "=";
        os << word_text(x.contents[c].letters());
    }
    os << ")";
    return os.str();
}

FifoConfig FifoMachine::initial_config() const {
    return FifoConfig{initial, std::vector<Word>(channels.size())};
}

std::optional<FifoConfig> fifo_step(const FifoMachine& machine, const FifoConfig& x, Label t) {
    if (t >= machine.transitions.size())
        throw InputError("fifo_step: unknown transition " + std::to_string(t));
    if (x.contents.size() != machine.channels.size())
        throw InputError("fifo_step: channel count does not match the machine");
    const auto& tr = machine.transitions[t];
    if (x.control != tr.source) return std::nullopt;
    const auto c = tr.action.channel;
    FifoConfig y{tr.target, x.contents};
    if (tr.action.dir == Direction::Send) {
        y.contents[c] = x.contents[c].pushed_back(tr.action.letter);
    } else {
        if (x.contents[c].empty() || x.contents[c].front() != tr.action.letter) return std::nullopt;
        y.contents[c] = x.contents[c].popped_front();
    }
    return y;
}

std::vector<Successor<FifoConfig>> fifo_post(const FifoMachine& machine, const FifoConfig& x) {
    std::vector<Successor<FifoConfig>> out;
    for (Label t = 0; t < machine.transitions.size(); ++t) {
        if (machine.transitions[t].source != x.control) continue;
        if (auto y = fifo_step(machine, x, t)) out.push_back({t, std::move(*y)});
    }
    return out;
}

FifoRun fifo_run(const FifoMachine& machine, const FifoConfig& x0, std::span<const Label> labels) {
    FifoRun run{x0, std::nullopt};
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] >= machine.transitions.size())
            throw InputError("fifo_run: unknown label at index " + std::to_string(i));
        auto y = fifo_step(machine, run.last, labels[i]);
        if (!y) {
            run.stuck_at = i;
            return run;
        }
        run.last = std::move(*y);
    }
    return run;
}

std::vector<Action> actions_of(const FifoMachine& machine, std::span<const Label> labels) {
    std::vector<Action> out;
    out.reserve(labels.size());
    for (auto t : labels) out.push_back(machine.transitions.at(t).action);
    return out;
}

namespace {

std::vector<Letter> project(std::span<const Action> sigma, std::size_t channel, Direction dir) {
    std::vector<Letter> out;
    for (const auto& a : sigma)
        if (a.channel == channel && a.dir == dir) out.push_back(a.letter);
    return out;
}

}  // namespace

std::vector<Letter> send_proj(std::span<const Action> sigma, std::size_t channel) {
    return project(sigma, channel, Direction::Send);
}

std::vector<Letter> recv_proj(std::span<const Action> sigma, std::size_t channel) {
    return project(sigma, channel, Direction::Recv);
}

// ---------------------------------------------------------------------------
// Bounded languages

bool BoundedLang::distinct_letter() const {
    std::set<Letter> seen;
    for (const auto& w : words)
        for (auto a : w)
            if (!seen.insert(a).second) return false;
    return true;
}

void BoundedLang::validate() const {
    for (std::size_t i = 0; i < words.size(); ++i)
        if (words[i].empty())
            throw InputError("bounded language block " + std::to_string(i + 1) + " is empty");
}

bool BoundedLang::prefix_member(std::span<const Letter> w) const {
    // Nondeterministic position tracking: (block, offset inside the block).
    std::set<std::pair<std::size_t, std::size_t>> cur{{0, 0}};
    for (auto a : w) {
        std::set<std::pair<std::size_t, std::size_t>> next;
        for (auto [i, j] : cur) {
            if (j > 0) {
                if (words[i][j] == a) next.insert({i, (j + 1) % words[i].size()});
                continue;
            }
            for (std::size_t k = i; k < words.size(); ++k)
                if (words[k][0] == a) next.insert({k, 1 % words[k].size()});
        }
        if (next.empty()) return false;
        cur = std::move(next);
    }
    return true;
}

NormalizedMachine normalize_distinct_letter(const FifoMachine& machine,
                                            const std::vector<BoundedLang>& langs) {
    if (langs.size() != machine.channels.size())
        throw InputError("normalize_distinct_letter: expected one bounded language per channel");
    for (const auto& l : langs) {
        l.validate();
        for (const auto& w : l.words)
            for (auto a : w)
                if (a >= machine.alphabet.size())
                    throw InputError("bounded language uses a letter outside the alphabet");
    }

    const bool already = std::all_of(langs.begin(), langs.end(),
                                     [](const BoundedLang& l) { return l.distinct_letter(); });

    NormalizedMachine out;
    out.machine = machine;
    out.machine.transitions.clear();
    out.machine.alphabet = SymbolTable{};

    // occurrence[c][a] = number of occurrences of original letter a in L_c.
    const std::size_t nletters = machine.alphabet.size();
    std::vector<std::vector<std::size_t>> occurrences(langs.size(), std::vector<std::size_t>(nletters, 0));
    std::vector<std::size_t> max_occ(nletters, 0);
    for (std::size_t c = 0; c < langs.size(); ++c) {
        for (const auto& w : langs[c].words)
            for (auto a : w) ++occurrences[c][a];
        for (std::size_t a = 0; a < nletters; ++a) max_occ[a] = std::max(max_occ[a], occurrences[c][a]);
    }

    // renamed[a][k] = new letter for the (k+1)-th occurrence of a.
    std::vector<std::vector<Letter>> renamed(nletters);
    auto fresh = [&](const std::string& base) {
        std::string candidate = base;
        while (out.machine.alphabet.find(candidate) || (candidate != base && machine.alphabet.find(candidate)))
            candidate += "'";
        return out.machine.alphabet.intern(candidate);
    };
    for (Letter a = 0; a < nletters; ++a) {
        const auto& name = machine.alphabet.name(a);
        if (already || max_occ[a] == 0) {
            renamed[a].push_back(fresh(name));
            out.letter_map.push_back(a);
            continue;
        }
        for (std::size_t k = 0; k < max_occ[a]; ++k) {
            renamed[a].push_back(fresh(name + "_" + std::to_string(k + 1)));
            out.letter_map.push_back(a);
        }
    }

    // Rewrite the languages occurrence by occurrence; remember which
    // occurrences of each letter exist per channel.
    std::vector<std::vector<std::vector<Letter>>> per_channel_copies(
        langs.size(), std::vector<std::vector<Letter>>(nletters));
    out.langs.resize(langs.size());
    for (std::size_t c = 0; c < langs.size(); ++c) {
        std::vector<std::size_t> seen(nletters, 0);
        for (const auto& w : langs[c].words) {
            std::vector<Letter> nw;
            for (auto a : w) {
                Letter b = already ? renamed[a][0] : renamed[a][seen[a]++];
                nw.push_back(b);
                per_channel_copies[c][a].push_back(b);
            }
            out.langs[c].words.push_back(std::move(nw));
        }
    }

    for (const auto& t : machine.transitions) {
        const auto& copies = per_channel_copies[t.action.channel][t.action.letter];
        std::set<Letter> distinct(copies.begin(), copies.end());
        for (auto b : distinct) {
            FifoTransition nt = t;
            nt.action.letter = b;
            out.machine.transitions.push_back(nt);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Position-tracking automata

std::optional<std::size_t> Dfa::next(std::size_t s, const Action& a) const {
    if (auto it = delta.find({s, a}); it != delta.end()) return it->second;
    return std::nullopt;
}

bool Dfa::accepts(std::span<const Action> word) const {
    std::size_t s = initial;
    for (const auto& a : word) {
        auto n = next(s, a);
        if (!n) return false;
        s = *n;
    }
    return accepting[s];
}

namespace {

// Deterministic tracker for a distinct-letter bounded language: the state is
// (block, offset) with offset 0 meaning "between two complete copies".
struct Tracker {
    const BoundedLang* lang;
    std::map<Letter, std::pair<std::size_t, std::size_t>> where;

    explicit Tracker(const BoundedLang& l) : lang(&l) {
        if (!l.distinct_letter())
            throw InputError("position automaton requires a distinct-letter bounded language");
        for (std::size_t i = 0; i < l.words.size(); ++i)
            for (std::size_t j = 0; j < l.words[i].size(); ++j) where[l.words[i][j]] = {i, j};
    }

    std::optional<std::pair<std::size_t, std::size_t>> step(std::pair<std::size_t, std::size_t> s,
                                                           Letter a) const {
        auto it = where.find(a);
        if (it == where.end()) return std::nullopt;
        auto [bi, bj] = it->second;
        auto [i, j] = s;
        if (j > 0) {
            if (bi != i || bj != j) return std::nullopt;
            return std::pair{i, (j + 1) % lang->words[i].size()};
        }
        if (bi < i || bj != 0) return std::nullopt;
        return std::pair{bi, 1 % lang->words[bi].size()};
    }
};

Dfa build_tracker_dfa(const std::vector<BoundedLang>& langs, std::size_t alphabet_size, Direction dir,
                      const std::string& prefix) {
    std::vector<Tracker> trackers;
    for (const auto& l : langs) {
        l.validate();
        trackers.emplace_back(l);
    }
    using Pos = std::vector<std::pair<std::size_t, std::size_t>>;

    std::vector<Action> alphabet;
    for (std::size_t c = 0; c < langs.size(); ++c)
        for (auto d : {Direction::Send, Direction::Recv})
            for (Letter a = 0; a < alphabet_size; ++a) alphabet.push_back({c, d, a});

    Dfa dfa;
    std::map<Pos, std::size_t> index;
    std::vector<Pos> states;
    auto add = [&](const Pos& p) {
        auto [it, inserted] = index.emplace(p, states.size());
        if (inserted) {
            states.push_back(p);
            dfa.state_names.push_back(prefix + std::to_string(it->second));
            bool acc = true;
            if (dir == Direction::Send)
                for (const auto& [i, j] : p) acc = acc && j == 0;
            dfa.accepting.push_back(acc);
        }
        return it->second;
    };
    dfa.initial = add(Pos(langs.size(), {0, 0}));
    for (std::size_t k = 0; k < states.size(); ++k) {
        for (const auto& act : alphabet) {
            Pos p = states[k];
            if (act.dir == dir) {
                auto n = trackers[act.channel].step(p[act.channel], act.letter);
                if (!n) continue;
                p[act.channel] = *n;
            }
            std::size_t target = add(p);
            dfa.delta[{k, act}] = target;
        }
    }
    return dfa;
}

}  // namespace

Dfa build_send_dfa(const std::vector<BoundedLang>& langs, std::size_t alphabet_size) {
    return build_tracker_dfa(langs, alphabet_size, Direction::Send, "s");
}

Dfa build_recv_dfa(const std::vector<BoundedLang>& langs, std::size_t alphabet_size) {
    return build_tracker_dfa(langs, alphabet_size, Direction::Recv, "r");
}

ProductMachine product_machine(const FifoMachine& machine, const Dfa& send_dfa, const Dfa& recv_dfa,
                               bool prune) {
    using Triple = std::array<std::size_t, 3>;
    std::map<Triple, std::size_t> index;
    std::vector<Triple> triples;
    struct Edge {
        std::size_t from;
        Action action;
        std::size_t to;
    };
    std::vector<Edge> edges;

    auto add = [&](const Triple& t) {
        auto [it, inserted] = index.emplace(t, triples.size());
        if (inserted) triples.push_back(t);
        return it->second;
    };
    add({machine.initial, send_dfa.initial, recv_dfa.initial});
    for (std::size_t k = 0; k < triples.size(); ++k) {
        for (const auto& tr : machine.transitions) {
            auto [q, s, r] = triples[k];
            if (tr.source != q) continue;
            auto s2 = send_dfa.next(s, tr.action);
            auto r2 = recv_dfa.next(r, tr.action);
            if (!s2 || !r2) continue;
            std::size_t to = add({tr.target, *s2, *r2});
            edges.push_back({k, tr.action, to});
        }
    }

    std::vector<bool> keep(triples.size(), true);
    if (prune) {
        // Backward reachability to control states with an accepting send state.
        std::vector<bool> live(triples.size(), false);
        std::deque<std::size_t> queue;
        for (std::size_t k = 0; k < triples.size(); ++k)
            if (send_dfa.accepting[triples[k][1]] && recv_dfa.accepting[triples[k][2]]) {
                live[k] = true;
                queue.push_back(k);
            }
        while (!queue.empty()) {
            auto k = queue.front();
            queue.pop_front();
            for (const auto& e : edges)
                if (e.to == k && !live[e.from]) {
                    live[e.from] = true;
                    queue.push_back(e.from);
                }
        }
        keep = live;
        keep[0] = true;  // the initial state always survives
    }

    ProductMachine out;
    out.machine.name = machine.name.empty() ? "product" : machine.name + "_product";
    out.machine.channels = machine.channels;
    out.machine.alphabet = machine.alphabet;
    std::vector<std::size_t> renumber(triples.size(), 0);
    for (std::size_t k = 0; k < triples.size(); ++k) {
        if (!keep[k]) continue;
        auto [q, s, r] = triples[k];
        renumber[k] = out.machine.states.intern(machine.states.name(static_cast<std::uint32_t>(q)) + "." +
                                                send_dfa.state_names[s] + "." + recv_dfa.state_names[r]);
        out.origin.push_back(triples[k]);
    }
    out.machine.initial = renumber[0];
    for (const auto& e : edges)
        if (keep[e.from] && keep[e.to])
            out.machine.transitions.push_back({renumber[e.from], e.action, renumber[e.to]});
    return out;
}

Olts<FifoConfig> fifo_olts(const FifoMachine& machine, const FifoConfig& x0) {
    auto m = std::make_shared<const FifoMachine>(machine);
    return Olts<FifoConfig>{
        x0,
        [m](const FifoConfig& x) { return fifo_post(*m, x); },
        [m](const FifoConfig& x, Label t) { return fifo_step(*m, x, t); },
        fifo_order(),
        [m](const FifoConfig& x) { return m->describe(x); },
        [m](Label t) { return m->label(t); },
    };
}

}  // namespace bwsts
