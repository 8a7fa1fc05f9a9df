// SPDX-License-Identifier: Apache-2.0

#include "bwsts/model.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "bwsts/error.hpp"

namespace bwsts {

bool ModelFile::fully_bounded() const {
    return kind == ModelKind::Fifo && !bounds.empty() &&
           std::all_of(bounds.begin(), bounds.end(), [](const auto& b) { return b.has_value(); });
}

namespace {

enum class Tok { Ident, Str, Punct, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    std::size_t line = 0;
    std::size_t col = 0;
};

bool ident_char(unsigned char c) {
    return std::isalnum(c) || c == '_' || c == '.' || c == '\'' || c >= 0x80;
}

[[noreturn]] void syntax(std::size_t line, std::size_t col, const std::string& msg) {
    throw ParseError(ParseError::Kind::Syntax, line, col, msg);
}

[[noreturn]] void semantic(const Token& at, const std::string& msg) {
    throw ParseError(ParseError::Kind::Semantic, at.line, at.col, msg);
}

std::vector<Token> lex_line(std::string_view s, std::size_t line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        const auto c = static_cast<unsigned char>(s[i]);
        if (c == '#') break;
        if (std::isspace(c)) {
            ++i;
            continue;
        }
        Token t;
        t.line = line;
        t.col = i + 1;
        if (ident_char(c)) {
            std::size_t j = i;
            while (j < s.size() && ident_char(static_cast<unsigned char>(s[j]))) ++j;
            t.kind = Tok::Ident;
            t.text = std::string(s.substr(i, j - i));
            i = j;
        } else if (c == '"') {
            auto j = s.find('"', i + 1);
            if (j == std::string_view::npos) syntax(line, i + 1, "unterminated string");
            t.kind = Tok::Str;
            t.text = std::string(s.substr(i + 1, j - i - 1));
            i = j + 1;
        } else if (s.substr(i, 3) == "-->") {
            t.kind = Tok::Punct;
            t.text = "-->";
            i += 3;
        } else if (s.substr(i, 2) == "--") {
            t.kind = Tok::Punct;
            t.text = "--";
            i += 2;
        } else if (std::string_view("()[]:,!?=*@").find(static_cast<char>(c)) != std::string_view::npos) {
            t.kind = Tok::Punct;
            t.text = std::string(1, static_cast<char>(c));
            ++i;
        } else {
            syntax(line, i + 1, std::string("unexpected character '") + static_cast<char>(c) + "'");
        }
        out.push_back(std::move(t));
    }
    return out;
}

class Cursor {
public:
    Cursor(std::vector<Token> toks, std::size_t line, std::size_t eol_col)
        : toks_(std::move(toks)), line_(line), eol_col_(eol_col) {}

    bool done() const { return pos_ >= toks_.size(); }
    const Token& peek() const {
        static const Token end{};
        return done() ? end : toks_[pos_];
    }
    bool at(std::string_view punct) const { return !done() && peek().kind == Tok::Punct && peek().text == punct; }
    bool at_ident() const { return !done() && peek().kind == Tok::Ident; }

    Token take() {
        if (done()) syntax(line_, eol_col_, "unexpected end of line");
        return toks_[pos_++];
    }
    Token expect(std::string_view punct) {
        if (!at(punct)) fail("expected '" + std::string(punct) + "'");
        return toks_[pos_++];
    }
    Token ident(const std::string& what) {
        if (!at_ident()) fail("expected " + what);
        return toks_[pos_++];
    }
    Token str(const std::string& what) {
        if (done() || peek().kind != Tok::Str) fail("expected " + what);
        return toks_[pos_++];
    }
    void finish() {
        if (!done()) fail("unexpected '" + peek().text + "'");
    }
    [[noreturn]] void fail(const std::string& msg) const {
        if (done()) syntax(line_, eol_col_, msg + " at end of line");
        syntax(peek().line, peek().col, msg + ", found '" + peek().text + "'");
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::size_t line_;
    std::size_t eol_col_;
};

std::uint32_t lookup(const SymbolTable& table, const Token& t, const char* what) {
    auto id = table.find(t.text);
    if (!id) semantic(t, std::string("unknown ") + what + " '" + t.text + "'");
    return *id;
}

void declare(SymbolTable& table, Cursor& cur, const char* what) {
    if (table.size() != 0) semantic(cur.peek(), std::string(what) + " declared twice");
    while (!cur.done()) {
        auto t = cur.ident(std::string(what) + " name");
        if (table.find(t.text)) semantic(t, std::string("duplicate ") + what + " '" + t.text + "'");
        table.intern(t.text);
    }
}

bool single_char_letters(const SymbolTable& alphabet) {
    return alphabet.size() > 0 && std::all_of(alphabet.names().begin(), alphabet.names().end(),
                                               [](const std::string& n) { return n.size() == 1; });
}

std::uint64_t parse_nat(const Token& t) {
    if (t.text.empty() || !std::all_of(t.text.begin(), t.text.end(), [](unsigned char c) { return std::isdigit(c); }))
        syntax(t.line, t.col, "expected a natural number, found '" + t.text + "'");
    try {
        return std::stoull(t.text);
    } catch (const std::exception&) {
        syntax(t.line, t.col, "number out of range");
    }
}

struct Parser {
    ModelFile m;
    bool have_kind = false;
    bool have_init = false;
    bool have_states = false;
    bool have_transitions = false;
    std::size_t last_line = 0;

    SymbolTable& states() { return m.kind == ModelKind::Counter ? m.counter.states : m.fifo.states; }

    void kind_line(Cursor& cur) {
        auto k = cur.ident("'counter' or 'fifo'");
        if (k.text == "counter") {
            m.kind = ModelKind::Counter;
        } else if (k.text == "fifo") {
            m.kind = ModelKind::Fifo;
        } else {
            syntax(k.line, k.col, "expected 'counter' or 'fifo', found '" + k.text + "'");
        }
        auto name = cur.ident("machine name");
        (m.kind == ModelKind::Counter ? m.counter.name : m.fifo.name) = name.text;
        cur.finish();
        have_kind = true;
    }

    void statement(Cursor& cur) {
        const Token head = cur.peek();
        // Keywords are reserved: they cannot be used as state names.
        if (head.kind == Tok::Ident) {
            if (head.text == "states") {
                cur.take();
                declare(states(), cur, "state");
                have_states = true;
                return;
            }
            if (head.text == "counters") {
                cur.take();
                if (m.kind != ModelKind::Counter) semantic(head, "'counters' in a fifo model");
                declare(m.counter.counters, cur, "counter");
                return;
            }
            if (head.text == "channels") {
                cur.take();
                if (m.kind != ModelKind::Fifo) semantic(head, "'channels' in a counter model");
                declare(m.fifo.channels, cur, "channel");
                m.bounds.assign(m.fifo.channels.size(), std::nullopt);
                return;
            }
            if (head.text == "alphabet") {
                cur.take();
                if (m.kind != ModelKind::Fifo) semantic(head, "'alphabet' in a counter model");
                declare(m.fifo.alphabet, cur, "letter");
                return;
            }
            if (head.text == "bound" || head.text == "input_bounded") {
                cur.take();
                bound_clause(head, cur);
                return;
            }
            if (head.text == "init") {
                cur.take();
                init_clause(head, cur);
                return;
            }
        }
        transition(cur);
    }

    void transition(Cursor& cur) {
        auto src = cur.ident("a statement or transition");
        if (!cur.at("--")) cur.fail("expected '--' after source state");
        cur.take();
        if (!have_states) semantic(src, "transition before 'states' declaration");
        const auto source = lookup(states(), src, "state");
        if (m.kind == ModelKind::Counter)
            counter_action(cur, source);
        else
            fifo_action(cur, source);
        have_transitions = true;
    }

    void counter_action(Cursor& cur, StateId source) {
        CounterTransition t;
        t.source = source;
        auto op = cur.ident("counter operation");
        std::set<std::size_t> zero;
        auto counter_list = [&](std::set<std::size_t>& into) {
            do {
                auto c = cur.ident("counter name");
                into.insert(lookup(m.counter.counters, c, "counter"));
            } while (cur.at(",") && (cur.take(), true));
        };
        if (op.text == "inc" || op.text == "dec") {
            t.op = op.text == "inc" ? CounterOp::Inc : CounterOp::Dec;
            cur.expect("(");
            auto c = cur.ident("counter name");
            t.counter = lookup(m.counter.counters, c, "counter");
            cur.expect(")");
        } else if (op.text == "noop") {
            t.op = CounterOp::Noop;
        } else if (op.text == "zero") {
            t.op = CounterOp::Noop;
            cur.expect("(");
            counter_list(zero);
            cur.expect(")");
        } else {
            syntax(op.line, op.col, "expected inc, dec, noop or zero, found '" + op.text + "'");
        }
        if (cur.at("[")) {
            cur.take();
            auto kw = cur.ident("'zero'");
            if (kw.text != "zero") syntax(kw.line, kw.col, "expected 'zero', found '" + kw.text + "'");
            cur.expect(":");
            counter_list(zero);
            cur.expect("]");
        }
        cur.expect("-->");
        auto dst = cur.ident("target state");
        t.target = lookup(m.counter.states, dst, "state");
        cur.finish();
        t.zero_tests.assign(zero.begin(), zero.end());
        m.counter.transitions.push_back(std::move(t));
    }

    void fifo_action(Cursor& cur, StateId source) {
        FifoTransition t;
        t.source = source;
        if (cur.at_ident()) {
            auto ch = cur.take();
            t.action.channel = lookup(m.fifo.channels, ch, "channel");
        } else {
            if (m.fifo.channels.size() != 1) cur.fail("expected channel name");
            t.action.channel = 0;
        }
        if (cur.at("!")) {
            t.action.dir = Direction::Send;
        } else if (cur.at("?")) {
            t.action.dir = Direction::Recv;
        } else {
            cur.fail("expected '!' or '?'");
        }
        cur.take();
        auto a = cur.ident("letter");
        t.action.letter = lookup(m.fifo.alphabet, a, "letter");
        cur.expect("-->");
        auto dst = cur.ident("target state");
        t.target = lookup(m.fifo.states, dst, "state");
        cur.finish();
        m.fifo.transitions.push_back(t);
    }

    std::vector<Letter> letters_of(const Token& t) {
        auto w = split_word(m.fifo.alphabet, t.text);
        if (!w) semantic(t, "unknown letter in '" + t.text + "'");
        return *w;
    }

    void bound_clause(const Token& head, Cursor& cur) {
        if (m.kind != ModelKind::Fifo) semantic(head, "bound clause in a counter model");
        auto ch = cur.ident("channel name");
        const auto c = lookup(m.fifo.channels, ch, "channel");
        if (m.bounds[c]) semantic(ch, "second bound clause for channel '" + ch.text + "'");
        cur.expect(":");
        BoundedLang lang;
        if (cur.done()) cur.fail("expected '('");
        while (!cur.done()) {
            auto open = cur.expect("(");
            std::vector<Letter> word;
            while (cur.at_ident()) {
                auto part = letters_of(cur.take());
                word.insert(word.end(), part.begin(), part.end());
            }
            cur.expect(")");
            if (cur.at("*")) cur.take();
            if (word.empty()) semantic(open, "empty block in bound clause");
            lang.words.push_back(std::move(word));
        }
        m.bounds[c] = std::move(lang);
    }

    void init_clause(const Token& head, Cursor& cur) {
        if (have_init) semantic(head, "second 'init' clause");
        auto q = cur.ident("initial state");
        const auto id = lookup(states(), q, "state");
        if (m.kind == ModelKind::Counter) {
            m.counter.initial = id;
            m.counter_init = CounterConfig{id, NatVec(m.counter.dimension(), 0)};
            if (cur.at_ident()) {
                auto kw = cur.take();
                if (kw.text != "values") syntax(kw.line, kw.col, "expected 'values', found '" + kw.text + "'");
                auto open = cur.expect("(");
                NatVec v;
                if (!cur.at(")")) {
                    v.push_back(parse_nat(cur.ident("number")));
                    while (cur.at(",")) {
                        cur.take();
                        v.push_back(parse_nat(cur.ident("number")));
                    }
                }
                cur.expect(")");
                if (v.size() != m.counter.dimension())
                    semantic(open, "expected " + std::to_string(m.counter.dimension()) + " initial values, found " +
                                       std::to_string(v.size()));
                m.counter_init.values = std::move(v);
            }
        } else {
            m.fifo.initial = id;
            m.fifo_init = FifoConfig{id, std::vector<Word>(m.fifo.channels.size())};
            std::set<std::size_t> seen;
            while (!cur.done()) {
                auto ch = cur.ident("channel name");
                const auto c = lookup(m.fifo.channels, ch, "channel");
                if (!seen.insert(c).second) semantic(ch, "channel '" + ch.text + "' initialised twice");
                cur.expect("=");
                m.fifo_init.contents[c] = Word(letters_of(cur.str("quoted word")));
            }
        }
        cur.finish();
        have_init = true;
    }
};

}  // namespace

std::optional<std::vector<Letter>> split_word(const SymbolTable& alphabet, std::string_view text) {
    std::vector<Letter> out;
    const bool single = single_char_letters(alphabet);
    std::istringstream is{std::string(text)};
    std::string piece;
    while (is >> piece) {
        if (auto id = alphabet.find(piece)) {
            out.push_back(*id);
            continue;
        }
        if (!single) return std::nullopt;
        for (char ch : piece) {
            auto id = alphabet.find(std::string(1, ch));
            if (!id) return std::nullopt;
            out.push_back(*id);
        }
    }
    return out;
}

ModelFile parse_model(std::string_view text) {
    Parser p;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        auto line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        ++line_no;
        auto toks = lex_line(line, line_no);
        if (!toks.empty()) {
            p.last_line = line_no;
            Cursor cur(std::move(toks), line_no, line.size() + 1);
            if (!p.have_kind) {
                p.kind_line(cur);
            } else {
                p.statement(cur);
            }
        }
        if (end == text.size()) break;
        start = end + 1;
    }
    if (!p.have_kind) syntax(line_no ? line_no : 1, 1, "empty model: expected 'counter' or 'fifo' header");
    const Token eof{Tok::End, "", p.last_line ? p.last_line : 1, 1};
    if (!p.have_states) semantic(eof, "missing 'states' declaration");
    if (!p.have_init) semantic(eof, "missing 'init' clause");
    auto& m = p.m;
    if (m.kind == ModelKind::Fifo) {
        if (m.fifo.channels.size() == 0) semantic(eof, "missing 'channels' declaration");
        if (m.fifo.alphabet.size() == 0) semantic(eof, "missing 'alphabet' declaration");
        m.fifo.validate();
    } else {
        m.counter.validate();
    }
    return m;
}

ModelFile load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read model file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_model(ss.str());
}

namespace {

std::string word_literal(const SymbolTable& alphabet, std::span<const Letter> w) {
    const bool single = single_char_letters(alphabet);
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i && !single) s += ' ';
        s += alphabet.name(w[i]);
    }
    return s;
}

void print_names(std::ostream& os, const char* kw, const SymbolTable& t) {
    os << kw;
    for (const auto& n : t.names()) os << ' ' << n;
    os << '\n';
}

}  // namespace

std::string print_model(const ModelFile& m, const std::vector<std::string>& comments) {
    std::ostringstream os;
    if (m.kind == ModelKind::Counter) {
        const auto& cm = m.counter;
        os << "counter " << cm.name << '\n';
        for (const auto& c : comments) os << "# " << c << '\n';
        print_names(os, "states", cm.states);
        if (cm.counters.size()) print_names(os, "counters", cm.counters);
        for (const auto& t : cm.transitions) {
            os << cm.states.name(static_cast<std::uint32_t>(t.source)) << " -- ";
            std::string zero;
            for (std::size_t i = 0; i < t.zero_tests.size(); ++i)
                zero += (i ? "," : "") + cm.counters.name(static_cast<std::uint32_t>(t.zero_tests[i]));
            if (t.op == CounterOp::Noop) {
                os << (zero.empty() ? "noop" : "zero(" + zero + ")");
            } else {
                os << (t.op == CounterOp::Inc ? "inc(" : "dec(") << cm.counters.name(static_cast<std::uint32_t>(t.counter))
                   << ")";
                if (!zero.empty()) os << " [zero: " << zero << "]";
            }
            os << " --> " << cm.states.name(static_cast<std::uint32_t>(t.target)) << '\n';
        }
        os << "init " << cm.states.name(static_cast<std::uint32_t>(m.counter_init.control));
        if (std::any_of(m.counter_init.values.begin(), m.counter_init.values.end(), [](auto v) { return v != 0; })) {
            os << " values (";
            for (std::size_t i = 0; i < m.counter_init.values.size(); ++i)
                os << (i ? ", " : "") << m.counter_init.values[i];
            os << ")";
        }
        os << '\n';
        return os.str();
    }

    const auto& fm = m.fifo;
    os << "fifo " << fm.name << '\n';
    for (const auto& c : comments) os << "# " << c << '\n';
    print_names(os, "states", fm.states);
    print_names(os, "channels", fm.channels);
    print_names(os, "alphabet", fm.alphabet);
    for (const auto& t : fm.transitions) {
        os << fm.states.name(static_cast<std::uint32_t>(t.source)) << " -- "
           << fm.channels.name(static_cast<std::uint32_t>(t.action.channel))
           << (t.action.dir == Direction::Send ? '!' : '?') << fm.alphabet.name(t.action.letter) << " --> "
           << fm.states.name(static_cast<std::uint32_t>(t.target)) << '\n';
    }
    for (std::size_t c = 0; c < m.bounds.size(); ++c) {
        if (!m.bounds[c]) continue;
        os << "bound " << fm.channels.name(static_cast<std::uint32_t>(c)) << ":";
        for (std::size_t i = 0; i < m.bounds[c]->words.size(); ++i)
            os << (i ? "" : " ") << "(" << word_literal(fm.alphabet, m.bounds[c]->words[i]) << ")";
        os << '\n';
    }
    os << "init " << fm.states.name(static_cast<std::uint32_t>(m.fifo_init.control));
    for (std::size_t c = 0; c < m.fifo_init.contents.size(); ++c) {
        if (m.fifo_init.contents[c].empty()) continue;
        os << ' ' << fm.channels.name(static_cast<std::uint32_t>(c)) << "=\""
           << word_literal(fm.alphabet, m.fifo_init.contents[c].letters()) << '"';
    }
    os << '\n';
    return os.str();
}

namespace {

std::pair<std::string_view, std::string_view> split_target(std::string_view text) {
    auto colon = text.find(':');
    if (colon == std::string_view::npos) return {text, {}};
    return {text.substr(0, colon), text.substr(colon + 1)};
}

std::string trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return std::string(s);
}

}  // namespace

CounterConfig parse_counter_target(const CounterMachine& machine, std::string_view text) {
    auto [qs, rest] = split_target(text);
    auto q = machine.states.find(trim(qs));
    if (!q) throw InputError("target: unknown state '" + trim(qs) + "'");
    CounterConfig x{*q, NatVec(machine.dimension(), 0)};
    auto body = trim(rest);
    if (body.empty()) return x;
    if (body.front() != '(' || body.back() != ')') throw InputError("target: expected q:(v1,...,vk)");
    body = body.substr(1, body.size() - 2);
    NatVec v;
    std::istringstream is(body);
    std::string item;
    while (std::getline(is, item, ',')) {
        auto t = trim(item);
        if (t.empty() || !std::all_of(t.begin(), t.end(), [](unsigned char c) { return std::isdigit(c); }))
            throw InputError("target: '" + t + "' is not a natural number");
        v.push_back(std::stoull(t));
    }
    if (v.size() != machine.dimension())
        throw InputError("target: expected " + std::to_string(machine.dimension()) + " values, found " +
                         std::to_string(v.size()));
    x.values = std::move(v);
    return x;
}

FifoConfig parse_fifo_target(const FifoMachine& machine, std::string_view text) {
    auto [qs, rest] = split_target(text);
    auto q = machine.states.find(trim(qs));
    if (!q) throw InputError("target: unknown state '" + trim(qs) + "'");
    FifoConfig x{*q, std::vector<Word>(machine.channels.size())};
    auto body = trim(rest);
    if (body.empty()) return x;
    if (body.front() != '"') throw InputError("target: expected q:\"w\"@ch");
    auto close = body.find('"', 1);
    if (close == std::string::npos) throw InputError("target: unterminated word");
    auto word = body.substr(1, close - 1);
    auto tail = trim(std::string_view(body).substr(close + 1));
    std::size_t channel = 0;
    if (tail.empty()) {
        if (machine.channels.size() != 1) throw InputError("target: '@channel' is required with several channels");
    } else {
        if (tail.front() != '@') throw InputError("target: expected '@channel' after the word");
        auto c = machine.channels.find(trim(std::string_view(tail).substr(1)));
        if (!c) throw InputError("target: unknown channel '" + tail.substr(1) + "'");
        channel = *c;
    }
    auto w = split_word(machine.alphabet, word);
    if (!w) throw InputError("target: unknown letter in \"" + word + "\"");
    x.contents[channel] = Word(*w);
    return x;
}

}  // namespace bwsts
