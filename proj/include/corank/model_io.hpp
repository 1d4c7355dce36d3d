#ifndef CORANK_MODEL_IO_HPP
#define CORANK_MODEL_IO_HPP

#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "corank/game.hpp"
#include "corank/pts.hpp"
#include "corank/tree.hpp"

// Text formats: .lvs system models, .crt certificates, and reports as text or
// stable-key JSON. The formats are line oriented and use exact rationals only;
// decimal literals are rejected.

namespace corank {

enum class ModelKind { game, pts, tree };

struct ModelDocument {
    ModelKind kind = ModelKind::game;
    std::variant<GameCoalgebra, PtsCoalgebra, TreeAutomaton> body;

    const GameCoalgebra& game() const { return std::get<GameCoalgebra>(body); }
    const PtsCoalgebra& pts() const { return std::get<PtsCoalgebra>(body); }
    const TreeAutomaton& tree() const { return std::get<TreeAutomaton>(body); }
};

enum class CertKind { rank, arank, mrank, drank, ncrank, trank };

inline std::string cert_kind_name(CertKind k) {
    switch (k) {
        case CertKind::rank: return "rank";
        case CertKind::arank: return "arank";
        case CertKind::mrank: return "mrank";
        case CertKind::drank: return "drank";
        case CertKind::ncrank: return "ncrank";
        case CertKind::trank: return "trank";
    }
    return "?";
}

// A parsed certificate before it is bound to a model's state list.
struct CertificateDocument {
    CertKind kind = CertKind::rank;
    OrdinalValue cap = OrdinalValue::omega_v();  // rank
    Rat epsilon;                                 // arank
    Rat alpha, delta;                            // mrank
    std::uint64_t horizon = 1;                   // drank
    Rat gamma;                                   // ncrank

    std::map<std::string, OrdinalValue> rank_values;
    std::map<std::string, ExtRat> ext_values;
    std::map<std::string, TailSpec> tail_values;
    std::map<std::string, Rat> rat_values;
    TreeArena tree_arena;
    std::map<std::string, TreeOrBottom> tree_values;
};

namespace detail {

class LineScanner {
public:
    LineScanner(std::string_view text, std::size_t line_no) : text_(text), line_(line_no) {}

    void skip_ws() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
    }

    bool at_end() {
        skip_ws();
        return pos_ >= text_.size();
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    bool try_consume(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!try_consume(c)) fail(std::string("expected '") + c + "'");
    }

    std::string ident() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                       text_[pos_] == '_' || text_[pos_] == '-'))
            ++pos_;
        if (pos_ == start) fail("expected identifier");
        return std::string(text_.substr(start, pos_ - start));
    }

    std::uint64_t natural() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == start) fail("expected number");
        if (pos_ < text_.size() && text_[pos_] == '.') fail("decimal literals are not allowed");
        std::uint64_t v = 0;
        for (std::size_t i = start; i < pos_; ++i) v = v * 10 + (text_[i] - '0');
        return v;
    }

    Rat rational() {
        std::uint64_t num = natural();
        if (pos_ < text_.size() && text_[pos_] == '/') {
            ++pos_;
            std::uint64_t den = natural();
            if (den == 0) fail("zero denominator");
            return Rat(BigInt::from_u64(num), BigInt::from_u64(den));
        }
        return Rat(BigInt::from_u64(num), BigInt{1});
    }

    [[noreturn]] void fail(const std::string& msg) { throw parse_error(line_, pos_ + 1, msg); }

    std::size_t column() const { return pos_ + 1; }

private:
    std::string_view text_;
    std::size_t line_;
    std::size_t pos_ = 0;
};

struct RawLine {
    std::string text;
    std::size_t number;
};

inline std::vector<RawLine> meaningful_lines(std::string_view text) {
    std::vector<RawLine> out;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        ++line_no;
        std::string line(text.substr(start, end - start));
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        bool blank = true;
        for (char ch : line)
            if (ch != ' ' && ch != '\t' && ch != '\r') blank = false;
        if (!blank) {
            while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
            out.push_back({line, line_no});
        }
        if (end == text.size()) break;
        start = end + 1;
    }
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Model parsing
// ---------------------------------------------------------------------------

inline ModelDocument parse_model(std::string_view text) {
    using detail::LineScanner;
    auto lines = detail::meaningful_lines(text);
    if (lines.empty()) throw parse_error(1, 1, "empty model");

    LineScanner head(lines[0].text, lines[0].number);
    if (head.ident() != "system") head.fail("model must start with 'system <kind>'");
    std::string kind_name = head.ident();
    ModelKind kind;
    if (kind_name == "game")
        kind = ModelKind::game;
    else if (kind_name == "pts")
        kind = ModelKind::pts;
    else if (kind_name == "tree")
        kind = ModelKind::tree;
    else
        head.fail("unknown system kind '" + kind_name + "'");

    std::vector<std::string> names;
    std::map<std::string, StateId> by_name;
    std::vector<bool> accepting;
    std::vector<std::pair<std::string, std::uint64_t>> symbols;
    std::map<std::string, std::size_t> symbol_by_name;

    // First pass: declarations.
    for (std::size_t i = 1; i < lines.size(); ++i) {
        LineScanner sc(lines[i].text, lines[i].number);
        std::string head_word = sc.ident();
        if (head_word == "state") {
            std::string name = sc.ident();
            if (by_name.count(name)) sc.fail("duplicate state '" + name + "'");
            by_name[name] = static_cast<StateId>(names.size());
            names.push_back(name);
            bool acc = false;
            if (!sc.at_end()) {
                if (sc.ident() != "accept") sc.fail("expected 'accept'");
                acc = true;
            }
            accepting.push_back(acc);
            if (!sc.at_end()) sc.fail("trailing input");
        } else if (head_word == "symbol") {
            if (kind != ModelKind::tree) sc.fail("'symbol' is only valid in tree models");
            std::string name = sc.ident();
            sc.expect('/');
            std::uint64_t arity = sc.natural();
            if (symbol_by_name.count(name)) sc.fail("duplicate symbol '" + name + "'");
            symbol_by_name[name] = symbols.size();
            symbols.emplace_back(name, arity);
            if (!sc.at_end()) sc.fail("trailing input");
        } else if (head_word == "move") {
            continue;  // second pass
        } else {
            sc.fail("unknown directive '" + head_word + "'");
        }
    }

    auto lookup = [&](LineScanner& sc, const std::string& name) -> StateId {
        auto it = by_name.find(name);
        if (it == by_name.end()) sc.fail("undeclared state '" + name + "'");
        return it->second;
    };

    ModelDocument doc;
    doc.kind = kind;
    if (kind == ModelKind::game) {
        GameCoalgebra c;
        c.state_names = names;
        c.accepting = accepting;
        c.options.resize(names.size());
        std::vector<bool> has_move(names.size(), false);
        for (std::size_t i = 1; i < lines.size(); ++i) {
            LineScanner sc(lines[i].text, lines[i].number);
            if (sc.ident() != "move") continue;
            StateId x = lookup(sc, sc.ident());
            if (has_move[x]) sc.fail("duplicate move for state '" + names[x] + "'");
            has_move[x] = true;
            sc.expect(':');
            while (!sc.at_end()) {
                sc.expect('{');
                std::vector<StateId> inner;
                while (!sc.try_consume('}')) inner.push_back(lookup(sc, sc.ident()));
                c.options[x].push_back(std::move(inner));
            }
        }
        c.normalize();
        c.validate();
        doc.body = std::move(c);
    } else if (kind == ModelKind::pts) {
        PtsCoalgebra c;
        c.state_names = names;
        c.accepting = accepting;
        c.next.resize(names.size());
        std::vector<bool> has_move(names.size(), false);
        for (std::size_t i = 1; i < lines.size(); ++i) {
            LineScanner sc(lines[i].text, lines[i].number);
            if (sc.ident() != "move") continue;
            StateId x = lookup(sc, sc.ident());
            if (has_move[x]) sc.fail("duplicate move for state '" + names[x] + "'");
            has_move[x] = true;
            sc.expect(':');
            do {
                Rat p = sc.rational();
                StateId s = lookup(sc, sc.ident());
                c.next[x].emplace_back(s, p);
            } while (sc.try_consume(','));
            if (!sc.at_end()) sc.fail("trailing input");
        }
        c.validate();
        doc.body = std::move(c);
    } else {
        TreeAutomaton a;
        a.state_names = names;
        a.accepting = accepting;
        a.symbols = symbols;
        a.trans.resize(names.size());
        std::vector<bool> has_move(names.size(), false);
        for (std::size_t i = 1; i < lines.size(); ++i) {
            LineScanner sc(lines[i].text, lines[i].number);
            if (sc.ident() != "move") continue;
            StateId x = lookup(sc, sc.ident());
            if (has_move[x]) sc.fail("duplicate move for state '" + names[x] + "'");
            has_move[x] = true;
            sc.expect(':');
            std::string sym = sc.ident();
            auto sit = symbol_by_name.find(sym);
            if (sit == symbol_by_name.end()) sc.fail("undeclared symbol '" + sym + "'");
            a.trans[x].symbol = sit->second;
            if (sc.try_consume('(')) {
                while (!sc.try_consume(')')) {
                    a.trans[x].children.push_back(lookup(sc, sc.ident()));
                    sc.try_consume(',');
                }
            }
            if (!sc.at_end()) sc.fail("trailing input");
            if (a.trans[x].children.size() != symbols[sit->second].second)
                sc.fail("arity mismatch: symbol '" + sym + "' expects " +
                        std::to_string(symbols[sit->second].second) + " children");
        }
        for (StateId x = 0; x < a.size(); ++x)
            if (!has_move[x])
                throw parse_error(lines.back().number, 1,
                                  "missing transition for state '" + names[x] + "'");
        a.validate();
        doc.body = std::move(a);
    }
    return doc;
}

inline std::string serialize_model(const ModelDocument& doc) {
    std::string out;
    auto emit_states = [&](const std::vector<std::string>& names, const std::vector<bool>& acc) {
        for (std::size_t i = 0; i < names.size(); ++i) {
            out += "state " + names[i];
            if (acc[i]) out += " accept";
            out += "\n";
        }
    };
    switch (doc.kind) {
        case ModelKind::game: {
            const auto& c = doc.game();
            out += "system game\n";
            emit_states(c.state_names, c.accepting);
            for (StateId x = 0; x < c.size(); ++x) {
                if (c.options[x].empty()) continue;
                out += "move " + c.state_names[x] + " :";
                for (const auto& inner : c.options[x]) {
                    out += " {";
                    for (std::size_t i = 0; i < inner.size(); ++i)
                        out += (i ? " " : "") + c.state_names[inner[i]];
                    out += "}";
                }
                out += "\n";
            }
            break;
        }
        case ModelKind::pts: {
            const auto& c = doc.pts();
            out += "system pts\n";
            emit_states(c.state_names, c.accepting);
            for (StateId x = 0; x < c.size(); ++x) {
                out += "move " + c.state_names[x] + " : ";
                for (std::size_t i = 0; i < c.next[x].size(); ++i) {
                    if (i) out += ", ";
                    out += c.next[x][i].second.to_string() + " " +
                           c.state_names[c.next[x][i].first];
                }
                out += "\n";
            }
            break;
        }
        case ModelKind::tree: {
            const auto& a = doc.tree();
            out += "system tree\n";
            for (const auto& [name, arity] : a.symbols)
                out += "symbol " + name + "/" + std::to_string(arity) + "\n";
            emit_states(a.state_names, a.accepting);
            for (StateId x = 0; x < a.size(); ++x) {
                out += "move " + a.state_names[x] + " : " + a.symbols[a.trans[x].symbol].first;
                if (!a.trans[x].children.empty()) {
                    out += "(";
                    for (std::size_t i = 0; i < a.trans[x].children.size(); ++i)
                        out += (i ? ", " : "") + a.state_names[a.trans[x].children[i]];
                    out += ")";
                }
                out += "\n";
            }
            break;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Certificate parsing
// ---------------------------------------------------------------------------

namespace detail {

inline TailSpec parse_tail_spec(LineScanner& sc) {
    TailSpec t;
    sc.expect('{');
    if (sc.try_consume('}')) sc.fail("empty tail spec");
    do {
        if (sc.peek() == 'g' || sc.peek() == 'r' || sc.peek() == 'i') {
            std::string word = sc.ident();
            if (word == "geo") {
                sc.expect('(');
                TailSpec::Geo g;
                g.start = sc.natural();
                sc.expect(',');
                g.coeff = sc.rational();
                sc.expect(',');
                g.ratio = sc.rational();
                sc.expect(')');
                if (t.geo) sc.fail("duplicate geo tail");
                if (!(g.ratio < Rat(1))) sc.fail("geo ratio must be < 1");
                t.geo = g;
            } else if (word == "residual") {
                sc.expect('(');
                TailSpec::Residual r;
                r.above = sc.natural();
                sc.expect(',');
                r.mass = sc.rational();
                sc.expect(')');
                if (t.residual) sc.fail("duplicate residual");
                t.residual = r;
            } else if (word == "inf") {
                sc.expect(':');
                t.inf_mass = sc.rational();
            } else {
                sc.fail("unknown tail spec element '" + word + "'");
            }
        } else {
            std::uint64_t k = sc.natural();
            sc.expect(':');
            Rat m = sc.rational();
            if (t.atoms.count(k)) sc.fail("duplicate atom");
            if (!m.is_zero()) t.atoms[k] = m;
        }
    } while (sc.try_consume(','));
    sc.expect('}');
    return t;
}

inline TreeArena::NodeId parse_tree_value(LineScanner& sc, TreeArena& arena) {
    sc.expect('(');
    std::vector<TreeArena::NodeId> ch;
    while (!sc.try_consume(')')) {
        ch.push_back(parse_tree_value(sc, arena));
        sc.try_consume(',');
    }
    return arena.make(std::move(ch));
}

}  // namespace detail

inline CertificateDocument parse_certificate(std::string_view text) {
    using detail::LineScanner;
    auto lines = detail::meaningful_lines(text);
    if (lines.empty()) throw parse_error(1, 1, "empty certificate");

    CertificateDocument doc;
    LineScanner head(lines[0].text, lines[0].number);
    if (head.ident() != "certificate")
        head.fail("certificate must start with 'certificate <kind>'");
    std::string kind_name = head.ident();
    std::map<std::string, std::string> params;
    while (!head.at_end()) {
        std::string key = head.ident();
        head.expect('=');
        std::string value;
        if (key == "cap" && head.peek() == 'o') {
            value = head.ident();
        } else {
            value = head.rational().to_string();
        }
        params[key] = value;
    }
    auto need = [&](const char* key) -> std::string {
        auto it = params.find(key);
        if (it == params.end()) head.fail(std::string("missing parameter '") + key + "'");
        return it->second;
    };

    if (kind_name == "rank") {
        doc.kind = CertKind::rank;
        std::string cap = need("cap");
        doc.cap = cap == "omega" ? OrdinalValue::omega_v()
                                 : OrdinalValue::fin(Rat::from_string(cap).num().to_u64());
    } else if (kind_name == "arank") {
        doc.kind = CertKind::arank;
        doc.epsilon = Rat::from_string(need("epsilon"));
    } else if (kind_name == "mrank") {
        doc.kind = CertKind::mrank;
        doc.alpha = Rat::from_string(need("alpha"));
        doc.delta = Rat::from_string(need("delta"));
    } else if (kind_name == "drank") {
        doc.kind = CertKind::drank;
        doc.horizon = Rat::from_string(need("horizon")).num().to_u64();
        if (doc.horizon < 1) head.fail("horizon must be >= 1");
    } else if (kind_name == "ncrank") {
        doc.kind = CertKind::ncrank;
        doc.gamma = Rat::from_string(need("gamma"));
        if (!(doc.gamma < Rat(1))) head.fail("gamma must be < 1");
    } else if (kind_name == "trank") {
        doc.kind = CertKind::trank;
    } else {
        head.fail("unknown certificate kind '" + kind_name + "'");
    }

    for (std::size_t i = 1; i < lines.size(); ++i) {
        LineScanner sc(lines[i].text, lines[i].number);
        std::string state = sc.ident();
        sc.expect('=');
        switch (doc.kind) {
            case CertKind::rank:
                if (sc.peek() == 'o') {
                    if (sc.ident() != "omega") sc.fail("expected ordinal value");
                    doc.rank_values[state] = OrdinalValue::omega_v();
                } else {
                    doc.rank_values[state] = OrdinalValue::fin(sc.natural());
                }
                break;
            case CertKind::arank:
            case CertKind::mrank:
                if (sc.peek() == 'i') {
                    if (sc.ident() != "inf") sc.fail("expected value or 'inf'");
                    doc.ext_values[state] = ExtRat::infinity();
                } else {
                    doc.ext_values[state] = ExtRat(sc.rational());
                }
                break;
            case CertKind::drank:
                doc.tail_values[state] = detail::parse_tail_spec(sc);
                break;
            case CertKind::ncrank:
                doc.rat_values[state] = sc.rational();
                break;
            case CertKind::trank:
                if (sc.peek() == 'b') {
                    if (sc.ident() != "bot") sc.fail("expected tree or 'bot'");
                    doc.tree_values[state] = std::nullopt;
                } else {
                    doc.tree_values[state] = detail::parse_tree_value(sc, doc.tree_arena);
                }
                break;
        }
        if (!sc.at_end()) sc.fail("trailing input");
    }
    return doc;
}

inline std::string serialize_certificate(const CertificateDocument& doc) {
    std::string out = "certificate " + cert_kind_name(doc.kind);
    switch (doc.kind) {
        case CertKind::rank: out += " cap=" + doc.cap.to_string(); break;
        case CertKind::arank: out += " epsilon=" + doc.epsilon.to_string(); break;
        case CertKind::mrank:
            out += " alpha=" + doc.alpha.to_string() + " delta=" + doc.delta.to_string();
            break;
        case CertKind::drank: out += " horizon=" + std::to_string(doc.horizon); break;
        case CertKind::ncrank: out += " gamma=" + doc.gamma.to_string(); break;
        case CertKind::trank: break;
    }
    out += "\n";
    auto emit = [&](const std::string& state, const std::string& value) {
        out += state + " = " + value + "\n";
    };
    switch (doc.kind) {
        case CertKind::rank:
            for (const auto& [s, v] : doc.rank_values) emit(s, v.to_string());
            break;
        case CertKind::arank:
        case CertKind::mrank:
            for (const auto& [s, v] : doc.ext_values) emit(s, v.to_string());
            break;
        case CertKind::drank:
            for (const auto& [s, t] : doc.tail_values) {
                std::string v = "{ ";
                bool first = true;
                for (const auto& [k, m] : t.atoms) {
                    if (!first) v += ", ";
                    v += std::to_string(k) + ": " + m.to_string();
                    first = false;
                }
                if (t.geo) {
                    if (!first) v += ", ";
                    v += "geo(" + std::to_string(t.geo->start) + ", " + t.geo->coeff.to_string() +
                         ", " + t.geo->ratio.to_string() + ")";
                    first = false;
                }
                if (t.residual) {
                    if (!first) v += ", ";
                    v += "residual(" + std::to_string(t.residual->above) + ", " +
                         t.residual->mass.to_string() + ")";
                    first = false;
                }
                if (!t.inf_mass.is_zero()) {
                    if (!first) v += ", ";
                    v += "inf: " + t.inf_mass.to_string();
                    first = false;
                }
                if (first) v += "0: 0";  // unreachable for valid specs
                v += " }";
                emit(s, v);
            }
            break;
        case CertKind::ncrank:
            for (const auto& [s, v] : doc.rat_values) emit(s, v.to_string());
            break;
        case CertKind::trank:
            for (const auto& [s, v] : doc.tree_values)
                emit(s, v ? doc.tree_arena.render(*v) : "bot");
            break;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Binding certificates to models
// ---------------------------------------------------------------------------

namespace detail {

template <typename Map>
std::vector<typename Map::mapped_type> bind_values(const Map& values,
                                                   const std::vector<std::string>& names) {
    std::vector<typename Map::mapped_type> out;
    out.reserve(names.size());
    for (const auto& [name, value] : values) {
        bool known = false;
        for (const auto& n : names) known = known || n == name;
        if (!known) throw error("certificate names unknown state '" + name + "'");
    }
    for (const auto& n : names) {
        auto it = values.find(n);
        if (it == values.end()) throw error("certificate is missing state '" + n + "'");
        out.push_back(it->second);
    }
    return out;
}

}  // namespace detail

inline RankCertificate bind_rank(const CertificateDocument& doc, const GameCoalgebra& c) {
    if (doc.kind != CertKind::rank) throw error("expected a rank certificate");
    RankCertificate cert;
    cert.cap = doc.cap;
    cert.values.entries = detail::bind_values(doc.rank_values, c.state_names);
    cert.validate(c);
    return cert;
}

inline AdditiveCert bind_arank(const CertificateDocument& doc, const PtsCoalgebra& c) {
    if (doc.kind != CertKind::arank) throw error("expected an arank certificate");
    AdditiveCert cert;
    cert.epsilon = doc.epsilon;
    cert.values.entries = detail::bind_values(doc.ext_values, c.state_names);
    cert.validate(c);
    return cert;
}

inline MultiplicativeCert bind_mrank(const CertificateDocument& doc, const PtsCoalgebra& c) {
    if (doc.kind != CertKind::mrank) throw error("expected an mrank certificate");
    MultiplicativeCert cert;
    cert.alpha = doc.alpha;
    cert.delta = doc.delta;
    cert.values.entries = detail::bind_values(doc.ext_values, c.state_names);
    cert.validate(c);
    return cert;
}

inline DistCert bind_drank(const CertificateDocument& doc, const PtsCoalgebra& c) {
    if (doc.kind != CertKind::drank) throw error("expected a drank certificate");
    DistCert cert;
    cert.horizon = doc.horizon;
    cert.values.entries = detail::bind_values(doc.tail_values, c.state_names);
    cert.validate(c);
    return cert;
}

inline NonCountingCert bind_ncrank(const CertificateDocument& doc, const PtsCoalgebra& c) {
    if (doc.kind != CertKind::ncrank) throw error("expected an ncrank certificate");
    NonCountingCert cert;
    cert.gamma = doc.gamma;
    cert.values.entries = detail::bind_values(doc.rat_values, c.state_names);
    cert.validate(c);
    return cert;
}

inline TreeCert bind_trank(const CertificateDocument& doc, const TreeAutomaton& a) {
    if (doc.kind != CertKind::trank) throw error("expected a trank certificate");
    TreeCert cert;
    cert.arena = doc.tree_arena;
    cert.values.entries = detail::bind_values(doc.tree_values, a.state_names);
    cert.validate(a);
    return cert;
}

// ---------------------------------------------------------------------------
// Report rendering
// ---------------------------------------------------------------------------

using ReportMeta = std::vector<std::pair<std::string, std::string>>;

inline std::string render_report(const Report& r, const std::string& format,
                                 const ReportMeta& meta = {}) {
    if (format == "json") {
        nlohmann::ordered_json j;
        if (!meta.empty()) {
            nlohmann::ordered_json m;
            for (const auto& [k, v] : meta) m[k] = v;
            j["meta"] = m;
        }
        j["verdict"] = verdict_name(r.verdict);
        if (r.horizon) j["horizon"] = *r.horizon;
        nlohmann::ordered_json viols = nlohmann::ordered_json::array();
        for (const auto& v : r.violations)
            viols.push_back({{"state", v.state}, {"expected", v.expected}, {"actual", v.actual}});
        j["violations"] = viols;
        nlohmann::ordered_json bounds;
        for (const auto& [s, b] : r.bounds) bounds[s] = b.to_string();
        j["bound"] = bounds;
        if (r.reference) {
            nlohmann::ordered_json ref;
            for (const auto& [s, b] : *r.reference) ref[s] = b.to_string();
            j["reference"] = ref;
        }
        return j.dump(2) + "\n";
    }
    if (format != "text") throw error("unknown report format '" + format + "'");
    std::string out;
    for (const auto& [k, v] : meta) out += "# " + k + ": " + v + "\n";
    out += "verdict: " + verdict_name(r.verdict) + "\n";
    if (r.horizon) out += "horizon: " + std::to_string(*r.horizon) + "\n";
    if (!r.violations.empty()) {
        out += "violations:\n";
        for (const auto& v : r.violations)
            out += "  " + v.state + ": expected " + v.expected + ", got " + v.actual + "\n";
    }
    if (!r.bounds.empty()) {
        out += "bound:\n";
        for (const auto& [s, b] : r.bounds) out += "  " + s + " = " + b.to_string() + "\n";
    }
    if (r.reference) {
        out += "reference:\n";
        for (const auto& [s, b] : *r.reference) out += "  " + s + " = " + b.to_string() + "\n";
    }
    return out;
}

// Sweep output: one row per gamma, one column per state, exact rationals.
inline std::string render_sweep_csv(const std::vector<std::string>& state_names,
                                    const SweepResult& sweep) {
    std::string out = "gamma";
    for (const auto& n : state_names) out += "," + n;
    out += "\n";
    for (const auto& [g, row] : sweep.rows) {
        out += g.to_string();
        for (StateId x = 0; x < state_names.size(); ++x) out += "," + row[x].to_string();
        out += "\n";
    }
    out += "sup";
    for (StateId x = 0; x < state_names.size(); ++x) out += "," + sweep.supremum[x].to_string();
    out += "\n";
    return out;
}

}  // namespace corank

#endif
