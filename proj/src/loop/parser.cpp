#include "crloop/loop/parser.hpp"

#include <cctype>
#include <optional>
#include <set>
#include <vector>

namespace crl {
namespace {

enum class Tok { Name, Number, Op, End };

struct Token {
    Tok kind;
    std::string text;
    int line, col;
};

struct Statement {
    std::vector<Token> toks;  // ends with Tok::End
};

bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

std::vector<Statement> tokenize(std::string_view text) {
    std::vector<Statement> out;
    Statement cur;
    int line = 1, col = 1;
    auto flush = [&] {
        if (!cur.toks.empty()) {
            cur.toks.push_back({Tok::End, "", line, col});
            out.push_back(std::move(cur));
            cur = {};
        }
    };
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (c == '\n') {
            flush();
            ++line;
            col = 1;
            ++i;
            continue;
        }
        if (c == ';') {
            flush();
            ++i;
            ++col;
            continue;
        }
        if (c == '#') {
            while (i < text.size() && text[i] != '\n') ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            ++col;
            continue;
        }
        const int start = col;
        if (is_name_start(c)) {
            std::size_t j = i;
            while (j < text.size() && is_name_char(text[j])) ++j;
            cur.toks.push_back({Tok::Name, std::string(text.substr(i, j - i)), line, start});
            col += static_cast<int>(j - i);
            i = j;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            cur.toks.push_back({Tok::Number, std::string(text.substr(i, j - i)), line, start});
            col += static_cast<int>(j - i);
            i = j;
            continue;
        }
        static const char* two_char[] = {"<=", ">=", "==", ":=", "&&"};
        std::string op;
        for (const char* t : two_char)
            if (text.substr(i, 2) == t) op = t;
        if (op.empty()) {
            if (std::string_view("+-*/()<>=^,").find(c) == std::string_view::npos)
                throw ParseError(line, col, std::string("unexpected character '") + c + "'");
            op = std::string(1, c);
        }
        cur.toks.push_back({Tok::Op, op, line, start});
        col += static_cast<int>(op.size());
        i += op.size();
    }
    flush();
    return out;
}

// A linear expression under construction; `linear` is false once a
// variable could no longer be treated linearly.
class ExprParser {
public:
    ExprParser(const std::vector<Token>& toks, std::size_t pos, const std::set<std::string>& vars)
        : toks_(toks), pos_(pos), vars_(vars) {}

    std::size_t pos() const { return pos_; }
    const Token& peek() const { return toks_[pos_]; }
    const Token& next() { return toks_[pos_++]; }

    bool at_op(const char* op) const { return peek().kind == Tok::Op && peek().text == op; }

    LinearTerm expr() {
        LinearTerm t = term();
        while (at_op("+") || at_op("-")) {
            bool minus = next().text == "-";
            LinearTerm r = term();
            t += minus ? -r : r;
        }
        return t;
    }

private:
    LinearTerm term() {
        LinearTerm t = unary();
        while (at_op("*") || at_op("/")) {
            const Token& op = next();
            LinearTerm r = unary();
            if (op.text == "*") {
                if (t.is_constant())
                    t = r * t.constant;
                else if (r.is_constant())
                    t *= r.constant;
                else
                    throw ParseError(op.line, op.col, "nonlinear term: product of variables");
            } else {
                if (!r.is_constant()) throw ParseError(op.line, op.col, "nonlinear term: division by a variable");
                if (r.constant.is_zero()) throw ParseError(op.line, op.col, "division by zero");
                t *= r.constant.reciprocal();
            }
        }
        return t;
    }

    LinearTerm unary() {
        if (at_op("-")) {
            next();
            return -unary();
        }
        if (at_op("+")) {
            next();
            return unary();
        }
        return power();
    }

    LinearTerm power() {
        LinearTerm base = atom();
        if (!at_op("^")) return base;
        const Token& op = next();
        LinearTerm e = unary();
        if (!e.is_constant()) throw ParseError(op.line, op.col, "nonlinear term: variable in exponent");
        if (!e.constant.is_integer() || e.constant.sign() < 0 || e.constant > Rational(64))
            throw ParseError(op.line, op.col, "exponent must be a small non-negative integer");
        unsigned long k = e.constant.num().get_ui();
        if (!base.is_constant()) {
            if (k == 1) return base;
            if (k == 0) return LinearTerm{{}, Rational(1)};
            throw ParseError(op.line, op.col, "nonlinear term: power of a variable");
        }
        return LinearTerm{{}, pow(base.constant, k)};
    }

    LinearTerm atom() {
        const Token& t = next();
        if (t.kind == Tok::Number) return LinearTerm{{}, Rational(mpz_class(t.text))};
        if (t.kind == Tok::Name) {
            if (!vars_.count(t.text)) throw ParseError(t.line, t.col, "unknown variable '" + t.text + "'");
            return LinearTerm::var(t.text);
        }
        if (t.kind == Tok::Op && t.text == "(") {
            LinearTerm inner = expr();
            const Token& close = next();
            if (close.kind != Tok::Op || close.text != ")") throw ParseError(close.line, close.col, "expected ')'");
            return inner;
        }
        throw ParseError(t.line, t.col, t.kind == Tok::End ? "unexpected end of statement" : "unexpected '" + t.text + "'");
    }

    const std::vector<Token>& toks_;
    std::size_t pos_;
    const std::set<std::string>& vars_;
};

bool is_relation(const Token& t) {
    return t.kind == Tok::Op &&
           (t.text == "<" || t.text == "<=" || t.text == ">" || t.text == ">=" || t.text == "=" || t.text == "==");
}

// Appends the normalized form of lhs (rel) rhs.
void add_comparison(const LinearTerm& lhs, const std::string& rel, const LinearTerm& rhs, Guard& g) {
    if (rel == "<")
        g.conjuncts.push_back({rhs - lhs, Rel::Gt});
    else if (rel == "<=")
        g.conjuncts.push_back({rhs - lhs, Rel::Ge});
    else if (rel == ">")
        g.conjuncts.push_back({lhs - rhs, Rel::Gt});
    else if (rel == ">=")
        g.conjuncts.push_back({lhs - rhs, Rel::Ge});
    else {
        g.conjuncts.push_back({rhs - lhs, Rel::Ge});
        g.conjuncts.push_back({lhs - rhs, Rel::Ge});
    }
}

void parse_guard(const Statement& st, const std::set<std::string>& vars, Guard& g) {
    std::size_t pos = 1;
    const auto& toks = st.toks;
    if (toks[pos].kind == Tok::Name && toks[pos].text == "true" && !vars.count("true")) {
        if (toks[pos + 1].kind != Tok::End) throw ParseError(toks[pos + 1].line, toks[pos + 1].col, "unexpected token after 'true'");
        return;
    }
    while (true) {
        ExprParser p(toks, pos, vars);
        LinearTerm lhs = p.expr();
        if (!is_relation(p.peek())) {
            const Token& t = p.peek();
            throw ParseError(t.line, t.col, "expected a comparison operator");
        }
        while (is_relation(p.peek())) {
            std::string rel = p.next().text;
            LinearTerm rhs = p.expr();
            add_comparison(lhs, rel, rhs, g);
            lhs = std::move(rhs);
        }
        pos = p.pos();
        const Token& t = toks[pos];
        if (t.kind == Tok::End) return;
        if (t.kind == Tok::Op && t.text == "&&") {
            ++pos;
            continue;
        }
        throw ParseError(t.line, t.col, "expected '&&' or end of guard");
    }
}

}  // namespace

Loop parse_loop(std::string_view text) {
    std::vector<Statement> statements = tokenize(text);
    Loop loop;
    std::set<std::string> declared;

    for (const auto& st : statements) {
        const Token& kw = st.toks[0];
        if (kw.kind != Tok::Name || kw.text != "vars") continue;
        std::size_t pos = 1;
        while (true) {
            const Token& t = st.toks[pos];
            if (t.kind != Tok::Name) throw ParseError(t.line, t.col, "expected a variable name");
            if (t.text == "vars" || t.text == "guard" || t.text == "update")
                throw ParseError(t.line, t.col, "'" + t.text + "' is a keyword");
            if (!declared.insert(t.text).second) throw ParseError(t.line, t.col, "variable '" + t.text + "' declared twice");
            loop.vars.push_back(t.text);
            const Token& sep = st.toks[++pos];
            if (sep.kind == Tok::End) break;
            if (sep.kind != Tok::Op || sep.text != ",") throw ParseError(sep.line, sep.col, "expected ','");
            ++pos;
        }
    }
    if (loop.vars.empty()) throw ParseError(1, 1, "missing 'vars' declaration");

    const std::size_t d = loop.vars.size();
    loop.A = identity_matrix(d);
    loop.b.assign(d, Rational(0));
    std::vector<bool> updated(d, false);

    for (const auto& st : statements) {
        const Token& kw = st.toks[0];
        if (kw.kind != Tok::Name) throw ParseError(kw.line, kw.col, "expected 'vars', 'guard' or 'update'");
        if (kw.text == "vars") continue;
        if (kw.text == "guard") {
            parse_guard(st, declared, loop.guard);
            continue;
        }
        if (kw.text != "update") throw ParseError(kw.line, kw.col, "unknown statement '" + kw.text + "'");
        const Token& target = st.toks[1];
        if (target.kind != Tok::Name) throw ParseError(target.line, target.col, "expected a variable name");
        if (!declared.count(target.text)) throw ParseError(target.line, target.col, "unknown variable '" + target.text + "'");
        const Token& assign = st.toks[2];
        if (assign.kind != Tok::Op || assign.text != ":=") throw ParseError(assign.line, assign.col, "expected ':='");
        std::size_t i = loop.index_of(target.text);
        if (updated[i]) throw ParseError(target.line, target.col, "duplicate update for '" + target.text + "'");
        updated[i] = true;
        ExprParser p(st.toks, 3, declared);
        LinearTerm rhs = p.expr();
        if (p.peek().kind != Tok::End) throw ParseError(p.peek().line, p.peek().col, "unexpected '" + p.peek().text + "'");
        for (std::size_t j = 0; j < d; ++j) loop.A[i][j] = rhs.coeff(loop.vars[j]);
        loop.b[i] = rhs.constant;
    }
    return loop;
}

}  // namespace crl
