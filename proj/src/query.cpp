#include "gs/query.hpp"

#include <cctype>

#include "gs/errors.hpp"

namespace gs {

std::set<std::string> TriplePattern::variables() const {
    std::set<std::string> vars;
    for (const PatternTerm* t : {&subject, &predicate, &object})
        if (const Variable* v = as_variable(*t)) vars.insert(v->name);
    return vars;
}

namespace {

struct Token {
    enum Kind { Keyword, Var, Word, String, Comma, Dot, End } kind;
    std::string text;
    size_t pos;
};

class Lexer {
public:
    Lexer(std::string_view text) : text_(text) {}

    Token next() {
        skip_ws();
        size_t start = pos_;
        if (pos_ >= text_.size()) return {Token::End, "", start};
        char c = text_[pos_];
        if (c == ',') {
            ++pos_;
            return {Token::Comma, ",", start};
        }
        if (c == '.') {
            ++pos_;
            return {Token::Dot, ".", start};
        }
        if (c == '?') {
            ++pos_;
            std::string name = word();
            if (name.empty()) throw ParseError("expected variable name after '?'", start);
            return {Token::Var, name, start};
        }
        if (c == '\'') {
            ++pos_;
            size_t body = pos_;
            while (pos_ < text_.size() && text_[pos_] != '\'') ++pos_;
            if (pos_ >= text_.size()) throw ParseError("unterminated string", start);
            std::string s(text_.substr(body, pos_ - body));
            ++pos_;
            return {Token::String, s, start};
        }
        std::string w = word();
        if (w.empty()) throw ParseError(std::string("unexpected character '") + c + "'", start);
        if (w == "SUBSCRIBE" || w == "WHERE") return {Token::Keyword, w, start};
        return {Token::Word, w, start};
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    std::string word() {
        size_t start = pos_;
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == '.' || c == '\'' ||
                c == '?')
                break;
            ++pos_;
        }
        return std::string(text_.substr(start, pos_ - start));
    }

    std::string_view text_;
    size_t pos_ = 0;
};

PatternTerm resolve_term(const Token& tok, const NameDirectory& names, bool object_position) {
    switch (tok.kind) {
        case Token::Var:
            return Variable{tok.text};
        case Token::String:
            if (!object_position)
                throw ParseError("string value only legal in object position", tok.pos);
            return Value::from_string(tok.text);
        case Token::Word: {
            if (auto l = Label::try_parse(tok.text)) return *l;
            if (const Label* l = names.find(tok.text)) return *l;
            throw ParseError("unresolvable name '" + tok.text + "'", tok.pos);
        }
        default:
            throw ParseError("expected pattern term", tok.pos);
    }
}

}  // namespace

Query parse_query(std::string_view text, const NameDirectory& names) {
    Lexer lex(text);
    Token tok = lex.next();
    if (tok.kind != Token::Keyword || tok.text != "SUBSCRIBE")
        throw ParseError("expected SUBSCRIBE", tok.pos);

    Query q;
    // projected variables
    for (;;) {
        tok = lex.next();
        if (tok.kind != Token::Var) throw ParseError("expected projected variable", tok.pos);
        q.projected.push_back(tok.text);
        tok = lex.next();
        if (tok.kind == Token::Comma) continue;
        break;
    }
    if (tok.kind != Token::Keyword || tok.text != "WHERE")
        throw ParseError("expected WHERE", tok.pos);

    // patterns separated by '.', optional trailing '.'
    for (;;) {
        Token t1 = lex.next();
        if (t1.kind == Token::End) break;
        Token t2 = lex.next();
        Token t3 = lex.next();
        TriplePattern p;
        p.subject = resolve_term(t1, names, false);
        p.predicate = resolve_term(t2, names, false);
        p.object = resolve_term(t3, names, true);
        q.patterns.push_back(std::move(p));
        tok = lex.next();
        if (tok.kind == Token::End) break;
        if (tok.kind != Token::Dot) throw ParseError("expected '.' between patterns", tok.pos);
    }
    if (q.patterns.empty()) throw ParseError("query needs at least one pattern", text.size());

    std::set<std::string> all_vars;
    for (const TriplePattern& p : q.patterns) {
        auto vars = p.variables();
        all_vars.insert(vars.begin(), vars.end());
    }
    for (const std::string& v : q.projected)
        if (!all_vars.count(v))
            throw ParseError("projected variable ?" + v + " does not occur in any pattern", 0);
    return q;
}

}  // namespace gs
