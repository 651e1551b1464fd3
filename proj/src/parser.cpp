#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "sqrtpi/lang.hpp"

namespace sqrtpi {

SyntaxError::SyntaxError(int line, int col, std::vector<std::string> expected, const std::string& found)
    : std::runtime_error([&] {
          std::ostringstream m;
          m << line << ":" << col << ": syntax error: found " << found << ", expected one of";
          for (const auto& e : expected) m << " " << e;
          return m.str();
      }()),
      line(line),
      col(col),
      expected(std::move(expected)),
      found(found) {}

namespace {

enum class Tok { Ident, Prim, Meta, IntVar, TypeVar, Int, Semi, Plus, Star, LParen, RParen, Comma, Colon, Arrow, Caret, End };

struct Token {
    Tok kind;
    std::string text;
    Loc loc;
};

std::string describe(const Token& t) {
    switch (t.kind) {
        case Tok::End:
            return "end of input";
        default:
            return "'" + t.text + "'";
    }
}

class Lexer {
public:
    explicit Lexer(const std::string& s) : s_(s) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip();
            Loc loc{line_, col_};
            if (pos_ >= s_.size()) {
                out.push_back({Tok::End, "", loc});
                return out;
            }
            out.push_back(next(loc));
        }
    }

private:
    const std::string& s_;
    size_t pos_ = 0;
    int line_ = 1, col_ = 1;

    char peek(size_t off = 0) const { return pos_ + off < s_.size() ? s_[pos_ + off] : '\0'; }

    void advance(size_t n = 1) {
        for (size_t i = 0; i < n && pos_ < s_.size(); ++i) {
            if (s_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else if ((static_cast<unsigned char>(s_[pos_]) & 0xC0) != 0x80) {
                ++col_;
            }
            ++pos_;
        }
    }

    bool starts(const char* lit) const { return s_.compare(pos_, std::char_traits<char>::length(lit), lit) == 0; }

    void skip() {
        for (;;) {
            while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(peek()))) advance();
            if (peek() == '#') {
                while (pos_ < s_.size() && peek() != '\n') advance();
                continue;
            }
            return;
        }
    }

    // '+' or '*' (also the UTF-8 multiplication sign) right after an operator stem
    int op_suffix_len() const {
        if (peek() == '+' || peek() == '*') return 1;
        if (starts("\xC3\x97")) return 2;
        return 0;
    }

    Token next(Loc loc) {
        char c = peek();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') advance();
            std::string word = s_.substr(start, pos_ - start);
            static const char* stems[] = {"swap", "assocr", "assocl", "unite", "uniti"};
            bool stem = std::find_if(std::begin(stems), std::end(stems), [&](const char* x) { return word == x; }) !=
                        std::end(stems);
            if (stem) {
                int n = op_suffix_len();
                if (n > 0) {
                    char op = n == 1 ? peek() : '*';
                    bool unit = word == "unite" || word == "uniti";
                    char side = peek(n);
                    if (!unit || side == 'l' || side == 'r') {
                        advance(n);
                        word += op;
                        if (unit) {
                            word += side;
                            advance();
                        }
                    }
                }
            }
            if (prim_from_name(word)) return {Tok::Prim, word, loc};
            return {Tok::Ident, word, loc};
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
            return {Tok::Int, s_.substr(start, pos_ - start), loc};
        }
        if (c == '?' || c == '$' || c == '\'') {
            advance();
            size_t start = pos_;
            while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') advance();
            if (start == pos_) throw SyntaxError(loc.line, loc.col, {"identifier"}, std::string("'") + c + "'");
            Tok k = c == '?' ? Tok::Meta : (c == '$' ? Tok::IntVar : Tok::TypeVar);
            return {k, s_.substr(start, pos_ - start), loc};
        }
        if (starts("<->")) {
            advance(3);
            return {Tok::Arrow, "<->", loc};
        }
        if (starts("\xE2\x86\x94")) {  // ↔
            advance(3);
            return {Tok::Arrow, "<->", loc};
        }
        if (starts("\xE2\xA8\xBE")) {  // ⨾
            advance(3);
            return {Tok::Semi, ";", loc};
        }
        if (starts("\xC3\x97")) {  // ×
            advance(2);
            return {Tok::Star, "*", loc};
        }
        advance();
        switch (c) {
            case ';':
                return {Tok::Semi, ";", loc};
            case '+':
                return {Tok::Plus, "+", loc};
            case '*':
                return {Tok::Star, "*", loc};
            case '(':
                return {Tok::LParen, "(", loc};
            case ')':
                return {Tok::RParen, ")", loc};
            case ',':
                return {Tok::Comma, ",", loc};
            case ':':
                return {Tok::Colon, ":", loc};
            case '^':
                return {Tok::Caret, "^", loc};
            default:
                break;
        }
        throw SyntaxError(loc.line, loc.col, {"term"}, std::string("'") + c + "'");
    }
};

class Parser {
public:
    explicit Parser(const std::string& text) : toks_(Lexer(text).run()) {}

    Term parse_term_eof() {
        Term t = term();
        expect_end({";", "+", "*", ":", "^"});
        return t;
    }

    Type parse_type_eof() {
        Type t = type();
        expect_end({"+", "*"});
        return t;
    }

    TypePair parse_pair_eof() {
        Type a = type();
        expect(Tok::Arrow, "'<->'", {"+", "*", "<->"});
        Type b = type();
        expect_end({"+", "*"});
        return {a, b};
    }

private:
    std::vector<Token> toks_;
    size_t i_ = 0;
    std::map<std::string, int> tvars_;

    const Token& cur() const { return toks_[i_]; }
    bool at(Tok k) const { return cur().kind == k; }

    [[noreturn]] void fail(std::vector<std::string> expected) {
        throw SyntaxError(cur().loc.line, cur().loc.col, std::move(expected), describe(cur()));
    }

    void expect_end(std::vector<std::string> also) {
        if (!at(Tok::End)) {
            also.push_back("end of input");
            fail(also);
        }
    }

    Token expect(Tok k, const std::string& what, std::vector<std::string> also = {}) {
        if (!at(k)) {
            also.insert(also.begin(), what);
            fail(also);
        }
        return toks_[i_++];
    }

    Term term() {
        Term t = seq();
        if (at(Tok::Colon)) {
            ++i_;
            Type a = type();
            expect(Tok::Arrow, "'<->'", {"+", "*"});
            Type b = type();
            t = annotate(t, a, b);
        }
        return t;
    }

    Term seq() {
        std::vector<Term> parts{sum()};
        while (at(Tok::Semi)) {
            ++i_;
            parts.push_back(sum());
        }
        return seq_chain(parts);
    }

    Term sum() {
        Term t = prod();
        while (at(Tok::Plus)) {
            Loc loc = cur().loc;
            ++i_;
            t = make_sum(t, prod(), loc);
        }
        return t;
    }

    Term prod() {
        Term t = postfix();
        while (at(Tok::Star)) {
            Loc loc = cur().loc;
            ++i_;
            t = make_prod(t, postfix(), loc);
        }
        return t;
    }

    Term postfix() {
        Term t = atom();
        if (at(Tok::Caret)) {
            ++i_;
            Token n = expect(Tok::Int, "integer");
            long k = std::stol(n.text);
            if (k < 1 || k > 4096) throw SyntaxError(n.loc.line, n.loc.col, {"integer in 1..4096"}, n.text);
            t = power(t, static_cast<int>(k));
        }
        return t;
    }

    Term atom() {
        const Token& t = cur();
        switch (t.kind) {
            case Tok::Prim:
                ++i_;
                return make_prim(*prim_from_name(t.text), t.loc);
            case Tok::Meta:
                ++i_;
                return make_meta(t.text, t.loc);
            case Tok::Ident: {
                Token name = t;
                ++i_;
                std::vector<MacroArg> args;
                if (at(Tok::LParen)) {
                    ++i_;
                    args.push_back(arg());
                    while (at(Tok::Comma)) {
                        ++i_;
                        args.push_back(arg());
                    }
                    expect(Tok::RParen, "')'", {","});
                }
                return make_macro(name.text, std::move(args), name.loc);
            }
            case Tok::LParen: {
                ++i_;
                Term inner = term();
                expect(Tok::RParen, "')'", {";", "+", "*", ":"});
                return inner;
            }
            default:
                fail({"primitive", "identifier", "metavariable", "'('"});
        }
    }

    MacroArg arg() {
        if (at(Tok::Int)) {
            MacroArg a = int_arg(std::stol(cur().text));
            ++i_;
            return a;
        }
        if (at(Tok::IntVar)) {
            MacroArg a;
            a.is_int = true;
            a.var = "$" + cur().text;
            ++i_;
            return a;
        }
        return term_arg(term());
    }

    Type type() {
        Type t = type_prod();
        while (at(Tok::Plus)) {
            ++i_;
            t = sum_type(t, type_prod());
        }
        return t;
    }

    Type type_prod() {
        Type t = type_atom();
        while (at(Tok::Star)) {
            ++i_;
            t = prod_type(t, type_atom());
        }
        return t;
    }

    Type type_atom() {
        const Token& t = cur();
        if (t.kind == Tok::Int) {
            ++i_;
            if (t.text == "0") return zero_type();
            if (t.text == "1") return one_type();
            if (t.text == "2") return two_type();
            throw SyntaxError(t.loc.line, t.loc.col, {"0", "1", "2"}, describe(t));
        }
        if (t.kind == Tok::TypeVar) {
            ++i_;
            auto it = tvars_.find(t.text);
            int id = it == tvars_.end() ? static_cast<int>(tvars_.size()) : it->second;
            tvars_.emplace(t.text, id);
            return var_type(-1 - id, t.text);
        }
        if (t.kind == Tok::LParen) {
            ++i_;
            Type inner = type();
            expect(Tok::RParen, "')'", {"+", "*"});
            return inner;
        }
        fail({"0", "1", "2", "type variable", "'('"});
    }
};

}  // namespace

Term parse(const std::string& text) { return Parser(text).parse_term_eof(); }
Type parse_type(const std::string& text) { return Parser(text).parse_type_eof(); }
TypePair parse_type_pair(const std::string& text) { return Parser(text).parse_pair_eof(); }

}  // namespace sqrtpi
