#include "matlang/parser.hpp"

#include <cctype>
#include <sstream>
#include <vector>

namespace matlang {

namespace {

enum class Tok { Ident, FnName, LParen, RParen, LBracket, RBracket, Comma, Dot, Eq, Star, End };

const char* tok_name(Tok t) {
    switch (t) {
        case Tok::Ident: return "identifier";
        case Tok::FnName: return "function name";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::LBracket: return "'['";
        case Tok::RBracket: return "']'";
        case Tok::Comma: return "','";
        case Tok::Dot: return "'.'";
        case Tok::Eq: return "'='";
        case Tok::Star: return "'^*'";
        case Tok::End: return "end of input";
    }
    return "?";
}

struct Token {
    Tok kind;
    std::string text;
    long line, col;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_cont(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool fnname_char(char c) {
    return ident_cont(c) || c == ':' || c == '+' || c == '-' || c == '/' || c == '.';
}

class Lexer {
  public:
    explicit Lexer(const std::string& text) : s_(text) {}

    // FNNAME tokens are only valid directly inside apply[...]; the parser
    // switches the mode on.
    Token next(bool fn_mode) {
        skip_ws();
        long line = line_, col = col_;
        if (pos_ >= s_.size()) return {Tok::End, "", line, col};
        char c = s_[pos_];
        if (fn_mode && fnname_char(c)) {
            std::string t;
            while (pos_ < s_.size() && fnname_char(s_[pos_])) t += advance();
            return {Tok::FnName, t, line, col};
        }
        if (ident_start(c)) {
            std::string t;
            while (pos_ < s_.size() && ident_cont(s_[pos_])) t += advance();
            return {Tok::Ident, t, line, col};
        }
        switch (c) {
            case '(': advance(); return {Tok::LParen, "(", line, col};
            case ')': advance(); return {Tok::RParen, ")", line, col};
            case '[': advance(); return {Tok::LBracket, "[", line, col};
            case ']': advance(); return {Tok::RBracket, "]", line, col};
            case ',': advance(); return {Tok::Comma, ",", line, col};
            case '.': advance(); return {Tok::Dot, ".", line, col};
            case '=': advance(); return {Tok::Eq, "=", line, col};
            case '^':
                advance();
                if (pos_ < s_.size() && s_[pos_] == '*') {
                    advance();
                    return {Tok::Star, "^*", line, col};
                }
                throw SyntaxError(line, col, "'^*'", "'^'");
        }
        throw SyntaxError(line, col, "a token", std::string("'") + c + "'");
    }

  private:
    char advance() {
        char c = s_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }
    void skip_ws() {
        while (pos_ < s_.size()) {
            char c = s_[pos_];
            if (c == '#') {
                while (pos_ < s_.size() && s_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    const std::string& s_;
    size_t pos_ = 0;
    long line_ = 1, col_ = 1;
};

class Parser {
  public:
    explicit Parser(const std::string& text) : lex_(text) { shift(false); }

    ExprPtr parse_program() {
        ExprPtr e = parse_expr();
        expect(Tok::End);
        return e;
    }

  private:
    [[noreturn]] void fail(const std::string& expected) {
        throw SyntaxError(cur_.line, cur_.col, expected,
                          cur_.kind == Tok::End ? "end of input" : "'" + cur_.text + "'");
    }

    void shift(bool fn_mode = false) { cur_ = lex_.next(fn_mode); }

    Token expect(Tok k) {
        if (cur_.kind != k) fail(tok_name(k));
        Token t = cur_;
        if (k != Tok::End) shift();
        return t;
    }

    bool at_keyword(const char* kw) const { return cur_.kind == Tok::Ident && cur_.text == kw; }

    std::string expect_name() {
        if (cur_.kind != Tok::Ident) fail("identifier");
        for (const char* kw : {"let", "in", "ones", "diag", "inv", "eigen", "apply"})
            if (cur_.text == kw) fail("identifier (not a keyword)");
        std::string n = cur_.text;
        shift();
        return n;
    }

    ExprPtr parse_expr() {
        if (at_keyword("let")) {
            shift();
            if (cur_.kind == Tok::LParen) {
                shift();
                std::string basis = expect_name();
                expect(Tok::Comma);
                std::string dval = expect_name();
                expect(Tok::RParen);
                expect(Tok::Eq);
                if (!at_keyword("eigen")) fail("'eigen'");
                shift();
                expect(Tok::LParen);
                ExprPtr arg = parse_expr();
                expect(Tok::RParen);
                if (!at_keyword("in")) fail("'in'");
                shift();
                ExprPtr body = parse_expr();
                return eigenpair(basis, dval, arg, body);
            }
            std::string name = expect_name();
            expect(Tok::Eq);
            ExprPtr bound = parse_expr();
            if (!at_keyword("in")) fail("'in'");
            shift();
            ExprPtr body = parse_expr();
            return let_(name, bound, body);
        }
        return parse_term();
    }

    ExprPtr parse_term() {
        ExprPtr e = parse_factor();
        while (cur_.kind == Tok::Dot) {
            shift();
            e = matmul(e, parse_factor());
        }
        return e;
    }

    ExprPtr parse_factor() {
        ExprPtr e = parse_base();
        while (cur_.kind == Tok::Star) {
            shift();
            e = transpose(e);
        }
        return e;
    }

    ExprPtr parse_unary(const char* kw, ExprPtr (*mk)(ExprPtr)) {
        shift();
        expect(Tok::LParen);
        ExprPtr a = parse_expr();
        expect(Tok::RParen);
        (void)kw;
        return mk(std::move(a));
    }

    ExprPtr parse_base() {
        if (cur_.kind == Tok::LParen) {
            shift();
            ExprPtr e = parse_expr();
            expect(Tok::RParen);
            return e;
        }
        if (cur_.kind != Tok::Ident) fail("an expression");
        if (at_keyword("ones")) return parse_unary("ones", [](ExprPtr a) { return ones(std::move(a)); });
        if (at_keyword("diag")) return parse_unary("diag", [](ExprPtr a) { return diag(std::move(a)); });
        if (at_keyword("inv")) return parse_unary("inv", [](ExprPtr a) { return inv(std::move(a)); });
        if (at_keyword("eigen"))
            return parse_unary("eigen", [](ExprPtr a) { return eigen(std::move(a)); });
        if (at_keyword("apply")) {
            shift();
            if (cur_.kind != Tok::LBracket) fail("'['");
            shift(true);  // function-name mode
            if (cur_.kind != Tok::FnName && cur_.kind != Tok::Ident) fail("function name");
            std::string fn = cur_.text;
            shift();
            expect(Tok::RBracket);
            expect(Tok::LParen);
            std::vector<ExprPtr> args;
            args.push_back(parse_expr());
            while (cur_.kind == Tok::Comma) {
                shift();
                args.push_back(parse_expr());
            }
            expect(Tok::RParen);
            return apply(fn, std::move(args));
        }
        if (at_keyword("let") || at_keyword("in")) fail("an expression");
        return var(expect_name());
    }

    Lexer lex_;
    Token cur_;
};

// Precedence contexts for printing: 0 = expr, 1 = term, 2 = factor.
void print(const ExprPtr& e, int level, std::string& out) {
    auto parens = [&](auto&& body) {
        out += "(";
        body();
        out += ")";
    };
    switch (e->kind) {
        case Expr::Kind::Var:
            out += e->name;
            return;
        case Expr::Kind::Let: {
            auto body = [&] {
                out += "let " + e->name + " = ";
                print(e->args[0], 0, out);
                out += " in ";
                print(e->args[1], 0, out);
            };
            if (level > 0) parens(body); else body();
            return;
        }
        case Expr::Kind::EigenPair: {
            auto body = [&] {
                out += "let (" + e->name + ", " + e->name2 + ") = eigen(";
                print(e->args[0], 0, out);
                out += ") in ";
                print(e->args[1], 0, out);
            };
            if (level > 0) parens(body); else body();
            return;
        }
        case Expr::Kind::MatMul: {
            auto body = [&] {
                print(e->args[0], 1, out);
                out += " . ";
                print(e->args[1], 2, out);
            };
            if (level > 1) parens(body); else body();
            return;
        }
        case Expr::Kind::Transpose:
            print(e->args[0], 2, out);
            out += "^*";
            return;
        case Expr::Kind::Ones:
        case Expr::Kind::Diag:
        case Expr::Kind::Inv:
        case Expr::Kind::Eigen: {
            const char* kw = e->kind == Expr::Kind::Ones   ? "ones"
                             : e->kind == Expr::Kind::Diag ? "diag"
                             : e->kind == Expr::Kind::Inv  ? "inv"
                                                           : "eigen";
            out += kw;
            out += "(";
            print(e->args[0], 0, out);
            out += ")";
            return;
        }
        case Expr::Kind::Apply: {
            out += "apply[" + e->name + "](";
            for (size_t i = 0; i < e->args.size(); ++i) {
                if (i) out += ", ";
                print(e->args[i], 0, out);
            }
            out += ")";
            return;
        }
    }
}

}  // namespace

ExprPtr parse(const std::string& text) { return Parser(text).parse_program(); }

std::string pretty_print(const ExprPtr& e) {
    std::string out;
    print(e, 0, out);
    return out;
}

Schema parse_schema(const std::string& text) {
    Schema schema;
    std::istringstream in(text);
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        // tokenize: identifiers / '1' / ':' on whitespace boundaries
        std::vector<std::string> toks;
        size_t i = 0;
        while (i < line.size()) {
            char c = line[i];
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++i;
            } else if (c == ':') {
                toks.push_back(":");
                ++i;
            } else if (ident_start(c) || c == '1') {
                size_t j = i;
                if (c == '1') {
                    ++j;
                } else {
                    while (j < line.size() && ident_cont(line[j])) ++j;
                }
                toks.push_back(line.substr(i, j - i));
                i = j;
            } else {
                throw SyntaxError(lineno, static_cast<long>(i + 1), "schema entry",
                                  std::string("'") + c + "'");
            }
        }
        if (toks.empty()) continue;
        // NAME : s1 x s2
        if (toks.size() != 5 || toks[1] != ":" || toks[3] != "x")
            throw SyntaxError(lineno, 1, "'NAME : sizeterm x sizeterm'", "'" + line + "'");
        auto term = [&](const std::string& t) {
            return t == "1" ? SizeTerm::one() : SizeTerm::symbol(t);
        };
        if (schema.count(toks[0])) throw DuplicateVariableError(toks[0]);
        schema.emplace(toks[0], MatrixType{term(toks[2]), term(toks[4])});
    }
    if (schema.empty()) throw SyntaxError(1, 1, "at least one schema entry", "empty schema");
    return schema;
}

std::string schema_to_string(const Schema& s) {
    std::string out;
    for (auto& [name, t] : s) out += name + " : " + t.str() + "\n";
    return out;
}

}  // namespace matlang
