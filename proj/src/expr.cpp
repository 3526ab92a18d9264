#include "gps/expr.hpp"

#include <cctype>

#include "gps/error.hpp"

namespace gps {

namespace {

struct Token {
    enum class Type { Number, Ident, Op, End } type;
    std::string text;
    mpq_class value;
    std::size_t line, col;
};

std::string describe(const Token& t) {
    if (t.type == Token::Type::End) return "end of input";
    return "'" + t.text + "'";
}

class Lexer {
public:
    explicit Lexer(std::string_view s) : s_(s) {}

    Token next() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) advance();
        Token t{Token::Type::End, "", 0, line_, col_};
        if (i_ >= s_.size()) return t;
        char c = s_[i_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num = digits();
            // p/q with no whitespace is a rational literal.
            if (i_ + 1 < s_.size() && s_[i_] == '/' && std::isdigit(static_cast<unsigned char>(s_[i_ + 1]))) {
                advance();
                std::string den = digits();
                t.text = num + "/" + den;
                if (mpz_class(den) == 0) throw Error(ErrorKind::ZeroSeries, "division by zero in literal " + t.text);
                t.value = mpq_class(mpz_class(num), mpz_class(den));
                t.value.canonicalize();
            } else {
                t.text = num;
                t.value = mpq_class(mpz_class(num));
            }
            t.type = Token::Type::Number;
            return t;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) {
                t.text += s_[i_];
                advance();
            }
            t.type = Token::Type::Ident;
            return t;
        }
        if (std::string_view("+-*/^()").find(c) != std::string_view::npos) {
            t.type = Token::Type::Op;
            t.text = std::string(1, c);
            advance();
            return t;
        }
        throw Error(ErrorKind::ParseError, "line " + std::to_string(line_) + ", column " + std::to_string(col_) +
                                               ": unexpected character '" + std::string(1, c) + "'");
    }

private:
    std::string digits() {
        std::string d;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
            d += s_[i_];
            advance();
        }
        return d;
    }
    void advance() {
        if (s_[i_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++i_;
    }

    std::string_view s_;
    std::size_t i_ = 0, line_ = 1, col_ = 1;
};

Expr node(ExprNode::Kind k, std::vector<Expr> kids = {}) {
    auto n = std::make_shared<ExprNode>();
    n->kind = k;
    n->kids = std::move(kids);
    return n;
}

class Parser {
public:
    Parser(std::string_view text, const std::vector<std::string>& names) : lex_(text), names_(names) { tok_ = lex_.next(); }

    Expr parse() {
        Expr e = expr();
        if (tok_.type != Token::Type::End) fail("'+', '-', '*', '/' or end of input");
        return e;
    }

private:
    bool is_op(const char* op) const { return tok_.type == Token::Type::Op && tok_.text == op; }
    void shift() { tok_ = lex_.next(); }

    [[noreturn]] void fail(const std::string& expected) const {
        throw Error(ErrorKind::ParseError, "line " + std::to_string(tok_.line) + ", column " + std::to_string(tok_.col) +
                                               ": expected " + expected + ", found " + describe(tok_));
    }

    Expr expr() {
        Expr e = term();
        while (is_op("+") || is_op("-")) {
            auto k = is_op("+") ? ExprNode::Kind::Add : ExprNode::Kind::Sub;
            shift();
            e = node(k, {e, term()});
        }
        return e;
    }

    Expr term() {
        Expr e = unary();
        while (is_op("*") || is_op("/")) {
            auto k = is_op("*") ? ExprNode::Kind::Mul : ExprNode::Kind::Div;
            shift();
            e = node(k, {e, unary()});
        }
        return e;
    }

    Expr unary() {
        if (is_op("-")) {
            shift();
            return node(ExprNode::Kind::Neg, {power()});
        }
        return power();
    }

    Expr power() {
        Expr base = atom();
        if (!is_op("^")) return base;
        shift();
        bool neg = false;
        if (is_op("-") || is_op("+")) {
            neg = is_op("-");
            shift();
        }
        if (tok_.type != Token::Type::Number || tok_.value.get_den() != 1) fail("an integer exponent");
        mpz_class v = tok_.value.get_num();
        if (!v.fits_slong_p()) fail("an exponent that fits in 64 bits");
        auto n = std::make_shared<ExprNode>();
        n->kind = ExprNode::Kind::Pow;
        n->exponent = neg ? -v.get_si() : v.get_si();
        n->kids = {base};
        shift();
        return n;
    }

    Expr atom() {
        if (tok_.type == Token::Type::Number) {
            auto n = std::make_shared<ExprNode>();
            n->kind = ExprNode::Kind::Number;
            n->number = tok_.value;
            shift();
            return n;
        }
        if (tok_.type == Token::Type::Ident) {
            std::size_t i = 0;
            while (i < names_.size() && names_[i] != tok_.text) ++i;
            if (i == names_.size()) {
                std::string known;
                for (const auto& s : names_) known += (known.empty() ? "" : ", ") + s;
                throw Error(ErrorKind::UndeclaredVariable, "line " + std::to_string(tok_.line) + ", column " +
                                                               std::to_string(tok_.col) + ": '" + tok_.text +
                                                               "' is not declared (declared: " + known + ")");
            }
            auto n = std::make_shared<ExprNode>();
            n->kind = ExprNode::Kind::Symbol;
            n->symbol = i;
            shift();
            return n;
        }
        if (is_op("(")) {
            shift();
            Expr e = expr();
            if (!is_op(")")) fail("')'");
            shift();
            return e;
        }
        fail("a number, a variable or '('");
    }

    Lexer lex_;
    const std::vector<std::string>& names_;
    Token tok_;
};

}  // namespace

std::vector<std::string> default_h_names(std::size_t m) {
    std::vector<std::string> out;
    for (std::size_t i = 1; i <= m; ++i) out.push_back("H" + std::to_string(i));
    return out;
}

std::vector<std::string> SessionConfig::names() const {
    auto out = default_h_names(hdim);
    out.insert(out.end(), vars.begin(), vars.end());
    return out;
}

AmbientPtr SessionConfig::ambient() const {
    const std::size_t k = hdim + vars.size();
    if (vars.empty()) throw Error(ErrorKind::DimensionMismatch, "at least one variable is needed");
    TermOrder o = order.empty() ? TermOrder::identity(k) : TermOrder::parse(order);
    if (o.dim() != k)
        throw Error(ErrorKind::DimensionMismatch, "order acts on Z^" + std::to_string(o.dim()) + " but there are " +
                                                      std::to_string(k) + " exponent coordinates");
    return make_ambient(GroupSplit(hdim, vars.size()), o, Field::parse(field));
}

std::optional<Box> SessionConfig::target_box() const {
    if (box.empty()) return std::nullopt;
    return Box::parse(box, hdim + vars.size());
}

Expr parse_expr(std::string_view text, const std::vector<std::string>& names) {
    return Parser(text, names).parse();
}

Lazy to_lazy(const Expr& e, const AmbientPtr& amb) {
    using K = ExprNode::Kind;
    switch (e->kind) {
        case K::Number: return Lazy::constant(amb, amb->field.normalize(e->number));
        case K::Symbol: {
            Exponent x(amb->split.k());
            x[e->symbol] = 1;
            return Lazy(Series::monomial(amb, 1, x));
        }
        case K::Neg: return -to_lazy(e->kids[0], amb);
        case K::Add: return to_lazy(e->kids[0], amb) + to_lazy(e->kids[1], amb);
        case K::Sub: return to_lazy(e->kids[0], amb) - to_lazy(e->kids[1], amb);
        case K::Mul: return to_lazy(e->kids[0], amb) * to_lazy(e->kids[1], amb);
        case K::Div: return to_lazy(e->kids[0], amb) * inverse(to_lazy(e->kids[1], amb));
        case K::Pow: return power(to_lazy(e->kids[0], amb), e->exponent);
    }
    throw Error(ErrorKind::InvalidArgument, "unknown expression node");
}

Series evaluate(const Expr& e, const SessionConfig& cfg) {
    AmbientPtr amb = cfg.ambient();
    Lazy l = to_lazy(e, amb);
    if (const Series* s = l.exact_value()) return *s;
    auto box = cfg.target_box();
    if (!box) throw Error(ErrorKind::MissingBox, "the expression is not a Laurent polynomial; pass --box");
    return l.evaluate(*box);
}

std::string format_scalar(const mpq_class& c) { return c.get_str(); }

std::string format_polynomial(const Series& f, const std::vector<std::string>& names) {
    std::string out;
    for (const auto& t : f.terms()) {
        std::string mono;
        for (std::size_t i = 0; i < t.exp.size(); ++i) {
            if (t.exp[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += names.at(i);
            if (t.exp[i] != 1) mono += "^" + std::to_string(t.exp[i]);
        }
        mpq_class c = t.coeff;
        bool negative = c < 0;
        if (negative) c = -c;
        std::string body;
        if (mono.empty())
            body = c.get_str();
        else if (c == 1)
            body = mono;
        else
            body = c.get_str() + "*" + mono;
        if (out.empty())
            out = (negative ? "-" : "") + body;
        else
            out += (negative ? " - " : " + ") + body;
    }
    return out.empty() ? "0" : out;
}

}  // namespace gps
