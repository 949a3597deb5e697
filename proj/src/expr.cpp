#include "calib/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <map>
#include <sstream>

namespace calib {

namespace {

const std::map<std::string, std::pair<Func, int>>& function_table() {
    static const std::map<std::string, std::pair<Func, int>> t = {
        {"sin", {Func::sin, 1}},   {"cos", {Func::cos, 1}},   {"tan", {Func::tan, 1}},
        {"exp", {Func::exp, 1}},   {"log", {Func::log, 1}},   {"sqrt", {Func::sqrt, 1}},
        {"sinh", {Func::sinh, 1}}, {"cosh", {Func::cosh, 1}}, {"tanh", {Func::tanh, 1}},
        {"atan2", {Func::atan2, 2}},
    };
    return t;
}

const char* function_name(Func f) {
    for (const auto& [name, entry] : function_table())
        if (entry.first == f) return name.c_str();
    return "?";
}

struct Token {
    enum class Type { number, ident, op, end } type = Type::end;
    double number = 0;
    std::string ident;
    char op = 0;
    std::size_t offset = 0;
};

class Lexer {
  public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }

    const Token& peek() const { return tok_; }

    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

  private:
    void advance() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        tok_ = Token{};
        tok_.offset = pos_;
        if (pos_ >= text_.size()) {
            tok_.type = Token::Type::end;
            return;
        }
        char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const char* begin = text_.c_str() + pos_;
            char* end = nullptr;
            double val = std::strtod(begin, &end);
            if (end == begin) throw ParseError("malformed number", pos_);
            tok_.type = Token::Type::number;
            tok_.number = val;
            pos_ += static_cast<std::size_t>(end - begin);
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            tok_.type = Token::Type::ident;
            tok_.ident = text_.substr(start, pos_ - start);
            return;
        }
        if (std::strchr("+-*/^(),", c)) {
            tok_.type = Token::Type::op;
            tok_.op = c;
            ++pos_;
            return;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    Token tok_;
};

// Binding powers.  '^' out-binds unary minus: -u^2 parses as -(u^2).
constexpr int kAdditive = 10;
constexpr int kMultiplicative = 20;
constexpr int kUnary = 25;
constexpr int kPower = 30;

class Parser {
  public:
    explicit Parser(const std::string& text) : lex_(text) {}

    ExprPtr parse_all() {
        ExprPtr e = parse_expr(0);
        const Token& t = lex_.peek();
        if (t.type != Token::Type::end) throw ParseError("trailing input", t.offset);
        return e;
    }

  private:
    static ExprPtr make(ExprKind kind, std::size_t offset, std::vector<ExprPtr> args = {}) {
        auto n = std::make_shared<ExprNode>();
        n->kind = kind;
        n->offset = offset;
        n->args = std::move(args);
        return n;
    }

    ExprPtr parse_expr(int min_bp) {
        ExprPtr lhs = parse_prefix();
        for (;;) {
            const Token& t = lex_.peek();
            if (t.type != Token::Type::op) break;
            int bp;
            ExprKind kind;
            switch (t.op) {
                case '+': bp = kAdditive; kind = ExprKind::add; break;
                case '-': bp = kAdditive; kind = ExprKind::sub; break;
                case '*': bp = kMultiplicative; kind = ExprKind::mul; break;
                case '/': bp = kMultiplicative; kind = ExprKind::divide; break;
                case '^': bp = kPower; kind = ExprKind::pow; break;
                default: return lhs;
            }
            if (bp < min_bp) break;
            Token op = lex_.take();
            // right-associative '^': recurse at bp, others at bp + 1
            ExprPtr rhs = parse_expr(kind == ExprKind::pow ? bp : bp + 1);
            lhs = make(kind, op.offset, {lhs, rhs});
        }
        return lhs;
    }

    ExprPtr parse_prefix() {
        Token t = lex_.take();
        switch (t.type) {
            case Token::Type::number: {
                ExprPtr n = make(ExprKind::number, t.offset);
                const_cast<ExprNode&>(*n).number = t.number;
                return n;
            }
            case Token::Type::ident: {
                if (t.ident == "u") return make(ExprKind::var_u, t.offset);
                if (t.ident == "v") return make(ExprKind::var_v, t.offset);
                auto it = function_table().find(t.ident);
                if (it == function_table().end())
                    throw ParseError("unknown identifier '" + t.ident + "'", t.offset);
                expect('(');
                std::vector<ExprPtr> args;
                args.push_back(parse_expr(0));
                while (lex_.peek().type == Token::Type::op && lex_.peek().op == ',') {
                    lex_.take();
                    args.push_back(parse_expr(0));
                }
                expect(')');
                if (static_cast<int>(args.size()) != it->second.second)
                    throw ParseError("function '" + t.ident + "' expects " +
                                         std::to_string(it->second.second) + " argument(s)",
                                     t.offset);
                ExprPtr n = make(ExprKind::call, t.offset, std::move(args));
                const_cast<ExprNode&>(*n).func = it->second.first;
                return n;
            }
            case Token::Type::op:
                if (t.op == '-') {
                    ExprPtr arg = parse_expr(kUnary);
                    return make(ExprKind::neg, t.offset, {arg});
                }
                if (t.op == '(') {
                    ExprPtr inner = parse_expr(0);
                    expect(')');
                    return inner;
                }
                throw ParseError(std::string("unexpected '") + t.op + "'", t.offset);
            case Token::Type::end:
                throw ParseError("unexpected end of input", t.offset);
        }
        throw ParseError("unreachable", t.offset);
    }

    void expect(char op) {
        const Token& t = lex_.peek();
        if (t.type != Token::Type::op || t.op != op)
            throw ParseError(std::string("expected '") + op + "'", t.offset);
        lex_.take();
    }

    Lexer lex_;
};

std::string print_node(const ExprNode& n, int parent_bp);

std::string print_binary(const ExprNode& n, const char* op, int bp, bool right_assoc) {
    // Children of left-associative operators need parens when they bind at or
    // below the parent on the right side, and strictly below on the left.
    std::string lhs = print_node(*n.args[0], right_assoc ? bp + 1 : bp);
    std::string rhs = print_node(*n.args[1], right_assoc ? bp : bp + 1);
    return lhs + op + rhs;
}

std::string print_node(const ExprNode& n, int parent_bp) {
    std::string out;
    int bp = 0;
    switch (n.kind) {
        case ExprKind::number: {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", n.number);
            out = buf;
            bp = 100;
            // negative literals need parens inside tighter contexts
            if (n.number < 0) bp = kUnary;
            break;
        }
        case ExprKind::var_u: out = "u"; bp = 100; break;
        case ExprKind::var_v: out = "v"; bp = 100; break;
        case ExprKind::add: out = print_binary(n, " + ", kAdditive, false); bp = kAdditive; break;
        case ExprKind::sub: out = print_binary(n, " - ", kAdditive, false); bp = kAdditive; break;
        case ExprKind::mul: out = print_binary(n, "*", kMultiplicative, false); bp = kMultiplicative; break;
        case ExprKind::divide: out = print_binary(n, "/", kMultiplicative, false); bp = kMultiplicative; break;
        case ExprKind::pow: out = print_binary(n, "^", kPower, true); bp = kPower; break;
        case ExprKind::neg:
            out = "-" + print_node(*n.args[0], kUnary);
            bp = kUnary;
            break;
        case ExprKind::call: {
            out = std::string(function_name(n.func)) + "(";
            for (std::size_t m = 0; m < n.args.size(); ++m) {
                if (m) out += ", ";
                out += print_node(*n.args[m], 0);
            }
            out += ")";
            bp = 100;
            break;
        }
    }
    if (bp < parent_bp) return "(" + out + ")";
    return out;
}

Jet2 eval_node(const ExprNode& n, double u, double v) {
    auto guard = [&](Jet2 (*fn)(const Jet2&), const Jet2& x) -> Jet2 {
        try {
            return fn(x);
        } catch (const JetDomainError& err) {
            throw EvalDomainError(err.what(), print_node(n, 0), n.offset);
        }
    };
    switch (n.kind) {
        case ExprKind::number: return Jet2::constant(n.number);
        case ExprKind::var_u: return Jet2::var_u(u);
        case ExprKind::var_v: return Jet2::var_v(v);
        case ExprKind::add: return eval_node(*n.args[0], u, v) + eval_node(*n.args[1], u, v);
        case ExprKind::sub: return eval_node(*n.args[0], u, v) - eval_node(*n.args[1], u, v);
        case ExprKind::mul: return eval_node(*n.args[0], u, v) * eval_node(*n.args[1], u, v);
        case ExprKind::divide: {
            Jet2 a = eval_node(*n.args[0], u, v);
            Jet2 b = eval_node(*n.args[1], u, v);
            try {
                return a / b;
            } catch (const JetDomainError& err) {
                throw EvalDomainError(err.what(), print_node(n, 0), n.offset);
            }
        }
        case ExprKind::pow: {
            Jet2 a = eval_node(*n.args[0], u, v);
            Jet2 b = eval_node(*n.args[1], u, v);
            try {
                return pow(a, b);
            } catch (const JetDomainError& err) {
                throw EvalDomainError(err.what(), print_node(n, 0), n.offset);
            }
        }
        case ExprKind::neg: return -eval_node(*n.args[0], u, v);
        case ExprKind::call: {
            Jet2 a = eval_node(*n.args[0], u, v);
            switch (n.func) {
                case Func::sin: return sin(a);
                case Func::cos: return cos(a);
                case Func::tan: return tan(a);
                case Func::exp: return exp(a);
                case Func::log: return guard(&log, a);
                case Func::sqrt: return guard(&sqrt, a);
                case Func::sinh: return sinh(a);
                case Func::cosh: return cosh(a);
                case Func::tanh: return tanh(a);
                case Func::atan2: {
                    Jet2 b = eval_node(*n.args[1], u, v);
                    try {
                        return atan2(a, b);
                    } catch (const JetDomainError& err) {
                        throw EvalDomainError(err.what(), print_node(n, 0), n.offset);
                    }
                }
            }
        }
    }
    throw std::logic_error("eval: bad node");
}

}  // namespace

Jet2 Expr::eval_jet2(double u, double v) const { return eval_node(*root_, u, v); }

double Expr::eval(double u, double v) const { return eval_node(*root_, u, v).v; }

Expr parse(const std::string& text) {
    Parser p(text);
    return Expr(p.parse_all());
}

std::string print(const Expr& e) { return print_node(e.node(), 0); }

namespace {

bool equal_nodes(const ExprNode& a, const ExprNode& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == ExprKind::number && a.number != b.number) return false;
    if (a.kind == ExprKind::call && a.func != b.func) return false;
    if (a.args.size() != b.args.size()) return false;
    for (std::size_t m = 0; m < a.args.size(); ++m)
        if (!equal_nodes(*a.args[m], *b.args[m])) return false;
    return true;
}

}  // namespace

bool structurally_equal(const Expr& a, const Expr& b) { return equal_nodes(a.node(), b.node()); }

}  // namespace calib
