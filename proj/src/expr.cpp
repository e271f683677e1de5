#include "framegeo/expr.hpp"

#include <cctype>
#include <utility>

namespace framegeo {

const char* expr_fn_name(ExprFn fn) {
    switch (fn) {
        case ExprFn::Exp: return "exp";
        case ExprFn::Ln: return "ln";
        case ExprFn::Sin: return "sin";
        case ExprFn::Cos: return "cos";
        case ExprFn::Sqrt: return "sqrt";
    }
    return "?";
}

// ---- node constructors ----------------------------------------------------

Expr Expr::number(std::string literal) {
    auto n = std::make_shared<Node>();
    n->kind = ExprKind::Number;
    n->text = std::move(literal);
    return Expr(std::move(n));
}

Expr Expr::rational(long long num, long long den) {
    auto n = std::make_shared<Node>();
    n->kind = ExprKind::RationalLit;
    n->a = num;
    n->b = den;
    return Expr(std::move(n));
}

Expr Expr::coord(int index, std::string name) {
    auto n = std::make_shared<Node>();
    n->kind = ExprKind::Coord;
    n->a = index;
    n->text = std::move(name);
    return Expr(std::move(n));
}

Expr Expr::neg(Expr a) {
    auto n = std::make_shared<Node>();
    n->kind = ExprKind::Neg;
    n->lhs = std::move(a);
    return Expr(std::move(n));
}

Expr Expr::binary(ExprKind k, Expr a, Expr b) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    return Expr(std::move(n));
}

Expr Expr::add(Expr a, Expr b) { return binary(ExprKind::Add, std::move(a), std::move(b)); }
Expr Expr::sub(Expr a, Expr b) { return binary(ExprKind::Sub, std::move(a), std::move(b)); }
Expr Expr::mul(Expr a, Expr b) { return binary(ExprKind::Mul, std::move(a), std::move(b)); }
Expr Expr::div(Expr a, Expr b) { return binary(ExprKind::Div, std::move(a), std::move(b)); }

Expr Expr::pow(Expr base, long long exponent) {
    auto n = std::make_shared<Node>();
    n->kind = ExprKind::Pow;
    n->lhs = std::move(base);
    n->a = exponent;
    return Expr(std::move(n));
}

Expr Expr::call(ExprFn fn, Expr arg) {
    auto n = std::make_shared<Node>();
    n->kind = ExprKind::Call;
    n->fn = fn;
    n->lhs = std::move(arg);
    return Expr(std::move(n));
}

ExprKind Expr::kind() const {
    if (!node_) throw Error("empty expression");
    return node_->kind;
}
const std::string& Expr::literal() const { return node_->text; }
long long Expr::rat_num() const { return node_->a; }
long long Expr::rat_den() const { return node_->b; }
int Expr::coord_index() const { return static_cast<int>(node_->a); }
const std::string& Expr::coord_name() const { return node_->text; }
const Expr& Expr::child(int i) const { return i == 0 ? node_->lhs : node_->rhs; }
long long Expr::exponent() const { return node_->a; }
ExprFn Expr::fn() const { return node_->fn; }

std::string Expr::print() const {
    if (!node_) return "<empty>";
    const Node& n = *node_;
    switch (n.kind) {
        case ExprKind::Number: return n.text;
        case ExprKind::RationalLit:
            return std::to_string(n.a) + "/" + std::to_string(n.b);
        case ExprKind::Coord: return n.text;
        case ExprKind::Neg: return "(-" + n.lhs.print() + ")";
        case ExprKind::Add: return "(" + n.lhs.print() + " + " + n.rhs.print() + ")";
        case ExprKind::Sub: return "(" + n.lhs.print() + " - " + n.rhs.print() + ")";
        case ExprKind::Mul: return "(" + n.lhs.print() + " * " + n.rhs.print() + ")";
        case ExprKind::Div: return "(" + n.lhs.print() + " / " + n.rhs.print() + ")";
        case ExprKind::Pow:
            // "base^-3" re-parses: the exponent grammar accepts a sign
            return "(" + n.lhs.print() + "^" + std::to_string(n.a) + ")";
        case ExprKind::Call:
            return std::string(expr_fn_name(n.fn)) + "(" + n.lhs.print() + ")";
    }
    return "?";
}

bool Expr::structurally_equal(const Expr& o) const {
    if (!node_ || !o.node_) return !node_ && !o.node_;
    const Node& x = *node_;
    const Node& y = *o.node_;
    if (x.kind != y.kind) return false;
    switch (x.kind) {
        case ExprKind::Number: return x.text == y.text;
        case ExprKind::RationalLit: return x.a == y.a && x.b == y.b;
        case ExprKind::Coord: return x.a == y.a && x.text == y.text;
        case ExprKind::Neg:
        case ExprKind::Call:
            return (x.kind != ExprKind::Call || x.fn == y.fn) &&
                   x.lhs.structurally_equal(y.lhs);
        case ExprKind::Pow:
            return x.a == y.a && x.lhs.structurally_equal(y.lhs);
        default:
            return x.lhs.structurally_equal(y.lhs) && x.rhs.structurally_equal(y.rhs);
    }
}

int Chart::coord_index(const std::string& name) const {
    for (int i = 0; i < dim(); ++i)
        if (coord_names[i] == name) return i;
    return -1;
}

// ---- tokenizer ------------------------------------------------------------

namespace {

enum class Tok { Number, RationalLit, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
    Tok kind;
    std::string text;      // literal text / identifier
    long long num = 0, den = 1;
    std::size_t offset = 0;
    bool is_integer = false;  // Number consisting of digits only
};

class Lexer {
  public:
    explicit Lexer(const std::string& s) : s_(s) { advance(); }

    const Token& peek() const { return tok_; }

    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

  private:
    void advance() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
        tok_ = Token{};
        tok_.offset = i_;
        if (i_ >= s_.size()) {
            tok_.kind = Tok::End;
            return;
        }
        char c = s_[i_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            lex_number();
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i_;
            while (j < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_'))
                ++j;
            tok_.kind = Tok::Ident;
            tok_.text = s_.substr(i_, j - i_);
            i_ = j;
            return;
        }
        switch (c) {
            case '+': tok_.kind = Tok::Plus; break;
            case '-': tok_.kind = Tok::Minus; break;
            case '*': tok_.kind = Tok::Star; break;
            case '/': tok_.kind = Tok::Slash; break;
            case '^': tok_.kind = Tok::Caret; break;
            case '(': tok_.kind = Tok::LParen; break;
            case ')': tok_.kind = Tok::RParen; break;
            default:
                throw SyntaxError(std::string("unexpected character '") + c + "'", i_);
        }
        ++i_;
    }

    // Decimal literal, or "p/q" as a single rational literal when an
    // integer is immediately followed by '/' and another integer with no
    // intervening spaces.
    void lex_number() {
        std::size_t j = i_;
        bool integer = true;
        while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
        if (j < s_.size() && s_[j] == '.') {
            integer = false;
            ++j;
            while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
        }
        if (j < s_.size() && (s_[j] == 'e' || s_[j] == 'E')) {
            std::size_t k = j + 1;
            if (k < s_.size() && (s_[k] == '+' || s_[k] == '-')) ++k;
            if (k < s_.size() && std::isdigit(static_cast<unsigned char>(s_[k]))) {
                integer = false;
                j = k;
                while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
            }
        }
        std::string text = s_.substr(i_, j - i_);
        if (text == "." || text.empty())
            throw SyntaxError("malformed number", i_);
        if (integer && j < s_.size() && s_[j] == '/' && j + 1 < s_.size() &&
            std::isdigit(static_cast<unsigned char>(s_[j + 1]))) {
            std::size_t k = j + 1;
            while (k < s_.size() && std::isdigit(static_cast<unsigned char>(s_[k]))) ++k;
            tok_.kind = Tok::RationalLit;
            tok_.num = std::stoll(text);
            tok_.den = std::stoll(s_.substr(j + 1, k - j - 1));
            if (tok_.den == 0) throw SyntaxError("rational literal with zero denominator", i_);
            i_ = k;
            return;
        }
        tok_.kind = Tok::Number;
        tok_.text = std::move(text);
        tok_.is_integer = integer;
        i_ = j;
    }

    const std::string& s_;
    std::size_t i_ = 0;
    Token tok_;
};

class Parser {
  public:
    Parser(const std::string& text, const Chart& chart) : lex_(text), chart_(chart) {}

    Expr parse_full() {
        Expr e = parse_sum();
        if (lex_.peek().kind != Tok::End)
            throw SyntaxError("trailing input after expression", lex_.peek().offset);
        return e;
    }

  private:
    Expr parse_sum() {
        Expr e = parse_product();
        while (lex_.peek().kind == Tok::Plus || lex_.peek().kind == Tok::Minus) {
            bool plus = lex_.take().kind == Tok::Plus;
            Expr rhs = parse_product();
            e = plus ? Expr::add(std::move(e), std::move(rhs))
                     : Expr::sub(std::move(e), std::move(rhs));
        }
        return e;
    }

    Expr parse_product() {
        Expr e = parse_unary();
        while (lex_.peek().kind == Tok::Star || lex_.peek().kind == Tok::Slash) {
            bool star = lex_.take().kind == Tok::Star;
            Expr rhs = parse_unary();
            e = star ? Expr::mul(std::move(e), std::move(rhs))
                     : Expr::div(std::move(e), std::move(rhs));
        }
        return e;
    }

    Expr parse_unary() {
        if (lex_.peek().kind == Tok::Minus) {
            lex_.take();
            return Expr::neg(parse_unary());
        }
        return parse_power();
    }

    Expr parse_power() {
        Expr base = parse_atom();
        if (lex_.peek().kind != Tok::Caret) return base;
        lex_.take();
        long long e = parse_exponent();
        return Expr::pow(std::move(base), e);
    }

    // Integer exponent, optionally negated; a further '^' folds
    // right-associatively into a single integer.
    long long parse_exponent() {
        bool neg = false;
        if (lex_.peek().kind == Tok::Minus) {
            lex_.take();
            neg = true;
        }
        Token t = lex_.peek();
        if (t.kind != Tok::Number || !t.is_integer)
            throw NonIntegerExponent("exponent must be an integer literal", t.offset);
        lex_.take();
        long long base = std::stoll(t.text);
        long long value = base;
        if (lex_.peek().kind == Tok::Caret) {
            lex_.take();
            long long e = parse_exponent();
            if (e < 0) throw NonIntegerExponent("negative exponent inside an exponent tower", t.offset);
            value = 1;
            for (long long k = 0; k < e; ++k) {
                value *= base;
                if (value > (1LL << 40) || value < -(1LL << 40))
                    throw SyntaxError("exponent too large", t.offset);
            }
        }
        return neg ? -value : value;
    }

    Expr parse_atom() {
        Token t = lex_.peek();
        switch (t.kind) {
            case Tok::Number:
                lex_.take();
                return Expr::number(t.text);
            case Tok::RationalLit:
                lex_.take();
                return Expr::rational(t.num, t.den);
            case Tok::Ident: {
                lex_.take();
                if (lex_.peek().kind == Tok::LParen) {
                    ExprFn fn;
                    if (t.text == "exp") fn = ExprFn::Exp;
                    else if (t.text == "ln") fn = ExprFn::Ln;
                    else if (t.text == "sin") fn = ExprFn::Sin;
                    else if (t.text == "cos") fn = ExprFn::Cos;
                    else if (t.text == "sqrt") fn = ExprFn::Sqrt;
                    else throw UnknownIdentifier("unknown function '" + t.text + "'", t.offset);
                    lex_.take();
                    Expr arg = parse_sum();
                    expect_rparen();
                    return Expr::call(fn, std::move(arg));
                }
                int idx = chart_.coord_index(t.text);
                if (idx < 0)
                    throw UnknownIdentifier("unknown identifier '" + t.text + "'", t.offset);
                return Expr::coord(idx, t.text);
            }
            case Tok::LParen: {
                lex_.take();
                Expr e = parse_sum();
                expect_rparen();
                return e;
            }
            case Tok::End:
                throw SyntaxError("unexpected end of expression", t.offset);
            default:
                throw SyntaxError("unexpected token", t.offset);
        }
    }

    void expect_rparen() {
        if (lex_.peek().kind != Tok::RParen)
            throw SyntaxError("expected ')'", lex_.peek().offset);
        lex_.take();
    }

    Lexer lex_;
    const Chart& chart_;
};

}  // namespace

Expr parse(const std::string& text, const Chart& chart) {
    if (text.find_first_not_of(" \t\r\n") == std::string::npos)
        throw SyntaxError("empty expression", 0);
    return Parser(text, chart).parse_full();
}

DomainConstraint parse_constraint(const std::string& text, const Chart& chart) {
    auto gt = text.find('>');
    auto lt = text.find('<');
    if (gt == std::string::npos && lt == std::string::npos)
        throw SyntaxError("domain constraint needs '>' or '<'", 0);
    std::size_t sep = gt != std::string::npos ? gt : lt;
    DomainConstraint c;
    c.greater = gt != std::string::npos;
    c.lhs = parse(text.substr(0, sep), chart);
    c.rhs = parse(text.substr(sep + 1), chart);
    return c;
}

}  // namespace framegeo
