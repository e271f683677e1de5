#ifndef FRAMEGEO_EXPR_HPP
#define FRAMEGEO_EXPR_HPP

#include <memory>
#include <string>
#include <vector>

#include "framegeo/errors.hpp"
#include "framegeo/jet.hpp"

namespace framegeo {

/// A coordinate chart: named coordinates plus strict-inequality domain
/// constraints (each "lhs > rhs" or "lhs < rhs").
struct Chart;

enum class ExprKind { Number, RationalLit, Coord, Neg, Add, Sub, Mul, Div, Pow, Call };

enum class ExprFn { Exp, Ln, Sin, Cos, Sqrt };

const char* expr_fn_name(ExprFn fn);

/// Immutable expression tree over decimal literals, exact rational
/// literals, chart coordinates, arithmetic, integer powers, and the
/// elementary functions exp/ln/sin/cos/sqrt. Value semantics; nodes are
/// shared, never mutated.
class Expr {
  public:
    Expr() = default;

    static Expr number(std::string literal);
    static Expr rational(long long num, long long den);
    static Expr coord(int index, std::string name);
    static Expr neg(Expr a);
    static Expr add(Expr a, Expr b);
    static Expr sub(Expr a, Expr b);
    static Expr mul(Expr a, Expr b);
    static Expr div(Expr a, Expr b);
    static Expr pow(Expr base, long long exponent);
    static Expr call(ExprFn fn, Expr arg);

    bool empty() const { return !node_; }
    ExprKind kind() const;

    // accessors; each is valid only for the matching kind
    const std::string& literal() const;
    long long rat_num() const;
    long long rat_den() const;
    int coord_index() const;
    const std::string& coord_name() const;
    const Expr& child(int i) const;  // 0 = only/left child, 1 = right
    long long exponent() const;
    ExprFn fn() const;

    /// Fully parenthesized canonical text; parse(print(e)) reproduces
    /// the tree node for node.
    std::string print() const;

    bool structurally_equal(const Expr& o) const;

    /// Recursive evaluation through the jet kernel. The point must
    /// already satisfy the chart's domain constraints.
    template <class S>
    Jet<S> eval_jet(const std::vector<S>& point, int degree) const;

    /// Plain value evaluation (degree-0 path used for domain checks and
    /// finite-difference oracles).
    template <class S>
    S eval_value(const std::vector<S>& point) const;

  private:
    struct Node;
    explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    static Expr binary(ExprKind k, Expr a, Expr b);
    std::shared_ptr<const Node> node_;
};

struct Expr::Node {
    ExprKind kind;
    std::string text;      // Number literal or Coord name
    long long a = 0;       // rational num / coord index / pow exponent
    long long b = 1;       // rational den
    ExprFn fn = ExprFn::Exp;
    Expr lhs, rhs;
};

struct DomainConstraint {
    Expr lhs;
    bool greater = true;  // lhs > rhs when true, lhs < rhs otherwise
    Expr rhs;
};

struct Chart {
    std::vector<std::string> coord_names;
    std::vector<DomainConstraint> constraints;
    int dim() const { return static_cast<int>(coord_names.size()); }
    int coord_index(const std::string& name) const;  // -1 when absent
};

/// Parse an expression against a chart's coordinate names.
/// Precedence: ^ (right-assoc, integer exponents only) > unary minus >
/// {*,/} > {+,-}. "p/q" written without spaces is one rational literal.
Expr parse(const std::string& text, const Chart& chart);

/// Parse "lhs > rhs" or "lhs < rhs".
DomainConstraint parse_constraint(const std::string& text, const Chart& chart);

/// True when the point satisfies every strict inequality of the chart.
template <class S>
bool point_in_domain(const Chart& chart, const std::vector<S>& point) {
    for (const auto& c : chart.constraints) {
        S l = c.lhs.eval_value(point);
        S r = c.rhs.eval_value(point);
        if (c.greater ? !(l > r) : !(l < r)) return false;
    }
    return true;
}

// ---- inline template implementations ------------------------------------

template <class S>
Jet<S> Expr::eval_jet(const std::vector<S>& point, int degree) const {
    if (!node_) throw Error("evaluating an empty expression");
    const int nv = static_cast<int>(point.size());
    const Node& n = *node_;
    switch (n.kind) {
        case ExprKind::Number:
            return jet_const<S>(ScalarOps<S>::from_literal(n.text), nv, degree);
        case ExprKind::RationalLit:
            return jet_const<S>(ScalarOps<S>::from_ratio(n.a, n.b), nv, degree);
        case ExprKind::Coord:
            return jet_var<S>(static_cast<int>(n.a), point, nv, degree);
        case ExprKind::Neg:
            return -n.lhs.eval_jet(point, degree);
        case ExprKind::Add:
            return n.lhs.eval_jet(point, degree) + n.rhs.eval_jet(point, degree);
        case ExprKind::Sub:
            return n.lhs.eval_jet(point, degree) - n.rhs.eval_jet(point, degree);
        case ExprKind::Mul:
            return n.lhs.eval_jet(point, degree) * n.rhs.eval_jet(point, degree);
        case ExprKind::Div:
            return n.lhs.eval_jet(point, degree) / n.rhs.eval_jet(point, degree);
        case ExprKind::Pow:
            return jet_pow(n.lhs.eval_jet(point, degree), n.a);
        case ExprKind::Call:
            switch (n.fn) {
                case ExprFn::Exp: return jet_exp(n.lhs.eval_jet(point, degree));
                case ExprFn::Ln: return jet_ln(n.lhs.eval_jet(point, degree));
                case ExprFn::Sin: return jet_sin(n.lhs.eval_jet(point, degree));
                case ExprFn::Cos: return jet_cos(n.lhs.eval_jet(point, degree));
                case ExprFn::Sqrt: return jet_sqrt(n.lhs.eval_jet(point, degree));
            }
    }
    throw Error("corrupt expression node");
}

template <class S>
S Expr::eval_value(const std::vector<S>& point) const {
    return eval_jet<S>(point, 0).value();
}

}  // namespace framegeo

#endif
