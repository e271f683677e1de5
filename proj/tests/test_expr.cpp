#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "framegeo/expr.hpp"
#include "support/finite_diff.hpp"

using namespace framegeo;

namespace {

Chart xyz_chart() {
    Chart c;
    c.coord_names = {"x", "y", "z"};
    return c;
}

// random AST for round-trip property tests
Expr random_expr(std::mt19937_64& rng, int depth) {
    auto pick = rng() % (depth <= 0 ? 3 : 8);
    switch (pick) {
        case 0: return Expr::number(std::to_string(rng() % 100));
        case 1: return Expr::rational(static_cast<long long>(rng() % 20) + 1,
                                      static_cast<long long>(rng() % 20) + 1);
        case 2: {
            int i = static_cast<int>(rng() % 3);
            const char* names[] = {"x", "y", "z"};
            return Expr::coord(i, names[i]);
        }
        case 3: return Expr::neg(random_expr(rng, depth - 1));
        case 4: return Expr::add(random_expr(rng, depth - 1), random_expr(rng, depth - 1));
        case 5: return Expr::mul(random_expr(rng, depth - 1), random_expr(rng, depth - 1));
        case 6: return Expr::pow(random_expr(rng, depth - 1), static_cast<long long>(rng() % 5));
        default:
            return Expr::call(static_cast<ExprFn>(rng() % 5), random_expr(rng, depth - 1));
    }
}

}  // namespace

TEST_CASE("precedence and associativity") {
    Chart chart = xyz_chart();
    Expr e = parse("z^2 + 3/2*x", chart);
    REQUIRE(e.kind() == ExprKind::Add);
    REQUIRE(e.child(0).kind() == ExprKind::Pow);
    CHECK(e.child(0).child(0).kind() == ExprKind::Coord);
    CHECK(e.child(0).exponent() == 2);
    REQUIRE(e.child(1).kind() == ExprKind::Mul);
    CHECK(e.child(1).child(0).kind() == ExprKind::RationalLit);
    CHECK(e.child(1).child(0).rat_num() == 3);
    CHECK(e.child(1).child(0).rat_den() == 2);
    CHECK(e.child(1).child(1).kind() == ExprKind::Coord);

    Expr neg = parse("-z", chart);
    REQUIRE(neg.kind() == ExprKind::Neg);
    CHECK(neg.child(0).kind() == ExprKind::Coord);
    CHECK(neg.child(0).coord_name() == "z");

    // unary minus binds looser than ^
    Expr me = parse("-z^2", chart);
    REQUIRE(me.kind() == ExprKind::Neg);
    CHECK(me.child(0).kind() == ExprKind::Pow);
    CHECK(me.eval_value<double>({0, 0, 3}) == -9.0);

    // left association of - and /
    CHECK(parse("8 - 3 - 2", chart).eval_value<double>({0, 0, 0}) == 3.0);
    CHECK(parse("8 / 2 / 2", chart).eval_value<double>({0, 0, 0}) == 2.0);

    // exponent towers fold right-associatively
    CHECK(parse("2^3^2", chart).eval_value<double>({0, 0, 0}) == 512.0);
    CHECK(parse("z^-2", chart).eval_value<double>({0, 0, 2}) == 0.25);
}

TEST_CASE("syntax errors carry byte offsets") {
    Chart chart = xyz_chart();
    CHECK_THROWS_AS(parse("exp(2*z", chart), SyntaxError);
    try {
        parse("exp(2*z", chart);
    } catch (const SyntaxError& e) {
        CHECK(e.offset == 7);
    }
    CHECK_THROWS_AS(parse("", chart), SyntaxError);
    CHECK_THROWS_AS(parse("2x", chart), SyntaxError);       // no implicit multiplication
    CHECK_THROWS_AS(parse("x + * y", chart), SyntaxError);
    CHECK_THROWS_AS(parse("w + 1", chart), UnknownIdentifier);
    CHECK_THROWS_AS(parse("foo(x)", chart), UnknownIdentifier);
    CHECK_THROWS_AS(parse("z^2.5", chart), NonIntegerExponent);
    CHECK_THROWS_AS(parse("z^x", chart), NonIntegerExponent);
    CHECK_THROWS_AS(parse("z^(2)", chart), NonIntegerExponent);
}

TEST_CASE("rational literal needs adjacency") {
    Chart chart = xyz_chart();
    Expr lit = parse("3/2", chart);
    CHECK(lit.kind() == ExprKind::RationalLit);
    Expr division = parse("3 / 2", chart);
    REQUIRE(division.kind() == ExprKind::Div);
    CHECK(division.child(0).kind() == ExprKind::Number);
    // same value, different tree
    CHECK(lit.eval_value<double>({0, 0, 0}) == division.eval_value<double>({0, 0, 0}));
    CHECK(lit.eval_value<Rational>({Rational(0), Rational(0), Rational(0)}) ==
          division.eval_value<Rational>({Rational(0), Rational(0), Rational(0)}));
}

TEST_CASE("print/parse round trip is structural identity") {
    Chart chart = xyz_chart();
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 40; ++trial) {
        Expr e = random_expr(rng, 4);
        Expr back = parse(e.print(), chart);
        CHECK(back.structurally_equal(e));
    }
}

TEST_CASE("evaluation is a homomorphism in exact mode") {
    Chart chart = xyz_chart();
    std::vector<Rational> p{Rational(1, 2), Rational(-2), Rational(3)};
    Expr a = parse("x^2 + 3/2*y", chart);
    Expr b = parse("z - y*x", chart);
    Expr sum = Expr::add(a, b);
    Expr prod = Expr::mul(a, b);
    auto ja = a.eval_jet<Rational>(p, 3);
    auto jb = b.eval_jet<Rational>(p, 3);
    CHECK(sum.eval_jet<Rational>(p, 3) == ja + jb);
    CHECK(prod.eval_jet<Rational>(p, 3) == ja * jb);
}

TEST_CASE("evaluation of the worked coordinate examples") {
    Chart chart = xyz_chart();
    std::vector<double> p{1, 1, 2};
    Jet<double> z = parse("z", chart).eval_jet<double>(p, 2);
    CHECK(z.value() == 2.0);
    CHECK(z.coeff({0, 0, 1}) == 1.0);
    CHECK(z.coeff({1, 0, 0}) == 0.0);

    Jet<double> mz = parse("-z", chart).eval_jet<double>(p, 2);
    CHECK(mz.value() == -2.0);
    CHECK(mz.coeff({0, 0, 1}) == -1.0);

    std::vector<double> q{0, 0, 0.3};
    Jet<double> e = parse("exp(2*z)", chart).eval_jet<double>(q, 1);
    fdiff::Fn f = [](const std::vector<double>& w) { return std::exp(2 * w[2]); };
    CHECK_THAT(e.coeff({0, 0, 1}),
               Catch::Matchers::WithinRel(fdiff::partial(f, q, 2, 1e-4), 1e-6));
    CHECK_THAT(e.coeff({0, 0, 1}), Catch::Matchers::WithinRel(2 * std::exp(0.6), 1e-12));
}

TEST_CASE("decimal literals evaluate exactly in rational mode") {
    Chart chart = xyz_chart();
    std::vector<Rational> p{Rational(0), Rational(0), Rational(0)};
    CHECK(parse("0.5", chart).eval_value<Rational>(p) == Rational(1, 2));
    CHECK(parse("1.25e2", chart).eval_value<Rational>(p) == Rational(125));
    CHECK(parse("3e-2", chart).eval_value<Rational>(p) == Rational(3, 100));
}

TEST_CASE("domain constraints parse and evaluate") {
    Chart chart = xyz_chart();
    chart.constraints.push_back(parse_constraint("z > 0", chart));
    CHECK(point_in_domain<double>(chart, {0, 0, 1}));
    CHECK_FALSE(point_in_domain<double>(chart, {0, 0, 0}));   // strict
    CHECK_FALSE(point_in_domain<double>(chart, {0, 0, -1}));
    chart.constraints.push_back(parse_constraint("z < 2", chart));
    CHECK(point_in_domain<double>(chart, {0, 0, 1}));
    CHECK_FALSE(point_in_domain<double>(chart, {0, 0, 3}));
}
