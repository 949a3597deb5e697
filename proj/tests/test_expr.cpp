#include "calib/expr.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

using namespace calib;

TEST_CASE("parser builds the expected tree shape") {
    Expr e = parse("u*v + sin(u)");
    const ExprNode& n = e.node();
    REQUIRE(n.kind == ExprKind::add);
    CHECK(n.args[0]->kind == ExprKind::mul);
    CHECK(n.args[0]->args[0]->kind == ExprKind::var_u);
    CHECK(n.args[0]->args[1]->kind == ExprKind::var_v);
    CHECK(n.args[1]->kind == ExprKind::call);
    CHECK(n.args[1]->func == Func::sin);
}

TEST_CASE("catalog-style expressions parse") {
    CHECK_NOTHROW(parse("exp(u/2) + 0.75*exp(-u/2)"));
    CHECK_NOTHROW(parse("log(sqrt(u^2+v^2) + sqrt(u^2+v^2 - 2))"));
}

TEST_CASE("syntax errors carry byte offsets") {
    try {
        parse("u + * v");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.offset == 4);
    }
    CHECK_THROWS_AS(parse("w + 1"), ParseError);        // unknown identifier
    CHECK_THROWS_AS(parse("sin(u, v)"), ParseError);    // arity
    CHECK_THROWS_AS(parse("atan2(u)"), ParseError);     // arity
    CHECK_THROWS_AS(parse("(u"), ParseError);
}

TEST_CASE("power binds tighter than unary minus and is right-associative") {
    // -u^2 at u=3 must be -9, not 9
    CHECK(parse("-u^2").eval(3, 0) == doctest::Approx(-9));
    CHECK(parse("2^3^2").eval(0, 0) == doctest::Approx(512));
    CHECK(parse("u^-2").eval(2, 0) == doctest::Approx(0.25));
    // integer exponents accept negative bases
    CHECK(parse("(-2)^3").eval(0, 0) == doctest::Approx(-8));
}

TEST_CASE("jet values: product rule on u*v") {
    Jet2 j = parse("u*v").eval_jet2(2, 3);
    CHECK(j.v == doctest::Approx(6));
    CHECK(j.du == doctest::Approx(3));
    CHECK(j.dv == doctest::Approx(2));
    CHECK(j.huu == doctest::Approx(0));
    CHECK(j.huv == doctest::Approx(1));
    CHECK(j.hvv == doctest::Approx(0));
}

TEST_CASE("jet values: exp(u)*cos(v) at the origin") {
    Jet2 j = parse("exp(u)*cos(v)").eval_jet2(0, 0);
    CHECK(j.v == doctest::Approx(1));
    CHECK(j.du == doctest::Approx(1));
    CHECK(j.dv == doctest::Approx(0));
    CHECK(j.huu == doctest::Approx(1));
    CHECK(j.huv == doctest::Approx(0));
    CHECK(j.hvv == doctest::Approx(-1));
}

namespace {

const std::vector<std::pair<const char*, std::array<double, 4>>>& fd_cases() {
    // expression, safe box (u0, u1, v0, v1)
    static const std::vector<std::pair<const char*, std::array<double, 4>>> cases = {
        {"u*v + sin(u)*cos(v)", {-1, 1, -1, 1}},
        {"exp(u/2) + 0.75*exp(-u/2)", {-1, 1, -1, 1}},
        {"log(sqrt(u^2+v^2) + sqrt(u^2+v^2 - 2))", {1.8, 2.5, 1.8, 2.5}},
        {"tanh(u)*sinh(v) + cosh(u*v)", {-1, 1, -1, 1}},
        {"atan2(v, u)", {0.5, 2, 0.5, 2}},
        {"u^3 - 3*u*v^2", {-1, 1, -1, 1}},
        {"(u^2 + v^2)^1.5", {0.5, 2, 0.5, 2}},
        {"tan(u/4) + v/(1 + u^2)", {-1, 1, -1, 1}},
        {"sqrt(1 + 1/(u^2+v^2))", {0.7, 2, 0.7, 2}},
        {"sin(u)^2*cos(v)^3", {-1, 1, -1, 1}},
    };
    return cases;
}

}  // namespace

TEST_CASE("jets agree with central finite differences") {
    std::mt19937_64 rng(41);
    const double h = 1e-4;
    int checked = 0;
    for (const auto& [text, box] : fd_cases()) {
        Expr e = parse(text);
        std::uniform_real_distribution<double> du(box[0], box[1]);
        std::uniform_real_distribution<double> dv(box[2], box[3]);
        for (int it = 0; it < 10; ++it) {
            double u = du(rng), v = dv(rng);
            Jet2 j = e.eval_jet2(u, v);
            auto f = [&](double uu, double vv) { return e.eval(uu, vv); };
            double fdu = (f(u + h, v) - f(u - h, v)) / (2 * h);
            double fdv = (f(u, v + h) - f(u, v - h)) / (2 * h);
            double fuu = (f(u + h, v) - 2 * f(u, v) + f(u - h, v)) / (h * h);
            double fvv = (f(u, v + h) - 2 * f(u, v) + f(u, v - h)) / (h * h);
            double fuv =
                (f(u + h, v + h) - f(u + h, v - h) - f(u - h, v + h) + f(u - h, v - h)) /
                (4 * h * h);
            double scale = std::max(1.0, std::abs(j.v));
            CHECK(std::abs(j.du - fdu) < 1e-6 * scale);
            CHECK(std::abs(j.dv - fdv) < 1e-6 * scale);
            CHECK(std::abs(j.huu - fuu) < 1e-6 * scale);
            CHECK(std::abs(j.hvv - fvv) < 1e-6 * scale);
            CHECK(std::abs(j.huv - fuv) < 1e-6 * scale);
            ++checked;
        }
    }
    CHECK(checked == 100);
}

TEST_CASE("print then parse is the identity on trees") {
    for (const auto& [text, box] : fd_cases()) {
        (void)box;
        Expr e = parse(text);
        Expr round = parse(print(e));
        CHECK(structurally_equal(e, round));
    }
    // operator nesting corner cases
    for (const char* text : {"-u^2", "u^-2", "u - (v - 1)", "u/(v*u)", "-(u+v)", "2^3^2"}) {
        Expr e = parse(text);
        CHECK(structurally_equal(e, parse(print(e))));
    }
}

namespace {

ExprPtr random_tree(std::mt19937_64& rng, int depth) {
    auto node = [](ExprKind kind, std::vector<ExprPtr> args) {
        auto n = std::make_shared<ExprNode>();
        n->kind = kind;
        n->args = std::move(args);
        return ExprPtr(n);
    };
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 9);
    switch (pick(rng)) {
        case 0: {
            auto n = std::make_shared<ExprNode>();
            n->kind = ExprKind::number;
            // the parser only ever produces non-negative literals
            n->number = std::uniform_real_distribution<double>(0, 3)(rng);
            return n;
        }
        case 1: return node(ExprKind::var_u, {});
        case 2: return node(ExprKind::var_v, {});
        case 3: return node(ExprKind::add, {random_tree(rng, depth - 1), random_tree(rng, depth - 1)});
        case 4: return node(ExprKind::sub, {random_tree(rng, depth - 1), random_tree(rng, depth - 1)});
        case 5: return node(ExprKind::mul, {random_tree(rng, depth - 1), random_tree(rng, depth - 1)});
        case 6: return node(ExprKind::divide, {random_tree(rng, depth - 1), random_tree(rng, depth - 1)});
        case 7: return node(ExprKind::neg, {random_tree(rng, depth - 1)});
        case 8: return node(ExprKind::pow, {random_tree(rng, depth - 1), random_tree(rng, depth - 1)});
        default: {
            auto n = std::make_shared<ExprNode>();
            n->kind = ExprKind::call;
            n->func = static_cast<Func>(std::uniform_int_distribution<int>(0, 8)(rng));
            n->args = {random_tree(rng, depth - 1)};
            if (n->func == Func::atan2) n->args.push_back(random_tree(rng, depth - 1));
            return n;
        }
    }
}

}  // namespace

TEST_CASE("print then parse round-trips random trees") {
    std::mt19937_64 rng(47);
    for (int it = 0; it < 300; ++it) {
        Expr e(random_tree(rng, 5));
        CHECK(structurally_equal(e, parse(print(e))));
    }
}

TEST_CASE("non-constant exponents evaluate through exp(b log a)") {
    Jet2 j = parse("u^v").eval_jet2(2, 3);
    CHECK(j.v == doctest::Approx(8));
    CHECK(j.du == doctest::Approx(12));                       // v u^{v-1}
    CHECK(j.dv == doctest::Approx(8 * std::log(2)));          // u^v log u
    CHECK(j.huu == doctest::Approx(12));                      // v(v-1) u^{v-2}
    CHECK_THROWS_AS(parse("u^v").eval_jet2(-2, 3), EvalDomainError);
}

TEST_CASE("jet arithmetic satisfies linearity and the Leibniz rule") {
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> dist(-1, 1);
    Expr a = parse("sin(u)*cosh(v) + u^2");
    Expr b = parse("exp(u/3)*cos(v) - v");
    Expr sum = parse("(" + print(a) + ") + (" + print(b) + ")");
    Expr prod = parse("(" + print(a) + ")*(" + print(b) + ")");
    for (int it = 0; it < 50; ++it) {
        double u = dist(rng), v = dist(rng);
        Jet2 ja = a.eval_jet2(u, v), jb = b.eval_jet2(u, v);
        Jet2 js = sum.eval_jet2(u, v), jp = prod.eval_jet2(u, v);
        Jet2 s = ja + jb, p = ja * jb;
        for (auto [lhs, rhs] : {std::pair{js.v, s.v}, {js.du, s.du}, {js.hvv, s.hvv},
                                {jp.v, p.v}, {jp.du, p.du}, {jp.huv, p.huv},
                                {jp.huu, p.huu}, {jp.hvv, p.hvv}})
            CHECK(std::abs(lhs - rhs) < 1e-12 * std::max(1.0, std::abs(rhs)));
    }
}

TEST_CASE("domain errors name the offending subexpression") {
    Expr e = parse("u + log(v - 2)");
    try {
        e.eval_jet2(0, 0);
        FAIL("expected EvalDomainError");
    } catch (const EvalDomainError& err) {
        CHECK(err.subexpr == "log(v - 2)");
    }
    CHECK_THROWS_AS(parse("sqrt(-1 - u^2)").eval_jet2(0.5, 0), EvalDomainError);
    CHECK_THROWS_AS(parse("1/(u - u)").eval_jet2(1, 0), EvalDomainError);
    CHECK_THROWS_AS(parse("u^0.5").eval_jet2(-2, 0), EvalDomainError);
}
