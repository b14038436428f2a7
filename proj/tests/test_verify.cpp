#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lieinv/verify.hpp"

using namespace lieinv;

namespace {

StructureConstants g6_65(const Rational& lambda, const Rational& gamma) {
    StructureConstants sc(6);
    sc.set_component(3, 5, 1, Rational(1));
    sc.set_component(4, 5, 2, Rational(1));
    sc.set_component(1, 6, 1, lambda);
    sc.set_component(1, 6, 2, Rational(1));
    sc.set_component(2, 6, 2, lambda);
    sc.set_component(3, 6, 3, lambda - gamma);
    sc.set_component(3, 6, 4, Rational(1));
    sc.set_component(4, 6, 4, lambda - gamma);
    sc.set_component(5, 6, 5, gamma);
    return sc;
}

const std::set<std::string> kNoParams;

}  // namespace

TEST_CASE("apply_field: spec examples") {
    // g_{6,65}: X^_5 = x1 d/dx3 + x2 d/dx4 - gamma x5 d/dx6 applied to x3 gives x1
    auto fields = vector_fields(g6_65(Rational(1), Rational(3)));
    Expr x3 = Expr::var(3);
    Expr applied = apply_field(fields[4], x3);
    Assignment a{{{2, 0}, {5, 0}, {-3, 0}, {7, 0}, {1, 0}, {4, 0}}, {}};
    CHECK(evaluate(applied, a) == evaluate(Expr::var(1), a));

    // zero field applied to anything is 0
    auto zero_fields = vector_fields(StructureConstants(3));
    Expr anything = parse_expr("x1*exp(x2/x3)", 3, kNoParams);
    Expr z = apply_field(zero_fields[0], anything);
    Assignment b{{{1, 0}, {2, 0}, {3, 0}}, {}};
    CHECK(std::abs(evaluate(z, b)) == 0.0);

    // Heisenberg: X^_2 = -x1 d/dx3 applied to x3 gives -x1
    StructureConstants h3(3);
    h3.set_component(2, 3, 1, Rational(1));
    auto hf = vector_fields(h3);
    Expr applied_h = apply_field(hf[1], Expr::var(3));
    CHECK(evaluate(applied_h, b) == -evaluate(Expr::var(1), b));

    CHECK_THROWS_AS(apply_field(hf[1], Expr::var(5)), std::invalid_argument);
}

TEST_CASE("check_invariant: the g6_65 pair passes, x1 fails") {
    StructureConstants sc = g6_65(Rational(1), Rational(3));
    std::map<std::string, std::complex<double>> params{{"lambda", {1, 0}}, {"gamma", {3, 0}}};
    std::set<std::string> names{"lambda", "gamma"};

    Expr i1 = parse_expr("x2*exp(-lambda*x1/x2)", 6, names);
    auto r1 = check_invariant(sc, i1, params, 20, 1e-8, 7);
    CHECK(r1.pass);
    CHECK(r1.points_used == 20);

    Expr i2 = parse_expr("(x1*x4-x2*x3)*exp((gamma-2*lambda)*x1/x2)", 6, names);
    CHECK(check_invariant(sc, i2, params, 20, 1e-8, 7).pass);

    // constants are invariants of any algebra
    CHECK(check_invariant(sc, Expr::integer(1), {}, 20, 1e-8, 7).pass);

    // x1 is not: X^_6 x1 = lambda x1 + x2
    auto bad = check_invariant(sc, Expr::var(1), {}, 20, 1e-8, 7);
    CHECK(!bad.pass);
    CHECK(bad.residuals[5] > 1e-3);
}

TEST_CASE("center soundness") {
    // x2 is central in g_{6,59}-like data: [X4,X6]=X2 outputs X2 but [X2,-] = 0
    StructureConstants sc(6);
    sc.set_component(3, 5, 1, Rational(1));
    sc.set_component(4, 5, 2, Rational(1));
    sc.set_component(1, 6, 1, Rational(1));
    sc.set_component(3, 6, 3, Rational(1));
    sc.set_component(4, 6, 2, Rational(1));
    sc.set_component(5, 6, 4, Rational(2));
    REQUIRE(validate_jacobi(sc).empty());
    CHECK(check_invariant(sc, Expr::var(2), {}, 20, 1e-8, 3).pass);
}

TEST_CASE("check_independence: spec examples") {
    auto r2 = check_independence({Expr::var(1), Expr::var(2)}, {}, 6, 2, 20, 1e-8, 5);
    CHECK(r2.modal_rank == 2);
    CHECK(r2.pass);

    Expr x1sq = parse_expr("x1^2", 6, kNoParams);
    auto r1 = check_independence({Expr::var(1), x1sq}, {}, 6, 2, 20, 1e-8, 5);
    CHECK(r1.modal_rank == 1);
    CHECK(!r1.pass);

    // g_{6,54} fundamental set (repaired exponent), rank 2
    std::set<std::string> names{"lambda", "gamma"};
    std::map<std::string, std::complex<double>> params{{"lambda", {0.5, 0}}, {"gamma", {2, 0}}};
    Expr i1 = parse_expr("x2*x1^(-lambda)", 6, names);
    Expr i2 = parse_expr("(x1*x4-x2*x3)*x1^(gamma-lambda-1)", 6, names);
    auto r = check_independence({i1, i2}, params, 6, 2, 20, 1e-8, 5);
    CHECK(r.modal_rank == 2);

    // empty set has rank 0
    CHECK(check_independence({}, {}, 6, 0, 20, 1e-8, 5).pass);
}

TEST_CASE("verify_fundamental_set combines the three criteria") {
    StructureConstants sc = g6_65(Rational(1), Rational(3));
    std::map<std::string, std::complex<double>> params{{"lambda", {1, 0}}, {"gamma", {3, 0}}};
    std::set<std::string> names{"lambda", "gamma"};
    VerifyConfig config;

    std::vector<Expr> good{parse_expr("x2*exp(-lambda*x1/x2)", 6, names),
                           parse_expr("(x1*x4-x2*x3)*exp((gamma-2*lambda)*x1/x2)", 6, names)};
    auto rep = verify_fundamental_set(sc, good, params, config);
    CHECK(rep.invariant_count == 2);
    CHECK(rep.pass);

    // wrong cardinality: a single invariant cannot be fundamental when N = 2
    auto rep_short = verify_fundamental_set(sc, {good[0]}, params, config);
    CHECK(!rep_short.pass);

    // non-invariant member fails
    auto rep_bad = verify_fundamental_set(sc, {good[0], Expr::var(1)}, params, config);
    CHECK(!rep_bad.pass);

    // N = 0 algebras pass with the empty set
    StructureConstants g6_99(6);
    g6_99.set_component(3, 4, 1, Rational(1));
    g6_99.set_component(2, 5, 1, Rational(1));
    g6_99.set_component(3, 5, 2, Rational(1));
    g6_99.set_component(4, 5, 3, Rational(1));
    g6_99.set_component(1, 6, 1, Rational(5));
    g6_99.set_component(2, 6, 2, Rational(4));
    g6_99.set_component(3, 6, 3, Rational(3));
    g6_99.set_component(4, 6, 4, Rational(2));
    g6_99.set_component(5, 6, 5, Rational(1));
    CHECK(verify_fundamental_set(g6_99, {}, {}, config).pass);

    // g_{6,84}: {x1, 2 x1 x6 + x3^2 - 2 x2 x4} passes with N = 2
    StructureConstants g84(6);
    g84.set_component(2, 4, 1, Rational(1));
    g84.set_component(3, 5, 1, Rational(1));
    g84.set_component(2, 6, 2, Rational(1));
    g84.set_component(4, 6, 4, Rational(-1));
    g84.set_component(5, 6, 3, Rational(1));
    std::vector<Expr> set84{parse_expr("x1", 6, kNoParams),
                            parse_expr("2*x1*x6+x3^2-2*x2*x4", 6, kNoParams)};
    auto rep84 = verify_fundamental_set(g84, set84, {}, config);
    CHECK(rep84.invariant_count == 2);
    CHECK(rep84.pass);
}

TEST_CASE("reports are reproducible for a fixed seed") {
    StructureConstants sc = g6_65(Rational(1), Rational(3));
    std::map<std::string, std::complex<double>> params{{"lambda", {1, 0}}, {"gamma", {3, 0}}};
    std::set<std::string> names{"lambda", "gamma"};
    Expr i1 = parse_expr("x2*exp(-lambda*x1/x2)", 6, names);
    auto a = check_invariant(sc, i1, params, 10, 1e-8, 123);
    auto b = check_invariant(sc, i1, params, 10, 1e-8, 123);
    CHECK(a.residuals == b.residuals);
    CHECK(a.points_used == b.points_used);
}
