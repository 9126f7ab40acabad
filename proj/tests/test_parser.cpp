#include <catch_amalgamated.hpp>

#include "test_util.hpp"

using namespace gfun;

TEST_CASE("polynomial text forms") {
    auto p = parse_poly("X^2 - 2");
    CHECK(p.degree() == 2);
    CHECK(p.coeff(0) == GaussianRational(-2));
    CHECK(p.coeff(1) == GaussianRational(0));
    CHECK(p.coeff(2) == GaussianRational(1));

    auto q = parse_poly("X^5 + X - 1/10");
    CHECK(q.degree() == 5);
    CHECK(q.coeff(0) == GaussianRational(Rational(-1, 10)));
    CHECK(q.coeff(1) == GaussianRational(1));

    auto r = parse_poly("(3/2 + i)*X + 7");
    CHECK(r.coeff(0) == GaussianRational(7));
    CHECK(r.coeff(1) == GaussianRational(Rational(3, 2), Rational(1)));

    auto s = parse_poly("3/2*X^2 - i*X + 7/5");
    CHECK(s.coeff(2) == GaussianRational(Rational(3, 2)));
    CHECK(s.coeff(1) == -GaussianRational::i_unit());
    CHECK(s.coeff(0) == GaussianRational(Rational(7, 5)));
}

TEST_CASE("whitespace is irrelevant") {
    CHECK(parse_poly("X^2-2") == parse_poly("  X ^ 2   -   2 "));
}

TEST_CASE("precedence: pow binds tighter than unary minus") {
    auto p = parse_poly("-X^2");
    CHECK(p.coeff(2) == GaussianRational(-1));
    auto q = parse_poly("2*X^3 + -3*X");
    CHECK(q.coeff(3) == GaussianRational(2));
    CHECK(q.coeff(1) == GaussianRational(-3));
}

TEST_CASE("syntax errors carry spans") {
    try {
        parse_poly("X^2 $ 3");
        FAIL("expected SyntaxError");
    } catch (const SyntaxError& e) {
        CHECK(e.offset() == 4);
        CHECK(e.length() == 1);
    }
    try {
        parse_poly("0.5*X");
        FAIL("expected SyntaxError");
    } catch (const SyntaxError& e) {
        CHECK(e.offset() == 0);
    }
}

TEST_CASE("non-polynomial inputs are flagged") {
    CHECK_THROWS_AS(parse_poly("1/X"), Error);
    CHECK_THROWS_AS(parse_poly("X^-2"), Error);
    CHECK_THROWS_AS(parse_poly("y + X"), SyntaxError);
}

TEST_CASE("ODE text forms") {
    auto ode = parse_ode("(1+X^2)*y'' + 2*X*y' = 0");
    REQUIRE(ode.order() == 2);
    CHECK(ode.coeffs[0].is_zero());
    // a_1 = 2X/(1+X^2)
    CHECK(ode.coeffs[1].num == parse_poly("2*X"));
    CHECK(ode.coeffs[1].den == parse_poly("1+X^2"));
    CHECK(ode.singularities.size() == 2);

    auto triv = parse_ode("y' = 0");
    CHECK(triv.order() == 1);
    CHECK(triv.coeffs[0].is_zero());

    // monic normalization: a_0 = -1/(2(1-X)) = (1/2)/(X-1)
    auto scaled = parse_ode("2*(1-X)*y' - y = 0");
    CHECK(scaled.coeffs[0].num == QiPolynomial::constant(GaussianRational(Rational(1, 2))));
    CHECK(scaled.coeffs[0].den == parse_poly("X - 1"));
}

TEST_CASE("degenerate ODE inputs") {
    CHECK_THROWS_AS(parse_ode("X^2 + 1 = 0"), Error);       // no y
    CHECK_THROWS_AS(parse_ode("y' + 1 = 0"), Error);        // inhomogeneous
    CHECK_THROWS_AS(parse_ode("y*y' = 0"), SyntaxError);    // nonlinear
}

TEST_CASE("series JSON round trip, randomized") {
    gfun_test::Rng rng(61);
    for (int trial = 0; trial < 100; ++trial) {
        GSeries s = gfun_test::random_series(rng, static_cast<std::size_t>(rng.range(0, 24)));
        if (rng.next() % 2) s.radius_hint = 1.0 + static_cast<double>(rng.range(0, 9));
        GSeries back = series_from_json(to_json(s));
        CHECK(back.coeffs == s.coeffs);
        if (s.radius_hint)
            CHECK(*back.radius_hint == *s.radius_hint);
        else
            CHECK_FALSE(back.radius_hint.has_value());
    }
}

TEST_CASE("polynomial and ODE JSON round trips") {
    gfun_test::Rng rng(67);
    for (int trial = 0; trial < 20; ++trial) {
        QiPolynomial p = gfun_test::random_poly(rng, rng.range(0, 6));
        CHECK(poly_from_json(to_json(p)) == p);
    }
    auto ode = parse_ode("(1+X^2)*y'' + 2*X*y' = 0");
    auto back = ode_from_json(to_json(ode));
    REQUIRE(back.order() == ode.order());
    for (std::size_t j = 0; j < ode.order(); ++j) CHECK(back.coeffs[j] == ode.coeffs[j]);
}

TEST_CASE("path JSON round trip") {
    Path p{{GaussianRational(0), GaussianRational(Rational(1, 2), Rational(-1, 3))}, "upper"};
    Path back = path_from_json(to_json(p));
    CHECK(back.waypoints == p.waypoints);
    CHECK(back.branch_note == "upper");
}

TEST_CASE("schema violations carry field paths") {
    try {
        series_from_json(json::parse(R"({"coeffs": [{"re": ["1"], "im": ["0","1"]}]})"));
        FAIL("expected SchemaError");
    } catch (const Error& e) {
        CHECK(e.code() == "SchemaError");
        CHECK(std::string(e.what()).find("coeffs[0]") != std::string::npos);
    }
    CHECK_THROWS_AS(series_from_json(json::parse(R"({"noise": 1})")), Error);
    CHECK_THROWS_AS(
        series_from_json(json::parse(
            R"({"order": 5, "coeffs": [{"re": ["0","1"], "im": ["0","1"]}]})")),
        Error);
}

TEST_CASE("CSV export shape") {
    GSeries s(2);
    s.coeffs[0] = GaussianRational(Rational(1, 2), Rational(-2, 3));
    std::string csv = series_to_csv(s);
    CHECK(csv.find("index,re_num,re_den,im_num,im_den\n") == 0);
    CHECK(csv.find("0,1,2,-2,3\n") != std::string::npos);
    CHECK(csv.find("2,0,1,0,1\n") != std::string::npos);
}

TEST_CASE("zero denominators in JSON are rejected") {
    CHECK_THROWS_AS(
        series_from_json(json::parse(R"({"coeffs": [{"re": ["1","0"], "im": ["0","1"]}]})")),
        Error);
}
