#include <catch_amalgamated.hpp>

#include "test_util.hpp"

using namespace gfun;

namespace {

GSeries padded_monomial(std::size_t n, std::size_t order, const GaussianRational& a) {
    GSeries s(order);
    s.coeffs[n] = a;
    return s;
}

real_t oracle_log(double x) {
    return log(real_t(x));
}

} // namespace

TEST_CASE("series_log1p reproduces log(1+z)") {
    auto lg = series_log1p(padded_monomial(1, 16, GaussianRational(1)));
    for (std::size_t n = 1; n <= 16; ++n)
        CHECK(lg[n] == GaussianRational(Rational(n % 2 == 1 ? 1 : -1, static_cast<long>(n))));

    auto lgm = series_log1p(padded_monomial(1, 16, GaussianRational(-1)));
    for (std::size_t n = 1; n <= 16; ++n)
        CHECK(lgm[n] == GaussianRational(Rational(-1, static_cast<long>(n))));
}

TEST_CASE("series_log1p of 2z + z^2 is twice log(1+z)") {
    GSeries psi(20);
    psi.coeffs[1] = GaussianRational(2);
    psi.coeffs[2] = GaussianRational(1);
    auto lg = series_log1p(psi);
    auto base = series_log1p(padded_monomial(1, 20, GaussianRational(1)));
    for (std::size_t n = 0; n < 20; ++n) // the top padded order loses one slot to divide
        CHECK(lg[n] == GaussianRational(2) * base[n]);
}

TEST_CASE("series_log1p requires zero constant term") {
    CHECK_THROWS_AS(series_log1p(GSeries::one(8)), Error);
}

TEST_CASE("log of Gaussian rationals near 1") {
    PrecisionGuard guard(256);

    auto at1 = log_gaussian_rational(GaussianRational(1), 10.0, 32);
    CHECK(at1.value.abs_upper() < 1e-60);

    auto ati = log_gaussian_rational(GaussianRational(Rational(1), Rational(1, 10)), 9.0, 64);
    // oracle: (1/2) log(1.01) and arctan(1/10)
    real_t half_log = oracle_log(1.01) / 2;
    real_t at;
    {
        real_t tenth = real_t(1) / 10;
        mpfr_atan(at.backend().data(), tenth.backend().data(), MPFR_RNDN);
    }
    CHECK(std::fabs(static_cast<double>(ati.value.re - half_log)) < 1e-25);
    CHECK(std::fabs(static_cast<double>(ati.value.im - at)) < 1e-25);
    CHECK(static_cast<double>(ati.value.re) == Catch::Approx(0.00497517).epsilon(1e-5));
    CHECK(static_cast<double>(ati.value.im) == Catch::Approx(0.09966865).epsilon(1e-5));
    REQUIRE(ati.series.size() == 2);
    for (const auto& s : ati.series) CHECK(*s.radius_hint > 9.0);

    auto near1 = log_gaussian_rational(GaussianRational(Rational(99, 100)), 50.0, 80);
    CHECK(static_cast<double>(near1.value.re) == Catch::Approx(-0.01005034).epsilon(1e-6));
    CHECK(near1.value.im == 0);
}

TEST_CASE("inadmissible witnesses are rejected") {
    CHECK_THROWS_AS(log_gaussian_rational(GaussianRational(Rational(3, 2)), 10.0, 16), Error);
    CHECK_THROWS_AS(log_gaussian_rational(GaussianRational(Rational(-1)), 2.0, 16), Error);
}

TEST_CASE("log_algebraic: alpha = 1 gives zero") {
    QiPolynomial Q{GaussianRational(-1), GaussianRational(1)};
    auto lr = log_algebraic(Q, ComplexBall::from_exact(GaussianRational(1)), 10.0, 32);
    CHECK(lr.value.abs_upper() < 1e-40);
    CHECK(lr.m == 1);
}

TEST_CASE("log_algebraic: ln 2 to high precision") {
    PrecisionGuard guard(320);
    QiPolynomial Q{GaussianRational(-2), GaussianRational(1)};
    auto lr = log_algebraic(Q, ComplexBall::from_exact(GaussianRational(2)), 10.0, 48);
    real_t l2 = oracle_log(2.0);
    CHECK(std::fabs(static_cast<double>(lr.value.re - l2)) < 1e-20);
    CHECK(std::fabs(static_cast<double>(lr.value.im)) < 1e-20);
    CHECK(lr.value.rad < 1e-20);
    CHECK(lr.m >= 16); // 2^(1/m) must sit within 1/(4R) of 1

    // additivity: value = m * sum of component values at 1
    ComplexBall sum;
    for (const auto& comp : lr.components) {
        REQUIRE(comp.series.radius_hint.has_value());
        CHECK(*comp.series.radius_hint > 10.0);
        double ratio = std::isfinite(*comp.series.radius_hint)
                           ? 1.0 / *comp.series.radius_hint
                           : 0.5;
        sum += evaluate(comp.series, GaussianRational(1), ratio);
    }
    ComplexBall total = ComplexBall::from_exact(
        GaussianRational(Rational(static_cast<long>(lr.m)))) * sum;
    CHECK(gfun_test::balls_intersect(total, lr.value));

    // exp-consistency: exp(value) lands on alpha
    ComplexBall back = ball_exp(lr.value);
    CHECK(std::fabs(static_cast<double>(back.re) - 2.0) < 1e-20);

    // component radius estimates corroborate the claimed hints
    for (const auto& comp : lr.components) {
        if (comp.series.order() < 32) continue;
        double est = radius_estimate(comp.series);
        if (std::isfinite(est) && std::isfinite(*comp.series.radius_hint))
            CHECK(est > 0.9 * *comp.series.radius_hint);
    }
}

TEST_CASE("log_algebraic: sqrt(2) is half of ln 2") {
    PrecisionGuard guard(320);
    QiPolynomial Q2{GaussianRational(-2), GaussianRational(1)};
    auto l2 = log_algebraic(Q2, ComplexBall::from_exact(GaussianRational(2)), 10.0, 48);

    QiPolynomial Qs{GaussianRational(-2), GaussianRational(0), GaussianRational(1)};
    auto roots = complex_roots(Qs, 192);
    const ComplexBall* alpha = nullptr;
    for (const auto& r : roots)
        if (r.ball.re > 0) alpha = &r.ball;
    auto ls = log_algebraic(Qs, *alpha, 10.0, 48);

    ComplexBall half = l2.value * ComplexBall::from_exact(GaussianRational(Rational(1, 2)));
    CHECK(gfun_test::balls_intersect(ls.value, half.inflated(1e-30)));

    ComplexBall back = ball_exp(ls.value);
    CHECK(gfun_test::balls_intersect(back, alpha->inflated(1e-30)));
}

TEST_CASE("branch cut and zero balls are rejected") {
    QiPolynomial Q{GaussianRational(2), GaussianRational(1)}; // root -2 on the cut
    auto roots = complex_roots(Q, 96);
    CHECK_THROWS_AS(log_algebraic(Q, roots[0].ball, 4.0, 16), Error);
}

TEST_CASE("arctan series boundary evaluation converges toward pi") {
    PrecisionGuard guard(128);
    // 4 arctan(1) = pi; evaluate the arctan series at 1 - 2^-20 for growing orders
    real_t pi = detail::mp_pi();
    GaussianRational z(Rational(Integer((1L << 20) - 1), Integer(1L << 20)));
    double prev_err = 1e9;
    for (std::size_t N : {1u << 16, 1u << 18, 1u << 20}) {
        GSeries atan_series(N);
        for (std::size_t n = 1; n <= N; n += 2) {
            long sign = ((n - 1) / 2) % 2 == 0 ? 1 : -1;
            atan_series.coeffs[n] = GaussianRational(Rational(sign, static_cast<long>(n)));
        }
        ComplexBall v = evaluate_partial(atan_series, ComplexBall::from_exact(z));
        double errn = std::fabs(static_cast<double>(4 * v.re - pi));
        CHECK(errn < prev_err);
        prev_err = errn;
    }
    CHECK(prev_err < 1e-5);
}
