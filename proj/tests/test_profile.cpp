#include <catch_amalgamated.hpp>

#include <functional>

#include "test_util.hpp"

using namespace gfun;

namespace {

GSeries const_series(const GaussianRational& c, std::size_t order) {
    GSeries s(order);
    s.coeffs[0] = c;
    return s;
}

// geometric samples of a closed-form function approaching zeta = 1 from 0
std::vector<RaySample> closed_form_samples(const std::function<ComplexBall(double)>& f,
                                           int first = 2, int last = 14) {
    std::vector<RaySample> out;
    for (int k = first; k <= last; ++k) {
        GaussianRational z(Rational((1L << k) - 1, 1L << k)); // 1 - 2^-k
        out.push_back({z, f(std::ldexp(1.0, -k))});
    }
    return out;
}

} // namespace

TEST_CASE("leading term of a single constant") {
    LogMonomialSum sum;
    sum.terms.push_back({0, Rational(0), const_series(GaussianRational(1), 4)});
    auto lt = leading_term(sum);
    CHECK_FALSE(lt.zero);
    CHECK(lt.c == GaussianRational(1));
    CHECK(lt.sigma == 0);
    CHECK(lt.tau == 0);
}

TEST_CASE("smaller exponent wins over the log power") {
    LogMonomialSum sum;
    GSeries f1(4); // z + ...
    f1.coeffs[1] = GaussianRational(1);
    sum.terms.push_back({1, Rational(0), f1});
    GSeries f2 = const_series(GaussianRational(2), 4);
    sum.terms.push_back({0, Rational(1, 2), f2});
    auto lt = leading_term(sum);
    CHECK(lt.c == GaussianRational(2));
    CHECK(lt.sigma == 0);
    CHECK(lt.tau == Rational(1, 2));
}

TEST_CASE("constant-term cancellation falls through to the next exponent") {
    LogMonomialSum sum;
    GSeries f1(4);
    f1.coeffs[0] = GaussianRational(1);
    f1.coeffs[1] = GaussianRational(-1);
    GSeries f2(4);
    f2.coeffs[0] = GaussianRational(-1);
    f2.coeffs[1] = GaussianRational(2);
    sum.terms.push_back({0, Rational(0), f1});
    sum.terms.push_back({0, Rational(0), f2});
    auto lt = leading_term(sum);
    CHECK(lt.c == GaussianRational(1));
    CHECK(lt.sigma == 0);
    CHECK(lt.tau == 1);
}

TEST_CASE("total cancellation is inconclusive, identically zero is zero") {
    LogMonomialSum cancel;
    cancel.terms.push_back({0, Rational(0), const_series(GaussianRational(1), 3)});
    cancel.terms.push_back({0, Rational(0), const_series(GaussianRational(-1), 3)});
    CHECK_THROWS_AS(leading_term(cancel), Error);

    LogMonomialSum zeros;
    zeros.terms.push_back({0, Rational(0), GSeries(3)});
    zeros.terms.push_back({1, Rational(1, 3), GSeries(3)});
    CHECK(leading_term(zeros).zero);

    LogMonomialSum empty;
    CHECK(leading_term(empty).zero);
}

TEST_CASE("sigma selection takes the largest log power at the minimal exponent") {
    LogMonomialSum sum;
    sum.terms.push_back({0, Rational(0), const_series(GaussianRational(3), 4)});
    sum.terms.push_back({2, Rational(0), const_series(GaussianRational(5), 4)});
    auto lt = leading_term(sum);
    CHECK(lt.sigma == 2);
    CHECK(lt.c == GaussianRational(5));
}

TEST_CASE("profile of (1-z)^(-1/2)") {
    PrecisionGuard guard(128);
    auto samples = closed_form_samples([](double delta) {
        return ball_from_double(1.0 / std::sqrt(delta));
    });
    auto fit = singular_profile(samples, GaussianRational(1));
    REQUIRE(fit.snapped);
    CHECK(fit.tau == Rational(-1, 2));
    CHECK(fit.sigma == 0);
    CHECK(std::fabs(static_cast<double>(fit.c.re) - 1.0) < 1e-6);
}

TEST_CASE("profile of -log(1-z)") {
    PrecisionGuard guard(128);
    auto samples = closed_form_samples([](double delta) {
        return ball_from_double(-std::log(delta));
    });
    auto fit = singular_profile(samples, GaussianRational(1));
    REQUIRE(fit.snapped);
    CHECK(fit.tau == 0);
    CHECK(fit.sigma == 1);
    CHECK(std::fabs(static_cast<double>(fit.c.re) + 1.0) < 1e-6);
}

TEST_CASE("profile of Li_2 toward 1: the finite-limit case") {
    PrecisionGuard guard(128);
    // partial-sum oracle for pi^2/6
    double zeta2 = 0.0;
    const long M = 1000000;
    for (long n = M; n >= 1; --n) zeta2 += 1.0 / (static_cast<double>(n) * n);
    zeta2 += 1.0 / M; // tail correction: sum_{n>M} 1/n^2 = 1/M + O(1/M^2)

    auto li2 = [](double delta) {
        double z = 1.0 - delta;
        double acc = 0.0;
        double zn = 1.0;
        long N = static_cast<long>(64.0 / delta) + 64;
        for (long n = 1; n <= N; ++n) {
            zn *= z;
            acc += zn / (static_cast<double>(n) * n);
        }
        return ball_from_double(acc);
    };
    auto samples = closed_form_samples(li2, 2, 12);
    auto fit = singular_profile(samples, GaussianRational(1));
    REQUIRE(fit.snapped);
    CHECK(fit.tau == 0);
    CHECK(fit.sigma == 0);
    CHECK(std::fabs(static_cast<double>(fit.c.re) - zeta2) < 2e-3);
}

TEST_CASE("profile via certified continuation of the sqrt ODE") {
    PrecisionGuard guard(192);
    auto ode = parse_ode("2*(1-X)*y' - y = 0");
    std::vector<ComplexBall> init{ball_from_double(1.0)};
    auto samples = sample_toward_singularity(ode, init, Path{{GaussianRational(0)}, ""},
                                             GaussianRational(1), 12, 96);
    auto fit = singular_profile(samples, GaussianRational(1));
    REQUIRE(fit.snapped);
    CHECK(fit.tau == Rational(-1, 2));
    CHECK(fit.sigma == 0);
    CHECK(std::fabs(static_cast<double>(fit.c.re) - 1.0) < 1e-4);
}

TEST_CASE("diverging residuals are reported") {
    // f = exp(1/delta) has no log-monomial profile
    auto samples = closed_form_samples([](double delta) {
        return ball_from_double(std::exp(std::min(1.0 / delta, 700.0)));
    });
    CHECK_THROWS_AS(singular_profile(samples, GaussianRational(1)), Error);
}

TEST_CASE("too few samples are rejected") {
    auto samples = closed_form_samples([](double delta) { return ball_from_double(delta); }, 2, 6);
    CHECK_THROWS_AS(singular_profile(samples, GaussianRational(1)), Error);
}
