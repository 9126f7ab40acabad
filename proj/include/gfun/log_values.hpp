#ifndef GFUN_LOG_VALUES_HPP
#define GFUN_LOG_VALUES_HPP

#include <string>
#include <vector>

#include "gfun/alg_roots.hpp"
#include "gfun/series.hpp"

namespace gfun {

// Taylor series of log(1 + psi(z)) for psi with zero constant term, computed
// as the antiderivative of psi' / (1 + psi). Exact; the result order matches
// the input order.
inline GSeries series_log1p(const GSeries& psi) {
    if (!psi[0].is_zero())
        throw err::precondition("series_log1p: psi must have zero constant term");
    GSeries one_plus = psi;
    one_plus.coeffs[0] = GaussianRational(1);
    GSeries d = differentiate(psi);
    GSeries q = divide(d, one_plus);
    GSeries r = antiderivative(q);
    r.radius_hint.reset(); // callers set a hint only after certifying 1+psi != 0
    return r;
}

// The two Q-coefficient series behind log(u) = (1/2) log(a^2+b^2) + i arctan(b/a)
// for u = a + ib close to 1, each rescaled so that evaluation at z = 1 gives
// the respective summand, with radius of convergence > R.
struct LogParts {
    std::vector<GSeries> series; // [half-log part, i*arctan part]
    ComplexBall value;           // principal log(u)
};

inline LogParts log_gaussian_rational(const GaussianRational& u, double R, std::size_t N) {
    if (R < 1.0) throw err::precondition("log_gaussian_rational: R must be >= 1");
    const Rational& a = u.re;
    const Rational& b = u.im;
    if (a <= 0)
        throw err::inadmissible_witness("log_gaussian_rational: Re(u) must be positive");
    Rational w0 = a * a + b * b - 1;
    Rational t0 = b / a;
    Rational Rq(R); // double -> rational is exact
    if (!(abs(w0) * Rq < 1) || !(abs(t0) * Rq < 1))
        throw err::inadmissible_witness(
            "log_gaussian_rational: u violates |a^2+b^2-1| < 1/R or |b/a| < 1/R");

    // (1/2) log(1+w) = sum (-1)^(n-1) w^n / (2n)
    GSeries half_log(N);
    for (std::size_t n = 1; n <= N; ++n)
        half_log.coeffs[n] = GaussianRational(
            Rational((n % 2 == 1) ? 1 : -1, 2 * static_cast<long>(n)));
    half_log.radius_hint = 1.0;
    half_log.center_label = "w";

    // i * arctan(w) = sum i (-1)^n w^(2n+1) / (2n+1)
    GSeries iatan(N);
    for (std::size_t n = 1; n <= N; n += 2) {
        long sign = ((n - 1) / 2) % 2 == 0 ? 1 : -1;
        iatan.coeffs[n] = GaussianRational(Rational(0), Rational(sign, static_cast<long>(n)));
    }
    iatan.radius_hint = 1.0;
    iatan.center_label = "w";

    LogParts parts;
    parts.series.push_back(affine_compose(half_log, GaussianRational(0), GaussianRational(-w0)));
    parts.series.push_back(affine_compose(iatan, GaussianRational(0), GaussianRational(-t0)));
    ComplexBall v;
    for (const auto& s : parts.series) {
        double ratio = s.radius_hint && std::isfinite(*s.radius_hint)
                           ? 1.0 / *s.radius_hint
                           : 0.5;
        if (!(ratio > 0.0)) ratio = 0.5;
        v += evaluate(s, GaussianRational(1), ratio);
    }
    parts.value = v;
    return parts;
}

struct LogComponent {
    GSeries series;
    std::string branch_note;
};

// Realization of log(alpha): m times the sum of the component values at 1.
// Components are the paper's three series: log(1 + Psi_u), the half-log part
// of log(u), and the i*arctan part of log(u), all with radius > R.
struct LogRealization {
    std::vector<LogComponent> components;
    unsigned long m = 1; // root-shrink exponent: log(alpha) = m log(alpha^(1/m))
    GaussianRational u;
    ComplexBall value;
};

namespace detail {

// Upper bound for sum_n |psi_n| R^n plus a geometric tail; certifies
// |Psi_u(z)| < 1 on the closed disk of radius R when the bound is < 1.
inline double psi_disk_bound(const GSeries& psi, double R, double radius_lower) {
    std::vector<double> term_abs(psi.coeffs.size());
    double lR = std::log(R);
    double total = 0.0;
    for (std::size_t n = 0; n < psi.coeffs.size(); ++n) {
        double lt = psi.coeffs[n].log_modulus() + static_cast<double>(n) * lR;
        term_abs[n] = std::isnan(lt) ? 0.0 : std::exp(lt);
        total += term_abs[n];
    }
    double ratio = R / radius_lower;
    if (!(ratio > 0.0)) ratio = 1e-9;
    if (!(ratio < 1.0)) return std::numeric_limits<double>::infinity();
    return up(total + geometric_tail(term_abs, ratio));
}

} // namespace detail

inline LogRealization log_algebraic(const QiPolynomial& Q, const ComplexBall& alpha,
                                    double R, std::size_t N,
                                    unsigned precision_bits = 256) {
    if (R < 1.0) throw err::precondition("log_algebraic: R must be >= 1");
    PrecisionGuard guard(precision_bits + 64);
    if (!(alpha.abs_lower() > 0.0))
        throw err::precondition("log_algebraic: alpha ball must exclude zero");
    // principal-branch cut (-inf, 0]: reject balls that may touch it
    if (static_cast<double>(alpha.re) <= alpha.rad &&
        std::fabs(static_cast<double>(alpha.im)) <= alpha.rad)
        throw err::branch_cut("log_algebraic: alpha ball crosses the cut (-inf, 0]");

    // minimal m = 2^k with |alpha^(1/m) - 1| < 1/(4R)
    const double threshold = 1.0 / (4.0 * R);
    ComplexBall beta = alpha;
    unsigned long m = 1;
    ComplexBall one = ComplexBall::from_exact(GaussianRational(1));
    for (int k = 0; k < 60 && (beta - one).abs_upper() >= threshold; ++k) {
        beta = ball_sqrt(beta);
        m *= 2;
    }
    if ((beta - one).abs_upper() >= threshold)
        throw err::no_witness_found("log_algebraic: root shrinking did not converge");

    QiPolynomial Qm = Q.compose_power(static_cast<unsigned>(m));
    ComplexBall beta_cert = certify_root_near(Qm, beta, precision_bits);

    std::string fail = "unknown";
    double R_eff = R * 1.125;
    for (int attempt = 0; attempt < 4; ++attempt, R_eff *= 2) {
        RootSeries rs;
        try {
            // Psi_u = (Phi_u - u)/u needs u != 0, so the zero witness is barred
            rs = build_root_series(Qm, beta_cert, R_eff, N, precision_bits, true);
        } catch (const Error& e) {
            fail = e.what();
            continue;
        }
        GSeries psi = rs.phi;
        psi.coeffs[0] = GaussianRational(0);
        psi = scalar_mul(GaussianRational(1) / rs.u, psi);
        psi.radius_hint = rs.radius_exact.lower;

        // the paper's |Psi_u| < 1 condition, certified on the closed disk
        // of radius R_cert > R, with a margin so log(1+Psi) gets that radius
        double R_cert = std::min(R * 1.125, R_eff);
        if (detail::psi_disk_bound(psi, R_cert, rs.radius_exact.lower) >= 1.0) {
            fail = "could not certify |Psi_u| < 1 on the target disk";
            continue;
        }
        GSeries lg = series_log1p(psi);
        lg.radius_hint = R_cert;

        LogParts parts;
        try {
            parts = log_gaussian_rational(rs.u, R, N);
        } catch (const Error& e) {
            fail = e.what();
            continue;
        }

        ComplexBall sum = evaluate(lg, GaussianRational(1), 1.0 / R_cert);
        sum += parts.value;
        ComplexBall total = ComplexBall::from_exact(
                                GaussianRational(Rational(static_cast<long>(m)))) *
                            sum;

        LogRealization out;
        out.components.push_back({std::move(lg), "principal"});
        out.components.push_back({parts.series[0], "principal"});
        out.components.push_back({parts.series[1], "principal"});
        out.m = m;
        out.u = rs.u;
        out.value = total;
        return out;
    }
    throw err::no_witness_found("log_algebraic: " + fail);
}

} // namespace gfun

#endif
