#ifndef GFUN_APERY_HPP
#define GFUN_APERY_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "gfun/ball.hpp"
#include "gfun/rational.hpp"
#include "gfun/series.hpp"

namespace gfun {

// Apery-style approximation data: a_n/b_n -> target with |a_n - xi b_n|
// decaying like error_rate^(-n).
struct AperyPair {
    std::vector<GaussianRational> a;
    std::vector<GaussianRational> b;
    ComplexBall target; // xi
    GSeries A_series;   // U/(1-z) truncated
    GSeries B_series;   // V/(1-z) truncated
    double error_rate = 1.0;
};

// Partial-sum construction: a_n = sum_{k<=n} u_k, b_n likewise, generating
// functions U/(1-z) and V/(1-z), xi = U(1)/V(1). Requires both radii > 1 so
// the partial sums converge geometrically.
namespace detail {

// Working precision needed to resolve rate^(-n) decay out to index N.
inline unsigned decay_resolving_bits(double rate, std::size_t N) {
    double b = std::isfinite(rate) && rate > 1.0
                   ? static_cast<double>(N) * std::log2(rate)
                   : 0.0;
    b = std::min(b, 65536.0);
    return std::max(working_precision_bits(), static_cast<unsigned>(b) + 160);
}

} // namespace detail

inline AperyPair partial_sum_pair(const GSeries& U, const GSeries& V) {
    if (!U.radius_hint || !(*U.radius_hint > 1.0) || !V.radius_hint || !(*V.radius_hint > 1.0))
        throw err::radius_too_small("partial_sum_pair: both series need radius_hint > 1");
    PrecisionGuard guard(detail::decay_resolving_bits(
        std::min(*U.radius_hint, *V.radius_hint), std::min(U.order(), V.order())));

    AperyPair pair;
    const std::size_t N = std::min(U.order(), V.order());
    pair.a.resize(N + 1);
    pair.b.resize(N + 1);
    GaussianRational sa(0), sb(0);
    for (std::size_t n = 0; n <= N; ++n) {
        sa += U[n];
        sb += V[n];
        pair.a[n] = sa;
        pair.b[n] = sb;
    }
    pair.A_series = mul(U, GSeries::geometric(U.order()));
    pair.A_series.radius_hint = 1.0;
    pair.B_series = mul(V, GSeries::geometric(V.order()));
    pair.B_series.radius_hint = 1.0;

    ComplexBall u1 = evaluate(U, GaussianRational(1));
    ComplexBall v1 = evaluate(V, GaussianRational(1));
    pair.target = u1 / v1;
    pair.error_rate = std::min(*U.radius_hint, *V.radius_hint);
    return pair;
}

// Regression slope of log D_n against n over the top half, where D_n is the
// exact lcm of the denominators of x_0..x_n. Estimates log C for the common
// denominator growth C^(n(1+o(1))).
inline double denominator_growth(const std::vector<GaussianRational>& x) {
    if (x.size() < 64) throw err::precondition("denominator_growth: need at least 64 terms");
    Integer D(1);
    std::vector<double> logD(x.size());
    for (std::size_t n = 0; n < x.size(); ++n) {
        Integer dn = denominator_lcm(x[n]);
        mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), dn.get_mpz_t());
        signed long e = 0;
        double m = mpz_get_d_2exp(&e, D.get_mpz_t());
        logD[n] = std::log(m) + static_cast<double>(e) * std::log(2.0);
    }
    std::vector<double> xs, ys;
    for (std::size_t n = x.size() / 2; n < x.size(); ++n) {
        xs.push_back(static_cast<double>(n));
        ys.push_back(logD[n]);
    }
    return detail::regression_slope(xs, ys);
}

// Irrationality-exponent bound mu(xi) <= 1 - log(C/r)/log(C/R), valid when
// C < R; the bound degenerates to NoConclusion otherwise. Inputs claiming
// C < sqrt(R r) alongside C < R are inconsistent with the underlying
// inequality C >= sqrt(R r) and get flagged.
struct MuBound {
    enum class Status { Bound, NoConclusion } status = Status::NoConclusion;
    double value = 0.0;
    bool consistency_violation = false;
};

inline MuBound mu_bound(double C, double r, double R) {
    if (!(C > 0.0 && r > 0.0 && R > r))
        throw err::precondition("mu_bound: need C > 0, r > 0, R > r");
    MuBound out;
    if (!(C < R)) {
        out.status = MuBound::Status::NoConclusion;
        return out;
    }
    out.status = MuBound::Status::Bound;
    if (C * C < R * r) out.consistency_violation = true;
    if (C * C == R * r) {
        // the two logs are exact negatives of each other
        out.value = 2.0;
        return out;
    }
    out.value = 1.0 - std::log(C / r) / std::log(C / R);
    return out;
}

// Machine-readable limit verification of an AperyPair.
struct LimitCheckItem {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct LimitReport {
    std::vector<LimitCheckItem> checks;
    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

struct ToleranceSchedule {
    std::size_t nonzero_from = 4;   // b_n must be nonzero from this index on
    std::size_t checkpoints = 6;    // geometric checkpoints for the decrease test
    double decrease_slack = 1.25;   // |a/b - xi| at the next checkpoint must shrink
    double normalized_bound = 16.0; // sup |a_n - xi b_n| rate^n relative to its start
};

inline LimitReport limit_check(const AperyPair& pair, const ToleranceSchedule& sched = {}) {
    LimitReport report;
    const std::size_t N = pair.a.size() - 1;
    PrecisionGuard guard(detail::decay_resolving_bits(pair.error_rate, N));

    // b_n != 0 beyond the threshold
    {
        bool ok = true;
        std::size_t bad = 0;
        for (std::size_t n = sched.nonzero_from; n <= N; ++n)
            if (pair.b[n].is_zero()) {
                ok = false;
                bad = n;
                break;
            }
        report.checks.push_back({"b_nonzero", ok,
                                 ok ? "all nonzero from " + std::to_string(sched.nonzero_from)
                                    : "b_n = 0 at n = " + std::to_string(bad)});
    }

    // |a_n/b_n - xi| decreasing along geometric checkpoints
    {
        std::vector<std::size_t> idx;
        for (std::size_t k = 0; k < sched.checkpoints; ++k) {
            double f = static_cast<double>(k + 1) / static_cast<double>(sched.checkpoints);
            std::size_t n = static_cast<std::size_t>(std::floor(std::pow(
                static_cast<double>(N), f)));
            n = std::min(std::max<std::size_t>(n, sched.nonzero_from + 1), N);
            if (idx.empty() || n > idx.back()) idx.push_back(n);
        }
        bool ok = true;
        std::string detail;
        double prev = std::numeric_limits<double>::infinity();
        for (std::size_t n : idx) {
            if (pair.b[n].is_zero()) continue;
            ComplexBall ratio = ComplexBall::from_exact(pair.a[n]) /
                                ComplexBall::from_exact(pair.b[n]);
            double errn = (ratio - pair.target).abs_upper();
            if (errn > prev * sched.decrease_slack && errn > 1e-290) {
                ok = false;
                detail = "error grew at checkpoint n = " + std::to_string(n);
                break;
            }
            prev = errn;
        }
        report.checks.push_back({"ratio_error_decreasing", ok, detail});
    }

    // |a_n - xi b_n| rate^n stays bounded
    {
        bool ok = true;
        std::string detail;
        double lr = std::log(pair.error_rate);
        double base = -std::numeric_limits<double>::infinity();
        double worst = -std::numeric_limits<double>::infinity();
        for (std::size_t n = 0; n <= N; ++n) {
            ComplexBall lin = ComplexBall::from_exact(pair.a[n]) -
                              pair.target * ComplexBall::from_exact(pair.b[n]);
            double l = std::log(std::max(lin.abs_upper(), 1e-300)) +
                       static_cast<double>(n) * lr;
            if (n == 0) base = l;
            worst = std::max(worst, l);
        }
        if (worst > base + std::log(sched.normalized_bound)) {
            ok = false;
            detail = "normalized error exceeds the schedule bound";
        }
        report.checks.push_back({"normalized_error_bounded", ok, detail});
    }
    return report;
}

// Apery's zeta(3) sequences from the classical recurrence
// (n+1)^3 u_{n+1} = (34n^3 + 51n^2 + 27n + 5) u_n - n^3 u_{n-1},
// with b_0 = 1, b_1 = 5 (integers) and a_0 = 0, a_1 = 6 (rationals).
// External demo data: these sequences are classical inputs here, exercised
// by denominator_growth and mu_bound.
inline std::pair<std::vector<GaussianRational>, std::vector<GaussianRational>>
apery_zeta3_sequences(std::size_t count) {
    std::vector<Rational> b{Rational(1), Rational(5)};
    std::vector<Rational> a{Rational(0), Rational(6)};
    for (std::size_t n = 1; n + 1 < count; ++n) {
        Rational n3 = Rational(static_cast<long>(n)) * Rational(static_cast<long>(n)) *
                      Rational(static_cast<long>(n));
        Rational p = Rational(34) * n3 +
                     Rational(51 * static_cast<long>(n) * static_cast<long>(n)) +
                     Rational(27 * static_cast<long>(n)) + 5;
        Rational np1 = Rational(static_cast<long>(n + 1));
        Rational np13 = np1 * np1 * np1;
        b.push_back((p * b[n] - n3 * b[n - 1]) / np13);
        a.push_back((p * a[n] - n3 * a[n - 1]) / np13);
    }
    std::pair<std::vector<GaussianRational>, std::vector<GaussianRational>> out;
    for (const auto& q : a) out.first.emplace_back(q);
    for (const auto& q : b) out.second.emplace_back(q);
    return out;
}

} // namespace gfun

#endif
