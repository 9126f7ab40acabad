#ifndef GFUN_PROFILE_HPP
#define GFUN_PROFILE_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <vector>

#include "gfun/ode.hpp"
#include "gfun/series.hpp"

namespace gfun {

// Finite sum of (log z)^s z^t F_{s,t}(z) with holomorphic F given as stored
// truncations. The (s,t) pairs are distinct.
struct LogMonomialTerm {
    unsigned s = 0;
    Rational t;
    GSeries F;
};

struct LogMonomialSum {
    std::vector<LogMonomialTerm> terms;
};

struct LeadingTerm {
    bool zero = false; // structural zero: every stored series vanished identically
    GaussianRational c;
    unsigned sigma = 0;
    Rational tau;
};

// Leading-term selection: tau is the minimal theta in (T + N) with some
// c_{s,theta} = sum_t a_{s,t,theta-t} nonzero, sigma the largest s there.
// Exact arithmetic throughout. Only theta values that every term's stored
// truncation can account for are examined; if everything stored cancels but
// some series is not identically zero, the truncation cannot decide and
// TruncationInconclusive is raised.
inline LeadingTerm leading_term(const LogMonomialSum& sum) {
    LeadingTerm out;
    if (sum.terms.empty()) {
        out.zero = true;
        return out;
    }
    // largest theta every stored truncation still covers
    bool all_zero_series = true;
    std::optional<Rational> theta_max;
    for (const auto& term : sum.terms) {
        Rational cover = term.t + Rational(static_cast<long>(term.F.order()));
        if (!theta_max || cover < *theta_max) theta_max = cover;
        for (const auto& a : term.F.coeffs)
            if (!a.is_zero()) all_zero_series = false;
    }
    if (all_zero_series) {
        out.zero = true;
        return out;
    }

    std::vector<Rational> thetas;
    for (const auto& term : sum.terms)
        for (std::size_t n = 0; n <= term.F.order(); ++n) {
            Rational theta = term.t + Rational(static_cast<long>(n));
            if (theta <= *theta_max) thetas.push_back(theta);
        }
    std::sort(thetas.begin(), thetas.end());
    thetas.erase(std::unique(thetas.begin(), thetas.end()), thetas.end());

    for (const Rational& theta : thetas) {
        // c_{s,theta} for every s present
        std::map<unsigned, GaussianRational> c;
        for (const auto& term : sum.terms) {
            Rational diff = theta - term.t;
            if (diff < 0 || diff.get_den() != 1) continue;
            unsigned long n = mpz_get_ui(diff.get_num().get_mpz_t());
            if (n > term.F.order()) continue;
            c[term.s] += term.F[static_cast<std::size_t>(n)];
        }
        unsigned best_s = 0;
        bool any = false;
        for (const auto& [s, val] : c)
            if (!val.is_zero() && (!any || s > best_s)) {
                best_s = s;
                any = true;
            }
        if (any) {
            out.c = c[best_s];
            out.sigma = best_s;
            out.tau = theta;
            return out;
        }
    }
    throw err::truncation_inconclusive(
        "leading_term: all stored coefficients cancel; truncation too short to assert c = 0");
}

// One sample of f on a ray toward the singularity.
struct RaySample {
    GaussianRational z;
    ComplexBall value;
};

struct ProfileFitResult {
    ComplexBall c;
    unsigned sigma = 0;
    Rational tau;        // snapped exponent (denominator <= 16) when snapping succeeded
    double tau_raw = 0;  // raw fitted exponent
    bool snapped = false;
};

// Fits f(z) ~ c (log(zeta-z))^sigma (zeta-z)^tau from certified samples
// accumulating toward zeta. tau comes from the log-log slope, sigma from a
// small grid search on the log|log| correction, c from the normalized limit.
inline ProfileFitResult singular_profile(const std::vector<RaySample>& samples,
                                         const GaussianRational& zeta) {
    if (samples.size() < 8)
        throw err::precondition("singular_profile: need at least 8 samples");

    struct Pt {
        double logdelta;
        double logabsf;
        double loglogmag;
        ComplexBall dist;  // zeta - z as a ball
        ComplexBall value;
    };
    std::vector<Pt> pts;
    for (const auto& s : samples) {
        GaussianRational d = zeta - s.z;
        if (d.is_zero()) throw err::precondition("singular_profile: sample equals zeta");
        Pt p;
        p.dist = ComplexBall::from_exact(d);
        p.value = s.value;
        p.logdelta = 0.5 * log_abs(d.norm());
        double va = s.value.abs_upper();
        p.logabsf = std::log(std::max(va, 1e-300));
        ComplexBall lg = ball_log(p.dist);
        p.loglogmag = std::log(std::max(lg.abs_upper(), 1e-300));
        pts.push_back(p);
    }
    std::sort(pts.begin(), pts.end(),
              [](const Pt& a, const Pt& b) { return a.logdelta > b.logdelta; });

    // grid over sigma; tau from the residual slope against log delta. A
    // nonzero sigma is accepted only on a decisive SSE win, otherwise a
    // finite-limit function can drift into a spurious log factor.
    double best_sse = std::numeric_limits<double>::infinity();
    unsigned best_sigma = 0;
    double best_tau = 0.0;
    for (unsigned sigma = 0; sigma <= 3; ++sigma) {
        std::vector<double> xs, ys;
        for (const auto& p : pts) {
            xs.push_back(p.logdelta);
            ys.push_back(p.logabsf - sigma * p.loglogmag);
        }
        double slope = detail::regression_slope(xs, ys);
        double sx = 0, sy = 0;
        for (std::size_t k = 0; k < xs.size(); ++k) {
            sx += xs[k];
            sy += ys[k];
        }
        double ic = (sy - slope * sx) / static_cast<double>(xs.size());
        double sse = 0;
        for (std::size_t k = 0; k < xs.size(); ++k) {
            double r = ys[k] - slope * xs[k] - ic;
            sse += r * r;
        }
        bool wins = (sigma == 0) ? sse < best_sse : sse * 4.0 < best_sse;
        if (wins) {
            best_sse = sse;
            best_sigma = sigma;
            best_tau = slope;
        }
    }
    if (best_sse / static_cast<double>(pts.size()) > 1.0)
        throw err::fit_diverged("singular_profile: samples do not follow a log-monomial profile");

    ProfileFitResult out;
    out.sigma = best_sigma;
    out.tau_raw = best_tau;
    for (long q = 1; q <= 16 && !out.snapped; ++q) {
        double scaled = best_tau * static_cast<double>(q);
        double nearest = std::round(scaled);
        if (std::fabs(scaled - nearest) <= 0.04 * q) {
            out.tau = Rational(static_cast<long>(nearest), q);
            out.tau.canonicalize();
            out.snapped = true;
        }
    }
    Rational tau_used = out.snapped
                            ? out.tau
                            : detail::round_to_denominator(real_t(best_tau), 1L << 20);

    // normalized limit c_k = f(z_k) (zeta-z_k)^(-tau) log(zeta-z_k)^(-sigma)
    auto normalized = [&](const Pt& p) {
        ComplexBall c = p.value * ball_pow_rational(p.dist, -tau_used);
        if (best_sigma > 0) {
            ComplexBall lg = ball_log(p.dist);
            c = c / ball_pow_ui(lg, best_sigma);
        }
        return c;
    };
    ComplexBall c_last = normalized(pts.back());
    ComplexBall c_prev = normalized(pts[pts.size() - 2]);
    double gap_last = (c_last - c_prev).abs_upper();
    out.c = c_last.inflated(gap_last * 3.0);
    return out;
}

// Continuation-driven sampler: transports f from the path end toward zeta at
// geometrically shrinking distances and records certified values. The start
// state is the derivative vector at the last path waypoint.
inline std::vector<RaySample> sample_toward_singularity(
    const FuchsianODE& ode, std::vector<ComplexBall> derivs, const Path& approach,
    const GaussianRational& zeta, std::size_t count, std::size_t N,
    const Rational& shrink = Rational(1, 2)) {
    if (approach.waypoints.empty())
        throw err::precondition("sample_toward_singularity: empty approach path");
    std::vector<RaySample> samples;
    GaussianRational current = approach.waypoints.back();
    derivs = continue_along_path(ode, derivs, approach, N);
    GaussianRational offset = zeta - current;
    GaussianRational gr_shrink(shrink);
    for (std::size_t k = 0; k < count; ++k) {
        samples.push_back({current, derivs[0]});
        GaussianRational next = zeta - (zeta - current) * gr_shrink;
        Path hop{{current, next}, approach.branch_note};
        derivs = continue_along_path(ode, derivs, hop, N);
        current = next;
    }
    return samples;
}

} // namespace gfun

#endif
