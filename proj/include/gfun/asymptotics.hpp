#ifndef GFUN_ASYMPTOTICS_HPP
#define GFUN_ASYMPTOTICS_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <vector>

#include "gfun/ball.hpp"
#include "gfun/rational.hpp"
#include "gfun/series.hpp"

namespace gfun {

// Dominant singular behavior on the circle |z| = rho:
// f ~ c_i (log(zeta_i rho - z))^sigma (zeta_i rho - z)^tau at each front.
struct Front {
    ComplexBall zeta;    // unimodular direction
    ComplexBall c_tilde; // transfer amplitude
};

struct SingularProfile {
    double rho = 1.0;
    std::optional<Rational> rho_exact;
    unsigned sigma = 0;
    Rational tau;
    std::vector<Front> fronts;
};

namespace detail {

inline bool tau_is_nonneg_integer(const Rational& tau) {
    return tau >= 0 && tau.get_den() == 1;
}

} // namespace detail

// Main transfer term (without the o(1)):
// a_n = ((-1)^sigma / Gamma(-tau)) (log n)^sigma / (rho^n n^(tau+1)) * chi_n,
// chi_n = sum_i c_i zeta_i^(-n). Refused when Gamma(-tau) is undefined.
inline std::vector<ComplexBall> predict_coeffs(const SingularProfile& profile,
                                               long n_begin, long n_end) {
    if (detail::tau_is_nonneg_integer(profile.tau))
        throw err::degenerate_gamma("predict_coeffs: Gamma(-tau) undefined for tau in {0,1,2,...}");
    if (n_begin < 2) throw err::precondition("predict_coeffs: n range must start at 2 or later");
    if (profile.fronts.empty()) throw err::precondition("predict_coeffs: no fronts");

    real_t gamma_mt = detail::mp_gamma(-detail::to_real(profile.tau));
    real_t log_rho;
    if (profile.rho_exact)
        log_rho = log(detail::to_real(*profile.rho_exact));
    else
        log_rho = log(real_t(profile.rho));
    real_t tau1 = detail::to_real(profile.tau) + 1;

    std::vector<ComplexBall> inv_zeta;
    for (const auto& f : profile.fronts)
        inv_zeta.push_back(ComplexBall::from_exact(GaussianRational(1)) / f.zeta);

    std::vector<ComplexBall> out;
    for (long n = n_begin; n <= n_end; ++n) {
        real_t ln = log(real_t(n));
        real_t scale_log = -real_t(n) * log_rho - tau1 * ln;
        real_t scale = exp(scale_log);
        real_t logn_pow = 1;
        for (unsigned s = 0; s < profile.sigma; ++s) logn_pow *= ln;
        real_t factor = scale * logn_pow / gamma_mt;
        if (profile.sigma % 2 == 1) factor = -factor;

        ComplexBall chi;
        for (std::size_t i = 0; i < profile.fronts.size(); ++i)
            chi += profile.fronts[i].c_tilde *
                   ball_pow_ui(inv_zeta[i], static_cast<unsigned long>(n));
        ComplexBall f(factor, real_t(0),
                      std::fabs(static_cast<double>(factor)) * detail::rounding_eps() * 8);
        out.push_back(f * chi);
    }
    return out;
}

struct FitOptions {
    std::vector<ComplexBall> candidates; // candidate fronts zeta_i (unimodular)
    double oscillation_tolerance = 0.25; // residual spread that flags multiple fronts
};

namespace detail {

// least squares for y ~ c0 + b1 x1 + b2 x2 via 3x3 normal equations
struct Fit3 {
    double c0, b1, b2, sse;
};

inline Fit3 fit3(const std::vector<double>& x1, const std::vector<double>& x2,
                 const std::vector<double>& y) {
    const std::size_t n = y.size();
    double A[3][4] = {};
    for (std::size_t k = 0; k < n; ++k) {
        double row[3] = {1.0, x1[k], x2[k]};
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) A[i][j] += row[i] * row[j];
            A[i][3] += row[i] * y[k];
        }
    }
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::fabs(A[r][col]) > std::fabs(A[piv][col])) piv = r;
        std::swap(A[col], A[piv]);
        for (int r = 0; r < 3; ++r) {
            if (r == col || A[col][col] == 0.0) continue;
            double f = A[r][col] / A[col][col];
            for (int cc = col; cc < 4; ++cc) A[r][cc] -= f * A[col][cc];
        }
    }
    Fit3 out{};
    out.c0 = A[0][3] / A[0][0];
    out.b1 = A[1][3] / A[1][1];
    out.b2 = A[2][3] / A[2][2];
    out.sse = 0;
    for (std::size_t k = 0; k < n; ++k) {
        double r = y[k] - out.c0 - out.b1 * x1[k] - out.b2 * x2[k];
        out.sse += r * r;
    }
    return out;
}

} // namespace detail

// Regression fit of (rho, sigma, tau) from coefficient magnitudes:
// log|a_n| ~ c - n log rho - (tau+1) log n + sigma log log n over the top
// half of the window (first tenth always discarded, zeros skipped). Fronts
// are fitted only against caller-supplied candidate directions.
inline SingularProfile fit_profile(const std::vector<double>& coeffs,
                                   const FitOptions& options = {}) {
    const std::size_t N = coeffs.size();
    if (N < 512) throw err::precondition("fit_profile: need at least 512 coefficients");
    std::size_t start = std::max(N / 2, N / 10 + 1);

    std::vector<double> ns, logns, loglogns, ys;
    for (std::size_t n = start; n < N; ++n) {
        if (coeffs[n] == 0.0) continue;
        ns.push_back(static_cast<double>(n));
        logns.push_back(std::log(static_cast<double>(n)));
        loglogns.push_back(std::log(std::log(static_cast<double>(n))));
        ys.push_back(std::log(std::fabs(coeffs[n])));
    }
    if (ys.size() < 64)
        throw err::precondition("fit_profile: too few nonzero coefficients in the window");

    double best_sse = std::numeric_limits<double>::infinity();
    unsigned best_sigma = 0;
    detail::Fit3 best{};
    for (unsigned sigma = 0; sigma <= 3; ++sigma) {
        std::vector<double> adj(ys.size());
        for (std::size_t k = 0; k < ys.size(); ++k)
            adj[k] = ys[k] - sigma * loglogns[k];
        detail::Fit3 f = detail::fit3(ns, logns, adj);
        if (f.sse < best_sse) {
            best_sse = f.sse;
            best_sigma = sigma;
            best = f;
        }
    }

    SingularProfile profile;
    profile.rho = std::exp(-best.b1);
    profile.sigma = best_sigma;
    double tau_raw = -best.b2 - 1.0;
    profile.tau = detail::round_to_denominator(real_t(tau_raw), 1L << 20);

    double residual_spread = std::sqrt(best_sse / static_cast<double>(ys.size()));
    bool oscillating = residual_spread > options.oscillation_tolerance;

    if (options.candidates.empty()) {
        if (oscillating)
            throw err::oscillation_unresolved(
                "fit_profile: residual spread suggests multiple fronts; supply candidate zetas");
        return profile;
    }

    // amplitude recovery against the candidate directions: solve the t x t
    // system chi_n = sum_i c_i zeta_i^(-n) on trailing windows and pool
    if (detail::tau_is_nonneg_integer(profile.tau))
        throw err::degenerate_gamma("fit_profile: fitted tau is a nonnegative integer");
    const std::size_t t = options.candidates.size();
    real_t gamma_mt = detail::mp_gamma(-detail::to_real(profile.tau));
    double lg = static_cast<double>(log(abs(gamma_mt)));
    double gsign = gamma_mt > 0 ? 1.0 : -1.0;

    auto chi_at = [&](std::size_t n) -> double {
        // chi_n = a_n Gamma(-tau) (-1)^sigma rho^n n^(tau+1) / (log n)^sigma
        double l = std::log(std::fabs(coeffs[n]) + 1e-300) + lg +
                   static_cast<double>(n) * std::log(profile.rho) +
                   (tau_raw + 1.0) * std::log(static_cast<double>(n)) -
                   profile.sigma * std::log(std::log(static_cast<double>(n)));
        double v = std::exp(l) * (coeffs[n] < 0 ? -1.0 : 1.0) * gsign;
        if (profile.sigma % 2 == 1) v = -v;
        return coeffs[n] == 0.0 ? 0.0 : v;
    };

    const int pools = 8;
    std::vector<ComplexBall> acc(t);
    std::vector<double> spread(t, 0.0);
    std::vector<std::vector<double>> estimates_re(t), estimates_im(t);
    for (int p = 0; p < pools; ++p) {
        std::size_t n0 = N - t * static_cast<std::size_t>(pools - p);
        std::vector<std::vector<ComplexBall>> M(t, std::vector<ComplexBall>(t));
        std::vector<ComplexBall> rhs(t);
        for (std::size_t r = 0; r < t; ++r) {
            for (std::size_t i = 0; i < t; ++i) {
                ComplexBall inv = ComplexBall::from_exact(GaussianRational(1)) /
                                  options.candidates[i];
                M[r][i] = ball_pow_ui(inv, n0 + r);
            }
            rhs[r] = ball_from_double(chi_at(n0 + r));
        }
        ComplexBall det = detail::ball_det(M);
        if (det.contains_zero())
            throw err::near_singular("fit_profile: front system is singular");
        for (std::size_t i = 0; i < t; ++i) {
            auto Mi = M;
            for (std::size_t r = 0; r < t; ++r) Mi[r][i] = rhs[r];
            ComplexBall ki = detail::ball_det(Mi) / det;
            estimates_re[i].push_back(static_cast<double>(ki.re));
            estimates_im[i].push_back(static_cast<double>(ki.im));
        }
    }
    for (std::size_t i = 0; i < t; ++i) {
        double mre = 0, mim = 0;
        for (int p = 0; p < pools; ++p) {
            mre += estimates_re[i][static_cast<std::size_t>(p)];
            mim += estimates_im[i][static_cast<std::size_t>(p)];
        }
        mre /= pools;
        mim /= pools;
        double sp = 0;
        for (int p = 0; p < pools; ++p)
            sp = std::max(sp, std::hypot(estimates_re[i][static_cast<std::size_t>(p)] - mre,
                                         estimates_im[i][static_cast<std::size_t>(p)] - mim));
        Front f;
        f.zeta = options.candidates[i];
        f.c_tilde = ComplexBall(real_t(mre), real_t(mim), sp * 2.0 + 1e-12);
        profile.fronts.push_back(f);
    }
    return profile;
}

// The Vandermonde-type system of Lemma-style amplitude recovery:
// samples are t consecutive values of sum_j kappa_j omega_j^n.
struct AmplitudeSystem {
    std::vector<ComplexBall> omegas;
    unsigned long window_start = 0;
    std::vector<ComplexBall> samples;
};

struct AmplitudeResult {
    std::vector<ComplexBall> kappa;
    double det_lower = 0.0; // certified lower bound on |delta_0| (Vandermonde)
};

inline AmplitudeResult recover_amplitudes(const AmplitudeSystem& sys) {
    const std::size_t t = sys.omegas.size();
    if (sys.samples.size() != t)
        throw err::precondition("recover_amplitudes: need exactly t consecutive samples");
    for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = i + 1; j < t; ++j)
            if (!((sys.omegas[i] - sys.omegas[j]).abs_lower() > 0.0))
                throw err::near_singular("recover_amplitudes: omegas not certifiably distinct");

    std::vector<std::vector<ComplexBall>> M(t, std::vector<ComplexBall>(t));
    for (std::size_t r = 0; r < t; ++r)
        for (std::size_t j = 0; j < t; ++j)
            M[r][j] = ball_pow_ui(sys.omegas[j], sys.window_start + r);
    ComplexBall det = detail::ball_det(M);
    if (det.contains_zero())
        throw err::near_singular("recover_amplitudes: system determinant ball contains zero");

    AmplitudeResult out;
    ComplexBall vdm = ComplexBall::from_exact(GaussianRational(1));
    for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = i + 1; j < t; ++j) vdm = vdm * (sys.omegas[j] - sys.omegas[i]);
    out.det_lower = vdm.abs_lower();
    for (std::size_t j = 0; j < t; ++j) {
        auto Mj = M;
        for (std::size_t r = 0; r < t; ++r) Mj[r][j] = sys.samples[r];
        out.kappa.push_back(detail::ball_det(Mj) / det);
    }
    return out;
}

// Exact variant over Q(i), for unimodular omegas representable exactly
// (e.g. 4th roots of unity). Returns kappa and optionally the exact
// determinant of the window matrix M_n.
inline std::vector<GaussianRational> recover_amplitudes_exact(
    const std::vector<GaussianRational>& omegas, unsigned long window_start,
    const std::vector<GaussianRational>& samples, GaussianRational* det_out = nullptr) {
    const std::size_t t = omegas.size();
    if (samples.size() != t)
        throw err::precondition("recover_amplitudes_exact: need exactly t samples");
    for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = i + 1; j < t; ++j)
            if (omegas[i] == omegas[j])
                throw err::near_singular("recover_amplitudes_exact: omegas must be distinct");

    std::vector<std::vector<GaussianRational>> M(t, std::vector<GaussianRational>(t + 1));
    for (std::size_t r = 0; r < t; ++r) {
        for (std::size_t j = 0; j < t; ++j) M[r][j] = pow(omegas[j], window_start + r);
        M[r][t] = samples[r];
    }
    // Gaussian elimination with exact pivoting; determinant accumulated
    GaussianRational det(1);
    for (std::size_t col = 0; col < t; ++col) {
        std::size_t piv = col;
        while (piv < t && M[piv][col].is_zero()) ++piv;
        if (piv == t) throw err::near_singular("recover_amplitudes_exact: singular system");
        if (piv != col) {
            std::swap(M[piv], M[col]);
            det = -det;
        }
        det *= M[col][col];
        for (std::size_t r = 0; r < t; ++r) {
            if (r == col) continue;
            GaussianRational f = M[r][col] / M[col][col];
            if (f.is_zero()) continue;
            for (std::size_t c = col; c <= t; ++c) M[r][c] -= f * M[col][c];
        }
    }
    std::vector<GaussianRational> kappa(t);
    for (std::size_t j = 0; j < t; ++j) kappa[j] = M[j][t] / M[j][j];
    if (det_out) *det_out = det;
    return kappa;
}

// Exact |det M_n|^2 for exact unimodular omegas: the paper's invariance
// |delta_n| = |delta_0| becomes an exact identity of the squared moduli.
inline Rational window_det_norm_exact(const std::vector<GaussianRational>& omegas,
                                      unsigned long window_start) {
    const std::size_t t = omegas.size();
    std::vector<std::vector<GaussianRational>> M(t, std::vector<GaussianRational>(t));
    for (std::size_t r = 0; r < t; ++r)
        for (std::size_t j = 0; j < t; ++j) M[r][j] = pow(omegas[j], window_start + r);
    GaussianRational det(1);
    for (std::size_t col = 0; col < t; ++col) {
        std::size_t piv = col;
        while (piv < t && M[piv][col].is_zero()) ++piv;
        if (piv == t) return Rational(0);
        if (piv != col) {
            std::swap(M[piv], M[col]);
            det = -det;
        }
        det *= M[col][col];
        for (std::size_t r = col + 1; r < t; ++r) {
            GaussianRational f = M[r][col] / M[col][col];
            for (std::size_t c = col; c < t; ++c) M[r][c] -= f * M[col][c];
        }
    }
    return det.norm();
}

} // namespace gfun

#endif
