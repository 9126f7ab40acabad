#ifndef GFUN_ROOTS_HPP
#define GFUN_ROOTS_HPP

#include <algorithm>
#include <cmath>
#include <vector>

#include "gfun/ball.hpp"
#include "gfun/polynomial.hpp"

namespace gfun {

// Certified complex root: the ball contains exactly `multiplicity` roots of
// the input polynomial (all equal, by squarefree decomposition).
struct RootBall {
    ComplexBall ball;
    unsigned multiplicity = 1;
};

// Ball Horner evaluation with exact coefficients.
inline ComplexBall eval_ball(const QiPolynomial& p, const ComplexBall& z) {
    ComplexBall acc;
    for (std::size_t k = p.coeffs().size(); k-- > 0;)
        acc = acc * z + ComplexBall::from_exact(p.coeffs()[k]);
    return acc;
}

namespace detail {

// Midpoint-only complex arithmetic for the Aberth iteration.
struct Cplx {
    real_t re, im;
    Cplx() : re(0), im(0) {}
    Cplx(real_t r, real_t i) : re(std::move(r)), im(std::move(i)) {}
    friend Cplx operator+(const Cplx& a, const Cplx& b) { return {a.re + b.re, a.im + b.im}; }
    friend Cplx operator-(const Cplx& a, const Cplx& b) { return {a.re - b.re, a.im - b.im}; }
    friend Cplx operator*(const Cplx& a, const Cplx& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Cplx operator/(const Cplx& a, const Cplx& b) {
        real_t n = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    double abs2_d() const { return static_cast<double>(re * re + im * im); }
};

inline Cplx eval_cplx(const std::vector<Cplx>& coeffs, const Cplx& z) {
    Cplx acc;
    for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * z + coeffs[k];
    return acc;
}

// One interval-Newton contraction attempt around `center` with trial radius
// `r_try`. On success returns true and writes the contracted ball (which is
// certified to contain exactly one root of p).
inline bool newton_contract(const QiPolynomial& p, const QiPolynomial& dp,
                            const Cplx& center, double r_try, ComplexBall& out) {
    ComplexBall disk(center.re, center.im, r_try);
    ComplexBall dball = eval_ball(dp, disk);
    if (dball.contains_zero()) return false;
    ComplexBall point(center.re, center.im, 0.0);
    ComplexBall step = eval_ball(p, point) / dball;
    ComplexBall image = point - step;
    if (!disk.contains(image)) return false;
    out = image;
    return true;
}

// Certify one simple root of p near `approx`; shrink to radius <= target_rad.
inline bool certify_simple_root(const QiPolynomial& p, const QiPolynomial& dp,
                                Cplx approx, double target_rad, ComplexBall& out) {
    // polish with plain Newton first
    std::vector<Cplx> pc, dc;
    for (const auto& a : p.coeffs()) pc.emplace_back(to_real(a.re), to_real(a.im));
    for (const auto& a : dp.coeffs()) dc.emplace_back(to_real(a.re), to_real(a.im));
    for (int it = 0; it < 64; ++it) {
        Cplx num = eval_cplx(pc, approx);
        Cplx den = eval_cplx(dc, approx);
        if (den.abs2_d() == 0.0) break;
        Cplx corr = num / den;
        approx = approx - corr;
        if (corr.abs2_d() < std::pow(target_rad, 2) * 1e-12) break;
    }

    double r_try = target_rad * 0.5;
    ComplexBall ball;
    bool ok = false;
    for (int shrink = 0; shrink < 8 && !ok; ++shrink, r_try *= 0.125)
        ok = newton_contract(p, dp, approx, r_try, ball);
    if (!ok) return false;
    // a couple of extra contractions sharpen the certified radius
    for (int it = 0; it < 3 && ball.rad > 0; ++it) {
        Cplx c(ball.re, ball.im);
        ComplexBall better;
        if (newton_contract(p, dp, c, ball.rad, better) && better.rad < ball.rad)
            ball = better;
        else
            break;
    }
    if (ball.rad > target_rad) return false;
    out = ball;
    return true;
}

// All roots of a squarefree polynomial, certified. Returns false if the
// Aberth/certification pipeline fails at the current working precision.
inline bool roots_squarefree(const QiPolynomial& f, double target_rad,
                             std::vector<ComplexBall>& out) {
    const long d = f.degree();
    out.clear();
    if (d == 1) {
        GaussianRational root = -(f.coeff(0) / f.coeff(1));
        out.push_back(ComplexBall::from_exact(root));
        return true;
    }

    std::vector<Cplx> pc;
    for (const auto& a : f.coeffs()) pc.emplace_back(to_real(a.re), to_real(a.im));

    // Cauchy bound for the initial circle
    double lead = std::sqrt(pc.back().abs2_d());
    double cb = 0.0;
    for (long k = 0; k < d; ++k)
        cb = std::max(cb, std::sqrt(pc[static_cast<std::size_t>(k)].abs2_d()) / lead);
    double r0 = 1.0 + cb;

    real_t pi = mp_pi();
    std::vector<Cplx> x;
    for (long j = 0; j < d; ++j) {
        real_t theta = 2 * pi * (real_t(j) / d) + real_t(0.7) / d + real_t("0.39");
        real_t cs, sn;
        mpfr_cos(cs.backend().data(), theta.backend().data(), MPFR_RNDN);
        mpfr_sin(sn.backend().data(), theta.backend().data(), MPFR_RNDN);
        x.emplace_back(real_t(r0 * 0.75) * cs, real_t(r0 * 0.75) * sn);
    }

    QiPolynomial df = f.derivative();
    std::vector<Cplx> dc;
    for (const auto& a : df.coeffs()) dc.emplace_back(to_real(a.re), to_real(a.im));

    const double tol2 = std::pow(target_rad * 1e-4, 2);
    bool converged = false;
    for (int it = 0; it < 400 && !converged; ++it) {
        double worst = 0.0;
        for (long j = 0; j < d; ++j) {
            Cplx& xj = x[static_cast<std::size_t>(j)];
            Cplx pv = eval_cplx(pc, xj);
            Cplx dv = eval_cplx(dc, xj);
            if (dv.abs2_d() == 0.0) {
                xj.re += real_t(1e-3) * (j + 1);
                worst = 1e9;
                continue;
            }
            Cplx newton = pv / dv;
            Cplx s;
            for (long k = 0; k < d; ++k) {
                if (k == j) continue;
                Cplx diff = xj - x[static_cast<std::size_t>(k)];
                if (diff.abs2_d() == 0.0) diff.re += real_t(1e-6) * (k + 1);
                s = s + Cplx(real_t(1), real_t(0)) / diff;
            }
            Cplx denom = Cplx(real_t(1), real_t(0)) - newton * s;
            Cplx w = denom.abs2_d() == 0.0 ? newton : newton / denom;
            xj = xj - w;
            worst = std::max(worst, w.abs2_d());
        }
        converged = worst < tol2;
    }
    if (!converged) return false;

    for (long j = 0; j < d; ++j) {
        ComplexBall ball;
        if (!certify_simple_root(f, df, x[static_cast<std::size_t>(j)], target_rad, ball))
            return false;
        out.push_back(ball);
    }
    // the certified disks must be pairwise disjoint, else two approximations
    // collapsed onto one root
    for (std::size_t a = 0; a < out.size(); ++a)
        for (std::size_t b = a + 1; b < out.size(); ++b) {
            double dre = static_cast<double>(real_t(out[a].re - out[b].re));
            double dim = static_cast<double>(real_t(out[a].im - out[b].im));
            if (std::hypot(dre, dim) <= out[a].rad + out[b].rad) return false;
        }
    return true;
}

} // namespace detail

// Certified isolation of all complex roots. Exact multiplicities come from
// squarefree decomposition; each returned ball contains exactly one distinct
// root, with radius <= 2^(-precision_bits/2).
inline std::vector<RootBall> complex_roots(const QiPolynomial& p, unsigned precision_bits) {
    if (p.is_zero() || p.degree() < 1)
        throw err::precondition("complex_roots: need a nonconstant polynomial");
    if (precision_bits < 16) precision_bits = 16;

    auto factors = squarefree_decomposition(p);
    const double target_rad = std::ldexp(1.0, -static_cast<int>(precision_bits / 2));

    unsigned wp = precision_bits + 96 + 8u * static_cast<unsigned>(p.degree());
    for (int attempt = 0; attempt < 4; ++attempt, wp *= 2) {
        PrecisionGuard guard(wp);
        std::vector<RootBall> result;
        bool ok = true;
        for (const auto& sf : factors) {
            std::vector<ComplexBall> balls;
            if (!detail::roots_squarefree(sf.factor, target_rad, balls)) {
                ok = false;
                break;
            }
            for (auto& b : balls) result.push_back({b, sf.multiplicity});
        }
        if (ok) {
            long total = 0;
            for (const auto& r : result) total += r.multiplicity;
            if (total == p.degree()) return result;
        }
    }
    throw err::precision_exhausted("complex_roots: certification failed; retry with higher precision");
}

// Certify the unique root of p inside/near a given approximation. Used when
// the caller already knows where the root is (e.g. principal m-th roots).
inline ComplexBall certify_root_near(const QiPolynomial& p, const ComplexBall& approx,
                                     unsigned precision_bits) {
    const double target_rad = std::ldexp(1.0, -static_cast<int>(precision_bits / 2));
    unsigned wp = precision_bits + 96 + 8u * static_cast<unsigned>(std::max(1L, p.degree()));
    QiPolynomial dp = p.derivative();
    for (int attempt = 0; attempt < 4; ++attempt, wp *= 2) {
        PrecisionGuard guard(wp);
        detail::Cplx c(approx.re, approx.im);
        ComplexBall ball;
        if (detail::certify_simple_root(p, dp, c, target_rad, ball)) return ball;
    }
    throw err::precision_exhausted("certify_root_near: interval Newton failed to contract");
}

} // namespace gfun

#endif
