#ifndef GFUN_SERIES_HPP
#define GFUN_SERIES_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gfun/ball.hpp"
#include "gfun/rational.hpp"

namespace gfun {

// Truncated power series over Q(i). Coefficient of z^n sits at index n;
// the stored length is always order+1. `radius_hint` is a claimed lower
// bound on the radius of convergence of the full series this truncation
// came from; it is metadata, never used to alter coefficients.
struct GSeries {
    std::vector<GaussianRational> coeffs;
    std::optional<double> radius_hint;
    std::string center_label = "z";

    GSeries() : coeffs(1) {}
    explicit GSeries(std::size_t order) : coeffs(order + 1) {}
    explicit GSeries(std::vector<GaussianRational> c) : coeffs(std::move(c)) {
        if (coeffs.empty()) coeffs.resize(1);
    }

    std::size_t order() const { return coeffs.size() - 1; }
    const GaussianRational& operator[](std::size_t n) const { return coeffs[n]; }
    GaussianRational& operator[](std::size_t n) { return coeffs[n]; }

    bool is_zero() const {
        for (const auto& c : coeffs)
            if (!c.is_zero()) return false;
        return true;
    }

    static GSeries one(std::size_t order) {
        GSeries s(order);
        s.coeffs[0] = GaussianRational(1);
        return s;
    }
    // sum of z^n up to the truncation order (the geometric series)
    static GSeries geometric(std::size_t order) {
        GSeries s(order);
        for (auto& c : s.coeffs) c = GaussianRational(1);
        s.radius_hint = 1.0;
        return s;
    }
    static GSeries monomial(std::size_t n, std::size_t order,
                            const GaussianRational& a = GaussianRational(1)) {
        GSeries s(order);
        if (n <= order) s.coeffs[n] = a;
        return s;
    }
};

inline std::size_t result_order(const GSeries& f, const GSeries& g) {
    return std::min(f.order(), g.order());
}

inline std::optional<double> min_hint(const GSeries& f, const GSeries& g) {
    if (f.radius_hint && g.radius_hint) return std::min(*f.radius_hint, *g.radius_hint);
    return std::nullopt;
}

inline GSeries add(const GSeries& f, const GSeries& g) {
    GSeries r(result_order(f, g));
    for (std::size_t n = 0; n < r.coeffs.size(); ++n) r.coeffs[n] = f[n] + g[n];
    r.radius_hint = min_hint(f, g);
    r.center_label = f.center_label;
    return r;
}

inline GSeries sub(const GSeries& f, const GSeries& g) {
    GSeries r(result_order(f, g));
    for (std::size_t n = 0; n < r.coeffs.size(); ++n) r.coeffs[n] = f[n] - g[n];
    r.radius_hint = min_hint(f, g);
    r.center_label = f.center_label;
    return r;
}

namespace detail {

// Gaussian-integer view of a series over one common denominator. Turning the
// Cauchy product into an integer convolution avoids the per-term mpq gcd
// churn that dominates on coefficient towers like the Phi_u series.
struct ScaledSeries {
    std::vector<Integer> re, im;
    Integer den{1};
};

inline ScaledSeries scale_to_integers(const GSeries& f, std::size_t upto) {
    ScaledSeries s;
    s.re.resize(upto + 1);
    s.im.resize(upto + 1);
    for (std::size_t n = 0; n <= upto; ++n)
        mpz_lcm(s.den.get_mpz_t(), s.den.get_mpz_t(),
                denominator_lcm(f[n]).get_mpz_t());
    Integer t;
    for (std::size_t n = 0; n <= upto; ++n) {
        mpz_divexact(t.get_mpz_t(), s.den.get_mpz_t(), f[n].re.get_den().get_mpz_t());
        s.re[n] = f[n].re.get_num() * t;
        mpz_divexact(t.get_mpz_t(), s.den.get_mpz_t(), f[n].im.get_den().get_mpz_t());
        s.im[n] = f[n].im.get_num() * t;
    }
    return s;
}

} // namespace detail

// Cauchy product truncated to the smaller input order.
inline GSeries mul(const GSeries& f, const GSeries& g) {
    const std::size_t N = result_order(f, g);
    GSeries r(N);
    detail::ScaledSeries F = detail::scale_to_integers(f, N);
    detail::ScaledSeries G = detail::scale_to_integers(g, N);
    Integer den = F.den * G.den;
    Integer are, aim;
    for (std::size_t n = 0; n <= N; ++n) {
        are = 0;
        aim = 0;
        for (std::size_t k = 0; k <= n; ++k) {
            mpz_addmul(are.get_mpz_t(), F.re[k].get_mpz_t(), G.re[n - k].get_mpz_t());
            mpz_submul(are.get_mpz_t(), F.im[k].get_mpz_t(), G.im[n - k].get_mpz_t());
            mpz_addmul(aim.get_mpz_t(), F.re[k].get_mpz_t(), G.im[n - k].get_mpz_t());
            mpz_addmul(aim.get_mpz_t(), F.im[k].get_mpz_t(), G.re[n - k].get_mpz_t());
        }
        r.coeffs[n] = GaussianRational(Rational(are, den), Rational(aim, den));
    }
    r.radius_hint = min_hint(f, g);
    r.center_label = f.center_label;
    return r;
}

inline GSeries scalar_mul(const GaussianRational& s, const GSeries& f) {
    GSeries r = f;
    for (auto& c : r.coeffs) c = s * c;
    return r;
}

inline GSeries hadamard(const GSeries& f, const GSeries& g) {
    GSeries r(result_order(f, g));
    for (std::size_t n = 0; n < r.coeffs.size(); ++n) r.coeffs[n] = f[n] * g[n];
    if (f.radius_hint && g.radius_hint) r.radius_hint = *f.radius_hint * *g.radius_hint;
    r.center_label = f.center_label;
    return r;
}

inline GSeries conjugate(const GSeries& f) {
    GSeries r = f;
    for (auto& c : r.coeffs) c = c.conj();
    return r;
}

// Termwise n a_n z^(n-1); drops the order by one.
inline GSeries differentiate(const GSeries& f) {
    if (f.order() == 0) return GSeries(0);
    GSeries r(f.order() - 1);
    for (std::size_t n = 1; n < f.coeffs.size(); ++n)
        r.coeffs[n - 1] = GaussianRational(Rational(static_cast<long>(n))) * f[n];
    r.radius_hint = f.radius_hint;
    r.center_label = f.center_label;
    return r;
}

// Termwise a_n z^(n+1)/(n+1), zero constant term; raises the order by one.
inline GSeries antiderivative(const GSeries& f) {
    GSeries r(f.order() + 1);
    for (std::size_t n = 0; n < f.coeffs.size(); ++n)
        r.coeffs[n + 1] = f[n] / GaussianRational(Rational(static_cast<long>(n + 1)));
    r.radius_hint = f.radius_hint;
    r.center_label = f.center_label;
    return r;
}

// Truncated quotient; requires g(0) != 0.
inline GSeries divide(const GSeries& f, const GSeries& g) {
    if (g[0].is_zero())
        throw err::division_by_non_unit("series division by a non-unit (zero constant term)");
    GSeries r(result_order(f, g));
    for (std::size_t n = 0; n < r.coeffs.size(); ++n) {
        GaussianRational acc = f[n];
        for (std::size_t k = 0; k < n; ++k) acc -= r.coeffs[k] * g[n - k];
        r.coeffs[n] = acc / g[0];
    }
    r.center_label = f.center_label;
    return r;
}

// Given h in the variable w (standing for g(z) = h(zeta - z)), substitutes the
// affine map that turns evaluation at z = 1 into evaluation of g at z0:
// result_n = h_n (zeta - z0)^n. The radius hint scales by 1/|zeta - z0|.
inline GSeries affine_compose(const GSeries& h, const GaussianRational& zeta,
                              const GaussianRational& z0) {
    GSeries r(h.order());
    GaussianRational step = zeta - z0;
    GaussianRational p(1);
    for (std::size_t n = 0; n < h.coeffs.size(); ++n) {
        r.coeffs[n] = h[n] * p;
        p *= step;
    }
    if (step.is_zero())
        r.radius_hint = std::numeric_limits<double>::infinity();
    else if (h.radius_hint)
        r.radius_hint = *h.radius_hint / step.modulus_double();
    r.center_label = "z";
    return r;
}

namespace detail {

// Geometric tail bound seeded from the largest of the last few stored terms.
// Sound whenever |a_n z^n| <= B * ratio^(n-N) for n > N, with B the window
// maximum; the window tolerates interleaved zero coefficients (odd/even series).
inline double geometric_tail(const std::vector<double>& term_abs, double ratio) {
    if (!(ratio > 0.0 && ratio < 1.0))
        throw err::precondition("tail_ratio must lie in (0,1)");
    const std::size_t N = term_abs.size() - 1;
    const std::size_t window = std::min<std::size_t>(2, term_abs.size());
    double base = 0.0;
    double scale = 1.0;
    for (std::size_t j = 0; j < window; ++j) {
        base = std::max(base, term_abs[N - j] * scale);
        scale /= ratio;
    }
    return up(base * ratio / (1.0 - ratio));
}

} // namespace detail

// Ball sum of the truncation at z, plus a geometric bound on the discarded
// tail. If tail_ratio is not supplied it is derived as |z| / radius_hint.
inline ComplexBall evaluate(const GSeries& f, const ComplexBall& z,
                            std::optional<double> tail_ratio = std::nullopt) {
    double ratio;
    if (tail_ratio) {
        ratio = *tail_ratio;
    } else {
        if (!f.radius_hint)
            throw err::tail_unbounded("evaluate: no radius_hint and no tail_ratio");
        ratio = z.abs_upper() / *f.radius_hint;
        if (!(ratio < 1.0))
            throw err::tail_unbounded("evaluate: |z| not strictly below radius_hint");
        if (ratio <= 0.0) ratio = 1e-300;
    }

    ComplexBall acc;
    std::vector<double> term_abs(f.coeffs.size());
    // Horner for the sum; term magnitudes tracked separately for the tail seed
    for (std::size_t k = f.coeffs.size(); k-- > 0;)
        acc = acc * z + ComplexBall::from_exact(f.coeffs[k]);
    double zu = z.abs_upper();
    double lzu = std::log(zu); // -inf when z = 0, which zeroes every k > 0 term
    for (std::size_t k = 0; k < f.coeffs.size(); ++k) {
        double lm = f.coeffs[k].log_modulus();
        double lt = (k == 0) ? lm : lm + static_cast<double>(k) * lzu;
        term_abs[k] = std::isnan(lt) ? 0.0 : std::exp(lt);
    }
    return acc.inflated(detail::geometric_tail(term_abs, ratio));
}

inline ComplexBall evaluate(const GSeries& f, const GaussianRational& z,
                            std::optional<double> tail_ratio = std::nullopt) {
    return evaluate(f, ComplexBall::from_exact(z), tail_ratio);
}

// Partial sum only: no tail bound is added. For boundary-point experiments.
inline ComplexBall evaluate_partial(const GSeries& f, const ComplexBall& z) {
    ComplexBall acc;
    for (std::size_t k = f.coeffs.size(); k-- > 0;)
        acc = acc * z + ComplexBall::from_exact(f.coeffs[k]);
    return acc;
}

namespace detail {

inline double regression_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        sx += xs[k];
        sy += ys[k];
        sxx += xs[k] * xs[k];
        sxy += xs[k] * ys[k];
    }
    double denom = n * sxx - sx * sx;
    if (denom == 0.0) return 0.0;
    return (n * sxy - sx * sy) / denom;
}

} // namespace detail

// Empirical Cauchy-Hadamard radius: exp(-slope) of a regression of log|a_n|
// over the top half of the stored coefficients, zeros skipped. Heuristic;
// +infinity when the whole top half vanishes (polynomial case).
inline double radius_estimate(const GSeries& f) {
    if (f.order() < 32)
        throw err::precondition("radius_estimate: order must be >= 32");
    std::vector<double> xs, ys;
    for (std::size_t n = f.order() / 2; n <= f.order(); ++n) {
        if (f[n].is_zero()) continue;
        xs.push_back(static_cast<double>(n));
        ys.push_back(f[n].log_modulus());
    }
    if (xs.size() < 2) return std::numeric_limits<double>::infinity();
    return std::exp(-detail::regression_slope(xs, ys));
}

// Debug validation of the radius_hint invariant: the empirical estimate must
// not contradict a present hint by more than a factor-2 slack either way.
inline bool radius_hint_consistent(const GSeries& f) {
    if (!f.radius_hint || f.order() < 32) return true;
    double est = radius_estimate(f);
    if (std::isinf(est)) return true;
    return est > *f.radius_hint * 0.5;
}

} // namespace gfun

#endif
