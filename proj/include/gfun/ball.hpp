#ifndef GFUN_BALL_HPP
#define GFUN_BALL_HPP

#include <boost/multiprecision/mpfr.hpp>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "gfun/rational.hpp"

namespace gfun {

// Arbitrary-precision real, variable precision (MPFR-backed).
using real_t = boost::multiprecision::mpfr_float;

// Working precision for ball centers. Radii are tracked in double with
// conservative headroom, which is ample down to ~1e-280; the precision
// targets in this project stay far above that.
inline unsigned& working_precision_bits() {
    static unsigned bits = [] {
        // keep the mpfr default precision in sync from first use, so radius
        // bookkeeping never claims more precision than the centers carry
        real_t::default_precision(static_cast<unsigned>(256 * 0.30103) + 4);
        return 256u;
    }();
    return bits;
}

inline void set_working_precision_bits(unsigned bits) {
    if (bits < 64) bits = 64;
    working_precision_bits() = bits;
    // digits10 such that the mantissa carries at least `bits` bits
    real_t::default_precision(static_cast<unsigned>(bits * 0.30103) + 4);
}

struct PrecisionGuard {
    explicit PrecisionGuard(unsigned bits)
        : saved_bits_(working_precision_bits()), saved_digits_(real_t::default_precision()) {
        set_working_precision_bits(bits);
    }
    ~PrecisionGuard() {
        working_precision_bits() = saved_bits_;
        real_t::default_precision(saved_digits_);
    }
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;

private:
    unsigned saved_bits_;
    unsigned saved_digits_;
};

namespace detail {

// Per-operation rounding slop: centers are computed round-to-nearest at the
// working precision, so each op contributes at most |result| * 2^(1-prec).
inline double rounding_eps() {
    return std::ldexp(1.0, -static_cast<int>(working_precision_bits()) + 1);
}

// Multiplicative headroom applied to every radius combination so that the
// double-precision radius bookkeeping itself stays conservative.
constexpr double kRadiusSlack = 1.0 + 16.0 * std::numeric_limits<double>::epsilon();

inline double up(double x) { return x * kRadiusSlack; }

inline real_t to_real(const Rational& q) {
    real_t x;
    mpfr_set_q(x.backend().data(), q.get_mpq_t(), MPFR_RNDN);
    return x;
}

inline real_t to_real(const Integer& z) {
    real_t x;
    mpfr_set_z(x.backend().data(), z.get_mpz_t(), MPFR_RNDN);
    return x;
}

inline real_t mp_pi() {
    real_t x;
    mpfr_const_pi(x.backend().data(), MPFR_RNDN);
    return x;
}

inline real_t mp_gamma(const real_t& x) {
    real_t y;
    mpfr_gamma(y.backend().data(), x.backend().data(), MPFR_RNDN);
    return y;
}

inline Rational round_to_denominator(const real_t& x, long den) {
    real_t scaled = x * den;
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), scaled.backend().data(), MPFR_RNDN);
    Rational q(z, den);
    q.canonicalize();
    return q;
}

} // namespace detail

// Complex ball: exact value certified to lie within `rad` of the center.
// All operations enlarge `rad` conservatively (radius formula plus a
// rounding-slop term for the to-nearest center arithmetic).
struct ComplexBall {
    real_t re;
    real_t im;
    double rad = 0.0;

    ComplexBall() : re(0), im(0) {}
    ComplexBall(real_t r, real_t i, double radius = 0.0)
        : re(std::move(r)), im(std::move(i)), rad(radius) {}
    explicit ComplexBall(double x) : re(x), im(0) {}

    // Exact rational input: center rounded once, radius covers the rounding.
    static ComplexBall from_exact(const GaussianRational& x) {
        ComplexBall b(detail::to_real(x.re), detail::to_real(x.im));
        b.rad = detail::up(b.abs_upper_center() * detail::rounding_eps());
        return b;
    }
    static ComplexBall from_real(const real_t& x, double radius = 0.0) {
        return ComplexBall(x, real_t(0), radius);
    }

    bool is_exact_zero() const { return re == 0 && im == 0 && rad == 0.0; }

    double abs_upper_center() const {
        double a = std::fabs(static_cast<double>(re));
        double b = std::fabs(static_cast<double>(im));
        double h = std::hypot(a, b);
        if (!std::isfinite(h)) return std::numeric_limits<double>::max();
        return detail::up(h);
    }
    // |center| as a double rounded up / any value in the ball bounded above
    double abs_upper() const { return detail::up(abs_upper_center() + rad); }
    // lower bound on |any value in the ball| (0 if the ball straddles 0)
    double abs_lower() const {
        double c = abs_center_lower();
        double l = c - rad;
        return l > 0 ? l / detail::kRadiusSlack : 0.0;
    }
    double abs_center_lower() const {
        double a = std::fabs(static_cast<double>(re));
        double b = std::fabs(static_cast<double>(im));
        double h = std::hypot(a, b);
        // center conversion to double is within 1 ulp; shave generously
        return h > 0 ? h * (1.0 - 1e-14) : 0.0;
    }
    real_t abs_center_mp() const {
        real_t s = re * re + im * im;
        return sqrt(s);
    }

    bool contains_zero() const { return abs_center_lower() <= rad * detail::kRadiusSlack; }

    bool contains(const ComplexBall& inner) const {
        double dre = static_cast<double>(real_t(inner.re - re));
        double dim = static_cast<double>(real_t(inner.im - im));
        double d = detail::up(std::hypot(dre, dim));
        return d + inner.rad <= rad;
    }

    ComplexBall conj() const { return ComplexBall(re, -im, rad); }

    friend ComplexBall operator+(const ComplexBall& a, const ComplexBall& b) {
        ComplexBall r(a.re + b.re, a.im + b.im);
        r.rad = detail::up(a.rad + b.rad + r.abs_upper_center() * detail::rounding_eps());
        return r;
    }
    friend ComplexBall operator-(const ComplexBall& a, const ComplexBall& b) {
        ComplexBall r(a.re - b.re, a.im - b.im);
        r.rad = detail::up(a.rad + b.rad + r.abs_upper_center() * detail::rounding_eps());
        return r;
    }
    friend ComplexBall operator-(const ComplexBall& a) {
        return ComplexBall(-a.re, -a.im, a.rad);
    }
    friend ComplexBall operator*(const ComplexBall& a, const ComplexBall& b) {
        ComplexBall r(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
        double am = a.abs_upper_center(), bm = b.abs_upper_center();
        // am*bm bounds the intermediate products, so this stays sound even
        // when the two halves of a component nearly cancel.
        r.rad = detail::up(am * b.rad + bm * a.rad + a.rad * b.rad +
                           am * bm * detail::rounding_eps() * 4.0);
        return r;
    }
    friend ComplexBall operator/(const ComplexBall& a, const ComplexBall& b) {
        double bl = b.abs_lower();
        if (bl <= 0.0)
            throw err::division_by_non_unit("ball division: divisor ball contains zero");
        real_t n = b.re * b.re + b.im * b.im;
        ComplexBall r((a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n);
        double am = a.abs_upper_center(), bm = b.abs_center_lower();
        // |a/b - c_a/c_b| <= (r_a |c_b| + r_b |c_a|) / (|c_b| (|c_b| - r_b))
        r.rad = detail::up((a.rad * bm + b.rad * am) / (bm * bl) +
                           (am / bm + 1.0) * detail::rounding_eps() * 8.0);
        return r;
    }

    ComplexBall& operator+=(const ComplexBall& o) { return *this = *this + o; }
    ComplexBall& operator-=(const ComplexBall& o) { return *this = *this - o; }
    ComplexBall& operator*=(const ComplexBall& o) { return *this = *this * o; }

    // Widen the radius (never shrink).
    ComplexBall inflated(double extra) const {
        return ComplexBall(re, im, detail::up(rad + extra));
    }

    std::string str(unsigned digits = 20) const {
        std::string s = re.str(digits);
        if (im != 0) s += " + " + im.str(digits) + "*i";
        s += " +/- " + std::to_string(rad);
        return s;
    }
};

inline ComplexBall ball_from_double(double re, double im = 0.0) {
    return ComplexBall(real_t(re), real_t(im));
}

// Principal square root. Requires the ball to exclude zero.
inline ComplexBall ball_sqrt(const ComplexBall& z) {
    double lo = z.abs_lower();
    if (lo <= 0.0) throw err::precondition("ball_sqrt: ball contains zero");
    // principal sqrt of the center
    real_t m = z.abs_center_mp();
    real_t sr, si;
    if (z.im == 0 && z.re > 0) {
        sr = sqrt(z.re);
        si = 0;
    } else {
        // sqrt((m + re)/2), sign(im) * sqrt((m - re)/2)
        sr = sqrt((m + z.re) / 2);
        si = sqrt((m - z.re) / 2);
        if (z.im < 0) si = -si;
    }
    ComplexBall r(sr, si);
    // |sqrt(z) - sqrt(c)| = |z - c| / |sqrt(z) + sqrt(c)| <= rad / (sqrt(lo) + sqrt(|c|)-rad')
    double denom = std::sqrt(lo) + std::sqrt(z.abs_center_lower());
    r.rad = detail::up(z.rad / denom + r.abs_upper_center() * detail::rounding_eps() * 4.0);
    return r;
}

// Principal log. The ball must exclude zero; balls straddling the cut
// (-inf, 0) are rejected, except when the center sits exactly on the
// negative real axis, where the boundary determination from above (arg = pi)
// is taken.
inline ComplexBall ball_log(const ComplexBall& z) {
    double lo = z.abs_lower();
    if (lo <= 0.0) throw err::precondition("ball_log: ball contains zero");
    bool center_on_axis = (z.im == 0);
    if (!center_on_axis && z.re < 0 && std::fabs(static_cast<double>(z.im)) <= z.rad)
        throw err::branch_cut("ball_log: ball straddles the principal cut");
    real_t m = z.abs_center_mp();
    real_t lre = log(m);
    real_t lim;
    if (center_on_axis && z.re < 0) {
        lim = detail::mp_pi();
    } else {
        mpfr_atan2(lim.backend().data(), z.im.backend().data(), z.re.backend().data(),
                   MPFR_RNDN);
    }
    ComplexBall r(lre, lim);
    // |log z - log c| <= |z - c| / min|.| on the segment
    r.rad = detail::up(z.rad / lo + (std::fabs(static_cast<double>(lre)) + 4.0) *
                                        detail::rounding_eps() * 4.0);
    return r;
}

// exp of a ball via |exp' | <= exp(|z|+r) bound on the derivative.
inline ComplexBall ball_exp(const ComplexBall& z) {
    real_t er;
    mpfr_exp(er.backend().data(), z.re.backend().data(), MPFR_RNDN);
    real_t c, s;
    mpfr_cos(c.backend().data(), z.im.backend().data(), MPFR_RNDN);
    mpfr_sin(s.backend().data(), z.im.backend().data(), MPFR_RNDN);
    ComplexBall r(er * c, er * s);
    double mag = detail::up(static_cast<double>(er));
    // |exp(z) - exp(c)| <= rad * max|exp| on the segment <= rad * e^(Re c + rad)
    r.rad = detail::up(mag * z.rad * std::exp(z.rad) + mag * detail::rounding_eps() * 8.0);
    return r;
}

namespace detail {

// Determinant of a small ball matrix by Laplace expansion; adequate for the
// Wronskian/Vandermonde orders used here.
inline ComplexBall ball_det(std::vector<std::vector<ComplexBall>> m) {
    const std::size_t n = m.size();
    if (n == 1) return m[0][0];
    if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
    ComplexBall acc;
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::vector<ComplexBall>> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<ComplexBall> row;
            for (std::size_t c = 0; c < n; ++c)
                if (c != j) row.push_back(m[r][c]);
            minor.push_back(std::move(row));
        }
        ComplexBall term = m[0][j] * ball_det(minor);
        if (j % 2 == 0)
            acc += term;
        else
            acc -= term;
    }
    return acc;
}

} // namespace detail

inline ComplexBall ball_pow_ui(ComplexBall base, unsigned long e) {
    ComplexBall acc = ComplexBall::from_exact(GaussianRational(1));
    while (e) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

// z^e for rational e, principal branch (via exp(e log z) unless e is a
// small integer, where repeated multiplication is exact-friendlier).
inline ComplexBall ball_pow_rational(const ComplexBall& z, const Rational& e) {
    if (e == 0) return ComplexBall::from_exact(GaussianRational(1));
    if (e.get_den() == 1 && abs(e.get_num()) < 64) {
        long n = mpz_get_si(e.get_num().get_mpz_t());
        ComplexBall p = ball_pow_ui(z, static_cast<unsigned long>(n < 0 ? -n : n));
        if (n < 0) return ComplexBall::from_exact(GaussianRational(1)) / p;
        return p;
    }
    ComplexBall l = ball_log(z);
    ComplexBall er = ComplexBall(detail::to_real(e), real_t(0), 0.0);
    return ball_exp(er * l);
}

} // namespace gfun

#endif
