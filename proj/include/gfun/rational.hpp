#ifndef GFUN_RATIONAL_HPP
#define GFUN_RATIONAL_HPP

#include <cmath>
#include <cstdint>
#include <gmpxx.h>
#include <limits>
#include <string>
#include <utility>

#include "gfun/errors.hpp"

namespace gfun {

using Integer  = mpz_class;
using Rational = mpq_class; // always canonical: lowest terms, positive denominator

inline Rational make_rational(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational rational_from_strings(const std::string& num, const std::string& den) {
    Integer n(num), d(den);
    if (d == 0) throw err::schema("rational with zero denominator");
    Rational q(n, d);
    q.canonicalize();
    return q;
}

// log|q| for arbitrarily large rationals, without overflow.
inline double log_abs(const Rational& q) {
    if (q == 0) return -std::numeric_limits<double>::infinity();
    signed long en = 0, ed = 0;
    double mn = mpz_get_d_2exp(&en, q.get_num().get_mpz_t());
    double md = mpz_get_d_2exp(&ed, q.get_den().get_mpz_t());
    return std::log(std::fabs(mn)) - std::log(std::fabs(md)) +
           (double(en) - double(ed)) * std::log(2.0);
}

// An element of Q(i). GMP keeps both parts in lowest terms with positive
// denominators, so the representation is canonical and equality is exact.
struct GaussianRational {
    Rational re;
    Rational im;

    GaussianRational() : re(0), im(0) {}
    GaussianRational(long r) : re(r), im(0) {}
    GaussianRational(const Rational& r) : re(r), im(0) { re.canonicalize(); }
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {
        // mpq_class construction from an integer pair does not reduce; GMP
        // arithmetic silently assumes canonical operands
        re.canonicalize();
        im.canonicalize();
    }

    static GaussianRational i_unit() { return GaussianRational(Rational(0), Rational(1)); }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    GaussianRational conj() const { return GaussianRational(re, -im); }

    // re^2 + im^2, the field norm down to Q.
    Rational norm() const { return re * re + im * im; }

    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return GaussianRational(a.re + b.re, a.im + b.im);
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return GaussianRational(a.re - b.re, a.im - b.im);
    }
    friend GaussianRational operator-(const GaussianRational& a) {
        return GaussianRational(-a.re, -a.im);
    }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return GaussianRational(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
    }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
        if (b.is_zero()) throw err::division_by_non_unit("division by zero in Q(i)");
        Rational n = b.norm();
        return GaussianRational((a.re * b.re + a.im * b.im) / n,
                                (a.im * b.re - a.re * b.im) / n);
    }
    GaussianRational& operator+=(const GaussianRational& o) { return *this = *this + o; }
    GaussianRational& operator-=(const GaussianRational& o) { return *this = *this - o; }
    GaussianRational& operator*=(const GaussianRational& o) { return *this = *this * o; }
    GaussianRational& operator/=(const GaussianRational& o) { return *this = *this / o; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) {
        return !(a == b);
    }

    double log_modulus() const {
        if (is_zero()) return -std::numeric_limits<double>::infinity();
        return 0.5 * log_abs(norm());
    }
    double modulus_double() const {
        return std::sqrt(norm().get_d());
    }

    std::string str() const {
        std::string s = re.get_str();
        if (im != 0) {
            s += (im > 0 ? " + " : " - ");
            Rational a = abs(im);
            s += a.get_str() + "*i";
        }
        return s;
    }
};

// lcm of the two part denominators; the natural common denominator of a
// Gaussian rational for integrality purposes.
inline Integer denominator_lcm(const GaussianRational& x) {
    Integer l;
    mpz_lcm(l.get_mpz_t(), x.re.get_den().get_mpz_t(), x.im.get_den().get_mpz_t());
    return l;
}

inline GaussianRational pow(const GaussianRational& x, unsigned long e) {
    GaussianRational acc(1), base = x;
    while (e) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

} // namespace gfun

#endif
