#ifndef GFUN_ALG_ROOTS_HPP
#define GFUN_ALG_ROOTS_HPP

#include <cmath>
#include <optional>
#include <vector>

#include "gfun/polynomial.hpp"
#include "gfun/roots.hpp"
#include "gfun/series.hpp"

namespace gfun {

// Certified radius of convergence of an inverse-function series. `lower` is
// a certified lower bound (infinite for the degenerate polynomial cases);
// `exact` is set when the radius is an exact rational, e.g. when all
// critical points are rational and the critical value is real.
struct CertifiedRadius {
    double lower = 0.0;
    std::optional<Rational> exact;

    static CertifiedRadius infinite() {
        CertifiedRadius r;
        r.lower = std::numeric_limits<double>::infinity();
        return r;
    }
};

// The series Phi_u attached to (Q, u): constant term u, and
// Q(Phi_u(z)) = (1-z) Q(u) as an exact identity. Its value at z = 1 is the
// root of Q the witness u was chosen for.
struct RootSeries {
    QiPolynomial Q;
    GaussianRational u;
    GSeries phi;
    CertifiedRadius radius_exact;
    ComplexBall target_root;
};

namespace detail {

// Gaussian integer; arithmetic kept to the few in-place operations the
// Lagrange recurrence needs so everything stays gcd-free mpz work.
struct ZGauss {
    Integer re{0}, im{0};

    bool is_zero() const { return re == 0 && im == 0; }

    static ZGauss mul(const ZGauss& a, const ZGauss& b) {
        ZGauss r;
        r.re = a.re * b.re - a.im * b.im;
        r.im = a.re * b.im + a.im * b.re;
        return r;
    }
    // acc -= a * b
    static void submul(ZGauss& acc, const ZGauss& a, const ZGauss& b) {
        mpz_submul(acc.re.get_mpz_t(), a.re.get_mpz_t(), b.re.get_mpz_t());
        mpz_addmul(acc.re.get_mpz_t(), a.im.get_mpz_t(), b.im.get_mpz_t());
        mpz_submul(acc.im.get_mpz_t(), a.re.get_mpz_t(), b.im.get_mpz_t());
        mpz_submul(acc.im.get_mpz_t(), a.im.get_mpz_t(), b.re.get_mpz_t());
    }
    ZGauss conj() const {
        ZGauss r;
        r.re = re;
        r.im = -im;
        return r;
    }
    Integer norm() const { return re * re + im * im; }
};

// numerator pair of a Gaussian rational over one positive denominator
inline ZGauss scale_to_zgauss(const GaussianRational& x, const Integer& den) {
    ZGauss r;
    Integer t;
    mpz_divexact(t.get_mpz_t(), den.get_mpz_t(), x.re.get_den().get_mpz_t());
    r.re = x.re.get_num() * t;
    mpz_divexact(t.get_mpz_t(), den.get_mpz_t(), x.im.get_den().get_mpz_t());
    r.im = x.im.get_num() * t;
    return r;
}

} // namespace detail

// Coefficients phi_1..phi_N of Phi_u - u, by Lagrange inversion in the form
// phi_n = ((-Q(u))^n / n) [t^(n-1)] P(t)^(-n) with P(t) = (Q(t+u) - Q(u))/t.
// The running P^(-n) is updated by one polynomial division per step, so the
// whole run costs O(N^2 deg Q) exact operations. Internally the powers are
// carried as Gaussian-integer numerators over implicit powers of p_0 (the
// integerized Q'(u)), which keeps the inner loops free of rational gcds:
// with S = delta P and slot denominators p_0^(n+j), dividing by S is
//   b_j <- b_j - sum_k (p_k p_0^(k-1)) b_{j-k}.
inline std::vector<GaussianRational> lagrange_coefficients(const QiPolynomial& Q,
                                                           const GaussianRational& u,
                                                           std::size_t N) {
    using detail::ZGauss;
    QiPolynomial shifted = Q.shifted(u);
    GaussianRational Qu = shifted.coeff(0);
    GaussianRational Qpu = shifted.coeff(1);
    if (Qpu.is_zero())
        throw err::degenerate_witness("lagrange_coefficients: Q'(u) = 0");

    std::vector<GaussianRational> phi(N, GaussianRational(0));
    if (Qu.is_zero() || N == 0) return phi;

    // integerize P_k = coeff of t^(k+1) in Q(t+u): p_k = delta P_k
    const std::size_t d = static_cast<std::size_t>(shifted.degree());
    Integer delta(1);
    for (std::size_t k = 1; k <= d; ++k)
        mpz_lcm(delta.get_mpz_t(), delta.get_mpz_t(),
                denominator_lcm(shifted.coeff(k)).get_mpz_t());
    std::vector<ZGauss> p(d);
    for (std::size_t k = 1; k <= d; ++k)
        p[k - 1] = detail::scale_to_zgauss(shifted.coeff(k), delta);

    // q_k = p_k p_0^(k-1) for the gcd-free division recurrence
    std::vector<ZGauss> q(d);
    {
        ZGauss p0pow;
        p0pow.re = 1; // p_0^(k-1), so 1 at k = 1
        for (std::size_t k = 1; k < d; ++k) {
            if (k >= 2) p0pow = ZGauss::mul(p0pow, p[0]);
            q[k] = ZGauss::mul(p[k], p0pow);
        }
    }

    // and Q(u) = A / dA over its own denominator
    Integer dA = denominator_lcm(Qu);
    ZGauss A = detail::scale_to_zgauss(Qu, dA);

    // b_j = [t^j] S^(-n) * p_0^(n+j), starting at n = 1
    std::vector<ZGauss> b(N);
    b[0].re = 1;
    for (std::size_t j = 1; j < N; ++j) {
        ZGauss acc; // = -sum q_k b_{j-k}
        for (std::size_t k = 1; k <= std::min(j, d - 1); ++k)
            ZGauss::submul(acc, q[k], b[j - k]);
        b[j] = acc;
    }

    // running powers: (-A)^n, delta^n, dA^n, p_0^(2n-1)
    ZGauss mA = A;
    mA.re = -mA.re;
    mA.im = -mA.im;
    ZGauss mApow = mA;
    Integer delta_pow = delta, dA_pow = dA;
    ZGauss p0 = p[0];
    ZGauss p0pow = p0; // p_0^(2n-1)
    ZGauss p0sq = ZGauss::mul(p0, p0);

    for (std::size_t n = 1; n <= N; ++n) {
        // phi_n = (-A)^n delta^n b[n-1] / (dA^n n p_0^(2n-1))
        ZGauss num = ZGauss::mul(mApow, b[n - 1]);
        ZGauss den_c = p0pow;
        // divide by the complex part via the conjugate
        ZGauss num2 = ZGauss::mul(num, den_c.conj());
        Integer dnorm = den_c.norm() * dA_pow * Integer(static_cast<unsigned long>(n));
        Integer scale = delta_pow;
        phi[n - 1] = GaussianRational(Rational(num2.re * scale, dnorm),
                                      Rational(num2.im * scale, dnorm));
        if (n == N) break;

        // b <- b / S in place (front to back)
        for (std::size_t j = 0; j < N; ++j)
            for (std::size_t k = 1; k <= std::min(j, d - 1); ++k)
                ZGauss::submul(b[j], q[k], b[j - k]);

        mApow = ZGauss::mul(mApow, mA);
        delta_pow *= delta;
        dA_pow *= dA;
        p0pow = ZGauss::mul(p0pow, p0sq);
    }
    return phi;
}

inline GSeries phi_series(const QiPolynomial& Q, const GaussianRational& u, std::size_t N) {
    auto tail = lagrange_coefficients(Q, u, N);
    GSeries s(N);
    s.coeffs[0] = u;
    for (std::size_t n = 1; n <= N; ++n) s.coeffs[n] = tail[n - 1];
    return s;
}

// Exact radius of convergence of Phi_u: the singularities of the local
// inverse of z_u(t) = 1 - Q(t+u)/Q(u) sit at its critical values, so the
// radius is min |1 - Q(w)/Q(u)| over the critical points w of Q. Infinite
// when deg Q = 1 or Q(u) = 0 (Phi_u is then a polynomial).
inline CertifiedRadius certified_radius(const QiPolynomial& Q, const GaussianRational& u,
                                        unsigned precision_bits = 128) {
    GaussianRational Qu = Q.eval(u);
    GaussianRational Qpu = Q.derivative().eval(u);
    if (Qpu.is_zero()) throw err::degenerate_witness("certified_radius: Q'(u) = 0");
    if (Q.degree() <= 1 || Qu.is_zero()) return CertifiedRadius::infinite();

    QiPolynomial dQ = Q.derivative();
    CertifiedRadius best = CertifiedRadius::infinite();
    std::optional<Rational> best_exact_sq; // squared modulus of the best exact value

    // rational critical points (degree-1 squarefree factors) give exact values
    auto factors = squarefree_decomposition(dQ);
    std::vector<QiPolynomial> hard;
    for (const auto& sf : factors) {
        if (sf.factor.degree() == 1) {
            GaussianRational w = -(sf.factor.coeff(0) / sf.factor.coeff(1));
            GaussianRational val = GaussianRational(1) - Q.eval(w) / Qu;
            Rational n2 = val.norm();
            double lower = std::sqrt(n2.get_d());
            if (lower < best.lower) {
                best.lower = lower;
                best.exact.reset();
                // exact rational modulus when norm is a perfect square
                Rational num = n2.get_num(), den = n2.get_den();
                if (mpz_perfect_square_p(n2.get_num().get_mpz_t()) &&
                    mpz_perfect_square_p(n2.get_den().get_mpz_t())) {
                    Integer sn, sd;
                    mpz_sqrt(sn.get_mpz_t(), n2.get_num().get_mpz_t());
                    mpz_sqrt(sd.get_mpz_t(), n2.get_den().get_mpz_t());
                    Rational ex(sn, sd);
                    ex.canonicalize();
                    best.exact = ex;
                    best.lower = ex.get_d();
                }
            }
        } else {
            hard.push_back(sf.factor);
        }
    }
    ComplexBall Qu_ball = ComplexBall::from_exact(Qu);
    for (const auto& f : hard) {
        PrecisionGuard guard(precision_bits + 64);
        for (const auto& rb : complex_roots(f, precision_bits)) {
            ComplexBall val = ComplexBall::from_exact(GaussianRational(1)) -
                              eval_ball(Q, rb.ball) / Qu_ball;
            double lower = val.abs_lower();
            if (lower < best.lower) {
                best.lower = lower;
                best.exact.reset();
            }
        }
    }
    return best;
}

// Checks Q(phi(z)) = (1-z) Q(u) exactly through the truncation order.
inline bool verify_functional_equation(const RootSeries& rs) {
    const std::size_t N = rs.phi.order();
    GSeries horner(N);
    for (long k = rs.Q.degree(); k >= 0; --k) {
        horner = mul(horner, rs.phi);
        horner.coeffs[0] += rs.Q.coeff(static_cast<std::size_t>(k));
    }
    GaussianRational Qu = rs.Q.eval(rs.u);
    for (std::size_t n = 0; n <= N; ++n) {
        GaussianRational expect(0);
        if (n == 0) expect = Qu;
        if (n == 1) expect = -Qu;
        if (horner[n] != expect) return false;
    }
    return true;
}

namespace detail {

inline GaussianRational round_center_half_integer(const ComplexBall& b) {
    return GaussianRational(round_to_denominator(b.re, 2), round_to_denominator(b.im, 2));
}

} // namespace detail

namespace detail {

// Certified distance from alpha to the nearest *other* root of Q. Phi_u(1)
// is always a root of Q; landing within half this margin of alpha proves it
// is alpha itself.
inline double isolation_margin(const QiPolynomial& Q, const ComplexBall& alpha,
                               unsigned precision_bits) {
    if (Q.degree() == 1) return std::numeric_limits<double>::infinity();
    auto roots = complex_roots(Q, std::max(64u, precision_bits / 2));
    double sep = std::numeric_limits<double>::infinity();
    bool matched = false;
    for (const auto& r : roots) {
        double dre = static_cast<double>(real_t(r.ball.re - alpha.re));
        double dim = static_cast<double>(real_t(r.ball.im - alpha.im));
        double d = std::hypot(dre, dim);
        if (d <= (r.ball.rad + alpha.rad) * 1.0001 + 1e-300) {
            if (r.multiplicity > 1)
                throw err::precondition("build_root_series: alpha is not a simple root");
            matched = true;
            continue;
        }
        sep = std::min(sep, d - r.ball.rad - alpha.rad);
    }
    if (!matched)
        throw err::precondition("build_root_series: alpha does not match any root ball of Q");
    return sep;
}

} // namespace detail

// Constructs Phi_u for the root `alpha` with certified radius > R.
// Witness candidates: u = 0, then the half-integer rounding of the root ball
// center, then its exact rational Newton iterates u <- u - Q(u)/Q'(u)
// (for X^2-2 this walks 3/2, 17/12, 577/408, ...). A candidate is accepted
// when its certified radius exceeds R and the tail bound of Phi_u(1) confines
// the value within half the certified distance to any other root of Q.
inline RootSeries build_root_series(const QiPolynomial& Q, const ComplexBall& alpha,
                                    double R, std::size_t N,
                                    unsigned precision_bits = 256,
                                    bool skip_zero_witness = false) {
    if (R < 1.0) throw err::precondition("build_root_series: R must be >= 1");
    if (Q.degree() < 1) throw err::precondition("build_root_series: constant polynomial");
    PrecisionGuard guard(precision_bits + 64);

    QiPolynomial dQ = Q.derivative();
    double margin = detail::isolation_margin(Q, alpha, precision_bits);
    ComplexBall target = alpha.inflated(std::isinf(margin) ? 1.0 : margin / 2.0);

    std::string last_reason = "no candidate admissible";
    auto try_witness = [&](const GaussianRational& u) -> std::optional<RootSeries> {
        if (dQ.eval(u).is_zero()) return std::nullopt;
        CertifiedRadius rad = certified_radius(Q, u, precision_bits);
        if (!(rad.lower > R)) {
            last_reason = "certified radius below R";
            return std::nullopt;
        }
        GSeries phi = phi_series(Q, u, N);
        phi.radius_hint = rad.lower;
        double ratio = 1.0 / rad.lower;
        if (!(ratio > 0.0 && ratio < 1.0)) ratio = 0.5; // infinite radius: polynomial tail is empty
        ComplexBall value = evaluate(phi, GaussianRational(1), ratio);
        if (!target.contains(value)) {
            last_reason = "Phi_u(1) not confined to the isolation ball";
            return std::nullopt;
        }
        RootSeries rs;
        rs.Q = Q;
        rs.u = u;
        rs.phi = std::move(phi);
        rs.radius_exact = rad;
        rs.target_root = value;
        return rs;
    };

    std::vector<GaussianRational> candidates;
    if (!skip_zero_witness) candidates.push_back(GaussianRational(0));
    candidates.push_back(detail::round_center_half_integer(alpha));

    for (int step = 0; step < 24; ++step) {
        if (step >= static_cast<int>(candidates.size())) {
            // extend with the exact Newton iterate of the last candidate
            const GaussianRational& prev = candidates.back();
            GaussianRational dv = dQ.eval(prev);
            if (dv.is_zero()) break;
            candidates.push_back(prev - Q.eval(prev) / dv);
        }
        const GaussianRational& u = candidates[static_cast<std::size_t>(step)];

        // An iterate with an oversized denominator would make every exact
        // series coefficient gigantic; its dyadic roundings at increasing
        // precision are tried first, and usually one of them already clears R.
        if (mpz_sizeinbase(denominator_lcm(u).get_mpz_t(), 2) > 64) {
            real_t ure = detail::to_real(u.re), uim = detail::to_real(u.im);
            for (int k = 2; k <= 62; k += 2) {
                long den = 1L << k;
                GaussianRational rounded(detail::round_to_denominator(ure, den),
                                         detail::round_to_denominator(uim, den));
                if (auto rs = try_witness(rounded)) return *rs;
            }
        }
        if (auto rs = try_witness(u)) return *rs;
    }
    throw err::no_witness_found("build_root_series: " + last_reason +
                                " after exhausting the Newton candidate chain");
}

} // namespace gfun

#endif
