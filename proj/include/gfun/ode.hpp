#ifndef GFUN_ODE_HPP
#define GFUN_ODE_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gfun/polynomial.hpp"
#include "gfun/roots.hpp"
#include "gfun/series.hpp"

namespace gfun {

// Rational function over Q(i), kept with coprime numerator/denominator and a
// monic denominator.
struct RatFunc {
    QiPolynomial num;
    QiPolynomial den = QiPolynomial::constant(GaussianRational(1));

    RatFunc() = default;
    RatFunc(QiPolynomial n, QiPolynomial d) : num(std::move(n)), den(std::move(d)) {
        normalize();
    }
    static RatFunc from_poly(QiPolynomial p) {
        RatFunc r;
        r.num = std::move(p);
        return r;
    }

    void normalize() {
        if (den.is_zero()) throw err::division_by_non_unit("rational function with zero denominator");
        if (num.is_zero()) {
            den = QiPolynomial::constant(GaussianRational(1));
            return;
        }
        QiPolynomial g = gcd(num, den);
        if (g.degree() > 0) {
            num = QiPolynomial::divrem(num, g).first;
            den = QiPolynomial::divrem(den, g).first;
        }
        GaussianRational lead = den.leading();
        if (!(lead == GaussianRational(1))) {
            GaussianRational inv = GaussianRational(1) / lead;
            num = inv * num;
            den = inv * den;
        }
    }

    bool is_zero() const { return num.is_zero(); }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num * b.den - b.num * a.den, a.den * b.den);
    }
    friend RatFunc operator-(const RatFunc& a) { return RatFunc(-a.num, a.den); }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num * b.num, a.den * b.den);
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.is_zero()) throw err::division_by_non_unit("rational function division by zero");
        return RatFunc(a.num * b.den, a.den * b.num);
    }
    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num == b.num && a.den == b.den;
    }

    GaussianRational eval(const GaussianRational& z) const {
        GaussianRational d = den.eval(z);
        if (d.is_zero()) throw err::precondition("rational function evaluated at a pole");
        return num.eval(z) / d;
    }
};

// Monic linear ODE y^(mu) + a_{mu-1} y^(mu-1) + ... + a_0 y = 0 over Q(i)(z),
// with its singularities (poles of the coefficients) certified at
// construction time.
struct FuchsianODE {
    std::vector<RatFunc> coeffs; // a_0 .. a_{mu-1}
    std::vector<RootBall> singularities;
    QiPolynomial den_lcm = QiPolynomial::constant(GaussianRational(1));

    std::size_t order() const { return coeffs.size(); }
};

inline FuchsianODE make_ode(std::vector<RatFunc> coeffs, unsigned precision_bits = 128) {
    if (coeffs.empty()) throw err::precondition("make_ode: order must be >= 1");
    FuchsianODE ode;
    ode.coeffs = std::move(coeffs);
    QiPolynomial l = QiPolynomial::constant(GaussianRational(1));
    for (const auto& a : ode.coeffs) l = lcm(l, a.den);
    ode.den_lcm = l;
    if (l.degree() > 0) ode.singularities = complex_roots(l, precision_bits);
    return ode;
}

// Certified lower bound on the distance from a point to the singular set.
inline double distance_to_singularities(const FuchsianODE& ode, const GaussianRational& pt) {
    double best = std::numeric_limits<double>::infinity();
    ComplexBall p = ComplexBall::from_exact(pt);
    for (const auto& s : ode.singularities) {
        double dre = static_cast<double>(real_t(p.re - s.ball.re));
        double dim = static_cast<double>(real_t(p.im - s.ball.im));
        double d = std::hypot(dre, dim) * (1.0 - 1e-13) - s.ball.rad - p.rad;
        best = std::min(best, d);
    }
    return best;
}

// Canonical local solution basis at an ordinary point: series[j] has
// coefficient delta_{jk} at index k for k < mu, i.e. the j-th basis element
// is the solution with f^(k)(center) = delta_{jk} k!.
struct LocalBasis {
    GaussianRational center;
    std::vector<GSeries> series;
    double radius = 0.0;
};

inline LocalBasis local_basis(const FuchsianODE& ode, const GaussianRational& center,
                              std::size_t N) {
    const std::size_t mu = ode.order();
    double dist = distance_to_singularities(ode, center);
    if (!(dist > 0.0))
        throw err::singular_center("local_basis: center is within a singularity ball");
    if (N + 1 < mu) throw err::precondition("local_basis: order too small for the ODE order");

    // clear denominators: B_mu = lcm, B_j = a_j * lcm, all shifted to the center
    std::vector<QiPolynomial> B(mu + 1);
    B[mu] = ode.den_lcm.shifted(center);
    for (std::size_t j = 0; j < mu; ++j) {
        auto [q, r] = QiPolynomial::divrem(ode.coeffs[j].num * ode.den_lcm, ode.coeffs[j].den);
        if (!r.is_zero()) throw err::precondition("local_basis: denominator lcm failed");
        B[j] = q.shifted(center);
    }
    GaussianRational lead = B[mu].coeff(0); // den_lcm(center) != 0 at an ordinary point

    LocalBasis basis;
    basis.center = center;
    basis.radius = dist;
    basis.series.reserve(mu);

    // falling factorial (n+j)!/n! tables are tiny; recompute on the fly
    auto ffact = [](std::size_t n, std::size_t j) {
        Rational acc(1);
        for (std::size_t t = 0; t < j; ++t) acc *= Rational(static_cast<long>(n + j - t));
        return GaussianRational(acc);
    };

    for (std::size_t jbase = 0; jbase < mu; ++jbase) {
        GSeries y(N);
        y.coeffs[jbase] = GaussianRational(1);
        for (std::size_t m = 0; m + mu <= N; ++m) {
            GaussianRational acc(0);
            for (std::size_t j = 0; j <= mu; ++j) {
                long degB = B[j].degree();
                for (long k = 0; k <= degB; ++k) {
                    if (static_cast<std::size_t>(k) > m) break;
                    std::size_t n = m - static_cast<std::size_t>(k);
                    if (j == mu && k == 0) continue; // the unknown y_{m+mu}
                    if (n + j > N) continue;
                    acc += B[j].coeff(static_cast<std::size_t>(k)) * ffact(n, j) * y.coeffs[n + j];
                }
            }
            y.coeffs[m + mu] = -(acc / (lead * ffact(m, mu)));
        }
        y.radius_hint = dist;
        basis.series.push_back(std::move(y));
    }
    return basis;
}

// Exact termwise check that a series satisfies the ODE (translated to the
// series' center) through its truncation order.
inline bool satisfies_ode(const FuchsianODE& ode, const LocalBasis& basis, const GSeries& y) {
    const std::size_t mu = ode.order();
    if (y.order() < mu) return false;
    std::vector<QiPolynomial> B(mu + 1);
    B[mu] = ode.den_lcm.shifted(basis.center);
    for (std::size_t j = 0; j < mu; ++j)
        B[j] = QiPolynomial::divrem(ode.coeffs[j].num * ode.den_lcm, ode.coeffs[j].den)
                   .first.shifted(basis.center);
    long maxdeg = 0;
    for (const auto& b : B) maxdeg = std::max(maxdeg, b.degree());

    GSeries total(y.order() - mu);
    GSeries d = y;
    for (std::size_t j = 0; j <= mu; ++j) {
        // add B_j(w) * y^(j)(w), truncated to the common reliable order
        GSeries term(total.order());
        for (std::size_t n = 0; n < term.coeffs.size(); ++n) {
            GaussianRational acc(0);
            for (long k = 0; k <= B[j].degree(); ++k) {
                if (static_cast<std::size_t>(k) > n) break;
                std::size_t idx = n - static_cast<std::size_t>(k);
                if (idx < d.coeffs.size())
                    acc += B[j].coeff(static_cast<std::size_t>(k)) * d.coeffs[idx];
            }
            term.coeffs[n] = acc;
        }
        total = add(total, term);
        if (j < mu) d = differentiate(d);
    }
    // only the first N - mu - maxdeg coefficients are fully determined
    long reliable = static_cast<long>(y.order()) - static_cast<long>(mu) - maxdeg;
    for (long n = 0; n <= reliable && n < static_cast<long>(total.coeffs.size()); ++n)
        if (!total.coeffs[static_cast<std::size_t>(n)].is_zero()) return false;
    return true;
}

// Broken-line continuation path through ordinary points.
struct Path {
    std::vector<GaussianRational> waypoints;
    std::string branch_note;
};

namespace detail {

// s-th derivative of each basis series evaluated at offset h, as balls;
// row s, column j is g_j^(s)(h).
inline std::vector<std::vector<ComplexBall>> basis_derivative_matrix(
    const LocalBasis& basis, const GaussianRational& h, double tail_ratio) {
    const std::size_t mu = basis.series.size();
    std::vector<std::vector<ComplexBall>> M(mu, std::vector<ComplexBall>(mu));
    for (std::size_t j = 0; j < mu; ++j) {
        GSeries d = basis.series[j];
        for (std::size_t s = 0; s < mu; ++s) {
            M[s][j] = evaluate(d, h, tail_ratio);
            if (s + 1 < mu) d = differentiate(d);
        }
    }
    return M;
}

inline double step_tail_ratio(double habs, double dist) {
    // 5% envelope slack absorbs the subexponential factors of regular
    // singular expansions before the geometric regime
    return std::min(0.99, (habs / dist) * 1.05);
}

} // namespace detail

// Transports the derivative vector (f, f', ..., f^(mu-1)) along the path by
// chained local bases. Each step moves at most step_fraction times the
// certified distance to the singular set.
inline std::vector<ComplexBall> continue_along_path(const FuchsianODE& ode,
                                                    std::vector<ComplexBall> derivs,
                                                    const Path& path, std::size_t N,
                                                    double step_fraction = 0.5) {
    const std::size_t mu = ode.order();
    if (derivs.size() != mu)
        throw err::precondition("continue_along_path: initial vector size must equal the ODE order");
    if (path.waypoints.size() < 2) return derivs;
    if (!(step_fraction > 0.0 && step_fraction < 1.0))
        throw err::precondition("continue_along_path: step_fraction must lie in (0,1)");

    for (std::size_t w = 0; w + 1 < path.waypoints.size(); ++w) {
        GaussianRational current = path.waypoints[w];
        const GaussianRational& goal = path.waypoints[w + 1];
        for (int steps = 0;; ++steps) {
            GaussianRational diff = goal - current;
            if (diff.is_zero()) break;
            if (steps > 4096)
                throw err::step_too_close("continue_along_path: segment needs too many steps");
            double dist = distance_to_singularities(ode, current);
            if (!(dist > 0.0))
                throw err::step_too_close("continue_along_path: path touches a singularity ball");
            double hmax = step_fraction * dist;
            double len = diff.modulus_double();
            GaussianRational next;
            if (len <= hmax)
                next = goal;
            else {
                long num = static_cast<long>(std::floor(4096.0 * hmax / len));
                if (num <= 0)
                    throw err::step_too_close("continue_along_path: cannot maintain the margin");
                next = current + GaussianRational(make_rational(num, 4096)) * diff;
            }

            LocalBasis basis = local_basis(ode, current, N);
            GaussianRational h = next - current;
            double ratio = detail::step_tail_ratio(h.modulus_double(), dist);
            auto M = detail::basis_derivative_matrix(basis, h, ratio);

            // coefficient-normalized coordinates: v_j = f^(j)(current)/j!
            std::vector<ComplexBall> v(mu);
            Rational fact(1);
            for (std::size_t j = 0; j < mu; ++j) {
                if (j > 0) fact *= Rational(static_cast<long>(j));
                v[j] = derivs[j] * ComplexBall::from_exact(GaussianRational(Rational(1) / fact));
            }
            std::vector<ComplexBall> out(mu);
            for (std::size_t s = 0; s < mu; ++s) {
                ComplexBall acc;
                for (std::size_t j = 0; j < mu; ++j) acc += M[s][j] * v[j];
                out[s] = acc;
            }
            derivs = std::move(out);
            current = next;
        }
    }
    return derivs;
}

// Connection data: f = sum_j varpi_j g_j in the target basis.
struct ConnectionResult {
    std::vector<ComplexBall> constants;
    ComplexBall wronskian_value; // determinant of the matching system, = W(rho)
    double residual = 0.0;       // max defect of the solved linear system
    GaussianRational matching_point;
};

// Solves the mu x mu matching system by Cramer's rule at a matching point in
// the overlap of the transported solution and the target basis disk. The
// determinant is the Wronskian there and must be certifiably nonzero.
inline ConnectionResult connection_constants(const FuchsianODE& ode,
                                             const std::vector<ComplexBall>& f_at_start,
                                             const Path& path, const LocalBasis& target_basis,
                                             std::size_t N = 0, double step_fraction = 0.5) {
    const std::size_t mu = ode.order();
    if (N == 0) N = target_basis.series[0].order();
    std::vector<ComplexBall> at_end = continue_along_path(ode, f_at_start, path, N, step_fraction);
    const GaussianRational& end = path.waypoints.empty() ? target_basis.center
                                                         : path.waypoints.back();

    // matching point: basis center when the path ends there, else the lens
    // midpoint snapped to denominator 1024 (re-chosen on Wronskian failure)
    std::vector<GaussianRational> rho_candidates;
    if (end == target_basis.center) {
        rho_candidates.push_back(end);
    } else {
        GaussianRational mid = (end + target_basis.center) / GaussianRational(2);
        GaussianRational snapped(detail::round_to_denominator(detail::to_real(mid.re), 1024),
                                 detail::round_to_denominator(detail::to_real(mid.im), 1024));
        rho_candidates.push_back(snapped);
        for (long k = 1; k <= 4; ++k) {
            rho_candidates.push_back(snapped + GaussianRational(make_rational(k, 1024)));
            rho_candidates.push_back(snapped - GaussianRational(make_rational(k, 1024)));
        }
        rho_candidates.push_back(mid);
    }

    std::string fail = "no matching point candidate";
    for (const auto& rho : rho_candidates) {
        GaussianRational hb = rho - target_basis.center;
        if (hb.modulus_double() > target_basis.radius * 0.9) {
            fail = "matching point outside the target basis disk";
            continue;
        }
        std::vector<ComplexBall> rhs = at_end;
        if (!(rho == end)) {
            Path hop{{end, rho}, path.branch_note};
            rhs = continue_along_path(ode, rhs, hop, N, step_fraction);
        }
        double ratio = hb.is_zero() ? 0.5
                                    : detail::step_tail_ratio(hb.modulus_double(),
                                                              target_basis.radius);
        auto M = detail::basis_derivative_matrix(target_basis, hb, ratio);
        ComplexBall det = detail::ball_det(M);
        if (det.contains_zero()) {
            fail = "Wronskian ball contains zero at the matching point";
            continue;
        }

        // Cramer
        std::vector<ComplexBall> constants(mu);
        for (std::size_t j = 0; j < mu; ++j) {
            auto Mj = M;
            for (std::size_t s = 0; s < mu; ++s) Mj[s][j] = rhs[s];
            constants[j] = detail::ball_det(Mj) / det;
        }
        double residual = 0.0;
        for (std::size_t s = 0; s < mu; ++s) {
            ComplexBall defect = rhs[s];
            for (std::size_t j = 0; j < mu; ++j) defect -= M[s][j] * constants[j];
            residual = std::max(residual, defect.abs_upper());
        }
        ConnectionResult res;
        res.constants = std::move(constants);
        res.wronskian_value = det;
        res.residual = residual;
        res.matching_point = rho;
        return res;
    }
    throw err::wronskian_vanishes("connection_constants: " + fail);
}

// Wronskian certification: exact Abel identity check on the basis, then the
// closed-form fit nu * prod (z - p_j)^(-r_j) against test points.
struct WronskianFit {
    ComplexBall nu;
    std::vector<std::pair<ComplexBall, Rational>> exponents; // (pole ball, r_j)
    GSeries wronskian_series;                                // at the basis center
};

inline WronskianFit wronskian_certify(const FuchsianODE& ode, const LocalBasis& basis,
                                      const std::vector<GaussianRational>& test_points,
                                      unsigned precision_bits = 128) {
    const std::size_t mu = ode.order();
    if (test_points.empty()) throw err::precondition("wronskian_certify: need test points");

    // W as an exact series determinant of the derivative matrix
    std::vector<std::vector<GSeries>> rows(mu, std::vector<GSeries>(mu));
    for (std::size_t j = 0; j < mu; ++j) {
        GSeries d = basis.series[j];
        for (std::size_t s = 0; s < mu; ++s) {
            rows[s][j] = d;
            if (s + 1 < mu) d = differentiate(d);
        }
    }
    // series determinant by cofactor recursion
    std::function<GSeries(const std::vector<std::vector<GSeries>>&)> det_series =
        [&](const std::vector<std::vector<GSeries>>& m) -> GSeries {
        if (m.size() == 1) return m[0][0];
        GSeries acc(m[0][0].order());
        for (std::size_t j = 0; j < m.size(); ++j) {
            std::vector<std::vector<GSeries>> minor;
            for (std::size_t r = 1; r < m.size(); ++r) {
                std::vector<GSeries> row;
                for (std::size_t c = 0; c < m.size(); ++c)
                    if (c != j) row.push_back(m[r][c]);
                minor.push_back(std::move(row));
            }
            GSeries term = mul(m[0][j], det_series(minor));
            acc = (j % 2 == 0) ? add(acc, term) : sub(acc, term);
        }
        return acc;
    };
    GSeries W = det_series(rows);

    // Abel identity W' + a_{mu-1} W = 0, cleared of denominators and shifted
    const RatFunc& a_top = ode.coeffs[mu - 1];
    QiPolynomial dsh = a_top.den.shifted(basis.center);
    QiPolynomial nsh = a_top.num.shifted(basis.center);
    GSeries Wd = differentiate(W);
    auto mul_poly = [](const GSeries& s, const QiPolynomial& p) {
        GSeries r(s.order());
        for (std::size_t n = 0; n < r.coeffs.size(); ++n) {
            GaussianRational acc(0);
            for (long k = 0; k <= p.degree(); ++k) {
                if (static_cast<std::size_t>(k) > n) break;
                acc += p.coeff(static_cast<std::size_t>(k)) * s[n - static_cast<std::size_t>(k)];
            }
            r.coeffs[n] = acc;
        }
        return r;
    };
    GSeries abel = add(mul_poly(Wd, dsh), mul_poly(W, nsh));
    long reliable = static_cast<long>(W.order()) - 1 -
                    std::max(dsh.degree(), nsh.degree());
    for (long n = 0; n <= reliable && n < static_cast<long>(abel.coeffs.size()); ++n)
        if (!abel.coeffs[static_cast<std::size_t>(n)].is_zero())
            throw err::abel_violation("wronskian_certify: Abel identity fails termwise");

    WronskianFit fit;
    fit.wronskian_series = W;

    // poles and residues of a_{mu-1}; Fuchsian => simple poles, rational residues
    if (a_top.num.degree() >= a_top.den.degree() && !a_top.num.is_zero())
        throw err::fit_inconsistent(
            "wronskian_certify: a_{mu-1} has a polynomial part; closed form not applicable");
    if (a_top.den.degree() > 0) {
        QiPolynomial dden = a_top.den.derivative();
        for (const auto& rb : complex_roots(a_top.den, precision_bits)) {
            if (rb.multiplicity > 1)
                throw err::fit_inconsistent("wronskian_certify: pole of a_{mu-1} is not simple");
            ComplexBall res = eval_ball(a_top.num, rb.ball) / eval_ball(dden, rb.ball);
            // snap the residue to a rational with a small denominator
            double rc = static_cast<double>(res.re);
            double ic = static_cast<double>(res.im);
            double tol = std::max(res.rad * 2.0, 1e-9);
            Rational snapped;
            bool found = false;
            if (std::fabs(ic) <= tol) {
                for (long q = 1; q <= 64 && !found; ++q) {
                    double scaled = rc * static_cast<double>(q);
                    double nearest = std::round(scaled);
                    if (std::fabs(scaled - nearest) <= tol * q) {
                        snapped = Rational(static_cast<long>(nearest), q);
                        snapped.canonicalize();
                        found = true;
                    }
                }
            }
            if (!found)
                throw err::fit_inconsistent("wronskian_certify: residue does not snap to a rational");
            fit.exponents.emplace_back(rb.ball, snapped);
        }
    }

    // nu from the first test point, checked at the rest
    std::optional<ComplexBall> nu;
    for (const auto& t : test_points) {
        GaussianRational h = t - basis.center;
        if (h.modulus_double() > basis.radius * 0.9)
            throw err::precondition("wronskian_certify: test point outside the basis disk");
        double ratio = h.is_zero() ? 0.5 : detail::step_tail_ratio(h.modulus_double(), basis.radius);
        ComplexBall wval = evaluate(W, h, ratio);
        ComplexBall prod = ComplexBall::from_exact(GaussianRational(1));
        for (const auto& [pole, r] : fit.exponents) {
            ComplexBall base = ComplexBall::from_exact(t) - pole;
            prod = prod * ball_pow_rational(base, r);
        }
        ComplexBall cand = wval * prod;
        if (!nu) {
            nu = cand;
        } else {
            ComplexBall diff = cand - *nu;
            if (diff.abs_lower() > 0.0)
                throw err::fit_inconsistent("wronskian_certify: nu differs across test points");
        }
    }
    fit.nu = *nu;
    return fit;
}

} // namespace gfun

#endif
