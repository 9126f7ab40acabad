#ifndef GFUN_POLYNOMIAL_HPP
#define GFUN_POLYNOMIAL_HPP

#include <algorithm>
#include <initializer_list>
#include <utility>
#include <vector>

#include "gfun/rational.hpp"

namespace gfun {

// Dense univariate polynomial over Q(i), coefficient of X^k at index k.
// Invariant: leading coefficient nonzero unless the polynomial is zero
// (empty coefficient vector represents the zero polynomial).
class QiPolynomial {
public:
    QiPolynomial() = default;
    explicit QiPolynomial(std::vector<GaussianRational> coeffs) : c_(std::move(coeffs)) {
        trim();
    }
    QiPolynomial(std::initializer_list<GaussianRational> coeffs)
        : c_(coeffs) {
        trim();
    }

    static QiPolynomial constant(const GaussianRational& a) {
        return QiPolynomial(std::vector<GaussianRational>{a});
    }
    // X^k with unit coefficient
    static QiPolynomial monomial(std::size_t k, const GaussianRational& a = GaussianRational(1)) {
        std::vector<GaussianRational> v(k + 1);
        v[k] = a;
        return QiPolynomial(std::move(v));
    }

    bool is_zero() const { return c_.empty(); }
    // degree of the zero polynomial reported as -1
    long degree() const { return static_cast<long>(c_.size()) - 1; }

    const std::vector<GaussianRational>& coeffs() const { return c_; }
    GaussianRational coeff(std::size_t k) const {
        return k < c_.size() ? c_[k] : GaussianRational(0);
    }
    const GaussianRational& leading() const { return c_.back(); }

    GaussianRational eval(const GaussianRational& z) const {
        GaussianRational acc(0);
        for (std::size_t k = c_.size(); k-- > 0;) acc = acc * z + c_[k];
        return acc;
    }

    QiPolynomial derivative() const {
        if (c_.size() <= 1) return QiPolynomial();
        std::vector<GaussianRational> d(c_.size() - 1);
        for (std::size_t k = 1; k < c_.size(); ++k)
            d[k - 1] = GaussianRational(Rational(static_cast<long>(k))) * c_[k];
        return QiPolynomial(std::move(d));
    }

    friend QiPolynomial operator+(const QiPolynomial& a, const QiPolynomial& b) {
        std::vector<GaussianRational> v(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t k = 0; k < v.size(); ++k) v[k] = a.coeff(k) + b.coeff(k);
        return QiPolynomial(std::move(v));
    }
    friend QiPolynomial operator-(const QiPolynomial& a, const QiPolynomial& b) {
        std::vector<GaussianRational> v(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t k = 0; k < v.size(); ++k) v[k] = a.coeff(k) - b.coeff(k);
        return QiPolynomial(std::move(v));
    }
    friend QiPolynomial operator-(const QiPolynomial& a) {
        std::vector<GaussianRational> v(a.c_.size());
        for (std::size_t k = 0; k < v.size(); ++k) v[k] = -a.c_[k];
        return QiPolynomial(std::move(v));
    }
    friend QiPolynomial operator*(const QiPolynomial& a, const QiPolynomial& b) {
        if (a.is_zero() || b.is_zero()) return QiPolynomial();
        std::vector<GaussianRational> v(a.c_.size() + b.c_.size() - 1);
        for (std::size_t ia = 0; ia < a.c_.size(); ++ia)
            for (std::size_t ib = 0; ib < b.c_.size(); ++ib)
                v[ia + ib] += a.c_[ia] * b.c_[ib];
        return QiPolynomial(std::move(v));
    }
    friend QiPolynomial operator*(const GaussianRational& s, const QiPolynomial& p) {
        if (s.is_zero()) return QiPolynomial();
        std::vector<GaussianRational> v(p.c_.size());
        for (std::size_t k = 0; k < v.size(); ++k) v[k] = s * p.c_[k];
        return QiPolynomial(std::move(v));
    }

    friend bool operator==(const QiPolynomial& a, const QiPolynomial& b) {
        return a.c_ == b.c_;
    }

    // Euclidean division; remainder degree < divisor degree.
    static std::pair<QiPolynomial, QiPolynomial> divrem(const QiPolynomial& num,
                                                        const QiPolynomial& den) {
        if (den.is_zero()) throw err::division_by_non_unit("polynomial division by zero");
        std::vector<GaussianRational> r = num.c_;
        long dd = den.degree();
        long dn = num.degree();
        if (dn < dd) return {QiPolynomial(), num};
        std::vector<GaussianRational> q(static_cast<std::size_t>(dn - dd + 1));
        for (long k = dn; k >= dd; --k) {
            GaussianRational f = r[static_cast<std::size_t>(k)] / den.leading();
            if (f.is_zero()) continue;
            q[static_cast<std::size_t>(k - dd)] = f;
            for (long j = 0; j <= dd; ++j)
                r[static_cast<std::size_t>(k - dd + j)] -= f * den.c_[static_cast<std::size_t>(j)];
        }
        return {QiPolynomial(std::move(q)), QiPolynomial(std::move(r))};
    }

    QiPolynomial monic() const {
        if (is_zero()) return *this;
        return (GaussianRational(1) / leading()) * *this;
    }

    // Taylor shift: returns p(X + u).
    QiPolynomial shifted(const GaussianRational& u) const {
        QiPolynomial acc;
        for (std::size_t k = c_.size(); k-- > 0;) {
            acc = acc * QiPolynomial{GaussianRational(u), GaussianRational(1)} +
                  QiPolynomial::constant(c_[k]);
        }
        return acc;
    }

    // Returns p(X^m).
    QiPolynomial compose_power(unsigned m) const {
        if (is_zero() || m == 0) return QiPolynomial::constant(eval(GaussianRational(1)));
        std::vector<GaussianRational> v((c_.size() - 1) * m + 1);
        for (std::size_t k = 0; k < c_.size(); ++k) v[k * m] = c_[k];
        return QiPolynomial(std::move(v));
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<GaussianRational> c_;
};

inline QiPolynomial gcd(QiPolynomial a, QiPolynomial b) {
    while (!b.is_zero()) {
        auto [q, r] = QiPolynomial::divrem(a, b);
        (void)q;
        a = std::move(b);
        b = r.monic(); // renormalize to tame coefficient growth
    }
    return a.monic();
}

inline QiPolynomial lcm(const QiPolynomial& a, const QiPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return QiPolynomial();
    auto g = gcd(a, b);
    auto [q, r] = QiPolynomial::divrem(a * b, g);
    (void)r;
    return q.monic();
}

// Yun's squarefree decomposition: p = l * prod_k out[k].factor^(out[k].multiplicity)
// with squarefree pairwise-coprime factors. Characteristic zero, so this is exact.
struct SquarefreeFactor {
    QiPolynomial factor;
    unsigned multiplicity;
};

inline std::vector<SquarefreeFactor> squarefree_decomposition(const QiPolynomial& p) {
    std::vector<SquarefreeFactor> out;
    if (p.degree() < 1) return out;
    QiPolynomial a = p.monic();
    QiPolynomial g = gcd(a, a.derivative());
    if (g.degree() == 0) {
        out.push_back({a, 1});
        return out;
    }
    QiPolynomial w  = QiPolynomial::divrem(a, g).first;            // product of distinct roots
    QiPolynomial y  = QiPolynomial::divrem(a.derivative(), g).first;
    QiPolynomial z  = y - w.derivative();
    unsigned i = 1;
    while (!(w.degree() == 0)) {
        QiPolynomial f = gcd(w, z);
        if (f.degree() > 0) out.push_back({f.monic(), i});
        w = QiPolynomial::divrem(w, f).first;
        y = QiPolynomial::divrem(z, f).first;
        z = y - w.derivative();
        ++i;
    }
    return out;
}

} // namespace gfun

#endif
