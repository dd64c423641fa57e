#ifndef DBR_BLASCHKE_HPP
#define DBR_BLASCHKE_HPP

#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "dbr/poly.hpp"

namespace dbr {

inline std::vector<Complex> unit_circle_grid(int points) {
    std::vector<Complex> grid(static_cast<std::size_t>(points));
    const double step = 2.0 * 3.14159265358979323846 / points;
    for (int m = 0; m < points; ++m) grid[static_cast<std::size_t>(m)] = std::polar(1.0, step * m);
    return grid;
}

/// Quotient of two complex polynomials, used for boundary functions of the
/// disk (b, a, densities, kernels). Lowest terms are not enforced, but the
/// denominator may not vanish at the origin.
class RationalBoundaryFn {
public:
    RationalBoundaryFn() : num_(), den_(ComplexPoly::one()) {}

    RationalBoundaryFn(ComplexPoly num, ComplexPoly den)
        : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw BadParameters("RationalBoundaryFn: zero denominator");
        if (std::abs(den_.constant_term()) < 1e-14 * std::max(den_.max_abs_coeff(), 1.0))
            throw BadParameters("RationalBoundaryFn: denominator vanishes at the origin");
    }

    static RationalBoundaryFn from_poly(ComplexPoly p) {
        return {std::move(p), ComplexPoly::one()};
    }

    static RationalBoundaryFn constant(Complex c) { return from_poly(ComplexPoly::constant(c)); }

    const ComplexPoly& num() const { return num_; }
    const ComplexPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    Complex eval(Complex z) const { return num_.eval(z) / den_.eval(z); }

    RationalBoundaryFn derivative() const {
        return {num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_};
    }

    friend RationalBoundaryFn operator+(const RationalBoundaryFn& f, const RationalBoundaryFn& g) {
        return {f.num_ * g.den_ + g.num_ * f.den_, f.den_ * g.den_};
    }
    friend RationalBoundaryFn operator-(const RationalBoundaryFn& f, const RationalBoundaryFn& g) {
        return {f.num_ * g.den_ - g.num_ * f.den_, f.den_ * g.den_};
    }
    friend RationalBoundaryFn operator*(const RationalBoundaryFn& f, const RationalBoundaryFn& g) {
        return {f.num_ * g.num_, f.den_ * g.den_};
    }
    friend RationalBoundaryFn operator*(Complex s, const RationalBoundaryFn& f) {
        return {s * f.num_, f.den_};
    }
    friend RationalBoundaryFn operator/(const RationalBoundaryFn& f, const RationalBoundaryFn& g) {
        if (g.num_.is_zero()) throw BadParameters("division by the zero function");
        return {f.num_ * g.den_, f.den_ * g.num_};
    }

    /// Cancels common zeros of numerator and denominator. For every root r of
    /// the denominator at which the numerator also vanishes (relative to its
    /// size near r), both are deflated by (z - r). This is how removable
    /// boundary singularities -- e.g. kernels at Clark atoms -- are cleared.
    RationalBoundaryFn reduced(double tol = 1e-8) const {
        if (num_.is_zero()) return {};
        ComplexPoly n = num_, d = den_;
        bool progress = true;
        while (progress && d.degree() >= 1 && !n.is_zero()) {
            progress = false;
            for (const Complex& r : poly_roots(d).roots) {
                double scale = 0.0, rp = 1.0;
                for (int j = 0; j <= n.degree(); ++j) {
                    scale += std::abs(n.coeff(j)) * rp;
                    rp *= std::abs(r);
                }
                if (std::abs(n.eval(r)) <= tol * std::max(scale, 1e-300)) {
                    n = n.deflate(r).first;
                    d = d.deflate(r).first;
                    progress = true;
                    break;
                }
            }
        }
        return {std::move(n), std::move(d)};
    }

    /// Smallest distance from a denominator root to the unit circle;
    /// +infinity when the denominator is constant.
    double den_root_circle_gap() const {
        if (den_.degree() < 1) return std::numeric_limits<double>::infinity();
        double gap = std::numeric_limits<double>::infinity();
        for (const Complex& r : poly_roots(den_).roots)
            gap = std::min(gap, std::abs(std::abs(r) - 1.0));
        return gap;
    }

private:
    ComplexPoly num_;
    ComplexPoly den_;
};

/// Finite Blaschke product: unimodular rotation times the product of the disk
/// automorphisms (z - a_i)/(1 - conj(a_i) z). Powers are represented
/// structurally, by repeating the zero list.
class BlaschkeProduct {
public:
    explicit BlaschkeProduct(std::vector<Complex> zeros, Complex rotation = 1.0)
        : zeros_(std::move(zeros)), rotation_(rotation) {
        for (const Complex& a : zeros_)
            if (!(std::abs(a) < 1.0 - 1e-12))
                throw BadParameters("BlaschkeProduct: zero not inside the open unit disk");
        if (std::abs(std::abs(rotation_) - 1.0) > 1e-14)
            throw BadParameters("BlaschkeProduct: rotation must be unimodular");
    }

    static BlaschkeProduct monomial(int d) {
        if (d < 0) throw BadParameters("monomial power must be nonnegative");
        return BlaschkeProduct(std::vector<Complex>(static_cast<std::size_t>(d), 0.0));
    }

    int degree() const { return static_cast<int>(zeros_.size()); }
    const std::vector<Complex>& zeros() const { return zeros_; }
    Complex rotation() const { return rotation_; }

    Complex eval(Complex z) const {
        Complex acc = rotation_;
        for (const Complex& a : zeros_) {
            const Complex den = 1.0 - std::conj(a) * z;
            if (std::abs(den) < 1e-14) throw PoleHit("Blaschke evaluation at a reflected zero");
            acc *= (z - a) / den;
        }
        return acc;
    }

    bool vanishes_at_origin() const { return std::abs(eval(0.0)) <= 1e-14; }

    BlaschkeProduct pow(int n) const {
        if (n < 0) throw BadParameters("Blaschke power must be nonnegative");
        std::vector<Complex> zz;
        zz.reserve(zeros_.size() * static_cast<std::size_t>(n));
        Complex rot = 1.0;
        for (int i = 0; i < n; ++i) {
            zz.insert(zz.end(), zeros_.begin(), zeros_.end());
            rot *= rotation_;
        }
        rot /= std::abs(rot);  // keep exactly unimodular under repeated products
        return BlaschkeProduct(std::move(zz), rot);
    }

    /// rotation * prod (z - a_i)
    ComplexPoly numerator() const {
        ComplexPoly p = ComplexPoly::constant(rotation_);
        for (const Complex& a : zeros_) p = p * ComplexPoly{-a, 1.0};
        return p;
    }

    /// prod (1 - conj(a_i) z)
    ComplexPoly denominator() const {
        ComplexPoly p = ComplexPoly::one();
        for (const Complex& a : zeros_) p = p * ComplexPoly{1.0, -std::conj(a)};
        return p;
    }

    RationalBoundaryFn as_rational() const { return {numerator(), denominator()}; }

    /// |B'(zeta)| for |zeta| = 1, via the sum of Poisson-type terms
    /// (1 - |a_i|^2)/|zeta - a_i|^2.
    double boundary_derivative_modulus(Complex zeta) const {
        if (std::abs(std::abs(zeta) - 1.0) > 1e-12)
            throw BadParameters("boundary derivative requires a unimodular point");
        double s = 0.0;
        for (const Complex& a : zeros_) s += (1.0 - std::norm(a)) / std::norm(zeta - a);
        return s;
    }

private:
    std::vector<Complex> zeros_;
    Complex rotation_;
};

enum class PairFamily { family1, family2 };

/// Selects one of the two constructed b's: family1 is b = I^n (1+I)/2,
/// family2 is b = I (1+I^2)/2 with I(0) = 0.
struct PairSpec {
    PairFamily family = PairFamily::family1;
    BlaschkeProduct inner = BlaschkeProduct::monomial(1);
    int n = 0;

    void validate() const {
        if (inner.degree() < 1) throw BadParameters("PairSpec: inner function must be nonconstant");
        if (family == PairFamily::family1) {
            if (n < 0) throw BadParameters("PairSpec: n must be nonnegative");
        } else {
            if (!inner.vanishes_at_origin())
                throw RequiresIZeroAtOrigin("family2 requires an inner function vanishing at 0");
        }
    }
};

struct HbPair {
    RationalBoundaryFn b;
    RationalBoundaryFn a;
};

/// Builds the pair (b, a) with |a|^2 + |b|^2 = 1 a.e. on the circle:
///   family1: b = I^n (1+I)/2,  a = (1-I)/2
///   family2: b = I (1+I^2)/2,  a = (1-I^2)/2
/// The boundary identity and outerness of a are verified on construction.
inline HbPair make_pair(const PairSpec& spec) {
    spec.validate();
    const ComplexPoly P = spec.inner.numerator();
    const ComplexPoly Q = spec.inner.denominator();

    HbPair pair;
    if (spec.family == PairFamily::family1) {
        pair.b = RationalBoundaryFn(P.pow(spec.n) * (Q + P), 2.0 * Q.pow(spec.n + 1));
        pair.a = RationalBoundaryFn(Q - P, 2.0 * Q);
    } else {
        const ComplexPoly P2 = P * P, Q2 = Q * Q;
        pair.b = RationalBoundaryFn(P * (Q2 + P2), 2.0 * (Q2 * Q));
        pair.a = RationalBoundaryFn(Q2 - P2, 2.0 * Q2);
    }

    for (const Complex& zeta : unit_circle_grid(512)) {
        const double s = std::norm(pair.a.eval(zeta)) + std::norm(pair.b.eval(zeta));
        if (std::abs(s - 1.0) > 1e-10)
            throw NotAPair("|a|^2 + |b|^2 deviates from 1 on the boundary grid");
    }

    // a must be outer: no zeros strictly inside the disk (boundary zeros are
    // expected), and no poles in the closed disk.
    for (const Complex& r : poly_roots(pair.a.num()).roots)
        if (std::abs(r) < 1.0 - 1e-9) throw NotAPair("a has a zero inside the open unit disk");
    if (pair.a.den().degree() >= 1)
        for (const Complex& r : poly_roots(pair.a.den()).roots)
            if (std::abs(r) <= 1.0 + 1e-9) throw NotAPair("a has a pole in the closed unit disk");

    return pair;
}

/// Evaluates sum_j w_j I(z)^j as a rational function of z, clearing the common
/// denominator Q^m with m = coeffs.size() - 1. Both numerator and denominator
/// weights share the same formal degree so quotients stay consistent.
inline ComplexPoly expand_in_inner(const std::vector<Complex>& w, const ComplexPoly& P,
                                   const ComplexPoly& Q, int formal_degree) {
    const int m = formal_degree;
    if (static_cast<int>(w.size()) > m + 1) throw BadParameters("expand_in_inner: weights exceed formal degree");
    std::vector<ComplexPoly> ppow(static_cast<std::size_t>(m) + 1), qpow(static_cast<std::size_t>(m) + 1);
    ppow[0] = ComplexPoly::one();
    qpow[0] = ComplexPoly::one();
    for (int j = 1; j <= m; ++j) {
        ppow[static_cast<std::size_t>(j)] = ppow[static_cast<std::size_t>(j - 1)] * P;
        qpow[static_cast<std::size_t>(j)] = qpow[static_cast<std::size_t>(j - 1)] * Q;
    }
    ComplexPoly acc;
    for (std::size_t j = 0; j < w.size(); ++j) {
        if (w[j] == Complex(0.0)) continue;
        acc = acc + w[j] * (ppow[j] * qpow[static_cast<std::size_t>(m) - j]);
    }
    return acc;
}

/// num_w(I)/den_w(I) as a rational function of z.
inline RationalBoundaryFn compose_in_inner(const std::vector<Complex>& num_w,
                                           const std::vector<Complex>& den_w,
                                           const BlaschkeProduct& inner) {
    const ComplexPoly P = inner.numerator();
    const ComplexPoly Q = inner.denominator();
    const int m = static_cast<int>(std::max(num_w.size(), den_w.size())) - 1;
    return {expand_in_inner(num_w, P, Q, m), expand_in_inner(den_w, P, Q, m)};
}

}  // namespace dbr

#endif  // DBR_BLASCHKE_HPP
