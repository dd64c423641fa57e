#ifndef DBR_POLY_HPP
#define DBR_POLY_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "dbr/errors.hpp"

namespace dbr {

using Complex = std::complex<double>;

/// Complex polynomial with coefficients stored ascending: coeff(j) multiplies z^j.
/// The zero polynomial is represented by an empty coefficient vector (degree -1).
/// Exactly-zero trailing coefficients are trimmed on construction; transforms that
/// depend on the formal degree take it explicitly.
class ComplexPoly {
public:
    ComplexPoly() = default;

    explicit ComplexPoly(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    ComplexPoly(std::initializer_list<Complex> coeffs) : coeffs_(coeffs) { trim(); }

    static ComplexPoly constant(Complex c) { return ComplexPoly{std::vector<Complex>{c}}; }

    static ComplexPoly one() { return constant(1.0); }

    static ComplexPoly monomial(int degree, Complex c = 1.0) {
        if (degree < 0) throw BadParameters("monomial degree must be nonnegative");
        std::vector<Complex> v(static_cast<std::size_t>(degree) + 1, 0.0);
        v.back() = c;
        return ComplexPoly{std::move(v)};
    }

    bool is_zero() const { return coeffs_.empty(); }

    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    Complex coeff(int j) const {
        if (j < 0 || j >= static_cast<int>(coeffs_.size())) return 0.0;
        return coeffs_[static_cast<std::size_t>(j)];
    }

    const std::vector<Complex>& coeffs() const { return coeffs_; }

    Complex leading() const {
        if (is_zero()) throw ZeroPolynomial("leading coefficient of zero polynomial");
        return coeffs_.back();
    }

    Complex constant_term() const { return coeff(0); }

    /// Horner evaluation.
    Complex eval(Complex z) const {
        Complex acc = 0.0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
        return acc;
    }

    ComplexPoly derivative() const {
        if (degree() < 1) return ComplexPoly{};
        std::vector<Complex> d(coeffs_.size() - 1);
        for (std::size_t j = 1; j < coeffs_.size(); ++j)
            d[j - 1] = static_cast<double>(j) * coeffs_[j];
        return ComplexPoly{std::move(d)};
    }

    /// Coefficient-wise conjugation: p#(z) = conj(p(conj(z))).
    ComplexPoly conj_coeffs() const {
        std::vector<Complex> c(coeffs_.size());
        for (std::size_t j = 0; j < coeffs_.size(); ++j) c[j] = std::conj(coeffs_[j]);
        return ComplexPoly{std::move(c)};
    }

    /// Multiplication by z^k.
    ComplexPoly shifted(int k) const {
        if (k < 0) throw BadParameters("shift must be nonnegative");
        if (is_zero()) return {};
        std::vector<Complex> c(coeffs_.size() + static_cast<std::size_t>(k), 0.0);
        std::copy(coeffs_.begin(), coeffs_.end(), c.begin() + k);
        return ComplexPoly{std::move(c)};
    }

    ComplexPoly pow(int n) const {
        if (n < 0) throw BadParameters("pow exponent must be nonnegative");
        ComplexPoly acc = one();
        for (int i = 0; i < n; ++i) acc = acc * (*this);
        return acc;
    }

    /// Synthetic division by (z - root): returns {quotient, remainder}.
    std::pair<ComplexPoly, Complex> deflate(Complex root) const {
        if (is_zero()) throw ZeroPolynomial("deflating zero polynomial");
        if (degree() == 0) return {ComplexPoly{}, coeffs_[0]};
        std::vector<Complex> q(coeffs_.size() - 1);
        Complex carry = coeffs_.back();
        for (int j = degree() - 1; j >= 0; --j) {
            q[static_cast<std::size_t>(j)] = carry;
            carry = coeffs_[static_cast<std::size_t>(j)] + carry * root;
        }
        return {ComplexPoly{std::move(q)}, carry};
    }

    double max_abs_coeff() const {
        double m = 0.0;
        for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
        return m;
    }

    double one_norm() const {
        double s = 0.0;
        for (const auto& c : coeffs_) s += std::abs(c);
        return s;
    }

    /// Copy with trailing coefficients below `tol` (relative to the largest) removed.
    ComplexPoly trimmed(double tol) const {
        const double cut = tol * std::max(max_abs_coeff(), 1e-300);
        std::vector<Complex> c = coeffs_;
        while (!c.empty() && std::abs(c.back()) <= cut) c.pop_back();
        return ComplexPoly{std::move(c)};
    }

    friend ComplexPoly operator+(const ComplexPoly& p, const ComplexPoly& q) {
        std::vector<Complex> c(std::max(p.coeffs_.size(), q.coeffs_.size()), 0.0);
        for (std::size_t j = 0; j < c.size(); ++j)
            c[j] = p.coeff(static_cast<int>(j)) + q.coeff(static_cast<int>(j));
        return ComplexPoly{std::move(c)};
    }

    friend ComplexPoly operator-(const ComplexPoly& p, const ComplexPoly& q) {
        std::vector<Complex> c(std::max(p.coeffs_.size(), q.coeffs_.size()), 0.0);
        for (std::size_t j = 0; j < c.size(); ++j)
            c[j] = p.coeff(static_cast<int>(j)) - q.coeff(static_cast<int>(j));
        return ComplexPoly{std::move(c)};
    }

    friend ComplexPoly operator*(const ComplexPoly& p, const ComplexPoly& q) {
        if (p.is_zero() || q.is_zero()) return {};
        std::vector<Complex> c(p.coeffs_.size() + q.coeffs_.size() - 1, 0.0);
        for (std::size_t i = 0; i < p.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < q.coeffs_.size(); ++j) c[i + j] += p.coeffs_[i] * q.coeffs_[j];
        return ComplexPoly{std::move(c)};
    }

    friend ComplexPoly operator*(Complex s, const ComplexPoly& p) {
        std::vector<Complex> c = p.coeffs_;
        for (auto& x : c) x *= s;
        return ComplexPoly{std::move(c)};
    }

    friend ComplexPoly operator*(const ComplexPoly& p, Complex s) { return s * p; }

    friend ComplexPoly operator-(const ComplexPoly& p) { return Complex(-1.0) * p; }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == Complex(0.0)) coeffs_.pop_back();
    }

    std::vector<Complex> coeffs_;
};

inline Complex poly_eval(const ComplexPoly& p, Complex z) { return p.eval(z); }

/// All roots of a polynomial, with multiplicity, plus a dimensionless residual:
/// max over roots of |p(r)| / sum_j |a_j||r|^j.
struct RootSet {
    std::vector<Complex> roots;
    double residual = 0.0;

    bool reliable(double tol) const { return residual <= tol; }
};

/// Companion-matrix root finder. Dense and unscaled; degree is capped at 64,
/// which is far beyond anything this library constructs.
inline RootSet poly_roots(const ComplexPoly& p) {
    if (p.is_zero()) throw ZeroPolynomial("poly_roots");
    const int d = p.degree();
    if (d == 0) throw DegreeZero("poly_roots: constant polynomial has no roots");
    if (d > 64) throw BadParameters("poly_roots: degree exceeds cap 64");

    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(d, d);
    const Complex lead = p.leading();
    for (int j = 0; j < d - 1; ++j) companion(j + 1, j) = 1.0;
    for (int j = 0; j < d; ++j) companion(j, d - 1) = -p.coeff(j) / lead;

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) throw Error("poly_roots: eigensolver failed");

    RootSet out;
    out.roots.reserve(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) out.roots.push_back(solver.eigenvalues()(j));

    for (const Complex& r : out.roots) {
        double scale = 0.0, rp = 1.0;
        const double ra = std::abs(r);
        for (int j = 0; j <= d; ++j) {
            scale += std::abs(p.coeff(j)) * rp;
            rp *= ra;
        }
        out.residual = std::max(out.residual, std::abs(p.eval(r)) / std::max(scale, 1e-300));
    }
    std::sort(out.roots.begin(), out.roots.end(), [](const Complex& x, const Complex& y) {
        if (x.real() != y.real()) return x.real() < y.real();
        return x.imag() < y.imag();
    });
    return out;
}

/// Conjugate-reversed polynomial at formal degree n: coefficient j of the result
/// is the conjugate of coefficient (n - j) of p.
inline ComplexPoly reciprocal_conjugate(const ComplexPoly& p, int formal_degree = -1) {
    if (p.is_zero()) throw ZeroPolynomial("reciprocal_conjugate");
    const int n = formal_degree < 0 ? p.degree() : formal_degree;
    if (n < p.degree()) throw BadParameters("reciprocal_conjugate: formal degree below actual degree");
    std::vector<Complex> c(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) c[static_cast<std::size_t>(j)] = std::conj(p.coeff(n - j));
    return ComplexPoly{std::move(c)};
}

/// One Cohn reduction at formal degree n: r_{n-1} = conj(a_0) * p - a_n * p*,
/// valid when |a_n| < |a_0|. The reduced polynomial has the same number of
/// zeros in the closed unit disk as p and degree at most n-1 (the leading term
/// cancels exactly, so it is built directly at the reduced length).
inline ComplexPoly cohn_step(const ComplexPoly& p, int formal_degree = -1) {
    if (p.is_zero()) throw ZeroPolynomial("cohn_step");
    const int n = formal_degree < 0 ? p.degree() : formal_degree;
    if (n < p.degree()) throw BadParameters("cohn_step: formal degree below actual degree");
    if (n == 0) throw CohnInapplicable("cohn_step: degree-zero input");
    const Complex a0 = p.coeff(0);
    const Complex an = p.coeff(n);
    if (!(std::abs(an) < std::abs(a0)))
        throw CohnInapplicable("cohn_step: requires |leading| < |constant|");
    std::vector<Complex> c(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j)
        c[static_cast<std::size_t>(j)] = std::conj(a0) * p.coeff(j) - an * std::conj(p.coeff(n - j));
    return ComplexPoly{std::move(c)};
}

namespace detail {

/// Root census with a guard band around |z| = 1. Roots inside the band cannot
/// be classified at working precision.
inline int disk_root_census(const ComplexPoly& p, double guard) {
    const RootSet rs = poly_roots(p);
    int count = 0;
    for (const Complex& r : rs.roots) {
        const double m = std::abs(r);
        if (std::abs(m - 1.0) < guard)
            throw Borderline("root with modulus within guard band of the unit circle");
        if (m < 1.0) ++count;
    }
    return count;
}

}  // namespace detail

/// Number of zeros of p in the closed unit disk, with multiplicity.
///
/// Iterates Cohn reductions while |a_n| < |a_0| (each preserves the count and
/// lowers the degree); exact zero constant terms are stripped as roots at the
/// origin. When the reduction stalls, falls back to a direct root census with
/// a guard band of `guard` around the circle (throws Borderline inside it).
inline int closed_disk_zero_count(const ComplexPoly& p, double guard = 1e-9) {
    if (p.is_zero()) throw ZeroPolynomial("closed_disk_zero_count");
    ComplexPoly q = p;
    int count = 0;
    for (;;) {
        while (!q.is_zero() && q.coeff(0) == Complex(0.0) && q.degree() >= 1) {
            // factor out z exactly
            std::vector<Complex> c(q.coeffs().begin() + 1, q.coeffs().end());
            q = ComplexPoly{std::move(c)};
            ++count;
        }
        if (q.degree() <= 0) return count;
        if (std::abs(q.leading()) < std::abs(q.coeff(0))) {
            q = cohn_step(q);
            continue;
        }
        return count + detail::disk_root_census(q, guard);
    }
}

/// The polynomial a_n z^n + a_0 (1 + z + ... + z^{n-1}) with a_0 > a_n > 0.
/// Every member has no zeros in the closed unit disk.
inline ComplexPoly disk_zero_free_family(int n, double a0, double an) {
    if (n < 1) throw BadParameters("disk_zero_free_family: n must be positive");
    if (!(a0 > an && an > 0.0)) throw BadParameters("disk_zero_free_family: requires a0 > an > 0");
    std::vector<Complex> c(static_cast<std::size_t>(n) + 1, Complex(a0));
    c.back() = an;
    return ComplexPoly{std::move(c)};
}

}  // namespace dbr

#endif  // DBR_POLY_HPP
