#ifndef DBR_HARDY_HPP
#define DBR_HARDY_HPP

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "dbr/blaschke.hpp"

namespace dbr {

enum class SpectrumKind { analytic, bilateral };

/// Truncated Fourier representation of a boundary function: coefficients at
/// indices 0..N (analytic) or -N..N (bilateral).
class FourierTruncation {
public:
    FourierTruncation() = default;

    FourierTruncation(int order, SpectrumKind kind)
        : order_(order), kind_(kind),
          coeffs_(kind == SpectrumKind::analytic ? static_cast<std::size_t>(order) + 1
                                                 : 2 * static_cast<std::size_t>(order) + 1,
                  0.0) {
        if (order < 0) throw BadParameters("FourierTruncation: negative order");
    }

    static FourierTruncation analytic_from(std::vector<Complex> coeffs, int order) {
        FourierTruncation f(order, SpectrumKind::analytic);
        const std::size_t n = std::min(coeffs.size(), f.coeffs_.size());
        for (std::size_t j = 0; j < n; ++j) f.coeffs_[j] = coeffs[j];
        return f;
    }

    static FourierTruncation from_poly(const ComplexPoly& p, int order) {
        if (p.degree() > order) throw BadParameters("polynomial degree exceeds truncation order");
        return analytic_from(p.coeffs(), order);
    }

    int order() const { return order_; }
    SpectrumKind kind() const { return kind_; }
    bool is_analytic() const { return kind_ == SpectrumKind::analytic; }
    int min_index() const { return is_analytic() ? 0 : -order_; }

    Complex coeff(int j) const {
        const int lo = min_index();
        if (j < lo || j > order_) return 0.0;
        return coeffs_[static_cast<std::size_t>(j - lo)];
    }

    void set_coeff(int j, Complex v) {
        const int lo = min_index();
        if (j < lo || j > order_) throw BadParameters("coefficient index out of range");
        coeffs_[static_cast<std::size_t>(j - lo)] = v;
    }

    double norm() const {
        double s = 0.0;
        for (const Complex& c : coeffs_) s += std::norm(c);
        return std::sqrt(s);
    }

    /// For analytic truncations: Horner sum of coeff(j) z^j.
    Complex eval(Complex z) const {
        if (!is_analytic()) throw BadParameters("eval requires an analytic truncation");
        Complex acc = 0.0;
        for (int j = order_; j >= 0; --j) acc = acc * z + coeff(j);
        return acc;
    }

    FourierTruncation& operator+=(const FourierTruncation& g) {
        require_same_shape(g);
        for (std::size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] += g.coeffs_[j];
        return *this;
    }

    FourierTruncation& operator-=(const FourierTruncation& g) {
        require_same_shape(g);
        for (std::size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] -= g.coeffs_[j];
        return *this;
    }

    FourierTruncation& operator*=(Complex s) {
        for (auto& c : coeffs_) c *= s;
        return *this;
    }

    friend FourierTruncation operator+(FourierTruncation f, const FourierTruncation& g) { return f += g; }
    friend FourierTruncation operator-(FourierTruncation f, const FourierTruncation& g) { return f -= g; }
    friend FourierTruncation operator*(Complex s, FourierTruncation f) { return f *= s; }

    /// Multiplication by z^k (analytic); top coefficients fall off the truncation.
    FourierTruncation shifted_up(int k) const {
        if (!is_analytic()) throw BadParameters("shift requires an analytic truncation");
        FourierTruncation out(order_, SpectrumKind::analytic);
        for (int j = order_; j >= k; --j) out.set_coeff(j, coeff(j - k));
        return out;
    }

private:
    void require_same_shape(const FourierTruncation& g) const {
        if (order_ != g.order_ || kind_ != g.kind_)
            throw OrderMismatch("truncations have different order or kind");
    }

    int order_ = 0;
    SpectrumKind kind_ = SpectrumKind::analytic;
    std::vector<Complex> coeffs_;
};

inline Complex h2_inner(const FourierTruncation& f, const FourierTruncation& g) {
    if (f.order() != g.order() || !f.is_analytic() || !g.is_analytic())
        throw OrderMismatch("h2_inner requires analytic truncations of equal order");
    Complex s = 0.0;
    for (int j = 0; j <= f.order(); ++j) s += f.coeff(j) * std::conj(g.coeff(j));
    return s;
}

inline FourierTruncation riesz_project(const FourierTruncation& f) {
    if (f.is_analytic()) return f;
    FourierTruncation out(f.order(), SpectrumKind::analytic);
    for (int j = 0; j <= f.order(); ++j) out.set_coeff(j, f.coeff(j));
    return out;
}

/// Cauchy product of analytic truncations; exact for indices up to the order.
inline FourierTruncation convolve(const FourierTruncation& f, const FourierTruncation& g) {
    if (f.order() != g.order() || !f.is_analytic() || !g.is_analytic())
        throw OrderMismatch("convolve requires analytic truncations of equal order");
    FourierTruncation out(f.order(), SpectrumKind::analytic);
    for (int j = 0; j <= f.order(); ++j) {
        Complex s = 0.0;
        for (int i = 0; i <= j; ++i) s += f.coeff(i) * g.coeff(j - i);
        out.set_coeff(j, s);
    }
    return out;
}

/// Bilateral coefficients of a boundary function by uniform sampling at 4N
/// points. The caller is responsible for the sampled function being smooth on
/// the circle; rational overloads check for poles near the circle.
inline FourierTruncation sample_to_fourier(const std::function<Complex(Complex)>& f, int order) {
    const int samples = 4 * std::max(order, 1);
    const auto grid = unit_circle_grid(samples);
    std::vector<Complex> values(grid.size());
    for (std::size_t m = 0; m < grid.size(); ++m) values[m] = f(grid[m]);

    FourierTruncation out(order, SpectrumKind::bilateral);
    const double step = 2.0 * 3.14159265358979323846 / samples;
    for (int j = -order; j <= order; ++j) {
        Complex s = 0.0;
        for (int m = 0; m < samples; ++m) s += values[static_cast<std::size_t>(m)] * std::polar(1.0, -step * m * j);
        out.set_coeff(j, s / static_cast<double>(samples));
    }
    return out;
}

/// Fourier truncation of a rational boundary function. Throws PoleOnCircle if
/// a denominator root sits within 1e-6 of the circle and TailTooLarge when the
/// top retained coefficient exceeds 1e-8 (the order is too small for the
/// requested accuracy).
inline FourierTruncation boundary_to_fourier(const RationalBoundaryFn& f, int order,
                                             SpectrumKind kind = SpectrumKind::bilateral,
                                             double tail_tol = 1e-8) {
    if (f.den_root_circle_gap() < 1e-6) throw PoleOnCircle("denominator root too close to |z| = 1");
    FourierTruncation bilateral =
        sample_to_fourier([&f](Complex z) { return f.eval(z); }, order);
    const double scale = std::max(bilateral.norm(), 1e-30);
    if (std::abs(bilateral.coeff(order)) > tail_tol * scale ||
        std::abs(bilateral.coeff(-order)) > tail_tol * scale)
        throw TailTooLarge("truncation order too small for the requested accuracy");
    return kind == SpectrumKind::bilateral ? bilateral : riesz_project(bilateral);
}

inline FourierTruncation boundary_to_fourier(const BlaschkeProduct& B, int order,
                                             SpectrumKind kind = SpectrumKind::bilateral) {
    return boundary_to_fourier(B.as_rational(), order, kind);
}

/// Conjugate boundary function: coefficient j of conj(f) is conj(coeff(-j)).
inline FourierTruncation conj_symbol(const FourierTruncation& f) {
    FourierTruncation out(f.order(), SpectrumKind::bilateral);
    for (int j = -f.order(); j <= f.order(); ++j) out.set_coeff(j, std::conj(f.coeff(-j)));
    return out;
}

/// Dense truncated Toeplitz matrix of a bounded symbol: entry (j, k) is the
/// symbol coefficient at j - k. Applying it to an analytic truncation is the
/// truncation of P(symbol * f).
class ToeplitzMatrix {
public:
    explicit ToeplitzMatrix(const FourierTruncation& symbol) : order_(symbol.order()) {
        const int n = order_ + 1;
        mat_ = Eigen::MatrixXcd::Zero(n, n);
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) mat_(j, k) = symbol.coeff(j - k);
    }

    static ToeplitzMatrix from_symbol(const RationalBoundaryFn& f, int order) {
        return ToeplitzMatrix(boundary_to_fourier(f, order));
    }

    int order() const { return order_; }
    const Eigen::MatrixXcd& matrix() const { return mat_; }

    FourierTruncation apply(const FourierTruncation& f) const {
        if (f.order() != order_ || !f.is_analytic())
            throw OrderMismatch("Toeplitz apply requires an analytic truncation of matching order");
        Eigen::VectorXcd v(order_ + 1);
        for (int j = 0; j <= order_; ++j) v(j) = f.coeff(j);
        const Eigen::VectorXcd w = mat_ * v;
        FourierTruncation out(order_, SpectrumKind::analytic);
        for (int j = 0; j <= order_; ++j) out.set_coeff(j, w(j));
        return out;
    }

private:
    int order_;
    Eigen::MatrixXcd mat_;
};

inline FourierTruncation toeplitz_apply(const ToeplitzMatrix& T, const FourierTruncation& f) {
    return T.apply(f);
}

/// Orthonormal basis of the model space K_I = H^2 (-) I H^2 for a finite
/// Blaschke product I, built from Szego kernels at the zeros of I (derivative
/// kernels for repeated zeros) and orthonormalized by QR.
struct ModelSpaceBasis {
    BlaschkeProduct inner = BlaschkeProduct::monomial(1);
    std::vector<FourierTruncation> vectors;
    int order = 0;

    int dimension() const { return static_cast<int>(vectors.size()); }
};

inline ModelSpaceBasis model_space_basis(const BlaschkeProduct& I, int order) {
    const int d = I.degree();
    if (d < 1) throw BadParameters("model_space_basis: inner function must be nonconstant");
    if (order < 8 * d) throw BadParameters("model_space_basis: order must be at least 8 * deg I");

    // multiplicity of each zero seen so far, matching exactly repeated entries
    std::vector<Complex> seen;
    Eigen::MatrixXcd raw(order + 1, d);
    int col = 0;
    for (const Complex& a : I.zeros()) {
        int mult = 0;
        for (const Complex& s : seen)
            if (s == a) ++mult;
        seen.push_back(a);
        // z^k / (1 - conj(a) z)^{k+1}: coefficient of z^j is C(j, k) conj(a)^{j-k}
        const int k = mult;
        const Complex ac = std::conj(a);
        for (int j = 0; j <= order; ++j) {
            if (j < k) {
                raw(j, col) = 0.0;
                continue;
            }
            double binom = 1.0;
            for (int i = 0; i < k; ++i) binom *= static_cast<double>(j - i) / static_cast<double>(i + 1);
            raw(j, col) = binom * std::pow(ac, j - k);
        }
        ++col;
    }

    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(raw);
    const Eigen::MatrixXcd R = qr.matrixQR().topRows(d).triangularView<Eigen::Upper>();
    double dmin = std::numeric_limits<double>::infinity(), dmax = 0.0;
    for (int j = 0; j < d; ++j) {
        const double r = std::abs(R(j, j));
        dmin = std::min(dmin, r);
        dmax = std::max(dmax, r);
    }
    if (!(dmin > 1e-12 * dmax))
        throw DegenerateGram("model space zeros too clustered for stable orthonormalization");

    const Eigen::MatrixXcd Qthin =
        qr.householderQ() * Eigen::MatrixXcd::Identity(order + 1, d);

    ModelSpaceBasis basis;
    basis.inner = I;
    basis.order = order;
    basis.vectors.reserve(static_cast<std::size_t>(d));
    for (int c = 0; c < d; ++c) {
        FourierTruncation v(order, SpectrumKind::analytic);
        for (int j = 0; j <= order; ++j) v.set_coeff(j, Qthin(j, c));
        basis.vectors.push_back(std::move(v));
    }
    return basis;
}

enum class OuterMode { strict, lenient };

struct OuterVerdict {
    bool outer = false;
    bool borderline = false;  // a zero sat inside the circle guard band
};

/// Rational-function outer test. Strict mode demands no numerator zeros in the
/// closed disk; lenient mode allows zeros on the circle itself (needed for
/// functions like (1-z)/2 that are outer with boundary zeros). Poles must stay
/// outside the closed disk in both modes.
inline OuterVerdict outer_check(const RationalBoundaryFn& f, OuterMode mode = OuterMode::strict) {
    if (f.is_zero()) throw BadParameters("outer_check: zero function");

    OuterVerdict v;
    if (f.den().degree() >= 1)
        for (const Complex& r : poly_roots(f.den()).roots)
            if (std::abs(r) <= 1.0 + 1e-9) return v;  // pole in the closed disk: not even H^2

    if (f.num().degree() < 1) {
        v.outer = true;
        return v;
    }
    if (mode == OuterMode::strict) {
        try {
            v.outer = closed_disk_zero_count(f.num()) == 0;
        } catch (const Borderline&) {
            v.outer = false;
            v.borderline = true;
        }
        return v;
    }
    v.outer = true;
    for (const Complex& r : poly_roots(f.num()).roots)
        if (std::abs(r) < 1.0 - 1e-9) v.outer = false;
    return v;
}

}  // namespace dbr

#endif  // DBR_HARDY_HPP
