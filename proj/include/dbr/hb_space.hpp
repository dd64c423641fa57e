#ifndef DBR_HB_SPACE_HPP
#define DBR_HB_SPACE_HPP

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "dbr/clark.hpp"

namespace dbr {

/// Element of H(b) at a fixed truncation: the function, its companion f+
/// solving T_abar f+ = T_bbar f, and the H^2 defect of that equation. The
/// defect is the honest measure of "in H(b) at this truncation": members have
/// companions resolvable within the companion order, non-members do not.
struct HbVector {
    FourierTruncation f;
    FourierTruncation fplus;
    double residual = 0.0;
};

struct KernelFunction {
    Complex w;
    int k = 0;
    bool boundary = false;
    HbVector vec;

    const FourierTruncation& values() const { return vec.f; }
};

/// A pair (b, a) with its measure decomposition, truncation order, cached
/// Toeplitz matrices and boundary quadrature. Immutable after construction;
/// all operations are const and safe to call concurrently.
class HbContext {
public:
    explicit HbContext(PairSpec spec, int order = 256, double accept_tol = 1e-5)
        : spec_(std::move(spec)),
          pair_(make_pair(spec_)),
          dec_(decompose_mu(spec_)),
          order_(order),
          companion_order_(order / 2),
          accept_tol_(accept_tol) {
        if (order_ < 32 * pair_.b.num().degree())
            throw BadParameters("HbContext: truncation order below 32 * deg(num b)");

        bhat_ = boundary_to_fourier(pair_.b, order_, SpectrumKind::analytic);
        ahat_ = boundary_to_fourier(pair_.a, order_, SpectrumKind::analytic);

        const int n = order_ + 1, m = companion_order_ + 1;
        tbbar_ = Eigen::MatrixXcd::Zero(n, n);
        for (int j = 0; j < n; ++j)
            for (int k = j; k < n; ++k) tbbar_(j, k) = std::conj(bhat_.coeff(k - j));
        tabar_ = Eigen::MatrixXcd::Zero(n, m);
        for (int j = 0; j < n && j < m; ++j)
            for (int k = j; k < m; ++k) tabar_(j, k) = std::conj(ahat_.coeff(k - j));

        quad_grid_ = unit_circle_grid(512);
        quad_density_.reserve(quad_grid_.size());
        for (const Complex& zeta : quad_grid_) quad_density_.push_back(dec_.ac_density(zeta));
    }

    const PairSpec& spec() const { return spec_; }
    const HbPair& pair() const { return pair_; }
    const MeasureDecomposition& decomposition() const { return dec_; }
    int order() const { return order_; }
    int companion_order() const { return companion_order_; }
    const FourierTruncation& b_coeffs() const { return bhat_; }
    const FourierTruncation& a_coeffs() const { return ahat_; }
    const Eigen::MatrixXcd& toeplitz_bbar() const { return tbbar_; }
    const Eigen::MatrixXcd& toeplitz_abar() const { return tabar_; }

    FourierTruncation truncate(const ComplexPoly& p) const {
        return FourierTruncation::from_poly(p, order_);
    }

    FourierTruncation truncate(const RationalBoundaryFn& f) const {
        return boundary_to_fourier(f, order_, SpectrumKind::analytic);
    }

    /// Companion solve. The top block of T_abar is upper triangular with
    /// diagonal conj(a(0)) != 0, so the companion coefficients come from exact
    /// back substitution and the defect is what the companion order cannot
    /// reach: the content of T_bbar f beyond that order.
    HbVector embed(const FourierTruncation& f) const {
        if (f.order() != order_ || !f.is_analytic())
            throw OrderMismatch("embed requires an analytic truncation at the context order");
        const int n = order_ + 1, m = companion_order_ + 1;
        Eigen::VectorXcd v(n);
        for (int j = 0; j < n; ++j) v(j) = f.coeff(j);
        const Eigen::VectorXcd rhs = tbbar_ * v;

        const Eigen::VectorXcd x =
            tabar_.topRows(m).triangularView<Eigen::Upper>().solve(rhs.head(m));
        const double defect = (tabar_ * x - rhs).norm();

        HbVector out;
        out.f = f;
        out.fplus = FourierTruncation(order_, SpectrumKind::analytic);
        for (int j = 0; j < m; ++j) out.fplus.set_coeff(j, x(j));
        out.residual = defect;
        return out;
    }

    HbVector embed(const ComplexPoly& p) const { return embed(truncate(p)); }
    HbVector embed(const RationalBoundaryFn& f) const { return embed(truncate(f)); }

    bool accepted(const HbVector& v) const {
        return v.residual <= accept_tol_ * std::max(v.f.norm(), 1e-30);
    }

    void require_accepted(const HbVector& v) const {
        if (!accepted(v))
            throw NotInHb("companion defect " + std::to_string(v.residual) +
                          " exceeds acceptance threshold at this truncation");
    }

    /// <f, g>_b = <f, g> + <f+, g+>.
    Complex inner(const HbVector& f, const HbVector& g) const {
        require_accepted(f);
        require_accepted(g);
        return h2_inner(f.f, g.f) + h2_inner(f.fplus, g.fplus);
    }

    double norm(const HbVector& f) const { return std::sqrt(std::abs(inner(f, f).real())); }

    /// Integral of q1 conj(q2) against the decomposed measure: 512-point
    /// quadrature on the smooth density plus the exact atom sum.
    Complex clark_inner(const ComplexPoly& q1, const ComplexPoly& q2) const {
        check_poly_degree(q1);
        check_poly_degree(q2);
        Complex s = 0.0;
        for (std::size_t i = 0; i < quad_grid_.size(); ++i)
            s += q1.eval(quad_grid_[i]) * std::conj(q2.eval(quad_grid_[i])) * quad_density_[i];
        s /= static_cast<double>(quad_grid_.size());
        const double c = dec_.singular_coeff.value();
        for (const ClarkAtom& atom : dec_.singular.atoms())
            s += c * atom.mass * q1.eval(atom.zeta) * std::conj(q2.eval(atom.zeta));
        return s;
    }

    double clark_norm(const ComplexPoly& q) const {
        return std::sqrt(std::abs(clark_inner(q, q).real()));
    }

    /// V_b q = (1 - b) * Cauchy transform of q d(mu), as an analytic
    /// truncation: coefficient j of the transform is the moment of
    /// q conj(zeta^j), quadratured on the density and exact on the atoms.
    HbVector vb_embed(const ComplexPoly& q) const {
        check_poly_degree(q);
        const std::size_t grid = quad_grid_.size();
        std::vector<Complex> qv(grid);
        for (std::size_t i = 0; i < grid; ++i) qv[i] = q.eval(quad_grid_[i]) * quad_density_[i];

        FourierTruncation cauchy(order_, SpectrumKind::analytic);
        const double c = dec_.singular_coeff.value();
        std::vector<Complex> atom_val, atom_pow;
        for (const ClarkAtom& atom : dec_.singular.atoms()) {
            atom_val.push_back(c * atom.mass * q.eval(atom.zeta));
            atom_pow.push_back(1.0);
        }
        std::vector<Complex> grid_pow(grid, 1.0);  // conj(zeta)^j, updated per j

        for (int j = 0; j <= order_; ++j) {
            Complex s = 0.0;
            for (std::size_t i = 0; i < grid; ++i) {
                s += qv[i] * grid_pow[i];
                grid_pow[i] *= std::conj(quad_grid_[i]);
            }
            s /= static_cast<double>(grid);
            for (std::size_t k = 0; k < atom_val.size(); ++k) {
                s += atom_val[k] * atom_pow[k];
                atom_pow[k] *= std::conj(dec_.singular.atoms()[k].zeta);
            }
            cauchy.set_coeff(j, s);
        }

        FourierTruncation one_minus_b(order_, SpectrumKind::analytic);
        one_minus_b.set_coeff(0, 1.0);
        one_minus_b -= bhat_;
        return embed(convolve(one_minus_b, cauchy));
    }

    /// Reproducing kernel at an interior point, assembled directly in
    /// coefficients: k_w(z) = (1 - conj(b(w)) b(z))/(1 - conj(w) z).
    KernelFunction kernel_at(Complex w) const {
        if (std::abs(w) > 0.95) throw TooCloseToBoundary("kernel point too close to the circle");
        const Complex beta = std::conj(pair_.b.eval(w));
        const Complex wc = std::conj(w);
        FourierTruncation k(order_, SpectrumKind::analytic);
        Complex wpow = 1.0;
        for (int j = 0; j <= order_; ++j) {
            Complex conv = 0.0;  // sum_{i <= j} bhat(i) wc^{j-i}
            Complex wp = 1.0;
            for (int i = j; i >= 0; --i) {
                conv += bhat_.coeff(i) * wp;
                wp *= wc;
            }
            k.set_coeff(j, wpow - beta * conv);
            wpow *= wc;
        }
        KernelFunction out{w, 0, false, embed(k)};
        verify_reproducing(out);
        return out;
    }

    /// Kernel for evaluation of the k-th derivative: the closed form of
    /// d^k/d(conj w)^k applied to the reproducing kernel. Interior points are
    /// assembled as rational functions; unimodular points take the radial
    /// limit, with the removable factor (z - w)^{k+1} cancelled exactly.
    KernelFunction derivative_kernel(Complex w, int k) const {
        if (k < 0) throw BadParameters("derivative order must be nonnegative");
        const bool boundary = std::abs(std::abs(w) - 1.0) <= 1e-12;
        if (!boundary && std::abs(w) > 0.95)
            throw TooCloseToBoundary("derivative kernel point neither interior nor unimodular");
        if (std::abs(pair_.b.den().eval(w)) < 1e-12 * std::max(pair_.b.den().max_abs_coeff(), 1.0))
            throw PoleAtPoint("b has a pole at the kernel point");

        const Complex wc = std::conj(w);
        const ComplexPoly& pb = pair_.b.num();
        const ComplexPoly& qb = pair_.b.den();
        const ComplexPoly lin{1.0, -wc};  // 1 - conj(w) z

        // derivatives of b at w, conjugated
        std::vector<Complex> beta(static_cast<std::size_t>(k) + 1);
        RationalBoundaryFn der = pair_.b;
        beta[0] = std::conj(der.eval(w));
        for (int i = 1; i <= k; ++i) {
            der = der.derivative();
            beta[static_cast<std::size_t>(i)] = std::conj(der.eval(w));
        }

        const auto factorial = [](int i) {
            double f = 1.0;
            for (int t = 2; t <= i; ++t) f *= t;
            return f;
        };
        const auto binom = [&factorial](int n, int i) {
            return factorial(n) / (factorial(i) * factorial(n - i));
        };

        ComplexPoly num =
            factorial(k) * (ComplexPoly::monomial(k) * (qb - beta[0] * pb));
        for (int i = 1; i <= k; ++i) {
            const Complex scale = -binom(k, i) * beta[static_cast<std::size_t>(i)] * factorial(k - i);
            ComplexPoly term = ComplexPoly::monomial(k - i) * pb * lin.pow(i);
            num = num + scale * term;
        }
        RationalBoundaryFn kernel(num, lin.pow(k + 1) * qb);
        if (boundary) {
            kernel = kernel.reduced(1e-7);
            if (kernel.den_root_circle_gap() < 1e-6)
                throw PoleAtPoint("boundary kernel has a non-removable circle singularity");
        }
        KernelFunction out{w, k, boundary, embed(boundary_to_fourier(
                                               kernel, order_, SpectrumKind::analytic, /*tail_tol=*/1.0))};
        if (k == 0) verify_reproducing(out);
        return out;
    }

    /// Multiplication by z followed by a fresh companion solve. H(b) is
    /// shift-invariant for nonextreme b, so the result must stay accepted.
    HbVector shift(const HbVector& v) const {
        require_accepted(v);
        HbVector out = embed(v.f.shifted_up(1));
        require_accepted(out);
        return out;
    }

private:
    void check_poly_degree(const ComplexPoly& q) const {
        if (q.degree() > order_ / 4)
            throw BadParameters("polynomial degree exceeds order/4 accuracy budget");
    }

    void verify_reproducing(const KernelFunction& kf) const {
        // probe with a fixed low-degree polynomial
        const ComplexPoly probe{1.0, Complex(1.0 / 3.0), Complex(0.0, 0.25)};
        const HbVector pv = embed(probe);
        Complex expected;
        if (kf.k == 0) {
            expected = probe.eval(kf.w);
        } else {
            ComplexPoly d = probe;
            for (int i = 0; i < kf.k; ++i) d = d.derivative();
            expected = d.eval(kf.w);
        }
        const Complex got = h2_inner(pv.f, kf.vec.f) + h2_inner(pv.fplus, kf.vec.fplus);
        const double scale = 1.0 + std::abs(expected);
        if (std::abs(got - expected) > 1e-6 * scale * std::max(1.0, kf.vec.f.norm()))
            throw InvariantViolation("kernel fails to reproduce the probe evaluation");
    }

    PairSpec spec_;
    HbPair pair_;
    MeasureDecomposition dec_;
    int order_;
    int companion_order_;
    double accept_tol_;
    FourierTruncation bhat_;
    FourierTruncation ahat_;
    Eigen::MatrixXcd tbbar_;
    Eigen::MatrixXcd tabar_;
    std::vector<Complex> quad_grid_;
    std::vector<double> quad_density_;
};

inline Complex hb_inner_sarason(const HbContext& ctx, const HbVector& f, const HbVector& g) {
    return ctx.inner(f, g);
}

inline Complex hb_inner_clark(const HbContext& ctx, const ComplexPoly& q1, const ComplexPoly& q2) {
    return ctx.clark_inner(q1, q2);
}

}  // namespace dbr

#endif  // DBR_HB_SPACE_HPP
