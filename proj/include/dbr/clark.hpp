#ifndef DBR_CLARK_HPP
#define DBR_CLARK_HPP

#include <algorithm>
#include <functional>
#include <vector>

#include "dbr/hardy.hpp"

namespace dbr {

struct ClarkAtom {
    Complex zeta;
    double mass;
};

/// Finitely many unimodular atoms with positive masses.
class AtomicMeasure {
public:
    AtomicMeasure() = default;

    explicit AtomicMeasure(std::vector<ClarkAtom> atoms) : atoms_(std::move(atoms)) {
        for (const ClarkAtom& a : atoms_) {
            if (std::abs(std::abs(a.zeta) - 1.0) > 1e-10)
                throw BadParameters("AtomicMeasure: atom off the unit circle");
            if (!(a.mass > 0.0)) throw BadParameters("AtomicMeasure: nonpositive mass");
        }
    }

    const std::vector<ClarkAtom>& atoms() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }

    double total_mass() const {
        double s = 0.0;
        for (const ClarkAtom& a : atoms_) s += a.mass;
        return s;
    }

private:
    std::vector<ClarkAtom> atoms_;
};

/// Solutions of I = lambda on the circle with masses 1/|I'|. For a finite
/// Blaschke product of degree d these are exactly d simple unimodular points;
/// a root away from the circle signals a numerical failure, not a feature.
inline AtomicMeasure clark_atoms(const BlaschkeProduct& I, Complex lambda) {
    if (std::abs(std::abs(lambda) - 1.0) > 1e-12)
        throw BadParameters("clark_atoms: lambda must be unimodular");
    if (I.degree() < 1) throw BadParameters("clark_atoms: inner function must be nonconstant");

    const ComplexPoly equation = I.numerator() - lambda * I.denominator();
    const RootSet rs = poly_roots(equation);
    if (static_cast<int>(rs.roots.size()) != I.degree())
        throw RootOffCircle("level-set equation lost degree");

    std::vector<ClarkAtom> atoms;
    atoms.reserve(rs.roots.size());
    for (const Complex& r : rs.roots) {
        if (std::abs(std::abs(r) - 1.0) > 1e-8)
            throw RootOffCircle("root of I = lambda strayed from the circle");
        const Complex zeta = r / std::abs(r);
        if (std::abs(I.eval(zeta) - lambda) > 1e-9)
            throw RootOffCircle("polished atom fails to map to lambda");
        const double deriv = I.boundary_derivative_modulus(zeta);
        if (deriv < 1e-12) throw DegenerateDerivative("|I'| vanishes at an atom");
        atoms.push_back({zeta, 1.0 / deriv});
    }
    // deterministic order: angle in [0, 2pi), tolerant of roundoff below 0
    const auto angle_key = [](const ClarkAtom& a) {
        double t = std::arg(a.zeta);
        if (t < -1e-9) t += 2.0 * 3.14159265358979323846;
        return t;
    };
    std::sort(atoms.begin(), atoms.end(),
              [&angle_key](const ClarkAtom& x, const ClarkAtom& y) { return angle_key(x) < angle_key(y); });
    return AtomicMeasure(std::move(atoms));
}

namespace detail {
inline void require_interior(Complex z, double bound) {
    if (std::abs(z) > bound)
        throw TooCloseToBoundary("evaluation point too close to the unit circle");
}
}  // namespace detail

/// Integral of (zeta + z)/(zeta - z) against the atoms, scaled by coeff.
inline Complex herglotz_atoms(const AtomicMeasure& nu, Complex z, double coeff = 1.0) {
    detail::require_interior(z, 0.95);
    Complex s = 0.0;
    for (const ClarkAtom& a : nu.atoms()) s += a.mass * (a.zeta + z) / (a.zeta - z);
    return coeff * s;
}

/// Integral of (zeta + z)/(zeta - z) against density * dm by trapezoidal
/// quadrature on a uniform grid (spectrally accurate for smooth densities).
inline Complex herglotz_density(const std::function<double(Complex)>& density, Complex z,
                                int grid_points = 512) {
    detail::require_interior(z, 0.95);
    Complex s = 0.0;
    for (const Complex& zeta : unit_circle_grid(grid_points))
        s += density(zeta) * (zeta + z) / (zeta - z);
    return s / static_cast<double>(grid_points);
}

/// Max over the grid of the defect in the Poisson representation of
/// (1 - |I|^2)/|lambda - I|^2 by the lambda-level atoms.
inline double verify_poisson_identity(const BlaschkeProduct& I, const std::vector<Complex>& grid,
                                      Complex lambda = 1.0) {
    const AtomicMeasure sigma = clark_atoms(I, lambda);
    double worst = 0.0;
    for (const Complex& z : grid) {
        if (std::abs(z) > 0.9) throw BadParameters("verify_poisson_identity: grid must stay within |z| <= 0.9");
        const Complex Iz = I.eval(z);
        const double lhs = (1.0 - std::norm(Iz)) / std::norm(lambda - Iz);
        double rhs = 0.0;
        for (const ClarkAtom& a : sigma.atoms()) rhs += a.mass * (1.0 - std::norm(z)) / std::norm(a.zeta - z);
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

struct Fraction {
    long num = 0;
    long den = 1;
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// Lebesgue decomposition of the measure representing (1+b)/(1-b):
/// d(mu) = |F|^2 dm + c d(sigma), with sigma the lambda = 1 Clark measure of
/// the inner function and htilde the bounded function whose real boundary part
/// equals |F|^2.
struct MeasureDecomposition {
    RationalBoundaryFn density_root;  // F
    Fraction singular_coeff;          // c
    AtomicMeasure singular;           // sigma
    RationalBoundaryFn htilde;

    double ac_density(Complex zeta) const { return std::norm(density_root.eval(zeta)); }
};

namespace detail {

inline void check_decomposition(const MeasureDecomposition& dec, const HbPair& pair,
                                const BlaschkeProduct& inner) {
    // htilde stays bounded on the closed disk
    try {
        if (closed_disk_zero_count(dec.htilde.den()) != 0)
            throw InvariantViolation("htilde has a pole in the closed unit disk");
    } catch (const Borderline&) {
        throw InvariantViolation("htilde pole too close to the circle to certify boundedness");
    }

    // Re htilde = |F|^2 on the boundary
    for (const Complex& zeta : unit_circle_grid(512)) {
        const double lhs = dec.htilde.eval(zeta).real();
        const double rhs = dec.ac_density(zeta);
        if (std::abs(lhs - rhs) > 1e-10)
            throw InvariantViolation("Re htilde != |F|^2 at grid point re=" +
                                     std::to_string(zeta.real()) + " im=" + std::to_string(zeta.imag()));
    }

    // F agrees with a/(1-b) away from the boundary
    {
        int checked = 0;
        for (const Complex& zeta : unit_circle_grid(16)) {
            const Complex z = 0.83 * zeta;
            const Complex direct = pair.a.eval(z) / (1.0 - pair.b.eval(z));
            if (std::abs(dec.density_root.eval(z) - direct) > 1e-9)
                throw InvariantViolation("F deviates from a/(1-b) in the disk");
            ++checked;
        }
        (void)checked;
    }

    // Herglotz consistency: (1+b)/(1-b) minus the reconstructed transform,
    // with the imaginary constant fitted at z = 0.
    const auto density = [&dec](Complex zeta) { return dec.ac_density(zeta); };
    const double c = dec.singular_coeff.value();
    const auto reconstruct = [&](Complex z) {
        return herglotz_density(density, z) + c * herglotz_atoms(dec.singular, z);
    };
    const Complex lhs0 = (1.0 + pair.b.eval(0.0)) / (1.0 - pair.b.eval(0.0));
    const Complex kappa(0.0, (lhs0 - reconstruct(0.0)).imag());
    for (int ring = 1; ring <= 5; ++ring) {
        const double r = 0.18 * ring;
        for (int k = 0; k < 5; ++k) {
            const Complex z = std::polar(r, 2.0 * 3.14159265358979323846 * k / 5.0 + 0.37);
            const Complex lhs = (1.0 + pair.b.eval(z)) / (1.0 - pair.b.eval(z));
            if (std::abs(lhs - reconstruct(z) - kappa) > 1e-7)
                throw InvariantViolation("Herglotz reconstruction residual exceeds 1e-7");
        }
    }

    // probability normalization when the inner function vanishes at the origin
    if (inner.vanishes_at_origin() && std::abs(dec.singular.total_mass() - 1.0) > 1e-8)
        throw InvariantViolation("sigma total mass deviates from 1 despite I(0) = 0");
}

}  // namespace detail

/// Builds the measure decomposition for either family.
///
/// family1 (b = I^n (1+I)/2): F = 1/(I^n + 2 I^{n-1} + ... + 2 I + 2) and
/// c = 2/(2n+1); for n = 0 the quotient a/(1-b) is formed directly and its
/// removable factor cancelled, which lands on F = 1 without relying on an
/// empty-sum reading of the general pattern.
/// family2 (b = I (1+I^2)/2): F = (1+I)/(2+I+I^2) and c = 1/2.
inline MeasureDecomposition decompose_mu(const PairSpec& spec) {
    spec.validate();
    const HbPair pair = make_pair(spec);
    const BlaschkeProduct& I = spec.inner;

    MeasureDecomposition dec;
    dec.singular = clark_atoms(I, 1.0);

    if (spec.family == PairFamily::family1) {
        const int n = spec.n;
        dec.singular_coeff = {2, 2L * n + 1};
        if (n == 0) {
            const RationalBoundaryFn one_minus_b =
                RationalBoundaryFn::constant(1.0) - pair.b;
            dec.density_root = (pair.a / one_minus_b).reduced();
        } else {
            std::vector<Complex> den_w(static_cast<std::size_t>(n) + 1, Complex(2.0));
            den_w.back() = 1.0;
            dec.density_root = compose_in_inner({1.0}, den_w, I);
        }
        std::vector<Complex> tnum(static_cast<std::size_t>(n) + 1);
        std::vector<Complex> tden(static_cast<std::size_t>(n) + 1);
        for (int j = 0; j < n; ++j) {
            tnum[static_cast<std::size_t>(j)] = Complex(4.0 * n - 2.0 - 8.0 * j);
            tden[static_cast<std::size_t>(j)] = Complex(2.0 * (2 * n + 1));
        }
        tnum.back() = Complex(-(2.0 * n - 1.0));
        tden.back() = Complex(2.0 * n + 1.0);
        dec.htilde = compose_in_inner(tnum, tden, I);
    } else {
        dec.singular_coeff = {1, 2};
        dec.density_root = compose_in_inner({1.0, 1.0}, {2.0, 1.0, 1.0}, I);
        dec.htilde = compose_in_inner({2.0, 1.0, -1.0}, {4.0, 2.0, 2.0}, I);
    }

    detail::check_decomposition(dec, pair, I);
    return dec;
}

}  // namespace dbr

#endif  // DBR_CLARK_HPP
