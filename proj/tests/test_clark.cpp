#include <catch2/catch_amalgamated.hpp>

#include "dbr/clark.hpp"
#include "dbr/rng.hpp"

using dbr::AtomicMeasure;
using dbr::BlaschkeProduct;
using dbr::ClarkAtom;
using dbr::Complex;
using dbr::PairFamily;
using dbr::PairSpec;

TEST_CASE("atoms of monomial inner functions", "[clark]") {
    const auto single = dbr::clark_atoms(BlaschkeProduct::monomial(1), 1.0);
    REQUIRE(single.size() == 1);
    CHECK(std::abs(single.atoms()[0].zeta - Complex(1.0)) < 1e-12);
    CHECK(single.atoms()[0].mass == Catch::Approx(1.0));

    const auto square = dbr::clark_atoms(BlaschkeProduct::monomial(2), 1.0);
    REQUIRE(square.size() == 2);
    CHECK(std::abs(square.atoms()[0].zeta - Complex(1.0)) < 1e-10);
    CHECK(std::abs(square.atoms()[1].zeta - Complex(-1.0)) < 1e-10);
    CHECK(square.atoms()[0].mass == Catch::Approx(0.5));
    CHECK(square.atoms()[1].mass == Catch::Approx(0.5));

    const auto rotated = dbr::clark_atoms(BlaschkeProduct::monomial(2), -1.0);
    REQUIRE(rotated.size() == 2);
    CHECK(std::abs(rotated.atoms()[0].zeta - Complex(0.0, 1.0)) < 1e-10);
    CHECK(std::abs(rotated.atoms()[1].zeta - Complex(0.0, -1.0)) < 1e-10);
    CHECK(rotated.atoms()[0].mass == Catch::Approx(0.5));
}

TEST_CASE("atoms land on the level set and normalize", "[clark]") {
    dbr::Rng rng(31);
    const BlaschkeProduct I({0.0, 0.4, Complex(-0.3, 0.2)});
    for (int trial = 0; trial < 4; ++trial) {
        const Complex lambda = rng.unimodular();
        const auto sigma = dbr::clark_atoms(I, lambda);
        REQUIRE(static_cast<int>(sigma.size()) == I.degree());
        for (const ClarkAtom& a : sigma.atoms()) {
            CHECK(std::abs(std::abs(a.zeta) - 1.0) < 1e-10);
            CHECK(std::abs(I.eval(a.zeta) - lambda) < 1e-9);
        }
    }
    // I(0) = 0 forces unit total mass
    CHECK(dbr::clark_atoms(I, 1.0).total_mass() == Catch::Approx(1.0).margin(1e-8));

    CHECK_THROWS_AS(dbr::clark_atoms(I, Complex(0.5, 0.0)), dbr::BadParameters);
}

TEST_CASE("Herglotz transforms", "[clark]") {
    const AtomicMeasure delta({{Complex(1.0), 1.0}});
    CHECK(std::abs(dbr::herglotz_atoms(delta, 0.0) - Complex(1.0)) < 1e-14);

    // normalized Lebesgue measure has transform identically 1
    const auto lebesgue = [](Complex) { return 1.0; };
    CHECK(std::abs(dbr::herglotz_density(lebesgue, Complex(0.3, 0.0)) - Complex(1.0)) < 1e-12);

    // sigma for I = z^2 matches (1 + I)/(1 - I) at interior points
    const auto sigma = dbr::clark_atoms(BlaschkeProduct::monomial(2), 1.0);
    const Complex at_half = dbr::herglotz_atoms(sigma, 0.5);
    CHECK(std::abs(at_half - Complex(5.0 / 3.0)) < 1e-12);

    CHECK_THROWS_AS(dbr::herglotz_atoms(sigma, Complex(0.97, 0.0)), dbr::TooCloseToBoundary);
}

TEST_CASE("Poisson identity for the singular part", "[clark]") {
    CHECK(dbr::verify_poisson_identity(BlaschkeProduct::monomial(1), {Complex(0.0)}) < 1e-15);

    std::vector<Complex> grid;
    for (int ring = 1; ring <= 5; ++ring)
        for (int k = 0; k < 5; ++k)
            grid.push_back(std::polar(0.17 * ring, 2.0 * 3.14159265358979323846 * k / 5.0 + 0.2));

    CHECK(dbr::verify_poisson_identity(BlaschkeProduct::monomial(2), grid) < 1e-8);
    CHECK(dbr::verify_poisson_identity(BlaschkeProduct({0.0, 0.4, Complex(0.0, -0.3)}), grid) < 1e-8);
}

TEST_CASE("measure decomposition, family 1", "[clark]") {
    // n = 0 reduces to the constant density F = 1 with full singular weight
    const auto base = dbr::decompose_mu({PairFamily::family1, BlaschkeProduct::monomial(1), 0});
    CHECK(base.singular_coeff.num == 2);
    CHECK(base.singular_coeff.den == 1);
    CHECK(std::abs(base.density_root.eval(Complex(0.3, 0.1)) - Complex(1.0)) < 1e-10);
    CHECK(std::abs(base.htilde.eval(Complex(0.2, -0.4)) - Complex(1.0)) < 1e-12);

    // n = 1: F = 1/(z + 2), c = 2/3
    const auto one = dbr::decompose_mu({PairFamily::family1, BlaschkeProduct::monomial(1), 1});
    CHECK(one.singular_coeff.num == 2);
    CHECK(one.singular_coeff.den == 3);
    dbr::Rng rng(37);
    for (int i = 0; i < 10; ++i) {
        const Complex z = rng.complex_in_disk(1.0);
        CHECK(std::abs(one.density_root.eval(z) - 1.0 / (z + 2.0)) < 1e-12);
    }

    // boundary identity Re htilde = |F|^2 at a nontrivial configuration
    const auto deep =
        dbr::decompose_mu({PairFamily::family1, BlaschkeProduct({0.0, 0.4, Complex(-0.3, 0.2)}), 3});
    double worst = 0.0;
    for (const Complex& zeta : dbr::unit_circle_grid(512))
        worst = std::max(worst, std::abs(deep.htilde.eval(zeta).real() - deep.ac_density(zeta)));
    CHECK(worst < 1e-10);
}

TEST_CASE("measure decomposition, family 2", "[clark]") {
    const auto dec = dbr::decompose_mu({PairFamily::family2, BlaschkeProduct::monomial(1), 0});
    CHECK(dec.singular_coeff.num == 1);
    CHECK(dec.singular_coeff.den == 2);
    dbr::Rng rng(41);
    for (int i = 0; i < 10; ++i) {
        const Complex z = rng.complex_in_disk(1.0);
        CHECK(std::abs(dec.density_root.eval(z) - (1.0 + z) / (2.0 + z + z * z)) < 1e-12);
    }
    CHECK(std::abs(dec.htilde.eval(0.0) - Complex(0.5)) < 1e-13);

    // degree 2 and a nontrivial zero set
    for (const BlaschkeProduct& I :
         {BlaschkeProduct::monomial(2), BlaschkeProduct({0.0, 0.4}), BlaschkeProduct({0.0, 0.5, Complex(0.1, 0.3)})}) {
        const auto d = dbr::decompose_mu({PairFamily::family2, I, 0});
        CHECK(std::abs(d.htilde.eval(0.0) - Complex(0.5)) < 1e-12);
        double worst = 0.0;
        for (const Complex& zeta : dbr::unit_circle_grid(512))
            worst = std::max(worst, std::abs(d.htilde.eval(zeta).real() - d.ac_density(zeta)));
        CHECK(worst < 1e-10);
    }
}

TEST_CASE("family sweep keeps every decomposition invariant", "[clark]") {
    const std::vector<BlaschkeProduct> inners = {
        BlaschkeProduct::monomial(1),
        BlaschkeProduct::monomial(2),
        BlaschkeProduct({0.0, 0.4, Complex(-0.3, 0.2)}),
    };
    for (const auto& I : inners)
        for (int n = 0; n <= 3; ++n) CHECK_NOTHROW(dbr::decompose_mu({PairFamily::family1, I, n}));
    for (const auto& I : inners) CHECK_NOTHROW(dbr::decompose_mu({PairFamily::family2, I, 0}));

    // I(0) != 0 makes b(0) complex, so the fitted imaginary constant in the
    // Herglotz reconstruction is genuinely nonzero on this one
    const BlaschkeProduct off_origin({0.4, Complex(-0.3, 0.2)});
    for (int n = 0; n <= 3; ++n)
        CHECK_NOTHROW(dbr::decompose_mu({PairFamily::family1, off_origin, n}));
}
