#include <catch2/catch_amalgamated.hpp>

#include "dbr/hardy.hpp"
#include "dbr/rng.hpp"

using dbr::BlaschkeProduct;
using dbr::Complex;
using dbr::ComplexPoly;
using dbr::FourierTruncation;
using dbr::RationalBoundaryFn;
using dbr::SpectrumKind;
using dbr::ToeplitzMatrix;

TEST_CASE("Fourier coefficients of rational boundary data", "[hardy]") {
    const int N = 64;
    const RationalBoundaryFn a(ComplexPoly{0.5, -0.5}, ComplexPoly::one());
    const FourierTruncation ahat = dbr::boundary_to_fourier(a, N);
    CHECK(std::abs(ahat.coeff(0) - Complex(0.5)) < 1e-14);
    CHECK(std::abs(ahat.coeff(1) - Complex(-0.5)) < 1e-14);
    for (int j = 2; j <= N; ++j) CHECK(std::abs(ahat.coeff(j)) < 1e-14);
    for (int j = 1; j <= N; ++j) CHECK(std::abs(ahat.coeff(-j)) < 1e-14);

    // 1/(2+z): coefficients (-1)^j / 2^{j+1}
    const RationalBoundaryFn g(ComplexPoly::one(), ComplexPoly{2.0, 1.0});
    const FourierTruncation ghat = dbr::boundary_to_fourier(g, N);
    for (int j = 0; j <= 20; ++j) {
        const double expect = ((j % 2) ? -1.0 : 1.0) / std::pow(2.0, j + 1);
        CHECK(std::abs(ghat.coeff(j) - Complex(expect)) < 1e-13);
    }

    // conjugate symbol flips the index
    const RationalBoundaryFn b(ComplexPoly{0.5, 0.5}, ComplexPoly::one());
    const FourierTruncation bconj = dbr::conj_symbol(dbr::boundary_to_fourier(b, N));
    CHECK(std::abs(bconj.coeff(0) - Complex(0.5)) < 1e-14);
    CHECK(std::abs(bconj.coeff(-1) - Complex(0.5)) < 1e-14);
    CHECK(std::abs(bconj.coeff(1)) < 1e-14);
}

TEST_CASE("Fourier error paths", "[hardy]") {
    const RationalBoundaryFn on_circle(ComplexPoly::one(), ComplexPoly{1.0, -1.0});
    CHECK_THROWS_AS(dbr::boundary_to_fourier(on_circle, 32), dbr::PoleOnCircle);

    const RationalBoundaryFn slow(ComplexPoly::one(), ComplexPoly{1.0, -1.0 / 1.05});
    CHECK_THROWS_AS(dbr::boundary_to_fourier(slow, 64), dbr::TailTooLarge);
}

TEST_CASE("Riesz projection", "[hardy]") {
    FourierTruncation f(4, SpectrumKind::bilateral);
    f.set_coeff(-1, 1.0);
    f.set_coeff(0, 2.0);
    f.set_coeff(1, 3.0);
    const FourierTruncation p = dbr::riesz_project(f);
    CHECK(p.is_analytic());
    CHECK(p.coeff(0) == Complex(2.0));
    CHECK(p.coeff(1) == Complex(3.0));

    const FourierTruncation pp = dbr::riesz_project(p);
    CHECK(pp.coeff(0) == Complex(2.0));
    CHECK(p.norm() >= pp.norm());
    CHECK(f.norm() >= p.norm());
}

TEST_CASE("H2 inner products", "[hardy]") {
    const int N = 64;
    const auto one = FourierTruncation::from_poly(ComplexPoly::one(), N);
    const auto z = FourierTruncation::from_poly(ComplexPoly{0.0, 1.0}, N);
    CHECK(std::abs(dbr::h2_inner(one, one) - Complex(1.0)) < 1e-15);
    CHECK(std::abs(dbr::h2_inner(z, one)) < 1e-15);

    const RationalBoundaryFn g(ComplexPoly::one(), ComplexPoly{2.0, 1.0});
    const FourierTruncation gh = dbr::boundary_to_fourier(g, N, SpectrumKind::analytic);
    CHECK(std::abs(dbr::h2_inner(gh, gh) - Complex(1.0 / 3.0)) < 1e-12);

    const auto short_one = FourierTruncation::from_poly(ComplexPoly::one(), 8);
    CHECK_THROWS_AS(dbr::h2_inner(one, short_one), dbr::OrderMismatch);
}

TEST_CASE("Toeplitz action", "[hardy]") {
    const int N = 32;
    // symbol conj(z)
    FourierTruncation zbar(N, SpectrumKind::bilateral);
    zbar.set_coeff(-1, 1.0);
    const ToeplitzMatrix T(zbar);

    const auto one = FourierTruncation::from_poly(ComplexPoly::one(), N);
    CHECK(T.apply(one).norm() < 1e-15);
    const auto z = FourierTruncation::from_poly(ComplexPoly{0.0, 1.0}, N);
    const auto shifted = T.apply(z);
    CHECK(std::abs(shifted.coeff(0) - Complex(1.0)) < 1e-15);
    CHECK(shifted.norm() == Catch::Approx(1.0));

    // symbol conj(b) for b = (1+z)/2 applied to 1 + z gives 1 + z/2
    const RationalBoundaryFn b(ComplexPoly{0.5, 0.5}, ComplexPoly::one());
    const ToeplitzMatrix Tb(dbr::conj_symbol(dbr::boundary_to_fourier(b, N)));
    const auto f = FourierTruncation::from_poly(ComplexPoly{1.0, 1.0}, N);
    const auto out = Tb.apply(f);
    CHECK(std::abs(out.coeff(0) - Complex(1.0)) < 1e-13);
    CHECK(std::abs(out.coeff(1) - Complex(0.5)) < 1e-13);
    for (int j = 2; j <= N; ++j) CHECK(std::abs(out.coeff(j)) < 1e-13);
}

TEST_CASE("Toeplitz structure: diagonals and adjoint", "[hardy]") {
    const int N = 24;
    const BlaschkeProduct I({0.3, Complex(-0.1, 0.25)});
    const FourierTruncation sym = dbr::boundary_to_fourier(I, N);
    const ToeplitzMatrix T(sym);
    const ToeplitzMatrix Tconj(dbr::conj_symbol(sym));
    for (int j = 0; j <= N; ++j)
        for (int k = 0; k <= N; ++k) {
            if (j + 1 <= N && k + 1 <= N)
                CHECK(T.matrix()(j, k) == T.matrix()(j + 1, k + 1));  // exact by construction
            CHECK(Tconj.matrix()(j, k) == std::conj(T.matrix()(k, j)));
        }
}

TEST_CASE("products alias-free: coefficients of f*g equal the convolution", "[hardy]") {
    const int N = 48;
    const RationalBoundaryFn f(ComplexPoly{1.0, 0.3}, ComplexPoly{2.0, 1.0});
    const RationalBoundaryFn g(ComplexPoly{0.5, -1.0}, ComplexPoly{3.0, Complex(0.0, -1.0)});
    const auto fh = dbr::boundary_to_fourier(f, N, SpectrumKind::analytic);
    const auto gh = dbr::boundary_to_fourier(g, N, SpectrumKind::analytic);
    const auto direct = dbr::boundary_to_fourier(f * g, N, SpectrumKind::analytic);
    const auto conv = dbr::convolve(fh, gh);
    double worst = 0.0;
    for (int j = 0; j <= N; ++j) worst = std::max(worst, std::abs(direct.coeff(j) - conv.coeff(j)));
    CHECK(worst < 1e-10);
}

TEST_CASE("model space basis: monomial cases", "[hardy]") {
    const auto kz = dbr::model_space_basis(BlaschkeProduct::monomial(1), 64);
    REQUIRE(kz.dimension() == 1);
    CHECK(std::abs(std::abs(kz.vectors[0].coeff(0)) - 1.0) < 1e-12);
    for (int j = 1; j <= 64; ++j) CHECK(std::abs(kz.vectors[0].coeff(j)) < 1e-12);

    const auto kz2 = dbr::model_space_basis(BlaschkeProduct::monomial(2), 64);
    REQUIRE(kz2.dimension() == 2);
    // spans {1, z}: no coefficients above index 1
    for (const auto& v : kz2.vectors)
        for (int j = 2; j <= 64; ++j) CHECK(std::abs(v.coeff(j)) < 1e-12);
}

TEST_CASE("model space basis: orthonormal and orthogonal to I H^2", "[hardy]") {
    const int N = 96;
    const BlaschkeProduct I({0.5, Complex(0.1, -0.45), 0.5});  // repeated zero included
    const auto basis = dbr::model_space_basis(I, N);
    REQUIRE(basis.dimension() == 3);

    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const Complex gij = dbr::h2_inner(basis.vectors[i], basis.vectors[j]);
            CHECK(std::abs(gij - (i == j ? 1.0 : 0.0)) < 1e-10);
        }

    const auto Ih = dbr::boundary_to_fourier(I, N, SpectrumKind::analytic);
    for (const auto& v : basis.vectors)
        for (int j = 0; j <= N - I.degree() - 1; ++j) {
            const auto Izj = Ih.shifted_up(j);
            CHECK(std::abs(dbr::h2_inner(v, Izj)) < 1e-8);
        }
}

TEST_CASE("model space completeness: Szego kernel recovery", "[hardy]") {
    const int N = 128;
    const BlaschkeProduct I({0.2, Complex(-0.4, 0.3)});
    const auto basis = dbr::model_space_basis(I, N);
    const auto Ih = dbr::boundary_to_fourier(I, N, SpectrumKind::analytic);
    const ToeplitzMatrix TIbar(dbr::conj_symbol(dbr::boundary_to_fourier(I, N)));

    dbr::Rng rng(23);
    for (int trial = 0; trial < 5; ++trial) {
        const Complex w = rng.complex_in_disk(0.8);
        FourierTruncation kw(N, SpectrumKind::analytic);
        for (int j = 0; j <= N; ++j) kw.set_coeff(j, std::pow(std::conj(w), j));

        FourierTruncation recon(N, SpectrumKind::analytic);
        for (const auto& e : basis.vectors) recon += dbr::h2_inner(kw, e) * e;
        recon += dbr::convolve(Ih, TIbar.apply(kw));
        CHECK((kw - recon).norm() < 1e-6 * kw.norm());
    }
}

TEST_CASE("degenerate model space zeros are rejected", "[hardy]") {
    const BlaschkeProduct I({0.5, 0.5 + 1e-15});
    CHECK_THROWS_AS(dbr::model_space_basis(I, 64), dbr::DegenerateGram);
}

TEST_CASE("outer check", "[hardy]") {
    const RationalBoundaryFn f(ComplexPoly{2.0, 1.0}, ComplexPoly::one());
    CHECK(dbr::outer_check(f).outer);

    const RationalBoundaryFn zf(ComplexPoly{0.0, 1.0}, ComplexPoly::one());
    CHECK_FALSE(dbr::outer_check(zf).outer);

    const RationalBoundaryFn boundary_zero(ComplexPoly{0.5, -0.5}, ComplexPoly::one());
    const auto strict = dbr::outer_check(boundary_zero);
    CHECK_FALSE(strict.outer);
    CHECK(strict.borderline);
    const auto lenient = dbr::outer_check(boundary_zero, dbr::OuterMode::lenient);
    CHECK(lenient.outer);
}
