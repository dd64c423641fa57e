#include <catch2/catch_amalgamated.hpp>

#include "dbr/cyclicity.hpp"

using dbr::BlaschkeProduct;
using dbr::Complex;
using dbr::ComplexPoly;
using dbr::HbContext;
using dbr::PairFamily;
using dbr::RationalBoundaryFn;

namespace {

RationalBoundaryFn poly_fn(std::initializer_list<Complex> coeffs) {
    return RationalBoundaryFn::from_poly(ComplexPoly(coeffs));
}

}  // namespace

TEST_CASE("atom criterion", "[cyclic]") {
    const HbContext ctx({PairFamily::family1, BlaschkeProduct::monomial(1), 0}, 256);

    const auto good = dbr::cyclic_criterion(ctx, poly_fn({2.0, 1.0}));
    CHECK(good.cyclic);
    REQUIRE(good.atom_values.size() == 1);
    CHECK(std::abs(good.atom_values[0] - Complex(3.0)) < 1e-12);

    // vanishing at the atom: rejected outright in strict mode, classified in lenient
    const RationalBoundaryFn vanishing =
        Complex(0.5) * (poly_fn({1.0, -1.0}) * poly_fn({2.0, 1.0}));
    CHECK_THROWS_AS(dbr::cyclic_criterion(ctx, vanishing), dbr::NotOuter);
    const auto lenient = dbr::cyclic_criterion(ctx, vanishing, dbr::OuterMode::lenient);
    CHECK_FALSE(lenient.cyclic);

    CHECK_THROWS_AS(dbr::cyclic_criterion(ctx, poly_fn({0.0, 1.0})), dbr::NotOuter);
}

TEST_CASE("atom criterion uses the squared inner function for family2", "[cyclic]") {
    const HbContext ctx({PairFamily::family2, BlaschkeProduct::monomial(1), 0}, 256);
    const auto res = dbr::cyclic_criterion(ctx, poly_fn({2.0, 1.0}));
    REQUIRE(res.atom_values.size() == 2);
    CHECK(res.cyclic);
    CHECK(res.min_abs == Catch::Approx(1.0));  // f(-1) = 1
}

TEST_CASE("density oracle converges exactly for f = 1", "[cyclic]") {
    const HbContext ctx({PairFamily::family1, BlaschkeProduct::monomial(1), 0}, 256);
    const auto res = dbr::density_oracle(ctx, poly_fn({1.0}), 8);
    REQUIRE(res.last_K == 8);
    for (double r : res.residuals) CHECK(r < 1e-10);
}

TEST_CASE("density oracle separates cyclic from non-cyclic", "[cyclic]") {
    const HbContext ctx({PairFamily::family1, BlaschkeProduct::monomial(1), 0}, 256);

    const auto cyc = dbr::density_oracle(ctx, poly_fn({2.0, 1.0}), 40);
    INFO("cyclic r_40 = " << cyc.final_residual);
    CHECK(cyc.final_residual < 0.01);

    const RationalBoundaryFn vanishing =
        Complex(0.5) * (poly_fn({1.0, -1.0}) * poly_fn({2.0, 1.0}));
    const auto non = dbr::density_oracle(ctx, vanishing, 40);
    INFO("non-cyclic r_40 = " << non.final_residual);
    CHECK(non.final_residual > 0.1);

    // nonincreasing sequence
    for (const auto* res : {&cyc, &non})
        for (std::size_t k = 1; k < res->residuals.size(); ++k)
            CHECK(res->residuals[k] <= res->residuals[k - 1] + 1e-12);
}

TEST_CASE("criterion and oracle agree", "[cyclic]") {
    const HbContext ctx({PairFamily::family1, BlaschkeProduct::monomial(1), 1}, 256);
    const auto v1 = dbr::cyclicity_verdict(ctx, poly_fn({2.0, 1.0}));
    CHECK(v1.criterion.cyclic);
    CHECK(v1.agree);

    const RationalBoundaryFn vanishing =
        Complex(0.5) * (poly_fn({1.0, -1.0}) * poly_fn({2.0, 1.0}));
    const auto v2 = dbr::cyclicity_verdict(ctx, vanishing, dbr::OuterMode::lenient);
    CHECK_FALSE(v2.criterion.cyclic);
    CHECK(v2.agree);
}

TEST_CASE("kernel functions at the atoms span the complement of M(a)", "[cyclic]") {
    const HbContext base({PairFamily::family1, BlaschkeProduct::monomial(1), 0}, 256);
    const auto rep = dbr::h0_basis(base);
    REQUIRE(rep.kernels.size() == 1);
    CHECK(std::abs(rep.kernels[0].values().coeff(0) - Complex(0.5)) < 1e-10);
    CHECK(rep.gram_rank == 1);
    CHECK(rep.max_ma_cross < 1e-6);
    CHECK(rep.pass);

    const HbContext two({PairFamily::family1, BlaschkeProduct::monomial(2), 0}, 256);
    const auto rep2 = dbr::h0_basis(two);
    CHECK(rep2.kernels.size() == 2);
    CHECK(rep2.gram_rank == 2);
    CHECK(rep2.pass);

    const HbContext deg2({PairFamily::family1, BlaschkeProduct({0.3, Complex(-0.2, 0.3)}), 0}, 256);
    const auto rep3 = dbr::h0_basis(deg2);
    CHECK(rep3.kernels.size() == 2);
    CHECK(rep3.gram_rank == 2);
    CHECK(rep3.pass);

    // family2: complement spanned at the atoms of the squared inner function
    const HbContext f2({PairFamily::family2, BlaschkeProduct::monomial(1), 0}, 256);
    const auto rep4 = dbr::h0_basis(f2);
    CHECK(rep4.kernels.size() == 2);
    CHECK(rep4.gram_rank == 2);
    CHECK(rep4.pass);
}

TEST_CASE("evaluation functionals at the atoms", "[cyclic]") {
    const HbContext ctx({PairFamily::family1, BlaschkeProduct::monomial(1), 0}, 256);
    const auto rep = dbr::verify_evaluation_functionals(ctx, poly_fn({2.0, 1.0}));
    CHECK(rep.max_eval_error < 1e-6);
    CHECK(rep.pass);

    const HbContext two({PairFamily::family1, BlaschkeProduct::monomial(2), 0}, 256);
    const auto rep2 = dbr::verify_evaluation_functionals(two, poly_fn({2.0, 1.0}));
    CHECK(rep2.max_eval_error < 1e-6);
    CHECK(rep2.pass);

    const HbContext shifted({PairFamily::family1, BlaschkeProduct::monomial(1), 1}, 256);
    CHECK_THROWS_AS(dbr::verify_evaluation_functionals(shifted, poly_fn({2.0, 1.0})),
                    dbr::BadParameters);
}

TEST_CASE("vanishing at one atom stalls the oracle there", "[cyclic]") {
    const HbContext ctx({PairFamily::family1, BlaschkeProduct::monomial(2), 0}, 256);
    // vanishes at the atom -1 only
    const RationalBoundaryFn f = Complex(0.5) * (poly_fn({1.0, 1.0}) * poly_fn({2.0, 1.0}));
    const auto crit = dbr::cyclic_criterion(ctx, f, dbr::OuterMode::lenient);
    CHECK_FALSE(crit.cyclic);

    const auto oracle = dbr::density_oracle(ctx, f, 40);
    INFO("stalled r_40 = " << oracle.final_residual);
    CHECK(oracle.final_residual > 0.1);
}
