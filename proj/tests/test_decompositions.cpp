#include <catch2/catch_amalgamated.hpp>

#include "dbr/decompositions.hpp"

using dbr::BlaschkeProduct;
using dbr::Complex;
using dbr::ComplexPoly;
using dbr::PairFamily;
using dbr::PairSpec;
using dbr::RationalBoundaryFn;

TEST_CASE("family1 split: baseline", "[decomp]") {
    const auto rep = dbr::verify_family1_decomposition(BlaschkeProduct::monomial(1), 0, 256);
    INFO(rep.scenario << " cross=" << rep.max_cross << " completeness=" << rep.max_completeness);
    CHECK(rep.max_cross < 1e-6);
    CHECK(rep.max_completeness < 1e-4);
    CHECK(rep.pass);
}

TEST_CASE("family1 split: higher multiplier and nontrivial inner", "[decomp]") {
    const auto rep2 = dbr::verify_family1_decomposition(BlaschkeProduct::monomial(1), 2, 256);
    CHECK(rep2.max_cross < 1e-6);
    CHECK(rep2.pass);

    const auto repB = dbr::verify_family1_decomposition(BlaschkeProduct({0.0, 0.5}), 1, 256);
    INFO("cross=" << repB.max_cross << " completeness=" << repB.max_completeness
                  << " enlarged=" << repB.max_completeness_enlarged);
    CHECK(repB.pass);
    CHECK(repB.residual_nonincreasing);
}

TEST_CASE("family1 split: residual does not grow when the order doubles", "[decomp]") {
    const auto lo = dbr::verify_family1_decomposition(BlaschkeProduct({0.0, 0.4}), 1, 256);
    const auto hi = dbr::verify_family1_decomposition(BlaschkeProduct({0.0, 0.4}), 1, 512);
    INFO("res(256)=" << lo.max_completeness << " res(512)=" << hi.max_completeness);
    CHECK(hi.max_completeness <= std::max(1.05 * lo.max_completeness, 1e-8));
}

TEST_CASE("family2 split: three-way orthogonality", "[decomp]") {
    for (const BlaschkeProduct& I :
         {BlaschkeProduct::monomial(1), BlaschkeProduct::monomial(2), BlaschkeProduct({0.0, 0.4})}) {
        const auto rep = dbr::verify_family2_decomposition(I, 256);
        INFO(rep.scenario << " cross=" << rep.max_cross << " completeness=" << rep.max_completeness);
        CHECK(rep.max_cross < 1e-6);
        CHECK(rep.max_completeness < 1e-4);
        CHECK(rep.pass);
    }
    CHECK_THROWS_AS(dbr::verify_family2_decomposition(BlaschkeProduct({0.5}), 256),
                    dbr::RequiresIZeroAtOrigin);
}

TEST_CASE("kernel identities", "[decomp]") {
    for (const BlaschkeProduct& I :
         {BlaschkeProduct::monomial(1), BlaschkeProduct::monomial(2), BlaschkeProduct({0.0, 0.4})}) {
        const auto rep = dbr::verify_hayashi_checks(I, 256);
        INFO("re_err=" << rep.re_identity_err << " f1=" << rep.f1_norm_sq
                       << " pair=" << rep.pair_identity_err << " f_form=" << rep.f_form_err
                       << " ker=" << rep.kernel_ratio_max << " img=" << rep.image_err_max);
        CHECK(rep.f1_norm_sq == Catch::Approx(3.0 / 8.0).margin(1e-8));
        CHECK(rep.re_identity_err < 1e-10);
        CHECK(rep.pair_identity_err < 1e-10);
        CHECK(rep.f_form_err < 1e-10);
        CHECK(rep.kernel_ratio_max < 1e-6);
        CHECK(rep.image_err_max < 1e-6);
        CHECK(rep.f0_rigid);
        CHECK(rep.pass);
    }
}

TEST_CASE("rigidity certificate", "[decomp]") {
    const RationalBoundaryFn Fsq(ComplexPoly::one(), ComplexPoly{2.0, 1.0} * ComplexPoly{2.0, 1.0});
    CHECK(dbr::rigidity_check(Fsq));

    const RationalBoundaryFn f0sq(ComplexPoly::constant(1.5), ComplexPoly{2.0, 1.0} * ComplexPoly{2.0, 1.0});
    CHECK(dbr::rigidity_check(f0sq));

    const RationalBoundaryFn z(ComplexPoly{0.0, 1.0}, ComplexPoly::one());
    CHECK_FALSE(dbr::rigidity_check(z));
}

TEST_CASE("set equality probes", "[decomp]") {
    const BlaschkeProduct z1 = BlaschkeProduct::monomial(1);

    const auto prop2 = dbr::verify_set_equality({PairFamily::family1, z1, 2},
                                                {PairFamily::family1, z1, 0}, 12, 256, 424242);
    INFO("ratios in [" << prop2.min_ratio << ", " << prop2.max_ratio << "]");
    CHECK(prop2.all_accepted);
    CHECK(prop2.pass);

    // H(I(1+I^2)/2) against H((1+I^2)/2), realized with the squared inner
    const auto prop4 = dbr::verify_set_equality({PairFamily::family2, z1, 0},
                                                {PairFamily::family1, BlaschkeProduct::monomial(2), 0},
                                                12, 256, 424242);
    CHECK(prop4.all_accepted);
    CHECK(prop4.pass);

    const auto same = dbr::verify_set_equality({PairFamily::family1, z1, 1},
                                               {PairFamily::family1, z1, 1}, 8, 256, 7);
    CHECK(same.min_ratio == Catch::Approx(1.0).margin(1e-9));
    CHECK(same.max_ratio == Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("inner-factor split is orthogonal", "[decomp]") {
    CHECK(dbr::verify_inner_factor_split(BlaschkeProduct::monomial(1), 2, 256) < 1e-6);
    CHECK(dbr::verify_inner_factor_split(BlaschkeProduct({0.0, 0.4}), 1, 256) < 1e-6);
}
