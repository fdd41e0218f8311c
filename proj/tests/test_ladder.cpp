#include <cmath>
#include <vector>

#include "becvortex/ladder.hpp"
#include "doctest.h"

using becvortex::ScalingContext;
using becvortex::Trap;

TEST_SUITE("ladder") {

TEST_CASE("slope constant closed forms") {
    Trap h(2.0, 1.0);
    CHECK(becvortex::c1(h) == doctest::Approx(2.0 / h.mu()).epsilon(1e-14));
    Trap f = Trap::flat(1.0);
    CHECK(becvortex::c1(f) == doctest::Approx(1.0).epsilon(1e-14));
    Trap f2 = Trap::flat(0.5);
    CHECK(becvortex::c1(f2) == doctest::Approx(0.625).epsilon(1e-14));
    Trap s4(4.0, 0.8);
    double expect = (4.0 + 2.0) / (4.0 * std::pow(s4.mu(), 0.5)) *
                    (1.0 + 0.64) / 2.0;
    CHECK(becvortex::c1(s4) == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("worked rung value for the round flat trap") {
    // With eps = e^-10 the slope constant is 1, so the third rung is
    // 10 + 2*ln(10).
    Trap f = Trap::flat(1.0);
    ScalingContext ctx(std::exp(-10.0), f);
    CHECK(becvortex::omega_n(3, ctx) ==
          doctest::Approx(10.0 + 2.0 * std::log(10.0)).epsilon(1e-12));
}

TEST_CASE("rungs increase with uniform spacing") {
    Trap t(2.0, 0.8);
    ScalingContext ctx(0.04, t);
    auto rungs = becvortex::omega_ladder(8, ctx);
    REQUIRE(rungs.size() == 8);
    double spacing = becvortex::c1(t) * ctx.log_abs_log_eps();
    for (size_t i = 1; i < rungs.size(); ++i) {
        CHECK(rungs[i] > rungs[i - 1]);
        CHECK(rungs[i] - rungs[i - 1] == doctest::Approx(spacing).epsilon(1e-12));
    }
    CHECK(rungs[0] == doctest::Approx(becvortex::c1(t) * ctx.abs_log_eps()));
}

TEST_CASE("scaling context domain errors") {
    Trap t(2.0, 1.0);
    CHECK_THROWS_AS(ScalingContext(0.5, t), std::domain_error);  // >= 1/e
    CHECK_THROWS_AS(ScalingContext(0.0, t), std::domain_error);
    CHECK_THROWS_AS(ScalingContext(-0.1, t), std::domain_error);
    CHECK_THROWS_AS(ScalingContext(0.1, t, 0.6), std::domain_error);
    CHECK_THROWS_AS(ScalingContext(0.1, t, 0.0), std::domain_error);
    CHECK_NOTHROW(ScalingContext(0.3, t));
}

TEST_CASE("laboratory-frame scaling round trip") {
    Trap t(4.0, 0.7);
    ScalingContext ctx(0.05, t);
    double omega = 17.3;
    double lab = becvortex::unscale_omega(omega, ctx);
    CHECK(lab == doctest::Approx(omega * std::pow(16.0 * std::pow(0.05, 4.0),
                                                  1.0 / 6.0)).epsilon(1e-14));
    CHECK(becvortex::scale_omega(lab, ctx) == doctest::Approx(omega).epsilon(1e-14));
    // Flat limit: the scaling is the identity.
    Trap f = Trap::flat(0.7);
    ScalingContext fctx(0.05, f);
    CHECK(becvortex::unscale_omega(omega, fctx) == omega);
}

TEST_CASE("flat trap nucleates far earlier than the harmonic trap") {
    double eps = 0.02;
    Trap f = Trap::flat(0.8);
    ScalingContext ctx(eps, f);
    double mu_h = Trap::chemical_potential(2.0, 0.8);
    CHECK(becvortex::flat_vs_harmonic_ratio(ctx) ==
          doctest::Approx(mu_h / (4.0 * eps)).epsilon(1e-12));
    CHECK(becvortex::flat_vs_harmonic_ratio(ctx) > 10.0);
}

TEST_CASE("harmonic local stability threshold is half the first rung") {
    Trap t(2.0, 0.6);
    ScalingContext ctx(0.03, t);
    CHECK(becvortex::harmonic_local_stability_omega(ctx) ==
          doctest::Approx(0.5 * becvortex::omega_n(1, ctx)).epsilon(1e-12));
    Trap s4(4.0, 0.6);
    ScalingContext ctx4(0.03, s4);
    CHECK_THROWS_AS(becvortex::harmonic_local_stability_omega(ctx4),
                    std::domain_error);
}

TEST_CASE("count prediction is monotone with correct band edges") {
    Trap t(2.0, 1.0);
    ScalingContext ctx(0.02, t, 0.1);
    double spacing = becvortex::c1(t) * ctx.log_abs_log_eps();
    double half_band = becvortex::c1(t) * ctx.delta * ctx.log_abs_log_eps();

    auto below = becvortex::predict_vortex_count(
        becvortex::omega_n(1, ctx) - 2.0 * half_band, ctx);
    CHECK(below.definite);
    CHECK(below.count == 0);

    auto mid = becvortex::predict_vortex_count(
        becvortex::omega_n(2, ctx) + 0.5 * spacing, ctx);
    CHECK(mid.definite);
    CHECK(mid.count == 2);

    auto edge = becvortex::predict_vortex_count(becvortex::omega_n(3, ctx), ctx);
    CHECK(!edge.definite);
    CHECK(edge.count == 2);
    CHECK(edge.count_hi == 3);

    int prev = -1;
    for (double w = 0.5; w < becvortex::omega_n(6, ctx); w += 0.05) {
        auto p = becvortex::predict_vortex_count(w, ctx);
        CHECK(p.count >= prev);
        CHECK(p.count_hi >= p.count);
        CHECK(p.count_hi <= p.count + 1);
        prev = p.count;
    }
}

TEST_CASE("coupling parameter from physical slab data") {
    // eps scales as N^{-1/2} and as (a/h)^{-1/2}; absolute value agrees with
    // the two-step definition through g.
    double N = 1e5, a = 5e-3, h = 1.0;
    double g = std::sqrt(8.0 * M_PI) * a / h;
    double expect = std::sqrt(1.0 / (std::sqrt(2.0 * M_PI) * N * g));
    CHECK(becvortex::epsilon_from_physical(N, a, h) ==
          doctest::Approx(expect).epsilon(1e-12));
    CHECK(becvortex::epsilon_from_physical(4.0 * N, a, h) ==
          doctest::Approx(0.5 * expect).epsilon(1e-12));
}

} // TEST_SUITE
