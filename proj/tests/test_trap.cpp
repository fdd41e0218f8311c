#include <cmath>
#include <vector>

#include "becvortex/trap.hpp"
#include "doctest.h"

using becvortex::Trap;

namespace {

// Solves the unit-mass normalization condition for the chemical potential by
// bisection on the quadrature mass, independently of the closed form.
double mu_from_normalization(const Trap& trap, int resolution) {
    double lo = 0.05, hi = 8.0;
    for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (lo + hi);
        if (becvortex::tf_mass_for_mu(trap, mid, resolution) < 1.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

TEST_SUITE("trap") {

TEST_CASE("chemical potential closed forms") {
    CHECK(Trap(2.0, 1.0).mu() == doctest::Approx(std::sqrt(4.0 / M_PI)).epsilon(1e-14));
    CHECK(Trap::flat(1.0).mu() == doctest::Approx(2.0 / M_PI).epsilon(1e-14));
    CHECK(Trap::flat(0.5).mu() == doctest::Approx(1.0 / M_PI).epsilon(1e-14));
    // mu exceeds 1 exactly when lambda > pi*s/(2*(s+2)).
    double s = 2.0;
    double lam_c = M_PI * s / (2.0 * (s + 2.0));
    CHECK(Trap(s, lam_c * 1.05).mu() > 1.0);
    CHECK(Trap(s, lam_c * 0.95).mu() < 1.0);
}

TEST_CASE("chemical potential matches mass-normalization oracle") {
    std::vector<Trap> traps = {Trap(2.0, 1.0), Trap(2.0, 0.5), Trap(4.0, 0.8),
                               Trap::flat(0.6)};
    for (const Trap& t : traps) {
        double mu_star = mu_from_normalization(t, 384);
        CAPTURE(t.slope());
        CAPTURE(t.anisotropy());
        CHECK(std::abs(mu_star - t.mu()) < 2e-5);
    }
}

TEST_CASE("normalization residual is small and shrinks with resolution") {
    for (const Trap& t : {Trap(2.0, 0.8), Trap(4.0, 1.0), Trap::flat(1.0)}) {
        double coarse = becvortex::tf_normalization_residual(t, 128);
        double fine = becvortex::tf_normalization_residual(t, 512);
        CHECK(fine < 1e-6);
        CHECK(fine <= coarse + 1e-12);
    }
}

TEST_CASE("parameter domain errors") {
    CHECK_THROWS_AS(Trap(2.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(Trap(2.0, 1.5), std::domain_error);
    CHECK_THROWS_AS(Trap(1.5, 1.0), std::domain_error);
    CHECK_THROWS_AS(Trap(2.0, -0.3), std::domain_error);
}

TEST_CASE("geometry and density") {
    Trap t(4.0, 0.5);
    CHECK(t.q(1.0, 2.0) == doctest::Approx(1.0 + 0.25 * 4.0));
    CHECK(t.q_boundary() == doctest::Approx(std::pow(t.mu(), 2.0 / 4.0)));
    CHECK(t.semi_axis_y() == doctest::Approx(t.semi_axis_x() / 0.5));
    // Density is (mu - V)/2 inside and zero outside.
    double xb = t.semi_axis_x();
    CHECK(t.tf_density(0.0, 0.0) == doctest::Approx(0.5 * t.mu()));
    CHECK(t.tf_density(xb * 1.01, 0.0) == 0.0);
    CHECK(t.inside(0.99 * xb, 0.0));
    CHECK(!t.inside(1.01 * xb, 0.0));
    // Flat trap: uniform density mu/2 inside the unit ellipse.
    Trap f = Trap::flat(0.7);
    CHECK(f.q_boundary() == 1.0);
    CHECK(f.tf_density(0.3, 0.4) == doctest::Approx(0.5 * f.mu()));
    CHECK(f.tf_density(1.2, 0.0) == 0.0);
    CHECK(std::isinf(f.potential(1.2, 0.0)));
    CHECK(f.potential(0.3, 0.4) == 0.0);
}

TEST_CASE("inner domain shrinks with margin") {
    Trap t(2.0, 1.0);
    CHECK(t.q_inner(0.0) == doctest::Approx(t.q_boundary()));
    CHECK(t.q_inner(0.1) < t.q_boundary());
    CHECK(t.q_inner(10.0) == 0.0);
    Trap f = Trap::flat(1.0);
    CHECK(f.q_inner(0.1 * f.mu()) == doctest::Approx(0.9));
}

} // TEST_SUITE
