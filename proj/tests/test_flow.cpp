#include <cmath>
#include <random>
#include <vector>

#include "becvortex/flow.hpp"
#include "doctest.h"

using becvortex::Trap;

namespace {

std::vector<Trap> sample_traps() {
    return {Trap(2.0, 1.0),   Trap(2.0, 0.8), Trap(2.0, 0.5), Trap(4.0, 1.0),
            Trap(4.0, 0.5),   Trap(6.0, 0.8), Trap::flat(1.0),
            Trap::flat(0.8),  Trap::flat(0.5)};
}

} // namespace

TEST_SUITE("flow") {

TEST_CASE("stream function vanishes on the boundary") {
    for (const Trap& t : sample_traps()) {
        double scale = t.is_flat()
                           ? t.mu()
                           : std::pow(t.mu(), (t.slope() + 2.0) / t.slope());
        double worst = 0.0;
        for (int k = 0; k < 1000; ++k) {
            double th = 2.0 * M_PI * k / 1000.0;
            double x = t.semi_axis_x() * std::cos(th);
            double y = t.semi_axis_y() * std::sin(th);
            worst = std::max(worst, std::abs(becvortex::chi(x, y, t)));
        }
        CAPTURE(t.slope());
        CAPTURE(t.anisotropy());
        CHECK(worst <= 1e-10 * scale);
    }
}

TEST_CASE("mass current identity rho*(grad S - A) = Omega*grad_perp chi") {
    // Finite-difference check at interior points: the x-current equals
    // -Omega*d(chi)/dy and the y-current equals +Omega*d(chi)/dx.
    const double omega = 2.3, h = 1e-5;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unif(-0.6, 0.6);
    for (const Trap& t : sample_traps()) {
        for (int k = 0; k < 40; ++k) {
            double x = unif(rng) * t.semi_axis_x();
            double y = unif(rng) * t.semi_axis_y();
            double rho = t.tf_density(x, y);
            if (rho <= 0.0) continue;
            auto S = [&](double a, double b) {
                return becvortex::phase_S(a, b, t, omega);
            };
            double sx = (S(x + h, y) - S(x - h, y)) / (2.0 * h);
            double sy = (S(x, y + h) - S(x, y - h)) / (2.0 * h);
            double jx = rho * (sx - omega * (-y));
            double jy = rho * (sy - omega * x);
            double cx = (becvortex::chi(x + h, y, t) -
                         becvortex::chi(x - h, y, t)) / (2.0 * h);
            double cy = (becvortex::chi(x, y + h, t) -
                         becvortex::chi(x, y - h, t)) / (2.0 * h);
            double scale = omega * (std::abs(cx) + std::abs(cy)) + 1.0;
            CHECK(std::abs(jx - omega * (-cy)) < 1e-7 * scale);
            CHECK(std::abs(jy - omega * cx) < 1e-7 * scale);
        }
    }
}

TEST_CASE("pointwise bound with equality exactly for the harmonic trap") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> radial(0.0, 0.98);
    std::uniform_real_distribution<double> angular(0.0, 2.0 * M_PI);
    for (const Trap& t : sample_traps()) {
        bool always_equal = true;
        for (int k = 0; k < 200; ++k) {
            // Sample inside the support of the density, where the bound lives.
            double r = radial(rng), th = angular(rng);
            double x = r * t.semi_axis_x() * std::cos(th);
            double y = r * t.semi_axis_y() * std::sin(th);
            auto b = becvortex::chi_bound_check(x, y, t);
            CHECK(b.holds);
            if (std::abs(b.lhs - b.rhs) > 1e-12) always_equal = false;
        }
        CAPTURE(t.slope());
        CHECK(always_equal == (!t.is_flat() && t.slope() == 2.0));
    }
}

TEST_CASE("origin is the maximum of chi") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (const Trap& t : sample_traps()) {
        double c0 = becvortex::chi_origin(t);
        CHECK(c0 == becvortex::chi(0.0, 0.0, t));
        for (int k = 0; k < 100; ++k) {
            double x = unif(rng) * t.semi_axis_x();
            double y = unif(rng) * t.semi_axis_y();
            if (!t.inside(x, y)) continue;
            CHECK(becvortex::chi(x, y, t) <= c0 + 1e-14);
        }
    }
}

TEST_CASE("discrete elliptic residual decays at second order") {
    for (const Trap& t : {Trap(2.0, 0.8), Trap(4.0, 1.0)}) {
        double r128 = becvortex::chi_pde_residual(t, 128);
        double r256 = becvortex::chi_pde_residual(t, 256);
        double r512 = becvortex::chi_pde_residual(t, 512);
        CAPTURE(t.slope());
        CHECK(r512 < 5e-3);
        CHECK(r128 / r256 > 3.0);
        CHECK(r128 / r256 < 5.5);
        CHECK(r256 / r512 > 3.0);
        CHECK(r256 / r512 < 5.5);
    }
    // The flat trap has constant density, so the stencil is exact there and
    // the residual is pure roundoff at every resolution.
    CHECK(becvortex::chi_pde_residual(Trap::flat(0.8), 128) < 1e-9);
    CHECK(becvortex::chi_pde_residual(Trap::flat(0.8), 256) < 1e-9);
}

TEST_CASE("residual rejects unresolvable grids") {
    CHECK_THROWS_AS(becvortex::chi_pde_residual(Trap(2.0, 1.0), 16),
                    std::domain_error);
}

TEST_CASE("vortex-free phase vanishes for the round trap") {
    Trap t(3.0, 1.0);
    CHECK(becvortex::phase_S(0.4, -0.7, t, 5.0) == 0.0);
    Trap a(2.0, 0.5);
    // Odd in each coordinate, linear in Omega.
    CHECK(becvortex::phase_S(0.3, 0.2, a, 4.0) ==
          doctest::Approx(-becvortex::phase_S(-0.3, 0.2, a, 4.0)));
    CHECK(becvortex::phase_S(0.3, 0.2, a, 4.0) ==
          doctest::Approx(2.0 * becvortex::phase_S(0.3, 0.2, a, 2.0)));
}

} // TEST_SUITE
