#include <cmath>
#include <vector>

#include "becvortex/energetics.hpp"
#include "becvortex/ladder.hpp"
#include "doctest.h"

using becvortex::Point;
using becvortex::ScalingContext;
using becvortex::Trap;
using becvortex::VortexConfig;

TEST_SUITE("energetics") {

TEST_CASE("pair interaction: like circulations repel, opposite attract") {
    Trap t(2.0, 1.0);
    auto W = [&](double d, int w2) {
        std::vector<Point> p = {{-d / 2, 0.0}, {d / 2, 0.0}};
        std::vector<int> w = {1, w2};
        return becvortex::interaction_W(p, w, t);
    };
    // Like pair: energy decreases as the separation grows.
    CHECK(W(0.1, 1) > W(0.2, 1));
    CHECK(W(0.2, 1) > W(0.4, 1));
    // Opposite pair: energy increases as the separation grows.
    CHECK(W(0.1, -1) < W(0.2, -1));
    // Closed form for a symmetric pair: -2*pi*ln(d)*rho(d/2).
    double d = 0.3;
    double expect = -2.0 * M_PI * std::log(d) * t.tf_density(d / 2, 0.0);
    CHECK(W(d, 1) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("interaction energy symmetries") {
    Trap t(4.0, 0.7);
    std::vector<Point> p = {{0.1, 0.2}, {-0.3, 0.05}, {0.2, -0.25}};
    std::vector<int> w = {1, 1, 1};
    double base = becvortex::interaction_W(p, w, t);
    // Permutation invariance.
    std::vector<Point> perm = {p[2], p[0], p[1]};
    CHECK(becvortex::interaction_W(perm, w, t) == doctest::Approx(base));
    // Point inversion is a symmetry of the trap.
    std::vector<Point> inv;
    for (auto q : p) inv.push_back({-q.x, -q.y});
    CHECK(becvortex::interaction_W(inv, w, t) == doctest::Approx(base));
    CHECK_THROWS_AS(becvortex::interaction_W(p, {1, 1}, t), std::domain_error);
}

TEST_CASE("coincident vortices are rejected") {
    Trap t(2.0, 1.0);
    std::vector<Point> p = {{0.1, 0.1}, {0.1, 0.1 + 1e-12}};
    CHECK_THROWS_AS(becvortex::interaction_W(p, {1, 1}, t), std::domain_error);
    VortexConfig c{{{0.1, 0.1}, {0.1, 0.1 + 1e-12}}, {1, 1}};
    CHECK_THROWS_AS(becvortex::renormalized_w(c, 10.0, t), std::domain_error);
}

TEST_CASE("renormalized energy properties") {
    Trap t(2.0, 1.0);
    VortexConfig c{{{0.4, 0.0}, {-0.4, 0.0}}, {1, 1}};
    double base = becvortex::renormalized_w(c, 20.0, t);
    // Rotation invariance for the round trap.
    double th = 0.83;
    VortexConfig r = c;
    for (auto& p : r.positions) {
        double x = p.x * std::cos(th) - p.y * std::sin(th);
        double y = p.x * std::sin(th) + p.y * std::cos(th);
        p = {x, y};
    }
    CHECK(becvortex::renormalized_w(r, 20.0, t) ==
          doctest::Approx(base).epsilon(1e-12));
    // Confinement: pushing the pair far out raises the energy.
    VortexConfig far{{{4.0, 0.0}, {-4.0, 0.0}}, {1, 1}};
    CHECK(becvortex::renormalized_w(far, 20.0, t) > base);
    // Non-unit windings are rejected.
    VortexConfig bad{{{0.4, 0.0}, {-0.4, 0.0}}, {1, 2}};
    CHECK_THROWS_AS(becvortex::renormalized_w(bad, 20.0, t), std::domain_error);
    CHECK_THROWS_AS(becvortex::renormalized_w(c, -1.0, t), std::domain_error);
}

TEST_CASE("tilde transform round trip") {
    Trap t(3.0, 0.6);
    std::vector<Point> raw = {{0.12, -0.3}, {-0.07, 0.41}, {0.0, 0.0}};
    auto tl = becvortex::tilde_transform(raw, 12.5, t);
    CHECK(tl[0].x == doctest::Approx(0.12 * std::sqrt(12.5)).epsilon(1e-14));
    CHECK(tl[0].y == doctest::Approx(-0.3 * 0.6 * std::sqrt(12.5)).epsilon(1e-14));
    auto back = becvortex::tilde_inverse(tl, 12.5, t);
    for (size_t i = 0; i < raw.size(); ++i) {
        CHECK(back[i].x == doctest::Approx(raw[i].x).epsilon(1e-14));
        CHECK(back[i].y == doctest::Approx(raw[i].y).epsilon(1e-14));
    }
}

TEST_CASE("single-vortex cost vanishes exactly at the first rung") {
    for (const Trap& t : {Trap(2.0, 1.0), Trap(2.0, 0.8), Trap(2.0, 0.5),
                          Trap(4.0, 1.0), Trap(4.0, 0.5), Trap(6.0, 0.7),
                          Trap::flat(1.0), Trap::flat(0.8), Trap::flat(0.5)}) {
        ScalingContext ctx(0.03, t);
        double omega1 = becvortex::omega_n(1, ctx);
        double scale = 0.5 * M_PI * t.mu() * ctx.abs_log_eps();
        CAPTURE(t.slope());
        CAPTURE(t.anisotropy());
        CHECK(std::abs(becvortex::single_vortex_delta(omega1, ctx)) <
              1e-10 * scale);
        // Positive cost below the rung, negative gain above it.
        CHECK(becvortex::single_vortex_delta(0.9 * omega1, ctx) > 0.0);
        CHECK(becvortex::single_vortex_delta(1.1 * omega1, ctx) < 0.0);
    }
}

TEST_CASE("energy breakdown is additive and flags the unknown offset") {
    Trap t(2.0, 1.0);
    ScalingContext ctx(0.05, t);
    VortexConfig c{{{0.5, 0.0}, {-0.5, 0.0}, {0.0, 0.6}}, {1, 1, 1}};
    double omega = becvortex::omega_n(3, ctx);
    auto br = becvortex::gp_energy_delta(c, omega, ctx);
    CHECK(br.unknown_offset);
    CHECK(br.total_delta ==
          doctest::Approx(br.core_term + br.ladder_term + br.w_term));
    CHECK(br.core_term ==
          doctest::Approx(3.0 * becvortex::single_vortex_delta(omega, ctx)));
    CHECK(br.ladder_term ==
          doctest::Approx(0.25 * M_PI * t.mu() * 6.0 * std::log(omega)));
    VortexConfig none{{}, {}};
    auto empty = becvortex::gp_energy_delta(none, omega, ctx);
    CHECK(empty.total_delta == 0.0);
    CHECK(!empty.unknown_offset);
}

TEST_CASE("interaction decomposition remainder decays with rotation") {
    for (const Trap& t : {Trap(2.0, 1.0), Trap(4.0, 0.8)}) {
        VortexConfig c{{{0.6, 0.0}, {-0.6, 0.1}, {0.0, -0.7}}, {1, 1, 1}};
        double prev = std::numeric_limits<double>::infinity();
        for (double omega : {1e2, 1e3, 1e4}) {
            double r = std::abs(
                becvortex::interaction_decomposition_remainder(c, omega, t));
            CHECK(r < prev);
            prev = r;
        }
        CHECK(prev < 1e-2);
    }
}

TEST_CASE("multiple quantization is never favored") {
    Trap t(2.0, 1.0);
    ScalingContext ctx(1e-6, t);
    // A doubly quantized vortex at the center splits into two unit vortices.
    VortexConfig multi{{{0.0, 0.0}}, {2}};
    auto rep = becvortex::single_quantization_check(multi, 2.0, ctx);
    CHECK(rep.single_quantization_favored);
    CHECK(rep.alpha_independent);
    CHECK(rep.worst_margin > 0.0);
    // An anti-vortex is unfavorable under positive rotation.
    VortexConfig anti{{{0.3, 0.0}}, {-1}};
    auto arep = becvortex::single_quantization_check(anti, 2.0, ctx);
    CHECK(arep.single_quantization_favored);
    CHECK(arep.worst_margin > 0.0);
    // All-unit configurations are trivially consistent.
    VortexConfig unit{{{0.2, 0.1}}, {1}};
    CHECK(becvortex::single_quantization_check(unit, 2.0, ctx)
              .single_quantization_favored);
}

} // TEST_SUITE
