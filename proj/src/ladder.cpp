#include "becvortex/ladder.hpp"

#include <cmath>

namespace becvortex {

double epsilon_from_physical(double n_particles, double scattering_length,
                             double slab_thickness, double hbar, double mass) {
    if (!(n_particles > 0.0) || !(scattering_length > 0.0) ||
        !(slab_thickness > 0.0) || !(hbar > 0.0) || !(mass > 0.0))
        throw std::domain_error("epsilon_from_physical: inputs must be positive");
    double g = std::sqrt(8.0 * M_PI) * hbar * hbar * scattering_length /
               (mass * slab_thickness);
    return std::sqrt(hbar * hbar /
                     (std::sqrt(2.0 * M_PI) * n_particles * g * mass));
}

double c1(const Trap& trap) {
    double l2 = trap.anisotropy() * trap.anisotropy();
    if (trap.is_flat()) return 0.5 * (1.0 + l2);
    double s = trap.slope();
    return (s + 2.0) / (s * std::pow(trap.mu(), 2.0 / s)) * 0.5 * (1.0 + l2);
}

double omega_n(int n, const ScalingContext& ctx) {
    if (n < 1) throw std::domain_error("omega_n: n must be >= 1");
    return c1(*ctx.trap) *
           (ctx.abs_log_eps() + (n - 1) * ctx.log_abs_log_eps());
}

std::vector<double> omega_ladder(int n_max, const ScalingContext& ctx) {
    std::vector<double> out;
    out.reserve(n_max);
    for (int n = 1; n <= n_max; ++n) out.push_back(omega_n(n, ctx));
    return out;
}

double unscale_omega(double omega_scaled, const ScalingContext& ctx) {
    const Trap& trap = *ctx.trap;
    if (trap.is_flat()) return omega_scaled;
    double e = ctx.epsilon;
    return omega_scaled * std::pow(16.0 * e * e * e * e, 1.0 / (trap.slope() + 2.0));
}

double scale_omega(double omega_lab, const ScalingContext& ctx) {
    const Trap& trap = *ctx.trap;
    if (trap.is_flat()) return omega_lab;
    double e = ctx.epsilon;
    return omega_lab / std::pow(16.0 * e * e * e * e, 1.0 / (trap.slope() + 2.0));
}

double flat_vs_harmonic_ratio(const ScalingContext& ctx) {
    double mu_h = Trap::chemical_potential(2.0, ctx.trap->anisotropy());
    return mu_h / (4.0 * ctx.epsilon);
}

double harmonic_local_stability_omega(const ScalingContext& ctx) {
    const Trap& trap = *ctx.trap;
    if (trap.slope() != 2.0)
        throw std::domain_error(
            "harmonic_local_stability_omega: requires slope s = 2");
    double l2 = trap.anisotropy() * trap.anisotropy();
    return (1.0 + l2) / (2.0 * trap.mu()) * ctx.abs_log_eps();
}

CountPrediction predict_vortex_count(double omega_scaled,
                                     const ScalingContext& ctx) {
    double slope = c1(*ctx.trap);
    double spacing = slope * ctx.log_abs_log_eps();
    double half = ctx.delta * spacing;
    double omega1 = slope * ctx.abs_log_eps();

    if (omega_scaled <= omega1 - half) return {true, 0, 0};

    // Candidate rung k with Omega in [Omega_k, Omega_{k+1}).
    int k = static_cast<int>(std::floor((omega_scaled - omega1) / spacing)) + 1;
    if (k < 1) k = 1;
    double omega_k = omega1 + (k - 1) * spacing;
    if (omega_scaled < omega_k + half) return {false, k - 1, k};
    if (omega_scaled > omega_k + spacing - half) return {false, k, k + 1};
    return {true, k, k};
}

} // namespace becvortex
