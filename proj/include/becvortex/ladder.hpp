#pragma once

#include <vector>

#include "becvortex/trap.hpp"

namespace becvortex {

/// Scaling parameters shared by the critical-velocity ladder and the energy
/// formulas.  epsilon must lie in (0, 1/e) so that ln|ln eps| > 0 and the
/// ladder is strictly increasing; delta in (0, 0.5) sets the half-width of
/// the indeterminate transition bands.
struct ScalingContext {
    double epsilon;
    double delta = 0.1;
    const Trap* trap;

    ScalingContext(double eps, const Trap& t, double dlt = 0.1)
        : epsilon(eps), delta(dlt), trap(&t) {
        if (!(eps > 0.0) || !(eps < std::exp(-1.0)))
            throw std::domain_error("scaling: epsilon must lie in (0, 1/e)");
        if (!(dlt > 0.0) || !(dlt < 0.5))
            throw std::domain_error("scaling: delta must lie in (0, 0.5)");
    }

    double abs_log_eps() const { return -std::log(epsilon); }
    double log_abs_log_eps() const { return std::log(-std::log(epsilon)); }
};

/// Dimensionless coupling parameter from physical slab parameters:
/// g = sqrt(8*pi)*hbar^2*a/(m*h), eps = sqrt(hbar^2/(sqrt(2*pi)*N*g*m)).
double epsilon_from_physical(double n_particles, double scattering_length,
                             double slab_thickness, double hbar = 1.0,
                             double mass = 1.0);

/// Ladder slope constant C1 = (s+2)/(s*mu^(2/s)) * (1+lambda^2)/2
/// (flat limit: (1+lambda^2)/2).
double c1(const Trap& trap);

/// n-th critical angular velocity Omega_n = C1*(|ln eps| + (n-1)*ln|ln eps|).
double omega_n(int n, const ScalingContext& ctx);

/// First n_max rungs of the ladder.
std::vector<double> omega_ladder(int n_max, const ScalingContext& ctx);

/// Laboratory-frame angular velocity Omega*(16*eps^4)^(1/(s+2)); the flat
/// limit leaves Omega unchanged.  scale_omega is the inverse.
double unscale_omega(double omega_scaled, const ScalingContext& ctx);
double scale_omega(double omega_lab, const ScalingContext& ctx);

/// Ratio of the unscaled first critical velocity of the flat trap to the
/// harmonic trap at equal anisotropy: mu_harmonic/(4*eps).
double flat_vs_harmonic_ratio(const ScalingContext& ctx);

/// Threshold for local thermodynamic stability of a central vortex in the
/// harmonic trap: (1+lambda^2)/(2*mu)*|ln eps|, exactly Omega_1/2.
/// Throws for non-harmonic traps.
double harmonic_local_stability_omega(const ScalingContext& ctx);

/// Equilibrium vortex-count prediction.  Outside every delta-window the
/// count is definite; on a window edge the prediction is a transition band
/// between consecutive counts.
struct CountPrediction {
    bool definite;
    int count;      // definite count, or lower edge of the band
    int count_hi;   // == count when definite, count+1 on a band
};

CountPrediction predict_vortex_count(double omega_scaled,
                                     const ScalingContext& ctx);

} // namespace becvortex
