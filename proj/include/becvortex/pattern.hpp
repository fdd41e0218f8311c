#pragma once

#include <cstdint>
#include <vector>

#include "becvortex/energetics.hpp"

namespace becvortex {

struct OptimizerConfig {
    int n = 1;
    int multistarts = 32;
    int max_iters = 500;
    double grad_tol = 1e-10;
    std::uint64_t seed = 0;
};

struct PatternResult {
    VortexConfig config;  // canonicalized minimizer, tilde coordinates
    double w_value = 0.0;
    double grad_norm = 0.0;
    double residual_1 = 0.0;  // radial stationarity constraint
    double residual_2 = 0.0;  // cross-moment constraint (zero at lambda = 1)
    int basin_count = 0;      // distinct local minima across multistarts
    bool converged = false;
};

/// Analytic gradient of renormalized_w, components ordered
/// (dX_1, dY_1, ..., dX_n, dY_n).
std::vector<double> grad_w(const VortexConfig& config, double omega,
                           const Trap& trap);

/// Quotient out the symmetries of w: for lambda = 1 the full rotation/
/// reflection group (sampled at the finitely many rotations placing some
/// vortex on the positive x-axis), for lambda < 1 the four axis reflections.
/// Positions are then sorted by (angle, radius) and the lexicographically
/// smallest image is returned.
std::vector<Point> canonicalize(const std::vector<Point>& positions,
                                double lambda);

/// Stationarity constraints satisfied by every minimizer of w, stated as
/// residuals of the generator identities of the energy:
///   residual_1 = |sum r~^2 - (1+l2)n(n-1)/8
///                 - (1+l2)*s*lnW/(8*mu*W^(s/2)) * sum (r~^2)^(s/2)|
///   residual_2 = |(1-l2)*[sum x~y~
///                 - (1+l2)*s*lnW/(8*mu*W^(s/2)) * sum x~y~ (r~^2)^(s/2-1)]|
/// with l2 = lambda^2 and W = Omega.
std::pair<double, double> check_constraints(const VortexConfig& config,
                                            double omega, const Trap& trap);

struct HarmonicChecksReport {
    double sum_x;
    double sum_y;
    double sum_xy;
    bool antipodal;  // meaningful for n = 2 only, else true
};

/// First/second-moment identities special to the harmonic trap s = 2:
/// centroid at the origin; for lambda != 1 additionally sum x~y~ = 0; for
/// n = 2 the pair is antipodal.  Throws for non-harmonic traps.
HarmonicChecksReport harmonic_special_checks(const VortexConfig& config,
                                             const Trap& trap,
                                             double tol = 1e-6);

/// Closed-form second moment of the harmonic-trap minimizer,
/// sum r~^2 = n(n-1) / (4*(2/(1+lambda^2) - ln(Omega)/(2*mu*Omega))).
double harmonic_second_moment(int n, double omega, const Trap& trap);

/// Multistart quasi-Newton minimization of w over n vortex positions.
/// Deterministic for a fixed seed.  n = 1 is returned analytically (origin).
PatternResult minimize_pattern(const OptimizerConfig& opt, double omega,
                               const ScalingContext& ctx);

} // namespace becvortex
