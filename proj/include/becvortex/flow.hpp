#pragma once

#include "becvortex/trap.hpp"

namespace becvortex {

/// Stream function chi of the vortex-free mass current:
///   rho_tf * (grad S - Omega x r) = Omega * grad_perp chi,  chi = 0 on dD.
/// Closed form for the homogeneous trap family; the flat limit is the
/// paraboloid mu*(1 - q)/(2*(1+lambda^2)).
double chi(double x, double y, const Trap& trap);

/// Value of chi at the origin (its maximum).
double chi_origin(const Trap& trap);

struct ChiBound {
    double lhs;   // chi(p)
    double rhs;   // upper bound in terms of the TF density
    bool holds;
};

/// chi <= s*2^(2/s)/((1+lambda^2)*(s+2)) * rho^((s+2)/s); equality holds
/// identically for the harmonic trap s = 2.
ChiBound chi_bound_check(double x, double y, const Trap& trap);

/// Vortex-free phase S = (lambda^2-1)/(lambda^2+1) * Omega * x * y.
/// Independent of the slope s; identically zero for lambda = 1.
double phase_S(double x, double y, const Trap& trap, double omega);

/// Max over interior grid points of |div(grad chi / rho_tf) + 2| using the
/// conservative 5-point stencil with face-averaged 1/rho.  Points are kept
/// only where the whole stencil lies in D_in = {V <= mu - margin}.
/// Throws std::domain_error if fewer than 32 interior points span the short
/// axis.
double chi_pde_residual(const Trap& trap, int resolution,
                        double margin_fraction = 0.05);

} // namespace becvortex
