#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace becvortex {

/// Anisotropic homogeneous trap V(x,y) = (x^2 + lambda^2 y^2)^(s/2) with
/// slope s >= 2 and anisotropy lambda in (0,1].  The flat-wall limit
/// s -> infinity is represented explicitly (V = 0 inside the unit ellipse
/// x^2 + lambda^2 y^2 < 1, hard wall outside) so that no large powers are
/// ever evaluated.
///
/// All Thomas-Fermi quantities derive from the chemical potential
///   mu = ((s+2)/s * 2*lambda/pi)^(s/(s+2)),
/// fixed by the unit-mass normalization of the TF density
/// rho = (mu - V)/2 restricted to its positive part.  Note that mu
/// exceeds 1 whenever lambda > pi*s/(2*(s+2)); only the flat limit
/// satisfies mu = 2*lambda/pi < 1 for every admissible lambda.
class Trap {
public:
    static constexpr double kFlat = std::numeric_limits<double>::infinity();

    Trap(double slope, double anisotropy)
        : s_(slope), lambda_(anisotropy), mu_(chemical_potential(slope, anisotropy)) {}

    static Trap flat(double anisotropy) { return Trap(kFlat, anisotropy); }

    /// Closed-form TF chemical potential; throws std::domain_error on
    /// parameters outside s >= 2, lambda in (0,1].
    static double chemical_potential(double s, double lambda) {
        if (!(lambda > 0.0) || !(lambda <= 1.0))
            throw std::domain_error("trap: lambda must lie in (0,1]");
        if (std::isinf(s))
            return 2.0 * lambda / M_PI;
        if (!(s >= 2.0))
            throw std::domain_error("trap: slope s must satisfy s >= 2");
        return std::pow((s + 2.0) / s * 2.0 * lambda / M_PI, s / (s + 2.0));
    }

    double slope() const { return s_; }
    double anisotropy() const { return lambda_; }
    double mu() const { return mu_; }
    bool is_flat() const { return std::isinf(s_); }

    /// q = x^2 + lambda^2 y^2, the elliptic radius squared.
    double q(double x, double y) const { return x * x + lambda_ * lambda_ * y * y; }

    /// Boundary of the TF domain in terms of q: q_boundary = mu^(2/s)
    /// (1 for the flat trap).
    double q_boundary() const {
        return is_flat() ? 1.0 : std::pow(mu_, 2.0 / s_);
    }

    double semi_axis_x() const { return std::sqrt(q_boundary()); }
    double semi_axis_y() const { return std::sqrt(q_boundary()) / lambda_; }

    bool inside(double x, double y) const { return q(x, y) < q_boundary(); }

    /// V(x,y); +infinity outside the ellipse for the flat trap.
    double potential(double x, double y) const {
        if (is_flat())
            return q(x, y) < 1.0 ? 0.0 : std::numeric_limits<double>::infinity();
        return std::pow(q(x, y), s_ / 2.0);
    }

    /// b = (mu - V)/2; the signed density whose positive part is the TF
    /// density.
    double b(double x, double y) const {
        return 0.5 * (mu_ - potential(x, y));
    }

    /// TF density rho = max(b, 0).
    double tf_density(double x, double y) const {
        if (is_flat())
            return q(x, y) < 1.0 ? 0.5 * mu_ : 0.0;
        double v = b(x, y);
        return v > 0.0 ? v : 0.0;
    }

    /// Elliptic-radius-squared bound of the inner domain
    /// D_in = { V <= mu - margin }.  For the flat trap the margin is taken
    /// relative to mu (the potential has no graded interior there).
    double q_inner(double margin) const {
        if (is_flat()) {
            double f = 1.0 - margin / mu_;
            return f > 0.0 ? f : 0.0;
        }
        double m = mu_ - margin;
        return m > 0.0 ? std::pow(m, 2.0 / s_) : 0.0;
    }

    bool inside_inner(double x, double y, double margin) const {
        return q(x, y) <= q_inner(margin);
    }

private:
    double s_;
    double lambda_;
    double mu_;
};

/// |integral of the TF density over its domain - 1| via midpoint quadrature
/// on an n x n grid over the bounding rectangle of the TF ellipse.  Cells cut
/// by the boundary are integrated with a clipped Gauss rule (the boundary is
/// an exact ellipse in q); interior cells are subsampled 4x4.
double tf_normalization_residual(const Trap& trap, int resolution);

/// Same quadrature evaluated for a trial chemical potential, used to solve
/// the normalization condition independently of the closed form.
double tf_mass_for_mu(const Trap& trap, double mu_trial, int resolution);

} // namespace becvortex
