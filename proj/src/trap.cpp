#include "becvortex/trap.hpp"

#include <algorithm>
#include <array>

namespace becvortex {
namespace {

// 8-point Gauss-Legendre nodes/weights on [-1,1].
constexpr std::array<double, 8> kGx = {
    -0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
    -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
    0.7966664774136267,  0.9602898564975363};
constexpr std::array<double, 8> kGw = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
    0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
    0.2223810344533745, 0.1012285362903763};

struct TfShape {
    double s;       // infinity for flat
    double lambda;
    double mu;
    double qb;      // domain boundary in q

    double density(double x, double y) const {
        double q = x * x + lambda * lambda * y * y;
        if (q >= qb) return 0.0;
        if (std::isinf(s)) return 0.5 * mu;
        double v = 0.5 * (mu - std::pow(q, s / 2.0));
        return v > 0.0 ? v : 0.0;
    }
};

// Integral of the density over one cell, clipping against the elliptic
// boundary with tensor Gauss rules.
double cell_integral_clipped(const TfShape& f, double x0, double x1, double y0,
                             double y1) {
    double hx = 0.5 * (x1 - x0), cx = 0.5 * (x0 + x1);
    double sum = 0.0;
    for (int i = 0; i < 8; ++i) {
        double x = cx + hx * kGx[i];
        double q_rem = f.qb - x * x;
        if (q_rem <= 0.0) continue;
        double ymax = std::sqrt(q_rem) / f.lambda;
        double a = std::max(y0, -ymax), b = std::min(y1, ymax);
        if (b <= a) continue;
        double hy = 0.5 * (b - a), cy = 0.5 * (a + b);
        double inner = 0.0;
        for (int j = 0; j < 8; ++j)
            inner += kGw[j] * f.density(x, cy + hy * kGx[j]);
        sum += kGw[i] * inner * hy;
    }
    return sum * hx;
}

double tf_mass(const TfShape& f, int n) {
    if (n < 8) throw std::domain_error("tf quadrature: resolution too coarse");
    double ax = std::sqrt(f.qb), ay = std::sqrt(f.qb) / f.lambda;
    double hx = 2.0 * ax / n, hy = 2.0 * ay / n;
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        double x0 = -ax + i * hx, x1 = x0 + hx;
        double xc = std::clamp(0.0, x0, x1);
        for (int j = 0; j < n; ++j) {
            double y0 = -ay + j * hy, y1 = y0 + hy;
            double yc = std::clamp(0.0, y0, y1);
            double qmin = xc * xc + f.lambda * f.lambda * yc * yc;
            if (qmin >= f.qb) continue;
            double qmax = 0.0;
            for (double x : {x0, x1})
                for (double y : {y0, y1})
                    qmax = std::max(qmax, x * x + f.lambda * f.lambda * y * y);
            if (qmax <= f.qb) {
                // interior cell: 4x4 midpoint subsample
                double acc = 0.0;
                for (int a = 0; a < 4; ++a)
                    for (int b = 0; b < 4; ++b)
                        acc += f.density(x0 + (a + 0.5) * hx / 4.0,
                                         y0 + (b + 0.5) * hy / 4.0);
                total += acc * (hx * hy) / 16.0;
            } else {
                total += cell_integral_clipped(f, x0, x1, y0, y1);
            }
        }
    }
    return total;
}

} // namespace

double tf_normalization_residual(const Trap& trap, int resolution) {
    TfShape f{trap.slope(), trap.anisotropy(), trap.mu(), trap.q_boundary()};
    return std::abs(tf_mass(f, resolution) - 1.0);
}

double tf_mass_for_mu(const Trap& trap, double mu_trial, int resolution) {
    if (!(mu_trial > 0.0))
        throw std::domain_error("tf quadrature: trial mu must be positive");
    double qb = trap.is_flat() ? 1.0 : std::pow(mu_trial, 2.0 / trap.slope());
    TfShape f{trap.slope(), trap.anisotropy(), mu_trial, qb};
    return tf_mass(f, resolution);
}

} // namespace becvortex
