#include "becvortex/energetics.hpp"

#include <cmath>

#include "becvortex/flow.hpp"

namespace becvortex {
namespace {

// Anisotropic squared separation (Xi-Xj)^2 + (Yi-Yj)^2/lambda^2 used by the
// tilde-coordinate logarithms.
double pair_d(const Point& a, const Point& b, double lambda) {
    double dx = a.x - b.x, dy = a.y - b.y;
    return dx * dx + dy * dy / (lambda * lambda);
}

void require_separated(const std::vector<Point>& pts, double lambda) {
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j)
            if (pair_d(pts[i], pts[j], lambda) <
                kMinSeparation * kMinSeparation)
                throw std::domain_error(
                    "vortex positions coincide within the separation guard");
}

// Coefficient of the position-dependent drift term; vanishes in the
// flat-trap limit for Omega > 1.
double drift_coefficient(double omega, const Trap& trap) {
    if (trap.is_flat()) return 0.0;
    return M_PI * std::log(omega) / (4.0 * std::pow(omega, trap.slope() / 2.0));
}

} // namespace

double interaction_W(const std::vector<Point>& raw_positions,
                     const std::vector<int>& windings, const Trap& trap) {
    const size_t n = raw_positions.size();
    if (windings.size() != n)
        throw std::domain_error("interaction_W: windings/positions mismatch");
    double total = 0.0;
    for (size_t i = 0; i < n; ++i) {
        double rho = trap.tf_density(raw_positions[i].x, raw_positions[i].y);
        for (size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            double dx = raw_positions[i].x - raw_positions[j].x;
            double dy = raw_positions[i].y - raw_positions[j].y;
            double r2 = dx * dx + dy * dy;
            if (r2 < kMinSeparation * kMinSeparation)
                throw std::domain_error(
                    "interaction_W: coincident vortex positions");
            total += -M_PI * windings[i] * windings[j] * 0.5 * std::log(r2) * rho;
        }
    }
    return total;
}

double renormalized_w(const VortexConfig& config, double omega,
                      const Trap& trap) {
    if (!(omega > 0.0))
        throw std::domain_error("renormalized_w: Omega must be positive");
    if (!config.all_unit_windings())
        throw std::domain_error(
            "renormalized_w: formula valid only for unit windings");
    const double lambda = trap.anisotropy();
    const double l2 = lambda * lambda;
    const double mu = trap.mu();
    const auto& p = config.positions;
    require_separated(p, lambda);

    double log_sum = 0.0;
    for (size_t i = 0; i < p.size(); ++i)
        for (size_t j = i + 1; j < p.size(); ++j)
            log_sum += std::log(pair_d(p[i], p[j], lambda));

    double conf_sum = 0.0, drift_sum = 0.0;
    const double s = trap.slope();
    for (const Point& pt : p) {
        double r2 = pt.x * pt.x + pt.y * pt.y;
        conf_sum += r2;
        if (!trap.is_flat()) drift_sum += std::pow(r2, s / 2.0);
    }

    return -0.25 * M_PI * mu * log_sum + M_PI * mu / (1.0 + l2) * conf_sum -
           drift_coefficient(omega, trap) * drift_sum;
}

std::vector<Point> tilde_transform(const std::vector<Point>& raw_positions,
                                   double omega, const Trap& trap) {
    if (!(omega > 0.0))
        throw std::domain_error("tilde_transform: Omega must be positive");
    double rt = std::sqrt(omega);
    std::vector<Point> out;
    out.reserve(raw_positions.size());
    for (const Point& p : raw_positions)
        out.push_back({p.x * rt, p.y * trap.anisotropy() * rt});
    return out;
}

std::vector<Point> tilde_inverse(const std::vector<Point>& tilde_positions,
                                 double omega, const Trap& trap) {
    if (!(omega > 0.0))
        throw std::domain_error("tilde_inverse: Omega must be positive");
    double rt = std::sqrt(omega);
    std::vector<Point> out;
    out.reserve(tilde_positions.size());
    for (const Point& p : tilde_positions)
        out.push_back({p.x / rt, p.y / (trap.anisotropy() * rt)});
    return out;
}

double single_vortex_delta(double omega, const ScalingContext& ctx) {
    const Trap& trap = *ctx.trap;
    const double mu = trap.mu();
    const double l2 = trap.anisotropy() * trap.anisotropy();
    double rotation_gain;
    if (trap.is_flat()) {
        rotation_gain = M_PI * mu * omega / (1.0 + l2);
    } else {
        double s = trap.slope();
        rotation_gain = M_PI * s * std::pow(mu, (s + 2.0) / s) * omega /
                        ((1.0 + l2) * (s + 2.0));
    }
    return 0.5 * M_PI * mu * ctx.abs_log_eps() - rotation_gain;
}

EnergyBreakdown gp_energy_delta(const VortexConfig& config, double omega,
                                const ScalingContext& ctx) {
    const int n = config.n();
    if (n == 0) return {0.0, 0.0, 0.0, false, 0.0};
    if (!(omega > 0.0))
        throw std::domain_error("gp_energy_delta: Omega must be positive");
    const Trap& trap = *ctx.trap;
    double core = n * single_vortex_delta(omega, ctx);
    double ladder = 0.25 * M_PI * trap.mu() * n * (n - 1) * std::log(omega);
    double w = renormalized_w(config, omega, trap);
    return {core, ladder, w, true, core + ladder + w};
}

double interaction_decomposition_remainder(const VortexConfig& config,
                                           double omega, const Trap& trap) {
    const int n = config.n();
    if (n < 2) return 0.0;
    std::vector<Point> raw = tilde_inverse(config.positions, omega, trap);
    std::vector<int> ones(n, 1);
    double w_raw = interaction_W(raw, ones, trap);

    double log_sum = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (j != i)
                log_sum += std::log(pair_d(config.positions[i],
                                           config.positions[j],
                                           trap.anisotropy()));
    double mu = trap.mu();
    double leading = 0.25 * M_PI * mu * n * (n - 1) * std::log(omega) -
                     0.25 * M_PI * mu * log_sum;
    return w_raw - leading;
}

QuantizationReport single_quantization_check(const VortexConfig& config,
                                             double omega,
                                             const ScalingContext& ctx) {
    const Trap& trap = *ctx.trap;
    if (config.all_unit_windings()) return {true, true, 0.0};

    std::vector<Point> raw = tilde_inverse(config.positions, omega, trap);
    const double abs_log_eps = ctx.abs_log_eps();
    const double mu = trap.mu();
    const double log_omega = std::log(omega);

    bool first = true;
    double worst = 0.0;
    std::vector<bool> verdicts;
    for (int ai = 1; ai <= 9; ++ai) {
        double alpha = 0.1 * ai;
        double core_unit = alpha * abs_log_eps;  // |ln sigma|, sigma = eps^alpha
        bool favored = true;
        for (int i = 0; i < config.n(); ++i) {
            int d = config.windings[i];
            if (d == 1) continue;
            double rho = trap.tf_density(raw[i].x, raw[i].y);
            double chi_val = chi(raw[i].x, raw[i].y, trap);
            double gain = 2.0 * M_PI * omega * chi_val;
            double margin;
            if (d < 0) {
                // An anti-vortex costs rotation energy instead of gaining it;
                // compare against having no vortex at all.
                margin = M_PI * rho * d * d * core_unit - d * gain;
            } else {
                // d-fold core (weight d^2) vs d separate unit cores plus
                // their mutual logarithmic interaction.
                double cost_multi = M_PI * rho * d * d * core_unit - d * gain;
                double cost_split = d * (M_PI * rho * core_unit - gain) +
                                    0.25 * M_PI * mu * d * (d - 1) * log_omega;
                margin = cost_multi - cost_split;
            }
            if (first || margin < worst) worst = margin;
            first = false;
            if (!(margin > 0.0)) favored = false;
        }
        verdicts.push_back(favored);
    }
    bool favored_all_alpha = true, alpha_independent = true;
    for (bool v : verdicts) {
        if (!v) favored_all_alpha = false;
        if (v != verdicts.front()) alpha_independent = false;
    }
    return {favored_all_alpha, alpha_independent, worst};
}

} // namespace becvortex
