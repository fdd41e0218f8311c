#include "becvortex/pattern.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace becvortex {
namespace {

constexpr double kCollisionDist = 1e-6;

double pair_d(const Point& a, const Point& b, double lambda) {
    double dx = a.x - b.x, dy = a.y - b.y;
    return dx * dx + dy * dy / (lambda * lambda);
}

double min_separation(const std::vector<Point>& p, double lambda) {
    double best = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < p.size(); ++i)
        for (size_t j = i + 1; j < p.size(); ++j)
            best = std::min(best, std::sqrt(pair_d(p[i], p[j], lambda)));
    return best;
}

std::vector<Point> unpack(const std::vector<double>& x) {
    std::vector<Point> p(x.size() / 2);
    for (size_t k = 0; k < p.size(); ++k) p[k] = {x[2 * k], x[2 * k + 1]};
    return p;
}

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double a : v) s += a * a;
    return std::sqrt(s);
}

// Sort key: angle in [0, 2pi), then radius; origin sorts first.
bool angle_radius_less(const Point& a, const Point& b) {
    auto key = [](const Point& p) {
        double r = std::hypot(p.x, p.y);
        double th = r > 0.0 ? std::atan2(p.y, p.x) : 0.0;
        if (th < 0.0) th += 2.0 * M_PI;
        return std::make_pair(th, r);
    };
    return key(a) < key(b);
}

bool lex_less(const std::vector<Point>& a, const std::vector<Point>& b) {
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].x != b[i].x) return a[i].x < b[i].x;
        if (a[i].y != b[i].y) return a[i].y < b[i].y;
    }
    return false;
}

std::vector<Point> sorted_by_angle(std::vector<Point> p) {
    std::sort(p.begin(), p.end(), angle_radius_less);
    return p;
}

// Symmetric Hausdorff-style distance in the max-norm, insensitive to the
// ordering of the two point lists.
double set_distance(const std::vector<Point>& a, const std::vector<Point>& b) {
    auto one_sided = [](const std::vector<Point>& u,
                        const std::vector<Point>& v) {
        double worst = 0.0;
        for (const Point& p : u) {
            double best = std::numeric_limits<double>::infinity();
            for (const Point& q : v)
                best = std::min(best, std::max(std::abs(p.x - q.x),
                                               std::abs(p.y - q.y)));
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(one_sided(a, b), one_sided(b, a));
}

} // namespace

std::vector<double> grad_w(const VortexConfig& config, double omega,
                           const Trap& trap) {
    if (!config.all_unit_windings())
        throw std::domain_error("grad_w: formula valid only for unit windings");
    const int n = config.n();
    const double lambda = trap.anisotropy();
    const double l2 = lambda * lambda;
    const double mu = trap.mu();
    const double s = trap.slope();
    const double drift = trap.is_flat()
                             ? 0.0
                             : M_PI * s * std::log(omega) /
                                   (4.0 * std::pow(omega, s / 2.0));
    const auto& p = config.positions;
    std::vector<double> g(2 * n, 0.0);
    for (int k = 0; k < n; ++k) {
        double gx = 0.0, gy = 0.0;
        for (int j = 0; j < n; ++j) {
            if (j == k) continue;
            double d = pair_d(p[k], p[j], lambda);
            if (d < kMinSeparation * kMinSeparation)
                throw std::domain_error("grad_w: coincident vortex positions");
            gx += -(0.5 * M_PI * mu) * (p[k].x - p[j].x) / d;
            gy += -(0.5 * M_PI * mu / l2) * (p[k].y - p[j].y) / d;
        }
        double r2 = p[k].x * p[k].x + p[k].y * p[k].y;
        gx += 2.0 * M_PI * mu / (1.0 + l2) * p[k].x;
        gy += 2.0 * M_PI * mu / (1.0 + l2) * p[k].y;
        if (!trap.is_flat() && r2 > 0.0) {
            double f = drift * std::pow(r2, s / 2.0 - 1.0);
            gx -= f * p[k].x;
            gy -= f * p[k].y;
        }
        g[2 * k] = gx;
        g[2 * k + 1] = gy;
    }
    return g;
}

std::vector<Point> canonicalize(const std::vector<Point>& positions,
                                double lambda) {
    if (positions.empty()) return positions;
    std::vector<std::vector<Point>> candidates;
    if (lambda == 1.0) {
        // Rotations placing each off-origin vortex on the positive x-axis,
        // each optionally composed with the reflection y -> -y.
        for (const Point& pivot : positions) {
            double r = std::hypot(pivot.x, pivot.y);
            if (r < 1e-14) continue;
            double c = pivot.x / r, sn = pivot.y / r;
            for (int refl = 0; refl < 2; ++refl) {
                std::vector<Point> img;
                img.reserve(positions.size());
                for (const Point& p : positions) {
                    if (&p == &pivot) {
                        // The pivot maps to the positive x-axis by
                        // construction; write that exactly so rounding noise
                        // cannot flip its angle between 0 and 2*pi.
                        img.push_back({r, 0.0});
                        continue;
                    }
                    double x = c * p.x + sn * p.y;
                    double y = -sn * p.x + c * p.y;
                    img.push_back({x, refl ? -y : y});
                }
                candidates.push_back(sorted_by_angle(std::move(img)));
            }
        }
        if (candidates.empty())  // single vortex at the origin
            candidates.push_back(positions);
    } else {
        for (int sx : {1, -1})
            for (int sy : {1, -1}) {
                std::vector<Point> img;
                img.reserve(positions.size());
                for (const Point& p : positions)
                    img.push_back({sx * p.x, sy * p.y});
                candidates.push_back(sorted_by_angle(std::move(img)));
            }
    }
    const std::vector<Point>* best = &candidates[0];
    for (const auto& c : candidates)
        if (lex_less(c, *best)) best = &c;
    return *best;
}

std::pair<double, double> check_constraints(const VortexConfig& config,
                                            double omega, const Trap& trap) {
    const double l2 = trap.anisotropy() * trap.anisotropy();
    const double mu = trap.mu();
    const double s = trap.slope();
    const int n = config.n();
    const double coeff =
        trap.is_flat() ? 0.0
                       : (1.0 + l2) * s * std::log(omega) /
                             (8.0 * mu * std::pow(omega, s / 2.0));

    double sum_r2 = 0.0, sum_rs = 0.0, sum_xy = 0.0, sum_xy_w = 0.0;
    for (const Point& p : config.positions) {
        double r2 = p.x * p.x + p.y * p.y;
        sum_r2 += r2;
        sum_xy += p.x * p.y;
        if (!trap.is_flat()) {
            sum_rs += std::pow(r2, s / 2.0);
            if (r2 > 0.0) sum_xy_w += p.x * p.y * std::pow(r2, s / 2.0 - 1.0);
        }
    }
    double res1 =
        std::abs(sum_r2 - (1.0 + l2) * n * (n - 1) / 8.0 - coeff * sum_rs);
    double res2 = std::abs((1.0 - l2) * (sum_xy - coeff * sum_xy_w));
    return {res1, res2};
}

HarmonicChecksReport harmonic_special_checks(const VortexConfig& config,
                                             const Trap& trap, double tol) {
    if (trap.slope() != 2.0)
        throw std::domain_error(
            "harmonic_special_checks: requires slope s = 2");
    double sx = 0.0, sy = 0.0, sxy = 0.0;
    for (const Point& p : config.positions) {
        sx += p.x;
        sy += p.y;
        sxy += p.x * p.y;
    }
    bool antipodal = true;
    if (config.n() == 2) {
        antipodal =
            std::abs(config.positions[0].x + config.positions[1].x) < tol &&
            std::abs(config.positions[0].y + config.positions[1].y) < tol;
    }
    return {sx, sy, sxy, antipodal};
}

double harmonic_second_moment(int n, double omega, const Trap& trap) {
    if (trap.slope() != 2.0)
        throw std::domain_error("harmonic_second_moment: requires s = 2");
    double l2 = trap.anisotropy() * trap.anisotropy();
    double denom = 4.0 * (2.0 / (1.0 + l2) -
                          std::log(omega) / (2.0 * trap.mu() * omega));
    return n * (n - 1) / denom;
}

namespace {

struct LocalMinimum {
    std::vector<Point> positions;  // canonicalized
    double w;
    double grad_norm;
    bool converged;
};

// BFGS with Armijo backtracking and a collision guard on the trial point.
LocalMinimum run_one_start(std::vector<double> x, double omega,
                           const Trap& trap, const OptimizerConfig& opt) {
    const int dim = static_cast<int>(x.size());
    const double lambda = trap.anisotropy();
    auto eval_w = [&](const std::vector<double>& v) {
        VortexConfig c{unpack(v), std::vector<int>(v.size() / 2, 1)};
        return renormalized_w(c, omega, trap);
    };
    auto eval_g = [&](const std::vector<double>& v) {
        VortexConfig c{unpack(v), std::vector<int>(v.size() / 2, 1)};
        return grad_w(c, omega, trap);
    };

    std::vector<double> h(dim * dim, 0.0);  // inverse Hessian approximation
    for (int i = 0; i < dim; ++i) h[i * dim + i] = 1.0;

    double f = eval_w(x);
    std::vector<double> g = eval_g(x);
    bool converged = false;
    for (int it = 0; it < opt.max_iters; ++it) {
        double gn = norm2(g);
        if (gn <= opt.grad_tol) {
            converged = true;
            break;
        }
        std::vector<double> p(dim, 0.0);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) p[i] -= h[i * dim + j] * g[j];
        double slope = 0.0;
        for (int i = 0; i < dim; ++i) slope += p[i] * g[i];
        if (slope >= 0.0) {  // reset a corrupted metric
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j)
                    h[i * dim + j] = (i == j) ? 1.0 : 0.0;
            for (int i = 0; i < dim; ++i) p[i] = -g[i];
            slope = -gn * gn;
        }

        double alpha = 1.0;
        std::vector<double> xt(dim);
        double ft = f;
        bool accepted = false;
        for (int bt = 0; bt < 60; ++bt) {
            for (int i = 0; i < dim; ++i) xt[i] = x[i] + alpha * p[i];
            if (min_separation(unpack(xt), lambda) < kCollisionDist) {
                alpha *= 0.5;
                continue;
            }
            ft = eval_w(xt);
            if (ft <= f + 1e-4 * alpha * slope) {
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!accepted) break;

        std::vector<double> gt = eval_g(xt);
        std::vector<double> s(dim), yv(dim);
        for (int i = 0; i < dim; ++i) {
            s[i] = xt[i] - x[i];
            yv[i] = gt[i] - g[i];
        }
        double sy = 0.0;
        for (int i = 0; i < dim; ++i) sy += s[i] * yv[i];
        if (sy > 1e-12 * norm2(s) * norm2(yv)) {
            // BFGS inverse update H <- (I - s y^T/sy) H (I - y s^T/sy) + s s^T/sy
            std::vector<double> hy(dim, 0.0);
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j) hy[i] += h[i * dim + j] * yv[j];
            double yhy = 0.0;
            for (int i = 0; i < dim; ++i) yhy += yv[i] * hy[i];
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j)
                    h[i * dim + j] += (1.0 + yhy / sy) * s[i] * s[j] / sy -
                                      (hy[i] * s[j] + s[i] * hy[j]) / sy;
        }
        x = xt;
        f = ft;
        g = gt;
    }
    return {canonicalize(unpack(x), lambda), f, norm2(g), converged};
}

} // namespace

PatternResult minimize_pattern(const OptimizerConfig& opt, double omega,
                               const ScalingContext& ctx) {
    if (opt.n < 1) throw std::domain_error("minimize_pattern: n must be >= 1");
    if (opt.n > 12)
        throw std::domain_error("minimize_pattern: n capped at 12");
    if (!(omega > 0.0))
        throw std::domain_error("minimize_pattern: Omega must be positive");
    if (opt.multistarts < 1 || !(opt.grad_tol > 0.0))
        throw std::domain_error("minimize_pattern: invalid optimizer config");
    const Trap& trap = *ctx.trap;

    PatternResult result;
    if (opt.n == 1) {
        result.config = {{{0.0, 0.0}}, {1}};
        result.w_value = 0.0;
        result.grad_norm = 0.0;
        result.basin_count = 1;
        result.converged = true;
        auto [r1, r2] = check_constraints(result.config, omega, trap);
        result.residual_1 = r1;
        result.residual_2 = r2;
        return result;
    }

    const double l2 = trap.anisotropy() * trap.anisotropy();
    const double radius =
        1.0 + std::sqrt((1.0 + l2) * opt.n * (opt.n - 1) / 8.0);

    std::vector<LocalMinimum> minima;
    for (int start = 0; start < opt.multistarts; ++start) {
        std::mt19937_64 rng(opt.seed * 0x9e3779b97f4a7c15ULL + start + 1);
        std::uniform_real_distribution<double> u(-radius, radius);
        std::vector<double> x0(2 * opt.n);
        int guard = 0;
        do {
            for (double& v : x0) v = u(rng);
        } while (min_separation(unpack(x0), trap.anisotropy()) <
                     10.0 * kCollisionDist &&
                 ++guard < 100);
        if (guard >= 100) continue;

        LocalMinimum m = run_one_start(x0, omega, trap, opt);
        if (!m.converged) continue;
        bool duplicate = false;
        for (const auto& seen : minima)
            if (set_distance(seen.positions, m.positions) < 1e-5) {
                duplicate = true;
                break;
            }
        if (!duplicate) minima.push_back(m);
    }
    if (minima.empty()) {
        result.converged = false;
        return result;
    }
    const LocalMinimum* pick = &minima[0];
    for (const auto& m : minima)
        if (m.w < pick->w ||
            (m.w == pick->w && lex_less(m.positions, pick->positions)))
            pick = &m;

    result.config = {pick->positions,
                     std::vector<int>(pick->positions.size(), 1)};
    result.w_value = pick->w;
    result.grad_norm = pick->grad_norm;
    result.basin_count = static_cast<int>(minima.size());
    result.converged = true;
    auto [r1, r2] = check_constraints(result.config, omega, trap);
    result.residual_1 = r1;
    result.residual_2 = r2;
    return result;
}

} // namespace becvortex
