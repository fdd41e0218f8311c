#include "becvortex/gp.hpp"
#include <cstdio>

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <queue>

#include "becvortex/flow.hpp"

namespace becvortex {
namespace {

using cplx = std::complex<double>;

bool node_active(const GpGrid& g, int ix, int iy) {
    if (ix <= 0 || iy <= 0 || ix >= g.nx - 1 || iy >= g.ny - 1) return false;
    if (g.trap.is_flat()) return g.trap.q(g.x(ix), g.y(iy)) < 1.0;
    return true;
}

cplx at(const GpGrid& g, int ix, int iy) {
    if (ix < 0 || iy < 0 || ix >= g.nx || iy >= g.ny) return {0.0, 0.0};
    return g.field[g.idx(ix, iy)];
}

// Covariant differences with gauge field A = Omega * (-y, x).
cplx dx_at(const GpGrid& g, int ix, int iy) {
    cplx du = (at(g, ix + 1, iy) - at(g, ix - 1, iy)) / (2.0 * g.hx());
    double ax = -g.omega * g.y(iy);
    return du - cplx(0.0, 1.0) * ax * at(g, ix, iy);
}

cplx dy_at(const GpGrid& g, int ix, int iy) {
    cplx du = (at(g, ix, iy + 1) - at(g, ix, iy - 1)) / (2.0 * g.hy());
    double ay = g.omega * g.x(ix);
    return du - cplx(0.0, 1.0) * ay * at(g, ix, iy);
}

double node_w(const GpGrid& g, int ix, int iy) {
    double x = g.x(ix), y = g.y(iy);
    double v = g.trap.is_flat() ? 0.0 : g.trap.potential(x, y);
    return v / (4.0 * g.epsilon * g.epsilon) -
           0.5 * g.omega * g.omega * (x * x + y * y);
}

double mass(const GpGrid& g) {
    long double m = 0.0L;
    for (const cplx& u : g.field) m += std::norm(u);
    return static_cast<double>(m) * g.hx() * g.hy();
}


// RAII wrapper for the DST-based inverse of (c - Laplacian/2) on the
// interior nodes, applied separately to real and imaginary parts.
struct Preconditioner {
    int mx, my;       // interior sizes nx-2, ny-2
    double shift;     // c
    std::vector<double> buf;
    std::vector<double> eig_x, eig_y;
    fftw_plan plan = nullptr;
    double scale;

    Preconditioner(const GpGrid& g, double c) : mx(g.nx - 2), my(g.ny - 2),
                                                shift(c), buf(mx * my) {
        eig_x.resize(mx);
        eig_y.resize(my);
        // Symbol of the wide (2h) centered first difference, so the
        // preconditioner weights every mode consistently with the discrete
        // kinetic term (a compact-Laplacian symbol would crush the high-k
        // modes the wide stencil barely penalizes).
        for (int m = 0; m < mx; ++m) {
            double s = std::sin(M_PI * (m + 1) / (g.nx - 1)) / g.hx();
            eig_x[m] = s * s;
        }
        for (int m = 0; m < my; ++m) {
            double s = std::sin(M_PI * (m + 1) / (g.ny - 1)) / g.hy();
            eig_y[m] = s * s;
        }
        plan = fftw_plan_r2r_2d(mx, my, buf.data(), buf.data(), FFTW_RODFT00,
                                FFTW_RODFT00, FFTW_ESTIMATE);
        scale = 1.0 / (4.0 * (g.nx - 1) * (g.ny - 1));
    }
    ~Preconditioner() { fftw_destroy_plan(plan); }

    void apply_part(const GpGrid& g, const std::vector<cplx>& in,
                    std::vector<cplx>& out, bool imag_part) {
        for (int i = 0; i < mx; ++i)
            for (int j = 0; j < my; ++j) {
                cplx v = in[g.idx(i + 1, j + 1)];
                buf[i * my + j] = imag_part ? v.imag() : v.real();
            }
        fftw_execute(plan);
        for (int i = 0; i < mx; ++i)
            for (int j = 0; j < my; ++j)
                buf[i * my + j] /= shift + 0.5 * (eig_x[i] + eig_y[j]);
        fftw_execute(plan);
        for (int i = 0; i < mx; ++i)
            for (int j = 0; j < my; ++j) {
                double v = buf[i * my + j] * scale;
                cplx& o = out[g.idx(i + 1, j + 1)];
                if (imag_part)
                    o = {o.real(), v};
                else
                    o = {v, o.imag()};
            }
    }

    void apply(const GpGrid& g, const std::vector<cplx>& in,
               std::vector<cplx>& out) {
        out.assign(in.size(), {0.0, 0.0});
        apply_part(g, in, out, false);
        apply_part(g, in, out, true);
        for (int ix = 1; ix < g.nx - 1; ++ix)
            for (int iy = 1; iy < g.ny - 1; ++iy)
                if (!node_active(g, ix, iy)) out[g.idx(ix, iy)] = {0.0, 0.0};
    }
};

} // namespace

void gp_gradient(const GpGrid& g, std::vector<cplx>& out) {
    out.assign(g.field.size(), {0.0, 0.0});
    const double inv2e2 = 1.0 / (2.0 * g.epsilon * g.epsilon);
    for (int ix = 1; ix < g.nx - 1; ++ix) {
        for (int iy = 1; iy < g.ny - 1; ++iy) {
            if (!node_active(g, ix, iy)) continue;
            cplx u = g.field[g.idx(ix, iy)];
            double ax = -g.omega * g.y(iy);
            double ay = g.omega * g.x(ix);
            cplx gk = 0.5 * (cplx(0.0, 1.0) * ax * dx_at(g, ix, iy) +
                             (dx_at(g, ix - 1, iy) - dx_at(g, ix + 1, iy)) /
                                 (2.0 * g.hx()));
            gk += 0.5 * (cplx(0.0, 1.0) * ay * dy_at(g, ix, iy) +
                         (dy_at(g, ix, iy - 1) - dy_at(g, ix, iy + 1)) /
                             (2.0 * g.hy()));
            gk += node_w(g, ix, iy) * u;
            gk += std::norm(u) * u * inv2e2;
            out[g.idx(ix, iy)] = gk;
        }
    }
}

GpGrid make_grid(const Trap& trap, double epsilon, double omega, int nx,
                 int ny) {
    if (!(epsilon > 0.0) || !(epsilon < 1.0))
        throw std::domain_error("gp: epsilon must lie in (0,1)");
    if (nx < 16 || ny < 16)
        throw std::domain_error("gp: grid too small");
    double margin = trap.is_flat() ? 1.05 : 1.5;
    GpGrid g{trap,
             epsilon,
             omega,
             margin * trap.semi_axis_x(),
             margin * trap.semi_axis_y(),
             nx,
             ny,
             {}};
    if (std::max(g.hx(), g.hy()) > 0.5 * epsilon)
        throw std::domain_error(
            "gp: grid spacing exceeds eps/2; refine to resolve vortex cores");
    g.field.assign(static_cast<size_t>(nx) * ny, {0.0, 0.0});
    return g;
}

void init_thomas_fermi(GpGrid& grid, const std::vector<Point>& seeds) {
    for (int ix = 0; ix < grid.nx; ++ix) {
        for (int iy = 0; iy < grid.ny; ++iy) {
            if (!node_active(grid, ix, iy)) {
                grid.field[grid.idx(ix, iy)] = {0.0, 0.0};
                continue;
            }
            double x = grid.x(ix), y = grid.y(iy);
            double amp = std::sqrt(grid.trap.tf_density(x, y));
            double phase = phase_S(x, y, grid.trap, grid.omega);
            cplx u = amp * std::polar(1.0, phase);
            for (const Point& s : seeds) {
                cplx z(x - s.x, y - s.y);
                double r = std::abs(z);
                if (r > 1e-14) u *= z / r;
            }
            grid.field[grid.idx(ix, iy)] = u;
        }
    }
    normalize(grid);
}

// Extended-precision compensated total so the descent loop can resolve
// energy differences far below one ulp of the double value; plain
// accumulation over ~1e5 nodes leaves rounding noise large enough to defeat
// the monotone line search once only soft boundary-layer modes remain.
static long double energy_ld(const GpGrid& g) {
    long double e = 0.0L, comp = 0.0L;
    const double inv4e2 = 1.0 / (4.0 * g.epsilon * g.epsilon);
    auto add = [&](long double term) {
        long double y = term - comp;
        long double t = e + y;
        comp = (t - e) - y;
        e = t;
    };
    for (int ix = 0; ix < g.nx; ++ix) {
        for (int iy = 0; iy < g.ny; ++iy) {
            double n2 = std::norm(at(g, ix, iy));
            add(0.5 * (std::norm(dx_at(g, ix, iy)) +
                       std::norm(dy_at(g, ix, iy))));
            add(node_w(g, ix, iy) * n2 + static_cast<long double>(n2) * n2 *
                                             inv4e2);
        }
    }
    return e * static_cast<long double>(g.hx()) * g.hy();
}

double gp_energy(const GpGrid& g) { return static_cast<double>(energy_ld(g)); }

void normalize(GpGrid& grid) {
    double m = mass(grid);
    if (!(m > 0.0)) throw std::domain_error("gp: cannot normalize zero field");
    double f = 1.0 / std::sqrt(m);
    for (cplx& u : grid.field) u *= f;
}

SolveReport solve(GpGrid& grid, const SolveOptions& opts) {
    const double h2 = grid.hx() * grid.hy();
    if (opts.seeds.empty()) {
        bool empty = true;
        for (const cplx& u : grid.field)
            if (u != cplx{0.0, 0.0}) {
                empty = false;
                break;
            }
        if (empty) init_thomas_fermi(grid);
    } else {
        init_thomas_fermi(grid, opts.seeds);
    }
    normalize(grid);

    Preconditioner prec(grid, grid.trap.mu() /
                                  (2.0 * grid.epsilon * grid.epsilon));
    std::vector<cplx> g, r, p;
    GpGrid trial = grid;

    long double energy = energy_ld(grid);
    double tau = 1.0;
    int plateau = 0;
    double pgnorm = std::numeric_limits<double>::infinity();
    bool converged = false;
    int rejected_streak = 0;  // consecutive preconditioned-step rejections
    double pg_window_ref = std::numeric_limits<double>::infinity();
    int it = 0;
    for (; it < opts.max_iters; ++it) {
        gp_gradient(grid, g);
        double theta = 0.0;
        for (size_t k = 0; k < g.size(); ++k)
            theta += g[k].real() * grid.field[k].real() +
                     g[k].imag() * grid.field[k].imag();
        theta *= h2;  // field has unit mass
        r.resize(g.size());
        double pg2 = 0.0;
        for (size_t k = 0; k < g.size(); ++k) {
            r[k] = g[k] - theta * grid.field[k];
            pg2 += std::norm(r[k]);
        }
        pgnorm = std::sqrt(pg2 * h2);
        if (opts.verbose_every > 0 && it % opts.verbose_every == 0)
            std::fprintf(stderr, "it=%d E=%.12g pg=%.3e tau=%.3e\n", it,
                         static_cast<double>(energy), pgnorm, tau);
        if (plateau >= 100 && pgnorm < opts.grad_tol) {
            converged = true;
            break;
        }
        // The gradient can pin just above tolerance while the energy sits at
        // line-search resolution (e.g. a symmetry-frozen saddle whose
        // unstable directions the symmetric flow cannot excite).  If a long
        // window brings no meaningful gradient decrease, further iterations
        // are wasted: stop and report non-convergence honestly.
        if (it > 0 && it % 250 == 0) {
            if (plateau >= 250 && pgnorm > 0.9 * pg_window_ref) break;
            pg_window_ref = pgnorm;
        }

        prec.apply(grid, r, p);
        bool accepted = false;
        long double new_energy = energy;
        // True decreases from the softest (boundary-layer) modes fall below
        // the summation noise of the energy; a strictly monotone test would
        // collapse the step size there, so quasi-flat steps within a few
        // units of that noise are accepted and convergence is certified by
        // the gradient norm instead.
        const long double slack =
            1e-15L * (1.0L + (energy < 0.0L ? -energy : energy));
        for (int bt = 0; bt < 40; ++bt) {
            trial.field = grid.field;
            for (size_t k = 0; k < p.size(); ++k)
                trial.field[k] -= tau * p[k];
            double m = mass(trial);
            if (m > 0.0) {
                double f = 1.0 / std::sqrt(m);
                for (cplx& u : trial.field) u *= f;
                new_energy = energy_ld(trial);
                if (new_energy <= energy + slack) {
                    accepted = true;
                    break;
                }
            }
            tau *= 0.5;
        }
        if (accepted) {
            rejected_streak = 0;
        } else {
            // Fall back to the raw projected gradient with its natural step
            // scale; near flat critical points the preconditioned direction
            // can be rejected while plain descent still makes progress.  A
            // sustained rejection streak means the iterate is pinned at the
            // resolution of the line search, so stop rather than crawl.
            if (++rejected_streak >= 25) break;
            double tau_raw = 1.0 / prec.shift;
            for (int bt = 0; bt < 40 && !accepted; ++bt) {
                trial.field = grid.field;
                for (size_t k = 0; k < r.size(); ++k)
                    trial.field[k] -= tau_raw * r[k];
                double m = mass(trial);
                if (m > 0.0) {
                    double f = 1.0 / std::sqrt(m);
                    for (cplx& u : trial.field) u *= f;
                    new_energy = energy_ld(trial);
                    if (new_energy <= energy + slack) accepted = true;
                }
                if (!accepted) tau_raw *= 0.5;
            }
            if (accepted) tau = 0.25;
        }
        if (!accepted) {
            // Neither direction can lower the energy any further.  If the
            // projected gradient is already below tolerance this is the
            // minimizer; otherwise report the stall honestly.
            converged = pgnorm < opts.grad_tol;
            break;
        }
        double rel = static_cast<double>(std::abs(energy - new_energy)) /
                     std::max(1.0, std::abs(static_cast<double>(energy)));
        plateau = rel < opts.energy_tol ? plateau + 1 : 0;
        grid.field.swap(trial.field);
        energy = new_energy;
        tau = std::min(tau * 1.25, 1.0);
    }

    SolveReport rep;
    rep.energy = static_cast<double>(energy);
    rep.iterations = it;
    rep.converged = converged;
    gp_gradient(grid, g);
    double ug = 0.0;
    for (size_t k = 0; k < g.size(); ++k)
        ug += g[k].real() * grid.field[k].real() +
              g[k].imag() * grid.field[k].imag();
    rep.mu_gp = ug * h2;
    rep.vortices = detect_vortices(grid);
    DensityComparison dc = density_comparison(grid);
    rep.l2_tf_distance = dc.l2_distance;
    double tail = 0.0;
    double qb = grid.trap.q_boundary();
    for (int ix = 0; ix < grid.nx; ++ix)
        for (int iy = 0; iy < grid.ny; ++iy)
            if (grid.trap.q(grid.x(ix), grid.y(iy)) > qb) {
                double n2 = std::norm(at(grid, ix, iy));
                tail += n2 * n2;
            }
    rep.tail_mass = tail * h2;
    return rep;
}

namespace {

double principal_diff(const cplx& a, const cplx& b) {
    // Phase increment from a to b on the principal branch.
    return std::arg(b * std::conj(a));
}

} // namespace

std::vector<Vortex> detect_vortices(const GpGrid& grid) {
    const double margin = std::cbrt(grid.epsilon);
    const double q_in = grid.trap.q_inner(margin);
    const int nx = grid.nx, ny = grid.ny;
    std::vector<int> plaq_w(static_cast<size_t>(nx - 1) * (ny - 1), 0);
    auto pidx = [&](int ix, int iy) { return ix * (ny - 1) + iy; };

    for (int ix = 0; ix < nx - 1; ++ix) {
        for (int iy = 0; iy < ny - 1; ++iy) {
            bool in = true;
            cplx c[4] = {at(grid, ix, iy), at(grid, ix + 1, iy),
                         at(grid, ix + 1, iy + 1), at(grid, ix, iy + 1)};
            int cxs[4] = {ix, ix + 1, ix + 1, ix};
            int cys[4] = {iy, iy, iy + 1, iy + 1};
            for (int k = 0; k < 4 && in; ++k) {
                if (grid.trap.q(grid.x(cxs[k]), grid.y(cys[k])) > q_in ||
                    std::norm(c[k]) == 0.0)
                    in = false;
            }
            if (!in) continue;
            double total = 0.0;
            for (int k = 0; k < 4; ++k)
                total += principal_diff(c[k], c[(k + 1) % 4]);
            int w = static_cast<int>(std::lround(total / (2.0 * M_PI)));
            plaq_w[pidx(ix, iy)] = w;
        }
    }

    std::vector<char> visited(plaq_w.size(), 0);
    std::vector<Vortex> out;
    for (int ix = 0; ix < nx - 1; ++ix) {
        for (int iy = 0; iy < ny - 1; ++iy) {
            if (visited[pidx(ix, iy)] || plaq_w[pidx(ix, iy)] == 0) continue;
            // Cluster 8-adjacent flagged plaquettes.
            int winding = 0;
            double wsum = 0.0, cx = 0.0, cy = 0.0;
            std::queue<std::pair<int, int>> q;
            q.push({ix, iy});
            visited[pidx(ix, iy)] = 1;
            while (!q.empty()) {
                auto [px, py] = q.front();
                q.pop();
                winding += plaq_w[pidx(px, py)];
                double mean2 = 0.25 * (std::norm(at(grid, px, py)) +
                                       std::norm(at(grid, px + 1, py)) +
                                       std::norm(at(grid, px + 1, py + 1)) +
                                       std::norm(at(grid, px, py + 1)));
                double weight = 1.0 / (mean2 + 1e-12);
                wsum += weight;
                cx += weight * (grid.x(px) + 0.5 * grid.hx());
                cy += weight * (grid.y(py) + 0.5 * grid.hy());
                for (int dx = -1; dx <= 1; ++dx)
                    for (int dy = -1; dy <= 1; ++dy) {
                        int qx = px + dx, qy = py + dy;
                        if (qx < 0 || qy < 0 || qx >= nx - 1 || qy >= ny - 1)
                            continue;
                        if (visited[pidx(qx, qy)] || plaq_w[pidx(qx, qy)] == 0)
                            continue;
                        visited[pidx(qx, qy)] = 1;
                        q.push({qx, qy});
                    }
            }
            if (winding != 0)
                out.push_back({{cx / wsum, cy / wsum}, winding});
        }
    }
    std::sort(out.begin(), out.end(), [](const Vortex& a, const Vortex& b) {
        return std::make_pair(a.position.x, a.position.y) <
               std::make_pair(b.position.x, b.position.y);
    });
    return out;
}

int boundary_phase_circulation(const GpGrid& grid) {
    const double margin = std::cbrt(grid.epsilon);
    const double q_in = grid.trap.q_inner(margin);
    double xr = 0.95 * std::sqrt(q_in) / std::sqrt(2.0);
    double yr = xr / grid.trap.anisotropy();
    auto ix_of = [&](double x) {
        return static_cast<int>(std::lround((x + grid.Lx) / grid.hx()));
    };
    auto iy_of = [&](double y) {
        return static_cast<int>(std::lround((y + grid.Ly) / grid.hy()));
    };
    int i0 = ix_of(-xr), i1 = ix_of(xr), j0 = iy_of(-yr), j1 = iy_of(yr);

    std::vector<std::pair<int, int>> contour;
    for (int i = i0; i < i1; ++i) contour.push_back({i, j0});
    for (int j = j0; j < j1; ++j) contour.push_back({i1, j});
    for (int i = i1; i > i0; --i) contour.push_back({i, j1});
    for (int j = j1; j > j0; --j) contour.push_back({i0, j});

    double total = 0.0;
    for (size_t k = 0; k < contour.size(); ++k) {
        auto [ax, ay] = contour[k];
        auto [bx, by] = contour[(k + 1) % contour.size()];
        total += principal_diff(at(grid, ax, ay), at(grid, bx, by));
    }
    return static_cast<int>(std::lround(total / (2.0 * M_PI)));
}

DensityComparison density_comparison(const GpGrid& grid) {
    const double margin = std::cbrt(grid.epsilon);
    const double q_in = grid.trap.q_inner(margin);
    double l2 = 0.0, worst = 0.0;
    for (int ix = 0; ix < grid.nx; ++ix) {
        for (int iy = 0; iy < grid.ny; ++iy) {
            double x = grid.x(ix), y = grid.y(iy);
            double rho = grid.trap.tf_density(x, y);
            double n2 = std::norm(at(grid, ix, iy));
            double d = n2 - rho;
            l2 += d * d;
            if (grid.trap.q(x, y) <= q_in && rho > 0.0) {
                double rel = std::abs(std::sqrt(n2) - std::sqrt(rho)) /
                             std::sqrt(rho);
                worst = std::max(worst, rel);
            }
        }
    }
    return {l2 * grid.hx() * grid.hy(), worst};
}

double tail_max_density(const GpGrid& grid) {
    const double margin = std::cbrt(grid.epsilon);
    double worst = 0.0;
    for (int ix = 0; ix < grid.nx; ++ix) {
        for (int iy = 0; iy < grid.ny; ++iy) {
            double x = grid.x(ix), y = grid.y(iy);
            bool exterior;
            if (grid.trap.is_flat())
                exterior = grid.trap.q(x, y) > 1.0;
            else
                exterior = grid.trap.potential(x, y) >
                           grid.trap.mu() + margin;
            if (exterior)
                worst = std::max(worst, std::norm(at(grid, ix, iy)));
        }
    }
    return worst;
}

void write_snapshot(const GpGrid& grid, const std::string& path) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("snapshot: cannot open " + tmp);
        f.write("GPGRID01", 8);
        std::int64_t nx = grid.nx, ny = grid.ny;
        f.write(reinterpret_cast<const char*>(&nx), 8);
        f.write(reinterpret_cast<const char*>(&ny), 8);
        double header[6] = {grid.Lx,      grid.Ly,           grid.epsilon,
                            grid.omega,   grid.trap.slope(), grid.trap.anisotropy()};
        f.write(reinterpret_cast<const char*>(header), sizeof(header));
        for (const cplx& u : grid.field) {
            double re = u.real(), im = u.imag();
            f.write(reinterpret_cast<const char*>(&re), 8);
            f.write(reinterpret_cast<const char*>(&im), 8);
        }
        if (!f) throw std::runtime_error("snapshot: short write to " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("snapshot: cannot rename into " + path);
}

GpGrid read_snapshot(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("snapshot: cannot open " + path);
    char magic[8];
    f.read(magic, 8);
    if (!f || std::memcmp(magic, "GPGRID01", 8) != 0)
        throw std::runtime_error("snapshot: bad magic in " + path);
    std::int64_t nx = 0, ny = 0;
    f.read(reinterpret_cast<char*>(&nx), 8);
    f.read(reinterpret_cast<char*>(&ny), 8);
    double header[6];
    f.read(reinterpret_cast<char*>(header), sizeof(header));
    if (!f || nx < 2 || ny < 2 || nx * ny > (std::int64_t{1} << 30))
        throw std::runtime_error("snapshot: corrupt header in " + path);
    Trap trap(header[4], header[5]);
    GpGrid g{trap, header[2], header[3], header[0], header[1],
             static_cast<int>(nx), static_cast<int>(ny), {}};
    g.field.resize(static_cast<size_t>(nx) * ny);
    for (cplx& u : g.field) {
        double re, im;
        f.read(reinterpret_cast<char*>(&re), 8);
        f.read(reinterpret_cast<char*>(&im), 8);
        u = {re, im};
    }
    if (!f) throw std::runtime_error("snapshot: truncated field in " + path);
    return g;
}

namespace {

struct Probe {
    SolveReport report;
    int count;
};

Probe probe_ground_state(const Trap& trap, double epsilon, double omega,
                         int nx, int ny, const SolveOptions& base) {
    SolveOptions unseeded = base;
    unseeded.seeds.clear();
    GpGrid g1 = make_grid(trap, epsilon, omega, nx, ny);
    init_thomas_fermi(g1);
    SolveReport r1 = solve(g1, unseeded);

    SolveOptions seeded = base;
    seeded.seeds = {{0.0, 0.0}};
    GpGrid g2 = make_grid(trap, epsilon, omega, nx, ny);
    SolveReport r2 = solve(g2, seeded);

    const SolveReport& best = (r2.energy < r1.energy) ? r2 : r1;
    return {best, static_cast<int>(best.vortices.size())};
}

} // namespace

NucleationResult nucleation_sweep(const Trap& trap, double epsilon,
                                  double omega_lo, double omega_hi, int nx,
                                  int ny, double omega_tol,
                                  const SolveOptions& solve_opts) {
    if (!(omega_lo < omega_hi) || !(omega_tol > 0.0))
        throw std::domain_error("nucleation_sweep: invalid Omega range");
    int solves = 0;
    Probe lo = probe_ground_state(trap, epsilon, omega_lo, nx, ny, solve_opts);
    solves += 2;
    Probe hi = probe_ground_state(trap, epsilon, omega_hi, nx, ny, solve_opts);
    solves += 2;
    if (lo.count != 0 || hi.count < 1)
        throw std::domain_error(
            "nucleation_sweep: range does not bracket the transition");

    double a = omega_lo, b = omega_hi;
    Probe at_b = hi;
    while (b - a > omega_tol) {
        double mid = 0.5 * (a + b);
        Probe pm = probe_ground_state(trap, epsilon, mid, nx, ny, solve_opts);
        solves += 2;
        if (pm.count >= 1) {
            b = mid;
            at_b = pm;
        } else {
            a = mid;
        }
    }
    NucleationResult res;
    res.omega_star = b;
    res.ratio = b / (-std::log(epsilon));
    res.c1_value = c1(trap);
    res.vortices = at_b.report.vortices;
    res.solves = solves;
    return res;
}

} // namespace becvortex
