#pragma once

#include <complex>
#include <string>
#include <vector>

#include "becvortex/energetics.hpp"
#include "becvortex/ladder.hpp"
#include "becvortex/trap.hpp"

namespace becvortex {

/// Uniform grid over [-Lx,Lx] x [-Ly,Ly] carrying a complex order-parameter
/// field with zero Dirichlet boundary.  The box always encloses the
/// Thomas-Fermi ellipse with margin; the flat trap additionally zeroes the
/// field outside the hard-wall ellipse itself.
struct GpGrid {
    Trap trap;
    double epsilon;
    double omega;
    double Lx, Ly;
    int nx, ny;
    std::vector<std::complex<double>> field;  // row-major, index ix*ny + iy

    double hx() const { return 2.0 * Lx / (nx - 1); }
    double hy() const { return 2.0 * Ly / (ny - 1); }
    double x(int ix) const { return -Lx + ix * hx(); }
    double y(int iy) const { return -Ly + iy * hy(); }
    int idx(int ix, int iy) const { return ix * ny + iy; }
};

/// Builds the grid with the standard box Lx = 1.5*mu^(1/s),
/// Ly = Lx/lambda (flat trap: 1.05 times the hard-wall semi-axes).  Refuses
/// grids whose spacing exceeds eps/2 — vortex cores must span >= 2 cells.
GpGrid make_grid(const Trap& trap, double epsilon, double omega, int nx,
                 int ny);

/// Thomas-Fermi amplitude with the vortex-free phase, optionally multiplied
/// by unit-winding phase singularities at the given raw-coordinate seeds.
void init_thomas_fermi(GpGrid& grid, const std::vector<Point>& seeds = {});

/// Discrete energy of the covariant-form functional
///   1/2 |(grad - i Omega x r) u|^2 + |u|^2 (V + |u|^2)/(4 eps^2)
///   - 1/2 Omega^2 r^2 |u|^2.
double gp_energy(const GpGrid& grid);

/// Scales the field to unit discrete mass.
void normalize(GpGrid& grid);

/// First variation of the discrete energy with respect to the conjugate
/// field: gp_energy(u + t v) has derivative 2*Re<g, v>*hx*hy at t = 0.
void gp_gradient(const GpGrid& grid, std::vector<std::complex<double>>& out);

struct Vortex {
    Point position;  // raw coordinates
    int winding;
};

struct SolveOptions {
    int max_iters = 50000;
    double energy_tol = 1e-10;   // relative change, sustained over 100 steps
    double grad_tol = 1e-6;      // projected-gradient norm
    int verbose_every = 0;       // progress line to stderr every k steps
    std::vector<Point> seeds;    // phase singularities in the initial field
};

struct SolveReport {
    double energy = 0.0;
    double mu_gp = 0.0;          // energy + (1/(4 eps^2)) * integral |u|^4
    std::vector<Vortex> vortices;
    double l2_tf_distance = 0.0; // integral (|u|^2 - rho_tf)^2
    double tail_mass = 0.0;      // integral of |u|^4 outside D
    int iterations = 0;
    bool converged = false;
};

/// Preconditioned normalized gradient flow: descent step on the
/// unconstrained functional, projection back onto the unit-mass sphere,
/// step size adapted by energy-decrease backtracking.  The accepted energy
/// sequence is non-increasing up to the summation noise of the discrete
/// energy; convergence is certified by the projected-gradient norm.
SolveReport solve(GpGrid& grid, const SolveOptions& opts = {});

/// Phase-winding detection restricted to D_in = {V <= mu - eps^(1/3)}:
/// plaquettes whose principal-branch phase circulation is a nonzero multiple
/// of 2 pi are clustered (8-adjacency) into vortices with summed winding and
/// amplitude-weighted centroid.
std::vector<Vortex> detect_vortices(const GpGrid& grid);

/// Net phase circulation (integer) around a rectangle inscribed in D_in;
/// equals the summed winding of all enclosed vortices.
int boundary_phase_circulation(const GpGrid& grid);

struct DensityComparison {
    double l2_distance;     // integral (|u|^2 - rho_tf)^2 over the box
    double pointwise_max;   // max over D_in of ||u| - sqrt(rho)| / sqrt(rho)
};

DensityComparison density_comparison(const GpGrid& grid);

/// Max of |u|^2 over the exterior region {V > mu + eps^(1/3)}.
double tail_max_density(const GpGrid& grid);

/// Binary field snapshot: 8-byte magic "GPGRID01", nx, ny as little-endian
/// int64, then Lx, Ly, eps, Omega, s, lambda as doubles, then nx*ny
/// interleaved (re, im) doubles row-major.
void write_snapshot(const GpGrid& grid, const std::string& path);
GpGrid read_snapshot(const std::string& path);

struct NucleationResult {
    double omega_star;            // first Omega with a detected vortex
    double ratio;                 // omega_star / |ln eps|
    double c1_value;              // ladder slope for comparison
    std::vector<Vortex> vortices; // state just above threshold
    int solves;
};

/// Bisection over Omega for the first appearance of a vortex in the ground
/// state.  Each probe solves from both a vortex-free and a centrally seeded
/// initial field and keeps the lower-energy minimizer, so the threshold is
/// thermodynamic rather than an overshoot of the vortex-free branch.
/// Throws if [omega_lo, omega_hi] does not bracket the transition.
NucleationResult nucleation_sweep(const Trap& trap, double epsilon,
                                  double omega_lo, double omega_hi, int nx,
                                  int ny, double omega_tol,
                                  const SolveOptions& solve_opts = {});

} // namespace becvortex
