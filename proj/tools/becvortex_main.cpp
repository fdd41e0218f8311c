// Command-line front end: analytic trap/ladder/pattern predictions and the
// direct grid minimizer, with deterministic JSON/CSV output.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "becvortex/flow.hpp"
#include "becvortex/gp.hpp"
#include "becvortex/jsonw.hpp"
#include "becvortex/ladder.hpp"
#include "becvortex/pattern.hpp"
#include "becvortex/trap.hpp"

namespace bv = becvortex;

namespace {

struct NonConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

bv::Trap parse_trap(const std::string& s_text, double lambda) {
    if (s_text == "flat") return bv::Trap::flat(lambda);
    try {
        size_t pos = 0;
        double s = std::stod(s_text, &pos);
        if (pos != s_text.size()) throw std::invalid_argument(s_text);
        return bv::Trap(s, lambda);
    } catch (const std::invalid_argument&) {
        throw std::domain_error("--s must be a number >= 2 or \"flat\"");
    }
}

void emit(const std::string& output, const std::string& content) {
    if (output.empty())
        std::cout << content << std::endl;
    else
        bv::atomic_write(output, content + "\n");
}

void write_params(bv::JsonWriter& w, const bv::Trap& trap,
                  std::optional<double> epsilon = std::nullopt) {
    if (trap.is_flat())
        w.key("s").value("flat");
    else
        w.key("s").value(trap.slope());
    w.key("lambda").value(trap.anisotropy());
    if (epsilon) w.key("epsilon").value(*epsilon);
}

int max_threads() {
    const char* env = std::getenv("BECVORTEX_THREADS");
    if (!env) return 1;
    int v = std::atoi(env);
    return v >= 1 ? v : 1;
}

int cmd_tf(const std::string& s_text, double lambda, int resolution,
           const std::string& output) {
    bv::Trap trap = parse_trap(s_text, lambda);
    bv::JsonWriter w;
    w.begin_object();
    w.key("kind").value("tf");
    write_params(w, trap);
    w.key("mu").value(trap.mu());
    w.key("q_boundary").value(trap.q_boundary());
    w.key("semi_axis_x").value(trap.semi_axis_x());
    w.key("semi_axis_y").value(trap.semi_axis_y());
    w.key("normalization_residual")
        .value(bv::tf_normalization_residual(trap, resolution));
    w.end_object();
    emit(output, w.str());
    return 0;
}

int cmd_chi(const std::string& s_text, double lambda, int resolution,
            const std::string& output) {
    bv::Trap trap = parse_trap(s_text, lambda);
    double boundary_max = 0.0;
    for (int k = 0; k < 1000; ++k) {
        double th = 2.0 * M_PI * k / 1000.0;
        double x = trap.semi_axis_x() * std::cos(th);
        double y = trap.semi_axis_y() * std::sin(th);
        boundary_max = std::max(boundary_max,
                                std::abs(bv::chi(x, y, trap)));
    }
    bv::JsonWriter w;
    w.begin_object();
    w.key("kind").value("chi");
    write_params(w, trap);
    w.key("chi_origin").value(bv::chi_origin(trap));
    w.key("boundary_max").value(boundary_max);
    w.key("pde_residual").value(bv::chi_pde_residual(trap, resolution));
    w.end_object();
    emit(output, w.str());
    return 0;
}

int cmd_ladder(const std::string& s_text, double lambda, double epsilon,
               double delta, int n_max, const std::string& output) {
    bv::Trap trap = parse_trap(s_text, lambda);
    bv::ScalingContext ctx(epsilon, trap, delta);
    auto rungs = bv::omega_ladder(n_max, ctx);
    bv::JsonWriter w;
    w.begin_object();
    w.key("kind").value("ladder");
    write_params(w, trap, epsilon);
    w.key("delta").value(delta);
    w.key("c1").value(bv::c1(trap));
    w.key("omega").begin_array();
    for (double v : rungs) w.value(v);
    w.end_array();
    w.key("omega_unscaled").begin_array();
    for (double v : rungs) w.value(bv::unscale_omega(v, ctx));
    w.end_array();
    if (trap.slope() == 2.0)
        w.key("local_stability_omega")
            .value(bv::harmonic_local_stability_omega(ctx));
    w.end_object();
    emit(output, w.str());
    return 0;
}

int cmd_predict(const std::string& s_text, double lambda, double epsilon,
                double delta, double omega, const std::string& output) {
    bv::Trap trap = parse_trap(s_text, lambda);
    bv::ScalingContext ctx(epsilon, trap, delta);
    bv::CountPrediction p = bv::predict_vortex_count(omega, ctx);
    bv::JsonWriter w;
    w.begin_object();
    w.key("kind").value("predict");
    write_params(w, trap, epsilon);
    w.key("omega").value(omega);
    w.key("definite").value(p.definite);
    w.key("count").value(p.count);
    w.key("count_hi").value(p.count_hi);
    w.end_object();
    emit(output, w.str());
    return 0;
}

std::string pattern_json(const bv::PatternResult& r, const bv::Trap& trap,
                         double epsilon, double omega) {
    bv::JsonWriter w;
    w.begin_object();
    w.key("kind").value("pattern");
    w.key("n").value(r.config.n());
    w.key("omega").value(omega);
    write_params(w, trap, epsilon);
    w.key("positions").begin_array();
    for (const bv::Point& p : r.config.positions) {
        w.begin_array();
        w.value(p.x);
        w.value(p.y);
        w.end_array();
    }
    w.end_array();
    w.key("w_value").value(r.w_value);
    w.key("grad_norm").value(r.grad_norm);
    w.key("residuals").begin_array();
    w.value(r.residual_1);
    w.value(r.residual_2);
    w.end_array();
    w.key("basin_count").value(r.basin_count);
    w.key("converged").value(r.converged);
    w.end_object();
    return w.str();
}

int cmd_pattern(const std::string& s_text, double lambda, double epsilon,
                double omega, int n, int multistarts, int max_iters,
                double grad_tol, std::uint64_t seed, const std::string& output,
                const std::string& csv_output) {
    bv::Trap trap = parse_trap(s_text, lambda);
    bv::ScalingContext ctx(epsilon, trap);
    bv::OptimizerConfig opt;
    opt.n = n;
    opt.multistarts = multistarts;
    opt.max_iters = max_iters;
    opt.grad_tol = grad_tol;
    opt.seed = seed;
    bv::PatternResult r = bv::minimize_pattern(opt, omega, ctx);
    emit(output, pattern_json(r, trap, epsilon, omega));
    if (!csv_output.empty()) {
        std::string csv = "x_tilde,y_tilde\n";
        char buf[80];
        for (const bv::Point& p : r.config.positions) {
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", p.x, p.y);
            csv += buf;
        }
        bv::atomic_write(csv_output, csv);
    }
    if (!r.converged) throw NonConvergence("pattern optimizer did not converge");
    return 0;
}

std::string solve_report_json(const bv::SolveReport& rep, const bv::GpGrid& g) {
    bv::JsonWriter w;
    w.begin_object();
    w.key("kind").value("gp_solve");
    write_params(w, g.trap, g.epsilon);
    w.key("omega").value(g.omega);
    w.key("nx").value(g.nx);
    w.key("ny").value(g.ny);
    w.key("energy").value(rep.energy);
    w.key("mu_gp").value(rep.mu_gp);
    w.key("l2_tf_distance").value(rep.l2_tf_distance);
    w.key("tail_mass").value(rep.tail_mass);
    w.key("iterations").value(rep.iterations);
    w.key("converged").value(rep.converged);
    w.key("vortices").begin_array();
    for (const bv::Vortex& v : rep.vortices) {
        w.begin_object();
        w.key("x").value(v.position.x);
        w.key("y").value(v.position.y);
        w.key("winding").value(v.winding);
        w.end_object();
    }
    w.end_array();
    w.end_object();
    return w.str();
}

int cmd_gp_solve(const std::string& s_text, double lambda, double epsilon,
                 double omega, int nx, int ny,
                 const std::vector<std::string>& seed_flags, int max_iters,
                 const std::string& output, const std::string& snapshot) {
    bv::Trap trap = parse_trap(s_text, lambda);
    if (ny <= 0) ny = nx;
    bv::GpGrid grid = bv::make_grid(trap, epsilon, omega, nx, ny);
    bv::SolveOptions opts;
    opts.max_iters = max_iters;
    for (const std::string& s : seed_flags) {
        auto comma = s.find(',');
        if (comma == std::string::npos)
            throw std::domain_error("--seed-vortex expects \"x,y\"");
        opts.seeds.push_back(
            {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))});
    }
    bv::SolveReport rep = bv::solve(grid, opts);
    emit(output, solve_report_json(rep, grid));
    if (!snapshot.empty()) bv::write_snapshot(grid, snapshot);
    if (!rep.converged) throw NonConvergence("gp solve did not converge");
    return 0;
}

int cmd_sweep(const std::string& s_text, double lambda, double epsilon,
              double omega_lo, double omega_hi, int nx, int ny, double tol,
              int max_iters, const std::string& output) {
    bv::Trap trap = parse_trap(s_text, lambda);
    if (ny <= 0) ny = nx;
    (void)max_threads();  // sweep probes run serially; cap trivially honored
    bv::SolveOptions opts;
    opts.max_iters = max_iters;
    bv::NucleationResult res = bv::nucleation_sweep(trap, epsilon, omega_lo,
                                                    omega_hi, nx, ny, tol,
                                                    opts);
    bv::JsonWriter w;
    w.begin_object();
    w.key("kind").value("sweep");
    write_params(w, trap, epsilon);
    w.key("omega_star").value(res.omega_star);
    w.key("ratio").value(res.ratio);
    w.key("c1").value(res.c1_value);
    w.key("solves").value(res.solves);
    w.key("vortices").begin_array();
    for (const bv::Vortex& v : res.vortices) {
        w.begin_object();
        w.key("x").value(v.position.x);
        w.key("y").value(v.position.y);
        w.key("winding").value(v.winding);
        w.end_object();
    }
    w.end_array();
    w.end_object();
    emit(output, w.str());
    return 0;
}

int cmd_report(const std::vector<std::string>& inputs,
               const std::string& output) {
    if (inputs.empty()) throw std::domain_error("report: no input files");
    using nlohmann::json;
    std::vector<json> docs;
    for (const std::string& path : inputs) {
        std::ifstream f(path);
        if (!f) throw std::domain_error("report: cannot read " + path);
        docs.push_back(json::parse(f));
    }
    // All inputs must agree on (s, lambda, epsilon) where present.
    json ref;
    for (const json& d : docs)
        for (const char* k : {"s", "lambda", "epsilon"})
            if (d.contains(k)) {
                if (ref.contains(k) && ref[k] != d[k])
                    throw std::domain_error(
                        std::string("report: incompatible parameter ") + k);
                ref[k] = d[k];
            }

    const json* ladder = nullptr;
    const json* pattern = nullptr;
    const json* gp = nullptr;
    const json* sweep = nullptr;
    for (const json& d : docs) {
        std::string kind = d.value("kind", "");
        if (kind == "ladder") ladder = &d;
        else if (kind == "pattern") pattern = &d;
        else if (kind == "gp_solve") gp = &d;
        else if (kind == "sweep") sweep = &d;
    }

    bv::JsonWriter w;
    w.begin_object();
    w.key("kind").value("report");
    for (const char* k : {"s", "lambda", "epsilon"})
        if (ref.contains(k)) {
            if (ref[k].is_string())
                w.key(k).value(ref[k].get<std::string>());
            else
                w.key(k).value(ref[k].get<double>());
        }

    w.key("rows").begin_array();
    auto emit_row = [&](double omega, const json* pat, const json* gps) {
        w.begin_object();
        w.key("omega").value(omega);
        if (ladder && ref.contains("epsilon")) {
            double c1v = (*ladder)["c1"].get<double>();
            double eps = ref["epsilon"].get<double>();
            double delta = ladder->value("delta", 0.1);
            double spacing = c1v * std::log(-std::log(eps));
            double half = delta * spacing;
            double omega1 = c1v * (-std::log(eps));
            int predicted;
            if (omega <= omega1 - half)
                predicted = 0;
            else
                predicted = std::max(
                    1, static_cast<int>(
                           std::floor((omega - omega1) / spacing)) + 1);
            w.key("predicted_count").value(predicted);
        }
        if (gps) {
            w.key("measured_count")
                .value(static_cast<int>((*gps)["vortices"].size()));
        }
        if (pat) {
            w.key("w_value").value((*pat)["w_value"].get<double>());
            w.key("residuals").begin_array();
            for (const auto& r : (*pat)["residuals"]) w.value(r.get<double>());
            w.end_array();
        }
        if (pat && gps) {
            // Nearest-neighbor mismatch between predicted tilde positions
            // and detected (tilde-transformed) oracle positions.
            double lambda = ref["lambda"].get<double>();
            double rt = std::sqrt(omega);
            std::vector<bv::Point> detected;
            for (const auto& v : (*gps)["vortices"])
                detected.push_back({v["x"].get<double>() * rt,
                                    v["y"].get<double>() * lambda * rt});
            double worst = 0.0;
            for (const auto& p : (*pat)["positions"]) {
                double px = p[0].get<double>(), py = p[1].get<double>();
                double best = std::numeric_limits<double>::infinity();
                for (const bv::Point& d : detected)
                    best = std::min(best, std::hypot(px - d.x, py - d.y));
                worst = std::max(worst, best);
            }
            w.key("position_mismatch").value(worst);
        }
        w.end_object();
    };

    std::vector<double> omegas;
    auto add_omega = [&](const json* d) {
        if (d && d->contains("omega") && (*d)["omega"].is_number())
            omegas.push_back((*d)["omega"].get<double>());
    };
    add_omega(pattern);
    add_omega(gp);
    if (sweep) omegas.push_back((*sweep)["omega_star"].get<double>());
    std::sort(omegas.begin(), omegas.end());
    omegas.erase(std::unique(omegas.begin(), omegas.end()), omegas.end());
    for (double omega : omegas) {
        const json* pat =
            (pattern && (*pattern)["omega"].get<double>() == omega) ? pattern
                                                                    : nullptr;
        const json* gps =
            (gp && (*gp)["omega"].get<double>() == omega) ? gp : nullptr;
        emit_row(omega, pat, gps);
    }
    w.end_array();
    if (sweep) {
        w.key("omega_star").value((*sweep)["omega_star"].get<double>());
        w.key("ratio").value((*sweep)["ratio"].get<double>());
        w.key("c1").value((*sweep)["c1"].get<double>());
    }
    w.end_object();
    emit(output, w.str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Vortex structure of a rotating 2D condensate: analytic "
                 "predictions and a direct grid minimizer"};
    app.set_config("--config", "", "Flat key=value config file");
    app.require_subcommand(1);

    std::string s_text = "2";
    double lambda = 1.0, epsilon = 0.05, delta = 0.1, omega = 0.0;
    std::string output, csv_output, snapshot;
    int resolution = 512, n_max = 5, n = 1, multistarts = 32;
    int max_iters_opt = 500, nx = 128, ny = 0, gp_max_iters = 50000;
    double grad_tol = 1e-10, omega_lo = 0.0, omega_hi = 20.0, tol = 0.05;
    std::uint64_t seed = 0;
    std::vector<std::string> seed_flags, inputs;

    auto add_trap = [&](CLI::App* c) {
        c->add_option("--s", s_text, "Trap steepness (>= 2) or \"flat\"");
        c->add_option("--lambda", lambda, "Anisotropy in (0,1]");
    };
    auto add_scaling = [&](CLI::App* c) {
        c->add_option("--epsilon", epsilon, "Coupling parameter in (0, 1/e)");
        c->add_option("--delta", delta, "Transition-band margin in (0, 0.5)");
    };
    auto add_output = [&](CLI::App* c) {
        c->add_option("--output", output, "Output path (default: stdout)");
    };

    CLI::App* tf = app.add_subcommand("tf", "Thomas-Fermi profile summary");
    add_trap(tf);
    add_output(tf);
    tf->add_option("--resolution", resolution, "Quadrature grid size");

    CLI::App* chi_cmd = app.add_subcommand("chi", "Stream-function summary");
    add_trap(chi_cmd);
    add_output(chi_cmd);
    chi_cmd->add_option("--resolution", resolution, "Residual grid size");

    CLI::App* ladder = app.add_subcommand("ladder", "Critical-velocity ladder");
    add_trap(ladder);
    add_scaling(ladder);
    add_output(ladder);
    ladder->add_option("--n-max", n_max, "Number of rungs");

    CLI::App* predict = app.add_subcommand("predict", "Vortex-count prediction");
    add_trap(predict);
    add_scaling(predict);
    add_output(predict);
    predict->add_option("--omega", omega, "Scaled angular velocity")->required();

    CLI::App* pattern = app.add_subcommand("pattern", "Optimal vortex pattern");
    add_trap(pattern);
    add_scaling(pattern);
    add_output(pattern);
    pattern->add_option("--n", n, "Vortex count")->required();
    pattern->add_option("--omega", omega, "Scaled angular velocity")->required();
    pattern->add_option("--multistarts", multistarts, "Multistart count");
    pattern->add_option("--max-iters", max_iters_opt, "Iteration cap");
    pattern->add_option("--grad-tol", grad_tol, "Gradient tolerance");
    pattern->add_option("--seed", seed, "RNG seed");
    pattern->add_option("--csv", csv_output, "CSV output path");

    CLI::App* gp = app.add_subcommand("gp-solve", "Direct grid minimization");
    add_trap(gp);
    add_scaling(gp);
    add_output(gp);
    gp->add_option("--omega", omega, "Scaled angular velocity")->required();
    gp->add_option("--nx", nx, "Grid size (x)")->required();
    gp->add_option("--ny", ny, "Grid size (y), default nx");
    gp->add_option("--max-iters", gp_max_iters, "Iteration cap");
    gp->add_option("--seed-vortex", seed_flags,
                   "Seeded phase singularity \"x,y\" (repeatable)");
    gp->add_option("--snapshot", snapshot, "Binary field snapshot path");

    CLI::App* sweep = app.add_subcommand("sweep", "Nucleation bisection");
    add_trap(sweep);
    add_scaling(sweep);
    add_output(sweep);
    sweep->add_option("--omega-lo", omega_lo, "Lower bracket")->required();
    sweep->add_option("--omega-hi", omega_hi, "Upper bracket")->required();
    sweep->add_option("--nx", nx, "Grid size (x)")->required();
    sweep->add_option("--ny", ny, "Grid size (y), default nx");
    sweep->add_option("--tol", tol, "Omega bisection tolerance");
    sweep->add_option("--max-iters", gp_max_iters, "Iteration cap per solve");

    CLI::App* report = app.add_subcommand("report", "Consolidated comparison");
    report->add_option("--inputs", inputs, "Prior output files")->required();
    add_output(report);

    try {
        app.parse(argc, argv);
        if (tf->parsed()) return cmd_tf(s_text, lambda, resolution, output);
        if (chi_cmd->parsed())
            return cmd_chi(s_text, lambda, resolution, output);
        if (ladder->parsed())
            return cmd_ladder(s_text, lambda, epsilon, delta, n_max, output);
        if (predict->parsed())
            return cmd_predict(s_text, lambda, epsilon, delta, omega, output);
        if (pattern->parsed())
            return cmd_pattern(s_text, lambda, epsilon, omega, n, multistarts,
                               max_iters_opt, grad_tol, seed, output,
                               csv_output);
        if (gp->parsed())
            return cmd_gp_solve(s_text, lambda, epsilon, omega, nx, ny,
                                seed_flags, gp_max_iters, output, snapshot);
        if (sweep->parsed())
            return cmd_sweep(s_text, lambda, epsilon, omega_lo, omega_hi, nx,
                             ny, tol, gp_max_iters, output);
        if (report->parsed()) return cmd_report(inputs, output);
        return 1;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const NonConvergence& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
