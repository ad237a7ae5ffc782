// Command-line front end: reproducible runs of the remnant oracle check, the
// frustum sector sweep, the 2D reduced-energy minimizer, the thin-film
// convergence-rate probe, and the coercivity map.
//
// Configuration comes from an optional JSON file (--config) with individual
// flags taking precedence. Every run writes its fully resolved configuration
// and a column-schema file next to its outputs.
//
// Exit codes: 0 success, 1 solver failure (non-convergence), 2 invalid
// configuration or precondition.

#include "CLI11.hpp"
#include "json.hpp"

#include "nematicfilm/film3d.hpp"
#include "nematicfilm/frustum.hpp"
#include "nematicfilm/reduced.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

using nlohmann::json;
using namespace nematicfilm;
namespace fs = std::filesystem;

namespace {

struct Common {
    std::string config_path;
    std::string out_dir = "out";
    unsigned long seed = 12345;
    json config;  // loaded file contents, empty object if none
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--config", c.config_path, "JSON configuration file");
    cmd->add_option("--out", c.out_dir, "Output directory");
    cmd->add_option("--seed", c.seed, "Random seed");
}

void load_config(CLI::App* cmd, Common& c) {
    c.config = json::object();
    if (c.config_path.empty()) return;
    std::ifstream in(c.config_path);
    if (!in) throw CLI::ValidationError("--config", "cannot open " + c.config_path);
    in >> c.config;
}

/// Flag value if given on the command line, else config-file value, else the
/// built-in default already stored in `value`.
template <typename T>
void resolve(CLI::App* cmd, const std::string& flag, const Common& c,
             const std::string& key, T& value) {
    if (cmd->count(flag) > 0) return;
    if (c.config.contains(key)) value = c.config.at(key).get<T>();
}

fs::path prepare_out(const Common& c) {
    fs::path dir(c.out_dir);
    fs::create_directories(dir);
    return dir;
}

void write_json(const fs::path& path, const json& j) {
    std::ofstream out(path);
    out << j.dump(2) << "\n";
}

void write_schema(const fs::path& dir, const std::string& name,
                  const std::vector<std::string>& columns,
                  const std::string& notes) {
    write_json(dir / (name + ".schema.json"),
               json{{"file", name + ".csv"}, {"columns", columns}, {"notes", notes}});
}

std::ofstream open_csv(const fs::path& path) {
    std::ofstream out(path);
    out.precision(17);
    return out;
}

SurfaceOfRevolution make_surface(const std::string& name, double phi0, double R,
                                 double s0, double L) {
    if (name == "frustum") return SurfaceOfRevolution::frustum(phi0, s0, L);
    if (name == "cylinder") return SurfaceOfRevolution::cylinder(R, L);
    if (name == "sphere-cap") return SurfaceOfRevolution::sphere_cap(R, s0, L);
    if (name == "plane-annulus") return SurfaceOfRevolution::plane_annulus(s0, L);
    throw std::invalid_argument("unknown surface: " + name);
}

// ---------------------------------------------------------------------------

int run_remnant_check(CLI::App* cmd, Common& c, int n_cases, double tolerance,
                      double M2, double M3, bool fixed_constants) {
    resolve(cmd, "--cases", c, "n_cases", n_cases);
    resolve(cmd, "--tolerance", c, "tolerance", tolerance);
    resolve(cmd, "--m2", c, "M2", M2);
    resolve(cmd, "--m3", c, "M3", M3);
    fixed_constants = fixed_constants || c.config.contains("M2") ||
                      c.config.contains("M3");
    if (fixed_constants && !ElasticConstants{M2, M3}.coercive())
        throw CLI::ValidationError("--m2/--m3", "outside coercive region");
    if (n_cases < 1) throw CLI::ValidationError("--cases", "need at least 1");

    const fs::path dir = prepare_out(c);
    std::mt19937_64 rng(c.seed);
    std::normal_distribution<double> nd;
    std::uniform_real_distribution<double> um2(-0.7, 3.0), um3(-1.0, 2.0);

    double max_gap_G = 0.0, max_gap_value = 0.0;
    for (int n = 0; n < n_cases; ++n) {
        ElasticConstants ec{M2, M3};
        if (!fixed_constants) {
            do {
                ec = {um2(rng), um3(rng)};
            } while (!ec.coercive());
        }
        Vec3 nu(nd(rng), nd(rng), nd(rng));
        if (nu.norm() < 1e-3) nu = Vec3::UnitZ();
        nu.normalize();
        const Vec3 t1 = nu.unitOrthogonal(), t2 = nu.cross(t1);
        auto random_symmetric = [&] {
            Mat3 m;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) m(i, j) = nd(rng);
            Mat3 s = 0.5 * (m + m.transpose());
            return (s - (s.trace() / 3.0) * Mat3::Identity()).eval();
        };
        const Mat3 A = random_symmetric(), B = random_symmetric();
        std::array<Mat3, 3> d;
        for (int k = 0; k < 3; ++k) d[k] = A * t1[k] + B * t2[k];
        const RemnantInput in =
            RemnantInput::make(GradQ::from_components(d), nu, ec);
        const auto [G_brute, value_brute] = brute_force_G(in);
        max_gap_G = std::max(max_gap_G,
                             (G_brute.matrix() - closed_form_G(in).matrix()).norm());
        max_gap_value =
            std::max(max_gap_value, std::abs(f_e0_brute(in) - f_e0(in)));
    }
    const double max_gap = std::max(max_gap_G, max_gap_value);
    const bool pass = max_gap <= tolerance;
    const json report{{"n_cases", n_cases},
                      {"max_abs_gap", max_gap},
                      {"max_abs_gap_G", max_gap_G},
                      {"max_abs_gap_value", max_gap_value},
                      {"pass", pass}};
    write_json(dir / "remnant_check.json", report);
    write_json(dir / "resolved_config.json",
               json{{"command", "remnant-check"}, {"n_cases", n_cases},
                    {"tolerance", tolerance}, {"seed", c.seed},
                    {"fixed_constants", fixed_constants}, {"M2", M2}, {"M3", M3}});
    std::cout << report.dump(2) << "\n";
    return pass ? 0 : 1;
}

int run_coercivity_map(CLI::App* cmd, Common& c, double m2_min, double m2_max,
                       double m3_min, double m3_max, int n2, int n3) {
    resolve(cmd, "--m2-min", c, "m2_min", m2_min);
    resolve(cmd, "--m2-max", c, "m2_max", m2_max);
    resolve(cmd, "--m3-min", c, "m3_min", m3_min);
    resolve(cmd, "--m3-max", c, "m3_max", m3_max);
    resolve(cmd, "--n2", c, "n2", n2);
    resolve(cmd, "--n3", c, "n3", n3);
    if (n2 < 2 || n3 < 2 || m2_max <= m2_min || m3_max <= m3_min)
        throw CLI::ValidationError("--n2/--n3", "invalid grid");

    const fs::path dir = prepare_out(c);
    auto csv = open_csv(dir / "coercivity_map.csv");
    csv << "M2,M3,margin,coercive\n";
    for (int i = 0; i < n2; ++i) {
        const double M2 = m2_min + (m2_max - m2_min) * i / (n2 - 1);
        for (int j = 0; j < n3; ++j) {
            const double M3 = m3_min + (m3_max - m3_min) * j / (n3 - 1);
            const ElasticConstants ec{M2, M3};
            csv << M2 << ',' << M3 << ',' << coercivity_margin(ec) << ','
                << (ec.coercive() ? 1 : 0) << '\n';
        }
    }
    write_schema(dir, "coercivity_map",
                 {"M2", "M3", "margin", "coercive"},
                 "margin: smallest eigenvalue of the elastic quadratic form on "
                 "admissible gradients; coercive: 1 inside the predicted region");
    write_json(dir / "resolved_config.json",
               json{{"command", "coercivity-map"}, {"m2_min", m2_min},
                    {"m2_max", m2_max}, {"m3_min", m3_min}, {"m3_max", m3_max},
                    {"n2", n2}, {"n3", n3}});
    return 0;
}

int run_frustum_sweep(CLI::App* cmd, Common& c, double phi0_min, double phi0_max,
                      double phi0_step, std::vector<int> k_list, int grid_points,
                      int multistarts, double residual_tol, double bisect_tol) {
    resolve(cmd, "--phi0-min", c, "phi0_min", phi0_min);
    resolve(cmd, "--phi0-max", c, "phi0_max", phi0_max);
    resolve(cmd, "--phi0-step", c, "phi0_step", phi0_step);
    resolve(cmd, "--k", c, "k_list", k_list);
    resolve(cmd, "--grid-points", c, "grid_points", grid_points);
    resolve(cmd, "--multistarts", c, "multistarts", multistarts);
    resolve(cmd, "--residual-tol", c, "residual_tol", residual_tol);
    resolve(cmd, "--bisect-tol", c, "bisect_tol", bisect_tol);
    if (phi0_min <= 0.0 || phi0_max > M_PI / 2.0 + 1e-12 || phi0_step <= 0.0 ||
        phi0_max < phi0_min)
        throw CLI::ValidationError("--phi0-min/--phi0-max",
                                   "grid must lie in (0, pi/2]");
    if (k_list.empty()) throw CLI::ValidationError("--k", "need at least one k");

    const fs::path dir = prepare_out(c);
    SectorOptions opt;
    opt.grid_points = grid_points;
    opt.multistarts = multistarts;
    opt.residual_tol = residual_tol;
    opt.seed = c.seed;

    auto csv = open_csv(dir / "frustum_sweep.csv");
    csv << "phi0,k,energy,el_residual,n_iters\n";
    bool all_converged = true;
    for (double phi0 = phi0_min; phi0 <= phi0_max + 1e-12; phi0 += phi0_step) {
        const FrustumGeometry geom = FrustumGeometry::make(std::min(phi0, M_PI / 2.0));
        for (const SectorRow& row : sector_compare(geom, k_list, opt)) {
            csv << geom.phi0 << ',' << row.k << ',' << row.energy << ','
                << row.el_residual << ',' << row.iterations << '\n';
            if (!row.converged) {
                all_converged = false;
                std::cerr << "non-converged: phi0=" << geom.phi0 << " k=" << row.k
                          << " residual=" << row.el_residual << "\n";
            }
        }
    }
    json summary{{"critical_angle", nullptr}};
    try {
        const double phi_star = critical_angle(FrustumGeometry::make(1.0), 0.3,
                                               M_PI / 2.0, bisect_tol, opt);
        summary["critical_angle"] = phi_star;
    } catch (const BracketingError& e) {
        summary["critical_angle_error"] = e.what();
    }
    write_json(dir / "frustum_summary.json", summary);
    write_schema(dir, "frustum_sweep", {"phi0", "k", "energy", "el_residual", "n_iters"},
                 "per-sector minima of the one-dimensional cone energy");
    write_json(dir / "resolved_config.json",
               json{{"command", "frustum-sweep"}, {"phi0_min", phi0_min},
                    {"phi0_max", phi0_max}, {"phi0_step", phi0_step},
                    {"k_list", k_list}, {"grid_points", grid_points},
                    {"multistarts", multistarts}, {"residual_tol", residual_tol},
                    {"bisect_tol", bisect_tol}, {"seed", c.seed}});
    return all_converged ? 0 : 1;
}

int run_minimize(CLI::App* cmd, Common& c, std::string surface, double phi0,
                 double R, double s0, double L, int ns, int ntheta, double beta,
                 double A, double B, double delta, double gtol,
                 long max_iterations, int seed_winding, double rho0) {
    resolve(cmd, "--surface", c, "surface", surface);
    resolve(cmd, "--phi0", c, "phi0", phi0);
    resolve(cmd, "--radius", c, "R", R);
    resolve(cmd, "--s0", c, "s0", s0);
    resolve(cmd, "--length", c, "L", L);
    resolve(cmd, "--ns", c, "ns", ns);
    resolve(cmd, "--ntheta", c, "ntheta", ntheta);
    resolve(cmd, "--beta", c, "beta", beta);
    resolve(cmd, "--ldg-a", c, "A", A);
    resolve(cmd, "--ldg-b", c, "B", B);
    resolve(cmd, "--delta", c, "delta", delta);
    resolve(cmd, "--gtol", c, "gtol", gtol);
    resolve(cmd, "--max-iterations", c, "max_iterations", max_iterations);
    resolve(cmd, "--winding", c, "seed_winding", seed_winding);
    resolve(cmd, "--rho0", c, "rho0", rho0);

    const fs::path dir = prepare_out(c);
    ReducedConfig cfg;
    cfg.surface = make_surface(surface, phi0, R, s0, L);
    cfg.beta = beta;
    cfg.ldg = LdGParams::make(A, B, delta);
    cfg.gtol = gtol;
    cfg.max_iterations = max_iterations;

    PField field = PField::uniform(cfg.surface, ns, ntheta, Vec2(rho0, 0.0));
    if (seed_winding != 0) {
        for (int i = 0; i < field.ns; ++i)
            for (int j = 0; j < field.ntheta; ++j)
                field.at(i, j) = rho0 * Vec2(std::cos(seed_winding * field.theta(j)),
                                             std::sin(seed_winding * field.theta(j)));
    }
    const FlowReport report = gradient_flow_minimize(field, cfg);

    {
        auto csv = open_csv(dir / "field.csv");
        write_csv(field, csv);
    }
    {
        auto csv = open_csv(dir / "director.csv");
        csv << "s,theta,psi\n";
        for (int i = 0; i < field.ns; ++i)
            for (int j = 0; j < field.ntheta; ++j) {
                const Vec2& p = field.at(i, j);
                csv << field.s(i) << ',' << field.theta(j) << ','
                    << 0.5 * std::atan2(p[1], p[0]) << '\n';
            }
    }
    json rj{{"energy", report.energy},
            {"iterations", report.iterations},
            {"converged", report.converged},
            {"grad_sup_norm", report.grad_sup_norm}};
    try {
        rj["winding"] = winding_number(field, field.ns / 2);
    } catch (const UndefinedDegreeError&) {
        rj["winding"] = nullptr;
    }
    write_json(dir / "minimize_report.json", rj);
    write_schema(dir, "field", {"s", "theta", "p1", "p2"},
                 "minimizing tangential order parameter on the surface grid");
    write_schema(dir, "director", {"s", "theta", "psi"},
                 "director angle psi = atan2(p2, p1)/2 per node");
    write_json(dir / "resolved_config.json",
               json{{"command", "minimize"}, {"surface", surface}, {"phi0", phi0},
                    {"R", R}, {"s0", s0}, {"L", L}, {"ns", ns}, {"ntheta", ntheta},
                    {"beta", beta}, {"A", A}, {"B", B}, {"delta", delta},
                    {"gtol", gtol}, {"max_iterations", max_iterations},
                    {"seed_winding", seed_winding}, {"rho0", rho0},
                    {"seed", c.seed}});
    std::cout << rj.dump(2) << "\n";
    return report.converged ? 0 : 1;
}

int run_gamma_rate(CLI::App* cmd, Common& c, std::string surface, double phi0,
                   double R, double s0, double L, int ns, int ntheta, int nt,
                   double M2, double M3, double A, double B, double delta,
                   double alpha0, double gamma0, double beta, double p1,
                   double p2, std::vector<double> eps_list) {
    resolve(cmd, "--surface", c, "surface", surface);
    resolve(cmd, "--phi0", c, "phi0", phi0);
    resolve(cmd, "--radius", c, "R", R);
    resolve(cmd, "--s0", c, "s0", s0);
    resolve(cmd, "--length", c, "L", L);
    resolve(cmd, "--ns", c, "ns", ns);
    resolve(cmd, "--ntheta", c, "ntheta", ntheta);
    resolve(cmd, "--nt", c, "nt", nt);
    resolve(cmd, "--m2", c, "M2", M2);
    resolve(cmd, "--m3", c, "M3", M3);
    resolve(cmd, "--ldg-a", c, "A", A);
    resolve(cmd, "--ldg-b", c, "B", B);
    resolve(cmd, "--delta", c, "delta", delta);
    resolve(cmd, "--alpha0", c, "alpha0", alpha0);
    resolve(cmd, "--gamma0", c, "gamma0", gamma0);
    resolve(cmd, "--beta", c, "beta", beta);
    resolve(cmd, "--p1", c, "p1", p1);
    resolve(cmd, "--p2", c, "p2", p2);
    resolve(cmd, "--eps", c, "eps_list", eps_list);
    if (!ElasticConstants{M2, M3}.coercive())
        throw CLI::ValidationError("--m2/--m3", "outside coercive region");

    const fs::path dir = prepare_out(c);
    const SurfaceOfRevolution surf = make_surface(surface, phi0, R, s0, L);
    const PField p = PField::uniform(surf, ns, ntheta, Vec2(p1, p2));
    const SurfaceTensorField q0 = SurfaceTensorField::from_p_field(p, beta, surf);
    const ElasticConstants elastic{M2, M3};
    const LdGParams ldg = LdGParams::make(A, B, delta);
    const AnchoringParams anchoring =
        AnchoringParams::make(alpha0, 0.0, gamma0, 0.0, beta);

    const GammaRateResult result =
        gamma_rate(q0, elastic, ldg, anchoring, eps_list, nt);

    auto csv = open_csv(dir / "gamma_rate.csv");
    csv << "eps,F_eps,F0,gap\n";
    for (const GammaRateRow& r : result.rows)
        csv << r.eps << ',' << r.F_eps << ',' << r.F0 << ',' << r.gap << '\n';
    csv << "fitted_order," << result.fitted_order << ",,\n";
    write_schema(dir, "gamma_rate", {"eps", "F_eps", "F0", "gap"},
                 "per-thickness shell energy of the recovery field vs the limit "
                 "energy; final row holds the log-log fitted order");
    write_json(dir / "resolved_config.json",
               json{{"command", "gamma-rate"}, {"surface", surface}, {"phi0", phi0},
                    {"R", R}, {"s0", s0}, {"L", L}, {"ns", ns}, {"ntheta", ntheta},
                    {"nt", nt}, {"M2", M2}, {"M3", M3}, {"A", A}, {"B", B},
                    {"delta", delta}, {"alpha0", alpha0}, {"gamma0", gamma0},
                    {"beta", beta}, {"p1", p1}, {"p2", p2},
                    {"eps_list", eps_list}});
    std::cout << "fitted_order " << result.fitted_order << " monotone "
              << result.monotone << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Thin-film nematic energy toolkit"};
    app.require_subcommand(1);

    Common c;

    // remnant-check
    auto* rc = app.add_subcommand(
        "remnant-check", "Closed-form vs exact-solve agreement of the "
                         "normal-remnant minimization over random inputs");
    add_common(rc, c);
    int rc_cases = 1000;
    double rc_tol = 1e-8, rc_m2 = 0.0, rc_m3 = 0.0;
    rc->add_option("--cases", rc_cases, "Number of random cases");
    rc->add_option("--tolerance", rc_tol, "Maximum allowed gap");
    auto* rc_m2o = rc->add_option("--m2", rc_m2, "Fix the divergence constant ratio");
    auto* rc_m3o = rc->add_option("--m3", rc_m3, "Fix the mixed-gradient constant ratio");

    // frustum-sweep
    auto* fsw = app.add_subcommand(
        "frustum-sweep",
        "Sector minima of the cone energy over a range of cone angles; CSV "
        "columns: phi0,k,energy,el_residual,n_iters");
    add_common(fsw, c);
    double fs_min = 0.2, fs_max = 1.5, fs_step = 0.05, fs_rtol = 1e-8,
           fs_btol = 1e-3;
    std::vector<int> fs_k{0, -1, -2, -3};
    int fs_grid = 256, fs_multi = 5;
    fsw->add_option("--phi0-min", fs_min, "Smallest cone angle");
    fsw->add_option("--phi0-max", fs_max, "Largest cone angle");
    fsw->add_option("--phi0-step", fs_step, "Angle increment");
    fsw->add_option("--k", fs_k, "Winding sectors to minimize over");
    fsw->add_option("--grid-points", fs_grid, "Profile grid size");
    fsw->add_option("--multistarts", fs_multi, "Random restarts per sector");
    fsw->add_option("--residual-tol", fs_rtol, "Stationarity residual tolerance");
    fsw->add_option("--bisect-tol", fs_btol, "Critical-angle bisection tolerance");

    // minimize
    auto* mn = app.add_subcommand(
        "minimize", "2D gradient-flow minimization of the reduced surface "
                    "energy; CSV columns: s,theta,p1,p2 (+ director angles)");
    add_common(mn, c);
    std::string mn_surface = "frustum";
    double mn_phi0 = 0.5, mn_R = 1.0, mn_s0 = 1.0, mn_L = 1.0;
    int mn_ns = 33, mn_ntheta = 64, mn_winding = 0;
    double mn_beta = -0.5, mn_A = -1.0, mn_B = -1.0, mn_delta = 0.2,
           mn_gtol = 1e-5, mn_rho0 = 0.75;
    long mn_maxit = 50000;
    mn->add_option("--surface", mn_surface,
                   "frustum|cylinder|sphere-cap|plane-annulus");
    mn->add_option("--phi0", mn_phi0, "Cone angle (frustum)");
    mn->add_option("--radius", mn_R, "Radius (cylinder, sphere-cap)");
    mn->add_option("--s0", mn_s0, "Inner arclength coordinate");
    mn->add_option("--length", mn_L, "Meridian length");
    mn->add_option("--ns", mn_ns, "Meridian grid points");
    mn->add_option("--ntheta", mn_ntheta, "Azimuthal grid points");
    mn->add_option("--beta", mn_beta, "Normal eigenvalue of the order tensor");
    mn->add_option("--ldg-a", mn_A, "Bulk potential coefficient A");
    mn->add_option("--ldg-b", mn_B, "Bulk potential coefficient B");
    mn->add_option("--delta", mn_delta, "Bulk penalty scale");
    mn->add_option("--gtol", mn_gtol, "Gradient sup-norm stopping tolerance");
    mn->add_option("--max-iterations", mn_maxit, "Iteration cap");
    mn->add_option("--winding", mn_winding, "Winding of the seed field");
    mn->add_option("--rho0", mn_rho0, "Seed order-parameter magnitude");

    // gamma-rate
    auto* gr = app.add_subcommand(
        "gamma-rate", "Shell-energy convergence of the recovery field to the "
                      "limit energy; CSV columns: eps,F_eps,F0,gap");
    add_common(gr, c);
    std::string gr_surface = "cylinder";
    double gr_phi0 = 1.0, gr_R = 1.0, gr_s0 = 1.0, gr_L = 1.0;
    int gr_ns = 33, gr_ntheta = 64, gr_nt = 16;
    double gr_m2 = 0.0, gr_m3 = 0.0, gr_A = -1.0, gr_B = -1.0, gr_delta = 1.0,
           gr_alpha0 = 1.0, gr_gamma0 = 1.0, gr_beta = -1.0 / 3.0, gr_p1 = 0.3,
           gr_p2 = 0.1;
    std::vector<double> gr_eps{0.1, 0.05, 0.025, 0.0125};
    gr->add_option("--surface", gr_surface,
                   "frustum|cylinder|sphere-cap|plane-annulus");
    gr->add_option("--phi0", gr_phi0, "Cone angle (frustum)");
    gr->add_option("--radius", gr_R, "Radius (cylinder, sphere-cap)");
    gr->add_option("--s0", gr_s0, "Inner arclength coordinate");
    gr->add_option("--length", gr_L, "Meridian length");
    gr->add_option("--ns", gr_ns, "Meridian grid points");
    gr->add_option("--ntheta", gr_ntheta, "Azimuthal grid points");
    gr->add_option("--nt", gr_nt, "Thickness grid points");
    gr->add_option("--m2", gr_m2, "Divergence constant ratio");
    gr->add_option("--m3", gr_m3, "Mixed-gradient constant ratio");
    gr->add_option("--ldg-a", gr_A, "Bulk potential coefficient A");
    gr->add_option("--ldg-b", gr_B, "Bulk potential coefficient B");
    gr->add_option("--delta", gr_delta, "Bulk penalty scale");
    gr->add_option("--alpha0", gr_alpha0, "Leading normal anchoring weight");
    gr->add_option("--gamma0", gr_gamma0, "Leading tangential anchoring weight");
    gr->add_option("--beta", gr_beta, "Preferred normal eigenvalue");
    gr->add_option("--p1", gr_p1, "Base-field component p1");
    gr->add_option("--p2", gr_p2, "Base-field component p2");
    gr->add_option("--eps", gr_eps, "Decreasing list of half-thicknesses");

    // coercivity-map
    auto* cm = app.add_subcommand(
        "coercivity-map", "Smallest eigenvalue of the elastic form over a grid "
                          "of constant ratios; CSV columns: M2,M3,margin,coercive");
    add_common(cm, c);
    double cm_m2min = -1.0, cm_m2max = 3.0, cm_m3min = -1.5, cm_m3max = 2.5;
    int cm_n2 = 41, cm_n3 = 41;
    cm->add_option("--m2-min", cm_m2min, "Lower bound of M2");
    cm->add_option("--m2-max", cm_m2max, "Upper bound of M2");
    cm->add_option("--m3-min", cm_m3min, "Lower bound of M3");
    cm->add_option("--m3-max", cm_m3max, "Upper bound of M3");
    cm->add_option("--n2", cm_n2, "Grid points in M2");
    cm->add_option("--n3", cm_n3, "Grid points in M3");

    CLI11_PARSE(app, argc, argv);

    CLI::App* cmd = app.get_subcommands().front();
    try {
        load_config(cmd, c);
        if (cmd == rc)
            return run_remnant_check(rc, c, rc_cases, rc_tol, rc_m2, rc_m3,
                                     rc_m2o->count() > 0 || rc_m3o->count() > 0);
        if (cmd == fsw)
            return run_frustum_sweep(fsw, c, fs_min, fs_max, fs_step, fs_k,
                                     fs_grid, fs_multi, fs_rtol, fs_btol);
        if (cmd == mn)
            return run_minimize(mn, c, mn_surface, mn_phi0, mn_R, mn_s0, mn_L,
                                mn_ns, mn_ntheta, mn_beta, mn_A, mn_B, mn_delta,
                                mn_gtol, mn_maxit, mn_winding, mn_rho0);
        if (cmd == gr)
            return run_gamma_rate(gr, c, gr_surface, gr_phi0, gr_R, gr_s0, gr_L,
                                  gr_ns, gr_ntheta, gr_nt, gr_m2, gr_m3, gr_A,
                                  gr_B, gr_delta, gr_alpha0, gr_gamma0, gr_beta,
                                  gr_p1, gr_p2, gr_eps);
        if (cmd == cm)
            return run_coercivity_map(cm, c, cm_m2min, cm_m2max, cm_m3min,
                                      cm_m3max, cm_n2, cm_n3);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const FoldError& e) {
        std::cerr << "fold error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
