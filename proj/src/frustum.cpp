#include "nematicfilm/frustum.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <random>

namespace nematicfilm {

FrustumGeometry FrustumGeometry::make(double phi0, double s0, double L) {
    if (phi0 <= 0.0 || phi0 > M_PI / 2.0)
        throw std::invalid_argument("FrustumGeometry: phi0 must lie in (0, pi/2]");
    if (s0 <= 0.0 || L <= 0.0)
        throw std::invalid_argument("FrustumGeometry: s0 and L must be positive");
    return {phi0, s0, L};
}

double FrustumGeometry::profile_prefactor() const {
    return std::log((s0 + L) / s0) / std::cos(phi0);
}

PsiProfile PsiProfile::linear(int k, int n_points) {
    if (n_points < 64)
        throw std::invalid_argument("PsiProfile: need at least 64 grid points");
    PsiProfile p;
    p.k = k;
    p.u.assign(n_points, 0.0);
    return p;
}

namespace {

// Forward-difference psi' at j; the winding jump is carried by the k theta/2
// part, so in terms of u the derivative wraps periodically.
double psi_prime(const PsiProfile& p, int j) {
    const int n = p.size();
    const double du = p.u[(j + 1) % n] - p.u[j];
    return 0.5 * p.k + du / p.dtheta();
}

double sin_sq(double x) { return std::sin(x) * std::sin(x); }

}  // namespace

double e0_energy(const PsiProfile& psi, const FrustumGeometry& geom) {
    const int n = psi.size();
    const double dt = psi.dtheta();
    const double ssq = sin_sq(geom.phi0);
    double integral = 0.0;
    for (int j = 0; j < n; ++j) {
        const double d = psi_prime(psi, j);
        integral += dt * (4.0 * d * d - ssq * std::cos(2.0 * psi.psi(j)));
    }
    return 8.0 * M_PI * psi.k * std::cos(geom.phi0) + integral;
}

double e0_energy_direct(const PsiProfile& psi, const FrustumGeometry& geom) {
    const int n = psi.size();
    const double dt = psi.dtheta();
    const double ssq = sin_sq(geom.phi0);
    double integral = 0.0;
    for (int j = 0; j < n; ++j) {
        const double d = psi_prime(psi, j);
        integral += dt * (4.0 * d * d + 8.0 * std::cos(geom.phi0) * d -
                          ssq * std::cos(2.0 * psi.psi(j)));
    }
    return integral;
}

double el_residual(const PsiProfile& psi, const FrustumGeometry& geom) {
    const int n = psi.size();
    const double dt = psi.dtheta();
    const double quarter_ssq = 0.25 * sin_sq(geom.phi0);
    double sup = 0.0;
    for (int j = 0; j < n; ++j) {
        // The linear winding part has zero second difference.
        const double upp = (psi.u[(j + 1) % n] - 2.0 * psi.u[j] +
                            psi.u[(j + n - 1) % n]) /
                           (dt * dt);
        sup = std::max(sup,
                       std::abs(upp - quarter_ssq * std::sin(2.0 * psi.psi(j))));
    }
    return sup;
}

namespace {

// Gradient of the discrete sector energy with respect to u, divided by the
// quadrature weight dtheta: exactly the discrete Euler-Lagrange operator
// -8 psi'' + 2 sin^2(phi0) sin(2 psi).
std::vector<double> el_gradient(const PsiProfile& p, const FrustumGeometry& geom) {
    const int n = p.size();
    const double dt = p.dtheta();
    const double ssq = sin_sq(geom.phi0);
    std::vector<double> g(n);
    for (int j = 0; j < n; ++j) {
        const double upp =
            (p.u[(j + 1) % n] - 2.0 * p.u[j] + p.u[(j + n - 1) % n]) / (dt * dt);
        g[j] = -8.0 * upp + 2.0 * ssq * std::sin(2.0 * p.psi(j));
    }
    return g;
}

struct DescentOutcome {
    double energy = 0.0;
    long iterations = 0;
};

DescentOutcome descend(PsiProfile& p, const FrustumGeometry& geom,
                       const SectorOptions& opt) {
    const int n = p.size();
    const double dt = p.dtheta();
    double energy = e0_energy(p, geom);
    std::vector<double> grad = el_gradient(p, geom);
    std::vector<double> prev_u, prev_g;
    double step = 1e-3;
    DescentOutcome out;

    auto sup = [](const std::vector<double>& v) {
        double m = 0.0;
        for (double x : v) m = std::max(m, std::abs(x));
        return m;
    };

    // Coarse phase: Barzilai-Borwein descent with Armijo backtracking.
    for (; out.iterations < opt.max_descent_iterations; ++out.iterations) {
        if (sup(grad) <= std::max(opt.residual_tol, 1e-4)) break;
        if (!prev_u.empty()) {
            double sy = 0.0, ss = 0.0;
            for (int j = 0; j < n; ++j) {
                const double du = p.u[j] - prev_u[j];
                ss += du * du;
                sy += du * (grad[j] - prev_g[j]);
            }
            if (sy > 1e-300) step = std::min(ss / sy, 1e3);
        }
        prev_u = p.u;
        prev_g = grad;
        double gsq = 0.0;
        for (double g : grad) gsq += g * g * dt;
        bool accepted = false;
        for (int bt = 0; bt < 60; ++bt) {
            for (int j = 0; j < n; ++j) p.u[j] = prev_u[j] - step * grad[j];
            const double trial = e0_energy(p, geom);
            if (trial <= energy - 1e-4 * step * gsq) {
                energy = trial;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            p.u = prev_u;
            break;
        }
        grad = el_gradient(p, geom);
    }

    // Newton polish on the Euler-Lagrange system; reverts if a step fails to
    // reduce the residual (the descent may have stopped at a rounding floor).
    const double ssq = sin_sq(geom.phi0);
    for (int it = 0; it < 50; ++it) {
        grad = el_gradient(p, geom);
        const double res = sup(grad);
        if (res <= opt.residual_tol) break;
        Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
        for (int j = 0; j < n; ++j) {
            const double c = 8.0 / (dt * dt);
            jac(j, j) = 2.0 * c + 4.0 * ssq * std::cos(2.0 * p.psi(j));
            jac(j, (j + 1) % n) -= c;
            jac(j, (j + n - 1) % n) -= c;
        }
        const Eigen::VectorXd rhs = -Eigen::Map<Eigen::VectorXd>(grad.data(), n);
        const Eigen::VectorXd du = jac.partialPivLu().solve(rhs);
        std::vector<double> saved = p.u;
        for (int j = 0; j < n; ++j) p.u[j] += du[j];
        if (sup(el_gradient(p, geom)) >= res) {
            p.u = saved;
            break;
        }
        ++out.iterations;
    }
    out.energy = e0_energy(p, geom);
    return out;
}

}  // namespace

SectorResult minimize_in_sector(int k, const FrustumGeometry& geom,
                                const SectorOptions& opt) {
    std::mt19937_64 rng(opt.seed);
    std::normal_distribution<double> amp(0.0, 0.4);
    SectorResult best;
    bool have_best = false;
    for (int start = 0; start < std::max(1, opt.multistarts); ++start) {
        PsiProfile p = PsiProfile::linear(k, opt.grid_points);
        if (start > 0) {
            // Smooth low-frequency perturbation; descent cannot leave D_k.
            double a[3], b[3];
            for (int m = 0; m < 3; ++m) {
                a[m] = amp(rng);
                b[m] = amp(rng);
            }
            for (int j = 0; j < p.size(); ++j) {
                for (int m = 0; m < 3; ++m)
                    p.u[j] += a[m] * std::cos((m + 1) * p.theta(j)) +
                              b[m] * std::sin((m + 1) * p.theta(j));
            }
        }
        const DescentOutcome out = descend(p, geom, opt);
        if (!have_best || out.energy < best.energy) {
            best.profile = p;
            best.energy = out.energy;
            best.iterations = out.iterations;
            best.el_residual = el_residual(p, geom);
            best.converged = best.el_residual <= opt.residual_tol;
            have_best = true;
        }
    }
    // The linear profile bounds the sector minimum from above.
    const double linear_value = e0_energy(PsiProfile::linear(k, opt.grid_points), geom);
    if (best.energy > linear_value) {
        best.profile = PsiProfile::linear(k, opt.grid_points);
        best.energy = linear_value;
        best.el_residual = el_residual(best.profile, geom);
        best.converged = best.el_residual <= opt.residual_tol;
    }
    return best;
}

std::vector<SectorRow> sector_compare(const FrustumGeometry& geom,
                                      const std::vector<int>& k_list,
                                      const SectorOptions& options) {
    if (k_list.empty())
        throw std::invalid_argument("sector_compare: k list must be nonempty");
    std::vector<SectorRow> rows;
    rows.reserve(k_list.size());
    for (int k : k_list) {
        const SectorResult r = minimize_in_sector(k, geom, options);
        rows.push_back({k, r.energy, r.el_residual, r.iterations, r.converged});
    }
    return rows;
}

double critical_angle(const FrustumGeometry& geom_template, double phi_lo,
                      double phi_hi, double tol, const SectorOptions& options) {
    auto gap = [&](double phi0) {
        const FrustumGeometry g =
            FrustumGeometry::make(phi0, geom_template.s0, geom_template.L);
        return minimize_in_sector(-1, g, options).energy -
               minimize_in_sector(0, g, options).energy;
    };
    double flo = gap(phi_lo), fhi = gap(phi_hi);
    if (flo * fhi >= 0.0)
        throw BracketingError("critical_angle: no sign change in bracket");
    while (phi_hi - phi_lo > tol) {
        const double mid = 0.5 * (phi_lo + phi_hi);
        const double fmid = gap(mid);
        if (flo * fmid <= 0.0) {
            phi_hi = mid;
            fhi = fmid;
        } else {
            phi_lo = mid;
            flo = fmid;
        }
    }
    return 0.5 * (phi_lo + phi_hi);
}

}  // namespace nematicfilm
