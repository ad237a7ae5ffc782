#include "nematicfilm/reduced.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace nematicfilm {

PField PField::uniform(const SurfaceOfRevolution& surf, int ns, int ntheta,
                       const Vec2& p) {
    if (ns < 4 || ntheta < 4)
        throw std::invalid_argument("PField: grid must be at least 4x4");
    PField f;
    f.ns = ns;
    f.ntheta = ntheta;
    f.s0 = surf.s0;
    f.ds = surf.length / (ns - 1);
    f.dtheta = 2.0 * M_PI / ntheta;
    f.values.assign(static_cast<size_t>(ns) * ntheta, p);
    return f;
}

Vec2 PField::d_ds(int i, int j) const {
    const double inv2 = 1.0 / (2.0 * ds);
    if (i == 0)
        return (-3.0 * at(0, j) + 4.0 * at(1, j) - at(2, j)) * inv2;
    if (i == ns - 1)
        return (3.0 * at(ns - 1, j) - 4.0 * at(ns - 2, j) + at(ns - 3, j)) * inv2;
    return (at(i + 1, j) - at(i - 1, j)) * inv2;
}

Vec2 PField::d_dtheta(int i, int j) const {
    const int jp = (j + 1) % ntheta;
    const int jm = (j + ntheta - 1) % ntheta;
    return (at(i, jp) - at(i, jm)) / (2.0 * dtheta);
}

double density_sr10(const Vec2& p, const Vec2& p_s, const Vec2& p_theta, double s,
                    const SurfaceOfRevolution& surf, double beta) {
    const double a1 = surf.a1(s);
    const CurvatureData c = curvatures(surf, s);
    const double inv_a1sq = 1.0 / (a1 * a1);
    const double cross = 4.0 * std::cos(surf.phi(s)) * inv_a1sq;
    const double bulk = 4.0 * inv_a1sq - 3.0 * c.kappa_N * c.kappa_N +
                        c.kappa_T * c.kappa_T;
    return p_s.squaredNorm() + inv_a1sq * p_theta.squaredNorm() +
           cross * (p[0] * p_theta[1] - p[1] * p_theta[0]) +
           bulk * p.squaredNorm() +
           3.0 * beta * p[0] * (c.kappa_N * c.kappa_N - c.kappa_T * c.kappa_T);
}

double geometric_offset(double s, const SurfaceOfRevolution& surf, double beta) {
    const CurvatureData c = curvatures(surf, s);
    return 2.25 * beta * beta *
           (c.kappa_T * c.kappa_T + c.kappa_N * c.kappa_N);
}

double f_ldg_p(double rho_sq, double beta, const LdGParams& ldg) {
    const double tr2 = 2.0 * rho_sq + 1.5 * beta * beta;
    const double tr3 = -3.0 * rho_sq * beta + 0.75 * beta * beta * beta;
    return 2.0 * ldg.A * tr2 + 4.0 / 3.0 * ldg.B * tr3 + tr2 * tr2 + ldg.offset;
}

namespace {

double anchoring1_density(const ReducedConfig& cfg) {
    // In the p-representation nu is an eigenvector with eigenvalue beta, so
    // the tangential anchoring term vanishes identically and the normal term
    // is a p-independent constant.
    const double d = cfg.beta - cfg.anchoring_beta;
    return 2.0 * cfg.alpha1 * d * d;
}

/// Quadrature weight of node (i, j) excluding the area element a1.
double node_weight(const PField& f, int i) {
    const double w = (i == 0 || i == f.ns - 1) ? 0.5 : 1.0;
    return w * f.ds * f.dtheta;
}

}  // namespace

double total_energy(const PField& field, const ReducedConfig& cfg) {
    const double inv_delta_sq = 1.0 / (cfg.ldg.delta * cfg.ldg.delta);
    const double anch = anchoring1_density(cfg);
    double energy = 0.0;
    for (int i = 0; i < field.ns; ++i) {
        const double s = field.s(i);
        const double wa = node_weight(field, i) * cfg.surface.a1(s);
        for (int j = 0; j < field.ntheta; ++j) {
            const Vec2& p = field.at(i, j);
            const double density =
                density_sr10(p, field.d_ds(i, j), field.d_dtheta(i, j), s,
                             cfg.surface, cfg.beta) +
                inv_delta_sq * f_ldg_p(p.squaredNorm(), cfg.beta, cfg.ldg) + anch;
            energy += wa * density;
        }
    }
    return energy;
}

std::vector<Vec2> energy_gradient(const PField& field, const ReducedConfig& cfg) {
    const int ns = field.ns, nt = field.ntheta;
    const double inv_delta_sq = 1.0 / (cfg.ldg.delta * cfg.ldg.delta);
    std::vector<Vec2> grad(field.values.size(), Vec2::Zero());

    // Per-node quadrature-weighted partials with respect to p, p_s, p_theta.
    std::vector<Vec2> gp(field.values.size()), gps(field.values.size()),
        gpt(field.values.size());
    for (int i = 0; i < ns; ++i) {
        const double s = field.s(i);
        const double a1 = cfg.surface.a1(s);
        const CurvatureData c = curvatures(cfg.surface, s);
        const double inv_a1sq = 1.0 / (a1 * a1);
        const double cross = 4.0 * std::cos(cfg.surface.phi(s)) * inv_a1sq;
        const double bulk = 4.0 * inv_a1sq - 3.0 * c.kappa_N * c.kappa_N +
                            c.kappa_T * c.kappa_T;
        const double lin = 3.0 * cfg.beta *
                           (c.kappa_N * c.kappa_N - c.kappa_T * c.kappa_T);
        const double wa = node_weight(field, i) * a1;
        for (int j = 0; j < nt; ++j) {
            const size_t idx = static_cast<size_t>(i) * nt + j;
            const Vec2& p = field.at(i, j);
            const Vec2 ps = field.d_ds(i, j);
            const Vec2 pt = field.d_dtheta(i, j);
            const double tr2 = 2.0 * p.squaredNorm() + 1.5 * cfg.beta * cfg.beta;
            const double dldg_drho2 =
                4.0 * cfg.ldg.A - 4.0 * cfg.ldg.B * cfg.beta + 4.0 * tr2;
            Vec2 dp;
            dp[0] = cross * pt[1] + 2.0 * bulk * p[0] + lin +
                    inv_delta_sq * dldg_drho2 * 2.0 * p[0];
            dp[1] = -cross * pt[0] + 2.0 * bulk * p[1] +
                    inv_delta_sq * dldg_drho2 * 2.0 * p[1];
            gp[idx] = wa * dp;
            gps[idx] = wa * 2.0 * ps;
            gpt[idx] = wa * Vec2(2.0 * inv_a1sq * pt[0] - cross * p[1],
                                 2.0 * inv_a1sq * pt[1] + cross * p[0]);
        }
    }

    // Direct term plus the transposes of the discrete derivative operators.
    for (size_t idx = 0; idx < grad.size(); ++idx) grad[idx] = gp[idx];
    const double inv2s = 1.0 / (2.0 * field.ds);
    const double inv2t = 1.0 / (2.0 * field.dtheta);
    auto scatter_s = [&](int i, int j, int target, double coeff) {
        grad[static_cast<size_t>(target) * nt + j] +=
            coeff * gps[static_cast<size_t>(i) * nt + j];
    };
    for (int j = 0; j < nt; ++j) {
        scatter_s(0, j, 0, -3.0 * inv2s);
        scatter_s(0, j, 1, 4.0 * inv2s);
        scatter_s(0, j, 2, -1.0 * inv2s);
        scatter_s(ns - 1, j, ns - 1, 3.0 * inv2s);
        scatter_s(ns - 1, j, ns - 2, -4.0 * inv2s);
        scatter_s(ns - 1, j, ns - 3, 1.0 * inv2s);
        for (int i = 1; i < ns - 1; ++i) {
            scatter_s(i, j, i + 1, inv2s);
            scatter_s(i, j, i - 1, -inv2s);
        }
    }
    for (int i = 0; i < ns; ++i) {
        for (int j = 0; j < nt; ++j) {
            const int jp = (j + 1) % nt;
            const int jm = (j + nt - 1) % nt;
            grad[static_cast<size_t>(i) * nt + jp] +=
                inv2t * gpt[static_cast<size_t>(i) * nt + j];
            grad[static_cast<size_t>(i) * nt + jm] -=
                inv2t * gpt[static_cast<size_t>(i) * nt + j];
        }
    }

    // Normalize by the quadrature weight so the result approximates the
    // continuous variational derivative; hold fixed edges in place.
    for (int i = 0; i < ns; ++i) {
        const double wa = node_weight(field, i) * cfg.surface.a1(field.s(i));
        const bool fixed = (i == 0 && field.lower_edge == EdgeCondition::Fixed) ||
                           (i == ns - 1 && field.upper_edge == EdgeCondition::Fixed);
        for (int j = 0; j < nt; ++j) {
            auto& g = grad[static_cast<size_t>(i) * nt + j];
            g = fixed ? Vec2::Zero().eval() : (g / wa).eval();
        }
    }
    return grad;
}

FlowReport gradient_flow_minimize(PField& field, const ReducedConfig& cfg) {
    FlowReport report;
    const size_t n = field.values.size();
    std::vector<Vec2> grad = energy_gradient(field, cfg);
    double energy = total_energy(field, cfg);
    double step = cfg.initial_step;
    std::vector<Vec2> prev_values, prev_grad;

    auto sup_norm = [](const std::vector<Vec2>& v) {
        double m = 0.0;
        for (const auto& x : v) m = std::max(m, x.norm());
        return m;
    };
    auto dot = [n](const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
        double d = 0.0;
        for (size_t k = 0; k < n; ++k) d += a[k].dot(b[k]);
        return d;
    };

    for (report.iterations = 0; report.iterations < cfg.max_iterations;
         ++report.iterations) {
        report.grad_sup_norm = sup_norm(grad);
        if (report.grad_sup_norm <= cfg.gtol) {
            report.converged = true;
            break;
        }
        // Barzilai-Borwein step with an Armijo backtracking safeguard.
        if (!prev_values.empty()) {
            double sy = 0.0, ss = 0.0;
            for (size_t k = 0; k < n; ++k) {
                const Vec2 dp = field.values[k] - prev_values[k];
                const Vec2 dg = grad[k] - prev_grad[k];
                sy += dp.dot(dg);
                ss += dp.squaredNorm();
            }
            if (sy > 1e-300) step = std::min(ss / sy, 1e6);
        }
        prev_values = field.values;
        prev_grad = grad;

        const double gsq = dot(grad, grad);
        bool accepted = false;
        for (int bt = 0; bt < 60; ++bt) {
            for (size_t k = 0; k < n; ++k)
                field.values[k] = prev_values[k] - step * grad[k];
            const double trial = total_energy(field, cfg);
            if (trial <= energy - 1e-4 * step * gsq) {
                energy = trial;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            field.values = prev_values;  // line search stalled at rounding level
            break;
        }
        grad = energy_gradient(field, cfg);
    }
    report.energy = energy;
    report.grad_sup_norm = sup_norm(energy_gradient(field, cfg));
    report.converged = report.converged || report.grad_sup_norm <= cfg.gtol;
    return report;
}

int winding_number(const PField& field, int s_index, double wtol) {
    if (s_index < 0 || s_index >= field.ns)
        throw std::out_of_range("winding_number: s row out of range");
    double total = 0.0;
    for (int j = 0; j < field.ntheta; ++j) {
        const Vec2& a = field.at(s_index, j);
        const Vec2& b = field.at(s_index, (j + 1) % field.ntheta);
        if (a.norm() <= wtol || b.norm() <= wtol)
            throw UndefinedDegreeError(
                "winding_number: |p| below tolerance on the circle");
        total += std::atan2(a[0] * b[1] - a[1] * b[0], a.dot(b));
    }
    return static_cast<int>(std::lround(total / (2.0 * M_PI)));
}

void write_csv(const PField& field, std::ostream& out) {
    out << "s,theta,p1,p2\n";
    out.precision(17);
    for (int i = 0; i < field.ns; ++i)
        for (int j = 0; j < field.ntheta; ++j)
            out << field.s(i) << ',' << field.theta(j) << ',' << field.at(i, j)[0]
                << ',' << field.at(i, j)[1] << '\n';
}

PField read_csv(std::istream& in, const SurfaceOfRevolution& surf) {
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("read_csv: empty input");
    std::vector<std::array<double, 4>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::array<double, 4> row{};
        char comma;
        if (!(ss >> row[0] >> comma >> row[1] >> comma >> row[2] >> comma >> row[3]))
            throw std::runtime_error("read_csv: malformed row: " + line);
        rows.push_back(row);
    }
    // Count distinct theta values in the first s block.
    int ntheta = 0;
    for (const auto& r : rows) {
        if (std::abs(r[0] - rows[0][0]) > 1e-12) break;
        ++ntheta;
    }
    if (ntheta == 0 || rows.size() % ntheta != 0)
        throw std::runtime_error("read_csv: grid is not rectangular");
    const int ns = static_cast<int>(rows.size()) / ntheta;
    PField f = PField::uniform(surf, ns, ntheta);
    for (int i = 0; i < ns; ++i)
        for (int j = 0; j < ntheta; ++j) {
            const auto& r = rows[static_cast<size_t>(i) * ntheta + j];
            f.at(i, j) = Vec2(r[2], r[3]);
        }
    return f;
}

}  // namespace nematicfilm
