#include "nematicfilm/film3d.hpp"

#include <cmath>
#include <limits>

namespace nematicfilm {

double fold_threshold(const SurfaceOfRevolution& surf, int samples) {
    const double kmax = max_abs_curvature(surf, samples);
    if (kmax == 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / kmax;
}

ShellGrid ShellGrid::make(const SurfaceOfRevolution& surf, double eps, int ns,
                          int ntheta, int nt) {
    if (ns < 3 || ntheta < 4 || nt < 3)
        throw std::invalid_argument("ShellGrid: need ns >= 3, ntheta >= 4, nt >= 3");
    if (eps <= 0.0) throw std::invalid_argument("ShellGrid: eps must be positive");
    ShellGrid g;
    g.surface = surf;
    g.epsilon = eps;
    g.ns = ns;
    g.ntheta = ntheta;
    g.nt = nt;
    g.ds = surf.length / (ns - 1);
    g.dtheta = 2.0 * M_PI / ntheta;
    g.dt = 2.0 / (nt - 1);
    for (int i = 0; i < ns; ++i) {
        const CurvatureData c = curvatures(surf, g.s(i));
        for (double kappa : {c.kappa_T, c.kappa_N}) {
            if (1.0 - eps * std::abs(kappa) <= 0.0)
                throw FoldError("ShellGrid: normal map folds at eps = " +
                                std::to_string(eps));
        }
    }
    return g;
}

ShellField ShellField::zero(const ShellGrid& grid) {
    ShellField f;
    f.grid = grid;
    f.values.assign(grid.node_count(), QTensor());
    return f;
}

Mat3 phi_matrix(const SurfaceOfRevolution& surf, double s, double theta, double t,
                double eps) {
    const FramePoint f = frame_at(surf, s, theta);
    const CurvatureData c = curvatures(surf, s);
    const double dT = 1.0 - eps * t * c.kappa_T;
    const double dN = 1.0 - eps * t * c.kappa_N;
    if (dT <= 0.0 || dN <= 0.0)
        throw FoldError("phi_matrix: normal map folds at this node");
    return f.T * f.T.transpose() / dT + f.N * f.N.transpose() / dN +
           f.nu * f.nu.transpose();
}

namespace {

// Second-order one-sided / centered difference of shell values along one
// index. `get` maps an offset along that index to the tensor value.
template <typename Getter>
Mat3 difference(const Getter& get, int pos, int n, double h) {
    if (pos == 0)
        return (-3.0 * get(0) + 4.0 * get(1) - get(2)) / (2.0 * h);
    if (pos == n - 1)
        return (3.0 * get(0) - 4.0 * get(-1) + get(-2)) / (2.0 * h);
    return (get(1) - get(-1)) / (2.0 * h);
}

}  // namespace

GradQ full_gradient(const ShellField& field, int i, int j, int k) {
    const ShellGrid& g = field.grid;
    const Mat3 Qs = difference(
        [&](int o) { return field.at(i + o, j, k).matrix(); }, i, g.ns, g.ds);
    const Mat3 Qth = (field.at(i, (j + 1) % g.ntheta, k).matrix() -
                      field.at(i, (j + g.ntheta - 1) % g.ntheta, k).matrix()) /
                     (2.0 * g.dtheta);
    const Mat3 Qt = difference(
        [&](int o) { return field.at(i, j, k + o).matrix(); }, k, g.nt, g.dt);

    const double s = g.s(i);
    const FramePoint f = frame_at(g.surface, s, g.theta(j));
    const CurvatureData c = curvatures(g.surface, s);
    const double t = g.t(k);
    const double dT = 1.0 - g.epsilon * t * c.kappa_T;
    const double dN = 1.0 - g.epsilon * t * c.kappa_N;
    if (dT <= 0.0 || dN <= 0.0)
        throw FoldError("full_gradient: normal map folds at this node");

    // Gradient of each scalar component: Phi * (f_s T + f_theta/a1 N + f_t/eps nu),
    // with Phi diagonal on the frame.
    const Vec3 wT = f.T / dT;
    const Vec3 wN = f.N / (dN * g.surface.a1(s));
    const Vec3 wnu = f.nu / g.epsilon;
    std::array<Mat3, 3> d;
    for (int dir = 0; dir < 3; ++dir)
        d[dir] = Qs * wT[dir] + Qth * wN[dir] + Qt * wnu[dir];
    return GradQ::from_components(d, 1e-6);
}

double F_eps(const ShellField& field, const ElasticConstants& elastic,
             const LdGParams& ldg, const AnchoringParams& anchoring) {
    const ShellGrid& g = field.grid;
    const double inv_d2 = 1.0 / (ldg.delta * ldg.delta);
    double volume = 0.0;
    double faces = 0.0;
    for (int i = 0; i < g.ns; ++i) {
        const double ws = (i == 0 || i == g.ns - 1) ? 0.5 : 1.0;
        const double s = g.s(i);
        const double a1 = g.surface.a1(s);
        const CurvatureData c = curvatures(g.surface, s);
        for (int j = 0; j < g.ntheta; ++j) {
            const FramePoint f = frame_at(g.surface, s, g.theta(j));
            for (int k = 0; k < g.nt; ++k) {
                const double wt = (k == 0 || k == g.nt - 1) ? 0.5 : 1.0;
                const double t = g.t(k);
                const double jac =
                    (1.0 - g.epsilon * t * c.kappa_T) *
                    (1.0 - g.epsilon * t * c.kappa_N) * a1;
                const GradQ grad = full_gradient(field, i, j, k);
                const double density =
                    f_e(grad, elastic) + inv_d2 * f_ldg(field.at(i, j, k), ldg);
                volume += ws * wt * density * jac * g.ds * g.dtheta * g.dt;
            }
            for (int face : {0, g.nt - 1}) {
                const double t = g.t(face);
                const double jac = (1.0 - g.epsilon * t * c.kappa_T) *
                                   (1.0 - g.epsilon * t * c.kappa_N) * a1;
                const auto [fs0, fs1] =
                    f_s_split(field.at(i, j, face), f.nu, anchoring);
                faces += ws * (fs0 + g.epsilon * fs1) / g.epsilon * jac * g.ds *
                         g.dtheta;
            }
        }
    }
    return volume + faces;
}

SurfaceTensorField SurfaceTensorField::from_p_field(const PField& p, double beta,
                                                    const SurfaceOfRevolution& surf) {
    SurfaceTensorField f;
    f.surface = surf;
    f.ns = p.ns;
    f.ntheta = p.ntheta;
    f.ds = p.ds;
    f.dtheta = p.dtheta;
    f.values.reserve(static_cast<size_t>(p.ns) * p.ntheta);
    for (int i = 0; i < p.ns; ++i) {
        for (int j = 0; j < p.ntheta; ++j) {
            const FramePoint fr = frame_at(surf, p.s(i), p.theta(j));
            PRepresentation rep;
            rep.p = p.at(i, j);
            rep.beta = beta;
            rep.frame = {fr.T, fr.N, fr.nu};
            f.values.push_back(assemble_from_p(rep));
        }
    }
    return f;
}

GradQ surface_gradient(const SurfaceTensorField& field, int i, int j) {
    const Mat3 Qs = difference(
        [&](int o) { return field.at(i + o, j).matrix(); }, i, field.ns, field.ds);
    const int n = field.ntheta;
    const Mat3 Qth = (field.at(i, (j + 1) % n).matrix() -
                      field.at(i, (j + n - 1) % n).matrix()) /
                     (2.0 * field.dtheta);
    const FramePoint f = frame_at(field.surface, field.s(i), field.theta(j));
    const double a1 = field.surface.a1(field.s(i));
    std::array<Mat3, 3> d;
    for (int dir = 0; dir < 3; ++dir)
        d[dir] = Qs * f.T[dir] + Qth * (f.N[dir] / a1);
    return GradQ::from_components(d, 1e-6);
}

ShellField build_recovery(const SurfaceTensorField& q0,
                          const ElasticConstants& elastic,
                          const AnchoringParams& anchoring, double eps, int nt) {
    const ShellGrid grid =
        ShellGrid::make(q0.surface, eps, q0.ns, q0.ntheta, nt);
    ShellField field = ShellField::zero(grid);
    for (int i = 0; i < q0.ns; ++i) {
        for (int j = 0; j < q0.ntheta; ++j) {
            const FramePoint f = frame_at(q0.surface, q0.s(i), q0.theta(j));
            const auto [fs0, fs1] = f_s_split(q0.at(i, j), f.nu, anchoring);
            if (fs0 > 1e-10)
                throw AdmissibilityError(
                    "build_recovery: leading anchoring term of the base field "
                    "does not vanish");
            const RemnantInput in =
                RemnantInput::make(surface_gradient(q0, i, j), f.nu, elastic);
            const QTensor G = closed_form_G(in);
            for (int k = 0; k < nt; ++k)
                field.at(i, j, k) = q0.at(i, j) + (eps * grid.t(k)) * G;
        }
    }
    return field;
}

double F0_surface(const SurfaceTensorField& q0, const ElasticConstants& elastic,
                  const LdGParams& ldg, const AnchoringParams& anchoring) {
    const double inv_d2 = 1.0 / (ldg.delta * ldg.delta);
    double total = 0.0;
    for (int i = 0; i < q0.ns; ++i) {
        const double ws = (i == 0 || i == q0.ns - 1) ? 0.5 : 1.0;
        const double a1 = q0.surface.a1(q0.s(i));
        for (int j = 0; j < q0.ntheta; ++j) {
            const FramePoint f = frame_at(q0.surface, q0.s(i), q0.theta(j));
            const RemnantInput in =
                RemnantInput::make(surface_gradient(q0, i, j), f.nu, elastic);
            const auto [fs0, fs1] = f_s_split(q0.at(i, j), f.nu, anchoring);
            (void)fs0;
            const double density =
                f_e0(in) + inv_d2 * f_ldg(q0.at(i, j), ldg) + fs1;
            total += ws * density * a1 * q0.ds * q0.dtheta;
        }
    }
    return 2.0 * total;
}

GammaRateResult gamma_rate(const SurfaceTensorField& q0,
                           const ElasticConstants& elastic, const LdGParams& ldg,
                           const AnchoringParams& anchoring,
                           const std::vector<double>& eps_list, int nt) {
    if (eps_list.empty())
        throw std::invalid_argument("gamma_rate: eps list must be nonempty");
    for (size_t i = 0; i + 1 < eps_list.size(); ++i) {
        if (eps_list[i + 1] >= eps_list[i])
            throw std::invalid_argument("gamma_rate: eps list must decrease");
    }
    const double bound = fold_threshold(q0.surface);
    const double F0 = F0_surface(q0, elastic, ldg, anchoring);
    GammaRateResult result;
    for (double eps : eps_list) {
        if (eps <= 0.0 || eps >= bound)
            throw FoldError("gamma_rate: eps outside the fold bound");
        const ShellField rec = build_recovery(q0, elastic, anchoring, eps, nt);
        const double F = F_eps(rec, elastic, ldg, anchoring);
        result.rows.push_back({eps, F, F0, std::abs(F - F0)});
    }
    result.monotone = true;
    for (size_t i = 0; i + 1 < result.rows.size(); ++i)
        if (result.rows[i + 1].gap >= result.rows[i].gap) result.monotone = false;
    // Log-log least squares for the order, skipping gaps at the rounding floor.
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int n = 0;
    for (const GammaRateRow& r : result.rows) {
        if (r.gap <= 1e-14 * (std::abs(F0) + 1.0)) continue;
        const double x = std::log(r.eps), y = std::log(r.gap);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
        ++n;
    }
    if (n >= 2) result.fitted_order = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return result;
}

}  // namespace nematicfilm
