#include "nematicfilm/elastic.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace nematicfilm {

double f_e(const GradQ& g, const ElasticConstants& c) {
    // (1/2)(Q_ij,k Q_ij,k + M2 Q_ij,j Q_ik,k + M3 Q_ik,j Q_ij,k)
    double t1 = g.squared_norm();
    double t2 = g.divergence().squaredNorm();
    double t3 = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) t3 += g(i, k, j) * g(i, j, k);
    return 0.5 * (t1 + c.M2 * t2 + c.M3 * t3);
}

double uniaxial_potential(double S, double A, double B) {
    return 4.0 * A * S * S / 3.0 + 8.0 * B * S * S * S / 27.0 +
           4.0 * S * S * S * S / 9.0;
}

LdGParams LdGParams::make(double A, double B, double delta) {
    if (delta <= 0.0) throw std::invalid_argument("LdGParams: delta must be positive");
    LdGParams p;
    p.A = A;
    p.B = B;
    p.delta = delta;
    // Stationary values of the restricted potential: S = 0 and the roots of
    // 2S^2 + BS + 3A = 0.
    double fmin = 0.0;
    const double disc = B * B - 24.0 * A;
    if (disc >= 0.0) {
        const double r = std::sqrt(disc);
        for (double S : {(-B + r) / 4.0, (-B - r) / 4.0})
            fmin = std::min(fmin, uniaxial_potential(S, A, B));
    }
    p.offset = -fmin;
    return p;
}

double f_ldg(const QTensor& q, const LdGParams& p) {
    const double tr2 = q.trace_sq();
    const double tr3 = q.trace_cube();
    return 2.0 * p.A * tr2 + 4.0 / 3.0 * p.B * tr3 + tr2 * tr2 + p.offset;
}

double uniaxial_stationary_S(const LdGParams& p) {
    const double disc = p.B * p.B - 24.0 * p.A;
    if (disc < 0.0)
        throw NoNematicMinimumError("uniaxial_stationary_S: B^2 - 24A < 0");
    const double r = std::sqrt(disc);
    const double s_plus = (-p.B + r) / 4.0;
    const double s_minus = (-p.B - r) / 4.0;
    // Return the stationary point with the lower potential value, preferring
    // s_plus on ties.
    if (uniaxial_potential(s_minus, p.A, p.B) <
        uniaxial_potential(s_plus, p.A, p.B) - 0.0)
        return s_minus;
    return s_plus;
}

AnchoringParams AnchoringParams::make(double alpha0, double alpha1, double gamma0,
                                      double gamma1, double beta) {
    if (alpha0 < 0.0 || alpha1 < 0.0 || gamma0 < 0.0 || gamma1 < 0.0)
        throw std::invalid_argument("AnchoringParams: weights must be nonnegative");
    if (alpha0 * alpha1 != 0.0 || gamma0 * gamma1 != 0.0)
        throw std::invalid_argument(
            "AnchoringParams: alpha0*alpha1 and gamma0*gamma1 must vanish");
    return {alpha0, alpha1, gamma0, gamma1, beta};
}

std::pair<double, double> f_s_split(const QTensor& q, const Vec3& nu,
                                    const AnchoringParams& a) {
    if (std::abs(nu.norm() - 1.0) > 1e-8)
        throw std::invalid_argument("f_s_split: nu must be a unit vector");
    const Vec3 qnu = q.apply(nu);
    const double normal_term = (qnu.dot(nu) - a.beta) * (qnu.dot(nu) - a.beta);
    const double tangential_term = (qnu - qnu.dot(nu) * nu).squaredNorm();
    return {a.alpha0 * normal_term + a.gamma0 * tangential_term,
            a.alpha1 * normal_term + a.gamma1 * tangential_term};
}

double coercivity_margin(const ElasticConstants& c) {
    const auto& basis = traceless_symmetric_basis();
    // Basis of the 15-dimensional gradient space: E_a in direction e_k.
    std::vector<GradQ> gbasis;
    gbasis.reserve(15);
    for (int a = 0; a < 5; ++a) {
        for (int k = 0; k < 3; ++k) {
            GradQ g;
            g.component(k) = basis[a];
            gbasis.push_back(g);
        }
    }
    auto quad = [&](const GradQ& g) { return 2.0 * f_e(g, c); };
    Eigen::MatrixXd form(15, 15);
    for (int a = 0; a < 15; ++a) {
        for (int b = a; b < 15; ++b) {
            const double v = 0.5 * (quad(gbasis[a] + gbasis[b]) - quad(gbasis[a]) -
                                    quad(gbasis[b]));
            form(a, b) = form(b, a) = v;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(form);
    return solver.eigenvalues().minCoeff();
}

NondimensionalModel nondimensionalize(double L1, double L2, double L3, double a,
                                      double b, double c, double alpha,
                                      double gamma, double beta, double D,
                                      double h) {
    if (L1 <= 0.0 || c <= 0.0 || D <= 0.0)
        throw std::invalid_argument("nondimensionalize: L1, c, D must be positive");
    if (h <= 0.0 || h >= D)
        throw std::invalid_argument("nondimensionalize: require 0 < h < D");
    NondimensionalModel m;
    m.elastic = {L2 / L1, L3 / L1};
    m.ldg = LdGParams::make(a / c, b / c, std::sqrt(2.0 * L1 / (c * D * D)));
    m.anchoring = AnchoringParams::make(alpha * D / L1, 0.0, gamma * D / L1, 0.0, beta);
    m.epsilon = h / D;
    return m;
}

}  // namespace nematicfilm
