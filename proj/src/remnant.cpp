#include "nematicfilm/remnant.hpp"

#include <cmath>
#include <iostream>

namespace nematicfilm {

RemnantInput RemnantInput::make(const GradQ& grad, const Vec3& nu,
                                const ElasticConstants& constants) {
    const double dev = std::abs(nu.norm() - 1.0);
    if (dev > 1e-6)
        throw std::invalid_argument("RemnantInput: nu is not a unit vector");
    if (dev > 1e-10)
        std::cerr << "RemnantInput: normalizing nu (deviation " << dev << ")\n";
    RemnantInput in;
    in.grad = grad;
    in.nu = nu.normalized();
    in.constants = constants;
    for (int i = 0; i < 3; ++i) {
        if ((in.grad.column_gradient(i) * in.nu).norm() > 1e-8)
            throw std::invalid_argument(
                "RemnantInput: gradient is not tangential to nu");
    }
    return in;
}

AuxU aux_u(const RemnantInput& in) {
    AuxU a;
    const Vec3 div = in.grad.divergence();
    for (int i = 0; i < 3; ++i) {
        a.U.col(i) = in.constants.M2 * div[i] * in.nu +
                     in.constants.M3 * in.grad.column_gradient(i).transpose() * in.nu;
    }
    a.zeta = in.constants.M2 + in.constants.M3;
    a.DU = 0.5 * (a.U + a.U.transpose());
    return a;
}

double phi_objective(const AuxU& aux, const Vec3& nu, const QTensor& G) {
    const Mat3& g = G.matrix();
    return (g.transpose() * aux.U).trace() + 0.5 * g.squaredNorm() +
           0.5 * aux.zeta * (g * nu).squaredNorm();
}

std::pair<QTensor, double> brute_force_G(const RemnantInput& in) {
    if (!in.constants.coercive())
        throw IllPosedError("brute_force_G: elastic constants outside coercive region");
    const AuxU aux = aux_u(in);
    const auto& basis = traceless_symmetric_basis();

    Eigen::Matrix<double, 5, 5> H;
    Eigen::Matrix<double, 5, 1> L;
    for (int a = 0; a < 5; ++a) {
        L[a] = (basis[a].transpose() * aux.U).trace();
        for (int b = a; b < 5; ++b) {
            double h = (a == b) ? 1.0 : 0.0;
            h += aux.zeta * (basis[a] * in.nu).dot(basis[b] * in.nu);
            H(a, b) = H(b, a) = h;
        }
    }
    Eigen::LLT<Eigen::Matrix<double, 5, 5>> llt(H);
    if (llt.info() != Eigen::Success)
        throw IllPosedError("brute_force_G: normal equations are not positive definite");
    const Eigen::Matrix<double, 5, 1> x = llt.solve(-L);

    Mat3 g = Mat3::Zero();
    for (int a = 0; a < 5; ++a) g += x[a] * basis[a];
    // Minimum of a quadratic at its stationary point: L.x + x.Hx/2 = L.x/2.
    return {QTensor::project(g), 0.5 * L.dot(x)};
}

QTensor closed_form_G(const RemnantInput& in) {
    const AuxU aux = aux_u(in);
    const double z = aux.zeta;
    if (std::abs(z + 2.0) < 1e-12 || std::abs(2.0 * z + 3.0) < 1e-12)
        throw IllPosedError("closed_form_G: degenerate denominator in zeta");
    const Vec3& nu = in.nu;
    const Vec3 dun = aux.DU * nu;
    const double unn = nu.dot(aux.U * nu);
    const double tru = aux.U.trace();

    Mat3 g = -aux.DU;
    g += (z / (z + 2.0)) * (nu * dun.transpose() + dun * nu.transpose());
    g -= (z * (z * unn + (z + 2.0) * tru)) / ((z + 2.0) * (2.0 * z + 3.0)) *
         (nu * nu.transpose());
    g -= (z * unn - (z + 1.0) * tru) / (2.0 * z + 3.0) * Mat3::Identity();
    return QTensor::from_matrix(g, 1e-8);
}

double phi_min_closed_form(const RemnantInput& in) {
    const AuxU aux = aux_u(in);
    const double z = aux.zeta;
    if (std::abs(z + 2.0) < 1e-12 || std::abs(2.0 * z + 3.0) < 1e-12)
        throw IllPosedError("phi_min_closed_form: degenerate denominator in zeta");
    const Vec3 dun = aux.DU * in.nu;
    const double unn = in.nu.dot(aux.U * in.nu);
    const double tru = aux.U.trace();
    return -0.5 * aux.DU.squaredNorm() + (z / (z + 2.0)) * dun.squaredNorm() -
           z * z / (2.0 * (z + 2.0) * (2.0 * z + 3.0)) * unn * unn -
           z / (2.0 * z + 3.0) * unn * tru +
           (z + 1.0) / (2.0 * (2.0 * z + 3.0)) * tru * tru;
}

namespace {

double tangential_part(const RemnantInput& in) {
    const ElasticConstants& c = in.constants;
    double t3 = 0.0;
    for (int i = 0; i < 3; ++i) {
        const Mat3 gi = in.grad.column_gradient(i);
        t3 += (gi * gi).trace();
    }
    return 0.5 * (in.grad.squared_norm() +
                  c.M2 * in.grad.divergence().squaredNorm() + c.M3 * t3);
}

}  // namespace

double f_e0(const RemnantInput& in) {
    if (!in.constants.coercive())
        throw IllPosedError("f_e0: elastic constants outside coercive region");
    return tangential_part(in) + phi_min_closed_form(in);
}

double f_e0_brute(const RemnantInput& in) {
    return tangential_part(in) + brute_force_G(in).second;
}

double f_e0_m3zero(const RemnantInput& in) {
    const double m2 = in.constants.M2;
    if (in.constants.M3 != 0.0)
        throw std::invalid_argument("f_e0_m3zero: requires M3 = 0");
    if (m2 <= -3.0 / 5.0)
        throw IllPosedError("f_e0_m3zero: requires M2 > -3/5");
    const Vec3 div = in.grad.divergence();
    const double ndiv = in.nu.dot(div);
    return 0.5 * (in.grad.squared_norm() +
                  2.0 * m2 / (m2 + 2.0) * div.squaredNorm() -
                  m2 * m2 / ((m2 + 2.0) * (2.0 * m2 + 3.0)) * ndiv * ndiv);
}

double f_e0_general(const RemnantInput& in) {
    const double m2 = in.constants.M2;
    const double m3 = in.constants.M3;
    const double z = m2 + m3;
    if (std::abs(z + 2.0) < 1e-12 || std::abs(2.0 * z + 3.0) < 1e-12)
        throw IllPosedError("f_e0_general: degenerate denominator in M2 + M3");
    const Vec3& nu = in.nu;
    const Vec3 div = in.grad.divergence();
    const double ndiv = nu.dot(div);

    double value = 0.5 * in.grad.squared_norm();
    value += m2 * (m3 + 2.0) / (2.0 * (z + 2.0)) * div.squaredNorm();
    value += ((m3 * m3 + 2.0 * m3 - 1.0) * m2 * m2 +
              (2.0 * m3 * m3 + 5.0 * m3 + 4.0) * m2 * m3 +
              (m3 * m3 + 3.0 * m3 + 2.0) * m3 * m3) /
             (2.0 * (z + 2.0) * (2.0 * z + 3.0)) * ndiv * ndiv;

    Mat3 sym_combo = Mat3::Zero();   // sum_i nu_i (grad Q_i + grad Q_i^T)
    Vec3 nu_combo = Vec3::Zero();    // sum_i nu_i grad Q_i^T nu
    for (int i = 0; i < 3; ++i) {
        const Mat3 gi = in.grad.column_gradient(i);
        value += 0.5 * (m3 * (gi * gi).trace() -
                        2.0 * m2 * m3 / (z + 2.0) * nu[i] * nu.dot(gi * div));
        sym_combo += nu[i] * (gi + gi.transpose());
        nu_combo += nu[i] * gi.transpose() * nu;
    }
    value -= m3 * m3 / 8.0 * sym_combo.squaredNorm();
    value += m3 * m3 / 4.0 * z / (z + 2.0) * nu_combo.squaredNorm();
    return value;
}

}  // namespace nematicfilm
