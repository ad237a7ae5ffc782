#include "nematicfilm/qtensor.hpp"

#include <cmath>

namespace nematicfilm {

const std::array<Mat3, 5>& traceless_symmetric_basis() {
    static const std::array<Mat3, 5> basis = [] {
        std::array<Mat3, 5> b;
        b[0] = Mat3::Zero();
        b[0](0, 0) = 1.0 / std::sqrt(2.0);
        b[0](1, 1) = -1.0 / std::sqrt(2.0);
        b[1] = Mat3::Zero();
        b[1](0, 0) = 1.0 / std::sqrt(6.0);
        b[1](1, 1) = 1.0 / std::sqrt(6.0);
        b[1](2, 2) = -2.0 / std::sqrt(6.0);
        auto off = [](int i, int j) {
            Mat3 m = Mat3::Zero();
            m(i, j) = m(j, i) = 1.0 / std::sqrt(2.0);
            return m;
        };
        b[2] = off(0, 1);
        b[3] = off(0, 2);
        b[4] = off(1, 2);
        return b;
    }();
    return basis;
}

QTensor from_uniaxial(double S, const Vec3& n) {
    if (std::abs(n.norm() - 1.0) > 1e-8)
        throw std::invalid_argument("from_uniaxial: director must be a unit vector");
    Mat3 m = S * (n * n.transpose() - Mat3::Identity() / 3.0);
    return QTensor::project(m);
}

QTensor from_biaxial(const BiaxialState& b) {
    if (std::abs(b.l.norm() - 1.0) > 1e-8 || std::abs(b.n.norm() - 1.0) > 1e-8)
        throw std::invalid_argument("from_biaxial: axes must be unit vectors");
    Mat3 m = b.S1 * (b.l * b.l.transpose() - Mat3::Identity() / 3.0) +
             b.S2 * (b.n * b.n.transpose() - Mat3::Identity() / 3.0);
    return QTensor::project(m);
}

Spectrum spectral(const QTensor& q) {
    Eigen::SelfAdjointEigenSolver<Mat3> solver;
    solver.computeDirect(q.matrix());
    Spectrum s;
    s.eigenvalues = solver.eigenvalues();  // ascending
    s.frame = solver.eigenvectors();
    // Small slack so states exactly on the eigenvalue bounds stay admissible
    // despite solver rounding.
    const double slack = 1e-10;
    s.physical_range = true;
    for (int i = 0; i < 3; ++i) {
        if (s.eigenvalues[i] < -1.0 / 3.0 - slack ||
            s.eigenvalues[i] > 2.0 / 3.0 + slack)
            s.physical_range = false;
    }
    return s;
}

QTensor assemble_from_p(const PRepresentation& rep) {
    if (!rep.frame.orthonormal(1e-10))
        throw std::invalid_argument("assemble_from_p: frame is not orthonormal");
    const Vec3& T = rep.frame.T;
    const Vec3& N = rep.frame.N;
    const Vec3& nu = rep.frame.nu;
    Mat3 m = rep.p[0] * (T * T.transpose() - N * N.transpose()) +
             rep.p[1] * (T * N.transpose() + N * T.transpose()) +
             1.5 * rep.beta * (nu * nu.transpose() - Mat3::Identity() / 3.0);
    return QTensor::project(m);
}

PRepresentation extract_p(const QTensor& q, const Frame& frame) {
    if (!frame.orthonormal(1e-10))
        throw std::invalid_argument("extract_p: frame is not orthonormal");
    const double beta = frame.nu.dot(q.apply(frame.nu));
    if ((q.apply(frame.nu) - beta * frame.nu).norm() > 1e-8)
        throw NotRepresentableError("extract_p: nu is not an eigenvector of Q");
    PRepresentation rep;
    rep.frame = frame;
    rep.beta = beta;
    rep.p[0] = frame.T.dot(q.apply(frame.T)) + 0.5 * beta;
    rep.p[1] = frame.T.dot(q.apply(frame.N));
    return rep;
}

}  // namespace nematicfilm
