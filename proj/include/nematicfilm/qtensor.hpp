#pragma once

#include <Eigen/Dense>
#include <array>
#include <stdexcept>

namespace nematicfilm {

using Vec3 = Eigen::Vector3d;
using Vec2 = Eigen::Vector2d;
using Mat3 = Eigen::Matrix3d;
using Mat2 = Eigen::Matrix2d;

/// Order tensor: symmetric traceless 3x3 matrix.
/// Construction cleans rounding (symmetrizes and removes the trace) but
/// rejects matrices that are not close to symmetric traceless to begin with.
class QTensor {
public:
    QTensor() : m_(Mat3::Zero()) {}

    static QTensor from_matrix(const Mat3& m, double tol = 1e-8) {
        if ((m - m.transpose()).norm() > tol)
            throw std::invalid_argument("QTensor: matrix is not symmetric");
        if (std::abs(m.trace()) > tol)
            throw std::invalid_argument("QTensor: matrix is not traceless");
        return QTensor(clean(m));
    }

    /// Symmetrize and remove the trace unconditionally.
    static QTensor project(const Mat3& m) { return QTensor(clean(m)); }

    const Mat3& matrix() const { return m_; }
    double operator()(int i, int j) const { return m_(i, j); }

    Vec3 apply(const Vec3& v) const { return m_ * v; }

    double norm() const { return m_.norm(); }
    double dot(const QTensor& other) const { return (m_.transpose() * other.m_).trace(); }
    double trace_sq() const { return (m_ * m_).trace(); }
    double trace_cube() const { return (m_ * m_ * m_).trace(); }

    QTensor operator+(const QTensor& o) const { return QTensor(m_ + o.m_); }
    QTensor operator-(const QTensor& o) const { return QTensor(m_ - o.m_); }
    QTensor operator*(double s) const { return QTensor(m_ * s); }
    QTensor operator-() const { return QTensor(-m_); }
    QTensor& operator+=(const QTensor& o) { m_ += o.m_; return *this; }
    QTensor& operator-=(const QTensor& o) { m_ -= o.m_; return *this; }

private:
    explicit QTensor(const Mat3& m) : m_(m) {}
    static Mat3 clean(const Mat3& m) {
        Mat3 s = 0.5 * (m + m.transpose());
        s -= (s.trace() / 3.0) * Mat3::Identity();
        return s;
    }
    Mat3 m_;
};

inline QTensor operator*(double s, const QTensor& q) { return q * s; }

/// Eigenvalues sorted ascending with an orthonormal eigenframe (columns of
/// `frame` in the same order).
struct Spectrum {
    Vec3 eigenvalues;  // lambda1 <= lambda2 <= lambda3
    Mat3 frame;        // columns l, m, n
    bool physical_range;  // all eigenvalues in [-1/3, 2/3]

    Vec3 l() const { return frame.col(0); }
    Vec3 m() const { return frame.col(1); }
    Vec3 n() const { return frame.col(2); }
};

struct UniaxialState {
    double S = 0.0;
    Vec3 n = Vec3::UnitZ();
};

/// Biaxial decomposition Q = S1 (l l^T - I/3) + S2 (n n^T - I/3).
struct BiaxialState {
    double S1 = 0.0, S2 = 0.0;
    Vec3 l = Vec3::UnitX(), n = Vec3::UnitZ();
};

/// Orthonormal triple used for the surface-adapted representation.
struct Frame {
    Vec3 T, N, nu;

    double orthonormality_defect() const {
        Mat3 R;
        R.col(0) = T; R.col(1) = N; R.col(2) = nu;
        return (R.transpose() * R - Mat3::Identity()).norm();
    }
    bool orthonormal(double tol = 1e-10) const { return orthonormality_defect() <= tol; }

    static Frame standard() { return {Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ()}; }
};

/// Q written as p1 (T T - N N) + p2 (T N + N T) + (3 beta/2)(nu nu - I/3).
/// nu is then an eigenvector of the assembled tensor with eigenvalue beta.
struct PRepresentation {
    Vec2 p = Vec2::Zero();
    double beta = 0.0;
    Frame frame = Frame::standard();

    double rho() const { return p.norm(); }
    /// Director angle: p = rho (cos 2psi, sin 2psi).
    double psi() const { return 0.5 * std::atan2(p[1], p[0]); }
};

struct NotRepresentableError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Fixed basis of the space of symmetric traceless 3x3 matrices, orthonormal
/// under the Frobenius inner product:
///   E0 = diag(1,-1,0)/sqrt(2), E1 = diag(1,1,-2)/sqrt(6),
///   E2, E3, E4 = symmetrized off-diagonal pairs (01), (02), (12), each /sqrt(2).
const std::array<Mat3, 5>& traceless_symmetric_basis();

QTensor from_uniaxial(double S, const Vec3& n);
QTensor from_biaxial(const BiaxialState& b);
Spectrum spectral(const QTensor& q);
QTensor assemble_from_p(const PRepresentation& rep);
PRepresentation extract_p(const QTensor& q, const Frame& frame);

}  // namespace nematicfilm
