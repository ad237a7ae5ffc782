#pragma once

#include "nematicfilm/qtensor.hpp"

#include <array>
#include <utility>

namespace nematicfilm {

/// Ratios M2 = L2/L1, M3 = L3/L1 of the three elastic constants.
struct ElasticConstants {
    double M2 = 0.0;
    double M3 = 0.0;

    /// True inside the region -1 < M3 < 2, M2 > -3/5 - M3/10 where the
    /// elastic density is a positive definite form on admissible gradients.
    bool coercive() const {
        return M3 > -1.0 && M3 < 2.0 && M2 > -3.0 / 5.0 - M3 / 10.0;
    }
};

/// Non-dimensional bulk potential parameters. `offset` shifts the potential
/// so that its minimum over uniaxial states is zero.
struct LdGParams {
    double A = 0.0;
    double B = 0.0;
    double delta = 1.0;
    double offset = 0.0;

    static LdGParams make(double A, double B, double delta);
};

/// Weak anchoring weights, split into leading order (alpha0, gamma0) and
/// first order (alpha1, gamma1). alpha0*alpha1 = gamma0*gamma1 = 0.
struct AnchoringParams {
    double alpha0 = 0.0, alpha1 = 0.0;
    double gamma0 = 0.0, gamma1 = 0.0;
    double beta = 0.0;

    static AnchoringParams make(double alpha0, double alpha1, double gamma0,
                                double gamma1, double beta);
};

/// Gradient of a Q-tensor field: d[k](i,j) = dQ_ij / dx_k.
/// Symmetric and traceless in (i,j) for each spatial direction k.
class GradQ {
public:
    GradQ() { d_.fill(Mat3::Zero()); }

    static GradQ from_components(const std::array<Mat3, 3>& d, double tol = 1e-8) {
        GradQ g;
        for (int k = 0; k < 3; ++k) {
            if ((d[k] - d[k].transpose()).norm() > tol || std::abs(d[k].trace()) > tol)
                throw std::invalid_argument(
                    "GradQ: components must be symmetric traceless in (i,j)");
            Mat3 s = 0.5 * (d[k] + d[k].transpose());
            g.d_[k] = s - (s.trace() / 3.0) * Mat3::Identity();
        }
        return g;
    }

    const Mat3& component(int k) const { return d_[k]; }
    Mat3& component(int k) { return d_[k]; }
    double operator()(int i, int j, int k) const { return d_[k](i, j); }

    /// (div Q)_i = Q_ij,j
    Vec3 divergence() const {
        Vec3 v = Vec3::Zero();
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) v[i] += d_[j](i, j);
        return v;
    }

    /// Surface gradient of column Q_i as a 3x3 matrix: (grad Q_i)_{jk} = Q_ij,k.
    Mat3 column_gradient(int i) const {
        Mat3 m;
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) m(j, k) = d_[k](i, j);
        return m;
    }

    double squared_norm() const {
        double s = 0.0;
        for (int k = 0; k < 3; ++k) s += d_[k].squaredNorm();
        return s;
    }

    GradQ operator+(const GradQ& o) const {
        GradQ g;
        for (int k = 0; k < 3; ++k) g.d_[k] = d_[k] + o.d_[k];
        return g;
    }
    GradQ operator*(double s) const {
        GradQ g;
        for (int k = 0; k < 3; ++k) g.d_[k] = d_[k] * s;
        return g;
    }

private:
    std::array<Mat3, 3> d_;
};

struct NoNematicMinimumError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Elastic density (1/2) sum_j { |grad Q_j|^2 + M2 (div Q_j)^2 + M3 grad Q_j . grad Q_j^T }.
double f_e(const GradQ& g, const ElasticConstants& c);

/// Restriction of the bulk potential to uniaxial states with order S
/// (without the offset): 4A S^2/3 + 8B S^3/27 + 4 S^4/9.
double uniaxial_potential(double S, double A, double B);

/// Bulk potential 2A tr Q^2 + (4/3) B tr Q^3 + (tr Q^2)^2 + offset.
double f_ldg(const QTensor& q, const LdGParams& p);

/// Nontrivial root of 2S^2 + BS + 3A = 0 minimizing the restricted potential.
double uniaxial_stationary_S(const LdGParams& p);

/// (f_s^(0), f_s^(1)) evaluated at Q, nu.
std::pair<double, double> f_s_split(const QTensor& q, const Vec3& nu,
                                    const AnchoringParams& a);

/// Smallest eigenvalue of g -> 2 f_e(g) on the 15-dimensional space of
/// admissible gradients; positive iff f_e is coercive.
double coercivity_margin(const ElasticConstants& c);

struct NondimensionalModel {
    ElasticConstants elastic;
    LdGParams ldg;
    AnchoringParams anchoring;
    double epsilon = 0.0;
};

NondimensionalModel nondimensionalize(double L1, double L2, double L3, double a,
                                      double b, double c, double alpha,
                                      double gamma, double beta, double D,
                                      double h);

}  // namespace nematicfilm
