#pragma once

#include "nematicfilm/qtensor.hpp"

#include <functional>
#include <string>

namespace nematicfilm {

/// Surface of revolution generated by an arclength-parametrized profile
/// curve r(s) = (a1(s), a2(s)) with r'(s) = (cos phi(s), sin phi(s)),
/// swept around the z-axis. Profiles are supplied as closures together with
/// the analytic phi'.
struct SurfaceOfRevolution {
    std::function<double(double)> a1;
    std::function<double(double)> a2;
    std::function<double(double)> phi;
    std::function<double(double)> phi_prime;
    double s0 = 0.0;
    double length = 1.0;
    std::string name = "custom";

    double s_end() const { return s0 + length; }
    void require_in_domain(double s) const {
        const double tol = 1e-12 * (1.0 + std::abs(s0) + length);
        if (s < s0 - tol || s > s_end() + tol)
            throw std::out_of_range("SurfaceOfRevolution: s outside profile domain");
    }

    /// Truncated cone, phi = phi0 constant, a1 = s cos(phi0), s in [s0, s0+L].
    static SurfaceOfRevolution frustum(double phi0, double s0, double L);
    /// Cylinder of radius R, s in [0, L] along the axis.
    static SurfaceOfRevolution cylinder(double R, double L);
    /// Spherical cap of radius R, s the arclength from the pole, s in [s0, s0+L].
    static SurfaceOfRevolution sphere_cap(double R, double s0, double L);
    /// Flat annulus, inner radius s0, outer radius s0 + L.
    static SurfaceOfRevolution plane_annulus(double s0, double L);
};

struct FramePoint {
    Vec3 T;   // tangent along the meridian
    Vec3 N;   // tangent along the parallel
    Vec3 nu;  // normal

    Frame as_frame() const { return {T, N, nu}; }
};

struct CurvatureData {
    double kappa_T = 0.0;  // phi'
    double kappa_N = 0.0;  // sin(phi)/a1
    Mat2 firstFF = Mat2::Identity();
    Mat2 secondFF = Mat2::Zero();
};

/// 2x2 shape operator -I^{-1} II in the (T, N) principal frame, plus its
/// 3x3 extension grad_M nu = -kappa_T T T - kappa_N N N (nu in the kernel).
struct ShapeOperator {
    Mat2 matrix = Mat2::Zero();
    Vec2 eigenvalues = Vec2::Zero();  // (-kappa_T, -kappa_N)
    Mat3 extension = Mat3::Zero();
};

FramePoint frame_at(const SurfaceOfRevolution& surf, double s, double theta);
CurvatureData curvatures(const SurfaceOfRevolution& surf, double s);
ShapeOperator shape_operator(const SurfaceOfRevolution& surf, double s,
                             double theta = 0.0);
double area_element(const SurfaceOfRevolution& surf, double s);

/// Sharp fold bound: the largest eps with 1 - eps*t*kappa > 0 on the whole
/// profile for |t| <= 1, computed from the sampled maximum of |kappa|.
double max_abs_curvature(const SurfaceOfRevolution& surf, int samples = 512);

}  // namespace nematicfilm
