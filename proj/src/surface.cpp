#include "nematicfilm/surface.hpp"

#include <cmath>

namespace nematicfilm {

SurfaceOfRevolution SurfaceOfRevolution::frustum(double phi0, double s0, double L) {
    if (phi0 <= 0.0 || phi0 > M_PI / 2.0)
        throw std::invalid_argument("frustum: phi0 must lie in (0, pi/2]");
    if (s0 <= 0.0 || L <= 0.0)
        throw std::invalid_argument("frustum: s0 and L must be positive");
    SurfaceOfRevolution m;
    m.a1 = [phi0](double s) { return s * std::cos(phi0); };
    m.a2 = [phi0](double s) { return s * std::sin(phi0); };
    m.phi = [phi0](double) { return phi0; };
    m.phi_prime = [](double) { return 0.0; };
    m.s0 = s0;
    m.length = L;
    m.name = "frustum";
    return m;
}

SurfaceOfRevolution SurfaceOfRevolution::cylinder(double R, double L) {
    if (R <= 0.0 || L <= 0.0)
        throw std::invalid_argument("cylinder: R and L must be positive");
    SurfaceOfRevolution m;
    m.a1 = [R](double) { return R; };
    m.a2 = [](double s) { return s; };
    m.phi = [](double) { return M_PI / 2.0; };
    m.phi_prime = [](double) { return 0.0; };
    m.s0 = 0.0;
    m.length = L;
    m.name = "cylinder";
    return m;
}

SurfaceOfRevolution SurfaceOfRevolution::sphere_cap(double R, double s0, double L) {
    if (R <= 0.0 || s0 <= 0.0 || L <= 0.0 || s0 + L >= M_PI * R)
        throw std::invalid_argument("sphere_cap: need 0 < s0 < s0+L < pi R");
    SurfaceOfRevolution m;
    m.a1 = [R](double s) { return R * std::sin(s / R); };
    m.a2 = [R](double s) { return -R * std::cos(s / R); };
    m.phi = [R](double s) { return s / R; };
    m.phi_prime = [R](double) { return 1.0 / R; };
    m.s0 = s0;
    m.length = L;
    m.name = "sphere-cap";
    return m;
}

SurfaceOfRevolution SurfaceOfRevolution::plane_annulus(double s0, double L) {
    if (s0 <= 0.0 || L <= 0.0)
        throw std::invalid_argument("plane_annulus: s0 and L must be positive");
    SurfaceOfRevolution m;
    m.a1 = [](double s) { return s; };
    m.a2 = [](double) { return 0.0; };
    m.phi = [](double) { return 0.0; };
    m.phi_prime = [](double) { return 0.0; };
    m.s0 = s0;
    m.length = L;
    m.name = "plane-annulus";
    return m;
}

FramePoint frame_at(const SurfaceOfRevolution& surf, double s, double theta) {
    surf.require_in_domain(s);
    const double cp = std::cos(surf.phi(s)), sp = std::sin(surf.phi(s));
    const double ct = std::cos(theta), st = std::sin(theta);
    FramePoint f;
    f.T = {cp * ct, cp * st, sp};
    f.N = {-st, ct, 0.0};
    f.nu = {-sp * ct, -sp * st, cp};
    return f;
}

CurvatureData curvatures(const SurfaceOfRevolution& surf, double s) {
    surf.require_in_domain(s);
    const double a1 = surf.a1(s);
    if (a1 <= 0.0)
        throw std::domain_error("curvatures: profile touches the axis (a1 <= 0)");
    CurvatureData c;
    c.kappa_T = surf.phi_prime(s);
    c.kappa_N = std::sin(surf.phi(s)) / a1;
    c.firstFF = Mat2::Zero();
    c.firstFF(0, 0) = 1.0;
    c.firstFF(1, 1) = a1 * a1;
    c.secondFF = Mat2::Zero();
    c.secondFF(0, 0) = c.kappa_T;
    c.secondFF(1, 1) = a1 * std::sin(surf.phi(s));
    return c;
}

ShapeOperator shape_operator(const SurfaceOfRevolution& surf, double s,
                             double theta) {
    const CurvatureData c = curvatures(surf, s);
    const FramePoint f = frame_at(surf, s, theta);
    ShapeOperator a;
    a.matrix = -c.firstFF.inverse() * c.secondFF;
    a.eigenvalues = {-c.kappa_T, -c.kappa_N};
    a.extension = -c.kappa_T * f.T * f.T.transpose() -
                  c.kappa_N * f.N * f.N.transpose();
    return a;
}

double area_element(const SurfaceOfRevolution& surf, double s) {
    surf.require_in_domain(s);
    return surf.a1(s);
}

double max_abs_curvature(const SurfaceOfRevolution& surf, int samples) {
    double kmax = 0.0;
    for (int i = 0; i <= samples; ++i) {
        const double s = surf.s0 + surf.length * i / samples;
        const CurvatureData c = curvatures(surf, s);
        kmax = std::max({kmax, std::abs(c.kappa_T), std::abs(c.kappa_N)});
    }
    return kmax;
}

}  // namespace nematicfilm
