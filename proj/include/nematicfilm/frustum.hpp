#pragma once

#include "nematicfilm/qtensor.hpp"

#include <vector>

namespace nematicfilm {

struct BracketingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FrustumGeometry {
    double phi0 = 1.0;  // in (0, pi/2]
    double s0 = 1.0;
    double L = 1.0;

    static FrustumGeometry make(double phi0, double s0 = 1.0, double L = 1.0);
    /// ln((s0+L)/s0)/cos(phi0), the prefactor relating the per-circle energy
    /// to the full surface integral.
    double profile_prefactor() const;
};

/// Director-angle profile psi(theta) = k theta/2 + u(theta) with u periodic
/// on a uniform N-point grid; the winding constraint psi(2pi) = psi(0) + pi k
/// holds by construction.
struct PsiProfile {
    int k = 0;
    std::vector<double> u;  // periodic part, u[j] at theta_j = 2 pi j / N

    static PsiProfile linear(int k, int n_points);
    int size() const { return static_cast<int>(u.size()); }
    double dtheta() const { return 2.0 * M_PI / size(); }
    double theta(int j) const { return j * dtheta(); }
    double psi(int j) const { return 0.5 * k * theta(j) + u[j]; }
};

struct SectorOptions {
    int grid_points = 256;
    int multistarts = 5;
    long max_descent_iterations = 50000;
    double residual_tol = 1e-8;  // on the pendulum equation residual
    unsigned long seed = 12345;
};

/// Per-circle sector energy
///   8 pi k cos(phi0) + int_0^{2pi} (4 psi'^2 - sin^2(phi0) cos(2 psi)) dtheta.
double e0_energy(const PsiProfile& psi, const FrustumGeometry& geom);

/// Same energy through the untransformed integrand
/// 4 psi'^2 + 8 cos(phi0) psi' - sin^2(phi0) cos(2 psi); agrees with
/// e0_energy to quadrature accuracy.
double e0_energy_direct(const PsiProfile& psi, const FrustumGeometry& geom);

/// Sup norm of the discrete pendulum equation residual
/// psi'' - (sin^2(phi0)/4) sin(2 psi).
double el_residual(const PsiProfile& psi, const FrustumGeometry& geom);

struct SectorResult {
    PsiProfile profile;
    double energy = 0.0;
    double el_residual = 0.0;
    long iterations = 0;
    bool converged = false;
};

/// Minimizes the sector energy over D_k by multi-start gradient descent with
/// a Newton polish on the periodic part.
SectorResult minimize_in_sector(int k, const FrustumGeometry& geom,
                                const SectorOptions& options = {});

struct SectorRow {
    int k = 0;
    double energy = 0.0;
    double el_residual = 0.0;
    long iterations = 0;
    bool converged = false;
};

std::vector<SectorRow> sector_compare(const FrustumGeometry& geom,
                                      const std::vector<int>& k_list,
                                      const SectorOptions& options = {});

/// Bisection on phi0 for the crossing of the k=-1 and k=0 sector minima.
double critical_angle(const FrustumGeometry& geom_template, double phi_lo,
                      double phi_hi, double tol,
                      const SectorOptions& options = {});

}  // namespace nematicfilm
