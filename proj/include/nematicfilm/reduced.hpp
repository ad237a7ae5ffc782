#pragma once

#include "nematicfilm/elastic.hpp"
#include "nematicfilm/surface.hpp"

#include <iosfwd>
#include <vector>

namespace nematicfilm {

struct UndefinedDegreeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class EdgeCondition { Natural, Fixed };

/// Grid of p = (p1, p2) values on [s0, s0+L] x [0, 2pi), periodic in theta.
/// s nodes include both edges; theta node j sits at j * 2pi/ntheta.
struct PField {
    int ns = 0, ntheta = 0;
    double s0 = 0.0, ds = 0.0, dtheta = 0.0;
    std::vector<Vec2> values;  // row-major, index i*ntheta + j
    EdgeCondition lower_edge = EdgeCondition::Natural;
    EdgeCondition upper_edge = EdgeCondition::Natural;

    static PField uniform(const SurfaceOfRevolution& surf, int ns, int ntheta,
                          const Vec2& p = Vec2::Zero());

    Vec2& at(int i, int j) { return values[static_cast<size_t>(i) * ntheta + j]; }
    const Vec2& at(int i, int j) const {
        return values[static_cast<size_t>(i) * ntheta + j];
    }
    double s(int i) const { return s0 + i * ds; }
    double theta(int j) const { return j * dtheta; }

    /// Second-order discrete derivatives: centered in the interior and in
    /// theta (periodic), one-sided at the s edges.
    Vec2 d_ds(int i, int j) const;
    Vec2 d_dtheta(int i, int j) const;
};

struct ReducedConfig {
    SurfaceOfRevolution surface;
    double beta = -1.0 / 3.0;
    LdGParams ldg = LdGParams::make(0.0, 0.0, 1.0);
    // First-order anchoring weights; constant in the p-representation since
    // nu stays an eigenvector with eigenvalue beta.
    double alpha1 = 0.0, gamma1 = 0.0;
    double anchoring_beta = -1.0 / 3.0;
    // Descent controls.
    double gtol = 1e-8;
    long max_iterations = 1000000;
    double initial_step = 1e-3;
};

/// Elastic density of the reduced energy in the p variables, with the
/// p-independent geometric terms dropped:
///   |p_s|^2 + |p_theta|^2/a1^2 + (4 cos phi/a1^2)(p1 p2_theta - p2 p1_theta)
///   + (4/a1^2 - 3 kN^2 + kT^2)|p|^2 + 3 beta p1 (kN^2 - kT^2).
double density_sr10(const Vec2& p, const Vec2& p_s, const Vec2& p_theta, double s,
                    const SurfaceOfRevolution& surf, double beta);

/// The dropped p-independent terms: (9 beta^2/4)(kT^2 + kN^2).
double geometric_offset(double s, const SurfaceOfRevolution& surf, double beta);

/// Bulk potential evaluated through the p-representation
/// (tr Q^2 = 2|p|^2 + 3 beta^2/2).
double f_ldg_p(double rho_sq, double beta, const LdGParams& ldg);

double total_energy(const PField& field, const ReducedConfig& config);

/// Gradient of the discrete energy with respect to the node values, divided by
/// the local quadrature weight so it approximates the variational derivative.
std::vector<Vec2> energy_gradient(const PField& field, const ReducedConfig& config);

struct FlowReport {
    long iterations = 0;
    double energy = 0.0;
    double grad_sup_norm = 0.0;
    bool converged = false;
};

/// Explicit gradient descent with backtracking line search; the energy is
/// non-increasing over accepted steps. Returns the (possibly partial) result
/// with convergence status.
FlowReport gradient_flow_minimize(PField& field, const ReducedConfig& config);

/// Winding of p around the theta-circle at the given s row.
int winding_number(const PField& field, int s_index, double wtol = 1e-8);

void write_csv(const PField& field, std::ostream& out);
PField read_csv(std::istream& in, const SurfaceOfRevolution& surf);

}  // namespace nematicfilm
