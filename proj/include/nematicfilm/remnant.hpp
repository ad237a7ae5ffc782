#pragma once

#include "nematicfilm/elastic.hpp"

namespace nematicfilm {

struct IllPosedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Tangential gradient data for the normal-remnant minimization.
/// `grad` holds the surface gradient of Q: grad(i,j,k) = (d Q_ij in direction
/// e_k), with every column gradient annihilating nu.
struct RemnantInput {
    GradQ grad;
    Vec3 nu = Vec3::UnitZ();
    ElasticConstants constants;

    /// Validates tangentiality of the gradient and the unit length of nu.
    /// nu is renormalized if its deviation from unit length is below 1e-6
    /// and rejected otherwise.
    static RemnantInput make(const GradQ& grad, const Vec3& nu,
                             const ElasticConstants& constants);
};

/// Auxiliary data of the general minimization:
/// U_i = M2 (div Q)_i nu + M3 (grad Q_i)^T nu, zeta = M2 + M3, DU = sym(U).
struct AuxU {
    Mat3 U;
    double zeta = 0.0;
    Mat3 DU;
};

AuxU aux_u(const RemnantInput& in);

/// phi[G] = U.G + |G|^2/2 + (zeta/2)|G nu|^2, the objective of the remnant
/// minimization over symmetric traceless G.
double phi_objective(const AuxU& aux, const Vec3& nu, const QTensor& G);

/// Minimizer and minimum of phi over symmetric traceless G, obtained by an
/// exact solve of the 5x5 normal equations in the fixed orthonormal basis.
std::pair<QTensor, double> brute_force_G(const RemnantInput& in);

/// Closed-form minimizer.
QTensor closed_form_G(const RemnantInput& in);

/// Closed-form minimum value of phi.
double phi_min_closed_form(const RemnantInput& in);

/// Reduced elastic density f_e^0 = tangential elastic terms + min phi,
/// evaluated with the closed-form minimum.
double f_e0(const RemnantInput& in);

/// f_e^0 via the exact 5x5 solve (independent evaluation path).
double f_e0_brute(const RemnantInput& in);

/// f_e^0 specialization at M3 = 0:
/// (1/2){ |grad Q|^2 + (2 M2/(M2+2)) |div Q|^2
///        - (M2^2/((M2+2)(2 M2+3))) (nu . div Q)^2 }.
double f_e0_m3zero(const RemnantInput& in);

/// f_e^0 from the general explicit density (all M2, M3 terms written out).
double f_e0_general(const RemnantInput& in);

}  // namespace nematicfilm
