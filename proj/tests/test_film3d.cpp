#include "doctest.h"

#include "nematicfilm/film3d.hpp"

#include <random>

using namespace nematicfilm;

namespace {
std::mt19937_64 rng(47);

Mat3 random_symmetric_traceless() {
    std::normal_distribution<double> nd;
    Mat3 m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = nd(rng);
    Mat3 s = 0.5 * (m + m.transpose());
    return s - (s.trace() / 3.0) * Mat3::Identity();
}

}  // namespace

TEST_CASE("fold threshold") {
    const auto fr = SurfaceOfRevolution::frustum(0.8, 1.0, 2.0);
    CHECK(fold_threshold(fr) == doctest::Approx(1.0 / std::tan(0.8)));
    CHECK(std::isinf(fold_threshold(SurfaceOfRevolution::plane_annulus(1.0, 1.0))));
}

TEST_CASE("shell grid") {
    const auto cyl = SurfaceOfRevolution::cylinder(2.0, 1.0);
    const ShellGrid g = ShellGrid::make(cyl, 0.1, 5, 8, 5);
    CHECK(g.t(0) == -1.0);
    CHECK(g.t(g.nt - 1) == doctest::Approx(1.0));
    CHECK(g.theta(0) == 0.0);
    CHECK(g.s(g.ns - 1) == doctest::Approx(1.0));
    CHECK_THROWS_AS(ShellGrid::make(cyl, 0.0, 5, 8, 5), std::invalid_argument);
    CHECK_THROWS_AS(ShellGrid::make(cyl, 3.0, 5, 8, 5), FoldError);
    CHECK_THROWS_AS(ShellGrid::make(cyl, 0.1, 2, 8, 5), std::invalid_argument);
}

TEST_CASE("frame-diagonal inverse of the normal-map differential") {
    const auto sph = SurfaceOfRevolution::sphere_cap(1.5, 0.4, 2.0);
    const double s = 1.0, theta = 0.7, t = 0.6;
    SUBCASE("identity limits") {
        CHECK((phi_matrix(sph, s, theta, t, 0.0) - Mat3::Identity()).norm() <=
              1e-14);
        const auto pl = SurfaceOfRevolution::plane_annulus(1.0, 1.0);
        CHECK((phi_matrix(pl, 1.5, theta, t, 0.3) - Mat3::Identity()).norm() <=
              1e-14);
    }
    SUBCASE("exact inverse of I + eps t grad nu") {
        const Mat3 grad_nu = shape_operator(sph, s, theta).extension;
        for (double eps : {0.05, 0.2, 0.5}) {
            const Mat3 prod = phi_matrix(sph, s, theta, t, eps) *
                              (Mat3::Identity() + eps * t * grad_nu);
            CHECK((prod - Mat3::Identity()).norm() <= 1e-12);
        }
    }
    SUBCASE("agrees with I - eps t grad nu to second order") {
        const Mat3 grad_nu = shape_operator(sph, s, theta).extension;
        auto err = [&](double eps) {
            return (phi_matrix(sph, s, theta, t, eps) -
                    (Mat3::Identity() - eps * t * grad_nu))
                .norm();
        };
        const double ratio = err(0.1) / err(0.05);
        CHECK(ratio > 3.5);
        CHECK(ratio < 4.5);
    }
    SUBCASE("fold rejection") {
        CHECK_THROWS_AS(phi_matrix(sph, s, theta, 1.0, 2.0), FoldError);
    }
}

TEST_CASE("full gradient on the shell") {
    const auto cyl = SurfaceOfRevolution::cylinder(2.0, 1.0);
    const double eps = 0.1;
    SUBCASE("constant field has zero gradient") {
        const ShellGrid g = ShellGrid::make(cyl, eps, 5, 8, 5);
        ShellField f = ShellField::zero(g);
        const QTensor c = QTensor::from_matrix(random_symmetric_traceless());
        for (auto& v : f.values) v = c;
        CHECK(full_gradient(f, 2, 3, 2).squared_norm() <= 1e-24);
    }
    SUBCASE("field linear in t gives (1/eps) C tensor nu") {
        const ShellGrid g = ShellGrid::make(cyl, eps, 5, 8, 5);
        ShellField f = ShellField::zero(g);
        const QTensor c = QTensor::from_matrix(random_symmetric_traceless());
        for (int i = 0; i < g.ns; ++i)
            for (int j = 0; j < g.ntheta; ++j)
                for (int k = 0; k < g.nt; ++k) f.at(i, j, k) = g.t(k) * c;
        for (int k : {0, 2, g.nt - 1}) {
            const GradQ grad = full_gradient(f, 2, 3, k);
            const Vec3 nu = frame_at(cyl, g.s(2), g.theta(3)).nu;
            double worst = 0.0;
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b)
                    for (int d = 0; d < 3; ++d)
                        worst = std::max(
                            worst, std::abs(grad(a, b, d) -
                                            c(a, b) * nu[d] / eps));
            CHECK(worst <= 1e-12);
        }
    }
    SUBCASE("recovers the ambient gradient of a linear ambient field") {
        // Q(x) = sum_l x_l C_l has constant ambient gradient C; sampling it on
        // the shell and applying the chain rule must reproduce C up to the
        // finite-difference error of the chart derivatives.
        std::array<Mat3, 3> c;
        for (auto& m : c) m = random_symmetric_traceless();
        auto position = [&](double s, double theta, double t) {
            const Vec3 base(cyl.a1(s) * std::cos(theta),
                            cyl.a1(s) * std::sin(theta), cyl.a2(s));
            return (base + eps * t * frame_at(cyl, s, theta).nu).eval();
        };
        auto err_at = [&](int ns, int nth, int nt) {
            const ShellGrid g = ShellGrid::make(cyl, eps, ns, nth, nt);
            ShellField f = ShellField::zero(g);
            for (int i = 0; i < g.ns; ++i)
                for (int j = 0; j < g.ntheta; ++j)
                    for (int k = 0; k < g.nt; ++k) {
                        const Vec3 x = position(g.s(i), g.theta(j), g.t(k));
                        Mat3 q = Mat3::Zero();
                        for (int l = 0; l < 3; ++l) q += x[l] * c[l];
                        f.at(i, j, k) = QTensor::from_matrix(q);
                    }
            const GradQ grad = full_gradient(f, g.ns / 2, g.ntheta / 3, g.nt / 2);
            double worst = 0.0;
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b)
                    for (int d = 0; d < 3; ++d)
                        worst = std::max(worst,
                                         std::abs(grad(a, b, d) - c[d](a, b)));
            return worst;
        };
        const double coarse = err_at(9, 32, 5);
        const double fine = err_at(17, 64, 9);
        CHECK(fine <= 1e-2);
        CHECK(fine <= 0.5 * coarse);
    }
}

TEST_CASE("rescaled shell energy of a t-independent flat field") {
    // On a flat annulus the chain rule and Jacobians are trivial. For
    // isotropic elasticity the limit density has no transverse relaxation, so
    // the rescaled shell energy of a t-independent compatible field equals
    // the limit surface energy at the same quadrature nodes; anisotropic
    // constants relax in the normal direction and can only lower the limit.
    const auto pl = SurfaceOfRevolution::plane_annulus(1.0, 1.0);
    const double beta = -1.0 / 3.0;
    PField p = PField::uniform(pl, 9, 16);
    for (int i = 0; i < p.ns; ++i)
        for (int j = 0; j < p.ntheta; ++j)
            p.at(i, j) = Vec2(0.4 + 0.1 * std::sin(p.s(i)),
                              0.2 * std::cos(p.theta(j)));
    const SurfaceTensorField q0 = SurfaceTensorField::from_p_field(p, beta, pl);
    const LdGParams ldg = LdGParams::make(-1.0, -0.5, 1.0);
    const AnchoringParams anch = AnchoringParams::make(0.0, 1.5, 0.0, 2.0, beta);

    const ShellGrid g = ShellGrid::make(pl, 0.2, q0.ns, q0.ntheta, 5);
    ShellField shell = ShellField::zero(g);
    for (int i = 0; i < g.ns; ++i)
        for (int j = 0; j < g.ntheta; ++j)
            for (int k = 0; k < g.nt; ++k) shell.at(i, j, k) = q0.at(i, j);

    const ElasticConstants iso{0.0, 0.0};
    CHECK(F_eps(shell, iso, ldg, anch) ==
          doctest::Approx(F0_surface(q0, iso, ldg, anch)).epsilon(1e-10));

    const ElasticConstants aniso{0.5, 0.3};
    CHECK(F_eps(shell, aniso, ldg, anch) >
          F0_surface(q0, aniso, ldg, anch));
}

TEST_CASE("recovery field") {
    const auto cyl = SurfaceOfRevolution::cylinder(2.0, 1.0);
    const double beta = -1.0 / 3.0;
    PField p = PField::uniform(cyl, 9, 16, Vec2(0.5, 0.2));
    const SurfaceTensorField q0 = SurfaceTensorField::from_p_field(p, beta, cyl);
    const AnchoringParams anch = AnchoringParams::make(0.0, 1.0, 0.0, 1.0, beta);
    SUBCASE("isotropic elasticity gives a t-independent recovery") {
        const ShellField f = build_recovery(q0, {0.0, 0.0}, anch, 0.1, 5);
        for (int k = 1; k < f.grid.nt; ++k)
            CHECK((f.at(4, 7, k).matrix() - f.at(4, 7, 0).matrix()).norm() <=
                  1e-14);
    }
    SUBCASE("profile is affine in t around the base field") {
        const ElasticConstants elastic{1.0, 0.5};
        const ShellField f = build_recovery(q0, elastic, anch, 0.1, 5);
        const int mid = f.grid.nt / 2;  // t = 0
        CHECK((f.at(4, 7, mid).matrix() - q0.at(4, 7).matrix()).norm() <= 1e-14);
        const Mat3 chord = 0.5 * (f.at(4, 7, 0).matrix() +
                                  f.at(4, 7, f.grid.nt - 1).matrix());
        CHECK((chord - q0.at(4, 7).matrix()).norm() <= 1e-14);
    }
    SUBCASE("incompatible base field is rejected") {
        const AnchoringParams strong =
            AnchoringParams::make(2.0, 0.0, 0.0, 1.0, beta + 0.3);
        CHECK_THROWS_AS(build_recovery(q0, {1.0, 0.5}, strong, 0.1, 5),
                        AdmissibilityError);
    }
}

TEST_CASE("convergence rate to the limit energy") {
    const auto cyl = SurfaceOfRevolution::cylinder(2.0, 1.0);
    const double beta = -1.0 / 3.0;
    PField p = PField::uniform(cyl, 17, 32, Vec2(0.4, -0.1));
    const SurfaceTensorField q0 = SurfaceTensorField::from_p_field(p, beta, cyl);
    const LdGParams ldg = LdGParams::make(-0.5, -0.3, 1.0);
    const AnchoringParams anch = AnchoringParams::make(0.0, 1.0, 0.0, 0.5, beta);
    const std::vector<double> eps_list{0.1, 0.05, 0.025};
    SUBCASE("anisotropic constants") {
        const GammaRateResult r = gamma_rate(q0, {1.0, 0.0}, ldg, anch, eps_list, 9);
        REQUIRE(r.rows.size() == 3);
        CHECK(r.monotone);
        CHECK(r.fitted_order >= 0.9);
        for (const auto& row : r.rows) CHECK(row.F0 == doctest::Approx(r.rows[0].F0));
    }
    SUBCASE("isotropic constants converge at least quadratically") {
        const GammaRateResult r = gamma_rate(q0, {0.0, 0.0}, ldg, anch, eps_list, 9);
        CHECK(r.monotone);
        CHECK(r.fitted_order >= 1.9);
    }
    SUBCASE("input validation") {
        CHECK_THROWS_AS(gamma_rate(q0, {1.0, 0.0}, ldg, anch, {}, 9),
                        std::invalid_argument);
        CHECK_THROWS_AS(gamma_rate(q0, {1.0, 0.0}, ldg, anch, {0.05, 0.1}, 9),
                        std::invalid_argument);
        CHECK_THROWS_AS(gamma_rate(q0, {1.0, 0.0}, ldg, anch, {5.0, 2.5}, 9),
                        FoldError);
    }
}
