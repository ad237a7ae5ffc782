#include "doctest.h"

#include "nematicfilm/remnant.hpp"

#include <random>

using namespace nematicfilm;

namespace {

std::mt19937_64 rng(44);

Mat3 random_symmetric_traceless() {
    std::normal_distribution<double> nd;
    Mat3 m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = nd(rng);
    Mat3 s = 0.5 * (m + m.transpose());
    return s - (s.trace() / 3.0) * Mat3::Identity();
}

Vec3 random_unit() {
    std::normal_distribution<double> nd;
    Vec3 v(nd(rng), nd(rng), nd(rng));
    while (v.norm() < 1e-3) v = Vec3(nd(rng), nd(rng), nd(rng));
    return v.normalized();
}

/// Random tangential gradient data: columns of the gradient of each component
/// lie in the tangent plane of nu.
GradQ random_tangential_grad(const Vec3& nu) {
    const Vec3 t1 = nu.unitOrthogonal(), t2 = nu.cross(t1);
    const Mat3 A = random_symmetric_traceless(), B = random_symmetric_traceless();
    std::array<Mat3, 3> d;
    for (int k = 0; k < 3; ++k) d[k] = A * t1[k] + B * t2[k];
    return GradQ::from_components(d);
}

ElasticConstants random_coercive() {
    std::uniform_real_distribution<double> um2(-0.7, 3.0), um3(-1.0, 2.0);
    ElasticConstants ec;
    do {
        ec = {um2(rng), um3(rng)};
    } while (!ec.coercive());
    return ec;
}

}  // namespace

TEST_CASE("input validation") {
    const Vec3 nu = Vec3::UnitZ();
    SUBCASE("non-tangential gradient rejected") {
        std::array<Mat3, 3> d;
        d.fill(Mat3::Zero());
        d[2](0, 1) = d[2](1, 0) = 1.0;  // variation along nu itself
        CHECK_THROWS_AS(
            RemnantInput::make(GradQ::from_components(d), nu, {0.0, 0.0}),
            std::invalid_argument);
    }
    SUBCASE("slightly non-unit nu is normalized") {
        const RemnantInput in = RemnantInput::make(
            random_tangential_grad(nu), (1.0 + 1e-8) * nu, {0.0, 0.0});
        CHECK(std::abs(in.nu.norm() - 1.0) <= 1e-14);
    }
    SUBCASE("badly non-unit nu rejected") {
        CHECK_THROWS_AS(RemnantInput::make(random_tangential_grad(nu), 2.0 * nu,
                                           {0.0, 0.0}),
                        std::invalid_argument);
    }
}

TEST_CASE("auxiliary data identities") {
    for (int c = 0; c < 200; ++c) {
        const Vec3 nu = random_unit();
        const ElasticConstants ec = random_coercive();
        const RemnantInput in = RemnantInput::make(random_tangential_grad(nu), nu, ec);
        const AuxU aux = aux_u(in);
        const double nu_div = nu.dot(in.grad.divergence());
        CHECK(std::abs(nu.dot(aux.U * nu) - ec.M2 * nu_div) <= 1e-10);
        CHECK(std::abs(aux.U.trace() - (ec.M2 + ec.M3) * nu_div) <= 1e-10);
        CHECK((aux.DU - aux.DU.transpose()).norm() <= 1e-14);
    }
}

TEST_CASE("minimizer of the normal-remnant objective") {
    SUBCASE("equal-constant case vanishes") {
        const Vec3 nu = random_unit();
        const RemnantInput in =
            RemnantInput::make(random_tangential_grad(nu), nu, {0.0, 0.0});
        const auto [G, value] = brute_force_G(in);
        CHECK(G.norm() <= 1e-14);
        CHECK(std::abs(value) <= 1e-14);
        CHECK(closed_form_G(in).norm() <= 1e-14);
    }
    SUBCASE("zero gradient gives zero minimizer") {
        const RemnantInput in =
            RemnantInput::make(GradQ(), Vec3::UnitZ(), {1.0, 0.5});
        CHECK(brute_force_G(in).first.norm() <= 1e-14);
    }
    SUBCASE("tangential divergence example") {
        // M2=1, M3=0, nu=e3, div = (1,0,0): minimizer couples e1 and e3.
        std::array<Mat3, 3> d;
        d.fill(Mat3::Zero());
        // Q_11,1 = 1 gives div Q = (1,0,0) with purely tangential variation.
        Mat3 comp = Mat3::Zero();
        comp(0, 0) = 1.0;
        comp(1, 1) = -0.5;
        comp(2, 2) = -0.5;
        d[0] = comp;
        const RemnantInput in =
            RemnantInput::make(GradQ::from_components(d), Vec3::UnitZ(), {1.0, 0.0});
        CHECK(in.grad.divergence().isApprox(Vec3(1.0, 0.0, 0.0), 1e-14));
        const QTensor G = closed_form_G(in);
        Mat3 expected = Mat3::Zero();
        expected(0, 2) = expected(2, 0) = -1.0 / 3.0;
        CHECK((G.matrix() - expected).norm() <= 1e-12);
        CHECK((brute_force_G(in).first.matrix() - expected).norm() <= 1e-12);
    }
    SUBCASE("normal divergence example") {
        // M2=1, M3=0, nu=e3, div = (0,0,1): minimizer diag(1/5, 1/5, -2/5).
        std::array<Mat3, 3> d;
        d.fill(Mat3::Zero());
        Mat3 c1 = Mat3::Zero();  // Q_31,1 = Q_13,1 = 1 -> div_3 gets Q_31,1
        c1(0, 2) = c1(2, 0) = 1.0;
        d[0] = c1;
        const RemnantInput in =
            RemnantInput::make(GradQ::from_components(d), Vec3::UnitZ(), {1.0, 0.0});
        CHECK(in.grad.divergence().isApprox(Vec3(0.0, 0.0, 1.0), 1e-14));
        const Mat3 expected = Vec3(0.2, 0.2, -0.4).asDiagonal();
        CHECK((closed_form_G(in).matrix() - expected).norm() <= 1e-12);
    }
    SUBCASE("closed form agrees with the exact solve") {
        double worst_G = 0.0, worst_value = 0.0;
        for (int c = 0; c < 1000; ++c) {
            const Vec3 nu = random_unit();
            const RemnantInput in =
                RemnantInput::make(random_tangential_grad(nu), nu, random_coercive());
            const auto [G, value] = brute_force_G(in);
            worst_G = std::max(worst_G,
                               (G.matrix() - closed_form_G(in).matrix()).norm());
            worst_value =
                std::max(worst_value, std::abs(value - phi_min_closed_form(in)));
        }
        CHECK(worst_G <= 1e-8);
        CHECK(worst_value <= 1e-8);
    }
    SUBCASE("stationarity of the closed form") {
        const auto& E = traceless_symmetric_basis();
        double worst = 0.0;
        for (int c = 0; c < 1000; ++c) {
            const Vec3 nu = random_unit();
            const RemnantInput in =
                RemnantInput::make(random_tangential_grad(nu), nu, random_coercive());
            const AuxU aux = aux_u(in);
            const QTensor G = closed_form_G(in);
            CHECK(std::abs(G.matrix().trace()) <= 1e-12);
            CHECK((G.matrix() - G.matrix().transpose()).norm() <= 1e-12);
            // Gradient of phi along each admissible direction must vanish.
            const Mat3 grad = aux.DU + G.matrix() +
                              0.5 * aux.zeta *
                                  (nu * (G.matrix() * nu).transpose() +
                                   (G.matrix() * nu) * nu.transpose());
            for (int a = 0; a < 5; ++a)
                worst = std::max(worst, std::abs((grad.transpose() * E[a]).trace()));
        }
        CHECK(worst <= 1e-10);
    }
    SUBCASE("minimality against random competitors") {
        for (int c = 0; c < 20; ++c) {
            const Vec3 nu = random_unit();
            const RemnantInput in =
                RemnantInput::make(random_tangential_grad(nu), nu, random_coercive());
            const AuxU aux = aux_u(in);
            const double best = phi_objective(aux, nu, closed_form_G(in));
            for (int k = 0; k < 100; ++k) {
                const QTensor trial =
                    QTensor::from_matrix(random_symmetric_traceless());
                CHECK(best <= phi_objective(aux, nu, trial) + 1e-10);
            }
        }
    }
    SUBCASE("non-coercive constants rejected") {
        const Vec3 nu = Vec3::UnitZ();
        CHECK_THROWS_AS(brute_force_G(RemnantInput::make(
                            random_tangential_grad(nu), nu, {-5.0, 0.0})),
                        IllPosedError);
    }
}

TEST_CASE("reduced elastic density") {
    SUBCASE("zero gradient") {
        const RemnantInput in =
            RemnantInput::make(GradQ(), Vec3::UnitZ(), {1.0, 0.5});
        CHECK(f_e0(in) == 0.0);
    }
    SUBCASE("equal constants reduce to half the squared norm") {
        for (int c = 0; c < 100; ++c) {
            const Vec3 nu = random_unit();
            const RemnantInput in =
                RemnantInput::make(random_tangential_grad(nu), nu, {0.0, 0.0});
            CHECK(f_e0(in) ==
                  doctest::Approx(0.5 * in.grad.squared_norm()).epsilon(1e-12));
            CHECK(f_e0_general(in) ==
                  doctest::Approx(0.5 * in.grad.squared_norm()).epsilon(1e-12));
            CHECK(f_e0_m3zero(in) ==
                  doctest::Approx(0.5 * in.grad.squared_norm()).epsilon(1e-12));
        }
    }
    SUBCASE("divergence-penalty closed form value") {
        // M2=1, M3=0, |grad|^2 = 2, div = (1,0,0) tangential, nu = e3:
        // 1/2 * 2 + 1/2 * (2/3) * 1 = 4/3.
        std::array<Mat3, 3> d;
        d.fill(Mat3::Zero());
        Mat3 comp = Mat3::Zero();
        comp(0, 0) = 1.0;
        comp(1, 1) = -0.5;
        comp(2, 2) = -0.5;
        d[0] = comp * std::sqrt(2.0 / comp.squaredNorm());
        GradQ g = GradQ::from_components(d);
        // rescale so the divergence is exactly (1,0,0)
        g = g * (1.0 / g.divergence()[0]);
        const RemnantInput in = RemnantInput::make(g, Vec3::UnitZ(), {1.0, 0.0});
        const double expected = 0.5 * g.squared_norm() + 0.5 * (2.0 / 3.0);
        CHECK(f_e0(in) == doctest::Approx(expected).epsilon(1e-12));
        CHECK(f_e0_m3zero(in) == doctest::Approx(expected).epsilon(1e-12));
    }
    SUBCASE("all evaluation paths agree") {
        double worst = 0.0;
        for (int c = 0; c < 500; ++c) {
            const Vec3 nu = random_unit();
            const RemnantInput in =
                RemnantInput::make(random_tangential_grad(nu), nu, random_coercive());
            const double a = f_e0_brute(in);
            worst = std::max({worst, std::abs(a - f_e0(in)),
                              std::abs(a - f_e0_general(in))});
        }
        CHECK(worst <= 1e-8);
        const Vec3 nu = random_unit();
        const RemnantInput in = RemnantInput::make(random_tangential_grad(nu),
                                                   nu, {0.7, 0.5});
        CHECK(std::abs(f_e0_brute(in) - f_e0_general(in)) <= 1e-8);
    }
    SUBCASE("general formula matches the divergence-penalty form at M3=0") {
        double worst = 0.0;
        for (int c = 0; c < 1000; ++c) {
            const Vec3 nu = random_unit();
            std::uniform_real_distribution<double> um2(-0.55, 3.0);
            const RemnantInput in = RemnantInput::make(random_tangential_grad(nu),
                                                       nu, {um2(rng), 0.0});
            worst = std::max(worst, std::abs(f_e0_general(in) - f_e0_m3zero(in)));
        }
        CHECK(worst <= 1e-12);
    }
    SUBCASE("rotation invariance") {
        std::normal_distribution<double> nd;
        std::uniform_real_distribution<double> ua(0.0, 2.0 * M_PI);
        for (int c = 0; c < 50; ++c) {
            const Vec3 nu = random_unit();
            const ElasticConstants ec = random_coercive();
            const RemnantInput in =
                RemnantInput::make(random_tangential_grad(nu), nu, ec);
            Vec3 axis(nd(rng), nd(rng), nd(rng));
            const Mat3 R =
                Eigen::AngleAxisd(ua(rng), axis.normalized()).toRotationMatrix();
            std::array<Mat3, 3> rd;
            for (int k = 0; k < 3; ++k) rd[k].setZero();
            for (int k = 0; k < 3; ++k) {
                const Mat3 rotated = R * in.grad.component(k) * R.transpose();
                for (int l = 0; l < 3; ++l) rd[l] += R(l, k) * rotated;
            }
            const RemnantInput rin =
                RemnantInput::make(GradQ::from_components(rd, 1e-6), R * nu, ec);
            CHECK(f_e0(rin) == doctest::Approx(f_e0(in)).epsilon(1e-9));
        }
    }
}
