#include <doctest.h>

#include <cmath>
#include <random>

#include "hamlift/flow.hpp"
#include "hamlift/hamiltonian.hpp"

using namespace hamlift;

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

double point_dist(const PhaseSpacePoint& a, const PhaseSpacePoint& b) {
    return (a.to_vector() - b.to_vector()).lpNorm<Eigen::Infinity>();
}

HamiltonianSpec zero_hamiltonian() {
    return hamiltonian_from_eval([](const PhaseSpacePoint&, double) { return 0.0; }, false,
                                 "zero");
}

}  // namespace

TEST_CASE("hamilton vector field") {
    const auto H = presets::oscillator();
    const Vec f = hamilton_vector_field(H, PhaseSpacePoint(1.0, 0.0), 0.0);
    CHECK(f(0) == doctest::Approx(0.0));
    CHECK(f(1) == doctest::Approx(-1.0));

    const Vec f0 = hamilton_vector_field(zero_hamiltonian(), PhaseSpacePoint(0.3, -2.0), 0.0);
    CHECK(f0.cwiseAbs().maxCoeff() < 1e-9);

    const auto Hp =
        hamiltonian_from_eval([](const PhaseSpacePoint& z, double) { return z.p(0); }, false,
                              "p");
    const Vec fp = hamilton_vector_field(Hp, PhaseSpacePoint(0.0, 0.0), 0.0);
    CHECK(fp(0) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(std::abs(fp(1)) < 1e-9);
}

TEST_CASE("integrate_flow basics") {
    FlowMap fm;
    fm.H = presets::oscillator();
    fm.t_to = kTwoPi;
    fm.steps = 4000;
    const FlowResult r = integrate_flow(fm, PhaseSpacePoint(1.0, 0.0));
    CHECK(point_dist(r.z, PhaseSpacePoint(1.0, 0.0)) < 1e-8);
    CHECK(r.trajectory.times.size() == 4001);

    fm.H = zero_hamiltonian();
    const FlowResult r0 = integrate_flow(fm, PhaseSpacePoint(0.4, -0.7));
    CHECK(point_dist(r0.z, PhaseSpacePoint(0.4, -0.7)) < 1e-12);

    fm.H = presets::free_particle();
    fm.t_to = 1.0;
    fm.steps = 100;
    const FlowResult rf = integrate_flow(fm, PhaseSpacePoint(0.0, 1.0));
    CHECK(point_dist(rf.z, PhaseSpacePoint(1.0, 1.0)) < 1e-10);
}

TEST_CASE("leapfrog method agrees on separable Hamiltonians") {
    FlowMap fm;
    fm.H = presets::pendulum();
    fm.t_to = 2.0;
    fm.steps = 20000;
    fm.method = IntegrationMethod::symplectic_leapfrog;
    const FlowResult a = integrate_flow(fm, PhaseSpacePoint(1.0, 0.5));
    fm.method = IntegrationMethod::rk4;
    fm.steps = 2000;
    const FlowResult b = integrate_flow(fm, PhaseSpacePoint(1.0, 0.5));
    CHECK(point_dist(a.z, b.z) < 1e-6);
}

TEST_CASE("divergent flow reported, truncation cures it") {
    FlowMap fm;
    fm.H = presets::xxpp();
    fm.t_to = 10.0;
    fm.steps = 5000;
    CHECK_THROWS_AS(integrate_flow(fm, PhaseSpacePoint(2.0, 2.0)), FlowDivergenceError);

    fm.H = truncate_support(presets::xxpp(),
                            BumpTruncation(PhaseSpacePoint(0.0, 0.0), 4.0, 8.0));
    const FlowResult r = integrate_flow(fm, PhaseSpacePoint(2.0, 2.0));
    CHECK(r.z.to_vector().allFinite());
}

TEST_CASE("bump truncation profile") {
    const BumpTruncation th(PhaseSpacePoint(0.0, 0.0), 1.0, 2.0);
    CHECK(th(PhaseSpacePoint(0.5, 0.5)) == doctest::Approx(1.0));
    CHECK(th(PhaseSpacePoint(3.0, 0.0)) == doctest::Approx(0.0));
    const double mid = th(PhaseSpacePoint(1.5, 0.0));
    CHECK(mid > 0.0);
    CHECK(mid < 1.0);
    CHECK_THROWS(BumpTruncation(PhaseSpacePoint(0.0, 0.0), 2.0, 1.0));

    const auto Ht = truncate_support(presets::oscillator(), th);
    CHECK(Ht(PhaseSpacePoint(0.5, 0.0), 0.0) ==
          doctest::Approx(presets::oscillator()(PhaseSpacePoint(0.5, 0.0), 0.0)));
    CHECK(Ht(PhaseSpacePoint(3.0, 0.0), 0.0) == doctest::Approx(0.0));
}

TEST_CASE("variational equation") {
    const auto H = presets::oscillator();
    const auto jt0 = integrate_variational(H, PhaseSpacePoint(1.0, 0.0), 0.5, 0.5, 100);
    CHECK((jt0.final_jacobian() - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-14);

    const double t = 0.7;
    const auto jt = integrate_variational(H, PhaseSpacePoint(1.0, 0.0), 0.0, t, 2000);
    Mat R(2, 2);
    R << std::cos(t), std::sin(t), -std::sin(t), std::cos(t);
    CHECK((jt.final_jacobian() - R).cwiseAbs().maxCoeff() < 1e-10);
    for (const Mat& S : jt.jacobians) CHECK(symplecticity_defect(S) < 1e-8);
}

TEST_CASE("compose_hamiltonians") {
    const auto H = presets::free_particle();
    const auto K0 = zero_hamiltonian();
    const auto HK0 = compose_hamiltonians(presets::oscillator(), K0);
    const PhaseSpacePoint z(0.8, -0.3);
    CHECK(HK0(z, 0.4) == doctest::Approx(presets::oscillator()(z, 0.4)).epsilon(1e-10));

    const auto HH = compose_hamiltonians(H, H);
    CHECK(HH(z, 0.3) == doctest::Approx(z.p(0) * z.p(0)));
    const PhaseSpacePoint moved = flow_point(HH, z, 0.0, 0.5, 200);
    CHECK(moved.x(0) == doctest::Approx(z.x(0) + 2 * 0.5 * z.p(0)).epsilon(1e-8));
    CHECK(moved.p(0) == doctest::Approx(z.p(0)).epsilon(1e-8));
}

TEST_CASE("invert_hamiltonian") {
    const auto K0 = invert_hamiltonian(zero_hamiltonian());
    CHECK(K0(PhaseSpacePoint(1.0, 2.0), 0.7) == doctest::Approx(0.0));

    const auto Kf = invert_hamiltonian(presets::free_particle());
    const PhaseSpacePoint z(0.4, 1.3);
    CHECK(Kf(z, 0.6) == doctest::Approx(-0.5 * z.p(0) * z.p(0)).epsilon(1e-9));

    const auto H = presets::oscillator();
    const auto Ki = invert_hamiltonian(H, 200);
    for (double x0 : {-1.0, 0.3, 1.2}) {
        const PhaseSpacePoint z0(x0, 0.5);
        const PhaseSpacePoint round =
            flow_point(H, flow_point(Ki, z0, 0.0, 1.0, 200), 0.0, 1.0, 400);
        CHECK(point_dist(round, z0) < 1e-6);
    }
}

TEST_CASE("conjugate_hamiltonian") {
    const auto H = presets::oscillator();
    const auto Hs = conjugate_hamiltonian(H, Mat::Identity(2, 2));
    CHECK(Hs(PhaseSpacePoint(0.7, -0.2), 0.1) ==
          doctest::Approx(H(PhaseSpacePoint(0.7, -0.2), 0.1)));

    Mat J(2, 2);
    J << 0, 1, -1, 0;
    const auto Hx = hamiltonian_from_eval(
        [](const PhaseSpacePoint& z, double) { return 0.5 * z.x(0) * z.x(0); }, false, "x2/2");
    const auto Kp = conjugate_hamiltonian(Hx, J);
    const PhaseSpacePoint z(0.3, 1.7);
    CHECK(Kp(z, 0.0) == doctest::Approx(0.5 * z.p(0) * z.p(0)));

    Mat bad(2, 2);
    bad << 2, 0, 0, 2;
    CHECK_THROWS(conjugate_hamiltonian(H, bad));

    // vector-field transformation law for linear maps:
    // X_{H o s^{-1}}(z) = s X_H(s^{-1} z)
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    const Mat s = generating_to_symplectic(QuadraticGeneratingFunction::scalar(0.4, 1.1, -0.6));
    const auto Kc = conjugate_hamiltonian(presets::pendulum(), s);
    for (int i = 0; i < 10; ++i) {
        const PhaseSpacePoint zz(u(rng), u(rng));
        const Vec lhs = hamilton_vector_field(Kc, zz, 0.0);
        const Vec w = s.inverse() * zz.to_vector();
        const Vec rhs =
            s * hamilton_vector_field(presets::pendulum(), PhaseSpacePoint::from_vector(w), 0.0);
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("rescale_time") {
    const auto H = presets::oscillator();
    const auto K1 = rescale_time(H, 1.0);
    CHECK(K1(PhaseSpacePoint(1.0, 0.0), 0.3) ==
          doctest::Approx(H(PhaseSpacePoint(1.0, 0.0), 0.3)));

    const auto K = rescale_time(H, M_PI / 2);
    const PhaseSpacePoint r = flow_point(K, PhaseSpacePoint(1.0, 0.0), 0.0, 1.0, 1000);
    CHECK(point_dist(r, PhaseSpacePoint(0.0, -1.0)) < 1e-9);

    const auto Kf = rescale_time(presets::free_particle(), 2.0);
    const PhaseSpacePoint rf = flow_point(Kf, PhaseSpacePoint(0.0, 1.0), 0.0, 1.0, 100);
    CHECK(point_dist(rf, PhaseSpacePoint(2.0, 1.0)) < 1e-10);

    CHECK_THROWS(rescale_time(H, 0.0));
}

TEST_CASE("group laws of autonomous flows") {
    const auto H = presets::pendulum();
    const PhaseSpacePoint z0(0.9, -0.4);
    const PhaseSpacePoint a =
        flow_point(H, flow_point(H, z0, 0.0, 0.6, 600), 0.0, 0.5, 500);
    const PhaseSpacePoint b = flow_point(H, z0, 0.0, 1.1, 1100);
    CHECK(point_dist(a, b) < 1e-7);

    // two-parameter laws for a time-dependent Hamiltonian
    const auto Hd = presets::driven_oscillator();
    const PhaseSpacePoint c =
        flow_point(Hd, flow_point(Hd, z0, 0.2, 0.9, 700), 0.9, 1.3, 400);
    const PhaseSpacePoint d = flow_point(Hd, z0, 0.2, 1.3, 1100);
    CHECK(point_dist(c, d) < 1e-7);
    const PhaseSpacePoint e = flow_point(Hd, flow_point(Hd, z0, 0.2, 0.9, 700), 0.9, 0.2, 700);
    CHECK(point_dist(e, z0) < 1e-7);
}

TEST_CASE("banyaga reconstruction: identity family keeps H0") {
    const FlowFamily ident = [](const PhaseSpacePoint& z, double) { return z; };
    const auto H = banyaga_reconstruct(
        ident, [](const PhaseSpacePoint& z) { return z.x(0) + 2.0 * z.p(0); }, 1);
    const PhaseSpacePoint z(0.7, -1.1);
    CHECK(H(z, 0.3) == doctest::Approx(z.x(0) + 2.0 * z.p(0)).epsilon(1e-9));
    BanyagaOptions small;
    small.quad_nodes = 4;
    CHECK_THROWS(banyaga_reconstruct(ident, nullptr, 1, small));
}

TEST_CASE("banyaga reconstruction detects inconsistent flow families") {
    // not injective: collapses everything to the origin for t > 0
    const FlowFamily collapse = [](const PhaseSpacePoint& z, double t) {
        return t > 0.0 ? PhaseSpacePoint(0.0, 0.0) : z;
    };
    const auto H = banyaga_reconstruct(collapse, nullptr, 1);
    CHECK_THROWS(H(PhaseSpacePoint(1.0, 1.0), 0.5));
}

TEST_CASE("extended phase space bookkeeping") {
    const auto H = presets::pendulum();
    ExtendedPoint z0;
    z0.z = PhaseSpacePoint(1.0, 0.2);
    z0.t = 0.0;
    z0.E = H(z0.z, 0.0);
    const ExtendedPoint zt = extended_flow(H, z0, 1.5, 1500);
    CHECK(zt.t == doctest::Approx(1.5).epsilon(1e-12));
    // autonomous H: E constant along the extended flow
    CHECK(zt.E == doctest::Approx(z0.E).epsilon(1e-8));

    const ExtendedPoint round = state_to_extended(extended_to_state(z0));
    CHECK(round.E == doctest::Approx(z0.E));
    CHECK(round.t == doctest::Approx(z0.t));
    CHECK(point_dist(round.z, z0.z) < 1e-15);
}

TEST_CASE("preset gradients and Hessians match finite differences") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> u(-1.2, 1.2);
    for (const char* name :
         {"oscillator", "free", "pendulum", "driven_oscillator", "shear", "quartic", "xxpp"}) {
        const auto H = presets::by_name(name);
        for (int i = 0; i < 5; ++i) {
            const PhaseSpacePoint z(u(rng), u(rng));
            const double t = u(rng);
            const Vec g_fd = fd_gradient(H.eval, z, t, 1e-4);
            CHECK((H.grad(z, t) - g_fd).cwiseAbs().maxCoeff() < 1e-6);
            const Mat h_fd = fd_hessian(H.eval, z, t, 1e-3);
            CHECK((H.hess(z, t) - h_fd).cwiseAbs().maxCoeff() < 1e-5);
            CHECK((H.hess(z, t) - H.hess(z, t).transpose()).cwiseAbs().maxCoeff() < 1e-10);
        }
    }
    CHECK_THROWS(presets::by_name("nope"));
}
