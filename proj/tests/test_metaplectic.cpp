#include <doctest.h>

#include <cmath>

#include "hamlift/metaplectic.hpp"

using namespace hamlift;

namespace {

const Complex kI(0.0, 1.0);

double state_dist(const CVec& a, const CVec& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("quadratic Fourier transform fixes the standard Gaussian up to e^{-i pi/4}") {
    const Grid g(256, -12.0, 12.0, 1.0);
    const WaveFunction psi0 = coherent_state(g, 0.0, 0.0);
    const auto WJ = QuadraticGeneratingFunction::scalar(0, 1, 0);
    const WaveFunction out = apply_quadratic_fourier(WJ, psi0);
    const Complex phase = std::exp(-kI * (M_PI / 4.0));
    CHECK(state_dist(out.values, phase * psi0.values) < 1e-10);
    CHECK(out.norm() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("applying the Fourier element twice is the parity operator up to phase") {
    const Grid g(256, -12.0, 12.0, 1.0);
    const WaveFunction psi = coherent_state(g, 0.5, 0.3);
    const auto WJ = QuadraticGeneratingFunction::scalar(0, 1, 0);
    const WaveFunction twice = apply_quadratic_fourier(WJ, apply_quadratic_fourier(WJ, psi));
    CVec mirrored(g.N);
    for (Eigen::Index i = 0; i < g.N; ++i) mirrored(i) = psi.values((g.N - i) % g.N);
    // J^2 = -I classically; the operator square is e^{-i pi/2} times parity
    CHECK(state_dist(twice.values, -kI * mirrored) < 1e-9);
}

TEST_CASE("chirped transform matches the dense quadrature matrix") {
    const Grid g(128, -10.0, 10.0, 1.0);
    const WaveFunction psi = coherent_state(g, 1.0, -0.5, 1.2);
    for (auto [P, L, Q] : {std::tuple{0.5, 1.3, -0.2}, {0.0, -1.0, 0.0}, {-0.3, 0.8, 0.4}}) {
        const auto W = QuadraticGeneratingFunction::scalar(P, L, Q);
        const WaveFunction fast = apply_quadratic_fourier(W, psi);
        const WaveFunction dense = quadratic_fourier_matrix(W, g).apply(psi);
        CHECK(state_dist(fast.values, dense.values) < 1e-8);
    }
}

TEST_CASE("aliasing is rejected") {
    const Grid g(64, -8.0, 8.0, 1.0);
    const WaveFunction psi = coherent_state(g, 0.0, 0.0);
    CHECK_THROWS_AS(
        apply_quadratic_fourier(QuadraticGeneratingFunction::scalar(0, 50, 0), psi),
        AliasingError);
    CHECK_THROWS_AS(
        apply_quadratic_fourier(QuadraticGeneratingFunction::scalar(60, 1, 0), psi),
        AliasingError);
}

TEST_CASE("discrete transform is exactly unitary for lattice-commensurate L") {
    const Grid g(128, -10.0, 10.0, 1.0);
    const double Lc = g.dp() / g.dx();
    const auto W = QuadraticGeneratingFunction::scalar(0.3, Lc, -0.4);
    const CMat M = quadratic_fourier_matrix(W, g).matrix;
    const CMat gram = M.adjoint() * M;
    CHECK((gram - CMat::Identity(g.N, g.N)).cwiseAbs().maxCoeff() < 1e-10);

    // ... and only approximately unitary otherwise
    const auto Wbad = QuadraticGeneratingFunction::scalar(0.3, 1.0, -0.4);
    const CMat Mb = quadratic_fourier_matrix(Wbad, g).matrix;
    CHECK((Mb.adjoint() * Mb - CMat::Identity(g.N, g.N)).cwiseAbs().maxCoeff() > 1e-6);
}

TEST_CASE("dual generating function yields the inverse on localized states") {
    const Grid g(256, -12.0, 12.0, 1.0);
    const WaveFunction psi = coherent_state(g, -0.7, 0.9);
    for (auto [P, L, Q] : {std::tuple{0.0, 1.0, 0.0}, {0.4, 1.1, 0.3}, {-0.2, -0.9, 0.5}}) {
        const auto W = QuadraticGeneratingFunction::scalar(P, L, Q);
        const GridOperator round = compose_metaplectic({W.dual(), W}, g);
        const WaveFunction back = round.apply(psi);
        CHECK(state_dist(back.values, psi.values) < 1e-8);
    }
}

TEST_CASE("classical shadow and covariance of coherent-state moments") {
    const auto W = QuadraticGeneratingFunction::scalar(0.4, 1.2, -0.3);
    CHECK((project_metaplectic(W) - generating_to_symplectic(W)).cwiseAbs().maxCoeff() <
          1e-14);

    const Grid g(512, -12.0, 12.0, 1.0);
    const PhaseSpacePoint z0(0.8, -0.4);
    const Mat S = project_metaplectic(W);
    const WaveFunction out =
        apply_quadratic_fourier(W, coherent_state(g, z0.x(0), z0.p(0)));
    const StateMoments m = state_moments(out);
    const Vec Sz = S * z0.to_vector();
    CHECK(m.mean_x == doctest::Approx(Sz(0)).epsilon(1e-6));
    CHECK(m.mean_p == doctest::Approx(Sz(1)).epsilon(1e-6));
    const Mat sigma0 = 0.5 * Mat::Identity(2, 2);  // hbar/2 for the round state
    const Mat expected = S * sigma0 * S.transpose();
    CHECK((m.covariance - expected).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("free factorization reaches the shear through two transforms") {
    Mat shear(2, 2);
    shear << 1, 2, 0, 1;
    const auto [W1, W2] = free_factorization(shear);
    // wide grid: the intermediate state spreads before the second factor
    // refocuses it, and its tails must stay away from the boundary
    const Grid g(1024, -20.0, 20.0, 1.0);
    const WaveFunction psi = coherent_state(g, 0.5, 0.25);
    const WaveFunction out = apply_quadratic_fourier(W1, apply_quadratic_fourier(W2, psi));

    const StateMoments m = state_moments(out);
    const Vec Sz = shear * PhaseSpacePoint(0.5, 0.25).to_vector();
    CHECK(m.mean_x == doctest::Approx(Sz(0)).epsilon(1e-6));
    CHECK(m.mean_p == doctest::Approx(Sz(1)).epsilon(1e-6));

    // the shear itself is free: the product matches the one-step transform
    // up to the metaplectic sign
    const WaveFunction direct =
        apply_quadratic_fourier(symplectic_to_generating(shear), psi);
    const double dplus = state_dist(out.values, direct.values);
    const double dminus = state_dist(out.values, -direct.values);
    CHECK(std::min(dplus, dminus) < 1e-5);
}
