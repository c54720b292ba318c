#include <doctest.h>

#include <random>

#include "hamlift/phase_space.hpp"

using namespace hamlift;

namespace {

Mat random_symplectic(std::mt19937& rng) {
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    Mat S = Mat::Identity(2, 2);
    for (int f = 0; f < 3; ++f) {
        double L = u(rng);
        if (std::abs(L) < 0.2) L = 0.7;
        S = S * generating_to_symplectic(
                    QuadraticGeneratingFunction::scalar(u(rng), L, u(rng)));
    }
    return S;
}

}  // namespace

TEST_CASE("symplectic form: basic values and bilinearity") {
    const PhaseSpacePoint z(1.0, 0.0), zp(0.0, 1.0);
    CHECK(symplectic_form(z, zp) == doctest::Approx(-1.0));

    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-2, 2);
    for (int i = 0; i < 20; ++i) {
        Vec a(2), b(2);
        a << u(rng), u(rng);
        b << u(rng), u(rng);
        CHECK(symplectic_form(a, b) == doctest::Approx(-symplectic_form(b, a)));
        CHECK(symplectic_form(Vec(2 * a), b) == doctest::Approx(2 * symplectic_form(a, b)));
    }
}

TEST_CASE("standard symplectic structure") {
    const auto sp = standard_symplectic(2);
    CHECK((sp.J * sp.J + Mat::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(is_symplectic(sp.J));
    CHECK_THROWS(standard_symplectic(0));
}

TEST_CASE("is_symplectic") {
    CHECK(is_symplectic(Mat::Identity(2, 2)));
    Mat d(2, 2);
    d << 2, 0, 0, 0.5;
    CHECK(is_symplectic(d));
    d << 2, 0, 0, 2;
    CHECK_FALSE(is_symplectic(d));
    CHECK_THROWS(is_symplectic(Mat::Identity(3, 3)));
}

TEST_CASE("generating function to symplectic matrix") {
    const auto WJ = QuadraticGeneratingFunction::scalar(0, 1, 0);
    Mat J(2, 2);
    J << 0, 1, -1, 0;
    CHECK((generating_to_symplectic(WJ) - J).cwiseAbs().maxCoeff() < 1e-14);

    const auto W1 = QuadraticGeneratingFunction::scalar(1, 1, 1);
    Mat shear(2, 2);
    shear << 1, 1, 0, 1;
    CHECK((generating_to_symplectic(W1) - shear).cwiseAbs().maxCoeff() < 1e-14);

    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-2, 2);
    for (int i = 0; i < 50; ++i) {
        double L = u(rng);
        if (std::abs(L) < 0.1) L = 1.0;
        const auto W = QuadraticGeneratingFunction::scalar(u(rng), L, u(rng));
        CHECK(is_symplectic(generating_to_symplectic(W), 1e-12));
    }
    CHECK_THROWS(QuadraticGeneratingFunction::scalar(0, 0, 0));  // singular L
}

TEST_CASE("generating function value and Maslov branch") {
    const auto W = QuadraticGeneratingFunction::scalar(2, 3, 4);
    Vec x(1), xp(1);
    x << 1.0;
    xp << 0.5;
    // 1/2*2*1 - 3*0.5 + 1/2*4*0.25
    CHECK(W(x, xp) == doctest::Approx(1.0 - 1.5 + 0.5));
    CHECK(QuadraticGeneratingFunction::scalar(0, 1, 0).m == 0);
    CHECK(QuadraticGeneratingFunction::scalar(0, -1, 0).m == 1);
}

TEST_CASE("dual generating function") {
    const auto WJ = QuadraticGeneratingFunction::scalar(0, 1, 0);
    const auto WJd = WJ.dual();
    CHECK(WJd.P(0, 0) == doctest::Approx(0));
    CHECK(WJd.L(0, 0) == doctest::Approx(-1));
    CHECK(WJd.Q(0, 0) == doctest::Approx(0));

    const auto W1 = QuadraticGeneratingFunction::scalar(1, 1, 1);
    const auto W1d = W1.dual();
    CHECK(W1d.P(0, 0) == doctest::Approx(-1));
    CHECK(W1d.L(0, 0) == doctest::Approx(-1));
    CHECK(W1d.Q(0, 0) == doctest::Approx(-1));

    // involution of the triple
    const auto W1dd = W1d.dual();
    CHECK(W1dd.P(0, 0) == doctest::Approx(W1.P(0, 0)));
    CHECK(W1dd.L(0, 0) == doctest::Approx(W1.L(0, 0)));
    CHECK(W1dd.Q(0, 0) == doctest::Approx(W1.Q(0, 0)));

    std::mt19937 rng(13);
    std::uniform_real_distribution<double> u(-2, 2);
    for (int i = 0; i < 20; ++i) {
        double L = u(rng);
        if (std::abs(L) < 0.1) L = -0.8;
        const auto W = QuadraticGeneratingFunction::scalar(u(rng), L, u(rng));
        const Mat prod =
            generating_to_symplectic(W) * generating_to_symplectic(W.dual());
        CHECK((prod - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("symplectic to generating round trip") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> u(-2, 2);
    for (int i = 0; i < 30; ++i) {
        double L = u(rng);
        if (std::abs(L) < 0.1) L = 1.3;
        const auto W = QuadraticGeneratingFunction::scalar(u(rng), L, u(rng));
        const Mat S = generating_to_symplectic(W);
        const auto W2 = symplectic_to_generating(S);
        CHECK((generating_to_symplectic(W2) - S).cwiseAbs().maxCoeff() < 1e-10);
    }
    CHECK_THROWS(symplectic_to_generating(Mat::Identity(2, 2)));
}

TEST_CASE("free factorization covers non-free matrices") {
    Mat J(2, 2), I2 = Mat::Identity(2, 2), lower(2, 2);
    J << 0, 1, -1, 0;
    lower << 1, 0, 1, 1;
    for (const Mat& S : {J, I2, lower}) {
        const auto [W1, W2] = free_factorization(S);
        const Mat prod = generating_to_symplectic(W1) * generating_to_symplectic(W2);
        CHECK((prod - S).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("free factorization on random symplectic matrices") {
    std::mt19937 rng(23);
    for (int i = 0; i < 100; ++i) {
        const Mat S = random_symplectic(rng);
        const auto [W1, W2] = free_factorization(S);
        const Mat prod = generating_to_symplectic(W1) * generating_to_symplectic(W2);
        CHECK((prod - S).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("generating function validation") {
    Mat P(2, 2), L = Mat::Identity(2, 2), Q = Mat::Zero(2, 2);
    P << 0, 1, 0, 0;  // not symmetric
    CHECK_THROWS(QuadraticGeneratingFunction(P, L, Q));
    P.setZero();
    Mat Lsing = Mat::Zero(2, 2);
    CHECK_THROWS(QuadraticGeneratingFunction(P, Lsing, Q));
}
