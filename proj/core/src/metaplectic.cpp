#include "hamlift/metaplectic.hpp"

#include <cmath>

namespace hamlift {

namespace {

const Complex kI(0.0, 1.0);

Complex maslov_phase(int m) {
    switch (((m % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

void require_1d(const QuadraticGeneratingFunction& W) {
    if (W.dim() != 1)
        throw std::invalid_argument("grid metaplectic operators support n = 1 only");
}

void check_nyquist(const QuadraticGeneratingFunction& W, const Grid& g) {
    const double xm = std::max(std::abs(g.x_min), std::abs(g.x_max));
    const double band = M_PI / g.dx();  // max resolvable spatial frequency
    const double P = std::abs(W.P(0, 0)), L = std::abs(W.L(0, 0)), Q = std::abs(W.Q(0, 0));
    if (P * xm / g.hbar > band || Q * xm / g.hbar > band || L * xm / g.hbar > band)
        throw AliasingError("quadratic Fourier transform: chirp exceeds the grid Nyquist band");
}

Complex prefactor(const QuadraticGeneratingFunction& W, const Grid& g) {
    const double L = W.L(0, 0);
    return std::exp(-kI * (M_PI / 4.0)) / std::sqrt(2.0 * M_PI * g.hbar) *
           maslov_phase(W.m) * std::sqrt(std::abs(L));
}

}  // namespace

WaveFunction GridOperator::apply(const WaveFunction& psi) const {
    if (!(psi.grid == grid)) throw std::invalid_argument("GridOperator: grid mismatch");
    return {grid, matrix * psi.values};
}

WaveFunction apply_quadratic_fourier(const QuadraticGeneratingFunction& W,
                                     const WaveFunction& psi) {
    require_1d(W);
    const Grid& g = psi.grid;
    check_nyquist(W, g);
    const Eigen::Index N = g.N;
    const double hbar = g.hbar;
    const double P = W.P(0, 0), L = W.L(0, 0), Q = W.Q(0, 0);
    const double dx = g.dx();
    const double alpha = L * dx * dx / hbar;

    CVec b(N);
    for (Eigen::Index j = 0; j < N; ++j) {
        const double xj = g.x_at(j);
        b(j) = psi.values(j) *
               std::exp(kI * (Q * xj * xj / (2.0 * hbar) - L * g.x_min * dx * j / hbar));
    }
    CVec out = scaled_dft(b, alpha);
    const Complex c0 = prefactor(W, g) * dx *
                       std::exp(-kI * (L * g.x_min * g.x_min / hbar));
    for (Eigen::Index j = 0; j < N; ++j) {
        const double xj = g.x_at(j);
        out(j) *= c0 * std::exp(kI * (P * xj * xj / (2.0 * hbar) -
                                      L * g.x_min * dx * j / hbar));
    }
    return {g, std::move(out)};
}

GridOperator quadratic_fourier_matrix(const QuadraticGeneratingFunction& W, const Grid& g) {
    require_1d(W);
    check_nyquist(W, g);
    const Eigen::Index N = g.N;
    const double hbar = g.hbar;
    const double P = W.P(0, 0), L = W.L(0, 0), Q = W.Q(0, 0);
    const Complex c0 = prefactor(W, g) * g.dx();
    CMat M(N, N);
    for (Eigen::Index j = 0; j < N; ++j) {
        const double x = g.x_at(j);
        for (Eigen::Index k = 0; k < N; ++k) {
            const double xp = g.x_at(k);
            M(j, k) = c0 * std::exp(kI * ((0.5 * P * x * x - L * x * xp +
                                           0.5 * Q * xp * xp) / hbar));
        }
    }
    return {std::move(M), g};
}

Mat project_metaplectic(const QuadraticGeneratingFunction& W) {
    return generating_to_symplectic(W);
}

GridOperator compose_metaplectic(const std::vector<QuadraticGeneratingFunction>& ops,
                                 const Grid& g) {
    if (ops.empty()) throw std::invalid_argument("compose_metaplectic: empty factor list");
    CMat M = quadratic_fourier_matrix(ops.front(), g).matrix;
    for (std::size_t i = 1; i < ops.size(); ++i)
        M = M * quadratic_fourier_matrix(ops[i], g).matrix;
    return {std::move(M), g};
}

}  // namespace hamlift
